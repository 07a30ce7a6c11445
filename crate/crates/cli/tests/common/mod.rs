#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loh"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs")
}

pub const CASES: &[(&str, &[&str])] = &[
    ("eval_erm_constant", &["eval", "--data", "two_rows.csv", "--theory", "erm", "--hypothesis", "constant_zero.json"]),
    ("eval_linear_inline", &["eval", "--data", "toy.csv", "--theory", "ridge", "--hypothesis", r#"{"id":"linear","params":{"w":[0.1,0.1],"b":0.0}}"#]),
    ("learn_knn", &["learn", "--data", "toy.csv", "--learner", "knn", "--params", r#"{"k":3}"#, "--query", "3.5,3.5"]),
    ("learn_ada_knn", &["learn", "--data", "toy.csv", "--learner", "ada-knn", "--params", r#"{"k0":1,"delta":0.3,"c1":1.0}"#, "--query", "0.2,0.2"]),
    ("learn_hoeffding_knn", &["learn", "--data", "hoeffding.csv", "--learner", "hoeffding-knn", "--params", r#"{"k0":1}"#, "--query", "0"]),
    ("learn_naive_bayes", &["learn", "--data", "toy.csv", "--learner", "naive-bayes", "--query", "4,4"]),
    ("learn_tree", &["learn", "--data", "toy.csv", "--learner", "tree", "--params", r#"{"leaf_min_count":1,"leaf_purity":1.0}"#]),
    ("learn_kmeans", &["learn", "--data", "toy.csv", "--learner", "kmeans", "--params", r#"{"k":2}"#, "--seed", "7"]),
    ("learn_linkage", &["learn", "--data", "toy.csv", "--learner", "linkage", "--params", r#"{"linkage":"average","clusters":2}"#]),
    ("learn_svm", &["learn", "--data", "separable.csv", "--learner", "svm", "--params", r#"{"alpha":0.0}"#]),
    ("learn_ridge", &["learn", "--data", "separable.csv", "--learner", "ridge", "--params", r#"{"alpha":0.5}"#]),
    ("scenario_scales", &["scenario", "--scenario", "scales", "--data", "scales.csv"]),
    ("scenario_scales_max", &["scenario", "--scenario", "scales", "--data", "scales.csv", "--agg", "max"]),
    ("scenario_dependence", &["scenario", "--scenario", "dependence", "--data", "log.csv"]),
    ("scenario_itinerary", &["scenario", "--scenario", "itinerary", "--data", "sightings_feasible.csv", "--travel", "travel.csv"]),
    ("scenario_witnesses", &["scenario", "--scenario", "witnesses", "--data", "witnesses.csv", "--travel", "travel.csv"]),
    ("agg_geomean", &["agg", "--id", "geomean", "--values", "4,9"]),
    ("check_median", &["check", "--agg", "median", "--trials", "200"]),
    ("check_geomean", &["check", "--agg", "geomean", "--trials", "200", "--multisets", "10"]),
];

