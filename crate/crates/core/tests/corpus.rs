use std::fs;
use std::path::Path;

use loh::io::{parse_hypothesis, parse_travel, read_dataset, read_logs, read_scales, read_sightings, read_travel};
use loh::learners::LearnerConfig;
use loh::theory::TheoryDocument;

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert!(!files.is_empty(), "no seeds for {target}");
    files.iter().map(|p| fs::read(p).unwrap()).collect()
}

fn text(b: &[u8]) -> &str {
    std::str::from_utf8(b).unwrap()
}

#[test]
fn csv_seeds_parse() {
    for s in seeds("dataset_csv") {
        read_dataset(&s[..]).unwrap();
    }
    for s in seeds("scales_csv") {
        read_scales(&s[..]).unwrap();
    }
    for s in seeds("logs_csv") {
        read_logs(&s[..]).unwrap();
    }
    for s in seeds("travel_csv") {
        read_travel(&s[..]).unwrap().check_symmetric().unwrap();
    }
    let travel = parse_travel("A,B,C\n0,15,60\n15,0,50\n60,50,0\n").unwrap();
    for s in seeds("sightings_csv") {
        read_sightings(&s[..], &travel).unwrap();
    }
}

#[test]
fn json_seeds_parse() {
    for s in seeds("theory_json") {
        let doc = TheoryDocument::from_json(text(&s)).unwrap();
        assert_eq!(TheoryDocument::from_json(&doc.to_json().unwrap()).unwrap(), doc);
    }
    for s in seeds("hypothesis_json") {
        parse_hypothesis(text(&s)).unwrap();
    }
    for s in seeds("learner_json") {
        LearnerConfig::from_json(text(&s)).unwrap();
    }
}

#[test]
fn truncated_seeds_do_not_panic() {
    for target in ["dataset_csv", "scales_csv", "logs_csv", "travel_csv", "theory_json", "learner_json"] {
        for s in seeds(target) {
            for cut in 0..s.len() {
                let b = &s[..cut];
                let _ = read_dataset(b);
                let _ = read_scales(b);
                let _ = read_logs(b);
                let _ = read_travel(b);
                if let Ok(t) = std::str::from_utf8(b) {
                    let _ = TheoryDocument::from_json(t);
                    let _ = LearnerConfig::from_json(t);
                    let _ = parse_hypothesis(t);
                }
            }
        }
    }
}
