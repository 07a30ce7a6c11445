use loh::io::{parse_dataset, parse_hypothesis, parse_logs, parse_scales, parse_sightings, parse_travel};
use loh::theory::TheoryDocument;
use loh::Error;

fn line_of(e: Error) -> u64 {
    match e {
        Error::Parse { line, .. } => line,
        other => panic!("expected a parse error, got {other}"),
    }
}

#[test]
fn dataset_errors_name_line_and_field() {
    let e = parse_dataset("x1,y\n1,2\n3,oops\n").unwrap_err();
    assert!(e.is_schema_error());
    assert!(e.to_string().contains('y'));
    assert_eq!(line_of(e), 3);
    assert_eq!(line_of(parse_dataset("x2,y\n1,2\n").unwrap_err()), 1);
    assert_eq!(line_of(parse_dataset("x1,y,extra\n1,2,3\n").unwrap_err()), 1);
    assert_eq!(line_of(parse_dataset("x1,y,mod\n1,2,maybe\n").unwrap_err()), 2);
}

#[test]
fn dataset_with_mixed_modalities() {
    let d = parse_dataset("x1,x2,y,mod\n0,1,1,obs:0\n1,1,0,hyp:0\n2,2,1,obs\n").unwrap();
    assert_eq!(d.x_dim, 2);
    assert_eq!(d.hypothetical().len(), 1);
    let s = d
        .observations(loh::formula::Metric::Euclidean, loh::formula::Metric::Absolute)
        .unwrap();
    assert_eq!(s.len(), 2);
}

#[test]
fn scenario_records() {
    let r = parse_scales("scale_id,time,weight\n1,0,180.5\n2,4,181\n").unwrap();
    assert_eq!(r.len(), 2);
    assert_eq!(line_of(parse_scales("scale_id,time,weight\n3,0,180\n").unwrap_err()), 2);
    assert!(parse_logs("day,calories,weight\n1,-5,180\n").is_err());
    let travel = parse_travel("A,B\n0,15\n15,0\n").unwrap();
    let s = parse_sightings("who,time,location\ntheory,0,A\nw1,10,1\n", &travel).unwrap();
    assert_eq!(s[1].location, 1);
    assert!(parse_sightings("who,time,location\nw1,10,C\n", &travel).is_err());
    assert!(parse_travel("A,B\n0,15\n").is_err());
}

#[test]
fn json_documents() {
    assert!(parse_hypothesis(r#"{"id":"linear","params":{"w":[1.0],"b":0.0}}"#).is_ok());
    assert!(parse_hypothesis(r#"{"id":"linear","params":{"w":[1.0]}}"#).is_err());
    assert!(parse_hypothesis(r#"{"id":"cubic","params":{}}"#).is_err());
    let doc = loh::learners::erm_theory();
    let back = TheoryDocument::from_json(&doc.to_json().unwrap()).unwrap();
    assert_eq!(back, doc);
    assert!(TheoryDocument::from_json(r#"{"name":"t","aspects":[]}"#).unwrap_err().is_schema_error());
}
