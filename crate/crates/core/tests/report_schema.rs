//! The report written by `run_batch` against `schemas/verify-report.schema.json`.

use serde_json::Value;

use polya_lab::field::quadratic_poly;
use polya_lab::verify::report::SCHEMA;
use polya_lab::verify::{run_batch, BatchOptions, CheckId, TableEntry};

fn schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schemas/verify-report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn keys(v: &Value) -> Vec<String> {
    let mut k: Vec<String> = v.as_object().unwrap().keys().cloned().collect();
    k.sort();
    k
}

fn required(s: &Value) -> Vec<String> {
    let mut k: Vec<String> = s["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    k.sort();
    k
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn report_matches_schema() {
    let s = schema();
    assert_eq!(s["$id"], SCHEMA);
    let entries = vec![
        TableEntry::over_q("Q(sqrt(-5))", &quadratic_poly(-5)),
        TableEntry::over_q("Q(sqrt(-23))", &quadratic_poly(-23)),
        TableEntry {
            label: "broken".into(),
            top: vec![1, 0, 1, 0, 1, 0, 1],
            base: None,
            embedding: None,
        },
    ];
    let opts = BatchOptions {
        seed: 3,
        cache_dir: None,
        audit_bound: Some(40),
        table_name: "inline".into(),
    };
    let report: Value = serde_json::from_str(&run_batch(&entries, &CheckId::ALL, &opts).to_json()).unwrap();
    assert_eq!(keys(&report), required(&s));

    let defs = &s["$defs"];
    let ids = strings(&defs["check_id"]["enum"]);
    assert_eq!(
        ids,
        CheckId::ALL
            .iter()
            .map(|c| c.as_str().to_string())
            .collect::<Vec<_>>()
    );
    let verdicts = strings(&defs["theorem_check"]["properties"]["verdict"]["enum"]);
    let modes = strings(&defs["theorem_check"]["properties"]["mode"]["enum"]);

    let mut saw_null = false;
    for e in report["entries"].as_array().unwrap() {
        assert_eq!(keys(e), required(&defs["entry"]));
        match &e["polya"] {
            Value::Null => saw_null = true,
            p => {
                assert_eq!(keys(p), required(&defs["polya_record"]));
                for r in p["ramified"].as_array().unwrap() {
                    assert_eq!(keys(r), required(&defs["ramified_prime"]));
                }
            }
        }
        for c in e["results"].as_array().unwrap() {
            let mut k = keys(c);
            k.retain(|x| x != "mode");
            assert_eq!(k, required(&defs["theorem_check"]));
            assert!(ids.contains(&c["check"].as_str().unwrap().to_string()));
            assert!(verdicts.contains(&c["verdict"].as_str().unwrap().to_string()));
            if let Some(m) = c.get("mode") {
                assert!(modes.contains(&m.as_str().unwrap().to_string()));
            }
        }
    }
    assert!(saw_null, "an entry that cannot be built reports polya = null");
    assert_eq!(report["summary"]["fail"], 8);
}
