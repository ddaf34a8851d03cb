use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn nf(cache: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nf"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .output()
        .unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn classgroup_and_cache() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().join("cache");
    let o = nf(&cache, &["classgroup", "sqrt(-5)"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["h"], 2);
    assert_eq!(v["disc"], -20);
    assert_eq!(v["oracle"], 2);

    // cached record is reused
    let again = json(&nf(&cache, &["classgroup", "5,0,1"]));
    assert_eq!(again, v);
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 1);

    let o = nf(&cache, &["cache", "clear"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("removed 1"));
    assert_eq!(fs::read_dir(&cache).map(|d| d.count()).unwrap_or(0), 0);
}

#[test]
fn polya_and_ostrowski() {
    let tmp = tempfile::tempdir().unwrap();
    let v = json(&nf(tmp.path(), &["polya", "sqrt(-23)", "--audit-bound", "50"]));
    assert_eq!(v["h_l"], 3);
    assert_eq!(v["po_invariants"], serde_json::json!([]));

    let o = nf(tmp.path(), &["ostrowski", "sqrt(-5):x^4+3x^2+1"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["kernel_order"], 2);
    assert_eq!(v["ost_invariants"], serde_json::json!([]));

    let o = nf(tmp.path(), &["ostrowski", "sqrt(-5)"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let empty = tmp.path().join("empty.jsonl");
    fs::write(&empty, "# nothing\n").unwrap();
    let out = tmp.path().join("empty-out");
    let o = nf(
        tmp.path(),
        &[
            "verify",
            "--table",
            empty.to_str().unwrap(),
            "--checks",
            "all",
            "--seed",
            "0",
            "--out",
            out.to_str().unwrap(),
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        fs::read_to_string(out.join("summary.csv")).unwrap(),
        "entry,check,verdict,mode,gate\n"
    );

    let quad = tmp.path().join("q.jsonl");
    fs::write(&quad, "{\"label\":\"Q(sqrt(-23))\",\"top\":[6,-1,1]}\n").unwrap();
    let out = tmp.path().join("q-out");
    let o = nf(
        tmp.path(),
        &[
            "verify",
            "--table",
            quad.to_str().unwrap(),
            "--checks",
            "zantema,brz",
            "--seed",
            "0",
            "--out",
            out.to_str().unwrap(),
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(r["summary"]["pass"], 2);

    let bad = tmp.path().join("bad.jsonl");
    fs::write(&bad, "{\"label\":\"reducible\",\"top\":[-1,0,1]}\n").unwrap();
    let o = nf(
        tmp.path(),
        &[
            "verify",
            "--table",
            bad.to_str().unwrap(),
            "--checks",
            "brz",
            "--seed",
            "0",
            "--out",
            tmp.path().join("b").to_str().unwrap(),
        ],
    );
    assert_eq!(o.status.code(), Some(1));

    let o = nf(
        tmp.path(),
        &[
            "verify",
            "--table",
            quad.to_str().unwrap(),
            "--checks",
            "nonsense",
            "--out",
            tmp.path().join("c").to_str().unwrap(),
        ],
    );
    assert_eq!(o.status.code(), Some(1));
}
