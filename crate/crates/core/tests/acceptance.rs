//! Acceptance suite: one line per criterion, then a single assertion.
//!
//!     cargo test --release --test acceptance -- --nocapture

mod common;

use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;

use polya_lab::arith::poly::IntPoly;
use polya_lab::classgroup::compute_class_group;
use polya_lab::classgroup::forms::quadratic_class_number;
use polya_lab::galois::{GaloisGroup, Tower};
use polya_lab::make_field;
use polya_lab::polya::{compute_polya, polya_group, ClassGroups};
use polya_lab::units::{h1_via_brz, h_orders_direct};
use polya_lab::verify::{run_batch, BatchOptions, CheckId, Report, TableEntry, Verdict};

const SEED: u64 = 1;

struct Outcome {
    id: u32,
    name: &'static str,
    ok: bool,
    detail: String,
}

fn batch(entries: &[TableEntry], name: &str) -> Report {
    let opts = BatchOptions {
        seed: SEED,
        cache_dir: None,
        audit_bound: None,
        table_name: name.into(),
    };
    run_batch(entries, &CheckId::ALL, &opts)
}

fn failures(r: &Report, check: CheckId) -> Vec<String> {
    r.results()
        .filter(|c| c.check == check && c.verdict == Verdict::Fail)
        .map(|c| c.entry.clone())
        .collect()
}

fn count(r: &Report, check: CheckId, v: Verdict) -> usize {
    r.results().filter(|c| c.check == check && c.verdict == v).count()
}

fn criterion_1(quadratic: &[TableEntry]) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for e in quadratic {
        let k = make_field(&IntPoly::from_i64(&e.top)).unwrap();
        let disc = i64::try_from(k.disc()).unwrap();
        let cl = compute_class_group(&k, SEED).unwrap();
        if cl.order() != BigInt::from(quadratic_class_number(disc)) {
            bad.push(e.label.clone());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        id: 1,
        name: "class group vs reduced forms, |d| <= 200",
        ok: bad.is_empty() && secs < 60.0,
        detail: format!(
            "{} fields, {} mismatches {:?}, {secs:.1} s",
            quadratic.len(),
            bad.len(),
            bad
        ),
    }
}

fn criterion_2(quad: &Report) -> Outcome {
    let store = ClassGroups::new(SEED, None);
    let mut spots = Vec::new();
    let mut ok = true;
    for (d, h1, po) in [(-5i64, 2u32, 2u32), (10, 2, 2), (3, 4, 1)] {
        let k = make_field(&polya_lab::field::quadratic_poly(d)).unwrap();
        let got_h1 = h_orders_direct(&k).unwrap().h1;
        let tower = Tower::over_rationals(GaloisGroup::compute(&k).unwrap());
        let got_po = polya_group(&tower, &store).unwrap().order();
        ok &= got_h1 == BigInt::from(h1) && got_po == BigInt::from(po);
        spots.push(format!("d={d}: {got_h1}*{got_po}"));
    }
    let fails = failures(quad, CheckId::Zantema);
    let pass = count(quad, CheckId::Zantema, Verdict::Pass);
    Outcome {
        id: 2,
        name: "#H1 * #Po = prod e_p on quadratic fields",
        ok: ok && fails.is_empty() && pass == quad.entries.len(),
        detail: format!(
            "{pass} pass, {} fail {:?}; {}",
            fails.len(),
            fails,
            spots.join(", ")
        ),
    }
}

fn criterion_3(quadratic: &[TableEntry]) -> Outcome {
    let store = ClassGroups::new(SEED, None);
    let mut bad = Vec::new();
    for e in quadratic {
        let tower = e.build().unwrap();
        let data = compute_polya(&tower, &store, None).unwrap();
        let via_brz = h1_via_brz(
            &data.kernel_order,
            &data.ramification_indices(),
            &data.ost_order(),
        );
        let direct = h_orders_direct(tower.top()).unwrap().h1;
        if via_brz.as_ref().ok() != Some(&direct) {
            bad.push(e.label.clone());
        }
    }
    Outcome {
        id: 3,
        name: "H1 via BRZ equals H1 from units",
        ok: bad.is_empty(),
        detail: format!("{} fields, {} mismatches {:?}", quadratic.len(), bad.len(), bad),
    }
}

fn criterion_4(quad: &Report, towers: &Report) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut minus23 = false;
    for e in quad.entries.iter().chain(&towers.entries) {
        let Some(p) = &e.polya else {
            bad.push(format!("{} (no data)", e.label));
            continue;
        };
        if p.ramified.len() != 1 {
            continue;
        }
        checked += 1;
        // over Q the capitulation image is trivial, so Ost = Po
        if !p.ost_invariants.is_empty() {
            bad.push(e.label.clone());
        }
        if e.label == "Q(sqrt(-23))" {
            minus23 = p.h_l == BigInt::from(3) && p.po_invariants.is_empty();
        }
    }
    Outcome {
        id: 4,
        name: "one finite ramified prime gives trivial Po / Ost",
        ok: bad.is_empty() && minus23,
        detail: format!(
            "{checked} entries, {} nontrivial {:?}; Q(sqrt(-23)) h=3 Po=0: {minus23}",
            bad.len(),
            bad
        ),
    }
}

fn criterion_5(towers: &Report) -> Outcome {
    let biquadratic: Vec<_> = towers
        .results()
        .filter(|c| c.check == CheckId::LemmaExactness && c.verdict != Verdict::NotApplicable)
        .filter(|c| c.witness.get("degree").and_then(|d| d.as_u64()) == Some(2))
        .collect();
    let pass = biquadratic.iter().filter(|c| c.verdict == Verdict::Pass).count();
    let fails = failures(towers, CheckId::LemmaExactness);
    Outcome {
        id: 5,
        name: "Lemma exactness Image(psi) = Ker(phi)",
        ok: pass >= 5 && fails.is_empty(),
        detail: format!(
            "{pass} quartic-over-quadratic towers pass, {} fail {:?}",
            fails.len(),
            fails
        ),
    }
}

fn criterion_6(towers: &Report) -> Outcome {
    let pass = count(towers, CheckId::MainTheorem, Verdict::Pass);
    let fails = failures(towers, CheckId::MainTheorem);
    let data: Vec<String> = towers
        .results()
        .filter(|c| c.check == CheckId::MainTheorem && c.gate.starts_with("decomposition group"))
        .map(|c| format!("{}: Ost {}", c.entry, c.witness["ost_invariants"]))
        .collect();
    Outcome {
        id: 6,
        name: "main theorem batch",
        ok: pass > 0 && fails.is_empty(),
        detail: format!(
            "{pass} pass, {} fail {:?}; D != G data: [{}]",
            fails.len(),
            fails,
            data.join("; ")
        ),
    }
}

fn criterion_7(quad: &Report, towers: &Report) -> Outcome {
    let mut applicable = 0;
    let mut consistency = 0;
    let mut fails = Vec::new();
    for c in quad.results().chain(towers.results()) {
        if c.check != CheckId::Hilbert94Corollary || c.verdict == Verdict::NotApplicable {
            continue;
        }
        applicable += 1;
        if c.mode == Some(polya_lab::verify::Mode::Consistency) {
            consistency += 1;
        }
        if c.verdict == Verdict::Fail {
            fails.push(c.entry.clone());
        }
    }
    Outcome {
        id: 7,
        name: "f * #H0 divides #ker eps",
        ok: applicable > 0 && fails.is_empty(),
        detail: format!(
            "{applicable} applicable ({consistency} consistency mode), {} fail {:?}",
            fails.len(),
            fails
        ),
    }
}

fn criterion_8() -> Outcome {
    let results = common::run_property_suite();
    let bad: Vec<String> = results
        .iter()
        .filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}")))
        .collect();
    Outcome {
        id: 8,
        name: "property suites",
        ok: bad.is_empty(),
        detail: format!(
            "{} suites x {} cases, failures {:?}",
            results.len(),
            common::CASES,
            bad
        ),
    }
}

fn criterion_9() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let table = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tables/towers.jsonl");
    let run = |out: &str| {
        Command::new(env!("CARGO_BIN_EXE_nf"))
            .arg("--cache-dir")
            .arg(tmp.path().join("cache"))
            .args(["verify", "--checks", "all", "--seed", "7", "--table"])
            .arg(&table)
            .arg("--out")
            .arg(tmp.path().join(out))
            .output()
            .unwrap()
    };
    // cold cache, then warm cache
    let a = run("a");
    let b = run("b");
    let same = |f: &str| {
        std::fs::read(tmp.path().join("a").join(f)).ok() == std::fs::read(tmp.path().join("b").join(f)).ok()
            && tmp.path().join("a").join(f).exists()
    };
    let ok = same("report.json") && same("summary.csv") && a.status.code() == b.status.code();
    Outcome {
        id: 9,
        name: "repeated nf verify runs are byte-identical",
        ok,
        detail: format!("exit codes {:?} / {:?}", a.status.code(), b.status.code()),
    }
}

#[test]
fn acceptance() {
    let quadratic = common::table("quadratic.jsonl");
    let towers = common::table("towers.jsonl");
    let quad = batch(&quadratic, "quadratic.jsonl");
    let tow = batch(&towers, "towers.jsonl");

    let outcomes = [
        criterion_1(&quadratic),
        criterion_2(&quad),
        criterion_3(&quadratic),
        criterion_4(&quad, &tow),
        criterion_5(&tow),
        criterion_6(&tow),
        criterion_7(&quad, &tow),
        criterion_8(),
        criterion_9(),
    ];
    for o in &outcomes {
        println!(
            "criterion {} {} {}: {}",
            o.id,
            if o.ok { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.ok).map(|o| o.id).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
