//! Theorem checks over field and tower tables.

pub mod report;
pub mod table;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::galois::{GaloisGroup, Tower};
use crate::polya::{compute_polya, ClassGroups, PolyaData, PolyaRecord};
use crate::units::{h1_via_brz, h_orders_direct, unit_data, CohomologyOrders};

pub use report::{Report, Summary};
pub use table::{load_table, TableEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    Zantema,
    Brz,
    LemmaExactness,
    CyclicPrime,
    TotallyRamified,
    MainTheorem,
    RemarkH1,
    Hilbert94Corollary,
}

impl CheckId {
    pub const ALL: [CheckId; 8] = [
        CheckId::Zantema,
        CheckId::Brz,
        CheckId::LemmaExactness,
        CheckId::CyclicPrime,
        CheckId::TotallyRamified,
        CheckId::MainTheorem,
        CheckId::RemarkH1,
        CheckId::Hilbert94Corollary,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckId::Zantema => "zantema",
            CheckId::Brz => "brz",
            CheckId::LemmaExactness => "lemma-exactness",
            CheckId::CyclicPrime => "cyclic-prime",
            CheckId::TotallyRamified => "totally-ramified",
            CheckId::MainTheorem => "main-theorem",
            CheckId::RemarkH1 => "remark-h1",
            CheckId::Hilbert94Corollary => "hilbert94-corollary",
        }
    }

    /// `all` or a comma-separated list of ids.
    pub fn parse_list(s: &str) -> Result<Vec<CheckId>> {
        if s.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        let mut out: Vec<CheckId> = s.split(',').map(|x| x.trim().parse()).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Table(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Direct,
    Derived,
    Consistency,
    Structural,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub entry: String,
    pub check: CheckId,
    pub verdict: Verdict,
    /// why the check applies or not
    pub gate: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    pub witness: BTreeMap<String, Value>,
}

fn big(x: &BigInt) -> Value {
    // exact integers; JSON numbers for the small ones
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

fn is_prime_small(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Everything the checks read, computed once per entry.
pub struct EntryContext<'a> {
    label: String,
    tower: Tower,
    data: PolyaData,
    direct: Option<CohomologyOrders>,
    store: &'a ClassGroups,
}

impl<'a> EntryContext<'a> {
    pub fn new(entry: &TableEntry, store: &'a ClassGroups, audit_bound: Option<u64>) -> Result<Self> {
        let tower = entry.build()?;
        let data = compute_polya(&tower, store, audit_bound)?;
        let direct = if tower.base().is_rationals() && tower.top().degree() == 2 {
            Some(h_orders_direct(tower.top())?)
        } else {
            None
        };
        Ok(EntryContext {
            label: entry.label.clone(),
            tower,
            data,
            direct,
            store,
        })
    }

    pub fn data(&self) -> &PolyaData {
        &self.data
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn record(&self) -> PolyaRecord {
        self.data.record(&self.label)
    }

    fn e_product(&self) -> BigInt {
        self.data.ramified.iter().map(|r| BigInt::from(r.e)).product()
    }

    fn base_witness(&self) -> BTreeMap<String, Value> {
        let d = &self.data;
        let mut w = BTreeMap::new();
        w.insert("degree".into(), json!(self.tower.degree()));
        w.insert("h_base".into(), big(&d.h_base));
        w.insert("h_top".into(), big(&d.h_top));
        w.insert("cl_top".into(), bigs(&d.cl_top));
        w.insert("ramified".into(), serde_json::to_value(&d.ramified).unwrap());
        w.insert("e_product".into(), big(&self.e_product()));
        w.insert("po_order".into(), big(&d.po.order()));
        w.insert("eps_order".into(), big(&d.eps_image.order()));
        w.insert("ost_order".into(), big(&d.ost_order()));
        w.insert("ost_invariants".into(), bigs(&d.ost.0));
        w.insert("kernel_order".into(), big(&d.kernel_order));
        w.insert("ramified_infinite".into(), json!(self.tower.ramified_infinite()));
        w.insert("solvable".into(), json!(self.tower.is_relative_solvable()));
        w.insert("cyclic".into(), json!(self.tower.is_relative_cyclic()));
        w.insert("eps_in_po".into(), json!(d.eps_image.is_subgroup_of(&d.po)));
        w.insert("power_identity".into(), json!(d.power_identity));
        w.insert("g_stable".into(), json!(d.g_stable));
        if let Some((bound, changed)) = d.audit {
            w.insert("audit_bound".into(), json!(bound));
            w.insert("audit_changed".into(), json!(changed));
        }
        if let Some(o) = &self.direct {
            w.insert("h1_direct".into(), big(&o.h1));
            w.insert(
                "h0_hat_direct".into(),
                o.h0_hat.as_ref().map(big).unwrap_or(Value::Null),
            );
        }
        w
    }

    /// Structural facts every check relies on; a violation fails the check.
    fn structural_failure(&self) -> Option<&'static str> {
        let d = &self.data;
        if !d.eps_image.is_subgroup_of(&d.po) {
            Some("capitulation image not contained in Po")
        } else if !d.power_identity {
            Some("Ostrowski ideal power differs from the extended prime")
        } else if !d.g_stable {
            Some("Ostrowski ideal not Galois stable")
        } else if d.audit.is_some_and(|(_, changed)| changed) {
            Some("audit primes changed Po")
        } else {
            None
        }
    }

    fn h1_derived(&self) -> Result<BigInt> {
        h1_via_brz(
            &self.data.kernel_order,
            &self.data.ramification_indices(),
            &self.data.ost_order(),
        )
    }

    pub fn run(&self, check: CheckId) -> TheoremCheck {
        let mut w = self.base_witness();
        let (verdict, gate, mode) = match self.evaluate(check, &mut w) {
            Ok(v) => v,
            Err(e) => {
                w.insert("error".into(), json!(e.to_string()));
                (Verdict::Fail, "error during evaluation".to_string(), None)
            }
        };
        let (verdict, mode) = match (verdict, self.structural_failure()) {
            (Verdict::Pass, Some(why)) => {
                w.insert("structural_failure".into(), json!(why));
                (Verdict::Fail, Some(Mode::Structural))
            }
            _ => (verdict, mode),
        };
        TheoremCheck {
            entry: self.label.clone(),
            check,
            verdict,
            gate,
            mode,
            witness: w,
        }
    }

    fn evaluate(
        &self,
        check: CheckId,
        w: &mut BTreeMap<String, Value>,
    ) -> Result<(Verdict, String, Option<Mode>)> {
        let d = &self.data;
        let n = self.tower.degree();
        let nb = BigInt::from(n);
        let one_ramified = d.ramified.len() == 1;
        let na = |why: &str| Ok((Verdict::NotApplicable, why.to_string(), None));
        let verdict = |ok: bool| if ok { Verdict::Pass } else { Verdict::Fail };
        match check {
            CheckId::Zantema => {
                let Some(direct) = &self.direct else {
                    return na("not a quadratic field over Q");
                };
                let lhs = &direct.h1 * d.po.order();
                let rhs = self.e_product();
                w.insert("lhs_h1_times_po".into(), big(&lhs));
                w.insert(
                    "units".into(),
                    serde_json::to_value(unit_data(self.tower.top())?).unwrap(),
                );
                Ok((verdict(lhs == rhs), "quadratic over Q".into(), Some(Mode::Direct)))
            }
            CheckId::Brz => {
                let lhs = &d.kernel_order * self.e_product();
                w.insert("lhs_kernel_times_e".into(), big(&lhs));
                if let Some(direct) = &self.direct {
                    let rhs = &direct.h1 * d.ost_order();
                    w.insert("rhs_h1_times_ost".into(), big(&rhs));
                    return Ok((verdict(lhs == rhs), "Galois tower".into(), Some(Mode::Direct)));
                }
                match self.h1_derived() {
                    Ok(h1) => {
                        w.insert("h1_derived".into(), big(&h1));
                        let mut ok = true;
                        if self.tower.is_relative_cyclic() {
                            // Herbrand: h0_hat = h1 2^s / n must be an integer
                            let num = &h1 * (BigInt::one() << self.tower.ramified_infinite());
                            let integral = num.is_multiple_of(&nb);
                            w.insert("herbrand_integral".into(), json!(integral));
                            if integral {
                                w.insert("h0_hat_derived".into(), big(&(num / &nb)));
                            }
                            ok &= integral;
                        }
                        Ok((verdict(ok), "Galois tower".into(), Some(Mode::Derived)))
                    }
                    Err(e @ Error::NonIntegralOrder { .. }) => {
                        w.insert("error".into(), json!(e.to_string()));
                        Ok((Verdict::Fail, "Galois tower".into(), Some(Mode::Derived)))
                    }
                    Err(e) => Err(e),
                }
            }
            CheckId::LemmaExactness => {
                let base = self.tower.base();
                if base.is_rationals() || n == 1 {
                    return na("no proper intermediate field");
                }
                let Ok(gk) = GaloisGroup::compute(base) else {
                    return na("intermediate field not Galois over Q");
                };
                let po_k = compute_polya(&Tower::over_rationals(gk), self.store, None)?.po;
                let po_l = compute_polya(
                    &Tower::over_rationals(self.tower.group().clone()),
                    self.store,
                    None,
                )?
                .po;
                // Q has trivial class group, so the F-image terms vanish
                let a = d.eps.image(&po_k);
                let b = po_l.meet(&d.eps_image)?;
                w.insert("image_psi_order".into(), big(&a.order()));
                w.insert("kernel_phi_order".into(), big(&b.order()));
                w.insert(
                    "image_psi_generators".into(),
                    Value::Array(a.generators().iter().map(|g| bigs(g)).collect()),
                );
                w.insert(
                    "kernel_phi_generators".into(),
                    Value::Array(b.generators().iter().map(|g| bigs(g)).collect()),
                );
                w.insert("po_base_over_q".into(), big(&po_k.order()));
                w.insert("po_top_over_q".into(), big(&po_l.order()));
                Ok((
                    verdict(a == b),
                    "Q ⊆ K ⊆ L, all Galois over Q".into(),
                    Some(Mode::Direct),
                ))
            }
            CheckId::CyclicPrime => {
                if !is_prime_small(n) {
                    return na("degree is not prime");
                }
                if !one_ramified {
                    return na("not exactly one ramified finite prime");
                }
                w.insert(
                    "infinite_ramification".into(),
                    json!(self.tower.ramified_infinite() > 0),
                );
                Ok((
                    verdict(d.ost.is_trivial()),
                    "prime degree, one ramified finite prime".into(),
                    Some(Mode::Direct),
                ))
            }
            CheckId::TotallyRamified | CheckId::RemarkH1 => {
                if !self.tower.is_relative_solvable() {
                    return na("not solvable");
                }
                if !one_ramified || d.ramified[0].e as usize != n {
                    return na("no unique totally ramified prime");
                }
                let derived = self.h1_derived()?;
                w.insert("h1_derived".into(), big(&derived));
                let (h1, mode) = match &self.direct {
                    Some(o) => (o.h1.clone(), Mode::Direct),
                    None => (derived.clone(), Mode::Derived),
                };
                let injective = d.kernel_order.is_one();
                let h1_ok = h1 == nb && derived == nb;
                let ok = if check == CheckId::TotallyRamified {
                    d.ost.is_trivial() && injective && h1_ok
                } else {
                    injective && h1_ok
                };
                Ok((
                    verdict(ok),
                    "solvable, one totally ramified prime".into(),
                    Some(mode),
                ))
            }
            CheckId::MainTheorem => {
                if !self.tower.is_relative_solvable() {
                    return na("not solvable");
                }
                if !one_ramified {
                    return na("not exactly one ramified prime");
                }
                let (small, _) = self.tower.ramified()?.remove(0);
                let above = self.tower.primes_above(&small)?;
                let dec = self.tower.decomposition_group(&above[0])?;
                let inertia = self.tower.inertia_group(&above[0])?;
                w.insert("primes_above".into(), json!(above.len()));
                w.insert("decomposition_order".into(), json!(dec.len()));
                w.insert("inertia_order".into(), json!(inertia.len()));
                if above.len() != 1 || dec.len() != n {
                    return Ok((
                        Verdict::NotApplicable,
                        "decomposition group is a proper subgroup; Ost recorded as data".into(),
                        None,
                    ));
                }
                Ok((
                    verdict(d.ost.is_trivial()),
                    "solvable, one ramified prime, D = G".into(),
                    Some(Mode::Direct),
                ))
            }
            CheckId::Hilbert94Corollary => {
                if !self.tower.is_relative_cyclic() {
                    return na("not cyclic");
                }
                if !one_ramified {
                    return na("not exactly one ramified finite prime");
                }
                if d.ramified[0].g != 1 {
                    return na("more than one prime above the ramified prime");
                }
                let s = self.tower.ramified_infinite();
                if s != 0 {
                    return na("ramified at infinity");
                }
                let f = BigInt::from(d.ramified[0].f);
                let (h0, mode) = match &self.direct {
                    Some(CohomologyOrders { h0_hat: Some(h0), .. }) => (h0.clone(), Mode::Direct),
                    _ => {
                        let h1 = self.h1_derived()?;
                        w.insert("h1_derived".into(), big(&h1));
                        let (q, r) = h1.div_rem(&nb);
                        if !r.is_zero() {
                            w.insert("herbrand_integral".into(), json!(false));
                            return Ok((
                                Verdict::Fail,
                                "cyclic, one ramified prime, unique above, s = 0".into(),
                                Some(Mode::Consistency),
                            ));
                        }
                        (q, Mode::Consistency)
                    }
                };
                let lhs = &f * &h0;
                w.insert("f".into(), big(&f));
                w.insert("h0_hat".into(), big(&h0));
                w.insert("f_times_h0_hat".into(), big(&lhs));
                Ok((
                    verdict(d.kernel_order.is_multiple_of(&lhs)),
                    "cyclic, one ramified prime, unique above, s = 0".into(),
                    Some(mode),
                ))
            }
        }
    }
}

/// All checks on one entry; errors fail every requested check.
pub fn evaluate_entry(
    entry: &TableEntry,
    checks: &[CheckId],
    store: &ClassGroups,
    audit_bound: Option<u64>,
) -> (Option<PolyaRecord>, Vec<TheoremCheck>) {
    match EntryContext::new(entry, store, audit_bound) {
        Ok(ctx) => (Some(ctx.record()), checks.iter().map(|&c| ctx.run(c)).collect()),
        Err(e) => {
            let results = checks
                .iter()
                .map(|&check| TheoremCheck {
                    entry: entry.label.clone(),
                    check,
                    verdict: Verdict::Fail,
                    gate: "entry could not be evaluated".into(),
                    mode: None,
                    witness: BTreeMap::from([("error".to_string(), json!(e.to_string()))]),
                })
                .collect();
            (None, results)
        }
    }
}

#[derive(Clone, Debug)]
pub struct BatchOptions {
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub audit_bound: Option<u64>,
    pub table_name: String,
}

/// Evaluate every entry; entries run in parallel and the report keeps table
/// order.
pub fn run_batch(entries: &[TableEntry], checks: &[CheckId], opts: &BatchOptions) -> Report {
    let store = ClassGroups::new(opts.seed, opts.cache_dir.clone());
    let results: Vec<_> = entries
        .par_iter()
        .map(|e| {
            let (record, checks) = evaluate_entry(e, checks, &store, opts.audit_bound);
            report::EntryReport {
                label: e.label.clone(),
                polya: record,
                results: checks,
            }
        })
        .collect();
    Report::new(opts, checks, results)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(label: &str, top: &[i64]) -> TableEntry {
        TableEntry {
            label: label.into(),
            top: top.to_vec(),
            base: None,
            embedding: None,
        }
    }

    fn verdicts(e: &TableEntry) -> BTreeMap<CheckId, Verdict> {
        let store = ClassGroups::new(0, None);
        let (_, res) = evaluate_entry(e, &CheckId::ALL, &store, None);
        res.into_iter().map(|c| (c.check, c.verdict)).collect()
    }

    #[test]
    fn check_ids_round_trip() {
        for c in CheckId::ALL {
            assert_eq!(c.as_str().parse::<CheckId>().unwrap(), c);
            assert_eq!(serde_json::to_value(c).unwrap(), json!(c.as_str()));
        }
        assert_eq!(
            CheckId::parse_list("brz,zantema,brz").unwrap(),
            vec![CheckId::Zantema, CheckId::Brz]
        );
        assert!(CheckId::parse_list("nope").is_err());
    }

    #[test]
    fn quadratic_gates() {
        let v = verdicts(&entry("Q(sqrt -5)", &[5, 0, 1]));
        assert_eq!(v[&CheckId::Zantema], Verdict::Pass);
        assert_eq!(v[&CheckId::Brz], Verdict::Pass);
        assert_eq!(v[&CheckId::CyclicPrime], Verdict::NotApplicable);
        assert_eq!(v[&CheckId::LemmaExactness], Verdict::NotApplicable);
        let v = verdicts(&entry("Q(sqrt -23)", &[6, -1, 1]));
        assert_eq!(v[&CheckId::CyclicPrime], Verdict::Pass);
        assert_eq!(v[&CheckId::TotallyRamified], Verdict::Pass);
        assert_eq!(v[&CheckId::MainTheorem], Verdict::Pass);
        assert_eq!(v[&CheckId::Hilbert94Corollary], Verdict::NotApplicable);
        let v = verdicts(&entry("Q(sqrt 2)", &[-2, 0, 1]));
        assert_eq!(v[&CheckId::Hilbert94Corollary], Verdict::Pass);
    }

    #[test]
    fn errors_fail_every_check() {
        let (rec, res) = evaluate_entry(
            &entry("cube root of 2", &[-2, 0, 0, 1]),
            &CheckId::ALL,
            &ClassGroups::new(0, None),
            None,
        );
        assert!(rec.is_none());
        assert!(res
            .iter()
            .all(|c| c.verdict == Verdict::Fail && c.witness.contains_key("error")));
    }
}
