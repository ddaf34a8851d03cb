//! Pólya groups, capitulation, and Ostrowski quotients inside `Cl(L)`.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::int::primes_up_to;
use crate::arith::poly::IntPoly;
use crate::classgroup::cache::class_group_cached;
use crate::classgroup::{
    compute_class_group, factor_base, AbelianStructure, ClassElement, ClassGroup, Subgroup,
};
use crate::error::{Error, Result};
use crate::field::{Embedding, Field};
use crate::galois::{RelativeSplitting, Tower};
use crate::ideal::{decompose_prime, relative_ostrowski_ideal, Ideal, PrimeIdeal};

/// Class groups shared across a run, optionally backed by the disk cache.
pub struct ClassGroups {
    seed: u64,
    cache_dir: Option<PathBuf>,
    groups: Mutex<HashMap<IntPoly, Arc<ClassGroup>>>,
}

impl ClassGroups {
    pub fn new(seed: u64, cache_dir: Option<PathBuf>) -> Self {
        ClassGroups {
            seed,
            cache_dir,
            groups: Mutex::new(HashMap::new()),
        }
    }

    pub fn get(&self, field: &Field) -> Result<Arc<ClassGroup>> {
        if let Some(g) = self.groups.lock().unwrap().get(field.poly()) {
            return Ok(g.clone());
        }
        let g = Arc::new(match &self.cache_dir {
            Some(dir) => class_group_cached(field, self.seed, dir)?,
            None => compute_class_group(field, self.seed)?,
        });
        Ok(self
            .groups
            .lock()
            .unwrap()
            .entry(field.poly().clone())
            .or_insert(g)
            .clone())
    }
}

/// A homomorphism between class groups in SNF coordinates.
#[derive(Clone, Debug)]
pub struct ClassMap {
    /// images of the source generators
    columns: Vec<ClassElement>,
    source: Vec<BigInt>,
    target: Vec<BigInt>,
}

impl ClassMap {
    /// The map `Cl(K) -> Cl(L)` induced by `a -> a O_L`.
    pub fn extension(emb: &Embedding, cl_k: &ClassGroup, cl_l: &ClassGroup) -> Result<Self> {
        if **emb.source() != **cl_k.field() || **emb.target() != **cl_l.field() {
            return Err(Error::FieldMismatch);
        }
        let mut prime_images = Vec::with_capacity(cl_k.factor_base().len());
        if !cl_k.invariants().is_empty() {
            for pr in cl_k.factor_base() {
                prime_images.push(cl_l.class_of(&pr.ideal.extend(emb)?)?);
            }
        }
        let columns = cl_k
            .generator_exponents()
            .iter()
            .map(|v| {
                let mut acc = cl_l.identity();
                for (x, img) in v.iter().zip(&prime_images) {
                    acc = cl_l.add(&acc, &cl_l.scale(img, x));
                }
                acc
            })
            .collect();
        Ok(ClassMap {
            columns,
            source: cl_k.invariants().to_vec(),
            target: cl_l.invariants().to_vec(),
        })
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.target.len()];
        for (c, col) in x.iter().zip(&self.columns) {
            for (o, y) in out.iter_mut().zip(&col.0) {
                *o += c * y;
            }
        }
        out.iter_mut()
            .zip(&self.target)
            .for_each(|(o, d)| *o = num_integer::Integer::mod_floor(o, d));
        out
    }

    pub fn image(&self, sub: &Subgroup) -> Subgroup {
        let gens: Vec<Vec<BigInt>> = sub.generators().iter().map(|g| self.apply(g)).collect();
        Subgroup::generated(&self.target, &gens)
    }

    pub fn full_image(&self) -> Subgroup {
        self.image(&Subgroup::whole(&self.source))
    }

    /// `#Cl(K) / #image`.
    pub fn kernel_order(&self) -> BigInt {
        let h: BigInt = self.source.iter().product();
        h / self.full_image().order()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RamifiedPrime {
    #[serde(with = "crate::arith::json::int")]
    pub p: BigInt,
    /// residue degree of the prime of the base field over `p`
    pub base_f: u32,
    pub e: u32,
    pub f: u32,
    pub g: usize,
}

impl From<&RelativeSplitting> for RamifiedPrime {
    fn from(s: &RelativeSplitting) -> Self {
        RamifiedPrime {
            p: s.p.clone(),
            base_f: s.base_f,
            e: s.e,
            f: s.f,
            g: s.g,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PolyaData {
    pub h_base: BigInt,
    pub h_top: BigInt,
    pub cl_top: Vec<BigInt>,
    pub ramified: Vec<RamifiedPrime>,
    /// `Po(L/K)`
    pub po: Subgroup,
    /// classes of the ramified Ostrowski ideals alone
    pub po_ramified: Subgroup,
    pub eps_image: Subgroup,
    pub eps: ClassMap,
    pub ost: AbelianStructure,
    pub kernel_order: BigInt,
    /// `Π^e = 𝔭 O_L` for every generator
    pub power_identity: bool,
    /// every Ostrowski generator is fixed by `Gal(L/K)`
    pub g_stable: bool,
    /// unramified primes where `Π = 𝔭 O_L` was checked
    pub spot_checked: Vec<BigInt>,
    /// audit bound and whether the enlarged generator set changed `Po`
    pub audit: Option<(u64, bool)>,
}

impl PolyaData {
    pub fn ost_order(&self) -> BigInt {
        self.ost.order()
    }

    pub fn ramification_indices(&self) -> Vec<u32> {
        self.ramified.iter().map(|r| r.e).collect()
    }

    pub fn record(&self, label: &str) -> PolyaRecord {
        PolyaRecord {
            label: label.to_string(),
            h_k: self.h_base.clone(),
            h_l: self.h_top.clone(),
            cl_l: self.cl_top.clone(),
            ramified: self.ramified.clone(),
            po_invariants: self.po.structure().0,
            eps_invariants: self.eps_image.structure().0,
            ost_invariants: self.ost.0.clone(),
            kernel_order: self.kernel_order.clone(),
        }
    }
}

/// Serialized form of [`PolyaData`].
#[derive(Clone, Debug, Serialize)]
pub struct PolyaRecord {
    pub label: String,
    #[serde(with = "crate::arith::json::int")]
    pub h_k: BigInt,
    #[serde(with = "crate::arith::json::int")]
    pub h_l: BigInt,
    #[serde(with = "crate::arith::json::vec")]
    pub cl_l: Vec<BigInt>,
    pub ramified: Vec<RamifiedPrime>,
    #[serde(with = "crate::arith::json::vec")]
    pub po_invariants: Vec<BigInt>,
    #[serde(with = "crate::arith::json::vec")]
    pub eps_invariants: Vec<BigInt>,
    #[serde(with = "crate::arith::json::vec")]
    pub ost_invariants: Vec<BigInt>,
    #[serde(with = "crate::arith::json::int")]
    pub kernel_order: BigInt,
}

fn is_stable(tower: &Tower, a: &Ideal) -> Result<bool> {
    for &i in tower.relative_group() {
        if tower.group().element(i).apply_to_ideal(a)? != *a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Π_{𝔭^f}(L/K)` with `f` the common relative residue degree.
fn ostrowski_of(tower: &Tower, small: &PrimeIdeal) -> Result<(Ideal, RelativeSplitting)> {
    let s = tower.splitting(small)?;
    Ok((relative_ostrowski_ideal(tower.embedding(), small, s.f)?, s))
}

/// `Po(L/K)`, the capitulation map, and `Ost(L/K)` for a Galois tower.
///
/// `Po` is generated by the relative Ostrowski ideals of the ramified primes
/// of `K` and of the factor-base primes of `K`; the remaining unramified
/// primes give `𝔭 O_L`, whose classes already lie in `ε(Cl K)`. With
/// `audit_bound` every prime of `K` up to that norm is added and `Po` must
/// not change.
pub fn compute_polya(tower: &Tower, store: &ClassGroups, audit_bound: Option<u64>) -> Result<PolyaData> {
    let cl_k = store.get(tower.base())?;
    let cl_l = store.get(tower.top())?;
    let eps = ClassMap::extension(tower.embedding(), &cl_k, &cl_l)?;
    let eps_image = eps.full_image();
    let kernel_order = eps.kernel_order();

    let ramified_pairs = tower.ramified()?;
    let mut power_identity = true;
    let mut g_stable = true;
    let mut ram_gens = Vec::new();
    let mut add_generator = |small: &PrimeIdeal, gens: &mut Vec<Vec<BigInt>>| -> Result<()> {
        let (pi, s) = ostrowski_of(tower, small)?;
        g_stable &= is_stable(tower, &pi)?;
        power_identity &= pi.pow(s.e) == small.ideal.extend(tower.embedding())?;
        gens.push(cl_l.class_of(&pi)?.0);
        Ok(())
    };
    for (small, _) in &ramified_pairs {
        add_generator(small, &mut ram_gens)?;
    }
    let mut all_gens = ram_gens.clone();
    for small in cl_k.factor_base() {
        if !ramified_pairs.iter().any(|(r, _)| r.ideal == small.ideal) {
            add_generator(small, &mut all_gens)?;
        }
    }
    let po_ramified = Subgroup::generated(cl_l.invariants(), &ram_gens);
    let po = Subgroup::generated(cl_l.invariants(), &all_gens);

    let audit = match audit_bound {
        Some(bound) => {
            let mut gens = all_gens.clone();
            for small in factor_base(tower.base(), bound)? {
                add_generator(&small, &mut gens)?;
            }
            let audited = Subgroup::generated(cl_l.invariants(), &gens);
            Some((bound, audited.join(&eps_image)? != po.join(&eps_image)?))
        }
        None => None,
    };

    // unramified Ostrowski ideals are extended ideals
    let mut spot_checked = Vec::new();
    let bad: Vec<BigInt> = ramified_pairs.iter().map(|(s, _)| s.p.clone()).collect();
    for p in primes_up_to(200) {
        if spot_checked.len() == 3 {
            break;
        }
        let p = BigInt::from(p);
        if bad.contains(&p) || tower.top().ramified_primes().contains(&p) {
            continue;
        }
        let small = decompose_prime(tower.base(), &p)?.remove(0);
        let (pi, _) = ostrowski_of(tower, &small)?;
        if pi != small.ideal.extend(tower.embedding())? {
            return Err(Error::Unsupported(format!(
                "Ostrowski ideal above unramified {p} is not extended"
            )));
        }
        spot_checked.push(p);
    }

    let ost = po.join(&eps_image)?.quotient(&eps_image)?;
    Ok(PolyaData {
        h_base: cl_k.order(),
        h_top: cl_l.order(),
        cl_top: cl_l.invariants().to_vec(),
        ramified: ramified_pairs.iter().map(|(_, s)| s.into()).collect(),
        po,
        po_ramified,
        eps_image,
        eps,
        ost,
        kernel_order,
        power_identity,
        g_stable,
        spot_checked,
        audit,
    })
}

/// `Po(L)`, the absolute Pólya group, for a Galois field over `Q`.
pub fn polya_group(tower_over_q: &Tower, store: &ClassGroups) -> Result<Subgroup> {
    if !tower_over_q.base().is_rationals() {
        return Err(Error::Unsupported("expected a tower over Q".into()));
    }
    Ok(compute_polya(tower_over_q, store, None)?.po)
}
