//! On-disk cache of class group computations.
//!
//! Records store the relation elements; loading recomputes their factor-base
//! vectors and rejects the record unless the lattice and invariants agree.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{compute_class_group, factor_base, factor_base_bound, ClassGroup, RelationLattice, Valuator};
use crate::arith::matrix::IntMatrix;
use crate::arith::poly::IntPoly;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::PrimeSummary;

const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Record {
    version: u32,
    poly: IntPoly,
    factor_base: Vec<PrimeSummary>,
    #[serde(with = "crate::arith::json::rows")]
    relations: Vec<Vec<BigInt>>,
    lattice: IntMatrix,
    #[serde(with = "crate::arith::json::vec")]
    invariants: Vec<BigInt>,
}

/// `NF_CACHE_DIR` if set, else `.nf-cache` in the working directory.
pub fn default_dir() -> PathBuf {
    std::env::var_os("NF_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".nf-cache"))
}

fn file_name(poly: &IntPoly) -> String {
    let parts: Vec<String> = poly
        .coeffs()
        .iter()
        .map(|c| c.to_string().replace('-', "m"))
        .collect();
    format!("cl_{}.json", parts.join("_"))
}

pub fn clear(dir: &Path) -> Result<usize> {
    if !dir.exists() {
        return Ok(0);
    }
    let mut n = 0;
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "json") {
            fs::remove_file(&path)?;
            n += 1;
        }
    }
    Ok(n)
}

fn load(field: &Field, path: &Path) -> Result<ClassGroup> {
    let rec: Record = serde_json::from_slice(&fs::read(path)?)?;
    let bad = |what: &str| Error::Cache(format!("{}: {what}", path.display()));
    if rec.version != VERSION || &rec.poly != field.poly() {
        return Err(bad("stale record"));
    }
    let fb = factor_base(field, factor_base_bound(field)?)?;
    if fb.iter().map(|p| p.summary()).collect::<Vec<_>>() != rec.factor_base {
        return Err(bad("factor base differs"));
    }
    let mut lattice = RelationLattice {
        rows: fb.len(),
        basis: None,
    };
    {
        let mut val = Valuator::new(field, &fb);
        for a in &rec.relations {
            let v = val.vector(a).ok_or_else(|| bad("relation not smooth"))?;
            lattice.add(&v);
        }
    }
    let group = ClassGroup::assemble(field, fb, rec.relations, lattice.basis)?;
    if group.relation_lattice() != &rec.lattice || group.invariants() != &rec.invariants[..] {
        return Err(bad("relations do not reproduce the stored group"));
    }
    Ok(group)
}

fn store(group: &ClassGroup, path: &Path) -> Result<()> {
    let rec = Record {
        version: VERSION,
        poly: group.field().poly().clone(),
        factor_base: group.factor_base().iter().map(|p| p.summary()).collect(),
        relations: group.relations().to_vec(),
        lattice: group.relation_lattice().clone(),
        invariants: group.invariants().to_vec(),
    };
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, serde_json::to_vec(&rec)?)?;
    Ok(())
}

/// Load `Cl(field)` from `dir`, computing and storing it on a miss.
/// A record that fails re-verification is recomputed and overwritten.
pub fn class_group_cached(field: &Field, seed: u64, dir: &Path) -> Result<ClassGroup> {
    let path = dir.join(file_name(field.poly()));
    if path.exists() {
        if let Ok(g) = load(field, &path) {
            return Ok(g);
        }
    }
    let group = compute_class_group(field, seed)?;
    store(&group, &path)?;
    Ok(group)
}
