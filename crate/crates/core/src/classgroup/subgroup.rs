//! Subgroups of a finite abelian group `Z^s / diag(d) Z^s`.
//!
//! A subgroup is stored as the canonical HNF of its preimage lattice in
//! `Z^s`, so equality of subgroups is equality of matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Invariant factors of a finite abelian group, all greater than one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianStructure(#[serde(with = "crate::arith::json::vec")] pub Vec<BigInt>);

impl AbelianStructure {
    pub fn from_diagonal(d: &[BigInt]) -> Self {
        let mut v: Vec<BigInt> = d.iter().filter(|x| !x.is_one()).cloned().collect();
        assert!(v.iter().all(|x| !x.is_zero()), "infinite group");
        v.sort();
        AbelianStructure(v)
    }

    pub fn order(&self) -> BigInt {
        self.0.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for AbelianStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    #[serde(with = "crate::arith::json::vec")]
    ambient: Vec<BigInt>,
    lattice: IntMatrix,
}

fn hnf_square(s: usize, cols: &[Vec<BigInt>]) -> IntMatrix {
    let res = IntMatrix::from_columns(s, cols).hnf();
    assert_eq!(res.rank, s, "subgroup lattice must contain the relations");
    res.basis()
}

/// `X` with `H X = M` for upper-triangular `H`; `None` if not integral.
fn solve_columns(h: &IntMatrix, m: &IntMatrix) -> Option<IntMatrix> {
    let cols: Option<Vec<Vec<BigInt>>> = m.columns().iter().map(|c| h.solve_upper_triangular(c)).collect();
    Some(IntMatrix::from_columns(h.rows(), &cols?))
}

fn snf_structure(m: &IntMatrix) -> AbelianStructure {
    if m.rows() == 0 {
        return AbelianStructure(Vec::new());
    }
    AbelianStructure::from_diagonal(&m.snf().invariants())
}

impl Subgroup {
    fn relation_columns(ambient: &[BigInt]) -> Vec<Vec<BigInt>> {
        let s = ambient.len();
        (0..s)
            .map(|i| {
                let mut e = vec![BigInt::zero(); s];
                e[i] = ambient[i].clone();
                e
            })
            .collect()
    }

    /// Subgroup generated by the given coordinate vectors.
    pub fn generated(ambient: &[BigInt], gens: &[Vec<BigInt>]) -> Self {
        let s = ambient.len();
        let mut cols: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| {
                assert_eq!(g.len(), s, "generator length");
                g.iter().zip(ambient).map(|(x, d)| x.mod_floor(d)).collect()
            })
            .collect();
        cols.extend(Self::relation_columns(ambient));
        let lattice = if s == 0 {
            IntMatrix::zeros(0, 0)
        } else {
            hnf_square(s, &cols)
        };
        Subgroup {
            ambient: ambient.to_vec(),
            lattice,
        }
    }

    pub fn trivial(ambient: &[BigInt]) -> Self {
        Self::generated(ambient, &[])
    }

    pub fn whole(ambient: &[BigInt]) -> Self {
        let s = ambient.len();
        Subgroup {
            ambient: ambient.to_vec(),
            lattice: IntMatrix::identity(s),
        }
    }

    pub fn ambient(&self) -> &[BigInt] {
        &self.ambient
    }

    pub fn lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    /// Canonical generators: the HNF columns reduced into the group.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.lattice
            .columns()
            .into_iter()
            .map(|c| {
                c.iter()
                    .zip(&self.ambient)
                    .map(|(x, d)| x.mod_floor(d))
                    .collect::<Vec<_>>()
            })
            .filter(|c: &Vec<BigInt>| c.iter().any(|x| !x.is_zero()))
            .collect()
    }

    pub fn order(&self) -> BigInt {
        let whole: BigInt = self.ambient.iter().product();
        let idx: BigInt = self.lattice.diagonal_entries().iter().product();
        whole / idx
    }

    pub fn structure(&self) -> AbelianStructure {
        let d = IntMatrix::diagonal(&self.ambient);
        let x = solve_columns(&self.lattice, &d).expect("relations lie in every subgroup");
        snf_structure(&x)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.ambient.is_empty() || self.lattice.solve_upper_triangular(v).is_some()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && self.lattice.columns().iter().all(|c| other.contains(c))
    }

    fn check_ambient(&self, other: &Subgroup) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::Unsupported("subgroups of different groups".into()))
        }
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_ambient(other)?;
        let mut gens = self.lattice.columns();
        gens.extend(other.lattice.columns());
        Ok(Subgroup::generated(&self.ambient, &gens))
    }

    pub fn meet(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_ambient(other)?;
        let s = self.ambient.len();
        if s == 0 {
            return Ok(self.clone());
        }
        // x with A x = B y: the kernel of [A | -B]
        let minus_b: Vec<Vec<BigInt>> = other
            .lattice
            .columns()
            .iter()
            .map(|c| c.iter().map(|x| -x).collect())
            .collect();
        let stacked = self.lattice.hcat(&IntMatrix::from_columns(s, &minus_b));
        let gens: Vec<Vec<BigInt>> = stacked
            .kernel()
            .iter()
            .map(|k| self.lattice.mul_vec(&k[..s]))
            .collect();
        Ok(Subgroup::generated(&self.ambient, &gens))
    }

    /// Structure of `self / sub`; `sub` must be contained in `self`.
    pub fn quotient(&self, sub: &Subgroup) -> Result<AbelianStructure> {
        self.check_ambient(sub)?;
        if !sub.is_subgroup_of(self) {
            return Err(Error::NonNestedQuotient);
        }
        if self.ambient.is_empty() {
            return Ok(AbelianStructure(Vec::new()));
        }
        let x = solve_columns(&self.lattice, &sub.lattice).ok_or(Error::NonNestedQuotient)?;
        Ok(snf_structure(&x))
    }

    /// Image under the homomorphism given by `map` (columns are the images
    /// of this group's unit vectors in the target group).
    pub fn image(&self, map: &IntMatrix, target: &[BigInt]) -> Subgroup {
        let gens: Vec<Vec<BigInt>> = self.generators().iter().map(|g| map.mul_vec(g)).collect();
        Subgroup::generated(target, &gens)
    }
}
