//! Field and tower tables (JSON lines) and the textual field syntax of the CLI.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::int::is_squarefree;
use crate::arith::poly::IntPoly;
use crate::error::{Error, Result};
use crate::field::{make_field, quadratic_poly, Embedding, Field, NumberField};
use crate::galois::{GaloisGroup, Tower};

/// One table line: `top` over `Q`, or over `base` through `embedding`
/// (coordinates of the image of the base generator).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub label: String,
    pub top: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<i64>>,
}

impl TableEntry {
    pub fn over_q(label: &str, top: &IntPoly) -> Self {
        TableEntry {
            label: label.to_string(),
            top: to_i64(top),
            base: None,
            embedding: None,
        }
    }

    pub fn tower(label: &str, base: &IntPoly, emb: &Embedding) -> Self {
        TableEntry {
            label: label.to_string(),
            top: to_i64(emb.target().poly()),
            base: Some(to_i64(base)),
            embedding: Some(emb.image().iter().map(|c| i64::try_from(c).unwrap()).collect()),
        }
    }

    pub fn build(&self) -> Result<Tower> {
        let top = make_field(&IntPoly::from_i64(&self.top))?;
        let group = GaloisGroup::compute(&top)?;
        let emb = match (&self.base, &self.embedding) {
            (None, _) => Embedding::from_rationals(&top),
            (Some(b), Some(img)) => {
                let base = make_field(&IntPoly::from_i64(b))?;
                Embedding::new(&base, &top, img.iter().map(|&x| BigInt::from(x)).collect())?
            }
            (Some(_), None) => return Err(Error::Table(format!("{}: base without embedding", self.label))),
        };
        Tower::new(emb, group)
    }
}

fn to_i64(f: &IntPoly) -> Vec<i64> {
    f.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
}

/// Read a JSON-lines table; blank lines and lines starting with `#` are skipped.
pub fn load_table(path: &Path) -> Result<Vec<TableEntry>> {
    let text = std::fs::read_to_string(path)?;
    parse_table(&text)
}

pub fn parse_table(text: &str) -> Result<Vec<TableEntry>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Table(format!("line {}: {e}", i + 1))))
        .collect()
}

pub fn write_table(entries: &[TableEntry]) -> String {
    entries
        .iter()
        .map(|e| serde_json::to_string(e).unwrap() + "\n")
        .collect()
}

/// Parse a polynomial in `x`, such as `x^4 + 3*x^2 + 1` or `x^2-x-1`.
pub fn parse_poly(s: &str) -> Result<IntPoly> {
    let bad = || Error::Table(format!("cannot parse polynomial {s:?}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut rest = t.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let (c, deg) = match term.find('x') {
            None => (term.parse::<BigInt>().map_err(|_| bad())?, 0usize),
            Some(i) => {
                let c = match term[..i].trim_end_matches('*') {
                    "" => BigInt::from(1),
                    v => v.parse::<BigInt>().map_err(|_| bad())?,
                };
                let d = match &term[i + 1..] {
                    "" => 1,
                    e => e.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?,
                };
                (c, d)
            }
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, BigInt::from(0));
        }
        coeffs[deg] += c * sign;
    }
    Ok(IntPoly::new(coeffs))
}

/// A field given as `Q`, `sqrt(d)`, a polynomial in `x`, or comma-separated
/// coefficients from the constant term up.
pub fn parse_field(s: &str) -> Result<Field> {
    let t = s.trim();
    if t == "Q" || t == "x" {
        return Ok(NumberField::rationals());
    }
    if let Some(d) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let d: i64 = d
            .trim()
            .parse()
            .map_err(|_| Error::Table(format!("bad radicand {d:?}")))?;
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::Table(format!(
                "{d} is not a squarefree integer other than 0, 1"
            )));
        }
        return make_field(&quadratic_poly(d));
    }
    if t.contains('x') {
        return make_field(&parse_poly(t)?);
    }
    let coeffs: std::result::Result<Vec<i64>, _> = t.split(',').map(|c| c.trim().parse()).collect();
    let coeffs = coeffs.map_err(|_| Error::Table(format!("cannot parse field {t:?}")))?;
    make_field(&IntPoly::from_i64(&coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_syntax() {
        assert_eq!(
            parse_poly("x^4 + 3*x^2 + 1").unwrap(),
            IntPoly::from_i64(&[1, 0, 3, 0, 1])
        );
        assert_eq!(parse_poly("x^2-x-1").unwrap(), IntPoly::from_i64(&[-1, -1, 1]));
        assert_eq!(parse_poly("-2x+x^3").unwrap(), IntPoly::from_i64(&[0, -2, 0, 1]));
        assert!(parse_poly("x^^2").is_err());
    }

    #[test]
    fn field_syntax() {
        assert_eq!(parse_field("sqrt(-5)").unwrap().disc(), &BigInt::from(-20));
        assert_eq!(parse_field("5,0,1").unwrap().disc(), &BigInt::from(-20));
        assert!(parse_field("Q").unwrap().is_rationals());
        assert!(parse_field("sqrt(4)").is_err());
    }

    #[test]
    fn table_round_trip() {
        let text = "# comment\n{\"label\":\"a\",\"top\":[5,0,1]}\n\n";
        let t = parse_table(text).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(parse_table(&write_table(&t)).unwrap(), t);
        assert!(parse_table("{").is_err());
    }
}
