//! Dense integer matrices with Hermite and Smith normal forms.
//!
//! Lattices are stored column-wise throughout the crate: the columns of a
//! matrix are the generating vectors. The Hermite form is therefore the
//! column form `H = M * U`, and the Smith form is `D = U * M * V`.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    #[serde(with = "super::json::vec")]
    data: Vec<BigInt>,
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(&v)
    }

    /// Build a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn diagonal(d: &[BigInt]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !v[j].is_zero())
                    .map(|j| &self[(i, j)] * &v[j])
                    .sum()
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.columns();
        cols.extend(other.columns());
        IntMatrix::from_columns(self.rows, &cols)
    }

    /// Columns `from..to` as a new matrix.
    pub fn column_range(&self, from: usize, to: usize) -> IntMatrix {
        let cols: Vec<_> = (from..to).map(|j| self.column(j)).collect();
        IntMatrix::from_columns(self.rows, &cols)
    }

    pub fn is_zero_column(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self[(i, j)].is_zero())
    }

    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, r);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `col[dst] -= q * col[src]`
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] -= v;
        }
    }

    /// `row[dst] -= q * row[src]`
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] -= v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Inverse of a unimodular matrix (exact, integer).
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        let (q, inv) = self.solve_rational_inverse()?;
        if !q.abs().is_one() {
            return None;
        }
        let mut m = inv;
        if q.is_negative() {
            for v in m.data.iter_mut() {
                *v = -&*v;
            }
        }
        Some(m)
    }

    /// Returns `(det, adj)` with `self * adj = det * I`.
    fn solve_rational_inverse(&self) -> Option<(BigInt, IntMatrix)> {
        assert!(self.is_square());
        let n = self.rows;
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        // Gauss-Jordan over Q, scaled back to integers.
        use num_rational::BigRational;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from_integer(self[(i, j)].clone())
                        } else if j - n == i {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            let piv = a[c][c].clone();
            for v in a[c].iter_mut() {
                *v = &*v / &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    let row_c = a[c].clone();
                    for (x, y) in a[r].iter_mut().zip(row_c.iter()) {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        let mut adj = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &a[i][n + j] * BigRational::from_integer(d.clone());
                assert!(v.is_integer());
                adj[(i, j)] = v.to_integer();
            }
        }
        Some((d, adj))
    }

    /// Column Hermite normal form.
    ///
    /// Returns `H = M * U` with `U` unimodular. Zero columns of `H` come
    /// first; the remaining `rank` columns form an echelon in which each pivot
    /// is positive, sits below-right of the previous one, and every entry to
    /// the right of a pivot in its row lies in `[0, pivot)`. For a
    /// full-row-rank input the last `rows` columns are upper triangular.
    pub fn hnf(&self) -> HnfResult {
        let m = self.rows;
        let k = self.cols;
        let mut h = self.clone();
        let mut u = IntMatrix::identity(k);
        let mut pivot_col = k;
        let mut pivot_rows = Vec::new();
        for i in (0..m).rev() {
            if pivot_col == 0 {
                break;
            }
            let found = loop {
                let nz: Vec<usize> = (0..pivot_col).filter(|&j| !h[(i, j)].is_zero()).collect();
                if nz.is_empty() {
                    break false;
                }
                let j0 = *nz
                    .iter()
                    .min_by(|&&a, &&b| h[(i, a)].abs().cmp(&h[(i, b)].abs()))
                    .unwrap();
                if nz.len() == 1 {
                    let c = pivot_col - 1;
                    h.swap_cols(j0, c);
                    u.swap_cols(j0, c);
                    break true;
                }
                let piv = h[(i, j0)].clone();
                for &j in &nz {
                    if j == j0 {
                        continue;
                    }
                    let q = round_div(&h[(i, j)], &piv);
                    h.col_axpy(j, j0, &q);
                    u.col_axpy(j, j0, &q);
                }
            };
            if !found {
                continue;
            }
            let c = pivot_col - 1;
            if h[(i, c)].is_negative() {
                h.negate_col(c);
                u.negate_col(c);
            }
            let piv = h[(i, c)].clone();
            for j in pivot_col..k {
                let q = h[(i, j)].div_floor(&piv);
                h.col_axpy(j, c, &q);
                u.col_axpy(j, c, &q);
            }
            pivot_rows.push(i);
            pivot_col -= 1;
        }
        pivot_rows.reverse();
        HnfResult {
            h,
            u,
            rank: k - pivot_col,
            pivot_rows,
        }
    }

    /// Smith normal form `D = U * M * V` with `d1 | d2 | ... | dr`, trailing
    /// zeros for rank-deficient input, all diagonal entries nonnegative.
    pub fn snf(&self) -> SnfResult {
        let m = self.rows;
        let n = self.cols;
        let mut a = self.clone();
        let mut u = IntMatrix::identity(m);
        let mut v = IntMatrix::identity(n);
        for t in 0..m.min(n) {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..m {
                    for j in t..n {
                        if a[(i, j)].is_zero() {
                            continue;
                        }
                        if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else {
                    return SnfResult::finish(a, u, v);
                };
                a.swap_rows(t, bi);
                u.swap_rows(t, bi);
                a.swap_cols(t, bj);
                v.swap_cols(t, bj);
                let piv = a[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..m {
                    if a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = round_div(&a[(i, t)], &piv);
                    a.row_axpy(i, t, &q);
                    u.row_axpy(i, t, &q);
                    if !a[(i, t)].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    if a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = round_div(&a[(t, j)], &piv);
                    a.col_axpy(j, t, &q);
                    v.col_axpy(j, t, &q);
                    if !a[(t, j)].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[(i, j)] % &piv).is_zero()));
                match bad {
                    Some(i) => {
                        // fold the offending row into the pivot row and retry
                        let minus_one = -BigInt::one();
                        a.row_axpy(t, i, &minus_one);
                        u.row_axpy(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if a[(t, t)].is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
        }
        SnfResult::finish(a, u, v)
    }

    /// Integer solution `x` of `self * x = b` for square upper-triangular
    /// `self` with nonzero diagonal, if one exists.
    pub fn solve_upper_triangular(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.rows;
        assert!(self.is_square() && b.len() == n);
        let mut x = vec![BigInt::zero(); n];
        let mut r = b.to_vec();
        for i in (0..n).rev() {
            let d = &self[(i, i)];
            let (q, rem) = r[i].div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            for k in 0..=i {
                let v = &self[(k, i)] * &q;
                r[k] -= v;
            }
            x[i] = q;
        }
        Some(x)
    }

    /// Left kernel basis of the columns: integer vectors `x` with `self * x = 0`.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let res = self.hnf();
        let zero_cols = self.cols - res.rank;
        (0..zero_cols).map(|j| res.u.column(j)).collect()
    }
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    // nearest integer quotient keeps remainders small
    let two = BigInt::from(2);
    let (q, r) = a.div_mod_floor(b);
    if (&r * &two).abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

#[derive(Clone, Debug)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    /// Rows carrying a pivot, ascending.
    pub pivot_rows: Vec<usize>,
}

impl HnfResult {
    /// The nonzero columns of `H`.
    pub fn basis(&self) -> IntMatrix {
        self.h.column_range(self.h.cols() - self.rank, self.h.cols())
    }
}

#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    fn finish(d: IntMatrix, u: IntMatrix, v: IntMatrix) -> Self {
        SnfResult { d, u, v }
    }

    pub fn invariants(&self) -> Vec<BigInt> {
        self.d.diagonal_entries()
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = a * &o[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn check_hnf_shape(h: &IntMatrix, rank: usize) {
        let k = h.cols();
        for j in 0..k - rank {
            assert!(h.is_zero_column(j));
        }
    }

    #[test]
    fn hnf_identity() {
        let id = IntMatrix::identity(2);
        let r = id.hnf();
        assert_eq!(r.h, id);
        assert!(r.u.is_unimodular());
    }

    #[test]
    fn hnf_preserves_determinant() {
        for (a, det) in [(m(&[&[2, 1], &[0, 1]]), 2), (m(&[&[4, 2], &[2, 4]]), 12)] {
            let r = a.hnf();
            assert_eq!(&a * &r.u, r.h);
            assert_eq!(r.h.det().abs(), BigInt::from(det));
            assert_eq!(r.h[(1, 0)], BigInt::zero());
            assert!(r.h[(0, 0)].is_positive() && r.h[(1, 1)].is_positive());
            assert!(r.h[(0, 1)] >= BigInt::zero() && r.h[(0, 1)] < r.h[(0, 0)]);
        }
    }

    #[test]
    fn hnf_of_wide_matrix() {
        let a = m(&[&[2, 4, 6], &[0, 3, 3]]);
        let r = a.hnf();
        assert_eq!(r.rank, 2);
        check_hnf_shape(&r.h, 2);
        assert_eq!(&a * &r.u, r.h);
        assert_eq!(r.basis().det(), BigInt::from(6));
    }

    #[test]
    fn hnf_rank_deficient() {
        let a = m(&[&[1, 2], &[2, 4]]);
        let r = a.hnf();
        assert_eq!(r.rank, 1);
        assert!(r.h.is_zero_column(0));
        assert_eq!(a.kernel().len(), 1);
        let k = &a.kernel()[0];
        assert!(a.mul_vec(k).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn snf_examples() {
        let cases: Vec<(IntMatrix, Vec<i64>)> = vec![
            (m(&[&[4, 0], &[0, 6]]), vec![2, 12]),
            (m(&[&[1, 0], &[0, 1]]), vec![1, 1]),
            (m(&[&[2, 0], &[0, 0]]), vec![2, 0]),
        ];
        for (a, want) in cases {
            let r = a.snf();
            assert_eq!(&(&r.u * &a) * &r.v, r.d);
            let want: Vec<BigInt> = want.into_iter().map(BigInt::from).collect();
            assert_eq!(r.invariants(), want);
            assert!(r.u.is_unimodular() && r.v.is_unimodular());
        }
    }

    #[test]
    fn determinant_by_cofactor() {
        let a = m(&[&[2, 3, 1], &[4, 1, -2], &[0, 5, 3]]);
        // cofactor expansion along the first row
        let expect = 2 * 13 - 3 * 12 + 20;
        assert_eq!(a.det(), BigInt::from(expect));
    }

    #[test]
    fn unimodular_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(&a * &inv, IntMatrix::identity(2));
        assert!(m(&[&[2, 0], &[0, 1]]).inverse_unimodular().is_none());
    }

    #[test]
    fn triangular_solve() {
        let h = m(&[&[3, 1], &[0, 2]]);
        let b: Vec<BigInt> = [5, 4].iter().map(|&x| BigInt::from(x)).collect();
        let x = h.solve_upper_triangular(&b).unwrap();
        assert_eq!(h.mul_vec(&x), b);
        let b2: Vec<BigInt> = [1, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert!(h.solve_upper_triangular(&b2).is_none());
    }
}
