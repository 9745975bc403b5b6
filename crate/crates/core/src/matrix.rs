//! Exact integer-matrix algebra: Smith and Hermite normal forms, kernels,
//! saturation, and lattice indices.
//!
//! All entries are arbitrary-precision integers; nothing here ever rounds
//! or overflows. Matrices at the intended scale are small (at most ~10x10),
//! so the algorithms favour transparency over asymptotics: elimination with
//! pivoting by minimal absolute value, with explicit tracking of the
//! unimodular transformations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix over the integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Convenience constructor from machine integers, mostly for tests.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn from_columns(cols: &[Vec<BigInt>]) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for i in 0..r {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * other.at(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Gcd of all entries; zero for the zero matrix.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for e in &self.entries {
            g = g.gcd(e);
        }
        g
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Entry-wise exact division; `None` if some entry is not divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<IntMatrix> {
        assert!(!k.is_zero());
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let (q, r) = e.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            entries.push(q);
        }
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let add = self.at(src, j) * k;
            let e = self.at(dst, j) + add;
            self.set(dst, j, e);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let add = self.at(i, src) * k;
            let e = self.at(i, dst) + add;
            self.set(i, dst, e);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = -self.at(i, j).clone();
            self.set(i, j, e);
        }
    }

    /// Signed determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.at(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a.set(i, j, q);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.at(k, k).clone();
        }
        sign * a.at(n - 1, n - 1).clone()
    }

    /// Leading principal minor of order k (determinant of the top-left k x k block).
    pub fn leading_principal_minor(&self, k: usize) -> BigInt {
        assert!(k <= self.rows && k <= self.cols);
        let mut sub = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                sub.set(i, j, self.at(i, j).clone());
            }
        }
        sub.det()
    }
}

/// Decomposition U * M * V = D with U, V unimodular and D diagonal with
/// a divisibility chain d1 | d2 | ... on its nonnegative diagonal.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Positive diagonal entries (the invariant factors including 1s).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.at(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form by elimination, pivoting on the entry of minimal
/// absolute value to limit coefficient growth.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let steps = rows.min(cols);
    'pivot: for k in 0..steps {
        loop {
            // Minimal nonzero entry of the trailing submatrix becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if !a.at(i, j).is_zero()
                        && best
                            .map(|(bi, bj)| a.at(i, j).abs() < a.at(bi, bj).abs())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot; // trailing submatrix is zero
            };
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                if !a.at(i, k).is_zero() {
                    let q = -(a.at(i, k) / a.at(k, k));
                    a.add_row_multiple(i, k, &q);
                    u.add_row_multiple(i, k, &q);
                    if !a.at(i, k).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in k + 1..cols {
                if !a.at(k, j).is_zero() {
                    let q = -(a.at(k, j) / a.at(k, k));
                    a.add_col_multiple(j, k, &q);
                    v.add_col_multiple(j, k, &q);
                    if !a.at(k, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue; // remainders left; re-pick a smaller pivot
            }
            // Pivot row and column are clear. Enforce that the pivot divides
            // the whole trailing submatrix so the diagonal chain comes out.
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(a.at(i, j) % a.at(k, k)).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
    }

    for k in 0..steps {
        if a.at(k, k).is_negative() {
            a.negate_row(k);
            u.negate_row(k);
        }
    }

    SmithDecomposition { u, d: a, v }
}

/// Basis of the integer kernel {x : M x = 0}, returned as the columns of a
/// cols x (cols - rank) matrix. The span is saturated: the columns extend to
/// a basis of the ambient lattice.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let n = m.cols();
    let mut out = IntMatrix::zeros(n, n - rank);
    for (idx, j) in (rank..n).enumerate() {
        for i in 0..n {
            out.set(i, idx, snf.v.at(i, j).clone());
        }
    }
    out
}

/// Column-style Hermite elimination: returns a matrix whose nonzero columns
/// form an echelon basis of the column span. Pivots are positive and appear
/// in strictly increasing row order, with zeros above each pivot.
pub fn column_echelon_basis(m: &IntMatrix) -> IntMatrix {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut next = 0usize;
    for i in 0..rows {
        if next == cols {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in next..cols {
                if !a.at(i, j).is_zero()
                    && best
                        .map(|b| a.at(i, j).abs() < a.at(i, b).abs())
                        .unwrap_or(true)
                {
                    best = Some(j);
                }
            }
            let Some(pj) = best else {
                break;
            };
            a.swap_cols(next, pj);
            let mut clean = true;
            for j in next + 1..cols {
                if !a.at(i, j).is_zero() {
                    let q = -(a.at(i, j) / a.at(i, next));
                    a.add_col_multiple(j, next, &q);
                    if !a.at(i, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                if a.at(i, next).is_negative() {
                    for r in 0..rows {
                        let e = -a.at(r, next).clone();
                        a.set(r, next, e);
                    }
                }
                next += 1;
                break;
            }
        }
    }
    // Trim trailing zero columns.
    let mut basis_cols = Vec::new();
    for j in 0..cols {
        let col = a.column(j);
        if col.iter().any(|e| !e.is_zero()) {
            basis_cols.push(col);
        }
    }
    if basis_cols.is_empty() {
        IntMatrix::zeros(rows, 0)
    } else {
        IntMatrix::from_columns(&basis_cols)
    }
}

/// Solve A X = B exactly over the rationals. A must have full column rank;
/// returns `None` if the system is inconsistent or rank-deficient.
pub fn solve_rational(a: &IntMatrix, b: &IntMatrix) -> Option<Vec<Vec<BigRational>>> {
    let m = a.rows();
    let n = a.cols();
    let p = b.cols();
    assert_eq!(b.rows(), m, "right-hand side has wrong height");
    // Augmented rational elimination.
    let mut aug: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            (0..n + p)
                .map(|j| {
                    let e = if j < n { a.at(i, j) } else { b.at(i, j - n) };
                    BigRational::from(e.clone())
                })
                .collect()
        })
        .collect();
    let mut pivot_row = 0usize;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(r) = (pivot_row..m).find(|&r| !aug[r][col].is_zero()) else {
            return None; // column has no pivot: rank-deficient
        };
        aug.swap(pivot_row, r);
        let inv = aug[pivot_row][col].recip();
        for j in col..n + p {
            aug[pivot_row][j] = &aug[pivot_row][j] * &inv;
        }
        for i in 0..m {
            if i != pivot_row && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                for j in col..n + p {
                    let delta = &f * &aug[pivot_row][j];
                    aug[i][j] = &aug[i][j] - delta;
                }
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    // Consistency: rows below the pivots must be zero on the B side too.
    for row in aug.iter().skip(pivot_row) {
        if row[n..].iter().any(|e| !e.is_zero()) {
            return None;
        }
    }
    let mut x = vec![vec![BigRational::zero(); p]; n];
    for &(r, c) in &pivots {
        for j in 0..p {
            x[c][j] = aug[r][n + j].clone();
        }
    }
    Some(x)
}

/// Solve A X = B over the integers (A of full column rank); `None` when the
/// rational solution exists but is not integral, or no solution exists.
pub fn solve_integral(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let x = solve_rational(a, b)?;
    let n = a.cols();
    let p = b.cols();
    let mut out = IntMatrix::zeros(n, p);
    for i in 0..n {
        for j in 0..p {
            if !x[i][j].denom().is_one() {
                return None;
            }
            out.set(i, j, x[i][j].numer().clone());
        }
    }
    Some(out)
}

/// Saturation of the column span of `s` inside the ambient lattice, with the
/// index of the span inside its saturation. Columns of `s` must be linearly
/// independent.
pub fn saturate(s: &IntMatrix) -> Result<(IntMatrix, BigInt)> {
    let g = s.rows();
    let k = s.cols();
    let snf = smith_normal_form(s);
    if snf.rank() != k {
        return Err(Error::RankDeficiency);
    }
    // x lies in the saturation iff it is orthogonal to everything orthogonal
    // to the span; two kernel computations produce a saturated basis.
    let orth = kernel_basis(&s.transpose()); // g x (g-k)
    let basis = kernel_basis(&orth.transpose()); // g x k, saturated
    debug_assert_eq!(basis.cols(), k);
    debug_assert_eq!(basis.rows(), g);
    let x = solve_integral(&basis, s)
        .ok_or_else(|| Error::Inconsistency("span not contained in its saturation".into()))?;
    let index = x.det().abs();
    debug_assert!(!index.is_zero());
    Ok((basis, index))
}

/// Index [span(A) : span(B)] for B spanning a finite-index subgroup of
/// span(A). A must have independent columns; B may be any spanning set.
pub fn lattice_index(a: &IntMatrix, b: &IntMatrix) -> Result<BigInt> {
    let k = a.cols();
    {
        let snf = smith_normal_form(a);
        if snf.rank() != k {
            return Err(Error::RankDeficiency);
        }
    }
    let x = solve_integral(a, b).ok_or_else(|| {
        Error::InfiniteIndex("columns do not span a sublattice of the reference span".into())
    })?;
    // Reduce the coefficient columns to a basis and take the determinant.
    let basis = column_echelon_basis(&x);
    if basis.cols() != k {
        return Err(Error::InfiniteIndex(format!(
            "sublattice has rank {} < {}",
            basis.cols(),
            k
        )));
    }
    Ok(basis.det().abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_smith_valid(m: &IntMatrix) -> Vec<BigInt> {
        let snf = smith_normal_form(m);
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.d, "U*M*V must equal D");
        assert_eq!(snf.u.det().abs(), BigInt::one(), "U unimodular");
        assert_eq!(snf.v.det().abs(), BigInt::one(), "V unimodular");
        // Off-diagonal zero, nonnegative diagonal, divisibility chain.
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d.at(i, j).is_zero());
                }
            }
        }
        let diag = snf.diagonal();
        for t in &diag {
            assert!(!t.is_negative());
        }
        for t in diag.windows(2) {
            if !t[0].is_zero() {
                assert!((&t[1] % &t[0]).is_zero(), "chain {} | {}", t[0], t[1]);
            } else {
                assert!(t[1].is_zero());
            }
        }
        diag
    }

    #[test]
    fn smith_identity() {
        let diag = assert_smith_valid(&IntMatrix::identity(2));
        assert_eq!(diag, vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn smith_2x2_example() {
        // det = -8, invariant factors 2 and 4
        let m = IntMatrix::from_rows(&[&[2, 4], &[6, 8]]);
        let diag = assert_smith_valid(&m);
        assert_eq!(diag, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn smith_zero_1x1() {
        let m = IntMatrix::from_rows(&[&[0]]);
        let diag = assert_smith_valid(&m);
        assert_eq!(diag, vec![BigInt::from(0)]);
    }

    #[test]
    fn smith_rectangular() {
        let m = IntMatrix::from_rows(&[&[2, 0]]);
        let diag = assert_smith_valid(&m);
        assert_eq!(diag, vec![BigInt::from(2)]);
    }

    #[test]
    fn kernel_of_sum_functional() {
        let m = IntMatrix::from_rows(&[&[1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        let expect = [BigInt::from(1), BigInt::from(-1)];
        assert!(col == expect || col == [-expect[0].clone(), -expect[1].clone()]);
    }

    #[test]
    fn kernel_of_invertible_is_empty() {
        let m = IntMatrix::from_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(kernel_basis(&m).cols(), 0);
    }

    #[test]
    fn kernel_is_saturated() {
        // Kernel of [[2,4]] is spanned by (2,-1), not (4,-2).
        let m = IntMatrix::from_rows(&[&[2, 4]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        let g = col[0].gcd(&col[1]);
        assert_eq!(g, BigInt::one(), "kernel generator must be primitive");
        let combo: BigInt = col[0].clone() * 2 + col[1].clone() * 4;
        assert!(combo.is_zero());
    }

    #[test]
    fn saturate_common_factor() {
        let s = IntMatrix::from_rows(&[&[2], &[2]]);
        let (basis, index) = saturate(&s).unwrap();
        assert_eq!(index, BigInt::from(2));
        let col = basis.column(0);
        assert_eq!(col[0].abs(), BigInt::one());
        assert_eq!(col[0], col[1]);
    }

    #[test]
    fn saturate_already_saturated() {
        let s = IntMatrix::from_rows(&[&[1], &[0]]);
        let (_, index) = saturate(&s).unwrap();
        assert_eq!(index, BigInt::one());
    }

    #[test]
    fn saturate_full_rank_by_det() {
        let s = IntMatrix::from_rows(&[&[2, 0], &[0, 3]]);
        let (basis, index) = saturate(&s).unwrap();
        assert_eq!(index, BigInt::from(6));
        assert_eq!(basis.det().abs(), BigInt::one());
    }

    #[test]
    fn saturate_rejects_dependent_columns() {
        let s = IntMatrix::from_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(saturate(&s), Err(Error::RankDeficiency)));
    }

    #[test]
    fn saturate_is_idempotent() {
        let s = IntMatrix::from_rows(&[&[2, 1], &[2, 3], &[4, 0]]);
        let (basis, _) = saturate(&s).unwrap();
        let (_, index2) = saturate(&basis).unwrap();
        assert_eq!(index2, BigInt::one());
    }

    #[test]
    fn index_doubled_lattice() {
        let a = IntMatrix::identity(2);
        let b = IntMatrix::from_rows(&[&[2, 0], &[0, 2]]);
        assert_eq!(lattice_index(&a, &b).unwrap(), BigInt::from(4));
    }

    #[test]
    fn index_triangular_sublattice() {
        let a = IntMatrix::identity(2);
        let b = IntMatrix::from_rows(&[&[1, 0], &[1, 2]]);
        assert_eq!(lattice_index(&a, &b).unwrap(), BigInt::from(2));
    }

    #[test]
    fn index_of_itself_is_one() {
        let a = IntMatrix::from_rows(&[&[3, 1], &[0, 2]]);
        assert_eq!(lattice_index(&a, &a).unwrap(), BigInt::one());
    }

    #[test]
    fn index_infinite_is_error() {
        let a = IntMatrix::identity(2);
        let b = IntMatrix::from_rows(&[&[1], &[0]]);
        assert!(matches!(
            lattice_index(&a, &b),
            Err(Error::InfiniteIndex(_))
        ));
    }

    #[test]
    fn bareiss_det() {
        let m = IntMatrix::from_rows(&[&[2, 4], &[6, 8]]);
        assert_eq!(m.det(), BigInt::from(-8));
        let m = IntMatrix::from_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(m.det(), BigInt::from(-3));
    }

    #[test]
    fn echelon_basis_spans() {
        let m = IntMatrix::from_rows(&[&[2, 4, 0], &[0, 0, 3]]);
        let b = column_echelon_basis(&m);
        assert_eq!(b.cols(), 2);
        assert_eq!(b.at(0, 0), &BigInt::from(2));
        assert_eq!(b.at(1, 1), &BigInt::from(3));
    }
}
