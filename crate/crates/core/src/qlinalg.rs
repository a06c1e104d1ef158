//! Exact rational linear algebra: ranks, kernels, images, solving and
//! exactness tests over ℚ.
//!
//! Everything downstream (coboundary matrices, long exact sequences, zig-zag
//! objects) runs through this module, so all arithmetic is exact and all
//! bases are deterministic: elimination always picks the first nonzero pivot
//! in column order and normalizes pivots to 1, so the reduced form is the
//! canonical RREF and results are reproducible across runs and across the
//! sequential/parallel code paths.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::error::Error;

/// Exact rational scalar. `num_rational` keeps values in lowest terms with a
/// positive denominator, which is exactly the invariant we need.
pub type Rational = BigRational;

/// Build a rational from an integer.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Build a rational from numerator and denominator.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix of exact rationals.
///
/// Empty matrices (0×m and m×0) are first-class citizens: they are the maps
/// to and from the zero vector space, which show up constantly at the ends of
/// exact sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in matrix product: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = RationalMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    if !self.get(i, k).is_zero() && !other.get(k, j).is_zero() {
                        acc += self.get(i, k) * other.get(k, j);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    if !self.get(i, k).is_zero() && !v[k].is_zero() {
                        acc += self.get(i, k) * &v[k];
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = RationalMatrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn from_columns(ambient: usize, cols: &[Vec<Rational>]) -> RationalMatrix {
        let mut out = RationalMatrix::zero(ambient, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), ambient, "column length mismatch");
            for i in 0..ambient {
                out.set(i, j, col[i].clone());
            }
        }
        out
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "[{}x{}]", self.rows, self.cols);
        }
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

// Wire format: {"rows": r, "cols": c, "entries": [[num, den], ...]} with the
// entries row-major. Numerators and denominators must fit in i64; desk-scale
// inputs never come close to that bound.
impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let pairs: Result<Vec<[i64; 2]>, String> = self
            .entries
            .iter()
            .map(|e| {
                let n = i64::try_from(e.numer().clone())
                    .map_err(|_| "numerator out of i64 range".to_string())?;
                let d = i64::try_from(e.denom().clone())
                    .map_err(|_| "denominator out of i64 range".to_string())?;
                Ok([n, d])
            })
            .collect();
        let pairs = pairs.map_err(serde::ser::Error::custom)?;
        let mut s = serializer.serialize_struct("RationalMatrix", 3)?;
        s.serialize_field("rows", &self.rows)?;
        s.serialize_field("cols", &self.cols)?;
        s.serialize_field("entries", &pairs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            entries: Vec<[i64; 2]>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.entries.len() != raw.rows * raw.cols {
            return Err(D::Error::custom(format!(
                "matrix entry count {} does not match {}x{}",
                raw.entries.len(),
                raw.rows,
                raw.cols
            )));
        }
        if raw.entries.iter().any(|[_, d]| *d == 0) {
            return Err(D::Error::custom("zero denominator in matrix entry"));
        }
        Ok(RationalMatrix {
            rows: raw.rows,
            cols: raw.cols,
            entries: raw
                .entries
                .into_iter()
                .map(|[n, d]| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        })
    }
}

/// A linear subspace of ℚ^ambient_dim, stored as a matrix whose columns form
/// a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: RationalMatrix,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Membership test: is v in the span of the basis columns?
    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        solve(&self.basis, v).expect("shape checked").is_some()
    }
}

/// Result of a full Gauss-Jordan reduction.
struct Reduction {
    rref: RationalMatrix,
    pivot_cols: Vec<usize>,
}

fn reduce(m: &RationalMatrix) -> Reduction {
    let mut rows: Vec<Vec<Rational>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..m.cols() {
        if pivot_row >= rows.len() {
            break;
        }
        // First nonzero in column order: deterministic bases.
        let Some(src) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = rows[pivot_row][col].recip();
        for x in rows[pivot_row].iter_mut().skip(col) {
            *x *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        eliminate_column(&mut rows, &pivot, pivot_row, col);
        pivot_cols.push(col);
        pivot_row += 1;
    }
    Reduction {
        rref: RationalMatrix::from_rows(rows),
        pivot_cols,
    }
}

/// Clear `col` in every row except `pivot_row` using the (already normalized)
/// pivot row. Row updates are independent of one another, so the parallel
/// path is bit-identical to the sequential one.
#[cfg(feature = "parallel")]
fn eliminate_column(rows: &mut [Vec<Rational>], pivot: &[Rational], pivot_row: usize, col: usize) {
    use rayon::prelude::*;
    rows.par_iter_mut().enumerate().for_each(|(r, row)| {
        if r != pivot_row {
            eliminate_row(row, pivot, col);
        }
    });
}

#[cfg(not(feature = "parallel"))]
fn eliminate_column(rows: &mut [Vec<Rational>], pivot: &[Rational], pivot_row: usize, col: usize) {
    for (r, row) in rows.iter_mut().enumerate() {
        if r != pivot_row {
            eliminate_row(row, pivot, col);
        }
    }
}

/// Sequential reference reduction, kept callable regardless of features so
/// the benches can compare it against the default path.
pub fn rank_sequential(m: &RationalMatrix) -> usize {
    let mut rows: Vec<Vec<Rational>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..m.cols() {
        if pivot_row >= rows.len() {
            break;
        }
        let Some(src) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = rows[pivot_row][col].recip();
        for x in rows[pivot_row].iter_mut().skip(col) {
            *x *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row {
                eliminate_row(row, &pivot, col);
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

fn eliminate_row(row: &mut [Rational], pivot: &[Rational], col: usize) {
    if row[col].is_zero() {
        return;
    }
    let factor = row[col].clone();
    for (x, p) in row.iter_mut().zip(pivot.iter()).skip(col) {
        if !p.is_zero() {
            *x -= &factor * p;
        }
    }
}

/// Dimension of the column space. Zero for any empty matrix.
pub fn rank(m: &RationalMatrix) -> usize {
    reduce(m).pivot_cols.len()
}

/// Basis of the null space {v : m·v = 0}, ambient dimension cols(m).
///
/// Free columns get the standard back-substituted basis vectors, in column
/// order, so the basis is canonical.
pub fn kernel_basis(m: &RationalMatrix) -> Subspace {
    let red = reduce(m);
    let pivot_cols = &red.pivot_cols;
    let free_cols: Vec<usize> = (0..m.cols()).filter(|c| !pivot_cols.contains(c)).collect();
    let mut cols = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![Rational::zero(); m.cols()];
        v[fc] = Rational::one();
        for (pr, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -red.rref.get(pr, fc).clone();
        }
        cols.push(v);
    }
    Subspace {
        ambient_dim: m.cols(),
        basis: RationalMatrix::from_columns(m.cols(), &cols),
    }
}

/// Basis of the column space, ambient dimension rows(m): the pivot columns of
/// the original matrix.
pub fn image_basis(m: &RationalMatrix) -> Subspace {
    let red = reduce(m);
    let cols: Vec<Vec<Rational>> = red.pivot_cols.iter().map(|&c| m.column(c)).collect();
    Subspace {
        ambient_dim: m.rows(),
        basis: RationalMatrix::from_columns(m.rows(), &cols),
    }
}

/// Solve m·x = b exactly. Returns None when b is not in the image.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>, Error> {
    if b.len() != m.rows() {
        return Err(Error::Input(format!(
            "solve: right-hand side length {} does not match {} rows",
            b.len(),
            m.rows()
        )));
    }
    let aug = m.hstack(&RationalMatrix::from_columns(m.rows(), &[b.to_vec()]));
    let red = reduce(&aug);
    // Inconsistent iff the augmented column is a pivot column.
    if red.pivot_cols.contains(&m.cols()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (pr, &pc) in red.pivot_cols.iter().enumerate() {
        x[pc] = red.rref.get(pr, m.cols()).clone();
    }
    Ok(Some(x))
}

/// Solve M·X = B column by column; None if any column of B is outside im(M).
pub fn solve_matrix(m: &RationalMatrix, b: &RationalMatrix) -> Option<RationalMatrix> {
    assert_eq!(m.rows(), b.rows(), "solve_matrix shape mismatch");
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        match solve(m, &b.column(j)).expect("shape checked") {
            Some(x) => cols.push(x),
            None => return None,
        }
    }
    Some(RationalMatrix::from_columns(m.cols(), &cols))
}

/// Exactness at the middle of A --f--> B --g--> C: image(f) = kernel(g).
///
/// Checked as g·f = 0 together with rank(f) = dim ker(g); the composite
/// vanishing gives im(f) ⊆ ker(g), and equal dimensions upgrade the
/// containment to equality.
pub fn is_exact_at(f: &RationalMatrix, g: &RationalMatrix) -> Result<bool, Error> {
    if f.rows() != g.cols() {
        return Err(Error::Input(format!(
            "is_exact_at: f maps into dimension {} but g expects {}",
            f.rows(),
            g.cols()
        )));
    }
    if !g.mul(f).is_zero() {
        return Ok(false);
    }
    Ok(rank(f) == g.cols() - rank(g))
}

/// Transpose, as a free function mirroring the other operations.
pub fn transpose(m: &RationalMatrix) -> RationalMatrix {
    m.transpose()
}

/// Determinant by elimination; only meaningful for square matrices.
/// The 0×0 matrix has determinant 1 (the identity on the zero space).
pub fn determinant(m: &RationalMatrix) -> Rational {
    assert!(m.is_square(), "determinant of non-square matrix");
    let n = m.rows();
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(src) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return Rational::zero();
        };
        if src != col {
            rows.swap(col, src);
            det = -det;
        }
        det *= &rows[col][col];
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut().skip(col) {
            *x *= &inv;
        }
        let pivot = rows[col].clone();
        for row in rows.iter_mut().skip(col + 1) {
            eliminate_row(row, &pivot, col);
        }
    }
    det
}

/// Invertibility test for square matrices; the empty matrix is invertible
/// (identity on the zero space).
pub fn is_invertible(m: &RationalMatrix) -> bool {
    m.is_square() && !determinant(m).is_zero()
}

/// Inverse of a square invertible matrix.
pub fn inverse(m: &RationalMatrix) -> Option<RationalMatrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let aug = m.hstack(&RationalMatrix::identity(n));
    let red = reduce(&aug);
    if red.pivot_cols.len() != n || red.pivot_cols.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    let mut inv = RationalMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, red.rref.get(i, n + j).clone());
        }
    }
    Some(inv)
}

/// Largest absolute value of any entry, handy for search bounds.
pub fn max_abs(m: &RationalMatrix) -> Rational {
    m.entries
        .iter()
        .map(|e| e.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}
