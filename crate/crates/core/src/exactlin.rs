//! Exact rational scalars, vectors and matrices.
//!
//! Everything here is arbitrary precision. Orthogonality, rank and
//! equality are decided exactly; there is no tolerance parameter.

use std::fmt;
use std::ops::{Index, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("shape mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("vectors and matrices must have positive dimension")]
    Empty,
    #[error("ragged rows: expected {expected} columns, row {row} has {found}")]
    Ragged {
        expected: usize,
        row: usize,
        found: usize,
    },
    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `n`, `-n` or `p/q`. A zero denominator is rejected.
pub fn parse_rational(text: &str) -> Result<Rational, LinAlgError> {
    let bad = || LinAlgError::InvalidRational(text.to_string());
    let parse_int = |s: &str| -> Result<BigInt, LinAlgError> {
        // BigInt accepts a leading '+', which the DSL does not.
        if s.is_empty() || s.starts_with('+') {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            if q.starts_with('-') {
                return Err(bad());
            }
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RVector {
    entries: Vec<Rational>,
}

impl RVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self, LinAlgError> {
        if entries.is_empty() {
            return Err(LinAlgError::Empty);
        }
        Ok(RVector { entries })
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        assert!(!entries.is_empty(), "vector must be nonempty");
        RVector {
            entries: entries.iter().map(|&n| int(n)).collect(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "vector must be nonempty");
        RVector {
            entries: vec![Rational::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RVector) -> Result<Rational, LinAlgError> {
        if self.dim() != other.dim() {
            return Err(LinAlgError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn add(&self, other: &RVector) -> Result<RVector, LinAlgError> {
        if self.dim() != other.dim() {
            return Err(LinAlgError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(RVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: &Rational) -> RVector {
        RVector {
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    /// `self` is a scalar multiple of `other` (or both are zero).
    pub fn is_proportional(&self, other: &RVector) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                let cross =
                    &self.entries[i] * &other.entries[j] - &self.entries[j] * &other.entries[i];
                if !cross.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Integer representative with gcd 1 and positive leading entry.
    /// Returns `None` for the zero vector.
    pub fn primitive_integer(&self) -> Option<RVector> {
        if self.is_zero() {
            return None;
        }
        let lcm = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = self
            .entries
            .iter()
            .map(|q| q.numer() * (&lcm / q.denom()))
            .collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        let leading_negative = ints.iter().find(|n| !n.is_zero()).is_some_and(|n| n.is_negative());
        let divisor = if leading_negative { -gcd } else { gcd };
        Some(RVector {
            entries: ints
                .into_iter()
                .map(|n| Rational::from_integer(n / &divisor))
                .collect(),
        })
    }
}

impl Index<usize> for RVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.entries[i]
    }
}

impl Neg for &RVector {
    type Output = RVector;
    fn neg(self) -> RVector {
        RVector {
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<Rational>,
}

impl RMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinAlgError> {
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        if rows.is_empty() || ncols == 0 {
            return Err(LinAlgError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(LinAlgError::Ragged {
                    expected: ncols,
                    row: i,
                    found: row.len(),
                });
            }
        }
        Ok(RMatrix {
            nrows: rows.len(),
            ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_vectors(rows: &[RVector]) -> Result<Self, LinAlgError> {
        Self::from_rows(rows.iter().map(|r| r.entries.clone()).collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, LinAlgError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| int(n)).collect())
                .collect(),
        )
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        assert!(nrows > 0 && ncols > 0, "matrix must be nonempty");
        RMatrix {
            nrows,
            ncols,
            data: vec![Rational::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// The rank-one matrix `u vᵀ`.
    pub fn outer(u: &RVector, v: &RVector) -> Self {
        let data = u
            .entries
            .iter()
            .flat_map(|a| v.entries.iter().map(move |b| a * b))
            .collect();
        RMatrix {
            nrows: u.dim(),
            ncols: v.dim(),
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.ncols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.ncols..(r + 1) * self.ncols]
    }

    pub fn row_vector(&self, r: usize) -> RVector {
        RVector {
            entries: self.row(r).to_vec(),
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.data.chunks(self.ncols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn check_same_shape(&self, other: &RMatrix) -> Result<(), LinAlgError> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(self.shape_mismatch(other));
        }
        Ok(())
    }

    fn shape_mismatch(&self, other: &RMatrix) -> LinAlgError {
        LinAlgError::ShapeMismatch {
            left_rows: self.nrows,
            left_cols: self.ncols,
            right_rows: other.nrows,
            right_cols: other.ncols,
        }
    }

    pub fn add(&self, other: &RMatrix) -> Result<RMatrix, LinAlgError> {
        self.check_same_shape(other)?;
        Ok(RMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &RMatrix) -> Result<RMatrix, LinAlgError> {
        self.check_same_shape(other)?;
        Ok(RMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix, LinAlgError> {
        if self.ncols != other.nrows {
            return Err(self.shape_mismatch(other));
        }
        let mut data = Vec::with_capacity(self.nrows * other.ncols);
        for i in 0..self.nrows {
            for j in 0..other.ncols {
                let mut acc = Rational::zero();
                for k in 0..self.ncols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * other.get(k, j);
                    }
                }
                data.push(acc);
            }
        }
        Ok(RMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &RVector) -> Result<RVector, LinAlgError> {
        if self.ncols != v.dim() {
            return Err(LinAlgError::DimensionMismatch {
                left: self.ncols,
                right: v.dim(),
            });
        }
        Ok(RVector {
            entries: self
                .rows()
                .map(|row| {
                    row.iter()
                        .zip(&v.entries)
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        })
    }

    pub fn scale(&self, factor: &Rational) -> RMatrix {
        RMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn neg(&self) -> RMatrix {
        RMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn transpose(&self) -> RMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.ncols {
            for r in 0..self.nrows {
                data.push(self.get(r, c).clone());
            }
        }
        RMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            data,
        }
    }

    pub fn trace(&self) -> Result<Rational, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare {
                rows: self.nrows,
                cols: self.ncols,
            });
        }
        Ok((0..self.nrows).fold(Rational::zero(), |acc, i| acc + self.get(i, i)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Reduced row echelon form and rank. Pivots are taken from the first
    /// nonzero column, using the smallest row index at or below the current
    /// pivot row, so the output is deterministic.
    pub fn row_reduce(&self) -> (RMatrix, usize) {
        let mut m = self.clone();
        let (rows, cols) = (m.nrows, m.ncols);
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(found) = (pivot_row..rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, found);
            let inv = m.get(pivot_row, col).recip();
            for c in col..cols {
                let v = &m.data[pivot_row * cols + c] * &inv;
                m.data[pivot_row * cols + c] = v;
            }
            for r in 0..rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..cols {
                    let delta = &factor * &m.data[pivot_row * cols + c];
                    m.data[r * cols + c] -= delta;
                }
            }
            pivot_row += 1;
        }
        (m, pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1
    }

    /// Basis of the right null space `{x : self·x = 0}`, one vector per
    /// free column, in increasing free-column order.
    pub fn kernel(&self) -> Vec<RVector> {
        let (rref, rank) = self.row_reduce();
        let cols = self.ncols;
        let mut pivots = Vec::with_capacity(rank);
        for r in 0..rank {
            let c = (0..cols)
                .find(|&c| !rref.get(r, c).is_zero())
                .expect("nonzero rref row has a pivot");
            pivots.push(c);
        }
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); cols];
                v[free] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -rref.get(r, free).clone();
                }
                RVector { entries: v }
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.ncols {
            self.data.swap(a * self.ncols + c, b * self.ncols + c);
        }
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Matrix operations dispatched by tag.
#[derive(Debug, Clone)]
pub enum MatOp {
    Add,
    Mul,
    Scale(Rational),
    Transpose,
    Trace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatOpResult {
    Matrix(RMatrix),
    Scalar(Rational),
}

/// `b` is only consulted by the binary operations.
pub fn mat_op(a: &RMatrix, b: Option<&RMatrix>, op: &MatOp) -> Result<MatOpResult, LinAlgError> {
    let rhs = || b.ok_or(LinAlgError::Empty);
    Ok(match op {
        MatOp::Add => MatOpResult::Matrix(a.add(rhs()?)?),
        MatOp::Mul => MatOpResult::Matrix(a.mul(rhs()?)?),
        MatOp::Scale(k) => MatOpResult::Matrix(a.scale(k)),
        MatOp::Transpose => MatOpResult::Matrix(a.transpose()),
        MatOp::Trace => MatOpResult::Scalar(a.trace()?),
    })
}
