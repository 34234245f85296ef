//! Rays, projectors, the subspace lattice and measurement contexts.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactlin::{LinAlgError, RMatrix, RVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("zero vector does not define a ray")]
    ZeroRay,
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not an orthogonal projector: {0}")]
    NotProjector(&'static str),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Canonical integer representative of the ray through `coords`: cleared
/// denominators, gcd 1, first nonzero entry positive.
pub fn canonicalize_ray(coords: &RVector) -> Result<RVector, LogicError> {
    coords.primitive_integer().ok_or(LogicError::ZeroRay)
}

/// A labelled one-dimensional subspace. Proportional coordinate vectors
/// produce identical `coords`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ray {
    id: String,
    coords: RVector,
}

impl Ray {
    pub fn new(id: impl Into<String>, coords: &RVector) -> Result<Self, LogicError> {
        Ok(Ray {
            id: id.into(),
            coords: canonicalize_ray(coords)?,
        })
    }

    pub fn from_ints(id: impl Into<String>, coords: &[i64]) -> Result<Self, LogicError> {
        Self::new(id, &RVector::from_ints(coords))
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn coords(&self) -> &RVector {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn with_id(&self, id: impl Into<String>) -> Ray {
        Ray {
            id: id.into(),
            coords: self.coords.clone(),
        }
    }

    pub fn is_orthogonal(&self, other: &Ray) -> Result<bool, LogicError> {
        Ok(self.coords.dot(&other.coords)?.is_zero())
    }

    pub fn projector(&self) -> Projector {
        projector_of(self)
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.id, self.coords)
    }
}

/// Symmetric idempotent matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Projector {
    matrix: RMatrix,
}

impl Projector {
    pub fn new(matrix: RMatrix) -> Result<Self, LogicError> {
        if !matrix.is_square() {
            return Err(LogicError::NotProjector("not square"));
        }
        if !matrix.is_symmetric() {
            return Err(LogicError::NotProjector("not symmetric"));
        }
        if matrix.mul(&matrix)? != matrix {
            return Err(LogicError::NotProjector("not idempotent"));
        }
        Ok(Projector { matrix })
    }

    pub fn zero(dim: usize) -> Self {
        Projector {
            matrix: RMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Projector {
            matrix: RMatrix::identity(dim),
        }
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn rank(&self) -> usize {
        // trace of a projector is its rank
        let t = self.matrix.trace().expect("square");
        t.to_integer().try_into().expect("small rank")
    }

    pub fn is_orthogonal_to(&self, other: &Projector) -> Result<bool, LogicError> {
        Ok(self.matrix.mul(&other.matrix)?.is_zero())
    }

    /// Sum of two orthogonal projectors. Non-orthogonal operands are rejected
    /// because their sum is not idempotent.
    pub fn orthogonal_sum(&self, other: &Projector) -> Result<Projector, LogicError> {
        if !self.is_orthogonal_to(other)? {
            return Err(LogicError::NotProjector("summands not orthogonal"));
        }
        Ok(Projector {
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn complement(&self) -> Projector {
        Projector {
            matrix: RMatrix::identity(self.dim())
                .sub(&self.matrix)
                .expect("same shape"),
        }
    }

    pub fn range(&self) -> Subspace {
        Subspace::span_rows(&self.matrix)
    }
}

/// `v vᵀ / (v·v)`.
pub fn projector_of(ray: &Ray) -> Projector {
    let v = ray.coords();
    let norm = v.dot(v).expect("same vector");
    Projector {
        matrix: RMatrix::outer(v, v).scale(&norm.recip()),
    }
}

/// A subspace of `Q^n` stored as the nonzero rows of its reduced row
/// echelon basis, so equal subspaces compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    dim_ambient: usize,
    basis: Vec<RVector>,
}

impl Subspace {
    pub fn zero(dim_ambient: usize) -> Self {
        Subspace {
            dim_ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(dim_ambient: usize) -> Self {
        Self::span_rows(&RMatrix::identity(dim_ambient))
    }

    pub fn span(dim_ambient: usize, vectors: &[RVector]) -> Result<Self, LogicError> {
        if let Some(v) = vectors.iter().find(|v| v.dim() != dim_ambient) {
            return Err(LogicError::DimensionMismatch {
                left: dim_ambient,
                right: v.dim(),
            });
        }
        if vectors.is_empty() {
            return Ok(Self::zero(dim_ambient));
        }
        Ok(Self::span_rows(&RMatrix::from_vectors(vectors)?))
    }

    fn span_rows(m: &RMatrix) -> Self {
        let (rref, rank) = m.row_reduce();
        Subspace {
            dim_ambient: m.ncols(),
            basis: (0..rank).map(|r| rref.row_vector(r)).collect(),
        }
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    /// Dimension of the subspace itself.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RVector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn basis_matrix(&self) -> Option<RMatrix> {
        if self.basis.is_empty() {
            None
        } else {
            Some(RMatrix::from_vectors(&self.basis).expect("nonempty basis"))
        }
    }

    fn check_dim(&self, other: &Subspace) -> Result<(), LogicError> {
        if self.dim_ambient != other.dim_ambient {
            return Err(LogicError::DimensionMismatch {
                left: self.dim_ambient,
                right: other.dim_ambient,
            });
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &RVector) -> bool {
        v.dim() == self.dim_ambient && self.ortho().basis.iter().all(|w| w.dot(v).unwrap().is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn join(&self, other: &Subspace) -> Result<Subspace, LogicError> {
        self.check_dim(other)?;
        let stacked: Vec<RVector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.dim_ambient, &stacked)
    }

    /// Intersection. Solves `xᵀA = yᵀB` for the stacked bases `A`, `B` by a
    /// kernel computation and maps the solutions back through `A`.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace, LogicError> {
        self.check_dim(other)?;
        let (Some(a), false) = (self.basis_matrix(), other.is_zero()) else {
            return Ok(Subspace::zero(self.dim_ambient));
        };
        // columns: basis vectors of self, then negated basis vectors of other
        let mut stacked: Vec<RVector> = self.basis.clone();
        stacked.extend(other.basis.iter().map(|v| -v));
        let system = RMatrix::from_vectors(&stacked)?.transpose();
        let ka = a.nrows();
        let vectors: Vec<RVector> = system
            .kernel()
            .into_iter()
            .map(|sol| {
                let coeffs = RVector::new(sol.entries()[..ka].to_vec()).expect("nonempty");
                a.transpose().mul_vec(&coeffs).expect("shapes agree")
            })
            .collect();
        Subspace::span(self.dim_ambient, &vectors)
    }

    /// Orthogonal complement.
    pub fn ortho(&self) -> Subspace {
        match self.basis_matrix() {
            None => Subspace::full(self.dim_ambient),
            Some(m) => {
                let k = m.kernel();
                Subspace::span(self.dim_ambient, &k).expect("kernel vectors have ambient dim")
            }
        }
    }

    /// Orthogonal projector onto this subspace, built from an exact
    /// Gram-Schmidt basis.
    pub fn projector(&self) -> Projector {
        let mut orth: Vec<RVector> = Vec::new();
        for v in &self.basis {
            let mut w = v.clone();
            for u in &orth {
                let coeff = w.dot(u).unwrap() / u.dot(u).unwrap();
                w = w.add(&u.scale(&-coeff)).unwrap();
            }
            orth.push(w);
        }
        let mut m = RMatrix::zeros(self.dim_ambient, self.dim_ambient);
        for u in &orth {
            let norm = u.dot(u).unwrap();
            m = m.add(&RMatrix::outer(u, u).scale(&norm.recip())).unwrap();
        }
        Projector { matrix: m }
    }
}

/// A maximal family of mutually orthogonal rays.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Context {
    rays: Vec<Ray>,
}

impl Context {
    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray_ids(&self) -> impl Iterator<Item = &str> {
        self.rays.iter().map(Ray::id)
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn projectors(&self) -> Vec<Projector> {
        self.rays.iter().map(projector_of).collect()
    }

    /// Projector of the outcome set selected by the bits of `mask`
    /// (bit `i` selects ray `i`).
    pub fn outcome_projector(&self, mask: u64) -> Projector {
        let d = self.dim();
        let mut m = RMatrix::zeros(d, d);
        for (i, r) in self.rays.iter().enumerate() {
            if mask >> i & 1 == 1 {
                m = m.add(projector_of(r).matrix()).expect("same shape");
            }
        }
        Projector { matrix: m }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContextViolation {
    Cardinality { found: usize, expected: usize },
    RayDimension { id: String, found: usize, expected: usize },
    Duplicate { first: String, second: String },
    NotOrthogonal { first: String, second: String, dot: Rational },
    NotResolutionOfIdentity,
}

impl fmt::Display for ContextViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContextViolation::Cardinality { found, expected } => {
                write!(f, "context has {found} rays, needs {expected}")
            }
            ContextViolation::RayDimension { id, found, expected } => {
                write!(f, "ray {id} has dimension {found}, expected {expected}")
            }
            ContextViolation::Duplicate { first, second } => {
                write!(f, "rays {first} and {second} are the same ray")
            }
            ContextViolation::NotOrthogonal { first, second, dot } => {
                write!(f, "rays {first} and {second} are not orthogonal (dot = {dot})")
            }
            ContextViolation::NotResolutionOfIdentity => {
                write!(f, "projectors do not sum to the identity")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid context: {}", .violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct ContextError {
    pub violations: Vec<ContextViolation>,
}

/// Accepts exactly `dim` pairwise orthogonal rays whose projectors sum to
/// the identity. Every violation found is reported.
pub fn validate_context(rays: &[Ray], dim: usize) -> Result<Context, ContextError> {
    let mut violations = Vec::new();
    if rays.len() != dim {
        violations.push(ContextViolation::Cardinality {
            found: rays.len(),
            expected: dim,
        });
    }
    for r in rays.iter().filter(|r| r.dim() != dim) {
        violations.push(ContextViolation::RayDimension {
            id: r.id().to_string(),
            found: r.dim(),
            expected: dim,
        });
    }
    if !violations.is_empty() {
        return Err(ContextError { violations });
    }
    for (i, a) in rays.iter().enumerate() {
        for b in &rays[i + 1..] {
            if a.coords() == b.coords() {
                violations.push(ContextViolation::Duplicate {
                    first: a.id().to_string(),
                    second: b.id().to_string(),
                });
                continue;
            }
            let dot = a.coords().dot(b.coords()).expect("dimensions checked");
            if !dot.is_zero() {
                violations.push(ContextViolation::NotOrthogonal {
                    first: a.id().to_string(),
                    second: b.id().to_string(),
                    dot,
                });
            }
        }
    }
    if !violations.is_empty() {
        return Err(ContextError { violations });
    }
    let sum = rays
        .iter()
        .map(|r| projector_of(r).matrix().clone())
        .reduce(|acc, m| acc.add(&m).expect("same shape"))
        .unwrap_or_else(|| RMatrix::zeros(dim.max(1), dim.max(1)));
    if sum != RMatrix::identity(dim.max(1)) {
        return Err(ContextError {
            violations: vec![ContextViolation::NotResolutionOfIdentity],
        });
    }
    Ok(Context {
        rays: rays.to_vec(),
    })
}

/// All `2^d` sums of the context's atomic projectors, indexed by subset
/// bitmask (index 0 is the zero projector, the last is the identity).
pub fn boolean_algebra_of(context: &Context) -> Vec<Projector> {
    let d = context.dim();
    (0..1u64 << d).map(|mask| context.outcome_projector(mask)).collect()
}

/// Checks `Σ Pᵢ = 1` and `PᵢPⱼ = 0` for `i ≠ j`.
pub fn is_resolution_of_identity(projectors: &[Projector]) -> bool {
    let Some(first) = projectors.first() else {
        return false;
    };
    let d = first.dim();
    let mut sum = RMatrix::zeros(d, d);
    for (i, p) in projectors.iter().enumerate() {
        let Ok(s) = sum.add(p.matrix()) else {
            return false;
        };
        sum = s;
        for q in &projectors[i + 1..] {
            if !matches!(p.is_orthogonal_to(q), Ok(true)) {
                return false;
            }
        }
    }
    sum == RMatrix::identity(d)
}
