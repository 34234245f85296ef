//! Two-particle states and exchange symmetry.
//!
//! States are stored unnormalized. The `1/√2` of a symmetrized state is not
//! rational, so every physical quantity is divided by the exact
//! `norm_squared` instead.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactlin::{LinAlgError, RMatrix, RVector, Rational};
use crate::qlogic::Projector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("single-particle vectors must be nonzero")]
    ZeroFactor,
    #[error("single-particle dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("antisymmetrizing proportional vectors gives the zero state")]
    ZeroState,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exchange {
    /// Bosons.
    Symmetric,
    /// Fermions.
    Antisymmetric,
}

impl Exchange {
    pub fn parse(s: &str) -> Option<Exchange> {
        match s {
            "+" => Some(Exchange::Symmetric),
            "-" => Some(Exchange::Antisymmetric),
            _ => None,
        }
    }
}

/// `Σ ψᵢⱼ |i⟩⊗|j⟩`, with `amplitudes[(i, j)] = ψᵢⱼ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoParticleState {
    amplitudes: RMatrix,
    norm_squared: Rational,
}

impl TwoParticleState {
    pub fn new(amplitudes: RMatrix) -> Result<Self, SymmetryError> {
        if !amplitudes.is_square() {
            return Err(SymmetryError::DimensionMismatch(
                amplitudes.nrows(),
                amplitudes.ncols(),
            ));
        }
        let norm_squared = amplitudes
            .rows()
            .flatten()
            .fold(Rational::zero(), |acc, a| acc + a * a);
        if norm_squared.is_zero() {
            return Err(SymmetryError::ZeroState);
        }
        Ok(TwoParticleState {
            amplitudes,
            norm_squared,
        })
    }

    /// `|a⟩⊗|b⟩`.
    pub fn product(a: &RVector, b: &RVector) -> Result<Self, SymmetryError> {
        check_factors(a, b)?;
        Self::new(RMatrix::outer(a, b))
    }

    pub fn dim_single(&self) -> usize {
        self.amplitudes.nrows()
    }

    pub fn amplitudes(&self) -> &RMatrix {
        &self.amplitudes
    }

    pub fn amplitude(&self, i: usize, j: usize) -> &Rational {
        self.amplitudes.get(i, j)
    }

    pub fn norm_squared(&self) -> &Rational {
        &self.norm_squared
    }

    pub fn negate(&self) -> TwoParticleState {
        TwoParticleState {
            amplitudes: self.amplitudes.neg(),
            norm_squared: self.norm_squared.clone(),
        }
    }

    /// Nonzero amplitudes as `((i, j), ψᵢⱼ)` in row-major order.
    pub fn nonzero_amplitudes(&self) -> Vec<((usize, usize), Rational)> {
        let d = self.dim_single();
        (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.amplitude(i, j).is_zero())
            .map(|(i, j)| ((i, j), self.amplitude(i, j).clone()))
            .collect()
    }

    /// `⟨ψ|(P⊗P)|ψ⟩ / ⟨ψ|ψ⟩`. With `ψ` as a matrix `M` this is
    /// `tr(Mᵀ P M P) / ‖M‖²`.
    pub fn pair_probability(&self, p: &Projector) -> Result<Rational, SymmetryError> {
        if p.dim() != self.dim_single() {
            return Err(SymmetryError::DimensionMismatch(p.dim(), self.dim_single()));
        }
        let m = &self.amplitudes;
        let pmp = p.matrix().mul(m)?.mul(p.matrix())?;
        let overlap = m
            .rows()
            .flatten()
            .zip(pmp.rows().flatten())
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
        Ok(overlap / &self.norm_squared)
    }
}

impl fmt::Display for TwoParticleState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((i, j), a) in self.nonzero_amplitudes() {
            writeln!(f, "({i},{j}) {a}")?;
        }
        write!(f, "norm_squared {}", self.norm_squared)
    }
}

fn check_factors(a: &RVector, b: &RVector) -> Result<(), SymmetryError> {
    if a.dim() != b.dim() {
        return Err(SymmetryError::DimensionMismatch(a.dim(), b.dim()));
    }
    if a.is_zero() || b.is_zero() {
        return Err(SymmetryError::ZeroFactor);
    }
    Ok(())
}

/// `|a⟩⊗|b⟩ ± |b⟩⊗|a⟩`.
pub fn symmetrize(a: &RVector, b: &RVector, sign: Exchange) -> Result<TwoParticleState, SymmetryError> {
    check_factors(a, b)?;
    let ab = RMatrix::outer(a, b);
    let ba = RMatrix::outer(b, a);
    let amplitudes = match sign {
        Exchange::Symmetric => ab.add(&ba)?,
        Exchange::Antisymmetric => ab.sub(&ba)?,
    };
    TwoParticleState::new(amplitudes)
}

/// Exchanges the two particles: `ψᵢⱼ ↦ ψⱼᵢ`.
pub fn swap(s: &TwoParticleState) -> TwoParticleState {
    TwoParticleState {
        amplitudes: s.amplitudes.transpose(),
        norm_squared: s.norm_squared.clone(),
    }
}

/// `+1` when swapping leaves the state unchanged, `-1` when it negates it,
/// `None` otherwise.
pub fn exchange_parity(s: &TwoParticleState) -> Option<i8> {
    let swapped = swap(s);
    if swapped == *s {
        Some(1)
    } else if swapped == s.negate() {
        Some(-1)
    } else {
        None
    }
}
