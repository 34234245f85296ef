//! Classical finite probability spaces and quantum states.
//!
//! A [`DensityOperator`] induces a classical distribution on every
//! measurement context through the Born rule. All values are exact.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::exactlin::{LinAlgError, RMatrix, RVector, Rational};
use crate::qlogic::{canonicalize_ray, projector_of, Context, LogicError, Projector, Ray};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbabilityError {
    #[error("unknown outcome `{0}`")]
    UnknownOutcome(String),
    #[error("duplicate outcome `{0}`")]
    DuplicateOutcome(String),
    #[error("{outcomes} outcomes but {weights} weights")]
    LengthMismatch { outcomes: usize, weights: usize },
    #[error("dimension mismatch: state has dimension {state}, operand has {operand}")]
    DimensionMismatch { state: usize, operand: usize },
    #[error("not a density operator: {0}")]
    InvalidState(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Finite outcome set with a weight per outcome. Construction only checks
/// the shape; the measure axioms are verified by
/// [`check_classical_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteProbabilitySpace {
    outcomes: Vec<String>,
    weights: Vec<Rational>,
}

impl FiniteProbabilitySpace {
    pub fn new(outcomes: Vec<String>, weights: Vec<Rational>) -> Result<Self, ProbabilityError> {
        if outcomes.len() != weights.len() {
            return Err(ProbabilityError::LengthMismatch {
                outcomes: outcomes.len(),
                weights: weights.len(),
            });
        }
        let mut seen = HashSet::new();
        for o in &outcomes {
            if !seen.insert(o.as_str()) {
                return Err(ProbabilityError::DuplicateOutcome(o.clone()));
            }
        }
        Ok(FiniteProbabilitySpace { outcomes, weights })
    }

    pub fn uniform(outcomes: Vec<String>) -> Result<Self, ProbabilityError> {
        let n = outcomes.len();
        let w = Rational::new(1.into(), (n.max(1) as i64).into());
        Self::new(outcomes, vec![w; n])
    }

    /// Fair six-sided die with outcomes `1`..`6`.
    pub fn dice() -> Self {
        Self::uniform((1..=6).map(|i| i.to_string()).collect()).expect("distinct labels")
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, label: &str) -> Option<&Rational> {
        self.position(label).map(|i| &self.weights[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.outcomes.iter().map(String::as_str).zip(&self.weights)
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |acc, w| acc + w)
    }

    fn position(&self, label: &str) -> Option<usize> {
        self.outcomes.iter().position(|o| o == label)
    }

    fn mask_probability(&self, mask: u64) -> Rational {
        self.weights
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(Rational::zero(), |acc, (_, w)| acc + w)
    }

    fn mask_of<S: AsRef<str>>(&self, event: &[S]) -> Result<Vec<usize>, ProbabilityError> {
        event
            .iter()
            .map(|l| {
                self.position(l.as_ref())
                    .ok_or_else(|| ProbabilityError::UnknownOutcome(l.as_ref().to_string()))
            })
            .collect()
    }
}

/// Measure of an event. Repeated labels count once.
pub fn event_probability<S: AsRef<str>>(
    space: &FiniteProbabilitySpace,
    event: &[S],
) -> Result<Rational, ProbabilityError> {
    let mut idx = space.mask_of(event)?;
    idx.sort_unstable();
    idx.dedup();
    Ok(idx
        .into_iter()
        .fold(Rational::zero(), |acc, i| acc + &space.weights[i]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    EmptyEventNonzero(Rational),
    Negative { outcome: String, weight: Rational },
    TotalNotOne(Rational),
    NotAdditive { left: Vec<String>, right: Vec<String> },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::EmptyEventNonzero(p) => write!(f, "measure of the empty event is {p}"),
            AxiomViolation::Negative { outcome, weight } => {
                write!(f, "outcome {outcome} has negative weight {weight}")
            }
            AxiomViolation::TotalNotOne(t) => write!(f, "total measure is {t}, not 1"),
            AxiomViolation::NotAdditive { left, right } => write!(
                f,
                "additivity fails for {{{}}} and {{{}}}",
                left.join(","),
                right.join(",")
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
    /// Number of disjoint event pairs tested for additivity.
    pub pairs_checked: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Outcome sets up to this size have every disjoint pair tested.
const EXHAUSTIVE_ADDITIVITY: usize = 8;
const SAMPLED_PAIRS: usize = 1000;

/// Verifies `μ(∅) = 0`, nonnegativity, `μ(Ω) = 1` and finite additivity.
/// Additivity is checked on every disjoint pair of events for small spaces
/// and on a fixed-seed sample of pairs otherwise.
pub fn check_classical_axioms(space: &FiniteProbabilitySpace) -> AxiomReport {
    let mut report = AxiomReport::default();
    let empty = event_probability::<&str>(space, &[]).expect("empty event");
    if !empty.is_zero() {
        report.violations.push(AxiomViolation::EmptyEventNonzero(empty));
    }
    for (o, w) in space.iter() {
        if w.is_negative() {
            report.violations.push(AxiomViolation::Negative {
                outcome: o.to_string(),
                weight: w.clone(),
            });
        }
    }
    let total = space.total();
    if !total.is_one() {
        report.violations.push(AxiomViolation::TotalNotOne(total));
    }

    let n = space.outcomes.len();
    let check_pair = |a: u64, b: u64, report: &mut AxiomReport| {
        report.pairs_checked += 1;
        let union = space.mask_probability(a | b);
        if union != space.mask_probability(a) + space.mask_probability(b) {
            let names = |m: u64| {
                (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| space.outcomes[i].clone())
                    .collect()
            };
            report.violations.push(AxiomViolation::NotAdditive {
                left: names(a),
                right: names(b),
            });
        }
    };
    if n <= EXHAUSTIVE_ADDITIVITY {
        // each outcome goes left, right or nowhere
        let total_pairs = 3u64.pow(n as u32);
        for code in 0..total_pairs {
            let (mut a, mut b, mut c) = (0u64, 0u64, code);
            for i in 0..n {
                match c % 3 {
                    1 => a |= 1 << i,
                    2 => b |= 1 << i,
                    _ => {}
                }
                c /= 3;
            }
            check_pair(a, b, &mut report);
        }
    } else {
        let mut rng = StdRng::seed_from_u64(0x6b73);
        let mut labels: Vec<u8> = vec![0; n];
        for _ in 0..SAMPLED_PAIRS {
            labels.iter_mut().for_each(|l| *l = rng.gen_range(0..3));
            let idx: Vec<usize> = (0..n).collect();
            let left: Vec<usize> = idx.iter().copied().filter(|&i| labels[i] == 1).collect();
            let right: Vec<usize> = idx.iter().copied().filter(|&i| labels[i] == 2).collect();
            report.pairs_checked += 1;
            let sum = |ix: &[usize]| {
                ix.iter()
                    .fold(Rational::zero(), |acc, &i| acc + &space.weights[i])
            };
            let union: Vec<usize> = left.iter().chain(&right).copied().collect();
            if sum(&union) != sum(&left) + sum(&right) {
                report.violations.push(AxiomViolation::NotAdditive {
                    left: left.iter().map(|&i| space.outcomes[i].clone()).collect(),
                    right: right.iter().map(|&i| space.outcomes[i].clone()).collect(),
                });
            }
        }
    }
    report
}

/// Symmetric positive semidefinite rational matrix with unit trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityOperator {
    matrix: RMatrix,
}

impl DensityOperator {
    pub fn from_matrix(matrix: RMatrix) -> Result<Self, ProbabilityError> {
        if !matrix.is_square() {
            return Err(ProbabilityError::InvalidState("matrix is not square".into()));
        }
        if !matrix.is_symmetric() {
            return Err(ProbabilityError::InvalidState("matrix is not symmetric".into()));
        }
        let trace = matrix.trace()?;
        if !trace.is_one() {
            return Err(ProbabilityError::InvalidState(format!("trace is {trace}, not 1")));
        }
        if let Some(k) = negative_pivot(&matrix) {
            return Err(ProbabilityError::InvalidState(format!(
                "matrix is not positive semidefinite (pivot {k})"
            )));
        }
        Ok(DensityOperator { matrix })
    }

    /// Pure state on the ray through `coords`.
    pub fn pure(coords: &RVector) -> Result<Self, ProbabilityError> {
        let canonical = canonicalize_ray(coords)?;
        let ray = Ray::new("", &canonical)?;
        Ok(DensityOperator {
            matrix: projector_of(&ray).matrix().clone(),
        })
    }

    /// Convex mixture `Σ wᵢ |vᵢ⟩⟨vᵢ| / ⟨vᵢ|vᵢ⟩`.
    pub fn mixture(components: &[(Rational, RVector)]) -> Result<Self, ProbabilityError> {
        let Some((_, first)) = components.first() else {
            return Err(ProbabilityError::InvalidState("empty mixture".into()));
        };
        let d = first.dim();
        let mut matrix = RMatrix::zeros(d, d);
        let mut total = Rational::zero();
        for (w, v) in components {
            if v.dim() != d {
                return Err(ProbabilityError::DimensionMismatch {
                    state: d,
                    operand: v.dim(),
                });
            }
            if w.is_negative() {
                return Err(ProbabilityError::InvalidState(format!("negative weight {w}")));
            }
            let pure = Self::pure(v)?;
            matrix = matrix.add(&pure.matrix.scale(w))?;
            total += w;
        }
        if !total.is_one() {
            return Err(ProbabilityError::InvalidState(format!(
                "mixture weights sum to {total}, not 1"
            )));
        }
        Ok(DensityOperator { matrix })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let w = Rational::new(1.into(), (dim as i64).into());
        DensityOperator {
            matrix: RMatrix::identity(dim).scale(&w),
        }
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn trace_with(&self, m: &RMatrix) -> Result<Rational, ProbabilityError> {
        if m.nrows() != self.dim() || m.ncols() != self.dim() {
            return Err(ProbabilityError::DimensionMismatch {
                state: self.dim(),
                operand: m.nrows(),
            });
        }
        // tr(ρM) = Σᵢⱼ ρᵢⱼ Mⱼᵢ
        let d = self.dim();
        let mut acc = Rational::zero();
        for i in 0..d {
            for j in 0..d {
                let r = self.matrix.get(i, j);
                if !r.is_zero() {
                    acc += r * m.get(j, i);
                }
            }
        }
        Ok(acc)
    }

    /// Expectation `tr(ρA)` of an arbitrary symmetric observable.
    pub fn expectation(&self, observable: &RMatrix) -> Result<Rational, ProbabilityError> {
        self.trace_with(observable)
    }
}

/// Symmetric Gaussian elimination without pivoting. A symmetric matrix is
/// PSD iff every pivot is nonnegative and a zero pivot has a zero row
/// beyond it. Returns the index of the first failing pivot.
fn negative_pivot(m: &RMatrix) -> Option<usize> {
    let n = m.nrows();
    let mut a: Vec<Vec<Rational>> = m.rows().map(<[Rational]>::to_vec).collect();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if pivot.is_negative() {
            return Some(k);
        }
        if pivot.is_zero() {
            if a[k][k + 1..].iter().any(|x| !x.is_zero()) {
                return Some(k);
            }
            continue;
        }
        for i in k + 1..n {
            let factor = &a[i][k] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let delta = &factor * &a[k][j];
                a[i][j] -= delta;
            }
        }
    }
    None
}

/// `tr(ρP)`.
pub fn born(rho: &DensityOperator, p: &Projector) -> Result<Rational, ProbabilityError> {
    rho.trace_with(p.matrix())
}

pub fn born_ray(rho: &DensityOperator, ray: &Ray) -> Result<Rational, ProbabilityError> {
    born(rho, &projector_of(ray))
}

/// Born distribution over the outcomes (ray ids) of one context.
pub fn context_distribution(
    rho: &DensityOperator,
    context: &Context,
) -> Result<FiniteProbabilitySpace, ProbabilityError> {
    if context.dim() != rho.dim() {
        return Err(ProbabilityError::DimensionMismatch {
            state: rho.dim(),
            operand: context.dim(),
        });
    }
    let weights = context
        .rays()
        .iter()
        .map(|r| born_ray(rho, r))
        .collect::<Result<Vec<_>, _>>()?;
    let space = FiniteProbabilitySpace::new(context.ray_ids().map(str::to_string).collect(), weights)?;
    assert!(space.total().is_one(), "resolution of identity sums to 1");
    Ok(space)
}

/// Mean value `Σ aᵢ tr(ρPᵢ)` of the context observable with eigenvalue
/// `aᵢ` on the i-th ray.
pub fn mean_value(
    rho: &DensityOperator,
    context: &Context,
    eigenvalues: &[Rational],
) -> Result<Rational, ProbabilityError> {
    if eigenvalues.len() != context.dim() {
        return Err(ProbabilityError::LengthMismatch {
            outcomes: context.dim(),
            weights: eigenvalues.len(),
        });
    }
    let dist = context_distribution(rho, context)?;
    Ok(dist
        .weights()
        .iter()
        .zip(eigenvalues)
        .fold(Rational::zero(), |acc, (p, a)| acc + p * a))
}

/// The matrix `Σ aᵢ Pᵢ`.
pub fn context_observable(context: &Context, eigenvalues: &[Rational]) -> RMatrix {
    let d = context.dim();
    context
        .projectors()
        .iter()
        .zip(eigenvalues)
        .fold(RMatrix::zeros(d, d), |acc, (p, a)| {
            acc.add(&p.matrix().scale(a)).expect("same shape")
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateViolation {
    ZeroNonzero { context: usize, value: Rational },
    NotAdditive { context: usize, mask: u64 },
    IdentityNotOne { context: usize, value: Rational },
}

impl fmt::Display for StateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateViolation::ZeroNonzero { context, value } => {
                write!(f, "context {}: measure of 0 is {value}", context + 1)
            }
            StateViolation::NotAdditive { context, mask } => {
                write!(f, "context {}: additivity fails on outcome set {mask:#b}", context + 1)
            }
            StateViolation::IdentityNotOne { context, value } => {
                write!(f, "context {}: measure of identity is {value}", context + 1)
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StateReport {
    pub violations: Vec<StateViolation>,
    pub families_checked: usize,
}

impl StateReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every context and every subfamily of its atoms, checks
/// `μ(⋁ Pⱼ) = Σ μ(Pⱼ)` with `μ = tr(ρ ·)`, plus `μ(0) = 0` and `μ(1) = 1`.
pub fn check_state_axioms(
    rho: &DensityOperator,
    contexts: &[Context],
) -> Result<StateReport, ProbabilityError> {
    let mut report = StateReport::default();
    for (k, ctx) in contexts.iter().enumerate() {
        let atoms = ctx
            .projectors()
            .iter()
            .map(|p| born(rho, p))
            .collect::<Result<Vec<_>, _>>()?;
        let d = ctx.dim();
        for mask in 0..1u64 << d {
            report.families_checked += 1;
            let joined = born(rho, &ctx.outcome_projector(mask))?;
            let summed = (0..d)
                .filter(|i| mask >> i & 1 == 1)
                .fold(Rational::zero(), |acc, i| acc + &atoms[i]);
            if mask == 0 && !joined.is_zero() {
                report.violations.push(StateViolation::ZeroNonzero {
                    context: k,
                    value: joined.clone(),
                });
            }
            if mask == (1 << d) - 1 && !joined.is_one() {
                report.violations.push(StateViolation::IdentityNotOne {
                    context: k,
                    value: joined.clone(),
                });
            }
            if joined != summed {
                report.violations.push(StateViolation::NotAdditive { context: k, mask });
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PvmViolation {
    EmptyNotZero { context: usize },
    FullNotIdentity { context: usize },
    NotAdditive { context: usize, left: u64, right: u64 },
    ComplementRule { context: usize, mask: u64 },
}

impl fmt::Display for PvmViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PvmViolation::EmptyNotZero { context } => {
                write!(f, "context {}: M(empty) is not 0", context + 1)
            }
            PvmViolation::FullNotIdentity { context } => {
                write!(f, "context {}: M(all outcomes) is not the identity", context + 1)
            }
            PvmViolation::NotAdditive { context, left, right } => write!(
                f,
                "context {}: M not additive on {left:#b} and {right:#b}",
                context + 1
            ),
            PvmViolation::ComplementRule { context, mask } => {
                write!(f, "context {}: complement rule fails on {mask:#b}", context + 1)
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PvmReport {
    pub violations: Vec<PvmViolation>,
}

impl PvmReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Treats each context as a finite-outcome observable with measure
/// `M(B) = Σ_{i∈B} Pᵢ` and checks the projection-valued measure axioms.
pub fn finite_pvm_check(contexts: &[Context]) -> PvmReport {
    let mut report = PvmReport::default();
    for (k, ctx) in contexts.iter().enumerate() {
        let d = ctx.dim();
        let full = (1u64 << d) - 1;
        let measures: Vec<Projector> = (0..=full).map(|m| ctx.outcome_projector(m)).collect();
        let identity = RMatrix::identity(d);
        if !measures[0].matrix().is_zero() {
            report.violations.push(PvmViolation::EmptyNotZero { context: k });
        }
        if *measures[full as usize].matrix() != identity {
            report.violations.push(PvmViolation::FullNotIdentity { context: k });
        }
        for a in 0..=full {
            let complement = identity.sub(measures[a as usize].matrix()).expect("same shape");
            if *measures[(full & !a) as usize].matrix() != complement {
                report.violations.push(PvmViolation::ComplementRule { context: k, mask: a });
            }
            // disjoint partners of `a` are the submasks of its complement
            let rest = full & !a;
            let mut b = rest;
            loop {
                let sum = measures[a as usize]
                    .matrix()
                    .add(measures[b as usize].matrix())
                    .expect("same shape");
                if *measures[(a | b) as usize].matrix() != sum {
                    report.violations.push(PvmViolation::NotAdditive {
                        context: k,
                        left: a,
                        right: b,
                    });
                }
                if b == 0 {
                    break;
                }
                b = (b - 1) & rest;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, rat};
    use crate::qlogic::validate_context;

    fn v(c: &[i64]) -> RVector {
        RVector::from_ints(c)
    }

    fn cabello_first() -> Context {
        let rays = [
            Ray::from_ints("a", &[0, 0, 0, 1]).unwrap(),
            Ray::from_ints("b", &[0, 0, 1, 0]).unwrap(),
            Ray::from_ints("c", &[1, 1, 0, 0]).unwrap(),
            Ray::from_ints("d", &[1, -1, 0, 0]).unwrap(),
        ];
        validate_context(&rays, 4).unwrap()
    }

    #[test]
    fn dice_events() {
        let dice = FiniteProbabilitySpace::dice();
        assert_eq!(event_probability(&dice, &["2", "4", "6"]).unwrap(), rat(1, 2));
        assert_eq!(event_probability(&dice, &["4", "5", "6"]).unwrap(), rat(1, 2));
        assert_eq!(event_probability::<&str>(&dice, &[]).unwrap(), int(0));
        assert_eq!(
            event_probability(&dice, &["7"]),
            Err(ProbabilityError::UnknownOutcome("7".into()))
        );
    }

    #[test]
    fn classical_axiom_reports() {
        let report = check_classical_axioms(&FiniteProbabilitySpace::dice());
        assert!(report.passed());
        assert_eq!(report.pairs_checked, 729);

        let labels: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
        let mut heavy = vec![rat(1, 6); 6];
        heavy[0] = rat(2, 6);
        let report = check_classical_axioms(&FiniteProbabilitySpace::new(labels.clone(), heavy).unwrap());
        assert_eq!(report.violations, vec![AxiomViolation::TotalNotOne(rat(7, 6))]);

        let mut negative = vec![rat(1, 6); 6];
        negative[2] = rat(-1, 6);
        let report = check_classical_axioms(&FiniteProbabilitySpace::new(labels, negative).unwrap());
        assert!(report.violations.contains(&AxiomViolation::Negative {
            outcome: "3".into(),
            weight: rat(-1, 6)
        }));
        assert!(!report.passed());
    }

    #[test]
    fn large_spaces_use_sampled_pairs() {
        let space = FiniteProbabilitySpace::uniform((0..12).map(|i| format!("o{i}")).collect()).unwrap();
        let report = check_classical_axioms(&space);
        assert!(report.passed());
        assert_eq!(report.pairs_checked, SAMPLED_PAIRS);
    }

    #[test]
    fn born_examples() {
        let rho = DensityOperator::pure(&v(&[0, 0, 0, 1])).unwrap();
        let p = |c: &[i64]| projector_of(&Ray::from_ints("", c).unwrap());
        assert_eq!(born(&rho, &p(&[0, 0, 0, 1])).unwrap(), int(1));
        assert_eq!(born(&rho, &p(&[0, 0, 1, 0])).unwrap(), int(0));
        let mixed = DensityOperator::maximally_mixed(4);
        for c in [[1, -1, 1, -1], [0, 1, 0, 0], [1, 1, 1, 1]] {
            assert_eq!(born(&mixed, &p(&c)).unwrap(), rat(1, 4));
        }
        assert!(matches!(
            born(&mixed, &Projector::identity(3)),
            Err(ProbabilityError::DimensionMismatch { state: 4, operand: 3 })
        ));
    }

    #[test]
    fn density_operator_validation() {
        let two = RMatrix::identity(2).scale(&rat(1, 2));
        assert!(DensityOperator::from_matrix(two).is_ok());
        assert!(DensityOperator::from_matrix(RMatrix::identity(2)).is_err());
        let indefinite = RMatrix::from_rows(vec![
            vec![int(1), int(1)],
            vec![int(1), int(0)],
        ])
        .unwrap();
        assert!(matches!(
            DensityOperator::from_matrix(indefinite),
            Err(ProbabilityError::InvalidState(_))
        ));
        // zero pivot with nonzero off-diagonal entry
        let bad = RMatrix::from_rows(vec![
            vec![int(0), int(1), int(0)],
            vec![int(1), rat(1, 2), int(0)],
            vec![int(0), int(0), rat(1, 2)],
        ])
        .unwrap();
        assert!(DensityOperator::from_matrix(bad).is_err());
        let nonsym = RMatrix::from_rows(vec![vec![rat(1, 2), int(1)], vec![int(0), rat(1, 2)]]).unwrap();
        assert!(DensityOperator::from_matrix(nonsym).is_err());

        let pure = DensityOperator::pure(&v(&[1, 1, 0, 0])).unwrap();
        assert!(DensityOperator::from_matrix(pure.matrix().clone()).is_ok());
        assert!(DensityOperator::mixture(&[(rat(1, 2), v(&[1, 0])), (rat(1, 3), v(&[0, 1]))]).is_err());
        assert!(DensityOperator::mixture(&[(rat(3, 2), v(&[1, 0])), (rat(-1, 2), v(&[0, 1]))]).is_err());
    }

    #[test]
    fn context_distribution_examples() {
        let ctx = cabello_first();
        let mixed = context_distribution(&DensityOperator::maximally_mixed(4), &ctx).unwrap();
        assert_eq!(mixed.weights(), &[rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)]);

        let pure = DensityOperator::pure(&v(&[1, 1, 0, 0])).unwrap();
        let dist = context_distribution(&pure, &ctx).unwrap();
        assert_eq!(dist.weights(), &[int(0), int(0), int(1), int(0)]);
        assert_eq!(dist.outcomes(), &["a", "b", "c", "d"]);
    }

    #[test]
    fn mean_value_matches_trace() {
        let ctx = cabello_first();
        let rho = DensityOperator::mixture(&[(rat(1, 3), v(&[1, 2, 0, 1])), (rat(2, 3), v(&[0, 1, -1, 3]))]).unwrap();
        let a = [int(3), rat(-1, 2), int(0), rat(7, 5)];
        let lhs = mean_value(&rho, &ctx, &a).unwrap();
        let rhs = rho.expectation(&context_observable(&ctx, &a)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn state_and_pvm_checks_pass_on_a_context() {
        let ctx = cabello_first();
        let rho = DensityOperator::pure(&v(&[0, 0, 0, 1])).unwrap();
        let report = check_state_axioms(&rho, std::slice::from_ref(&ctx)).unwrap();
        assert!(report.passed());
        assert_eq!(report.families_checked, 16);
        let pvm = finite_pvm_check(std::slice::from_ref(&ctx));
        assert!(pvm.passed());

        // M({r1,r2}) = P1 + P2 and M({r3,r4}) = 1 - M({r1,r2})
        let m12 = ctx.outcome_projector(0b0011);
        let ps = ctx.projectors();
        assert_eq!(m12.matrix(), &ps[0].matrix().add(ps[1].matrix()).unwrap());
        assert_eq!(ctx.outcome_projector(0b1100), m12.complement());
        for (i, p) in ps.iter().enumerate() {
            assert_eq!(&ctx.outcome_projector(1 << i), p);
        }
    }
}
