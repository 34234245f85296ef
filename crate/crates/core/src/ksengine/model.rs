//! Noncontextual hidden-variable models: convex weights over valuations
//! that reproduce the Born probability of every ray.

use num_traits::{One, Zero};
use thiserror::Error;

use super::feasibility::{solve_nonnegative, EqualitySystem};
use super::{enumerate_valuations, KSScenario, ScenarioError, Valuation};
use crate::exactlin::Rational;
use crate::probability::{born_ray, DensityOperator, ProbabilityError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Probability(#[from] ProbabilityError),
}

/// Weights over the valuations of a scenario. Only valuations with nonzero
/// weight are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoncontextualModel {
    pub weights: Vec<(Valuation, Rational)>,
}

impl NoncontextualModel {
    /// `Σ_λ p(λ) v_λ(r)` for ray index `r`.
    pub fn ray_probability(&self, r: usize) -> Rational {
        self.weights
            .iter()
            .filter(|(v, _)| v.value(r) == 1)
            .fold(Rational::zero(), |acc, (_, w)| acc + w)
    }

    /// Re-substitution check against the Born rule.
    pub fn reproduces(&self, s: &KSScenario, rho: &DensityOperator) -> Result<bool, ProbabilityError> {
        let total = self.weights.iter().fold(Rational::zero(), |acc, (_, w)| acc + w);
        if !total.is_one() {
            return Ok(false);
        }
        for (r, ray) in s.rays().iter().enumerate() {
            if self.ray_probability(r) != born_ray(rho, ray)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelOutcome {
    Feasible(NoncontextualModel),
    Infeasible,
}

/// Looks for nonnegative weights on the scenario's valuations, summing to
/// one, whose marginal on every ray equals `tr(ρ P_r)`. Solved exactly, so
/// `Infeasible` is a proof that no such model exists.
pub fn noncontextual_model(s: &KSScenario, rho: &DensityOperator) -> Result<ModelOutcome, ModelError> {
    if rho.dim() != s.dim() {
        return Err(ProbabilityError::DimensionMismatch {
            state: rho.dim(),
            operand: s.dim(),
        }
        .into());
    }
    let born = s
        .rays()
        .iter()
        .map(|r| born_ray(rho, r))
        .collect::<Result<Vec<_>, _>>()?;
    let valuations = enumerate_valuations(s)?;
    if valuations.is_empty() {
        return Ok(ModelOutcome::Infeasible);
    }

    let mut rows = vec![vec![Rational::one(); valuations.len()]];
    let mut rhs = vec![Rational::one()];
    for (r, p) in born.into_iter().enumerate() {
        rows.push(
            valuations
                .iter()
                .map(|v| Rational::from_integer(v.value(r).into()))
                .collect(),
        );
        rhs.push(p);
    }
    let system = EqualitySystem { rows, rhs };
    Ok(match solve_nonnegative(&system) {
        None => ModelOutcome::Infeasible,
        Some(x) => ModelOutcome::Feasible(NoncontextualModel {
            weights: valuations
                .into_iter()
                .zip(x)
                .filter(|(_, w)| !w.is_zero())
                .collect(),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, RVector};
    use crate::ksengine::{build_scenario, cabello18, cabello18_contexts};

    fn single() -> KSScenario {
        build_scenario(4, &cabello18_contexts()[..1], true).unwrap()
    }

    #[test]
    fn cabello_is_infeasible() {
        let rho = DensityOperator::maximally_mixed(4);
        assert_eq!(
            noncontextual_model(&cabello18(true), &rho).unwrap(),
            ModelOutcome::Infeasible
        );
    }

    #[test]
    fn maximally_mixed_single_context() {
        let s = single();
        let rho = DensityOperator::maximally_mixed(4);
        let ModelOutcome::Feasible(model) = noncontextual_model(&s, &rho).unwrap() else {
            panic!("expected a model");
        };
        assert_eq!(model.weights.len(), 4);
        assert!(model.weights.iter().all(|(_, w)| *w == rat(1, 4)));
        assert!(model.reproduces(&s, &rho).unwrap());
    }

    #[test]
    fn pure_state_gives_point_mass() {
        let s = single();
        let rho = DensityOperator::pure(&RVector::from_ints(&[1, -1, 0, 0])).unwrap();
        let ModelOutcome::Feasible(model) = noncontextual_model(&s, &rho).unwrap() else {
            panic!("expected a model");
        };
        assert_eq!(model.weights.len(), 1);
        let (v, w) = &model.weights[0];
        assert!(w.is_one());
        assert_eq!(v.true_rays(&s).collect::<Vec<_>>(), ["v04"]);
    }

    #[test]
    fn pure_state_outside_the_context() {
        let s = single();
        let rho = DensityOperator::pure(&RVector::from_ints(&[1, 2, 3, 4])).unwrap();
        let ModelOutcome::Feasible(model) = noncontextual_model(&s, &rho).unwrap() else {
            panic!("expected a model");
        };
        assert!(model.reproduces(&s, &rho).unwrap());
        assert_eq!(model.ray_probability(0), rat(16, 30));
    }

    #[test]
    fn dimension_mismatch() {
        let rho = DensityOperator::maximally_mixed(3);
        assert!(matches!(
            noncontextual_model(&single(), &rho),
            Err(ModelError::Probability(ProbabilityError::DimensionMismatch { .. }))
        ));
    }

    #[test]
    fn too_many_rays() {
        let rho = DensityOperator::maximally_mixed(4);
        assert!(matches!(
            noncontextual_model(&cabello18(false), &rho),
            Err(ModelError::Scenario(ScenarioError::ExceedsBound { .. }))
        ));
    }
}
