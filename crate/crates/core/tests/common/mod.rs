#![allow(dead_code)]

use std::path::PathBuf;

use kstoolkit::exactlin::{rat, RVector, Rational};
use kstoolkit::probability::DensityOperator;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

pub fn scenario_fixtures() -> Vec<&'static str> {
    vec!["cabello18.ks", "single.ks", "disjoint.ks", "qubit.ks"]
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn random_nonzero_vector<R: Rng>(rng: &mut R, dim: usize) -> RVector {
    loop {
        let v = RVector::new((0..dim).map(|_| random_rational(rng)).collect()).unwrap();
        if !v.is_zero() {
            return v;
        }
    }
}

/// Convex mixture of 1 to 4 random pure states with random rational weights.
pub fn random_mixed_state<R: Rng>(rng: &mut R, dim: usize) -> DensityOperator {
    let k = rng.gen_range(1..=4);
    let raw: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = raw.iter().sum();
    let components: Vec<_> = raw
        .iter()
        .map(|&w| (rat(w, total), random_nonzero_vector(rng, dim)))
        .collect();
    DensityOperator::mixture(&components).unwrap()
}
