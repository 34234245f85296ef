//! Exchange symmetry of two-particle states.

use kstoolkit::exactlin::RVector;
use kstoolkit::qlogic::{projector_of, Ray};
use kstoolkit::symmetry::{exchange_parity, swap, symmetrize, Exchange, SymmetryError, TwoParticleState};
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = (RVector, RVector)> {
    (2usize..=4)
        .prop_flat_map(|d| {
            (
                proptest::collection::vec(-4i64..=4, d),
                proptest::collection::vec(-4i64..=4, d),
            )
        })
        .prop_map(|(a, b)| (RVector::from_ints(&a), RVector::from_ints(&b)))
        .prop_filter("nonzero, nonproportional", |(a, b)| {
            !a.is_zero() && !b.is_zero() && !a.is_proportional(b)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn parity_matches_sign((a, b) in pair()) {
        prop_assert_eq!(exchange_parity(&symmetrize(&a, &b, Exchange::Symmetric).unwrap()), Some(1));
        prop_assert_eq!(exchange_parity(&symmetrize(&a, &b, Exchange::Antisymmetric).unwrap()), Some(-1));
    }

    #[test]
    fn swap_preserves_norm((a, b) in pair()) {
        let s = TwoParticleState::product(&a, &b).unwrap();
        let swapped = swap(&s);
        prop_assert_eq!(swapped.norm_squared(), s.norm_squared());
        prop_assert_eq!(swap(&swap(&s)), s);
    }

    #[test]
    fn order_of_factors((a, b) in pair()) {
        let ab = symmetrize(&a, &b, Exchange::Symmetric).unwrap();
        prop_assert_eq!(symmetrize(&b, &a, Exchange::Symmetric).unwrap(), ab);
        let ab = symmetrize(&a, &b, Exchange::Antisymmetric).unwrap();
        prop_assert_eq!(symmetrize(&b, &a, Exchange::Antisymmetric).unwrap(), ab.negate());
    }

    #[test]
    fn fermions_exclude_proportional_factors(a in proptest::collection::vec(-4i64..=4, 2..=4), k in -3i64..=3) {
        let a = RVector::from_ints(&a);
        prop_assume!(!a.is_zero() && k != 0);
        let b = a.scale(&kstoolkit::exactlin::int(k));
        prop_assert_eq!(symmetrize(&a, &b, Exchange::Antisymmetric), Err(SymmetryError::ZeroState));
    }

    #[test]
    fn pair_probability_is_swap_invariant((a, b) in pair(), p in proptest::collection::vec(-3i64..=3, 4)) {
        let d = a.dim();
        let p = &p[..d];
        prop_assume!(p.iter().any(|&c| c != 0));
        let proj = projector_of(&Ray::from_ints("p", p).unwrap());
        for s in [
            TwoParticleState::product(&a, &b).unwrap(),
            symmetrize(&a, &b, Exchange::Symmetric).unwrap(),
            symmetrize(&a, &b, Exchange::Antisymmetric).unwrap(),
        ] {
            prop_assert_eq!(s.pair_probability(&proj).unwrap(), swap(&s).pair_probability(&proj).unwrap());
        }
    }
}

#[test]
fn fermions_never_share_a_one_dimensional_state() {
    // P⊗P on an antisymmetric state always has probability 0
    let a = RVector::from_ints(&[1, 2, 0]);
    let b = RVector::from_ints(&[0, 1, 1]);
    let s = symmetrize(&a, &b, Exchange::Antisymmetric).unwrap();
    for c in [[1, 0, 0], [1, 1, 1], [2, -1, 3]] {
        let p = projector_of(&Ray::from_ints("p", &c).unwrap());
        assert!(num_traits::Zero::is_zero(&s.pair_probability(&p).unwrap()));
    }
}
