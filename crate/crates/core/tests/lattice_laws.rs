//! Orthocomplemented-lattice laws on random rational subspaces.

use kstoolkit::exactlin::{rat, RVector};
use kstoolkit::qlogic::Subspace;
use proptest::prelude::*;

fn vector(dim: usize) -> impl Strategy<Value = RVector> {
    proptest::collection::vec((-3i64..=3, 1i64..=3).prop_map(|(n, d)| rat(n, d)), dim)
        .prop_map(|e| RVector::new(e).unwrap())
}

fn subspace(dim: usize) -> impl Strategy<Value = Subspace> {
    proptest::collection::vec(vector(dim), 0..=dim).prop_map(move |vs| Subspace::span(dim, &vs).unwrap())
}

fn triple() -> impl Strategy<Value = (Subspace, Subspace, Subspace)> {
    (2usize..=4).prop_flat_map(|d| (subspace(d), subspace(d), subspace(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn double_orthocomplement((s, _, _) in triple()) {
        prop_assert_eq!(s.ortho().ortho(), s);
    }

    #[test]
    fn de_morgan((s, t, _) in triple()) {
        prop_assert_eq!(s.join(&t).unwrap().ortho(), s.ortho().meet(&t.ortho()).unwrap());
        prop_assert_eq!(s.meet(&t).unwrap().ortho(), s.ortho().join(&t.ortho()).unwrap());
    }

    #[test]
    fn orthomodular((s, w, _) in triple()) {
        // s ⊆ t by construction
        let t = s.join(&w).unwrap();
        prop_assert!(t.contains(&s));
        prop_assert_eq!(s.join(&t.meet(&s.ortho()).unwrap()).unwrap(), t);
    }

    #[test]
    fn modular((s, t, w) in triple()) {
        let u = s.join(&w).unwrap();
        let lhs = s.join(&t.meet(&u).unwrap()).unwrap();
        let rhs = s.join(&t).unwrap().meet(&u).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn complement_is_disjoint_and_spanning((s, _, _) in triple()) {
        let d = s.dim_ambient();
        prop_assert!(s.meet(&s.ortho()).unwrap().is_zero());
        prop_assert_eq!(s.join(&s.ortho()).unwrap(), Subspace::full(d));
        prop_assert_eq!(s.rank() + s.ortho().rank(), d);
    }

    #[test]
    fn meet_is_largest_lower_bound((s, t, _) in triple()) {
        let m = s.meet(&t).unwrap();
        prop_assert!(s.contains(&m) && t.contains(&m));
        // dimension formula
        prop_assert_eq!(m.rank() + s.join(&t).unwrap().rank(), s.rank() + t.rank());
    }
}

#[test]
fn distributivity_fails_on_three_rays() {
    let ray = |c: &[i64]| Subspace::span(2, &[RVector::from_ints(c)]).unwrap();
    let (s, t, u) = (ray(&[1, 1]), ray(&[1, 0]), ray(&[0, 1]));
    let lhs = s.meet(&t.join(&u).unwrap()).unwrap();
    let rhs = s.meet(&t).unwrap().join(&s.meet(&u).unwrap()).unwrap();
    assert_eq!(lhs, s);
    assert!(rhs.is_zero());
}
