//! Backtracking over exactly-one constraints.
//!
//! Contexts are processed in index order. A context that already holds a
//! ray valued 1 is skipped; otherwise each of its still-open rays is tried
//! as the 1, in index order. Setting a ray to 1 forces 0 on every ray that
//! shares a context with it, and a branch is cut as soon as some context
//! has no ray left that could take the 1. Each valuation corresponds to
//! exactly one leaf, so the same walk serves for finding, counting and
//! enumerating.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::One;

use super::{context_neighbours, KSScenario, ScenarioError, Valuation};

/// Largest number of rays (per independent component when counting) that
/// exhaustive enumeration accepts.
pub const EXHAUSTIVE_BOUND: usize = 30;

struct Search<'a> {
    contexts: &'a [&'a [usize]],
    neighbours: &'a [Vec<usize>],
    assign: Vec<Option<bool>>,
    trail: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(contexts: &'a [&'a [usize]], neighbours: &'a [Vec<usize>], rays: usize) -> Self {
        Search {
            contexts,
            neighbours,
            assign: vec![None; rays],
            trail: Vec::new(),
        }
    }

    fn set_true(&mut self, r: usize) -> bool {
        self.assign[r] = Some(true);
        self.trail.push(r);
        for &n in &self.neighbours[r] {
            match self.assign[n] {
                Some(true) => return false,
                Some(false) => {}
                None => {
                    self.assign[n] = Some(false);
                    self.trail.push(n);
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for r in self.trail.drain(mark..) {
            self.assign[r] = None;
        }
    }

    fn every_context_open(&self) -> bool {
        self.contexts
            .iter()
            .all(|ctx| ctx.iter().any(|&r| self.assign[r] != Some(false)))
    }

    fn visit<F>(&mut self, k: usize, leaf: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Option<bool>]) -> ControlFlow<()>,
    {
        let Some(ctx) = self.contexts.get(k) else {
            return leaf(&self.assign);
        };
        if ctx.iter().any(|&r| self.assign[r] == Some(true)) {
            return self.visit(k + 1, leaf);
        }
        for &r in ctx.iter() {
            if self.assign[r].is_some() {
                continue;
            }
            let mark = self.trail.len();
            if self.set_true(r) && self.every_context_open() {
                let flow = self.visit(k + 1, leaf);
                if flow.is_break() {
                    self.undo(mark);
                    return flow;
                }
            }
            self.undo(mark);
        }
        ControlFlow::Continue(())
    }
}

fn to_valuation(assign: &[Option<bool>]) -> Valuation {
    Valuation::new(
        assign
            .iter()
            .map(|a| u8::from(a.expect("every ray lies in a context")))
            .collect(),
    )
}

/// First valuation in tie-break order, or `None` when the scenario is a
/// KS set.
pub fn find_valuation(s: &KSScenario) -> Option<Valuation> {
    let neighbours = context_neighbours(s);
    let contexts: Vec<&[usize]> = s.members().iter().map(Vec::as_slice).collect();
    let mut search = Search::new(&contexts, &neighbours, s.rays().len());
    let mut found = None;
    let _ = search.visit(0, &mut |assign| {
        found = Some(to_valuation(assign));
        ControlFlow::Break(())
    });
    found
}

/// Groups of contexts connected through shared rays, each with its ray
/// count. Contexts keep their relative order inside a group.
fn components(s: &KSScenario) -> Vec<(Vec<usize>, usize)> {
    let n = s.contexts().len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut owner: Vec<Option<usize>> = vec![None; s.rays().len()];
    for (k, ctx) in s.members().iter().enumerate() {
        for &r in ctx {
            match owner[r] {
                None => owner[r] = Some(k),
                Some(other) => {
                    let (a, b) = (find(&mut parent, k), find(&mut parent, other));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for k in 0..n {
        let root = find(&mut parent, k);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, g)) => g.push(k),
            None => groups.push((root, vec![k])),
        }
    }
    groups
        .into_iter()
        .map(|(_, g)| {
            let mut rays: Vec<usize> = g.iter().flat_map(|&k| s.members()[k].iter().copied()).collect();
            rays.sort_unstable();
            rays.dedup();
            (g, rays.len())
        })
        .collect()
}

/// Exact number of valuations. Components that share no ray are counted
/// independently and multiplied; each component must have at most
/// [`EXHAUSTIVE_BOUND`] rays.
pub fn count_valuations(s: &KSScenario) -> Result<BigUint, ScenarioError> {
    let groups = components(s);
    if let Some(&(_, rays)) = groups.iter().find(|(_, rays)| *rays > EXHAUSTIVE_BOUND) {
        return Err(ScenarioError::ExceedsBound {
            rays,
            bound: EXHAUSTIVE_BOUND,
        });
    }
    let neighbours = context_neighbours(s);
    let mut total = BigUint::one();
    for (group, _) in groups {
        let contexts: Vec<&[usize]> = group.iter().map(|&k| s.members()[k].as_slice()).collect();
        let mut search = Search::new(&contexts, &neighbours, s.rays().len());
        let mut count: u64 = 0;
        let _ = search.visit(0, &mut |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        total *= count;
        if count == 0 {
            break;
        }
    }
    Ok(total)
}

/// Every valuation, in search order. The whole scenario must have at most
/// [`EXHAUSTIVE_BOUND`] rays.
pub fn enumerate_valuations(s: &KSScenario) -> Result<Vec<Valuation>, ScenarioError> {
    if s.rays().len() > EXHAUSTIVE_BOUND {
        return Err(ScenarioError::ExceedsBound {
            rays: s.rays().len(),
            bound: EXHAUSTIVE_BOUND,
        });
    }
    let neighbours = context_neighbours(s);
    let contexts: Vec<&[usize]> = s.members().iter().map(Vec::as_slice).collect();
    let mut search = Search::new(&contexts, &neighbours, s.rays().len());
    let mut out = Vec::new();
    let _ = search.visit(0, &mut |assign| {
        out.push(to_valuation(assign));
        ControlFlow::Continue(())
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ksengine::{build_scenario, cabello18, cabello18_contexts, verify_func, RawRay};

    /// Direct enumeration of all 2^n assignments.
    fn brute_force_count(s: &KSScenario) -> u64 {
        let n = s.rays().len();
        assert!(n <= 20);
        (0u32..1 << n)
            .filter(|bits| {
                s.members()
                    .iter()
                    .all(|ctx| ctx.iter().filter(|&&r| bits >> r & 1 == 1).count() == 1)
            })
            .count() as u64
    }

    #[test]
    fn cabello_has_no_valuation() {
        let s = cabello18(true);
        assert_eq!(find_valuation(&s), None);
        assert_eq!(count_valuations(&s).unwrap(), BigUint::from(0u32));
        assert!(enumerate_valuations(&s).unwrap().is_empty());
    }

    #[test]
    fn single_context_picks_lowest_ray() {
        let s = build_scenario(4, &cabello18_contexts()[..1], true).unwrap();
        let v = find_valuation(&s).unwrap();
        assert_eq!(v.values(), &[1, 0, 0, 0]);
        assert_eq!(count_valuations(&s).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn disjoint_contexts_multiply() {
        let raw = vec![
            vec![
                RawRay::from_ints("a1", &[1, 0, 0, 0]),
                RawRay::from_ints("a2", &[0, 1, 0, 0]),
                RawRay::from_ints("a3", &[0, 0, 1, 0]),
                RawRay::from_ints("a4", &[0, 0, 0, 1]),
            ],
            vec![
                RawRay::from_ints("b1", &[1, 1, 0, 0]),
                RawRay::from_ints("b2", &[1, -1, 0, 0]),
                RawRay::from_ints("b3", &[0, 0, 1, 1]),
                RawRay::from_ints("b4", &[0, 0, 1, -1]),
            ],
        ];
        let s = build_scenario(4, &raw, true).unwrap();
        assert_eq!(s.rays().len(), 8);
        assert_eq!(count_valuations(&s).unwrap(), BigUint::from(16u32));
        assert_eq!(enumerate_valuations(&s).unwrap().len(), 16);
    }

    #[test]
    fn unmerged_cabello_is_colorable() {
        let s = cabello18(false);
        let v = find_valuation(&s).unwrap();
        assert!(verify_func(&v, &s).unwrap().passed());
        assert_eq!(count_valuations(&s).unwrap(), BigUint::from(4u32).pow(9));
        assert!(matches!(
            enumerate_valuations(&s),
            Err(ScenarioError::ExceedsBound { rays: 36, bound: 30 })
        ));
    }

    #[test]
    fn deletions_match_brute_force() {
        let s = cabello18(true);
        for k in 0..9 {
            let sub = s.without_context(k).unwrap();
            let count = count_valuations(&sub).unwrap();
            assert_eq!(count, BigUint::from(brute_force_count(&sub)));
            assert_eq!(count, BigUint::from(26u32));
            let all = enumerate_valuations(&sub).unwrap();
            assert_eq!(all.len(), 26);
            assert_eq!(find_valuation(&sub).as_ref(), all.first());
        }
    }

    #[test]
    fn oversized_component_is_rejected() {
        // contexts {x_k, y_k, z} all sharing z
        let mut raw = Vec::new();
        for k in 0..9 {
            let s = k as i64;
            raw.push(vec![
                RawRay::from_ints(format!("x{k}"), &[1, s, 0]),
                RawRay::from_ints(format!("y{k}"), &[-s, 1, 0]),
                RawRay::from_ints("z", &[0, 0, 1]),
            ]);
        }
        let s = build_scenario(3, &raw, true).unwrap();
        assert_eq!(s.rays().len(), 19);
        assert_eq!(count_valuations(&s).unwrap(), BigUint::from(brute_force_count(&s)));
        assert_eq!(count_valuations(&s).unwrap(), BigUint::from(513u32));

        let mut raw = raw;
        for k in 9..16 {
            let s = k as i64;
            raw.push(vec![
                RawRay::from_ints(format!("x{k}"), &[1, s, 0]),
                RawRay::from_ints(format!("y{k}"), &[-s, 1, 0]),
                RawRay::from_ints("z", &[0, 0, 1]),
            ]);
        }
        let s = build_scenario(3, &raw, true).unwrap();
        assert_eq!(s.rays().len(), 33);
        assert!(matches!(
            count_valuations(&s),
            Err(ScenarioError::ExceedsBound { rays: 33, bound: 30 })
        ));
        // finding is not bounded
        assert!(find_valuation(&s).is_some());
    }
}
