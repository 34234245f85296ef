//! Exact feasibility of `A x = b, x >= 0` by phase-one simplex.
//!
//! Bland's rule picks both the entering and the leaving column, so the
//! method terminates without any anti-cycling perturbation.

use num_traits::{One, Signed, Zero};

use crate::exactlin::Rational;

/// Dense equality system over the rationals.
#[derive(Debug, Clone)]
pub struct EqualitySystem {
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

impl EqualitySystem {
    pub fn num_vars(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
}

/// Returns a nonnegative solution, or `None` when the system has none.
pub fn solve_nonnegative(system: &EqualitySystem) -> Option<Vec<Rational>> {
    let m = system.rows.len();
    let n = system.num_vars();
    assert!(system.rows.iter().all(|r| r.len() == n), "ragged system");
    assert_eq!(system.rhs.len(), m, "one right-hand side per row");
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }

    // columns: n structural, m artificial, then the right-hand side
    let width = n + m + 1;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, b)) in system.rows.iter().zip(&system.rhs).enumerate() {
        let flip = b.is_negative();
        let mut t: Vec<Rational> = row
            .iter()
            .map(|a| if flip { -a } else { a.clone() })
            .collect();
        t.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        t.push(if flip { -b } else { b.clone() });
        tab.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let is_artificial = |j: usize| j >= n;

    loop {
        // reduced cost of column j for the objective Σ artificials
        let reduced = |j: usize, tab: &[Vec<Rational>], basis: &[usize]| {
            let c = if is_artificial(j) { Rational::one() } else { Rational::zero() };
            basis
                .iter()
                .zip(tab)
                .filter(|(&b, _)| is_artificial(b))
                .fold(c, |acc, (_, row)| acc - &row[j])
        };
        let entering = (0..n + m)
            .filter(|j| !basis.contains(j))
            .find(|&j| reduced(j, &tab, &basis).is_negative());
        let Some(col) = entering else { break };

        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[col].is_positive() {
                continue;
            }
            let ratio = &row[width - 1] / &row[col];
            let better = match &leave {
                None => true,
                Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // phase-one objective is bounded below by zero
        let (pivot_row, _) = leave.expect("phase one cannot be unbounded");
        pivot(&mut tab, pivot_row, col);
        basis[pivot_row] = col;
    }

    let infeasibility = basis
        .iter()
        .zip(&tab)
        .filter(|(&b, _)| is_artificial(b))
        .fold(Rational::zero(), |acc, (_, row)| acc + &row[width - 1]);
    if !infeasibility.is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (&b, row) in basis.iter().zip(&tab) {
        if b < n {
            x[b] = row[width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], row: usize, col: usize) {
    let inv = tab[row][col].recip();
    for v in tab[row].iter_mut() {
        *v *= &inv;
    }
    let pivot_row = tab[row].clone();
    for (i, r) in tab.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let factor = r[col].clone();
        for (v, p) in r.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &factor * p;
            }
        }
    }
}

/// `A x = b` holds exactly and `x >= 0`.
pub fn is_solution(system: &EqualitySystem, x: &[Rational]) -> bool {
    x.len() == system.num_vars()
        && x.iter().all(|v| !v.is_negative())
        && system.rows.iter().zip(&system.rhs).all(|(row, b)| {
            row.iter()
                .zip(x)
                .fold(Rational::zero(), |acc, (a, v)| acc + a * v)
                == *b
        })
}
