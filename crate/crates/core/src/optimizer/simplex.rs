//! Dense-tableau primal simplex for the inner packing LPs.
//!
//! Every instance here is `max c·x  s.t.  Ax ≤ b, x ≥ 0` with `b ≥ 0`, so
//! the slack basis is feasible from the start and no phase-1 is needed.
//! Pivoting uses Bland's rule throughout: the packing LPs are heavily
//! degenerate (most right-hand sides are zero) and Bland guarantees
//! termination where Dantzig can cycle. Instances are tiny (tens of rows),
//! so the dense tableau is the fast representation, not just the simple one.

#[derive(Debug, Clone, PartialEq)]
pub enum LpResult {
    Optimal { objective: f64, x: Vec<f64> },
    Infeasible,
    Unbounded,
}

/// One `Σ coeffs·x ≤ rhs` row, sparse.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<(usize, f64)>,
    pub rhs: f64,
}

/// Maximize `objective · x` subject to `constraints` and `x ≥ 0`.
/// Requires every `rhs ≥ 0`.
pub fn maximize(num_vars: usize, objective: &[f64], constraints: &[Constraint], tol: f64) -> LpResult {
    debug_assert_eq!(objective.len(), num_vars);
    debug_assert!(constraints.iter().all(|c| c.rhs >= 0.0));

    let m = constraints.len();
    let cols = num_vars + m + 1; // vars, slacks, rhs
    let rhs_col = cols - 1;
    let mut tab = vec![0.0f64; (m + 1) * cols];
    let row = |r: usize| r * cols;

    for (r, c) in constraints.iter().enumerate() {
        for &(j, v) in &c.coeffs {
            debug_assert!(j < num_vars);
            tab[row(r) + j] += v;
        }
        tab[row(r) + num_vars + r] = 1.0;
        tab[row(r) + rhs_col] = c.rhs;
    }
    for j in 0..num_vars {
        tab[row(m) + j] = -objective[j];
    }

    let mut basis: Vec<usize> = (num_vars..num_vars + m).collect();

    loop {
        // Bland: entering = lowest-index column with negative reduced cost
        let mut entering = None;
        for j in 0..(cols - 1) {
            if tab[row(m) + j] < -tol {
                entering = Some(j);
                break;
            }
        }
        let Some(e) = entering else {
            break;
        };

        // ratio test; ties by lowest basis variable index (Bland)
        let mut leaving: Option<(usize, f64)> = None;
        for r in 0..m {
            let a = tab[row(r) + e];
            if a > tol {
                let ratio = tab[row(r) + rhs_col] / a;
                let better = match leaving {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < lratio - tol
                            || (ratio < lratio + tol && basis[r] < basis[lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
        }
        let Some((l, _)) = leaving else {
            return LpResult::Unbounded;
        };

        // pivot on (l, e)
        let pivot = tab[row(l) + e];
        for j in 0..cols {
            tab[row(l) + j] /= pivot;
        }
        for r in 0..=m {
            if r == l {
                continue;
            }
            let factor = tab[row(r) + e];
            if factor == 0.0 {
                continue;
            }
            for j in 0..cols {
                tab[row(r) + j] -= factor * tab[row(l) + j];
            }
        }
        basis[l] = e;
    }

    let mut x = vec![0.0f64; num_vars];
    for (r, &bv) in basis.iter().enumerate() {
        if bv < num_vars {
            x[bv] = tab[row(r) + rhs_col];
        }
    }
    let objective = tab[row(m) + rhs_col];
    LpResult::Optimal { objective, x }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opt(r: LpResult) -> (f64, Vec<f64>) {
        match r {
            LpResult::Optimal { objective, x } => (objective, x),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn single_variable_box() {
        let (obj, x) = opt(maximize(
            1,
            &[1.0],
            &[Constraint { coeffs: vec![(0, 1.0)], rhs: 1.0 }],
            1e-9,
        ));
        assert!((obj - 1.0).abs() < 1e-9);
        assert!((x[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn two_variable_chain() {
        // max s0 + s1 s.t. s0 + s1 <= 1 (the n=2 side chain collapses to this)
        let (obj, _) = opt(maximize(
            2,
            &[1.0, 1.0],
            &[Constraint { coeffs: vec![(0, 1.0), (1, 1.0)], rhs: 1.0 }],
            1e-9,
        ));
        assert!((obj - 1.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_rhs_zero_terminates() {
        // heavy degeneracy: several rows with zero rhs
        let cons = vec![
            Constraint { coeffs: vec![(0, 1.0), (1, -1.0)], rhs: 0.0 },
            Constraint { coeffs: vec![(1, 1.0), (2, -1.0)], rhs: 0.0 },
            Constraint { coeffs: vec![(2, 1.0)], rhs: 1.0 },
            Constraint { coeffs: vec![(0, 1.0)], rhs: 1.0 },
        ];
        let (obj, x) = opt(maximize(3, &[1.0, 0.0, 0.0], &cons, 1e-9));
        assert!((obj - 1.0).abs() < 1e-9);
        assert!((x[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn unbounded_detected() {
        let r = maximize(
            2,
            &[1.0, 0.0],
            &[Constraint { coeffs: vec![(1, 1.0)], rhs: 1.0 }],
            1e-9,
        );
        assert_eq!(r, LpResult::Unbounded);
    }

    #[test]
    fn known_vertex_optimum() {
        // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6 -> x=4, y=0, obj 12
        let cons = vec![
            Constraint { coeffs: vec![(0, 1.0), (1, 1.0)], rhs: 4.0 },
            Constraint { coeffs: vec![(0, 1.0), (1, 3.0)], rhs: 6.0 },
        ];
        let (obj, x) = opt(maximize(2, &[3.0, 2.0], &cons, 1e-9));
        assert!((obj - 12.0).abs() < 1e-9);
        assert!((x[0] - 4.0).abs() < 1e-9 && x[1].abs() < 1e-9);
    }
}
