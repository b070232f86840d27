//! Exact feasibility of `A x = b, x >= 0` by a phase-one simplex.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// True iff `{x >= 0 : a x = b}` is nonempty.
///
/// Runs the phase-one simplex with one artificial variable per row over
/// exact rationals. Entering and leaving choices follow Bland's rule, which
/// rules out cycling, so the search always terminates; the system is
/// feasible exactly when the artificial objective reaches zero.
#[allow(clippy::needless_range_loop)] // tableau pivoting reads and writes by index
pub(crate) fn feasible(a: &[Vec<Q>], b: &[Q]) -> bool {
    let m = a.len();
    debug_assert_eq!(m, b.len());
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;

    // Tableau [A | I | b] with every right-hand side made non-negative,
    // so the artificial basis is immediately feasible.
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Q> = Vec::with_capacity(width);
        for j in 0..n {
            row.push(if flip {
                -a[i][j].clone()
            } else {
                a[i][j].clone()
            });
        }
        for k in 0..m {
            row.push(if k == i { Q::one() } else { Q::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs r_j = c_j - sum_i t[i][j] for the artificial cost vector
    // (c_j = 1 on artificial columns), kept in step with the tableau by the
    // same eliminations. The rhs slot of `r` is unused.
    let mut r: Vec<Q> = (0..width)
        .map(|j| {
            let col_sum = t.iter().fold(Q::zero(), |acc, row| acc + row[j].clone());
            let cost = if (n..n + m).contains(&j) {
                Q::one()
            } else {
                Q::zero()
            };
            cost - col_sum
        })
        .collect();

    // Bland: the smallest improving column enters.
    while let Some(enter) = (0..n + m).find(|&j| r[j].is_negative()) {
        // The artificial objective is bounded below by zero, so the entering
        // column always has a positive entry; pick the tightest ratio and
        // break ties towards the smallest basic index.
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let better = match leave {
                None => true,
                Some(cur) => {
                    let lhs = t[i][width - 1].clone() * t[cur][enter].clone();
                    let rhs = t[cur][width - 1].clone() * t[i][enter].clone();
                    lhs < rhs || (lhs == rhs && basis[i] < basis[cur])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        let leave = leave.expect("bounded objective always admits a pivot");

        let pivot = t[leave][enter].clone();
        for v in t[leave].iter_mut() {
            *v /= pivot.clone();
        }
        for i in 0..m {
            if i == leave || t[i][enter].is_zero() {
                continue;
            }
            let factor = t[i][enter].clone();
            for j in 0..width {
                let delta = factor.clone() * t[leave][j].clone();
                t[i][j] -= delta;
            }
        }
        if !r[enter].is_zero() {
            let factor = r[enter].clone();
            for j in 0..width {
                let delta = factor.clone() * t[leave][j].clone();
                r[j] -= delta;
            }
        }
        basis[leave] = enter;
    }

    let residual = (0..m)
        .filter(|&i| basis[i] >= n)
        .fold(Q::zero(), |acc, i| acc + t[i][width - 1].clone());
    residual.is_zero()
}
