//! Exact feasibility of `A x = b, x >= 0` by the phase-one simplex method
//! with Bland's rule (no cycling).

use num_traits::{One, Signed, Zero};

use super::rational::Q;

/// A nonnegative solution of `A x = b`, or `None` when none exists.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    if m == 0 {
        return Some(vec![Q::zero(); n]);
    }
    // Tableau columns: n structural, m artificial, 1 right-hand side.
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut tr = Vec::with_capacity(width);
        for x in row {
            tr.push(if flip { -x.clone() } else { x.clone() });
        }
        for j in 0..m {
            tr.push(if i == j { Q::one() } else { Q::zero() });
        }
        tr.push(if flip { -rhs.clone() } else { rhs.clone() });
        t.push(tr);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost = vec![Q::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    loop {
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else { break };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((p, _)) = leave else {
            // unbounded direction cannot occur for a bounded-below objective
            break;
        };
        pivot(&mut t, &mut cost, p, enter);
        basis[p] = enter;
    }
    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Q>], cost: &mut [Q], p: usize, c: usize) {
    let inv = Q::one() / &t[p][c];
    for x in t[p].iter_mut() {
        if !x.is_zero() {
            *x *= &inv;
        }
    }
    let prow = t[p].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == p || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, y) in row.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (x, y) in cost.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{q, qi};
    use super::*;

    fn check(a: &[Vec<Q>], b: &[Q], x: &[Q]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, rhs) in a.iter().zip(b) {
            let lhs: Q = row.iter().zip(x).map(|(p, v)| p * v).sum();
            assert_eq!(&lhs, rhs);
        }
    }

    #[test]
    fn simple_feasible() {
        // x + y = 1, x - y = 1/2
        let a = vec![vec![qi(1), qi(1)], vec![qi(1), qi(-1)]];
        let b = vec![qi(1), q(1, 2)];
        let x = feasible_point(&a, &b).unwrap();
        assert_eq!(x, vec![q(3, 4), q(1, 4)]);
        check(&a, &b, &x);
    }

    #[test]
    fn simple_infeasible() {
        // x + y = 1, x + y = 2
        let a = vec![vec![qi(1), qi(1)], vec![qi(1), qi(1)]];
        assert!(feasible_point(&a, &[qi(1), qi(2)]).is_none());
        // x = -1 with x >= 0
        assert!(feasible_point(&[vec![qi(1)]], &[qi(-1)]).is_none());
    }

    #[test]
    fn redundant_rows() {
        let a = vec![vec![qi(1), qi(2), qi(0)], vec![qi(2), qi(4), qi(0)], vec![qi(0), qi(0), qi(1)]];
        let b = vec![qi(2), qi(4), qi(3)];
        let x = feasible_point(&a, &b).unwrap();
        check(&a, &b, &x);
    }
}
