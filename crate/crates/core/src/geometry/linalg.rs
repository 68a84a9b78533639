//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::rational::Q;

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns. Only the first `cols` columns are used for pivots, so an augmented
/// column past `cols` is carried along without being pivoted on.
pub fn rref(rows: &mut [Vec<Q>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Basis of `{ x : A x = 0 }` for `A` with `cols` columns.
pub fn nullspace(rows: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// Affine subspace given by equations `N x = b`.
#[derive(Clone, Debug)]
pub struct AffineEquations {
    pub normals: Vec<Vec<Q>>,
    pub rhs: Vec<Q>,
}

/// Rank of the stacked normals if the stacked system is consistent, `None`
/// when the intersection is empty.
pub fn intersection_codim(d: usize, parts: &[&AffineEquations]) -> Option<usize> {
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for eq in parts {
        for (n, b) in eq.normals.iter().zip(&eq.rhs) {
            let mut row = n.clone();
            row.push(b.clone());
            rows.push(row);
        }
    }
    let pivots = rref(&mut rows, d);
    let inconsistent = rows[pivots.len()..].iter().any(|row| !row[d].is_zero());
    (!inconsistent).then_some(pivots.len())
}

#[cfg(test)]
mod tests {
    use super::super::rational::qi;
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]]), 2), 1);
        assert_eq!(rank(&m(&[&[1, 2, 3], &[0, 1, 1], &[1, 3, 4]]), 3), 2);
        assert_eq!(rank(&m(&[]), 3), 0);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let a = m(&[&[1, 2, 3], &[0, 1, 1]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot: Q = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn consistency_detection() {
        // x = 1 and x = 2 in R^1
        let a = AffineEquations { normals: m(&[&[1]]), rhs: vec![qi(1)] };
        let b = AffineEquations { normals: m(&[&[1]]), rhs: vec![qi(2)] };
        assert_eq!(intersection_codim(1, &[&a, &b]), None);
        assert_eq!(intersection_codim(1, &[&a, &a]), Some(1));
    }
}
