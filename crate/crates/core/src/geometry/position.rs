//! Strong general position: for pairwise disjoint subsets `X_1..X_j`
//! (`j <= r`, each of at most `d + 1` points) whose codimensions sum to at
//! most `d + 1`, the affine hulls meet in codimension exactly that sum. The
//! empty intersection has codimension `d + 1`.
//!
//! Codimensions are the nominal `d + 1 - |X_i|`, so the single-set case
//! (`j = 1`) asserts affine independence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::config::PointConfiguration;
use super::linalg::{intersection_codim, nullspace, rank, AffineEquations};
use super::rational::Q;
use crate::error::Result;
use crate::simplex::Simplex;

/// Proof token that a configuration passed the strong general position check
/// for up to `r` parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralPositionCertificate {
    pub r: usize,
    pub d: usize,
    pub labels: Simplex,
    pub collections_checked: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralPositionCheck {
    pub holds: bool,
    /// Offending collection of disjoint label sets.
    pub violation: Option<Vec<Simplex>>,
    pub collections_checked: u64,
}

struct Flat {
    set: Simplex,
    codim: usize,
    eq: AffineEquations,
    /// `[normals | rhs]` with denominators cleared, reduced mod `PRIME`.
    modular: Vec<Vec<u64>>,
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, PRIME - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

fn rank_mod(mut rows: Vec<Vec<u64>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = inv_mod(rows[rank][c]);
        for i in rank + 1..rows.len() {
            let f = mul_mod(rows[i][c], inv);
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = mul_mod(f, rows[rank][j]);
                rows[i][j] = (rows[i][j] + PRIME - sub) % PRIME;
            }
        }
        rank += 1;
    }
    rank
}

fn to_modular(normals: &[Vec<Q>], rhs: &[Q]) -> Vec<Vec<u64>> {
    let p = BigInt::from(PRIME);
    normals
        .iter()
        .zip(rhs)
        .map(|(n, b)| {
            let row: Vec<&Q> = n.iter().chain(std::iter::once(b)).collect();
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| {
                    let v = (x.numer() * (&lcm / x.denom())).mod_floor(&p);
                    v.to_u64().expect("reduced below the modulus")
                })
                .collect()
        })
        .collect()
}

/// A full-rank certificate mod a prime is a nonzero integer minor, so the
/// codimension identity holds over the rationals. Otherwise undecided.
fn identity_holds_mod_p(flats: &[Flat], stack: &[usize], d: usize) -> bool {
    let rows: Vec<Vec<u64>> = stack.iter().flat_map(|&i| flats[i].modular.iter().cloned()).collect();
    let n = rows.len();
    if n <= d {
        // consistent with independent normals: codimension = number of rows
        rank_mod(rows, d) == n
    } else {
        // d + 1 rows: the system must be inconsistent
        rank_mod(rows, d + 1) == d + 1
    }
}

fn flat_of(config: &PointConfiguration, set: Simplex) -> Result<(Flat, bool)> {
    let d = config.d();
    let pts = config.points_of(set)?;
    let base = pts[0];
    let dirs: Vec<Vec<Q>> = pts[1..]
        .iter()
        .map(|p| p.coords().iter().zip(base.coords()).map(|(a, b)| a - b).collect())
        .collect();
    let independent = rank(&dirs, d) == dirs.len();
    let normals = nullspace(&dirs, d);
    let rhs: Vec<Q> = normals
        .iter()
        .map(|n| n.iter().zip(base.coords()).map(|(a, x)| a * x).sum())
        .collect();
    let codim = d + 1 - set.len();
    let modular = to_modular(&normals, &rhs);
    Ok((Flat { set, codim, eq: AffineEquations { normals, rhs }, modular }, independent))
}

pub fn check_strong_general_position(config: &PointConfiguration, r: usize) -> Result<GeneralPositionCheck> {
    let d = config.d();
    let labels = config.label_set();
    let mut flats = Vec::new();
    for set in labels.subsets().filter(|s| !s.is_empty() && s.len() <= d + 1) {
        let (flat, independent) = flat_of(config, set)?;
        if !independent {
            return Ok(GeneralPositionCheck { holds: false, violation: Some(vec![set]), collections_checked: 1 });
        }
        flats.push(flat);
    }
    flats.sort_by(|a, b| a.set.len().cmp(&b.set.len()).then(a.set.cmp(&b.set)));
    let checked: Vec<(u64, Option<Vec<Simplex>>)> = (0..flats.len())
        .into_par_iter()
        .map(|first| {
            let mut count = 0;
            let mut stack = vec![first];
            let v = extend(&flats, d, r, flats[first].codim, flats[first].set.mask(), &mut stack, &mut count);
            (count, v)
        })
        .collect();
    let total = flats.len() as u64 + checked.iter().map(|(c, _)| c).sum::<u64>();
    let violation = checked.into_iter().find_map(|(_, v)| v);
    Ok(GeneralPositionCheck { holds: violation.is_none(), violation, collections_checked: total })
}

fn extend(
    flats: &[Flat],
    d: usize,
    r: usize,
    codim: usize,
    used: u64,
    stack: &mut Vec<usize>,
    count: &mut u64,
) -> Option<Vec<Simplex>> {
    if stack.len() == r {
        return None;
    }
    let last = *stack.last().expect("nonempty");
    for j in last + 1..flats.len() {
        let f = &flats[j];
        if f.set.mask() & used != 0 || codim + f.codim > d + 1 {
            continue;
        }
        stack.push(j);
        *count += 1;
        let holds = identity_holds_mod_p(flats, stack, d) || {
            let eqs: Vec<&AffineEquations> = stack.iter().map(|&i| &flats[i].eq).collect();
            intersection_codim(d, &eqs).unwrap_or(d + 1) == codim + f.codim
        };
        if !holds {
            let v = stack.iter().map(|&i| flats[i].set).collect();
            stack.pop();
            return Some(v);
        }
        if let Some(v) = extend(flats, d, r, codim + f.codim, used | f.set.mask(), stack, count) {
            stack.pop();
            return Some(v);
        }
        stack.pop();
    }
    None
}

pub fn is_strong_general_position(config: &PointConfiguration, r: usize) -> Result<bool> {
    Ok(check_strong_general_position(config, r)?.holds)
}

/// The certificate when the check passes.
pub fn certify_strong_general_position(
    config: &PointConfiguration,
    r: usize,
) -> Result<Option<GeneralPositionCertificate>> {
    let check = check_strong_general_position(config, r)?;
    Ok(check.holds.then(|| GeneralPositionCertificate {
        r,
        d: config.d(),
        labels: config.label_set(),
        collections_checked: check.collections_checked,
    }))
}

#[cfg(test)]
mod tests {
    use super::super::config::{moment_points, moment_points_integer};
    use super::super::rational::{q, RationalPoint};
    use super::*;

    #[test]
    fn moment_curve_six_points() {
        // (t-2)(t-3)(t-4)(t-5) agrees at t = 1 and t = 6, so the line through
        // the outer points is parallel to the hyperplane through the rest
        let p = moment_points_integer(6, 4).unwrap();
        let c = check_strong_general_position(&p, 2).unwrap();
        let s = |l: &[usize]| Simplex::from_labels(l.iter().copied()).unwrap();
        assert_eq!(c.violation, Some(vec![s(&[1, 6]), s(&[2, 3, 4, 5])]));

        let params = [q(1, 1), q(2, 1), q(3, 1), q(4, 1), q(5, 1), q(61, 10)];
        let p = moment_points(&params, 4).unwrap();
        assert!(is_strong_general_position(&p, 2).unwrap());
    }

    #[test]
    fn collinear_triple_fails() {
        let pts = vec![
            RationalPoint::from_ints(&[0, 0]),
            RationalPoint::from_ints(&[2, 2]),
            RationalPoint::from_ints(&[1, 1]),
            RationalPoint::from_ints(&[5, 0]),
        ];
        let p = PointConfiguration::from_points(2, pts).unwrap();
        let check = check_strong_general_position(&p, 2).unwrap();
        assert!(!check.holds);
    }

    #[test]
    fn single_point_is_vacuous() {
        let p = PointConfiguration::from_points(2, vec![RationalPoint::from_ints(&[3, 1])]).unwrap();
        assert!(is_strong_general_position(&p, 2).unwrap());
    }

    #[test]
    fn segment_through_point_detected() {
        // the third point lies on the line of the first two but outside the segment
        let pts = vec![
            RationalPoint::from_ints(&[0, 0]),
            RationalPoint::from_ints(&[1, 0]),
            RationalPoint::from_ints(&[0, 1]),
            RationalPoint::from_ints(&[3, 0]),
        ];
        let p = PointConfiguration::from_points(2, pts).unwrap();
        assert!(!is_strong_general_position(&p, 2).unwrap());
    }

    #[test]
    fn parallel_lines_violate_r3() {
        // two disjoint segments on parallel lines: codim 1 + 1 = 2 <= 3 but the
        // lines never meet (codim 3); r = 2 already sees it
        let pts = vec![
            RationalPoint::from_ints(&[0, 0]),
            RationalPoint::from_ints(&[1, 0]),
            RationalPoint::from_ints(&[0, 1]),
            RationalPoint::from_ints(&[1, 1]),
        ];
        let p = PointConfiguration::from_points(2, pts).unwrap();
        assert!(!is_strong_general_position(&p, 2).unwrap());
    }
}
