//! Exact convex-hull intersection and exhaustive Tverberg partition search.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::PointConfiguration;
use super::lp::feasible_point;
use super::position::GeneralPositionCertificate;
use super::rational::{format_rational, parse_rational, Q, RationalPoint};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// Default cap on candidate tuples.
pub const DEFAULT_TUPLE_CAP: u128 = 1 << 22;

/// A common point of several convex hulls with barycentric weights per part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionWitness {
    pub point: RationalPoint,
    pub weights: Vec<Vec<Q>>,
}

/// Decides `conv P_1 ∩ ... ∩ conv P_r ≠ ∅` with one linear system in the
/// barycentric weights: each part's weights sum to one and every part's
/// combination equals the first part's.
pub fn conv_intersect(parts: &[Vec<RationalPoint>]) -> Result<Option<IntersectionWitness>> {
    let Some(first) = parts.first() else {
        return Err(Error::InvalidParameters("no parts given".into()));
    };
    if let Some(i) = parts.iter().position(|p| p.is_empty()) {
        return Err(Error::EmptyPart(i));
    }
    let d = first[0].dim();
    for p in parts.iter().flatten() {
        if p.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
        }
    }
    if axis_separated(parts) {
        return Ok(None);
    }
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.len();
            Some(o)
        })
        .collect();
    let vars = parts.iter().map(|p| p.len()).sum::<usize>();
    let mut a: Vec<Vec<Q>> = Vec::new();
    let mut b: Vec<Q> = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let mut row = vec![Q::zero(); vars];
        for j in 0..part.len() {
            row[offsets[i] + j] = Q::one();
        }
        a.push(row);
        b.push(Q::one());
    }
    for (i, part) in parts.iter().enumerate().skip(1) {
        for c in 0..d {
            let mut row = vec![Q::zero(); vars];
            for (j, p) in first.iter().enumerate() {
                row[j] = p.coords()[c].clone();
            }
            for (j, p) in part.iter().enumerate() {
                row[offsets[i] + j] = -p.coords()[c].clone();
            }
            a.push(row);
            b.push(Q::zero());
        }
    }
    let Some(x) = feasible_point(&a, &b) else { return Ok(None) };
    let weights: Vec<Vec<Q>> =
        parts.iter().enumerate().map(|(i, p)| x[offsets[i]..offsets[i] + p.len()].to_vec()).collect();
    let point = RationalPoint::combination(d, weights[0].iter().zip(first.iter()));
    Ok(Some(IntersectionWitness { point, weights }))
}

/// `r` pairwise disjoint label sets whose hulls share `witness`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TverbergCertificate {
    pub parts: Vec<Simplex>,
    pub witness: RationalPoint,
    /// Per part: label → barycentric weight.
    pub weights: Vec<BTreeMap<usize, Q>>,
}

impl TverbergCertificate {
    /// Recomputes every part's weighted combination and compares it with the
    /// witness coordinate for coordinate.
    pub fn verify(&self, config: &PointConfiguration) -> bool {
        let d = config.d();
        if self.weights.len() != self.parts.len() || self.witness.dim() != d {
            return false;
        }
        for (i, a) in self.parts.iter().enumerate() {
            if a.is_empty() || self.parts[i + 1..].iter().any(|b| !a.is_disjoint(*b)) {
                return false;
            }
        }
        for (part, w) in self.parts.iter().zip(&self.weights) {
            if w.keys().copied().ne(part.labels()) {
                return false;
            }
            if w.values().any(|x| x.is_negative()) || w.values().sum::<Q>() != Q::one() {
                return false;
            }
            let Ok(points) = config.points_of(*part) else { return false };
            let combo = RationalPoint::combination(d, w.values().zip(points));
            if combo != self.witness {
                return false;
            }
        }
        true
    }

    pub fn to_file(&self) -> CertificateFile {
        CertificateFile {
            parts: self.parts.iter().map(|p| p.to_vec()).collect(),
            witness: self.witness.clone(),
            weights: self
                .weights
                .iter()
                .map(|w| w.iter().map(|(l, x)| (l.to_string(), format_rational(x))).collect())
                .collect(),
        }
    }

    pub fn from_file(file: &CertificateFile) -> Result<Self> {
        let parts = file
            .parts
            .iter()
            .map(|p| Simplex::from_labels(p.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        let mut weights = Vec::new();
        for w in &file.weights {
            let mut m = BTreeMap::new();
            for (l, x) in w {
                let l: usize =
                    l.parse().map_err(|_| Error::InvalidParameters(format!("weight label '{l}'")))?;
                m.insert(l, parse_rational(x)?);
            }
            weights.push(m);
        }
        Ok(Self { parts, witness: file.witness.clone(), weights })
    }
}

/// Serialized certificate with exact weights as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub parts: Vec<Vec<usize>>,
    pub witness: RationalPoint,
    pub weights: Vec<BTreeMap<String, String>>,
}

/// Record of an exhausted search: no `r` pairwise disjoint candidate faces
/// have intersecting hulls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifiedAbsence {
    pub r: usize,
    pub d: usize,
    pub restricted: bool,
    /// Candidate faces: at most `d + 1` vertices each (Carathéodory).
    pub candidate_faces: usize,
    pub tuples_total: u128,
    pub tuples_solved: u128,
    /// Tuples skipped because some of their parts have codimensions summing
    /// to `d + 1`, which certified strong general position makes empty.
    pub tuples_pruned: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TverbergOutcome {
    Found(TverbergCertificate),
    Absent(VerifiedAbsence),
}

impl TverbergOutcome {
    pub fn certificate(&self) -> Option<&TverbergCertificate> {
        match self {
            TverbergOutcome::Found(c) => Some(c),
            TverbergOutcome::Absent(_) => None,
        }
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, TverbergOutcome::Absent(_))
    }
}

/// Options for [`tverberg_search`].
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions<'a> {
    pub cap: u128,
    pub general_position: Option<&'a GeneralPositionCertificate>,
}

impl Default for SearchOptions<'_> {
    fn default() -> Self {
        Self { cap: DEFAULT_TUPLE_CAP, general_position: None }
    }
}

/// Searches `r`-tuples of pairwise disjoint faces (of `restrict_to`, or of
/// the full simplex on the labels) for intersecting images, by increasing
/// total number of vertices and then lexicographically. The first hit in
/// that order is returned regardless of thread count.
pub fn tverberg_search(
    config: &PointConfiguration,
    r: usize,
    restrict_to: Option<&SimplicialComplex>,
    options: SearchOptions<'_>,
) -> Result<TverbergOutcome> {
    if r < 2 {
        return Err(Error::InvalidParameters("Tverberg search needs r >= 2".into()));
    }
    let d = config.d();
    let labels = config.label_set();
    let candidates: Vec<Simplex> = match restrict_to {
        Some(k) => {
            if k.ambient().full() != labels {
                return Err(Error::InvalidParameters(format!(
                    "complex on {} vertices does not match the point labels {labels}",
                    k.n()
                )));
            }
            k.faces_up_to(d + 1).into_iter().filter(|f| !f.is_empty()).collect()
        }
        None => labels.subsets().filter(|s| !s.is_empty() && s.len() <= d + 1).collect(),
    };
    let mut candidates = candidates;
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));

    let prune = match options.general_position {
        Some(cert) if cert.r >= r && cert.d == d && cert.labels == labels => true,
        Some(_) => {
            return Err(Error::InvalidParameters("general position certificate does not match this search".into()))
        }
        None => false,
    };

    let total = count_tuples(&candidates, r, options.cap)?;
    let mut solved = 0u128;
    let mut pruned = 0u128;
    let max_total = r * (d + 1);
    for level in r..=max_total {
        let tuples = tuples_at_level(&candidates, r, level);
        let (keep, skip): (Vec<_>, Vec<_>) =
            tuples.into_iter().partition(|t| !(prune && codims_hit_boundary(&candidates, t, d)));
        pruned += skip.len() as u128;
        solved += keep.len() as u128;
        let hit = keep.par_iter().map(|t| solve_tuple(config, &candidates, t)).find_map_first(|res| match res {
            Ok(Some(c)) => Some(Ok(c)),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        });
        if let Some(found) = hit {
            return found.map(TverbergOutcome::Found);
        }
    }
    Ok(TverbergOutcome::Absent(VerifiedAbsence {
        r,
        d,
        restricted: restrict_to.is_some(),
        candidate_faces: candidates.len(),
        tuples_total: total,
        tuples_solved: solved,
        tuples_pruned: pruned,
    }))
}

fn solve_tuple(config: &PointConfiguration, candidates: &[Simplex], t: &[u32]) -> Result<Option<TverbergCertificate>> {
    let parts: Vec<Simplex> = t.iter().map(|&i| candidates[i as usize]).collect();
    let point_sets = parts
        .iter()
        .map(|p| config.points_of(*p).map(|v| v.into_iter().cloned().collect()))
        .collect::<Result<Vec<Vec<RationalPoint>>>>()?;
    let Some(w) = conv_intersect(&point_sets)? else { return Ok(None) };
    let weights = parts.iter().zip(w.weights).map(|(p, ws)| p.labels().zip(ws).collect()).collect();
    Ok(Some(TverbergCertificate { parts, witness: w.point, weights }))
}

/// Two parts whose coordinate ranges are disjoint on some axis: projections
/// of hulls are intervals, so those hulls cannot meet.
fn axis_separated(parts: &[Vec<RationalPoint>]) -> bool {
    let d = parts[0][0].dim();
    (0..d).any(|c| {
        let ranges: Vec<(&Q, &Q)> = parts
            .iter()
            .map(|p| {
                let xs = p.iter().map(|x| &x.coords()[c]);
                (xs.clone().min().expect("nonempty"), xs.max().expect("nonempty"))
            })
            .collect();
        ranges.iter().enumerate().any(|(i, a)| ranges[i + 1..].iter().any(|b| a.1 < b.0 || b.1 < a.0))
    })
}

/// Some sub-collection of the parts has nominal codimensions summing to
/// exactly `d + 1`.
fn codims_hit_boundary(candidates: &[Simplex], t: &[u32], d: usize) -> bool {
    let codims: Vec<usize> = t.iter().map(|&i| d + 1 - candidates[i as usize].len()).collect();
    let mut reachable = vec![false; d + 2];
    reachable[0] = true;
    for c in codims {
        for s in (c..=d + 1).rev() {
            if reachable[s - c] {
                reachable[s] = true;
            }
        }
        if c == 0 {
            continue;
        }
        if reachable[d + 1] {
            return true;
        }
    }
    reachable[d + 1]
}

fn count_tuples(candidates: &[Simplex], r: usize, cap: u128) -> Result<u128> {
    fn go(c: &[Simplex], r: usize, from: usize, used: u64, depth: usize, count: &mut u128, cap: u128) -> bool {
        if depth == r {
            *count += 1;
            return *count <= cap;
        }
        for j in from..c.len() {
            if c[j].mask() & used == 0 && !go(c, r, j + 1, used | c[j].mask(), depth + 1, count, cap) {
                return false;
            }
        }
        true
    }
    let mut count = 0;
    if !go(candidates, r, 0, 0, 0, &mut count, cap) {
        return Err(Error::SearchCap { count, cap });
    }
    Ok(count)
}

/// Index tuples `i_1 < ... < i_r` of pairwise disjoint candidates whose sizes
/// sum to `level`, in lexicographic order.
fn tuples_at_level(candidates: &[Simplex], r: usize, level: usize) -> Vec<Vec<u32>> {
    fn go(
        c: &[Simplex],
        r: usize,
        from: usize,
        used: u64,
        left: usize,
        stack: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let parts_left = r - stack.len();
        if parts_left == 0 {
            if left == 0 {
                out.push(stack.clone());
            }
            return;
        }
        for j in from..c.len() {
            let len = c[j].len();
            // candidates are sorted by size, so later ones are no smaller
            if len * parts_left > left {
                break;
            }
            if c[j].mask() & used != 0 {
                continue;
            }
            stack.push(j as u32);
            go(c, r, j + 1, used | c[j].mask(), left - len, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    go(candidates, r, 0, 0, level, &mut Vec::with_capacity(r), &mut out);
    out
}
