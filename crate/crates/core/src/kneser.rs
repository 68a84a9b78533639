//! Kneser-type hypergraphs: generalized Kneser hypergraphs of a pair of
//! complexes, Kneser hypergraphs of k-subsets, intersection hypergraphs of set
//! systems and their stability-restricted subhypergraphs.
//!
//! Every vertex carries the set it represents and is identified by it, so two
//! hypergraphs are isomorphic here exactly when their vertex sets agree and
//! the edges agree after mapping ids through the underlying sets.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::{k_subsets, Simplex};

/// An r-uniform hypergraph whose vertices are finite sets; a hyperedge is a
/// set of `r` vertex ids, stored sorted, and the edge list is sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    r: usize,
    vertices: Vec<Simplex>,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(r: usize, vertices: Vec<Simplex>, mut edges: Vec<Vec<usize>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParameters(format!("uniformity r = {r} must be at least 2")));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidParameters("vertex sets must be distinct".into()));
        }
        for e in edges.iter_mut() {
            e.sort_unstable();
            e.dedup();
            if e.len() != r || e.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::InvalidParameters(format!("edge {e:?} is not an {r}-set of vertex ids")));
            }
        }
        edges.sort();
        edges.dedup();
        Ok(Self { r, vertices, edges })
    }

    /// The hypergraph on `vertices` whose edges are all `r`-sets of pairwise
    /// disjoint members.
    pub fn disjointness(r: usize, vertices: Vec<Simplex>) -> Result<Self> {
        let edges = disjoint_tuples(&vertices, r);
        Self::new(r, vertices, edges)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn vertices(&self) -> &[Simplex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_id(&self, set: Simplex) -> Option<usize> {
        self.vertices.iter().position(|v| *v == set)
    }

    /// Edges as sets of underlying sets, independent of vertex numbering.
    pub fn edge_sets(&self) -> BTreeSet<Vec<Simplex>> {
        self.edges
            .iter()
            .map(|e| {
                let mut sets: Vec<Simplex> = e.iter().map(|&i| self.vertices[i]).collect();
                sets.sort();
                sets
            })
            .collect()
    }

    /// Same underlying vertex sets and the same edges between them.
    pub fn same_up_to_relabeling(&self, other: &Hypergraph) -> bool {
        let a: BTreeSet<_> = self.vertices.iter().collect();
        let b: BTreeSet<_> = other.vertices.iter().collect();
        self.r == other.r && a == b && self.edge_sets() == other.edge_sets()
    }

    /// Subhypergraph induced by the vertices satisfying `keep`.
    pub fn induced<F: Fn(Simplex) -> bool>(&self, keep: F) -> Hypergraph {
        let mut new_id = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if keep(*v) {
                new_id[i] = vertices.len();
                vertices.push(*v);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&i| new_id[i] != usize::MAX))
            .map(|e| e.iter().map(|&i| new_id[i]).collect())
            .collect();
        Hypergraph { r: self.r, vertices, edges }
    }

    /// Removes vertex `id` and every edge through it.
    pub fn without_vertex(&self, id: usize) -> Hypergraph {
        let target = self.vertices[id];
        self.induced(|v| v != target)
    }

    pub fn to_file(&self) -> HypergraphFile {
        HypergraphFile {
            r: self.r,
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, s)| HypergraphVertex { id, set: s.to_vec() })
                .collect(),
            edges: self.edges.clone(),
        }
    }

    pub fn from_file(file: &HypergraphFile) -> Result<Self> {
        let mut by_id: BTreeMap<usize, Simplex> = BTreeMap::new();
        for v in &file.vertices {
            by_id.insert(v.id, Simplex::from_labels(v.set.iter().copied())?);
        }
        if by_id.keys().copied().ne(0..by_id.len()) {
            return Err(Error::InvalidParameters("vertex ids must be 0..len".into()));
        }
        Self::new(file.r, by_id.into_values().collect(), file.edges.clone())
    }
}

/// `{ "r": int, "vertices": [{"id": int, "set": [int,...]},...], "edges": [[id,...],...] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphFile {
    pub r: usize,
    pub vertices: Vec<HypergraphVertex>,
    pub edges: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphVertex {
    pub id: usize,
    pub set: Vec<usize>,
}

/// All sorted `r`-tuples of indices into `sets` whose sets are pairwise
/// disjoint, in lexicographic order. The outer index is split across threads;
/// the concatenated result does not depend on scheduling.
pub fn disjoint_tuples(sets: &[Simplex], r: usize) -> Vec<Vec<usize>> {
    if r == 0 || sets.is_empty() {
        return Vec::new();
    }
    let ground = sets.iter().fold(0u64, |acc, s| acc | s.mask()).count_ones() as usize;
    let min_len = sets.iter().map(|s| s.len()).min().unwrap_or(0);
    if r * min_len > ground {
        return Vec::new();
    }
    (0..sets.len())
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut stack = vec![first];
            extend_tuples(sets, r, ground, min_len, sets[first].mask(), &mut stack, &mut out);
            out
        })
        .flatten_iter()
        .collect()
}

fn extend_tuples(
    sets: &[Simplex],
    r: usize,
    ground: usize,
    min_len: usize,
    used: u64,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if stack.len() == r {
        out.push(stack.clone());
        return;
    }
    if used.count_ones() as usize + (r - stack.len()) * min_len > ground {
        return;
    }
    let last = *stack.last().expect("nonempty stack");
    for j in last + 1..sets.len() {
        if sets[j].mask() & used == 0 {
            stack.push(j);
            extend_tuples(sets, r, ground, min_len, used | sets[j].mask(), stack, out);
            stack.pop();
        }
    }
}

/// `KG^r(K, L)`: vertices are the inclusion-minimal faces of `L` not in `K`,
/// hyperedges the `r`-sets of pairwise disjoint such faces.
pub fn generalized_kneser(k: &SimplicialComplex, l: &SimplicialComplex, r: usize) -> Result<Hypergraph> {
    if k.n() != l.n() {
        return Err(Error::InvalidParameters(format!(
            "K and L live on different ground sets ({} vs {})",
            k.n(),
            l.n()
        )));
    }
    if let Some(f) = k.facets().iter().find(|f| !l.is_face(**f)) {
        return Err(Error::NotSubcomplex(*f));
    }
    let vertices: Vec<Simplex> = k.minimal_nonfaces().into_iter().filter(|s| l.is_face(*s)).collect();
    Hypergraph::disjointness(r, vertices)
}

/// `KG^r(k, n)`: all `k`-subsets of `{1..n}`, hyperedges the `r`-sets of
/// pairwise disjoint subsets.
pub fn kneser_hypergraph(r: usize, k: usize, n: usize) -> Result<Hypergraph> {
    if k == 0 || n < k {
        return Err(Error::InvalidParameters(format!("need n >= k >= 1, got k = {k}, n = {n}")));
    }
    Hypergraph::disjointness(r, k_subsets(n, k))
}

/// Kriz's intersection hypergraph `[G, r]`. Members are canonically sorted and
/// duplicates collapse.
pub fn intersection_hypergraph(system: &[Simplex], r: usize) -> Result<Hypergraph> {
    let mut vertices: Vec<Simplex> = system.to_vec();
    if vertices.iter().any(|s| s.is_empty()) {
        return Err(Error::InvalidParameters("set system members must be nonempty".into()));
    }
    vertices.sort();
    vertices.dedup();
    Hypergraph::disjointness(r, vertices)
}

/// The inclusion-minimal members of a set system, in canonical order.
pub fn minimize_system(system: &[Simplex]) -> Vec<Simplex> {
    let mut sets: Vec<Simplex> = system.to_vec();
    sets.sort();
    sets.dedup();
    let minimal: Vec<Simplex> = sets
        .iter()
        .copied()
        .filter(|s| !sets.iter().any(|t| t != s && t.is_subset_of(*s)))
        .collect();
    minimal
}

/// Cyclic distance between labels `a` and `b` of `{1..n}`.
pub fn cyclic_distance(a: usize, b: usize, n: usize) -> usize {
    let diff = a.abs_diff(b);
    diff.min(n - diff)
}

/// `k`-subsets of `{1..n}` whose elements are pairwise at cyclic distance at
/// least `s`.
pub fn s_stable_subsets(k: usize, n: usize, s: usize) -> Result<Vec<Simplex>> {
    if s == 0 {
        return Err(Error::InvalidParameters("stability s must be at least 1".into()));
    }
    Ok(k_subsets(n, k)
        .into_iter()
        .filter(|set| {
            let labels = set.to_vec();
            labels
                .iter()
                .enumerate()
                .all(|(i, &a)| labels[i + 1..].iter().all(|&b| cyclic_distance(a, b, n) >= s))
        })
        .collect())
}

/// Sizes of the cyclic gaps of a subset of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapVector {
    pub gaps: Vec<usize>,
    pub set: Simplex,
    pub n: usize,
}

impl GapVector {
    pub fn max_gap(&self) -> usize {
        self.gaps.iter().copied().max().unwrap_or(0)
    }

    /// `(n - k - max gap)/(k - 1) + 1`: the average of all gaps except one
    /// largest, plus one. Requires `k >= 2`.
    pub fn average_stability(&self) -> BigRational {
        let k = self.gaps.len();
        let rest = self.n - k - self.max_gap();
        BigRational::new(rest.into(), (k - 1).into()) + BigRational::one()
    }
}

/// Gaps listed cyclically, starting after the smallest element.
pub fn gap_vector(set: Simplex, n: usize) -> Result<GapVector> {
    let labels = set.to_vec();
    if labels.is_empty() {
        return Err(Error::InvalidParameters("gap vector of the empty set".into()));
    }
    if labels[labels.len() - 1] > n {
        return Err(Error::LabelOutOfRange { label: labels[labels.len() - 1], max: n });
    }
    let k = labels.len();
    let gaps = (0..k)
        .map(|i| {
            if i + 1 < k {
                labels[i + 1] - labels[i] - 1
            } else {
                n - labels[k - 1] + labels[0] - 1
            }
        })
        .collect();
    Ok(GapVector { gaps, set, n })
}

/// `t <= (n - k - max gap)/(k - 1) + 1`, compared exactly.
pub fn is_t_stable_on_average(set: Simplex, n: usize, t: &BigRational) -> Result<bool> {
    if set.len() < 2 {
        return Err(Error::InvalidParameters("average stability needs at least two elements".into()));
    }
    Ok(*t <= gap_vector(set, n)?.average_stability())
}

/// `KG^r(k, n; t)`: the subhypergraph of `KG^r(k, n)` induced by the
/// `t`-stable-on-average vertices.
pub fn stable_avg_hypergraph(r: usize, k: usize, n: usize, t: &BigRational) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::InvalidParameters("average stability needs k >= 2".into()));
    }
    let vertices = stable_avg_subsets(k, n, t)?;
    Hypergraph::disjointness(r, vertices)
}

/// The `k`-subsets of `{1..n}` that are `t`-stable on average.
pub fn stable_avg_subsets(k: usize, n: usize, t: &BigRational) -> Result<Vec<Simplex>> {
    let mut out = Vec::new();
    for set in k_subsets(n, k) {
        if is_t_stable_on_average(set, n, t)? {
            out.push(set);
        }
    }
    Ok(out)
}

/// The r-width `ω(K, r)`: the ground-set size minus the largest total
/// cardinality of `r` pairwise disjoint faces (empty faces allowed).
pub fn width(k: &SimplicialComplex, r: usize) -> Result<usize> {
    if r < 2 {
        return Err(Error::InvalidParameters("width needs r >= 2".into()));
    }
    Ok(k.n() - max_disjoint_face_cover(k, r))
}

/// Largest `|σ_1| + ... + |σ_r|` over pairwise disjoint faces of `K`.
///
/// Labels are assigned in increasing order to one of the parts or to none;
/// parts are opened in order, so permuted solutions are visited once.
pub fn max_disjoint_face_cover(k: &SimplicialComplex, r: usize) -> usize {
    struct Search<'a> {
        k: &'a SimplicialComplex,
        r: usize,
        n: usize,
        parts: Vec<u64>,
        best: usize,
    }

    impl Search<'_> {
        fn go(&mut self, label: usize, acc: usize) {
            self.best = self.best.max(acc);
            if label > self.n || acc + (self.n - label + 1) <= self.best {
                return;
            }
            let bit = 1u64 << (label - 1);
            let open = self.parts.len();
            for i in 0..open {
                let grown = self.parts[i] | bit;
                if self.k.is_face(Simplex::from_mask(grown)) {
                    let old = std::mem::replace(&mut self.parts[i], grown);
                    self.go(label + 1, acc + 1);
                    self.parts[i] = old;
                }
            }
            if open < self.r && self.k.is_face(Simplex::from_mask(bit)) {
                self.parts.push(bit);
                self.go(label + 1, acc + 1);
                self.parts.pop();
            }
            self.go(label + 1, acc);
        }
    }

    let mut search = Search { k, r, n: k.n(), parts: Vec::with_capacity(r), best: 0 };
    search.go(1, 0);
    search.best
}

/// Arithmetic census of `KG^r(Δ_N^(m), Δ_N)` without building it: vertices
/// are the `(m+2)`-subsets of `N+1` labels, and `r` pairwise disjoint ones
/// need `r(m+2)` labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonCensus {
    pub ground: usize,
    pub nonface_size: usize,
    pub labels_needed: usize,
    #[serde(serialize_with = "decimal")]
    pub vertices: BigUint,
    #[serde(serialize_with = "decimal")]
    pub hyperedges: BigUint,
}

fn decimal<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn skeleton_kneser_census(big_n: usize, m: usize, r: usize) -> SkeletonCensus {
    let ground = big_n + 1;
    let s = m + 2;
    let needed = r * s;
    let vertices = binomial(ground, s);
    let hyperedges = if needed > ground {
        BigUint::zero()
    } else {
        // choose the covered labels, then split them into r unordered blocks of size s
        binomial(ground, needed) * factorial(needed) / (factorial(s).pow(r as u32) * factorial(r))
    };
    SkeletonCensus { ground, nonface_size: s, labels_needed: needed, vertices, hyperedges }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Small helper for reports: a census count as `u64` when it fits.
pub fn census_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}
