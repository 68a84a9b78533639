//! Abstract simplicial complexes stored by their facets.
//!
//! Faces are never materialized unless asked for: a set is a face exactly when
//! some facet contains it. Complexes in this crate have few facets but
//! exponentially many faces.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::{k_subsets, low_bits, Simplex, VertexSet};

/// Ground-set size above which exhaustive subset enumeration is refused.
pub const ENUMERATION_LIMIT: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    ambient: VertexSet,
    facets: Vec<Simplex>,
}

impl SimplicialComplex {
    /// Builds a complex on `{1..n}` from any generating family; the family is
    /// reduced to its inclusion-maximal members.
    pub fn new<I: IntoIterator<Item = Simplex>>(n: usize, generators: I) -> Result<Self> {
        let ambient = VertexSet::new(n)?;
        let mut gens: Vec<Simplex> = generators.into_iter().collect();
        for g in &gens {
            if !ambient.contains(*g) {
                let label = g.max_label().unwrap_or(0);
                return Err(Error::LabelOutOfRange { label, max: n });
            }
        }
        gens.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        gens.dedup();
        let mut facets: Vec<Simplex> = Vec::with_capacity(gens.len());
        for g in gens {
            if !facets.iter().any(|f| g.is_subset_of(*f)) {
                facets.push(g);
            }
        }
        facets.sort();
        Ok(Self { ambient, facets })
    }

    /// The complex with no faces at all, not even the empty one.
    pub fn void(n: usize) -> Result<Self> {
        Ok(Self { ambient: VertexSet::new(n)?, facets: Vec::new() })
    }

    /// The full simplex `Δ_N` on `N + 1` vertices.
    pub fn simplex(dim: usize) -> Result<Self> {
        let ambient = VertexSet::new(dim + 1)?;
        Ok(Self { ambient, facets: vec![ambient.full()] })
    }

    /// The boundary of `Δ_N`: all proper subsets of `{1..N+1}`.
    pub fn simplex_boundary(dim: usize) -> Result<Self> {
        let n = dim + 1;
        Self::new(n, k_subsets(n, n.saturating_sub(1)))
    }

    /// Cyclic complex on `{1..n}` whose facets are the runs `{i, ..., i+t-1}`
    /// of `t` consecutive labels modulo `n`.
    pub fn cyclic_runs(n: usize, t: usize) -> Result<Self> {
        if t == 0 || t > n {
            return Err(Error::InvalidParameters(format!("run length {t} must lie in 1..={n}")));
        }
        let facets = (0..n).map(|start| {
            Simplex::from_labels((0..t).map(|j| (start + j) % n + 1)).expect("labels in range")
        });
        Self::new(n, facets.collect::<Vec<_>>())
    }

    pub fn ambient(&self) -> VertexSet {
        self.ambient
    }

    /// Number of labels in the ground set (`N + 1`).
    pub fn n(&self) -> usize {
        self.ambient.len()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_face(&self, sigma: Simplex) -> bool {
        self.facets.iter().any(|f| sigma.is_subset_of(*f))
    }

    /// `dim K`, or `-1` for `{∅}` and the void complex.
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    /// `K ⊆ L` on the same ground set.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|f| other.is_face(*f))
    }

    /// Every face, including the empty face, in canonical order.
    pub fn faces(&self) -> Vec<Simplex> {
        let mut set = BTreeSet::new();
        for f in &self.facets {
            set.extend(f.subsets());
        }
        set.into_iter().collect()
    }

    /// Faces with at most `max_len` vertices, in canonical order.
    pub fn faces_up_to(&self, max_len: usize) -> Vec<Simplex> {
        let mut set = BTreeSet::new();
        for f in &self.facets {
            set.extend(f.subsets().filter(|s| s.len() <= max_len));
        }
        set.into_iter().collect()
    }

    /// Number of faces including the empty face.
    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    /// The `k`-skeleton: all faces of dimension at most `k`.
    pub fn skeleton(&self, k: i64) -> Result<Self> {
        if k < -1 {
            return Err(Error::InvalidParameters(format!("skeleton dimension {k} below -1")));
        }
        let size = (k + 1) as usize;
        let mut gens = Vec::new();
        for f in &self.facets {
            if f.len() <= size {
                gens.push(*f);
            } else {
                let labels = f.to_vec();
                for sub in k_subsets(labels.len(), size) {
                    let s = Simplex::from_labels(sub.labels().map(|i| labels[i - 1]))?;
                    gens.push(s);
                }
            }
        }
        Self::new(self.n(), gens)
    }

    /// Join with `other`, whose labels are shifted above this complex's labels.
    pub fn join(&self, other: &SimplicialComplex) -> Result<Self> {
        let offset = self.n();
        let n = offset + other.n();
        VertexSet::new(n)?;
        let mut gens = Vec::with_capacity(self.facets.len() * other.facets.len());
        for f in &self.facets {
            for g in &other.facets {
                gens.push(f.union(g.shifted(offset)?));
            }
        }
        if gens.is_empty() {
            return Self::void(n);
        }
        Self::new(n, gens)
    }

    /// Cone with a new apex labelled `n + 1`.
    pub fn cone(&self) -> Result<Self> {
        let apex = self.n() + 1;
        VertexSet::new(apex)?;
        if self.facets.is_empty() {
            return Self::void(apex);
        }
        Self::new(apex, self.facets.iter().map(|f| f.with(apex)).collect::<Vec<_>>())
    }

    /// Inclusion-minimal subsets of the ground set that are not faces.
    ///
    /// Candidates are scanned by increasing cardinality; a candidate containing
    /// an already found minimal nonface is skipped, so the output is an
    /// antichain. No minimal nonface has more than `dim K + 2` elements.
    pub fn minimal_nonfaces(&self) -> Vec<Simplex> {
        if self.facets.is_empty() {
            return vec![Simplex::EMPTY];
        }
        let n = self.n();
        let max_size = ((self.dim() + 2) as usize).min(n);
        let mut found: Vec<Simplex> = Vec::new();
        for size in 1..=max_size {
            let start = found.len();
            for cand in k_subsets(n, size) {
                if found[..start].iter().any(|m| m.is_subset_of(cand)) {
                    continue;
                }
                if !self.is_face(cand) {
                    found.push(cand);
                }
            }
        }
        found.sort();
        found
    }

    /// The complex whose faces are the subsets of `{1..n}` containing no
    /// member of `forbidden`. Its minimal nonfaces are exactly `forbidden`.
    pub fn from_forbidden(forbidden: &[Simplex], n: usize) -> Result<Self> {
        let ambient = VertexSet::new(n)?;
        if n > ENUMERATION_LIMIT {
            return Err(Error::GroundSetTooLarge { n, limit: ENUMERATION_LIMIT });
        }
        check_antichain(forbidden)?;
        for g in forbidden {
            if !ambient.contains(*g) {
                let label = g.max_label().unwrap_or(0);
                return Err(Error::LabelOutOfRange { label, max: n });
            }
        }
        if forbidden.iter().any(|g| g.is_empty()) {
            return Self::void(n);
        }
        // Forbidden sets indexed by their largest label: adding labels in
        // increasing order, only those ending at the new label need a check.
        let mut by_max: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
        for g in forbidden {
            by_max[g.max_label().expect("nonempty")].push(g.mask());
        }
        let mut facets = Vec::new();
        maximal_independent(1, n, 0, &by_max, forbidden, &mut facets);
        Self::new(n, facets)
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile { n: self.n(), facets: self.facets.iter().map(|f| f.to_vec()).collect() }
    }

    pub fn from_file(file: &ComplexFile) -> Result<Self> {
        let facets = file
            .facets
            .iter()
            .map(|f| Simplex::from_labels(f.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.n, facets)
    }
}

fn maximal_independent(
    label: usize,
    n: usize,
    mask: u64,
    by_max: &[Vec<u64>],
    forbidden: &[Simplex],
    out: &mut Vec<Simplex>,
) {
    if label > n {
        let excluded = low_bits(n) & !mask;
        let maximal = Simplex::from_mask(excluded).labels().all(|u| {
            let with_u = mask | (1u64 << (u - 1));
            forbidden.iter().any(|g| g.contains(u) && g.mask() & !with_u == 0)
        });
        if maximal {
            out.push(Simplex::from_mask(mask));
        }
        return;
    }
    let with = mask | (1u64 << (label - 1));
    if !by_max[label].iter().any(|g| g & !with == 0) {
        maximal_independent(label + 1, n, with, by_max, forbidden, out);
    }
    maximal_independent(label + 1, n, mask, by_max, forbidden, out);
}

/// Rejects a family containing two comparable distinct members.
pub fn check_antichain(system: &[Simplex]) -> Result<()> {
    for (i, a) in system.iter().enumerate() {
        for b in &system[i + 1..] {
            if a.is_subset_of(*b) {
                return Err(Error::NotAntichain { smaller: *a, larger: *b });
            }
            if b.is_subset_of(*a) {
                return Err(Error::NotAntichain { smaller: *b, larger: *a });
            }
        }
    }
    Ok(())
}

/// On-disk form: `{ "n": int, "facets": [[int,...],...] }`, facets sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(labels: &[usize]) -> Simplex {
        Simplex::from_labels(labels.iter().copied()).unwrap()
    }

    fn brute_faces(k: &SimplicialComplex) -> Vec<Simplex> {
        (0..1u64 << k.n()).map(Simplex::from_mask).filter(|m| k.is_face(*m)).collect()
    }

    fn brute_minimal_nonfaces(k: &SimplicialComplex) -> BTreeSet<Simplex> {
        (0..1u64 << k.n())
            .map(Simplex::from_mask)
            .filter(|m| !k.is_face(*m) && m.labels().all(|v| k.is_face(m.without(v))))
            .collect()
    }

    #[test]
    fn simplex_faces() {
        let point = SimplicialComplex::simplex(0).unwrap();
        assert_eq!(point.facets(), &[s(&[1])]);
        assert_eq!(SimplicialComplex::simplex(2).unwrap().face_count() - 1, 7);
        assert_eq!(SimplicialComplex::simplex(5).unwrap().face_count() - 1, 63);
    }

    #[test]
    fn skeleta() {
        let d4 = SimplicialComplex::simplex(4).unwrap();
        let pts = d4.skeleton(0).unwrap();
        assert_eq!(pts.facets().len(), 5);
        assert!(pts.facets().iter().all(|f| f.len() == 1));
        let k6 = SimplicialComplex::simplex(5).unwrap().skeleton(1).unwrap();
        assert_eq!(k6.facets().len(), 15);
        // Δ_5^(1): minimal nonfaces are all 3-subsets.
        assert_eq!(k6.minimal_nonfaces(), k_subsets(6, 3));
    }

    #[test]
    fn skeleton_matches_brute_force() {
        let k = SimplicialComplex::new(7, [s(&[1, 2, 3, 4]), s(&[3, 4, 5, 6, 7]), s(&[1, 7])]).unwrap();
        for dim in -1..=4i64 {
            let sk = k.skeleton(dim).unwrap();
            let expect: Vec<_> = brute_faces(&k).into_iter().filter(|f| f.dim() <= dim).collect();
            assert_eq!(brute_faces(&sk), expect, "dim {dim}");
        }
    }

    #[test]
    fn join_examples() {
        let p = SimplicialComplex::simplex(0).unwrap();
        let edge = p.join(&p).unwrap();
        assert_eq!(edge.facets(), &[s(&[1, 2])]);
        let unit = SimplicialComplex::new(0, [Simplex::EMPTY]).unwrap();
        assert_eq!(edge.join(&unit).unwrap(), edge);
    }

    #[test]
    fn join_of_discrete_sets_has_within_class_missing_edges() {
        let c0 = SimplicialComplex::simplex(2).unwrap().skeleton(0).unwrap();
        let c1 = SimplicialComplex::simplex(1).unwrap().skeleton(0).unwrap();
        let j = c0.join(&c1).unwrap();
        let expect = vec![s(&[1, 2]), s(&[1, 3]), s(&[2, 3]), s(&[4, 5])];
        assert_eq!(j.minimal_nonfaces(), expect);
    }

    #[test]
    fn join_face_count_identity() {
        let a = SimplicialComplex::cyclic_runs(5, 2).unwrap();
        let b = SimplicialComplex::new(3, [s(&[1, 2]), s(&[3])]).unwrap();
        let j = a.join(&b).unwrap();
        assert_eq!(a.face_count() * b.face_count(), j.face_count());
    }

    #[test]
    fn cone_examples() {
        let bd = SimplicialComplex::simplex_boundary(2).unwrap();
        let c = bd.cone().unwrap();
        assert_eq!(c.facets(), &[s(&[1, 2, 4]), s(&[1, 3, 4]), s(&[2, 3, 4])]);
        assert_eq!(c.minimal_nonfaces(), vec![s(&[1, 2, 3])]);
        let five = SimplicialComplex::cyclic_runs(5, 2).unwrap();
        let fan = five.cone().unwrap();
        assert_eq!(fan.facets().len(), 5);
        assert_eq!(fan.minimal_nonfaces(), five.minimal_nonfaces());
        assert_eq!(five.minimal_nonfaces().len(), 5);
        let v = SimplicialComplex::simplex(0).unwrap();
        assert_eq!(v.cone().unwrap().facets(), &[s(&[1, 2])]);
    }

    #[test]
    fn minimal_nonface_examples() {
        let bd = SimplicialComplex::simplex_boundary(2).unwrap();
        assert_eq!(bd.minimal_nonfaces(), vec![s(&[1, 2, 3])]);
        let pts = SimplicialComplex::simplex(4).unwrap().skeleton(0).unwrap();
        assert_eq!(pts.minimal_nonfaces().len(), 10);
        let hexagon = SimplicialComplex::cyclic_runs(6, 2).unwrap();
        let chords = hexagon.minimal_nonfaces();
        assert_eq!(chords.len(), 9);
        assert_eq!(chords.iter().copied().collect::<BTreeSet<_>>(), brute_minimal_nonfaces(&hexagon));
    }

    #[test]
    fn forbidden_examples() {
        let all3 = k_subsets(5, 3);
        let k = SimplicialComplex::from_forbidden(&all3, 5).unwrap();
        assert_eq!(k, SimplicialComplex::simplex(4).unwrap().skeleton(1).unwrap());
        let bd = SimplicialComplex::from_forbidden(&[s(&[1, 2, 3])], 3).unwrap();
        assert_eq!(bd, SimplicialComplex::simplex_boundary(2).unwrap());
        let hexagon = SimplicialComplex::cyclic_runs(6, 2).unwrap();
        let chords = hexagon.minimal_nonfaces();
        assert_eq!(SimplicialComplex::from_forbidden(&chords, 6).unwrap(), hexagon);
    }

    #[test]
    fn forbidden_rejects_chains() {
        let err = SimplicialComplex::from_forbidden(&[s(&[1]), s(&[1, 2])], 3).unwrap_err();
        assert!(matches!(err, Error::NotAntichain { .. }));
    }

    #[test]
    fn forbidden_singleton_removes_vertex() {
        let k = SimplicialComplex::from_forbidden(&[s(&[2])], 3).unwrap();
        assert_eq!(k.facets(), &[s(&[1, 3])]);
        assert_eq!(k.minimal_nonfaces(), vec![s(&[2])]);
    }

    #[test]
    fn file_round_trip() {
        let k = SimplicialComplex::cyclic_runs(7, 3).unwrap();
        let json = serde_json::to_string(&k.to_file()).unwrap();
        let back: ComplexFile = serde_json::from_str(&json).unwrap();
        assert_eq!(SimplicialComplex::from_file(&back).unwrap(), k);
    }
}
