//! Weak colorings of r-uniform hypergraphs: a coloring is proper when no
//! hyperedge is monochromatic. Includes the exact chromatic number, the
//! least-label greedy coloring, the two lower-bound formulas and the
//! color-set extension to all faces of `L` outside `K`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::kneser::{generalized_kneser, width, Hypergraph};
use crate::simplex::Simplex;

/// Default vertex limit for [`chromatic_number`].
pub const DEFAULT_VERTEX_LIMIT: usize = 64;

/// Vertex id → color in `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    pub k: u32,
    pub assignment: Vec<u32>,
}

impl Coloring {
    pub fn new(k: u32, assignment: Vec<u32>) -> Self {
        Self { k, assignment }
    }

    pub fn constant(vertices: usize) -> Self {
        Self { k: u32::from(vertices > 0), assignment: vec![1; vertices] }
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen: Vec<u32> = self.assignment.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Renames colors by order of first appearance along the vertex ids.
    pub fn canonical(&self) -> Coloring {
        let mut rename: BTreeMap<u32, u32> = BTreeMap::new();
        let assignment = self
            .assignment
            .iter()
            .map(|c| {
                let next = rename.len() as u32 + 1;
                *rename.entry(*c).or_insert(next)
            })
            .collect();
        Coloring { k: rename.len() as u32, assignment }
    }
}

/// Outcome of a propriety check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Propriety {
    pub proper: bool,
    /// The first monochromatic hyperedge in edge order.
    pub witness: Option<Vec<usize>>,
}

/// Checks that no hyperedge is monochromatic.
pub fn is_proper(h: &Hypergraph, c: &Coloring) -> Result<Propriety> {
    validate(h, c)?;
    let witness = h
        .edges()
        .iter()
        .find(|e| e.iter().all(|&v| c.assignment[v] == c.assignment[e[0]]))
        .cloned();
    Ok(Propriety { proper: witness.is_none(), witness })
}

fn validate(h: &Hypergraph, c: &Coloring) -> Result<()> {
    if c.assignment.len() != h.vertex_count() {
        return Err(Error::PartialColoring { assigned: c.assignment.len(), vertices: h.vertex_count() });
    }
    if let Some((vertex, &color)) = c.assignment.iter().enumerate().find(|(_, &x)| x == 0 || x > c.k) {
        return Err(Error::ColorOutOfRange { vertex, color, k: c.k });
    }
    Ok(())
}

/// Coloring certificate file:
/// `{ "k": int, "assignment": {"id": color,...}, "proper": bool, "witness": [ids] | null }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringCertificate {
    pub k: u32,
    pub assignment: BTreeMap<String, u32>,
    pub proper: bool,
    pub witness: Option<Vec<usize>>,
}

impl ColoringCertificate {
    pub fn new(h: &Hypergraph, c: &Coloring) -> Result<Self> {
        let p = is_proper(h, c)?;
        Ok(Self {
            k: c.k,
            assignment: c.assignment.iter().enumerate().map(|(i, &x)| (i.to_string(), x)).collect(),
            proper: p.proper,
            witness: p.witness,
        })
    }

    pub fn coloring(&self) -> Result<Coloring> {
        let mut by_id = BTreeMap::new();
        for (id, &color) in &self.assignment {
            let id: usize = id
                .parse()
                .map_err(|_| Error::InvalidParameters(format!("vertex id '{id}' is not an integer")))?;
            by_id.insert(id, color);
        }
        if by_id.keys().copied().ne(0..by_id.len()) {
            return Err(Error::InvalidParameters("coloring ids must be 0..len".into()));
        }
        Ok(Coloring { k: self.k, assignment: by_id.into_values().collect() })
    }
}

/// Exact chromatic number with an optimal coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChromaticResult {
    pub chi: u32,
    pub coloring: Coloring,
    /// Search nodes spent refuting `chi - 1` colors; `None` when `chi <= 1`
    /// makes the refutation trivial.
    pub refutation_nodes: Option<u64>,
}

/// Exact `χ(H)`. Tries `k = 1, 2, ...`; every failing `k` is refuted by an
/// exhausted search, so the first success is optimal.
pub fn chromatic_number(h: &Hypergraph, vertex_limit: usize) -> Result<ChromaticResult> {
    let n = h.vertex_count();
    if n > vertex_limit {
        return Err(Error::VertexLimit { vertices: n, limit: vertex_limit });
    }
    if n == 0 {
        return Ok(ChromaticResult { chi: 0, coloring: Coloring::new(0, Vec::new()), refutation_nodes: None });
    }
    if h.edge_count() == 0 {
        return Ok(ChromaticResult { chi: 1, coloring: Coloring::constant(n), refutation_nodes: None });
    }
    let mut last_nodes = None;
    for k in 2..=n as u32 {
        let mut search = ColoringSearch::new(h, k);
        match search.run() {
            Some(assignment) => {
                let coloring = Coloring::new(k, assignment).canonical();
                return Ok(ChromaticResult { chi: k, coloring, refutation_nodes: last_nodes });
            }
            None => last_nodes = Some(search.nodes),
        }
    }
    unreachable!("n colors always suffice for n vertices")
}

/// Decides whether `H` admits a proper `k`-coloring.
pub fn find_coloring(h: &Hypergraph, k: u32) -> Option<Coloring> {
    if h.vertex_count() == 0 {
        return Some(Coloring::new(k, Vec::new()));
    }
    if k == 0 {
        return None;
    }
    ColoringSearch::new(h, k).run().map(|a| Coloring::new(k, a))
}

const MIXED: u32 = u32::MAX;

enum Undo {
    Edge { edge: usize, uniform: u32 },
    Forbid { vertex: usize, color: u32 },
}

/// Backtracking with saturation-first vertex choice and forward checking.
/// A hyperedge with all but one vertex colored alike forbids that color on
/// its last vertex. New colors are only opened in increasing order.
struct ColoringSearch<'a> {
    h: &'a Hypergraph,
    k: u32,
    incidence: Vec<Vec<usize>>,
    color: Vec<u32>,
    forbidden: Vec<u32>,
    colored_in_edge: Vec<u32>,
    uniform: Vec<u32>,
    trail: Vec<Undo>,
    nodes: u64,
}

impl<'a> ColoringSearch<'a> {
    fn new(h: &'a Hypergraph, k: u32) -> Self {
        let n = h.vertex_count();
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in h.edges().iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
        }
        Self {
            h,
            k,
            incidence,
            color: vec![0; n],
            forbidden: vec![0; n * (k as usize + 1)],
            colored_in_edge: vec![0; h.edge_count()],
            uniform: vec![0; h.edge_count()],
            trail: Vec::new(),
            nodes: 0,
        }
    }

    fn run(&mut self) -> Option<Vec<u32>> {
        let n = self.h.vertex_count();
        if self.search(0, n) {
            Some(self.color.clone())
        } else {
            None
        }
    }

    fn is_forbidden(&self, v: usize, c: u32) -> bool {
        self.forbidden[v * (self.k as usize + 1) + c as usize] > 0
    }

    fn available(&self, v: usize) -> u32 {
        (1..=self.k).filter(|&c| !self.is_forbidden(v, c)).count() as u32
    }

    /// Uncolored vertex with the fewest available colors, ties to the higher
    /// degree and then the lower id. `None` when every vertex is colored.
    fn select(&self) -> Option<(usize, u32)> {
        let mut best: Option<(usize, u32)> = None;
        for v in 0..self.color.len() {
            if self.color[v] != 0 {
                continue;
            }
            let avail = self.available(v);
            let better = match best {
                None => true,
                Some((b, ba)) => {
                    avail < ba || (avail == ba && self.incidence[v].len() > self.incidence[b].len())
                }
            };
            if better {
                best = Some((v, avail));
                if avail == 0 {
                    break;
                }
            }
        }
        best
    }

    fn search(&mut self, max_used: u32, remaining: usize) -> bool {
        self.nodes += 1;
        if remaining == 0 {
            return true;
        }
        let Some((v, avail)) = self.select() else { return true };
        if avail == 0 {
            return false;
        }
        let top = (max_used + 1).min(self.k);
        for c in 1..=top {
            if self.is_forbidden(v, c) {
                continue;
            }
            let mark = self.trail.len();
            self.assign(v, c);
            if self.search(max_used.max(c), remaining - 1) {
                return true;
            }
            self.undo(mark);
            self.color[v] = 0;
        }
        false
    }

    fn assign(&mut self, v: usize, c: u32) {
        self.color[v] = c;
        let r = self.h.r() as u32;
        let stride = self.k as usize + 1;
        for idx in 0..self.incidence[v].len() {
            let e = self.incidence[v][idx];
            let before = self.uniform[e];
            self.trail.push(Undo::Edge { edge: e, uniform: before });
            self.colored_in_edge[e] += 1;
            self.uniform[e] = if self.colored_in_edge[e] == 1 {
                c
            } else if before == c {
                c
            } else {
                MIXED
            };
            if self.colored_in_edge[e] == r - 1 && self.uniform[e] != MIXED {
                let u = self.uniform[e];
                let last = self.h.edges()[e].iter().copied().find(|&w| self.color[w] == 0);
                if let Some(w) = last {
                    self.forbidden[w * stride + u as usize] += 1;
                    self.trail.push(Undo::Forbid { vertex: w, color: u });
                }
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        let stride = self.k as usize + 1;
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail above mark") {
                Undo::Edge { edge, uniform } => {
                    self.colored_in_edge[edge] -= 1;
                    self.uniform[edge] = uniform;
                }
                Undo::Forbid { vertex, color } => self.forbidden[vertex * stride + color as usize] -= 1,
            }
        }
    }
}

/// Result of the least-label greedy coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyColoring {
    pub coloring: Coloring,
    pub proper: bool,
    pub witness: Option<Vec<usize>>,
    pub colors_used: usize,
    /// `⌊N/(r-1)⌋ - d`, the count the coloring stays within when a face
    /// occupies the top `(r-1)d + 1` labels.
    pub target: i64,
}

/// Colors a vertex with least label `m` by `⌈m/(r-1)⌉`. Propriety is checked.
pub fn greedy_least_label(h: &Hypergraph, r: usize, big_n: usize, d: usize) -> Result<GreedyColoring> {
    if r < 2 {
        return Err(Error::InvalidParameters("greedy coloring needs r >= 2".into()));
    }
    let assignment: Vec<u32> = h
        .vertices()
        .iter()
        .map(|v| v.min_label().map_or(1, |m| m.div_ceil(r - 1) as u32))
        .collect();
    let k = assignment.iter().copied().max().unwrap_or(0);
    let coloring = Coloring::new(k, assignment);
    let p = is_proper(h, &coloring)?;
    Ok(GreedyColoring {
        colors_used: coloring.colors_used(),
        coloring,
        proper: p.proper,
        witness: p.witness,
        target: bound_floor_formula(big_n, r, d),
    })
}

/// A relabeling (old label → new label, index 0 unused) that moves a face of
/// `(r-1)d + 1` vertices onto the top labels, when such a face exists.
pub fn greedy_labeling(k: &SimplicialComplex, r: usize, d: usize) -> Option<Vec<usize>> {
    let size = (r - 1) * d + 1;
    let face = k.faces_up_to(size).into_iter().find(|f| f.len() == size)?;
    let n = k.n();
    let mut perm = vec![0; n + 1];
    let mut next = 1;
    for l in 1..=n {
        if !face.contains(l) {
            perm[l] = next;
            next += 1;
        }
    }
    for l in face.labels() {
        perm[l] = next;
        next += 1;
    }
    Some(perm)
}

/// Applies a relabeling produced by [`greedy_labeling`].
pub fn relabel(k: &SimplicialComplex, perm: &[usize]) -> Result<SimplicialComplex> {
    let facets = k
        .facets()
        .iter()
        .map(|f| Simplex::from_labels(f.labels().map(|l| perm[l])))
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::new(k.n(), facets)
}

/// `⌊N/(r-1)⌋ - d`; may be nonpositive.
pub fn bound_floor_formula(big_n: usize, r: usize, d: usize) -> i64 {
    (big_n / (r - 1)) as i64 - d as i64
}

/// `ω(K, r)/(r-1)` as an exact rational.
pub fn kriz_bound(k: &SimplicialComplex, r: usize) -> Result<BigRational> {
    let w = width(k, r)?;
    Ok(BigRational::new(w.into(), (r - 1).into()))
}

/// Smallest integer at least `q`.
pub fn ceil_rational(q: &BigRational) -> i64 {
    use num_traits::ToPrimitive;
    q.ceil().to_integer().to_i64().expect("bound fits in i64")
}

/// Extends a proper coloring of `KG^r(K, L)` to every face of `L` outside `K`
/// by the least color among the minimal nonfaces it contains.
pub fn extend_coloring(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    r: usize,
    c: &Coloring,
) -> Result<BTreeMap<Simplex, u32>> {
    let h = generalized_kneser(k, l, r)?;
    require_proper(&h, c)?;
    Ok(extension(k, l, &h, c))
}

fn require_proper(h: &Hypergraph, c: &Coloring) -> Result<()> {
    let p = is_proper(h, c)?;
    match p.witness {
        Some(w) => Err(Error::ImproperColoring(w)),
        None => Ok(()),
    }
}

fn extension(k: &SimplicialComplex, l: &SimplicialComplex, h: &Hypergraph, c: &Coloring) -> BTreeMap<Simplex, u32> {
    l.faces()
        .into_iter()
        .filter(|f| !k.is_face(*f))
        .map(|f| {
            let color = h
                .vertices()
                .iter()
                .zip(&c.assignment)
                .filter(|(v, _)| v.is_subset_of(f))
                .map(|(_, &col)| col)
                .min()
                .expect("a nonface contains a minimal nonface");
            (f, color)
        })
        .collect()
}

/// Outcome of the color-set intersection check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintCheck {
    pub holds: bool,
    /// `r` pairwise disjoint faces whose color sets share a color.
    pub witness: Option<Vec<Simplex>>,
    /// Faces of `L` outside `K`.
    pub faces: usize,
    /// Partial tuples visited; branches are cut once the running
    /// intersection of color sets is empty.
    pub tuples_examined: u64,
}

/// For every `r` pairwise disjoint faces `σ_1..σ_r` of `L`, the color sets
/// `A_i = { c'(τ) : τ ⊆ σ_i, τ ∈ L \ K }` have empty common intersection.
/// Faces inside `K` carry an empty color set and are skipped.
pub fn verify_constraint_property(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    r: usize,
    c: &Coloring,
) -> Result<ConstraintCheck> {
    let h = generalized_kneser(k, l, r)?;
    require_proper(&h, c)?;
    if c.k > 128 {
        return Err(Error::InvalidParameters("color sets above 128 colors are not supported".into()));
    }
    let ext = extension(k, l, &h, c);
    // A_σ as a bitset: the extension is monotone in σ, so collecting c' over
    // the subfaces of σ that lie outside K gives the full color set.
    let faces: Vec<(Simplex, u128)> = ext
        .keys()
        .map(|&f| {
            let set = f
                .subsets()
                .filter_map(|t| ext.get(&t))
                .fold(0u128, |acc, &col| acc | 1u128 << (col - 1));
            (f, set)
        })
        .collect();
    let mut examined = 0u64;
    let mut stack = Vec::with_capacity(r);
    let witness = tuple_search(&faces, r, 0, 0, u128::MAX, &mut stack, &mut examined);
    Ok(ConstraintCheck {
        holds: witness.is_none(),
        witness,
        faces: faces.len(),
        tuples_examined: examined,
    })
}

fn tuple_search(
    faces: &[(Simplex, u128)],
    r: usize,
    from: usize,
    used: u64,
    common: u128,
    stack: &mut Vec<Simplex>,
    examined: &mut u64,
) -> Option<Vec<Simplex>> {
    if stack.len() == r {
        return Some(stack.clone());
    }
    for (i, &(f, set)) in faces.iter().enumerate().skip(from) {
        if f.mask() & used != 0 {
            continue;
        }
        *examined += 1;
        let next = common & set;
        if next == 0 {
            continue;
        }
        stack.push(f);
        if let Some(w) = tuple_search(faces, r, i + 1, used | f.mask(), next, stack, examined) {
            return Some(w);
        }
        stack.pop();
    }
    None
}
