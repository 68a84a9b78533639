use thiserror::Error;

use crate::simplex::Simplex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex label {label} outside the supported range 1..={max}")]
    LabelOutOfRange { label: usize, max: usize },

    #[error("set system is not an antichain: {smaller} is contained in {larger}")]
    NotAntichain { smaller: Simplex, larger: Simplex },

    #[error("complex K is not a subcomplex of L: facet {0} of K is not a face of L")]
    NotSubcomplex(Simplex),

    #[error("coloring is not total: {assigned} colors for {vertices} vertices")]
    PartialColoring { assigned: usize, vertices: usize },

    #[error("color {color} of vertex {vertex} is outside 1..={k}")]
    ColorOutOfRange { vertex: usize, color: u32, k: u32 },

    #[error("coloring is not proper: hyperedge {0:?} is monochromatic")]
    ImproperColoring(Vec<usize>),

    #[error("hypergraph has {vertices} vertices, above the limit of {limit}; use the bound formulas instead")]
    VertexLimit { vertices: usize, limit: usize },

    #[error("search space of {count} candidates exceeds the cap of {cap}")]
    SearchCap { count: u128, cap: u128 },

    #[error("ground set of {n} elements is too large for exhaustive enumeration (limit {limit})")]
    GroundSetTooLarge { n: usize, limit: usize },

    #[error("duplicate moment-curve parameter {0}")]
    DuplicateParameter(String),

    #[error("moment-curve parameters must be strictly increasing")]
    UnsortedParameters,

    #[error("points have mismatched dimensions: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("part {0} of the intersection query is empty")]
    EmptyPart(usize),

    #[error("the convex hulls of the two point sets do not intersect")]
    NotIntersecting,

    #[error("label {0} is not part of the point configuration")]
    UnknownLabel(usize),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("strong general position not reached after {0} perturbation attempts")]
    PlacementFailed(usize),

    #[error("could not parse rational '{0}'")]
    ParseRational(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
