//! Exact rational geometry on point configurations.

mod config;
mod gale;
mod intertwine;
pub mod linalg;
pub mod lp;
mod placement;
mod position;
mod rational;
mod tverberg;

pub use config::{moment_points, moment_points_integer, parse_parameters, PointConfiguration, PointConfigurationFile};
pub use gale::{cyclic_boundary, cyclic_missing_faces, gale_facets};
pub use intertwine::{intertwined_pair, IntertwinedPair};
pub use placement::{
    avg_stable_placement, default_stability, generic_moment_placement, stability_bound, AvgStablePlacement, DEFAULT_PLACEMENT_ATTEMPTS,
};
pub use position::{
    certify_strong_general_position, check_strong_general_position, is_strong_general_position,
    GeneralPositionCertificate, GeneralPositionCheck,
};
pub use rational::{as_string, format_rational, parse_rational, q, qi, RationalPoint, Q};
pub use tverberg::{
    conv_intersect, tverberg_search, CertificateFile, IntersectionWitness, SearchOptions, TverbergCertificate,
    TverbergOutcome, VerifiedAbsence, DEFAULT_TUPLE_CAP,
};
