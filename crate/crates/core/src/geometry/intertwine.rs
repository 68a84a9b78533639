//! Minimal intersecting subsets of two point sets on the moment curve and
//! their interleaving.

use serde::Serialize;

use super::config::PointConfiguration;
use super::rational::{RationalPoint, Q};
use super::tverberg::conv_intersect;
use crate::error::{Error, Result};
use crate::simplex::Simplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntertwinedPair {
    pub y1: Simplex,
    pub y2: Simplex,
    /// Parameter values of `y1 ∪ y2` alternate strictly between the parts.
    pub alternating: bool,
}

impl IntertwinedPair {
    /// `{⌊d/2⌋ + 1, ⌈d/2⌉ + 1}` as an unordered pair.
    pub fn has_expected_sizes(&self, d: usize) -> bool {
        let mut got = [self.y1.len(), self.y2.len()];
        got.sort_unstable();
        got == [d / 2 + 1, d.div_ceil(2) + 1]
    }
}

fn hulls_meet(config: &PointConfiguration, a: Simplex, b: Simplex) -> Result<bool> {
    let pa: Vec<RationalPoint> = config.points_of(a)?.into_iter().cloned().collect();
    let pb: Vec<RationalPoint> = config.points_of(b)?.into_iter().cloned().collect();
    Ok(conv_intersect(&[pa, pb])?.is_some())
}

/// Shrinks `x1`, `x2` one point at a time (smallest label first, `x1`
/// before `x2`) while the hulls keep meeting. The result is inclusion
/// minimal: no single removal keeps the intersection, and intersection is
/// monotone under inclusion.
///
/// The curve parameter of a point is its first coordinate.
pub fn intertwined_pair(config: &PointConfiguration, x1: Simplex, x2: Simplex) -> Result<IntertwinedPair> {
    if x1.is_empty() || x2.is_empty() {
        return Err(Error::InvalidParameters("intertwined_pair needs nonempty sets".into()));
    }
    if !x1.is_disjoint(x2) {
        return Err(Error::InvalidParameters(format!("{x1} and {x2} are not disjoint")));
    }
    if config.d() == 0 {
        return Err(Error::InvalidParameters("moment curve needs d >= 1".into()));
    }
    if !hulls_meet(config, x1, x2)? {
        return Err(Error::NotIntersecting);
    }
    let (mut y1, mut y2) = (x1, x2);
    'descent: loop {
        for l in y1.labels() {
            let smaller = y1.without(l);
            if !smaller.is_empty() && hulls_meet(config, smaller, y2)? {
                y1 = smaller;
                continue 'descent;
            }
        }
        for l in y2.labels() {
            let smaller = y2.without(l);
            if !smaller.is_empty() && hulls_meet(config, y1, smaller)? {
                y2 = smaller;
                continue 'descent;
            }
        }
        break;
    }
    let alternating = alternates(config, y1, y2)?;
    Ok(IntertwinedPair { y1, y2, alternating })
}

fn alternates(config: &PointConfiguration, y1: Simplex, y2: Simplex) -> Result<bool> {
    let mut tagged: Vec<(Q, bool)> = Vec::new();
    for l in y1.union(y2).labels() {
        tagged.push((config.point(l)?.coords()[0].clone(), y1.contains(l)));
    }
    tagged.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(tagged.windows(2).all(|w| w[0].1 != w[1].1))
}
