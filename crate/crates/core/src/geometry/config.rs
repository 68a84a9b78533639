use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::rational::{parse_rational, Q, RationalPoint};
use crate::error::{Error, Result};
use crate::simplex::{Simplex, MAX_LABEL};

/// Labelled points with exact coordinates in `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    d: usize,
    points: BTreeMap<usize, RationalPoint>,
}

impl PointConfiguration {
    pub fn new(d: usize, points: BTreeMap<usize, RationalPoint>) -> Result<Self> {
        for (&label, p) in &points {
            if label == 0 || label > MAX_LABEL {
                return Err(Error::LabelOutOfRange { label, max: MAX_LABEL });
            }
            if p.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
            }
        }
        Ok(Self { d, points })
    }

    /// Points labelled `1..=len` in the given order.
    pub fn from_points(d: usize, points: Vec<RationalPoint>) -> Result<Self> {
        Self::new(d, points.into_iter().enumerate().map(|(i, p)| (i + 1, p)).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.points.keys().copied()
    }

    pub fn label_set(&self) -> Simplex {
        Simplex::from_labels(self.labels()).expect("labels validated on construction")
    }

    pub fn point(&self, label: usize) -> Result<&RationalPoint> {
        self.points.get(&label).ok_or(Error::UnknownLabel(label))
    }

    pub fn points(&self) -> &BTreeMap<usize, RationalPoint> {
        &self.points
    }

    /// Points of a label set, in label order.
    pub fn points_of(&self, set: Simplex) -> Result<Vec<&RationalPoint>> {
        set.labels().map(|l| self.point(l)).collect()
    }

    /// Applies `x ↦ M x + v` to every point.
    pub fn transformed(&self, matrix: &[Vec<Q>], shift: &[Q]) -> Result<Self> {
        let points = self
            .points
            .iter()
            .map(|(&l, p)| {
                let coords = matrix
                    .iter()
                    .zip(shift)
                    .map(|(row, s)| row.iter().zip(p.coords()).map(|(a, x)| a * x).sum::<Q>() + s)
                    .collect();
                (l, RationalPoint::new(coords))
            })
            .collect();
        Self::new(matrix.len(), points)
    }

    pub fn to_file(&self) -> PointConfigurationFile {
        PointConfigurationFile {
            d: self.d,
            points: self.points.iter().map(|(l, p)| (l.to_string(), p.clone())).collect(),
        }
    }

    pub fn from_file(file: &PointConfigurationFile) -> Result<Self> {
        let mut points = BTreeMap::new();
        for (label, p) in &file.points {
            let l: usize = label
                .parse()
                .map_err(|_| Error::InvalidParameters(format!("point label '{label}' is not an integer")))?;
            points.insert(l, p.clone());
        }
        Self::new(file.d, points)
    }
}

/// `{ "d": int, "points": {"label": ["num/den",...]} }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfigurationFile {
    pub d: usize,
    pub points: BTreeMap<String, RationalPoint>,
}

/// Points `(t, t^2, ..., t^d)` on the moment curve, labelled `1..` in
/// parameter order.
pub fn moment_points(params: &[Q], d: usize) -> Result<PointConfiguration> {
    for w in params.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateParameter(super::rational::format_rational(&w[0])));
        }
        if w[0] > w[1] {
            return Err(Error::UnsortedParameters);
        }
    }
    let points = params
        .iter()
        .map(|t| {
            let mut coords = Vec::with_capacity(d);
            let mut power = Q::one();
            for _ in 0..d {
                power *= t;
                coords.push(power.clone());
            }
            RationalPoint::new(coords)
        })
        .collect();
    PointConfiguration::from_points(d, points)
}

/// Integer parameters `1..=n`.
pub fn moment_points_integer(n: usize, d: usize) -> Result<PointConfiguration> {
    let params: Vec<Q> = (1..=n as i64).map(super::rational::qi).collect();
    moment_points(&params, d)
}

/// Parses parameters written as `"num/den"` strings.
pub fn parse_parameters(raw: &[String]) -> Result<Vec<Q>> {
    raw.iter().map(|s| parse_rational(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::super::rational::{q, qi};
    use super::*;

    #[test]
    fn parabola_points() {
        let p = moment_points(&[qi(0), qi(1), qi(2)], 2).unwrap();
        assert_eq!(p.point(1).unwrap(), &RationalPoint::from_ints(&[0, 0]));
        assert_eq!(p.point(2).unwrap(), &RationalPoint::from_ints(&[1, 1]));
        assert_eq!(p.point(3).unwrap(), &RationalPoint::from_ints(&[2, 4]));
    }

    #[test]
    fn rational_parameters() {
        let p = moment_points(&[q(1, 2)], 3).unwrap();
        assert_eq!(p.point(1).unwrap().coords(), &[q(1, 2), q(1, 4), q(1, 8)]);
    }

    #[test]
    fn rejects_duplicates_and_disorder() {
        assert!(matches!(moment_points(&[qi(1), qi(1)], 2), Err(Error::DuplicateParameter(_))));
        assert!(matches!(moment_points(&[qi(2), qi(1)], 2), Err(Error::UnsortedParameters)));
    }

    #[test]
    fn file_round_trip() {
        let p = moment_points(&[q(-1, 3), qi(2)], 2).unwrap();
        let json = serde_json::to_string(&p.to_file()).unwrap();
        assert_eq!(json, r#"{"d":2,"points":{"1":["-1/3","1/9"],"2":["2","4"]}}"#);
        let back: PointConfigurationFile = serde_json::from_str(&json).unwrap();
        assert_eq!(PointConfiguration::from_file(&back).unwrap(), p);
    }
}
