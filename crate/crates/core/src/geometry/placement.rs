//! Vertices of the complex whose missing faces are the `t`-stable-on-average
//! `k`-sets, spread in cyclic order along the moment curve.

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{moment_points, PointConfiguration};
use super::position::{certify_strong_general_position, GeneralPositionCertificate};
use super::rational::{qi, Q};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::kneser::stable_avg_subsets;

pub const DEFAULT_PLACEMENT_ATTEMPTS: usize = 32;

#[derive(Clone, Debug)]
pub struct AvgStablePlacement {
    pub t: Q,
    pub complex: SimplicialComplex,
    pub config: PointConfiguration,
    pub general_position: GeneralPositionCertificate,
    /// 0 when the integer parameters `1..n` already worked.
    pub attempts_used: usize,
}

/// `r(k-3)/(2(k-1)) + 1`, raised to 1 when smaller.
pub fn default_stability(r: usize, k: usize) -> Result<Q> {
    if k < 2 {
        return Err(Error::InvalidParameters("average stability needs k >= 2".into()));
    }
    let t = Q::new(BigInt::from(r as i64 * (k as i64 - 3)), BigInt::from(2 * (k as i64 - 1))) + Q::one();
    Ok(t.max(Q::one()))
}

/// `(r-1)/(k-1) · ⌊d/2⌋ + 1`; the stability must stay strictly below it.
pub fn stability_bound(r: usize, k: usize, d: usize) -> Q {
    Q::new(BigInt::from((r - 1) * (d / 2)), BigInt::from(k - 1)) + Q::one()
}

pub fn avg_stable_placement(
    r: usize,
    k: usize,
    d: usize,
    n: usize,
    t: Option<Q>,
    seed: u64,
    attempts: usize,
) -> Result<AvgStablePlacement> {
    if r < 2 || k < 2 || d == 0 {
        return Err(Error::InvalidParameters(format!("need r >= 2, k >= 2, d >= 1 (got r={r}, k={k}, d={d})")));
    }
    if (r - 1) * d <= r * k.saturating_sub(2) {
        return Err(Error::InvalidParameters(format!("(r-1)d = {} must exceed r(k-2) = {}", (r - 1) * d, r * (k - 2))));
    }
    let t = match t {
        Some(t) => t,
        None => default_stability(r, k)?,
    };
    let bound = stability_bound(r, k, d);
    if t < Q::one() || t >= bound {
        return Err(Error::InvalidParameters(format!("need 1 <= t < {bound}, got t = {t}")));
    }
    let forbidden = stable_avg_subsets(k, n, &t)?;
    let complex = SimplicialComplex::from_forbidden(&forbidden, n)?;
    let (config, general_position, attempts_used) = generic_moment_placement(n, d, r, seed, attempts)?;
    Ok(AvgStablePlacement { t, complex, config, general_position, attempts_used })
}

/// Points `1..n` in order along the moment curve in `R^d`, in strong general
/// position for `r` parts. Attempt 0 uses the integer parameters; later
/// attempts shift each by a seeded rational below 1/4.
pub fn generic_moment_placement(
    n: usize,
    d: usize,
    r: usize,
    seed: u64,
    attempts: usize,
) -> Result<(PointConfiguration, GeneralPositionCertificate, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..=attempts {
        let params: Vec<Q> = (1..=n as i64)
            .map(|i| {
                if attempt == 0 {
                    qi(i)
                } else {
                    qi(i) + Q::new(BigInt::from(rng.gen_range(1..=999i64)), BigInt::from(4000))
                }
            })
            .collect();
        let config = moment_points(&params, d)?;
        if let Some(cert) = certify_strong_general_position(&config, r)? {
            return Ok((config, cert, attempt));
        }
    }
    Err(Error::PlacementFailed(attempts))
}
