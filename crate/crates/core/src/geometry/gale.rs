//! Facets and missing faces of cyclic polytopes via Gale's evenness
//! criterion.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::{k_subsets, Simplex};

/// Facets of the cyclic polytope `C_d(n)`: the `d`-subsets such that between
/// any two non-elements an even number of elements lie.
pub fn gale_facets(n: usize, d: usize) -> Result<Vec<Simplex>> {
    if d == 0 || n < d + 1 {
        return Err(Error::InvalidParameters(format!("cyclic polytope needs n >= d + 1 >= 2, got n = {n}, d = {d}")));
    }
    Ok(k_subsets(n, d).into_iter().filter(|s| satisfies_evenness(*s, n)).collect())
}

fn satisfies_evenness(set: Simplex, n: usize) -> bool {
    let outside: Vec<usize> = (1..=n).filter(|&l| !set.contains(l)).collect();
    outside.windows(2).all(|w| (w[0] + 1..w[1]).filter(|&l| set.contains(l)).count() % 2 == 0)
}

/// The boundary complex of `C_d(n)`.
pub fn cyclic_boundary(n: usize, d: usize) -> Result<SimplicialComplex> {
    SimplicialComplex::new(n, gale_facets(n, d)?)
}

/// Minimal nonfaces of the boundary of the cyclic polytope of dimension
/// `dim`.
pub fn cyclic_missing_faces(n: usize, dim: usize) -> Result<Vec<Simplex>> {
    Ok(cyclic_boundary(n, dim)?.minimal_nonfaces())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneser::s_stable_subsets;

    fn s(labels: &[usize]) -> Simplex {
        Simplex::from_labels(labels.iter().copied()).unwrap()
    }

    #[test]
    fn pentagon() {
        let f = gale_facets(5, 2).unwrap();
        assert_eq!(f, vec![s(&[1, 2]), s(&[1, 5]), s(&[2, 3]), s(&[3, 4]), s(&[4, 5])]);
    }

    #[test]
    fn facet_counts() {
        assert_eq!(gale_facets(6, 4).unwrap().len(), 9);
        assert_eq!(gale_facets(7, 4).unwrap().len(), 14);
        // simplex: every d-subset
        assert_eq!(gale_facets(4, 3).unwrap().len(), 4);
    }

    #[test]
    fn missing_faces_are_stable_sets() {
        assert_eq!(cyclic_missing_faces(6, 2).unwrap(), s_stable_subsets(2, 6, 2).unwrap());
        let m = cyclic_missing_faces(7, 4).unwrap();
        assert_eq!(m.len(), 7);
        assert_eq!(m, s_stable_subsets(3, 7, 2).unwrap());
    }

    #[test]
    fn rejects_small_n() {
        assert!(gale_facets(3, 3).is_err());
    }
}
