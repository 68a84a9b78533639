use proptest::prelude::*;

use kneser_tverberg::geometry::{conv_intersect, PointConfiguration, RationalPoint, Q};
use kneser_tverberg::kneser::{generalized_kneser, Hypergraph};
use kneser_tverberg::simplex::k_subsets;
use kneser_tverberg::{Simplex, SimplicialComplex};

fn complex(n: usize) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(1u64..(1 << n), 0..6)
        .prop_map(move |masks| SimplicialComplex::new(n, masks.into_iter().map(Simplex::from_mask)).unwrap())
}

fn points(d: usize, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<RationalPoint>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, d), len)
        .prop_map(|ps| ps.iter().map(|p| RationalPoint::from_ints(p)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complex_file_round_trip(k in complex(7)) {
        let json = serde_json::to_string(&k.to_file()).unwrap();
        let back = SimplicialComplex::from_file(&serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(back, k);
    }

    #[test]
    fn nonfaces_recover_complex(k in complex(7)) {
        let rebuilt = SimplicialComplex::from_forbidden(&k.minimal_nonfaces(), 7).unwrap();
        prop_assert_eq!(rebuilt, k);
    }

    #[test]
    fn faces_are_closed_downward(k in complex(6)) {
        for f in k.faces() {
            for g in f.subsets() {
                prop_assert!(k.is_face(g));
            }
        }
    }

    /// Adding an apex changes neither the minimal nonfaces nor the Kneser graph.
    #[test]
    fn cone_invariance(k in complex(6), r in 2usize..=3) {
        let coned = k.cone().unwrap();
        prop_assert_eq!(coned.minimal_nonfaces(), k.minimal_nonfaces());
        let full = |n: usize| SimplicialComplex::simplex(n - 1).unwrap();
        let a = generalized_kneser(&k, &full(6), r).unwrap();
        let b = generalized_kneser(&coned, &full(7), r).unwrap();
        prop_assert_eq!(a.edge_sets(), b.edge_sets());
    }

    #[test]
    fn hypergraph_file_round_trip(n in 4usize..=7, k in 1usize..=3) {
        let h = Hypergraph::disjointness(2, k_subsets(n, k)).unwrap();
        let json = serde_json::to_string(&h.to_file()).unwrap();
        let back = Hypergraph::from_file(&serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(back.edge_sets(), h.edge_sets());
    }

    #[test]
    fn intersection_symmetric(a in points(2, 1..4), b in points(2, 1..4)) {
        let ab = conv_intersect(&[a.clone(), b.clone()]).unwrap().is_some();
        let ba = conv_intersect(&[b, a]).unwrap().is_some();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn witness_lies_in_every_hull(a in points(2, 1..4), b in points(2, 1..4), c in points(2, 1..4)) {
        let parts = [a, b, c];
        if let Some(w) = conv_intersect(&parts).unwrap() {
            for (part, weights) in parts.iter().zip(&w.weights) {
                let total: Q = weights.iter().sum();
                prop_assert_eq!(total, Q::from_integer(1.into()));
                let combo = RationalPoint::combination(2, part.iter().zip(weights).map(|(p, x)| (x, p)));
                prop_assert_eq!(&combo, &w.point);
            }
        }
    }

    /// Invertible affine maps preserve intersection.
    #[test]
    fn intersection_affine_invariant(
        a in points(2, 1..4),
        b in points(2, 1..4),
        m in prop::array::uniform4(-3i64..=3),
        shift in prop::array::uniform2(-5i64..=5),
    ) {
        prop_assume!(m[0] * m[3] - m[1] * m[2] != 0);
        let q = |x: i64| Q::from_integer(x.into());
        let matrix = vec![vec![q(m[0]), q(m[1])], vec![q(m[2]), q(m[3])]];
        let shift = vec![q(shift[0]), q(shift[1])];
        let map = |ps: &[RationalPoint]| {
            PointConfiguration::from_points(2, ps.to_vec())
                .unwrap()
                .transformed(&matrix, &shift)
                .unwrap()
                .points()
                .values()
                .cloned()
                .collect::<Vec<_>>()
        };
        let before = conv_intersect(&[a.clone(), b.clone()]).unwrap().is_some();
        let after = conv_intersect(&[map(&a), map(&b)]).unwrap().is_some();
        prop_assert_eq!(before, after);
    }

    /// Radon: any d+2 points in R^d split into two parts whose hulls meet.
    #[test]
    fn radon(ps in points(2, 4..5)) {
        let config = PointConfiguration::from_points(2, ps).unwrap();
        let found = (1u64..(1 << 4) - 1).any(|mask| {
            let x = Simplex::from_mask(mask);
            let y = Simplex::from_mask(0b1111 & !mask);
            let px = config.points_of(x).unwrap().into_iter().cloned().collect();
            let py = config.points_of(y).unwrap().into_iter().cloned().collect();
            conv_intersect(&[px, py]).unwrap().is_some()
        });
        prop_assert!(found);
    }
}
