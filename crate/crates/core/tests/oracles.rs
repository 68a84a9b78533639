//! Library results against exhaustive enumeration on small inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kneser_tverberg::chromatic::{chromatic_number, is_proper, Coloring};
use kneser_tverberg::geometry::q;
use kneser_tverberg::kneser::{s_stable_subsets, stable_avg_subsets, width};
use kneser_tverberg::simplex::k_subsets;
use kneser_tverberg::{Hypergraph, Simplex, SimplicialComplex};

/// Smallest `k` for which some assignment in `k^n` leaves no edge monochromatic.
fn brute_chi(h: &Hypergraph) -> u32 {
    let n = h.vertex_count();
    if n == 0 {
        return 0;
    }
    (1..=n as u32)
        .find(|&k| {
            let mut c = vec![0u32; n];
            loop {
                if h.edges().iter().all(|e| e.iter().any(|&v| c[v] != c[e[0]])) {
                    return true;
                }
                let mut i = 0;
                while i < n && c[i] == k - 1 {
                    c[i] = 0;
                    i += 1;
                }
                if i == n {
                    return false;
                }
                c[i] += 1;
            }
        })
        .unwrap()
}

fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> SimplicialComplex {
    let count = rng.gen_range(1..=5);
    SimplicialComplex::new(n, (0..count).map(|_| Simplex::from_mask(rng.gen_range(0..(1u64 << n))))).unwrap()
}

#[test]
fn chromatic_number_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..150 {
        let n = rng.gen_range(1..=8);
        let r = rng.gen_range(2..=3);
        let vertices: Vec<Simplex> = (1..=n).map(|l| Simplex::from_labels([l]).unwrap()).collect();
        let edges: Vec<Vec<usize>> = (0..rng.gen_range(0..=12))
            .map(|_| {
                let mut e: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                e.truncate(r);
                e
            })
            .filter(|e| e.len() == r)
            .collect();
        let h = Hypergraph::new(r, vertices, edges).unwrap();
        let res = chromatic_number(&h, 64).unwrap();
        assert_eq!(res.chi, brute_chi(&h), "{h:?}");
        assert!(is_proper(&h, &res.coloring).unwrap().proper);
        assert_eq!(res.coloring.colors_used(), res.chi as usize);
    }
}

#[test]
fn improper_colorings_are_reported() {
    let h = Hypergraph::disjointness(2, k_subsets(5, 2)).unwrap();
    let check = is_proper(&h, &Coloring::constant(10)).unwrap();
    assert!(!check.proper);
}

#[test]
fn minimal_nonfaces_match_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let n = rng.gen_range(1..=8);
        let k = random_complex(&mut rng, n);
        let expected: Vec<Simplex> = (0..1u64 << n)
            .map(Simplex::from_mask)
            .filter(|s| !k.is_face(*s) && s.labels().all(|l| k.is_face(s.without(l))))
            .collect();
        let mut got = k.minimal_nonfaces();
        got.sort();
        let mut expected = expected;
        expected.sort();
        assert_eq!(got, expected);
    }
}

/// Largest covered label count over all assignments of labels to `r` parts or none.
fn brute_width(k: &SimplicialComplex, r: usize) -> usize {
    let n = k.n();
    let mut best = 0;
    let total = (r + 1).pow(n as u32);
    for code in 0..total {
        let mut parts = vec![0u64; r];
        let mut c = code;
        let mut covered = 0;
        for l in 0..n {
            let p = c % (r + 1);
            c /= r + 1;
            if p < r {
                parts[p] |= 1 << l;
                covered += 1;
            }
        }
        if parts.iter().all(|&m| k.is_face(Simplex::from_mask(m))) {
            best = best.max(covered);
        }
    }
    n - best
}

#[test]
fn width_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..80 {
        let n = rng.gen_range(1..=7);
        let r = rng.gen_range(2..=3);
        let k = random_complex(&mut rng, n);
        assert_eq!(width(&k, r).unwrap(), brute_width(&k, r), "{k:?}");
    }
}

fn cyclic_distances(set: Simplex, n: usize) -> Vec<usize> {
    let l = set.to_vec();
    (0..l.len()).map(|i| if i + 1 < l.len() { l[i + 1] - l[i] } else { n - l[i] + l[0] }).collect()
}

#[test]
fn stable_sets_match_cyclic_distances() {
    for n in 4..=10 {
        for k in 2..=n / 2 {
            for s in 1..=3 {
                let expected: Vec<Simplex> = k_subsets(n, k)
                    .into_iter()
                    .filter(|set| cyclic_distances(*set, n).iter().all(|&d| d >= s))
                    .collect();
                assert_eq!(s_stable_subsets(k, n, s).unwrap(), expected, "k={k} n={n} s={s}");
            }
        }
    }
}

#[test]
fn average_stable_sets_drop_the_longest_step() {
    for n in 5..=11 {
        for k in 2..=4 {
            for (num, den) in [(1, 1), (4, 3), (3, 2), (2, 1)] {
                // mean of the k-1 shortest cyclic steps is at least num/den
                let expected: Vec<Simplex> = k_subsets(n, k)
                    .into_iter()
                    .filter(|set| {
                        let d = cyclic_distances(*set, n);
                        let rest = n - d.iter().max().unwrap();
                        (rest * den) as i64 >= num * (k as i64 - 1)
                    })
                    .collect();
                let mut got = stable_avg_subsets(k, n, &q(num, den as i64)).unwrap();
                got.sort();
                assert_eq!(got, expected, "k={k} n={n} t={num}/{den}");
            }
        }
    }
}
