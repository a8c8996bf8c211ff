//! Homology engine invariants on random complexes.

use std::collections::BTreeSet;

use itertools::Itertools;
use lcdim_core::complex::{Simplex, SimplicialComplex};
use lcdim_core::field::FieldSpec;
use lcdim_core::homology::{boundary_matrix, full_reduced_betti, reduced_betti, reduced_euler_characteristic, relative_betti_pair};
use lcdim_core::mv::{phi_cokernel_dim, phi_map, signed_incidence};
use proptest::prelude::*;

const CHARS: [u64; 5] = [0, 2, 3, 5, 7];

fn field(p: u64) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}

/// Face closure of random facets on `n` vertices, plus the full
/// `skeleton`-skeleton when given.
fn random_complex(n: usize, facets: &[Vec<bool>], skeleton: Option<usize>) -> SimplicialComplex {
    let mut list: Vec<Simplex> = facets
        .iter()
        .map(|mask| (1..=n).filter(|&v| mask[v - 1]).collect::<Vec<_>>())
        .filter(|f: &Vec<usize>| !f.is_empty())
        .collect();
    if let Some(s) = skeleton {
        list.extend((1..=n).combinations(s + 1));
    }
    SimplicialComplex::from_facets(n, n - 1, &list).unwrap()
}

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=7).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), n), 0..6)
            .prop_map(move |facets| random_complex(n, &facets, None))
    })
}

/// Graph homology by union-find: `H̃_0 = components - 1`, `H̃_1 = E - V + components`.
fn graph_betti(c: &SimplicialComplex) -> (usize, usize) {
    let n = c.n_vertices();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let vertices: Vec<usize> = c.layer(0).unwrap().iter().map(|s| s[0]).collect();
    let edges: Vec<Simplex> = c.layer(1).unwrap().iter().cloned().collect();
    for e in &edges {
        let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
        parent[a] = b;
    }
    let roots: BTreeSet<usize> = vertices.iter().map(|&v| find(&mut parent, v)).collect();
    let comps = roots.len();
    (comps.saturating_sub(1), edges.len() + comps - vertices.len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn boundary_squares_to_zero(c in complex_strategy()) {
        for s in 1..=c.dim_cap() {
            let prod = boundary_matrix(&c, s - 1).unwrap().mul(&boundary_matrix(&c, s).unwrap());
            prop_assert!(prod.is_zero());
        }
    }

    #[test]
    fn euler_characteristic_in_every_characteristic(c in complex_strategy()) {
        let chi = reduced_euler_characteristic(&c);
        for p in CHARS {
            let b = full_reduced_betti(&c, field(p)).unwrap();
            let alt: i64 = b.reduced.iter().map(|(&s, &v)| if s.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) }).sum();
            prop_assert_eq!(alt, chi, "char {}", p);
        }
    }

    #[test]
    fn pair_sequence_shift(c in complex_strategy()) {
        for p in CHARS {
            for t in 0..c.n_vertices() {
                let rel = relative_betti_pair(&c, field(p), t).unwrap();
                let red = reduced_betti(&c, field(p), &[t as i64 - 1]).unwrap().reduced[&(t as i64 - 1)];
                prop_assert_eq!(rel, red, "char {} t {}", p, t);
            }
        }
    }

    #[test]
    fn graphs_match_union_find(n in 2usize..9, edges in prop::collection::vec((1usize..9, 1usize..9), 0..14), isolated in prop::collection::vec(1usize..9, 0..4)) {
        let mut facets: Vec<Simplex> = edges.iter().filter(|(a, b)| a != b && *a <= n && *b <= n).map(|&(a, b)| vec![a.min(b), a.max(b)]).collect();
        facets.extend(isolated.iter().filter(|&&v| v <= n).map(|&v| vec![v]));
        let c = SimplicialComplex::from_facets(n, 1, &facets).unwrap();
        let (b0, b1) = graph_betti(&c);
        let c = SimplicialComplex::from_layers(n, n - 1, c.layers().to_vec()).unwrap();
        for p in CHARS {
            let b = reduced_betti(&c, field(p), &[0, 1]).unwrap();
            if c.is_void() {
                prop_assert_eq!(b.reduced[&0], 0);
            } else {
                prop_assert_eq!(b.reduced[&0], b0);
            }
            prop_assert_eq!(b.reduced[&1], b1);
        }
    }

    /// Δ with its full (t-1)-skeleton: coker Φ = H_t(S,Δ) = H̃_{t-1}(Δ).
    #[test]
    fn triple_equality_with_skeleton(n in 3usize..=7, t_seed in 0usize..10, facets in prop::collection::vec(prop::collection::vec(any::<bool>(), 7), 0..6)) {
        let t = 1 + t_seed % (n - 1);
        let facets: Vec<Vec<bool>> = facets.into_iter().map(|f| f[..n].to_vec()).collect();
        let c = random_complex(n, &facets, Some(t - 1));
        prop_assert_eq!(c.has_full_skeleton(t - 1), Some(true));
        let phi = phi_map(&c, t).unwrap();
        for p in CHARS {
            let coker = phi_cokernel_dim(&phi, field(p));
            let rel = relative_betti_pair(&c, field(p), t).unwrap();
            let red = reduced_betti(&c, field(p), &[t as i64 - 1]).unwrap().reduced[&(t as i64 - 1)];
            prop_assert_eq!(coker, rel);
            prop_assert_eq!(rel, red);
        }
    }

    /// Consecutive Φ maps compose to zero.
    #[test]
    fn phi_row_is_a_complex(c in complex_strategy(), t in 0usize..5) {
        let lam = |s: usize| c.non_simplices(s).unwrap_or_default();
        let (a, b, d) = (lam(t), lam(t + 1), lam(t + 2));
        let prod = signed_incidence(&a, &b).mul(&signed_incidence(&b, &d));
        prop_assert!(prod.is_zero());
    }
}

#[test]
fn stock_betti_up_to_eight() {
    for n in 1..=8 {
        let full = SimplicialComplex::full(n);
        for p in CHARS {
            assert!(full_reduced_betti(&full, field(p)).unwrap().reduced.values().all(|&v| v == 0));
        }
        if n >= 2 {
            let sphere = SimplicialComplex::sphere_boundary(n);
            for p in CHARS {
                let b = full_reduced_betti(&sphere, field(p)).unwrap();
                for (&s, &v) in &b.reduced {
                    assert_eq!(v, usize::from(s == n as i64 - 2));
                }
            }
        }
    }
}
