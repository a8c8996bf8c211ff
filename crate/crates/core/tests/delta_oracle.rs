//! Δ built through Gröbner bases against a linear-algebra oracle: a sum of
//! linear ideals is m-primary iff its generators span all linear forms.

use std::sync::Arc;

use itertools::Itertools;
use lcdim_core::analysis::example_hl;
use lcdim_core::complex::{SimplicialComplex, RP2_FACETS};
use lcdim_core::delta::build_delta;
use lcdim_core::field::{FieldElement, FieldSpec};
use lcdim_core::ideal::Ideal;
use lcdim_core::linalg::matrix_rank;
use lcdim_core::poly::{Monomial, RingContext};
use lcdim_core::search::{random_arrangement, trial_rng};

fn coefficient_rows(ideal: &Ideal) -> Vec<Vec<FieldElement>> {
    let ring = ideal.ring();
    let n = ring.n_vars();
    ideal
        .generators()
        .iter()
        .map(|g| {
            (0..n)
                .map(|i| {
                    let m = Monomial::var(n, i, 1);
                    g.terms()
                        .iter()
                        .find(|(mm, _)| *mm == m)
                        .map_or_else(|| ring.field().zero(), |(_, c)| c.clone())
                })
                .collect()
        })
        .collect()
}

/// Layers of Δ from ranks alone.
fn oracle_delta(primes: &[Ideal], cap: usize) -> SimplicialComplex {
    let ring = primes[0].ring();
    let n = ring.n_vars();
    let mut layers = Vec::new();
    for s in 0..=cap {
        let layer = (1..=primes.len())
            .combinations(s + 1)
            .filter(|tuple| {
                let rows: Vec<Vec<FieldElement>> = tuple.iter().flat_map(|&j| coefficient_rows(&primes[j - 1])).collect();
                matrix_rank(&rows, ring.field()) < n
            })
            .collect();
        layers.push(layer);
    }
    // the oracle layers are upward-monotone but need not be closed if the
    // engine were wrong; from_layers rejects that
    SimplicialComplex::from_layers(primes.len(), cap, layers).expect("rank oracle is downward closed")
}

fn ring(p: u64) -> Arc<RingContext> {
    RingContext::standard(FieldSpec::new(p).unwrap(), 6).unwrap()
}

#[test]
fn realization_matches_rank_oracle_and_listing() {
    let mut expected: Vec<Vec<usize>> = RP2_FACETS.iter().map(|f| f.to_vec()).collect();
    expected.sort();
    for (p, a) in [(7, 2i64), (0, 2), (11, 2), (13, 5), (0, -3)] {
        let r = ring(p);
        let primes = example_hl(&r.field().from_i64(a), &r).unwrap();
        let delta = build_delta(&primes, None, 5).unwrap();
        assert_eq!(delta, oracle_delta(&primes, 5), "char {p}, a = {a}");
        let tri: Vec<Vec<usize>> = delta.layer(2).unwrap().iter().cloned().collect();
        assert_eq!(tri, expected, "char {p}, a = {a}");
        assert_eq!(delta.counts(), vec![6, 15, 10, 0, 0, 0]);
    }
}

#[test]
fn random_linear_arrangements_match_oracle() {
    for trial in 0..40u64 {
        let p = [2u64, 3, 7, 0][trial as usize % 4];
        let n_vars = 4 + (trial as usize % 3);
        let r = RingContext::standard(FieldSpec::new(p).unwrap(), n_vars).unwrap();
        let mut rng = trial_rng(99, trial);
        let height = 1 + (trial as usize % 2);
        let primes = random_arrangement(&r, height, 5, &mut rng);
        if primes.iter().any(Ideal::is_unit) {
            continue;
        }
        let cap = 3;
        let delta = build_delta(&primes, None, cap).unwrap();
        assert!(delta.is_downward_closed());
        assert_eq!(delta, oracle_delta(&primes, cap), "trial {trial}");
    }
}

#[test]
fn base_ideal_is_added_to_every_sum() {
    let r = ring(0);
    let coord = |vs: &[usize]| Ideal::new(&r, vs.iter().map(|&i| lcdim_core::poly::Polynomial::var(&r, i - 1)).collect()).unwrap();
    let primes = [coord(&[1, 2]), coord(&[3, 4])];
    let with_base = build_delta(&primes, Some(&coord(&[5, 6])), 1).unwrap();
    assert_eq!(with_base.counts(), vec![2, 0]);
    let with_small_base = build_delta(&primes, Some(&coord(&[5])), 1).unwrap();
    assert_eq!(with_small_base.counts(), vec![2, 1]);
}
