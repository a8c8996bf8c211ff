//! The complex of index sets whose ideal sums are not m-primary.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex};
use crate::ideal::{Ideal, IdealError};
use crate::poly::same_ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeltaError {
    #[error("prime #{} is the unit ideal", index + 1)]
    UnitPrime { index: usize },
    #[error("the base ideal is the unit ideal")]
    UnitBase,
    #[error("no primes given")]
    NoPrimes,
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// Builds Δ up to `dim_cap`: a tuple `{j0 < ... < js}` is a simplex iff
/// `I_j0 + ... + I_js (+ base)` is not m-primary.
///
/// Supersets of an m-primary tuple are m-primary too, so a tuple is only
/// tested once all of its facets are already in Δ.
pub fn build_delta(primes: &[Ideal], base: Option<&Ideal>, dim_cap: usize) -> Result<SimplicialComplex, DeltaError> {
    let first = primes.first().ok_or(DeltaError::NoPrimes)?;
    let ring = first.ring();
    for (index, p) in primes.iter().enumerate() {
        if !same_ring(p.ring(), ring) {
            return Err(IdealError::RingMismatch.into());
        }
        if p.is_unit() {
            return Err(DeltaError::UnitPrime { index });
        }
    }
    if let Some(b) = base {
        if !same_ring(b.ring(), ring) {
            return Err(IdealError::RingMismatch.into());
        }
        if b.is_unit() {
            return Err(DeltaError::UnitBase);
        }
    }

    let n = primes.len();
    let sum_is_m_primary = |tuple: &Simplex| -> Result<bool, IdealError> {
        let mut gens = Vec::new();
        for &j in tuple {
            gens.extend(primes[j - 1].generators().iter().cloned());
        }
        if let Some(b) = base {
            gens.extend(b.generators().iter().cloned());
        }
        Ok(Ideal::new(ring, gens)?.is_m_primary())
    };

    let mut layers: Vec<BTreeSet<Simplex>> = Vec::with_capacity(dim_cap + 1);
    for s in 0..=dim_cap {
        let candidates: Vec<Simplex> = if s == 0 {
            (1..=n).map(|j| vec![j]).collect()
        } else {
            extend_candidates(&layers[s - 1], n)
        };
        let tested: Vec<(Simplex, bool)> = candidates
            .into_par_iter()
            .map(|t| sum_is_m_primary(&t).map(|m| (t, m)))
            .collect::<Result<_, _>>()?;
        layers.push(tested.into_iter().filter(|(_, m)| !m).map(|(t, _)| t).collect());
    }
    Ok(SimplicialComplex::from_layers(n, dim_cap, layers).expect("closure holds by construction"))
}

/// `(s+1)`-subsets all of whose `s`-faces lie in `prev`, in lexicographic
/// order.
fn extend_candidates(prev: &BTreeSet<Simplex>, n: usize) -> Vec<Simplex> {
    let mut out = Vec::new();
    for simplex in prev {
        let last = *simplex.last().unwrap();
        for v in last + 1..=n {
            let mut cand = simplex.clone();
            cand.push(v);
            let closed = (0..cand.len() - 1).all(|j| {
                let mut f = cand.clone();
                f.remove(j);
                prev.contains(&f)
            });
            if closed {
                out.push(cand);
            }
        }
    }
    out
}
