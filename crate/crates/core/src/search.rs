//! Random search for arrangements whose `w` depends on the coefficient
//! characteristic.
//!
//! Trial `i` draws from a ChaCha stream keyed by the master seed with stream
//! number `i`, so any finding can be replayed alone.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{analyze, AnalysisError};
use crate::field::{FieldElement, FieldSpec};
use crate::ideal::Ideal;
use crate::poly::{Polynomial, RingContext};

#[derive(Debug, Clone)]
pub struct SearchParams {
    pub n_vars: usize,
    /// Linear forms per prime.
    pub height: usize,
    pub n_primes: usize,
    pub trials: u64,
    pub seed: u64,
    /// Field the arrangements live over.
    pub field: FieldSpec,
    pub characteristics: Vec<FieldSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Trial(u64),
    Injected(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub origin: Origin,
    pub seed: u64,
    /// Generators of each prime, rendered.
    pub primes: Vec<Vec<String>>,
    /// `(characteristic, w)` in request order.
    pub w: Vec<(u64, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchOutcome {
    pub findings: Vec<Finding>,
    pub examined: u64,
    /// Draws that failed validation.
    pub skipped: u64,
}

fn random_coefficient(rng: &mut ChaCha8Rng, field: FieldSpec) -> FieldElement {
    match field.characteristic() {
        0 => field.from_i64(rng.gen_range(-3..=3)),
        p => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

/// One arrangement: `n_primes` ideals, each spanned by `height` random linear
/// forms.
pub fn random_arrangement(ring: &Arc<RingContext>, height: usize, n_primes: usize, rng: &mut ChaCha8Rng) -> Vec<Ideal> {
    (0..n_primes)
        .map(|_| {
            let gens = (0..height)
                .map(|_| {
                    (0..ring.n_vars()).fold(Polynomial::zero(ring), |acc, i| {
                        let c = random_coefficient(rng, ring.field());
                        acc.checked_add(&Polynomial::var(ring, i).scale(&c)).expect("same ring")
                    })
                })
                .collect();
            Ideal::new(ring, gens).expect("linear forms are homogeneous")
        })
        .collect()
}

/// The generator for trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

enum TrialResult {
    Skipped,
    Clean,
    Found(Finding),
}

fn examine(primes: &[Ideal], origin: Origin, seed: u64, chars: &[FieldSpec]) -> Result<TrialResult, AnalysisError> {
    let report = match analyze(primes, &[], None, chars, None) {
        Ok(r) => r,
        Err(AnalysisError::Internal(msg)) => return Err(AnalysisError::Internal(msg)),
        Err(_) => return Ok(TrialResult::Skipped),
    };
    let w: Vec<(u64, usize)> = report.per_char.iter().map(|r| (r.characteristic, r.w)).collect();
    if w.windows(2).all(|p| p[0].1 == p[1].1) {
        return Ok(TrialResult::Clean);
    }
    Ok(TrialResult::Found(Finding {
        origin,
        seed,
        primes: primes
            .iter()
            .map(|p| p.generators().iter().map(ToString::to_string).collect())
            .collect(),
        w,
    }))
}

/// Runs `injected` arrangements first, then `trials` random ones. Only
/// internal invariant breaches are errors.
pub fn search_char_dependence(params: &SearchParams, injected: &[Vec<Ideal>]) -> Result<SearchOutcome, AnalysisError> {
    let ring = RingContext::standard(params.field, params.n_vars).map_err(|e| AnalysisError::Usage(e.to_string()))?;
    if params.height == 0 || params.n_primes == 0 {
        return Err(AnalysisError::Usage("height and prime count must be positive".into()));
    }
    let chars = &params.characteristics;
    let mut results: Vec<TrialResult> = injected
        .iter()
        .enumerate()
        .map(|(k, primes)| examine(primes, Origin::Injected(k), params.seed, chars))
        .collect::<Result<_, _>>()?;
    let random: Vec<TrialResult> = (0..params.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(params.seed, trial);
            let primes = random_arrangement(&ring, params.height, params.n_primes, &mut rng);
            examine(&primes, Origin::Trial(trial), params.seed, chars)
        })
        .collect::<Result<_, _>>()?;
    results.extend(random);

    let mut out = SearchOutcome::default();
    for r in results {
        out.examined += 1;
        match r {
            TrialResult::Skipped => out.skipped += 1,
            TrialResult::Clean => {}
            TrialResult::Found(f) => out.findings.push(f),
        }
    }
    Ok(out)
}
