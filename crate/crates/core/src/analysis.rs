//! Hypothesis validation and the cohomological-dimension verdict.
//!
//! For primes `I_1..I_n` of height at most `c < d`, with `t = ⌊(d-2)/c⌋` and
//! `v = d - 1 - t`, the module `H^{v+1}_I(M)` is a direct sum of `w` copies of
//! `H^d_m(M)` where `w = dim H̃_{t-1}(Δ; k)`. So `cd ≤ v` iff `w = 0`.
//!
//! `w` is computed twice, once as reduced homology of Δ and once as the
//! cokernel of the signed incidence map `Φ` between non-simplices. The two
//! must agree whenever Δ contains its full `(t-1)`-skeleton.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex};
use crate::delta::{build_delta, DeltaError};
use crate::field::{FieldElement, FieldSpec};
use crate::homology::{reduced_betti, relative_betti_pair};
use crate::ideal::{check_irredundant, Ideal, IdealError, KrullDimension};
use crate::mv::{bound_faltings, bound_hl, bound_main, bound_sum, phi_cokernel_dim, phi_map};
use crate::poly::{same_ring, Polynomial, RingContext};

/// Input outside the class of arrangements the analysis covers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypothesisError {
    #[error("no primes given")]
    NoPrimes,
    #[error("ideals belong to different rings")]
    RingMismatch,
    #[error("{name} is the unit ideal")]
    UnitIdeal { name: String },
    #[error("the base ideal is the unit ideal")]
    UnitBase,
    #[error("{name} has height = d = {d}; every prime must have height below d")]
    HeightEqualsD { name: String, d: usize },
    #[error("d = {d} must be at least 2")]
    DimensionTooSmall { d: usize },
    #[error("{contained} is contained in {container}; the primes must be irredundant")]
    Redundant { contained: String, container: String },
    #[error("{name}: generator {index} is not homogeneous: {poly}")]
    Inhomogeneous { name: String, index: usize, poly: String },
    #[error("bases have different dimensions {first} and {other}; one d is required")]
    UnequalBaseDimensions { first: usize, other: usize },
    #[error("parameter a = {a} violates {condition}")]
    BadParameter { a: String, condition: &'static str },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Hypothesis(#[from] HypothesisError),
    #[error("{0}")]
    Usage(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl AnalysisError {
    /// 1 for hypothesis violations, 2 for usage errors, 3 for internal
    /// breaches.
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalysisError::Hypothesis(_) => 1,
            AnalysisError::Usage(_) => 2,
            AnalysisError::Internal(_) => 3,
        }
    }
}

impl From<IdealError> for AnalysisError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::RingMismatch => HypothesisError::RingMismatch.into(),
            IdealError::NoIdeals => HypothesisError::NoPrimes.into(),
            IdealError::Inhomogeneous { index, poly } => HypothesisError::Inhomogeneous {
                name: "ideal".into(),
                index,
                poly,
            }
            .into(),
            other => AnalysisError::Internal(other.to_string()),
        }
    }
}

/// Display names `I1, I2, ...` for unnamed primes.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("I{i}")).collect()
}

/// Heights and dimension data for a validated input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    pub n_vars: usize,
    pub d: usize,
    /// Heights in `R/P`, i.e. `d - dim R/(I_j + P)`.
    pub heights: Vec<usize>,
    pub c: usize,
    pub caveats: Vec<String>,
}

/// Checks the input hypotheses; `names` label the primes in errors.
pub fn validate_hypotheses(primes: &[Ideal], names: &[String], base: Option<&Ideal>) -> Result<Validation, HypothesisError> {
    let first = primes.first().ok_or(HypothesisError::NoPrimes)?;
    let ring = first.ring().clone();
    let label = |j: usize| names.get(j).cloned().unwrap_or_else(|| format!("I{}", j + 1));
    if primes.iter().any(|p| !same_ring(p.ring(), &ring)) || base.is_some_and(|b| !same_ring(b.ring(), &ring)) {
        return Err(HypothesisError::RingMismatch);
    }
    let n_vars = ring.n_vars();
    let d = match base {
        None => n_vars,
        Some(b) => match b.krull_dimension() {
            KrullDimension::Empty => return Err(HypothesisError::UnitBase),
            KrullDimension::Finite(d) => d,
        },
    };

    let mut heights = Vec::with_capacity(primes.len());
    for (j, p) in primes.iter().enumerate() {
        let dim = match base {
            None => p.krull_dimension(),
            Some(b) => {
                let gens = p.generators().iter().chain(b.generators()).cloned().collect();
                Ideal::new(&ring, gens).map_err(|_| HypothesisError::RingMismatch)?.krull_dimension()
            }
        };
        match dim {
            KrullDimension::Empty => return Err(HypothesisError::UnitIdeal { name: label(j) }),
            KrullDimension::Finite(0) => return Err(HypothesisError::HeightEqualsD { name: label(j), d }),
            KrullDimension::Finite(k) => heights.push(d - k),
        }
    }
    if d < 2 {
        return Err(HypothesisError::DimensionTooSmall { d });
    }
    let redundant = check_irredundant(primes).map_err(|_| HypothesisError::RingMismatch)?;
    if let Some(&(i, j)) = redundant.first() {
        return Err(HypothesisError::Redundant {
            contained: label(i),
            container: label(j),
        });
    }

    let nonlinear: Vec<String> = (0..primes.len()).filter(|&j| !primes[j].is_linear()).map(label).collect();
    let mut caveats = Vec::new();
    if !nonlinear.is_empty() {
        caveats.push(format!("primality user-asserted for {}", nonlinear.join(", ")));
        caveats.push("geometric irreducibility unverified for nonlinear inputs".to_string());
    }
    if base.is_some_and(|b| !b.is_linear()) {
        caveats.push("primality of the base ideal user-asserted".to_string());
    }
    Ok(Validation {
        n_vars,
        d,
        c: heights.iter().copied().max().unwrap(),
        heights,
        caveats,
    })
}

/// Per-characteristic result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharResult {
    pub characteristic: u64,
    /// `dim H̃_{t-1}(Δ; k)`.
    pub w: usize,
    /// `|Λ_t| - rank Φ`.
    pub phi_coker: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// `cd ≤ v` holds.
    pub vanishes: bool,
    /// `H^{v+1}_I = 0` or `H^{v+1}_I ≅ (H^d_m)^w`.
    pub conclusion: String,
    /// `cd ≤ v` or `cd = v+1`.
    pub cd: String,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsTable {
    pub faltings: i64,
    pub hl: i64,
    /// `(p, bound_sum)`.
    pub sum: Vec<(i64, i64)>,
    /// `(p, bound_main)`, `None` where `d ≤ (p+1)c`.
    pub main: Vec<(i64, Option<i64>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaStats {
    pub dim_cap: usize,
    pub counts: Vec<usize>,
    pub lambda_t: Vec<Simplex>,
    pub lambda_t1: Vec<Simplex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub ring: String,
    pub prime_names: Vec<String>,
    pub base: Option<String>,
    pub n_vars: usize,
    pub d: usize,
    pub heights: Vec<usize>,
    pub c: usize,
    pub n_primes: usize,
    pub t: usize,
    pub v: usize,
    pub delta: DeltaStats,
    pub per_char: Vec<CharResult>,
    pub bounds: BoundsTable,
    pub caveats: Vec<String>,
    /// SHA-256 of the input, set by whoever read it.
    pub input_digest: Option<String>,
    pub complex: SimplicialComplex,
}

impl AnalysisReport {
    pub fn result_for(&self, characteristic: u64) -> Option<&CharResult> {
        self.per_char.iter().find(|r| r.characteristic == characteristic)
    }
}

/// Largest `p` tabulated for the sum and main bounds.
pub const MAX_TABULATED_P: i64 = 3;

pub fn ring_label(ring: &RingContext) -> String {
    format!("{}[{}]", ring.field(), ring.names().join(","))
}

/// `t = ⌊(d-2)/c⌋` and `v = d - 1 - t`, for `d ≥ 2`, `c ≥ 1`.
pub fn t_and_v(d: usize, c: usize) -> (usize, usize) {
    let t = (d - 2) / c;
    (t, d - 1 - t)
}

fn verdict(d: usize, c: usize, t: usize, v: usize, w: usize) -> Result<Verdict, AnalysisError> {
    let divides = (d - 1).is_multiple_of(c);
    if w > 0 && divides {
        return Err(AnalysisError::Internal(format!(
            "w = {w} although c = {c} divides d - 1 = {}",
            d - 1
        )));
    }
    let mut notes = Vec::new();
    if divides {
        notes.push(format!("c | (d-1): cd ≤ {v} holds unconditionally"));
    }
    if t == 0 {
        notes.push(format!("t = 0: Δ is nonempty, so the verdict is the bound cd ≤ {v}"));
    }
    Ok(if w == 0 {
        Verdict {
            vanishes: true,
            conclusion: format!("H^{}_I = 0", v + 1),
            cd: format!("cd ≤ {v}"),
            notes,
        }
    } else {
        Verdict {
            vanishes: false,
            conclusion: format!("H^{}_I ≅ (H^{d}_m)^{w}", v + 1),
            cd: format!("cd = {}", v + 1),
            notes,
        }
    })
}

fn bounds_table(d: usize, c: usize) -> BoundsTable {
    let (d, c) = (d as i64, c as i64);
    BoundsTable {
        faltings: bound_faltings(d, c).expect("c ≥ 1"),
        hl: bound_hl(d, c).expect("c ≥ 1"),
        sum: (0..=MAX_TABULATED_P).map(|p| (p, bound_sum(d, c, p).expect("c ≥ 1"))).collect(),
        main: (0..=MAX_TABULATED_P).map(|p| (p, bound_main(d, c, p).ok())).collect(),
    }
}

/// Runs the full pipeline. `dim_cap` defaults to `t + 1`.
pub fn analyze(
    primes: &[Ideal],
    names: &[String],
    base: Option<&Ideal>,
    characteristics: &[FieldSpec],
    dim_cap: Option<usize>,
) -> Result<AnalysisReport, AnalysisError> {
    let val = validate_hypotheses(primes, names, base)?;
    let (d, c) = (val.d, val.c);
    let (t, v) = t_and_v(d, c);
    let cap = dim_cap.unwrap_or(t + 1);
    if cap < t + 1 {
        return Err(AnalysisError::Usage(format!("dim cap {cap} is below t + 1 = {}", t + 1)));
    }
    let n = primes.len();
    let complex = build_delta(primes, base, cap).map_err(|e| match e {
        DeltaError::Ideal(e) => AnalysisError::from(e),
        other => AnalysisError::Internal(other.to_string()),
    })?;

    let internal = |msg: String| AnalysisError::Internal(msg);
    if t >= 1 && complex.has_full_skeleton(t - 1) != Some(true) {
        return Err(internal(format!("Δ lacks part of its {}-skeleton", t - 1)));
    }
    if n * c < d {
        let full = complex.counts().iter().enumerate().all(|(s, &k)| k == crate::complex::binomial(n, s + 1));
        if !full {
            return Err(internal("n_primes < d/c but Δ is not the full simplex".into()));
        }
    }

    let phi = phi_map(&complex, t).map_err(|e| internal(e.to_string()))?;
    let mut per_char = Vec::with_capacity(characteristics.len());
    for &field in characteristics {
        let w = *reduced_betti(&complex, field, &[t as i64 - 1])
            .map_err(|e| internal(e.to_string()))?
            .reduced
            .values()
            .next()
            .unwrap();
        let relative = relative_betti_pair(&complex, field, t).map_err(|e| internal(e.to_string()))?;
        let phi_coker = phi_cokernel_dim(&phi, field);
        if w != phi_coker || w != relative {
            return Err(internal(format!(
                "char {}: dim H̃_{{t-1}} = {w}, dim H_t(S,Δ) = {relative}, coker Φ = {phi_coker}",
                field.characteristic()
            )));
        }
        if n * c < d && w != 0 {
            return Err(internal(format!("n_primes < d/c but w = {w}")));
        }
        per_char.push(CharResult {
            characteristic: field.characteristic(),
            w,
            phi_coker,
            verdict: verdict(d, c, t, v, w)?,
        });
    }

    let mut caveats = val.caveats;
    let base_char = primes[0].ring().field().characteristic();
    if characteristics.iter().any(|f| f.characteristic() != base_char) {
        caveats.push(format!(
            "coefficient characteristics differ from the base field characteristic {base_char}; Δ is taken over the base field"
        ));
    }

    Ok(AnalysisReport {
        ring: ring_label(primes[0].ring()),
        prime_names: if names.len() == n { names.to_vec() } else { default_names(n) },
        base: base.map(|b| b.to_string()),
        n_vars: val.n_vars,
        d,
        heights: val.heights,
        c,
        n_primes: n,
        t,
        v,
        delta: DeltaStats {
            dim_cap: cap,
            counts: complex.counts(),
            lambda_t: phi.target.clone(),
            lambda_t1: phi.source.clone(),
        },
        per_char,
        bounds: bounds_table(d, c),
        caveats,
        input_digest: None,
        complex,
    })
}

/// One report per base prime and the conjunction of their verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPrimeVerdict {
    pub d: usize,
    pub reports: Vec<AnalysisReport>,
    /// Characteristic -> `cd ≤ v` for every base.
    pub overall: BTreeMap<u64, bool>,
}

pub fn analyze_multi_base(
    primes: &[Ideal],
    names: &[String],
    bases: &[Ideal],
    characteristics: &[FieldSpec],
    dim_cap: Option<usize>,
) -> Result<MultiPrimeVerdict, AnalysisError> {
    let mut d = None;
    for b in bases {
        let KrullDimension::Finite(db) = b.krull_dimension() else {
            return Err(HypothesisError::UnitBase.into());
        };
        match d {
            None => d = Some(db),
            Some(first) if first != db => {
                return Err(HypothesisError::UnequalBaseDimensions { first, other: db }.into())
            }
            _ => {}
        }
    }
    let d = d.ok_or_else(|| AnalysisError::Usage("no base ideals given".into()))?;
    let reports = bases
        .iter()
        .map(|b| analyze(primes, names, Some(b), characteristics, dim_cap))
        .collect::<Result<Vec<_>, _>>()?;
    let overall = characteristics
        .iter()
        .map(|f| {
            let ch = f.characteristic();
            (ch, reports.iter().all(|r| r.result_for(ch).is_some_and(|c| c.verdict.vanishes)))
        })
        .collect();
    Ok(MultiPrimeVerdict { d, reports, overall })
}

fn linear_form(ring: &Arc<RingContext>, coeffs: &[(usize, FieldElement)]) -> Polynomial {
    coeffs.iter().fold(Polynomial::zero(ring), |acc, (i, c)| {
        acc.checked_add(&Polynomial::var(ring, i - 1).scale(c)).expect("same ring")
    })
}

/// The six planes in six variables whose Δ is the six-vertex real
/// projective plane. Needs `a ∉ {0, 1, -1}` and `a² + a - 1 ≠ 0`.
pub fn example_hl(a: &FieldElement, ring: &Arc<RingContext>) -> Result<Vec<Ideal>, AnalysisError> {
    if ring.n_vars() != 6 {
        return Err(AnalysisError::Usage(format!("the example needs 6 variables, got {}", ring.n_vars())));
    }
    let field = ring.field();
    if a.field() != field {
        return Err(AnalysisError::Usage(format!("a lies in {} but the ring is over {field}", a.field())));
    }
    let one = field.one();
    let bad = |condition| -> AnalysisError {
        HypothesisError::BadParameter {
            a: a.to_string(),
            condition,
        }
        .into()
    };
    if a.is_zero() {
        return Err(bad("a ≠ 0"));
    }
    if a.is_one() {
        return Err(bad("a ≠ 1"));
    }
    if a.negate().is_one() {
        return Err(bad("a ≠ -1"));
    }
    let golden = a.pow(2).checked_add(a).and_then(|x| x.checked_sub(&one)).expect("same field");
    if golden.is_zero() {
        return Err(bad("a² + a - 1 ≠ 0"));
    }
    let inv_a = a.inverse().expect("a ≠ 0");
    let inv_g = golden.inverse().expect("a² + a - 1 ≠ 0");
    let lf = |c: &[(usize, FieldElement)]| linear_form(ring, c);
    let gens: Vec<Vec<Polynomial>> = vec![
        vec![lf(&[(1, one.clone())]), lf(&[(2, one.clone())])],
        vec![lf(&[(3, one.clone())]), lf(&[(4, one.clone())])],
        vec![lf(&[(5, one.clone())]), lf(&[(6, one.clone())])],
        vec![
            lf(&[(1, one.clone()), (3, one.clone()), (6, one.clone())]),
            lf(&[(1, inv_g), (4, one.clone()), (6, inv_a.clone())]),
        ],
        vec![
            lf(&[(1, one.clone()), (3, one.clone()), (5, one.clone())]),
            lf(&[(2, one.clone()), (3, a.clone()), (5, one.clone())]),
        ],
        vec![
            lf(&[(2, one.clone()), (4, one.clone()), (5, one.clone())]),
            lf(&[(2, inv_a), (4, a.clone()), (6, one.clone())]),
        ],
    ];
    gens.into_iter()
        .map(|g| Ideal::new(ring, g).map_err(AnalysisError::from))
        .collect()
}
