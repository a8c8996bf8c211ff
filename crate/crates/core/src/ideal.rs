//! Homogeneous ideals and the ideal-theoretic primitives built on Gröbner
//! bases: sums, intersections, Krull dimension, heights and m-primarity.
//!
//! Every ideal here is homogeneous, so dimension and m-primarity computed in
//! the polynomial ring agree with the local (power-series) answers at the
//! origin. `m` is always the ideal of all variables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::groebner::{buchberger, GroebnerBasis, GroebnerError};
use crate::poly::{same_ring, MonomialOrder, Polynomial, RingContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("generator {index} is not homogeneous: {poly}")]
    Inhomogeneous { index: usize, poly: String },
    #[error("ideals or generators belong to different rings")]
    RingMismatch,
    #[error("empty list of ideals")]
    NoIdeals,
    #[error("ideal #{} is the unit ideal", index + 1)]
    UnitIdeal { index: usize },
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// Dimension of `R/I`; the unit ideal has an empty variety and no dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KrullDimension {
    Empty,
    Finite(usize),
}

impl KrullDimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            KrullDimension::Empty => None,
            KrullDimension::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for KrullDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KrullDimension::Empty => write!(f, "empty"),
            KrullDimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A homogeneous ideal with lazily computed, per-order cached bases.
#[derive(Debug)]
pub struct Ideal {
    ring: Arc<RingContext>,
    generators: Vec<Polynomial>,
    bases: Mutex<BTreeMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            bases: Mutex::new(self.bases.lock().unwrap().clone()),
        }
    }
}

impl PartialEq for Ideal {
    /// Equality of ideals, not of generating sets.
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring)
            && self.basis(MonomialOrder::Grevlex).elements() == other.basis(MonomialOrder::Grevlex).elements()
    }
}

impl Ideal {
    /// Rejects inhomogeneous generators and generators from another ring.
    pub fn new(ring: &Arc<RingContext>, generators: Vec<Polynomial>) -> Result<Self, IdealError> {
        for (index, g) in generators.iter().enumerate() {
            if !same_ring(g.ring(), ring) {
                return Err(IdealError::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(IdealError::Inhomogeneous {
                    index,
                    poly: g.to_string(),
                });
            }
        }
        Ok(Self {
            ring: ring.clone(),
            generators,
            bases: Mutex::new(BTreeMap::new()),
        })
    }

    /// The homogeneous maximal ideal `(X1, ..., Xn)`.
    pub fn maximal(ring: &Arc<RingContext>) -> Self {
        Self::new(ring, (0..ring.n_vars()).map(|i| Polynomial::var(ring, i)).collect())
            .expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced Gröbner basis under `order`, computed once and cached.
    pub fn basis(&self, order: MonomialOrder) -> Arc<GroebnerBasis> {
        if let Some(b) = self.bases.lock().unwrap().get(&order) {
            return b.clone();
        }
        let basis = Arc::new(if self.generators.is_empty() {
            GroebnerBasis::empty(&self.ring, order)
        } else {
            buchberger(&self.generators, order).expect("generators share the ideal's ring")
        });
        self.bases
            .lock()
            .unwrap()
            .entry(order)
            .or_insert(basis)
            .clone()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, IdealError> {
        Ok(self.basis(MonomialOrder::Grevlex).contains(f)?)
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool, IdealError> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(IdealError::RingMismatch);
        }
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> bool {
        self.basis(MonomialOrder::Grevlex).is_unit()
    }

    /// Every nonzero generator is a linear form, so the ideal is the ideal of
    /// a linear subspace: prime, and prime after any field extension.
    pub fn is_linear(&self) -> bool {
        self.generators
            .iter()
            .filter(|g| !g.is_zero())
            .all(|g| g.is_linear_form())
    }

    pub fn krull_dimension(&self) -> KrullDimension {
        krull_dimension(self)
    }

    pub fn is_m_primary(&self) -> bool {
        is_m_primary(self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Concatenated generators, exact duplicates removed. No basis is computed.
pub fn ideal_sum(parts: &[&Ideal]) -> Result<Ideal, IdealError> {
    let first = parts.first().ok_or(IdealError::NoIdeals)?;
    let mut generators: Vec<Polynomial> = Vec::new();
    for part in parts {
        if !same_ring(&part.ring, &first.ring) {
            return Err(IdealError::RingMismatch);
        }
        for g in &part.generators {
            if !generators.contains(g) {
                generators.push(g.clone());
            }
        }
    }
    Ideal::new(&first.ring, generators)
}

/// `a ∩ b` by elimination: the `t`-free part of a basis of `t·a + (1−t)·b`
/// under an order eliminating `t`. Each returned generator is re-checked to
/// lie in both inputs.
pub fn ideal_intersection(a: &Ideal, b: &Ideal) -> Result<Ideal, IdealError> {
    if !same_ring(&a.ring, &b.ring) {
        return Err(IdealError::RingMismatch);
    }
    let ring = &a.ring;
    let mut t_name = String::from("t");
    while ring.var_index(&t_name).is_some() {
        t_name.push('_');
    }
    let big = ring.with_leading_var(&t_name);
    let order = MonomialOrder::Elimination(1);
    let t = Polynomial::var(&big, 0);
    let one_minus_t = &Polynomial::constant(&big, big.field().one()) - &t;

    let mut gens = Vec::new();
    for f in a.generators.iter().filter(|f| !f.is_zero()) {
        gens.push(&t * &f.embed_shifted(&big, 1, order));
    }
    for g in b.generators.iter().filter(|g| !g.is_zero()) {
        gens.push(&one_minus_t * &g.embed_shifted(&big, 1, order));
    }
    if gens.is_empty() {
        return Ideal::new(ring, Vec::new());
    }
    let basis = buchberger(&gens, order)?;
    let kept: Vec<Polynomial> = basis
        .elements()
        .iter()
        .filter_map(|p| p.drop_leading_vars(ring, 1))
        .collect();
    let result = Ideal::new(ring, kept)?;
    for g in result.generators() {
        if !a.contains(g)? || !b.contains(g)? {
            return Err(IdealError::Internal(format!("intersection generator {g} escapes an input")));
        }
    }
    Ok(result)
}

/// `dim R/a`: the largest set of variables containing the support of no
/// leading monomial of the grevlex basis.
pub fn krull_dimension(a: &Ideal) -> KrullDimension {
    let basis = a.basis(MonomialOrder::Grevlex);
    if basis.is_unit() {
        return KrullDimension::Empty;
    }
    let n = a.ring.n_vars();
    assert!(n <= 64, "dimension search supports at most 64 variables");
    let masks: Vec<u64> = basis.leading_monomials().map(|m| m.support_mask()).collect();
    KrullDimension::Finite(max_independent(&masks, n))
}

fn max_independent(masks: &[u64], n: usize) -> usize {
    fn search(masks: &[u64], n: usize, var: usize, current: u64, size: usize, best: &mut usize) {
        if size + (n - var) <= *best {
            return;
        }
        if var == n {
            *best = size;
            return;
        }
        let with = current | (1u64 << var);
        if masks.iter().all(|m| m & !with != 0) {
            search(masks, n, var + 1, with, size + 1, best);
        }
        search(masks, n, var + 1, current, size, best);
    }
    let mut best = 0;
    search(masks, n, 0, 0, 0, &mut best);
    best
}

/// `√a = m`, i.e. every variable has a pure power among the leading
/// monomials (the unit ideal counts as m-primary and more).
pub fn is_m_primary(a: &Ideal) -> bool {
    let basis = a.basis(MonomialOrder::Grevlex);
    if basis.is_unit() {
        return true;
    }
    let mut covered = vec![false; a.ring.n_vars()];
    for m in basis.leading_monomials() {
        if let Some(i) = m.pure_power_var() {
            covered[i] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

/// Per-ideal dimensions and heights, with `c` the largest height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightProfile {
    pub dimensions: Vec<usize>,
    pub heights: Vec<usize>,
    pub c: usize,
    pub min_dim: usize,
}

pub fn height_profile(primes: &[Ideal]) -> Result<HeightProfile, IdealError> {
    if primes.is_empty() {
        return Err(IdealError::NoIdeals);
    }
    let mut dimensions = Vec::with_capacity(primes.len());
    for (index, p) in primes.iter().enumerate() {
        if !same_ring(&p.ring, &primes[0].ring) {
            return Err(IdealError::RingMismatch);
        }
        match p.krull_dimension() {
            KrullDimension::Empty => return Err(IdealError::UnitIdeal { index }),
            KrullDimension::Finite(d) => dimensions.push(d),
        }
    }
    let n = primes[0].ring.n_vars();
    let heights: Vec<usize> = dimensions.iter().map(|d| n - d).collect();
    Ok(HeightProfile {
        c: heights.iter().copied().max().unwrap(),
        min_dim: dimensions.iter().copied().min().unwrap(),
        dimensions,
        heights,
    })
}

/// Ordered pairs `(i, j)` (0-based, `i != j`) with `primes[i] ⊆ primes[j]`.
pub fn check_irredundant(primes: &[Ideal]) -> Result<Vec<(usize, usize)>, IdealError> {
    let mut violations = Vec::new();
    for (i, a) in primes.iter().enumerate() {
        for (j, b) in primes.iter().enumerate() {
            if i != j && a.is_subset_of(b)? {
                violations.push((i, j));
            }
        }
    }
    Ok(violations)
}
