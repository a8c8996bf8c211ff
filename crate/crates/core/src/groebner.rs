//! Buchberger's algorithm, normal forms and reduced Gröbner bases.
//!
//! Pairs are processed by the normal strategy (smallest lcm first, ties broken
//! by the monomial order and then by index) and pruned with Buchberger's
//! product and chain criteria. Every collection is ordered, so the output is
//! a deterministic function of the input sequence.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::poly::{same_ring, Monomial, MonomialOrder, Polynomial, RingContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("no generators given, so the ring is unknown")]
    NoRingContext,
    #[error("generators belong to different rings")]
    RingMismatch,
}

/// A reduced Gröbner basis: monic elements, sorted by decreasing leading
/// monomial, no term of one divisible by the leading monomial of another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<RingContext>,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Basis of the zero ideal.
    pub fn empty(ring: &Arc<RingContext>, order: MonomialOrder) -> Self {
        Self {
            ring: ring.clone(),
            order,
            elements: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().filter_map(|g| g.leading_monomial())
    }

    /// True iff the basis generates the whole ring.
    pub fn is_unit(&self) -> bool {
        self.leading_monomials().any(|m| m.is_one())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        normal_form(f, self)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        ideal_membership(f, self)
    }

    /// Checks the defining properties directly: monic, reduced, and every
    /// S-polynomial reducing to zero.
    pub fn is_valid_reduced(&self) -> bool {
        let lms: Vec<&Monomial> = self.leading_monomials().collect();
        if lms.len() != self.elements.len() {
            return false;
        }
        for (i, g) in self.elements.iter().enumerate() {
            if !g.leading_coefficient().is_some_and(|c| c.is_one()) {
                return false;
            }
            for (m, _) in g.terms() {
                if lms.iter().enumerate().any(|(j, l)| j != i && l.divides(m)) {
                    return false;
                }
            }
        }
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let s = s_polynomial(&self.elements[i], &self.elements[j]);
                if !reduce_with(&s, &self.elements, |c| c[0]).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// `lcm/LT(f) * f - lcm/LT(g) * g` in `f`'s order. Both inputs nonzero.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let g = g.with_order(f.order());
    let (fm, fc) = f.leading().expect("nonzero S-pair operand");
    let (gm, gc) = g.leading().expect("nonzero S-pair operand");
    let lcm = fm.lcm(gm);
    let left = f.mul_term(&lcm.div(fm).unwrap(), &gc.clone());
    // left - fc * (lcm/gm) * g, i.e. gc*(lcm/fm)*f - fc*(lcm/gm)*g
    left.sub_scaled_shift(fc, &lcm.div(gm).unwrap(), &g)
}

/// Full reduction of `f` by `divisors`, letting `choose` pick which eligible
/// divisor (by index into `divisors`) to use at each step. When `divisors` is
/// a Gröbner basis the result does not depend on the choices.
pub fn reduce_with<F>(f: &Polynomial, divisors: &[Polynomial], mut choose: F) -> Polynomial
where
    F: FnMut(&[usize]) -> usize,
{
    let order = f.order();
    let divisors: Vec<Polynomial> = divisors
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| d.with_order(order))
        .collect();
    let mut rest = f.clone();
    let mut remainder = Vec::new();
    let mut eligible = Vec::new();
    while let Some((m, c)) = rest.leading().cloned() {
        eligible.clear();
        eligible.extend(
            divisors
                .iter()
                .enumerate()
                .filter(|(_, d)| d.leading_monomial().unwrap().divides(&m))
                .map(|(i, _)| i),
        );
        if eligible.is_empty() {
            remainder.push(rest.pop_leading().unwrap());
            continue;
        }
        let pick = choose(&eligible);
        debug_assert!(eligible.contains(&pick));
        let d = &divisors[pick];
        let (dm, dc) = d.leading().unwrap();
        let coeff = c.checked_div(dc).expect("same field, nonzero divisor");
        rest = rest.sub_scaled_shift(&coeff, &m.div(dm).unwrap(), d);
    }
    Polynomial::from_terms(f.ring(), order, remainder)
}

/// The unique remainder of `f` modulo the basis.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial, GroebnerError> {
    if !same_ring(f.ring(), &basis.ring) {
        return Err(GroebnerError::RingMismatch);
    }
    let f = f.with_order(basis.order);
    Ok(reduce_with(&f, &basis.elements, |c| c[0]))
}

pub fn ideal_membership(f: &Polynomial, basis: &GroebnerBasis) -> Result<bool, GroebnerError> {
    Ok(normal_form(f, basis)?.is_zero())
}

/// Reduced Gröbner basis of the ideal generated by `generators` under `order`.
pub fn buchberger(generators: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    let ring = generators.first().ok_or(GroebnerError::NoRingContext)?.ring().clone();
    if generators.iter().any(|g| !same_ring(g.ring(), &ring)) {
        return Err(GroebnerError::RingMismatch);
    }
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();

    let insert = |basis: &mut Vec<Polynomial>, pending: &mut BTreeSet<(usize, usize)>, p: Polynomial| {
        let k = basis.len();
        for i in 0..k {
            pending.insert((i, k));
        }
        basis.push(p);
    };

    for g in generators.iter().filter(|g| !g.is_zero()) {
        let g = reduce_with(&g.with_order(order), &basis, |c| c[0]);
        if !g.is_zero() {
            insert(&mut basis, &mut pending, normalize(&g));
        }
    }

    while let Some((i, j)) = select_pair(&basis, &pending, order) {
        pending.remove(&(i, j));
        let (lm_i, lm_j) = (
            basis[i].leading_monomial().unwrap().clone(),
            basis[j].leading_monomial().unwrap().clone(),
        );
        if lm_i.is_coprime(&lm_j) {
            continue;
        }
        let lcm = lm_i.lcm(&lm_j);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
                && basis[k].leading_monomial().unwrap().divides(&lcm)
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]).primitive();
        let r = reduce_with(&s, &basis, |c| c[0]);
        if !r.is_zero() {
            insert(&mut basis, &mut pending, normalize(&r));
        }
    }

    Ok(GroebnerBasis {
        elements: reduce_basis(basis, order),
        ring,
        order,
    })
}

fn normalize(p: &Polynomial) -> Polynomial {
    if p.ring().field().is_rational() {
        p.primitive()
    } else {
        p.monic()
    }
}

fn select_pair(basis: &[Polynomial], pending: &BTreeSet<(usize, usize)>, order: MonomialOrder) -> Option<(usize, usize)> {
    let lcm = |&(i, j): &(usize, usize)| {
        basis[i]
            .leading_monomial()
            .unwrap()
            .lcm(basis[j].leading_monomial().unwrap())
    };
    pending
        .iter()
        .map(|p| (lcm(p), *p))
        .min_by(|(la, pa), (lb, pb)| {
            la.degree()
                .cmp(&lb.degree())
                .then_with(|| order.compare(la, lb))
                .then_with(|| pa.cmp(pb))
        })
        .map(|(_, p)| p)
}

/// Minimalize, inter-reduce, make monic, sort by decreasing leading monomial.
fn reduce_basis(mut basis: Vec<Polynomial>, order: MonomialOrder) -> Vec<Polynomial> {
    basis.sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lm)) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        reduced.push(reduce_with(&minimal[i], &others, |c| c[0]).monic());
    }
    reduced.sort_by(|a, b| order.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    reduced
}
