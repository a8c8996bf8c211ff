use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed};

use super::{same_ring, Monomial, MonomialOrder, PolyError, RingContext};
use crate::field::{primitive_scale, FieldElement};

/// A polynomial whose terms are kept strictly decreasing in `order`, with no
/// zero coefficients.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Arc<RingContext>,
    order: MonomialOrder,
    terms: Vec<(Monomial, FieldElement)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if !same_ring(&self.ring, &other.ring) {
            return false;
        }
        if self.order == other.order {
            self.terms == other.terms
        } else {
            self.terms == other.with_order(self.order).terms
        }
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<RingContext>) -> Self {
        Self {
            ring: ring.clone(),
            order: MonomialOrder::default(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<RingContext>, c: FieldElement) -> Self {
        Self::from_terms(ring, MonomialOrder::default(), vec![(Monomial::one(ring.n_vars()), c)])
    }

    /// The variable with 0-based `index`.
    pub fn var(ring: &Arc<RingContext>, index: usize) -> Self {
        Self::from_terms(
            ring,
            MonomialOrder::default(),
            vec![(Monomial::var(ring.n_vars(), index, 1), ring.field().one())],
        )
    }

    /// Builds a normalized polynomial from arbitrary terms: sorts, merges
    /// duplicates and drops zeros.
    pub fn from_terms(
        ring: &Arc<RingContext>,
        order: MonomialOrder,
        mut terms: Vec<(Monomial, FieldElement)>,
    ) -> Self {
        debug_assert!(terms.iter().all(|(m, c)| m.n_vars() == ring.n_vars() && c.field() == ring.field()));
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self {
            ring: ring.clone(),
            order,
            terms: out,
        }
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Re-sorts the terms for another order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Self {
            ring: self.ring.clone(),
            order,
            terms,
        }
    }

    /// Leading term in the polynomial's own order.
    pub fn leading(&self) -> Option<&(Monomial, FieldElement)> {
        self.terms.first()
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, FieldElement)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElement> {
        self.terms.first().map(|t| &t.1)
    }

    /// The maximal term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Result<(Monomial, FieldElement), PolyError> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(&a.0, &b.0))
            .cloned()
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Highest total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// Nonzero with every term of degree one.
    pub fn is_linear_form(&self) -> bool {
        !self.terms.is_empty() && self.terms.iter().all(|(m, _)| m.degree() == 1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let other = other.with_order(self.order);
        Ok(self.merge(&other.terms, None))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&other.neg_poly())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let other = other.with_order(self.order);
        let mut acc = Polynomial {
            ring: self.ring.clone(),
            order: self.order,
            terms: Vec::new(),
        };
        for (m, c) in &self.terms {
            let shifted = other.mul_term(m, c);
            acc = acc.merge(&shifted.terms, None);
        }
        Ok(acc)
    }

    /// `self + coeff * rhs_terms`, both sides sorted in `self.order`.
    fn merge(&self, rhs: &[(Monomial, FieldElement)], coeff: Option<&FieldElement>) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.len());
        let mut a = self.terms.iter().peekable();
        let mut b = rhs.iter().peekable();
        let scale = |c: &FieldElement| match coeff {
            Some(k) => k * c,
            None => c.clone(),
        };
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match self.order.compare(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let y = b.next().unwrap();
                        out.push((y.0.clone(), scale(&y.1)));
                    }
                    Ordering::Equal => {
                        let (x, y) = (a.next().unwrap(), b.next().unwrap());
                        let c = &x.1 + &scale(&y.1);
                        if !c.is_zero() {
                            out.push((x.0.clone(), c));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let y = b.next().unwrap();
                    out.push((y.0.clone(), scale(&y.1)));
                }
                (None, None) => break,
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self {
            ring: self.ring.clone(),
            order: self.order,
            terms: out,
        }
    }

    /// `self - coeff * monomial * other`; the workhorse of reduction.
    pub(crate) fn sub_scaled_shift(&self, coeff: &FieldElement, monomial: &Monomial, other: &Self) -> Self {
        let shifted: Vec<_> = other
            .terms
            .iter()
            .map(|(m, c)| (m.mul(monomial), c.clone()))
            .collect();
        let shifted = if other.order == self.order {
            shifted
        } else {
            let mut s = shifted;
            s.sort_by(|a, b| self.order.compare(&b.0, &a.0));
            s
        };
        self.merge(&shifted, Some(&coeff.negate()))
    }

    pub fn mul_term(&self, monomial: &Monomial, coeff: &FieldElement) -> Self {
        if coeff.is_zero() {
            return Self {
                ring: self.ring.clone(),
                order: self.order,
                terms: Vec::new(),
            };
        }
        Self {
            ring: self.ring.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(monomial), c * coeff))
                .collect(),
        }
    }

    pub fn scale(&self, coeff: &FieldElement) -> Self {
        self.mul_term(&Monomial::one(self.ring.n_vars()), coeff)
    }

    fn neg_poly(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negate())).collect(),
        }
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// Over Q: the integer multiple with content one and positive leading
    /// coefficient. Over GF(p): unchanged.
    pub fn primitive(&self) -> Self {
        if !self.ring.field().is_rational() || self.is_zero() {
            return self.clone();
        }
        let mut k = primitive_scale(self.terms.iter().filter_map(|(_, c)| c.as_rational()));
        if self.terms[0].1.as_rational().is_some_and(|c| c.is_negative()) {
            k = -k;
        }
        if k.is_one() {
            return self.clone();
        }
        self.scale(&FieldElement::Rational(k))
    }

    /// Moves the polynomial into `target`, whose variables are this ring's
    /// preceded by `shift` new ones.
    pub(crate) fn embed_shifted(&self, target: &Arc<RingContext>, shift: usize, order: MonomialOrder) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; shift];
                e.extend_from_slice(m.exponents());
                (Monomial::from_exponents(e), c.clone())
            })
            .collect();
        Self::from_terms(target, order, terms)
    }

    /// Inverse of [`Self::embed_shifted`]; `None` if a dropped variable occurs.
    pub(crate) fn drop_leading_vars(&self, target: &Arc<RingContext>, shift: usize) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.exponents()[..shift].iter().any(|e| *e > 0) {
                return None;
            }
            terms.push((Monomial::from_exponents(m.exponents()[shift..].to_vec()), c.clone()));
        }
        Some(Self::from_terms(target, MonomialOrder::default(), terms))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.names();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (negative, magnitude) = match c.as_rational() {
                Some(r) if r.is_negative() => (true, FieldElement::Rational(-r)),
                _ => (false, c.clone()),
            };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                m.write_with_names(f, names)?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Self) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Self) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Self) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn ring(p: u64, n: usize) -> Arc<RingContext> {
        RingContext::standard(FieldSpec::new(p).unwrap(), n).unwrap()
    }

    fn x(r: &Arc<RingContext>, i: usize) -> Polynomial {
        Polynomial::var(r, i - 1)
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring(0, 2);
        assert_eq!(&(&x(&r, 1) + &x(&r, 2)) + &(-&x(&r, 2)), x(&r, 1));
        let prod = &x(&r, 1) * &x(&r, 2);
        assert_eq!(prod.terms().len(), 1);
        assert_eq!(prod.terms()[0].0.exponents(), &[1, 1]);

        let r2 = ring(2, 2);
        let s = &x(&r2, 1) + &x(&r2, 2);
        assert_eq!(&s * &s, &(&x(&r2, 1) * &x(&r2, 1)) + &(&x(&r2, 2) * &x(&r2, 2)));
    }

    #[test]
    fn ring_mismatch() {
        let a = ring(7, 2);
        let b = ring(5, 2);
        assert_eq!(x(&a, 1).checked_add(&x(&b, 1)), Err(PolyError::RingMismatch));
        assert_eq!(x(&a, 1).checked_mul(&x(&b, 1)), Err(PolyError::RingMismatch));
        // structurally equal rings are interchangeable
        let a2 = ring(7, 2);
        assert!(x(&a, 1).checked_add(&x(&a2, 2)).is_ok());
    }

    #[test]
    fn leading_terms() {
        let r = ring(0, 2);
        let (x1, x2) = (x(&r, 1), x(&r, 2));
        let f = &(&(&x1 * &x1) * &x2) + &(&x1 * &(&x2 * &x2));
        let (lm, _) = f.leading_term(MonomialOrder::Grevlex).unwrap();
        assert_eq!(lm.exponents(), &[2, 1]);
        let g = &(&(&x2 * &x2) * &x2) + &x1;
        assert_eq!(g.leading_term(MonomialOrder::Lex).unwrap().0.exponents(), &[1, 0]);
        let h = &(&(&(&x2 * &x2) * &(&x2 * &x2)) * &x2) + &x1;
        assert_eq!(h.leading_term(MonomialOrder::Elimination(1)).unwrap().0.exponents(), &[1, 0]);
        assert_eq!(Polynomial::zero(&r).leading_term(MonomialOrder::Lex), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn homogeneity() {
        let r = ring(7, 6);
        let f = &(&x(&r, 1) + &x(&r, 3)) + &x(&r, 6);
        assert!(f.is_homogeneous());
        assert!(f.is_linear_form());
        let g = &(&x(&r, 1) * &x(&r, 1)) + &x(&r, 2);
        assert!(!g.is_homogeneous());
        assert!(Polynomial::zero(&r).is_homogeneous());
        assert!(!Polynomial::zero(&r).is_linear_form());
    }

    #[test]
    fn display_forms() {
        let r = ring(0, 3);
        let half = FieldElement::Rational(BigRational::new(1.into(), 2.into()));
        let f = &(&x(&r, 1).scale(&half) - &(&x(&r, 2) * &x(&r, 2))) + &Polynomial::constant(&r, r.field().from_i64(-3));
        assert_eq!(f.to_string(), "-X2^2 + 1/2*X1 - 3");
        let r7 = ring(7, 2);
        assert_eq!((&x(&r7, 1) - &x(&r7, 2)).to_string(), "X1 + 6*X2");
        assert_eq!(Polynomial::zero(&r7).to_string(), "0");
    }

    #[test]
    fn primitive_part() {
        let r = ring(0, 2);
        let q = |n: i64, d: i64| FieldElement::Rational(BigRational::new(n.into(), d.into()));
        let f = &x(&r, 1).scale(&q(-2, 3)) + &x(&r, 2).scale(&q(4, 9));
        let p = f.primitive();
        assert_eq!(p, &x(&r, 1).scale(&q(3, 1)) - &x(&r, 2).scale(&q(2, 1)));
    }

    fn poly_strategy(r: Arc<RingContext>) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -5i64..5), 0..6).prop_map(move |ts| {
            let terms = ts
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(e), r.field().from_i64(c)))
                .collect();
            Polynomial::from_terms(&r, MonomialOrder::Grevlex, terms)
        })
    }

    proptest! {
        #[test]
        fn leading_term_is_multiplicative(f in poly_strategy(ring(7, 3)), g in poly_strategy(ring(7, 3))) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            for ord in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Elimination(1)] {
                let (mf, cf) = f.leading_term(ord).unwrap();
                let (mg, cg) = g.leading_term(ord).unwrap();
                let (m, c) = (&f * &g).leading_term(ord).unwrap();
                prop_assert_eq!(m, mf.mul(&mg));
                prop_assert_eq!(c, &cf * &cg);
            }
        }

        #[test]
        fn ring_axioms(f in poly_strategy(ring(0, 3)), g in poly_strategy(ring(0, 3)), h in poly_strategy(ring(0, 3))) {
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn normalization_is_idempotent(f in poly_strategy(ring(5, 3))) {
            let again = Polynomial::from_terms(f.ring(), f.order(), f.terms().to_vec());
            prop_assert_eq!(again.terms(), f.terms());
            let lex = f.with_order(MonomialOrder::Lex);
            prop_assert_eq!(&lex, &f);
            for w in lex.terms().windows(2) {
                prop_assert_eq!(MonomialOrder::Lex.compare(&w[0].0, &w[1].0), Ordering::Greater);
            }
        }
    }
}
