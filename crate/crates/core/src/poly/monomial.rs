use std::cmp::Ordering;
use std::fmt;

/// Exponent vector with its cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn one(n_vars: usize) -> Self {
        Self {
            exponents: vec![0; n_vars],
            degree: 0,
        }
    }

    /// `x_index ^ power` (0-based index).
    pub fn var(n_vars: usize, index: usize, power: u32) -> Self {
        let mut exponents = vec![0; n_vars];
        exponents[index] = power;
        Self {
            exponents,
            degree: power,
        }
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        Self { exponents, degree }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn n_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree
            && self
                .exponents
                .iter()
                .zip(&other.exponents)
                .all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        Some(Self {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a - b)
                .collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self::from_exponents(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// True when the two monomials share no variable.
    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` set iff variable `i` occurs. Only meaningful for at most 64
    /// variables.
    pub fn support_mask(&self) -> u64 {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << i))
    }

    /// Index of the only variable that occurs, if the monomial is a pure power.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, e) in self.exponents.iter().enumerate() {
            if *e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub(crate) fn write_with_names(&self, f: &mut fmt::Formatter<'_>, names: &[String]) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (e, name) in self.exponents.iter().zip(names) {
            if *e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Global monomial orders. Every variant is a multiplicative well-order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Block order: the first `k` variables compared by grevlex, ties broken
    /// by grevlex on the rest. Anything involving a leading-block variable
    /// outranks every monomial in the remaining variables alone.
    Elimination(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exponents.cmp(&b.exponents),
            MonomialOrder::Grevlex => grevlex(&a.exponents, &b.exponents, a.degree, b.degree),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.exponents.len());
                let (a1, a2) = a.exponents.split_at(k);
                let (b1, b2) = b.exponents.split_at(k);
                let da: u32 = a1.iter().sum();
                let db: u32 = b1.iter().sum();
                grevlex(a1, b1, da, db)
                    .then_with(|| grevlex(a2, b2, a.degree - da, b.degree - db))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination(k) => format!("elimination({k})"),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32], da: u32, db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable is larger
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}
