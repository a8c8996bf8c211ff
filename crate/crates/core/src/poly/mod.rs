//! Sparse multivariate polynomials over an exact field.

mod monomial;
mod polynomial;

use std::sync::Arc;

use thiserror::Error;

use crate::field::FieldSpec;

pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
}

/// Coefficient field plus ordered variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    field: FieldSpec,
    names: Vec<String>,
}

impl RingContext {
    pub fn new(field: FieldSpec, names: Vec<String>) -> Result<Arc<Self>, PolyError> {
        if names.is_empty() {
            return Err(PolyError::InvalidRing("no variables".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(PolyError::InvalidRing("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(PolyError::InvalidRing(format!("duplicate variable {n}")));
            }
        }
        Ok(Arc::new(Self { field, names }))
    }

    /// Ring with variables `X1, ..., Xn`.
    pub fn standard(field: FieldSpec, n_vars: usize) -> Result<Arc<Self>, PolyError> {
        Self::new(field, (1..=n_vars).map(|i| format!("X{i}")).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn n_vars(&self) -> usize {
        self.names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same field, with `name` prepended as a new leading variable.
    pub(crate) fn with_leading_var(&self, name: &str) -> Arc<Self> {
        let mut names = vec![name.to_string()];
        names.extend(self.names.iter().cloned());
        Arc::new(Self {
            field: self.field,
            names,
        })
    }
}

pub(crate) fn same_ring(a: &Arc<RingContext>, b: &Arc<RingContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
