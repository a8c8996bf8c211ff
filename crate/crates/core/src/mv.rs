//! The degree-`d` row of the Mayer–Vietoris spectral sequence and the
//! vanishing bounds.
//!
//! Each `H^d` summand of the row is carried as a single coefficient, so the
//! row becomes a complex of vector spaces spanned by the non-simplices of Δ.
//! Its cokernel at `Λ_t` is the multiplicity `w` computed independently of
//! the homology engine.

use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex};
use crate::field::FieldSpec;
use crate::linalg::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MvError {
    #[error("Λ_{needed} is needed but the complex is only materialized up to {cap}")]
    CapTooSmall { needed: usize, cap: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("c must be at least 1 (got {0})")]
    BadHeight(i64),
    #[error("d and p must be non-negative (got d={d}, p={p})")]
    Negative { d: i64, p: i64 },
    #[error("the bound needs d > (p+1)c, but d={d}, c={c}, p={p}")]
    DimensionTooSmall { d: i64, c: i64, p: i64 },
}

/// The signed incidence map `Φ : k^{Λ_{t+1}} -> k^{Λ_t}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiMap {
    pub t: usize,
    pub source: Vec<Simplex>,
    pub target: Vec<Simplex>,
    /// `|target| x |source|`, entries in `{-1, 0, 1}`.
    pub matrix: IntMatrix,
}

fn lambda(complex: &SimplicialComplex, s: usize) -> Result<Vec<Simplex>, MvError> {
    complex.non_simplices(s).or_else(|_| {
        if complex.is_fully_materialized() {
            Ok(Vec::new())
        } else {
            Err(MvError::CapTooSmall {
                needed: s,
                cap: complex.dim_cap(),
            })
        }
    })
}

/// Incidence between `Λ_s` (rows) and `Λ_{s+1}` (columns). The entry for
/// `λ ⊂ λ'` is `(-1)^j` where `j` is the position in `λ'` of the vertex
/// missing from `λ`.
///
/// Built row-first by inserting each absent vertex, which is independent of
/// the column-first boundary construction in the homology engine.
pub fn signed_incidence(rows: &[Simplex], cols: &[Simplex]) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    let Some(first) = cols.first() else {
        return m;
    };
    let n = cols.iter().flatten().copied().max().unwrap_or(first[0]);
    for (r, lam) in rows.iter().enumerate() {
        for v in 1..=n {
            let Err(pos) = lam.binary_search(&v) else {
                continue;
            };
            let mut up = lam.clone();
            up.insert(pos, v);
            if let Ok(c) = cols.binary_search(&up) {
                m.set(r, c, if pos % 2 == 0 { 1 } else { -1 });
            }
        }
    }
    m
}

/// `Φ` for the given `t`; needs `Λ_{t+1}` materialized.
pub fn phi_map(complex: &SimplicialComplex, t: usize) -> Result<PhiMap, MvError> {
    let target = lambda(complex, t)?;
    let source = lambda(complex, t + 1)?;
    let matrix = signed_incidence(&target, &source);
    Ok(PhiMap { t, source, target, matrix })
}

/// `|Λ_t| - rank Φ` over `field`.
pub fn phi_cokernel_dim(phi: &PhiMap, field: FieldSpec) -> usize {
    phi.target.len() - phi.matrix.rank(field)
}

fn check(d: i64, c: i64, p: i64) -> Result<(), BoundError> {
    if c < 1 {
        return Err(BoundError::BadHeight(c));
    }
    if d < 0 || p < 0 {
        return Err(BoundError::Negative { d, p });
    }
    Ok(())
}

/// `d - ⌊(d-1)/c⌋`.
pub fn bound_faltings(d: i64, c: i64) -> Result<i64, BoundError> {
    check(d, c, 0)?;
    Ok(d - (d - 1).div_euclid(c))
}

/// `d - 1 - ⌊(d-2)/c⌋`.
pub fn bound_hl(d: i64, c: i64) -> Result<i64, BoundError> {
    check(d, c, 0)?;
    Ok(d - 1 - (d - 2).div_euclid(c))
}

/// `d - ⌊(d-1)/c⌋ + p`.
pub fn bound_sum(d: i64, c: i64, p: i64) -> Result<i64, BoundError> {
    check(d, c, p)?;
    Ok(bound_faltings(d, c)? + p)
}

/// `d - 1 - ⌊(d-2)/c⌋ + p`, defined only for `d > (p+1)c`.
pub fn bound_main(d: i64, c: i64, p: i64) -> Result<i64, BoundError> {
    check(d, c, p)?;
    if d <= (p + 1) * c {
        return Err(BoundError::DimensionTooSmall { d, c, p });
    }
    Ok(bound_hl(d, c)? + p)
}
