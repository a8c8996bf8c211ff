//! Reduced and relative simplicial homology over a prime field.
//!
//! Dimensions come from exact ranks of the signed boundary matrices, with
//! the augmentation `C_0 -> k` in degree 0. For a simplicial complex this is
//! the same as singular homology of its realization.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::complex::{subsets, Simplex, SimplicialComplex};
use crate::field::FieldSpec;
use crate::linalg::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("degree {degree} needs simplices of dimension {needed}, but the complex is only materialized up to {cap}")]
    CapTooSmall { degree: i64, needed: usize, cap: usize },
    #[error("degree {0} is below -1")]
    NegativeDegree(i64),
}

/// Betti numbers in one characteristic. Degrees that were not requested
/// are absent, never zero-filled.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiProfile {
    pub characteristic: u64,
    pub reduced: BTreeMap<i64, usize>,
    pub relative: BTreeMap<i64, usize>,
}

/// The `s`-simplices, or an error if they are unknown. Above the cap of a
/// fully materialized complex there are none.
pub(crate) fn simplices_checked(complex: &SimplicialComplex, s: usize, degree: i64) -> Result<Vec<Simplex>, HomologyError> {
    match complex.layer(s) {
        Ok(layer) => Ok(layer.iter().cloned().collect()),
        Err(_) if complex.is_fully_materialized() => Ok(Vec::new()),
        Err(_) => Err(HomologyError::CapTooSmall {
            degree,
            needed: s,
            cap: complex.dim_cap(),
        }),
    }
}

fn non_simplices_checked(complex: &SimplicialComplex, s: usize, degree: i64) -> Result<Vec<Simplex>, HomologyError> {
    match complex.non_simplices(s) {
        Ok(v) => Ok(v),
        Err(_) if complex.is_fully_materialized() => Ok(subsets(complex.n_vertices(), s + 1).collect()),
        Err(_) => Err(HomologyError::CapTooSmall {
            degree,
            needed: s,
            cap: complex.dim_cap(),
        }),
    }
}

/// `∂_s` with rows indexed by `rows` (the `(s-1)`-chains) and columns by
/// `cols` (the `s`-chains). Faces outside `rows` are dropped, which is the
/// quotient map for relative chains.
fn boundary_between(rows: &[Simplex], cols: &[Simplex]) -> IntMatrix {
    let index: HashMap<&[usize], usize> = rows.iter().enumerate().map(|(i, r)| (r.as_slice(), i)).collect();
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    let mut face = Vec::new();
    for (c, simplex) in cols.iter().enumerate() {
        for j in 0..simplex.len() {
            face.clear();
            face.extend(simplex.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v));
            if let Some(&r) = index.get(face.as_slice()) {
                m.set(r, c, if j % 2 == 0 { 1 } else { -1 });
            }
        }
    }
    m
}

/// The augmented boundary `∂_s : C_s -> C_{s-1}`; for `s = 0` the target is
/// the one-dimensional span of the empty simplex.
pub fn boundary_matrix(complex: &SimplicialComplex, s: usize) -> Result<IntMatrix, HomologyError> {
    let cols = simplices_checked(complex, s, s as i64)?;
    let rows = if s == 0 {
        vec![Vec::new()]
    } else {
        simplices_checked(complex, s - 1, s as i64)?
    };
    Ok(boundary_between(&rows, &cols))
}

/// `dim H̃_s` for each requested `s ≥ -1`.
pub fn reduced_betti(complex: &SimplicialComplex, field: FieldSpec, degrees: &[i64]) -> Result<BettiProfile, HomologyError> {
    let mut ranks: HashMap<usize, usize> = HashMap::new();
    let mut rank_of = |s: usize, degree: i64| -> Result<usize, HomologyError> {
        if let Some(&r) = ranks.get(&s) {
            return Ok(r);
        }
        let r = boundary_matrix(complex, s)
            .map_err(|_| HomologyError::CapTooSmall {
                degree,
                needed: s,
                cap: complex.dim_cap(),
            })?
            .rank(field);
        ranks.insert(s, r);
        Ok(r)
    };

    let mut profile = BettiProfile {
        characteristic: field.characteristic(),
        ..Default::default()
    };
    for &deg in degrees {
        if deg < -1 {
            return Err(HomologyError::NegativeDegree(deg));
        }
        let above = rank_of((deg + 1) as usize, deg)?;
        let (chains, below) = if deg == -1 {
            (1, 0)
        } else {
            let s = deg as usize;
            (simplices_checked(complex, s, deg)?.len(), rank_of(s, deg)?)
        };
        profile.reduced.insert(deg, chains - below - above);
    }
    Ok(profile)
}

/// `dim H_t(S, Δ)` where `S` is the full simplex on the same vertices. The
/// relative chains in degree `s` are the `s`-faces of `S` missing from `Δ`;
/// there are none in negative degrees.
pub fn relative_betti_pair(complex: &SimplicialComplex, field: FieldSpec, t: usize) -> Result<usize, HomologyError> {
    let deg = t as i64;
    let c_t = non_simplices_checked(complex, t, deg)?;
    let c_t1 = non_simplices_checked(complex, t + 1, deg)?;
    let below = if t == 0 {
        0
    } else {
        let c_tm1 = non_simplices_checked(complex, t - 1, deg)?;
        boundary_between(&c_tm1, &c_t).rank(field)
    };
    let above = boundary_between(&c_t, &c_t1).rank(field);
    Ok(c_t.len() - below - above)
}

/// `-1 + Σ (-1)^s f_s` over the materialized layers.
pub fn reduced_euler_characteristic(complex: &SimplicialComplex) -> i64 {
    complex
        .counts()
        .iter()
        .enumerate()
        .fold(-1, |acc, (s, &n)| if s % 2 == 0 { acc + n as i64 } else { acc - n as i64 })
}

/// Reduced Betti numbers in every degree from -1 through the top layer.
pub fn full_reduced_betti(complex: &SimplicialComplex, field: FieldSpec) -> Result<BettiProfile, HomologyError> {
    let top = complex.dim_cap() as i64;
    let degrees: Vec<i64> = (-1..=top).collect();
    reduced_betti(complex, field, &degrees)
}
