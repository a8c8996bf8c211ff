//! Exact ranks of dense matrices over GF(p) and Q.
//!
//! Over GF(p) this is ordinary Gaussian elimination on residues. Over Q rows
//! are cleared to integers and reduced with Bareiss' fraction-free scheme,
//! where every division is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{inv_mod, mul_mod, FieldElement, FieldSpec};

/// Dense integer matrix, row-major. Boundary and incidence matrices only
/// ever hold 0 and ±1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            data: vec![0; nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Self {
            nrows: rows.len(),
            ncols,
            data: rows.concat(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.ncols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.ncols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.ncols..(r + 1) * self.ncols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| *v == 0)
    }

    /// Integer product; panics on a shape mismatch.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, rhs.nrows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.ncols {
                    out.data[i * rhs.ncols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn rank(&self, field: FieldSpec) -> usize {
        match field.characteristic() {
            0 => bareiss_rank(
                self.nrows,
                self.ncols,
                self.data.iter().map(|&v| BigInt::from(v)).collect(),
            ),
            p => modular_rank(
                self.nrows,
                self.ncols,
                self.data.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect(),
                p,
            ),
        }
    }
}

/// Rank of a matrix of field elements, all from `field`. Rows may be ragged
/// only if empty.
pub fn matrix_rank(rows: &[Vec<FieldElement>], field: FieldSpec) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    match field.characteristic() {
        0 => {
            let mut data = Vec::with_capacity(nrows * ncols);
            for row in rows {
                // clear denominators row by row; rank is unchanged
                let lcm = row
                    .iter()
                    .map(|e| e.as_rational().expect("rational entry").denom().clone())
                    .fold(BigInt::one(), |a, d| a.lcm(&d));
                for e in row {
                    let r = e.as_rational().unwrap();
                    data.push(r.numer() * (&lcm / r.denom()));
                }
            }
            bareiss_rank(nrows, ncols, data)
        }
        p => modular_rank(
            nrows,
            ncols,
            rows.iter()
                .flat_map(|r| r.iter().map(|e| e.residue().expect("modular entry")))
                .collect(),
            p,
        ),
    }
}

fn modular_rank(nrows: usize, ncols: usize, mut a: Vec<u64>, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| a[r * ncols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for c in 0..ncols {
                a.swap(pivot * ncols + c, rank * ncols + c);
            }
        }
        let inv = inv_mod(a[rank * ncols + col], p);
        for r in rank + 1..nrows {
            let factor = mul_mod(a[r * ncols + col], inv, p);
            if factor == 0 {
                continue;
            }
            for c in col..ncols {
                let sub = mul_mod(factor, a[rank * ncols + c], p);
                let v = &mut a[r * ncols + c];
                *v = if *v >= sub { *v - sub } else { *v + p - sub };
            }
        }
        rank += 1;
    }
    rank
}

fn bareiss_rank(nrows: usize, ncols: usize, mut a: Vec<BigInt>) -> usize {
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !a[r * ncols + col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for c in 0..ncols {
                a.swap(pivot * ncols + c, rank * ncols + c);
            }
        }
        let p = a[rank * ncols + col].clone();
        for r in rank + 1..nrows {
            let f = a[r * ncols + col].clone();
            for c in col..ncols {
                let v = (&p * &a[r * ncols + c] - &f * &a[rank * ncols + c]) / &prev;
                a[r * ncols + c] = v;
            }
        }
        prev = p;
        rank += 1;
    }
    rank
}
