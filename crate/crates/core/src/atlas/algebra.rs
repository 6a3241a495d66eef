//! Cayley-Dickson composition algebras (quaternions, octonions).

use serde::Serialize;

use crate::jet::Scalar;
use crate::{Error, Result};

/// Composition algebras with a compact unit sphere that carry a Moufang loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CompositionAlgebra {
    Quaternion,
    Octonion,
}

impl CompositionAlgebra {
    /// Real dimension `2^k`.
    pub fn dim(self) -> usize {
        match self {
            CompositionAlgebra::Quaternion => 4,
            CompositionAlgebra::Octonion => 8,
        }
    }

    pub fn from_dim(dim: usize) -> Option<Self> {
        match dim {
            4 => Some(CompositionAlgebra::Quaternion),
            8 => Some(CompositionAlgebra::Octonion),
            _ => None,
        }
    }

    pub fn table(self) -> &'static MultiplicationTable {
        use std::sync::OnceLock;
        static QUATERNION: OnceLock<MultiplicationTable> = OnceLock::new();
        static OCTONION: OnceLock<MultiplicationTable> = OnceLock::new();
        match self {
            CompositionAlgebra::Quaternion => {
                QUATERNION.get_or_init(|| MultiplicationTable::derive(4))
            }
            CompositionAlgebra::Octonion => OCTONION.get_or_init(|| MultiplicationTable::derive(8)),
        }
    }
}

/// Negates every non-real component.
pub fn conjugate<S: Scalar>(a: &[S]) -> Vec<S> {
    a.iter()
        .enumerate()
        .map(|(i, &x)| if i == 0 { x } else { -x })
        .collect()
}

/// Cayley-Dickson product of two quaternions or two octonions.
///
/// `(a, b)(c, d) = (ac − d̄b, da + bc̄)`, applied recursively down to the
/// reals. With this convention `e₁e₂ = e₃` in the quaternions.
pub fn cd_product<S: Scalar>(a: &[S], b: &[S]) -> Result<Vec<S>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    if CompositionAlgebra::from_dim(a.len()).is_none() {
        return Err(Error::DimensionMismatch {
            expected: 8,
            found: a.len(),
        });
    }
    Ok(doubling_product(a, b))
}

fn doubling_product<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let n = a.len();
    if n == 1 {
        return vec![a[0] * b[0]];
    }
    let half = n / 2;
    let (p, q) = a.split_at(half);
    let (r, s) = b.split_at(half);
    let pr = doubling_product(p, r);
    let sbar_q = doubling_product(&conjugate(s), q);
    let sp = doubling_product(s, p);
    let q_rbar = doubling_product(q, &conjugate(r));
    pr.iter()
        .zip(&sbar_q)
        .map(|(&x, &y)| x - y)
        .chain(sp.iter().zip(&q_rbar).map(|(&x, &y)| x + y))
        .collect()
}

pub fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `e_i e_j = sign[i][j] · e_{index[i][j]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicationTable {
    pub dim: usize,
    pub sign: Vec<Vec<i8>>,
    pub index: Vec<Vec<usize>>,
}

impl MultiplicationTable {
    /// Reads the table off the recursive product applied to basis elements.
    fn derive(dim: usize) -> Self {
        let basis = |k: usize| -> Vec<f64> {
            let mut e = vec![0.0; dim];
            e[k] = 1.0;
            e
        };
        let mut sign = vec![vec![0i8; dim]; dim];
        let mut index = vec![vec![0usize; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let prod = doubling_product(&basis(i), &basis(j));
                let (k, v) = prod
                    .iter()
                    .enumerate()
                    .find(|(_, v)| **v != 0.0)
                    .expect("product of basis elements is a signed basis element");
                index[i][j] = k;
                sign[i][j] = if *v > 0.0 { 1 } else { -1 };
            }
        }
        Self { dim, sign, index }
    }

    /// Product via the table; agrees with [`cd_product`] on every input.
    pub fn multiply<S: Scalar>(&self, a: &[S], b: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let term = a[i] * b[j];
                let k = self.index[i][j];
                out[k] = if self.sign[i][j] > 0 {
                    out[k] + term
                } else {
                    out[k] - term
                };
            }
        }
        out
    }
}
