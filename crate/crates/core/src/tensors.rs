//! Tensors of the infinitesimal translations of a loop.
//!
//! Index layout everywhere: upper (output) index first, then lower indices in
//! order, dense row-major. So `u[[s, j]]` is `u^s_j` and `u_jk[[s, j, k]]` is
//! `u^s_jk`.
//!
//! * `u^s_j(g) = ∂m^s(h, g)/∂h^j` at `h = e` generates left translations `L_x`.
//! * `v^s_j(g) = ∂m^s(g, h)/∂h^j` at `h = e` generates right translations `R_x`.
//! * `w = −(u + v)` generates `M_x`, so that `L_x + R_x + M_x = 0`.
//!
//! Secondary tensors are the coefficients of the field commutators:
//! `[L_x, L_y] = −x^j y^k u^s_jk ∂_s`, and likewise for `R`/`v_jk`, `M`/`w_jk`.

use ndarray::{Array2, Array3, Zip};
use serde::Serialize;

use crate::atlas::LoopChart;
use crate::jet::{cross_partials, jacobian};
use crate::{Error, Result};

/// Coefficient matrices of `L_x`, `R_x`, `M_x` at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxTensors {
    pub u: Array2<f64>,
    pub v: Array2<f64>,
    pub w: Array2<f64>,
}

/// Commutator coefficients at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondaryTensors {
    pub u_jk: Array3<f64>,
    pub v_jk: Array3<f64>,
    pub w_jk: Array3<f64>,
    /// Yamaguti functions, `(u_jk + v_jk + w_jk) / 6`.
    pub y_jk: Array3<f64>,
    /// `[L_x, R_y] = x^j y^k lr^s_jk ∂_s`.
    pub lr_jk: Array3<f64>,
    /// `[R_x, L_y] = x^j y^k rl^s_jk ∂_s`.
    pub rl_jk: Array3<f64>,
}

/// Everything the identity families need at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointTensors {
    pub aux: AuxTensors,
    pub secondary: SecondaryTensors,
}

/// Partial derivatives `∂u^s_j/∂g^p` and `∂v^s_j/∂g^p` (layout `[s, j, p]`).
struct AuxDerivatives {
    du: Array3<f64>,
    dv: Array3<f64>,
}

fn check_point(loop_: &LoopChart, g: &[f64]) -> Result<()> {
    if g.len() != loop_.dim() {
        return Err(Error::DimensionMismatch {
            expected: loop_.dim(),
            found: g.len(),
        });
    }
    if !loop_.contains(g) {
        return Err(Error::Domain {
            point: g.to_vec(),
            reason: format!("point outside the `{loop_}` chart"),
        });
    }
    Ok(())
}

/// `[e; g]` and `[g; e]`, the flat inputs at which `u` and `v` are read off.
fn left_right_inputs(g: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let e = vec![0.0; g.len()];
    ([e.as_slice(), g].concat(), [g, e.as_slice()].concat())
}

pub fn aux_tensors(loop_: &LoopChart, g: &[f64]) -> Result<AuxTensors> {
    check_point(loop_, g)?;
    let n = loop_.dim();
    let (eg, ge) = left_right_inputs(g);
    let first: Vec<usize> = (0..n).collect();
    let second: Vec<usize> = (n..2 * n).collect();
    let u = jacobian(loop_, &eg, &first)?;
    let v = jacobian(loop_, &ge, &second)?;
    let w = -(&u + &v);
    Ok(AuxTensors { u, v, w })
}

fn aux_derivatives(loop_: &LoopChart, g: &[f64]) -> Result<AuxDerivatives> {
    let n = loop_.dim();
    let (eg, ge) = left_right_inputs(g);
    let first: Vec<usize> = (0..n).collect();
    let second: Vec<usize> = (n..2 * n).collect();
    Ok(AuxDerivatives {
        du: cross_partials(loop_, &eg, &first, &second)?,
        dv: cross_partials(loop_, &ge, &second, &first)?,
    })
}

/// `X^s_jk = A^p_k ∂_p A^s_j − A^p_j ∂_p A^s_k`, exactly antisymmetric in `j, k`.
fn antisymmetrized(a: &Array2<f64>, da: &Array3<f64>) -> Array3<f64> {
    let n = a.nrows();
    let t = Array3::from_shape_fn((n, n, n), |(s, j, k)| {
        (0..n).map(|p| a[[p, k]] * da[[s, j, p]]).sum::<f64>()
    });
    Array3::from_shape_fn((n, n, n), |(s, j, k)| t[[s, j, k]] - t[[s, k, j]])
}

/// `X^s_jk = A^p_j ∂_p B^s_k − B^p_k ∂_p A^s_j`, the coefficients of
/// `[A_x, B_y]`.
fn mixed_commutator(
    a: &Array2<f64>,
    da: &Array3<f64>,
    b: &Array2<f64>,
    db: &Array3<f64>,
) -> Array3<f64> {
    let n = a.nrows();
    Array3::from_shape_fn((n, n, n), |(s, j, k)| {
        let ab: f64 = (0..n).map(|p| a[[p, j]] * db[[s, k, p]]).sum();
        let ba: f64 = (0..n).map(|p| b[[p, k]] * da[[s, j, p]]).sum();
        ab - ba
    })
}

impl PointTensors {
    pub fn compute(loop_: &LoopChart, g: &[f64]) -> Result<Self> {
        let aux = aux_tensors(loop_, g)?;
        let AuxDerivatives { du, dv } = aux_derivatives(loop_, g)?;
        let dw = -(&du + &dv);

        let u_jk = antisymmetrized(&aux.u, &du);
        let v_jk = antisymmetrized(&aux.v, &dv);
        let w_jk = antisymmetrized(&aux.w, &dw);
        let y_jk = (&u_jk + &v_jk + &w_jk) / 6.0;
        let lr_jk = mixed_commutator(&aux.u, &du, &aux.v, &dv);
        let rl_jk = mixed_commutator(&aux.v, &dv, &aux.u, &du);

        Ok(Self {
            aux,
            secondary: SecondaryTensors {
                u_jk,
                v_jk,
                w_jk,
                y_jk,
                lr_jk,
                rl_jk,
            },
        })
    }
}

pub fn secondary_tensors(loop_: &LoopChart, g: &[f64]) -> Result<SecondaryTensors> {
    Ok(PointTensors::compute(loop_, g)?.secondary)
}

/// A sign convention, `+1` or `−1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i8(self.value() as i8)
    }
}

/// The two sign conventions that the identities leave open: the sign of the
/// bracket `[x, y]^i = C^i_jk x^j y^k` and the sign in front of the
/// `C`-terms of the `u_jk, v_jk, w_jk` decomposition into Yamaguti functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ConventionLedger {
    pub bracket_sign: Sign,
    pub lemma_sign: Sign,
}

impl ConventionLedger {
    /// The assignment that calibration selects on every nonabelian builtin.
    pub const CALIBRATED: ConventionLedger = ConventionLedger {
        bracket_sign: Sign::Plus,
        lemma_sign: Sign::Minus,
    };

    pub fn all() -> impl Iterator<Item = ConventionLedger> {
        Sign::BOTH.into_iter().flat_map(|bracket_sign| {
            Sign::BOTH
                .into_iter()
                .map(move |lemma_sign| ConventionLedger {
                    bracket_sign,
                    lemma_sign,
                })
        })
    }
}

impl Default for ConventionLedger {
    fn default() -> Self {
        Self::CALIBRATED
    }
}

/// Bracket coefficients `C^i_jk`, antisymmetric in `j, k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    pub c: Array3<f64>,
    pub sign: Sign,
}

/// `C^i_jk = σ (a^i_kj − a^i_jk)` with `a^i_jk = ∂²m^i/∂g^j ∂h^k` at `(e, e)`.
pub fn structure_constants(loop_: &LoopChart, sign: Sign) -> StructureConstants {
    let n = loop_.dim();
    let first: Vec<usize> = (0..n).collect();
    let second: Vec<usize> = (n..2 * n).collect();
    let a = cross_partials(loop_, &vec![0.0; 2 * n], &first, &second)
        .expect("the identity lies in every chart");
    let s = sign.value();
    let c = Array3::from_shape_fn((n, n, n), |(i, j, k)| s * (a[[i, k, j]] - a[[i, j, k]]));
    StructureConstants { c, sign }
}

impl StructureConstants {
    /// `[x, y]^i = C^i_jk x^j y^k`.
    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = self.c.shape()[0];
        (0..n)
            .map(|i| {
                let mut acc = 0.0;
                for j in 0..n {
                    for k in 0..n {
                        acc += self.c[[i, j, k]] * x[j] * y[k];
                    }
                }
                acc
            })
            .collect()
    }

    /// `T^s_jk = C^p_jk A^s_p`: the coefficients of the field `A_{[x,y]}`.
    pub fn contract(&self, a: &Array2<f64>) -> Array3<f64> {
        contract_first(a, &self.c)
    }
}

/// `out[i, j, k] = Σ_s m[i, s] t[s, j, k]`.
pub fn contract_first(m: &Array2<f64>, t: &Array3<f64>) -> Array3<f64> {
    let (rows, inner) = m.dim();
    let (_, nj, nk) = t.dim();
    let mut out = Array3::zeros((rows, nj, nk));
    for i in 0..rows {
        for s in 0..inner {
            let f = m[[i, s]];
            if f == 0.0 {
                continue;
            }
            Zip::from(out.index_axis_mut(ndarray::Axis(0), i))
                .and(t.index_axis(ndarray::Axis(0), s))
                .for_each(|o, &x| *o += f * x);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Left,
    Right,
    Middle,
}

/// Components of `L_x`, `R_x` or `M_x` at `g`.
pub fn field_eval(loop_: &LoopChart, which: Field, x: &[f64], g: &[f64]) -> Result<Vec<f64>> {
    let aux = aux_tensors(loop_, g)?;
    if x.len() != loop_.dim() {
        return Err(Error::DimensionMismatch {
            expected: loop_.dim(),
            found: x.len(),
        });
    }
    let a = match which {
        Field::Left => &aux.u,
        Field::Right => &aux.v,
        Field::Middle => &aux.w,
    };
    Ok(a.dot(&ndarray::ArrayView1::from(x)).to_vec())
}

/// Components of the Yamagutian `Y(x; y) = −x^j y^k Y^s_jk(g) ∂_s`.
pub fn yamagutian_eval(loop_: &LoopChart, x: &[f64], y: &[f64], g: &[f64]) -> Result<Vec<f64>> {
    let n = loop_.dim();
    for v in [x, y] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let sec = secondary_tensors(loop_, g)?;
    Ok((0..n)
        .map(|s| {
            let mut acc = 0.0;
            for j in 0..n {
                for k in 0..n {
                    acc += x[j] * y[k] * sec.y_jk[[s, j, k]];
                }
            }
            -acc
        })
        .collect())
}
