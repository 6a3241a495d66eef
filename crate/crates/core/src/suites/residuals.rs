//! Residual tensors of every identity family, in coefficient form.
//!
//! Each residual vanishes identically when its identity holds. The `*_from`
//! functions work on precomputed tensors so a suite can share them between
//! families; the public functions compute what they need from scratch.

use ndarray::{Array2, Array3};

use crate::atlas::LoopChart;
use crate::jet::jacobian;
use crate::tensors::{
    aux_tensors, contract_first, structure_constants, AuxTensors, ConventionLedger, PointTensors,
    StructureConstants,
};
use crate::{Error, Result};

/// Residuals of a family made of three equations.
#[derive(Debug, Clone, PartialEq)]
pub struct Triple<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<D: ndarray::Dimension> Triple<ndarray::Array<f64, D>> {
    pub fn max_abs(&self) -> f64 {
        max_abs(
            [&self.a, &self.b, &self.c]
                .into_iter()
                .flat_map(|t| t.iter()),
        )
    }
}

/// Largest absolute entry; NaN if any entry is NaN.
pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a f64>) -> f64 {
    let mut m = 0.0f64;
    for &v in values {
        if v.is_nan() {
            return f64::NAN;
        }
        m = m.max(v.abs());
    }
    m
}

/// `J_g[i, s] = ∂(gh)^i/∂g^s` and `J_h[i, s] = ∂(gh)^i/∂h^s`, plus `gh`.
pub struct ProductJets {
    pub gh: Vec<f64>,
    pub jg: Array2<f64>,
    pub jh: Array2<f64>,
}

impl ProductJets {
    pub fn compute(loop_: &LoopChart, g: &[f64], h: &[f64]) -> Result<Self> {
        let n = loop_.dim();
        for x in [g, h] {
            if x.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: x.len(),
                });
            }
        }
        let gh = loop_.product(g, h)?;
        let input = [g, h].concat();
        let first: Vec<usize> = (0..n).collect();
        let second: Vec<usize> = (n..2 * n).collect();
        Ok(Self {
            gh,
            jg: jacobian(loop_, &input, &first)?,
            jh: jacobian(loop_, &input, &second)?,
        })
    }
}

pub fn jacobian_g(loop_: &LoopChart, g: &[f64], h: &[f64]) -> Result<Array2<f64>> {
    Ok(ProductJets::compute(loop_, g, h)?.jg)
}

pub fn jacobian_h(loop_: &LoopChart, g: &[f64], h: &[f64]) -> Result<Array2<f64>> {
    Ok(ProductJets::compute(loop_, g, h)?.jh)
}

/// `u + v + w`; zero by construction of `w`.
pub fn constraint_from(aux: &AuxTensors) -> Array2<f64> {
    &aux.u + &aux.v + &aux.w
}

pub fn residual_constraint(loop_: &LoopChart, g: &[f64]) -> Result<Array2<f64>> {
    Ok(constraint_from(&aux_tensors(loop_, g)?))
}

/// Generalized Lie equations:
///
/// * `a`: `w(g)·J_g + u(h)·J_h + u(gh)`
/// * `b`: `v(g)·J_g + w(h)·J_h + v(gh)`
/// * `c`: `u(g)·J_g + v(h)·J_h + w(gh)`
pub fn gle_from(
    jets: &ProductJets,
    at_g: &AuxTensors,
    at_h: &AuxTensors,
    at_gh: &AuxTensors,
) -> Triple<Array2<f64>> {
    let (jg, jh) = (&jets.jg, &jets.jh);
    Triple {
        a: jg.dot(&at_g.w) + jh.dot(&at_h.u) + &at_gh.u,
        b: jg.dot(&at_g.v) + jh.dot(&at_h.w) + &at_gh.v,
        c: jg.dot(&at_g.u) + jh.dot(&at_h.v) + &at_gh.w,
    }
}

pub fn residual_gle(loop_: &LoopChart, g: &[f64], h: &[f64]) -> Result<Triple<Array2<f64>>> {
    let jets = ProductJets::compute(loop_, g, h)?;
    Ok(gle_from(
        &jets,
        &aux_tensors(loop_, g)?,
        &aux_tensors(loop_, h)?,
        &aux_tensors(loop_, &jets.gh)?,
    ))
}

/// Generalized Maurer-Cartan equations:
///
/// * `a`: `[L_x, L_y] = L_{[x,y]} − 2[L_x, R_y]`
/// * `b`: `[R_x, R_y] = R_{[y,x]} − 2[R_x, L_y]`
/// * `c`: `[L_x, R_y] = [R_x, L_y]`
pub fn mc_from(t: &PointTensors, c: &StructureConstants) -> Triple<Array3<f64>> {
    let s = &t.secondary;
    let cu = c.contract(&t.aux.u);
    let cv = c.contract(&t.aux.v);
    Triple {
        a: &s.u_jk + &cu - 2.0 * &s.lr_jk,
        b: &s.v_jk - &cv - 2.0 * &s.rl_jk,
        c: &s.lr_jk - &s.rl_jk,
    }
}

/// Commutators of `L` and `R` split into the Yamagutian and brackets:
///
/// * `a`: `[L_x, L_y] = 2Y(x;y) + ⅓L_{[x,y]} + ⅔R_{[x,y]}`
/// * `b`: `[L_x, R_y] = −Y(x;y) + ⅓L_{[x,y]} − ⅓R_{[x,y]}`
/// * `c`: `[R_x, R_y] = 2Y(x;y) − ⅔L_{[x,y]} − ⅓R_{[x,y]}`
///
/// Each residual is the coefficient tensor of right side minus left side.
pub fn lry_from(t: &PointTensors, c: &StructureConstants) -> Triple<Array3<f64>> {
    let s = &t.secondary;
    let cu = c.contract(&t.aux.u);
    let cv = c.contract(&t.aux.v);
    Triple {
        a: &s.u_jk - 2.0 * &s.y_jk + (&cu + 2.0 * &cv) / 3.0,
        b: &s.y_jk + (&cu - &cv) / 3.0 - &s.lr_jk,
        c: &s.v_jk - 2.0 * &s.y_jk - (2.0 * &cu + &cv) / 3.0,
    }
}

/// Decomposition of the secondary functions into Yamaguti functions, with
/// the `C`-terms multiplied by `lemma_sign`:
///
/// * `a`: `u_jk = 2Y_jk + σ ⅓ C^s_jk (u_s + 2v_s)`
/// * `b`: `v_jk = 2Y_jk − σ ⅓ C^s_jk (2u_s + v_s)`
/// * `c`: `w_jk = 2Y_jk + σ ⅓ C^s_jk (u_s − v_s)`
pub fn lemma_from(
    t: &PointTensors,
    c: &StructureConstants,
    ledger: ConventionLedger,
) -> Triple<Array3<f64>> {
    let s = &t.secondary;
    let sigma = ledger.lemma_sign.value() / 3.0;
    let cu = c.contract(&t.aux.u);
    let cv = c.contract(&t.aux.v);
    Triple {
        a: &s.u_jk - 2.0 * &s.y_jk - sigma * (&cu + 2.0 * &cv),
        b: &s.v_jk - 2.0 * &s.y_jk + sigma * (2.0 * &cu + &cv),
        c: &s.w_jk - 2.0 * &s.y_jk - sigma * (&cu - &cv),
    }
}

pub fn residual_mc(
    loop_: &LoopChart,
    g: &[f64],
    ledger: ConventionLedger,
) -> Result<Triple<Array3<f64>>> {
    let c = structure_constants(loop_, ledger.bracket_sign);
    Ok(mc_from(&PointTensors::compute(loop_, g)?, &c))
}

pub fn residual_lryam(
    loop_: &LoopChart,
    g: &[f64],
    ledger: ConventionLedger,
) -> Result<Triple<Array3<f64>>> {
    let c = structure_constants(loop_, ledger.bracket_sign);
    Ok(lry_from(&PointTensors::compute(loop_, g)?, &c))
}

pub fn residual_lemma(
    loop_: &LoopChart,
    g: &[f64],
    ledger: ConventionLedger,
) -> Result<Triple<Array3<f64>>> {
    let c = structure_constants(loop_, ledger.bracket_sign);
    Ok(lemma_from(&PointTensors::compute(loop_, g)?, &c, ledger))
}

/// `J_g·A(g) + J_h·B(h) − C(gh)` with the Jacobians contracted on the upper
/// index.
fn transported(
    jets: &ProductJets,
    at_g: &Array3<f64>,
    at_h: &Array3<f64>,
    at_gh: &Array3<f64>,
) -> Array3<f64> {
    contract_first(&jets.jg, at_g) + contract_first(&jets.jh, at_h) - at_gh
}

/// Second-order Lie equations:
///
/// * `a`: `w_jk(g)·J_g + u_jk(h)·J_h = u_jk(gh)`
/// * `b`: `v_jk(g)·J_g + w_jk(h)·J_h = v_jk(gh)`
/// * `c`: `u_jk(g)·J_g + v_jk(h)·J_h = w_jk(gh)`
pub fn gle2_from(
    jets: &ProductJets,
    at_g: &PointTensors,
    at_h: &PointTensors,
    at_gh: &PointTensors,
) -> Triple<Array3<f64>> {
    let (g, h, gh) = (&at_g.secondary, &at_h.secondary, &at_gh.secondary);
    Triple {
        a: transported(jets, &g.w_jk, &h.u_jk, &gh.u_jk),
        b: transported(jets, &g.v_jk, &h.w_jk, &gh.v_jk),
        c: transported(jets, &g.u_jk, &h.v_jk, &gh.w_jk),
    }
}

/// Integrability condition `Y_jk(g)·J_g + Y_jk(h)·J_h = Y_jk(gh)`.
///
/// The `h`-term carries `∂(gh)/∂h`: the condition is the sum of the three
/// second-order Lie equations, whose `h`-terms all do.
pub fn integrability_from(
    jets: &ProductJets,
    at_g: &PointTensors,
    at_h: &PointTensors,
    at_gh: &PointTensors,
) -> Array3<f64> {
    transported(
        jets,
        &at_g.secondary.y_jk,
        &at_h.secondary.y_jk,
        &at_gh.secondary.y_jk,
    )
}

struct PairTensors {
    jets: ProductJets,
    at_g: PointTensors,
    at_h: PointTensors,
    at_gh: PointTensors,
}

fn pair_tensors(loop_: &LoopChart, g: &[f64], h: &[f64]) -> Result<PairTensors> {
    let jets = ProductJets::compute(loop_, g, h)?;
    Ok(PairTensors {
        at_g: PointTensors::compute(loop_, g)?,
        at_h: PointTensors::compute(loop_, h)?,
        at_gh: PointTensors::compute(loop_, &jets.gh)?,
        jets,
    })
}

pub fn residual_gle2(loop_: &LoopChart, g: &[f64], h: &[f64]) -> Result<Triple<Array3<f64>>> {
    let p = pair_tensors(loop_, g, h)?;
    Ok(gle2_from(&p.jets, &p.at_g, &p.at_h, &p.at_gh))
}

pub fn residual_integrability(loop_: &LoopChart, g: &[f64], h: &[f64]) -> Result<Array3<f64>> {
    let p = pair_tensors(loop_, g, h)?;
    Ok(integrability_from(&p.jets, &p.at_g, &p.at_h, &p.at_gh))
}

/// `max |2·R_int − R_gle2,x|` for `x = a, b, c`: each second-order Lie
/// equation residual equals twice the integrability residual.
pub fn theorem_equivalence_gaps(loop_: &LoopChart, g: &[f64], h: &[f64]) -> Result<[f64; 3]> {
    let p = pair_tensors(loop_, g, h)?;
    let r6 = integrability_from(&p.jets, &p.at_g, &p.at_h, &p.at_gh);
    let gle2 = gle2_from(&p.jets, &p.at_g, &p.at_h, &p.at_gh);
    let gap = |r: &Array3<f64>| max_abs((2.0 * &r6 - r).iter());
    Ok([gap(&gle2.a), gap(&gle2.b), gap(&gle2.c)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gle_at_identity_vanishes() {
        for spec in ["abelian:n=2", "affine", "quaternion", "octonion"] {
            let l = LoopChart::builtin(spec).unwrap();
            let e = vec![0.0; l.dim()];
            let r = residual_gle(&l, &e, &e).unwrap();
            assert_eq!(r.max_abs(), 0.0, "{spec}");
        }
    }

    #[test]
    fn abelian_everything_vanishes() {
        let l = LoopChart::builtin("abelian:n=3").unwrap();
        let g = [0.1, -0.2, 0.05];
        let h = [0.3, 0.0, -0.1];
        let led = ConventionLedger::CALIBRATED;
        assert_eq!(residual_gle(&l, &g, &h).unwrap().max_abs(), 0.0);
        assert_eq!(residual_gle2(&l, &g, &h).unwrap().max_abs(), 0.0);
        assert_eq!(
            max_abs(residual_integrability(&l, &g, &h).unwrap().iter()),
            0.0
        );
        for flip in ConventionLedger::all() {
            assert_eq!(residual_mc(&l, &g, flip).unwrap().max_abs(), 0.0);
            assert_eq!(residual_lemma(&l, &g, flip).unwrap().max_abs(), 0.0);
        }
        assert_eq!(residual_lryam(&l, &g, led).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn jacobians_of_affine_group() {
        let l = LoopChart::builtin("affine").unwrap();
        let (a1, b1, a2, b2) = (0.2, -0.1, 0.15, 0.3);
        let jg = jacobian_g(&l, &[a1, b1], &[a2, b2]).unwrap();
        let jh = jacobian_h(&l, &[a1, b1], &[a2, b2]).unwrap();
        let ea = f64::exp(a1);
        assert_eq!(jg, ndarray::arr2(&[[1.0, 0.0], [ea * b2, 1.0]]));
        assert_eq!(jh, ndarray::arr2(&[[1.0, 0.0], [0.0, ea]]));
    }

    #[test]
    fn unit_jacobians() {
        let l = LoopChart::builtin("octonion").unwrap();
        let g = [0.1, -0.05, 0.02, 0.0, 0.03, 0.0, -0.01];
        let e = [0.0; 7];
        let eye = Array2::<f64>::eye(7);
        assert!(max_abs((jacobian_g(&l, &g, &e).unwrap() - &eye).iter()) < 1e-15);
        assert!(max_abs((jacobian_h(&l, &e, &g).unwrap() - &eye).iter()) < 1e-15);
    }

    #[test]
    fn max_abs_propagates_nan() {
        assert!(max_abs(&[1.0, f64::NAN, 3.0]).is_nan());
        assert_eq!(max_abs(&[1.0, -3.0]), 3.0);
    }
}
