//! Central-difference oracle. Independent of the jet arithmetic: it only
//! ever evaluates the map over plain `f64`.

use super::{ChartMap, DerivativeRequest, Jet2, Order};
use crate::{Error, Result};

pub const DEFAULT_FIRST_STEP: f64 = 1e-5;
pub const DEFAULT_SECOND_STEP: f64 = 1e-4;

/// Finite-difference estimate shaped like [`super::LiftedMap::eval`].
///
/// `step` defaults to [`DEFAULT_FIRST_STEP`] for first-order requests and
/// [`DEFAULT_SECOND_STEP`] for second-order ones; the same step is used for
/// both the gradient and the Hessian in one call.
pub fn fd_oracle<M: ChartMap>(
    map: &M,
    input: &[f64],
    request: &DerivativeRequest,
    step: Option<f64>,
) -> Result<Vec<Jet2>> {
    let h = step.unwrap_or(match request.order {
        Order::First => DEFAULT_FIRST_STEP,
        Order::Second => DEFAULT_SECOND_STEP,
    });
    if !(h > 0.0 && h <= 1e-2) {
        return Err(Error::InvalidStep(h));
    }
    if input.len() != map.input_dim() {
        return Err(Error::DimensionMismatch {
            expected: map.input_dim(),
            found: input.len(),
        });
    }
    let dirs = request.flat_indices(map)?;

    let at = |shifts: &[(usize, f64)]| -> Result<Vec<f64>> {
        let mut x = input.to_vec();
        for &(k, dx) in shifts {
            x[k] += dx;
        }
        map.eval::<f64>(&x)
    };

    let value = map.eval::<f64>(input)?;
    let mut jets: Vec<Jet2> = value
        .iter()
        .map(|&value| Jet2 {
            value,
            first: Vec::with_capacity(dirs.len()),
            second: Vec::new(),
        })
        .collect();

    for &a in &dirs {
        let plus = at(&[(a, h)])?;
        let minus = at(&[(a, -h)])?;
        for (i, jet) in jets.iter_mut().enumerate() {
            jet.first.push((plus[i] - minus[i]) / (2.0 * h));
        }
    }

    if request.order == Order::Second {
        let d = dirs.len();
        for jet in jets.iter_mut() {
            jet.second = vec![vec![0.0; d]; d];
        }
        for p in 0..d {
            for q in p..d {
                let (a, b) = (dirs[p], dirs[q]);
                // Four-point stencil; for a == b it degenerates to the
                // second difference with step 2h.
                let pp = at(&[(a, h), (b, h)])?;
                let pm = at(&[(a, h), (b, -h)])?;
                let mp = at(&[(a, -h), (b, h)])?;
                let mm = at(&[(a, -h), (b, -h)])?;
                for (i, jet) in jets.iter_mut().enumerate() {
                    let v = ((pp[i] - pm[i]) - (mp[i] - mm[i])) / (4.0 * h * h);
                    jet.second[p][q] = v;
                    jet.second[q][p] = v;
                }
            }
        }
    }
    Ok(jets)
}
