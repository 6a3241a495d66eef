//! Forward-mode jets.
//!
//! Chart maps are written once, generically over [`Scalar`], and evaluated
//! over `f64` for values, over [`Dual`] for first partials and over
//! [`HyperDual`] for one mixed second partial at a time.

mod dual;
mod fd;
mod hyper;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use ndarray::{Array2, Array3};

use crate::{Error, Result};

pub use dual::Dual;
pub use fd::{fd_oracle, DEFAULT_FIRST_STEP, DEFAULT_SECOND_STEP};
pub use hyper::HyperDual;

/// Real-like number type that chart maps are generic over.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn constant(value: f64) -> Self;

    /// Real part.
    fn value(&self) -> f64;

    fn sqrt(self) -> Self;

    fn exp(self) -> Self;

    fn zero() -> Self {
        Self::constant(0.0)
    }

    fn scale(self, factor: f64) -> Self {
        self * Self::constant(factor)
    }
}

impl Scalar for f64 {
    fn constant(value: f64) -> Self {
        value
    }

    fn value(&self) -> f64 {
        *self
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    fn exp(self) -> Self {
        f64::exp(self)
    }
}

/// `sqrt` with an explicit domain check on the real part.
pub fn checked_sqrt<S: Scalar>(x: S, point: &[f64]) -> Result<S> {
    if x.value() > 0.0 {
        Ok(x.sqrt())
    } else {
        Err(Error::Domain {
            point: point.to_vec(),
            reason: format!("sqrt of nonpositive value {}", x.value()),
        })
    }
}

/// A smooth map from `arity` arguments in `R^argument_dim` to `R^output_dim`.
///
/// Inputs are passed flat: argument `a`, coordinate `i` lives at
/// `a * argument_dim + i`.
pub trait ChartMap: Sync {
    fn arity(&self) -> usize {
        1
    }

    fn argument_dim(&self) -> usize;

    fn output_dim(&self) -> usize;

    fn eval<S: Scalar>(&self, input: &[S]) -> Result<Vec<S>>;

    fn input_dim(&self) -> usize {
        self.arity() * self.argument_dim()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Argument {
    First,
    Second,
}

impl Argument {
    fn position(self) -> usize {
        match self {
            Argument::First => 0,
            Argument::Second => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coordinate {
    pub argument: Argument,
    pub index: usize,
}

impl Coordinate {
    pub fn new(argument: Argument, index: usize) -> Self {
        Self { argument, index }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    First,
    Second,
}

impl TryFrom<u8> for Order {
    type Error = Error;

    fn try_from(order: u8) -> Result<Self> {
        match order {
            1 => Ok(Order::First),
            2 => Ok(Order::Second),
            other => Err(Error::InvalidRequest(format!(
                "order must be 1 or 2, got {other}"
            ))),
        }
    }
}

/// Which coordinates to perturb and up to which order.
///
/// Coordinates may mix both arguments of a binary map, which is how mixed
/// `∂²/∂g ∂h` partials are requested.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeRequest {
    pub coordinates: Vec<Coordinate>,
    pub order: Order,
}

impl DerivativeRequest {
    pub fn new(argument: Argument, indices: &[usize], order: Order) -> Self {
        Self {
            coordinates: indices
                .iter()
                .map(|&index| Coordinate::new(argument, index))
                .collect(),
            order,
        }
    }

    pub fn with_coordinates(coordinates: Vec<Coordinate>, order: Order) -> Self {
        Self { coordinates, order }
    }

    /// Resolves the request to flat input indices of `map`.
    pub fn flat_indices<M: ChartMap + ?Sized>(&self, map: &M) -> Result<Vec<usize>> {
        let n = map.argument_dim();
        self.coordinates
            .iter()
            .map(|c| {
                let pos = c.argument.position();
                if pos >= map.arity() {
                    return Err(Error::InvalidRequest(format!(
                        "{:?} argument requested on a map of arity {}",
                        c.argument,
                        map.arity()
                    )));
                }
                if c.index >= n {
                    return Err(Error::InvalidRequest(format!(
                        "coordinate index {} outside [0, {n})",
                        c.index
                    )));
                }
                Ok(pos * n + c.index)
            })
            .collect()
    }
}

/// Value with first and second derivatives along the requested directions.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub first: Vec<f64>,
    /// `second[a][b]`; empty for first-order requests.
    pub second: Vec<Vec<f64>>,
}

/// Evaluator returned by [`lift_map`].
pub struct LiftedMap<'a, M: ?Sized> {
    map: &'a M,
    directions: Vec<usize>,
    order: Order,
}

pub fn lift_map<'a, M: ChartMap>(
    map: &'a M,
    request: &DerivativeRequest,
) -> Result<LiftedMap<'a, M>> {
    Ok(LiftedMap {
        map,
        directions: request.flat_indices(map)?,
        order: request.order,
    })
}

impl<M: ChartMap> LiftedMap<'_, M> {
    /// One [`Jet2`] per output coordinate.
    pub fn eval(&self, input: &[f64]) -> Result<Vec<Jet2>> {
        check_len(self.map, input)?;
        let value = self.map.eval::<f64>(input)?;
        let mut jets: Vec<Jet2> = value
            .into_iter()
            .map(|value| Jet2 {
                value,
                first: Vec::with_capacity(self.directions.len()),
                second: Vec::new(),
            })
            .collect();
        if self.directions.is_empty() {
            return Ok(jets);
        }

        let jac = jacobian(self.map, input, &self.directions)?;
        for (i, jet) in jets.iter_mut().enumerate() {
            jet.first.extend(jac.row(i).iter().copied());
        }

        if self.order == Order::Second {
            let d = self.directions.len();
            for jet in jets.iter_mut() {
                jet.second = vec![vec![0.0; d]; d];
            }
            for a in 0..d {
                for b in a..d {
                    let col =
                        mixed_partial(self.map, input, self.directions[a], self.directions[b])?;
                    for (jet, v) in jets.iter_mut().zip(col) {
                        jet.second[a][b] = v;
                        jet.second[b][a] = v;
                    }
                }
            }
        }
        Ok(jets)
    }
}

fn check_len<M: ChartMap + ?Sized>(map: &M, input: &[f64]) -> Result<()> {
    if input.len() != map.input_dim() {
        return Err(Error::DimensionMismatch {
            expected: map.input_dim(),
            found: input.len(),
        });
    }
    Ok(())
}

/// `J[i][d] = ∂f^i/∂x^{directions[d]}`.
pub fn jacobian<M: ChartMap + ?Sized>(
    map: &M,
    input: &[f64],
    directions: &[usize],
) -> Result<Array2<f64>> {
    check_len(map, input)?;
    let mut jac = Array2::zeros((map.output_dim(), directions.len()));
    let mut seeded: Vec<Dual> = input.iter().map(|&x| Dual::constant(x)).collect();
    for (d, &dir) in directions.iter().enumerate() {
        seeded[dir].eps = 1.0;
        let out = map.eval(&seeded)?;
        seeded[dir].eps = 0.0;
        for (i, y) in out.iter().enumerate() {
            jac[[i, d]] = y.eps;
        }
    }
    Ok(jac)
}

/// `∂²f/∂x^a ∂x^b` for every output, from a single hyper-dual evaluation
/// with `a` seeded in the first infinitesimal and `b` in the second.
pub fn mixed_partial<M: ChartMap + ?Sized>(
    map: &M,
    input: &[f64],
    a: usize,
    b: usize,
) -> Result<Vec<f64>> {
    check_len(map, input)?;
    let seeded: Vec<HyperDual> = input
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            HyperDual::new(
                x,
                if k == a { 1.0 } else { 0.0 },
                if k == b { 1.0 } else { 0.0 },
                0.0,
            )
        })
        .collect();
    Ok(map.eval(&seeded)?.iter().map(|y| y.e12).collect())
}

/// `T[i][r][c] = ∂²f^i/∂x^{rows[r]} ∂x^{cols[c]}`.
pub fn cross_partials<M: ChartMap + ?Sized>(
    map: &M,
    input: &[f64],
    rows: &[usize],
    cols: &[usize],
) -> Result<Array3<f64>> {
    let mut out = Array3::zeros((map.output_dim(), rows.len(), cols.len()));
    for (r, &a) in rows.iter().enumerate() {
        for (c, &b) in cols.iter().enumerate() {
            for (i, v) in mixed_partial(map, input, a, b)?.into_iter().enumerate() {
                out[[i, r, c]] = v;
            }
        }
    }
    Ok(out)
}
