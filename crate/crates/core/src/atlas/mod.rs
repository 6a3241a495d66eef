//! Concrete local analytic loops in charts centered at the identity.
//!
//! Every loop is given by its multiplication map on chart coordinates, with
//! the identity element at the origin. Loop specs are strings of the form
//! `name[:key=value]`:
//!
//! | spec              | loop                                                      |
//! |-------------------|-----------------------------------------------------------|
//! | `abelian:n=<k>`   | `(R^k, +)`                                                |
//! | `affine`          | `(a₁,b₁)(a₂,b₂) = (a₁+a₂, b₁+e^{a₁}b₂)`                   |
//! | `quaternion`      | unit quaternions, orthographic chart on `Im H`            |
//! | `octonion`        | unit octonions, orthographic chart on `Im O`              |
//! | `broken:eps=<ε>`  | octonion chart with `ε (g¹)²(h¹)²` added to coordinate 1  |
//!
//! The broken loop is not Moufang; it keeps both unit laws and the
//! first-order tensors at the identity, and exists as a negative control.

mod algebra;

use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::jet::{checked_sqrt, ChartMap, Scalar};
use crate::{Error, Result};

pub use algebra::{cd_product, conjugate, norm, CompositionAlgebra, MultiplicationTable};

/// Chart coordinates of a loop element; the identity is the origin.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct LoopPoint(pub Vec<f64>);

impl LoopPoint {
    pub fn identity(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }
}

impl Deref for LoopPoint {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for LoopPoint {
    fn from(coords: Vec<f64>) -> Self {
        Self(coords)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LoopKind {
    Abelian { dim: usize },
    Affine,
    Sphere(CompositionAlgebra),
    Broken { eps: f64 },
}

/// A loop given by its multiplication on chart coordinates.
///
/// Charts are immutable; [`LoopChart::multiply`] is generic over jet scalars
/// so derivatives of the multiplication are exact.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopChart {
    spec: String,
    kind: LoopKind,
}

impl fmt::Display for LoopChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec)
    }
}

impl LoopChart {
    /// Parses a loop spec (see the module docs for the grammar).
    pub fn builtin(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (name, param) = match spec.split_once(':') {
            Some((name, rest)) => {
                let (key, value) = rest
                    .split_once('=')
                    .ok_or_else(|| malformed(spec, "expected key=value after ':'"))?;
                (name, Some((key.trim(), value.trim())))
            }
            None => (spec, None),
        };
        let kind = match (name.trim(), param) {
            ("abelian", Some(("n", value))) => {
                let dim: usize = value
                    .parse()
                    .map_err(|_| malformed(spec, "n must be a positive integer"))?;
                if dim == 0 {
                    return Err(malformed(spec, "n must be a positive integer"));
                }
                LoopKind::Abelian { dim }
            }
            ("broken", Some(("eps", value))) => {
                let eps: f64 = value
                    .parse()
                    .map_err(|_| malformed(spec, "eps must be a decimal number"))?;
                if !eps.is_finite() {
                    return Err(malformed(spec, "eps must be finite"));
                }
                LoopKind::Broken { eps }
            }
            ("affine", None) => LoopKind::Affine,
            ("quaternion", None) => LoopKind::Sphere(CompositionAlgebra::Quaternion),
            ("octonion", None) => LoopKind::Sphere(CompositionAlgebra::Octonion),
            ("abelian", _) => return Err(malformed(spec, "expected abelian:n=<k>")),
            ("broken", _) => return Err(malformed(spec, "expected broken:eps=<value>")),
            ("affine" | "quaternion" | "octonion", Some(_)) => {
                return Err(malformed(spec, "this loop takes no parameters"))
            }
            _ => return Err(Error::UnknownLoop(spec.to_string())),
        };
        Ok(Self {
            spec: spec.to_string(),
            kind,
        })
    }

    pub fn name(&self) -> &str {
        &self.spec
    }

    pub fn kind(&self) -> LoopKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            LoopKind::Abelian { dim } => dim,
            LoopKind::Affine => 2,
            LoopKind::Sphere(alg) => alg.dim() - 1,
            LoopKind::Broken { .. } => 7,
        }
    }

    /// True for charts on a unit sphere (quaternion, octonion, broken).
    pub fn is_sphere_chart(&self) -> bool {
        matches!(self.kind, LoopKind::Sphere(_) | LoopKind::Broken { .. })
    }

    /// True when the point lies in the chart's domain.
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter().all(|c| c.is_finite())
            && (!self.is_sphere_chart() || x.iter().map(|c| c * c).sum::<f64>() < 1.0)
    }

    /// Multiplication `m(g, h)` on chart coordinates.
    pub fn multiply<S: Scalar>(&self, g: &[S], h: &[S]) -> Result<Vec<S>> {
        let n = self.dim();
        for x in [g, h] {
            if x.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: x.len(),
                });
            }
        }
        match self.kind {
            LoopKind::Abelian { .. } => Ok(g.iter().zip(h).map(|(&a, &b)| a + b).collect()),
            LoopKind::Affine => Ok(vec![g[0] + h[0], g[1] + g[0].exp() * h[1]]),
            LoopKind::Sphere(alg) => sphere_chart_multiply(alg, g, h),
            LoopKind::Broken { eps } => {
                let mut out = sphere_chart_multiply(CompositionAlgebra::Octonion, g, h)?;
                let bump = (g[0] * g[0]) * (h[0] * h[0]);
                out[0] = out[0] + bump.scale(eps);
                if out.iter().map(|c| c.value() * c.value()).sum::<f64>() >= 1.0 {
                    return Err(chart_exit(g, h));
                }
                Ok(out)
            }
        }
    }

    /// Plain `f64` product.
    pub fn product(&self, g: &[f64], h: &[f64]) -> Result<Vec<f64>> {
        self.multiply(g, h)
    }
}

/// Orthographic-chart product on the unit sphere of a composition algebra.
///
/// Embeds `x ↦ (sqrt(1 − |x|²), x)`, multiplies, and keeps the imaginary
/// part. Fails with [`Error::ChartExit`] when the product's real part is not
/// positive, and with [`Error::Domain`] when an argument is outside the unit
/// ball.
pub fn sphere_chart_multiply<S: Scalar>(
    algebra: CompositionAlgebra,
    x: &[S],
    y: &[S],
) -> Result<Vec<S>> {
    let n = algebra.dim() - 1;
    for v in [x, y] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let a = embed(x)?;
    let b = embed(y)?;
    let prod = algebra.table().multiply(&a, &b);
    // NaN compares false and is treated as an exit.
    if prod[0].value().partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(chart_exit(x, y));
    }
    Ok(prod[1..].to_vec())
}

fn embed<S: Scalar>(x: &[S]) -> Result<Vec<S>> {
    let sq = x.iter().fold(S::zero(), |acc, &c| acc + c * c);
    let point: Vec<f64> = x.iter().map(Scalar::value).collect();
    if sq.value().partial_cmp(&1.0) != Some(std::cmp::Ordering::Less) {
        return Err(Error::Domain {
            point,
            reason: "sphere chart requires |x| < 1".into(),
        });
    }
    let re = checked_sqrt(S::constant(1.0) - sq, &point)?;
    Ok(std::iter::once(re).chain(x.iter().copied()).collect())
}

fn chart_exit<S: Scalar>(g: &[S], h: &[S]) -> Error {
    Error::ChartExit {
        g: g.iter().map(Scalar::value).collect(),
        h: h.iter().map(Scalar::value).collect(),
    }
}

fn malformed(spec: &str, reason: &str) -> Error {
    Error::MalformedParameter {
        spec: spec.to_string(),
        reason: reason.to_string(),
    }
}

/// The multiplication as a binary [`ChartMap`]: input `[g; h]`.
impl ChartMap for LoopChart {
    fn arity(&self) -> usize {
        2
    }

    fn argument_dim(&self) -> usize {
        self.dim()
    }

    fn output_dim(&self) -> usize {
        self.dim()
    }

    fn eval<S: Scalar>(&self, input: &[S]) -> Result<Vec<S>> {
        let n = self.dim();
        if input.len() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                found: input.len(),
            });
        }
        self.multiply(&input[..n], &input[n..])
    }
}

/// `m(m(g,h), m(k,g)) − m(g, m(m(h,k), g))`, the Moufang identity residual.
pub fn moufang_residual(loop_: &LoopChart, g: &[f64], h: &[f64], k: &[f64]) -> Result<Vec<f64>> {
    let gh = loop_.product(g, h)?;
    let kg = loop_.product(k, g)?;
    let left = loop_.product(&gh, &kg)?;
    let hk = loop_.product(h, k)?;
    let hkg = loop_.product(&hk, g)?;
    let right = loop_.product(g, &hkg)?;
    Ok(left.iter().zip(&right).map(|(a, b)| a - b).collect())
}
