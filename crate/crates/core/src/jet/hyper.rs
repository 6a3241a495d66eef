use std::ops::{Add, Div, Mul, Neg, Sub};

use super::Scalar;

/// Hyper-dual number `re + e1·ε₁ + e2·ε₂ + e12·ε₁ε₂` with `ε₁² = ε₂² = 0`.
///
/// Equivalent to a dual number whose components are dual numbers, but the
/// `ε₁ε₂` coefficient is accumulated with a formula symmetric in the two
/// infinitesimals, so swapping which direction seeds `ε₁` and which seeds
/// `ε₂` yields bit-identical mixed partials.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HyperDual {
    pub re: f64,
    pub e1: f64,
    pub e2: f64,
    pub e12: f64,
}

impl HyperDual {
    pub fn new(re: f64, e1: f64, e2: f64, e12: f64) -> Self {
        Self { re, e1, e2, e12 }
    }

    /// Applies a scalar function given its value and first two derivatives
    /// at `re`.
    fn chain(self, f: f64, df: f64, d2f: f64) -> Self {
        Self::new(
            f,
            df * self.e1,
            df * self.e2,
            df * self.e12 + d2f * (self.e1 * self.e2),
        )
    }
}

impl Add for HyperDual {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.re + rhs.re,
            self.e1 + rhs.e1,
            self.e2 + rhs.e2,
            self.e12 + rhs.e12,
        )
    }
}

impl Sub for HyperDual {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.re - rhs.re,
            self.e1 - rhs.e1,
            self.e2 - rhs.e2,
            self.e12 - rhs.e12,
        )
    }
}

impl Mul for HyperDual {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re,
            self.re * rhs.e1 + self.e1 * rhs.re,
            self.re * rhs.e2 + self.e2 * rhs.re,
            (self.re * rhs.e12 + self.e12 * rhs.re) + (self.e1 * rhs.e2 + self.e2 * rhs.e1),
        )
    }
}

impl Div for HyperDual {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q = self.re / rhs.re;
        let q1 = (self.e1 - q * rhs.e1) / rhs.re;
        let q2 = (self.e2 - q * rhs.e2) / rhs.re;
        let q12 = (self.e12 - q * rhs.e12 - (q1 * rhs.e2 + q2 * rhs.e1)) / rhs.re;
        Self::new(q, q1, q2, q12)
    }
}

impl Neg for HyperDual {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.e1, -self.e2, -self.e12)
    }
}

impl Scalar for HyperDual {
    fn constant(value: f64) -> Self {
        Self::new(value, 0.0, 0.0, 0.0)
    }

    fn value(&self) -> f64 {
        self.re
    }

    fn sqrt(self) -> Self {
        let r = self.re.sqrt();
        let df = 0.5 / r;
        self.chain(r, df, -df / (2.0 * self.re))
    }

    fn exp(self) -> Self {
        let r = self.re.exp();
        self.chain(r, r, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed(x: f64, y: f64) -> (HyperDual, HyperDual) {
        (
            HyperDual::new(x, 1.0, 0.0, 0.0),
            HyperDual::new(y, 0.0, 1.0, 0.0),
        )
    }

    #[test]
    fn mixed_partial_of_product() {
        let (x, y) = seed(2.0, 5.0);
        let f = x * x * y;
        // ∂²(x²y)/∂x∂y = 2x
        assert_eq!(f.e12, 4.0);
        assert_eq!(f.e1, 20.0);
        assert_eq!(f.e2, 4.0);
    }

    #[test]
    fn second_derivative_of_sqrt() {
        let x = HyperDual::new(4.0, 1.0, 1.0, 0.0);
        // d²/dx² sqrt(x) = -1/(4 x^{3/2}) = -1/32
        assert_eq!(x.sqrt().e12, -1.0 / 32.0);
    }

    #[test]
    fn second_derivative_of_quotient() {
        let x = HyperDual::new(2.0, 1.0, 1.0, 0.0);
        // d²/dx² 1/x = 2/x³
        let f = HyperDual::constant(1.0) / x;
        assert_eq!(f.e12, 0.25);
    }

    #[test]
    fn mixed_partial_of_exp() {
        let (x, y) = seed(0.3, -0.7);
        let f = (x * y).exp();
        // ∂²e^{xy}/∂x∂y = e^{xy}(1 + xy)
        let xy: f64 = 0.3 * -0.7;
        assert!((f.e12 - xy.exp() * (1.0 + xy)).abs() < 1e-15);
    }
}
