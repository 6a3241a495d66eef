use std::ops::{Add, Div, Mul, Neg, Sub};

use super::Scalar;

/// First-order dual number `re + eps·ε`, `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dual {
    pub re: f64,
    pub eps: f64,
}

impl Dual {
    pub fn new(re: f64, eps: f64) -> Self {
        Self { re, eps }
    }

    pub fn variable(re: f64) -> Self {
        Self { re, eps: 1.0 }
    }
}

impl Add for Dual {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.eps + rhs.eps)
    }
}

impl Sub for Dual {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.eps - rhs.eps)
    }
}

impl Mul for Dual {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.re * rhs.re, self.re * rhs.eps + self.eps * rhs.re)
    }
}

impl Div for Dual {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q = self.re / rhs.re;
        Self::new(q, (self.eps - q * rhs.eps) / rhs.re)
    }
}

impl Neg for Dual {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.eps)
    }
}

impl Scalar for Dual {
    fn constant(value: f64) -> Self {
        Self::new(value, 0.0)
    }

    fn value(&self) -> f64 {
        self.re
    }

    fn sqrt(self) -> Self {
        let r = self.re.sqrt();
        Self::new(r, self.eps * (0.5 / r))
    }

    fn exp(self) -> Self {
        let r = self.re.exp();
        Self::new(r, self.eps * r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        let x = Dual::variable(3.0);
        let y = x * x * x;
        assert_eq!(y, Dual::new(27.0, 27.0));
    }

    #[test]
    fn quotient_rule() {
        let x = Dual::variable(2.0);
        let y = Dual::constant(1.0) / x;
        assert_eq!(y, Dual::new(0.5, -0.25));
    }

    #[test]
    fn exp_and_sqrt() {
        let x = Dual::variable(0.0);
        assert_eq!(x.exp(), Dual::new(1.0, 1.0));
        let y = Dual::variable(4.0).sqrt();
        assert_eq!(y, Dual::new(2.0, 0.25));
    }
}
