use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;

/// A complex value with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
    pub err: f64,
}

impl ComplexApprox {
    pub const ZERO: ComplexApprox = ComplexApprox {
        re: 0.0,
        im: 0.0,
        err: 0.0,
    };

    pub fn new(value: Complex64, err: f64) -> Self {
        debug_assert!(err >= 0.0 || err.is_nan());
        ComplexApprox {
            re: value.re,
            im: value.im,
            err,
        }
    }

    pub fn exact(value: Complex64) -> Self {
        ComplexApprox::new(value, 0.0)
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.value().norm()
    }

    /// Largest modulus consistent with the bound.
    pub fn abs_upper(&self) -> f64 {
        self.abs() + self.err
    }

    /// Multiplication by an exactly known constant.
    pub fn scale(&self, c: Complex64) -> Self {
        let v = self.value() * c;
        ComplexApprox::new(v, self.err * c.norm() + v.norm() * f64::EPSILON)
    }

    pub fn mul(&self, other: &ComplexApprox) -> Self {
        let v = self.value() * other.value();
        let err = self.abs() * other.err + other.abs() * self.err + self.err * other.err + v.norm() * f64::EPSILON;
        ComplexApprox::new(v, err)
    }

    pub fn with_extra_err(mut self, extra: f64) -> Self {
        self.err += extra;
        self
    }

    /// `true` when zero lies inside the error disc.
    pub fn contains_zero(&self) -> bool {
        self.abs() <= self.err
    }

    /// `true` when the two discs intersect.
    pub fn agrees_with(&self, other: &ComplexApprox) -> bool {
        (self.value() - other.value()).norm() <= self.err + other.err
    }
}

impl Add for ComplexApprox {
    type Output = ComplexApprox;
    fn add(self, o: ComplexApprox) -> ComplexApprox {
        let v = self.value() + o.value();
        ComplexApprox::new(v, self.err + o.err + v.norm() * f64::EPSILON)
    }
}

impl Sub for ComplexApprox {
    type Output = ComplexApprox;
    fn sub(self, o: ComplexApprox) -> ComplexApprox {
        self + (-o)
    }
}

impl Neg for ComplexApprox {
    type Output = ComplexApprox;
    fn neg(self) -> ComplexApprox {
        ComplexApprox {
            re: -self.re,
            im: -self.im,
            err: self.err,
        }
    }
}

impl std::iter::Sum for ComplexApprox {
    fn sum<I: Iterator<Item = ComplexApprox>>(iter: I) -> Self {
        iter.fold(ComplexApprox::ZERO, Add::add)
    }
}

impl fmt::Display for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im < 0.0 { '-' } else { '+' };
        write!(f, "{:.15} {} {:.15}i ± {:.3e}", self.re, sign, self.im.abs(), self.err)
    }
}

/// Compensated complex summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    pub fn new() -> Self {
        KahanSum::default()
    }

    pub fn add(&mut self, x: Complex64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn total(&self) -> Complex64 {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_propagate() {
        let a = ComplexApprox::new(Complex64::new(1.0, 0.0), 1e-10);
        let b = ComplexApprox::new(Complex64::new(0.0, 2.0), 1e-9);
        let s = a + b;
        assert!(s.err >= 1.1e-9);
        let p = a.mul(&b);
        assert!(p.err >= 2e-10 + 1e-9);
        assert!((a - a).contains_zero());
    }

    #[test]
    fn kahan_beats_naive() {
        let mut k = KahanSum::new();
        let mut naive = Complex64::new(0.0, 0.0);
        for _ in 0..1_000_000 {
            k.add(Complex64::new(0.1, 0.0));
            naive += Complex64::new(0.1, 0.0);
        }
        assert!((k.total().re - 100_000.0).abs() < (naive.re - 100_000.0).abs());
        assert!((k.total().re - 100_000.0).abs() < 1e-9);
    }
}
