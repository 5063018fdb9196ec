//! Laurent series in `s` (coefficients in `Z[v^±1]`), truncated at a precision bound.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// A series known exactly for all `s`-exponents strictly below `prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSeries {
    poly: LaurentPoly,
    prec: i32,
}

impl SSeries {
    pub fn new(poly: LaurentPoly, prec: i32) -> Self {
        let mut x = Self { poly, prec };
        x.truncate();
        x
    }

    pub fn zero(prec: i32) -> Self {
        Self { poly: LaurentPoly::zero(), prec }
    }

    pub fn one(prec: i32) -> Self {
        Self::new(LaurentPoly::one(), prec)
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn prec(&self) -> i32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Lowest `s`-exponent present, or `prec` when every known term vanishes.
    pub fn order(&self) -> i32 {
        self.poly.s_range().map_or(self.prec, |(lo, _)| lo)
    }

    fn truncate(&mut self) {
        if self.poly.s_range().is_some_and(|(_, hi)| hi >= self.prec) {
            let prec = self.prec;
            self.poly = LaurentPoly::from_terms(
                self.poly.terms().filter(|((_, s), _)| *s < prec).map(|(&k, c)| (k, c.clone())),
            );
        }
    }

    /// Lowers the precision bound (never raises it).
    pub fn with_prec(&self, prec: i32) -> Self {
        Self::new(self.poly.clone(), prec.min(self.prec))
    }

    /// Multiplies by `v^a s^b`.
    pub fn shift(&self, a: i32, b: i32) -> Self {
        Self { poly: self.poly.shift(a, b), prec: self.prec + b }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { poly: self.poly.scale(k), prec: self.prec }
    }

    /// Coefficient of `s^e` as a Laurent polynomial in `v` (stored with `s`-exponent 0).
    pub fn s_coefficient(&self, e: i32) -> LaurentPoly {
        LaurentPoly::from_terms(self.poly.terms().filter(|((_, s), _)| *s == e).map(|(&(v, _), c)| ((v, 0), c.clone())))
    }

    /// Multiplicative inverse; the lowest `s`-coefficient must be `±v^a`.
    pub fn invert(&self) -> Result<Self> {
        let lo = self.order();
        if self.is_zero() {
            return Err(Error::Inconsistent("cannot invert a series with no known terms".into()));
        }
        let lead = self.s_coefficient(lo);
        let (a, c) = match lead.terms().next() {
            Some((&(a, _), c)) if lead.len() == 1 && c.abs().is_one() => (a, c.clone()),
            _ => return Err(Error::Inconsistent(format!("leading coefficient of series is not a unit: {lead:?}"))),
        };
        // self = c v^a s^lo (1 - r) with r of positive s-order; inverse = c v^{-a} s^{-lo} Σ r^k
        let norm = self.shift(-a, -lo).scale(&c);
        let width = norm.prec; // relative precision of the normalized series
        let r = &SSeries::one(width) - &norm;
        let mut acc = SSeries::one(width);
        let mut power = SSeries::one(width);
        loop {
            power = (&power * &r).with_prec(width);
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&c).shift(-a, -lo))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = SSeries::one(i32::MAX / 4);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &SSeries {
    type Output = SSeries;
    fn add(self, rhs: &SSeries) -> SSeries {
        SSeries::new(&self.poly + &rhs.poly, self.prec.min(rhs.prec))
    }
}

impl Sub for &SSeries {
    type Output = SSeries;
    fn sub(self, rhs: &SSeries) -> SSeries {
        SSeries::new(&self.poly - &rhs.poly, self.prec.min(rhs.prec))
    }
}

impl Neg for &SSeries {
    type Output = SSeries;
    fn neg(self) -> SSeries {
        SSeries { poly: -&self.poly, prec: self.prec }
    }
}

impl Mul for &SSeries {
    type Output = SSeries;
    fn mul(self, rhs: &SSeries) -> SSeries {
        let prec = (self.order().saturating_add(rhs.prec)).min(rhs.order().saturating_add(self.prec));
        let mut out = LaurentPoly::zero();
        for (&(v1, s1), c1) in self.poly.terms() {
            for (&(v2, s2), c2) in rhs.poly.terms() {
                if s1 + s2 < prec {
                    out.add_term(v1 + v2, s1 + s2, c1 * c2);
                }
            }
        }
        SSeries { poly: out, prec }
    }
}

/// `Σ_k binom(k + e - 1, k) x^k` style coefficients of `(1 + x)^e` for any integer `e`.
pub fn binomial_series_coeffs(e: i32, count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    let mut c = BigInt::one();
    for k in 0..count {
        out.push(c.clone());
        // c_{k+1} = c_k (e - k)/(k + 1)
        c = c * BigInt::from(e - k as i32) / BigInt::from(k as i32 + 1);
        if c.is_zero() && e >= 0 {
            out.resize(count, BigInt::zero());
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: i64, e: i32) -> LaurentPoly {
        LaurentPoly::monomial(c, 0, e)
    }

    #[test]
    fn inverse_of_one_minus_s() {
        let x = SSeries::new(&s(1, 0) - &s(1, 1), 10);
        let inv = x.invert().unwrap();
        let expect = LaurentPoly::from_terms((0..10).map(|k| ((0, k), BigInt::one())));
        assert_eq!(inv.poly(), &expect);
        assert_eq!(inv.prec(), 10);
        let prod = &x * &inv;
        assert_eq!(prod.poly(), &LaurentPoly::one());
    }

    #[test]
    fn product_precision_tracks_orders() {
        let a = SSeries::new(s(1, -2), 5);
        let b = SSeries::new(s(1, 3), 8);
        assert_eq!((&a * &b).prec(), 6);
    }

    #[test]
    fn binomial_coefficients() {
        assert_eq!(binomial_series_coeffs(2, 4), [1, 2, 1, 0].map(BigInt::from).to_vec());
        assert_eq!(binomial_series_coeffs(-1, 4), [1, -1, 1, -1].map(BigInt::from).to_vec());
        assert_eq!(binomial_series_coeffs(-2, 4), [1, -2, 3, -4].map(BigInt::from).to_vec());
    }
}
