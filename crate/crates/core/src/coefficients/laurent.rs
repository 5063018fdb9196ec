//! Laurent polynomials in the two variables `v` and `s` with big-integer coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A finite sum `Σ c · v^a · s^b`, keyed by `(a, b)`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<(i32, i32), BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, v: i32, s: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(v, s, c.into());
        p
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i32, i32), BigInt)>,
    {
        let mut p = Self::zero();
        for ((v, s), c) in terms {
            p.add_term(v, s, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, v: i32, s: i32) -> BigInt {
        self.terms.get(&(v, s)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, v: i32, s: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((v, s)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Multiplies by `v^dv s^ds`.
    pub fn shift(&self, dv: i32, ds: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&(v, s), c)| ((v + dv, s + ds), c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Lowest and highest `v`-exponents present.
    pub fn v_range(&self) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|k| k.0).min()?;
        let hi = self.terms.keys().map(|k| k.0).max()?;
        Some((lo, hi))
    }

    pub fn s_range(&self) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|k| k.1).min()?;
        let hi = self.terms.keys().map(|k| k.1).max()?;
        Some((lo, hi))
    }

    /// The part with `v`-exponent exactly `a`, still carrying the `v^a` factor.
    pub fn v_slice(&self, a: i32) -> Self {
        Self { terms: self.terms.range((a, i32::MIN)..=(a, i32::MAX)).map(|(&k, c)| (k, c.clone())).collect() }
    }

    /// Substitutes `v -> v^{-1}`.
    pub fn invert_v(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&(v, s), c)| ((-v, s), c.clone())).collect() }
    }

    /// Substitutes `v -> -v`.
    pub fn negate_v(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(v, s), c)| ((v, s), if v.rem_euclid(2) == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Exact division by `s^r - s^{-r}`, if it divides.
    ///
    /// Works slice by slice in `v`: each slice is a Laurent polynomial in `s`, and
    /// `s^r - s^{-r} = s^{-r}(s^{2r} - 1)`.
    pub fn div_sym_factor(&self, r: u32) -> Option<Self> {
        let r = r as i32;
        let mut out = LaurentPoly::zero();
        let mut slices: BTreeMap<i32, BTreeMap<i32, BigInt>> = BTreeMap::new();
        for (&(v, s), c) in &self.terms {
            slices.entry(v).or_default().insert(s, c.clone());
        }
        for (v, slice) in slices {
            let lo = *slice.keys().next().unwrap();
            let hi = *slice.keys().next_back().unwrap();
            let deg = (hi - lo) as usize;
            if deg < 2 * r as usize {
                return None;
            }
            let mut coeffs = vec![BigInt::zero(); deg + 1];
            for (s, c) in slice {
                coeffs[(s - lo) as usize] = c;
            }
            // Divide P(s) by (s^{2r} - 1) from the top down.
            let step = 2 * r as usize;
            let mut quot = vec![BigInt::zero(); deg + 1 - step];
            for k in (step..=deg).rev() {
                let c = std::mem::take(&mut coeffs[k]);
                if !c.is_zero() {
                    coeffs[k - step] += &c;
                    quot[k - step] = c;
                }
            }
            if coeffs.iter().any(|c| !c.is_zero()) {
                return None;
            }
            // quotient * s^lo * s^r
            for (k, c) in quot.into_iter().enumerate() {
                out.add_term(v, lo + k as i32 + r, c);
            }
        }
        Some(out)
    }

    /// Multiplies by `s^r - s^{-r}`.
    pub fn mul_sym_factor(&self, r: u32) -> Self {
        let r = r as i32;
        let mut out = self.shift(0, r);
        for (&(v, s), c) in &self.terms {
            out.add_term(v, s - r, -c);
        }
        out
    }

    pub fn is_negative_leading(&self) -> bool {
        self.terms.values().next().is_some_and(|c| c.is_negative())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&(v, s), c) in &rhs.terms {
            out.add_term(v, s, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&(v, s), c) in &rhs.terms {
            out.add_term(v, s, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(v1, s1), c1) in &self.terms {
            for (&(v2, s2), c2) in &rhs.terms {
                out.add_term(v1 + v2, s1 + s2, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_factor_division_roundtrip() {
        let p = &LaurentPoly::monomial(3, 1, -2) + &LaurentPoly::monomial(-5, 0, 4);
        for r in 1..4 {
            let q = p.mul_sym_factor(r);
            assert_eq!(q.div_sym_factor(r).unwrap(), p);
        }
        assert!(p.div_sym_factor(1).is_none());
    }

    #[test]
    fn s_squared_minus_inverse_is_divisible_by_first_factor() {
        // s^2 - s^{-2} = (s - s^{-1})(s + s^{-1})
        let p = &LaurentPoly::monomial(1, 0, 2) - &LaurentPoly::monomial(1, 0, -2);
        let q = p.div_sym_factor(1).unwrap();
        let expect = &LaurentPoly::monomial(1, 0, 1) + &LaurentPoly::monomial(1, 0, -1);
        assert_eq!(q, expect);
    }
}
