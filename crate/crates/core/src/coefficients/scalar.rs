//! The scalar ring `Z[v^±1, s^±1, 1/(s^r - s^-r)]`.
//!
//! A scalar is a Laurent numerator over a factored denominator: a multiset of
//! indices `r`, each standing for the factor `s^r - s^{-r}`. Equality is decided
//! by bringing both sides over a common denominator, never by expanding one.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::sseries::SSeries;

#[derive(Clone, Debug, Default)]
pub struct LambdaScalar {
    num: LaurentPoly,
    /// `r -> multiplicity` of the factor `(s^r - s^{-r})` in the denominator.
    den: BTreeMap<u32, u32>,
}

/// Result of [`LambdaScalar::v_profile`].
#[derive(Clone, Debug, PartialEq)]
pub enum VProfile {
    /// Lowest `v`-exponent and its coefficient (a function of `s` alone).
    Finite { order: i32, leading: LambdaScalar },
    /// The scalar is zero.
    Infinite,
}

impl LambdaScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    /// `c · v^a · s^b`
    pub fn monomial(c: impl Into<BigInt>, a: i32, b: i32) -> Self {
        Self::from_poly(LaurentPoly::monomial(c, a, b))
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Self { num, den: BTreeMap::new() }
    }

    /// `num / ∏_{r in den} (s^r - s^{-r})`, normalized.
    pub fn from_parts(num: LaurentPoly, den: impl IntoIterator<Item = u32>) -> Self {
        let mut d = BTreeMap::new();
        for r in den {
            assert!(r > 0, "denominator factor index must be positive");
            *d.entry(r).or_insert(0) += 1;
        }
        let mut x = Self { num, den: d };
        x.normalize();
        x
    }

    /// `1 / (s^r - s^{-r})`
    pub fn inv_sym(r: u32) -> Self {
        Self::from_parts(LaurentPoly::one(), [r])
    }

    /// `s^r - s^{-r}`
    pub fn sym(r: u32) -> Self {
        Self::from_poly(LaurentPoly::one().mul_sym_factor(r))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// Denominator factors as a sorted list with repetition.
    pub fn denominator(&self) -> Vec<u32> {
        self.den.iter().flat_map(|(&r, &m)| std::iter::repeat_n(r, m as usize)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// Cancels every denominator factor that divides the numerator exactly.
    pub fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let keys: Vec<u32> = self.den.keys().rev().copied().collect();
        for r in keys {
            while let Some(&m) = self.den.get(&r) {
                if m == 0 {
                    self.den.remove(&r);
                    break;
                }
                match self.num.div_sym_factor(r) {
                    Some(q) => {
                        self.num = q;
                        if m == 1 {
                            self.den.remove(&r);
                        } else {
                            self.den.insert(r, m - 1);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    /// Numerator rescaled to sit over the denominator `target`, which must contain `self.den`.
    fn numerator_over(&self, target: &BTreeMap<u32, u32>) -> LaurentPoly {
        let mut n = self.num.clone();
        for (&r, &m) in target {
            let have = self.den.get(&r).copied().unwrap_or(0);
            for _ in have..m {
                n = n.mul_sym_factor(r);
            }
        }
        n
    }

    fn common_den(a: &BTreeMap<u32, u32>, b: &BTreeMap<u32, u32>) -> BTreeMap<u32, u32> {
        let mut d = a.clone();
        for (&r, &m) in b {
            let e = d.entry(r).or_insert(0);
            *e = (*e).max(m);
        }
        d
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by `v^a s^b`.
    pub fn shift(&self, a: i32, b: i32) -> Self {
        Self { num: self.num.shift(a, b), den: self.den.clone() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut x = Self { num: self.num.scale(k), den: self.den.clone() };
        if x.num.is_zero() {
            x.den.clear();
        }
        x
    }

    /// Substitutes `v -> v^{-1}`.
    pub fn invert_v(&self) -> Self {
        Self { num: self.num.invert_v(), den: self.den.clone() }
    }

    /// True if the scalar does not depend on `v`.
    pub fn is_v_free(&self) -> bool {
        self.num.v_range().is_none_or(|(lo, hi)| lo == 0 && hi == 0)
    }

    /// If every numerator term shares one `v`-exponent `a`, returns `a`.
    pub fn v_monomial_degree(&self) -> Option<i32> {
        match self.num.v_range() {
            Some((lo, hi)) if lo == hi => Some(lo),
            _ => None,
        }
    }

    /// The `v`-slice of exponent `a`, with the factor `v^a` removed.
    pub fn v_coefficient(&self, a: i32) -> Self {
        let mut x = Self { num: self.num.v_slice(a).shift(-a, 0), den: self.den.clone() };
        x.normalize();
        x
    }

    /// Lowest `v`-order and its (`s`-only) coefficient.
    ///
    /// The denominator only ever involves `s`, so the `v`-structure always separates.
    pub fn v_profile(&self) -> VProfile {
        match self.num.v_range() {
            None => VProfile::Infinite,
            Some((lo, _)) => VProfile::Finite { order: lo, leading: self.v_coefficient(lo) },
        }
    }

    /// Order of vanishing at `s = 0` (as a Laurent series in `s` with coefficients in `Z[v^±]`).
    pub fn s_order(&self) -> Option<i32> {
        let (lo, _) = self.num.s_range()?;
        let shift: u32 = self.den.iter().map(|(&r, &m)| r * m).sum();
        Some(lo + shift as i32)
    }

    /// Expansion at `s = 0`, exact for all `s`-exponents below `prec`.
    pub fn expand(&self, prec: i32) -> SSeries {
        if self.num.is_zero() {
            return SSeries::zero(prec);
        }
        // 1/(s^r - s^{-r}) = -s^r · Σ_k s^{2rk}
        let (lo, _) = self.num.s_range().unwrap();
        let mut shift = 0i32;
        let mut sign = BigInt::one();
        for (&r, &m) in &self.den {
            shift += (r * m) as i32;
            if m % 2 == 1 {
                sign = -sign;
            }
        }
        let budget = prec - lo - shift;
        if budget <= 0 {
            return SSeries::zero(prec);
        }
        let n = budget as usize;
        // geometric part ∏ 1/(1 - s^{2r})^m as a power series with n coefficients
        let mut geo = vec![BigInt::zero(); n];
        geo[0] = BigInt::one();
        for (&r, &m) in &self.den {
            let step = 2 * r as usize;
            for _ in 0..m {
                for k in step..n {
                    let prev = geo[k - step].clone();
                    geo[k] += prev;
                }
            }
        }
        let mut out = LaurentPoly::zero();
        for (&(v, s), c) in self.num.terms() {
            let base = s + shift;
            for (k, g) in geo.iter().enumerate() {
                let e = base + k as i32;
                if e >= prec {
                    break;
                }
                if !g.is_zero() {
                    out.add_term(v, e, c * g * &sign);
                }
            }
        }
        SSeries::new(out, prec)
    }

    /// Canonical text: `c*v^a*s^b` terms in `(a, b)` order, then the denominator factors.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.num.is_zero() {
            out.push('0');
        } else {
            let terms: Vec<String> = self.num.terms().map(|(&(a, b), c)| format!("{c}*v^{a}*s^{b}")).collect();
            out.push_str(&terms.join(" + "));
        }
        if !self.den.is_empty() {
            out.push_str(" / ");
            for r in self.denominator() {
                out.push_str(&format!("(s^{r} - s^-{r})"));
            }
        }
        out
    }
}

impl fmt::Display for LambdaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl PartialEq for LambdaScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let d = Self::common_den(&self.den, &other.den);
        self.numerator_over(&d) == other.numerator_over(&d)
    }
}

impl Eq for LambdaScalar {}

impl Add for &LambdaScalar {
    type Output = LambdaScalar;
    fn add(self, rhs: &LambdaScalar) -> LambdaScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let d = LambdaScalar::common_den(&self.den, &rhs.den);
        let num = &self.numerator_over(&d) + &rhs.numerator_over(&d);
        let mut x = LambdaScalar { num, den: d };
        x.normalize();
        x
    }
}

impl Sub for &LambdaScalar {
    type Output = LambdaScalar;
    fn sub(self, rhs: &LambdaScalar) -> LambdaScalar {
        self + &(-rhs)
    }
}

impl Neg for &LambdaScalar {
    type Output = LambdaScalar;
    fn neg(self) -> LambdaScalar {
        LambdaScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &LambdaScalar {
    type Output = LambdaScalar;
    fn mul(self, rhs: &LambdaScalar) -> LambdaScalar {
        if self.is_zero() || rhs.is_zero() {
            return LambdaScalar::zero();
        }
        let mut den = self.den.clone();
        for (&r, &m) in &rhs.den {
            *den.entry(r).or_insert(0) += m;
        }
        let mut x = LambdaScalar { num: &self.num * &rhs.num, den };
        x.normalize();
        x
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LambdaScalar {
            type Output = LambdaScalar;
            fn $f(self, rhs: LambdaScalar) -> LambdaScalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&LambdaScalar> for LambdaScalar {
            type Output = LambdaScalar;
            fn $f(self, rhs: &LambdaScalar) -> LambdaScalar {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LambdaScalar {
    type Output = LambdaScalar;
    fn neg(self) -> LambdaScalar {
        -&self
    }
}

impl std::iter::Sum for LambdaScalar {
    fn sum<I: Iterator<Item = LambdaScalar>>(iter: I) -> Self {
        iter.fold(LambdaScalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for LambdaScalar {
    fn product<I: Iterator<Item = LambdaScalar>>(iter: I) -> Self {
        iter.fold(LambdaScalar::one(), |a, b| a * b)
    }
}

impl From<i64> for LambdaScalar {
    fn from(c: i64) -> Self {
        LambdaScalar::from_int(c)
    }
}
