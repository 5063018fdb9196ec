//! Series in `Q` whose coefficients are `s`-expansions, truncated in both variables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::scalar::LambdaScalar;
use super::sseries::{binomial_series_coeffs, SSeries};
use crate::error::{Error, Result};

/// A truncated series `Σ_{k ≤ big_q_order} c_k(s) Q^k`.
///
/// The target precision is `s^{2·q_order}` inclusive. Intermediate results may carry
/// more (a working margin) or less (after division by a low-order series); comparisons
/// demand at least the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: BTreeMap<u32, SSeries>,
    q_order: u32,
    big_q_order: u32,
}

/// Supported shapes for [`series_build`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesShape {
    /// `∏_{k≥1} (1 + q^k Q)^k`
    Conifold,
    /// `∏_{k≥1} (1 - q^k)^{-k}`
    MacMahon,
    /// A finite product of `(1 + c q^a Q^b)^e`.
    Factors(Vec<SeriesFactor>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesFactor {
    pub coeff: i64,
    pub q_power: u32,
    pub big_q_power: u32,
    pub exponent: i32,
}

impl TruncatedSeries {
    /// Exclusive `s`-precision demanded by the stated `q_order`.
    pub fn target_prec(q_order: u32) -> i32 {
        2 * q_order as i32 + 1
    }

    pub fn zero(q_order: u32, big_q_order: u32) -> Self {
        Self { coeffs: BTreeMap::new(), q_order, big_q_order }
    }

    pub fn one(q_order: u32, big_q_order: u32) -> Self {
        Self::constant(SSeries::one(Self::target_prec(q_order)), q_order, big_q_order)
    }

    pub fn constant(c: SSeries, q_order: u32, big_q_order: u32) -> Self {
        let mut x = Self::zero(q_order, big_q_order);
        x.set(0, c);
        x
    }

    /// From exact `Q`-coefficients, each expanded at `s = 0` to precision `prec`.
    pub fn from_scalars(coeffs: &BTreeMap<u32, LambdaScalar>, q_order: u32, big_q_order: u32, prec: i32) -> Self {
        let mut x = Self::zero(q_order, big_q_order);
        for (&k, c) in coeffs {
            if k <= big_q_order {
                x.set(k, c.expand(prec));
            }
        }
        x
    }

    /// Converts a scalar polynomial in `v²` to a `Q`-series via `Q = -v²`.
    ///
    /// Odd `v`-exponents, negative ones, or terms beyond `big_q_order` are rejected.
    pub fn from_v_squared(x: &LambdaScalar, q_order: u32, big_q_order: u32, prec: i32) -> Result<Self> {
        let mut out = Self::zero(q_order, big_q_order);
        let Some((lo, hi)) = x.numerator().v_range() else {
            return Ok(out);
        };
        if lo < 0 || lo % 2 != 0 || hi % 2 != 0 {
            return Err(Error::NotHomogeneous(format!("expected a polynomial in v^2, found v-range [{lo}, {hi}]")));
        }
        for a in (lo..=hi).step_by(2) {
            let c = x.v_coefficient(a);
            if c.is_zero() {
                continue;
            }
            let k = (a / 2) as u32;
            if k > big_q_order {
                continue;
            }
            let mut e = c.expand(prec);
            if k % 2 == 1 {
                e = -&e;
            }
            out.set(k, e);
        }
        Ok(out)
    }

    pub fn q_order(&self) -> u32 {
        self.q_order
    }

    pub fn big_q_order(&self) -> u32 {
        self.big_q_order
    }

    pub fn coeff(&self, k: u32) -> Option<&SSeries> {
        self.coeffs.get(&k)
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, SSeries> {
        &self.coeffs
    }

    pub fn set(&mut self, k: u32, c: SSeries) {
        assert!(k <= self.big_q_order, "Q-exponent {k} beyond truncation {}", self.big_q_order);
        self.coeffs.insert(k, c);
    }

    /// Smallest precision carried by any coefficient.
    pub fn min_prec(&self) -> i32 {
        self.coeffs.values().map(SSeries::prec).min().unwrap_or(i32::MAX)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            let sum = match out.coeffs.get(&k) {
                Some(a) => a + c,
                None => c.clone(),
            };
            out.coeffs.insert(k, sum);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.q_order, self.big_q_order.min(rhs.big_q_order));
        for (&i, a) in &self.coeffs {
            for (&j, b) in &rhs.coeffs {
                if i + j > out.big_q_order {
                    continue;
                }
                let p = a * b;
                let sum = match out.coeffs.get(&(i + j)) {
                    Some(c) => c + &p,
                    None => p,
                };
                out.coeffs.insert(i + j, sum);
            }
        }
        out
    }

    /// Multiplies every coefficient by `v^a s^b`.
    pub fn shift(&self, a: i32, b: i32) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = c.shift(a, b);
        }
        out
    }

    /// Multiplicative inverse; the `Q^0` coefficient must be invertible.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.coeffs.get(&0).ok_or_else(|| Error::Inconsistent("series without constant term".into()))?;
        let inv0 = c0.invert()?;
        let n = self.big_q_order;
        let mut out: BTreeMap<u32, SSeries> = BTreeMap::new();
        out.insert(0, inv0.clone());
        for k in 1..=n {
            let mut acc: Option<SSeries> = None;
            for j in 1..=k {
                if let (Some(a), Some(b)) = (self.coeffs.get(&j), out.get(&(k - j))) {
                    let p = a * b;
                    acc = Some(match acc {
                        Some(x) => &x + &p,
                        None => p,
                    });
                }
            }
            if let Some(a) = acc {
                out.insert(k, -&(&a * &inv0));
            }
        }
        Ok(Self { coeffs: out, q_order: self.q_order, big_q_order: n })
    }
}

fn factor_series(f: &SeriesFactor, q_order: u32, big_q_order: u32, prec: i32) -> Result<TruncatedSeries> {
    if f.q_power == 0 && f.big_q_power == 0 {
        return Err(Error::UnsupportedSeries("factor (1 + c) with no q or Q dependence".into()));
    }
    let mut out = TruncatedSeries::zero(q_order, big_q_order);
    let step_s = 2 * f.q_power as i32;
    // number of terms that can contribute below both truncations
    let by_q = big_q_order.checked_div(f.big_q_power).map_or(usize::MAX, |k| k as usize + 1);
    let by_s = if step_s > 0 { (prec / step_s.max(1)) as usize + 1 } else { usize::MAX };
    let count = by_q.min(by_s);
    let binom = binomial_series_coeffs(f.exponent, count);
    let c = BigInt::from(f.coeff);
    let mut cpow = BigInt::one();
    for (j, b) in binom.iter().enumerate() {
        let coeff = b * &cpow;
        cpow *= &c;
        if coeff.is_zero() {
            continue;
        }
        let qk = f.big_q_power * j as u32;
        let se = step_s * j as i32;
        if qk > big_q_order || se >= prec {
            continue;
        }
        let term = SSeries::new(LaurentPoly::monomial(coeff, 0, se), prec);
        let sum = match out.coeffs.get(&qk) {
            Some(x) => x + &term,
            None => term,
        };
        out.coeffs.insert(qk, sum);
    }
    for k in 0..=big_q_order {
        out.coeffs.entry(k).or_insert_with(|| SSeries::zero(prec));
    }
    Ok(out)
}

/// Expands one of the supported infinite or finite products.
pub fn series_build(shape: &SeriesShape, q_order: u32, big_q_order: u32) -> Result<TruncatedSeries> {
    series_build_prec(shape, q_order, big_q_order, TruncatedSeries::target_prec(q_order))
}

/// As [`series_build`], with an explicit exclusive `s`-precision.
pub fn series_build_prec(shape: &SeriesShape, q_order: u32, big_q_order: u32, prec: i32) -> Result<TruncatedSeries> {
    // q^k = s^{2k}; factors with 2k ≥ prec cannot contribute
    let kmax = (prec.max(1) as u32).div_ceil(2);
    let factors: Vec<SeriesFactor> = match shape {
        SeriesShape::Conifold => {
            (1..=kmax).map(|k| SeriesFactor { coeff: 1, q_power: k, big_q_power: 1, exponent: k as i32 }).collect()
        }
        SeriesShape::MacMahon => {
            (1..=kmax).map(|k| SeriesFactor { coeff: -1, q_power: k, big_q_power: 0, exponent: -(k as i32) }).collect()
        }
        SeriesShape::Factors(f) => f.clone(),
    };
    let mut acc = TruncatedSeries::constant(SSeries::one(prec), q_order, big_q_order);
    for f in &factors {
        acc = acc.mul(&factor_series(f, q_order, big_q_order, prec)?);
    }
    Ok(acc)
}

/// Coefficient-wise comparison through the common truncation.
///
/// Both series must declare the same orders, and every stored coefficient must be known
/// through `s^{2·q_order}`.
pub fn series_equal(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<bool> {
    Ok(series_first_mismatch(a, b)?.is_none())
}

/// First `(Q-exponent, s-exponent)` where the two series differ, if any.
pub fn series_first_mismatch(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<Option<(u32, i32)>> {
    if a.q_order != b.q_order || a.big_q_order != b.big_q_order {
        return Err(Error::TruncationMismatch(format!(
            "(q_order {}, Q_order {}) vs (q_order {}, Q_order {})",
            a.q_order, a.big_q_order, b.q_order, b.big_q_order
        )));
    }
    let target = TruncatedSeries::target_prec(a.q_order);
    let have = a.min_prec().min(b.min_prec());
    if have < target {
        return Err(Error::InsufficientOrder { needed: target.max(0) as usize, have: have.max(0) as usize });
    }
    let zero = SSeries::zero(target);
    for k in 0..=a.big_q_order {
        let x = a.coeffs.get(&k).unwrap_or(&zero).with_prec(target);
        let y = b.coeffs.get(&k).unwrap_or(&zero).with_prec(target);
        let d = &x - &y;
        if !d.is_zero() {
            return Ok(Some((k, d.order())));
        }
    }
    Ok(None)
}
