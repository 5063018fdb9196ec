use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coefficients::{LambdaScalar, LaurentPoly, SSeries};

/// `sign · v^{v_exponent} s^{s_exponent}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub sign: i32,
    pub v_exponent: i32,
    pub s_exponent: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { sign: 1, v_exponent: 0, s_exponent: 0 };

    pub fn apply(&self, x: &LambdaScalar) -> LambdaScalar {
        x.shift(self.v_exponent, self.s_exponent).scale(&BigInt::from(self.sign))
    }

    pub fn apply_series(&self, x: &SSeries) -> SSeries {
        x.shift(self.v_exponent, self.s_exponent).scale(&BigInt::from(self.sign))
    }
}

/// Truncation orders a check ran with; unused ones are omitted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orders {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q_order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub big_q_order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u32>,
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchReport {
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fitted: Option<Monomial>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected: Option<Monomial>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mismatch: Option<String>,
    pub orders: Orders,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl MatchReport {
    pub fn new(check: impl Into<String>, orders: Orders) -> Self {
        Self {
            check: check.into(),
            passed: true,
            fitted: None,
            expected: None,
            mismatch: None,
            orders,
            notes: Vec::new(),
        }
    }

    pub fn fail(&mut self, why: impl Into<String>) {
        self.passed = false;
        if self.mismatch.is_none() {
            self.mismatch = Some(why.into());
        }
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }
}

/// The unique `±v^a s^b` with `x = ±v^a s^b · reference` at lowest order, if one exists.
pub fn fit_leading(x: &SSeries, reference: &SSeries) -> Option<Monomial> {
    if x.is_zero() || reference.is_zero() {
        return None;
    }
    let (ox, or) = (x.order(), reference.order());
    let lx = x.s_coefficient(ox);
    let lr = reference.s_coefficient(or);
    let (vx, _) = lx.v_range()?;
    let (vr, _) = lr.v_range()?;
    let (cx, cr) = (lx.coeff(vx, 0), lr.coeff(vr, 0));
    let sign = if cx == cr {
        1
    } else if cx == -cr.clone() {
        -1
    } else {
        return None;
    };
    let m = Monomial { sign, v_exponent: vx - vr, s_exponent: ox - or };
    let shifted: LaurentPoly = lr.shift(m.v_exponent, 0).scale(&BigInt::from(sign));
    (shifted == lx).then_some(m)
}

/// First `s`-exponent (below the common precision) where `x ≠ m · reference`.
pub fn first_difference(x: &SSeries, reference: &SSeries, m: &Monomial) -> Option<i32> {
    let r = m.apply_series(reference);
    let prec = x.prec().min(r.prec());
    let d = &x.with_prec(prec) - &r.with_prec(prec);
    (!d.is_zero()).then(|| d.order())
}

/// Fits `x = m · reference` exactly on rational functions.
pub fn fit_exact(x: &LambdaScalar, reference: &LambdaScalar) -> Option<Monomial> {
    let ox = x.s_order()?;
    let or = reference.s_order()?;
    let m = fit_leading(&x.expand(ox + 1), &reference.expand(or + 1))?;
    (m.apply(reference) == *x).then_some(m)
}

/// `(sign, order)` when `x = sign · s^{order}(1 + O(s))` with no `v`.
pub fn leading_unit(x: &LambdaScalar) -> Option<(i32, i32)> {
    let o = x.s_order()?;
    let lead = x.expand(o + 1).s_coefficient(o);
    if lead == LaurentPoly::one() {
        Some((1, o))
    } else if lead == LaurentPoly::constant(-1) {
        Some((-1, o))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_monomial() {
        let z = LambdaScalar::one() - LambdaScalar::monomial(1, 2, 0);
        let z = &z * &LambdaScalar::inv_sym(1);
        let m = Monomial { sign: -1, v_exponent: 3, s_exponent: -2 };
        let x = m.apply(&z);
        assert_eq!(fit_exact(&x, &z), Some(m));
        let xs = x.expand(10);
        let zs = z.expand(12);
        assert_eq!(fit_leading(&xs, &zs), Some(m));
        assert_eq!(first_difference(&xs, &zs, &m), None);
        let other = &x + &LambdaScalar::monomial(1, 0, 7);
        assert_eq!(fit_exact(&other, &z), None);
        assert_eq!(first_difference(&other.expand(10), &zs, &m), Some(7));
    }

    #[test]
    fn report_roundtrip() {
        let mut r = MatchReport::new("demo", Orders { q_order: Some(4), ..Orders::default() });
        r.fitted = Some(Monomial::ONE);
        r.fail("x");
        let back: MatchReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(!back.passed);
    }
}
