use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One branch `y(x) = x^{q_0/p_0}(a_0 + x^{q_1/(p_0p_1)}(a_1 + …))`, truncated.
///
/// An empty list of pairs is the branch `y = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PuiseuxBranch {
    pub pairs: Vec<(u32, u32)>,
    #[serde(with = "rational_strings")]
    pub coeffs: Vec<BigRational>,
}

/// Numerical invariants of one branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchStats {
    pub multiplicity: u64,
    pub milnor: i64,
    pub framing_writhe: i64,
}

impl PuiseuxBranch {
    pub fn new(pairs: Vec<(u32, u32)>, coeffs: Vec<BigRational>) -> Result<Self> {
        let b = Self { pairs, coeffs };
        b.validate()?;
        Ok(b)
    }

    /// Integer leading coefficients, for convenience.
    pub fn with_int_coeffs(pairs: &[(u32, u32)], coeffs: &[i64]) -> Result<Self> {
        Self::new(pairs.to_vec(), coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    /// The single-pair branch `y = x^{q/p}`.
    pub fn monomial(p: u32, q: u32) -> Self {
        Self::with_int_coeffs(&[(p, q)], &[1]).expect("valid monomial branch")
    }

    /// The branch `y = 0`.
    pub fn degenerate() -> Self {
        Self { pairs: Vec::new(), coeffs: Vec::new() }
    }

    pub fn is_degenerate(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if self.pairs.len() != self.coeffs.len() {
            return Err(Error::InvalidGerm(format!(
                "{} Newton pairs but {} coefficients",
                self.pairs.len(),
                self.coeffs.len()
            )));
        }
        for &(p, q) in &self.pairs {
            if p == 0 || q == 0 || p.gcd(&q) != 1 {
                return Err(Error::InvalidGerm(format!("Newton pair ({p},{q}) must be coprime positive integers")));
            }
        }
        if self.coeffs.iter().any(Zero::is_zero) {
            return Err(Error::InvalidGerm("Puiseux coefficients must be nonzero".into()));
        }
        Ok(())
    }

    /// `α = q_0/p_0`, or `None` for the branch `y = 0` (α = ∞).
    pub fn alpha(&self) -> Option<Ratio<i64>> {
        self.pairs.first().map(|&(p, q)| Ratio::new(q as i64, p as i64))
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.first()
    }

    /// The series `z` after the first step, in the variable `x^{1/p_0}`.
    pub fn tail(&self) -> Self {
        if self.is_degenerate() {
            return self.clone();
        }
        Self { pairs: self.pairs[1..].to_vec(), coeffs: self.coeffs[1..].to_vec() }
    }

    /// `∏ p_i`: the number of strands around the annulus.
    pub fn multiplicity(&self) -> u64 {
        self.pairs.iter().map(|&(p, _)| p as u64).product()
    }

    /// Absolute exponents of the Puiseux terms, `e_i = Σ_{j≤i} q_j/(p_0⋯p_j)`.
    pub fn exponents(&self) -> Vec<Ratio<i64>> {
        let mut out = Vec::with_capacity(self.pairs.len());
        let mut denom = 1i64;
        let mut e = Ratio::from_integer(0);
        for &(p, q) in &self.pairs {
            denom *= p as i64;
            e += Ratio::new(q as i64, denom);
            out.push(e);
        }
        out
    }

    /// Multiplicity, Milnor number (from `1 - μ = -Σ p_i q_i P_i² + Σ q_i P_i + ∏ p_i` with
    /// `P_i = ∏_{j>i} p_j`) and the blackboard writhe `Σ p_i q_i P_i²` of the annulus diagram.
    pub fn stats(&self) -> BranchStats {
        let n = self.pairs.len();
        // products of p_j over j > i
        let mut after = vec![1i64; n + 1];
        for i in (0..n).rev() {
            after[i] = after[i + 1] * self.pairs[i].0 as i64;
        }
        let mut writhe = 0i64;
        let mut linear = 0i64;
        for (i, &(p, q)) in self.pairs.iter().enumerate() {
            let tail = after[i + 1];
            writhe += p as i64 * q as i64 * tail * tail;
            linear += q as i64 * tail;
        }
        let one_minus_mu = -writhe + linear + after[0];
        BranchStats { multiplicity: after[0] as u64, milnor: 1 - one_minus_mu, framing_writhe: writhe }
    }

    /// Lowest-`v` exponent contribution `q_s + q_{s-1}p_s + … + q_0p_1⋯p_s` per unit of label size.
    pub fn v_weight(&self) -> i64 {
        let mut acc = 0i64;
        let mut prod = 1i64;
        for &(p, q) in self.pairs.iter().rev() {
            acc += q as i64 * prod;
            prod *= p as i64;
        }
        acc
    }
}

/// A root of unity `exp(2πiθ)` times a rational: equality of two such terms.
fn terms_equal(c1: &BigRational, t1: Ratio<i64>, c2: &BigRational, t2: Ratio<i64>) -> bool {
    let d = t1 - t2;
    let d = d - Ratio::from_integer(d.floor().to_integer());
    if d.is_zero() {
        c1 == c2
    } else if d == Ratio::new(1, 2) {
        *c1 == -c2.clone()
    } else {
        false
    }
}

/// `x`-order of `y_1^{(k_1)} - y_2^{(k_2)}` for the given conjugates.
fn contact_order(b1: &PuiseuxBranch, k1: i64, b2: &PuiseuxBranch, k2: i64) -> Result<Ratio<i64>> {
    let (e1, e2) = (b1.exponents(), b2.exponents());
    let (mut i, mut j) = (0usize, 0usize);
    loop {
        let next1 = e1.get(i).copied();
        let next2 = e2.get(j).copied();
        match (next1, next2) {
            (None, None) => {
                return Err(Error::Inseparable(format!("{b1:?} and {b2:?} agree through their truncation")))
            }
            (Some(a), None) => return Ok(a),
            (None, Some(b)) => return Ok(b),
            (Some(a), Some(b)) if a < b => return Ok(a),
            (Some(a), Some(b)) if b < a => return Ok(b),
            (Some(a), Some(_)) => {
                let th1 = frac(a * k1);
                let th2 = frac(a * k2);
                if !terms_equal(&b1.coeffs[i], th1, &b2.coeffs[j], th2) {
                    return Ok(a);
                }
                i += 1;
                j += 1;
            }
        }
    }
}

fn frac(x: Ratio<i64>) -> Ratio<i64> {
    x - Ratio::from_integer(x.floor().to_integer())
}

/// Intersection multiplicity of two branches: the sum over all conjugate pairs of
/// Puiseux roots of the `x`-order of their difference.
pub fn pairwise_linking(b1: &PuiseuxBranch, b2: &PuiseuxBranch) -> Result<u64> {
    let (p1, p2) = (b1.multiplicity() as i64, b2.multiplicity() as i64);
    let mut total = Ratio::from_integer(0i64);
    for k1 in 0..p1 {
        for k2 in 0..p2 {
            total += contact_order(b1, k1, b2, k2)?;
        }
    }
    if !total.is_integer() || total.is_negative() {
        return Err(Error::Inconsistent(format!("non-integral intersection number {total}")));
    }
    Ok(total.to_integer() as u64)
}

pub(crate) mod rational_strings {
    use std::str::FromStr;

    use num_rational::BigRational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn parse(s: &str) -> Result<BigRational, String> {
        BigRational::from_str(s.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))
    }

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter().map(|s| parse(s).map_err(D::Error::custom)).collect()
    }
}

impl Default for PuiseuxBranch {
    fn default() -> Self {
        Self::degenerate()
    }
}
