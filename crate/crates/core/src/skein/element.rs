use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;

use crate::coefficients::{LambdaScalar, LaurentPoly};
use crate::error::{Error, Result};
use crate::symmetric::{lr_product, plethysm_pm, Partition, SchurExpansion};

/// An element `Σ c_λ Q_λ` of the positive skein of the annulus.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnnulusElement {
    expansion: SchurExpansion,
}

/// `v^A Σ c_γ(s) Q_γ`: every coefficient is a monomial in `v` of the same degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousElement {
    pub v_degree: i32,
    /// Size shared by every key.
    pub degree: u32,
    /// Coefficients with the `v^A` factor removed; functions of `s` alone.
    pub body: BTreeMap<Partition, LambdaScalar>,
}

impl AnnulusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `Q_∅`, the unit.
    pub fn one() -> Self {
        Self::basis(Partition::empty())
    }

    pub fn basis(lambda: Partition) -> Self {
        Self { expansion: SchurExpansion::basis(lambda) }
    }

    pub fn from_expansion(expansion: SchurExpansion) -> Self {
        Self { expansion }
    }

    pub fn expansion(&self) -> &SchurExpansion {
        &self.expansion
    }

    pub fn terms(&self) -> &BTreeMap<Partition, LambdaScalar> {
        self.expansion.terms()
    }

    pub fn coeff(&self, lambda: &Partition) -> LambdaScalar {
        self.expansion.coeff(lambda)
    }

    pub fn is_zero(&self) -> bool {
        self.expansion.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { expansion: self.expansion.add(&other.expansion) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { expansion: self.expansion.sub(&other.expansion) }
    }

    pub fn scale(&self, c: &LambdaScalar) -> Self {
        Self { expansion: self.expansion.scale(c) }
    }

    /// Placing one annulus inside the other.
    pub fn mul(&self, other: &Self) -> Self {
        Self { expansion: self.expansion.mul(&other.expansion) }
    }

    pub fn product<'a>(items: impl IntoIterator<Item = &'a AnnulusElement>) -> Self {
        items.into_iter().fold(Self::one(), |acc, x| acc.mul(x))
    }

    /// The common size of all keys, if any.
    pub fn degree(&self) -> Option<u32> {
        self.expansion.degree()
    }

    /// `τ^{r}`: multiplies the `Q_ν` coefficient by `v^{-r|ν|} s^{r κ_ν}`.
    pub fn frame(&self, r: Ratio<i64>) -> Result<Self> {
        if r == Ratio::from_integer(0) {
            return Ok(self.clone());
        }
        let mut out = SchurExpansion::zero();
        for (nu, c) in self.terms() {
            let a = exact_exponent(-r * nu.size() as i64, nu, "framing v-exponent")?;
            let b = exact_exponent(r * nu.kappa(), nu, "framing s-exponent")?;
            out.add_term(nu.clone(), c.shift(a, b));
        }
        Ok(Self { expansion: out })
    }

    /// Integer framing change.
    pub fn frame_by(&self, r: i64) -> Self {
        self.frame(Ratio::from_integer(r)).expect("integer framing is always integral")
    }

    /// Applies the plethysm `f ↦ f[p_m]` to every basis element.
    pub fn plethysm(&self, m: u32) -> Self {
        let mut out = SchurExpansion::zero();
        for (lambda, c) in self.terms() {
            for (rho, &k) in plethysm_pm(lambda, m).iter() {
                out.add_term(rho.clone(), c.scale(&k.into()));
            }
        }
        Self { expansion: out }
    }

    /// Splits off the common `v`-monomial: succeeds iff the element has form `v^A Σ c_γ(s) Q_γ`
    /// with all keys of one size.
    pub fn homogeneous_form(&self) -> Result<HomogeneousElement> {
        let degree =
            self.degree().ok_or_else(|| Error::NotHomogeneous("keys of different sizes or empty element".into()))?;
        let mut v_degree = None;
        let mut body = BTreeMap::new();
        for (k, c) in self.terms() {
            let a = c
                .v_monomial_degree()
                .ok_or_else(|| Error::NotHomogeneous(format!("coefficient of {k} is not a v-monomial")))?;
            match v_degree {
                None => v_degree = Some(a),
                Some(b) if b != a => {
                    return Err(Error::NotHomogeneous(format!("v-degrees {b} and {a} differ (key {k})")))
                }
                _ => {}
            }
            body.insert(k.clone(), c.shift(-a, 0));
        }
        Ok(HomogeneousElement { v_degree: v_degree.unwrap_or(0), degree, body })
    }
}

impl HomogeneousElement {
    pub fn to_element(&self) -> AnnulusElement {
        let mut out = SchurExpansion::zero();
        for (k, c) in &self.body {
            out.add_term(k.clone(), c.shift(self.v_degree, 0));
        }
        AnnulusElement::from_expansion(out)
    }
}

fn exact_exponent(x: Ratio<i64>, key: &Partition, what: &str) -> Result<i32> {
    if !x.is_integer() {
        return Err(Error::Integrality(format!("{what} {x} at key {key}")));
    }
    Ok(x.to_integer() as i32)
}

/// `T_m^n(Q_1, …, Q_d)` with `d = gcd(m, n)`: the `(m, n)` torus pattern decorated by the
/// `d` elements, as `τ^{n/m}` applied to the plethysm of their product.
pub fn torus_satellite(m: u32, n: u32, decorations: &[AnnulusElement]) -> Result<AnnulusElement> {
    if m == 0 {
        return Err(Error::InvalidGerm("torus pattern needs m ≥ 1".into()));
    }
    let d = m.gcd(&n);
    if decorations.len() != d as usize {
        return Err(Error::InvalidGerm(format!(
            "torus pattern ({m},{n}) takes {d} decorations, got {}",
            decorations.len()
        )));
    }
    let (m1, n1) = (m / d, n / d);
    let product = AnnulusElement::product(decorations);
    product.plethysm(m1).frame(Ratio::new(n1 as i64, m1 as i64))
}

/// `S_m^n(X, Y)`: `X` on the `(m, n)` torus knot spliced with `Y` on the core.
///
/// Per basis pair: `v^{(n/m)|μ|} s^{-(n/m)κ_μ} τ^{n/m}(Q_λ[p_m] · Q_μ)`.
pub fn splice_satellite(m: u32, n: u32, x: &AnnulusElement, y: &AnnulusElement) -> Result<AnnulusElement> {
    if m == 0 || m.gcd(&n) != 1 {
        return Err(Error::InvalidGerm(format!("splice pattern ({m},{n}) must be coprime with m ≥ 1")));
    }
    let r = Ratio::new(n as i64, m as i64);
    let mut out = SchurExpansion::zero();
    for (lambda, cl) in x.terms() {
        let pl = plethysm_pm(lambda, m);
        for (mu, cm) in y.terms() {
            let base = cl * cm;
            // integer structure constants of Q_λ[p_m]·Q_μ; cancellations happen before the
            // exponents are required to be integral
            let mut structure: BTreeMap<Partition, i64> = BTreeMap::new();
            for (p, &k) in pl.iter() {
                for (rho, &lr) in lr_product(p, mu).iter() {
                    *structure.entry(rho.clone()).or_insert(0) += k * lr as i64;
                }
            }
            for (rho, k) in structure {
                if k == 0 {
                    continue;
                }
                let a = exact_exponent(r * (mu.size() as i64 - rho.size() as i64), &rho, "splice v-exponent")?;
                let b = exact_exponent(r * (rho.kappa() - mu.kappa()), &rho, "splice s-exponent")?;
                let c = LambdaScalar::from_poly(LaurentPoly::monomial(k, a, b));
                out.add_term(rho, &base * &c);
            }
        }
    }
    Ok(AnnulusElement::from_expansion(out))
}
