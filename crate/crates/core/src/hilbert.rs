//! Punctual Hilbert schemes of the supported germs, by enumeration of torus-fixed ideals.
//!
//! For `y^p = x^q` the fixed ideals are the monomial ideals of `C[[t^p, t^q]]`, i.e. modules
//! `Δ ⊆ Γ = ⟨p, q⟩` over the semigroup; such a `Δ` is determined by its finite gap set
//! `Γ \ Δ`, which is a down-set for the order `x ≤ y ⇔ y − x ∈ Γ`. The weighted Euler
//! characteristic `∫ (1 − v²)^m dχ` is the sum of `(1 − v²)^{m}` over fixed points.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::coefficients::{LaurentPoly, SSeries};
use crate::error::{Error, Result};

/// A monomial ideal of the semigroup ring `C[[t^p, t^q]]`, stored by its gap set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SemigroupModule {
    pub generators: (u32, u32),
    pub gaps: BTreeSet<u32>,
}

/// The monomial ideal `(x^a, y^b)` of the node `xy = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeIdeal {
    pub a: u32,
    pub b: u32,
}

/// Germ classes with a finite fixed-point enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveKind {
    Smooth,
    Node,
    Unibranch { p: u32, q: u32 },
}

/// Membership in `⟨p, q⟩`.
pub fn in_semigroup(x: u32, p: u32, q: u32) -> bool {
    let mut rest = x as i64;
    while rest >= 0 {
        if rest % p as i64 == 0 {
            return true;
        }
        rest -= q as i64;
    }
    false
}

impl SemigroupModule {
    pub fn colength(&self) -> usize {
        self.gaps.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        let (p, q) = self.generators;
        in_semigroup(x, p, q) && !self.gaps.contains(&x)
    }

    /// `Δ + Γ ⊆ Δ`, checked through the two semigroup generators.
    pub fn is_closed(&self) -> bool {
        let (p, q) = self.generators;
        let top = self.gaps.last().copied().unwrap_or(0);
        (0..=top).filter(|&x| self.contains(x)).all(|x| [x + p, x + q].iter().all(|&y| self.contains(y)))
    }

    /// Minimal generators: elements of `Δ` not of the form `δ + g` with `g ∈ Γ \ {0}`.
    pub fn min_generators(&self) -> u32 {
        let (p, q) = self.generators;
        let top = self.gaps.last().map_or(0, |&g| g + 1) + p * q + p + q;
        (0..=top)
            .filter(|&x| self.contains(x))
            .filter(|&x| !(x >= p && self.contains(x - p)) && !(x >= q && self.contains(x - q)))
            .count() as u32
    }
}

impl NodeIdeal {
    pub fn colength(&self) -> u32 {
        self.a + self.b - 1
    }

    pub fn min_generators(&self) -> u32 {
        2
    }
}

/// All semigroup modules of colength `n` over `⟨p, q⟩`.
pub fn enumerate_modules(p: u32, q: u32, n: usize) -> Result<Vec<SemigroupModule>> {
    if p == 0 || q == 0 || p.gcd(&q) != 1 {
        return Err(Error::UnsupportedKind(format!("semigroup ⟨{p},{q}⟩ needs coprime positive generators")));
    }
    // an element whose down-set exceeds n can never be a gap
    let candidates: Vec<u32> = (0..=(n as u32) * p.max(q))
        .filter(|&x| in_semigroup(x, p, q))
        .filter(|&x| (0..=x).filter(|&y| in_semigroup(y, p, q) && in_semigroup(x - y, p, q)).count() <= n)
        .collect();
    let mut out = Vec::new();
    let mut chosen = BTreeSet::new();
    extend_downsets(&candidates, 0, n, p, q, &mut chosen, &mut out);
    for m in &out {
        assert!(m.is_closed(), "enumerated module {:?} is not closed", m.gaps);
    }
    Ok(out)
}

fn extend_downsets(
    candidates: &[u32],
    idx: usize,
    n: usize,
    p: u32,
    q: u32,
    chosen: &mut BTreeSet<u32>,
    out: &mut Vec<SemigroupModule>,
) {
    if chosen.len() == n {
        out.push(SemigroupModule { generators: (p, q), gaps: chosen.clone() });
        return;
    }
    let Some(&x) = candidates.get(idx) else { return };
    extend_downsets(candidates, idx + 1, n, p, q, chosen, out);
    let below_ok = [p, q].iter().all(|&g| x < g || !in_semigroup(x - g, p, q) || chosen.contains(&(x - g)));
    if below_ok {
        chosen.insert(x);
        extend_downsets(candidates, idx + 1, n, p, q, chosen, out);
        chosen.remove(&x);
    }
}

/// The fixed ideals `(x^a, y^b)` of colength `n ≥ 1`.
pub fn node_ideals(n: u32) -> Vec<NodeIdeal> {
    (1..=n).map(|a| NodeIdeal { a, b: n + 1 - a }).collect()
}

/// `(1 − v²)^m`.
fn weight(m: u32) -> LaurentPoly {
    let base = &LaurentPoly::one() - &LaurentPoly::monomial(1, 2, 0);
    base.pow(m)
}

/// Coefficients of `s^{2n}` in `Z_{C,p}(v, s)` for `n = 0..=max_n`, as polynomials in `v`.
pub fn z_curve_coefficients(kind: CurveKind, max_n: u32) -> Result<Vec<LaurentPoly>> {
    (0..=max_n)
        .map(|n| match kind {
            CurveKind::Smooth => Ok(weight(1)),
            CurveKind::Node if n == 0 => Ok(weight(1)),
            CurveKind::Node => {
                Ok(node_ideals(n).iter().fold(LaurentPoly::zero(), |acc, i| &acc + &weight(i.min_generators())))
            }
            CurveKind::Unibranch { p, q } => {
                let bound = p.min(q);
                let mut acc = LaurentPoly::zero();
                for m in enumerate_modules(p, q, n as usize)? {
                    let g = m.min_generators();
                    if g == 0 || g > bound {
                        return Err(Error::Inconsistent(format!(
                            "module {:?} has {g} generators, outside 1..={bound}",
                            m.gaps
                        )));
                    }
                    acc = &acc + &weight(g);
                }
                Ok(acc)
            }
        })
        .collect()
}

/// `Z_{C,p}(v, s)` exact through `s^{2N}`.
pub fn z_curve(kind: CurveKind, max_n: u32) -> Result<SSeries> {
    let coeffs = z_curve_coefficients(kind, max_n)?;
    let mut poly = LaurentPoly::zero();
    for (n, c) in coeffs.iter().enumerate() {
        poly = &poly + &c.shift(0, 2 * n as i32);
    }
    Ok(SSeries::new(poly, 2 * max_n as i32 + 1))
}

/// Number of fixed points of each colength: the Euler characteristics `χ(C_p^{[n]})`.
pub fn euler_characteristics(kind: CurveKind, max_n: u32) -> Result<Vec<BigInt>> {
    Ok(z_curve_coefficients(kind, max_n)?
        .iter()
        .map(|c| c.terms().filter(|((v, _), _)| *v == 0).map(|(_, k)| k.clone()).sum())
        .collect())
}
