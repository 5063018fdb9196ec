use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use serde::{Deserialize, Serialize};

use super::branch::{pairwise_linking, BranchStats, PuiseuxBranch};
use crate::coefficients::LambdaScalar;
use crate::error::{Error, Result};
use crate::skein::{splice_satellite, torus_satellite, trace_full, AnnulusElement, LinkElement};
use crate::symmetric::Partition;

/// Sign applied to the blackboard writhe in the framing correction of `W`.
///
/// Fixed by requiring the node germ to satisfy the HOMFLY/Hilbert-scheme identity exactly
/// (see the identities module's calibration check).
pub const FRAMING_SIGN: i64 = 1;

/// A plane-curve germ at the origin: Puiseux branches, optionally the axis `x = 0`, and one
/// label per component (axis last).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGerm", into = "RawGerm")]
pub struct CurveGerm {
    branches: Vec<PuiseuxBranch>,
    axis: bool,
    labels: Vec<Partition>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawGerm {
    #[serde(default)]
    branches: Vec<PuiseuxBranch>,
    #[serde(default)]
    axis: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Partition>>,
}

impl TryFrom<RawGerm> for CurveGerm {
    type Error = Error;

    fn try_from(raw: RawGerm) -> Result<Self> {
        match raw.labels {
            Some(labels) => CurveGerm::new(raw.branches, raw.axis, labels),
            None => CurveGerm::unlabelled(raw.branches, raw.axis),
        }
    }
}

impl From<CurveGerm> for RawGerm {
    fn from(g: CurveGerm) -> Self {
        RawGerm { branches: g.branches, axis: g.axis, labels: Some(g.labels) }
    }
}

/// Numerical invariants of a germ; components are the branches followed by the axis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkStats {
    pub branches: Vec<BranchStats>,
    pub linking: Vec<Vec<u64>>,
    pub total_linking: u64,
    pub milnor: i64,
}

/// Predicted and verified lowest term `sign · v^A s^B Q_γ` of a decorated link element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowestProfile {
    pub gamma: Partition,
    pub v_exponent: i32,
    pub s_exponent: i32,
    pub sign: i32,
}

impl CurveGerm {
    pub fn new(branches: Vec<PuiseuxBranch>, axis: bool, labels: Vec<Partition>) -> Result<Self> {
        let g = Self { branches, axis, labels };
        g.validate()?;
        Ok(g)
    }

    /// Every component labelled `(1)`.
    pub fn unlabelled(branches: Vec<PuiseuxBranch>, axis: bool) -> Result<Self> {
        let n = branches.len() + axis as usize;
        Self::new(branches, axis, vec![Partition::single_row(1); n])
    }

    /// `y = 0`.
    pub fn smooth() -> Self {
        Self::unlabelled(vec![PuiseuxBranch::degenerate()], false).unwrap()
    }

    /// `y² = x²`, as the branches `y = ±x`.
    pub fn node() -> Self {
        let b = |a| PuiseuxBranch::with_int_coeffs(&[(1, 1)], &[a]).unwrap();
        Self::unlabelled(vec![b(1), b(-1)], false).unwrap()
    }

    /// `y^p = x^q`.
    pub fn torus_knot(p: u32, q: u32) -> Result<Self> {
        Self::unlabelled(vec![PuiseuxBranch::with_int_coeffs(&[(p, q)], &[1])?], false)
    }

    pub fn branches(&self) -> &[PuiseuxBranch] {
        &self.branches
    }

    pub fn has_axis(&self) -> bool {
        self.axis
    }

    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }

    pub fn axis_label(&self) -> Option<&Partition> {
        self.axis.then(|| self.labels.last().unwrap())
    }

    pub fn components(&self) -> usize {
        self.branches.len() + self.axis as usize
    }

    pub fn with_labels(&self, labels: Vec<Partition>) -> Result<Self> {
        Self::new(self.branches.clone(), self.axis, labels)
    }

    /// The same branches with the axis added, labelled `label`.
    pub fn with_axis(&self, label: Partition) -> Result<Self> {
        if self.axis {
            return Err(Error::InvalidGerm("germ already contains the axis".into()));
        }
        let mut labels = self.labels.clone();
        labels.push(label);
        Self::new(self.branches.clone(), true, labels)
    }

    pub fn without_axis(&self) -> Self {
        if !self.axis {
            return self.clone();
        }
        let mut labels = self.labels.clone();
        labels.pop();
        Self { branches: self.branches.clone(), axis: false, labels }
    }

    pub fn validate(&self) -> Result<()> {
        if self.branches.is_empty() && !self.axis {
            return Err(Error::InvalidGerm("a germ needs at least one branch".into()));
        }
        if self.labels.len() != self.components() {
            return Err(Error::InvalidGerm(format!(
                "{} labels for {} components",
                self.labels.len(),
                self.components()
            )));
        }
        for b in &self.branches {
            b.validate()?;
        }
        for i in 0..self.branches.len() {
            for j in i + 1..self.branches.len() {
                pairwise_linking(&self.branches[i], &self.branches[j])?;
            }
        }
        Ok(())
    }

    pub fn stats(&self) -> Result<LinkStats> {
        let branches: Vec<BranchStats> = self.branches.iter().map(PuiseuxBranch::stats).collect();
        let n = self.components();
        let mut linking = vec![vec![0u64; n]; n];
        for i in 0..self.branches.len() {
            for (j, other) in self.branches.iter().enumerate().skip(i + 1) {
                let lk = pairwise_linking(&self.branches[i], other)?;
                linking[i][j] = lk;
                linking[j][i] = lk;
            }
            if self.axis {
                // the axis meets a branch with multiplicity ∏ p
                linking[i][n - 1] = branches[i].multiplicity;
                linking[n - 1][i] = branches[i].multiplicity;
            }
        }
        let total_linking: u64 = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| linking[i][j]).sum();
        let mut milnor_minus_one: i64 = branches.iter().map(|b| b.milnor - 1).sum();
        if self.axis {
            milnor_minus_one -= 1;
        }
        milnor_minus_one += 2 * total_linking as i64;
        Ok(LinkStats { branches, linking, total_linking, milnor: milnor_minus_one + 1 })
    }

    /// Decorations `Q_{μ_i^t}` of the branches.
    pub fn decorations(&self) -> Vec<AnnulusElement> {
        self.labels[..self.branches.len()].iter().map(|l| AnnulusElement::basis(l.transpose())).collect()
    }

    /// The link in the solid torus with its axis meridian kept symbolic.
    pub fn link_element(&self) -> Result<LinkElement> {
        let body = assemble_decorated(&self.branches, &self.decorations())?;
        Ok(LinkElement { body, meridian: self.axis_label().map(Partition::transpose) })
    }

    /// `[L_C ⋆ (Q_{μ⃗^t})]` with the axis meridian (if any) applied.
    pub fn annulus_element(&self) -> Result<AnnulusElement> {
        self.link_element()?.resolve()
    }

    /// The lowest-order term of the decorated element, predicted from the Newton data and
    /// checked against the constructed element.
    pub fn lowest_profile(&self) -> Result<LowestProfile> {
        if self.axis {
            return Err(Error::InvalidGerm("lowest profile is defined without the axis".into()));
        }
        let mut parts = Vec::new();
        let mut a = 0i64;
        for (b, l) in self.branches.iter().zip(&self.labels) {
            let lt = l.transpose();
            for _ in 0..b.multiplicity() {
                parts.extend_from_slice(lt.parts());
            }
            a -= l.size() as i64 * b.v_weight();
        }
        let gamma = Partition::from_unsorted(parts);
        let elem = self.annulus_element()?;
        let h = elem.homogeneous_form().map_err(|e| Error::Inconsistent(e.to_string()))?;
        if h.v_degree as i64 != a {
            return Err(Error::Inconsistent(format!("v-degree {} but predicted {a}", h.v_degree)));
        }
        for k in h.body.keys() {
            if !gamma.dominance_leq(k)? {
                return Err(Error::Inconsistent(format!("key {k} does not dominate {gamma}")));
            }
        }
        let lead = h.body.get(&gamma).ok_or_else(|| Error::Inconsistent(format!("predicted key {gamma} absent")))?;
        let (b, sign) = signed_s_monomial(lead)
            .ok_or_else(|| Error::Inconsistent(format!("coefficient of {gamma} is {lead}, not ±s^B")))?;
        for (k, c) in &h.body {
            if c.s_order().is_some_and(|o| o < b) {
                return Err(Error::Inconsistent(format!("coefficient of {k} has a pole after dividing by s^{b}")));
            }
        }
        Ok(LowestProfile { gamma, v_exponent: a as i32, s_exponent: b, sign })
    }

    /// `W(L, μ⃗) = s^{-Σ wr_i κ} v^{Σ wr_i |μ_i|} ⟨L ⋆ Q_{μ⃗^t}⟩`.
    pub fn colored_w(&self) -> Result<LambdaScalar> {
        self.colored_w_with_sign(FRAMING_SIGN)
    }

    /// [`Self::colored_w`] with an explicit sign on the writhe, for calibration.
    pub fn colored_w_with_sign(&self, framing_sign: i64) -> Result<LambdaScalar> {
        let trace = trace_full(&self.annulus_element()?);
        let (mut va, mut sb) = (0i64, 0i64);
        for (b, l) in self.branches.iter().zip(&self.labels) {
            let wr = framing_sign * b.stats().framing_writhe;
            sb -= wr * l.transpose().kappa();
            va += wr * l.size() as i64;
        }
        Ok(trace.shift(va as i32, sb as i32))
    }

    /// The HOMFLY polynomial `(-1)^{#L} v^{2 lk} W(L, (1), …, (1))`.
    pub fn homfly_p(&self) -> Result<LambdaScalar> {
        self.homfly_p_with_sign(FRAMING_SIGN)
    }

    /// [`Self::homfly_p`] with an explicit sign on the writhe, for calibration.
    pub fn homfly_p_with_sign(&self, framing_sign: i64) -> Result<LambdaScalar> {
        if self.labels.iter().any(|l| *l != Partition::single_row(1)) {
            return Err(Error::InvalidGerm("the HOMFLY polynomial needs every label equal to (1)".into()));
        }
        let lk = self.stats()?.total_linking as i32;
        let sign = if self.components().is_multiple_of(2) { 1 } else { -1 };
        Ok(self.colored_w_with_sign(framing_sign)?.shift(2 * lk, 0).scale(&BigInt::from(sign)))
    }
}

/// `±s^B` with no `v` and no denominator.
fn signed_s_monomial(c: &LambdaScalar) -> Option<(i32, i32)> {
    if !c.denominator().is_empty() || c.numerator().len() != 1 {
        return None;
    }
    let (&(va, sb), k) = c.numerator().terms().next()?;
    if va != 0 {
        return None;
    }
    if *k == BigInt::from(1) {
        Some((sb, 1))
    } else if *k == BigInt::from(-1) {
        Some((sb, -1))
    } else {
        None
    }
}

/// Sort key putting `α = ∞` last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Slope {
    Finite(Ratio<i64>),
    Infinite,
}

/// The skein element of a collection of branches, each carrying its own decoration.
///
/// Branches are grouped by leading pair `(α, a)`; each group's tails are assembled
/// recursively, groups with the same `α` are multiplied, and the `α`-sorted factors are
/// nested by splicing, innermost a torus pattern (or bare, for `α = ∞`).
pub fn assemble_decorated(branches: &[PuiseuxBranch], decorations: &[AnnulusElement]) -> Result<AnnulusElement> {
    if branches.len() != decorations.len() {
        return Err(Error::InvalidGerm("one decoration per branch required".into()));
    }
    if branches.is_empty() {
        return Ok(AnnulusElement::one());
    }
    type Group = Vec<(PuiseuxBranch, AnnulusElement)>;
    let mut by_slope: BTreeMap<Slope, BTreeMap<Option<BigRational>, Group>> = BTreeMap::new();
    for (b, d) in branches.iter().zip(decorations) {
        let slope = b.alpha().map_or(Slope::Infinite, Slope::Finite);
        by_slope.entry(slope).or_default().entry(b.leading_coeff().cloned()).or_default().push((b.tail(), d.clone()));
    }
    let mut layers = Vec::with_capacity(by_slope.len());
    for (slope, groups) in by_slope {
        let mut factors = Vec::with_capacity(groups.len());
        for (_, group) in groups {
            if slope == Slope::Infinite {
                if group.len() > 1 {
                    return Err(Error::Inseparable("repeated branch y = 0".into()));
                }
                factors.push(group[0].1.clone());
            } else {
                let (tails, decs): (Vec<_>, Vec<_>) = group.into_iter().unzip();
                factors.push(assemble_decorated(&tails, &decs)?);
            }
        }
        layers.push((slope, AnnulusElement::product(&factors)));
    }
    let (last_slope, last) = layers.pop().unwrap();
    let mut acc = match last_slope {
        Slope::Infinite => last,
        Slope::Finite(r) => torus_satellite(*r.denom() as u32, *r.numer() as u32, &[last])?,
    };
    while let Some((slope, layer)) = layers.pop() {
        let Slope::Finite(r) = slope else { unreachable!("∞ sorts last") };
        acc = splice_satellite(*r.denom() as u32, *r.numer() as u32, &layer, &acc)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::skein::{apply_meridian, Mode};

    fn vs(c: i64, a: i32, b: i32) -> LambdaScalar {
        LambdaScalar::monomial(c, a, b)
    }

    fn elem(terms: &[(Partition, LambdaScalar)]) -> AnnulusElement {
        terms.iter().fold(AnnulusElement::zero(), |acc, (k, c)| acc.add(&AnnulusElement::basis(k.clone()).scale(c)))
    }

    fn br(pairs: &[(u32, u32)], coeffs: &[i64]) -> PuiseuxBranch {
        PuiseuxBranch::with_int_coeffs(pairs, coeffs).unwrap()
    }

    #[test]
    fn element_examples() {
        for l in Partition::all_up_to(3) {
            let g = CurveGerm::new(vec![PuiseuxBranch::degenerate()], false, vec![l.clone()]).unwrap();
            assert_eq!(g.annulus_element().unwrap(), AnnulusElement::basis(l.transpose()));
        }
        let trefoil = CurveGerm::torus_knot(2, 3).unwrap().annulus_element().unwrap();
        assert_eq!(trefoil, elem(&[(part![2], vs(1, -3, 3)), (part![1, 1], vs(-1, -3, -3))]));
        let node = CurveGerm::node().annulus_element().unwrap();
        assert_eq!(node, elem(&[(part![2], vs(1, -2, 2)), (part![1, 1], vs(1, -2, -2))]));
    }

    #[test]
    fn profile_examples() {
        let p = CurveGerm::torus_knot(2, 3).unwrap().lowest_profile().unwrap();
        assert_eq!(p, LowestProfile { gamma: part![1, 1], v_exponent: -3, s_exponent: -3, sign: -1 });
        let p = CurveGerm::node().lowest_profile().unwrap();
        assert_eq!(p, LowestProfile { gamma: part![1, 1], v_exponent: -2, s_exponent: -2, sign: 1 });
        let l = part![2, 1, 1];
        let g = CurveGerm::new(vec![PuiseuxBranch::degenerate()], false, vec![l.clone()]).unwrap();
        let p = g.lowest_profile().unwrap();
        assert_eq!(p, LowestProfile { gamma: l.transpose(), v_exponent: 0, s_exponent: 0, sign: 1 });
    }

    #[test]
    fn unknot_homfly() {
        let expect = (vs(1, 1, 0) - vs(1, -1, 0)) * LambdaScalar::inv_sym(1);
        assert_eq!(CurveGerm::smooth().homfly_p().unwrap(), expect);
        let g = CurveGerm::smooth().with_labels(vec![part![2]]).unwrap();
        assert!(g.homfly_p().is_err());
    }

    #[test]
    fn empty_labels_give_one() {
        let g =
            CurveGerm::new(vec![br(&[(2, 3)], &[1]), br(&[(1, 1)], &[1])], true, vec![Partition::empty(); 3]).unwrap();
        assert!(g.colored_w().unwrap().is_one());
    }

    #[test]
    fn colored_unknot() {
        for l in Partition::all_up_to(3) {
            let g = CurveGerm::smooth().with_labels(vec![l.clone()]).unwrap();
            assert_eq!(g.colored_w().unwrap(), crate::skein::basis_trace(&l.transpose()));
        }
    }

    #[test]
    fn framing_correction_compensates_padding() {
        // appending a trivial pair (1, q) re-frames the same knot; W must not notice
        for l in [part![1], part![2], part![1, 1], part![2, 1]] {
            let plain = CurveGerm::torus_knot(2, 3).unwrap().with_labels(vec![l.clone()]).unwrap();
            for q in 1..4 {
                let padded = CurveGerm::new(vec![br(&[(2, 3), (1, q)], &[1, 1])], false, vec![l.clone()]).unwrap();
                assert_ne!(padded.annulus_element().unwrap(), plain.annulus_element().unwrap());
                assert_eq!(padded.colored_w().unwrap(), plain.colored_w().unwrap(), "{l} q={q}");
            }
        }
    }

    #[test]
    fn axis_is_outer_meridian() {
        let g = CurveGerm::torus_knot(2, 3).unwrap();
        for l in [part![1], part![2], part![1, 1]] {
            let with = g.with_axis(l.clone()).unwrap();
            let plain = g.annulus_element().unwrap();
            assert_eq!(with.annulus_element().unwrap(), apply_meridian(&l.transpose(), &plain, Mode::Full).unwrap());
        }
    }

    #[test]
    fn stats_coherence() {
        let g = CurveGerm::new(
            vec![br(&[(2, 3)], &[1]), br(&[(2, 5)], &[1]), br(&[(1, 1)], &[2])],
            false,
            vec![part![1]; 3],
        )
        .unwrap();
        let st = g.stats().unwrap();
        assert_eq!(st.branches.iter().map(|b| b.multiplicity).collect::<Vec<_>>(), vec![2, 2, 1]);
        // μ of (y² - x³)(y² - x⁵)(y - 2x)
        assert_eq!(st.linking[0][1], 6);
        assert_eq!(st.linking[0][2], 2);
        assert_eq!(st.milnor, 1 + (1 + 3 - 1) + 2 * (6 + 2 + 2));
        assert_eq!(CurveGerm::node().stats().unwrap().milnor, 1);
        let axis = CurveGerm::smooth().with_axis(part![1]).unwrap();
        assert_eq!(axis.stats().unwrap().milnor, 1);
    }

    #[test]
    fn unlink_of_separate_germs() {
        let a = CurveGerm::smooth().homfly_p().unwrap();
        let q1 = AnnulusElement::basis(part![1]);
        assert_eq!(&a * &a, trace_full(&q1.mul(&q1)));
    }

    #[test]
    fn germ_json() {
        let g: CurveGerm =
            serde_json::from_str(r#"{"branches":[{"pairs":[[2,3]],"coeffs":["1"]}],"axis":false}"#).unwrap();
        assert_eq!(g, CurveGerm::torus_knot(2, 3).unwrap());
        let back: CurveGerm = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
        let bad = serde_json::from_str::<CurveGerm>(
            r#"{"branches":[{"pairs":[[2,3]],"coeffs":["1"]},{"pairs":[[2,3]],"coeffs":["1"]}]}"#,
        );
        assert!(bad.is_err());
    }
}
