use std::collections::HashMap;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::element::AnnulusElement;
use crate::coefficients::{LambdaScalar, LaurentPoly};
use crate::error::Result;
use crate::symmetric::{
    e_mu_series, e_series_required, schur_from_e_series, schur_qmurho, schur_qrho, Partition, SchurExpansion,
};

/// Which version of a meridian eigenvalue or trace to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// The honest value in the scalar ring.
    Full,
    /// The lowest-order part in `v`, with the power of `v` stripped.
    Low,
}

static EIGEN_MEMO: Lazy<RwLock<HashMap<(Partition, Partition), LambdaScalar>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// `t_μ(Q_λ)`: the eigenvalue on `Q_μ` of the meridian decorated by `Q_λ`.
pub fn basis_eigenvalue(lambda: &Partition, mu: &Partition, mode: Mode) -> Result<LambdaScalar> {
    match mode {
        Mode::Low => Ok(schur_qmurho(lambda, mu)),
        Mode::Full => {
            let key = (lambda.clone(), mu.clone());
            if let Some(hit) = EIGEN_MEMO.read().get(&key) {
                return Ok(hit.clone());
            }
            let e = e_mu_series(mu, e_series_required(lambda));
            let v = schur_from_e_series(lambda, &e)?;
            EIGEN_MEMO.write().insert(key, v.clone());
            Ok(v)
        }
    }
}

/// `t_μ(X) = Σ c_λ t_μ(Q_λ)`.
pub fn meridian_eigenvalue(x: &AnnulusElement, mu: &Partition, mode: Mode) -> Result<LambdaScalar> {
    let mut acc = LambdaScalar::zero();
    for (lambda, c) in x.terms() {
        acc = &acc + &(c * &basis_eigenvalue(lambda, mu, mode)?);
    }
    Ok(acc)
}

/// `M_{Q_λ}(Y) = Σ_μ c_μ t_μ(Q_λ) Q_μ`.
pub fn apply_meridian(lambda: &Partition, y: &AnnulusElement, mode: Mode) -> Result<AnnulusElement> {
    let mut out = SchurExpansion::zero();
    for (mu, c) in y.terms() {
        out.add_term(mu.clone(), c * &basis_eigenvalue(lambda, mu, mode)?);
    }
    Ok(AnnulusElement::from_expansion(out))
}

/// `⟨Q_λ⟩ = ∏ (v^{-1}s^{c} - v s^{-c}) / (s^{h} - s^{-h})`.
pub fn basis_trace(lambda: &Partition) -> LambdaScalar {
    let mut num = LaurentPoly::one();
    for c in lambda.contents() {
        let c = c as i32;
        let f = &LaurentPoly::monomial(1, -1, c) - &LaurentPoly::monomial(1, 1, -c);
        num = &num * &f;
    }
    LambdaScalar::from_parts(num, lambda.hooks())
}

/// The element of the skein of the plane obtained by closing up: `Σ c_λ ⟨Q_λ⟩`.
pub fn trace_full(x: &AnnulusElement) -> LambdaScalar {
    x.terms().iter().map(|(k, c)| c * &basis_trace(k)).sum()
}

/// `⟨X⟩^{low}` for `X = v^A Σ c_γ(s) Q_γ`: `Σ c_γ(s) s_γ(q^ρ)`.
pub fn trace_low(x: &AnnulusElement) -> Result<LambdaScalar> {
    let h = x.homogeneous_form()?;
    Ok(h.body.iter().map(|(k, c)| c * &schur_qrho(k)).sum())
}

/// An annulus element, optionally encircled by one decorated meridian.
///
/// The meridian is kept symbolic so that the lowest-order trace can be taken with the
/// shifted principal specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkElement {
    pub body: AnnulusElement,
    pub meridian: Option<Partition>,
}

impl LinkElement {
    pub fn plain(body: AnnulusElement) -> Self {
        Self { body, meridian: None }
    }

    pub fn with_meridian(body: AnnulusElement, label: Partition) -> Self {
        Self { body, meridian: Some(label) }
    }

    /// The element with the meridian applied in full.
    pub fn resolve(&self) -> Result<AnnulusElement> {
        match &self.meridian {
            None => Ok(self.body.clone()),
            Some(l) => apply_meridian(l, &self.body, Mode::Full),
        }
    }

    pub fn trace(&self, mode: Mode) -> Result<LambdaScalar> {
        match mode {
            Mode::Full => Ok(trace_full(&self.resolve()?)),
            Mode::Low => match &self.meridian {
                None => trace_low(&self.body),
                Some(l) => {
                    let h = self.body.homogeneous_form()?;
                    let mut acc = LambdaScalar::zero();
                    for (g, c) in &h.body {
                        acc = &acc + &(&(c * &schur_qmurho(l, g)) * &schur_qrho(g));
                    }
                    Ok(acc)
                }
            },
        }
    }

    /// Power of `v` separating the full trace from the lowest-order one:
    /// `⟨X⟩ = v^{offset}(⟨X⟩^{low} + O(v))`.
    pub fn low_offset(&self) -> Result<i32> {
        let h = self.body.homogeneous_form()?;
        let extra = self.meridian.as_ref().map_or(0, |l| l.size() as i32);
        Ok(h.v_degree - h.degree as i32 - extra)
    }
}

/// `⟨M_λ X⟩^{low}` for `X` of homogeneous form.
pub fn trace_low_meridian(lambda: &Partition, x: &AnnulusElement) -> Result<LambdaScalar> {
    LinkElement::with_meridian(x.clone(), lambda.clone()).trace(Mode::Low)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::VProfile;
    use crate::part;
    use crate::skein::element::torus_satellite;
    use crate::symmetric::partition::tests::arb_partition;
    use proptest::prelude::*;

    fn q(l: Partition) -> AnnulusElement {
        AnnulusElement::basis(l)
    }

    #[test]
    fn trace_examples() {
        let unknot = (LambdaScalar::monomial(1, -1, 0) - LambdaScalar::monomial(1, 1, 0)) * LambdaScalar::inv_sym(1);
        assert_eq!(trace_full(&q(part![1])), unknot);
        assert!(trace_full(&AnnulusElement::one()).is_one());
        for l in Partition::all_up_to(4) {
            assert_eq!(trace_low(&q(l.clone())).unwrap(), schur_qrho(&l));
        }
    }

    #[test]
    fn empty_meridian_is_identity() {
        for mu in Partition::all_up_to(3) {
            for mode in [Mode::Full, Mode::Low] {
                assert!(meridian_eigenvalue(&AnnulusElement::one(), &mu, mode).unwrap().is_one());
            }
        }
    }

    #[test]
    fn low_eigenvalue_single_box() {
        let x = basis_eigenvalue(&part![1], &part![1], Mode::Low).unwrap();
        let den = LambdaScalar::one() - LambdaScalar::monomial(1, 0, 2);
        let num = LambdaScalar::monomial(1, 0, 1) - LambdaScalar::monomial(1, 0, 3) - LambdaScalar::monomial(1, 0, -1);
        assert_eq!(&x * &den, num);
    }

    #[test]
    fn hopf_symmetry() {
        let all = Partition::all_up_to(3);
        for l in &all {
            for m in &all {
                let a = &basis_eigenvalue(l, m, Mode::Full).unwrap() * &basis_trace(m);
                let b = &basis_eigenvalue(m, l, Mode::Full).unwrap() * &basis_trace(l);
                assert_eq!(a, b, "{l} {m}");
            }
        }
    }

    #[test]
    fn mode_consistency() {
        let x = torus_satellite(2, 3, &[q(part![1])]).unwrap();
        for label in [None, Some(part![1]), Some(part![2])] {
            let link = LinkElement { body: x.clone(), meridian: label };
            let full = link.trace(Mode::Full).unwrap();
            let low = link.trace(Mode::Low).unwrap();
            match full.v_profile() {
                VProfile::Finite { order, leading } => {
                    assert_eq!(order, link.low_offset().unwrap());
                    assert_eq!(leading, low);
                }
                VProfile::Infinite => panic!("zero trace"),
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn eigenvalue_multiplicative(a in arb_partition(2), b in arb_partition(2), mu in arb_partition(2)) {
            let x = q(a);
            let y = q(b);
            let lhs = meridian_eigenvalue(&x.mul(&y), &mu, Mode::Full).unwrap();
            let rhs = &meridian_eigenvalue(&x, &mu, Mode::Full).unwrap() * &meridian_eigenvalue(&y, &mu, Mode::Full).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn eigen_property(l in arb_partition(2), mu in arb_partition(3)) {
            let img = apply_meridian(&l, &q(mu.clone()), Mode::Full).unwrap();
            prop_assert_eq!(img.terms().len(), 1);
            prop_assert!(img.terms().contains_key(&mu));
        }

        #[test]
        fn low_trace_multiplicative(l in arb_partition(2), a in arb_partition(2), b in arb_partition(2)) {
            // ⟨M_λ(XY)⟩^low · ⟨Q_λ⟩^low = ⟨M_λ X⟩^low ⟨M_λ Y⟩^low
            let x = torus_satellite(2, 3, &[q(a)]).unwrap();
            let y = q(b).frame_by(1);
            let lhs = &trace_low_meridian(&l, &x.mul(&y)).unwrap() * &schur_qrho(&l);
            let rhs = &trace_low_meridian(&l, &x).unwrap() * &trace_low_meridian(&l, &y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn low_meridian_order_law(l in arb_partition(3), mu in arb_partition(3)) {
            let x = trace_low_meridian(&l, &q(mu.clone())).unwrap();
            let (sl, sm) = (l.stats(), mu.stats());
            let expect = -2 * l.transpose().dot(&mu.transpose()) as i32
                + (sl.hook_sum + sm.hook_sum) as i32
                + ((sl.kappa + sm.kappa) / 2) as i32;
            prop_assert_eq!(x.s_order(), Some(expect));
            let sign = if (l.size() + mu.size()) % 2 == 0 { 1 } else { -1 };
            let lead = x.expand(expect + 1);
            prop_assert_eq!(lead.poly(), &LaurentPoly::monomial(sign, 0, expect));
        }
    }
}
