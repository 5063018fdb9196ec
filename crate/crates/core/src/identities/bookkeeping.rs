use num_bigint::BigInt;

use crate::coefficients::{LambdaScalar, LaurentPoly, SSeries, TruncatedSeries};
use crate::symmetric::{schur_qrho, Partition};

/// `δ = Σ_j [C(μ^{(j)}, 2) − (j − 1)]` for `μ = Σ m_i μ_i` taken componentwise.
pub fn delta_shift(labels: &[Partition], multiplicities: &[u64]) -> i64 {
    let mut total = Partition::empty();
    for (l, &m) in labels.iter().zip(multiplicities) {
        for _ in 0..m {
            total = total.componentwise_sum(l);
        }
    }
    total
        .parts()
        .iter()
        .enumerate()
        .map(|(j, &p)| {
            let p = p as i64;
            p * (p - 1) / 2 - j as i64
        })
        .sum()
}

/// `f(λ, μ⃗) = h(λ) − Σ m'_i (μ_i, λ)`, with `m'_i` the contact multiplicities after blowup.
pub fn f_lambda(lambda: &Partition, labels: &[Partition], contacts: &[u64]) -> i64 {
    let pairing: i64 = labels.iter().zip(contacts).map(|(l, &m)| m as i64 * l.dot(lambda)).sum();
    lambda.hook_sum() as i64 - pairing
}

/// `H_λ = ∏_□ 1/(1 − q^{h(□)})`, the one-leg vertex normalized to constant term 1, raised
/// to an integer power.
pub fn one_leg_h_power(lambda: &Partition, k: i32) -> LambdaScalar {
    // 1/(1 - s^{2h}) = -s^{-h} / (s^h - s^{-h})
    let hooks = lambda.hooks();
    let h = LambdaScalar::from_parts(
        LaurentPoly::monomial(if hooks.len().is_multiple_of(2) { 1 } else { -1 }, 0, -(lambda.hook_sum() as i32)),
        hooks.iter().copied(),
    );
    if k >= 0 {
        h.pow(k as u32)
    } else {
        let inv = hooks.iter().fold(LaurentPoly::one(), |acc, &hk| {
            &acc * &(&LaurentPoly::one() - &LaurentPoly::monomial(1, 0, 2 * hk as i32))
        });
        LambdaScalar::from_poly(inv).pow(k.unsigned_abs())
    }
}

/// `H_λ(q)` expanded in `s = q^{1/2}` through `q^{q_order}`.
pub fn one_leg_h(lambda: &Partition, q_order: u32) -> SSeries {
    one_leg_h_power(lambda, 1).expand(TruncatedSeries::target_prec(q_order))
}

/// `H_λ` from its defining relation `s_λ(q^ρ) = (−1)^{|λ|} q^{h/2 + κ/4} H_λ`.
pub fn one_leg_h_from_vertex(lambda: &Partition) -> LambdaScalar {
    let sign = if lambda.size().is_multiple_of(2) { 1 } else { -1 };
    let shift = -(lambda.hook_sum() as i64) - lambda.kappa() / 2;
    schur_qrho(lambda).shift(0, shift as i32).scale(&BigInt::from(sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::symmetric::partition::tests::arb_partition;
    use proptest::prelude::*;

    #[test]
    fn delta_examples() {
        assert_eq!(delta_shift(&[part![1]], &[1]), 0);
        assert_eq!(delta_shift(&[part![2]], &[1]), 1);
        assert_eq!(delta_shift(&[part![1, 1]], &[1]), -1);
        // cusp with label (1): μ = 2·(1) = (2)
        assert_eq!(delta_shift(&[part![1]], &[2]), 1);
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_lambda(&Partition::empty(), &[part![1]], &[2]), 0);
        assert_eq!(f_lambda(&part![1], &[part![1]], &[2]), -1);
        let l = part![2, 1];
        assert_eq!(f_lambda(&l, &[], &[]), l.hook_sum() as i64);
    }

    #[test]
    fn h_examples() {
        assert_eq!(one_leg_h(&Partition::empty(), 6), SSeries::one(13));
        let h1 = one_leg_h(&part![1], 6);
        for e in 0..=12 {
            let expect = if e % 2 == 0 { LaurentPoly::one() } else { LaurentPoly::zero() };
            assert_eq!(h1.s_coefficient(e), expect);
        }
    }

    #[test]
    fn h_coefficients_nonnegative_and_monotone() {
        let h = one_leg_h(&part![2, 1], 10);
        let mut prev = BigInt::from(0);
        for n in 0..=10 {
            let c = h.s_coefficient(2 * n).coeff(0, 0);
            assert!(c >= prev);
            prev = c;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn h_matches_definition(l in arb_partition(5)) {
            prop_assert_eq!(one_leg_h_power(&l, 1), one_leg_h_from_vertex(&l));
            let prod = &one_leg_h_power(&l, 2) * &one_leg_h_power(&l, -2);
            prop_assert!(prod.is_one());
        }
    }
}
