//! Specializations of Schur functions to elements of the scalar ring.
//!
//! * principal: `z_i = q^{-i + 1/2}` (the hook-content formula),
//! * shifted principal: `z_i = q^{μ_i - i + 1/2}`, split into finitely many head
//!   variables and a principal tail,
//! * through a generating function `E(t) = Σ E_k t^k` of elementary symmetric functions.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::partition::Partition;
use crate::coefficients::{LambdaScalar, LaurentPoly};
use crate::error::{Error, Result};

static QMURHO_MEMO: Lazy<RwLock<HashMap<(Partition, Partition), LambdaScalar>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// `s_λ(q^ρ) = ∏_□ s^{c(□)} / (s^{h(□)} - s^{-h(□)})`.
pub fn schur_qrho(lambda: &Partition) -> LambdaScalar {
    let shift: i64 = lambda.contents().iter().sum();
    LambdaScalar::from_parts(LaurentPoly::monomial(1, 0, shift as i32), lambda.hooks())
}

/// `s_λ(q^{μ+ρ})`.
pub fn schur_qmurho(lambda: &Partition, mu: &Partition) -> LambdaScalar {
    let key = (lambda.clone(), mu.clone());
    if let Some(hit) = QMURHO_MEMO.read().get(&key) {
        return hit.clone();
    }
    let v = schur_qmurho_with_head(lambda, mu, mu.len());
    QMURHO_MEMO.write().insert(key, v.clone());
    v
}

/// As [`schur_qmurho`], treating the first `head ≥ ℓ(μ)` variables explicitly.
pub fn schur_qmurho_with_head(lambda: &Partition, mu: &Partition, head: usize) -> LambdaScalar {
    assert!(head >= mu.len());
    let xs: Vec<i32> = (0..head).map(|i| 2 * mu.part(i) as i32 - 2 * i as i32 - 1).collect();
    let mut total = LambdaScalar::zero();
    for nu in lambda.subdiagrams() {
        let mut memo = HashMap::new();
        let head_part = skew_schur(lambda, &nu, &xs, &mut memo);
        if head_part.is_zero() {
            continue;
        }
        let tail = schur_qrho(&nu).shift(0, -2 * head as i32 * nu.size() as i32);
        total = &total + &(&LambdaScalar::from_poly(head_part) * &tail);
    }
    total
}

/// `s_{λ/ν}(x_1, …, x_n)` where each `x_i = s^{xs[i]}`, by peeling horizontal strips.
///
/// `memo` is keyed by the outer shape only and must not be shared across inner shapes.
fn skew_schur(
    outer: &Partition,
    inner: &Partition,
    xs: &[i32],
    memo: &mut HashMap<(Partition, usize), LaurentPoly>,
) -> LaurentPoly {
    if !outer.contains(inner) {
        return LaurentPoly::zero();
    }
    if xs.is_empty() {
        return if outer == inner { LaurentPoly::one() } else { LaurentPoly::zero() };
    }
    let key = (outer.clone(), xs.len());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let (last, rest) = xs.split_last().unwrap();
    let mut acc = LaurentPoly::zero();
    for kappa in horizontal_strip_removals(outer, inner) {
        let strip = (outer.size() - kappa.size()) as i32;
        let sub = skew_schur(&kappa, inner, rest, memo);
        if !sub.is_zero() {
            acc = &acc + &sub.shift(0, last * strip);
        }
    }
    memo.insert(key, acc.clone());
    acc
}

/// All `κ` with `inner ⊆ κ ⊆ outer` and `outer/κ` a horizontal strip.
fn horizontal_strip_removals(outer: &Partition, inner: &Partition) -> Vec<Partition> {
    fn rec(outer: &Partition, inner: &Partition, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == outer.len() {
            out.push(Partition::from_parts(cur.clone()));
            return;
        }
        let lo = outer.part(i + 1).max(inner.part(i));
        let hi = outer.part(i);
        for k in lo..=hi {
            cur.push(k);
            rec(outer, inner, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(outer, inner, 0, &mut Vec::new(), &mut out);
    out
}

/// Coefficients `E_0..=E_{t_order}` of
/// `∏_j (1 + v^{-1}s^{2μ_j-2j+1}t)/(1 + v^{-1}s^{-2j+1}t) · ∏_{i≥0} (1 + v s^{2i+1}t)/(1 + v^{-1}s^{2i+1}t)`.
pub fn e_mu_series(mu: &Partition, t_order: usize) -> Vec<LambdaScalar> {
    // the infinite product, resummed by the q-binomial theorem:
    // P_k = (-v^{-1}s)^k ∏_{i<k}(1 - v²s^{2i}) / ∏_{i=1..k}(1 - s^{2i})
    let mut tail = Vec::with_capacity(t_order + 1);
    let mut num = LaurentPoly::one();
    for k in 0..=t_order {
        if k > 0 {
            let f = &LaurentPoly::one() - &LaurentPoly::monomial(1, 2, 2 * (k as i32 - 1));
            num = &num * &f;
        }
        let k32 = k as i32;
        // (-v^{-1}s)^k · (-1)^k s^{-k(k+1)/2} = v^{-k} s^{k - k(k+1)/2}
        let mono = LaurentPoly::monomial(1, -k32, k32 - k32 * (k32 + 1) / 2);
        tail.push(LambdaScalar::from_parts(&num * &mono, 1..=k as u32));
    }
    // finite corrections, as polynomials in t with Laurent coefficients
    let mut finite = vec![LaurentPoly::zero(); t_order + 1];
    finite[0] = LaurentPoly::one();
    for j in 1..=mu.len() {
        let up = 2 * mu.part(j - 1) as i32 - 2 * j as i32 + 1;
        let down = -2 * j as i32 + 1;
        // multiply by (1 + v^{-1}s^{up} t)
        for k in (1..=t_order).rev() {
            let add = finite[k - 1].shift(-1, up);
            finite[k] = &finite[k] + &add;
        }
        // multiply by Σ_n (-v^{-1}s^{down})^n t^n
        for k in 1..=t_order {
            let add = finite[k - 1].shift(-1, down);
            finite[k] = &finite[k] - &add;
        }
    }
    (0..=t_order)
        .map(|k| {
            (0..=k)
                .filter(|&i| !finite[i].is_zero())
                .map(|i| &LambdaScalar::from_poly(finite[i].clone()) * &tail[k - i])
                .sum()
        })
        .collect()
}

/// Number of `E`-coefficients the dual Jacobi–Trudi determinant for `λ` reads.
pub fn e_series_required(lambda: &Partition) -> usize {
    let t = lambda.transpose();
    t.part(0) as usize + t.len()
}

/// `s_λ = det(E_{λ^t_i - i + j})`.
pub fn schur_from_e_series(lambda: &Partition, e: &[LambdaScalar]) -> Result<LambdaScalar> {
    let needed = e_series_required(lambda);
    if lambda.is_empty() {
        return Ok(LambdaScalar::one());
    }
    if e.len() < needed {
        return Err(Error::InsufficientOrder { needed, have: e.len() });
    }
    let t = lambda.transpose();
    let n = t.len();
    let entry = |i: usize, j: usize| -> Option<&LambdaScalar> {
        let idx = t.part(i) as i64 - i as i64 + j as i64;
        if idx < 0 {
            None
        } else {
            Some(&e[idx as usize])
        }
    };
    // Laplace expansion memoized over the set of used columns
    let mut dp: Vec<Option<LambdaScalar>> = vec![None; 1 << n];
    dp[0] = Some(LambdaScalar::one());
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].clone() else { continue };
        if cur.is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) != 0 {
                continue;
            }
            let Some(x) = entry(row, col) else { continue };
            if x.is_zero() {
                continue;
            }
            let inversions = (mask >> (col + 1)).count_ones();
            let mut term = &cur * x;
            if inversions % 2 == 1 {
                term = term.scale(&-BigInt::one());
            }
            let next = mask | (1 << col);
            dp[next] = Some(match dp[next].take() {
                Some(acc) => &acc + &term,
                None => term,
            });
        }
    }
    Ok(dp[(1 << n) - 1].clone().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::symmetric::partition::tests::arb_partition;
    use proptest::prelude::*;

    fn s(c: i64, e: i32) -> LambdaScalar {
        LambdaScalar::monomial(c, 0, e)
    }

    #[test]
    fn principal_small_cases() {
        assert_eq!(schur_qrho(&part![1]), LambdaScalar::inv_sym(1));
        let two = s(1, 1) * LambdaScalar::inv_sym(2) * LambdaScalar::inv_sym(1);
        assert_eq!(schur_qrho(&part![2]), two);
        assert!(schur_qrho(&Partition::empty()).is_one());
    }

    #[test]
    fn principal_leading_term() {
        for l in Partition::all_up_to(5) {
            let x = schur_qrho(&l);
            let st = l.stats();
            let lead = st.hook_sum as i32 + (st.kappa / 2) as i32;
            assert_eq!(x.s_order(), Some(lead));
            let e = x.expand(lead + 1);
            let sign = if l.size() % 2 == 0 { 1 } else { -1 };
            assert_eq!(e.poly(), &LaurentPoly::monomial(sign, 0, lead));
        }
    }

    #[test]
    fn shifted_single_box() {
        // (s - s^3 - s^{-1}) / (1 - s^2)
        let num = s(1, 1) - s(1, 3) - s(1, -1);
        let den = LambdaScalar::one() - s(1, 2);
        let got = schur_qmurho(&part![1], &part![1]);
        assert_eq!(&got * &den, num);
    }

    #[test]
    fn shifted_trivial_cases() {
        for l in Partition::all_up_to(4) {
            assert_eq!(schur_qmurho(&l, &Partition::empty()), schur_qrho(&l));
            assert!(schur_qmurho(&Partition::empty(), &l).is_one());
        }
    }

    #[test]
    fn e_series_small() {
        let e = e_mu_series(&Partition::empty(), 3);
        assert!(e[0].is_one());
        // s_λ(E_∅) is the unknot-satellite trace for |λ| ≤ 2
        let unknot = (LambdaScalar::monomial(1, -1, 0) - LambdaScalar::monomial(1, 1, 0)) * LambdaScalar::inv_sym(1);
        assert_eq!(e[1], unknot);
        let e1 = e_mu_series(&part![1], 1);
        let diff = LambdaScalar::monomial(1, -1, 1) - LambdaScalar::monomial(1, -1, -1);
        assert_eq!(&e1[1] - &e[1], diff);
    }

    #[test]
    fn jacobi_trudi_shapes() {
        let e: Vec<LambdaScalar> = (0..6).map(|k| s(1, 3 * k) + LambdaScalar::monomial(k as i64, 1, 0)).collect();
        let mut e = e;
        e[0] = LambdaScalar::one();
        assert_eq!(schur_from_e_series(&part![1], &e).unwrap(), e[1]);
        assert_eq!(schur_from_e_series(&part![1, 1], &e).unwrap(), e[2]);
        assert_eq!(schur_from_e_series(&part![2], &e).unwrap(), &e[1] * &e[1] - e[2].clone());
        assert!(matches!(schur_from_e_series(&part![3], &e[..2]), Err(Error::InsufficientOrder { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn head_size_stability(l in arb_partition(3), m in arb_partition(3)) {
            let a = schur_qmurho_with_head(&l, &m, m.len());
            let b = schur_qmurho_with_head(&l, &m, m.len() + 1);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn shifted_times_principal_leading_term(l in arb_partition(3), m in arb_partition(3)) {
            let x = &schur_qmurho(&l, &m) * &schur_qrho(&m);
            let (sl, sm) = (l.stats(), m.stats());
            let expect = -2 * l.transpose().dot(&m.transpose()) as i32
                + (sl.hook_sum + sm.hook_sum) as i32
                + ((sl.kappa + sm.kappa) / 2) as i32;
            prop_assert_eq!(x.s_order(), Some(expect));
            let sign = if (l.size() + m.size()) % 2 == 0 { 1 } else { -1 };
            let lead = x.expand(expect + 1);
            prop_assert_eq!(lead.poly(), &LaurentPoly::monomial(sign, 0, expect));
        }

        #[test]
        fn full_specialization_matches_trace(l in arb_partition(3)) {
            // s_λ(E_∅) = ∏ (v^{-1}s^c - v s^{-c}) / (s^h - s^{-h})
            let e = e_mu_series(&Partition::empty(), e_series_required(&l));
            let got = schur_from_e_series(&l, &e).unwrap();
            let mut num = LaurentPoly::one();
            for c in l.contents() {
                let f = &LaurentPoly::monomial(1, -1, c as i32) - &LaurentPoly::monomial(1, 1, -c as i32);
                num = &num * &f;
            }
            prop_assert_eq!(got, LambdaScalar::from_parts(num, l.hooks()));
        }
    }
}
