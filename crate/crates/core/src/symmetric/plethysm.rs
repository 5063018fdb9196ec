//! Symmetric-group characters and plethysm by a power sum.
//!
//! `s_λ[p_m]` is computed through the power-sum basis: `s_λ = Σ_α χ^λ(α) p_α / z_α`,
//! then `p_α[p_m] = p_{mα}`, then `p_β = Σ_ρ χ^ρ(β) s_ρ`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::partition::Partition;

static CHAR_MEMO: Lazy<RwLock<HashMap<(Partition, Partition), i64>>> = Lazy::new(|| RwLock::new(HashMap::new()));

type SignedTable = BTreeMap<Partition, i64>;
type Memo = RwLock<HashMap<(Partition, u32), Arc<SignedTable>>>;

static PLETHYSM_MEMO: Lazy<Memo> = Lazy::new(|| RwLock::new(HashMap::new()));

/// `χ^λ(α)` by the Murnaghan–Nakayama rule on beta-sets.
pub fn character(lambda: &Partition, cycle_type: &Partition) -> i64 {
    assert_eq!(lambda.size(), cycle_type.size(), "character arguments of different sizes");
    let key = (lambda.clone(), cycle_type.clone());
    if let Some(&v) = CHAR_MEMO.read().get(&key) {
        return v;
    }
    let v = if cycle_type.is_empty() {
        1
    } else {
        let k = cycle_type.part(0);
        let rest = Partition::from_parts(cycle_type.parts()[1..].to_vec());
        rim_hook_removals(lambda, k).into_iter().map(|(sign, smaller)| sign * character(&smaller, &rest)).sum()
    };
    CHAR_MEMO.write().insert(key, v);
    v
}

/// All ways to strip a rim hook of length `k`, with sign `(-1)^{height}`.
fn rim_hook_removals(lambda: &Partition, k: u32) -> Vec<(i64, Partition)> {
    let n = lambda.len();
    // beta-set: λ_i + (n - 1 - i), strictly decreasing
    let beta: Vec<i64> = (0..n).map(|i| lambda.part(i) as i64 + (n - 1 - i) as i64).collect();
    let k = k as i64;
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        let target = b - k;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = nb.iter().enumerate().map(|(j, &x)| (x - (n - 1 - j) as i64) as u32).collect();
        out.push((sign, Partition::from_parts(parts)));
    }
    out
}

/// `z_α = ∏ i^{m_i} m_i!`
pub fn z_factor(alpha: &Partition) -> BigInt {
    let mut z = BigInt::one();
    for (part, mult) in alpha.multiplicities() {
        for j in 1..=mult {
            z *= BigInt::from(part) * BigInt::from(j);
        }
    }
    z
}

/// `s_λ[p_m]` in the Schur basis; coefficients are integers.
pub fn plethysm_pm(lambda: &Partition, m: u32) -> Arc<BTreeMap<Partition, i64>> {
    assert!(m >= 1, "plethysm by p_0 is undefined");
    let key = (lambda.clone(), m);
    if let Some(hit) = PLETHYSM_MEMO.read().get(&key) {
        return hit.clone();
    }
    let result = if m == 1 { BTreeMap::from([(lambda.clone(), 1)]) } else { compute_plethysm(lambda, m) };
    let result = Arc::new(result);
    PLETHYSM_MEMO.write().entry(key).or_insert(result).clone()
}

fn compute_plethysm(lambda: &Partition, m: u32) -> BTreeMap<Partition, i64> {
    let n = lambda.size();
    let classes = Partition::all_of_size(n);
    let weights: Vec<(Partition, BigRational)> = classes
        .into_iter()
        .filter_map(|alpha| {
            let chi = character(lambda, &alpha);
            (chi != 0).then(|| {
                let w = BigRational::new(BigInt::from(chi), z_factor(&alpha));
                (alpha.scale_parts(m), w)
            })
        })
        .collect();
    let mut out = BTreeMap::new();
    for rho in Partition::all_of_size(n * m) {
        let mut c = BigRational::zero();
        for (beta, w) in &weights {
            let chi = character(&rho, beta);
            if chi != 0 {
                c += w * BigRational::from_integer(BigInt::from(chi));
            }
        }
        if !c.is_zero() {
            assert!(c.is_integer(), "non-integral plethysm coefficient {c} at {rho}");
            let v: i64 = c.to_integer().try_into().expect("plethysm coefficient overflow");
            out.insert(rho, v);
        }
    }
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::part;
    use crate::symmetric::lr::tests::{schur_monomials, to_schur};
    use crate::symmetric::partition::tests::arb_partition;
    use proptest::prelude::*;

    #[test]
    fn character_table_s3() {
        // rows (3), (2,1), (1,1,1); columns (1,1,1), (2,1), (3)
        let classes = [part![1, 1, 1], part![2, 1], part![3]];
        let expect = [[1, 1, 1], [2, 0, -1], [1, -1, 1]];
        for (l, row) in [part![3], part![2, 1], part![1, 1, 1]].iter().zip(expect) {
            for (a, e) in classes.iter().zip(row) {
                assert_eq!(character(l, a), e, "{l} at {a}");
            }
        }
    }

    #[test]
    fn column_orthogonality_s4() {
        let all = Partition::all_of_size(4);
        for a in &all {
            let norm: i64 = all.iter().map(|l| character(l, a).pow(2)).sum();
            assert_eq!(BigInt::from(norm), z_factor(a));
        }
    }

    #[test]
    fn p2_of_single_box() {
        let p = plethysm_pm(&part![1], 2);
        assert_eq!(*p, BTreeMap::from([(part![2], 1), (part![1, 1], -1)]));
    }

    #[test]
    fn p3_of_single_box() {
        let p = plethysm_pm(&part![1], 3);
        assert_eq!(*p, BTreeMap::from([(part![3], 1), (part![2, 1], -1), (part![1, 1, 1], 1)]));
    }

    #[test]
    fn identity_plethysm() {
        for l in Partition::all_up_to(4) {
            assert_eq!(*plethysm_pm(&l, 1), BTreeMap::from([(l.clone(), 1)]));
        }
    }

    /// `s_λ(z_1^m, …, z_N^m)` re-expanded in Schur functions.
    pub(crate) fn plethysm_oracle(l: &Partition, m: u32) -> BTreeMap<Partition, i64> {
        let n = (l.size() * m).max(1) as usize;
        let mut poly = BTreeMap::new();
        for (e, c) in schur_monomials(l, n) {
            poly.insert(e.iter().map(|x| x * m).collect::<Vec<u32>>(), c);
        }
        to_schur(poly, n)
    }

    #[test]
    fn oracle_agrees_small() {
        for m in 1..=3 {
            for l in Partition::all_up_to(6 / m) {
                assert_eq!(*plethysm_pm(&l, m), plethysm_oracle(&l, m), "{l}[p_{m}]");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn lowest_term_is_repeated_union(l in arb_partition(3), m in 1u32..4) {
            let p = plethysm_pm(&l, m);
            let low = l.concat_power_u(m);
            let c = *p.get(&low).unwrap();
            prop_assert!(c == 1 || c == -1);
            for k in p.keys() {
                prop_assert!(low.dominance_leq(k).unwrap(), "{} not above {}", k, low);
            }
        }
    }
}
