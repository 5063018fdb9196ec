//! Littlewood–Richardson coefficients by counting LR tableaux.
//!
//! A tableau of shape `ρ/λ` and content `ν` is grown one letter at a time: letter `i`
//! occupies a horizontal strip of `ν_i` cells, and the lattice-word condition between
//! `i` and `i - 1` is checked as soon as strip `i` is placed.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::partition::Partition;

type LrTable = BTreeMap<Partition, u64>;

type Memo<K, V> = Lazy<RwLock<HashMap<K, Arc<V>>>>;

static LR_MEMO: Memo<(Partition, Partition), LrTable> = Lazy::new(|| RwLock::new(HashMap::new()));

/// `s_λ · s_ν = Σ_ρ c^ρ_{λν} s_ρ`, as a map `ρ -> c`.
pub fn lr_product(lambda: &Partition, nu: &Partition) -> Arc<LrTable> {
    let key = if lambda <= nu { (lambda.clone(), nu.clone()) } else { (nu.clone(), lambda.clone()) };
    if let Some(hit) = LR_MEMO.read().get(&key) {
        return hit.clone();
    }
    // the tableau count is cheaper with the shorter partition as content
    let (outer, content) = if key.0.len() >= key.1.len() { (&key.0, &key.1) } else { (&key.1, &key.0) };
    let table = Arc::new(count_tableaux(outer, content));
    LR_MEMO.write().entry(key).or_insert(table).clone()
}

fn count_tableaux(lambda: &Partition, nu: &Partition) -> LrTable {
    let rows = lambda.len() + nu.len();
    let mut shape: Vec<u32> = (0..rows).map(|i| lambda.part(i)).collect();
    let mut out = LrTable::new();
    let prev = vec![0u32; rows];
    place_letter(0, nu.parts(), &mut shape, &prev, &mut out);
    out
}

/// Places the strip for letter `letter` (zero-based); `prev` holds per-row counts of the previous letter.
fn place_letter(letter: usize, content: &[u32], shape: &mut Vec<u32>, prev: &[u32], out: &mut LrTable) {
    if letter == content.len() {
        *out.entry(Partition::from_parts(shape.clone())).or_insert(0) += 1;
        return;
    }
    let base = shape.clone();
    let mut counts = vec![0u32; shape.len()];
    strip_rows(0, content[letter], letter, &base, prev, &mut counts, 0, 0, shape, content, out);
}

#[allow(clippy::too_many_arguments)]
fn strip_rows(
    row: usize,
    remaining: u32,
    letter: usize,
    base: &[u32],
    prev: &[u32],
    counts: &mut Vec<u32>,
    placed_so_far: u32,
    prev_above: u32,
    shape: &mut Vec<u32>,
    content: &[u32],
    out: &mut LrTable,
) {
    if remaining == 0 {
        for r in row..shape.len() {
            shape[r] = base[r];
            counts[r] = 0;
        }
        let counts_snapshot = counts.clone();
        place_letter(letter + 1, content, shape, &counts_snapshot, out);
        return;
    }
    if row == shape.len() {
        return;
    }
    // horizontal strip: the new row length cannot exceed the old length of the row above
    let cap = if row == 0 { u32::MAX } else { base[row - 1] };
    let room = cap.saturating_sub(base[row]).min(remaining);
    for k in 0..=room {
        let total = placed_so_far + k;
        // lattice condition: i's read through this row never outnumber (i-1)'s strictly above
        if letter > 0 && total > prev_above {
            break;
        }
        shape[row] = base[row] + k;
        counts[row] = k;
        strip_rows(
            row + 1,
            remaining - k,
            letter,
            base,
            prev,
            counts,
            total,
            prev_above + prev[row],
            shape,
            content,
            out,
        );
    }
    shape[row] = base[row];
    counts[row] = 0;
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::part;
    use crate::symmetric::partition::tests::arb_partition;
    use proptest::prelude::*;

    /// Monomial expansion of `s_λ` in `n` variables by enumerating SSYT.
    pub(crate) fn schur_monomials(lambda: &Partition, n: usize) -> BTreeMap<Vec<u32>, i64> {
        fn fill(
            lambda: &Partition,
            n: u32,
            cells: &[(usize, usize)],
            idx: usize,
            grid: &mut Vec<Vec<u32>>,
            out: &mut BTreeMap<Vec<u32>, i64>,
        ) {
            if idx == cells.len() {
                let mut exps = vec![0u32; n as usize];
                for row in grid.iter() {
                    for &x in row {
                        exps[x as usize] += 1;
                    }
                }
                *out.entry(exps).or_insert(0) += 1;
                return;
            }
            let (i, j) = cells[idx];
            let lo_row = if j > 0 { grid[i][j - 1] } else { 0 };
            let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 0 };
            for x in lo_row.max(lo_col)..n {
                grid[i][j] = x;
                fill(lambda, n, cells, idx + 1, grid, out);
            }
            let _ = lambda;
        }
        let cells: Vec<(usize, usize)> =
            lambda.parts().iter().enumerate().flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j))).collect();
        let mut grid: Vec<Vec<u32>> = lambda.parts().iter().map(|&p| vec![0; p as usize]).collect();
        let mut out = BTreeMap::new();
        fill(lambda, n as u32, &cells, 0, &mut grid, &mut out);
        out
    }

    pub(crate) fn poly_mul(a: &BTreeMap<Vec<u32>, i64>, b: &BTreeMap<Vec<u32>, i64>) -> BTreeMap<Vec<u32>, i64> {
        let mut out = BTreeMap::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *out.entry(e).or_insert(0) += ca * cb;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Reads off Schur coefficients from a symmetric polynomial in enough variables by
    /// peeling the dominant monomial repeatedly.
    pub(crate) fn to_schur(mut poly: BTreeMap<Vec<u32>, i64>, n: usize) -> BTreeMap<Partition, i64> {
        let mut out = BTreeMap::new();
        // the lexicographically largest exponent vector is a partition and a leading term
        while let Some((lead, &c)) = poly.iter().next_back() {
            let lam = Partition::from_parts(lead.clone());
            out.insert(lam.clone(), c);
            let s = schur_monomials(&lam, n);
            for (e, k) in s {
                *poly.entry(e).or_insert(0) -= c * k;
            }
            poly.retain(|_, x| *x != 0);
        }
        out
    }

    fn as_i64(t: &LrTable) -> BTreeMap<Partition, i64> {
        t.iter().map(|(k, &v)| (k.clone(), v as i64)).collect()
    }

    #[test]
    fn pieri_single_boxes() {
        let t = lr_product(&part![1], &part![1]);
        assert_eq!(as_i64(&t), BTreeMap::from([(part![2], 1), (part![1, 1], 1)]));
    }

    #[test]
    fn two_rows() {
        let t = lr_product(&part![2], &part![2]);
        assert_eq!(as_i64(&t), BTreeMap::from([(part![4], 1), (part![3, 1], 1), (part![2, 2], 1)]));
    }

    #[test]
    fn lowest_key_is_union() {
        let t = lr_product(&part![2, 1], &part![1]);
        assert_eq!(t.get(&part![2, 1, 1]), Some(&1));
    }

    #[test]
    fn classic_coefficient_two() {
        let t = lr_product(&part![2, 1], &part![2, 1]);
        assert_eq!(t.get(&part![3, 2, 1]), Some(&2));
    }

    /// Brute-force product in `max(4, |λ|+|ν|)` variables.
    pub(crate) fn lr_oracle(l: &Partition, m: &Partition) -> BTreeMap<Partition, i64> {
        let n = (l.size() + m.size()).max(4) as usize;
        to_schur(poly_mul(&schur_monomials(l, n), &schur_monomials(m, n)), n)
    }

    #[test]
    fn oracle_agrees_small() {
        for n in 0..=4 {
            for a in 0..=n {
                for l in Partition::all_of_size(a) {
                    for m in Partition::all_of_size(n - a) {
                        assert_eq!(as_i64(&lr_product(&l, &m)), lr_oracle(&l, &m), "{l} * {m}");
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn commutative_and_lowest(l in arb_partition(4), m in arb_partition(4)) {
            let a = lr_product(&l, &m);
            let b = lr_product(&m, &l);
            prop_assert_eq!(&a, &b);
            let u = l.concat(&m);
            prop_assert_eq!(a.get(&u), Some(&1));
            for k in a.keys() {
                prop_assert!(u.dominance_leq(k).unwrap());
                prop_assert_eq!(k.size(), l.size() + m.size());
            }
        }

        #[test]
        fn associative(a in arb_partition(3), b in arb_partition(3), c in arb_partition(2)) {
            let mut left: BTreeMap<Partition, u64> = BTreeMap::new();
            for (k, x) in lr_product(&a, &b).iter() {
                for (r, y) in lr_product(k, &c).iter() {
                    *left.entry(r.clone()).or_insert(0) += x * y;
                }
            }
            let mut right: BTreeMap<Partition, u64> = BTreeMap::new();
            for (k, x) in lr_product(&b, &c).iter() {
                for (r, y) in lr_product(&a, k).iter() {
                    *right.entry(r.clone()).or_insert(0) += x * y;
                }
            }
            prop_assert_eq!(left, right);
        }
    }
}
