use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::report::{MatchReport, Orders};
use crate::coefficients::{
    series_build_prec, series_first_mismatch, LambdaScalar, LaurentPoly, SeriesShape, TruncatedSeries,
};
use crate::error::{Error, Result};
use crate::skein::{trace_full, trace_low_meridian, AnnulusElement};
use crate::symmetric::{schur_qmurho, schur_qrho, Partition};

/// Extra `s`-precision tried in turn when negative orders eat into the target.
const MARGINS: [i32; 4] = [8, 24, 64, 160];

/// Compares `lhs` with `Z_Y^{-1} · Σ_k Q^k sum[k]`, where both are given exactly per `Q`-power.
fn compare_with_conifold(
    name: &str,
    lhs: &BTreeMap<u32, LambdaScalar>,
    sum: &BTreeMap<u32, LambdaScalar>,
    orders: Orders,
    from_v: bool,
) -> Result<MatchReport> {
    let q_order = orders.q_order.unwrap();
    let big_q = orders.big_q_order.unwrap();
    let target = TruncatedSeries::target_prec(q_order);
    let mut last_err = None;
    for margin in MARGINS {
        let prec = target + margin;
        let left = if from_v {
            let whole: LambdaScalar = lhs.values().cloned().sum();
            TruncatedSeries::from_v_squared(&whole, q_order, big_q, prec)?
        } else {
            TruncatedSeries::from_scalars(lhs, q_order, big_q, prec)
        };
        let zy = series_build_prec(&SeriesShape::Conifold, q_order, big_q, prec)?;
        let right = zy.invert()?.mul(&TruncatedSeries::from_scalars(sum, q_order, big_q, prec));
        match series_first_mismatch(&left, &right) {
            Ok(None) => return Ok(MatchReport::new(name, orders)),
            Ok(Some((k, e))) => {
                let mut r = MatchReport::new(name, orders);
                r.fail(format!("coefficient of Q^{k} s^{e} differs"));
                return Ok(r);
            }
            Err(e @ Error::InsufficientOrder { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap())
}

fn orders(q_order: u32, big_q_order: u32, lambda_bound: u32) -> Result<Orders> {
    if lambda_bound < big_q_order {
        return Err(Error::Validation {
            path: "orders.lam".into(),
            message: format!("λ-size bound {lambda_bound} must be at least Q_order {big_q_order}"),
        });
    }
    Ok(Orders { q_order: Some(q_order), big_q_order: Some(big_q_order), lambda_bound: Some(lambda_bound), n: None })
}

/// Sums `term(λ)` into the `Q^{|λ|}` slot for `|λ| ≤ min(bound, Q_order)`, in parallel.
fn lambda_sum(
    bound: u32,
    big_q_order: u32,
    term: impl Fn(&Partition) -> Result<LambdaScalar> + Sync,
) -> Result<BTreeMap<u32, LambdaScalar>> {
    let lambdas = Partition::all_up_to(bound.min(big_q_order));
    let terms: Vec<(u32, LambdaScalar)> =
        lambdas.par_iter().map(|l| Ok((l.size(), term(l)?))).collect::<Result<_>>()?;
    let mut out: BTreeMap<u32, LambdaScalar> = BTreeMap::new();
    for (k, t) in terms {
        let slot = out.entry(k).or_default();
        *slot = &*slot + &t;
    }
    Ok(out)
}

/// The vertex flop identity for one partition `μ`:
/// `Q^{|μ|} Z_μ(q, Q^{-1}) = Z_Y^{-1} Σ_λ Q^{|λ|} q^{-(κ_μ+κ_λ)/2} s_μ(q^ρ) s_λ(q^{μ+ρ}) s_λ(q^ρ)`.
pub fn vertex_flop_check(mu: &Partition, q_order: u32, big_q_order: u32, lambda_bound: u32) -> Result<MatchReport> {
    let ord = orders(q_order, big_q_order, lambda_bound)?;
    let base = schur_qrho(mu);
    // ∏_□ (Q + q^{-c(□)}) as a polynomial in Q
    let mut poly: BTreeMap<u32, LaurentPoly> = BTreeMap::from([(0, LaurentPoly::one())]);
    for c in mu.contents() {
        let mut next: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
        for (k, p) in &poly {
            let a = next.entry(k + 1).or_insert_with(LaurentPoly::zero);
            *a = &*a + p;
            let b = next.entry(*k).or_insert_with(LaurentPoly::zero);
            *b = &*b + &p.shift(0, -2 * c as i32);
        }
        poly = next;
    }
    let lhs: BTreeMap<u32, LambdaScalar> =
        poly.into_iter().map(|(k, p)| (k, &base * &LambdaScalar::from_poly(p))).collect();
    let sum = lambda_sum(lambda_bound, big_q_order, |l| {
        let shift = -(mu.kappa() + l.kappa());
        Ok((&(&base * &schur_qmurho(l, mu)) * &schur_qrho(l)).shift(0, shift as i32))
    })?;
    let mut r = compare_with_conifold("vertex-flop", &lhs, &sum, ord, false)?;
    r.note(format!("μ = {mu}"));
    Ok(r)
}

/// The skein blowup identity for `X = v^A Σ c_γ(s) Q_γ` of degree `m`:
/// `(−1)^m v^{m+A} ⟨X⟩|_{v→1/v} = Z_Y(s², −v²)^{-1} Σ_λ (−v²)^{|λ|} s^{−κ_λ} ⟨Q_λ⟩^{low} ⟨M_λ τ^{-1} X⟩^{low}`.
pub fn skein_flop_check(x: &AnnulusElement, q_order: u32, big_q_order: u32, lambda_bound: u32) -> Result<MatchReport> {
    let ord = orders(q_order, big_q_order, lambda_bound)?;
    let h = x.homogeneous_form()?;
    let m = h.degree as i32;
    let sign = if m % 2 == 0 { 1 } else { -1 };
    let lhs = trace_full(x).invert_v().shift(m + h.v_degree, 0).scale(&BigInt::from(sign));
    let untwisted = x.frame_by(-1);
    let sum = lambda_sum(lambda_bound, big_q_order, |l| {
        let t = trace_low_meridian(l, &untwisted)?;
        Ok((&schur_qrho(l) * &t).shift(0, -l.kappa() as i32))
    })?;
    let mut r = compare_with_conifold("skein-flop", &BTreeMap::from([(0, lhs)]), &sum, ord, true)?;
    r.note(format!("degree {m}, v-exponent {}", h.v_degree));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::CurveGerm;
    use crate::part;

    #[test]
    fn vertex_flop_small() {
        assert!(vertex_flop_check(&Partition::empty(), 8, 3, 3).unwrap().passed);
        assert!(vertex_flop_check(&part![1], 12, 3, 3).unwrap().passed);
        assert!(vertex_flop_check(&part![2, 1], 8, 3, 3).unwrap().passed);
    }

    #[test]
    fn vertex_flop_detects_truncated_sum() {
        // dropping the |λ| = Q_order terms must break the identity
        let ord = orders(6, 2, 2).unwrap();
        let mu = part![1];
        let base = schur_qrho(&mu);
        let full = vertex_flop_check(&mu, 6, 2, 2).unwrap();
        assert!(full.passed);
        let sum = lambda_sum(1, 2, |l| {
            Ok((&(&base * &schur_qmurho(l, &mu)) * &schur_qrho(l)).shift(0, -(mu.kappa() + l.kappa()) as i32))
        })
        .unwrap();
        let lhs = BTreeMap::from([(0, base.shift(0, 0)), (1, base.clone())]);
        assert!(!compare_with_conifold("t", &lhs, &sum, ord, false).unwrap().passed);
    }

    #[test]
    fn skein_flop_basis_and_unit() {
        assert!(skein_flop_check(&AnnulusElement::one(), 8, 2, 2).unwrap().passed);
        for mu in [part![1], part![2], part![1, 1]] {
            assert!(skein_flop_check(&AnnulusElement::basis(mu), 8, 2, 2).unwrap().passed);
        }
    }

    #[test]
    fn skein_flop_trefoil() {
        let x = CurveGerm::torus_knot(2, 3).unwrap().annulus_element().unwrap();
        assert!(skein_flop_check(&x, 8, 2, 2).unwrap().passed);
    }

    #[test]
    fn bound_below_q_order_rejected() {
        assert!(matches!(vertex_flop_check(&part![1], 4, 3, 2), Err(Error::Validation { .. })));
    }
}
