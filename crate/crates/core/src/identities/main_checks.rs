use super::report::{first_difference, fit_exact, fit_leading, MatchReport, Monomial, Orders};
use crate::coefficients::LambdaScalar;
use crate::error::{Error, Result};
use crate::hilbert::{z_curve, CurveKind};
use crate::links::{blowup, CurveGerm, PuiseuxBranch, FRAMING_SIGN};
use crate::skein::{trace_low, Mode};
use crate::symmetric::{schur_qrho, Partition};

/// The germ whose link realizes a curve kind.
pub fn germ_for_kind(kind: CurveKind) -> Result<CurveGerm> {
    match kind {
        CurveKind::Smooth => Ok(CurveGerm::smooth()),
        CurveKind::Node => Ok(CurveGerm::node()),
        CurveKind::Unibranch { p, q } => CurveGerm::torus_knot(p, q),
    }
}

fn homfly_vs_curve(kind: CurveKind, n: u32, framing_sign: i64) -> Result<MatchReport> {
    let germ = germ_for_kind(kind)?;
    let milnor = germ.stats()?.milnor as i32;
    let p = germ.homfly_p_with_sign(framing_sign)?;
    let z = z_curve(kind, n)?;
    let orders = Orders { n: Some(n), ..Orders::default() };
    let mut report = MatchReport::new("homfly-vs-hilbert", orders);
    let expected = Monomial { sign: 1, v_exponent: milnor - 1, s_exponent: 1 - milnor };
    report.expected = Some(expected);
    report.note(format!("μ = {milnor}"));
    let prec = z.prec() + expected.s_exponent;
    let p_series = p.expand(prec);
    let Some(fitted) = fit_leading(&p_series, &z) else {
        report.fail("lowest coefficients are not related by ±v^a s^b");
        return Ok(report);
    };
    report.fitted = Some(fitted);
    if let Some(e) = first_difference(&p_series, &z, &fitted) {
        report.fail(format!("P and the fitted multiple of Z differ at s^{e}"));
    }
    if fitted != expected {
        report.fail(format!(
            "fitted (ε {}, v^{}, s^{}) but (v/s)^(μ-1) predicts (v^{}, s^{})",
            fitted.sign, fitted.v_exponent, fitted.s_exponent, expected.v_exponent, expected.s_exponent
        ));
    }
    Ok(report)
}

/// `P(L_C) = (v/s)^{μ−1} Z_C` through `s^{2N}`, with the fitted monomial compared against the
/// predicted one.
pub fn homfly_hilbert_check(kind: CurveKind, n: u32) -> Result<MatchReport> {
    homfly_vs_curve(kind, n, FRAMING_SIGN)
}

/// The writhe sign under which the node satisfies the Hilbert-scheme identity; exactly one
/// of `±1` must work.
pub fn calibrated_framing_sign() -> Result<i64> {
    let passing: Vec<i64> = [1, -1]
        .into_iter()
        .map(|sign| Ok((sign, homfly_vs_curve(CurveKind::Node, 6, sign)?.passed)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter_map(|(sign, ok)| ok.then_some(sign))
        .collect();
    match passing.as_slice() {
        [sign] => Ok(*sign),
        _ => Err(Error::Inconsistent(format!("framing calibration is ambiguous: {passing:?} pass"))),
    }
}

fn low_trace(germ: &CurveGerm) -> Result<LambdaScalar> {
    germ.link_element()?.trace(Mode::Low)
}

/// The lowest-order colored invariant of `C` computed in two independent ways and matched up
/// to a monomial.
///
/// A smooth germ is compared with the closed form `s_{λ^t}(q^ρ)`. A node `y = ±x` is compared
/// with the Hopf link presented as the axis with one smooth branch. A unibranch germ is
/// compared with the recombined blowup of itself.
pub fn low_order_colored_check(kind: CurveKind, labels: &[Partition], n: u32) -> Result<MatchReport> {
    let germ = germ_for_kind(kind)?.with_labels(labels.to_vec())?;
    let direct = low_trace(&germ)?;
    let (mode, other) = match kind {
        CurveKind::Smooth => ("closed form", schur_qrho(&labels[0].transpose())),
        CurveKind::Node => {
            let hopf = CurveGerm::new(vec![PuiseuxBranch::degenerate()], true, labels.to_vec())?;
            ("axis presentation", low_trace(&hopf)?)
        }
        CurveKind::Unibranch { .. } => ("blowup recursion", trace_low(&blowup(&germ)?.recombine()?)?),
    };
    let orders = Orders { n: Some(n), ..Orders::default() };
    let mut report = MatchReport::new("low-order-colored", orders);
    report.note(format!("compared with the {mode}"));
    report.note(format!("lowest-order invariant: {direct}"));
    match fit_exact(&direct, &other) {
        Some(m) => report.fitted = Some(m),
        None => report.fail(format!("the two evaluations differ by more than a monomial ({mode})")),
    }
    if let (Some(a), Some(b)) = (direct.s_order(), other.s_order()) {
        let prec = 2 * n as i32 + 1;
        if report.passed {
            let m = report.fitted.unwrap();
            if let Some(e) = first_difference(&direct.expand(a + prec), &other.expand(b + prec), &m) {
                report.fail(format!("expansions differ at s^{e}"));
            }
        }
    }
    Ok(report)
}
