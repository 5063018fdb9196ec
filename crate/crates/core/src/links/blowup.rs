use std::collections::BTreeMap;

use num_rational::{BigRational, Ratio};
use num_traits::Zero;

use super::branch::PuiseuxBranch;
use super::germ::CurveGerm;
use crate::error::{Error, Result};
use crate::skein::{splice_satellite, AnnulusElement};
use crate::symmetric::Partition;

/// One point where the proper transform meets the exceptional curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupPoint {
    /// Position on the exceptional curve: the common leading coefficient, or zero at the origin.
    pub coordinate: BigRational,
    pub at_origin: bool,
    /// Indices into the original germ's branches.
    pub branch_indices: Vec<usize>,
    /// The proper transform near this point, with the original labels.
    pub germ: CurveGerm,
    /// Intersection multiplicity of each proper-transform branch with the exceptional curve.
    pub contact: Vec<u64>,
}

/// Points `p_1, …, p_e` of the blowup at the origin, the origin point (if any) last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blowup {
    pub points: Vec<BlowupPoint>,
}

impl BlowupPoint {
    /// The germ of the proper transform together with the exceptional curve as the axis.
    pub fn with_exceptional(&self, label: Partition) -> Result<CurveGerm> {
        self.germ.with_axis(label)
    }
}

impl Blowup {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Whether some branch has `α > 1`, i.e. the last point is the origin.
    pub fn has_origin(&self) -> bool {
        self.points.last().is_some_and(|p| p.at_origin)
    }

    /// Contact multiplicity of each original branch with the exceptional curve.
    pub fn contact_by_branch(&self) -> BTreeMap<usize, u64> {
        self.points.iter().flat_map(|p| p.branch_indices.iter().copied().zip(p.contact.iter().copied())).collect()
    }

    /// The link of the original germ rebuilt from the points: `S_1^1(∏_{k<e} L_k, τL_e)` when the
    /// origin is among the points, `τ ∏ L_k` otherwise.
    pub fn recombine(&self) -> Result<AnnulusElement> {
        let elems: Vec<AnnulusElement> = self.points.iter().map(|p| p.germ.annulus_element()).collect::<Result<_>>()?;
        if self.has_origin() {
            let (last, rest) = elems.split_last().unwrap();
            splice_satellite(1, 1, &AnnulusElement::product(rest), &last.frame_by(1))
        } else {
            Ok(AnnulusElement::product(&elems).frame_by(1))
        }
    }
}

/// Blows up the origin. Requires no axis, no branch `y = 0`, and `α ≥ 1` for every branch.
pub fn blowup(germ: &CurveGerm) -> Result<Blowup> {
    if germ.has_axis() {
        return Err(Error::BlowupPrecondition("remove the axis branch x = 0 first".into()));
    }
    let one = Ratio::from_integer(1i64);
    let mut at_coeff: BTreeMap<BigRational, Vec<(usize, PuiseuxBranch)>> = BTreeMap::new();
    let mut at_origin: Vec<(usize, PuiseuxBranch)> = Vec::new();
    for (i, b) in germ.branches().iter().enumerate() {
        let alpha = b.alpha().ok_or_else(|| {
            Error::BlowupPrecondition("branch y = 0 present; change coordinates so y = 0 is not a branch".into())
        })?;
        if alpha < one {
            return Err(Error::BlowupPrecondition(format!(
                "branch with leading exponent {alpha} < 1; swap x and y so every α ≥ 1"
            )));
        }
        if alpha == one {
            at_coeff.entry(b.leading_coeff().unwrap().clone()).or_default().push((i, b.tail()));
        } else {
            let mut pairs = b.pairs.clone();
            pairs[0] = (pairs[0].0, pairs[0].1 - pairs[0].0);
            at_origin.push((i, PuiseuxBranch { pairs, coeffs: b.coeffs.clone() }));
        }
    }
    let mut points = Vec::new();
    let make = |coordinate: BigRational, origin: bool, items: Vec<(usize, PuiseuxBranch)>| -> Result<BlowupPoint> {
        let branch_indices: Vec<usize> = items.iter().map(|(i, _)| *i).collect();
        let labels = branch_indices.iter().map(|&i| germ.labels()[i].clone()).collect();
        let contact = items.iter().map(|(_, b)| b.multiplicity()).collect();
        let branches = items.into_iter().map(|(_, b)| b).collect();
        Ok(BlowupPoint {
            coordinate,
            at_origin: origin,
            branch_indices,
            germ: CurveGerm::new(branches, false, labels)?,
            contact,
        })
    };
    for (a, items) in at_coeff {
        points.push(make(a, false, items)?);
    }
    if !at_origin.is_empty() {
        points.push(make(BigRational::zero(), true, at_origin)?);
    }
    Ok(Blowup { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::skein::{apply_meridian, Mode};

    fn br(pairs: &[(u32, u32)], coeffs: &[i64]) -> PuiseuxBranch {
        PuiseuxBranch::with_int_coeffs(pairs, coeffs).unwrap()
    }

    #[test]
    fn cusp_blowup() {
        let b = blowup(&CurveGerm::torus_knot(2, 3).unwrap()).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b.has_origin());
        assert_eq!(b.points[0].germ.branches(), &[br(&[(2, 1)], &[1])]);
        assert_eq!(b.points[0].contact, vec![2]);
        let d = b.points[0].with_exceptional(part![1]).unwrap();
        assert!(d.has_axis());
        assert_eq!(d.components(), 2);
    }

    #[test]
    fn node_blowup() {
        let b = blowup(&CurveGerm::node()).unwrap();
        assert_eq!(b.len(), 2);
        assert!(!b.has_origin());
        for p in &b.points {
            assert_eq!(p.contact, vec![1]);
            assert!(p.germ.branches()[0].is_degenerate());
        }
        assert_eq!(b.contact_by_branch(), BTreeMap::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn tangent_smooth_branch() {
        let g = CurveGerm::unlabelled(vec![br(&[(1, 2)], &[1])], false).unwrap();
        let b = blowup(&g).unwrap();
        assert_eq!(b.points[0].germ.branches(), &[br(&[(1, 1)], &[1])]);
        assert_eq!(g.annulus_element().unwrap(), b.points[0].germ.annulus_element().unwrap().frame_by(1));
    }

    #[test]
    fn preconditions() {
        assert!(blowup(&CurveGerm::smooth()).is_err());
        assert!(blowup(&CurveGerm::torus_knot(3, 2).unwrap()).is_err());
        assert!(blowup(&CurveGerm::node().with_axis(part![1]).unwrap()).is_err());
    }

    pub(crate) fn sample_germs() -> Vec<CurveGerm> {
        let g = |bs: Vec<PuiseuxBranch>| CurveGerm::unlabelled(bs, false).unwrap();
        vec![
            g(vec![br(&[(2, 3)], &[1])]),
            g(vec![br(&[(1, 1)], &[1]), br(&[(1, 1)], &[-1])]),
            g(vec![br(&[(2, 5)], &[1])]),
            g(vec![br(&[(3, 4)], &[1])]),
            g(vec![br(&[(1, 2)], &[1]), br(&[(1, 2)], &[-1])]),
            g(vec![br(&[(2, 3)], &[1]), br(&[(1, 1)], &[1])]),
            g(vec![br(&[(1, 1)], &[1]), br(&[(1, 1)], &[2]), br(&[(1, 1)], &[3])]),
            g(vec![br(&[(2, 3), (2, 1)], &[1, 1])]),
            g(vec![br(&[(1, 1), (2, 1)], &[1, 1]), br(&[(1, 1)], &[-1])]),
            g(vec![br(&[(2, 3)], &[1]), br(&[(2, 5)], &[1])]),
        ]
    }

    #[test]
    fn blowup_link_identity() {
        for g in sample_germs() {
            let b = blowup(&g).unwrap();
            assert_eq!(b.recombine().unwrap(), g.annulus_element().unwrap(), "{g:?}");
        }
    }

    #[test]
    fn blowup_with_labels() {
        let g = CurveGerm::torus_knot(2, 3).unwrap().with_labels(vec![part![2]]).unwrap();
        assert_eq!(blowup(&g).unwrap().recombine().unwrap(), g.annulus_element().unwrap());
        let n = CurveGerm::node().with_labels(vec![part![1, 1], part![2]]).unwrap();
        assert_eq!(blowup(&n).unwrap().recombine().unwrap(), n.annulus_element().unwrap());
    }

    #[test]
    fn exceptional_meridian_identity() {
        for g in sample_germs() {
            for p in blowup(&g).unwrap().points {
                for l in [part![1], part![2], part![1, 1]] {
                    let d = p.with_exceptional(l.clone()).unwrap();
                    let expect =
                        apply_meridian(&l.transpose(), &p.germ.annulus_element().unwrap(), Mode::Full).unwrap();
                    assert_eq!(d.annulus_element().unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn sample_milnor_numbers() {
        // cusp, node, A4, E6, tacnode, cusp+transverse line, ordinary triple point
        let known = [2, 1, 4, 6, 3, 5, 4];
        for (g, mu) in sample_germs().iter().zip(known) {
            assert_eq!(g.stats().unwrap().milnor, mu, "{g:?}");
        }
    }

    #[test]
    fn reframe_when_all_steep() {
        for g in sample_germs() {
            let b = blowup(&g).unwrap();
            if b.len() == 1 && b.has_origin() {
                assert_eq!(g.annulus_element().unwrap(), b.points[0].germ.annulus_element().unwrap().frame_by(1));
            }
        }
    }
}
