//! Spherical subgroups, verdicts, and covering genera.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::toral::{toral_subgroup_in, Sweep, ToralResult};
use crate::error::Result;
use crate::multiplier::{schur_multiplier_in, TailedContext};
use crate::pc::{Limits, NormalWord, PcPresentation};

/// Two distinct involutions generate a dihedral group of order at least 4,
/// and every non-cyclic finite subgroup of `SO(3)` has two involutions.
pub fn has_spherical_subgroup(
    p: &PcPresentation,
    limits: &Limits,
) -> Result<(bool, Option<(NormalWord, NormalWord)>)> {
    if p.order() % 2 == 1 {
        p.enumerate_elements(limits)?;
        return Ok((false, None));
    }
    let mut inv = p.involutions(limits)?.into_iter();
    match (inv.next(), inv.next()) {
        (Some(a), Some(b)) => Ok((true, Some((a, b)))),
        _ => Ok((false, None)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictKind {
    /// `M(G) = 0`: every free action bounds a free action.
    AllExtendFreely,
    /// `M(G)` is spanned by toral classes: every action extends without
    /// singular points.
    AllExtendNonsingularly,
    /// Some action does not extend at all.
    NonExtendingExists,
    /// Toral classes fall short but spherical subgroups exist.
    Indeterminate,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Evidence {
    pub multiplier_order: u64,
    pub toral_generated: bool,
    pub involution_count: u64,
    pub spherical_possible: bool,
}

impl Evidence {
    pub fn classify(&self) -> VerdictKind {
        if self.multiplier_order == 1 {
            VerdictKind::AllExtendFreely
        } else if self.toral_generated {
            VerdictKind::AllExtendNonsingularly
        } else if !self.spherical_possible {
            VerdictKind::NonExtendingExists
        } else {
            VerdictKind::Indeterminate
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub evidence: Evidence,
}

impl Verdict {
    pub fn from_evidence(evidence: Evidence) -> Self {
        Verdict {
            kind: evidence.classify(),
            evidence,
        }
    }
}

pub fn verdict(p: &PcPresentation, limits: &Limits) -> Result<Verdict> {
    let ctx = TailedContext::new(p)?;
    let mult = schur_multiplier_in(&ctx)?;
    let toral = toral_subgroup_in(&ctx, &mult, Sweep::EarlyExit, limits)?;
    verdict_from(p, &toral, limits)
}

/// Verdict from an already computed toral result.
pub fn verdict_from(p: &PcPresentation, toral: &ToralResult, limits: &Limits) -> Result<Verdict> {
    let involution_count = p.count_involutions(limits)?;
    Ok(Verdict::from_evidence(Evidence {
        multiplier_order: toral.multiplier_order,
        toral_generated: toral.toral_generated,
        involution_count,
        spherical_possible: involution_count >= 2,
    }))
}

/// Genus of a free `|G|`-fold cover of a closed surface of genus `h ≥ 1`.
pub fn covering_genus(group_order: u64, quotient_genus: u64) -> u64 {
    assert!(quotient_genus >= 1, "quotient genus must be at least 1");
    1 + group_order * (quotient_genus - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::parse_pc_presentation;

    fn pres(text: &str) -> PcPresentation {
        parse_pc_presentation(text).unwrap()
    }

    #[test]
    fn truth_table() {
        let row = |m, t, i| Evidence {
            multiplier_order: m,
            toral_generated: t,
            involution_count: i,
            spherical_possible: i >= 2,
        };
        assert_eq!(row(1, true, 0).classify(), VerdictKind::AllExtendFreely);
        assert_eq!(row(1, true, 7).classify(), VerdictKind::AllExtendFreely);
        assert_eq!(row(3, true, 0).classify(), VerdictKind::AllExtendNonsingularly);
        assert_eq!(row(2, true, 3).classify(), VerdictKind::AllExtendNonsingularly);
        assert_eq!(row(9, false, 0).classify(), VerdictKind::NonExtendingExists);
        assert_eq!(row(4, false, 1).classify(), VerdictKind::NonExtendingExists);
        assert_eq!(row(4, false, 3).classify(), VerdictKind::Indeterminate);
    }

    #[test]
    fn spherical() {
        let l = Limits::default();
        assert!(!has_spherical_subgroup(&pres("gens 3\norders 3 3 3\nconj 2 1 = g2*g3\n"), &l).unwrap().0);
        let q8 = pres("gens 3\norders 2 2 2\npow 1 = g3\npow 2 = g3\nconj 2 1 = g2*g3\n");
        assert_eq!(has_spherical_subgroup(&q8, &l).unwrap(), (false, None));
        let v4 = pres("gens 2\norders 2 2\n");
        let (yes, w) = has_spherical_subgroup(&v4, &l).unwrap();
        let (a, b) = w.unwrap();
        assert!(yes && a != b);
        assert!(v4.multiply(&a, &a).is_identity() && v4.multiply(&b, &b).is_identity());
    }

    #[test]
    fn verdicts() {
        let l = Limits::default();
        assert_eq!(verdict(&pres("gens 1\norders 5\n"), &l).unwrap().kind, VerdictKind::AllExtendFreely);
        assert_eq!(
            verdict(&pres("gens 2\norders 3 3\n"), &l).unwrap().kind,
            VerdictKind::AllExtendNonsingularly
        );
    }

    #[test]
    fn genera() {
        assert_eq!(covering_genus(243, 2), 244);
        assert_eq!(covering_genus(1, 5), 5);
        assert_eq!(covering_genus(64, 2), 65);
    }
}
