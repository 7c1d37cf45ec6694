//! Structure sets of the representation spheres `S(k ρ_n ⊕ j ε)`.
//!
//! The answer is a direct sum over strata of the orbit space. Which strata
//! appear depends on the parity of the first gap `k - n`:
//!
//! * even gap: pairs `(X_{-i}, X_{-i-1})` for even `i < n`;
//! * odd gap: the whole orbit space `X`, plus pairs for odd `i < n`.
//!
//! Each pair contributes `H_top(Z, Z_{-1}; L)` at rank `n - i`; the top
//! summand contributes reduced or unreduced `H_top(Z; L)` depending on `j`.
//! Two corrections sit on top: a free circle (or `S^3`) action on the last
//! stratum loses one `Z` to the surgery obstruction, and with `j > 0` the
//! base point contributes `L_d(e)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::l_homology::{basepoint_correction, reduced_l_homology, relative_l_homology};
use crate::Family;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActionSpec {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub j: usize,
}

impl ActionSpec {
    /// Rejects the empty sphere `S(0)`. Build the struct directly to model it.
    pub fn new(family: Family, n: usize, k: usize, j: usize) -> Result<Self> {
        if (n == 0 || k == 0) && j == 0 {
            return Err(Error::EmptySphere);
        }
        Ok(ActionSpec { family, n, k, j })
    }

    /// For `k < n` the structure set of `S(k ρ_n ⊕ j ε)` equals that of
    /// `S(k ρ_k ⊕ j ε)` under the smaller group.
    pub fn normalize(self) -> ActionSpec {
        ActionSpec {
            n: self.n.min(self.k),
            ..self
        }
    }

    /// After normalization, `n = 0` means the group acts trivially on a
    /// sphere, whose structure set is zero.
    pub fn is_trivial_action(&self) -> bool {
        self.n.min(self.k) == 0
    }

    pub fn is_normalized(&self) -> bool {
        self.n <= self.k
    }

    /// Parity branch of the first gap `k - n`. `None` for the trivial action.
    pub fn gap_parity(&self) -> Option<GapParity> {
        let s = self.normalize();
        (s.n > 0).then(|| {
            if (s.k - s.n).is_multiple_of(2) {
                GapParity::Even
            } else {
                GapParity::Odd
            }
        })
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S({}ρ_{} ⊕ {}ε) under {}({})",
            self.k,
            self.n,
            self.j,
            self.family.group_name(),
            self.n
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GapParity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SummandLabel {
    /// `S^alg(X)`, reduced homology of the whole orbit space.
    TopAlg,
    /// `S^alg(X_{-i}, X_{-i-1})`.
    StratumPair { stratum: usize },
    /// The last stratum `X_{-i}` when the action on it is free; the pair
    /// group minus the `Z` absorbed by the surgery obstruction.
    FreeException { stratum: usize },
    /// `H_0(Z; π_d L)` carried by the base point when `j > 0`.
    BasepointCorrection,
}

impl SummandLabel {
    pub fn stratum(&self) -> Option<usize> {
        match *self {
            SummandLabel::StratumPair { stratum } | SummandLabel::FreeException { stratum } => Some(stratum),
            _ => None,
        }
    }
}

impl fmt::Display for SummandLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummandLabel::TopAlg => write!(f, "S^alg(X)"),
            SummandLabel::StratumPair { stratum: i } => write!(f, "S^alg(X_-{i}, X_-{})", i + 1),
            SummandLabel::FreeException { stratum: i } => write!(f, "S^alg(X_-{i}) [free]"),
            SummandLabel::BasepointCorrection => write!(f, "H_0(Z; L_d) [base point]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub label: SummandLabel,
    pub group: AbelianGroup,
    pub source_formula: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub input_spec: ActionSpec,
    pub normalized_spec: ActionSpec,
    pub gap_parity: Option<GapParity>,
    pub summands: Vec<Summand>,
    pub total: AbelianGroup,
    /// Audit trail: which rules fired and how their predicates were derived.
    pub notes: Vec<String>,
}

impl DecompositionReport {
    pub fn summand(&self, label: SummandLabel) -> Option<&Summand> {
        self.summands.iter().find(|s| s.label == label)
    }

    pub fn free_exception_fired(&self) -> bool {
        self.summands
            .iter()
            .any(|s| matches!(s.label, SummandLabel::FreeException { .. }))
    }

    /// Whether the base point added a nonzero group.
    pub fn basepoint_gain_fired(&self) -> bool {
        self.summand(SummandLabel::BasepointCorrection)
            .is_some_and(|s| !s.group.is_trivial())
    }
}

/// Decomposes the structure set of `spec` into labeled summands.
pub fn compute_structure_set(spec: ActionSpec) -> Result<DecompositionReport> {
    let normalized = spec.normalize();
    let mut notes = Vec::new();
    if normalized != spec {
        notes.push(format!(
            "k = {} < n = {}: reduced to the rank-{} action on the fixed set",
            spec.k, spec.n, normalized.n
        ));
    }
    let Some(parity) = normalized.gap_parity() else {
        notes.push("trivial action on a sphere: zero structure set".to_string());
        return Ok(DecompositionReport {
            input_spec: spec,
            normalized_spec: normalized,
            gap_parity: None,
            summands: Vec::new(),
            total: AbelianGroup::trivial(),
            notes,
        });
    };

    let ActionSpec { family, n, k, j } = normalized;
    let mut summands = Vec::new();

    if parity == GapParity::Odd {
        summands.push(Summand {
            label: SummandLabel::TopAlg,
            group: reduced_l_homology(family, n, k)?,
            source_formula: match family {
                Family::Complex => format!(
                    "H~_d(Z; L) = Z^a ⊕ Z_2^b, a, b over n-tuples in a {n} x {} box",
                    k - n - 1
                ),
                Family::Quaternionic => format!("H~_d(Z; L) = Z^C({}, {n})", k - 1),
            },
        });
        if j > 0 {
            let group = basepoint_correction(family, n, k)?;
            notes.push(format!("j > 0: base point adds L_d(e) = {group}"));
            summands.push(Summand {
                label: SummandLabel::BasepointCorrection,
                group,
                source_formula: "H_0(Z; π_d L) = L_d(e), d = dim Z".to_string(),
            });
        }
    }

    let first = match parity {
        GapParity::Even => 0,
        GapParity::Odd => 1,
    };
    let strata: Vec<usize> = (first..n).step_by(2).collect();
    let free_fires = free_exception_applies(family, normalized, parity, &mut notes)?;

    for &i in &strata {
        let rank = n - i;
        let group = relative_l_homology(family, rank, k)?;
        let formula = match family {
            Family::Complex => format!("H_d(Z, Z_-1; L) at rank {rank}: Z^A({rank},{k}) ⊕ Z_2^B({rank},{k})"),
            Family::Quaternionic => format!("H_d(Z, Z_-1; L) at rank {rank}: Z^C({k}, {rank})"),
        };
        if free_fires && rank == 1 {
            let reduced = group.without_one_z().ok_or_else(|| {
                Error::Contradiction(format!(
                    "free exception on stratum {i} of {normalized}, whose group {group} has no Z"
                ))
            })?;
            summands.push(Summand {
                label: SummandLabel::FreeException { stratum: i },
                group: reduced,
                source_formula: format!("{formula}, minus the Z of the surgery obstruction L(e)"),
            });
        } else {
            summands.push(Summand {
                label: SummandLabel::StratumPair { stratum: i },
                group,
                source_formula: formula,
            });
        }
    }
    if free_fires
        && !summands
            .iter()
            .any(|s| matches!(s.label, SummandLabel::FreeException { .. }))
    {
        return Err(Error::Contradiction(format!(
            "free exception predicted for {normalized} but no rank-1 stratum present"
        )));
    }

    let total = summands
        .iter()
        .fold(AbelianGroup::trivial(), |acc, s| acc.direct_sum(&s.group));
    let report = DecompositionReport {
        input_spec: spec,
        normalized_spec: normalized,
        gap_parity: Some(parity),
        summands,
        total,
        notes,
    };
    if report.free_exception_fired() && report.basepoint_gain_fired() {
        return Err(Error::Contradiction(format!(
            "both the free exception and the base point gain fired for {normalized}"
        )));
    }
    Ok(report)
}

/// Decides the "one less `Z`" rule two ways and insists they agree: from the
/// stated parity rule, and from the geometry (the last stratum has rank 1
/// and `j = 0`, so the group acts freely on it). For the quaternionic family
/// a third phrasing in terms of the parity of `k` is also checked.
fn free_exception_applies(
    family: Family,
    spec: ActionSpec,
    parity: GapParity,
    notes: &mut Vec<String>,
) -> Result<bool> {
    let ActionSpec { n, k, j, .. } = spec;
    let by_rule = j == 0
        && match parity {
            GapParity::Even => n % 2 == 1,
            GapParity::Odd => n % 2 == 0,
        };
    let first = if parity == GapParity::Even { 0 } else { 1 };
    let by_geometry = j == 0 && (first..n).step_by(2).any(|i| n - i == 1);
    let mut agree = by_rule == by_geometry;
    if family == Family::Quaternionic {
        let by_k_parity = j == 0 && k % 2 == 1;
        agree &= by_k_parity == by_rule;
        if by_rule {
            notes.push(format!(
                "free exception: n parity rule ({}), last stratum free, and k = {k} odd all agree",
                if parity == GapParity::Even {
                    "n odd, even gap"
                } else {
                    "n even, odd gap"
                }
            ));
        }
    } else if by_rule {
        notes.push(format!(
            "free exception: n parity rule ({}) and free last stratum agree",
            if parity == GapParity::Even {
                "n odd, even gap"
            } else {
                "n even, odd gap"
            }
        ));
    }
    if !agree {
        return Err(Error::Contradiction(format!(
            "free exception predicates disagree for {spec}"
        )));
    }
    Ok(by_rule)
}

/// One summand label compared between two reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandPairing {
    pub label: SummandLabel,
    pub before: Option<AbelianGroup>,
    pub after: Option<AbelianGroup>,
    pub monotone: bool,
}

/// Matches summands by label. A pairing is monotone when both sides exist and
/// free rank and `Z_2` count do not decrease.
pub fn pair_summands(before: &DecompositionReport, after: &DecompositionReport) -> Vec<SummandPairing> {
    let mut labels: Vec<SummandLabel> = before.summands.iter().chain(&after.summands).map(|s| s.label).collect();
    labels.sort();
    labels.dedup();
    labels
        .into_iter()
        .map(|label| {
            let a = before.summand(label).map(|s| s.group.clone());
            let b = after.summand(label).map(|s| s.group.clone());
            let monotone = match (&a, &b) {
                (Some(a), Some(b)) => {
                    a.free_rank() <= b.free_rank() && a.two_count() <= b.two_count() && a.embeds_into(b)
                }
                _ => false,
            };
            SummandPairing {
                label,
                before: a,
                after: b,
                monotone,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuspensionReport {
    pub spec: ActionSpec,
    pub at_k: DecompositionReport,
    pub at_k_plus_1: DecompositionReport,
    pub at_k_plus_2: DecompositionReport,
    /// Summand-wise comparison of `k` with `k + 2`, which share a branch.
    pub double_pairings: Vec<SummandPairing>,
    pub double_total_embeds: bool,
    /// Whether the totals also embed abstractly at each single step. This is
    /// informational only: the odd-gap branch can carry a `Z_2` from the
    /// basepoint term that has no torsion to land in one step later, so a
    /// map of structure sets need not be visible as a group embedding here.
    pub single_total_embeds: bool,
    /// Branch at `k` and at `k + 1`; these always differ.
    pub parity_flip: (Option<GapParity>, Option<GapParity>),
    pub certified: bool,
}

/// Rank-level evidence that joining with `S(ρ_n)` injects: every summand at
/// `k` embeds in its partner at `k + 2`, the totals at `k` and `k + 2`
/// embed, and the gap parity flips between `k` and `k + 1`.
pub fn suspension_report(spec: ActionSpec) -> Result<SuspensionReport> {
    let spec = spec.normalize();
    let at = |dk: usize| compute_structure_set(ActionSpec { k: spec.k + dk, ..spec });
    let at_k = at(0)?;
    let at_k_plus_1 = at(1)?;
    let at_k_plus_2 = at(2)?;
    let double_pairings = pair_summands(&at_k, &at_k_plus_2);
    let double_total_embeds = at_k.total.embeds_into(&at_k_plus_2.total);
    let single_total_embeds =
        at_k.total.embeds_into(&at_k_plus_1.total) && at_k_plus_1.total.embeds_into(&at_k_plus_2.total);
    let parity_flip = (at_k.gap_parity, at_k_plus_1.gap_parity);
    let flip_ok = spec.is_trivial_action() || parity_flip.0 != parity_flip.1;
    let certified = double_pairings.iter().all(|p| p.monotone) && double_total_embeds && flip_ok;
    Ok(SuspensionReport {
        spec,
        at_k,
        at_k_plus_1,
        at_k_plus_2,
        double_pairings,
        double_total_embeds,
        single_total_embeds,
        parity_flip,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: usize, k: usize, j: usize) -> ActionSpec {
        ActionSpec::new(Family::Complex, n, k, j).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(u(5, 3, 2).normalize(), u(3, 3, 2));
        assert_eq!(u(2, 4, 0).normalize(), u(2, 4, 0));
        let trivial = u(0, 0, 5).normalize();
        assert!(trivial.is_trivial_action());
        assert_eq!(trivial.normalize(), trivial);
        assert_eq!(ActionSpec::new(Family::Complex, 0, 3, 0), Err(Error::EmptySphere));
    }

    #[test]
    fn trivial_action_gives_zero() {
        let r = compute_structure_set(u(0, 0, 5)).unwrap();
        assert!(r.total.is_trivial());
        assert!(r.summands.is_empty());
        assert!(r.gap_parity.is_none());
    }

    #[test]
    fn spot_values() {
        let r = compute_structure_set(u(2, 4, 0)).unwrap();
        assert_eq!(r.total, AbelianGroup::free_plus_twos(4, 2));
        assert_eq!(r.summands.len(), 1);
        assert!(!r.free_exception_fired());

        let r = compute_structure_set(u(1, 3, 0)).unwrap();
        assert_eq!(r.total, AbelianGroup::free_plus_twos(1, 1));
        assert!(r.free_exception_fired());

        let r = compute_structure_set(u(2, 3, 0)).unwrap();
        assert_eq!(r.total, AbelianGroup::free_plus_twos(2, 1));
        assert_eq!(r.summand(SummandLabel::TopAlg).unwrap().group, AbelianGroup::free(1));
        assert!(r.summand(SummandLabel::FreeException { stratum: 1 }).is_some());

        let sp = ActionSpec::new(Family::Quaternionic, 1, 2, 0).unwrap();
        assert_eq!(compute_structure_set(sp).unwrap().total, AbelianGroup::free(1));
    }

    #[test]
    fn basepoint_gain_for_odd_n() {
        // n = 1, k = 2, j = 1: top summand Z plus L_d(e) = Z_2.
        let r = compute_structure_set(u(1, 2, 1)).unwrap();
        assert_eq!(r.total, AbelianGroup::free_plus_twos(1, 1));
        assert!(r.basepoint_gain_fired());
        assert!(!r.free_exception_fired());
        // n even: base point adds nothing.
        let r = compute_structure_set(u(2, 3, 1)).unwrap();
        assert!(!r.basepoint_gain_fired());
        assert_eq!(r.total, AbelianGroup::free_plus_twos(3, 1));
    }

    #[test]
    fn quaternionic_basepoint_gains() {
        let sp = |n, k, j| ActionSpec::new(Family::Quaternionic, n, k, j).unwrap();
        let r = compute_structure_set(sp(1, 2, 1)).unwrap();
        assert_eq!(
            r.summand(SummandLabel::BasepointCorrection).unwrap().group,
            AbelianGroup::free(1)
        );
        let r = compute_structure_set(sp(3, 4, 2)).unwrap();
        assert_eq!(
            r.summand(SummandLabel::BasepointCorrection).unwrap().group,
            AbelianGroup::cyclic(2)
        );
    }

    #[test]
    fn suspension_examples() {
        let s = suspension_report(u(1, 3, 0)).unwrap();
        assert!(s.certified);
        assert_eq!(s.at_k.total, AbelianGroup::free_plus_twos(1, 1));
        assert_eq!(s.at_k_plus_2.total, AbelianGroup::free_plus_twos(2, 2));

        let s = suspension_report(u(2, 2, 0)).unwrap();
        assert!(s.certified);
        assert_eq!(s.at_k.total, AbelianGroup::free(1));
        assert_eq!(s.at_k_plus_2.total, AbelianGroup::free_plus_twos(4, 2));
    }

    #[test]
    fn pairing_with_itself_is_identity() {
        let r = compute_structure_set(u(3, 5, 1)).unwrap();
        let pairs = pair_summands(&r, &r);
        assert_eq!(pairs.len(), r.summands.len());
        assert!(pairs.iter().all(|p| p.monotone && p.before == p.after));
    }
}
