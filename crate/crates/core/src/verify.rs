//! Grid verification: every closed form against its oracle plus the
//! structural invariants of each layer, over a box of parameters.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::grassmannian::{binomial, enumerate_box_partitions, reduced_parity_count, schubert_parity_count};
use crate::group::AbelianGroup;
use crate::homology::{homology_euler_characteristic, universal_coefficient_mod2, ChainComplex};
use crate::l_homology::{
    basepoint_correction, reduced_l_homology, reduced_l_homology_oracle, relative_l_homology,
    relative_l_homology_oracle, unreduced_l_homology_oracle, verify_collapse,
};
use crate::orbit_cells::{
    build_chain_complex, enumerate_shapes, orbit_dimension, predicted_homology, surviving_shapes, CellFiltration,
};
use crate::structure_set::{compute_structure_set, suspension_report, ActionSpec, SummandLabel};
use crate::Family;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridBounds {
    pub max_n: usize,
    pub max_k: usize,
    pub max_j: usize,
    pub families: Vec<Family>,
}

impl GridBounds {
    /// `(family, n, k)` with `1 <= n <= max_n`, `n <= k <= max_k`.
    pub fn orbit_cases(&self) -> Vec<(Family, usize, usize)> {
        let mut out = Vec::new();
        for &family in &self.families {
            for n in 1..=self.max_n {
                for k in n..=self.max_k {
                    out.push((family, n, k));
                }
            }
        }
        out
    }

    pub fn specs(&self) -> Vec<ActionSpec> {
        self.orbit_cases()
            .into_iter()
            .flat_map(|(family, n, k)| (0..=self.max_j).map(move |j| ActionSpec { family, n, k, j }))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub case: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| !o.passed)
    }

    /// `(passed, failed)` per check name, sorted by name.
    pub fn tally(&self) -> BTreeMap<&'static str, (usize, usize)> {
        let mut out: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();
        for o in &self.outcomes {
            let e = out.entry(o.check).or_default();
            if o.passed {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        out
    }

    pub fn failures_for<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a CheckOutcome> + 'a {
        self.outcomes.iter().filter(move |o| o.check == check && !o.passed)
    }

    pub fn count_for(&self, check: &str) -> usize {
        self.outcomes.iter().filter(|o| o.check == check).count()
    }
}

/// `Ok(None)` passes, `Ok(Some(why))` fails, `Err` fails with the error text.
pub type Verdict = Result<Option<String>>;

fn outcome(check: &'static str, case: &str, verdict: Verdict) -> CheckOutcome {
    let detail = match verdict {
        Ok(d) => d,
        Err(e) => Some(format!("error: {e}")),
    };
    CheckOutcome {
        check,
        case: case.to_string(),
        passed: detail.is_none(),
        detail,
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, left: T, right: T) -> Option<String> {
    (left != right).then(|| format!("{what}: {left:?} != {right:?}"))
}

pub fn run(bounds: &GridBounds) -> VerifyReport {
    let orbit: Vec<Vec<CheckOutcome>> = bounds
        .orbit_cases()
        .par_iter()
        .map(|&(family, n, k)| orbit_checks(family, n, k))
        .collect();
    let specs: Vec<Vec<CheckOutcome>> = bounds.specs().par_iter().map(|&spec| spec_checks(spec)).collect();
    VerifyReport {
        outcomes: orbit.into_iter().chain(specs).flatten().collect(),
    }
}

pub fn orbit_case_name(family: Family, n: usize, k: usize) -> String {
    format!("family={family} n={n} k={k}")
}

pub fn spec_case_name(spec: ActionSpec) -> String {
    format!("family={} n={} k={} j={}", spec.family, spec.n, spec.k, spec.j)
}

/// Reverses each degree and rotates by the degree index.
pub fn scramble(c: &ChainComplex) -> Vec<Vec<usize>> {
    c.degrees()
        .map(|p| {
            let len = c.cell_count(p);
            (0..len).map(|i| (len - 1 - i + p) % len).collect()
        })
        .collect()
}

pub fn orbit_checks(family: Family, n: usize, k: usize) -> Vec<CheckOutcome> {
    let case = orbit_case_name(family, n, k);
    let mut out = Vec::new();
    let mut push = |check, verdict| out.push(outcome(check, &case, verdict));

    push(
        "relative_oracle",
        (|| {
            Ok(expect_eq(
                "closed form vs oracle",
                relative_l_homology(family, n, k)?,
                relative_l_homology_oracle(family, n, k)?,
            ))
        })(),
    );
    push(
        "reduced_oracle",
        (|| {
            Ok(expect_eq(
                "closed form vs oracle",
                reduced_l_homology(family, n, k)?,
                reduced_l_homology_oracle(family, n, k)?,
            ))
        })(),
    );
    if family == Family::Complex && (k - n) % 2 == 1 {
        push(
            "reduced_shift",
            (|| {
                Ok(expect_eq(
                    "a,b vs A,B at k-1",
                    reduced_parity_count(n, k, family)?,
                    schubert_parity_count(n, k - 1)?,
                ))
            })(),
        );
    }
    push("counting_identities", counting_identities(family, n, k));
    push(
        "collapse",
        (|| {
            let c = verify_collapse(family, n, k)?;
            Ok((!c.holds).then(|| format!("offending degrees {:?}", c.offending_degrees)))
        })(),
    );
    push("complex_invariants", complex_invariants(family, n, k));
    push(
        "integral_closed_form",
        (|| {
            let oracle = build_chain_complex(family, n, k, CellFiltration::all())?
                .chain_complex()
                .integral_homology();
            // The top cell sits in degree dim Z, so both maps cover the same range.
            Ok(expect_eq(
                "predicted vs oracle homology",
                predicted_homology(family, n, k)?,
                oracle,
            ))
        })(),
    );
    if family == Family::Complex {
        push("relative_degree_pairing", relative_degree_pairing(n, k));
    }
    if (k - n) % 2 == 1 {
        push(
            "basepoint",
            (|| {
                let lhs = unreduced_l_homology_oracle(family, n, k)?;
                let rhs = reduced_l_homology_oracle(family, n, k)?.direct_sum(&basepoint_correction(family, n, k)?);
                Ok(expect_eq("unreduced vs reduced ⊕ L_d(e)", lhs, rhs))
            })(),
        );
    }
    out
}

fn counting_identities(family: Family, n: usize, k: usize) -> Verdict {
    let upper = schubert_parity_count(n, k)?;
    let lower = reduced_parity_count(n, k, family)?;
    let survivors = surviving_shapes(family, n, k)?.len();
    let mut problems = Vec::new();
    problems.extend(expect_eq("A + B", upper.total(), binomial(k, n)));
    problems.extend(expect_eq("a + b", lower.total(), binomial(k - 1, n)));
    problems.extend(expect_eq(
        "full-rank shapes with m_n > 1",
        survivors,
        binomial(k - 1, n),
    ));
    let top = enumerate_shapes(family, n, k, CellFiltration::top_pair(n))?.len();
    problems.extend(expect_eq("full-rank shapes", top, binomial(k, n)));
    if n < k {
        problems.extend(expect_eq("box transpose", upper, schubert_parity_count(k - n, k)?));
        let parts = enumerate_box_partitions(n, (k - n) as i64)?;
        let mut transposed: Vec<_> = parts.iter().map(|p| p.transpose()).collect();
        transposed.sort();
        problems.extend(expect_eq(
            "transpose bijection",
            transposed,
            enumerate_box_partitions(k - n, n as i64)?,
        ));
    }
    Ok((!problems.is_empty()).then(|| problems.join("; ")))
}

fn complex_invariants(family: Family, n: usize, k: usize) -> Verdict {
    let mut problems = Vec::new();
    let mut filters = vec![
        ("full", CellFiltration::all()),
        ("top pair", CellFiltration::top_pair(n)),
    ];
    for i in 1..n {
        filters.push(("stratum", CellFiltration::stratum(n, i)));
    }
    for (name, filter) in filters {
        // Construction fails on a nonzero ∂∘∂, so success certifies it.
        let oc = build_chain_complex(family, n, k, filter)?;
        let c = oc.chain_complex();
        let h = c.integral_homology();
        problems.extend(expect_eq(
            &format!("{name}: Euler characteristic"),
            c.euler_characteristic(),
            homology_euler_characteristic(&h),
        ));
        let m2 = c.mod2_homology();
        problems.extend(expect_eq(
            &format!("{name}: universal coefficients"),
            &m2,
            &universal_coefficient_mod2(&h),
        ));
        if h.values().all(AbelianGroup::is_free) {
            let ranks: BTreeMap<usize, usize> = h.iter().map(|(&p, g)| (p, g.free_rank())).collect();
            problems.extend(expect_eq(&format!("{name}: mod 2 equals integral"), &m2, &ranks));
        } else {
            problems.push(format!("{name}: torsion in orbit homology"));
        }
        let shuffled = c.permuted(&scramble(c))?;
        problems.extend(expect_eq(
            &format!("{name}: shuffle invariance"),
            shuffled.integral_homology(),
            h,
        ));
        if name == "top pair" && !c.all_boundaries_zero() {
            problems.push("top pair: nonzero boundary".to_string());
        }
    }
    Ok((!problems.is_empty()).then(|| problems.join("; ")))
}

/// Cells of the full-rank quotient complex, sorted by their codegree
/// `d - dim` mod 4, reproduce `(A, B)`.
fn relative_degree_pairing(n: usize, k: usize) -> Verdict {
    let d = orbit_dimension(Family::Complex, n, k);
    let shapes = enumerate_shapes(Family::Complex, n, k, CellFiltration::top_pair(n))?;
    let zeros = shapes.iter().filter(|s| (d - s.dimension()).is_multiple_of(4)).count();
    let twos = shapes.iter().filter(|s| (d - s.dimension()) % 4 == 2).count();
    let c = schubert_parity_count(n, k)?;
    Ok(expect_eq(
        "codegree counts vs (A, B)",
        (zeros, twos),
        (c.even_count, c.odd_count),
    ))
}

pub fn spec_checks(spec: ActionSpec) -> Vec<CheckOutcome> {
    let case = spec_case_name(spec);
    let mut out = Vec::new();
    let report = compute_structure_set(spec);
    out.push(outcome(
        "parity_dispatch",
        &case,
        report.as_ref().map_err(Clone::clone).map(|r| {
            (r.gap_parity.is_none() != spec.normalize().is_trivial_action())
                .then(|| "gap parity missing for a nontrivial action".to_string())
        }),
    ));
    out.push(outcome("structure_layers", &case, structure_layers(spec)));
    out.push(outcome(
        "exception_exclusivity",
        &case,
        report.map(|r| {
            (r.free_exception_fired() && r.basepoint_gain_fired()).then(|| "both exceptions fired".to_string())
        }),
    ));
    out.push(outcome(
        "suspension",
        &case,
        suspension_report(spec).map(|s| {
            (!s.certified).then(|| {
                let bad: Vec<String> = s
                    .double_pairings
                    .iter()
                    .filter(|p| !p.monotone)
                    .map(|p| p.label.to_string())
                    .collect();
                format!(
                    "non-monotone summands {bad:?}, double total embeds {}, parity {:?}",
                    s.double_total_embeds, s.parity_flip
                )
            })
        }),
    ));
    out
}

/// Every summand of the report is reproduced by the oracle layer.
pub fn structure_layers(spec: ActionSpec) -> Verdict {
    let report = compute_structure_set(spec)?;
    let ActionSpec { family, n, k, j } = report.normalized_spec;
    let mut problems = Vec::new();
    for s in &report.summands {
        let expected = match s.label {
            SummandLabel::StratumPair { stratum } => relative_l_homology_oracle(family, n - stratum, k)?,
            SummandLabel::FreeException { stratum } => relative_l_homology_oracle(family, n - stratum, k)?
                .without_one_z()
                .unwrap_or_default(),
            SummandLabel::TopAlg => reduced_l_homology_oracle(family, n, k)?,
            SummandLabel::BasepointCorrection => continue,
        };
        problems.extend(expect_eq(&s.label.to_string(), &s.group, &expected));
    }
    if report.summand(SummandLabel::TopAlg).is_some() {
        let top = report
            .summand(SummandLabel::TopAlg)
            .map(|s| s.group.clone())
            .unwrap_or_default();
        let base = report
            .summand(SummandLabel::BasepointCorrection)
            .map(|s| s.group.clone());
        if j > 0 {
            let with_base = top.direct_sum(&base.unwrap_or_default());
            problems.extend(expect_eq(
                "top ⊕ base point vs unreduced oracle",
                with_base,
                unreduced_l_homology_oracle(family, n, k)?,
            ));
        } else if base.is_some() {
            problems.push("base point summand present with j = 0".to_string());
        }
    }
    let sum = report
        .summands
        .iter()
        .fold(AbelianGroup::trivial(), |acc, s| acc.direct_sum(&s.group));
    problems.extend(expect_eq("total", &sum, &report.total));
    Ok((!problems.is_empty()).then(|| problems.join("; ")))
}
