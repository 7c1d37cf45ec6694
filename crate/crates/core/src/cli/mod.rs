//! Command line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 internal contradiction,
//! 4 verification failure.

pub mod document;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::l_homology::{
    reduced_l_homology, reduced_l_homology_oracle, relative_l_homology, relative_l_homology_oracle,
};
use crate::orbit_cells::{build_chain_complex, orbit_dimension, predicted_homology, CellFiltration};
use crate::structure_set::{compute_structure_set, ActionSpec};
use crate::verify::{self, GridBounds, VerifyReport};
use crate::Family;
use document::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONTRADICTION: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "multiaxial",
    version,
    about = "Structure sets of multiaxial representation spheres"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose the structure set of S(kρ_n ⊕ jε).
    StructureSet(StructureSetArgs),
    /// Top-degree L-homology of the orbit space, closed form against oracle.
    Homology(HomologyArgs),
    /// Run every oracle comparison and invariant over a parameter grid.
    Verify(VerifyArgs),
    /// Dump the cellular chain complex of the orbit space as JSON.
    ExportComplex(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Reduced,
    Relative,
    IntegralAll,
}

impl Variant {
    fn name(self) -> &'static str {
        match self {
            Variant::Reduced => "reduced",
            Variant::Relative => "relative",
            Variant::IntegralAll => "integral-all",
        }
    }
}

#[derive(Debug, Args)]
pub struct StructureSetArgs {
    /// U (unitary) or Sp (symplectic).
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub j: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    #[arg(long, value_enum)]
    pub variant: Variant,
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    pub max_n: u16,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    pub max_k: u16,
    #[arg(long, default_value_t = 2)]
    pub max_j: u16,
    /// Comma-separated families to include.
    #[arg(long, value_delimiter = ',', default_values = ["U", "Sp"])]
    pub families: Vec<Family>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub min_rank: Option<usize>,
    #[arg(long)]
    pub max_rank: Option<usize>,
}

/// What a command printed and how it wants the process to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    /// Contradictions exit 3; every other library error is a usage error.
    pub fn from_error(e: Error) -> Self {
        let code = match e {
            Error::Contradiction(_) => EXIT_CONTRADICTION,
            _ => EXIT_USAGE,
        };
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code,
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::StructureSet(a) => structure_set(&a),
        Command::Homology(a) => homology(&a),
        Command::Verify(a) => Ok(verify_grid(&a)),
        Command::ExportComplex(a) => export_complex(&a),
    };
    result.unwrap_or_else(Outcome::from_error)
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(rendered)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code,
                }
            }
        }
    }
}

fn structure_set(a: &StructureSetArgs) -> crate::Result<Outcome> {
    let command = format!(
        "structure-set --family {} --n {} --k {} --j {}",
        a.family, a.n, a.k, a.j
    );
    let spec = ActionSpec::new(a.family, a.n, a.k, a.j)?;
    let report = compute_structure_set(spec)?;
    let oracle = verify::structure_layers(spec);
    let verification = match oracle {
        Ok(None) => Verification {
            status: "oracle-agrees".into(),
            details: Vec::new(),
        },
        Ok(Some(why)) => Verification {
            status: "oracle-disagrees".into(),
            details: vec![why],
        },
        Err(e) => return Err(e),
    };
    let agrees = verification.details.is_empty();
    let doc = StructureSetDocument {
        schema_version: SCHEMA_VERSION,
        tool: Tool::current(),
        command,
        input_spec: spec,
        normalized_spec: report.normalized_spec,
        trivial_action: report.normalized_spec.is_trivial_action(),
        gap_parity: report.gap_parity,
        summands: report
            .summands
            .iter()
            .map(|s| SummandEntry {
                label: s.label.to_string(),
                kind: s.label,
                free_rank: s.group.free_rank(),
                torsion: s.group.torsion().to_vec(),
                source: s.source_formula.clone(),
            })
            .collect(),
        total: report.total.clone(),
        notes: report.notes.clone(),
        verification,
    };
    let stdout = match a.format {
        Format::Json => to_json(&doc),
        Format::Table => structure_set_table(&doc),
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if agrees { EXIT_OK } else { EXIT_VERIFICATION },
    })
}

fn structure_set_table(doc: &StructureSetDocument) -> String {
    let ns = doc.normalized_spec;
    let mut out = format!("{}\n", doc.input_spec);
    if doc.input_spec != ns {
        out += &format!("normalized to n={} k={} j={}\n", ns.n, ns.k, ns.j);
    }
    match doc.gap_parity {
        Some(p) => out += &format!("first gap k - n = {} ({:?})\n", ns.k - ns.n, p),
        None => out += "trivial action\n",
    }
    let rows: Vec<(String, String)> = doc
        .summands
        .iter()
        .map(|s| {
            let g = crate::AbelianGroup::from_cyclic_orders(
                &std::iter::repeat_n(0, s.free_rank)
                    .chain(s.torsion.iter().copied())
                    .collect::<Vec<_>>(),
            )
            .expect("canonical");
            (s.label.clone(), g.to_string())
        })
        .collect();
    let w0 = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
    let w1 = rows.iter().map(|r| r.1.chars().count()).max().unwrap_or(0);
    for ((label, group), s) in rows.iter().zip(&doc.summands) {
        out += &format!(
            "  {label}{}  {group}{}  {}\n",
            " ".repeat(w0 - label.chars().count()),
            " ".repeat(w1 - group.chars().count()),
            s.source
        );
    }
    out += &format!("total: {}\n", doc.total);
    for note in &doc.notes {
        out += &format!("note: {note}\n");
    }
    out += &format!("verification: {}\n", doc.verification.status);
    for d in &doc.verification.details {
        out += &format!("  {d}\n");
    }
    out
}

fn homology(a: &HomologyArgs) -> crate::Result<Outcome> {
    let command = format!(
        "homology --variant {} --family {} --n {} --k {}",
        a.variant.name(),
        a.family,
        a.n,
        a.k
    );
    let (f, n, k) = (a.family, a.n, a.k);
    let groups = match a.variant {
        Variant::Relative => {
            let closed_form = relative_l_homology(f, n, k)?;
            vec![DegreeComparison {
                degree: orbit_dimension(f, n, k),
                closed_form,
                oracle: relative_l_homology_oracle(f, n, k)?,
            }]
        }
        Variant::Reduced => {
            let closed_form = reduced_l_homology(f, n, k)?;
            vec![DegreeComparison {
                degree: orbit_dimension(f, n, k),
                closed_form,
                oracle: reduced_l_homology_oracle(f, n, k)?,
            }]
        }
        Variant::IntegralAll => {
            let predicted = predicted_homology(f, n, k)?;
            let oracle = build_chain_complex(f, n, k, CellFiltration::all())?
                .chain_complex()
                .integral_homology();
            let top = predicted.len().max(oracle.len());
            (0..top)
                .map(|p| DegreeComparison {
                    degree: p,
                    closed_form: predicted.get(&p).cloned().unwrap_or_default(),
                    oracle: oracle.get(&p).cloned().unwrap_or_default(),
                })
                .filter(|c| !(c.closed_form.is_trivial() && c.oracle.is_trivial()))
                .collect()
        }
    };
    let agrees = groups.iter().all(|g| g.closed_form == g.oracle);
    let doc = HomologyDocument {
        schema_version: SCHEMA_VERSION,
        tool: Tool::current(),
        command,
        family: f,
        n,
        k,
        variant: a.variant.name().to_string(),
        groups,
        agrees,
    };
    let stdout = match a.format {
        Format::Json => to_json(&doc),
        Format::Table => {
            let mut out = format!("{} n={} k={} variant={}\n", doc.family, n, k, doc.variant);
            for g in &doc.groups {
                out += &format!("  H_{}: closed form {}, oracle {}\n", g.degree, g.closed_form, g.oracle);
            }
            out += if agrees {
                "oracle agrees\n"
            } else {
                "ORACLE DISAGREES\n"
            };
            out
        }
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if agrees { EXIT_OK } else { EXIT_VERIFICATION },
    })
}

fn verify_grid(a: &VerifyArgs) -> Outcome {
    let mut families = a.families.clone();
    families.sort();
    families.dedup();
    let names: Vec<&str> = families.iter().map(Family::group_name).collect();
    let command = format!(
        "verify --max-n {} --max-k {} --max-j {} --families {}",
        a.max_n,
        a.max_k,
        a.max_j,
        names.join(",")
    );
    let bounds = GridBounds {
        max_n: a.max_n as usize,
        max_k: a.max_k as usize,
        max_j: a.max_j as usize,
        families,
    };
    render_verify(&verify::run(&bounds), command, a.format)
}

/// Prints a grid report; exit 4 if any check failed.
pub fn render_verify(report: &VerifyReport, command: String, format: Format) -> Outcome {
    let checks: Vec<CheckTally> = report
        .tally()
        .into_iter()
        .map(|(check, (passed, failed))| CheckTally {
            check: check.to_string(),
            passed,
            failed,
        })
        .collect();
    let doc = VerifyDocument {
        schema_version: SCHEMA_VERSION,
        tool: Tool::current(),
        command,
        passed: checks.iter().map(|c| c.passed).sum(),
        failed: checks.iter().map(|c| c.failed).sum(),
        checks,
        first_failure: report.first_failure().map(|f| FailureEntry {
            check: f.check.to_string(),
            case: f.case.clone(),
            detail: f.detail.clone().unwrap_or_default(),
        }),
    };
    let stdout = match format {
        Format::Json => to_json(&doc),
        Format::Table => {
            let w = doc.checks.iter().map(|c| c.check.len()).max().unwrap_or(0);
            let mut out = String::new();
            for c in &doc.checks {
                out += &format!("{:<w$}  {:>5} passed  {:>3} failed\n", c.check, c.passed, c.failed);
            }
            out += &format!("total: {} passed, {} failed\n", doc.passed, doc.failed);
            if let Some(f) = &doc.first_failure {
                out += &format!("first failure: {} at {}: {}\n", f.check, f.case, f.detail);
            }
            out
        }
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if report.all_passed() {
            EXIT_OK
        } else {
            EXIT_VERIFICATION
        },
    }
}

fn export_complex(a: &ExportArgs) -> crate::Result<Outcome> {
    let mut command = format!("export-complex --family {} --n {} --k {}", a.family, a.n, a.k);
    if let Some(r) = a.min_rank {
        command += &format!(" --min-rank {r}");
    }
    if let Some(r) = a.max_rank {
        command += &format!(" --max-rank {r}");
    }
    let filter = CellFiltration {
        min_rank: a.min_rank,
        max_rank: a.max_rank,
    };
    let complex = build_chain_complex(a.family, a.n, a.k, filter)?;
    let cc = complex.chain_complex();
    let doc = ComplexDocument {
        schema_version: SCHEMA_VERSION,
        tool: Tool::current(),
        command,
        family: a.family,
        n: a.n,
        k: a.k,
        filter,
        euler_characteristic: cc.euler_characteristic(),
        degrees: cc.listing().degrees,
    };
    Ok(Outcome::ok(to_json(&doc)))
}
