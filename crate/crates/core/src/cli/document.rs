//! JSON documents printed by the command line tool.
//!
//! Field order in each struct is the key order on the wire. Nothing here
//! depends on time, environment or hash iteration, so identical invocations
//! print identical bytes.

use serde::{Deserialize, Serialize};

use crate::group::AbelianGroup;
use crate::homology::DegreeListing;
use crate::orbit_cells::CellFiltration;
use crate::structure_set::{ActionSpec, GapParity, SummandLabel};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

impl Tool {
    pub fn current() -> Self {
        Tool {
            name: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandEntry {
    pub label: String,
    pub kind: SummandLabel,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    /// `"oracle-agrees"` or `"oracle-disagrees"`.
    pub status: String,
    pub details: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSetDocument {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: String,
    pub input_spec: ActionSpec,
    pub normalized_spec: ActionSpec,
    pub trivial_action: bool,
    pub gap_parity: Option<GapParity>,
    pub summands: Vec<SummandEntry>,
    pub total: AbelianGroup,
    pub notes: Vec<String>,
    pub verification: Verification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeComparison {
    pub degree: usize,
    pub closed_form: AbelianGroup,
    pub oracle: AbelianGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyDocument {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: String,
    pub family: crate::Family,
    pub n: usize,
    pub k: usize,
    pub variant: String,
    /// `L`-homology variants report one entry at `dim Z`; `integral-all`
    /// reports ordinary integral homology in every degree.
    pub groups: Vec<DegreeComparison>,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub check: String,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureEntry {
    pub check: String,
    pub case: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: String,
    pub checks: Vec<CheckTally>,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<FailureEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexDocument {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: String,
    pub family: crate::Family,
    pub n: usize,
    pub k: usize,
    pub filter: CellFiltration,
    pub euler_characteristic: i64,
    pub degrees: Vec<DegreeListing>,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
