//! Exact structure sets of multiaxial `U(n)`- and `Sp(n)`-representation
//! spheres.
//!
//! The crate computes every group twice. The closed forms count partitions
//! in a box ([`grassmannian`]). The oracle builds the explicit cell complex
//! of the orbit space ([`orbit_cells`]), takes Smith normal forms
//! ([`snf`], [`homology`]), and assembles homology with `L`-spectrum
//! coefficients ([`l_homology`]). The two routes meet in
//! [`structure_set`] and are compared over whole parameter grids by
//! [`verify`].
//!
//! ```
//! use multiaxial::{compute_structure_set, ActionSpec, AbelianGroup, Family};
//!
//! let spec = ActionSpec::new(Family::Complex, 2, 4, 0)?;
//! let report = compute_structure_set(spec)?;
//! assert_eq!(report.total, AbelianGroup::free_plus_twos(4, 2));
//! assert_eq!(report.total.to_string(), "Z^4 ⊕ Z_2^2");
//! # Ok::<(), multiaxial::Error>(())
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub mod cli;
pub mod error;
pub mod grassmannian;
pub mod group;
pub mod homology;
pub mod l_homology;
pub mod orbit_cells;
pub mod snf;
pub mod structure_set;
pub mod verify;

pub use error::{Error, Result};
pub use group::AbelianGroup;
pub use homology::ChainComplex;
pub use orbit_cells::{build_chain_complex, CellFiltration, Shape};
pub use structure_set::{compute_structure_set, suspension_report, ActionSpec, DecompositionReport};

/// Which compact group acts: `U(n)` on `C^n` or `Sp(n)` on `H^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "U")]
    Complex,
    #[serde(rename = "Sp")]
    Quaternionic,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::Complex, Family::Quaternionic];

    pub fn group_name(&self) -> &'static str {
        match self {
            Family::Complex => "U",
            Family::Quaternionic => "Sp",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.group_name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "u" | "complex" => Ok(Family::Complex),
            "sp" | "quaternionic" => Ok(Family::Quaternionic),
            _ => Err(format!("unknown family {s:?}; expected U or Sp")),
        }
    }
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/partitions.md")]
    mod partitions {}
    #[doc = include_str!("../../../book/src/orbit-cells.md")]
    mod orbit_cells {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/l-homology.md")]
    mod l_homology {}
    #[doc = include_str!("../../../book/src/structure-sets.md")]
    mod structure_sets {}
    #[doc = include_str!("../../../book/src/suspension.md")]
    mod suspension {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
