//! Homology with coefficients in the surgery spectrum `L` of the trivial group.
//!
//! With coefficients `π_q L = Z, 0, Z/2, 0` (period four) and ordinary
//! homology concentrated in a single parity, the Atiyah–Hirzebruch spectral
//! sequence has no room for differentials, so
//!
//! ```text
//! H_d(X; L) = ⊕_{q ≡ 0 (4)} H_{d-q}(X; Z)  ⊕  ⊕_{q ≡ 2 (4)} H_{d-q}(X; Z/2).
//! ```
//!
//! Each group is produced twice here: from a closed-form count of partitions
//! and from Smith normal forms of the orbit-space cell complex.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmannian::{binomial, reduced_parity_count, schubert_parity_count};
use crate::group::AbelianGroup;
use crate::homology::ChainComplex;
use crate::orbit_cells::{build_chain_complex, orbit_dimension, CellFiltration};
use crate::Family;

/// `π_q L(e)`: `Z` for `q ≡ 0 mod 4`, `Z/2` for `q ≡ 2 mod 4`, zero for odd
/// `q` and for negative `q`.
pub fn l_coefficient(q: i64) -> AbelianGroup {
    if q < 0 {
        return AbelianGroup::trivial();
    }
    match q % 4 {
        0 => AbelianGroup::free(1),
        2 => AbelianGroup::cyclic(2),
        _ => AbelianGroup::trivial(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reduction {
    /// Use the homology as given.
    Unreduced,
    /// Drop one `Z` (and one `Z/2` over the field) in degree 0 first.
    Reduced,
}

/// Ordinary homology of a space, integral and mod 2, degree by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinaryHomology {
    pub integral: BTreeMap<usize, AbelianGroup>,
    pub mod2: BTreeMap<usize, usize>,
}

impl OrdinaryHomology {
    pub fn of(complex: &ChainComplex) -> Self {
        OrdinaryHomology {
            integral: complex.integral_homology(),
            mod2: complex.mod2_homology(),
        }
    }

    /// Free homology with the given ranks; mod-2 ranks agree with them.
    pub fn free(betti: &BTreeMap<usize, usize>) -> Self {
        OrdinaryHomology {
            integral: betti.iter().map(|(&p, &r)| (p, AbelianGroup::free(r))).collect(),
            mod2: betti.clone(),
        }
    }

    fn rank(&self, p: usize) -> usize {
        self.integral.get(&p).map_or(0, AbelianGroup::free_rank)
    }

    fn rank_mod2(&self, p: usize) -> usize {
        self.mod2.get(&p).copied().unwrap_or(0)
    }

    /// Degrees carrying nonzero integral homology.
    pub fn support(&self) -> Vec<usize> {
        self.integral
            .iter()
            .filter(|(_, g)| !g.is_trivial())
            .map(|(&p, _)| p)
            .collect()
    }

    pub fn reduced(&self) -> Result<Self> {
        let mut out = self.clone();
        let h0 = out.integral.get(&0).cloned().unwrap_or_default();
        out.integral.insert(0, h0.without_one_z().ok_or(Error::EmptyBasepoint)?);
        let b0 = out.mod2.entry(0).or_insert(0);
        *b0 = b0.checked_sub(1).ok_or(Error::EmptyBasepoint)?;
        Ok(out)
    }
}

/// `H_d(X; L)` from ordinary homology through the collapsed spectral
/// sequence. The input must be torsion free.
pub fn assemble_l_homology(h: &OrdinaryHomology, d: usize, reduction: Reduction) -> Result<AbelianGroup> {
    if let Some((&degree, _)) = h.integral.iter().find(|(_, g)| !g.is_free()) {
        return Err(Error::TorsionInput { degree });
    }
    let h = match reduction {
        Reduction::Unreduced => h.clone(),
        Reduction::Reduced => h.reduced()?,
    };
    let free = (0..=d).step_by(4).map(|q| h.rank(d - q)).sum();
    let twos = (2..=d).step_by(4).map(|q| h.rank_mod2(d - q)).sum();
    Ok(AbelianGroup::free_plus_twos(free, twos))
}

fn check_range(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if k < n {
        return Err(Error::KBelowN { n, k });
    }
    Ok(())
}

/// `H_d(Z, Z_{-1}; L)` in the top degree, closed form: `Z^A ⊕ Z_2^B` over
/// Schubert cells of `G(n, k)`, or `Z^C(k,n)` for the quaternionic family.
pub fn relative_l_homology(family: Family, n: usize, k: usize) -> Result<AbelianGroup> {
    check_range(n, k)?;
    Ok(match family {
        Family::Complex => {
            let c = schubert_parity_count(n, k)?;
            AbelianGroup::free_plus_twos(c.even_count, c.odd_count)
        }
        Family::Quaternionic => AbelianGroup::free(binomial(k, n)),
    })
}

/// The same group computed from the full-rank quotient complex.
pub fn relative_l_homology_oracle(family: Family, n: usize, k: usize) -> Result<AbelianGroup> {
    let complex = build_chain_complex(family, n, k, CellFiltration::top_pair(n))?;
    let h = OrdinaryHomology::of(complex.chain_complex());
    let group = assemble_l_homology(&h, orbit_dimension(family, n, k), Reduction::Unreduced)?;
    if family == Family::Quaternionic && group.two_count() != 0 {
        return Err(Error::Contradiction(format!(
            "quaternionic relative homology picked up Z_2 summands at n = {n}, k = {k}"
        )));
    }
    Ok(group)
}

/// `H̃_d(Z; L)`, closed form.
pub fn reduced_l_homology(family: Family, n: usize, k: usize) -> Result<AbelianGroup> {
    let c = reduced_parity_count(n, k, family)?;
    Ok(AbelianGroup::free_plus_twos(c.even_count, c.odd_count))
}

/// `H̃_d(Z; L)` from the full cell complex.
pub fn reduced_l_homology_oracle(family: Family, n: usize, k: usize) -> Result<AbelianGroup> {
    full_oracle(family, n, k, Reduction::Reduced)
}

/// `H_d(Z; L)` from the full cell complex, base point included.
pub fn unreduced_l_homology_oracle(family: Family, n: usize, k: usize) -> Result<AbelianGroup> {
    full_oracle(family, n, k, Reduction::Unreduced)
}

fn full_oracle(family: Family, n: usize, k: usize, reduction: Reduction) -> Result<AbelianGroup> {
    let complex = build_chain_complex(family, n, k, CellFiltration::all())?;
    let h = OrdinaryHomology::of(complex.chain_complex());
    let group = assemble_l_homology(&h, orbit_dimension(family, n, k), reduction)?;
    if family == Family::Quaternionic && reduction == Reduction::Reduced && group.two_count() != 0 {
        return Err(Error::Contradiction(format!(
            "quaternionic reduced homology picked up Z_2 summands at n = {n}, k = {k}"
        )));
    }
    Ok(group)
}

/// `H_0(Z; π_d L) = L_d(e)`, the difference between unreduced and reduced
/// homology in the top degree. Only defined for `k - n` odd.
pub fn basepoint_correction(family: Family, n: usize, k: usize) -> Result<AbelianGroup> {
    check_range(n, k)?;
    if (k - n).is_multiple_of(2) {
        return Err(Error::UnsupportedParity { n, k });
    }
    Ok(l_coefficient(orbit_dimension(family, n, k) as i64))
}

/// Outcome of checking that ordinary homology is sparse enough for the
/// spectral sequence to collapse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseCertificate {
    pub holds: bool,
    /// Modulus of the residue test: 2 for the complex family, 4 otherwise.
    pub modulus: usize,
    /// Residue every supporting degree must share, if any degree supports.
    pub residue: Option<usize>,
    /// Degrees of reduced homology that break the pattern or carry torsion.
    pub offending_degrees: Vec<usize>,
}

/// Checks that reduced homology of `Z` lives in degrees `≡ n + 1 mod 2`
/// (complex) or in a single class mod 4 (quaternionic), torsion free.
pub fn verify_collapse(family: Family, n: usize, k: usize) -> Result<CollapseCertificate> {
    let complex = build_chain_complex(family, n, k, CellFiltration::all())?;
    let h = OrdinaryHomology::of(complex.chain_complex()).reduced()?;
    let support = h.support();
    let (modulus, residue) = match family {
        Family::Complex => (2, Some((n + 1) % 2)),
        Family::Quaternionic => (4, support.first().map(|p| p % 4)),
    };
    let offending_degrees: Vec<usize> = support
        .iter()
        .copied()
        .filter(|&p| Some(p % modulus) != residue || !h.integral[&p].is_free())
        .collect();
    Ok(CollapseCertificate {
        holds: offending_degrees.is_empty(),
        modulus,
        residue: if support.is_empty() { None } else { residue },
        offending_degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients() {
        assert_eq!(l_coefficient(0), AbelianGroup::free(1));
        assert_eq!(l_coefficient(2), AbelianGroup::cyclic(2));
        assert_eq!(l_coefficient(3), AbelianGroup::trivial());
        assert_eq!(l_coefficient(8), AbelianGroup::free(1));
        assert_eq!(l_coefficient(-4), AbelianGroup::trivial());
    }

    #[test]
    fn assemble_small_inputs() {
        let s2 = OrdinaryHomology::free(&BTreeMap::from([(2, 1)]));
        assert_eq!(
            assemble_l_homology(&s2, 2, Reduction::Unreduced).unwrap(),
            AbelianGroup::free(1)
        );

        // Grassmannian G(2,4) cohomology placed in degrees 11 - c.
        let betti = BTreeMap::from([(0, 1), (2, 1), (4, 2), (6, 1), (8, 1)]);
        let dual = betti.iter().map(|(&c, &r)| (11 - c, r)).collect();
        let g = assemble_l_homology(&OrdinaryHomology::free(&dual), 11, Reduction::Unreduced).unwrap();
        assert_eq!(g, AbelianGroup::free_plus_twos(4, 2));

        let empty = OrdinaryHomology::free(&BTreeMap::new());
        for d in 0..10 {
            assert!(assemble_l_homology(&empty, d, Reduction::Unreduced)
                .unwrap()
                .is_trivial());
        }
    }

    #[test]
    fn assemble_rejects_torsion_and_empty_basepoint() {
        let h = OrdinaryHomology {
            integral: BTreeMap::from([(0, AbelianGroup::free(1)), (1, AbelianGroup::cyclic(2))]),
            mod2: BTreeMap::from([(0, 1), (1, 1), (2, 1)]),
        };
        assert_eq!(
            assemble_l_homology(&h, 4, Reduction::Unreduced),
            Err(Error::TorsionInput { degree: 1 })
        );
        let empty = OrdinaryHomology::free(&BTreeMap::new());
        assert_eq!(
            assemble_l_homology(&empty, 0, Reduction::Reduced),
            Err(Error::EmptyBasepoint)
        );
    }

    #[test]
    fn relative_examples() {
        let expected = AbelianGroup::free_plus_twos(4, 2);
        assert_eq!(relative_l_homology(Family::Complex, 2, 4).unwrap(), expected);
        assert_eq!(relative_l_homology_oracle(Family::Complex, 2, 4).unwrap(), expected);
        for n in 1..=4 {
            assert_eq!(
                relative_l_homology(Family::Complex, n, n).unwrap(),
                AbelianGroup::free(1)
            );
        }
        assert_eq!(
            relative_l_homology(Family::Quaternionic, 2, 3).unwrap(),
            AbelianGroup::free(3)
        );
        assert_eq!(
            relative_l_homology_oracle(Family::Quaternionic, 2, 3).unwrap(),
            AbelianGroup::free(3)
        );
        assert_eq!(
            relative_l_homology(Family::Complex, 3, 2),
            Err(Error::KBelowN { n: 3, k: 2 })
        );
    }

    #[test]
    fn reduced_examples() {
        assert!(reduced_l_homology(Family::Complex, 2, 2).unwrap().is_trivial());
        assert!(reduced_l_homology_oracle(Family::Complex, 2, 2).unwrap().is_trivial());
        assert_eq!(
            reduced_l_homology(Family::Complex, 1, 2).unwrap(),
            AbelianGroup::free(1)
        );
        assert_eq!(
            reduced_l_homology_oracle(Family::Complex, 1, 2).unwrap(),
            AbelianGroup::free(1)
        );
        assert_eq!(
            reduced_l_homology(Family::Quaternionic, 1, 2).unwrap(),
            AbelianGroup::free(1)
        );
        assert_eq!(
            reduced_l_homology_oracle(Family::Quaternionic, 1, 2).unwrap(),
            AbelianGroup::free(1)
        );
    }

    #[test]
    fn basepoint_table() {
        assert_eq!(
            basepoint_correction(Family::Complex, 1, 2).unwrap(),
            AbelianGroup::cyclic(2)
        );
        assert_eq!(
            basepoint_correction(Family::Complex, 2, 3).unwrap(),
            AbelianGroup::trivial()
        );
        assert_eq!(
            basepoint_correction(Family::Quaternionic, 1, 2).unwrap(),
            AbelianGroup::free(1)
        );
        assert_eq!(
            basepoint_correction(Family::Quaternionic, 3, 4).unwrap(),
            AbelianGroup::cyclic(2)
        );
        assert_eq!(
            basepoint_correction(Family::Quaternionic, 2, 5).unwrap(),
            AbelianGroup::trivial()
        );
        assert_eq!(
            basepoint_correction(Family::Complex, 2, 4),
            Err(Error::UnsupportedParity { n: 2, k: 4 })
        );
    }

    #[test]
    fn collapse_examples() {
        assert!(verify_collapse(Family::Complex, 2, 4).unwrap().holds);
        let cp4 = verify_collapse(Family::Complex, 1, 5).unwrap();
        assert!(cp4.holds);
        assert_eq!(cp4.residue, Some(0));
        let hp2 = verify_collapse(Family::Quaternionic, 1, 3).unwrap();
        assert!(hp2.holds);
        assert_eq!(hp2.residue, Some(0));
    }
}
