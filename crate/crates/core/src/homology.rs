//! Finite free chain complexes over the integers and their homology.
//!
//! This is the brute-force side of every check in the crate: it knows nothing
//! about orbit spaces or partitions, only matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::snf::IntMatrix;

/// Chain groups `C_0, ..., C_top` with one labeled generator per basis
/// element, and boundaries `∂_p : C_p → C_{p-1}` stored as
/// `|C_{p-1}| x |C_p|` matrices. `∂_0` is the zero map to the zero group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    generators: Vec<Vec<String>>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Validates matrix shapes and `∂_{p-1} ∂_p = 0`.
    ///
    /// `boundaries[p]` is `∂_p`; `boundaries[0]` must be `0 x |C_0|`.
    pub fn new(generators: Vec<Vec<String>>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        assert_eq!(generators.len(), boundaries.len(), "one boundary matrix per degree");
        for (p, d) in boundaries.iter().enumerate() {
            let expected_rows = if p == 0 { 0 } else { generators[p - 1].len() };
            let expected_cols = generators[p].len();
            if d.rows() != expected_rows || d.cols() != expected_cols {
                return Err(Error::BoundaryShape {
                    degree: p,
                    rows: d.rows(),
                    cols: d.cols(),
                    expected_rows,
                    expected_cols,
                });
            }
        }
        for p in 2..boundaries.len() {
            let prod = boundaries[p - 1].mul_exact(&boundaries[p]);
            if prod.iter().flatten().any(|x| !x.is_zero()) {
                return Err(Error::BoundarySquare { degree: p });
            }
        }
        Ok(ChainComplex { generators, boundaries })
    }

    /// Builds a complex from generator labels and a sparse boundary listing
    /// `(degree, source_index, target_index, coefficient)`.
    pub fn from_sparse(
        generators: Vec<Vec<String>>,
        entries: impl IntoIterator<Item = (usize, usize, usize, i64)>,
    ) -> Result<Self> {
        let mut boundaries: Vec<IntMatrix> = (0..generators.len())
            .map(|p| {
                let rows = if p == 0 { 0 } else { generators[p - 1].len() };
                IntMatrix::zeros(rows, generators[p].len())
            })
            .collect();
        for (p, src, dst, c) in entries {
            let m = &mut boundaries[p];
            let v = m.get(dst, src) + c;
            m.set(dst, src, v);
        }
        ChainComplex::new(generators, boundaries)
    }

    /// Highest degree carrying a chain group slot (possibly empty).
    pub fn top_degree(&self) -> usize {
        self.generators.len().saturating_sub(1)
    }

    pub fn degrees(&self) -> std::ops::Range<usize> {
        0..self.generators.len()
    }

    pub fn generators(&self, p: usize) -> &[String] {
        self.generators.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn cell_count(&self, p: usize) -> usize {
        self.generators(p).len()
    }

    pub fn total_cells(&self) -> usize {
        self.generators.iter().map(Vec::len).sum()
    }

    /// `∂_p`, or `None` outside `0..=top_degree`.
    pub fn boundary(&self, p: usize) -> Option<&IntMatrix> {
        self.boundaries.get(p)
    }

    pub fn all_boundaries_zero(&self) -> bool {
        self.boundaries.iter().all(IntMatrix::is_zero)
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating(self.degrees().map(|p| self.cell_count(p)))
    }

    /// Reorders the generators of each degree: `perms[p][new] = old`.
    pub fn permuted(&self, perms: &[Vec<usize>]) -> Result<Self> {
        let generators: Vec<Vec<String>> = self
            .degrees()
            .map(|p| perms[p].iter().map(|&old| self.generators[p][old].clone()).collect())
            .collect();
        let boundaries = self
            .degrees()
            .map(|p| {
                let d = &self.boundaries[p];
                let mut out = IntMatrix::zeros(d.rows(), d.cols());
                let row_perm: &[usize] = if p == 0 { &[] } else { &perms[p - 1] };
                for (new_c, &old_c) in perms[p].iter().enumerate() {
                    for (new_r, &old_r) in row_perm.iter().enumerate() {
                        out.set(new_r, new_c, d.get(old_r, old_c));
                    }
                }
                out
            })
            .collect();
        ChainComplex::new(generators, boundaries)
    }

    /// Integral homology in every degree `0..=top_degree`.
    pub fn integral_homology(&self) -> BTreeMap<usize, AbelianGroup> {
        let factors: Vec<Vec<BigInt>> = self.boundaries.iter().map(IntMatrix::invariant_factors).collect();
        self.degrees()
            .map(|p| {
                let out_rank = factors[p].len();
                let (in_rank, torsion) = match factors.get(p + 1) {
                    Some(f) => (
                        f.len(),
                        f.iter()
                            .filter(|d| !d.is_one())
                            .map(|d| u64::try_from(d).expect("torsion order fits in u64"))
                            .collect::<Vec<_>>(),
                    ),
                    None => (0, Vec::new()),
                };
                let free = self.cell_count(p) - out_rank - in_rank;
                let orders: Vec<u64> = std::iter::repeat_n(0, free).chain(torsion).collect();
                let group = AbelianGroup::from_cyclic_orders(&orders).expect("canonical torsion");
                (p, group)
            })
            .collect()
    }

    /// Mod-2 Betti numbers in every degree `0..=top_degree`.
    pub fn mod2_homology(&self) -> BTreeMap<usize, usize> {
        let ranks: Vec<usize> = self.boundaries.iter().map(IntMatrix::rank_mod2).collect();
        self.degrees()
            .map(|p| {
                let in_rank = ranks.get(p + 1).copied().unwrap_or(0);
                (p, self.cell_count(p) - ranks[p] - in_rank)
            })
            .collect()
    }
}

pub(crate) fn alternating(counts: impl Iterator<Item = usize>) -> i64 {
    counts
        .enumerate()
        .map(|(p, c)| if p % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Euler characteristic from homology ranks.
pub fn homology_euler_characteristic(h: &BTreeMap<usize, AbelianGroup>) -> i64 {
    h.iter()
        .map(|(&p, g)| {
            if p % 2 == 0 {
                g.free_rank() as i64
            } else {
                -(g.free_rank() as i64)
            }
        })
        .sum()
}

/// Mod-2 Betti numbers predicted from integral homology by universal
/// coefficients: `free(H_p) + #even(H_p) + #even(H_{p-1})`.
pub fn universal_coefficient_mod2(h: &BTreeMap<usize, AbelianGroup>) -> BTreeMap<usize, usize> {
    h.iter()
        .map(|(&p, g)| {
            let below = p
                .checked_sub(1)
                .and_then(|q| h.get(&q))
                .map_or(0, AbelianGroup::even_torsion_count);
            (p, g.free_rank() + g.even_torsion_count() + below)
        })
        .collect()
}

/// Plain listing of a complex for export: labels and dense boundary arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexListing {
    pub degrees: Vec<DegreeListing>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeListing {
    pub degree: usize,
    pub generators: Vec<String>,
    /// `∂_degree` as rows indexed by generators of `degree - 1`.
    pub boundary: Vec<Vec<i64>>,
}

impl ChainComplex {
    pub fn listing(&self) -> ComplexListing {
        ComplexListing {
            degrees: self
                .degrees()
                .map(|p| DegreeListing {
                    degree: p,
                    generators: self.generators[p].clone(),
                    boundary: self.boundaries[p].to_rows(),
                })
                .collect(),
        }
    }
}
