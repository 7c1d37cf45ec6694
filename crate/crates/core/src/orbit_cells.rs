//! Cell structure of the orbit space `Z = S(k ρ_n) / G` for `G = U(n)` or
//! `Sp(n)`.
//!
//! A point of `Z` has a unique row-echelon representative as a `k x n`
//! matrix. Its *shape* records where the pivots sit, counted from the right
//! end: `m_1 > m_2 > ... > m_r > 0`, with `r` the rank of the matrix. All
//! points of one shape form a single open cell. The only cellular boundary
//! that survives in homology is `∂ (m_1, ..., m_{r-1}, 1) = (m_1, ..., m_{r-1})`.
//!
//! Filtering by rank gives the strata: `Z_{-i}` is the subcomplex of cells
//! with `r <= n - i`, and the pair `(Z, Z_{-1})` is the quotient complex of
//! full-rank cells.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::homology::ChainComplex;
use crate::Family;

/// Pivot positions of a row-echelon representative, strictly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Shape {
    family: Family,
    n: usize,
    k: usize,
    pivots: Vec<usize>,
}

impl Shape {
    pub fn new(family: Family, n: usize, k: usize, pivots: Vec<usize>) -> Result<Self> {
        let invalid = |reason| Error::InvalidShape {
            pivots: pivots.clone(),
            n,
            k,
            reason,
        };
        if pivots.is_empty() || pivots.len() > n {
            return Err(invalid("rank must lie in 1..=n"));
        }
        if !pivots.windows(2).all(|w| w[0] > w[1]) {
            return Err(invalid("pivots must strictly decrease"));
        }
        if pivots[pivots.len() - 1] == 0 || pivots[0] > k {
            return Err(invalid("pivots must lie in 1..=k"));
        }
        Ok(Shape { family, n, k, pivots })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Matrix rank `r`.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// `2 Σm - r - 1` for the complex family, `4 Σm - 3r - 1` for the
    /// quaternionic one.
    pub fn dimension(&self) -> usize {
        let sum: usize = self.pivots.iter().sum();
        let r = self.rank();
        match self.family {
            Family::Complex => 2 * sum - r - 1,
            Family::Quaternionic => 4 * sum - 3 * r - 1,
        }
    }

    /// The single shape this cell's boundary hits (coefficient `+1`), or
    /// `None` when the boundary is zero.
    pub fn boundary(&self) -> Option<Shape> {
        match self.pivots.as_slice() {
            [rest @ .., 1] if !rest.is_empty() => Some(Shape {
                pivots: rest.to_vec(),
                ..self.clone()
            }),
            _ => None,
        }
    }

    /// The base point of `Z`.
    pub fn is_base_point(&self) -> bool {
        self.pivots == [1]
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.pivots.iter().map(usize::to_string).collect();
        write!(f, "({})", inner.join(","))
    }
}

/// Bounds on the matrix rank of the cells kept. `None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CellFiltration {
    pub min_rank: Option<usize>,
    pub max_rank: Option<usize>,
}

impl CellFiltration {
    /// Every cell: the whole orbit space.
    pub fn all() -> Self {
        CellFiltration::default()
    }

    /// Cells of rank exactly `r`.
    pub fn exactly(r: usize) -> Self {
        CellFiltration {
            min_rank: Some(r),
            max_rank: Some(r),
        }
    }

    /// The stratum `Z_{-i}`: ranks up to `n - i`.
    pub fn stratum(n: usize, i: usize) -> Self {
        CellFiltration {
            min_rank: None,
            max_rank: Some(n.saturating_sub(i)),
        }
    }

    /// The pair `(Z, Z_{-1})`.
    pub fn top_pair(n: usize) -> Self {
        CellFiltration::exactly(n)
    }

    pub fn admits(&self, rank: usize) -> bool {
        self.min_rank.is_none_or(|lo| rank >= lo) && self.max_rank.is_none_or(|hi| rank <= hi)
    }
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

/// Shapes admitted by `filter`, ordered by dimension and then by pivots.
pub fn enumerate_shapes(family: Family, n: usize, k: usize, filter: CellFiltration) -> Result<Vec<Shape>> {
    check_range(n, k)?;
    let mut shapes = Vec::new();
    for r in (1..=n).filter(|&r| filter.admits(r)) {
        let mut current = Vec::with_capacity(r);
        decreasing_tuples(&mut current, r, k, &mut |pivots| {
            shapes.push(Shape {
                family,
                n,
                k,
                pivots: pivots.to_vec(),
            })
        });
    }
    shapes.sort_by(|a, b| (a.dimension(), &a.pivots).cmp(&(b.dimension(), &b.pivots)));
    Ok(shapes)
}

fn decreasing_tuples(current: &mut Vec<usize>, r: usize, max: usize, emit: &mut impl FnMut(&[usize])) {
    if current.len() == r {
        emit(current);
        return;
    }
    let remaining = r - current.len();
    for m in (remaining..=max).rev() {
        current.push(m);
        decreasing_tuples(current, r, m - 1, emit);
        current.pop();
    }
}

/// A cellular chain complex together with the shapes behind its generators.
#[derive(Debug, Clone)]
pub struct OrbitComplex {
    family: Family,
    n: usize,
    k: usize,
    filter: CellFiltration,
    shapes: Vec<Vec<Shape>>,
    complex: ChainComplex,
}

impl OrbitComplex {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn filter(&self) -> CellFiltration {
        self.filter
    }

    pub fn shapes(&self, degree: usize) -> &[Shape] {
        self.shapes.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn chain_complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn into_chain_complex(self) -> ChainComplex {
        self.complex
    }
}

/// Cellular chains of the cells admitted by `filter`. Boundary terms that
/// leave the admitted set are dropped, which yields the relative complex.
pub fn build_chain_complex(family: Family, n: usize, k: usize, filter: CellFiltration) -> Result<OrbitComplex> {
    let shapes = enumerate_shapes(family, n, k, filter)?;
    let top = shapes.iter().map(Shape::dimension).max().unwrap_or(0);
    let mut by_degree: Vec<Vec<Shape>> = vec![Vec::new(); top + 1];
    for s in shapes {
        by_degree[s.dimension()].push(s);
    }

    let index: HashMap<&[usize], usize> = by_degree
        .iter()
        .flat_map(|cells| cells.iter().enumerate().map(|(i, s)| (s.pivots(), i)))
        .collect();
    let mut entries = Vec::new();
    for (p, cells) in by_degree.iter().enumerate() {
        for (src, s) in cells.iter().enumerate() {
            let Some(target) = s.boundary() else { continue };
            if !filter.admits(target.rank()) {
                continue;
            }
            debug_assert_eq!(target.dimension() + 1, p);
            entries.push((p, src, index[target.pivots()], 1));
        }
    }

    let generators = by_degree
        .iter()
        .map(|cells| cells.iter().map(Shape::to_string).collect())
        .collect();
    let complex = ChainComplex::from_sparse(generators, entries)?;
    Ok(OrbitComplex {
        family,
        n,
        k,
        filter,
        shapes: by_degree,
        complex,
    })
}

/// Generators of reduced homology predicted by the cell pairing: full-rank
/// shapes whose last pivot exceeds 1.
pub fn surviving_shapes(family: Family, n: usize, k: usize) -> Result<Vec<Shape>> {
    Ok(enumerate_shapes(family, n, k, CellFiltration::top_pair(n))?
        .into_iter()
        .filter(|s| s.pivots()[n - 1] > 1)
        .collect())
}

/// Integral homology of `Z` read off the cell pairing: `Z` on the base point
/// and one free generator per surviving shape. Covers degrees
/// `0..=orbit_dimension`.
pub fn predicted_homology(family: Family, n: usize, k: usize) -> Result<BTreeMap<usize, AbelianGroup>> {
    let top = orbit_dimension(family, n, k);
    let mut ranks = vec![0usize; top + 1];
    ranks[0] = 1;
    for s in surviving_shapes(family, n, k)? {
        ranks[s.dimension()] += 1;
    }
    Ok(ranks
        .into_iter()
        .enumerate()
        .map(|(p, r)| (p, AbelianGroup::free(r)))
        .collect())
}

/// Dimension of the orbit space: `2kn - 1 - n²` or `4kn - 1 - n(2n+1)`.
pub fn orbit_dimension(family: Family, n: usize, k: usize) -> usize {
    match family {
        Family::Complex => 2 * k * n - 1 - n * n,
        Family::Quaternionic => 4 * k * n - 1 - n * (2 * n + 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmannian::binomial;

    fn listing(shapes: &[Shape]) -> Vec<(Vec<usize>, usize)> {
        shapes.iter().map(|s| (s.pivots().to_vec(), s.dimension())).collect()
    }

    #[test]
    fn circle_quotient_is_two_sphere() {
        let shapes = enumerate_shapes(Family::Complex, 1, 2, CellFiltration::all()).unwrap();
        assert_eq!(listing(&shapes), vec![(vec![1], 0), (vec![2], 2)]);
    }

    #[test]
    fn rank_two_in_four() {
        let shapes = enumerate_shapes(Family::Complex, 2, 2, CellFiltration::all()).unwrap();
        assert_eq!(listing(&shapes), vec![(vec![1], 0), (vec![2], 2), (vec![2, 1], 3)]);

        let top = enumerate_shapes(Family::Complex, 2, 4, CellFiltration::exactly(2)).unwrap();
        assert_eq!(
            listing(&top),
            vec![
                (vec![2, 1], 3),
                (vec![3, 1], 5),
                (vec![3, 2], 7),
                (vec![4, 1], 7),
                (vec![4, 2], 9),
                (vec![4, 3], 11)
            ]
        );
    }

    #[test]
    fn dimensions() {
        let c = Shape::new(Family::Complex, 2, 3, vec![2, 1]).unwrap();
        let q = Shape::new(Family::Quaternionic, 2, 3, vec![2, 1]).unwrap();
        assert_eq!(c.dimension(), 3);
        // 4*3 - 3*2 - 1
        assert_eq!(q.dimension(), 5);
        assert_eq!(Shape::new(Family::Complex, 1, 1, vec![1]).unwrap().dimension(), 0);
    }

    #[test]
    fn boundaries() {
        let s = Shape::new(Family::Complex, 2, 3, vec![2, 1]).unwrap();
        assert_eq!(s.boundary().unwrap().pivots(), &[2]);
        assert!(Shape::new(Family::Complex, 2, 3, vec![3, 2])
            .unwrap()
            .boundary()
            .is_none());
        assert!(Shape::new(Family::Complex, 2, 3, vec![1]).unwrap().boundary().is_none());
    }

    #[test]
    fn invalid_shapes() {
        assert!(Shape::new(Family::Complex, 2, 3, vec![1, 2]).is_err());
        assert!(Shape::new(Family::Complex, 2, 3, vec![4, 1]).is_err());
        assert!(Shape::new(Family::Complex, 1, 3, vec![3, 1]).is_err());
        assert!(Shape::new(Family::Complex, 2, 3, vec![]).is_err());
        assert!(Shape::new(Family::Complex, 2, 3, vec![2, 0]).is_err());
    }

    #[test]
    fn chain_complex_shapes() {
        let c = build_chain_complex(Family::Complex, 2, 2, CellFiltration::all()).unwrap();
        let cc = c.chain_complex();
        assert_eq!(cc.cell_count(0), 1);
        assert_eq!(cc.cell_count(1), 0);
        assert_eq!(cc.cell_count(2), 1);
        assert_eq!(cc.cell_count(3), 1);
        assert_eq!(cc.boundary(3).unwrap().to_rows(), vec![vec![1]]);

        let rel = build_chain_complex(Family::Complex, 2, 4, CellFiltration::exactly(2)).unwrap();
        assert!(rel.chain_complex().all_boundaries_zero());

        let point = build_chain_complex(Family::Quaternionic, 1, 1, CellFiltration::all()).unwrap();
        assert_eq!(point.chain_complex().total_cells(), 1);
        assert_eq!(point.chain_complex().cell_count(0), 1);
    }

    #[test]
    fn empty_filtration_is_empty() {
        let f = CellFiltration {
            min_rank: Some(3),
            max_rank: Some(2),
        };
        assert!(enumerate_shapes(Family::Complex, 3, 4, f).unwrap().is_empty());
        let c = build_chain_complex(Family::Complex, 3, 4, f).unwrap();
        assert_eq!(c.chain_complex().total_cells(), 0);
    }

    #[test]
    fn counts_and_parities() {
        for family in [Family::Complex, Family::Quaternionic] {
            for n in 1..=4 {
                for k in n..=8 {
                    let all = enumerate_shapes(family, n, k, CellFiltration::all()).unwrap();
                    let expected: usize = (1..=n).map(|r| binomial(k, r)).sum();
                    assert_eq!(all.len(), expected);
                    assert_eq!(all.iter().filter(|s| s.dimension() == 0).count(), 1);
                    assert!(all[0].is_base_point());

                    let survivors = surviving_shapes(family, n, k).unwrap();
                    assert_eq!(survivors.len(), binomial(k - 1, n));

                    let top = enumerate_shapes(family, n, k, CellFiltration::top_pair(n)).unwrap();
                    let modulus = match family {
                        Family::Complex => 2,
                        Family::Quaternionic => 4,
                    };
                    let residues: Vec<usize> = top.iter().map(|s| s.dimension() % modulus).collect();
                    assert!(residues.windows(2).all(|w| w[0] == w[1]));
                    if family == Family::Complex {
                        assert!(residues.iter().all(|&r| r == (n + 1) % 2));
                    }
                }
            }
        }
    }
}
