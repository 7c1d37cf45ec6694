//! Partitions in a box, which index Schubert cells of Grassmannians, and the
//! parity counts built from them.
//!
//! Counts are obtained by exhaustive enumeration. At the sizes this crate
//! targets (`n <= 9`) that is exact and fast.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::Family;

/// A nondecreasing tuple `0 <= parts[0] <= ... <= parts[n-1] <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BoxPartition {
    parts: Vec<usize>,
    bound: usize,
}

impl BoxPartition {
    pub fn new(parts: Vec<usize>, bound: usize) -> Option<Self> {
        let ordered = parts.windows(2).all(|w| w[0] <= w[1]);
        let fits = parts.last().is_none_or(|&p| p <= bound);
        (ordered && fits).then_some(BoxPartition { parts, bound })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Sum of the parts; the complex dimension of the Schubert cell.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Transpose inside the `n x bound` box, giving a partition with
    /// `bound` parts bounded by `n`. Weight is preserved.
    pub fn transpose(&self) -> BoxPartition {
        let n = self.parts.len();
        // Column c (1-based) of the Young diagram has as many cells as there
        // are parts >= c.
        let mut parts: Vec<usize> = (1..=self.bound)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
            .collect();
        parts.sort_unstable();
        BoxPartition { parts, bound: n }
    }

    /// Complement inside the box: `parts[i] -> bound - parts[n-1-i]`.
    pub fn complement(&self) -> BoxPartition {
        let parts = self.parts.iter().rev().map(|&p| self.bound - p).collect();
        BoxPartition {
            parts,
            bound: self.bound,
        }
    }
}

/// Tallies of an enumeration split by a parity predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParityCount {
    pub even_count: usize,
    pub odd_count: usize,
}

impl ParityCount {
    pub fn total(&self) -> usize {
        self.even_count + self.odd_count
    }
}

/// All nondecreasing `n`-tuples with parts in `[0, bound]`, in lexicographic
/// order. A negative bound is an empty box and yields nothing.
pub fn enumerate_box_partitions(n: usize, bound: i64) -> Result<Vec<BoxPartition>> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if bound < 0 {
        return Ok(Vec::new());
    }
    let bound = bound as usize;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    extend(&mut current, n, 0, bound, &mut out);
    Ok(out)
}

fn extend(current: &mut Vec<usize>, n: usize, min: usize, bound: usize, out: &mut Vec<BoxPartition>) {
    if current.len() == n {
        out.push(BoxPartition {
            parts: current.clone(),
            bound,
        });
        return;
    }
    for part in min..=bound {
        current.push(part);
        extend(current, n, part, bound, out);
        current.pop();
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

fn tally(partitions: &[BoxPartition], offset: usize) -> ParityCount {
    let even_count = partitions
        .iter()
        .filter(|p| (p.weight() + offset).is_multiple_of(2))
        .count();
    ParityCount {
        even_count,
        odd_count: partitions.len() - even_count,
    }
}

/// Schubert cells of `G(n, k)` in real dimensions `0 mod 4` (even weight) and
/// `2 mod 4` (odd weight).
pub fn schubert_parity_count(n: usize, k: usize) -> Result<ParityCount> {
    check_range(n, k)?;
    let parts = enumerate_box_partitions(n, (k - n) as i64)?;
    Ok(tally(&parts, 0))
}

/// The counts for reduced homology of the orbit space: box bound `k - n - 1`,
/// parity of `weight + k n`. For the quaternionic family every cell lands in
/// degrees `0 mod 4`, so the whole count `C(k-1, n)` is even.
pub fn reduced_parity_count(n: usize, k: usize, family: Family) -> Result<ParityCount> {
    check_range(n, k)?;
    match family {
        Family::Complex => {
            let parts = enumerate_box_partitions(n, k as i64 - n as i64 - 1)?;
            Ok(tally(&parts, k * n))
        }
        Family::Quaternionic => Ok(ParityCount {
            even_count: binomial(k - 1, n),
            odd_count: 0,
        }),
    }
}

/// Betti numbers of the complex Grassmannian `G(n, k)`: degree `2m` has rank
/// equal to the number of box partitions of weight `m`. Only nonzero degrees
/// appear in the map.
pub fn grassmannian_betti(n: usize, k: usize) -> Result<BTreeMap<usize, usize>> {
    check_range(n, k)?;
    let mut betti = BTreeMap::new();
    for p in enumerate_box_partitions(n, (k - n) as i64)? {
        *betti.entry(2 * p.weight()).or_insert(0) += 1;
    }
    Ok(betti)
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
