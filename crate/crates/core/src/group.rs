//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::snf::smith_normal_form;

/// `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_s` with `2 <= t_1 | t_2 | ... | t_s`.
///
/// The canonical form makes group equality a field-wise comparison.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z^free ⊕ (Z/2)^twos`, the shape every group in this crate takes.
    pub fn free_plus_twos(free: usize, twos: usize) -> Self {
        AbelianGroup {
            free_rank: free,
            torsion: vec![2; twos],
        }
    }

    pub fn cyclic(order: u64) -> Self {
        match order {
            0 => AbelianGroup::free(1),
            1 => AbelianGroup::trivial(),
            n => AbelianGroup {
                free_rank: 0,
                torsion: vec![n],
            },
        }
    }

    /// Canonicalizes an arbitrary list of cyclic orders (`0` meaning `Z`,
    /// `1` meaning trivial) via the Smith form of the diagonal relation matrix.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self> {
        let free_rank = orders.iter().filter(|&&o| o == 0).count();
        let finite: Vec<u64> = orders.iter().copied().filter(|&o| o > 1).collect();
        if finite.len() < 2 {
            return Ok(AbelianGroup {
                free_rank,
                torsion: finite,
            });
        }
        // SNF on diag(orders) returns the canonical invariant factors.
        let diag = (0..finite.len())
            .map(|i| {
                (0..finite.len())
                    .map(|j| {
                        if i == j {
                            BigInt::from(finite[i])
                        } else {
                            BigInt::from(0)
                        }
                    })
                    .collect()
            })
            .collect();
        let torsion = smith_normal_form(diag)
            .into_iter()
            .filter(|d| *d > BigInt::from(1))
            .map(|d| u64::try_from(d).map_err(|_| Error::TorsionOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(AbelianGroup { free_rank, torsion })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Number of cyclic summands of even order.
    pub fn even_torsion_count(&self) -> usize {
        self.torsion.iter().filter(|&&t| t % 2 == 0).count()
    }

    /// Number of `Z/2` summands.
    pub fn two_count(&self) -> usize {
        self.torsion.iter().filter(|&&t| t == 2).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders: Vec<u64> = std::iter::repeat_n(0, self.free_rank + other.free_rank)
            .chain(self.torsion.iter().copied())
            .chain(other.torsion.iter().copied())
            .collect();
        AbelianGroup::from_cyclic_orders(&orders).expect("sum of canonical groups fits")
    }

    /// Removes one copy of `Z`; `None` if there is none to remove.
    pub fn without_one_z(&self) -> Option<AbelianGroup> {
        (self.free_rank > 0).then(|| AbelianGroup {
            free_rank: self.free_rank - 1,
            torsion: self.torsion.clone(),
        })
    }

    /// Whether `self` is isomorphic to a subgroup of `other`.
    ///
    /// Torsion must land in torsion, so per prime `p` the `p`-primary parts
    /// are compared: a finite abelian `p`-group embeds in another iff its
    /// exponent partition fits inside the other's, entry by entry.
    pub fn embeds_into(&self, other: &AbelianGroup) -> bool {
        if self.free_rank > other.free_rank {
            return false;
        }
        let mut primes: Vec<u64> = self.torsion.iter().flat_map(|&t| prime_factors(t)).collect();
        primes.sort_unstable();
        primes.dedup();
        primes.into_iter().all(|p| {
            let mine = primary_exponents(&self.torsion, p);
            let theirs = primary_exponents(&other.torsion, p);
            mine.len() <= theirs.len() && mine.iter().zip(&theirs).all(|(a, b)| a <= b)
        })
    }
}

impl fmt::Display for AbelianGroup {
    /// Renders as `Z^4 ⊕ Z_2^2`, or `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&&x| x == t).count();
            parts.push(if run == 1 {
                format!("Z_{t}")
            } else {
                format!("Z_{t}^{run}")
            });
            i += run;
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exponents of `p` in each order, nonzero only, largest first.
fn primary_exponents(orders: &[u64], p: u64) -> Vec<u32> {
    let mut exps: Vec<u32> = orders
        .iter()
        .map(|&t| {
            let (mut t, mut e) = (t, 0);
            while t % p == 0 {
                t /= p;
                e += 1;
            }
            e
        })
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    exps
}
