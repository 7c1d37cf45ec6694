//! Smith normal form over the integers.
//!
//! Everything runs on [`BigInt`], so entry growth during elimination can never
//! overflow. Pivots are chosen as the nonzero entry of smallest magnitude in
//! the remaining block, which keeps intermediate entries small in practice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense integer matrix with small entries, used for cellular boundary maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Builds a matrix from row vectors. Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged row {i}");
            m.data[i * ncols..(i + 1) * ncols].copy_from_slice(row);
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(<[i64]>::to_vec).collect()
    }

    /// Exact product `self * rhs`, computed in big integers.
    pub fn mul_exact(&self, rhs: &IntMatrix) -> Vec<Vec<BigInt>> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                (0..rhs.cols)
                    .map(|j| {
                        (0..self.cols)
                            .map(|l| BigInt::from(self.get(i, l)) * BigInt::from(rhs.get(l, j)))
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let entries = self
            .to_rows()
            .into_iter()
            .map(|row| row.into_iter().map(BigInt::from).collect())
            .collect();
        smith_normal_form(entries)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Rank over the two-element field.
    pub fn rank_mod2(&self) -> usize {
        let mut rows: Vec<Vec<bool>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.rem_euclid(2) == 1).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][col]) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row[col] {
                    row.iter_mut().zip(&pivot).for_each(|(a, &b)| *a ^= b);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ... | d_s` of an integer matrix,
/// all positive. The input is consumed and diagonalized in place.
pub fn smith_normal_form(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut factors = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            // Clear column t below the pivot.
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let pivot_row = a[t].clone();
                for (x, p) in a[i][t..].iter_mut().zip(&pivot_row[t..]) {
                    *x -= &q * p;
                }
                dirty |= !a[i][t].is_zero();
            }
            // Clear row t right of the pivot.
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a[t..].iter_mut() {
                    let p = row[t].clone();
                    row[j] -= &q * p;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                // A remainder survived, so it is smaller than the pivot.
                let (pi, pj) = smallest_nonzero(&a, t).expect("pivot block is nonzero");
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let offender = (t + 1..rows).find(|&i| a[i][t + 1..].iter().any(|x| !x.is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, s) in a[t][t..].iter_mut().zip(&src[t..]) {
                        *x += s;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
    }
    factors
}

fn smallest_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, &BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(_, _, b)| x.abs() < b.abs()) {
                best = Some((i, j, x));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>]) -> Vec<i64> {
        IntMatrix::from_rows(rows)
            .invariant_factors()
            .into_iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn identity_has_unit_factors() {
        assert_eq!(factors(&[vec![1, 0], vec![0, 1]]), vec![1, 1]);
    }

    #[test]
    fn single_two() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 0]]), vec![2]);
    }

    #[test]
    fn two_by_two_example() {
        // det = -8, gcd of entries = 2
        assert_eq!(factors(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
    }

    #[test]
    fn non_divisible_diagonal_is_fixed_up() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]), vec![2, 2, 60]);
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert!(factors(&[]).is_empty());
        assert!(IntMatrix::zeros(3, 0).invariant_factors().is_empty());
        assert!(IntMatrix::zeros(0, 4).invariant_factors().is_empty());
        assert!(factors(&[vec![0, 0], vec![0, 0]]).is_empty());
    }

    #[test]
    fn large_entries_stay_exact() {
        let big = i64::MAX / 3;
        let f = IntMatrix::from_rows(&[vec![big, big - 1], vec![big - 1, big - 2]]).invariant_factors();
        // det = big*(big-2) - (big-1)^2 = -1
        assert_eq!(f, vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn mod2_rank() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![0, 2]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_mod2(), 1);
        assert_eq!(
            IntMatrix::from_rows(&[vec![1, 1], vec![1, 1], vec![0, 1]]).rank_mod2(),
            2
        );
    }
}
