//! Vector matroids over ℚ: exact rank and circuit enumeration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Rank over ℚ of the given integer vectors (all of equal length).
pub fn rational_rank(vectors: &[&[i64]]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let cols = first.len();
    let mut rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot;
            for c in col..cols {
                let delta = &factor * &rows[rank][c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// All circuits (minimal dependent subsets) of the vector configuration, as
/// sorted index sets, ordered by size and then lexicographically.
///
/// Subsets are enumerated by increasing size up to `rank + 1`; a subset `C` is
/// a circuit when it is dependent and every `C \ {e}` is independent.
pub fn circuits(vectors: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = vectors.len();
    if n == 0 {
        return vec![];
    }
    let all: Vec<&[i64]> = vectors.iter().map(|v| v.as_slice()).collect();
    let full_rank = rational_rank(&all);
    let rank_of = |idx: &[usize]| -> usize {
        let sub: Vec<&[i64]> = idx.iter().map(|&i| vectors[i].as_slice()).collect();
        rational_rank(&sub)
    };
    let mut out = Vec::new();
    for size in 1..=(full_rank + 1).min(n) {
        for subset in Combinations::new(n, size) {
            if rank_of(&subset) != size - 1 {
                continue;
            }
            let minimal = (0..size).all(|skip| {
                let rest: Vec<usize> = subset
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, &i)| i)
                    .collect();
                rank_of(&rest) == rest.len()
            });
            if minimal {
                out.push(subset);
            }
        }
    }
    out
}

/// Lexicographic k-subsets of `0..n`.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(cur);
            }
        }
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rational_rank(&[&[1, 0], &[0, 1]]), 2);
        assert_eq!(rational_rank(&[&[1, 2], &[2, 4]]), 1);
        assert_eq!(rational_rank(&[&[0, 0]]), 0);
        assert_eq!(rational_rank(&[]), 0);
    }

    #[test]
    fn circuit_examples() {
        assert!(circuits(&[vec![1, 0], vec![0, 1]]).is_empty());
        assert_eq!(circuits(&[vec![1, 0], vec![2, 0]]), vec![vec![0, 1]]);
        assert!(circuits(&[vec![-7, 3, 0], vec![-7, 0, 2]]).is_empty());
        assert!(circuits(&[]).is_empty());
    }

    #[test]
    fn three_in_a_plane() {
        // any two of three coplanar generic vectors are independent
        let c = circuits(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(c, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn loops_are_circuits() {
        let c = circuits(&[vec![0, 0], vec![1, 0]]);
        assert_eq!(c, vec![vec![0]]);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(Combinations::new(5, 2).count(), 10);
        assert_eq!(Combinations::new(4, 4).count(), 1);
        assert_eq!(Combinations::new(3, 4).count(), 0);
    }
}
