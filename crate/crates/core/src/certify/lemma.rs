//! Numerical check of the expansion of the reduced elements `F*_{λ,r}` in
//! terms of the singleton ones, for hyperelliptic semigroups with profile
//! `(2, 4, …, 2n)`.
//!
//! Everything is evaluated at a random point over `GF(2^61 − 1)` on which the
//! singleton conditions hold, i.e. every `F*_{i,r}` has no term of odd order
//! `2(i + r) − 1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Fp, MERSENNE_61};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionCheck {
    /// `F*_{λ,r}` equals its expansion through the singleton series.
    pub identity: bool,
    /// The valuation coefficients satisfy the matching recursion.
    pub coefficient_recursion: bool,
}

impl ExpansionCheck {
    pub fn holds(&self) -> bool {
        self.identity && self.coefficient_recursion
    }
}

type Series = Vec<Fp>;

struct Point {
    streams: Vec<Series>,
    trunc: usize,
}

impl Point {
    fn one(&self) -> Series {
        let mut s = vec![Fp::new(0, MERSENNE_61); self.trunc];
        s[0] = Fp::new(1, MERSENNE_61);
        s
    }

    fn mul(&self, a: &Series, b: &Series) -> Series {
        let mut out = vec![Fp::new(0, MERSENNE_61); self.trunc];
        for (p, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, y) in b[..self.trunc - p].iter().enumerate() {
                out[p + q] = out[p + q].add(&x.mul(y));
            }
        }
        out
    }

    fn f1_pow(&self, e: usize) -> Series {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, &self.streams[0]))
    }

    fn f(&self, parts: &[usize]) -> Series {
        parts.iter().fold(self.one(), |acc, &i| self.mul(&acc, &self.streams[i - 1]))
    }

    /// `F*_{λ,0} = f_λ`, `F*_{λ,r} = F*_{λ,r−1} − a(λ,r−1)·f_1^{i_λ+r−1}`.
    fn f_star(&self, parts: &[usize], r: usize) -> Series {
        let weight: usize = parts.iter().sum();
        let mut s = self.f(parts);
        for u in 0..r {
            let c = s[2 * (weight + u)];
            let sub = self.f1_pow(weight + u);
            s = s.iter().zip(&sub).map(|(x, y)| x.sub(&c.mul(y))).collect();
        }
        s
    }

    /// `a(λ,r)`: the coefficient of `t^{2(i_λ + r)}` in `F*_{λ,r}`.
    fn a(&self, parts: &[usize], r: usize) -> Fp {
        let weight: usize = parts.iter().sum();
        self.f_star(parts, r)[2 * (weight + r)]
    }
}

/// Checks the expansion of `F*_{λ,r}` for `S = ⟨2, 2g+1⟩`, `k = (2, 4, …, 2n)`.
///
/// `lambda` lists the parts in the order used by the expansion; at least one
/// part must exceed 1, and `i_λ + r ≤ g`.
pub fn verify_reduction_expansion(n: usize, g: usize, r: usize, lambda: &[usize], seed: u64) -> Result<ExpansionCheck> {
    if n < 2 || n > g {
        return Err(Error::InvalidParameters(format!("need 2 ≤ n ≤ g, got n = {n}, g = {g}")));
    }
    if lambda.is_empty() || lambda.iter().any(|&i| i == 0 || i > n) || lambda.iter().all(|&i| i == 1) {
        return Err(Error::InvalidParameters(format!(
            "parts must lie in 1..={n} and not all equal 1: {lambda:?}"
        )));
    }
    let weight: usize = lambda.iter().sum();
    if weight + r > g {
        return Err(Error::InvalidParameters(format!("i_λ + r = {} exceeds g = {g}", weight + r)));
    }
    let point = random_point(n, g, seed);
    if r == 0 {
        let same = point.f_star(lambda, 0) == point.f(lambda);
        return Ok(ExpansionCheck { identity: same, coefficient_recursion: same });
    }

    let lhs = point.f_star(lambda, r);
    let prefix_weight = |q: usize| -> usize { lambda[..q].iter().sum() };
    let add = |a: &Series, b: &Series| -> Series { a.iter().zip(b).map(|(x, y)| x.add(y)).collect() };
    let scale = |c: Fp, a: &Series| -> Series { a.iter().map(|x| x.mul(&c)).collect() };

    let i1 = lambda[0];
    let mut rhs = point.mul(&point.f_star(&[i1], r), &point.f1_pow(weight - i1));
    let mut coef = point.a(&[i1], r);
    for q in 2..=lambda.len() {
        let iq = lambda[q - 1];
        let prev = &lambda[..q - 1];
        let term = point.mul(
            &point.mul(&point.f(prev), &point.f_star(&[iq], r)),
            &point.f1_pow(weight - prefix_weight(q)),
        );
        rhs = add(&rhs, &term);
        coef = coef.add(&point.a(&[iq], r));
        let outer = point.f1_pow(weight - prefix_weight(q - 1));
        for l in 1..r {
            let c = point.a(&[iq], l);
            let inner = point.mul(&point.f_star(prev, r - l), &point.f1_pow(l));
            rhs = add(&rhs, &scale(c, &point.mul(&outer, &inner)));
            coef = coef.add(&c.mul(&point.a(prev, r - l)));
        }
    }
    Ok(ExpansionCheck {
        identity: lhs == rhs,
        coefficient_recursion: point.a(lambda, r) == coef,
    })
}

/// Random coefficients, then each `a_{i,2(i+r)−1}` (for `i ≥ 2`) is solved so
/// that `F*_{i,r}` has no term at that gap.
fn random_point(n: usize, g: usize, seed: u64) -> Point {
    let trunc = 2 * (g + 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = MERSENNE_61;
    let streams = (1..=n)
        .map(|i| {
            let mut s = vec![Fp::new(0, p); trunc];
            s[2 * i] = Fp::new(1, p);
            for x in s.iter_mut().skip(2 * i + 1) {
                *x = Fp::new(rng.gen_range(0..p) as i128, p);
            }
            s
        })
        .collect();
    let mut point = Point { streams, trunc };
    for i in 2..=n {
        for r in 1..=(g - i) {
            let gap = 2 * (i + r) - 1;
            point.streams[i - 1][gap] = Fp::new(0, p);
            let c = point.f_star(&[i], r)[gap];
            point.streams[i - 1][gap] = c.neg();
        }
    }
    point
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(verify_reduction_expansion(2, 4, 1, &[2, 1], 1).unwrap().holds());
        assert!(verify_reduction_expansion(4, 7, 2, &[2, 1], 2).unwrap().holds());
        assert!(verify_reduction_expansion(3, 6, 0, &[3, 1], 3).unwrap().holds());
    }

    #[test]
    fn singleton_gaps_vanish_at_the_point() {
        let point = random_point(4, 8, 9);
        for i in 2..=4 {
            for r in 1..=(8 - i) {
                assert!(point.f_star(&[i], r)[2 * (i + r) - 1].is_zero());
            }
        }
    }

    #[test]
    fn rejects_bad_instances() {
        assert!(verify_reduction_expansion(2, 4, 1, &[1, 1], 0).is_err());
        assert!(verify_reduction_expansion(2, 4, 3, &[2, 1], 0).is_err());
        assert!(verify_reduction_expansion(5, 4, 1, &[2], 0).is_err());
    }
}
