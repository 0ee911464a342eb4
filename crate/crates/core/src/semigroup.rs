//! Numerical semigroups: cofinite submonoids of the nonnegative integers.
//!
//! A [`NumericalSemigroup`] is built once from any generating set and is
//! immutable afterwards. Membership is answered from the Apéry set with
//! respect to the multiplicity, and the full gap set is enumerated eagerly.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    gaps: Vec<u64>,
    apery: Vec<u64>,
    conductor: u64,
}

/// Structured form written by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupRecord {
    pub generators: Vec<u64>,
    pub gaps: Vec<u64>,
    pub conductor: u64,
    pub frobenius: i64,
    pub genus: u64,
}

impl NumericalSemigroup {
    /// Builds `⟨gens⟩`. Fails with [`Error::GcdNotOne`] when the generators
    /// share a common factor.
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if gens.contains(&0) {
            return Err(Error::ZeroGenerator);
        }
        let g = gens.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::GcdNotOne(g));
        }
        let m = *gens.iter().min().unwrap();
        let apery = apery_set(gens, m);
        let max_w = *apery.iter().max().unwrap();
        // frobenius = max(Ap) - m, so conductor = max(Ap) - m + 1 (or 0 for ℕ)
        let conductor = if m == 1 { 0 } else { max_w + 1 - m };
        let gaps = (1..conductor)
            .filter(|&s| s < apery[(s % m) as usize])
            .collect();
        let mut sg = NumericalSemigroup {
            generators: Vec::new(),
            gaps,
            apery,
            conductor,
        };
        sg.generators = sg.compute_minimal_generators();
        Ok(sg)
    }

    /// The supersymmetric semigroup `⟨ab, ac, bc⟩` of a pairwise coprime triple.
    pub fn supersymmetric(a: u64, b: u64, c: u64) -> Result<Self> {
        check_triple(a, b, c)?;
        Self::from_generators(&[a * b, a * c, b * c])
    }

    /// `⟨2, 2g+1⟩`.
    pub fn hyperelliptic(genus: u64) -> Result<Self> {
        Self::from_generators(&[2, 2 * genus + 1])
    }

    pub fn contains(&self, s: u64) -> bool {
        let m = self.multiplicity();
        s >= self.apery[(s % m) as usize]
    }

    /// Minimal generating set, increasing.
    pub fn minimal_generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Largest gap, or −1 for ℕ.
    pub fn frobenius(&self) -> i64 {
        self.conductor as i64 - 1
    }

    pub fn genus(&self) -> u64 {
        self.gaps.len() as u64
    }

    pub fn multiplicity(&self) -> u64 {
        self.apery.len() as u64
    }

    /// Apéry set with respect to the multiplicity, indexed by residue.
    pub fn apery(&self) -> &[u64] {
        &self.apery
    }

    /// Number of gaps strictly greater than `s`.
    pub fn rho(&self, s: u64) -> u64 {
        let idx = self.gaps.partition_point(|&g| g <= s);
        (self.gaps.len() - idx) as u64
    }

    pub fn is_hyperelliptic(&self) -> bool {
        self.contains(2)
    }

    /// Returns the pairwise coprime triple `(a, b, c)`, `a < b < c`, when the
    /// semigroup is `⟨ab, ac, bc⟩` with all of `a, b, c ≥ 2`.
    pub fn supersymmetric_triple(&self) -> Option<(u64, u64, u64)> {
        let g = &self.generators;
        if g.len() != 3 {
            return None;
        }
        // ab·ac·bc = (abc)², so abc = sqrt of the product.
        let prod = g[0] as u128 * g[1] as u128 * g[2] as u128;
        let abc = prod.sqrt() as u64;
        if (abc as u128) * (abc as u128) != prod {
            return None;
        }
        let mut t: Vec<u64> = g.iter().filter(|&&x| abc % x == 0).map(|&x| abc / x).collect();
        if t.len() != 3 {
            return None;
        }
        t.sort_unstable();
        let (a, b, c) = (t[0], t[1], t[2]);
        if check_triple(a, b, c).is_ok() {
            Some((a, b, c))
        } else {
            None
        }
    }

    pub fn record(&self) -> SemigroupRecord {
        SemigroupRecord {
            generators: self.generators.clone(),
            gaps: self.gaps.clone(),
            conductor: self.conductor,
            frobenius: self.frobenius(),
            genus: self.genus(),
        }
    }

    fn compute_minimal_generators(&self) -> Vec<u64> {
        let m = self.multiplicity();
        if m == 1 {
            return vec![1];
        }
        let nonzero: Vec<u64> = self.apery.iter().copied().filter(|&w| w != 0).collect();
        let mut out = vec![m];
        for &w in &nonzero {
            let decomposable = nonzero
                .iter()
                .any(|&v| v < w && self.contains(w - v));
            if !decomposable {
                out.push(w);
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩")
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumericalSemigroup{self}")
    }
}

pub(crate) fn check_triple(a: u64, b: u64, c: u64) -> Result<()> {
    if a < 2 || b < 2 || c < 2 {
        return Err(Error::DegenerateTriple);
    }
    for (x, y) in [(a, b), (a, c), (b, c)] {
        if x.gcd(&y) != 1 {
            return Err(Error::NotCoprime(x, y));
        }
    }
    Ok(())
}

/// Least element of `⟨gens⟩` in each residue class mod `m`: a shortest-path
/// computation on the residue graph.
fn apery_set(gens: &[u64], m: u64) -> Vec<u64> {
    let m_us = m as usize;
    let mut dist = vec![u64::MAX; m_us];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &g in gens {
            let nd = d + g;
            let nr = (r + (g % m) as usize) % m_us;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve(gens: &[u64], bound: u64) -> Vec<bool> {
        let mut member = vec![false; bound as usize + 1];
        member[0] = true;
        for s in 1..=bound as usize {
            member[s] = gens.iter().any(|&g| g as usize <= s && member[s - g as usize]);
        }
        member
    }

    #[test]
    fn natural_numbers() {
        let s = NumericalSemigroup::from_generators(&[1]).unwrap();
        assert!(s.gaps().is_empty());
        assert_eq!(s.conductor(), 0);
        assert_eq!(s.frobenius(), -1);
        assert_eq!(s.minimal_generators(), &[1]);
        assert!(s.is_hyperelliptic());
    }

    #[test]
    fn two_fifteen() {
        let s = NumericalSemigroup::from_generators(&[2, 15]).unwrap();
        assert_eq!(s.gaps(), &[1, 3, 5, 7, 9, 11, 13]);
        assert_eq!(s.genus(), 7);
        assert_eq!(s.conductor(), 14);
        assert!(!s.contains(13));
        assert!(s.contains(14));
        assert_eq!(s.rho(8), 3);
        assert_eq!(s.rho(13), 0);
        assert_eq!(s.to_string(), "⟨2,15⟩");
    }

    #[test]
    fn gcd_not_one() {
        assert_eq!(
            NumericalSemigroup::from_generators(&[2, 4]),
            Err(Error::GcdNotOne(2))
        );
    }

    #[test]
    fn redundant_generator_dropped() {
        let s = NumericalSemigroup::from_generators(&[2, 15, 17]).unwrap();
        assert_eq!(s.minimal_generators(), &[2, 15]);
    }

    #[test]
    fn supersymmetric_examples() {
        let s = NumericalSemigroup::supersymmetric(2, 3, 5).unwrap();
        assert_eq!(s.minimal_generators(), &[6, 10, 15]);
        assert_eq!(s.frobenius(), 29);
        assert_eq!(s.genus(), 15);
        assert!(!s.contains(29));
        assert!(!s.is_hyperelliptic());
        assert_eq!(s.supersymmetric_triple(), Some((2, 3, 5)));

        let s = NumericalSemigroup::supersymmetric(2, 3, 7).unwrap();
        assert_eq!(s.frobenius(), 43);
        assert_eq!(s.rho(42), 1);

        assert_eq!(
            NumericalSemigroup::supersymmetric(2, 4, 5),
            Err(Error::NotCoprime(2, 4))
        );
        assert_eq!(
            NumericalSemigroup::supersymmetric(1, 3, 5),
            Err(Error::DegenerateTriple)
        );
    }

    #[test]
    fn supersymmetric_frobenius_formula() {
        for a in 2..=20u64 {
            for b in (a + 1)..=30 {
                for c in (b + 1)..=150 {
                    if a * b * c > 300 {
                        break;
                    }
                    if check_triple(a, b, c).is_err() {
                        continue;
                    }
                    let s = NumericalSemigroup::supersymmetric(a, b, c).unwrap();
                    let expect = 2 * a * b * c - (a * b + a * c + b * c);
                    assert_eq!(s.frobenius(), expect as i64, "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn hyperelliptic_family() {
        for g in 1..=12u64 {
            let s = NumericalSemigroup::hyperelliptic(g).unwrap();
            assert_eq!(s.genus(), g);
            assert_eq!(s.conductor(), 2 * g);
            let odd: Vec<u64> = (1..2 * g).filter(|x| x % 2 == 1).collect();
            assert_eq!(s.gaps(), odd.as_slice());
            for i in 1..=g {
                assert_eq!(s.rho(2 * i), g - i);
            }
        }
    }

    #[test]
    fn membership_matches_sieve() {
        for gens in [
            vec![2u64, 15],
            vec![6, 10, 15],
            vec![6, 14, 21],
            vec![4, 10, 15],
            vec![5, 7, 9, 11],
            vec![3, 5],
            vec![7, 8, 9, 10, 11, 12, 13],
        ] {
            let s = NumericalSemigroup::from_generators(&gens).unwrap();
            let bound = 2 * s.conductor() + 2;
            let member = sieve(&gens, bound);
            for x in 0..=bound {
                assert_eq!(s.contains(x), member[x as usize], "{gens:?} at {x}");
            }
            let regen = NumericalSemigroup::from_generators(s.minimal_generators()).unwrap();
            assert_eq!(regen.gaps(), s.gaps());
            assert_eq!(regen.minimal_generators(), s.minimal_generators());
        }
    }
}
