//! Closed-form codimension formulas for cuspidal Severi strata.
//!
//! [`conjecture_report`] evaluates both Betti-element forms of the general
//! codimension estimate and keeps every intermediate quantity so a mismatch
//! against the elimination engine can be localized. The hyperelliptic and
//! supersymmetric theorems have their own direct formulas.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::{betti_elements, BettiAnalysis, GroundSet};
use crate::matroid;
use crate::semigroup::{check_triple, NumericalSemigroup};

/// A semigroup together with a ramification profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumInput {
    semigroup: NumericalSemigroup,
    profile: Vec<u64>,
    degree: u64,
}

impl StratumInput {
    /// Validates the profile (nonempty, strictly increasing, contained in the
    /// semigroup, `n ≤ 2g`). The degree defaults to `2g`.
    pub fn new(semigroup: NumericalSemigroup, profile: Vec<u64>) -> Result<Self> {
        let degree = 2 * semigroup.genus();
        Self::with_degree(semigroup, profile, degree)
    }

    pub fn with_degree(semigroup: NumericalSemigroup, profile: Vec<u64>, degree: u64) -> Result<Self> {
        if profile.is_empty() {
            return Err(Error::EmptyProfile);
        }
        if profile[0] == 0 || profile.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::ProfileNotIncreasing(profile));
        }
        if let Some(&bad) = profile.iter().find(|&&k| !semigroup.contains(k)) {
            return Err(Error::ProfileNotInSemigroup(bad));
        }
        let two_g = 2 * semigroup.genus();
        if profile.len() as u64 > two_g || two_g > degree {
            return Err(Error::InvalidParameters(format!(
                "need n ≤ 2g ≤ d, got n = {}, 2g = {two_g}, d = {degree}",
                profile.len()
            )));
        }
        Ok(StratumInput { semigroup, profile, degree })
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn profile(&self) -> &[u64] {
        &self.profile
    }

    pub fn n(&self) -> usize {
        self.profile.len()
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn genus(&self) -> u64 {
        self.semigroup.genus()
    }
}

/// `r_P = Σ (k_i − i)`.
pub fn ramification_index(profile: &[u64]) -> i64 {
    profile
        .iter()
        .enumerate()
        .map(|(i, &k)| k as i64 - (i as i64 + 1))
        .sum()
}

/// Minimal generators below the conductor that are not profile entries.
pub fn k_star(semigroup: &NumericalSemigroup, profile: &[u64]) -> Vec<u64> {
    semigroup
        .minimal_generators()
        .iter()
        .copied()
        .filter(|&g| g < semigroup.conductor() && !profile.contains(&g))
        .collect()
}

/// Difference vectors `v_{j} − v_{1}` for every Betti element, with the index
/// of the Betti element each vector came from.
pub fn difference_set(betti: &[BettiAnalysis]) -> (Vec<Vec<i64>>, Vec<usize>) {
    let mut vectors = Vec::new();
    let mut owner = Vec::new();
    for (bi, analysis) in betti.iter().enumerate() {
        let reps = analysis.representatives();
        for rep in reps.iter().skip(1) {
            vectors.push(rep.difference(reps[0]));
            owner.push(bi);
        }
    }
    (vectors, owner)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiSummary {
    pub element: u64,
    pub psi: usize,
    pub phi: i64,
    pub rho: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub semigroup: Vec<u64>,
    pub profile: Vec<u64>,
    pub r_p: i64,
    pub k_star: Vec<u64>,
    pub ground_set: Vec<u64>,
    pub betti: Vec<BettiAnalysis>,
    pub summary: Vec<BettiSummary>,
    #[serde(rename = "E")]
    pub e: Vec<Vec<i64>>,
    /// Betti element contributing each vector of `E`.
    pub e_owner: Vec<u64>,
    pub circuits: Vec<Vec<usize>>,
    pub b_of_circuit: Vec<u64>,
    pub b_prime: Vec<u64>,
    /// 1-based index into the merged profile; `None` stands for +∞.
    pub m: Option<usize>,
    pub k_bullet: Vec<u64>,
    #[serde(rename = "D")]
    pub d: u64,
    pub cod_conj_a: i64,
    pub cod_conj_b: i64,
}

impl ConjectureReport {
    pub fn phi(&self, b: u64) -> Option<i64> {
        self.summary.iter().find(|s| s.element == b).map(|s| s.phi)
    }

    pub fn psi(&self, b: u64) -> Option<usize> {
        self.summary.iter().find(|s| s.element == b).map(|s| s.psi)
    }

    /// `cod_B − cod_A` recomputed from `φ`, `ψ`, `ρ` and `D`; zero whenever
    /// the report is internally consistent.
    pub fn identity_residual(&self) -> i64 {
        let sum: i64 = self
            .summary
            .iter()
            .map(|s| (s.phi - s.psi as i64 + 1) * s.rho as i64)
            .sum();
        sum + self.d as i64
    }
}

pub fn conjecture_report(input: &StratumInput) -> Result<ConjectureReport> {
    let sg = input.semigroup();
    let k = input.profile();
    if k.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let r_p = ramification_index(k);
    let kstar = k_star(sg, k);
    let ground = GroundSet::from_unsorted(k.iter().chain(&kstar).copied().collect())?;
    let betti = betti_elements(&ground, sg.conductor());
    let (e, owner_idx) = difference_set(&betti);
    let circuits = matroid::circuits(&e);
    // b(i): largest Betti element with a vector in circuit i; Betti elements
    // are increasing, so the largest owner index wins.
    let b_of_circuit: Vec<u64> = circuits
        .iter()
        .map(|c| {
            let bi = c.iter().map(|&v| owner_idx[v]).max().unwrap();
            betti[bi].element
        })
        .collect();
    let summary: Vec<BettiSummary> = betti
        .iter()
        .map(|a| {
            let hits = b_of_circuit.iter().filter(|&&b| b == a.element).count() as i64;
            BettiSummary {
                element: a.element,
                psi: a.psi,
                phi: a.psi as i64 - 1 - hits,
                rho: sg.rho(a.element),
            }
        })
        .collect();
    let b_prime: Vec<u64> = summary.iter().filter(|s| s.phi >= 1).map(|s| s.element).collect();

    let merged = ground.elements();
    let min_bprime = b_prime.first().copied();
    let m = min_bprime.and_then(|bmin| {
        merged
            .iter()
            .position(|&kj| kstar.contains(&kj) && kj > bmin)
            .map(|p| p + 1)
    });
    let mut k_bullet = Vec::new();
    if !b_prime.is_empty() {
        for (pos, &kj) in merged.iter().enumerate() {
            if !kstar.contains(&kj) {
                continue;
            }
            let j = pos + 1;
            let lower = if pos == 0 { 0 } else { merged[pos - 1] };
            let interval = b_prime.iter().any(|&b| b > lower && b < kj);
            let count_clause = match m {
                Some(m) => {
                    let phi_below: i64 = summary
                        .iter()
                        .filter(|s| s.element < kj)
                        .map(|s| s.phi)
                        .sum();
                    phi_below > j as i64 - m as i64
                }
                None => false,
            };
            if interval || count_clause {
                k_bullet.push(kj);
            }
        }
    }
    let d: u64 = b_of_circuit.iter().map(|&b| sg.rho(b)).sum();
    let bullet_rho: i64 = k_bullet.iter().map(|&s| sg.rho(s) as i64).sum();
    let psi_sum: i64 = summary
        .iter()
        .map(|s| (s.psi as i64 - 1) * s.rho as i64)
        .sum();
    let phi_sum: i64 = summary.iter().map(|s| s.phi * s.rho as i64).sum();
    let cod_conj_a = r_p + psi_sum - bullet_rho - d as i64 - 1;
    let cod_conj_b = r_p + phi_sum - bullet_rho - 1;

    Ok(ConjectureReport {
        semigroup: sg.minimal_generators().to_vec(),
        profile: k.to_vec(),
        r_p,
        k_star: kstar,
        ground_set: merged.to_vec(),
        e_owner: owner_idx.iter().map(|&i| betti[i].element).collect(),
        betti,
        summary,
        e,
        circuits,
        b_of_circuit,
        b_prime,
        m,
        k_bullet,
        d,
        cod_conj_a,
        cod_conj_b,
    })
}

/// `(n − 1)g`, for `2 ≤ n ≤ g`.
pub fn codim_hyperelliptic(n: u64, g: u64) -> Result<i64> {
    if n < 2 || n > g {
        return Err(Error::InvalidParameters(format!("need 2 ≤ n ≤ g, got n = {n}, g = {g}")));
    }
    Ok(((n - 1) * g) as i64)
}

fn check_even_profile(n: u64, g: u64, k: &[u64]) -> Result<()> {
    if k.len() as u64 != n || n < 1 {
        return Err(Error::InvalidParameters(format!("profile length {} ≠ n = {n}", k.len())));
    }
    if k[0] != 2 {
        return Err(Error::InvalidParameters("first profile entry must be 2".into()));
    }
    if k.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::ProfileNotIncreasing(k.to_vec()));
    }
    if let Some(&odd) = k.iter().find(|&&x| x % 2 == 1) {
        return Err(Error::OddEntry(odd));
    }
    // k_n = 2g is admitted so that the n = g boundary of the theorem is covered
    if let Some(&big) = k.iter().find(|&&x| x > 2 * g) {
        return Err(Error::ProfileTooLarge { entry: big, bound: 2 * g });
    }
    Ok(())
}

/// `(n − 1)g + Σ_{i≥2} (k_i/2 − i)` for an even profile starting at 2.
pub fn codim_hyperelliptic_even_profile(n: u64, g: u64, k: &[u64]) -> Result<i64> {
    check_even_profile(n, g, k)?;
    let extra: i64 = k
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &ki)| (ki / 2) as i64 - (i as i64 + 1))
        .sum();
    Ok(((n - 1) * g) as i64 + extra)
}

/// Conditions beyond ramification for an even hyperelliptic profile:
/// `Σ_{i≥2} (g − k_i/2)`.
pub fn b_p_hyperelliptic(n: u64, g: u64, k: &[u64]) -> Result<i64> {
    check_even_profile(n, g, k)?;
    Ok(k.iter().skip(1).map(|&ki| g as i64 - (ki / 2) as i64).sum())
}

/// `2ρ(abc) + ab + ac + bc − 7`.
pub fn codim_supersymmetric(a: u64, b: u64, c: u64) -> Result<i64> {
    check_triple(a, b, c)?;
    let sg = NumericalSemigroup::supersymmetric(a, b, c)?;
    Ok(2 * sg.rho(a * b * c) as i64 + (a * b + a * c + b * c) as i64 - 7)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(gens: &[u64], k: &[u64]) -> StratumInput {
        StratumInput::new(NumericalSemigroup::from_generators(gens).unwrap(), k.to_vec()).unwrap()
    }

    #[test]
    fn ramification_index_examples() {
        assert_eq!(ramification_index(&[2, 4, 6, 8]), 10);
        assert_eq!(ramification_index(&[1, 2, 3, 4, 5]), 0);
        assert_eq!(ramification_index(&[6, 14, 21]), 35);
    }

    #[test]
    fn k_star_examples() {
        let s = NumericalSemigroup::from_generators(&[2, 15]).unwrap();
        assert!(k_star(&s, &[2, 4, 6, 8]).is_empty());
        let s = NumericalSemigroup::from_generators(&[4, 10, 15]).unwrap();
        assert_eq!(k_star(&s, &[4, 8, 10, 12]), vec![15]);
        let s = NumericalSemigroup::from_generators(&[6, 10, 15]).unwrap();
        assert!(k_star(&s, &[6, 10, 15]).is_empty());
    }

    #[test]
    fn difference_set_examples() {
        let g = GroundSet::new(vec![2, 4]).unwrap();
        let b = vec![BettiAnalysis::analyze(4, &g)];
        assert_eq!(difference_set(&b).0, vec![vec![-2, 1]]);
        let g = GroundSet::new(vec![6, 14, 21]).unwrap();
        let b = vec![BettiAnalysis::analyze(42, &g)];
        assert_eq!(difference_set(&b).0, vec![vec![-7, 3, 0], vec![-7, 0, 2]]);
        assert!(difference_set(&[]).0.is_empty());
    }

    #[test]
    fn hyperelliptic_report() {
        let r = conjecture_report(&input(&[2, 15], &[2, 4, 6, 8])).unwrap();
        let b: Vec<u64> = r.summary.iter().map(|s| s.element).collect();
        assert_eq!(b, vec![4, 6, 8]);
        assert!(r.summary.iter().all(|s| s.psi == 2 && s.phi == 1));
        assert!(r.circuits.is_empty());
        assert!(r.k_bullet.is_empty());
        assert_eq!(r.d, 0);
        assert_eq!(r.cod_conj_b, 21);
        assert_eq!(r.cod_conj_a, 21);
    }

    #[test]
    fn supersymmetric_reports() {
        let r = conjecture_report(&input(&[6, 14, 21], &[6, 14, 21])).unwrap();
        assert_eq!(r.summary.len(), 1);
        assert_eq!(r.summary[0].element, 42);
        assert_eq!(r.summary[0].psi, 3);
        assert_eq!(r.summary[0].phi, 2);
        assert_eq!(r.e.len(), 2);
        assert!(r.circuits.is_empty());
        assert_eq!(r.cod_conj_b, 36);
        assert_eq!(r.cod_conj_a, 36);

        let r = conjecture_report(&input(&[6, 10, 15], &[6, 10, 15])).unwrap();
        assert!(r.betti.is_empty());
        assert_eq!(r.cod_conj_b, 24);
    }

    #[test]
    fn revisited_example_identity() {
        let r = conjecture_report(&input(&[4, 10, 15], &[4, 8, 10, 12])).unwrap();
        assert_eq!(r.k_star, vec![15]);
        assert_eq!(r.identity_residual(), 0);
        assert_eq!(r.cod_conj_a, r.cod_conj_b);
    }

    #[test]
    fn empty_profile_rejected() {
        let s = NumericalSemigroup::from_generators(&[2, 15]).unwrap();
        assert_eq!(StratumInput::new(s, vec![]), Err(Error::EmptyProfile));
    }

    #[test]
    fn profile_outside_semigroup_rejected() {
        let s = NumericalSemigroup::from_generators(&[2, 15]).unwrap();
        assert_eq!(
            StratumInput::new(s, vec![2, 3]),
            Err(Error::ProfileNotInSemigroup(3))
        );
    }

    #[test]
    fn closed_forms() {
        assert_eq!(codim_hyperelliptic(4, 7).unwrap(), 21);
        assert_eq!(codim_hyperelliptic(2, 2).unwrap(), 2);
        assert_eq!(codim_hyperelliptic(5, 9).unwrap(), 36);
        assert!(codim_hyperelliptic(5, 4).is_err());

        assert_eq!(codim_hyperelliptic_even_profile(4, 7, &[2, 4, 6, 8]).unwrap(), 21);
        assert_eq!(codim_hyperelliptic_even_profile(3, 8, &[2, 6, 10]).unwrap(), 19);
        assert_eq!(codim_hyperelliptic_even_profile(2, 5, &[2, 8]).unwrap(), 7);
        assert_eq!(
            codim_hyperelliptic_even_profile(2, 5, &[2, 7]),
            Err(Error::OddEntry(7))
        );
        assert_eq!(
            codim_hyperelliptic_even_profile(2, 5, &[2, 12]),
            Err(Error::ProfileTooLarge { entry: 12, bound: 10 })
        );

        assert_eq!(b_p_hyperelliptic(4, 7, &[2, 4, 6, 8]).unwrap(), 12);
        for g in 2..10u64 {
            assert_eq!(b_p_hyperelliptic(2, g, &[2, 4]).unwrap(), g as i64 - 2);
        }
        for n in 2..7u64 {
            let k: Vec<u64> = (1..=n).map(|i| 2 * i).collect();
            let expect: i64 = (2..=n).map(|i| (n - i) as i64).sum();
            assert_eq!(b_p_hyperelliptic(n, n, &k).unwrap(), expect);
        }

        assert_eq!(codim_supersymmetric(2, 3, 5).unwrap(), 24);
        assert_eq!(codim_supersymmetric(2, 3, 7).unwrap(), 36);
        let s = NumericalSemigroup::supersymmetric(2, 5, 7).unwrap();
        assert_eq!(codim_supersymmetric(2, 5, 7).unwrap(), 2 * s.rho(70) as i64 + 59 - 7);
    }

    #[test]
    fn ramification_index_nonnegative() {
        assert_eq!(ramification_index(&[1, 2, 3]), 0);
        assert!(ramification_index(&[1, 2, 4]) > 0);
        assert!(ramification_index(&[2]) > 0);
    }
}
