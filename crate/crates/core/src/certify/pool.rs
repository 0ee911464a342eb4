//! Generic parameterizations and the pool of monomials `f_λ`.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::poly::{CoeffVar, MultiPoly};
use crate::series::TruncatedSeries;
use crate::stratum::StratumInput;

/// A multiset over the stream indices `1..=n`, stored as a weakly decreasing
/// list of parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIndex {
    parts: Vec<usize>,
    valuation: u64,
}

impl MonomialIndex {
    pub fn new(mut parts: Vec<usize>, profile: &[u64]) -> Self {
        assert!(!parts.is_empty(), "a monomial index is a nonempty multiset");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let valuation = parts.iter().map(|&i| profile[i - 1]).sum();
        MonomialIndex { parts, valuation }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn valuation(&self) -> u64 {
        self.valuation
    }

    pub fn is_singleton(&self) -> bool {
        self.parts.len() == 1
    }

    /// `21` for `f_2·f_1`; parts are comma separated once any exceeds 9.
    pub fn label(&self) -> String {
        let sep = if self.parts.iter().any(|&p| p > 9) { "," } else { "" };
        self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(sep)
    }
}

/// Every variable of the generic parameterization, in increasing order.
pub fn parameter_variables(input: &StratumInput) -> Vec<CoeffVar> {
    let n_trunc = input.semigroup().conductor();
    let mut vars: Vec<CoeffVar> = input
        .profile()
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| ((k + 1)..n_trunc).map(move |l| CoeffVar::new(i + 1, l)))
        .collect();
    vars.sort();
    vars
}

/// `f_i = t^{k_i} + Σ_{k_i < ℓ < N} a_{i,ℓ} t^ℓ`, truncated at the conductor
/// `N`. Variables listed in `fixed` are replaced by the given constants.
pub fn generic_parameterization<K: Field>(
    input: &StratumInput,
    one: &K,
    fixed: &BTreeMap<CoeffVar, K>,
) -> Vec<TruncatedSeries<K>> {
    let n_trunc = input.semigroup().conductor() as usize;
    input
        .profile()
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let k = k as usize;
            let mut terms = vec![(k, MultiPoly::constant(one.clone()))];
            for l in (k + 1)..n_trunc {
                let v = CoeffVar::new(i + 1, l as u64);
                let c = match fixed.get(&v) {
                    Some(c) => MultiPoly::constant(c.clone()),
                    None => MultiPoly::var(v, one.clone()),
                };
                terms.push((l, c));
            }
            TruncatedSeries::from_coeffs(n_trunc, terms)
        })
        .collect()
}

/// All products `f_λ` with `v(λ)` below the truncation, in increasing
/// valuation and then increasing parts.
pub fn monomial_pool<K: Field>(
    input: &StratumInput,
    streams: &[TruncatedSeries<K>],
) -> Vec<(MonomialIndex, TruncatedSeries<K>)> {
    let n_trunc = input.semigroup().conductor();
    let profile = input.profile();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, u64, TruncatedSeries<K>)> = Vec::new();
    // parts are generated weakly decreasing, so each multiset appears once
    for i in (1..=profile.len()).rev() {
        if profile[i - 1] < n_trunc {
            stack.push((vec![i], profile[i - 1], streams[i - 1].clone()));
        }
    }
    while let Some((parts, val, series)) = stack.pop() {
        let last = *parts.last().unwrap();
        for j in 1..=last {
            let v = val + profile[j - 1];
            if v < n_trunc {
                let mut p = parts.clone();
                p.push(j);
                stack.push((p, v, series.mul(&streams[j - 1])));
            }
        }
        out.push((MonomialIndex::new(parts, profile), series));
    }
    out.sort_by(|a, b| {
        a.0.valuation
            .cmp(&b.0.valuation)
            .then_with(|| a.0.parts.cmp(&b.0.parts))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::semigroup::NumericalSemigroup;

    fn input(gens: &[u64], k: &[u64]) -> StratumInput {
        StratumInput::new(NumericalSemigroup::from_generators(gens).unwrap(), k.to_vec()).unwrap()
    }

    #[test]
    fn parameterization_shapes() {
        let inp = input(&[2, 5], &[2, 4]);
        let f = generic_parameterization(&inp, &Rational::one(), &BTreeMap::new());
        assert_eq!(f[0].truncation(), 4);
        assert_eq!(f[0].coeff(3).to_string(), "a_{1,3}");
        // the lead of f_2 sits at the truncation
        assert!(f[1].is_zero());

        let inp = input(&[2, 15], &[2, 4, 6, 8]);
        let vars = parameter_variables(&inp);
        assert_eq!(vars.len(), 11 + 9 + 7 + 5);
        assert!(vars.contains(&CoeffVar::new(4, 9)));
        assert!(!vars.contains(&CoeffVar::new(4, 14)));
    }

    #[test]
    fn pool_is_all_multisets_below_truncation() {
        let inp = input(&[2, 15], &[2, 4, 6, 8]);
        let f = generic_parameterization(&inp, &Rational::one(), &BTreeMap::new());
        let pool = monomial_pool(&inp, &f);
        // partitions of 1..=6 into parts ≤ 4
        assert_eq!(pool.len(), 1 + 2 + 3 + 5 + 6 + 9);
        for (idx, s) in &pool {
            assert_eq!(s.valuation(), Some(idx.valuation() as usize));
            assert!(s.coeff(idx.valuation() as usize).is_one());
        }
        assert_eq!(pool[0].0.label(), "1");
    }
}
