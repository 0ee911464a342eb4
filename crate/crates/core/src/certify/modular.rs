//! Modular trials: elimination over a prime field, followed by a check at a
//! random point of the solution set.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::engine::{eliminate, Elimination, TieBreak};
use super::{render_ledger, CertifyOptions, ConditionLedger, TrialReport};
use crate::error::{Error, Result};
use crate::exec::map_range;
use crate::field::{is_prime, Field, Fp};
use crate::poly::CoeffVar;
use crate::stratum::StratumInput;

pub(crate) fn run(
    input: &StratumInput,
    prime: u64,
    seed: u64,
    trials: usize,
    opts: &CertifyOptions,
) -> Result<(ConditionLedger, Vec<TrialReport>)> {
    if !is_prime(prime) || prime >= 1 << 63 {
        return Err(Error::InvalidParameters(format!("{prime} is not a prime below 2^63")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameters("at least one trial is required".into()));
    }
    let mut fixed = BTreeMap::new();
    for (v, q) in &opts.fixed {
        let x = Fp::from_rational(q, prime)
            .ok_or_else(|| Error::InvalidParameters(format!("{v} = {q} has no value mod {prime}")))?;
        fixed.insert(*v, x);
    }
    let one = Fp::new(1, prime);
    let max_pool = opts.limits.max_pool;
    let (elims, reports): (Vec<Elimination<Fp>>, Vec<TrialReport>) = if opts.randomize_pivots {
        let runs = map_range(opts.execution, 0..trials as u64, |t| {
            let seed = seed.wrapping_add(t);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let elim = eliminate(input, &one, &fixed, TieBreak::Random(&mut rng), max_pool)?;
            let report = check(&elim, prime, seed, &mut rng, opts.retry_budget)?;
            Ok((elim, report))
        });
        runs.into_iter().collect::<Result<Vec<_>>>()?.into_iter().unzip()
    } else {
        // the elimination is deterministic; only the check points vary
        let elim = eliminate(input, &one, &fixed, TieBreak::Canonical, max_pool)?;
        let reports = map_range(opts.execution, 0..trials as u64, |t| {
            let seed = seed.wrapping_add(t);
            check(&elim, prime, seed, &mut ChaCha8Rng::seed_from_u64(seed), opts.retry_budget)
        });
        (vec![elim], reports.into_iter().collect::<Result<_>>()?)
    };
    let counts: Vec<usize> = reports.iter().map(|r| r.b_p).collect();
    if counts.iter().any(|&b| b != counts[0]) {
        return Err(Error::TrialDisagreement(counts));
    }
    Ok((render_ledger(&elims[0]), reports))
}

fn check(elim: &Elimination<Fp>, prime: u64, seed: u64, rng: &mut ChaCha8Rng, retry_budget: usize) -> Result<TrialReport> {
    let mut attempts = 0;
    let point = loop {
        attempts += 1;
        let failure = match sample_point(elim, prime, rng)? {
            None => "a substitution denominator".to_string(),
            Some(point) => match vanishing_localization(elim, &point)? {
                None => break point,
                Some(l) => l,
            },
        };
        if attempts >= retry_budget.max(1) {
            return Err(Error::PivotDegenerate(failure));
        }
    };
    let at = |v: CoeffVar| point.get(&v).copied();
    let zero = Fp::new(0, prime);
    let mut conditions_vanish = true;
    for e in &elim.entries {
        if !e.raw.eval_with_zero(&zero, at)?.is_zero() || !e.reduced.eval_with_zero(&zero, at)?.is_zero() {
            conditions_vanish = false;
        }
    }
    let rows: Vec<Vec<Fp>> = elim
        .entries
        .iter()
        .filter(|e| e.pivot.is_some())
        .map(|e| {
            elim.variables
                .iter()
                .map(|&v| e.reduced.derivative(v).eval_with_zero(&zero, at))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(TrialReport {
        seed,
        b_p: elim.b_p(),
        attempts,
        conditions_vanish,
        jacobian_rank: rank(rows),
    })
}

/// Free variables get uniform random values; solved ones are back-substituted
/// from the last elimination to the first. `None` when a denominator vanishes.
fn sample_point(elim: &Elimination<Fp>, prime: u64, rng: &mut ChaCha8Rng) -> Result<Option<BTreeMap<CoeffVar, Fp>>> {
    let subs = elim.substitutions.entries();
    let mut point = BTreeMap::new();
    for &v in &elim.variables {
        if !elim.substitutions.contains(v) {
            point.insert(v, Fp::new(rng.gen_range(0..prime) as i128, prime));
        }
    }
    let zero = Fp::new(0, prime);
    for e in subs.iter().rev() {
        let at = |w: CoeffVar| point.get(&w).copied();
        let mut x = e.numerator.eval_with_zero(&zero, at)?;
        if let Some(d) = &e.denominator {
            match d.eval_with_zero(&zero, at)?.inv() {
                Some(inv) => x = x.mul(&inv),
                None => return Ok(None),
            }
        }
        point.insert(e.var, x);
    }
    Ok(Some(point))
}

fn vanishing_localization(elim: &Elimination<Fp>, point: &BTreeMap<CoeffVar, Fp>) -> Result<Option<String>> {
    for l in &elim.localization {
        let zero = l.terms()[0].1.zero_like();
        if l.eval_with_zero(&zero, |v| point.get(&v).copied())?.is_zero() {
            return Ok(Some(l.to_string()));
        }
    }
    Ok(None)
}

fn rank(mut rows: Vec<Vec<Fp>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().unwrap();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].mul(&inv);
                for j in c..cols {
                    let d = f.mul(&rows[rank][j]);
                    rows[r][j] = rows[r][j].sub(&d);
                }
            }
        }
        rank += 1;
    }
    rank
}
