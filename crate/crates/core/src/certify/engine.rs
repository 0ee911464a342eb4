//! Order-by-order elimination over a generic parameterization.
//!
//! Working series are kept raw: solved variables are never substituted into
//! them. Every coefficient is instead read through the accumulated
//! [`SubstitutionSet`], which is what lets a condition that repeats an
//! earlier one show up as a dependent ledger entry.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::pool::{generic_parameterization, monomial_pool, parameter_variables, MonomialIndex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{CoeffVar, MultiPoly};
use crate::series::{SubstitutionSet, TruncatedSeries};
use crate::stratum::StratumInput;

struct Element<K: Field> {
    index: MonomialIndex,
    series: TruncatedSeries<K>,
    /// Number of reductions applied so far.
    steps: usize,
}

impl<K: Field> Element<K> {
    fn label(&self) -> String {
        if self.steps == 0 {
            format!("f_{{{}}}", self.index.label())
        } else {
            format!("F*_{{{},{}}}", self.index.label(), self.steps)
        }
    }
}

pub(crate) struct EntryData<K: Field> {
    pub gap: u64,
    pub source: String,
    pub raw: MultiPoly<K>,
    /// Reduced by the substitutions in force (and made monic when independent).
    pub reduced: MultiPoly<K>,
    pub pivot: Option<CoeffVar>,
    /// A localization factor had to be divided out before a unit-linear
    /// variable appeared.
    pub localized: bool,
}

pub(crate) struct StepData<K: Field> {
    pub order: u64,
    pub pivot: String,
    pub pivot_lc: MultiPoly<K>,
    pub reduced: Vec<String>,
}

pub(crate) struct Elimination<K: Field> {
    pub entries: Vec<EntryData<K>>,
    pub substitutions: SubstitutionSet<K>,
    pub localization: Vec<MultiPoly<K>>,
    pub steps: Vec<StepData<K>>,
    pub unrealized_orders: Vec<u64>,
    pub variables: Vec<CoeffVar>,
}

impl<K: Field> Elimination<K> {
    pub fn b_p(&self) -> usize {
        self.entries.iter().filter(|e| e.pivot.is_some()).count()
    }
}

/// How to choose among equally preferred pivot elements.
pub(crate) enum TieBreak<'a> {
    /// Smallest parts list, so `f_1^i` wins whenever it is eligible.
    Canonical,
    Random(&'a mut ChaCha8Rng),
}

pub(crate) fn eliminate<K: Field>(
    input: &StratumInput,
    one: &K,
    fixed: &BTreeMap<CoeffVar, K>,
    mut tie: TieBreak<'_>,
    max_pool: usize,
) -> Result<Elimination<K>> {
    let semigroup = input.semigroup();
    let n_trunc = semigroup.conductor() as usize;
    let streams = generic_parameterization(input, one, fixed);
    let pool = monomial_pool(input, &streams);
    if pool.len() > max_pool {
        return Err(Error::LimitExceeded(format!(
            "{} monomials below the conductor (limit {max_pool})",
            pool.len()
        )));
    }
    let mut live: Vec<Element<K>> = pool
        .into_iter()
        .map(|(index, series)| Element { index, series, steps: 0 })
        .collect();

    let mut out = Elimination {
        entries: Vec::new(),
        substitutions: SubstitutionSet::new(),
        localization: Vec::new(),
        steps: Vec::new(),
        unrealized_orders: Vec::new(),
        variables: parameter_variables(input)
            .into_iter()
            .filter(|v| !fixed.contains_key(v))
            .collect(),
    };

    for m in 0..n_trunc {
        if live.is_empty() {
            break;
        }
        if semigroup.contains(m as u64) {
            reduce_at(m, &mut live, &mut out, &mut tie);
        } else {
            conditions_at(m, &mut live, &mut out)?;
        }
        live.retain(|e| has_tail(&e.series, m));
    }
    Ok(out)
}

fn has_tail<K: Field>(s: &TruncatedSeries<K>, m: usize) -> bool {
    ((m + 1)..s.truncation()).any(|j| !s.coeff(j).is_zero())
}

/// Reduced value of a coefficient: numerator and optional denominator.
type Value<K> = (MultiPoly<K>, Option<MultiPoly<K>>);

fn is_constant<K: Field>(v: &Value<K>) -> bool {
    v.0.is_constant() && v.1.as_ref().map_or(true, |d| d.is_constant())
}

/// An order in the semigroup: pick a pivot among the elements that reach
/// it and push every other one past it.
fn reduce_at<K: Field>(m: usize, live: &mut Vec<Element<K>>, out: &mut Elimination<K>, tie: &mut TieBreak<'_>) {
    let mut cands: Vec<(usize, Value<K>)> = live
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.series.coeff(m).is_zero())
        .map(|(i, e)| (i, out.substitutions.apply_fraction(e.series.coeff(m))))
        .filter(|(_, lc)| !lc.0.is_zero())
        .collect();
    if cands.is_empty() {
        if m > 0 {
            out.unrealized_orders.push(m as u64);
        }
        return;
    }
    let tier = |c: &(usize, Value<K>)| -> u8 {
        match (is_constant(&c.1), live[c.0].steps == 0) {
            (true, true) => 0,
            (true, false) => 1,
            (false, _) => 2,
        }
    };
    let best = cands.iter().map(tier).min().unwrap();
    let eligible: Vec<usize> = (0..cands.len()).filter(|&j| tier(&cands[j]) == best).collect();
    let chosen = match tie {
        TieBreak::Random(rng) => eligible[rng.gen_range(0..eligible.len())],
        TieBreak::Canonical => *eligible
            .iter()
            .min_by_key(|&&j| (cands[j].1 .0.num_terms(), live[cands[j].0].index.parts().to_vec()))
            .unwrap(),
    };
    let (p_idx, (p_num, p_den)) = cands.swap_remove(chosen);
    if cands.is_empty() {
        // a lone element at an order of the semigroup imposes nothing
        live.swap_remove(p_idx);
        return;
    }
    let pivot_label = live[p_idx].label();
    let p_series = live[p_idx].series.clone();
    // G ← n_P·d_G·G − n_G·d_P·P, divided through by n_P/d_P when that is a constant
    let ratio = match (p_num.as_constant().flatten(), p_den.as_ref().map(|d| d.as_constant().flatten())) {
        (Some(n), None) => n.inv().map(|i| MultiPoly::constant(i)),
        (Some(n), Some(Some(d))) => n.inv().map(|i| MultiPoly::constant(i.mul(d))),
        _ => None,
    };
    if ratio.is_none() {
        out.localization.push(p_num.clone());
    }
    let mut reduced = Vec::new();
    for (g_idx, (g_num, g_den)) in &cands {
        let g = &mut live[*g_idx];
        let mut left = g.series.clone();
        if let Some(d) = g_den {
            left = left.scale(d);
        }
        g.series = match &ratio {
            Some(r) => left.sub(&p_series.scale(&g_num.mul(r))),
            None => {
                let mut right = p_series.scale(g_num);
                if let Some(d) = &p_den {
                    right = right.scale(d);
                }
                left.scale(&p_num).sub(&right)
            }
        };
        g.steps += 1;
        reduced.push(g.label());
    }
    out.steps.push(StepData {
        order: m as u64,
        pivot: pivot_label,
        pivot_lc: p_num,
        reduced,
    });
    live.swap_remove(p_idx);
}

/// A gap: every element with a term at this order contributes a condition.
fn conditions_at<K: Field>(m: usize, live: &mut [Element<K>], out: &mut Elimination<K>) -> Result<()> {
    let mut order: Vec<usize> = (0..live.len()).filter(|&i| !live[i].series.coeff(m).is_zero()).collect();
    order.sort_by_key(|&i| (Reverse(live[i].index.valuation()), Reverse(live[i].index.parts().to_vec())));
    for i in order {
        let e = &live[i];
        let raw = e.series.coeff(m).clone();
        let mut reduced = out.substitutions.apply(&raw);
        let mut pivot = None;
        let mut localized = false;
        if !reduced.is_zero() && reduced.unit_linear_vars().is_empty() {
            for l in &out.localization {
                while let Some(q) = reduced.try_div_exact(l) {
                    reduced = q;
                    localized = true;
                }
            }
        }
        if !reduced.is_zero() {
            if let Some(&v) = reduced.unit_linear_vars().last() {
                let parts = reduced.split_by_var(v);
                let inv = parts[1].as_constant().flatten().and_then(|c| c.inv()).expect("unit cofactor");
                reduced = reduced.scale(&inv);
                out.substitutions.push(v, parts[0].scale(&inv).neg());
                pivot = Some(v);
            } else if let Some(&v) = reduced.linear_vars().last() {
                // non-monic: v = −R/L with L assumed nonzero
                let parts = reduced.split_by_var(v);
                out.substitutions.push_rational(v, parts[0].neg(), parts[1].clone());
                out.localization.push(parts[1].clone());
                localized = true;
                pivot = Some(v);
            } else {
                return Err(Error::NonlinearCondition {
                    gap: m as u64,
                    condition: reduced.to_string(),
                });
            }
        }
        out.entries.push(EntryData {
            gap: m as u64,
            source: e.label(),
            raw,
            reduced,
            pivot,
            localized,
        });
    }
    Ok(())
}
