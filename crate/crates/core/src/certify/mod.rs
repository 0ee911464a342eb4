//! Certification of codimensions by explicit elimination.
//!
//! [`certify`] builds the generic parameterization truncated at the
//! conductor, forms every monomial `f_λ` below it and walks the orders in
//! increasing sequence. At an order of the semigroup one element is chosen as
//! pivot and all others are pushed past it; at a gap every element reaching
//! it contributes a condition, which is either solved for a fresh variable
//! (independent) or already implied (dependent). The number of independent
//! conditions is `b_P`.

mod compare;
mod engine;
mod lemma;
mod modular;
mod pool;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use compare::{closed_form, compare, Agreement, ClosedForm, Comparison};
pub use lemma::{verify_reduction_expansion, ExpansionCheck};
pub use pool::{generic_parameterization, monomial_pool, parameter_variables, MonomialIndex};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{Field, Rational, MERSENNE_61};
use crate::poly::CoeffVar;
use crate::stratum::{ramification_index, StratumInput};
use engine::{eliminate, Elimination, TieBreak};

pub const DEFAULT_TRIALS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Exact,
    /// Elimination over `GF(prime)`, checked at `trials` random points drawn
    /// with seeds `seed, seed + 1, …`.
    Modular { prime: u64, seed: u64, trials: usize },
}

impl Mode {
    pub fn modular(seed: u64) -> Self {
        Mode::Modular {
            prime: MERSENNE_61,
            seed,
            trials: DEFAULT_TRIALS,
        }
    }
}

/// Desk-scale bounds; inputs beyond them are refused with `LimitExceeded`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_conductor: u64,
    pub max_streams: usize,
    pub max_pool: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_conductor: 96,
            max_streams: 8,
            max_pool: 4096,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    pub mode: Mode,
    pub limits: Limits,
    /// Coefficients pinned to constants before elimination.
    pub fixed: BTreeMap<CoeffVar, Rational>,
    /// Random points tried per modular trial before a vanishing
    /// localization polynomial is reported.
    pub retry_budget: usize,
    /// In modular mode, break ties between equally preferred pivots at
    /// random instead of canonically. `b_P` must not depend on it, but
    /// expressions can grow much larger.
    pub randomize_pivots: bool,
    pub execution: Execution,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            mode: Mode::Exact,
            limits: Limits::default(),
            fixed: BTreeMap::new(),
            retry_budget: 8,
            randomize_pivots: false,
            execution: Execution::default(),
        }
    }
}

impl CertifyOptions {
    pub fn with_mode(mode: Mode) -> Self {
        CertifyOptions { mode, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionStatus {
    Independent,
    Dependent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub gap: u64,
    /// The working element that produced the condition, e.g. `F*_{21,1}`.
    pub source: String,
    /// Coefficient of `t^gap` in the working element, before substitution.
    pub raw: String,
    /// The condition after substitution; monic in the pivot when independent.
    pub condition: String,
    pub pivot: Option<String>,
    pub status: ConditionStatus,
    /// Whether a localization factor was divided out to expose the pivot.
    pub localized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub order: u64,
    pub pivot: String,
    pub pivot_leading_coefficient: String,
    pub reduced: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution {
    pub variable: String,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionLedger {
    pub entries: Vec<LedgerEntry>,
    pub b_p: usize,
    pub substitutions: Vec<Substitution>,
    /// Leading coefficients of non-monic pivots, assumed nonzero.
    pub localization: Vec<String>,
    pub reductions: Vec<ReductionStep>,
    /// Orders of the semigroup below the conductor that no element reached.
    pub unrealized_orders: Vec<u64>,
}

impl ConditionLedger {
    pub fn independent(&self) -> impl Iterator<Item = &LedgerEntry> {
        self.entries.iter().filter(|e| e.status == ConditionStatus::Independent)
    }

    pub fn at_gap(&self, gap: u64) -> impl Iterator<Item = &LedgerEntry> {
        self.entries.iter().filter(move |e| e.gap == gap)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub seed: u64,
    pub b_p: usize,
    /// Random points drawn until every localization polynomial was nonzero.
    pub attempts: usize,
    pub conditions_vanish: bool,
    pub jacobian_rank: usize,
}

impl TrialReport {
    pub fn verified(&self) -> bool {
        self.conditions_vanish && self.jacobian_rank == self.b_p
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificationResult {
    pub semigroup: Vec<u64>,
    pub profile: Vec<u64>,
    pub conductor: u64,
    pub r_p: i64,
    pub b_p: usize,
    pub codimension: i64,
    /// Every independent condition was monic-linear in a fresh variable.
    pub unirational_witness: bool,
    pub mode: Mode,
    pub ledger: ConditionLedger,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trials: Vec<TrialReport>,
}

pub fn certify(input: &StratumInput, mode: Mode) -> Result<CertificationResult> {
    certify_with(input, &CertifyOptions::with_mode(mode))
}

pub fn certify_with(input: &StratumInput, opts: &CertifyOptions) -> Result<CertificationResult> {
    let conductor = input.semigroup().conductor();
    if conductor > opts.limits.max_conductor {
        return Err(Error::LimitExceeded(format!(
            "conductor {conductor} exceeds {}",
            opts.limits.max_conductor
        )));
    }
    if input.n() > opts.limits.max_streams {
        return Err(Error::LimitExceeded(format!(
            "{} series exceed {}",
            input.n(),
            opts.limits.max_streams
        )));
    }
    let (ledger, trials) = match opts.mode {
        Mode::Exact => {
            let elim = eliminate(input, &Rational::one(), &opts.fixed, TieBreak::Canonical, opts.limits.max_pool)?;
            (render_ledger(&elim), Vec::new())
        }
        Mode::Modular { prime, seed, trials } => modular::run(input, prime, seed, trials, opts)?,
    };
    let r_p = ramification_index(input.profile());
    let unirational_witness = ledger.independent().all(|e| !e.localized);
    Ok(CertificationResult {
        semigroup: input.semigroup().minimal_generators().to_vec(),
        profile: input.profile().to_vec(),
        conductor,
        r_p,
        b_p: ledger.b_p,
        codimension: r_p + ledger.b_p as i64 - 1,
        unirational_witness,
        mode: opts.mode,
        ledger,
        trials,
    })
}

fn render_ledger<K: Field>(elim: &Elimination<K>) -> ConditionLedger {
    ConditionLedger {
        entries: elim
            .entries
            .iter()
            .map(|e| LedgerEntry {
                gap: e.gap,
                source: e.source.clone(),
                raw: e.raw.to_string(),
                condition: e.reduced.to_string(),
                pivot: e.pivot.map(|v| v.to_string()),
                status: if e.pivot.is_some() {
                    ConditionStatus::Independent
                } else {
                    ConditionStatus::Dependent
                },
                localized: e.localized,
            })
            .collect(),
        b_p: elim.b_p(),
        substitutions: elim
            .substitutions
            .entries()
            .iter()
            .map(|e| Substitution {
                variable: e.var.to_string(),
                image: match &e.denominator {
                    None => e.numerator.to_string(),
                    Some(d) => format!("({}) / ({})", e.numerator, d),
                },
            })
            .collect(),
        localization: elim.localization.iter().map(|p| p.to_string()).collect(),
        reductions: elim
            .steps
            .iter()
            .map(|s| ReductionStep {
                order: s.order,
                pivot: s.pivot.clone(),
                pivot_leading_coefficient: s.pivot_lc.to_string(),
                reduced: s.reduced.clone(),
            })
            .collect(),
        unrealized_orders: elim.unrealized_orders.clone(),
    }
}
