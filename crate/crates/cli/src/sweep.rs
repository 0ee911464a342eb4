//! Batch comparisons over families of inputs, backed by the result cache.

use std::ops::RangeInclusive;
use std::path::PathBuf;

use anyhow::Result;
use cusp_strata::certify::{compare, CertifyOptions, Comparison};
use cusp_strata::{Error, NumericalSemigroup, StratumInput};

use crate::cache::{Cache, CaseKey, Record};

#[derive(Debug, Clone)]
pub enum Family {
    /// `⟨2, 2g+1⟩` with `k = (2, 4, …, 2n)` for `n` in range and `n ≤ g`.
    Hyperelliptic { n: RangeInclusive<u64>, g: RangeInclusive<u64> },
    /// `⟨ab, ac, bc⟩` with `k = (ab, ac, bc)` for pairwise coprime
    /// `2 ≤ a < b < c` and `abc ≤ abc_max`.
    Supersymmetric { abc_max: u64 },
    Explicit(Vec<(Vec<u64>, Vec<u64>)>),
}

impl Family {
    pub fn inputs(&self) -> cusp_strata::Result<Vec<StratumInput>> {
        let mut out = Vec::new();
        match self {
            Family::Hyperelliptic { n, g } => {
                for n in n.clone() {
                    for g in *g.start().max(&n)..=*g.end() {
                        let k = (1..=n).map(|i| 2 * i).collect();
                        out.push(StratumInput::new(NumericalSemigroup::hyperelliptic(g)?, k)?);
                    }
                }
            }
            Family::Supersymmetric { abc_max } => {
                let m = *abc_max;
                for a in 2..=m {
                    for b in a + 1..=m / a {
                        for c in b + 1..=m / (a * b) {
                            if gcd(a, b) == 1 && gcd(a, c) == 1 && gcd(b, c) == 1 {
                                let sg = NumericalSemigroup::supersymmetric(a, b, c)?;
                                out.push(StratumInput::new(sg, vec![a * b, a * c, b * c])?);
                            }
                        }
                    }
                }
            }
            Family::Explicit(list) => {
                for (gens, k) in list {
                    out.push(StratumInput::new(NumericalSemigroup::from_generators(gens)?, k.clone())?);
                }
            }
        }
        Ok(out)
    }
}

fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

pub struct SweepSpec {
    pub family: Family,
    pub options: CertifyOptions,
    pub jobs: usize,
    pub cache_dir: PathBuf,
    pub force: bool,
}

pub struct Case {
    pub key: CaseKey,
    pub result: std::result::Result<Comparison, String>,
    pub cached: bool,
}

pub struct Summary {
    pub cases: Vec<Case>,
    pub computed: usize,
}

impl Summary {
    pub fn agreeing(&self) -> usize {
        self.cases
            .iter()
            .filter(|c| matches!(&c.result, Ok(r) if agrees(r)))
            .count()
    }

    pub fn disagreeing(&self) -> usize {
        self.cases
            .iter()
            .filter(|c| matches!(&c.result, Ok(r) if !agrees(r)))
            .count()
    }

    pub fn failed(&self) -> usize {
        self.cases.iter().filter(|c| c.result.is_err()).count()
    }
}

pub fn agrees(c: &Comparison) -> bool {
    c.all_agree() && c.identity_residual == 0
}

/// Runs every case not already cached. Results are written by the calling
/// thread as workers finish, so an interrupted sweep keeps what it computed.
pub fn run(spec: &SweepSpec) -> Result<Summary> {
    let inputs = spec.family.inputs()?;
    let limits = spec.options.limits;
    for i in &inputs {
        if i.semigroup().conductor() > limits.max_conductor || i.n() > limits.max_streams {
            return Err(Error::LimitExceeded(format!(
                "{} with {} series (conductor {}); limits are conductor {} and {} series",
                i.semigroup(),
                i.n(),
                i.semigroup().conductor(),
                limits.max_conductor,
                limits.max_streams
            ))
            .into());
        }
    }
    let mut cache = Cache::open(&spec.cache_dir)?;
    let keys: Vec<CaseKey> = inputs
        .iter()
        .map(|i| CaseKey::new(i.semigroup().minimal_generators(), i.profile(), spec.options.mode))
        .collect();
    let todo: Vec<usize> = (0..inputs.len())
        .filter(|&i| spec.force || cache.get(&keys[i]).is_none())
        .collect();

    let mut fresh: Vec<Option<std::result::Result<Comparison, String>>> = vec![None; inputs.len()];
    let mut write_error = None;
    let mut sink = |i: usize, result: cusp_strata::Result<Comparison>| match result {
        Ok(c) => {
            let record = Record { key: keys[i].clone(), comparison: c.clone() };
            if let Err(e) = cache.store(record) {
                write_error.get_or_insert(e);
            }
            fresh[i] = Some(Ok(c));
        }
        Err(e) => fresh[i] = Some(Err(e.to_string())),
    };
    compute(&inputs, &todo, &spec.options, spec.jobs, &mut sink)?;
    if let Some(e) = write_error {
        return Err(e);
    }

    let cases = keys
        .into_iter()
        .zip(fresh)
        .map(|(key, f)| match f {
            Some(result) => Case { key, result, cached: false },
            None => {
                let result = Ok(cache.get(&key).expect("cached").comparison.clone());
                Case { key, result, cached: true }
            }
        })
        .collect();
    Ok(Summary { cases, computed: todo.len() })
}

#[cfg(feature = "parallel")]
fn compute(
    inputs: &[StratumInput],
    todo: &[usize],
    opts: &CertifyOptions,
    jobs: usize,
    sink: &mut dyn FnMut(usize, cusp_strata::Result<Comparison>),
) -> Result<()> {
    use rayon::prelude::*;
    use std::sync::mpsc;

    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let (tx, rx) = mpsc::channel();
    std::thread::scope(|scope| {
        scope.spawn(move || {
            pool.install(|| {
                todo.par_iter().for_each_with(tx, |tx, &i| {
                    let _ = tx.send((i, compare(&inputs[i], opts)));
                })
            })
        });
        for (i, result) in rx {
            sink(i, result);
        }
    });
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn compute(
    inputs: &[StratumInput],
    todo: &[usize],
    opts: &CertifyOptions,
    _jobs: usize,
    sink: &mut dyn FnMut(usize, cusp_strata::Result<Comparison>),
) -> Result<()> {
    for &i in todo {
        sink(i, compare(&inputs[i], opts));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let h = Family::Hyperelliptic { n: 2..=4, g: 0..=8 };
        assert_eq!(h.inputs().unwrap().len(), 18);
        let s = Family::Supersymmetric { abc_max: 70 };
        let triples: Vec<Vec<u64>> = s.inputs().unwrap().iter().map(|i| i.profile().to_vec()).collect();
        assert_eq!(triples, vec![vec![6, 10, 15], vec![6, 14, 21], vec![6, 22, 33], vec![10, 14, 35], vec![12, 15, 20]]);
    }
}
