//! Engine codimension set against the closed formulas.

use serde::{Deserialize, Serialize};

use super::{certify_with, CertificationResult, CertifyOptions};
use crate::error::Result;
use crate::stratum::{
    codim_hyperelliptic, codim_hyperelliptic_even_profile, codim_supersymmetric, conjecture_report, StratumInput,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub name: String,
    pub value: i64,
    /// The formula is predicted rather than proven for this input.
    pub conjectural: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    pub engine_conj_a: bool,
    pub engine_conj_b: bool,
    pub conj_a_conj_b: bool,
    pub engine_closed_form: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub semigroup: Vec<u64>,
    pub profile: Vec<u64>,
    pub engine: CertificationResult,
    pub conj_a: i64,
    pub conj_b: i64,
    /// `cod_B − cod_A` recomputed from the Betti data; zero when consistent.
    pub identity_residual: i64,
    pub closed_form: Option<ClosedForm>,
    pub agreement: Agreement,
}

impl Comparison {
    pub fn all_agree(&self) -> bool {
        let a = &self.agreement;
        a.engine_conj_a && a.engine_conj_b && a.conj_a_conj_b && a.engine_closed_form.unwrap_or(true)
    }
}

/// The applicable closed formula, if any.
pub fn closed_form(input: &StratumInput) -> Option<ClosedForm> {
    let s = input.semigroup();
    let k = input.profile();
    let n = k.len() as u64;
    if s.is_hyperelliptic() && n >= 2 {
        let g = s.genus();
        let generic: Vec<u64> = (1..=n).map(|i| 2 * i).collect();
        if k == generic.as_slice() {
            if let Ok(value) = codim_hyperelliptic(n, g) {
                return Some(ClosedForm {
                    name: "hyperelliptic".into(),
                    value,
                    conjectural: false,
                });
            }
        }
        if let Ok(value) = codim_hyperelliptic_even_profile(n, g, k) {
            return Some(ClosedForm {
                name: "hyperelliptic-even-profile".into(),
                value,
                conjectural: true,
            });
        }
    }
    if let Some((a, b, c)) = s.supersymmetric_triple() {
        let mut gens = vec![a * b, a * c, b * c];
        gens.sort_unstable();
        if k == gens.as_slice() {
            if let Ok(value) = codim_supersymmetric(a, b, c) {
                return Some(ClosedForm {
                    name: "supersymmetric".into(),
                    value,
                    conjectural: false,
                });
            }
        }
    }
    None
}

pub fn compare(input: &StratumInput, opts: &CertifyOptions) -> Result<Comparison> {
    let engine = certify_with(input, opts)?;
    let report = conjecture_report(input)?;
    let closed = closed_form(input);
    let e = engine.codimension;
    let agreement = Agreement {
        engine_conj_a: e == report.cod_conj_a,
        engine_conj_b: e == report.cod_conj_b,
        conj_a_conj_b: report.cod_conj_a == report.cod_conj_b,
        engine_closed_form: closed.as_ref().map(|c| c.value == e),
    };
    Ok(Comparison {
        semigroup: engine.semigroup.clone(),
        profile: engine.profile.clone(),
        conj_a: report.cod_conj_a,
        conj_b: report.cod_conj_b,
        identity_residual: report.identity_residual(),
        closed_form: closed,
        agreement,
        engine,
    })
}
