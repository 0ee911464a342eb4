//! Parsers for the comma-separated integer lists and `--fix` assignments
//! accepted on the command line.

use cusp_strata::field::Rational;
use cusp_strata::poly::{parse_poly, CoeffVar};
use cusp_strata::Error;

/// `"2,15"`, `"⟨2, 15⟩"` and `"<2 15>"` all give `[2, 15]`.
pub fn integer_list(src: &str) -> Result<Vec<u64>, Error> {
    let trimmed = src.trim().trim_start_matches(['⟨', '<', '(', '[']).trim_end_matches(['⟩', '>', ')', ']']);
    let out: Result<Vec<u64>, _> = trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>())
        .collect();
    out.map_err(|e| Error::InvalidParameters(format!("cannot read {src:?} as a list of integers: {e}")))
}

/// `a_{i,l}=p/q`: pins one coefficient to a rational constant.
pub fn assignment(src: &str) -> Result<(CoeffVar, Rational), Error> {
    let bad = || Error::InvalidParameters(format!("expected a_{{i,l}}=value, got {src:?}"));
    let (lhs, rhs) = src.split_once('=').ok_or_else(bad)?;
    let var = parse_poly(lhs)?;
    let vars = var.variables();
    let v = match (vars.len(), var.is_zero()) {
        (1, false) if var.num_terms() == 1 && var.total_degree() == 1 => *vars.iter().next().unwrap(),
        _ => return Err(bad()),
    };
    let value = parse_poly(rhs)?;
    match value.as_constant() {
        Some(Some(q)) => Ok((v, q.clone())),
        Some(None) => Ok((v, Rational::zero())),
        None => Err(bad()),
    }
}
