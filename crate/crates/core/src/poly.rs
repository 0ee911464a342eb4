//! Sparse multivariate polynomials in the coefficient variables `a_{i,ℓ}`.
//!
//! Terms are kept sorted descending in graded-lex order, where variables are
//! ranked by `(ℓ, i)`: a later order is a more significant variable. Zero
//! coefficients are never stored.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};

/// The coefficient `a_{i,ℓ}` of `t^ℓ` in the `i`-th parameterizing series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffVar(u32);

const STREAM_BITS: u32 = 8;

impl CoeffVar {
    /// `stream` is 1-based, as in `a_{1,3}`.
    pub fn new(stream: usize, order: u64) -> Self {
        assert!(stream >= 1 && stream < (1 << STREAM_BITS), "stream index out of range");
        assert!(order < (1 << (32 - STREAM_BITS)), "order out of range");
        CoeffVar(((order as u32) << STREAM_BITS) | stream as u32)
    }

    pub fn stream(self) -> usize {
        (self.0 & ((1 << STREAM_BITS) - 1)) as usize
    }

    pub fn order(self) -> u64 {
        (self.0 >> STREAM_BITS) as u64
    }
}

impl fmt::Display for CoeffVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a_{{{},{}}}", self.stream(), self.order())
    }
}

/// A power product of variables, sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    degree: u32,
    powers: SmallVec<[(CoeffVar, u32); 4]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: CoeffVar) -> Self {
        let mut powers = SmallVec::new();
        powers.push((v, 1));
        Monomial { degree: 1, powers }
    }

    pub fn from_powers(mut powers: Vec<(CoeffVar, u32)>) -> Self {
        powers.retain(|p| p.1 > 0);
        powers.sort();
        let mut merged: SmallVec<[(CoeffVar, u32); 4]> = SmallVec::new();
        for (v, e) in powers {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        let degree = merged.iter().map(|p| p.1).sum();
        Monomial { degree, powers: merged }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn powers(&self) -> &[(CoeffVar, u32)] {
        &self.powers
    }

    pub fn exponent(&self, v: CoeffVar) -> u32 {
        self.powers
            .binary_search_by(|p| p.0.cmp(&v))
            .map(|i| self.powers[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.powers, &other.powers);
        let mut out: SmallVec<[(CoeffVar, u32); 4]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { degree: self.degree + other.degree, powers: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: SmallVec<[(CoeffVar, u32); 4]> = SmallVec::new();
        let mut j = 0;
        for &(v, e) in &self.powers {
            let mut d = 0;
            if j < other.powers.len() && other.powers[j].0 == v {
                d = other.powers[j].1;
                j += 1;
            } else if j < other.powers.len() && other.powers[j].0 < v {
                return None;
            }
            if d > e {
                return None;
            }
            if e > d {
                out.push((v, e - d));
            }
        }
        if j < other.powers.len() {
            return None;
        }
        Some(Monomial { degree: self.degree - other.degree, powers: out })
    }

    /// The monomial with `v` removed, and the exponent it had.
    fn without(&self, v: CoeffVar) -> (Monomial, u32) {
        match self.powers.binary_search_by(|p| p.0.cmp(&v)) {
            Ok(i) => {
                let e = self.powers[i].1;
                let mut powers = self.powers.clone();
                powers.remove(i);
                (Monomial { degree: self.degree - e, powers }, e)
            }
            Err(_) => (self.clone(), 0),
        }
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.powers, &other.powers);
        let (mut i, mut j) = (a.len(), b.len());
        while i > 0 && j > 0 {
            let (va, ea) = a[i - 1];
            let (vb, eb) = b[j - 1];
            if va != vb {
                return va.cmp(&vb);
            }
            if ea != eb {
                return ea.cmp(&eb);
            }
            i -= 1;
            j -= 1;
        }
        i.cmp(&j)
    }
}

impl Ord for Monomial {
    /// Graded lex, most significant variable = greatest `(ℓ, i)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.powers.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<K> {
    terms: Vec<(Monomial, K)>,
}

impl<K: Field> MultiPoly<K> {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: vec![(Monomial::one(), c)] }
    }

    pub fn var(v: CoeffVar, one: K) -> Self {
        MultiPoly { terms: vec![(Monomial::var(v), one)] }
    }

    pub fn term(m: Monomial, c: K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: vec![(m, c)] }
    }

    /// Canonicalizes an arbitrary list of terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut map: HashMap<Monomial, K> = HashMap::new();
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(acc) => acc.add_assign(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::from_map(map)
    }

    fn from_map(map: HashMap<Monomial, K>) -> Self {
        let mut terms: Vec<(Monomial, K)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, K)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value of a constant polynomial; `None` if a variable occurs.
    pub fn as_constant(&self) -> Option<Option<&K>> {
        match self.terms.as_slice() {
            [] => Some(None),
            [(m, c)] if m.is_one() => Some(Some(c)),
            _ => None,
        }
    }

    /// Whether this is exactly the constant 1.
    pub fn is_one(&self) -> bool {
        matches!(self.as_constant(), Some(Some(c)) if c.is_one())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, K)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: CoeffVar) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: CoeffVar) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<CoeffVar> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.powers().iter().map(|p| p.0))
            .collect()
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let fix = |c: &K| if negate { c.neg() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), fix(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), fix(c))));
        MultiPoly { terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(Some(c)) = self.as_constant() {
            return other.scale(c);
        }
        if let Some(Some(c)) = other.as_constant() {
            return self.scale(c);
        }
        let mut map: HashMap<Monomial, K> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match map.get_mut(&m) {
                    Some(acc) => acc.add_assign(&c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(map)
    }

    pub fn pow(&self, e: u32, one: &K) -> Self {
        let mut acc = Self::constant(one.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Coefficients of `v^0, v^1, …` as polynomials free of `v`.
    pub fn split_by_var(&self, v: CoeffVar) -> Vec<MultiPoly<K>> {
        let d = self.degree_in(v) as usize;
        let mut parts: Vec<Vec<(Monomial, K)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            parts[e as usize].push((rest, c.clone()));
        }
        parts
            .into_iter()
            .map(|mut t| {
                // removing a variable can reorder terms
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MultiPoly { terms: t }
            })
            .collect()
    }

    /// Replaces `v` by `num / den`, clearing denominators: returns
    /// `den^d · p(num/den)` where `d = deg_v p` (or `p(num)` when `den` is `None`).
    pub fn substitute(&self, v: CoeffVar, num: &MultiPoly<K>, den: Option<&MultiPoly<K>>) -> Self {
        if !self.contains_var(v) {
            return self.clone();
        }
        let parts = self.split_by_var(v);
        let d = parts.len() - 1;
        let mut acc = parts[d].clone();
        match den {
            None => {
                for e in (0..d).rev() {
                    acc = acc.mul(num).add(&parts[e]);
                }
            }
            Some(den) => {
                let mut den_pow = den.clone();
                for e in (0..d).rev() {
                    acc = acc.mul(num).add(&parts[e].mul(&den_pow));
                    if e > 0 {
                        den_pow = den_pow.mul(den);
                    }
                }
            }
        }
        acc
    }

    pub fn eval<F>(&self, assign: F) -> Result<K>
    where
        F: Fn(CoeffVar) -> Option<K>,
    {
        let mut total: Option<K> = None;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.powers() {
                let x = assign(v).ok_or_else(|| Error::MissingAssignment(v.to_string()))?;
                t = t.mul(&x.pow(e as u64));
            }
            total = Some(match total {
                None => t,
                Some(acc) => acc.add(&t),
            });
        }
        match total {
            Some(t) => Ok(t),
            None => Err(Error::InvalidParameters(
                "cannot infer the field of the zero polynomial; use eval_with_zero".into(),
            )),
        }
    }

    /// Like [`eval`](Self::eval) but returns `zero` for the zero polynomial.
    pub fn eval_with_zero<F>(&self, zero: &K, assign: F) -> Result<K>
    where
        F: Fn(CoeffVar) -> Option<K>,
    {
        if self.is_zero() {
            return Ok(zero.clone());
        }
        self.eval(assign)
    }

    pub fn map_coeffs<K2: Field>(&self, f: impl Fn(&K) -> K2) -> MultiPoly<K2> {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: CoeffVar) -> Self {
        MultiPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (rest, e) = m.without(v);
            if e == 0 {
                return None;
            }
            let mut powers: Vec<(CoeffVar, u32)> = rest.powers().to_vec();
            powers.push((v, e - 1));
            Some((Monomial::from_powers(powers), c.mul(&c.from_i64_like(e as i64))))
        }))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn try_div_exact(&self, d: &MultiPoly<K>) -> Option<Self> {
        let (lm, lc) = d.leading_term()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c.mul(&lc_inv);
            let t = MultiPoly::term(qm.clone(), qc.clone());
            rem = rem.sub(&t.mul(d));
            quotient.push((qm, qc));
        }
        Some(MultiPoly::from_terms(quotient))
    }

    /// Variables occurring with degree exactly one whose cofactor is a
    /// nonzero constant, i.e. `p = c·v + (terms free of v)`.
    pub fn unit_linear_vars(&self) -> Vec<CoeffVar> {
        self.variables()
            .into_iter()
            .filter(|&v| {
                if self.degree_in(v) != 1 {
                    return false;
                }
                let cof = &self.split_by_var(v)[1];
                matches!(cof.as_constant(), Some(Some(_)))
            })
            .collect()
    }

    /// Variables occurring with degree exactly one (any cofactor).
    pub fn linear_vars(&self) -> Vec<CoeffVar> {
        self.variables()
            .into_iter()
            .filter(|&v| self.degree_in(v) == 1)
            .collect()
    }

    /// Terms in display order: ascending total degree, then descending lex.
    fn display_order(&self) -> Vec<&(Monomial, K)> {
        let mut t: Vec<&(Monomial, K)> = self.terms.iter().collect();
        t.sort_by(|a, b| {
            a.0.degree()
                .cmp(&b.0.degree())
                .then_with(|| b.0.lex_cmp(&a.0))
        });
        t
    }
}

impl<K: Field> fmt::Display for MultiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.display_order().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { c.neg() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for MultiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the rendered form, e.g. `a_{2,5} - 2*a_{1,3}` or `3*a_{1,3}^3`.
/// Also accepts `−` and `·`, implicit products such as `4a_{1,3}a_{1,4}`,
/// and `a_{1,3}³`-free caret powers.
pub fn parse_poly(src: &str) -> Result<MultiPoly<Rational>> {
    let s: String = src
        .chars()
        .map(|c| match c {
            '−' => '-',
            '·' => '*',
            _ => c,
        })
        .filter(|c| !c.is_whitespace())
        .collect();
    let bad = |msg: &str| Error::InvalidParameters(format!("cannot parse polynomial {src:?}: {msg}"));
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut pos = 0;
    if bytes.is_empty() {
        return Err(bad("empty"));
    }
    while pos < bytes.len() {
        let mut sign = 1i64;
        while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
        }
        let mut coef = Rational::integer(sign);
        let mut powers: Vec<(CoeffVar, u32)> = Vec::new();
        let mut any = false;
        loop {
            if pos >= bytes.len() || bytes[pos] == b'+' || bytes[pos] == b'-' {
                break;
            }
            if bytes[pos] == b'*' {
                pos += 1;
                continue;
            }
            if bytes[pos].is_ascii_digit() {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let num: i64 = s[start..pos].parse().map_err(|_| bad("number"))?;
                let mut q = Rational::integer(num);
                if pos < bytes.len() && bytes[pos] == b'/' {
                    pos += 1;
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let den: i64 = s[start..pos].parse().map_err(|_| bad("denominator"))?;
                    if den == 0 {
                        return Err(bad("zero denominator"));
                    }
                    q = Rational::new(num, den);
                }
                coef = coef.mul(&q);
                any = true;
            } else if s[pos..].starts_with("a_{") {
                let close = s[pos..].find('}').ok_or_else(|| bad("unclosed brace"))? + pos;
                let inner = &s[pos + 3..close];
                let (i, l) = inner.split_once(',').ok_or_else(|| bad("variable index"))?;
                let i: usize = i.parse().map_err(|_| bad("stream index"))?;
                let l: u64 = l.parse().map_err(|_| bad("order"))?;
                if i == 0 || i >= 1 << STREAM_BITS || l >= 1 << (32 - STREAM_BITS) {
                    return Err(bad("index out of range"));
                }
                pos = close + 1;
                let mut e = 1u32;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    e = s[start..pos].parse().map_err(|_| bad("exponent"))?;
                }
                powers.push((CoeffVar::new(i, l), e));
                any = true;
            } else {
                return Err(bad("unexpected character"));
            }
        }
        if !any {
            return Err(bad("empty term"));
        }
        terms.push((Monomial::from_powers(powers), coef));
    }
    Ok(MultiPoly::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::integer(n)
    }

    fn v(i: usize, l: u64) -> MultiPoly<Rational> {
        MultiPoly::var(CoeffVar::new(i, l), q(1))
    }

    #[test]
    fn arithmetic_examples() {
        let x = v(1, 3);
        let one = MultiPoly::constant(q(1));
        assert_eq!(x.add(&one).add(&x.neg()), one);
        let y = v(2, 5);
        let xy = x.mul(&y);
        assert_eq!(xy.num_terms(), 1);
        assert_eq!(xy.total_degree(), 2);
        let sq = x.mul(&x);
        assert_eq!(sq.to_string(), "a_{1,3}^2");
        assert!(sq.terms()[0].1.is_one());
    }

    #[test]
    fn var_order_is_by_order_then_stream() {
        assert!(CoeffVar::new(2, 5) > CoeffVar::new(1, 3));
        assert!(CoeffVar::new(1, 6) > CoeffVar::new(3, 5));
        assert!(CoeffVar::new(2, 5) > CoeffVar::new(1, 5));
        let c = CoeffVar::new(3, 17);
        assert_eq!((c.stream(), c.order()), (3, 17));
    }

    #[test]
    fn rendering() {
        let p = v(2, 5).sub(&v(1, 3).scale(&q(2)));
        assert_eq!(p.to_string(), "a_{2,5} - 2*a_{1,3}");
        assert_eq!(MultiPoly::<Rational>::zero().to_string(), "0");
        assert_eq!(MultiPoly::constant(q(-3)).to_string(), "-3");
    }

    #[test]
    fn parse_round_trip() {
        let src = "a_{2,7} - 2*a_{1,5} + 4*a_{1,3}*a_{1,4} - 3*a_{1,3}*a_{2,6} + 3*a_{1,3}^3";
        let p = parse_poly(src).unwrap();
        assert_eq!(p.num_terms(), 5);
        let canonical = "a_{2,7} - 2*a_{1,5} - 3*a_{1,3}*a_{2,6} + 4*a_{1,3}*a_{1,4} + 3*a_{1,3}^3";
        assert_eq!(p.to_string(), canonical);
        assert_eq!(parse_poly(canonical).unwrap(), p);
        let p2 = parse_poly("a_{2,7}−2a_{1,5}+4a_{1,3}a_{1,4}−3a_{1,3}a_{2,6}+3a_{1,3}^3").unwrap();
        assert_eq!(p, p2);
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x + 1").is_err());
        assert_eq!(parse_poly("1/2*a_{1,3}").unwrap().to_string(), "1/2*a_{1,3}");
    }

    #[test]
    fn substitution() {
        let a = CoeffVar::new(1, 3);
        let b = v(2, 4);
        let ab = v(1, 3).mul(&b);
        let two = MultiPoly::constant(q(2));
        assert_eq!(ab.substitute(a, &two, None), b.scale(&q(2)));
        let cond = v(2, 5).sub(&v(1, 3).scale(&q(2)));
        let image = v(1, 3).scale(&q(2));
        assert!(cond.substitute(CoeffVar::new(2, 5), &image, None).is_zero());
        // rational substitution clears the denominator: x² with x = y/z → y²
        let z = v(3, 9);
        let sq = v(1, 3).mul(&v(1, 3));
        let r = sq.substitute(a, &b, Some(&z));
        assert_eq!(r, b.mul(&b));
        // p = x + 1, x = y/z  →  y + z
        let p = v(1, 3).add(&MultiPoly::constant(q(1)));
        assert_eq!(p.substitute(a, &b, Some(&z)), b.add(&z));
    }

    #[test]
    fn exact_division() {
        let x = v(1, 3);
        let y = v(2, 4);
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p.try_div_exact(&x.add(&y)).unwrap(), x.sub(&y));
        assert!(p.try_div_exact(&x).is_none());
        assert!(p.try_div_exact(&MultiPoly::zero()).is_none());
    }

    #[test]
    fn linear_variables() {
        let p = parse_poly("a_{2,7} - 2*a_{1,5} + 3*a_{1,3}^3 + a_{1,4}*a_{2,6}").unwrap();
        let lin = p.unit_linear_vars();
        assert_eq!(lin, vec![CoeffVar::new(1, 5), CoeffVar::new(2, 7)]);
        let all = p.linear_vars();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn derivatives() {
        let p = parse_poly("3*a_{1,3}^2*a_{2,5} + a_{2,5} - 7").unwrap();
        let d = p.derivative(CoeffVar::new(1, 3));
        assert_eq!(d, parse_poly("6*a_{1,3}*a_{2,5}").unwrap());
        assert_eq!(p.derivative(CoeffVar::new(2, 5)), parse_poly("3*a_{1,3}^2 + 1").unwrap());
        assert!(p.derivative(CoeffVar::new(4, 9)).is_zero());
    }

    #[test]
    fn evaluation() {
        let p = v(1, 3).add(&v(2, 4));
        let val = p
            .eval(|x| Some(if x == CoeffVar::new(1, 3) { q(1) } else { q(2) }))
            .unwrap();
        assert_eq!(val, q(3));
        assert!(matches!(p.eval(|_| None), Err(Error::MissingAssignment(_))));
    }
}
