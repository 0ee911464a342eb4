//! Truncated power series in `t` with polynomial coefficients, and the
//! triangular substitution sets used to eliminate solved variables.

use crate::field::Field;
use crate::poly::{CoeffVar, MultiPoly};

/// Power series `Σ c_m t^m` with every order `≥ truncation` discarded.
///
/// Stored densely: `coeffs[m]` is the coefficient of `t^m`, zero polynomials
/// stand for absent terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries<K: Field> {
    coeffs: Vec<MultiPoly<K>>,
}

impl<K: Field> TruncatedSeries<K> {
    pub fn zero(truncation: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![MultiPoly::zero(); truncation],
        }
    }

    /// `c · t^order`, or the zero series if `order ≥ truncation`.
    pub fn monomial(truncation: usize, order: usize, c: MultiPoly<K>) -> Self {
        let mut s = Self::zero(truncation);
        if order < truncation {
            s.coeffs[order] = c;
        }
        s
    }

    pub fn from_coeffs(truncation: usize, coeffs: impl IntoIterator<Item = (usize, MultiPoly<K>)>) -> Self {
        let mut s = Self::zero(truncation);
        for (m, c) in coeffs {
            if m < truncation {
                s.coeffs[m] = s.coeffs[m].add(&c);
            }
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, m: usize) -> &MultiPoly<K> {
        &self.coeffs[m]
    }

    pub fn set_coeff(&mut self, m: usize, c: MultiPoly<K>) {
        self.coeffs[m] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Least order with a nonzero coefficient; `None` stands for `+∞`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading_coefficient(&self) -> Option<&MultiPoly<K>> {
        self.valuation().map(|v| &self.coeffs[v])
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &MultiPoly<K>) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let n = self.truncation();
        let mut out = vec![MultiPoly::zero(); n];
        for (p, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in other.coeffs[..n - p].iter().enumerate() {
                if !b.is_zero() {
                    out[p + q] = out[p + q].add(&a.mul(b));
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn apply_substitution(&self, subs: &SubstitutionSet<K>) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| subs.apply(c)).collect(),
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.truncation(), other.truncation(), "series truncations differ");
    }
}

/// One elimination `v ↦ numerator / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionEntry<K: Field> {
    pub var: CoeffVar,
    pub numerator: MultiPoly<K>,
    /// `None` for a polynomial image.
    pub denominator: Option<MultiPoly<K>>,
}

/// An ordered, triangular list of eliminations.
///
/// Each image is free of its own variable and of every earlier variable, so
/// applying the entries in order reaches a fixed point in one pass. Rational
/// images only arise from non-monic solutions; their denominators are assumed
/// nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionSet<K: Field> {
    entries: Vec<SubstitutionEntry<K>>,
}

impl<K: Field> Default for SubstitutionSet<K> {
    fn default() -> Self {
        SubstitutionSet { entries: Vec::new() }
    }
}

impl<K: Field> SubstitutionSet<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[SubstitutionEntry<K>] {
        &self.entries
    }

    pub fn contains(&self, v: CoeffVar) -> bool {
        self.entries.iter().any(|e| e.var == v)
    }

    /// Appends `v ↦ image`. The image must already be reduced by this set.
    pub fn push(&mut self, v: CoeffVar, image: MultiPoly<K>) {
        self.push_entry(SubstitutionEntry { var: v, numerator: image, denominator: None });
    }

    /// Appends `v ↦ numerator / denominator`.
    pub fn push_rational(&mut self, v: CoeffVar, numerator: MultiPoly<K>, denominator: MultiPoly<K>) {
        self.push_entry(SubstitutionEntry { var: v, numerator, denominator: Some(denominator) });
    }

    fn push_entry(&mut self, e: SubstitutionEntry<K>) {
        let reduced = |p: &MultiPoly<K>| !p.contains_var(e.var) && self.entries.iter().all(|w| !p.contains_var(w.var));
        debug_assert!(reduced(&e.numerator), "image is not reduced");
        debug_assert!(e.denominator.as_ref().map_or(true, reduced), "denominator is not reduced");
        debug_assert!(!self.contains(e.var), "variable substituted twice");
        self.entries.push(e);
    }

    /// The image of `p` with denominators cleared. Without rational entries
    /// this is plain substitution.
    pub fn apply(&self, p: &MultiPoly<K>) -> MultiPoly<K> {
        self.apply_fraction(p).0
    }

    /// The image of `p` as `numerator / denominator` (`None` meaning 1).
    pub fn apply_fraction(&self, p: &MultiPoly<K>) -> (MultiPoly<K>, Option<MultiPoly<K>>) {
        let mut num = p.clone();
        let mut den: Option<MultiPoly<K>> = None;
        for e in &self.entries {
            let dn = num.degree_in(e.var);
            let dd = den.as_ref().map_or(0, |d| d.degree_in(e.var));
            if dn == 0 && dd == 0 {
                continue;
            }
            let d = e.denominator.as_ref();
            num = num.substitute(e.var, &e.numerator, d);
            den = den.map(|x| x.substitute(e.var, &e.numerator, d));
            // both sides were multiplied by different powers of the denominator
            if let Some(d) = d {
                if dd >= dn {
                    num = num.mul(&power(d, dd - dn));
                } else {
                    let extra = power(d, dn - dd);
                    den = Some(match den {
                        Some(x) => x.mul(&extra),
                        None => extra,
                    });
                }
            }
        }
        (num, den)
    }
}

fn power<K: Field>(p: &MultiPoly<K>, e: u32) -> MultiPoly<K> {
    let mut acc = p.clone();
    if e == 0 {
        let one = p.terms()[0].1.one_like();
        return MultiPoly::constant(one);
    }
    for _ in 1..e {
        acc = acc.mul(p);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::poly::parse_poly;

    fn q(n: i64) -> Rational {
        Rational::integer(n)
    }

    fn p(s: &str) -> MultiPoly<Rational> {
        parse_poly(s).unwrap()
    }

    #[test]
    fn truncation_kills_high_orders() {
        let t2 = TruncatedSeries::monomial(4, 2, MultiPoly::constant(q(1)));
        assert!(t2.mul(&t2).is_zero());
        assert_eq!(t2.mul(&t2).valuation(), None);
    }

    #[test]
    fn convolution() {
        let one = MultiPoly::constant(q(1));
        let a = TruncatedSeries::from_coeffs(6, [(2, one.clone()), (3, p("a_{1,3}"))]);
        let b = TruncatedSeries::from_coeffs(6, [(2, one.clone()), (3, p("a_{2,3}"))]);
        let prod = a.mul(&b);
        assert_eq!(prod.valuation(), Some(4));
        assert_eq!(prod.coeff(4), &one);
        assert_eq!(prod.coeff(5), &p("a_{1,3} + a_{2,3}"));
    }

    #[test]
    fn square_of_first_stream() {
        let f1 = TruncatedSeries::from_coeffs(
            7,
            [(2, MultiPoly::constant(q(1))), (3, p("a_{1,3}")), (4, p("a_{1,4}"))],
        );
        let sq = f1.mul(&f1);
        assert_eq!(sq.coeff(5), &p("2*a_{1,3}"));
        assert_eq!(sq.coeff(6), &p("2*a_{1,4} + a_{1,3}^2"));
    }

    #[test]
    fn substitution_sets() {
        let mut subs = SubstitutionSet::new();
        let cond = p("a_{2,5} - 2*a_{1,3}");
        assert_eq!(subs.apply(&cond), cond);
        subs.push(CoeffVar::new(2, 5), p("2*a_{1,3}"));
        assert!(subs.apply(&cond).is_zero());
        // a later elimination of a variable used by an earlier image
        subs.push(CoeffVar::new(1, 3), p("a_{1,4}"));
        assert_eq!(subs.apply(&p("a_{2,5}")), p("2*a_{1,4}"));
        let s = TruncatedSeries::from_coeffs(8, [(5, cond)]);
        assert!(s.apply_substitution(&subs).is_zero());
    }

    #[test]
    fn rational_images_keep_track_of_denominators() {
        let mut subs = SubstitutionSet::new();
        // x ↦ y / z
        subs.push_rational(CoeffVar::new(1, 3), p("a_{2,4}"), p("a_{3,9}"));
        let (num, den) = subs.apply_fraction(&p("a_{1,3}^2 + 1"));
        assert_eq!(num, p("a_{2,4}^2 + a_{3,9}^2"));
        assert_eq!(den, Some(p("a_{3,9}^2")));
        // z·x − y vanishes identically
        let (num, _) = subs.apply_fraction(&p("a_{3,9}*a_{1,3} - a_{2,4}"));
        assert!(num.is_zero());
        // a later elimination inside the denominator: z ↦ 2
        subs.push(CoeffVar::new(3, 9), p("2"));
        let (num, den) = subs.apply_fraction(&p("a_{1,3}"));
        assert_eq!((num, den), (p("a_{2,4}"), Some(p("2"))));
    }
}
