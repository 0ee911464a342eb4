//! Factorizations over a finite ground set and Betti elements.
//!
//! Two factorizations of the same element are adjacent when their exponent
//! vectors have a nonzero inner product, i.e. share a nonzero coordinate.
//! The connected components of this graph on `Z_s` are the classes; `s` is
//! a Betti element when there are at least two. Chains stay inside `Z_s`.
//!
//! Canonical order for vectors is descending lexicographic: `(2,0)` comes
//! before `(0,1)`. Class lists and class representatives follow it.

use std::cmp::Ordering;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::semigroup::{check_triple, NumericalSemigroup};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    elements: Vec<u64>,
}

impl GroundSet {
    pub fn new(elements: Vec<u64>) -> Result<Self> {
        if elements.iter().any(|&x| x == 0) || elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::ProfileNotIncreasing(elements));
        }
        Ok(GroundSet { elements })
    }

    /// Sorts and deduplicates before building.
    pub fn from_unsorted(mut elements: Vec<u64>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        Self::new(elements)
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, x: u64) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorizationVector {
    pub exponents: Vec<u64>,
    pub value: u64,
}

impl FactorizationVector {
    pub fn new(exponents: Vec<u64>, ground: &GroundSet) -> Self {
        let value = exponents
            .iter()
            .zip(ground.elements())
            .map(|(e, g)| e * g)
            .sum();
        FactorizationVector { exponents, value }
    }

    pub fn inner(&self, other: &Self) -> u64 {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// `self - other` as a signed vector.
    pub fn difference(&self, other: &Self) -> Vec<i64> {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }
}

/// Descending lexicographic order on exponent vectors.
pub fn canonical_cmp(a: &FactorizationVector, b: &FactorizationVector) -> Ordering {
    b.exponents.cmp(&a.exponents)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiAnalysis {
    #[serde(rename = "s")]
    pub element: u64,
    pub factorizations: Vec<FactorizationVector>,
    /// Indices into `factorizations`, one list per class.
    pub classes: Vec<Vec<usize>>,
    pub psi: usize,
}

impl BettiAnalysis {
    pub fn analyze(s: u64, ground: &GroundSet) -> Self {
        let factorizations = enumerate_factorizations(s, ground);
        let classes = if s == 0 {
            vec![vec![0]]
        } else {
            connectivity_classes(&factorizations)
        };
        BettiAnalysis {
            element: s,
            psi: classes.len(),
            factorizations,
            classes,
        }
    }

    pub fn is_betti(&self) -> bool {
        self.psi >= 2
    }

    /// First vector of each class.
    pub fn representatives(&self) -> Vec<&FactorizationVector> {
        self.classes
            .iter()
            .map(|c| &self.factorizations[c[0]])
            .collect()
    }
}

/// All exponent vectors over `ground` with value `s`, in canonical order.
pub fn enumerate_factorizations(s: u64, ground: &GroundSet) -> Vec<FactorizationVector> {
    let el = ground.elements();
    if el.is_empty() {
        return if s == 0 {
            vec![FactorizationVector { exponents: vec![], value: 0 }]
        } else {
            vec![]
        };
    }
    // suffix gcds: a remainder must be divisible by the gcd of what is left
    let mut suffix_gcd = vec![0u64; el.len() + 1];
    for i in (0..el.len()).rev() {
        suffix_gcd[i] = suffix_gcd[i + 1].gcd(&el[i]);
    }
    let mut out = Vec::new();
    let mut current = vec![0u64; el.len()];
    dfs(s, 0, el, &suffix_gcd, &mut current, &mut out);
    out.into_iter()
        .map(|exponents| FactorizationVector { exponents, value: s })
        .collect()
}

fn dfs(
    rem: u64,
    i: usize,
    el: &[u64],
    suffix_gcd: &[u64],
    current: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if i + 1 == el.len() {
        if rem % el[i] == 0 {
            current[i] = rem / el[i];
            out.push(current.clone());
            current[i] = 0;
        }
        return;
    }
    let max = rem / el[i];
    for e in (0..=max).rev() {
        let r = rem - e * el[i];
        if r % suffix_gcd[i + 1] != 0 {
            continue;
        }
        current[i] = e;
        dfs(r, i + 1, el, suffix_gcd, current, out);
    }
    current[i] = 0;
}

/// Connected components of the nonzero-inner-product graph. Members of each
/// class are listed in canonical order and classes are ordered by their
/// first member, so the result does not depend on input order.
pub fn connectivity_classes(vectors: &[FactorizationVector]) -> Vec<Vec<usize>> {
    let n = vectors.len();
    if n == 0 {
        return vec![];
    }
    let dim = vectors[0].exponents.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for coord in 0..dim {
        let mut first: Option<usize> = None;
        for (idx, v) in vectors.iter().enumerate() {
            if v.exponents[coord] != 0 {
                match first {
                    None => first = Some(idx),
                    Some(f) => {
                        let (ra, rb) = (find(&mut parent, f), find(&mut parent, idx));
                        if ra != rb {
                            parent[ra] = rb;
                        }
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| canonical_cmp(&vectors[a], &vectors[b]));
    let mut root_to_class: Vec<Option<usize>> = vec![None; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for idx in order {
        let r = find(&mut parent, idx);
        match root_to_class[r] {
            Some(c) => classes[c].push(idx),
            None => {
                root_to_class[r] = Some(classes.len());
                classes.push(vec![idx]);
            }
        }
    }
    classes
}

/// Betti elements of the ground set strictly below `bound`, increasing.
pub fn betti_elements(ground: &GroundSet, bound: u64) -> Vec<BettiAnalysis> {
    betti_elements_with(ground, bound, Execution::default())
}

pub fn betti_elements_with(ground: &GroundSet, bound: u64, exec: Execution) -> Vec<BettiAnalysis> {
    exec::map_range(exec, 1..bound.max(1), |s| {
        let fs = enumerate_factorizations(s, ground);
        if fs.len() < 2 {
            return None;
        }
        let a = BettiAnalysis::analyze(s, ground);
        a.is_betti().then_some(a)
    })
    .into_iter()
    .flatten()
    .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupersymmetricReport {
    pub triple: (u64, u64, u64),
    pub conductor: u64,
    /// Members below the conductor with exactly three factorizations.
    pub three_factorization_elements: Vec<u64>,
}

/// Checks, for every member below the conductor of `⟨ab, ac, bc⟩`, that it
/// either factors uniquely or has exactly the three factorizations
/// `(c+x,y,z)`, `(x,b+y,z)`, `(x,y,a+z)` where `(x,y,z)` is the unique
/// factorization of `s − abc` within the box `x<c, y<b, z<a`.
pub fn verify_supersymmetric_structure(a: u64, b: u64, c: u64) -> Result<SupersymmetricReport> {
    verify_supersymmetric_structure_with(a, b, c, Execution::default())
}

pub fn verify_supersymmetric_structure_with(
    a: u64,
    b: u64,
    c: u64,
    exec: Execution,
) -> Result<SupersymmetricReport> {
    check_triple(a, b, c)?;
    let sg = NumericalSemigroup::supersymmetric(a, b, c)?;
    let ground = GroundSet::new(vec![a * b, a * c, b * c])?;
    let conductor = sg.conductor();
    let abc = a * b * c;
    let outcomes = exec::map_range(exec, 0..conductor, |s| -> std::result::Result<bool, u64> {
        if !sg.contains(s) {
            return Ok(false);
        }
        let fs = enumerate_factorizations(s, &ground);
        if fs.len() == 1 {
            return Ok(false);
        }
        if s < abc {
            return Err(s);
        }
        let base = enumerate_factorizations(s - abc, &ground);
        if base.len() != 1 {
            return Err(s);
        }
        let (x, y, z) = (base[0].exponents[0], base[0].exponents[1], base[0].exponents[2]);
        if x > c - 1 || y > b - 1 || z > a - 1 {
            return Err(s);
        }
        let mut expected = vec![
            FactorizationVector::new(vec![c + x, y, z], &ground),
            FactorizationVector::new(vec![x, b + y, z], &ground),
            FactorizationVector::new(vec![x, y, a + z], &ground),
        ];
        expected.sort_by(canonical_cmp);
        if fs != expected {
            return Err(s);
        }
        Ok(true)
    });
    let mut three = Vec::new();
    for (s, o) in outcomes.into_iter().enumerate() {
        match o {
            Ok(true) => three.push(s as u64),
            Ok(false) => {}
            Err(bad) => return Err(Error::StructureViolation(bad)),
        }
    }
    Ok(SupersymmetricReport {
        triple: (a, b, c),
        conductor,
        three_factorization_elements: three,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs(v: &[u64]) -> GroundSet {
        GroundSet::new(v.to_vec()).unwrap()
    }

    fn exps(fs: &[FactorizationVector]) -> Vec<Vec<u64>> {
        fs.iter().map(|f| f.exponents.clone()).collect()
    }

    fn fv(e: &[u64], g: &GroundSet) -> FactorizationVector {
        FactorizationVector::new(e.to_vec(), g)
    }

    #[test]
    fn enumerate_examples() {
        let g = gs(&[6, 14, 21]);
        assert_eq!(
            exps(&enumerate_factorizations(42, &g)),
            vec![vec![7, 0, 0], vec![0, 3, 0], vec![0, 0, 2]]
        );
        assert_eq!(exps(&enumerate_factorizations(0, &g)), vec![vec![0, 0, 0]]);
        assert_eq!(
            exps(&enumerate_factorizations(4, &gs(&[2, 4]))),
            vec![vec![2, 0], vec![0, 1]]
        );
        assert!(enumerate_factorizations(5, &gs(&[2, 4])).is_empty());
    }

    #[test]
    fn classes_examples() {
        let g = gs(&[2, 4]);
        assert_eq!(connectivity_classes(&[fv(&[2, 0], &g), fv(&[0, 1], &g)]).len(), 2);
        let g2 = gs(&[1, 2]);
        assert_eq!(connectivity_classes(&[fv(&[3, 0], &g2), fv(&[1, 1], &g2)]).len(), 1);
        let g3 = gs(&[6, 14, 21]);
        let three = enumerate_factorizations(42, &g3);
        assert_eq!(connectivity_classes(&three).len(), 3);
    }

    #[test]
    fn classes_ignore_input_order() {
        let g = gs(&[2, 4, 6, 8]);
        let mut fs = enumerate_factorizations(12, &g);
        let a = connectivity_classes(&fs);
        let canon = |fs: &[FactorizationVector], cl: Vec<Vec<usize>>| -> Vec<Vec<Vec<u64>>> {
            cl.into_iter()
                .map(|c| c.into_iter().map(|i| fs[i].exponents.clone()).collect())
                .collect()
        };
        let a = canon(&fs, a);
        fs.reverse();
        let b = connectivity_classes(&fs);
        assert_eq!(a, canon(&fs, b));
    }

    #[test]
    fn betti_examples() {
        let b: Vec<u64> = betti_elements(&gs(&[2, 4, 6, 8]), 14)
            .iter()
            .map(|a| a.element)
            .collect();
        assert_eq!(b, vec![4, 6, 8]);
        let b = betti_elements(&gs(&[6, 14, 21]), 44);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].element, 42);
        assert_eq!(b[0].psi, 3);
        assert!(betti_elements(&gs(&[2]), 10).is_empty());
    }

    #[test]
    fn zero_is_never_betti() {
        let a = BettiAnalysis::analyze(0, &gs(&[2, 3]));
        assert_eq!(a.psi, 1);
        assert!(!a.is_betti());
    }

    #[test]
    fn supersymmetric_structure_examples() {
        let r = verify_supersymmetric_structure(2, 3, 5).unwrap();
        assert!(r.three_factorization_elements.is_empty());
        let r = verify_supersymmetric_structure(2, 3, 7).unwrap();
        assert_eq!(r.three_factorization_elements, vec![42]);
        verify_supersymmetric_structure(2, 5, 7).unwrap();
        assert_eq!(
            verify_supersymmetric_structure(2, 4, 5),
            Err(Error::NotCoprime(2, 4))
        );
    }

    #[test]
    fn ground_set_validation() {
        assert!(GroundSet::new(vec![3, 2]).is_err());
        assert!(GroundSet::new(vec![0, 2]).is_err());
        assert_eq!(GroundSet::from_unsorted(vec![5, 2, 5]).unwrap().elements(), &[2, 5]);
    }
}
