use std::collections::BTreeMap;

use cusp_strata::certify::{
    certify, certify_with, compare, verify_reduction_expansion, CertificationResult, CertifyOptions, ConditionStatus,
    Mode,
};
use cusp_strata::field::Rational;
use cusp_strata::poly::{parse_poly, CoeffVar};
use cusp_strata::{Error, NumericalSemigroup, StratumInput};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn input(gens: &[u64], k: &[u64]) -> StratumInput {
    StratumInput::new(NumericalSemigroup::from_generators(gens).unwrap(), k.to_vec()).unwrap()
}

fn exact(gens: &[u64], k: &[u64]) -> CertificationResult {
    certify(&input(gens, k), Mode::Exact).unwrap()
}

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/ledger_2_15.json");

#[test]
fn ledger_matches_golden_file() {
    let r = exact(&[2, 15], &[2, 4, 6, 8]);
    let rendered = serde_json::to_string_pretty(&r).unwrap() + "\n";
    if std::env::var_os("CUSP_STRATA_BLESS").is_some() {
        std::fs::write(GOLDEN, &rendered).unwrap();
    }
    let frozen = std::fs::read_to_string(GOLDEN).expect("golden file");
    assert_eq!(rendered, frozen);
    let back: CertificationResult = serde_json::from_str(&frozen).unwrap();
    assert_eq!(back, r);
}

#[test]
fn worked_example_conditions() {
    let r = exact(&[2, 15], &[2, 4, 6, 8]);
    assert_eq!(r.b_p, 12);
    assert_eq!(r.codimension, 21);
    let cond = |s: &str| parse_poly(s).unwrap();
    let at5: Vec<_> = r.ledger.at_gap(5).collect();
    assert_eq!(at5.len(), 1);
    assert_eq!(cond(&at5[0].condition), cond("a_{2,5} - 2a_{1,3}"));
    assert_eq!(at5[0].pivot.as_deref(), Some("a_{2,5}"));

    let at7: Vec<_> = r.ledger.at_gap(7).collect();
    let independent: Vec<_> = at7
        .iter()
        .filter(|e| e.status == ConditionStatus::Independent)
        .map(|e| cond(&e.condition))
        .collect();
    assert_eq!(independent.len(), 2);
    assert!(independent.contains(&cond("a_{3,7} - 3a_{1,3}")));
    assert!(independent.contains(&cond("a_{2,7} − 2a_{1,5} + 4a_{1,3}a_{1,4} − 3a_{1,3}a_{2,6} + 3a_{1,3}^3")));
    let dup = at7.iter().find(|e| e.status == ConditionStatus::Dependent).unwrap();
    assert_eq!(cond(&dup.raw), cond("a_{2,5} - 2a_{1,3}"));
    assert_eq!(dup.condition, "0");
}

#[test]
fn small_supersymmetric_cases() {
    let r = exact(&[6, 10, 15], &[6, 10, 15]);
    assert_eq!((r.b_p, r.codimension), (0, 24));
    assert!(r.ledger.entries.is_empty());

    let r = exact(&[6, 14, 21], &[6, 14, 21]);
    assert_eq!((r.b_p, r.r_p, r.codimension), (2, 35, 36));
    assert!(r.ledger.entries.iter().all(|e| e.gap == 43));
}

#[test]
fn trivial_and_degenerate_profiles() {
    // f_2 = t^4 sits at the conductor of ⟨2,5⟩ and contributes nothing
    let r = exact(&[2, 5], &[2, 4]);
    assert_eq!(r.b_p, 0);
    assert_eq!(r.codimension, 2);
}

#[test]
fn modular_mode_agrees_and_checks_points() {
    for (gens, k) in [(vec![2, 15], vec![2, 4, 6, 8]), (vec![6, 14, 21], vec![6, 14, 21]), (vec![2, 11], vec![2, 6, 8])] {
        let e = exact(&gens, &k);
        let m = certify(&input(&gens, &k), Mode::modular(7)).unwrap();
        assert_eq!(e.b_p, m.b_p);
        assert_eq!(m.trials.len(), 3);
        assert!(m.trials.iter().all(|t| t.verified()), "{:?}", m.trials);
    }
}

#[test]
fn randomized_pivots_do_not_change_b_p() {
    let mut opts = CertifyOptions::with_mode(Mode::modular(11));
    opts.randomize_pivots = true;
    for g in 4..=7 {
        let inp = StratumInput::new(NumericalSemigroup::hyperelliptic(g).unwrap(), vec![2, 4, 6]).unwrap();
        let r = certify_with(&inp, &opts).unwrap();
        assert_eq!(r.b_p as u64, 2 * g - 5);
        assert!(r.trials.iter().all(|t| t.verified()));
    }
}

#[test]
fn runs_are_deterministic() {
    let a = serde_json::to_string(&exact(&[4, 10, 15], &[4, 8, 10, 12])).unwrap();
    let b = serde_json::to_string(&exact(&[4, 10, 15], &[4, 8, 10, 12])).unwrap();
    assert_eq!(a, b);
    let m1 = certify(&input(&[2, 13], &[2, 4, 6]), Mode::modular(3)).unwrap();
    let m2 = certify(&input(&[2, 13], &[2, 4, 6]), Mode::modular(3)).unwrap();
    assert_eq!(m1, m2);
}

#[test]
fn blocked_generator_uses_rational_pivots() {
    let r = exact(&[4, 10, 15], &[4, 8, 10, 12]);
    assert!(!r.unirational_witness);
    assert!(!r.ledger.localization.is_empty());
    let c = compare(&input(&[4, 10, 15], &[4, 8, 10, 12]), &CertifyOptions::default()).unwrap();
    assert_eq!(c.identity_residual, 0);
    assert_eq!(c.engine.codimension, 30);
}

#[test]
fn nonlinear_condition_is_reported() {
    // with these coefficients pinned, the gap-7 condition becomes 3·a_{1,3}^3
    let mut opts = CertifyOptions::default();
    for (i, l) in [(1, 4), (1, 5), (2, 6), (2, 7)] {
        opts.fixed.insert(CoeffVar::new(i, l), Rational::zero());
    }
    let err = certify_with(&input(&[2, 15], &[2, 4]), &opts).unwrap_err();
    match err {
        Error::NonlinearCondition { gap, condition } => {
            assert_eq!(gap, 7);
            assert_eq!(condition, "3*a_{1,3}^3");
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn limits_are_enforced() {
    let mut opts = CertifyOptions::default();
    opts.limits.max_conductor = 10;
    assert!(matches!(
        certify_with(&input(&[2, 15], &[2, 4]), &opts),
        Err(Error::LimitExceeded(_))
    ));
    let bad_prime = Mode::Modular { prime: 91, seed: 0, trials: 3 };
    assert!(matches!(certify(&input(&[2, 7], &[2, 4]), bad_prime), Err(Error::InvalidParameters(_))));
}

/// Pinning coefficients of `f_1` never adds conditions; a generic pinning
/// leaves `b_P` unchanged.
#[test]
fn perturbation_never_increases_b_p() {
    let cases = [(vec![2, 15], vec![2, 4, 6, 8]), (vec![2, 13], vec![2, 4, 6]), (vec![6, 14, 21], vec![6, 14, 21])];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (gens, k) in cases {
        let inp = input(&gens, &k);
        let base = certify(&inp, Mode::Exact).unwrap().b_p;
        let first: Vec<CoeffVar> = cusp_strata::certify::parameter_variables(&inp)
            .into_iter()
            .filter(|v| v.stream() == 1)
            .collect();
        for round in 0..4 {
            let mut fixed = BTreeMap::new();
            for &v in &first {
                if rng.gen_bool(0.5) {
                    let q = if round % 2 == 0 {
                        Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=5))
                    } else {
                        Rational::zero()
                    };
                    fixed.insert(v, q);
                }
            }
            let generic = round % 2 == 0;
            let opts = CertifyOptions { fixed, ..CertifyOptions::default() };
            let b = certify_with(&inp, &opts).unwrap().b_p;
            assert!(b <= base, "{gens:?}: {b} > {base}");
            if generic {
                assert_eq!(b, base, "{gens:?}");
            }
        }
    }
}

#[test]
fn expansion_identity_examples() {
    assert!(verify_reduction_expansion(4, 7, 2, &[2, 1], 5).unwrap().holds());
    assert!(verify_reduction_expansion(3, 9, 3, &[1, 3, 2], 6).unwrap().holds());
    assert!(verify_reduction_expansion(2, 4, 0, &[2, 1], 7).unwrap().holds());
}

/// Even profiles `(2, k_2, …)` with `k_i < 2g` on hyperelliptic semigroups:
/// the predicted `b_P = Σ (g − k_i/2)` is not a theorem, so disagreements are
/// printed rather than failed.
#[test]
fn even_profile_report() {
    let mut agree = 0;
    let mut total = 0;
    for g in 2..=8u64 {
        for n in 2..=3usize.min(g as usize) {
            let evens: Vec<u64> = (2..g).map(|i| 2 * i).collect();
            for mut k in subsets(&evens, n - 1) {
                k.insert(0, 2);
                let predicted_b: i64 = k[1..].iter().map(|&x| g as i64 - x as i64 / 2).sum();
                let inp = StratumInput::new(NumericalSemigroup::hyperelliptic(g).unwrap(), k.clone()).unwrap();
                let c = compare(&inp, &CertifyOptions::default()).unwrap();
                total += 1;
                let predicted = c.closed_form.as_ref().map(|f| f.value);
                if predicted == Some(c.engine.codimension) && c.engine.b_p as i64 == predicted_b && c.all_agree() {
                    agree += 1;
                } else {
                    println!(
                        "g={g} k={k:?}: engine b_P {} codim {}, predicted b_P {predicted_b} codim {predicted:?}, A {} B {}",
                        c.engine.b_p, c.engine.codimension, c.conj_a, c.conj_b
                    );
                }
            }
        }
    }
    println!("even profiles: {agree} of {total} agree");
    assert!(total > 0);
}

fn subsets(items: &[u64], n: usize) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], n - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}
