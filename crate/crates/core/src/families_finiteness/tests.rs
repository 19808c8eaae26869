use super::*;
use crate::beta_dynamics::{expand, expansion_of_one, fractional_part, OrbitKind, DEFAULT_CAP};
use crate::word_calculus::{value, WeakWord};
use num_traits::ToPrimitive;
use proptest::prelude::*;

const CAP: usize = 100_000;

#[test]
fn constraints() {
    assert!(FamilySpec::p(1).is_err());
    assert!(FamilySpec::q(3, 2, 1).is_err());
    assert!(FamilySpec::q(4, 1, 2).is_err());
    assert!(FamilySpec::q(2, 1, 1).is_ok());
    assert!(FamilySpec::r(3, 0).is_err());
    assert!(FamilySpec::r(3, 3).is_err());
    assert!(FamilySpec::r(3, -2).is_ok());
}

#[test]
fn build_examples() {
    let p2 = build(FamilySpec::p(2).unwrap()).unwrap();
    assert_eq!(expansion_of_one(&p2).prefix(), vec![2, 1, 0, 2]);
    let q = build(FamilySpec::q(2, 1, 1).unwrap()).unwrap();
    assert_eq!(expansion_of_one(&q).prefix(), vec![2, 0, 1, 1]);
    let r = build(FamilySpec::r(3, 1).unwrap()).unwrap();
    assert!(r.is_certified_pisot());
    assert_eq!(r.floor_beta(), 2);
    assert!(matches!(build(FamilySpec::r(3, 2).unwrap()), Err(FamilyError::NotPisot(_))));
    assert_eq!(build_dominant(FamilySpec::r(3, 2).unwrap()).unwrap().floor_beta(), 2);
}

#[test]
fn p_and_q_pisot_to_30() {
    for n in 2..=30 {
        let s = FamilySpec::p(n).unwrap();
        assert_eq!(build(s).unwrap().floor_beta(), s.expected_floor());
        for b in 1..=n / 2 {
            let s = FamilySpec::q(n, b, n - b).unwrap();
            assert_eq!(build(s).unwrap().floor_beta(), s.expected_floor(), "{s}");
        }
    }
}

#[test]
fn scan_examples() {
    let r = scan_family(FamilySpec::p(3).unwrap(), 20, CAP).unwrap();
    assert!((1..=6).all(|k| !r.is_non_finite(k)));
    assert_eq!(r.residue_facts["1..n(n-1) in Fin"], true);
    assert!(r.class_consistent);

    let r = scan_family(FamilySpec::p(6).unwrap(), 40, CAP).unwrap();
    assert!(r.is_non_finite(36));
    assert!(!r.is_non_finite(38));
    assert!(r.gaps);

    let r = scan_family(FamilySpec::q(2, 1, 1).unwrap(), 5, CAP).unwrap();
    assert!(r.is_non_finite(3));
    assert_eq!(r.first_non_finite(), Some(3));
    assert_eq!(r.residue_facts["n+1 not in Fin"], true);

    let r = scan_family(FamilySpec::p(2).unwrap(), 10, CAP).unwrap();
    assert_eq!(r.first_non_finite(), Some(6));
}

#[test]
fn gap_flag_matches_list() {
    for n in [4, 5, 6, 9] {
        let r = scan_family(FamilySpec::p(n).unwrap(), 200, CAP).unwrap();
        let by_list = r.non_finite.iter().any(|e| e.n < 200 && !r.is_non_finite(e.n + 1));
        assert_eq!(r.gaps, by_list, "n={n}");
        assert!(r.non_finite.iter().all(|e| !e.period.is_empty()));
        assert!(r.class_consistent);
    }
}

#[test]
fn residue_examples() {
    let r5 = residue_row(5, CAP).unwrap();
    assert_eq!(r5.membership[&27], false);
    let r11 = residue_row(11, CAP).unwrap();
    assert_eq!(r11.membership[&123], true);
    assert_eq!(r11.membership[&146], false);
    let r4 = residue_row(4, CAP).unwrap();
    assert!(r4.membership[&16] && r4.membership[&18]);
    // the n^2+3 claim fails on every n = 2 mod 3, n != 3 mod 4; the rest hold
    for row in residue_table(2, 20, CAP).unwrap() {
        let n = row.n;
        for c in &row.checks {
            let expect = !(c.claim.ends_with("n^2+3 in Fin") && n % 3 == 2 && n % 4 != 3);
            assert_eq!(c.holds, expect, "n={n} {}", c.claim);
        }
    }
    assert!(residue_table(1, 3, CAP).is_err());
}

#[test]
fn akiyama_contains_periodic_class() {
    for n in 2..=4 {
        let base = build(FamilySpec::p(n).unwrap()).unwrap();
        let rep = akiyama_set(&base, CAP).unwrap();
        let s = fractional_part(&base.element(&[2, n]));
        let word = WeakWord { digits: vec![n - 1, 1, 1, n, n], offset: 0 };
        assert_eq!(value(&word, &base), s);
        let c = [s.num()[0].to_i64().unwrap(), s.num()[1].to_i64().unwrap(), s.num()[2].to_i64().unwrap()];
        let x = rep.get(c).expect("fractional part of nβ+2 in the set");
        assert!(!x.finite);
        assert!(!rep.f_holds);
        assert_eq!(expand(&s, CAP).unwrap().kind, OrbitKind::EventuallyPeriodic);
        // α = β - n
        assert!(rep.get([-n, 1, 0]).unwrap().finite);
        assert!(rep.elements.iter().all(|e| e.approx > 0.0 && e.approx < 1.0));
    }
}

#[test]
fn akiyama_matches_brute_force() {
    // direct scan of a wider box with f64 conjugate tests
    let base = build(FamilySpec::p(2).unwrap()).unwrap();
    let rep = akiyama_set(&base, CAP).unwrap();
    let b = base.approx();
    let z = base.conjugates()[0];
    let bound = 2.0 / (1.0 - z.norm());
    let mut count = 0;
    for c1 in -200i64..=200 {
        for c2 in -200i64..=200 {
            let y = c1 as f64 * b + c2 as f64 * b * b;
            if (c1, c2) == (0, 0) {
                continue;
            }
            let c0 = -(y.floor() as i64);
            let v = z * (c1 as f64) + z * z * (c2 as f64) + c0 as f64;
            if v.norm() <= bound {
                count += 1;
                assert!(rep.get([c0, c1, c2]).is_some(), "{c0} {c1} {c2}");
            }
        }
    }
    assert_eq!(count, rep.elements.len());
    assert!(rep.c1_range.1 < 200 && rep.c2_range.1 < 200);
}

#[test]
fn akiyama_needs_cubic() {
    let q = build(FamilySpec::q(2, 1, 1).unwrap()).unwrap();
    assert!(matches!(akiyama_set(&q, CAP), Err(FamilyError::WrongDegree { .. })));
}

#[test]
fn suff_examples() {
    let p7 = build(FamilySpec::p(7).unwrap()).unwrap();
    let r = check_suff(&p7, 500, CAP).unwrap();
    assert_eq!(r.verdict, SuffVerdict::SufficientF1Holds);
    assert!(r.consistent());
    let p6 = build(FamilySpec::p(6).unwrap()).unwrap();
    let r = check_suff(&p6, 500, CAP).unwrap();
    assert_eq!(r.verdict, SuffVerdict::Inconclusive);
    assert!(r.cross_check.is_none());
    assert!(scan_f1(&p6, 40, CAP).is_non_finite(36));
    let q = build(FamilySpec::q(2, 1, 1).unwrap()).unwrap();
    let r = check_suff(&q, 0, CAP).unwrap();
    assert_eq!(r.verdict, SuffVerdict::Inconclusive);
    assert_eq!(r.powers.len(), 2);
    assert!(r.powers.iter().any(|(_, _, k)| *k != OrbitKind::Finite));
}

#[test]
fn suff_rejects_infinite_one() {
    let b = crate::PisotNumber::make(&[1, -3, 1]).unwrap();
    assert_eq!(check_suff(&b, 10, CAP).unwrap_err(), FamilyError::InfiniteExpansionOfOne);
}

#[test]
fn suff_exactly_one_mod_three() {
    for n in 2..=30 {
        let base = build(FamilySpec::p(n).unwrap()).unwrap();
        let r = check_suff(&base, 0, DEFAULT_CAP).unwrap();
        assert_eq!(r.verdict == SuffVerdict::SufficientF1Holds, n % 3 == 1, "n={n}");
    }
}

#[test]
fn q_examples() {
    let r = q_family_checks(2, 1, 1, CAP).unwrap();
    assert!(r.all_hold(), "{:?}", r.checks);
    assert_eq!(r.one_minus_alpha.frac_pre, vec![1, 1, 1]);
    assert_eq!(r.one_minus_alpha.frac_period, vec![0, 0, 0, 1, 2]);
    let r = q_family_checks(3, 1, 2, CAP).unwrap();
    assert!(r.all_hold(), "{:?}", r.checks);
    assert_eq!(r.one_minus_alpha.frac_pre, vec![2, 2, 0]);
    assert_eq!(r.one_minus_alpha.frac_period, vec![0, 1, 1, 1, 2]);
    let r = q_family_checks(9, 4, 5, CAP).unwrap();
    assert!(r.all_hold(), "{:?}", r.checks);
    assert_eq!(r.one_minus_2alpha.unwrap().frac_pre, q_one_minus_2alpha_word(9, 4, 5));
    assert!(r.two_n_plus_1.unwrap().is_finite());
    // 2b+1-c = 0 but c > b+1: the word has the right value and is not greedy
    let r = q_family_checks(7, 2, 5, CAP).unwrap();
    assert!(!r.all_hold());
    let w = r.one_minus_2alpha.unwrap();
    assert_eq!(w.frac_pre, vec![6, 2, 0, 1, 0, 1, 6, 2, 5, 5]);
    assert_eq!(w.frac_period, vec![4, 4, 2, 3, 0]);
    assert!(!r.two_n_plus_1.unwrap().is_finite());
    assert!(q_family_checks(4, 1, 2, CAP).is_err());
}

#[test]
fn q_checks_to_12() {
    for n in 2..=12 {
        for b in 1..=n / 2 {
            let r = q_family_checks(n, b, n - b, CAP).unwrap();
            for c in &r.checks {
                let word_claim = c.claim == "[1-2alpha] finite word" || c.claim == "2n+1 in Fin";
                // the displayed word is admissible only when c = b + 1
                assert_eq!(c.holds, !word_claim || n == 2 * b + 1, "n={n} b={b}: {}", c.claim);
            }
        }
    }
}

#[test]
fn r_examples() {
    for (n, c, period) in [(3, 1, vec![2, 2, 0]), (4, 2, vec![3, 2, 1]), (2, 1, vec![1, 1, 0])] {
        let r = r_family_checks(n, c, CAP).unwrap();
        assert!(r.all_hold(), "{:?}", r.checks);
        assert!(is_rotation(&r.expansion_of_n.frac_period, &period));
    }
    assert!(matches!(r_family_checks(4, -1, CAP), Err(FamilyError::ConstraintViolation(_))));
}

#[test]
fn rotation_helper() {
    assert!(is_rotation(&[1, 2, 3], &[3, 1, 2]));
    assert!(!is_rotation(&[1, 2, 3], &[3, 2, 1]));
    assert!(is_rotation(&[], &[]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scan_agrees_with_expand(n in 2i64..9, k in 1i64..120) {
        let base = build(FamilySpec::p(n).unwrap()).unwrap();
        let r = scan_f1(&base, k, CAP);
        let direct = expand(&base.from_int(k), CAP).unwrap();
        prop_assert_eq!(r.is_non_finite(k), direct.kind == OrbitKind::EventuallyPeriodic);
    }

    #[test]
    fn spec_serde_round_trip(n in 2i64..30, b in 1i64..15) {
        prop_assume!(2 * b <= n);
        let s = FamilySpec::q(n, b, n - b).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<FamilySpec>(&j).unwrap(), s);
    }
}

