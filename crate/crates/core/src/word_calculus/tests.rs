use super::*;
use crate::beta_dynamics::{expand, is_admissible, DigitWord, OrbitKind, DEFAULT_CAP};
use proptest::prelude::*;

fn pn(n: i64) -> PisotNumber {
    PisotNumber::make(&[1, -(n + 1), n, -n]).unwrap()
}

fn val(b: &PisotNumber, d: &[i64]) -> FieldElement {
    value(&WeakWord::new(d.to_vec()), b)
}

fn canonical(b: &PisotNumber, d: &[i64]) -> bool {
    let n = b.floor_beta();
    d.iter().all(|&x| (0..=n).contains(&x)) && is_admissible(&DigitWord::finite(vec![], d.to_vec()), b)
}

fn check_unfolding(b: &PisotNumber, src: &[i64], unf: &Unfolding) {
    let whole = &value(&unf.prefix, b) + &value(&unf.suffix, b);
    assert_eq!(whole, val(b, src));
}

#[test]
fn zero_words_are_zero() {
    for n in 2..=12 {
        let b = pn(n);
        let z = zero_words(&b).unwrap();
        assert_eq!(z.z1, z1(n));
        assert_eq!(z.z2, z2(n));
        assert!(val(&b, &z.z1).is_zero());
        assert!(val(&b, &z.z2).is_zero());
    }
}

#[test]
fn infinite_expansion_of_one_has_no_second_zero_word() {
    let b = PisotNumber::make(&[1, -1, -1]).unwrap();
    assert!(zero_words(&b).is_ok());
    let b = PisotNumber::make(&[1, -3, 1]).unwrap();
    assert_eq!(zero_words(&b).unwrap_err(), WordError::InfiniteExpansionOfOne);
}

#[test]
fn positional_sum_example() {
    let w = WeakWord::new(vec![1, 1, -2, 2]);
    let r = positional_sum(&w, 2, &z1(2)).unwrap();
    assert_eq!(r.digits, vec![1, 0, 1, 0, 2]);
    assert_eq!(value(&r, &pn(2)), value(&w, &pn(2)));
    assert_eq!(positional_sum(&w, 0, &[1]).unwrap_err(), WordError::PositionOutOfRange(0));
}

#[test]
fn disjoint_sums_commute() {
    let w = WeakWord::new(vec![3, 1, 4, 1, 5]);
    let a = positional_sum(&positional_sum(&w, 1, &[1, 2]).unwrap(), 4, &[7, 7, 7]).unwrap();
    let c = positional_sum(&positional_sum(&w, 4, &[7, 7, 7]).unwrap(), 1, &[1, 2]).unwrap();
    assert_eq!(a, c);
}

#[test]
fn unfold_u_example() {
    let b = pn(4);
    let unf = unfold_u(4, 2, 1);
    assert_eq!(unf.prefix.digits, vec![1, 3, 2, 3, 0, 1]);
    assert_eq!(unf.suffix.digits, vec![2, 3, -8, 12]);
    assert_eq!(unf.suffix.offset, -6);
    check_unfolding(&b, &u(4, 2, 1), &unf);
}

#[test]
fn unfolding_identities_and_canonical_prefixes() {
    for n in 3..=12 {
        let b = pn(n);
        for k in 1..=n - 2 {
            for j in 1..k {
                let unf = unfold_u(n, k, j);
                assert_eq!(unf.prefix.digits, v(n, k, j));
                assert_eq!(unf.suffix.digits, u(n, k, j + 2));
                check_unfolding(&b, &u(n, k, j), &unf);
                assert!(canonical(&b, &v(n, k, j)), "v n={n} k={k} j={j}");
            }
            for j in 2..=k.max(2) {
                let unf = unfold_w(n, k, j);
                assert_eq!(unf.prefix.digits, t(n, k, j));
                assert_eq!(unf.suffix.digits, w(n, k, j + 2));
                check_unfolding(&b, &w(n, k, j), &unf);
                if j <= k - 2 {
                    assert!(canonical(&b, &t(n, k, j)), "t n={n} k={k} j={j}");
                }
            }
        }
    }
}

#[test]
fn terminal_rules_preserve_value() {
    for n in 3..=12 {
        let b = pn(n);
        for k in 1..=n - 2 {
            for rule in [Rule::TerminalU { k }, Rule::TerminalW { k }, Rule::EvenStart { k }, Rule::Carry { k }] {
                assert_eq!(val(&b, &rule.source(n)), val(&b, &rule.target(n)), "{rule:?} n={n}");
                let mut rw = Rewriter::new(n, rule.source(n));
                rw.apply(rule, 1).unwrap();
                let mut tgt = rule.target(n);
                while tgt.last() == Some(&0) {
                    tgt.pop();
                }
                assert_eq!(rw.word().digits, tgt, "{rule:?} n={n}");
            }
        }
        let terminal_w = Rule::TerminalW { k: 2 }.target(n);
        assert_eq!(terminal_w.len(), 11);
    }
}

#[test]
fn hat_words_unfold() {
    for n in 3..=10 {
        let b = pn(n);
        for k in -1..=n {
            for j in 0..=n {
                let unf = unfold_ww(n, k, j);
                check_unfolding(&b, &ww(n, k, j), &unf);
                if k == 1 {
                    assert_eq!(unf.prefix.digits, ww1_prefix(n, j));
                    assert_eq!(unf.suffix.digits, ww(n, 1, j + 3));
                    if j <= n - 3 {
                        assert!(canonical(&b, &unf.prefix.digits));
                    }
                } else {
                    assert_eq!(unf.prefix.digits, ww_prefix(n, k, j));
                    assert_eq!(unf.suffix.digits, ww(n, k, j + 2));
                    if k > 1 && j >= -1 && j + k <= n - 1 && j <= n - 2 {
                        assert!(canonical(&b, &unf.prefix.digits), "n={n} k={k} j={j}");
                    }
                }
            }
        }
    }
}

#[test]
fn hat_word_one_zero_is_alpha_squared() {
    for n in 2..=10 {
        let b = pn(n);
        let a = b.alpha();
        let a2 = &a * &a;
        assert_eq!(value(&WeakWord::at(ww(n, 1, 0), 0), &b), a2);
        assert_eq!(value(&WeakWord::at(vec![1, 0, n - n * n], 0), &b), a2);
    }
}

#[test]
fn hat_chain_cycles_when_three_divides_n() {
    for n in [3, 6, 9, 12] {
        let chain = ww_chain(n, 1).unwrap();
        let ChainEnd::Periodic { j, period } = &chain.end else { panic!("n={n}: {:?}", chain.end) };
        assert_eq!(*j, 0);
        let mut expected = Vec::new();
        for j in (0..n).step_by(3) {
            expected.extend(ww1_prefix(n, j));
        }
        expected.pop();
        assert_eq!(period, &expected);
        assert_eq!(period.len() as i64, 2 * n - 1);
        let b = pn(n);
        let r = expand(&b.from_int(n * n), DEFAULT_CAP).unwrap();
        assert_eq!(r.kind, OrbitKind::EventuallyPeriodic);
        let p = &r.word.frac_period;
        assert_eq!(p.len(), period.len());
        assert!((0..p.len()).any(|s| {
            let mut q = p.clone();
            q.rotate_left(s);
            &q == period
        }));
    }
}

#[test]
fn hat_chain_terminates_otherwise() {
    for n in (2..=13).filter(|n| n % 3 != 0) {
        let chain = ww_chain(n, 1).unwrap();
        assert_eq!(chain.end, ChainEnd::Finite, "n={n}");
        assert_eq!(value(&chain.word, &pn(n)), val(&pn(n), &ww(n, 1, 1)));
    }
}

#[test]
fn omega_identities() {
    for n in 2..=10 {
        let b = pn(n);
        for j in -3..=n {
            assert_eq!(omega(n, 0, -1, j), ww(n, 1, j));
            for k in -3..=n {
                assert_eq!(omega(n, 1, k, j - 1), nu(n, k, j));
            }
        }
        for l in -2..=2 {
            for k in -2..=n {
                for j in -2..=n {
                    assert_eq!(val(&b, &omega(n, l, k, j)), omega_value(&b, l, k, j));
                }
            }
        }
    }
}

#[test]
fn nu_step_preserves_value() {
    for n in 5..=12 {
        let b = pn(n);
        for j in 0..=n {
            let unf = unfold_nu0(n, j);
            check_unfolding(&b, &nu(n, 0, j), &unf);
            assert_eq!(unf.suffix.digits, nu(n, 0, j + 4));
        }
    }
}

#[test]
fn pipeline_agrees_with_expansion() {
    for n in 2..=10 {
        let b = pn(n);
        for big_n in 1..=n * (n - 1) {
            let p = pipeline(n, big_n).unwrap();
            let r = expand(&b.from_int(big_n), DEFAULT_CAP).unwrap();
            assert_eq!(r.kind, OrbitKind::Finite, "n={n} N={big_n}");
            assert!(p.frac.in_alphabet(n), "n={n} N={big_n}: {:?}", p.frac.digits);
            if big_n > 1 {
                assert_eq!(p.int_part, r.word.int_part, "n={n} N={big_n}");
                assert_eq!(p.frac.digits, r.word.frac_pre, "n={n} N={big_n}");
            }
            let total = &DigitWord::finite(p.int_part.clone(), vec![]).value(&b) + &value(&p.frac, &b);
            assert_eq!(total, b.from_int(big_n));
            for step in &p.trace {
                assert!(step.position >= 1);
            }
        }
    }
}

#[test]
fn one_minus_k_alpha_is_canonical() {
    for n in 2..=12 {
        let b = pn(n);
        for k in 1..=n - 2 {
            let rw = one_minus_k_alpha(n, k).unwrap();
            let word = rw.word();
            assert!(canonical(&b, &word.digits), "n={n} k={k}");
            assert_eq!(value(word, &b), b.one() - b.alpha().mul_int(k));
        }
        assert!(one_minus_k_alpha(n, n).is_err());
    }
}

#[test]
fn successor_cases_after_n_squared() {
    for n in 3..=12 {
        let b = pn(n);
        let w1 = WeakWord::new(ww(n, 1, 1));
        let s2 = successor_fractional(&b, &[n - 1, n], &w1).unwrap();
        assert_eq!(s2.case, SuccessorCase::A);
        assert_eq!(s2.int_part, vec![n, 0]);
        assert_eq!(s2.frac.digits, nu(n, 0, 2));
        let total = &DigitWord::finite(s2.int_part.clone(), vec![]).value(&b) + &value(&s2.frac, &b);
        assert_eq!(total, b.from_int(n * n + 2));

        let s3 = successor_fractional(&b, &s2.int_part, &s2.frac).unwrap();
        assert_eq!(s3.case, SuccessorCase::C);
        assert_eq!(s3.frac.digits, vec![n - 1, 3, -n - n * n, 3 * n]);
        assert_eq!(s3.frac.digits, nu(n, 1, 3));
        let total = &DigitWord::finite(s3.int_part.clone(), vec![]).value(&b) + &value(&s3.frac, &b);
        assert_eq!(total, b.from_int(n * n + 3));
    }
}

#[test]
fn successor_identity_case_keeps_word() {
    let n = 4;
    let b = pn(n);
    let w = WeakWord::new(vec![1]);
    let s = successor_fractional(&b, &[n, 1, 0, n - 1], &w).unwrap();
    assert_eq!(s.case, SuccessorCase::E);
    assert_eq!(s.frac, w);
    assert_eq!(s.int_part, vec![1, 0, 0, 0, 0]);
    let s = successor_fractional(&b, &[2, 1], &w).unwrap();
    assert_eq!(s.case, SuccessorCase::NoForbiddenWord);
    assert_eq!(s.int_part, vec![2, 2]);
}

#[test]
fn quartic_periods() {
    let q211 = PisotNumber::make(&[1, -2, 0, -1, -1]).unwrap();
    let x = WeakWord::new(vec![2, -1, 0, 1]);
    assert_eq!(value(&x, &q211), q211.one() - q211.alpha());
    let p = detect_periodic_suffix(&q211, &x).unwrap().unwrap();
    assert_eq!(p.prefix, vec![1, 1, 1]);
    assert_eq!(p.period, vec![0, 0, 0, 1, 2]);

    let q312 = PisotNumber::make(&[1, -3, 0, -1, -2]).unwrap();
    let y = WeakWord::new(vec![3, -1, -1, 2]);
    assert_eq!(value(&y, &q312), q312.one() - q312.alpha());
    let p = detect_periodic_suffix(&q312, &y).unwrap().unwrap();
    assert_eq!(p.prefix, vec![2, 2, 0]);
    assert_eq!(p.period, vec![0, 1, 1, 1, 2]);
    let r = expand(&(q312.one() - q312.alpha()), DEFAULT_CAP).unwrap();
    assert_eq!(r.word.frac_pre, p.prefix);
    assert_eq!(r.word.frac_period, p.period);
}

#[test]
fn finite_words_have_no_period() {
    let b = pn(3);
    assert!(detect_periodic_suffix(&b, &WeakWord::new(vec![1, 0, 2])).unwrap().is_none());
    assert!(detect_periodic_suffix(&b, &WeakWord::new(vec![1, 4, -3, 3])).unwrap().is_none());
}

#[test]
fn cycle_word_lengths() {
    for n in 3..=12 {
        for k in (1..n - 1).step_by(2) {
            for j in (1..=n - k).step_by(2) {
                let w = periodic_word_wkj(n, k, j).unwrap();
                assert_eq!(w.len() % 6, 5, "n={n} k={k} j={j}");
                assert_eq!(w.len() as i64, 3 * (k + j - 2) + 5);
                assert!(w.in_alphabet(n));
            }
        }
    }
    assert!(matches!(periodic_word_wkj(5, 2, 1), Err(WordError::RangeError(_))));
    assert!(matches!(periodic_word_wkj(5, 1, 2), Err(WordError::RangeError(_))));
    assert_eq!(periodic_word_wkj(5, 1, 1).unwrap().digits, vec![4, 1, 2, 0, 3]);
}

#[test]
fn trace_serializes() {
    let rw = one_minus_k_alpha(5, 3).unwrap();
    let s = serde_json::to_string(rw.trace()).unwrap();
    assert!(s.contains("StepU"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scripted_rules_preserve_value(n in 3i64..13, k in -3i64..13, j in -3i64..13) {
        let b = pn(n);
        for rule in [
            Rule::StepU { k, j },
            Rule::StepW { k, j },
            Rule::StepWw { k, j },
            Rule::StepWw1 { j },
            Rule::StepNu0 { j },
            Rule::TerminalU { k },
            Rule::TerminalW { k },
            Rule::EvenStart { k },
        ] {
            let mut rw = Rewriter::new(n, rule.source(n));
            rw.apply(rule, 1).unwrap();
            prop_assert_eq!(value(rw.word(), &b), val(&b, &rule.source(n)));
            prop_assert_eq!(val(&b, &rule.target(n)), val(&b, &rule.source(n)));
        }
    }

    #[test]
    fn adding_zero_words_keeps_value(
        n in 2i64..10,
        d in prop::collection::vec(-20i64..20, 1..8),
        pos in 1i64..10,
        m in -5i64..5,
        which in 0usize..2,
    ) {
        let b = pn(n);
        let z = if which == 0 { z1(n) } else { z2(n) };
        let w0 = WeakWord::new(d);
        let w1 = positional_sum(&w0, pos, &z.iter().map(|x| x * m).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(value(&w0, &b), value(&w1, &b));
    }
}
