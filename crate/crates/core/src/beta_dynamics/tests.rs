use super::*;
use crate::exact_field::{FieldElement, PisotNumber};
use proptest::prelude::*;
use std::cmp::Ordering;

fn pn(n: i64) -> PisotNumber {
    PisotNumber::make(&[1, -(n + 1), n, -n]).unwrap()
}

fn q211() -> PisotNumber {
    PisotNumber::make(&[1, -2, 0, -1, -1]).unwrap()
}

#[test]
fn step_from_inverse_beta_lands_on_zero() {
    let b = pn(2);
    let (d, next) = t_beta_step(&b.inv_beta()).unwrap();
    assert_eq!(d, 1);
    assert!(next.is_zero());
}

#[test]
fn steps_from_alpha() {
    for n in 2..9 {
        let b = pn(n);
        let mut x = b.alpha();
        let mut digits = Vec::new();
        for _ in 0..5 {
            let (d, next) = t_beta_step(&x).unwrap();
            digits.push(d);
            x = next;
        }
        assert_eq!(digits, vec![1, 0, n, 0, 0]);
    }
}

#[test]
fn step_rejects_states_outside_unit_interval() {
    let b = pn(3);
    assert_eq!(t_beta_step(&b.one()).unwrap_err(), BetaError::OutOfDomain);
    assert_eq!(t_beta_step(&b.from_int(-1).div_int(2)).unwrap_err(), BetaError::OutOfDomain);
}

#[test]
fn one_expands_to_n10n() {
    for n in 2..=12 {
        let b = pn(n);
        let r = expand(&b.one(), DEFAULT_CAP).unwrap();
        assert_eq!(r.kind, OrbitKind::Finite);
        assert!(r.word.int_part.is_empty());
        assert_eq!(r.word.frac_pre, vec![n, 1, 0, n]);
        assert_eq!(expansion_of_one(&b).frac_pre, vec![n, 1, 0, n]);
    }
    assert_eq!(render_digits(&expansion_of_one(&pn(2)).frac_pre), "2102");
    assert_eq!(render_digits(&expansion_of_one(&pn(7)).frac_pre), "7107");
    assert_eq!(render_digits(&expansion_of_one(&q211()).frac_pre), "2011");
}

#[test]
fn six_is_not_finite_for_p2() {
    let b = pn(2);
    let r = expand(&b.from_int(6), DEFAULT_CAP).unwrap();
    assert_eq!(r.kind, OrbitKind::EventuallyPeriodic);
    assert_eq!(r.word.value(&b), b.from_int(6));
}

#[test]
fn three_is_not_finite_for_q211() {
    let b = q211();
    let r = expand(&b.from_int(3), DEFAULT_CAP).unwrap();
    assert_eq!(r.kind, OrbitKind::EventuallyPeriodic);
    assert_eq!(r.word.value(&b), b.from_int(3));
}

#[test]
fn quintic_family_integer_n_has_three_letter_period() {
    for n in 2..=6i64 {
        for c in 1..n {
            let b = PisotNumber::dominant_root(&[1, -n, 1, -n, c, -c]).unwrap();
            let r = expand(&b.from_int(n), DEFAULT_CAP).unwrap();
            assert_eq!(r.kind, OrbitKind::EventuallyPeriodic, "n={n} c={c}");
            assert_eq!(r.word.frac_period, vec![n - c, c - 1, n - 1], "n={n} c={c}");
            assert_eq!(r.word.value(&b), b.from_int(n));
        }
    }
}

#[test]
fn fin_membership_of_squares() {
    assert!(!is_fin(&pn(3).from_int(9), DEFAULT_CAP).unwrap().0);
    assert!(is_fin(&pn(4).from_int(16), DEFAULT_CAP).unwrap().0);
    let (f, r) = is_fin(&pn(5).zero(), DEFAULT_CAP).unwrap();
    assert!(f);
    assert_eq!(r.word, DigitWord::default().with_bound(5));
    assert_eq!(expand(&pn(2).from_int(-1), 10).unwrap_err(), BetaError::NegativeInput);
}

#[test]
fn zero_renders_as_zero() {
    assert_eq!(expand(&pn(2).zero(), 10).unwrap().word.to_string(), "0");
}

#[test]
fn admissibility_examples() {
    let b = pn(2);
    let parry = ParryBound::new(&b);
    assert_eq!(parry.period, vec![2, 1, 0, 1]);
    assert!(!parry.admits(&DigitWord::finite(vec![], vec![2, 1, 0, 2])));
    assert!(parry.admits(&DigitWord::finite(vec![], vec![1, 0, 1, 0, 2])));
    assert!(parry.admits(&DigitWord::finite(vec![], vec![0, 0, 0])));
    assert!(!parry.admits(&DigitWord::finite(vec![], vec![1, -1])));
    assert!(is_admissible(&DigitWord::finite(vec![2, 1, 0, 1], vec![]), &b));
}

#[test]
fn classes_of_expansions_of_one() {
    use std::collections::BTreeSet;
    for n in 2..10 {
        assert_eq!(classify_one_expansion(&pn(n)).unwrap(), BTreeSet::from([OneClass::CE]));
    }
    let trib = PisotNumber::make(&[1, -1, -1, -1]).unwrap();
    assert_eq!(classify_one_expansion(&trib).unwrap(), BTreeSet::from([OneClass::Brauer]));
    assert_eq!(classify_one_expansion(&q211()).unwrap(), BTreeSet::from([OneClass::CE]));
    assert!(classify_digits(&[5, 1, 1]).contains(&OneClass::Perron));
    assert!(classify_digits(&[3, 1, 1]).contains(&OneClass::Hollander));
}

#[test]
fn oracle_matches_plain_expansion_on_integers() {
    for n in [2, 3, 5, 6] {
        let b = pn(n);
        let oracle = ExpansionOracle::new(&b, DEFAULT_CAP);
        for k in 1..=60 {
            let x = b.from_int(k);
            let a = expand(&x, DEFAULT_CAP).unwrap();
            let o = oracle.expand(&x).unwrap();
            assert_eq!(a.kind, o.kind, "n={n} k={k}");
            assert_eq!(a.word, o.word, "n={n} k={k}");
        }
    }
}

#[test]
fn integer_split_matches_expansion() {
    let b = pn(4);
    for k in 2..40 {
        let x = b.from_int(k);
        let (int_part, frac) = integer_split(&x);
        let r = expand(&x, DEFAULT_CAP).unwrap();
        assert_eq!(int_part, r.word.int_part);
        let mut rest = r.word.clone();
        rest.int_part.clear();
        assert_eq!(rest.value(&b), frac);
    }
}

/// An element of `[0, β³)`: a fractional part shifted by an integer below `n³`.
fn small_element(b: &PisotNumber, c: [i64; 3], den: i64, k: i64) -> FieldElement {
    let y = b.element(&c).div_int(den);
    let t = y.add_int(-y.floor_i64());
    let n = b.floor_beta();
    t.add_int(k.rem_euclid(n * n * n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn reconstruction_greediness_and_admissibility(
        n in 2i64..9,
        c in prop::array::uniform3(-40i64..40),
        den in 1i64..4,
        k in 0i64..1000,
    ) {
        let b = pn(n);
        let x = small_element(&b, c, den, k);
        prop_assert!(x.cmp_value(&b.beta().pow(3)) == Ordering::Less);
        let r = expand(&x, DEFAULT_CAP).unwrap();
        prop_assert_ne!(r.kind, OrbitKind::Truncated);
        prop_assert_eq!(r.word.value(&b), x.clone());
        prop_assert!(r.word.all_digits_in(0, n));
        // powers of β use the non-greedy convention for y = 1
        let (_, y) = super::expand::scale_to_unit(&x);
        if y != b.one() {
            prop_assert!(ParryBound::new(&b).admits(&r.word));
        }
        let again = expand(&x, DEFAULT_CAP).unwrap();
        prop_assert_eq!(again, r.clone());
        if !r.word.frac_period.is_empty() {
            let p = &r.word.frac_period;
            let primitive = (1..p.len()).all(|d| p.len() % d != 0 || p.rotate_left_copy(d) != *p);
            prop_assert!(primitive);
            if let (Some(a), Some(z)) = (r.word.frac_pre.last(), p.last()) {
                prop_assert_ne!(a, z);
            }
        }
    }

    #[test]
    fn every_state_stays_in_the_unit_interval(n in 2i64..9, c in prop::array::uniform3(-30i64..30)) {
        let b = pn(n);
        let mut x = b.element(&c);
        let fl = x.floor_i64();
        x = x.add_int(-fl);
        for _ in 0..40 {
            let (d, next) = t_beta_step(&x).unwrap();
            prop_assert!((0..=n).contains(&d));
            prop_assert_eq!(b.beta().try_mul(&x).unwrap().floor_i64(), d);
            x = next;
        }
    }
}

trait RotateCopy {
    fn rotate_left_copy(&self, k: usize) -> Vec<i64>;
}

impl RotateCopy for Vec<i64> {
    fn rotate_left_copy(&self, k: usize) -> Vec<i64> {
        let mut v = self.clone();
        v.rotate_left(k);
        v
    }
}
