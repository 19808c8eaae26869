//! The reproduction suite: twelve checks, each run against exact arithmetic.

use betafin::beta_dynamics::{expand, expansion_of_one, fractional_part, is_admissible, DigitWord, OrbitKind};
use betafin::families_finiteness::{
    akiyama_set, build, check_suff, is_rotation, q_family_checks, r_family_checks, scan_f1, FamilySpec,
    SuffVerdict,
};
use betafin::lattice_tau::{invariant_ball_census, Lattice, LatticePoint, OrbitKindTau};
use betafin::word_calculus::{
    periodic_word_wkj, t, u, unfold_u, unfold_w, unfold_ww, v, value, w, ww, ww1_prefix, ww_prefix, Unfolding, WeakWord,
};
use betafin::{FieldElement, PisotNumber};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub key: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub struct Criterion {
    pub id: u8,
    pub key: &'static str,
    pub run: fn(usize) -> (bool, String),
}

pub const CRITERIA: [Criterion; 12] = [
    Criterion { id: 1, key: "expansion-of-one", run: c1_expansion_of_one },
    Criterion { id: 2, key: "counterexamples", run: c2_counterexamples },
    Criterion { id: 3, key: "small-integers-finite", run: c3_small_integers },
    Criterion { id: 4, key: "square-residue-law", run: c4_square_law },
    Criterion { id: 5, key: "gaps", run: c5_gaps },
    Criterion { id: 6, key: "n2-plus-2", run: c6_n2_plus_2 },
    Criterion { id: 7, key: "unfolding-identities", run: c7_unfolding_identities },
    Criterion { id: 8, key: "conjugacy", run: c8_conjugacy },
    Criterion { id: 9, key: "lattice-census", run: c9_census },
    Criterion { id: 10, key: "sufficient-condition", run: c10_sufficient },
    Criterion { id: 11, key: "akiyama-set", run: c11_akiyama },
    Criterion { id: 12, key: "q-positive", run: c12_q_positive },
];

/// Runs the selected criteria (all when `only` is empty) in id order.
pub fn run_suite(only: &[u8], cap: usize) -> Vec<Outcome> {
    CRITERIA
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.id))
        .map(|c| {
            let (pass, detail) = (c.run)(cap);
            Outcome { id: c.id, key: c.key, pass, detail }
        })
        .collect()
}

pub fn render_line(o: &Outcome) -> String {
    format!("criterion {:>2} {:<22} {}  {}", o.id, o.key, if o.pass { "PASS" } else { "FAIL" }, o.detail)
}

fn p(n: i64) -> PisotNumber {
    build(FamilySpec::P { n }).expect("p_n is Pisot")
}

fn q(n: i64, b: i64, c: i64) -> PisotNumber {
    build(FamilySpec::Q { n, b, c }).expect("q is Pisot")
}

fn failures(list: Vec<String>, ok: &str) -> (bool, String) {
    if list.is_empty() {
        (true, ok.to_string())
    } else {
        let n = list.len();
        let head: Vec<String> = list.into_iter().take(4).collect();
        (false, format!("{n} failures: {}", head.join("; ")))
    }
}

fn c1_expansion_of_one(_cap: usize) -> (bool, String) {
    let mut bad = Vec::new();
    for n in 2..=30 {
        let one = expansion_of_one(&p(n));
        if !one.is_finite() || one.prefix() != vec![n, 1, 0, n] {
            bad.push(format!("p{n}: {}", one.render_frac()));
        }
    }
    let one = expansion_of_one(&q(2, 1, 1));
    if !one.is_finite() || one.prefix() != vec![2, 0, 1, 1] {
        bad.push(format!("q211: {}", one.render_frac()));
    }
    failures(bad, "p_n gives n10n for n=2..30, q211 gives 2011")
}

fn greedy(x: &FieldElement, cap: usize) -> DigitWord {
    expand(x, cap).expect("nonnegative").word
}

fn c2_counterexamples(cap: usize) -> (bool, String) {
    let mut bad = Vec::new();
    let six = expand(&p(2).from_int(6), cap).unwrap();
    if six.kind != OrbitKind::EventuallyPeriodic {
        bad.push("p2: 6 not eventually periodic".to_string());
    }
    let q211 = q(2, 1, 1);
    if expand(&q211.from_int(3), cap).unwrap().kind != OrbitKind::EventuallyPeriodic {
        bad.push("q211: 3 not eventually periodic".to_string());
    }
    for (b, want_pre, want_per) in [
        (q211.clone(), vec![1, 1, 1], vec![0, 0, 0, 1, 2]),
        (q(3, 1, 2), vec![2, 2, 0], vec![0, 1, 1, 1, 2]),
    ] {
        let w = greedy(&(b.one() - b.alpha()), cap);
        if w.frac_pre != want_pre || w.frac_period != want_per {
            bad.push(format!("{:?}: 1-alpha = {}", b.coeffs_high_first(), w.render_frac()));
        }
    }
    let pairs: Vec<(i64, i64)> = (2..=10).flat_map(|n| (1..n).map(move |c| (n, c))).collect();
    let r_bad: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(n, c)| {
            let r = r_family_checks(n, c, cap).ok()?;
            (!r.all_hold()).then(|| format!("r{{{n},{c}}}: {}", r.expansion_of_n.render_frac()))
        })
        .collect();
    bad.extend(r_bad);
    failures(bad, "p2: 6, q211: 3 periodic; q 1-alpha tails exact; r n<=10 periods are rotations of (n-1)(n-c)(c-1)")
}

fn c3_small_integers(cap: usize) -> (bool, String) {
    let bad: Vec<String> = (2..=10)
        .into_par_iter()
        .flat_map(|n| {
            let r = scan_f1(&p(n), n * (n - 1), cap);
            r.non_finite.iter().map(|e| format!("p{n}: {}", e.n)).chain(r.truncated.iter().map(|k| format!("p{n}: {k} truncated"))).collect::<Vec<_>>()
        })
        .collect();
    failures(bad, "every k <= n(n-1) finite for n=2..10")
}

/// `(0120(n-3)(n-3) 0450(n-6)(n-6) ... 0(n-2)(n-1)00)`, the last block one letter short.
pub fn displayed_square_period(n: i64) -> Vec<i64> {
    let mut word = Vec::new();
    let mut i = 0;
    while 3 * i + 2 <= n - 1 {
        word.extend([0, 3 * i + 1, 3 * i + 2, 0, n - 3 * i - 3, n - 3 * i - 3]);
        i += 1;
    }
    word.pop();
    word
}

fn c4_square_law(cap: usize) -> (bool, String) {
    let mut bad: Vec<String> = (2..=30)
        .into_par_iter()
        .filter_map(|n| {
            let fin = expand(&p(n).from_int(n * n), cap).unwrap().is_finite();
            (fin != (n % 3 != 0)).then(|| format!("n={n}: n^2 finite={fin}"))
        })
        .collect();
    for n in [3, 6, 9, 12] {
        let o = expand(&p(n).from_int(n * n), cap).unwrap();
        if !is_rotation(&o.word.frac_period, &displayed_square_period(n)) {
            bad.push(format!("n={n}: period {:?}", o.word.frac_period));
        }
    }
    failures(bad, "n^2 in Fin iff n mod 3 != 0 for n=2..30; periods for 3,6,9,12 match")
}

fn fin(b: &PisotNumber, k: i64, cap: usize) -> bool {
    expand(&b.from_int(k), cap).unwrap().is_finite()
}

fn c5_gaps(cap: usize) -> (bool, String) {
    let mut bad = Vec::new();
    for (n, out, inn) in [(6, 36, 38), (9, 81, 83)] {
        let b = p(n);
        if fin(&b, out, cap) || !fin(&b, inn, cap) {
            bad.push(format!("n={n}: {out} finite={}, {inn} finite={}", fin(&b, out, cap), fin(&b, inn, cap)));
        }
    }
    failures(bad, "n=6: 36 out, 38 in; n=9: 81 out, 83 in")
}

fn c6_n2_plus_2(cap: usize) -> (bool, String) {
    let mut bad = Vec::new();
    for (n, k, want) in [(5, 27, false), (8, 66, false), (11, 123, true), (11, 146, false)] {
        if fin(&p(n), k, cap) != want {
            bad.push(format!("n={n}: {k} finite={}", !want));
        }
    }
    failures(bad, "27 (n=5), 66 (n=8), 146 (n=11) not finite; 123 (n=11) finite")
}

fn canonical(b: &PisotNumber, d: &[i64]) -> bool {
    let n = b.floor_beta();
    d.iter().all(|&x| (0..=n).contains(&x)) && is_admissible(&DigitWord::finite(vec![], d.to_vec()), b)
}

fn keeps_value(b: &PisotNumber, src: &[i64], unf: &Unfolding) -> bool {
    &value(&unf.prefix, b) + &value(&unf.suffix, b) == value(&WeakWord::new(src.to_vec()), b)
}

fn c7_unfolding_identities(_cap: usize) -> (bool, String) {
    let bad: Vec<String> = (3..=12i64)
        .into_par_iter()
        .flat_map(|n| {
            let b = p(n);
            let mut bad = Vec::new();
            let mut note = |ok: bool, what: String| {
                if !ok {
                    bad.push(what)
                }
            };
            for k in 1..=n - 2 {
                for j in 1..k {
                    let unf = unfold_u(n, k, j);
                    note(keeps_value(&b, &u(n, k, j), &unf), format!("u n={n} k={k} j={j} value"));
                    note(unf.prefix.digits == v(n, k, j) && unf.suffix.digits == u(n, k, j + 2), format!("u n={n} k={k} j={j} shape"));
                    note(canonical(&b, &unf.prefix.digits), format!("u n={n} k={k} j={j} canonical"));
                }
                for j in 2..=k.max(2) {
                    let unf = unfold_w(n, k, j);
                    note(keeps_value(&b, &w(n, k, j), &unf), format!("w n={n} k={k} j={j} value"));
                    note(unf.prefix.digits == t(n, k, j) && unf.suffix.digits == w(n, k, j + 2), format!("w n={n} k={k} j={j} shape"));
                    if j <= k - 2 {
                        note(canonical(&b, &unf.prefix.digits), format!("w n={n} k={k} j={j} canonical"));
                    }
                }
            }
            for k in -1..=n {
                for j in 0..=n {
                    let unf = unfold_ww(n, k, j);
                    note(keeps_value(&b, &ww(n, k, j), &unf), format!("ww n={n} k={k} j={j} value"));
                    if k == 1 {
                        note(unf.prefix.digits == ww1_prefix(n, j), format!("ww n={n} k=1 j={j} shape"));
                        if j <= n - 3 {
                            note(canonical(&b, &unf.prefix.digits), format!("ww n={n} k=1 j={j} canonical"));
                        }
                    } else {
                        note(unf.prefix.digits == ww_prefix(n, k, j), format!("ww n={n} k={k} j={j} shape"));
                        if k > 1 && j + k <= n - 1 && j <= n - 2 {
                            note(canonical(&b, &unf.prefix.digits), format!("ww n={n} k={k} j={j} canonical"));
                        }
                    }
                }
            }
            bad
        })
        .collect();
    failures(bad, "unfold_u, unfold_w, unfold_ww keep value and give canonical prefixes for n <= 12")
}

fn c8_conjugacy(_cap: usize) -> (bool, String) {
    let bad: Vec<String> = (2..=10i64)
        .into_par_iter()
        .flat_map(|n| {
            let t = Lattice::new(n).expect("p_n");
            let b = t.base().clone();
            let beta = b.beta();
            let n_over_beta = b.from_int(n) * b.inv_beta();
            let mut bad = Vec::new();
            let origin = LatticePoint::ORIGIN;
            if t.tau_with_letter(LatticePoint::new(1, 0, -1)).1 != origin {
                bad.push(format!("n={n}: tau(1,0,-1) is not the origin"));
            }
            for p in t.ball(20) {
                let fp = t.f_value(p);
                let (d, q) = t.tau_with_letter(p);
                let (d2, y) = betafin::beta_dynamics::t_beta_step(&fp).expect("f maps U into [0,1)");
                if d != d2 || t.f_value(q) != y {
                    bad.push(format!("n={n} p={p}: f(tau p) != T(f p)"));
                }
                if t.f_value(t.apply_g(p)) != &beta * &fp || t.f_value(t.apply_h(p)) != &n_over_beta * &fp {
                    bad.push(format!("n={n} p={p}: G/H eigen relation"));
                }
                if !p.is_origin() {
                    match t.preimage(p) {
                        Ok((v, s)) if t.tau_with_letter(v) == (s, p) => {}
                        other => bad.push(format!("n={n} p={p}: preimage {other:?}")),
                    }
                }
            }
            bad
        })
        .collect();
    failures(bad, "f(tau p) = T(f p), f G = beta f, f H = (n/beta) f on B_20, n=2..10; preimages round-trip")
}

fn c9_census(_cap: usize) -> (bool, String) {
    let results: Vec<(i64, Vec<String>)> = (4..=10i64)
        .into_par_iter()
        .map(|n| {
            let t = Lattice::new(n).expect("p_n");
            let mut bad = Vec::new();
            let c = invariant_ball_census(&t, 30, betafin::lattice_tau::DEFAULT_ORBIT_CAP);
            for cy in c.cycles.iter().filter(|cy| cy.radius() > n) {
                bad.push(format!("n={n}: {}-cycle through {} leaves B_n", cy.len(), cy.points[0]));
            }
            for k in (1..n - 1).step_by(2) {
                for j in (1..=n - k).step_by(2) {
                    let o = t.orbit(LatticePoint::new(1, k, k + j - 1), 1_000_000).expect("in U");
                    let word = periodic_word_wkj(n, k, j).map(|w| w.digits);
                    let ok = matches!(o.kind, OrbitKindTau::Periodic { preperiod: 0, .. })
                        && word.as_ref().is_ok_and(|w| *w == o.digits && w.len() % 6 == 5);
                    if !ok {
                        bad.push(format!("n={n}: (1,{k},{}) not a w({k},{j}) cycle", k + j - 1));
                    }
                }
            }
            if n % 3 == 1 {
                let o = t.orbit(LatticePoint::new(1, n - 1, -1), 1_000_000).expect("in U");
                if !o.is_finite() || o.digits.len() < 3 || o.digits[o.digits.len() - 3..] != [1, 0, n] {
                    bad.push(format!("n={n}: (1,n-1,-1) orbit not finite with suffix 1,0,n"));
                }
            }
            (n, bad)
        })
        .collect();
    failures(results.into_iter().flat_map(|(_, b)| b).collect(), "cycles in B_n, odd cycles with words of length 5 mod 6, (1,n-1,-1) finite")
}

fn c10_sufficient(cap: usize) -> (bool, String) {
    let bad: Vec<String> = (2..=22i64)
        .into_par_iter()
        .filter_map(|n| {
            let b = p(n);
            if n % 3 == 1 {
                let r = check_suff(&b, 10_000, cap).expect("[1] finite");
                (r.verdict != SuffVerdict::SufficientF1Holds || !r.consistent())
                    .then(|| format!("n={n}: verdict {:?}, consistent {}", r.verdict, r.consistent()))
            } else {
                let bound = n * n + 2 * n + 3;
                let r = scan_f1(&b, bound, cap);
                r.first_non_finite().is_none().then(|| format!("n={n}: nothing non-finite up to {bound}"))
            }
        })
        .collect();
    failures(bad, "n = 1 mod 3 <= 22: sufficient and no counterexample to 10^4; others non-finite <= n^2+2n+3")
}

fn c11_akiyama(cap: usize) -> (bool, String) {
    let bad: Vec<String> = (2..=10i64)
        .into_par_iter()
        .filter_map(|n| {
            let b = p(n);
            let s = fractional_part(&b.element(&[2, n]));
            let shown = value(&WeakWord::new(vec![n - 1, 1, 1, n, n]), &b);
            let coords: Vec<i64> = s.num().iter().map(|c| i64::try_from(c).expect("small")).collect();
            let mut key = [0i64; 3];
            key[..coords.len()].copy_from_slice(&coords);
            let rep = match akiyama_set(&b, cap) {
                Ok(r) => r,
                Err(e) => return Some(format!("n={n}: {e}")),
            };
            let periodic = expand(&s, cap).unwrap().kind == OrbitKind::EventuallyPeriodic;
            let listed = rep.get(key).is_some_and(|e| !e.finite);
            (shown != s || !periodic || !listed || rep.f_holds)
                .then(|| format!("n={n}: word value {}, periodic {periodic}, listed {listed}, F {}", shown == s, rep.f_holds))
        })
        .collect();
    failures(bad, "the class of n beta + 2 (word (n-1)11nn) is in C and periodic for n=2..10, so F fails")
}

fn c12_q_positive(cap: usize) -> (bool, String) {
    let triples: Vec<(i64, i64, i64)> = (2..=12i64)
        .flat_map(|n| (1..=n / 2).map(move |b| (n, b, n - b)))
        .filter(|&(n, b, c)| n >= 2 * b + 1 && 2 * b + 1 - c >= 0)
        .collect();
    let bad: Vec<String> = triples
        .par_iter()
        .filter_map(|&(n, b, c)| {
            let r = q_family_checks(n, b, c, cap).expect("valid q");
            let two = r.two_n_plus_1.as_ref().is_some_and(|w| w.is_finite());
            let word = r.checks.iter().any(|ch| ch.claim == "[1-2alpha] finite word" && ch.holds);
            (!two || !word).then(|| {
                let got = r.one_minus_2alpha.as_ref().map(|w| w.render_frac()).unwrap_or_default();
                format!("q{{{n},{b},{c}}}: 2n+1 finite {two}, [1-2alpha] = {got}")
            })
        })
        .collect();
    let total = triples.len();
    let (ok, detail) = failures(bad, "");
    if ok {
        (true, format!("2n+1 in Fin and [1-2alpha] as displayed for all {total} triples"))
    } else {
        (false, format!("of {total} triples, {detail}"))
    }
}
