use super::{all_hold, build, build_dominant, scan_f1, Check, F1Report, FamilyError, FamilySpec};
use crate::beta_dynamics::{expand, expansion_of_one, minimize, DigitWord, ExpansionOracle, OrbitKind};
use crate::exact_field::{FieldElement, PisotNumber};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SuffVerdict {
    SufficientF1Holds,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuffReport {
    pub verdict: SuffVerdict,
    /// `(i, [α^i]_β)` for `2 <= i <= d-1`.
    pub powers: Vec<(u32, DigitWord, OrbitKind)>,
    /// Scan run when the verdict holds; it must find no counterexample.
    pub cross_check: Option<F1Report>,
}

impl SuffReport {
    pub fn consistent(&self) -> bool {
        self.cross_check.as_ref().map_or(true, |r| r.no_counterexample())
    }
}

/// Tests `α^2, ..., α^{d-1} ∈ Fin(β)`, which together with a finite `[1]_β`
/// gives `ℕ ⊂ Fin(β)`. A failure is inconclusive.
pub fn check_suff(base: &PisotNumber, scan_to: i64, cap: usize) -> Result<SuffReport, FamilyError> {
    if !expansion_of_one(base).is_finite() {
        return Err(FamilyError::InfiniteExpansionOfOne);
    }
    let alpha = base.alpha();
    let mut powers = Vec::new();
    let mut holds = true;
    for i in 2..base.degree() as u32 {
        let o = expand(&alpha.pow(i as i64), cap)?;
        holds &= o.kind == OrbitKind::Finite;
        powers.push((i, o.word, o.kind));
    }
    let verdict = if holds { SuffVerdict::SufficientF1Holds } else { SuffVerdict::Inconclusive };
    let cross_check = (holds && scan_to >= 1).then(|| scan_f1(base, scan_to, cap));
    Ok(SuffReport { verdict, powers, cross_check })
}

/// Equality of two ultimately periodic words.
fn same_infinite_word(a: (&[i64], &[i64]), b: (&[i64], &[i64])) -> bool {
    minimize(a.0.to_vec(), a.1.to_vec()) == minimize(b.0.to_vec(), b.1.to_vec())
}

fn frac_of(x: &FieldElement, cap: usize) -> Result<DigitWord, FamilyError> {
    Ok(expand(x, cap)?.word)
}

/// Greedy digits of `x ∈ [0, 1)`, with `β^{-k}` written as a single digit.
fn greedy_frac(x: &FieldElement, cap: usize) -> DigitWord {
    let (_, pre, per) = ExpansionOracle::new(x.base(), cap).classify_fraction(x);
    DigitWord::periodic(Vec::new(), pre, per)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QReport {
    pub spec: FamilySpec,
    pub one: DigitWord,
    pub one_minus_alpha: DigitWord,
    pub n_plus_1: DigitWord,
    /// Present when `n >= 2b+1` and `2b+1-c >= 0`.
    pub one_minus_2alpha: Option<DigitWord>,
    pub two_n_plus_1: Option<DigitWord>,
    pub checks: Vec<Check>,
}

impl QReport {
    pub fn all_hold(&self) -> bool {
        all_hold(&self.checks)
    }
}

/// The `1 - 2α` word expected under `n >= 2b+1`, `2b+1 >= c`.
pub fn q_one_minus_2alpha_word(n: i64, b: i64, c: i64) -> Vec<i64> {
    vec![n - 1, n - (2 * b + 1), 2 * b + 1 - c, 0, n, c - b - 1, n - c, 0, b, c]
}

/// The periodic `1 - α` word for `n >= 4`, `2b+1 < n`, `c >= b+2`, as
/// `(preperiod, period)`.
pub fn q_one_minus_alpha_word(n: i64, b: i64, c: i64) -> (Vec<i64>, Vec<i64>) {
    (
        vec![n - 1, c - 1, 2 * b + 1, 1, 0, c - (b + 2), n - 1, n - c, 2 * b + 1, c],
        vec![c - 1, c - 1, b, b + 1, 0],
    )
}

pub fn q_family_checks(n: i64, b: i64, c: i64, cap: usize) -> Result<QReport, FamilyError> {
    let spec = FamilySpec::q(n, b, c)?;
    let base = build(spec)?;
    let one = expansion_of_one(&base);
    let alpha = base.alpha();
    let mut checks = vec![Check::new("[1] = n0bc", one.is_finite() && one.prefix() == vec![n, 0, b, c])];

    let oma = greedy_frac(&(base.one() - alpha.clone()), cap);
    if n >= 4 && 2 * b + 1 < n && c >= b + 2 {
        let (pre, per) = q_one_minus_alpha_word(n, b, c);
        let ok = oma.int_part.is_empty() && same_infinite_word((&oma.frac_pre, &oma.frac_period), (&pre, &per));
        checks.push(Check::new("1-alpha periodic word", ok));
    }

    let n_plus_1 = frac_of(&base.from_int(n + 1), cap)?;
    checks.push(Check::new("n+1 not in Fin", !n_plus_1.is_finite()));

    let (mut one_minus_2alpha, mut two_n_plus_1) = (None, None);
    if n >= 2 * b + 1 && 2 * b + 1 - c >= 0 {
        let x = base.one() - alpha.mul_int(2);
        let shown = DigitWord::finite(Vec::new(), q_one_minus_2alpha_word(n, b, c));
        checks.push(Check::new("displayed 1-2alpha word has value 1-2alpha", shown.value(&base) == x));
        let w = greedy_frac(&x, cap);
        let ok = w.is_finite() && w.int_part.is_empty() && w.frac_pre == q_one_minus_2alpha_word(n, b, c);
        checks.push(Check::new("[1-2alpha] finite word", ok));
        let t = frac_of(&base.from_int(2 * n + 1), cap)?;
        checks.push(Check::new("2n+1 in Fin", t.is_finite()));
        one_minus_2alpha = Some(w);
        two_n_plus_1 = Some(t);
    }

    // r_1 = c/β, r_2 = (b + r_1)/β, r_3 = r_2/β = α
    let r1 = base.from_int(c).div_beta();
    let r2 = (&base.from_int(b) + &r1).div_beta();
    let r3 = r2.div_beta();
    for (name, r, want) in [("[r1] = c", r1, vec![c]), ("[r2] = bc", r2, vec![b, c]), ("[r3] = 0bc", r3, vec![0, b, c])] {
        let w = greedy_frac(&r, cap);
        checks.push(Check::new(name, w.is_finite() && w.int_part.is_empty() && w.frac_pre == want));
    }
    Ok(QReport { spec, one, one_minus_alpha: oma, n_plus_1, one_minus_2alpha, two_n_plus_1, checks })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RReport {
    pub spec: FamilySpec,
    pub certified_pisot: bool,
    pub floor_beta: i64,
    pub expansion_of_n: DigitWord,
    pub checks: Vec<Check>,
}

impl RReport {
    pub fn all_hold(&self) -> bool {
        all_hold(&self.checks)
    }
}

/// `(n-1)(n-c)(c-1)`
pub fn r_period_word(n: i64, c: i64) -> Vec<i64> {
    vec![n - 1, n - c, c - 1]
}

pub fn is_rotation(a: &[i64], b: &[i64]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|s| a[s..].iter().chain(&a[..s]).eq(b.iter())))
}

pub fn r_family_checks(n: i64, c: i64, cap: usize) -> Result<RReport, FamilyError> {
    let spec = FamilySpec::r(n, c)?;
    if c < 1 {
        return Err(FamilyError::ConstraintViolation(format!("r: word checks need c >= 1, got c={c}")));
    }
    let base = build_dominant(spec)?;
    let o = expand(&base.from_int(n), cap)?;
    let w = o.word;
    let period = r_period_word(n, c);
    let mut checks = vec![
        Check::new("floor(beta) = n-1", base.floor_beta() == n - 1),
        Check::new("n not in Fin", o.kind == OrbitKind::EventuallyPeriodic),
        Check::new("period (n-1)(n-c)(c-1) up to rotation", is_rotation(&w.frac_period, &period)),
    ];
    let pre = vec![0, 0, c - 1, n - c - 1, n - c, c - 1];
    let whole = w.int_part == vec![1, 0] && same_infinite_word((&w.frac_pre, &w.frac_period), (&pre, &period));
    checks.push(Check::new("n = 10.00(c-1)(n-c-1)(n-c)(c-1)((n-1)(n-c)(c-1))^w", whole));
    Ok(RReport {
        spec,
        certified_pisot: base.is_certified_pisot(),
        floor_beta: base.floor_beta(),
        expansion_of_n: w,
        checks,
    })
}
