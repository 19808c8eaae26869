use super::word::{DigitWord, Seq};
use super::BetaError;
use crate::exact_field::{FieldElement, PisotNumber};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitKind {
    Finite,
    EventuallyPeriodic,
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitClassification {
    pub kind: OrbitKind,
    pub word: DigitWord,
    /// Number of applications of `T_β`.
    pub steps: usize,
}

impl OrbitClassification {
    pub fn is_finite(&self) -> bool {
        self.kind == OrbitKind::Finite
    }
}

/// One application of `x ↦ βx - ⌊βx⌋` on `[0, 1)`.
pub fn t_beta_step(x: &FieldElement) -> Result<(i64, FieldElement), BetaError> {
    if x.sign() == Ordering::Less || x.cmp_value(&x.base().one()) != Ordering::Less {
        return Err(BetaError::OutOfDomain);
    }
    Ok(step_unchecked(x))
}

fn step_unchecked(x: &FieldElement) -> (i64, FieldElement) {
    let bx = x.mul_beta();
    let d = bx.floor_i64();
    (d, bx.add_int(-d))
}

pub(crate) fn beta_pow(base: &PisotNumber, e: i64) -> FieldElement {
    if e >= 0 {
        base.beta().pow(e)
    } else {
        base.inv_beta().pow(-e)
    }
}

/// Least `L` with `x <= β^L` and `x / β^L`, for `x > 0`.
pub(crate) fn scale_to_unit(x: &FieldElement) -> (i64, FieldElement) {
    let base = x.base();
    let guess = (x.approx().ln() / base.approx().ln()).ceil();
    let mut l = if guess.is_finite() { guess as i64 } else { 0 };
    while x.cmp_value(&beta_pow(base, l)) == Ordering::Greater {
        l += 1;
    }
    while x.cmp_value(&beta_pow(base, l - 1)) != Ordering::Greater {
        l -= 1;
    }
    (l, x * &beta_pow(base, -l))
}

/// Drops preperiod symbols that already belong to the period.
pub(crate) fn minimize(mut pre: Vec<i64>, mut period: Vec<i64>) -> (Vec<i64>, Vec<i64>) {
    if period.is_empty() {
        while pre.last() == Some(&0) {
            pre.pop();
        }
        return (pre, period);
    }
    while !pre.is_empty() && pre.last() == period.last() {
        pre.pop();
        period.rotate_right(1);
    }
    (pre, period)
}

/// Splits the digit sequence of `x / β^L` at position `L`.
fn split(l: i64, pre: &[i64], period: &[i64]) -> DigitWord {
    let seq = Seq { pre, period };
    let lpos = l.max(0) as usize;
    let int_part: Vec<i64> = (0..lpos).map(|i| seq.at(i)).collect();
    let (fpre, fper) = seq.shifted(lpos);
    split_frac(l, int_part, fpre, fper)
}

fn split_frac(l: i64, int_part: Vec<i64>, pre: Vec<i64>, per: Vec<i64>) -> DigitWord {
    let mut fpre = pre;
    if l < 0 {
        let mut z = vec![0; (-l) as usize];
        z.extend(fpre);
        fpre = z;
    }
    let (fpre, per) = minimize(fpre, per);
    DigitWord::periodic(int_part, fpre, per)
}

/// Greedy β-expansion with exact cycle detection.
///
/// `x` is scaled to `y = x / β^L` with `L` least such that `x <= β^L`; the
/// first `L` digits of `y` form the integer part. `y = 1` emits `⌊β⌋` and
/// continues from `α`.
pub fn expand(x: &FieldElement, cap: usize) -> Result<OrbitClassification, BetaError> {
    let base = x.base().clone();
    let n = base.floor_beta();
    match x.sign() {
        Ordering::Less => return Err(BetaError::NegativeInput),
        Ordering::Equal => {
            return Ok(OrbitClassification {
                kind: OrbitKind::Finite,
                word: DigitWord::default().with_bound(n),
                steps: 0,
            })
        }
        Ordering::Greater => {}
    }
    let (l, y) = scale_to_unit(x);
    let mut digits = Vec::new();
    let mut state = y;
    let mut steps = 0;
    if state == base.one() {
        digits.push(n);
        state = base.alpha();
        steps = 1;
    }
    let mut seen: HashMap<FieldElement, usize> = HashMap::new();
    loop {
        if state.is_zero() {
            let word = split(l, &digits, &[]).with_bound(n);
            return Ok(OrbitClassification { kind: OrbitKind::Finite, word, steps });
        }
        if let Some(&i0) = seen.get(&state) {
            let word = split(l, &digits[..i0], &digits[i0..]).with_bound(n);
            return Ok(OrbitClassification { kind: OrbitKind::EventuallyPeriodic, word, steps });
        }
        if steps >= cap {
            let lpos = l.max(0) as usize;
            let mut word = DigitWord::default().with_bound(n);
            word.int_part = digits.iter().take(lpos).copied().collect();
            word.frac_pre = digits.iter().skip(lpos).copied().collect();
            return Ok(OrbitClassification { kind: OrbitKind::Truncated, word, steps });
        }
        seen.insert(state.clone(), digits.len());
        let (d, next) = step_unchecked(&state);
        digits.push(d);
        state = next;
        steps += 1;
    }
}

/// The expansion `a_1 a_2 ...` of 1.
pub fn expansion_of_one(base: &PisotNumber) -> DigitWord {
    let r = expand(&base.one(), DEFAULT_CAP).expect("1 is positive");
    let mut w = r.word;
    w.int_part.clear();
    w
}

/// Membership in Fin(β) together with the classification that decided it.
pub fn is_fin(x: &FieldElement, cap: usize) -> Result<(bool, OrbitClassification), BetaError> {
    let r = expand(x, cap)?;
    Ok((r.is_finite(), r))
}

/// Integer digits of `x >= 0` and the remaining fractional state.
///
/// The state lies in `[0, 1)` except for `x = 1`, where it is 1 itself.
pub fn integer_split(x: &FieldElement) -> (Vec<i64>, FieldElement) {
    let base = x.base();
    if x.sign() != Ordering::Greater {
        return (Vec::new(), base.zero());
    }
    let (l, y) = scale_to_unit(x);
    let lpos = l.max(0) as usize;
    let mut state = y;
    let mut int_part = Vec::with_capacity(lpos);
    let mut todo = lpos;
    if state == base.one() {
        // x is a power of β; same convention as `expand`
        if lpos == 0 {
            return (int_part, state);
        }
        int_part.push(base.floor_beta());
        state = base.alpha();
        todo -= 1;
    }
    for _ in 0..todo {
        let (d, next) = step_unchecked(&state);
        int_part.push(d);
        state = next;
    }
    (int_part, state)
}

pub fn fractional_part(x: &FieldElement) -> FieldElement {
    integer_split(x).1
}

/// Orbit record shared by every state it visits.
struct Record {
    digits: Vec<i64>,
    /// Index where the period starts; `None` for a finite orbit.
    cycle_start: Option<usize>,
}

impl Record {
    fn outcome_at(&self, j: usize) -> (Vec<i64>, Vec<i64>) {
        match self.cycle_start {
            None => (self.digits[j..].to_vec(), Vec::new()),
            Some(cs) => Seq { pre: &self.digits[..cs], period: &self.digits[cs..] }.shifted(j),
        }
    }
}

/// Fractional-part classifier with a memo shared across calls and threads.
pub struct ExpansionOracle {
    base: PisotNumber,
    cap: usize,
    memo: RwLock<HashMap<FieldElement, (Arc<Record>, usize)>>,
}

impl ExpansionOracle {
    pub fn new(base: &PisotNumber, cap: usize) -> ExpansionOracle {
        ExpansionOracle { base: base.clone(), cap, memo: RwLock::new(HashMap::new()) }
    }

    pub fn base(&self) -> &PisotNumber {
        &self.base
    }

    /// Digits of `s ∈ [0, 1)` as `(kind, preperiod, period)`.
    pub fn classify_fraction(&self, s: &FieldElement) -> (OrbitKind, Vec<i64>, Vec<i64>) {
        let mut digits: Vec<i64> = Vec::new();
        let mut states: Vec<FieldElement> = Vec::new();
        let mut local: HashMap<FieldElement, usize> = HashMap::new();
        let mut cur = s.clone();
        let record;
        loop {
            if cur.is_zero() {
                record = Record { digits, cycle_start: None };
                break;
            }
            let hit = self.memo.read().unwrap().get(&cur).cloned();
            if let Some((rec, off)) = hit {
                let (pre, per) = rec.outcome_at(off);
                let cs = if per.is_empty() { None } else { Some(digits.len() + pre.len()) };
                digits.extend(pre);
                digits.extend(per);
                record = Record { digits, cycle_start: cs };
                break;
            }
            if let Some(&i0) = local.get(&cur) {
                record = Record { digits, cycle_start: Some(i0) };
                break;
            }
            if digits.len() >= self.cap {
                return (OrbitKind::Truncated, digits, Vec::new());
            }
            local.insert(cur.clone(), digits.len());
            states.push(cur.clone());
            let (d, next) = step_unchecked(&cur);
            digits.push(d);
            cur = next;
        }
        let record = Arc::new(record);
        let (pre, per) = record.outcome_at(0);
        {
            let mut memo = self.memo.write().unwrap();
            for (i, st) in states.into_iter().enumerate() {
                memo.entry(st).or_insert_with(|| (record.clone(), i));
            }
        }
        let kind = if record.cycle_start.is_some() { OrbitKind::EventuallyPeriodic } else { OrbitKind::Finite };
        let (pre, per) = minimize(pre, per);
        (kind, pre, per)
    }

    /// Same result as [`expand`], reusing fractional orbits already seen.
    pub fn expand(&self, x: &FieldElement) -> Result<OrbitClassification, BetaError> {
        if x.sign() != Ordering::Greater {
            return expand(x, self.cap);
        }
        let (l, y) = scale_to_unit(x);
        if y == self.base.one() {
            return expand(x, self.cap);
        }
        let n = self.base.floor_beta();
        let lpos = l.max(0) as usize;
        let mut int_part = Vec::with_capacity(lpos);
        let mut state = y;
        for _ in 0..lpos {
            let (d, next) = step_unchecked(&state);
            int_part.push(d);
            state = next;
        }
        let (kind, pre, per) = self.classify_fraction(&state);
        let steps = lpos + pre.len() + per.len();
        let word = if kind == OrbitKind::Truncated {
            DigitWord::finite(int_part, pre).with_bound(n)
        } else {
            split_frac(l, int_part, pre, per).with_bound(n)
        };
        Ok(OrbitClassification { kind, word, steps })
    }

    pub fn is_fin(&self, x: &FieldElement) -> Result<bool, BetaError> {
        Ok(self.expand(x)?.is_finite())
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().unwrap().len()
    }
}
