//! Named rewrite rules for the cubic family and the scripted unfoldings built from them.

use super::{nu, positional_sum, t, u, v, w, ww, ww1_prefix, ww_prefix, z1, z2, WeakWord, WordError};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// `u(k,j) = v(k,j) u(k,j+2)`
    StepU { k: i64, j: i64 },
    /// `u(k,k) = (n-k) 0 k 0 (kn)`
    TerminalU { k: i64 },
    /// `u(k,1) = (n-k-1)(n-k+1) 2 (k+1) w(k,2)` for even `k`
    EvenStart { k: i64 },
    /// `w(k,j) = t(k,j) w(k,j+2)`
    StepW { k: i64, j: i64 },
    /// `w(k,k) = 0(n-k-1)(n-k)1(k+1)(k-1)(n-2) u(k,2)`
    TerminalW { k: i64 },
    /// `ŵ(k,j) = prefix ŵ(k,j+2)` for `k != 1`
    StepWw { k: i64, j: i64 },
    /// `ŵ(1,j) = 0(j+1)(j+2)0(n-j-3)(n-j-3) ŵ(1,j+3)`
    StepWw1 { j: i64 },
    /// `ŵ(1,n-2) = 0(n-1)(n-1)n0 ŵ(1,0)`
    WrapWw,
    /// `0 ŵ(1,n) = ŵ(1,0)`
    CloseWw,
    /// `ŵ(1,n-1) = 10(n-1)0(n²-n)`
    FinishWw,
    /// `ν(0,j) = (n-1)j(j+2)1(n-j-2)(n-j-4) ν(0,j+4)`
    StepNu0 { j: i64 },
    /// Trailing letter `kn` becomes `(k-1)(n-1)` followed by `u(k-1,1)`.
    Carry { k: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Z {
    One,
    Two,
}

/// One replayable positional summation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: Rule,
    pub position: i64,
    pub addend: Vec<i64>,
    pub result: Vec<i64>,
}

impl Rule {
    /// Word the rule expects at its focus.
    pub fn source(&self, n: i64) -> Vec<i64> {
        match *self {
            Rule::StepU { k, j } => u(n, k, j),
            Rule::TerminalU { k } => u(n, k, k),
            Rule::EvenStart { k } => u(n, k, 1),
            Rule::StepW { k, j } => w(n, k, j),
            Rule::TerminalW { k } => w(n, k, k),
            Rule::StepWw { k, j } => ww(n, k, j),
            Rule::StepWw1 { j } => ww(n, 1, j),
            Rule::WrapWw => ww(n, 1, n - 2),
            Rule::CloseWw => [vec![0], ww(n, 1, n)].concat(),
            Rule::FinishWw => ww(n, 1, n - 1),
            Rule::StepNu0 { j } => nu(n, 0, j),
            Rule::Carry { k } => vec![0, k * n],
        }
    }

    /// Word the rule leaves at its focus.
    pub fn target(&self, n: i64) -> Vec<i64> {
        match *self {
            Rule::StepU { k, j } => [v(n, k, j), u(n, k, j + 2)].concat(),
            Rule::TerminalU { k } => vec![n - k, 0, k, 0, k * n],
            Rule::EvenStart { k } => [vec![n - k - 1, n - k + 1, 2, k + 1], w(n, k, 2)].concat(),
            Rule::StepW { k, j } => [t(n, k, j), w(n, k, j + 2)].concat(),
            Rule::TerminalW { k } => [vec![0, n - k - 1, n - k, 1, k + 1, k - 1, n - 2], u(n, k, 2)].concat(),
            Rule::StepWw { k, j } => [ww_prefix(n, k, j), ww(n, k, j + 2)].concat(),
            Rule::StepWw1 { j } => [ww1_prefix(n, j), ww(n, 1, j + 3)].concat(),
            Rule::WrapWw => [vec![0, n - 1, n - 1, n, 0], ww(n, 1, 0)].concat(),
            Rule::CloseWw => ww(n, 1, 0),
            Rule::FinishWw => vec![1, 0, n - 1, 0, n * n - n],
            Rule::StepNu0 { j } => [vec![n - 1, j, j + 2, 1, n - j - 2, n - j - 4], nu(n, 0, j + 4)].concat(),
            Rule::Carry { k } => [vec![k - 1, n - 1], u(n, k - 1, 1)].concat(),
        }
    }

    /// Scripted summations of zero words, as `(relative position, word, multiplier)`.
    fn script(&self, n: i64) -> Option<Vec<(i64, Z, i64)>> {
        use Z::{One, Two};
        let z1_at = |pairs: &[(i64, i64)]| pairs.iter().map(|&(p, m)| (p, One, m)).collect::<Vec<_>>();
        let s = match *self {
            Rule::StepU { k, j } => vec![(1, Two, 1), (2, Two, k), (3, Two, -j), (4, One, -1), (5, Two, -k), (6, Two, j + 2)],
            Rule::TerminalU { k } => vec![(2, One, k)],
            Rule::EvenStart { k } => vec![(1, Two, 1), (2, Two, k), (3, One, -1), (4, Two, -2)],
            Rule::StepW { k, j } => vec![(1, Two, j - k), (2, One, 1), (3, Two, j + 2), (4, Two, k - j - 1), (6, Two, -(j + 2))],
            Rule::TerminalW { k } => z1_at(&[(2, 1), (3, k + 1), (4, k), (5, -1), (6, -k), (7, 2 - k), (8, 2)]),
            Rule::StepWw { k, j } => ww_script(n, k, j),
            Rule::StepWw1 { j } => {
                let mut s = ww_script(n, 1, j);
                s.extend([(3, Two, -1), (6, Two, 1)]);
                s
            }
            Rule::StepNu0 { j } => z1_at(&[(1, 1), (2, n + 1), (3, n - j - 1), (4, -j - 2), (5, -n), (6, j - n + 4), (7, j + 4)]),
            Rule::WrapWw | Rule::CloseWw | Rule::FinishWw | Rule::Carry { .. } => return None,
        };
        Some(s)
    }
}

fn ww_script(n: i64, k: i64, j: i64) -> Vec<(i64, Z, i64)> {
    use Z::{One, Two};
    vec![(1, One, 1), (2, Two, n - 1), (2, Two, 2 - k), (3, Two, -(j + 1)), (5, Two, k - n), (6, Two, j + 2)]
}

/// Applies rules to a word and records every summation.
#[derive(Clone, Debug)]
pub struct Rewriter {
    n: i64,
    word: WeakWord,
    trace: Vec<TraceStep>,
}

impl Rewriter {
    pub fn new(n: i64, digits: Vec<i64>) -> Rewriter {
        Rewriter { n, word: WeakWord::new(digits), trace: Vec::new() }
    }

    pub fn word(&self) -> &WeakWord {
        &self.word
    }

    pub fn trace(&self) -> &[TraceStep] {
        &self.trace
    }

    pub fn into_parts(self) -> (WeakWord, Vec<TraceStep>) {
        (self.word, self.trace)
    }

    /// `word ⊕_pos addend`, recorded under `rule`.
    pub fn add(&mut self, rule: Rule, pos: i64, addend: Vec<i64>) -> Result<(), WordError> {
        self.word = positional_sum(&self.word, pos, &addend)?;
        while self.word.digits.last() == Some(&0) && self.word.digits.len() > pos as usize {
            self.word.digits.pop();
        }
        self.trace.push(TraceStep { rule, position: pos, addend, result: self.word.digits.clone() });
        Ok(())
    }

    fn window(&self, focus: i64, len: usize) -> Vec<i64> {
        (0..len)
            .map(|i| self.word.digits.get(focus as usize - 1 + i).copied().unwrap_or(0))
            .collect()
    }

    /// Applies `rule` with its source word at position `focus`.
    pub fn apply(&mut self, rule: Rule, focus: i64) -> Result<(), WordError> {
        let n = self.n;
        let src = rule.source(n);
        if focus < 1 {
            return Err(WordError::PositionOutOfRange(focus));
        }
        let found = self.window(focus, src.len());
        if found != src {
            return Err(WordError::RangeError(format!("{rule:?} expects {src:?} at {focus}, found {found:?}")));
        }
        match rule.script(n) {
            Some(terms) => {
                for (p, z, m) in terms {
                    if m == 0 {
                        continue;
                    }
                    let zw = match z {
                        Z::One => z1(n),
                        Z::Two => z2(n),
                    };
                    self.add(rule, focus + p - 1, zw.iter().map(|d| d * m).collect())?;
                }
            }
            None => {
                let tgt = rule.target(n);
                let len = src.len().max(tgt.len());
                let addend: Vec<i64> = (0..len)
                    .map(|i| tgt.get(i).copied().unwrap_or(0) - src.get(i).copied().unwrap_or(0))
                    .collect();
                self.add(rule, focus, addend)?;
            }
        }
        Ok(())
    }
}

/// A prefix and the suffix word that follows it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unfolding {
    pub prefix: WeakWord,
    pub suffix: WeakWord,
    pub trace: Vec<TraceStep>,
}

fn unfold(n: i64, rule: Rule, prefix_len: usize) -> Unfolding {
    let mut rw = Rewriter::new(n, rule.source(n));
    rw.apply(rule, 1).expect("source word is in place");
    let (word, trace) = rw.into_parts();
    let mut digits = word.digits;
    let tail_len = rule.target(n).len() - prefix_len;
    digits.resize(prefix_len + tail_len, 0);
    let suffix = digits.split_off(prefix_len);
    Unfolding {
        prefix: WeakWord::new(digits),
        suffix: WeakWord::at(suffix, -(prefix_len as i64)),
        trace,
    }
}

/// `u_n(k,j) = v_n(k,j) · u_n(k,j+2)`.
pub fn unfold_u(n: i64, k: i64, j: i64) -> Unfolding {
    unfold(n, Rule::StepU { k, j }, 6)
}

/// `w_n(k,j) = t_n(k,j) · w_n(k,j+2)`.
pub fn unfold_w(n: i64, k: i64, j: i64) -> Unfolding {
    unfold(n, Rule::StepW { k, j }, 6)
}

/// `ŵ_n(k,j)` unfolds to a six-letter prefix followed by `ŵ_n(k,j+2)`, or
/// by `ŵ_n(1,j+3)` when `k = 1`.
pub fn unfold_ww(n: i64, k: i64, j: i64) -> Unfolding {
    if k == 1 {
        unfold(n, Rule::StepWw1 { j }, 6)
    } else {
        unfold(n, Rule::StepWw { k, j }, 6)
    }
}

/// `ν_n(0,j) = (n-1)j(j+2)1(n-j-2)(n-j-4) · ν_n(0,j+4)`.
pub fn unfold_nu0(n: i64, j: i64) -> Unfolding {
    unfold(n, Rule::StepNu0 { j }, 6)
}

/// Unfolds `u_n(k,1)`, a representation of `1 - kα`, into a canonical word.
pub fn one_minus_k_alpha(n: i64, k: i64) -> Result<Rewriter, WordError> {
    if k < 1 || k > n - 1 {
        return Err(WordError::RangeError(format!("k = {k} outside 1..={}", n - 1)));
    }
    let mut rw = Rewriter::new(n, u(n, k, 1));
    unfold_one_minus(&mut rw, 1, k)?;
    Ok(rw)
}

fn unfold_one_minus(rw: &mut Rewriter, mut focus: i64, mut k: i64) -> Result<(), WordError> {
    loop {
        if k % 2 == 1 {
            for j in (1..k).step_by(2) {
                rw.apply(Rule::StepU { k, j }, focus)?;
                focus += 6;
            }
        } else {
            rw.apply(Rule::EvenStart { k }, focus)?;
            focus += 4;
            for j in (2..k).step_by(2) {
                rw.apply(Rule::StepW { k, j }, focus)?;
                focus += 6;
            }
            rw.apply(Rule::TerminalW { k }, focus)?;
            focus += 7;
            for j in (2..k).step_by(2) {
                rw.apply(Rule::StepU { k, j }, focus)?;
                focus += 6;
            }
        }
        rw.apply(Rule::TerminalU { k }, focus)?;
        if k == 1 {
            return Ok(());
        }
        rw.apply(Rule::Carry { k }, focus + 3)?;
        focus += 5;
        k -= 1;
    }
}

/// Integer digits and fractional word of `N`, produced by rewriting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pipeline {
    pub int_part: Vec<i64>,
    pub frac: WeakWord,
    pub trace: Vec<TraceStep>,
}

/// Writes `N = kβ + (j-1) + (1 - kα)` with `N = kn + j`, `1 <= j <= n`, and
/// unfolds the fractional part.
pub fn pipeline(n: i64, big_n: i64) -> Result<Pipeline, WordError> {
    if big_n < 1 || n < 2 {
        return Err(WordError::RangeError(format!("N = {big_n}, n = {n}")));
    }
    if big_n <= n {
        return Ok(Pipeline { int_part: vec![big_n], frac: WeakWord::default(), trace: Vec::new() });
    }
    let k = (big_n - 1) / n;
    let j = big_n - k * n;
    let rw = one_minus_k_alpha(n, k)?;
    let (frac, trace) = rw.into_parts();
    Ok(Pipeline { int_part: vec![k, j - 1], frac, trace })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainEnd {
    /// Reached `10(n-1)0(n²-n)`; the last letter is the integer `n²-n`.
    Finite,
    /// The suffix `ŵ(1, j)` recurred; `period` is the word between occurrences.
    Periodic { j: i64, period: Vec<i64> },
    /// No rule applies to `ŵ(1, j)`.
    Stuck { j: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WwChain {
    pub word: WeakWord,
    /// Successive values of `j` in the suffix `ŵ(1, j)`.
    pub js: Vec<i64>,
    pub end: ChainEnd,
    pub trace: Vec<TraceStep>,
}

/// Unfolds `ŵ_n(1, j0)` by steps of 3 until the suffix recurs or terminates.
pub fn ww_chain(n: i64, j0: i64) -> Result<WwChain, WordError> {
    let mut rw = Rewriter::new(n, ww(n, 1, j0));
    let mut focus = 1;
    let mut j = j0;
    let mut js = vec![j];
    let mut seen = vec![(j, focus)];
    let end = loop {
        if j == n - 1 {
            rw.apply(Rule::FinishWw, focus)?;
            break ChainEnd::Finite;
        }
        if j == n && focus > 1 && rw.word().digits[focus as usize - 2] == 0 {
            focus -= 1;
            rw.apply(Rule::CloseWw, focus)?;
            j = 0;
        } else if j == n - 2 {
            rw.apply(Rule::WrapWw, focus)?;
            focus += 5;
            j = 0;
        } else if j <= n - 3 {
            rw.apply(Rule::StepWw1 { j }, focus)?;
            focus += 6;
            j += 3;
        } else {
            break ChainEnd::Stuck { j };
        }
        js.push(j);
        if let Some(&(_, f0)) = seen.iter().find(|&&(jj, _)| jj == j) {
            let d = &rw.word().digits;
            break ChainEnd::Periodic { j, period: d[f0 as usize - 1..focus as usize - 1].to_vec() };
        }
        seen.push((j, focus));
    };
    let (word, trace) = rw.into_parts();
    Ok(WwChain { word, js, end, trace })
}
