use super::expand::expansion_of_one;
use super::word::{DigitWord, Seq};
use super::BetaError;
use crate::exact_field::PisotNumber;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeSet;

/// The quasi-greedy expansion of 1: every admissible tail is strictly below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParryBound {
    pub pre: Vec<i64>,
    pub period: Vec<i64>,
}

impl ParryBound {
    pub fn new(base: &PisotNumber) -> ParryBound {
        Self::from_one(&expansion_of_one(base))
    }

    pub fn from_one(one: &DigitWord) -> ParryBound {
        if one.is_finite() {
            let mut period = one.frac_pre.clone();
            if let Some(last) = period.last_mut() {
                *last -= 1;
            }
            ParryBound { pre: Vec::new(), period }
        } else {
            ParryBound { pre: one.frac_pre.clone(), period: one.frac_period.clone() }
        }
    }

    fn seq(&self) -> Seq<'_> {
        Seq { pre: &self.pre, period: &self.period }
    }

    /// Every suffix of the full digit sequence of `w` is below the bound.
    pub fn admits(&self, w: &DigitWord) -> bool {
        let prefix = w.prefix();
        if prefix.iter().chain(&w.frac_period).any(|&d| d < 0) {
            return false;
        }
        let seq = Seq { pre: &prefix, period: &w.frac_period };
        let starts = prefix.len() + w.frac_period.len().max(1);
        let bound = self.seq();
        (0..starts).all(|k| {
            let (p, q) = seq.shifted(k);
            Seq { pre: &p, period: &q }.cmp_lex(&bound) == Ordering::Less
        })
    }
}

pub fn is_admissible(w: &DigitWord, base: &PisotNumber) -> bool {
    ParryBound::new(base).admits(w)
}

/// Classes of Pisot numbers read off a finite expansion of 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OneClass {
    /// `a_1 > 1 + |a_2| + ... + |a_m|`.
    Perron,
    /// `a_1 >= a_2 >= ... >= a_m > 0`.
    Brauer,
    /// `a_1 > a_2 + ... + a_m` with all digits nonnegative.
    Hollander,
    /// Non-monotonic with a zero strictly inside.
    CE,
}

pub fn classify_digits(a: &[i64]) -> BTreeSet<OneClass> {
    let mut out = BTreeSet::new();
    if a.is_empty() {
        return out;
    }
    let tail: i64 = a[1..].iter().map(|x| x.abs()).sum();
    if a[0] > 1 + tail {
        out.insert(OneClass::Perron);
    }
    let non_increasing = a.windows(2).all(|w| w[0] >= w[1]);
    let non_decreasing = a.windows(2).all(|w| w[0] <= w[1]);
    if non_increasing && *a.last().unwrap() > 0 {
        out.insert(OneClass::Brauer);
    }
    if a.iter().all(|&x| x >= 0) && a[0] > a[1..].iter().sum::<i64>() {
        out.insert(OneClass::Hollander);
    }
    let m = a.len();
    let interior_zero = m > 2 && a[1..m - 1].contains(&0);
    if !non_increasing && !non_decreasing && interior_zero {
        out.insert(OneClass::CE);
    }
    out
}

pub fn classify_one_expansion(base: &PisotNumber) -> Result<BTreeSet<OneClass>, BetaError> {
    let one = expansion_of_one(base);
    if !one.is_finite() {
        return Err(BetaError::InfiniteExpansionOfOne);
    }
    Ok(classify_digits(&one.frac_pre))
}
