//! Periodic suffixes of rewritten words and the cycle words of the lattice map.

use super::{positional_sum, value, zero_words, WeakWord, WordError};
use crate::beta_dynamics::{minimize, DigitWord, ParryBound};
use crate::exact_field::{FieldElement, PisotNumber};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;

const DETECT_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicSuffix {
    pub prefix: Vec<i64>,
    pub period: Vec<i64>,
    /// Word reached when the period closes.
    pub suffix: WeakWord,
}

/// Emits one canonical letter at a time from a word worth a number in
/// `[0, 1)`: the letter is `d = ⌊β·w⌋` and the remaining word is the tail of
/// `w` plus `(w_1 - d)` copies of the expansion of 1. Returns the period if a
/// word value recurs and `None` if the value reaches 0.
pub fn detect_periodic_suffix(base: &PisotNumber, w: &WeakWord) -> Result<Option<PeriodicSuffix>, WordError> {
    let one = zero_words(base)?.z2[1..].to_vec();
    let x = value(w, base);
    if x.sign() == Ordering::Less || x.cmp_value(&base.one()) != Ordering::Less {
        return Err(WordError::RangeError("value outside [0, 1)".into()));
    }
    // normalize to offset 0
    let mut cur: Vec<i64> = if w.offset <= 0 {
        let mut z = vec![0; (-w.offset) as usize];
        z.extend(&w.digits);
        z
    } else {
        return Err(WordError::RangeError("word has an integer part".into()));
    };
    let mut out = Vec::new();
    let mut seen: HashMap<FieldElement, usize> = HashMap::new();
    while out.len() < DETECT_CAP {
        while cur.last() == Some(&0) {
            cur.pop();
        }
        let v = value(&WeakWord::new(cur.clone()), base);
        if v.is_zero() {
            return Ok(None);
        }
        if let Some(&i0) = seen.get(&v) {
            let (pre, per) = minimize(out[..i0].to_vec(), out[i0..].to_vec());
            let parry = ParryBound::new(base);
            if !parry.admits(&DigitWord::periodic(vec![], pre.clone(), per.clone())) {
                return Ok(None);
            }
            return Ok(Some(PeriodicSuffix { prefix: pre, period: per, suffix: WeakWord::new(cur) }));
        }
        seen.insert(v.clone(), out.len());
        let d = v.mul_beta().floor_i64();
        let first = cur[0];
        let tail = WeakWord::new(cur[1..].to_vec());
        let next = if first == d { tail } else { positional_sum(&tail, 1, &scale(&one, first - d))? };
        out.push(d);
        cur = next.digits;
    }
    Ok(None)
}

fn scale(w: &[i64], m: i64) -> Vec<i64> {
    w.iter().map(|x| x * m).collect()
}

/// `(n-k) j (k+j) (k-1) (n-j-1) (n-k-j)`.
pub fn u_block(n: i64, k: i64, j: i64) -> Vec<i64> {
    vec![n - k, j, k + j, k - 1, n - j - 1, n - k - j]
}

/// Word for odd `k, j >= 1` with `k < n - 1` and `k + j - 1 < n`. When also
/// `k + j < n` it is the period of the purely periodic `τ` orbit of
/// `(1, k, k+j-1)`.
pub fn periodic_word_wkj(n: i64, k: i64, j: i64) -> Result<WeakWord, WordError> {
    if k < 1 || j < 1 || k % 2 == 0 || j % 2 == 0 || k >= n - 1 || k + j - 1 >= n {
        return Err(WordError::RangeError(format!("n = {n}, k = {k}, j = {j}")));
    }
    let mut d = Vec::new();
    let (mut kk, mut jj) = (k, j);
    while kk >= 3 {
        d.extend(u_block(n, kk, jj));
        kk -= 2;
        jj += 2;
    }
    d.extend([n - 1, j + k - 1, j + k, 0, n - j - k]);
    let (mut kk, mut jj) = (j + k - 1, 1);
    while jj < j {
        d.extend(u_block(n, kk, jj));
        kk -= 2;
        jj += 2;
    }
    Ok(WeakWord::new(d))
}
