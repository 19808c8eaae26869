//! Weakly canonical words: finite integer-digit representations whose
//! letters may be negative or exceed ⌊β⌋, rewritten by adding zero-valued
//! words at chosen positions.

mod periodic;
mod rules;
mod successor;
#[cfg(test)]
mod tests;

pub use periodic::{detect_periodic_suffix, periodic_word_wkj, u_block, PeriodicSuffix};
pub use rules::{
    one_minus_k_alpha, pipeline, unfold_nu0, unfold_u, unfold_w, unfold_ww, ww_chain, ChainEnd, Pipeline,
    Rewriter, Rule, Unfolding, WwChain,
};
pub use successor::{successor_fractional, Successor, SuccessorCase};

use crate::exact_field::{FieldElement, PisotNumber};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("position {0} is below 1")]
    PositionOutOfRange(i64),
    #[error("parameters out of range: {0}")]
    RangeError(String),
    #[error("the expansion of 1 is infinite, so no second zero word exists")]
    InfiniteExpansionOfOne,
}

/// Digits `d_1 d_2 ...` worth `sum d_k β^(offset - k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeakWord {
    pub digits: Vec<i64>,
    pub offset: i64,
}

impl WeakWord {
    pub fn new(digits: Vec<i64>) -> WeakWord {
        WeakWord { digits, offset: 0 }
    }

    pub fn at(digits: Vec<i64>, offset: i64) -> WeakWord {
        WeakWord { digits, offset }
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn scaled(&self, m: i64) -> WeakWord {
        WeakWord { digits: self.digits.iter().map(|d| d * m).collect(), offset: self.offset }
    }

    /// Digits all in `0..=n`.
    pub fn in_alphabet(&self, n: i64) -> bool {
        self.digits.iter().all(|&d| (0..=n).contains(&d))
    }

    /// `self` followed by `other`, which is placed right after the last letter.
    pub fn concat(&self, other: &[i64]) -> WeakWord {
        let mut digits = self.digits.clone();
        digits.extend_from_slice(other);
        WeakWord { digits, offset: self.offset }
    }
}

/// Exact value `sum d_k β^(offset - k)`.
pub fn value(w: &WeakWord, base: &PisotNumber) -> FieldElement {
    let beta = base.beta();
    let mut acc = base.zero();
    for &d in &w.digits {
        acc = &(&acc * &beta) + &base.from_int(d);
    }
    let shift = w.offset - w.digits.len() as i64;
    &acc * &crate::beta_dynamics::beta_pow(base, shift)
}

/// `u ⊕_j v`: adds `v` letterwise into `u` starting at position `j`.
pub fn positional_sum(u: &WeakWord, j: i64, v: &[i64]) -> Result<WeakWord, WordError> {
    if j < 1 {
        return Err(WordError::PositionOutOfRange(j));
    }
    let start = (j - 1) as usize;
    let len = u.digits.len().max(start + v.len());
    let mut digits = u.digits.clone();
    digits.resize(len, 0);
    for (i, &x) in v.iter().enumerate() {
        digits[start + i] += x;
    }
    Ok(WeakWord { digits, offset: u.offset })
}

/// The two zero-valued words of a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroWords {
    /// `(-1)` followed by the negated lower coefficients of the polynomial.
    pub z1: Vec<i64>,
    /// `(-1)` followed by the expansion of 1.
    pub z2: Vec<i64>,
}

pub fn zero_words(base: &PisotNumber) -> Result<ZeroWords, WordError> {
    let c = base.coeffs_high_first();
    let z1: Vec<i64> = std::iter::once(-1).chain(c[1..].iter().map(|x| -x)).collect();
    let one = crate::beta_dynamics::expansion_of_one(base);
    if !one.is_finite() {
        return Err(WordError::InfiniteExpansionOfOne);
    }
    let z2: Vec<i64> = std::iter::once(-1).chain(one.frac_pre.iter().copied()).collect();
    Ok(ZeroWords { z1, z2 })
}

pub fn z1(n: i64) -> Vec<i64> {
    vec![-1, n + 1, -n, n]
}

pub fn z2(n: i64) -> Vec<i64> {
    vec![-1, n, 1, 0, n]
}

/// `u_n(k,j) = (n-k) j (-kn) (jn)`.
pub fn u(n: i64, k: i64, j: i64) -> Vec<i64> {
    vec![n - k, j, -k * n, j * n]
}

/// `v_n(k,j)`, the canonical prefix produced when unfolding `u_n(k,j)`.
pub fn v(n: i64, k: i64, j: i64) -> Vec<i64> {
    vec![n - k - 1, n - k + j, j + 1, k + 1, k - j - 1, n - j - 2]
}

/// `w_n(k,j) = 0 [n(k-j+1)-j] 0 (-jn)`.
pub fn w(n: i64, k: i64, j: i64) -> Vec<i64> {
    vec![0, n * (k - j + 1) - j, 0, -j * n]
}

/// `t_n(k,j)`, the canonical prefix produced when unfolding `w_n(k,j)`.
pub fn t(n: i64, k: i64, j: i64) -> Vec<i64> {
    vec![k - j, n - j - 1, n - k - 1, n - k + j + 1, j + 2, k + 1]
}

/// `ŵ_n(k,j) = k j (kn-n²) (jn)`.
pub fn ww(n: i64, k: i64, j: i64) -> Vec<i64> {
    vec![k, j, k * n - n * n, j * n]
}

/// The prefix produced when unfolding `ŵ_n(k,j)` for `k != 1`.
pub fn ww_prefix(n: i64, k: i64, j: i64) -> Vec<i64> {
    vec![k - 1, j + k, j + 1, n - k + 1, n - j - k - 1, n - j - 2]
}

/// The prefix produced when unfolding `ŵ_n(1,j)`.
pub fn ww1_prefix(n: i64, j: i64) -> Vec<i64> {
    vec![0, j + 1, j + 2, 0, n - j - 3, n - j - 3]
}

/// `ν_n(k,j) = (n-k) j (-kn-n²) (jn)`.
pub fn nu(n: i64, k: i64, j: i64) -> Vec<i64> {
    vec![n - k, j, -k * n - n * n, j * n]
}

/// `ω_n(l,k,j) = (ln-k) (j+l) (-kn-n²) ((j+l)n)`, worth `l - kα + jα/β + α² - α`.
pub fn omega(n: i64, l: i64, k: i64, j: i64) -> Vec<i64> {
    vec![l * n - k, j + l, -k * n - n * n, (j + l) * n]
}

/// `l - kα + jα/β + α² - α`.
pub fn omega_value(base: &PisotNumber, l: i64, k: i64, j: i64) -> FieldElement {
    let a = base.alpha();
    let ab = &a * &base.inv_beta();
    let a2 = &a * &a;
    base.from_int(l) - a.mul_int(k) + ab.mul_int(j) + a2 - a
}
