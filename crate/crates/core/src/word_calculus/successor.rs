//! Passing from the fractional part of `N` to that of `N + 1` in the cubic family.

use super::{positional_sum, value, WeakWord, WordError};
use crate::beta_dynamics::t_beta_step;
use crate::exact_field::PisotNumber;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuccessorCase {
    /// `p_0 = n`
    A,
    /// `p_0 = n-1`, `p_3 p_2 p_1 < n10`, head at least `10n`
    B,
    /// `p_1 p_0 = n0`, head at least `0n`
    C,
    /// `p_1 p_0 = n1`
    CPrime,
    /// `p_2 p_1 p_0 = n10`
    D,
    /// `p_3 p_2 p_1 p_0 = n10(n-1)`
    E,
    /// Adding 1 to `p_0` leaves a canonical integer part.
    NoForbiddenWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Successor {
    pub case: SuccessorCase,
    /// Integer digits of `N + 1`, most significant first.
    pub int_part: Vec<i64>,
    pub frac: WeakWord,
}

fn digits_of_head(base: &PisotNumber, w: &WeakWord, len: usize) -> Result<Vec<i64>, WordError> {
    let mut x = value(w, base);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let (d, next) = t_beta_step(&x).map_err(|_| WordError::RangeError("fractional value outside [0, 1)".into()))?;
        out.push(d);
        x = next;
    }
    Ok(out)
}

/// Given `N = p.w` with `p` canonical (most significant digit first) and `w`
/// worth the fractional part of `N`, returns the representation of `N + 1`.
pub fn successor_fractional(base: &PisotNumber, p: &[i64], w: &WeakWord) -> Result<Successor, WordError> {
    let n = base.floor_beta();
    if p.is_empty() {
        return Err(WordError::RangeError("empty integer part".into()));
    }
    // p_0 .. p_4, zero-padded on the left
    let d = |i: usize| if i < p.len() { p[p.len() - 1 - i] } else { 0 };
    let head = digits_of_head(base, w, 3)?;
    let pad = 5usize.saturating_sub(p.len()).max(1);
    let mut q: Vec<i64> = std::iter::repeat(0).take(pad).chain(p.iter().copied()).collect();
    let m = q.len();
    let set = |q: &mut Vec<i64>, i: usize, v: i64| q[m - 1 - i] = v;

    let (case, addend): (SuccessorCase, Vec<i64>) = if [d(3), d(2), d(1), d(0)] == [n, 1, 0, n - 1] {
        set(&mut q, 4, d(4) + 1);
        for i in 0..4 {
            set(&mut q, i, 0);
        }
        (SuccessorCase::E, vec![])
    } else if [d(2), d(1), d(0)] == [n, 1, 0] {
        set(&mut q, 3, d(3) + 1);
        for i in 0..3 {
            set(&mut q, i, 0);
        }
        (SuccessorCase::D, vec![0, 1, 0, n])
    } else if [d(1), d(0)] == [n, 1] {
        set(&mut q, 2, d(2) + 1);
        set(&mut q, 1, 0);
        set(&mut q, 0, 1);
        (SuccessorCase::CPrime, vec![-1, 1, -n, n])
    } else if [d(1), d(0)] == [n, 0] && head[..2].cmp(&[0, n][..]) != Ordering::Less {
        set(&mut q, 2, d(2) + 1);
        set(&mut q, 1, 0);
        set(&mut q, 0, 0);
        (SuccessorCase::C, vec![-1, 1, -n, n])
    } else if d(0) == n - 1
        && [d(3), d(2), d(1)][..].cmp(&[n, 1, 0][..]) == Ordering::Less
        && head[..].cmp(&[1, 0, n][..]) != Ordering::Less
    {
        set(&mut q, 1, d(1) + 1);
        set(&mut q, 0, 0);
        (SuccessorCase::B, vec![-1, 0, -n, 0])
    } else if d(0) == n {
        set(&mut q, 1, d(1) + 1);
        set(&mut q, 0, 0);
        (SuccessorCase::A, vec![n - 1, 1, -n, n])
    } else {
        set(&mut q, 0, d(0) + 1);
        (SuccessorCase::NoForbiddenWord, vec![])
    };
    let frac = if addend.is_empty() { w.clone() } else { positional_sum(w, 1, &addend)? };
    let lead = q.iter().take_while(|&&x| x == 0).count();
    Ok(Successor { case, int_part: q.split_off(lead), frac })
}
