use crate::exact_field::{FieldElement, PisotNumber};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// A digit string `int_part . frac_pre (frac_period)^ω`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DigitWord {
    pub int_part: Vec<i64>,
    pub frac_pre: Vec<i64>,
    /// Empty for a finite word.
    pub frac_period: Vec<i64>,
    pub alphabet_bound: Option<i64>,
}

impl DigitWord {
    pub fn finite(int_part: Vec<i64>, frac: Vec<i64>) -> DigitWord {
        DigitWord { int_part, frac_pre: frac, frac_period: Vec::new(), alphabet_bound: None }
    }

    pub fn periodic(int_part: Vec<i64>, pre: Vec<i64>, period: Vec<i64>) -> DigitWord {
        DigitWord { int_part, frac_pre: pre, frac_period: period, alphabet_bound: None }
    }

    pub fn with_bound(mut self, n: i64) -> DigitWord {
        self.alphabet_bound = Some(n);
        self
    }

    pub fn is_finite(&self) -> bool {
        self.frac_period.is_empty()
    }

    /// All digits before the period, integer part first.
    pub fn prefix(&self) -> Vec<i64> {
        let mut v = self.int_part.clone();
        v.extend_from_slice(&self.frac_pre);
        v
    }

    pub fn all_digits_in(&self, lo: i64, hi: i64) -> bool {
        self.int_part
            .iter()
            .chain(&self.frac_pre)
            .chain(&self.frac_period)
            .all(|&d| (lo..=hi).contains(&d))
    }

    /// Exact value; periodic tails are summed as geometric series.
    pub fn value(&self, base: &PisotNumber) -> FieldElement {
        let beta = base.beta();
        let mut acc = base.zero();
        for &d in &self.int_part {
            acc = &(&acc * &beta) + &base.from_int(d);
        }
        let ib = base.inv_beta();
        let mut scale = base.one();
        for &d in &self.frac_pre {
            scale = &scale * &ib;
            acc = &acc + &scale.mul_int(d);
        }
        if !self.frac_period.is_empty() {
            let p = self.frac_period.len() as i64;
            let mut head = base.zero();
            for &d in &self.frac_period {
                head = &(&head * &beta) + &base.from_int(d);
            }
            let denom = beta.pow(p) - base.one();
            let tail = &head * &denom.inv().expect("β^p ≠ 1");
            acc = &acc + &(&tail * &scale);
        }
        acc
    }

    /// Renders the fractional side only, e.g. `111(00012)^w`.
    pub fn render_frac(&self) -> String {
        let wide = self.needs_commas();
        let mut s = join(&self.frac_pre, wide);
        if !self.frac_period.is_empty() {
            if wide && !self.frac_pre.is_empty() {
                s.push(',');
            }
            s.push('(');
            s.push_str(&join(&self.frac_period, wide));
            s.push_str(")^w");
        }
        s
    }

    fn needs_commas(&self) -> bool {
        self.int_part
            .iter()
            .chain(&self.frac_pre)
            .chain(&self.frac_period)
            .any(|&d| !(0..10).contains(&d))
    }
}

/// Digits juxtaposed, or comma separated when any is negative or above 9.
pub fn render_digits(d: &[i64]) -> String {
    join(d, d.iter().any(|&x| !(0..10).contains(&x)))
}

fn join(d: &[i64], wide: bool) -> String {
    let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    parts.join(if wide { "," } else { "" })
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.needs_commas();
        if self.int_part.is_empty() && self.frac_pre.is_empty() && self.frac_period.is_empty() {
            return write!(f, "0");
        }
        if self.int_part.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", join(&self.int_part, wide))?;
        }
        if !self.frac_pre.is_empty() || !self.frac_period.is_empty() {
            write!(f, ".{}", self.render_frac())?;
        }
        Ok(())
    }
}

/// An eventually periodic digit sequence, read from position 0.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Seq<'a> {
    pub pre: &'a [i64],
    /// Empty means the sequence continues with zeros.
    pub period: &'a [i64],
}

impl<'a> Seq<'a> {
    pub fn at(&self, i: usize) -> i64 {
        if i < self.pre.len() {
            self.pre[i]
        } else if self.period.is_empty() {
            0
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    fn period_len(&self) -> usize {
        self.period.len().max(1)
    }

    /// The sequence with its first `k` symbols removed.
    pub fn shifted(&self, k: usize) -> (Vec<i64>, Vec<i64>) {
        if k <= self.pre.len() {
            (self.pre[k..].to_vec(), self.period.to_vec())
        } else if self.period.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let p = self.period.len();
            let r = (k - self.pre.len()) % p;
            let mut rot = self.period[r..].to_vec();
            rot.extend_from_slice(&self.period[..r]);
            (Vec::new(), rot)
        }
    }

    /// Lexicographic comparison of the infinite sequences.
    pub fn cmp_lex(&self, o: &Seq<'_>) -> Ordering {
        let horizon = self.pre.len().max(o.pre.len()) + self.period_len() + o.period_len();
        for i in 0..horizon {
            match self.at(i).cmp(&o.at(i)) {
                Ordering::Equal => {}
                c => return c,
            }
        }
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        assert_eq!(DigitWord::default().to_string(), "0");
        let w = DigitWord::periodic(vec![], vec![1, 1, 1], vec![0, 0, 0, 1, 2]);
        assert_eq!(w.render_frac(), "111(00012)^w");
        assert_eq!(render_digits(&[21, 0, 2]), "21,0,2");
        assert_eq!(render_digits(&[2, 1, 0, 2]), "2102");
        assert_eq!(render_digits(&[1, -2]), "1,-2");
        let w = DigitWord::finite(vec![1, 2], vec![0, 3]);
        assert_eq!(w.to_string(), "12.03");
    }

    #[test]
    fn lexicographic_order_on_periodic_sequences() {
        let a = Seq { pre: &[2, 1], period: &[0, 1] };
        let b = Seq { pre: &[2, 1, 0, 1, 0], period: &[1, 0] };
        assert_eq!(a.cmp_lex(&b), Ordering::Equal);
        let c = Seq { pre: &[2, 1, 0, 1], period: &[] };
        assert_eq!(c.cmp_lex(&a), Ordering::Less);
    }
}
