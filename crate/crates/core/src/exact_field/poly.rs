//! Dense univariate polynomials, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

pub(crate) fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Sign of `p(a / 2^shift)`, computed on the integer `sum p_i a^i 2^{shift (d - i)}`.
pub(crate) fn sign_at_dyadic(p: &[BigInt], a: &BigInt, shift: u32) -> Ordering {
    let d = p.len() - 1;
    // Horner on the homogenised form.
    let mut acc = p[d].clone();
    for i in (0..d).rev() {
        acc = acc * a + (&p[i] << (shift as usize * (d - i)));
    }
    acc.sign_ordering()
}

pub(crate) fn sign_at_int(p: &[BigInt], x: &BigInt) -> Ordering {
    sign_at_dyadic(p, x, 0)
}

pub(crate) trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

impl SignOrdering for BigRational {
    fn sign_ordering(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

pub(crate) fn to_rational(p: &[BigInt]) -> Vec<BigRational> {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

pub(crate) fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

pub(crate) fn is_zero_poly(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Remainder of `a` modulo `b` over Q. `b` must be nonzero.
pub(crate) fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut b = b.to_vec();
    trim(&mut b);
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !is_zero_poly(&r) {
        let dr = r.len() - 1;
        let q = &r[dr] / &lead;
        for i in 0..=db {
            let t = &q * &b[i];
            r[dr - db + i] -= t;
        }
        r.pop();
        trim(&mut r);
    }
    if r.is_empty() {
        r.push(BigRational::zero());
    }
    r
}

pub(crate) fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !is_zero_poly(&y) {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().cloned().unwrap_or_else(BigRational::one);
    if lead.is_zero() {
        return x;
    }
    x.iter().map(|c| c / &lead).collect()
}

/// Clears denominators, keeping the sign of the leading coefficient.
pub(crate) fn primitive_integer(p: &[BigRational]) -> Vec<BigInt> {
    let lcm = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

pub(crate) fn eval_rational(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Sturm chain of the square-free part of `p`.
pub(crate) fn sturm_chain(p: &[BigInt]) -> Vec<Vec<BigRational>> {
    let pr = to_rational(p);
    let g = gcd(&pr, &derivative(&pr));
    let sq = if g.len() > 1 { exact_div(&pr, &g) } else { pr };
    let mut chain = vec![sq.clone(), derivative(&sq)];
    loop {
        let n = chain.len();
        if is_zero_poly(&chain[n - 1]) {
            chain.pop();
            break;
        }
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if is_zero_poly(&r) {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn exact_div(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let dq = r.len() - 1 - db;
    let mut q = vec![BigRational::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let c = &r[k + db] / &b[db];
        for i in 0..=db {
            let t = &c * &b[i];
            r[k + i] -= t;
        }
        q[k] = c;
    }
    q
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots in `(a, b]`.
pub(crate) fn sturm_count(chain: &[Vec<BigRational>], a: &BigRational, b: &BigRational) -> usize {
    let va = variations(chain.iter().map(|q| eval_rational(q, a).sign_ordering()));
    let vb = variations(chain.iter().map(|q| eval_rational(q, b).sign_ordering()));
    va.saturating_sub(vb)
}

/// Number of distinct real roots in `(a, +inf)`.
pub(crate) fn sturm_count_above(chain: &[Vec<BigRational>], a: &BigRational) -> usize {
    let va = variations(chain.iter().map(|q| eval_rational(q, a).sign_ordering()));
    let vinf = variations(chain.iter().map(|q| {
        q.last().map(|c| c.sign_ordering()).unwrap_or(Ordering::Equal)
    }));
    va.saturating_sub(vinf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x-2) and (x-1)(x+3)
        let g = gcd(&ri(&[2, -3, 1]), &ri(&[-3, 2, 1]));
        assert_eq!(g, ri(&[-1, 1]));
    }

    #[test]
    fn sturm_counts_roots_of_cubic() {
        // x^3 - 3x^2 + 2x - 2 has a single real root near 2.52
        let p: Vec<BigInt> = [-2, 2, -3, 1].iter().map(|&c| BigInt::from(c)).collect();
        let chain = sturm_chain(&p);
        let r = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(sturm_count(&chain, &r(2), &r(3)), 1);
        assert_eq!(sturm_count(&chain, &r(-10), &r(2)), 0);
        assert_eq!(sturm_count_above(&chain, &r(0)), 1);
    }

    #[test]
    fn dyadic_sign_matches_direct_evaluation() {
        let p: Vec<BigInt> = [-2, 2, -3, 1].iter().map(|&c| BigInt::from(c)).collect();
        // 5/2 and 13/5 bracket the root; 5/2 = 10/4
        assert_eq!(sign_at_dyadic(&p, &BigInt::from(10), 2), Ordering::Less);
        assert_eq!(sign_at_dyadic(&p, &BigInt::from(21), 3), Ordering::Greater);
    }
}
