use super::{FieldError, PisotNumber};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

/// An element `(c_0 + c_1 β + ... + c_{d-1} β^{d-1}) / den` of Q(β).
///
/// Always canonical: `den > 0` and the numerator entries and `den` are coprime.
#[derive(Clone)]
pub struct FieldElement {
    num: Vec<BigInt>,
    den: BigInt,
    base: PisotNumber,
}

/// JSON shape `{"num":[...],"den":k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldElementRepr {
    pub num: Vec<i64>,
    pub den: i64,
}

impl FieldElement {
    pub(crate) fn from_coords(base: &PisotNumber, coords: &[i64]) -> FieldElement {
        let num = coords.iter().map(|&c| BigInt::from(c)).collect();
        FieldElement::from_parts(base, num, BigInt::one())
    }

    /// Builds and canonicalizes; numerators longer than the degree are reduced.
    pub fn from_parts(base: &PisotNumber, num: Vec<BigInt>, den: BigInt) -> FieldElement {
        assert!(!den.is_zero(), "zero denominator");
        let num = reduce(base, num);
        let mut x = FieldElement { num, den, base: base.clone() };
        x.normalize();
        x
    }

    pub fn from_repr(base: &PisotNumber, r: &FieldElementRepr) -> Result<FieldElement, FieldError> {
        if r.den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FieldElement::from_parts(
            base,
            r.num.iter().map(|&c| BigInt::from(c)).collect(),
            BigInt::from(r.den),
        ))
    }

    pub fn to_repr(&self) -> Result<FieldElementRepr, FieldError> {
        Ok(FieldElementRepr {
            num: self.num.iter().map(|c| c.to_i64().ok_or(FieldError::Overflow)).collect::<Result<_, _>>()?,
            den: self.den.to_i64().ok_or(FieldError::Overflow)?,
        })
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let g = self.num.iter().fold(self.den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn num(&self) -> &[BigInt] {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn base(&self) -> &PisotNumber {
        &self.base
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value when every coordinate but the constant vanishes.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn sign(&self) -> Ordering {
        self.base.sign_of(&self.num)
    }

    pub fn signum(&self) -> i32 {
        match self.sign() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn floor(&self) -> BigInt {
        self.base.floor_of(&self.num, &self.den)
    }

    pub fn floor_i64(&self) -> i64 {
        self.floor().to_i64().expect("floor fits in i64")
    }

    /// Exact comparison of real values.
    pub fn cmp_value(&self, other: &FieldElement) -> Ordering {
        (self - other).sign()
    }

    /// Approximation for display and diagnostics only.
    pub fn approx(&self) -> f64 {
        let b = self.base.approx();
        let mut acc = 0.0;
        for c in self.num.iter().rev() {
            acc = acc * b + c.to_f64().unwrap_or(f64::NAN);
        }
        acc / self.den.to_f64().unwrap_or(f64::NAN)
    }

    pub fn try_add(&self, o: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(o)?;
        let num = self.num.iter().zip(&o.num).map(|(a, b)| a * &o.den + b * &self.den).collect();
        Ok(FieldElement::from_parts(&self.base, num, &self.den * &o.den))
    }

    pub fn try_sub(&self, o: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(o)?;
        let num = self.num.iter().zip(&o.num).map(|(a, b)| a * &o.den - b * &self.den).collect();
        Ok(FieldElement::from_parts(&self.base, num, &self.den * &o.den))
    }

    pub fn try_mul(&self, o: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(o)?;
        let d = self.num.len();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Ok(FieldElement::from_parts(&self.base, prod, &self.den * &o.den))
    }

    fn check(&self, o: &FieldElement) -> Result<(), FieldError> {
        if self.base.same_field(&o.base) {
            Ok(())
        } else {
            Err(FieldError::MixedParents)
        }
    }

    pub fn mul_int(&self, k: i64) -> FieldElement {
        let k = BigInt::from(k);
        let num = self.num.iter().map(|c| c * &k).collect();
        FieldElement::from_parts(&self.base, num, self.den.clone())
    }

    pub fn add_int(&self, k: i64) -> FieldElement {
        let mut num = self.num.clone();
        num[0] += &self.den * BigInt::from(k);
        FieldElement::from_parts(&self.base, num, self.den.clone())
    }

    pub fn div_int(&self, k: i64) -> FieldElement {
        assert!(k != 0, "division by zero");
        FieldElement::from_parts(&self.base, self.num.clone(), &self.den * BigInt::from(k))
    }

    pub fn mul_beta(&self) -> FieldElement {
        let mut num = Vec::with_capacity(self.num.len() + 1);
        num.push(BigInt::zero());
        num.extend(self.num.iter().cloned());
        FieldElement::from_parts(&self.base, num, self.den.clone())
    }

    pub fn div_beta(&self) -> FieldElement {
        self * &self.base.inv_beta()
    }

    /// Multiplicative inverse via the multiplication matrix.
    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let d = self.num.len();
        // column i is the numerator of x * β^i
        let mut cols = Vec::with_capacity(d);
        let mut cur = FieldElement::from_parts(&self.base, self.num.clone(), BigInt::one());
        for _ in 0..d {
            cols.push(cur.num.clone());
            cur = cur.mul_beta();
        }
        let mut m: Vec<Vec<BigRational>> = (0..d)
            .map(|r| {
                let mut row: Vec<BigRational> =
                    (0..d).map(|c| BigRational::from_integer(cols[c][r].clone())).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for c in 0..d {
            let p = (c..d).find(|&r| !m[r][c].is_zero()).ok_or(FieldError::DivisionByZero)?;
            m.swap(c, p);
            let piv = m[c][c].clone();
            for v in m[c].iter_mut() {
                *v /= &piv;
            }
            for r in 0..d {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in c..=d {
                        let t = &f * &m[c][k];
                        m[r][k] -= t;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = m.iter().map(|row| row[d].clone()).collect();
        let lcm = sol.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let num = sol.iter().map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        // x = num_x / den_x, so x^{-1} = den_x * (num_x)^{-1}
        let num = num_mul_scalar(num, &self.den);
        Ok(FieldElement::from_parts(&self.base, num, lcm))
    }

    pub fn pow(&self, e: i64) -> FieldElement {
        let mut base = if e < 0 { self.inv().expect("inverse of zero") } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.base.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Coordinates `(a, b, c)` with `x = a + bα + cα²`, `α = β - ⌊β⌋`.
    pub fn alpha_basis_coords(&self) -> Result<[BigInt; 3], FieldError> {
        let d = self.base.degree();
        if d != 3 {
            return Err(FieldError::WrongDegree { expected: 3, found: d });
        }
        if !self.den.is_one() {
            return Err(FieldError::NotIntegral);
        }
        let n = BigInt::from(self.base.floor_beta());
        let (x0, x1, x2) = (&self.num[0], &self.num[1], &self.num[2]);
        let c = x2.clone();
        let b = x1 + &n * 2 * x2;
        let a = x0 + &n * x1 + &n * &n * x2;
        Ok([a, b, c])
    }

    /// Inverse of [`FieldElement::alpha_basis_coords`].
    pub fn from_alpha_basis(base: &PisotNumber, abc: &[BigInt; 3]) -> Result<FieldElement, FieldError> {
        let d = base.degree();
        if d != 3 {
            return Err(FieldError::WrongDegree { expected: 3, found: d });
        }
        let n = BigInt::from(base.floor_beta());
        let [a, b, c] = abc;
        let x2 = c.clone();
        let x1 = b - &n * 2 * c;
        let x0 = a - &n * b + &n * &n * c;
        Ok(FieldElement::from_parts(base, vec![x0, x1, x2], BigInt::one()))
    }
}

fn num_mul_scalar(v: Vec<BigInt>, k: &BigInt) -> Vec<BigInt> {
    v.into_iter().map(|c| c * k).collect()
}

/// Reduces a numerator of any length modulo the defining polynomial, padding to degree `d`.
fn reduce(base: &PisotNumber, mut num: Vec<BigInt>) -> Vec<BigInt> {
    let p = base.coeffs();
    let d = p.len() - 1;
    while num.len() > d {
        let top = num.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let k = num.len() - d;
        // β^{k+d} = -sum p_i β^{k+i}
        for i in 0..d {
            if !p[i].is_zero() {
                num[k + i] -= &top * &p[i];
            }
        }
    }
    num.resize(d, BigInt::zero());
    num
}

impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        self.num == o.num && self.den == o.den && self.base.same_field(&o.base)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.num.iter().map(|c| c.to_string()).collect();
        if self.den.is_one() {
            write!(f, "[{}]", parts.join(","))
        } else {
            write!(f, "[{}]/{}", parts.join(","), self.den)
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $via:ident) => {
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &'a FieldElement) -> FieldElement {
                self.$via(o).expect("operands from different fields")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$via(&o).expect("operands from different fields")
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &'a FieldElement) -> FieldElement {
                (&self).$via(o).expect("operands from different fields")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { num: self.num.iter().map(|c| -c).collect(), den: self.den.clone(), base: self.base.clone() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pn(n: i64) -> PisotNumber {
        PisotNumber::make(&[1, -(n + 1), n, -n]).unwrap()
    }

    #[test]
    fn beta_cubed_reduces_by_the_cubic_relation() {
        for n in 2..8 {
            let b = pn(n);
            let beta = b.beta();
            let prod = &beta * &(&beta * &beta);
            assert_eq!(prod, b.element(&[n, -n, n + 1]));
        }
    }

    #[test]
    fn self_difference_is_zero() {
        let b = pn(3);
        let x = b.element(&[4, -7, 2]).div_int(6);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn inverse_of_beta_has_denominator_n() {
        for n in 2..10 {
            let b = pn(n);
            let ib = b.inv_beta();
            assert_eq!(ib, b.element(&[n, -(n + 1), 1]).div_int(n));
            assert_eq!(ib.den(), &BigInt::from(n));
            assert_eq!(&ib * &b.beta(), b.one());
        }
        let g = PisotNumber::make(&[1, -1, -1]).unwrap();
        assert_eq!(g.inv_beta(), g.element(&[-1, 1]));
        assert!(g.inv_beta().is_integral());
    }

    #[test]
    fn signs_of_small_elements() {
        let b = pn(4);
        let a = b.alpha();
        assert_eq!(a.sign(), Ordering::Greater);
        let e = b.one() - a.mul_int(3);
        assert_eq!(e.sign(), Ordering::Greater);
        assert_eq!(b.zero().sign(), Ordering::Equal);
    }

    #[test]
    fn floors() {
        let b = pn(2);
        assert_eq!(b.beta().floor_i64(), 2);
        assert_eq!(b.zero().floor_i64(), 0);
        assert_eq!(b.from_int(-3).div_int(2).floor_i64(), -2);
        for n in 2..13 {
            assert_eq!(pn(n).beta().floor_i64(), n);
        }
    }

    #[test]
    fn general_inverse() {
        let b = pn(5);
        let x = b.element(&[3, -2, 7]).div_int(4);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, b.one());
        assert_eq!(b.beta().pow(-2), &b.inv_beta() * &b.inv_beta());
    }

    #[test]
    fn alpha_basis_round_trip() {
        let b = pn(6);
        let a2 = &b.alpha() * &b.alpha();
        let abc = a2.alpha_basis_coords().unwrap();
        assert_eq!(abc, [BigInt::zero(), BigInt::zero(), BigInt::one()]);
        let beta = b.beta().alpha_basis_coords().unwrap();
        assert_eq!(beta, [BigInt::from(6), BigInt::one(), BigInt::zero()]);
        let x = b.element(&[11, -4, 9]);
        let back = FieldElement::from_alpha_basis(&b, &x.alpha_basis_coords().unwrap()).unwrap();
        assert_eq!(back, x);
        assert_eq!(b.inv_beta().alpha_basis_coords().unwrap_err(), FieldError::NotIntegral);
    }

    #[test]
    fn mixed_parents_are_rejected() {
        let x = pn(2).one();
        let y = pn(3).one();
        assert_eq!(x.try_add(&y).unwrap_err(), FieldError::MixedParents);
    }

    #[test]
    fn json_round_trip() {
        let b = pn(3);
        let x = b.element(&[1, 2, -1]).div_int(3);
        let r = x.to_repr().unwrap();
        assert_eq!(r, FieldElementRepr { num: vec![1, 2, -1], den: 3 });
        assert_eq!(FieldElement::from_repr(&b, &r).unwrap(), x);
    }
}
