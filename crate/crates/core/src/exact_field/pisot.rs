use super::poly::{self, SignOrdering};
use super::roots::{self, DiskVerdict};
use super::{FieldElement, FieldError};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, RwLock};

/// Shift of the first refined bracket; later tiers double it.
const FIRST_SHIFT: u32 = 32;
/// Past this precision a vanishing test on the minimal polynomial is run.
const EXACT_TEST_SHIFT: u32 = 2048;

/// A real algebraic integer β > 1 given by a monic integer polynomial.
///
/// Cloning is cheap. Brackets of β are refined on demand and cached; the
/// cache only ever grows, so concurrent readers see consistent data.
#[derive(Clone)]
pub struct PisotNumber(pub(crate) Arc<Inner>);

pub(crate) struct Inner {
    /// Low degree first, monic.
    pub(crate) coeffs: Vec<BigInt>,
    pub(crate) floor: i64,
    conj_bound: Option<BigRational>,
    conjugates: Vec<Complex64>,
    approx: f64,
    tiers: RwLock<Vec<Arc<Tier>>>,
}

/// β lies in `(lo / 2^shift, (lo + 1) / 2^shift)`.
pub(crate) struct Tier {
    pub(crate) shift: u32,
    pub(crate) lo: BigInt,
    /// `lo^i * 2^(shift * (d - 1 - i))`
    pow_lo: Vec<BigInt>,
    /// `(lo + 1)^i * 2^(shift * (d - 1 - i))`
    pow_hi: Vec<BigInt>,
}

impl Tier {
    fn new(shift: u32, lo: BigInt, d: usize) -> Tier {
        let hi = &lo + 1;
        let mut pow_lo = Vec::with_capacity(d);
        let mut pow_hi = Vec::with_capacity(d);
        let mut a = BigInt::one();
        let mut b = BigInt::one();
        for i in 0..d {
            let sh = shift as usize * (d - 1 - i);
            pow_lo.push(&a << sh);
            pow_hi.push(&b << sh);
            a *= &lo;
            b *= &hi;
        }
        Tier { shift, lo, pow_lo, pow_hi }
    }

    /// Bounds on `2^(shift (d-1)) * sum num_i β^i`.
    fn bounds(&self, num: &[BigInt]) -> (BigInt, BigInt) {
        let mut lower = BigInt::zero();
        let mut upper = BigInt::zero();
        for (i, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_positive() {
                lower += c * &self.pow_lo[i];
                upper += c * &self.pow_hi[i];
            } else {
                lower += c * &self.pow_hi[i];
                upper += c * &self.pow_lo[i];
            }
        }
        (lower, upper)
    }
}

impl PisotNumber {
    /// Builds β from coefficients written highest degree first and certifies
    /// the Pisot property.
    pub fn make(coeffs_high_first: &[i64]) -> Result<PisotNumber, FieldError> {
        let low: Vec<BigInt> = coeffs_high_first.iter().rev().map(|&c| BigInt::from(c)).collect();
        Self::make_big(low)
    }

    /// Same as [`PisotNumber::make`] with low-first big coefficients.
    pub fn make_big(mut low: Vec<BigInt>) -> Result<PisotNumber, FieldError> {
        check_shape(&mut low)?;
        let mut disks = roots::locate(&low).map_err(verdict_error)?;
        let (verdict, bound) = roots::certify(&low, &mut disks);
        match verdict {
            DiskVerdict::Pisot => {}
            v => return Err(verdict_error(v)),
        }
        let approx = disks.centers[disks.dominant].re;
        let floor = integer_bracket(&low, approx)?;
        let conjugates = disks
            .centers
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != disks.dominant)
            .map(|(_, &z)| z)
            .collect();
        Ok(Self::assemble(low, floor, bound, conjugates, approx))
    }

    /// The largest real root of a monic polynomial when it exceeds 1 and is
    /// the only real root above its integer part. No conjugate bound is
    /// certified, so the result need not be Pisot.
    pub fn dominant_root(coeffs_high_first: &[i64]) -> Result<PisotNumber, FieldError> {
        let mut low: Vec<BigInt> = coeffs_high_first.iter().rev().map(|&c| BigInt::from(c)).collect();
        check_shape(&mut low)?;
        let chain = poly::sturm_chain(&low);
        let z = roots::aberth(&low).ok_or(FieldError::Uncertified)?;
        let approx = z
            .iter()
            .filter(|c| c.im.abs() <= 1e-7 * (1.0 + c.re.abs()))
            .map(|c| c.re)
            .fold(f64::NEG_INFINITY, f64::max);
        if !(approx > 1.0) {
            return Err(FieldError::NoDominantRealRoot);
        }
        let floor = integer_bracket(&low, approx)?;
        let m = BigRational::from_integer(floor.into());
        if poly::sturm_count_above(&chain, &m) != 1 {
            return Err(FieldError::NoDominantRealRoot);
        }
        let mut conjugates: Vec<Complex64> = z;
        let idx = conjugates
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1.re - approx).abs().partial_cmp(&(b.1.re - approx).abs()).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        conjugates.remove(idx);
        Ok(Self::assemble(low, floor, None, conjugates, approx))
    }

    fn assemble(
        low: Vec<BigInt>,
        floor: i64,
        conj_bound: Option<BigRational>,
        conjugates: Vec<Complex64>,
        approx: f64,
    ) -> PisotNumber {
        let d = low.len() - 1;
        let tier0 = Arc::new(Tier::new(0, BigInt::from(floor), d));
        PisotNumber(Arc::new(Inner {
            coeffs: low,
            floor,
            conj_bound,
            conjugates,
            approx,
            tiers: RwLock::new(vec![tier0]),
        }))
    }

    pub fn degree(&self) -> usize {
        self.0.coeffs.len() - 1
    }

    /// Coefficients, low degree first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.0.coeffs
    }

    /// Coefficients as `i64`, highest degree first.
    pub fn coeffs_high_first(&self) -> Vec<i64> {
        self.0.coeffs.iter().rev().map(|c| c.to_i64().unwrap_or(i64::MAX)).collect()
    }

    pub fn floor_beta(&self) -> i64 {
        self.0.floor
    }

    /// Certified `ρ < 1` with `|β'| ≤ ρ` for every conjugate, when certified.
    pub fn conjugate_bound(&self) -> Option<&BigRational> {
        self.0.conj_bound.as_ref()
    }

    pub fn is_certified_pisot(&self) -> bool {
        self.0.conj_bound.is_some()
    }

    /// Approximate conjugates other than β.
    pub fn conjugates(&self) -> &[Complex64] {
        &self.0.conjugates
    }

    pub fn approx(&self) -> f64 {
        self.0.approx
    }

    pub fn same_field(&self, other: &PisotNumber) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.coeffs == other.0.coeffs
    }

    /// Isolating interval of width at most `2^-bits`.
    pub fn isolating_interval(&self, bits: u32) -> (BigRational, BigRational) {
        let t = self.tier_at_least(bits);
        let den = BigInt::one() << t.shift as usize;
        (
            BigRational::new(t.lo.clone(), den.clone()),
            BigRational::new(&t.lo + 1, den),
        )
    }

    fn tier_at_least(&self, bits: u32) -> Arc<Tier> {
        let mut k = 0;
        loop {
            let t = self.tier(k);
            if t.shift >= bits {
                return t;
            }
            k += 1;
        }
    }

    pub(crate) fn tier(&self, k: usize) -> Arc<Tier> {
        if let Some(t) = self.0.tiers.read().unwrap().get(k) {
            return t.clone();
        }
        let mut tiers = self.0.tiers.write().unwrap();
        while tiers.len() <= k {
            let prev = tiers.last().unwrap().clone();
            let shift = if prev.shift == 0 { FIRST_SHIFT } else { prev.shift * 2 };
            let lo = self.bisect(&prev, shift);
            tiers.push(Arc::new(Tier::new(shift, lo, self.degree())));
        }
        tiers[k].clone()
    }

    /// Exact bisection from `prev` down to width `2^-shift`.
    fn bisect(&self, prev: &Tier, shift: u32) -> BigInt {
        let extra = (shift - prev.shift) as usize;
        let mut lo = &prev.lo << extra;
        let mut hi = (&prev.lo + 1) << extra;
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1usize;
            match poly::sign_at_dyadic(&self.0.coeffs, &mid, shift) {
                Ordering::Less => lo = mid,
                Ordering::Greater => hi = mid,
                // a rational root would be an integer, excluded at construction
                Ordering::Equal => unreachable!("rational root inside the isolating interval"),
            }
        }
        lo
    }

    /// Sign of `sum num_i β^i`.
    pub(crate) fn sign_of(&self, num: &[BigInt]) -> Ordering {
        if num.iter().all(|c| c.is_zero()) {
            return Ordering::Equal;
        }
        if num.iter().skip(1).all(|c| c.is_zero()) {
            return num[0].sign_ordering();
        }
        let mut k = 1;
        loop {
            let t = self.tier(k);
            let (lower, upper) = t.bounds(num);
            if lower.is_positive() {
                return Ordering::Greater;
            }
            if upper.is_negative() {
                return Ordering::Less;
            }
            if t.shift >= EXACT_TEST_SHIFT && self.vanishes(num, &t) {
                return Ordering::Equal;
            }
            k += 1;
        }
    }

    /// Whether β is a root of `num`, decided by a gcd with the defining
    /// polynomial (relevant only when that polynomial is reducible).
    fn vanishes(&self, num: &[BigInt], t: &Tier) -> bool {
        let g = poly::gcd(&poly::to_rational(num), &poly::to_rational(&self.0.coeffs));
        if g.len() < 2 {
            return false;
        }
        let gi = poly::primitive_integer(&g);
        let chain = poly::sturm_chain(&gi);
        let den = BigInt::one() << t.shift as usize;
        let lo = BigRational::new(t.lo.clone(), den.clone());
        let hi = BigRational::new(&t.lo + 1, den);
        poly::sturm_count(&chain, &lo, &hi) > 0
    }

    /// `⌊(sum num_i β^i) / den⌋` for `den > 0`.
    pub(crate) fn floor_of(&self, num: &[BigInt], den: &BigInt) -> BigInt {
        if num.iter().skip(1).all(|c| c.is_zero()) {
            return num[0].div_floor(den);
        }
        let mut k = 1;
        loop {
            let t = self.tier(k);
            let (lower, upper) = t.bounds(num);
            let scale = den << (t.shift as usize * (self.degree() - 1));
            let fl = lower.div_floor(&scale);
            let fu = upper.div_floor(&scale);
            if fl == fu {
                return fl;
            }
            if &fu - &fl == BigInt::one() {
                // decide x >= fu exactly
                let mut shifted = num.to_vec();
                shifted[0] -= &fu * den;
                return match self.sign_of(&shifted) {
                    Ordering::Less => fl,
                    _ => fu,
                };
            }
            k += 1;
        }
    }

    pub fn element(&self, coords: &[i64]) -> FieldElement {
        FieldElement::from_coords(self, coords)
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement::from_coords(self, &[v])
    }

    pub fn zero(&self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn beta(&self) -> FieldElement {
        self.element(&[0, 1])
    }

    /// `α = β - ⌊β⌋`.
    pub fn alpha(&self) -> FieldElement {
        self.element(&[-self.0.floor, 1])
    }

    /// `β⁻¹ = -(β^{d-1} + a_{d-1} β^{d-2} + ... + a_1) / a_0`.
    pub fn inv_beta(&self) -> FieldElement {
        let c = &self.0.coeffs;
        let d = self.degree();
        assert!(!c[0].is_zero(), "β⁻¹ needs a nonzero constant coefficient");
        let num: Vec<BigInt> = (0..d).map(|i| -&c[i + 1]).collect();
        FieldElement::from_parts(self, num, c[0].clone())
    }
}

impl fmt::Debug for PisotNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PisotNumber({})", self)
    }
}

impl fmt::Display for PisotNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.0.coeffs;
        let d = c.len() - 1;
        let mut first = true;
        for i in (0..=d).rev() {
            let a = &c[i];
            if a.is_zero() {
                continue;
            }
            let sign = if a.is_negative() { "-" } else { "+" };
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let m = a.abs();
            match (i, m.is_one()) {
                (0, _) => write!(f, "{m}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{m}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{m}x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl PartialEq for PisotNumber {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for PisotNumber {}

fn check_shape(low: &mut Vec<BigInt>) -> Result<(), FieldError> {
    poly::trim(low);
    let d = low.len().saturating_sub(1);
    if d < 2 {
        return Err(FieldError::DegreeTooLow(d));
    }
    if !low[d].is_one() {
        return Err(FieldError::NotMonic);
    }
    Ok(())
}

fn verdict_error(v: DiskVerdict) -> FieldError {
    match v {
        DiskVerdict::Pisot => unreachable!(),
        DiskVerdict::ConjugateOutside => FieldError::NotPisot,
        DiskVerdict::NoRealDominant => FieldError::NoDominantRealRoot,
        DiskVerdict::Uncertified => FieldError::Uncertified,
    }
}

/// Integer `m >= 1` with `p(m) < 0 < p(m + 1)` near the approximate root.
fn integer_bracket(low: &[BigInt], approx: f64) -> Result<i64, FieldError> {
    let guess = approx.floor() as i64;
    for m in [guess, guess - 1, guess + 1] {
        if m < 1 {
            continue;
        }
        let a = poly::sign_at_int(low, &BigInt::from(m));
        let b = poly::sign_at_int(low, &BigInt::from(m + 1));
        if a == Ordering::Equal || b == Ordering::Equal {
            return Err(FieldError::IntegralRoot);
        }
        if a == Ordering::Less && b == Ordering::Greater {
            return Ok(m);
        }
    }
    Err(FieldError::Uncertified)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn cubic_is_isolated_between_five_halves_and_thirteen_fifths() {
        let b = PisotNumber::make(&[1, -3, 2, -2]).unwrap();
        assert_eq!(b.floor_beta(), 2);
        let (lo, hi) = b.isolating_interval(8);
        assert!(lo > q(5, 2) && hi < q(13, 5));
    }

    #[test]
    fn sqrt_two_is_rejected() {
        assert_eq!(PisotNumber::make(&[1, 0, -2]).unwrap_err(), FieldError::NotPisot);
    }

    #[test]
    fn quartic_has_floor_two() {
        let b = PisotNumber::make(&[1, -2, 0, -1, -1]).unwrap();
        assert_eq!(b.floor_beta(), 2);
        let (lo, hi) = b.isolating_interval(4);
        assert!(lo >= q(2, 1) && hi <= q(5, 2));
    }

    #[test]
    fn degree_and_shape_errors() {
        assert_eq!(PisotNumber::make(&[1, -3]).unwrap_err(), FieldError::DegreeTooLow(1));
        assert_eq!(PisotNumber::make(&[2, -3, 1]).unwrap_err(), FieldError::NotMonic);
        assert_eq!(PisotNumber::make(&[1, 0, 1]).unwrap_err(), FieldError::NoDominantRealRoot);
    }

    #[test]
    fn golden_ratio_is_pisot() {
        let b = PisotNumber::make(&[1, -1, -1]).unwrap();
        assert_eq!(b.floor_beta(), 1);
        let rho = b.conjugate_bound().unwrap().to_f64().unwrap();
        assert!((rho - 0.618034).abs() < 1e-5);
    }

    #[test]
    fn brackets_shrink_and_straddle_the_root() {
        let b = PisotNumber::make(&[1, -5, 4, -4]).unwrap();
        let mut prev = None;
        for k in 0..5 {
            let t = b.tier(k);
            let c = b.coeffs();
            assert_eq!(poly::sign_at_dyadic(c, &t.lo, t.shift), Ordering::Less);
            assert_eq!(poly::sign_at_dyadic(c, &(&t.lo + 1), t.shift), Ordering::Greater);
            if let Some(p) = prev {
                assert!(t.shift > p);
            }
            prev = Some(t.shift);
        }
    }

    #[test]
    fn dominant_root_accepts_non_pisot_input() {
        // x^5 - 3x^4 + x^3 - 3x^2 + 2x - 2 has a second root of modulus above 1
        let coeffs = [1, -3, 1, -3, 2, -2];
        assert!(PisotNumber::make(&coeffs).is_err());
        let b = PisotNumber::dominant_root(&coeffs).unwrap();
        assert_eq!(b.floor_beta(), 2);
        assert!(!b.is_certified_pisot());
    }
}
