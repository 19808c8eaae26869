//! Approximate complex roots and exact inclusion-disk certificates.
//!
//! Roots are located with the Aberth iteration in `f64`. The float values are
//! then treated as exact rational centers, and the Weierstrass radii
//! `d * |p(z_i)| / prod_{j != i} |z_i - z_j|` are bounded in exact rational
//! arithmetic. The union of the disks contains every root and a component made
//! of `m` disks contains exactly `m` roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// Absolute radius every inclusion disk must achieve.
pub const DISK_TOLERANCE: f64 = 1e-9;
/// Required gap between the conjugates and the unit circle.
pub const UNIT_MARGIN: f64 = 1e-6;

pub(crate) fn aberth(coeffs_low: &[BigInt]) -> Option<Vec<Complex64>> {
    let d = coeffs_low.len() - 1;
    let c: Vec<f64> = coeffs_low.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    if c.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let lead = c[d];
    let radius = 1.0 + c[..d].iter().map(|x| (x / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / (d as f64) + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(c[d], 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for k in (0..d).rev() {
            dp = dp * x + p;
            p = p * x + c[k];
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // Newton polish.
    for zi in z.iter_mut() {
        for _ in 0..4 {
            let (p, dp) = eval(*zi);
            if dp.norm() == 0.0 {
                break;
            }
            let next = *zi - p / dp;
            if next.is_finite() {
                *zi = next;
            }
        }
    }
    if z.iter().any(|x| !x.is_finite()) {
        return None;
    }
    Some(z)
}

#[derive(Clone, Debug)]
struct ComplexQ {
    re: BigRational,
    im: BigRational,
}

impl ComplexQ {
    fn from_f64(z: Complex64) -> Self {
        ComplexQ {
            re: BigRational::from_f64(z.re).unwrap_or_else(BigRational::zero),
            im: BigRational::from_f64(z.im).unwrap_or_else(BigRational::zero),
        }
    }
    fn mul(&self, o: &ComplexQ) -> ComplexQ {
        ComplexQ {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn sub(&self, o: &ComplexQ) -> ComplexQ {
        ComplexQ { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn eval_exact(coeffs_low: &[BigInt], z: &ComplexQ) -> ComplexQ {
    let mut acc = ComplexQ { re: BigRational::zero(), im: BigRational::zero() };
    for c in coeffs_low.iter().rev() {
        acc = acc.mul(z);
        acc.re += BigRational::from_integer(c.clone());
    }
    acc
}

fn rational(x: f64) -> BigRational {
    BigRational::from_f64(x).expect("finite constant")
}

/// Certified root disks of a monic integer polynomial.
#[derive(Clone, Debug)]
pub(crate) struct RootDisks {
    pub centers: Vec<Complex64>,
    /// Index of the dominant real root.
    pub dominant: usize,
    /// Exact squared radii are all at most `DISK_TOLERANCE^2`.
    pub certified: bool,
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum DiskVerdict {
    /// Every non-dominant disk lies inside `|z| <= 1 - UNIT_MARGIN`.
    Pisot,
    /// Some non-dominant disk reaches `|z| >= 1 - UNIT_MARGIN`.
    ConjugateOutside,
    NoRealDominant,
    Uncertified,
}

pub(crate) fn locate(coeffs_low: &[BigInt]) -> Result<RootDisks, DiskVerdict> {
    let z = aberth(coeffs_low).ok_or(DiskVerdict::Uncertified)?;
    let d = z.len();
    // dominant: the largest real part among roots that are numerically real
    let dominant = (0..d)
        .filter(|&i| z[i].im.abs() <= 1e-7 * (1.0 + z[i].re.abs()))
        .max_by(|&a, &b| z[a].re.partial_cmp(&z[b].re).unwrap())
        .ok_or(DiskVerdict::NoRealDominant)?;
    let mut centers = z;
    centers[dominant] = Complex64::new(centers[dominant].re, 0.0);
    Ok(RootDisks { centers, dominant, certified: false })
}

/// Exact certification of the disks; fills in `certified` and returns the verdict
/// together with a rational upper bound for the conjugate moduli.
pub(crate) fn certify(coeffs_low: &[BigInt], disks: &mut RootDisks) -> (DiskVerdict, Option<BigRational>) {
    let d = disks.centers.len();
    let q: Vec<ComplexQ> = disks.centers.iter().map(|&c| ComplexQ::from_f64(c)).collect();
    let tol = rational(DISK_TOLERANCE);
    let tol2 = &tol * &tol;
    let dd = BigRational::from_integer(BigInt::from(d));
    for i in 0..d {
        let pz = eval_exact(coeffs_low, &q[i]);
        let mut denom = BigRational::from_integer(1.into());
        for j in 0..d {
            if j != i {
                denom *= q[i].sub(&q[j]).norm_sqr();
            }
        }
        if denom.is_zero() {
            return (DiskVerdict::Uncertified, None);
        }
        // r_i^2 = d^2 |p(z_i)|^2 / prod |z_i - z_j|^2
        let r2 = &dd * &dd * pz.norm_sqr() / denom;
        if r2 > tol2 {
            return (DiskVerdict::Uncertified, None);
        }
    }
    disks.certified = true;
    let dom = disks.dominant;
    // dominant disk isolated from the others (radii <= tol each)
    let sep = &tol + &tol;
    let sep2 = &sep * &sep;
    for i in 0..d {
        if i != dom && q[dom].sub(&q[i]).norm_sqr() <= sep2 {
            return (DiskVerdict::NoRealDominant, None);
        }
    }
    let one = BigRational::from_integer(1.into());
    if q[dom].re <= &one + &tol {
        return (DiskVerdict::NoRealDominant, None);
    }
    let limit = &one - rational(UNIT_MARGIN) - &tol;
    let limit2 = &limit * &limit;
    let mut bound = BigRational::zero();
    let mut outside = false;
    for i in 0..d {
        if i == dom {
            continue;
        }
        let m2 = q[i].norm_sqr();
        if m2 > limit2 {
            outside = true;
        }
        // rho_i >= |z_i| + tol, certified by (rho_i - tol)^2 >= |z_i|^2
        let approx = disks.centers[i].norm();
        let mut rho = rational(approx + 2.0 * DISK_TOLERANCE);
        while {
            let t = &rho - &tol;
            t.is_negative() || &t * &t < m2
        } {
            rho += &tol;
        }
        if rho > bound {
            bound = rho;
        }
    }
    if outside {
        (DiskVerdict::ConjugateOutside, Some(bound))
    } else {
        (DiskVerdict::Pisot, Some(bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn cubic_family_member_is_certified() {
        // x^3 - 3x^2 + 2x - 2, low first
        let p = big(&[-2, 2, -3, 1]);
        let mut disks = locate(&p).unwrap();
        let (v, rho) = certify(&p, &mut disks);
        assert_eq!(v, DiskVerdict::Pisot);
        let rho = rho.unwrap().to_f64().unwrap();
        assert!((rho - 0.8906).abs() < 1e-3, "{rho}");
        assert!((disks.centers[disks.dominant].re - 2.52138).abs() < 1e-4);
    }

    #[test]
    fn sqrt_two_has_conjugate_outside() {
        let p = big(&[-2, 0, 1]);
        let mut disks = locate(&p).unwrap();
        let (v, _) = certify(&p, &mut disks);
        assert_eq!(v, DiskVerdict::ConjugateOutside);
    }
}
