use super::FamilyError;
use crate::beta_dynamics::{ExpansionOracle, OrbitKind};
use crate::exact_field::{FieldElement, PisotNumber};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

const PAD: f64 = 1e-6;
const GUARD: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AkiyamaElement {
    /// Power-basis coordinates, `x = c0 + c1 β + c2 β²`.
    pub coords: [i64; 3],
    pub approx: f64,
    pub finite: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AkiyamaReport {
    pub polynomial: Vec<i64>,
    /// Padded bound used for the search box.
    pub box_bound: f64,
    pub c1_range: (i64, i64),
    pub c2_range: (i64, i64),
    /// Sorted by coordinates.
    pub elements: Vec<AkiyamaElement>,
    /// Every element is finite, so property F holds.
    pub f_holds: bool,
}

impl AkiyamaReport {
    pub fn get(&self, coords: [i64; 3]) -> Option<&AkiyamaElement> {
        self.elements.binary_search_by(|e| e.coords.cmp(&coords)).ok().map(|i| &self.elements[i])
    }

    pub fn non_finite(&self) -> impl Iterator<Item = &AkiyamaElement> {
        self.elements.iter().filter(|e| !e.finite)
    }
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn inverse3(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let d = det3(m);
    let mut inv = [[0.0; 3]; 3];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let (r0, r1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            *v = sign * minor / d;
        }
    }
    inv
}

fn coords_of(x: &FieldElement) -> [BigInt; 3] {
    let mut c = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for (i, v) in x.num().iter().take(3).enumerate() {
        c[i] = v.clone();
    }
    c
}

/// Field norm of an integral element of a cubic field.
fn norm3(x: &FieldElement) -> BigInt {
    let beta = x.base().beta();
    let cols = [coords_of(x), coords_of(&(x * &beta)), coords_of(&(&(x * &beta) * &beta))];
    let m = |r: usize, c: usize| &cols[c][r];
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// Exact `|x'| <= F / (1 - |β'|)` for a complex conjugate pair, using
/// `|x'|² = N(x)/x` and `|β'|² = N(β)/β`.
fn complex_bound_exact(x: &FieldElement, floor: i64) -> bool {
    let base = x.base();
    let a = x.inv().expect("x > 0").mul_big(&norm3(x));
    let r = base.beta().inv().expect("β > 0").mul_big(&norm3(&base.beta()));
    let f2 = base.from_int(floor * floor);
    if a.cmp_value(&f2) != Ordering::Greater {
        return true;
    }
    let lhs = &(&a * &(base.one() - r)) + &f2;
    (&lhs * &lhs).cmp_value(&(&a * &f2).mul_int(4)) != Ordering::Greater
}

trait MulBig {
    fn mul_big(&self, k: &BigInt) -> FieldElement;
}

impl MulBig for FieldElement {
    fn mul_big(&self, k: &BigInt) -> FieldElement {
        let num = self.num().iter().map(|c| c * k).collect();
        FieldElement::from_parts(self.base(), num, self.den().clone())
    }
}

fn horner(z: Complex64, c: [i64; 3]) -> Complex64 {
    Complex64::new(c[0] as f64, 0.0) + z * (c[1] as f64) + z * z * (c[2] as f64)
}

/// Elements `x ∈ Z[β]`, `0 < x < 1`, with `|x'| <= ⌊β⌋/(1-|β'|)` for every
/// conjugate, each classified as finite or not.
pub fn akiyama_set(base: &PisotNumber, cap: usize) -> Result<AkiyamaReport, FamilyError> {
    if base.degree() != 3 {
        return Err(FamilyError::WrongDegree { expected: 3, found: base.degree() });
    }
    let rho = base
        .conjugate_bound()
        .and_then(|r| r.to_f64())
        .ok_or_else(|| FamilyError::ComplexEmbeddingUncertified("no certified conjugate bound".into()))?;
    let floor = base.floor_beta();
    let bmax = floor as f64 / (1.0 - rho) * (1.0 + PAD) + PAD;
    let b = base.approx();
    let conj = base.conjugates().to_vec();
    let complex = conj[0].im.abs() > GUARD;
    let emb = |z: Complex64, im: bool| {
        let p = [Complex64::new(1.0, 0.0), z, z * z];
        p.map(|w| if im { w.im } else { w.re })
    };
    let m = [
        [1.0, b, b * b],
        emb(conj[0], false),
        if complex { emb(conj[0], true) } else { emb(conj[1], false) },
    ];
    let minv = inverse3(&m);
    let target = [(0.0, 1.0), (-bmax, bmax), (-bmax, bmax)];
    let range = |i: usize| {
        let (mut lo, mut hi) = (0.0, 0.0);
        for (t, &(a, z)) in target.iter().enumerate() {
            let (u, v) = (minv[i][t] * a, minv[i][t] * z);
            lo += u.min(v);
            hi += u.max(v);
        }
        ((lo - PAD).floor() as i64, (hi + PAD).ceil() as i64)
    };
    let (c1r, c2r) = (range(1), range(2));
    let bounds: Vec<(Complex64, f64)> = if complex {
        vec![(conj[0], floor as f64 / (1.0 - conj[0].norm()))]
    } else {
        conj.iter().map(|&z| (z, floor as f64 / (1.0 - z.norm()))).collect()
    };

    let found: Result<Vec<Vec<[i64; 3]>>, FamilyError> = (c1r.0..=c1r.1)
        .into_par_iter()
        .map(|c1| {
            let mut out = Vec::new();
            for c2 in c2r.0..=c2r.1 {
                if c1 == 0 && c2 == 0 {
                    continue;
                }
                let y = c1 as f64 * b + c2 as f64 * b * b;
                let fy = y - y.floor();
                let c0 = if fy < GUARD * (1.0 + y.abs()) || 1.0 - fy < GUARD * (1.0 + y.abs()) {
                    -base.element(&[0, c1, c2]).floor_i64()
                } else {
                    -(y.floor() as i64)
                };
                let c = [c0, c1, c2];
                let mut inside = true;
                for &(z, bound) in &bounds {
                    let v = horner(z, c).norm();
                    let tol = GUARD * (1.0 + bound);
                    if v <= bound - tol {
                        continue;
                    }
                    if v >= bound + tol {
                        inside = false;
                        break;
                    }
                    if !complex {
                        return Err(FamilyError::ComplexEmbeddingUncertified(format!("{c:?} at the conjugate bound")));
                    }
                    if !complex_bound_exact(&base.element(&c), floor) {
                        inside = false;
                        break;
                    }
                }
                if inside {
                    out.push(c);
                }
            }
            Ok(out)
        })
        .collect();
    let mut coords: Vec<[i64; 3]> = found?.into_iter().flatten().collect();
    coords.sort();

    let oracle = ExpansionOracle::new(base, cap);
    let elements: Vec<AkiyamaElement> = coords
        .par_iter()
        .map(|&c| {
            let x = base.element(&c);
            let (kind, _, _) = oracle.classify_fraction(&x);
            AkiyamaElement { coords: c, approx: x.approx(), finite: kind == OrbitKind::Finite }
        })
        .collect();
    let f_holds = elements.iter().all(|e| e.finite);
    Ok(AkiyamaReport {
        polynomial: base.coeffs_high_first(),
        box_bound: bmax,
        c1_range: c1r,
        c2_range: c2r,
        elements,
        f_holds,
    })
}
