//! The map `τ_β` on `U ⊂ Z³`, conjugate to `T_β` through the functional
//! `f(l,k,j) = l - αk + (α/β)j`, for the cubic family.

mod bounds;
mod orbit;

pub use bounds::{check_bounds, five_step_signs, near_integer_points, BoundsReport, FiveStepTrace};
pub use orbit::{invariant_ball_census, Census, Cycle, OrbitKindTau, TauOrbit, DEFAULT_ORBIT_CAP};

use crate::exact_field::{FieldElement, FieldError, PisotNumber};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("point {0} is not in U")]
    NotInU(LatticePoint),
    #[error("point {0} is not in U*")]
    NotInUStar(LatticePoint),
    #[error("τ does not map {0} to {1}")]
    NotRelated(LatticePoint, LatticePoint),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    pub l: i64,
    pub k: i64,
    pub j: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { l: 0, k: 0, j: 0 };

    pub fn new(l: i64, k: i64, j: i64) -> LatticePoint {
        LatticePoint { l, k, j }
    }

    /// `max(|k|, |j|)`
    pub fn m(&self) -> i64 {
        self.k.abs().max(self.j.abs())
    }

    /// `min(|k|, |j|)`
    pub fn mu(&self) -> i64 {
        self.k.abs().min(self.j.abs())
    }

    pub fn is_origin(&self) -> bool {
        *self == LatticePoint::ORIGIN
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l, self.k, self.j)
    }
}

/// Whether `τ` identifies a second preimage of the image point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InjectivityClass {
    OneToOne,
    /// `f(p0) < α/β`; the sibling `(l0+1, k0, j0-1)` emits `n`.
    TwoToOneLow { sibling: LatticePoint },
    /// `f(p0) >= 1 - α/β`; the sibling `(l0-1, k0, j0+1)` emits `0`.
    TwoToOneHigh { sibling: LatticePoint },
}

pub type Matrix3 = [[i64; 3]; 3];

/// Context for `p_n`: the field, `α`, `α/β` and floating approximations used
/// to skip exact floors when they are far from an integer.
#[derive(Clone, Debug)]
pub struct Lattice {
    n: i64,
    base: PisotNumber,
    alpha: FieldElement,
    alpha_over_beta: FieldElement,
    alpha_f: f64,
    alpha_over_beta_f: f64,
}

const FLOAT_GUARD: f64 = 1e-7;

impl Lattice {
    pub fn new(n: i64) -> Result<Lattice, FieldError> {
        let base = PisotNumber::make(&[1, -(n + 1), n, -n])?;
        Ok(Lattice::from_base(&base))
    }

    /// `base` must be a root of `x³ - (n+1)x² + nx - n`.
    pub fn from_base(base: &PisotNumber) -> Lattice {
        let n = base.floor_beta();
        let alpha = base.alpha();
        let alpha_over_beta = &alpha * &base.inv_beta();
        Lattice {
            n,
            alpha_f: alpha.approx(),
            alpha_over_beta_f: alpha_over_beta.approx(),
            base: base.clone(),
            alpha,
            alpha_over_beta,
        }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn base(&self) -> &PisotNumber {
        &self.base
    }

    /// `f(l,k,j) = l - αk + (α/β)j`, exactly.
    pub fn f_value(&self, p: LatticePoint) -> FieldElement {
        self.alpha_over_beta.mul_int(p.j) - self.alpha.mul_int(p.k) + self.base.from_int(p.l)
    }

    /// `⌊kα - jα/β⌋`
    fn floor_x(&self, k: i64, j: i64) -> i64 {
        let x = k as f64 * self.alpha_f - j as f64 * self.alpha_over_beta_f;
        let fl = x.floor();
        let guard = FLOAT_GUARD * (1.0 + x.abs());
        if x - fl > guard && fl + 1.0 - x > guard {
            return fl as i64;
        }
        (self.alpha.mul_int(k) - self.alpha_over_beta.mul_int(j)).floor_i64()
    }

    /// The unique `l` with `(l, k, j) ∈ U`.
    pub fn l_for(&self, k: i64, j: i64) -> i64 {
        if k == 0 && j == 0 {
            0
        } else {
            1 + self.floor_x(k, j)
        }
    }

    pub fn point_in_u(&self, k: i64, j: i64) -> LatticePoint {
        LatticePoint::new(self.l_for(k, j), k, j)
    }

    pub fn in_u(&self, p: LatticePoint) -> bool {
        p.l == self.l_for(p.k, p.j)
    }

    pub fn in_u_star(&self, p: LatticePoint) -> bool {
        !p.is_origin() && self.in_u(p)
    }

    /// `G = [[n,-1,0],[-1,1,-1],[0,1,0]]`
    pub fn g_matrix(&self) -> Matrix3 {
        let n = self.n;
        [[n, -1, 0], [-1, 1, -1], [0, 1, 0]]
    }

    /// Adjugate of `G`, so that `GH = nI`.
    pub fn h_matrix(&self) -> Matrix3 {
        adjugate(&self.g_matrix())
    }

    pub fn apply_g(&self, p: LatticePoint) -> LatticePoint {
        apply(&self.g_matrix(), p)
    }

    pub fn apply_h(&self, p: LatticePoint) -> LatticePoint {
        apply(&self.h_matrix(), p)
    }

    /// `f∘G = β f` and `f∘H = (n/β) f` on the standard basis.
    pub fn left_eigen_check(&self) -> bool {
        let beta = self.base.beta();
        let n_over_beta = self.base.inv_beta().mul_int(self.n);
        [LatticePoint::new(1, 0, 0), LatticePoint::new(0, 1, 0), LatticePoint::new(0, 0, 1)]
            .into_iter()
            .all(|e| {
                let fe = self.f_value(e);
                self.f_value(self.apply_g(e)) == &beta * &fe && self.f_value(self.apply_h(e)) == &n_over_beta * &fe
            })
    }

    /// `(l, k, j) ↦ f(l+1, k+n, j-1)`
    pub fn pi(&self, p: LatticePoint) -> FieldElement {
        self.f_value(LatticePoint::new(p.l + 1, p.k + self.n, p.j - 1))
    }

    /// Letter `⌊f(G p)⌋ = ⌊β f(p)⌋` emitted at `p`.
    pub fn letter(&self, p: LatticePoint) -> i64 {
        let g = self.apply_g(p);
        g.l - self.l_for(g.k, g.j)
    }

    /// One step of `τ_β` together with the emitted letter.
    pub fn tau_with_letter(&self, p: LatticePoint) -> (i64, LatticePoint) {
        let k1 = p.k - p.j - p.l;
        let j1 = p.k;
        let l1 = self.l_for(k1, j1);
        let d = self.n * p.l - p.k - l1;
        (d, LatticePoint::new(l1, k1, j1))
    }

    pub fn tau_step(&self, p: LatticePoint) -> Result<LatticePoint, LatticeError> {
        if !self.in_u(p) {
            return Err(LatticeError::NotInU(p));
        }
        Ok(self.tau_with_letter(p).1)
    }

    /// The preimage in `U` chosen by the residue rule, and its letter.
    pub fn preimage(&self, p: LatticePoint) -> Result<(LatticePoint, i64), LatticeError> {
        if !self.in_u_star(p) {
            return Err(LatticeError::NotInUStar(p));
        }
        let n = self.n;
        let r = (p.l + p.j).rem_euclid(n);
        let s = if r == 0 && self.f_value(p).cmp_value(&self.alpha) != Ordering::Less { 0 } else { n - r };
        let l0 = (p.l + s + p.j) / n;
        Ok((LatticePoint::new(l0, p.j, p.j - p.k - l0), s))
    }

    /// Every preimage of `p` in `U`, by letter.
    pub fn all_preimages(&self, p: LatticePoint) -> Vec<(LatticePoint, i64)> {
        let n = self.n;
        (0..=n)
            .filter(|s| (p.l + p.j + s).rem_euclid(n) == 0)
            .map(|s| {
                let l0 = (p.l + s + p.j) / n;
                (LatticePoint::new(l0, p.j, p.j - p.k - l0), s)
            })
            .filter(|(v, _)| self.in_u(*v) && self.tau_with_letter(*v).1 == p)
            .collect()
    }

    pub fn injectivity_class(&self, p0: LatticePoint, p1: LatticePoint) -> Result<InjectivityClass, LatticeError> {
        if !self.in_u(p0) || self.tau_with_letter(p0).1 != p1 {
            return Err(LatticeError::NotRelated(p0, p1));
        }
        if (p1.l + p1.j).rem_euclid(self.n) != 0 {
            return Ok(InjectivityClass::OneToOne);
        }
        let f0 = self.f_value(p0);
        let ab = &self.alpha_over_beta;
        if f0.cmp_value(ab) == Ordering::Less {
            let sibling = LatticePoint::new(p0.l + 1, p0.k, p0.j - 1);
            if self.in_u(sibling) && self.tau_with_letter(sibling).1 == p1 {
                return Ok(InjectivityClass::TwoToOneLow { sibling });
            }
        }
        // `>=` so that the origin, whose preimages are itself and (1,0,-1), is covered
        if f0.cmp_value(&(self.base.one() - ab.clone())) != Ordering::Less {
            let sibling = LatticePoint::new(p0.l - 1, p0.k, p0.j + 1);
            if self.in_u(sibling) && self.tau_with_letter(sibling).1 == p1 {
                return Ok(InjectivityClass::TwoToOneHigh { sibling });
            }
        }
        Ok(InjectivityClass::OneToOne)
    }

    /// Coordinates of an integral element of `Z[β]` in the basis `1, -α, α/β`.
    pub fn point_of(&self, x: &FieldElement) -> Option<LatticePoint> {
        if !x.is_integral() {
            return None;
        }
        let c: Vec<i64> = x.num().iter().map(|v| i64::try_from(v).ok()).collect::<Option<_>>()?;
        let at = |i: usize| c.get(i).copied().unwrap_or(0);
        let n = self.n;
        let j = -at(2);
        let k = j * (n + 1) - at(1);
        let l = at(0) - k * n - j * (1 - n);
        Some(LatticePoint::new(l, k, j))
    }
}

fn apply(m: &Matrix3, p: LatticePoint) -> LatticePoint {
    let v = [p.l, p.k, p.j];
    let row = |r: usize| (0..3).map(|c| m[r][c] * v[c]).sum::<i64>();
    LatticePoint::new(row(0), row(1), row(2))
}

pub fn adjugate(m: &Matrix3) -> Matrix3 {
    let mut out = [[0; 3]; 3];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            // cofactor of (c, r)
            let rows: Vec<usize> = (0..3).filter(|&i| i != c).collect();
            let cols: Vec<usize> = (0..3).filter(|&i| i != r).collect();
            let minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]];
            *cell = if (r + c) % 2 == 0 { minor } else { -minor };
        }
    }
    out
}

/// Coefficients of `det(xI - m)`, highest degree first.
pub fn char_poly(m: &Matrix3) -> [i64; 4] {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0])
        + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
        + (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    [1, -tr, minors, -det]
}
