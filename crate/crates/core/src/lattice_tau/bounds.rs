use super::{Lattice, LatticeError, LatticePoint};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Bounds on `l` in terms of `m = max(|k|,|j|)` and `μ = min(|k|,|j|)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub point: LatticePoint,
    /// `-μ/(n-2) - (m-μ)/(n-1) < l < 1 + μ/(n-2) + (m-μ)/(n-1)`
    pub l_bounds: bool,
    /// `m > |l|`, checked when `m >= 2`.
    pub m_exceeds_l: Option<bool>,
    /// Small-`m` table rows that apply to the point, with their outcome.
    pub small_m: Vec<(String, bool)>,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.l_bounds && self.m_exceeds_l != Some(false) && self.small_m.iter().all(|(_, ok)| *ok)
    }
}

pub fn check_bounds(lat: &Lattice, p: LatticePoint) -> Result<BoundsReport, LatticeError> {
    if !lat.in_u(p) {
        return Err(LatticeError::NotInU(p));
    }
    let n = lat.n();
    if n < 4 {
        return Err(LatticeError::PreconditionUnmet(format!("n = {n} < 4")));
    }
    let (l, k, j) = (p.l, p.k, p.j);
    let (m, mu) = (p.m(), p.mu());
    let scale = (n - 2) * (n - 1);
    let a = mu * (n - 1) + (m - mu) * (n - 2);
    let l_bounds = -a < l * scale && l * scale < scale + a;
    let m_exceeds_l = (m >= 2).then_some(m > l.abs());
    let sign_l = |pos: bool| if pos { 1 } else { 0 };
    let mut small_m = Vec::new();
    if k * j > 0 && m <= n {
        small_m.push(("kj>0, m<=n".to_string(), l == sign_l(k > 0)));
    }
    if k * j < 0 && m <= n - 2 {
        small_m.push(("kj<0, m<=n-2".to_string(), l == sign_l(k > 0)));
    }
    if k == 0 && 0 < j && j <= n * n - 2 {
        small_m.push(("k=0, 0<j<=n^2-2".to_string(), l == 0));
    }
    if k == 0 && 2 - n * n <= j && j < 0 {
        small_m.push(("k=0, 2-n^2<=j<0".to_string(), l == 1));
    }
    if j == 0 && 1 - n <= k && k < 0 {
        small_m.push(("j=0, 1-n<=k<0".to_string(), l == 0));
    }
    if j == 0 && 0 < k && k <= n - 1 {
        small_m.push(("j=0, 0<k<=n-1".to_string(), l == 1));
    }
    if m == 1 {
        small_m.push(("m=1".to_string(), (0..=1).contains(&l)));
    }
    Ok(BoundsReport { point: p, l_bounds, m_exceeds_l, small_m })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiveStepTrace {
    /// `p_0, ..., p_5`
    pub points: Vec<LatticePoint>,
    pub k2_negative: bool,
    pub k4_positive: bool,
    pub k5_positive: bool,
}

impl FiveStepTrace {
    pub fn pass(&self) -> bool {
        self.k2_negative && self.k4_positive && self.k5_positive
    }
}

/// From `p0 ∈ U*` with `k0 > 0`, `j0 > 0` and `k1 < 0`, checks `k2 < 0`,
/// `k4 > 0` and `k5 > 0`.
pub fn five_step_signs(lat: &Lattice, p0: LatticePoint) -> Result<FiveStepTrace, LatticeError> {
    let n = lat.n();
    if n < 4 {
        return Err(LatticeError::PreconditionUnmet(format!("n = {n} < 4")));
    }
    if !lat.in_u_star(p0) {
        return Err(LatticeError::NotInUStar(p0));
    }
    if p0.k <= 0 || p0.j <= 0 {
        return Err(LatticeError::PreconditionUnmet(format!("{p0} needs k0 > 0 and j0 > 0")));
    }
    let mut points = vec![p0];
    for _ in 0..5 {
        let next = lat.tau_with_letter(*points.last().unwrap()).1;
        points.push(next);
    }
    if points[1].k >= 0 {
        return Err(LatticeError::PreconditionUnmet(format!("k1 = {} is not negative", points[1].k)));
    }
    if points[1..5].iter().any(|p| p.is_origin()) {
        return Err(LatticeError::PreconditionUnmet("orbit reaches the origin".into()));
    }
    Ok(FiveStepTrace {
        k2_negative: points[2].k < 0,
        k4_positive: points[4].k > 0,
        k5_positive: points[5].k > 0,
        points,
    })
}

/// Points of `U*` with `max(|k|,|j|) <= n+1` and `f` within `α/β` of an integer.
pub fn near_integer_points(lat: &Lattice) -> Vec<LatticePoint> {
    let n = lat.n();
    let ab = lat.f_value(LatticePoint::new(0, 0, 1));
    let hi = lat.base().one() - ab.clone();
    lat.ball(n + 1)
        .into_iter()
        .filter(|p| !p.is_origin())
        .filter(|&p| {
            let f = lat.f_value(p);
            f.cmp_value(&ab) == Ordering::Less || f.cmp_value(&hi) == Ordering::Greater
        })
        .collect()
}
