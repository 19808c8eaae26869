use super::{Lattice, LatticeError, LatticePoint};
use crate::beta_dynamics::fractional_part;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitKindTau {
    /// The origin was reached.
    Finite,
    Periodic { preperiod: usize, period: usize },
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauOrbit {
    /// Visited points; for a periodic orbit the period is not repeated.
    pub points: Vec<LatticePoint>,
    /// `digits[i]` is the letter emitted at `points[i]`.
    pub digits: Vec<i64>,
    pub kind: OrbitKindTau,
}

impl TauOrbit {
    pub fn is_finite(&self) -> bool {
        self.kind == OrbitKindTau::Finite
    }

    pub fn cycle(&self) -> Option<&[LatticePoint]> {
        match self.kind {
            OrbitKindTau::Periodic { preperiod, .. } => Some(&self.points[preperiod..]),
            _ => None,
        }
    }

    /// Largest `max(|k|, |j|)` along the orbit.
    pub fn excursion(&self) -> i64 {
        self.points.iter().map(|p| p.m()).max().unwrap_or(0)
    }
}

/// A cycle of `τ`, rotated to start at its least point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cycle {
    pub points: Vec<LatticePoint>,
    pub digits: Vec<i64>,
}

impl Cycle {
    pub fn from_orbit(o: &TauOrbit) -> Option<Cycle> {
        let OrbitKindTau::Periodic { preperiod, .. } = o.kind else { return None };
        let mut points = o.points[preperiod..].to_vec();
        let mut digits = o.digits[preperiod..].to_vec();
        let s = (0..points.len()).min_by_key(|&i| points[i]).unwrap_or(0);
        points.rotate_left(s);
        digits.rotate_left(s);
        Some(Cycle { points, digits })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest `max(|k|, |j|)` on the cycle.
    pub fn radius(&self) -> i64 {
        self.points.iter().map(|p| p.m()).max().unwrap_or(0)
    }
}

impl Lattice {
    /// Iterates `τ` from `p` until the origin, a repeated point, or `cap` steps.
    pub fn orbit(&self, p: LatticePoint, cap: usize) -> Result<TauOrbit, LatticeError> {
        if !self.in_u(p) {
            return Err(LatticeError::NotInU(p));
        }
        let mut points = Vec::new();
        let mut digits = Vec::new();
        let mut seen: HashMap<LatticePoint, usize> = HashMap::new();
        let mut cur = p;
        loop {
            if cur.is_origin() {
                return Ok(TauOrbit { points, digits, kind: OrbitKindTau::Finite });
            }
            if let Some(&i0) = seen.get(&cur) {
                let period = points.len() - i0;
                return Ok(TauOrbit { points, digits, kind: OrbitKindTau::Periodic { preperiod: i0, period } });
            }
            if points.len() >= cap {
                return Ok(TauOrbit { points, digits, kind: OrbitKindTau::Truncated });
            }
            seen.insert(cur, points.len());
            let (d, next) = self.tau_with_letter(cur);
            points.push(cur);
            digits.push(d);
            cur = next;
        }
    }

    /// Points of `U` with `max(|k|, |j|) <= r`.
    pub fn ball(&self, r: i64) -> Vec<LatticePoint> {
        let mut out = Vec::with_capacity(((2 * r + 1) * (2 * r + 1)) as usize);
        for k in -r..=r {
            for j in -r..=r {
                out.push(self.point_in_u(k, j));
            }
        }
        out
    }

    /// Points of `U` with `max(|k|, |j|) = r`.
    pub fn shell(&self, r: i64) -> Vec<LatticePoint> {
        self.ball(r).into_iter().filter(|p| p.m() == r).collect()
    }

    /// Whether some natural number `N <= n_max` has a fractional part whose
    /// orbit enters `cycle`. The origin, or an empty cycle, counts as reached.
    pub fn cycle_is_integer_class(&self, cycle: &[LatticePoint], n_max: i64, cap: usize) -> bool {
        if cycle.is_empty() || cycle.iter().any(|p| p.is_origin()) {
            return true;
        }
        let target: HashSet<LatticePoint> = cycle.iter().copied().collect();
        let mut dead: HashSet<LatticePoint> = HashSet::new();
        for big_n in 1..=n_max {
            let s = fractional_part(&self.base().from_int(big_n));
            let Some(mut p) = self.point_of(&s).filter(|p| self.in_u(*p)) else { continue };
            let mut path = Vec::new();
            let mut local = HashSet::new();
            loop {
                if target.contains(&p) {
                    return true;
                }
                if p.is_origin() || dead.contains(&p) || !local.insert(p) || path.len() >= cap {
                    break;
                }
                path.push(p);
                p = self.tau_with_letter(p).1;
            }
            dead.extend(path);
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: i64,
    pub radius: i64,
    pub points: usize,
    pub finite: usize,
    pub truncated: usize,
    /// Distinct cycles, sorted by length and then by least point.
    pub cycles: Vec<Cycle>,
    /// Every cycle lies in `B_n`.
    pub cycles_in_bn: bool,
    /// Largest `max(|k|, |j|)` reached from any start.
    pub max_excursion: i64,
    /// Starts whose orbit leaves `max(m0, n) + n`.
    pub envelope_violations: Vec<LatticePoint>,
    /// Largest number of steps from the outer shell into `B_n`.
    pub shell_hitting_time: usize,
    /// Outer shell points whose orbit never enters `B_n`.
    pub shell_never_enters: usize,
}

impl Census {
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.len()).collect()
    }
}

/// Iterates every point of `B_radius ∩ U` to the origin or a cycle.
pub fn invariant_ball_census(lat: &Lattice, radius: i64, cap: usize) -> Census {
    let n = lat.n();
    let starts = lat.ball(radius);
    let orbits: Vec<(LatticePoint, TauOrbit)> = starts
        .par_iter()
        .map(|&p| (p, lat.orbit(p, cap).expect("ball points lie in U")))
        .collect();
    let mut cycles: BTreeMap<(usize, LatticePoint), Cycle> = BTreeMap::new();
    let mut finite = 0;
    let mut truncated = 0;
    let mut max_excursion = 0;
    let mut envelope_violations = Vec::new();
    for (p, o) in &orbits {
        match o.kind {
            OrbitKindTau::Finite => finite += 1,
            OrbitKindTau::Truncated => truncated += 1,
            OrbitKindTau::Periodic { .. } => {
                let c = Cycle::from_orbit(o).expect("periodic");
                cycles.entry((c.len(), c.points[0])).or_insert(c);
            }
        }
        let e = o.excursion();
        max_excursion = max_excursion.max(e);
        if e > p.m().max(n) + n {
            envelope_violations.push(*p);
        }
    }
    let cycles: Vec<Cycle> = cycles.into_values().collect();
    let cycles_in_bn = cycles.iter().all(|c| c.radius() <= n);
    let hits: Vec<Option<usize>> = lat
        .shell(radius)
        .par_iter()
        .map(|&p| {
            let o = lat.orbit(p, cap).expect("shell points lie in U");
            o.points.iter().position(|q| q.m() <= n).or(o.is_finite().then_some(o.points.len()))
        })
        .collect();
    let shell_hitting_time = hits.iter().flatten().copied().max().unwrap_or(0);
    let shell_never_enters = hits.iter().filter(|h| h.is_none()).count();
    Census {
        n,
        radius,
        points: starts.len(),
        finite,
        truncated,
        cycles,
        cycles_in_bn,
        max_excursion,
        envelope_violations,
        shell_hitting_time,
        shell_never_enters,
    }
}
