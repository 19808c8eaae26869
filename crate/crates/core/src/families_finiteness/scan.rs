use super::{build, Check, FamilyError, FamilySpec};
use crate::beta_dynamics::{fractional_part, ExpansionOracle, OrbitKind};
use crate::exact_field::{FieldElement, PisotNumber};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonFinite {
    pub n: i64,
    pub preperiod: Vec<i64>,
    pub period: Vec<i64>,
}

/// Outcome of classifying `1..=scanned_to`. An empty `non_finite` list only
/// means no counterexample below the bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct F1Report {
    pub family: Option<FamilySpec>,
    pub polynomial: Vec<i64>,
    pub scanned_to: i64,
    /// Sorted, each verified eventually periodic.
    pub non_finite: Vec<NonFinite>,
    /// Hit the step cap; undecided.
    pub truncated: Vec<i64>,
    /// Some `k ∉ Fin` has `k + 1 ∈ Fin`.
    pub gaps: bool,
    pub first_gap: Option<i64>,
    /// Number of distinct fractional parts among the scanned integers.
    pub classes: usize,
    /// Integers sharing a fractional part got the same verdict.
    pub class_consistent: bool,
    pub residue_facts: BTreeMap<String, bool>,
}

impl F1Report {
    pub fn no_counterexample(&self) -> bool {
        self.non_finite.is_empty() && self.truncated.is_empty()
    }

    pub fn is_non_finite(&self, n: i64) -> bool {
        self.non_finite.binary_search_by_key(&n, |e| e.n).is_ok()
    }

    pub fn first_non_finite(&self) -> Option<i64> {
        self.non_finite.first().map(|e| e.n)
    }
}

/// Classifies every `N <= n_max`.
pub fn scan_f1(base: &PisotNumber, n_max: i64, cap: usize) -> F1Report {
    let oracle = ExpansionOracle::new(base, cap);
    let rows: Vec<(i64, OrbitKind, Vec<i64>, Vec<i64>, FieldElement)> = (1..=n_max.max(0))
        .into_par_iter()
        .map(|n| {
            let x = base.from_int(n);
            let o = oracle.expand(&x).expect("positive integers expand");
            (n, o.kind, o.word.frac_pre, o.word.frac_period, fractional_part(&x))
        })
        .collect();
    let mut non_finite = Vec::new();
    let mut truncated = Vec::new();
    let mut verdict_of: HashMap<&FieldElement, OrbitKind> = HashMap::new();
    let mut class_consistent = true;
    for (n, kind, pre, per, frac) in &rows {
        match kind {
            OrbitKind::Finite => {}
            OrbitKind::EventuallyPeriodic => {
                non_finite.push(NonFinite { n: *n, preperiod: pre.clone(), period: per.clone() })
            }
            OrbitKind::Truncated => truncated.push(*n),
        }
        if *verdict_of.entry(frac).or_insert(*kind) != *kind {
            class_consistent = false;
        }
    }
    let finite = |n: i64| rows.get(n as usize - 1).is_some_and(|r| r.1 == OrbitKind::Finite);
    let first_gap = non_finite.iter().map(|e| e.n).find(|&n| finite(n + 1));
    F1Report {
        family: None,
        polynomial: base.coeffs_high_first(),
        scanned_to: n_max,
        non_finite,
        truncated,
        gaps: first_gap.is_some(),
        first_gap,
        classes: verdict_of.len(),
        class_consistent,
        residue_facts: BTreeMap::new(),
    }
}

/// [`scan_f1`] on a family member, with the family-specific facts that fall
/// inside the scanned range.
pub fn scan_family(spec: FamilySpec, n_max: i64, cap: usize) -> Result<F1Report, FamilyError> {
    let base = build(spec)?;
    let mut rep = scan_f1(&base, n_max, cap);
    rep.family = Some(spec);
    let fin = |k: i64| k <= n_max && !rep.is_non_finite(k) && !rep.truncated.contains(&k);
    let mut facts = BTreeMap::new();
    match spec {
        FamilySpec::P { n } => {
            if n * (n - 1) <= n_max {
                facts.insert("1..n(n-1) in Fin".to_string(), (1..=n * (n - 1)).all(fin));
            }
            if n * n <= n_max {
                facts.insert("n^2 in Fin iff n mod 3 != 0".to_string(), fin(n * n) == (n % 3 != 0));
            }
        }
        FamilySpec::Q { n, .. } => {
            if n + 1 <= n_max {
                facts.insert("n+1 not in Fin".to_string(), rep.is_non_finite(n + 1));
            }
        }
        FamilySpec::R { n, .. } => {
            if n <= n_max {
                facts.insert("n not in Fin".to_string(), rep.is_non_finite(n));
            }
        }
    }
    rep.residue_facts = facts;
    Ok(rep)
}

/// Membership of the integers around `n²` for `p_n` and the residue-class
/// claims that apply to `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRow {
    pub n: i64,
    pub membership: BTreeMap<i64, bool>,
    pub checks: Vec<Check>,
}

impl ResidueRow {
    pub fn all_hold(&self) -> bool {
        super::all_hold(&self.checks)
    }
}

pub fn residue_row(n: i64, cap: usize) -> Result<ResidueRow, FamilyError> {
    let base = build(FamilySpec::p(n)?)?;
    let oracle = ExpansionOracle::new(&base, cap);
    let fin = |k: i64| oracle.is_fin(&base.from_int(k)).expect("positive integers expand");
    let n2 = n * n;
    let mut membership = BTreeMap::new();
    for k in [n2, n2 + 1, n2 + 2, n2 + 3] {
        membership.insert(k, fin(k));
    }
    let mut checks = vec![Check::new("n^2 in Fin iff n mod 3 != 0", membership[&n2] == (n % 3 != 0))];
    if n % 3 == 1 {
        checks.push(Check::new("n mod 3 = 1: n^2..n^2+3 in Fin", membership.values().all(|&f| f)));
    }
    if n % 3 == 0 && (n % 4 == 1 || n % 4 == 2) {
        checks.push(Check::new("n mod 3 = 0, n mod 4 in {1,2}: n^2+2 in Fin", membership[&(n2 + 2)]));
    }
    if n % 3 == 2 && n % 4 != 3 {
        checks.push(Check::new("n mod 3 = 2, n mod 4 != 3: n^2+2 not in Fin", !membership[&(n2 + 2)]));
        checks.push(Check::new("n mod 3 = 2, n mod 4 != 3: n^2+3 in Fin", membership[&(n2 + 3)]));
    }
    if n % 3 == 2 && n % 4 == 3 {
        let target = n2 + 2 * n + 3;
        let below = (1..target).all(fin);
        let at = fin(target);
        membership.insert(target, at);
        checks.push(Check::new("n mod 3 = 2, n mod 4 = 3: first non-finite is n^2+2n+3", below && !at));
    }
    Ok(ResidueRow { n, membership, checks })
}

/// Rows for `n_lo..=n_hi`, in order.
pub fn residue_table(n_lo: i64, n_hi: i64, cap: usize) -> Result<Vec<ResidueRow>, FamilyError> {
    if n_lo < 2 {
        return Err(FamilyError::ConstraintViolation(format!("n_lo = {n_lo} < 2")));
    }
    (n_lo..=n_hi).into_par_iter().map(|n| residue_row(n, cap)).collect()
}
