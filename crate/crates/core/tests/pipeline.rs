use betafin::beta_dynamics::{expand, fractional_part, ExpansionOracle, OrbitKind};
use betafin::families_finiteness::{build, scan_family, FamilySpec};
use betafin::lattice_tau::{Lattice, OrbitKindTau};

fn unroll(pre: &[i64], period: &[i64], len: usize) -> Vec<i64> {
    let mut out: Vec<i64> = pre.to_vec();
    while out.len() < len {
        if period.is_empty() {
            out.push(0);
        } else {
            out.extend_from_slice(period);
        }
    }
    out.truncate(len);
    out
}

#[test]
fn tau_orbits_read_the_same_digits_as_t_beta() {
    for n in 2..=7 {
        let t = Lattice::new(n).unwrap();
        let oracle = ExpansionOracle::new(t.base(), 100_000);
        for k in -8..=8 {
            for j in -8..=8 {
                let p = t.point_in_u(k, j);
                let o = t.orbit(p, 100_000).unwrap();
                let (kind, pre, period) = oracle.classify_fraction(&t.f_value(p));
                let (tau_pre, tau_period) = match o.kind {
                    OrbitKindTau::Finite => {
                        assert_eq!(kind, OrbitKind::Finite, "n={n} {p}");
                        (o.digits.clone(), vec![])
                    }
                    OrbitKindTau::Periodic { preperiod, .. } => {
                        assert_eq!(kind, OrbitKind::EventuallyPeriodic, "n={n} {p}");
                        (o.digits[..preperiod].to_vec(), o.digits[preperiod..].to_vec())
                    }
                    OrbitKindTau::Truncated => panic!("n={n} {p} truncated"),
                };
                assert_eq!(unroll(&tau_pre, &tau_period, 40), unroll(&pre, &period, 40), "n={n} {p}");
            }
        }
    }
}

#[test]
fn scan_agrees_with_direct_expansion() {
    for spec in [FamilySpec::p(2).unwrap(), FamilySpec::p(5).unwrap(), FamilySpec::q(3, 1, 2).unwrap()] {
        let base = build(spec).unwrap();
        let rep = scan_family(spec, 150, 100_000).unwrap();
        for m in 1..=150 {
            let direct = expand(&base.from_int(m), 100_000).unwrap().kind;
            assert_eq!(rep.is_non_finite(m), direct == OrbitKind::EventuallyPeriodic, "{spec} {m}");
            let frac = fractional_part(&base.from_int(m));
            assert!(frac.signum() >= 0);
        }
    }
}
