use crate::args::{Command, FamilyArgs, FamilyKind};
use crate::cache::cached;
use crate::repro::{render_line, run_suite};
use betafin::beta_dynamics::{expand, expansion_of_one, fractional_part, render_digits, OrbitKind};
use betafin::exact_field::parse_coeffs;
use betafin::families_finiteness::{
    akiyama_set, build, build_dominant, check_suff, q_family_checks, r_family_checks, residue_table, scan_f1,
    AkiyamaReport, Check, F1Report, FamilySpec, ResidueRow, SuffReport, SuffVerdict,
};
use betafin::lattice_tau::{invariant_ball_census, Census, Lattice, LatticePoint};
use betafin::PisotNumber;
use serde_json::{json, Value};
use std::fmt::Write as _;

#[derive(Debug)]
pub struct CliError(pub String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

/// A finished command: the claim status and its three renderings.
pub struct Report {
    pub command: &'static str,
    pub ok: bool,
    pub result: Value,
    pub text: String,
    pub csv: String,
}

impl Report {
    pub fn json(&self) -> String {
        let v = json!({ "command": self.command, "ok": self.ok, "result": self.result });
        serde_json::to_string_pretty(&v).expect("json") + "\n"
    }
}

fn need(v: Option<i64>, name: &str) -> Result<i64, CliError> {
    v.ok_or_else(|| CliError(format!("--{name} is required for this family")))
}

pub fn resolve(fa: &FamilyArgs) -> Result<(Option<FamilySpec>, PisotNumber), CliError> {
    match fa.family {
        FamilyKind::P => {
            let s = FamilySpec::p(need(fa.n, "n")?)?;
            Ok((Some(s), build(s)?))
        }
        FamilyKind::Q => {
            let s = FamilySpec::q(need(fa.n, "n")?, need(fa.b, "b")?, need(fa.c, "c")?)?;
            Ok((Some(s), build(s)?))
        }
        FamilyKind::R => {
            let s = FamilySpec::r(need(fa.n, "n")?, need(fa.c, "c")?)?;
            Ok((Some(s), build_dominant(s)?))
        }
        FamilyKind::Poly => {
            let c = fa.coeffs.as_deref().ok_or_else(|| CliError("--coeffs is required for --family poly".into()))?;
            Ok((None, PisotNumber::make(&parse_coeffs(c)?)?))
        }
    }
}

fn checks_csv(checks: &[Check]) -> String {
    let mut s = String::from("claim,holds\n");
    for c in checks {
        let _ = writeln!(s, "\"{}\",{}", c.claim, c.holds);
    }
    s
}

fn checks_text(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let _ = writeln!(s, "  {:<5} {}", if c.holds { "ok" } else { "FAIL" }, c.claim);
    }
    s
}

fn kind_name(k: OrbitKind) -> &'static str {
    match k {
        OrbitKind::Finite => "finite",
        OrbitKind::EventuallyPeriodic => "eventually-periodic",
        OrbitKind::Truncated => "truncated",
    }
}

fn base_key(spec: &Option<FamilySpec>, base: &PisotNumber) -> Value {
    json!({ "family": spec, "poly": base.coeffs_high_first() })
}

pub fn execute(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Expand { family, x, cap } => {
            let (_, base) = resolve(family)?;
            let coords = parse_coeffs(x).map_err(|_| CliError(format!("cannot parse --x {x:?}")))?;
            if coords.len() > base.degree() {
                return Err(CliError(format!("--x has more than {} coordinates", base.degree())));
            }
            let el = base.element(&coords);
            if el.signum() < 0 {
                return Err(CliError("--x must be nonnegative".into()));
            }
            let o = expand(&el, *cap)?;
            let text = format!("{}\n", o.word);
            let csv = format!(
                "x,kind,int_part,frac_pre,frac_period\n\"{x}\",{},{},{},{}\n",
                kind_name(o.kind),
                render_digits(&o.word.int_part),
                render_digits(&o.word.frac_pre),
                render_digits(&o.word.frac_period)
            );
            let result = json!({
                "x": coords, "kind": o.kind, "word": o.word, "rendered": o.word.to_string(), "steps": o.steps
            });
            Ok(Report { command: "expand", ok: o.kind != OrbitKind::Truncated, result, text, csv })
        }
        Command::One { family } => {
            let (_, base) = resolve(family)?;
            let w = expansion_of_one(&base);
            let r = w.render_frac();
            Ok(Report {
                command: "one",
                ok: true,
                result: json!({ "word": w, "rendered": r, "finite": w.is_finite() }),
                text: format!("{r}\n"),
                csv: format!("rendered,finite\n{r},{}\n", w.is_finite()),
            })
        }
        Command::Scan { family, nmax, cap } => {
            if *nmax < 1 {
                return Err(CliError("--nmax must be at least 1".into()));
            }
            let (spec, base) = resolve(family)?;
            let key = json!({ "v": 1, "cmd": "scan", "base": base_key(&spec, &base), "nmax": nmax, "cap": cap });
            let rep: F1Report = cached(&key, || match spec {
                Some(s) => betafin::families_finiteness::scan_family(s, *nmax, *cap).unwrap_or_else(|_| scan_f1(&base, *nmax, *cap)),
                None => scan_f1(&base, *nmax, *cap),
            });
            let ok = rep.class_consistent && rep.residue_facts.values().all(|&v| v);
            let mut text = String::new();
            let _ = writeln!(text, "polynomial {:?}, scanned 1..={}", rep.polynomial, rep.scanned_to);
            let _ = writeln!(text, "non-finite: {}, truncated: {}", rep.non_finite.len(), rep.truncated.len());
            for e in rep.non_finite.iter().take(20) {
                let _ = writeln!(text, "  {}  .{}({})^w", e.n, render_digits(&e.preperiod), render_digits(&e.period));
            }
            if rep.non_finite.len() > 20 {
                let _ = writeln!(text, "  ...");
            }
            match rep.first_gap {
                Some(g) => {
                    let _ = writeln!(text, "first gap: {g} not finite, {} finite", g + 1);
                }
                None => text.push_str("no gaps\n"),
            }
            let _ = writeln!(text, "fractional classes: {}", rep.classes);
            if rep.no_counterexample() {
                let _ = writeln!(text, "no counterexample up to {}", rep.scanned_to);
            }
            for (k, v) in &rep.residue_facts {
                let _ = writeln!(text, "  {:<5} {k}", if *v { "ok" } else { "FAIL" });
            }
            let mut csv = String::from("n,preperiod,period\n");
            for e in &rep.non_finite {
                let _ = writeln!(csv, "{},{},{}", e.n, render_digits(&e.preperiod), render_digits(&e.period));
            }
            Ok(Report { command: "scan", ok, result: serde_json::to_value(&rep)?, text, csv })
        }
        Command::Residues { n_lo, n_hi, cap } => {
            if n_lo > n_hi {
                return Err(CliError("--n-lo exceeds --n-hi".into()));
            }
            let key = json!({ "v": 1, "cmd": "residues", "lo": n_lo, "hi": n_hi, "cap": cap });
            let rows: Result<Vec<ResidueRow>, String> =
                cached(&key, || residue_table(*n_lo, *n_hi, *cap).map_err(|e| e.to_string()));
            let rows = rows.map_err(CliError)?;
            let ok = rows.iter().all(|r| r.all_hold());
            let mut text = String::new();
            let mut csv = String::from("n,claim,holds\n");
            for r in &rows {
                let fin: Vec<String> =
                    r.membership.iter().map(|(k, v)| format!("{k}:{}", if *v { "fin" } else { "inf" })).collect();
                let _ = writeln!(text, "n={} {}", r.n, fin.join(" "));
                text.push_str(&checks_text(&r.checks));
                for c in &r.checks {
                    let _ = writeln!(csv, "{},\"{}\",{}", r.n, c.claim, c.holds);
                }
            }
            Ok(Report { command: "residues", ok, result: serde_json::to_value(&rows)?, text, csv })
        }
        Command::TauOrbit { n, k, j, l, cap } => {
            let t = Lattice::new(*n)?;
            let p = match l {
                Some(l) => LatticePoint::new(*l, *k, *j),
                None => t.point_in_u(*k, *j),
            };
            let o = t.orbit(p, *cap)?;
            let mut text = format!("start {p}, {:?}, {} steps\ndigits {}\n", o.kind, o.points.len(), render_digits(&o.digits));
            if let Some(c) = o.cycle() {
                let pts: Vec<String> = c.iter().map(|q| q.to_string()).collect();
                let _ = writeln!(text, "cycle {}", pts.join(" "));
            }
            let mut csv = String::from("step,l,k,j,digit\n");
            for (i, (q, d)) in o.points.iter().zip(&o.digits).enumerate() {
                let _ = writeln!(csv, "{i},{},{},{},{d}", q.l, q.k, q.j);
            }
            Ok(Report { command: "tau-orbit", ok: true, result: serde_json::to_value(&o)?, text, csv })
        }
        Command::Census { n, radius, cap } => {
            let t = Lattice::new(*n)?;
            let key = json!({ "v": 1, "cmd": "census", "n": n, "radius": radius, "cap": cap });
            let c: Census = cached(&key, || invariant_ball_census(&t, *radius, *cap));
            let mut text = format!(
                "n={} radius={} points={} finite={} truncated={}\ncycles in B_n: {}\nmax excursion {}, envelope violations {}, shell hitting time {}, shell never enters {}\n",
                c.n, c.radius, c.points, c.finite, c.truncated, c.cycles_in_bn, c.max_excursion,
                c.envelope_violations.len(), c.shell_hitting_time, c.shell_never_enters
            );
            let mut csv = String::from("length,radius,least_point,digits\n");
            for cy in &c.cycles {
                let _ = writeln!(text, "  {:>3}-cycle through {} radius {}", cy.len(), cy.points[0], cy.radius());
                let _ = writeln!(csv, "{},{},\"{}\",{}", cy.len(), cy.radius(), cy.points[0], render_digits(&cy.digits));
            }
            Ok(Report { command: "census", ok: c.cycles_in_bn, result: serde_json::to_value(&c)?, text, csv })
        }
        Command::Akiyama { family, cap, list } => {
            let (spec, base) = resolve(family)?;
            let key = json!({ "v": 1, "cmd": "akiyama", "base": base_key(&spec, &base), "cap": cap });
            let rep: Result<AkiyamaReport, String> = cached(&key, || akiyama_set(&base, *cap).map_err(|e| e.to_string()));
            let rep = rep.map_err(CliError)?;
            let non_finite: Vec<[i64; 3]> = rep.non_finite().map(|e| e.coords).collect();
            let mut ok = true;
            let mut text = format!(
                "polynomial {:?}: {} elements, {} not finite, property F {}\n",
                rep.polynomial,
                rep.elements.len(),
                non_finite.len(),
                if rep.f_holds { "holds" } else { "fails" }
            );
            if let Some(FamilySpec::P { n }) = spec {
                let s = fractional_part(&base.element(&[2, n]));
                let c: Vec<i64> = s.num().iter().map(|v| i64::try_from(v).unwrap_or(i64::MAX)).collect();
                let key = [c[0], *c.get(1).unwrap_or(&0), *c.get(2).unwrap_or(&0)];
                let listed = rep.get(key).is_some_and(|e| !e.finite);
                ok = listed && !rep.f_holds;
                let _ = writeln!(text, "fractional part of n beta + 2 = {key:?}: listed and not finite: {listed}");
            }
            let mut csv = String::from("c0,c1,c2,approx,finite\n");
            for e in &rep.elements {
                let _ = writeln!(csv, "{},{},{},{:.12},{}", e.coords[0], e.coords[1], e.coords[2], e.approx, e.finite);
            }
            let mut result = json!({
                "polynomial": rep.polynomial, "size": rep.elements.len(), "box_bound": rep.box_bound,
                "c1_range": rep.c1_range, "c2_range": rep.c2_range, "f_holds": rep.f_holds, "non_finite": non_finite
            });
            if *list {
                result["elements"] = serde_json::to_value(&rep.elements)?;
            }
            Ok(Report { command: "akiyama", ok, result, text, csv })
        }
        Command::Suff { family, nmax, cap } => {
            let (spec, base) = resolve(family)?;
            let key = json!({ "v": 1, "cmd": "suff", "base": base_key(&spec, &base), "nmax": nmax, "cap": cap });
            let rep: Result<SuffReport, String> = cached(&key, || check_suff(&base, *nmax, *cap).map_err(|e| e.to_string()));
            let rep = rep.map_err(CliError)?;
            let mut ok = rep.consistent();
            if let Some(FamilySpec::P { n }) = spec {
                ok &= (rep.verdict == SuffVerdict::SufficientF1Holds) == (n % 3 == 1);
            }
            let mut text = format!("{:?}\n", rep.verdict);
            for (i, w, k) in &rep.powers {
                let _ = writeln!(text, "  alpha^{i} = {w}  ({})", kind_name(*k));
            }
            if let Some(c) = &rep.cross_check {
                let _ = writeln!(text, "scan to {}: {} non-finite", c.scanned_to, c.non_finite.len());
            }
            let mut csv = String::from("power,kind,word\n");
            for (i, w, k) in &rep.powers {
                let _ = writeln!(csv, "{i},{},\"{w}\"", kind_name(*k));
            }
            Ok(Report { command: "suff", ok, result: serde_json::to_value(&rep)?, text, csv })
        }
        Command::QCheck { n, b, c, cap } => {
            let r = q_family_checks(*n, *b, *c, *cap)?;
            let mut text = format!("q{{{n},{b},{c}}}: [1] = {}, 1-alpha = {}\n", r.one.render_frac(), r.one_minus_alpha.render_frac());
            if let Some(w) = &r.one_minus_2alpha {
                let _ = writeln!(text, "1-2alpha = {}", w.render_frac());
            }
            text.push_str(&checks_text(&r.checks));
            Ok(Report { command: "q-check", ok: r.all_hold(), result: serde_json::to_value(&r)?, csv: checks_csv(&r.checks), text })
        }
        Command::RCheck { n, c, cap } => {
            let r = r_family_checks(*n, *c, *cap)?;
            let mut text = format!(
                "r{{{n},{c}}}: floor(beta) = {}, certified Pisot {}, n = {}\n",
                r.floor_beta, r.certified_pisot, r.expansion_of_n
            );
            text.push_str(&checks_text(&r.checks));
            Ok(Report { command: "r-check", ok: r.all_hold(), result: serde_json::to_value(&r)?, csv: checks_csv(&r.checks), text })
        }
        Command::ReproPaper { only, cap } => {
            let outcomes = run_suite(only, *cap);
            let ok = outcomes.iter().all(|o| o.pass);
            let mut text = String::new();
            let mut csv = String::from("id,key,pass,detail\n");
            for o in &outcomes {
                text.push_str(&render_line(o));
                text.push('\n');
                let _ = writeln!(csv, "{},{},{},\"{}\"", o.id, o.key, o.pass, o.detail.replace('"', "'"));
            }
            let passed = outcomes.iter().filter(|o| o.pass).count();
            let _ = writeln!(text, "{passed}/{} passed", outcomes.len());
            Ok(Report { command: "repro-paper", ok, result: serde_json::to_value(&outcomes)?, text, csv })
        }
    }
}
