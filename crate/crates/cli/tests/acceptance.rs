use betafin_cli::repro::{render_line, run_suite, CRITERIA};
use std::io::Write;

/// Criteria whose claims fail on exact computation.
const KNOWN_RED: [u8; 2] = [9, 12];

#[test]
fn acceptance() {
    let outcomes = run_suite(&[], 1_000_000);
    assert_eq!(outcomes.len(), CRITERIA.len());
    // written past the test harness capture so the table shows in every run
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err);
    for o in &outcomes {
        let _ = writeln!(err, "{}", render_line(o));
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let _ = writeln!(err, "{passed}/{} passed", outcomes.len());
    for o in &outcomes {
        assert_eq!(o.pass, !KNOWN_RED.contains(&o.id), "criterion {} changed status: {}", o.id, o.detail);
    }
}
