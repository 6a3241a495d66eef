//! Run every identity family on a loop given on the command line.
//!
//! ```text
//! cargo run --example identity_suite -- octonion 200
//! cargo run --example identity_suite -- broken:eps=0.01
//! ```

use moufang::suites::{run_suite, Family, SamplePlan, DEFAULT_TOLERANCE};
use moufang::tensors::ConventionLedger;

fn main() -> moufang::Result<()> {
    let mut args = std::env::args().skip(1);
    let spec = args.next().unwrap_or_else(|| "octonion".into());
    let count = args.next().and_then(|n| n.parse().ok()).unwrap_or(100);

    let plan = SamplePlan::new(spec, 42, count, 0.2);
    let outcome = run_suite(
        &plan,
        &Family::ALL,
        DEFAULT_TOLERANCE,
        ConventionLedger::CALIBRATED,
    )?;
    for f in &outcome.families {
        let verdict = if f.passes(outcome.tolerance) {
            "pass"
        } else {
            "FAIL"
        };
        println!(
            "{:<14} max {:.3e}  mean {:.3e}  {verdict}",
            f.family.name(),
            f.max,
            f.mean
        );
    }
    println!(
        "{}: {}",
        plan.loop_spec,
        if outcome.passed() {
            "all families pass"
        } else {
            "some families fail"
        }
    );
    Ok(())
}
