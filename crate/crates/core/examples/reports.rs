//! Write verification reports as JSON and CSV.

use moufang::atlas::LoopChart;
use moufang::report::{Format, TensorDump, VerifyReport};
use moufang::suites::{run_suite, Family, SamplePlan};
use moufang::tensors::ConventionLedger;

fn main() -> moufang::Result<()> {
    let dir = std::env::temp_dir().join("moufang-reports");
    std::fs::create_dir_all(&dir)?;

    let plan = SamplePlan::new("quaternion", 7, 25, 0.2);
    let families = Family::parse_list("GLE,MC,MOUFANG")?;
    let outcome = run_suite(&plan, &families, 1e-9, ConventionLedger::CALIBRATED)?;
    let report = VerifyReport::from_outcome(&outcome);
    for (format, name) in [(Format::Json, "verify.json"), (Format::Csv, "verify.csv")] {
        report.write(&dir.join(name), format)?;
    }

    let dump = TensorDump::compute(
        &LoopChart::builtin("affine")?,
        &[0.2, -0.4],
        ConventionLedger::CALIBRATED,
    )?;
    std::fs::write(dir.join("tensors.json"), dump.to_json()?)?;

    println!(
        "wrote verify.json, verify.csv and tensors.json to {}",
        dir.display()
    );
    print!(
        "{}",
        report
            .to_csv()?
            .lines()
            .take(6)
            .collect::<Vec<_>>()
            .join("\n")
    );
    println!();
    Ok(())
}
