//! A non-Moufang perturbation and how the residuals respond to it.

use moufang::atlas::LoopChart;
use moufang::suites::{draw_samples, residual_gle, SamplePlan};

fn main() -> moufang::Result<()> {
    let base = LoopChart::builtin("broken:eps=0.01")?;
    let samples = draw_samples(&base, &SamplePlan::new("broken:eps=0.01", 42, 100, 0.2))?;
    for eps in [0.0, 0.0025, 0.005, 0.01, 0.02, 0.04] {
        let l = LoopChart::builtin(&format!("broken:eps={eps}"))?;
        let mut worst = 0.0f64;
        for s in &samples {
            worst = worst.max(residual_gle(&l, &s.g, &s.h)?.max_abs());
        }
        let ratio = if eps > 0.0 { worst / eps } else { f64::NAN };
        println!("eps {eps:<7} GLE max {worst:.4e}  max/eps {ratio:.4e}");
    }
    Ok(())
}
