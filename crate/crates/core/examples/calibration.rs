//! Recover the sign conventions from known loops.

use moufang::atlas::LoopChart;
use moufang::suites::{calibrate_conventions, CalibrationSettings};
use moufang::Error;

fn main() -> moufang::Result<()> {
    let loops = ["affine", "quaternion", "octonion"]
        .map(LoopChart::builtin)
        .into_iter()
        .collect::<moufang::Result<Vec<_>>>()?;
    let calibration = calibrate_conventions(&loops, &CalibrationSettings::default())?;
    for row in &calibration.table.rows {
        let worst = row
            .loops
            .iter()
            .map(|l| l.mc.max(l.lry).max(l.lemma))
            .fold(0.0, f64::max);
        println!(
            "bracket {:+} lemma {:+}: worst residual {worst:.2e} {}",
            row.ledger.bracket_sign.value(),
            row.ledger.lemma_sign.value(),
            if row.pass { "<- selected" } else { "" }
        );
    }

    // Abelian loops cannot tell the signs apart.
    let abelian = vec![LoopChart::builtin("abelian:n=2")?];
    if let Err(Error::Calibration { passing, .. }) =
        calibrate_conventions(&abelian, &CalibrationSettings::default())
    {
        println!("abelian only: {passing} assignments pass");
    }
    Ok(())
}
