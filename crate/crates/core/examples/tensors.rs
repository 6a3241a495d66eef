//! Auxiliary tensors, structure constants and translation fields.

use moufang::atlas::LoopChart;
use moufang::tensors::{
    field_eval, structure_constants, yamagutian_eval, ConventionLedger, Field, PointTensors,
};

fn main() -> moufang::Result<()> {
    let q = LoopChart::builtin("quaternion")?;
    let c = structure_constants(&q, ConventionLedger::CALIBRATED.bracket_sign);
    println!(
        "quaternion [e1, e2] = {:?}",
        c.bracket(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0])
    );

    let l = LoopChart::builtin("octonion")?;
    let g = [0.1, -0.05, 0.02, 0.0, 0.12, -0.08, 0.03];
    let t = PointTensors::compute(&l, &g)?;
    println!("u(g) diagonal: {:.5}", t.aux.u.diag());
    println!(
        "|u + v + w| = {:e}",
        (&t.aux.u + &t.aux.v + &t.aux.w)
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()))
    );

    let x = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    let y = [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    for which in [Field::Left, Field::Right, Field::Middle] {
        println!("{which:?}_x(g) = {:.5?}", field_eval(&l, which, &x, &g)?);
    }
    println!("Y(x; y)(g) = {:.5?}", yamagutian_eval(&l, &x, &y, &g)?);
    Ok(())
}
