//! Builtin local loops, their products, and the Moufang identity.

use moufang::atlas::{moufang_residual, LoopChart};
use moufang::Error;

fn main() -> moufang::Result<()> {
    for spec in [
        "abelian:n=3",
        "affine",
        "quaternion",
        "octonion",
        "broken:eps=0.01",
    ] {
        let l = LoopChart::builtin(spec)?;
        let n = l.dim();
        let g: Vec<f64> = (0..n).map(|i| 0.1 + 0.02 * i as f64).collect();
        let h: Vec<f64> = (0..n).map(|i| 0.05 - 0.03 * i as f64).collect();
        let k: Vec<f64> = (0..n).map(|i| -0.04 + 0.01 * i as f64).collect();
        let r = moufang_residual(&l, &g, &h, &k)?;
        let worst = r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        println!(
            "{spec:<16} dim {n}  gh[0] = {:+.6}  Moufang residual {worst:.3e}",
            l.product(&g, &h)?[0]
        );
    }

    // Products that leave the orthographic chart are reported, not wrapped.
    let q = LoopChart::builtin("quaternion")?;
    match q.product(&[0.9, 0.0, 0.0], &[0.9, 0.0, 0.0]) {
        Err(e @ Error::ChartExit { .. }) => println!("quaternion: {e}"),
        other => println!("quaternion: unexpected {other:?}"),
    }
    if let Err(e) = LoopChart::builtin("broken:eps=often") {
        println!("parse error: {e}");
    }
    Ok(())
}
