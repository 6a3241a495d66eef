//! Octonion arithmetic by Cayley-Dickson doubling.

use moufang::atlas::{cd_product, norm, CompositionAlgebra};

fn basis(i: usize) -> Vec<f64> {
    let mut e = vec![0.0; 8];
    e[i] = 1.0;
    e
}

fn main() -> moufang::Result<()> {
    let table = CompositionAlgebra::Octonion.table();
    println!(
        "     {}",
        (0..8).map(|j| format!("  e{j}")).collect::<String>()
    );
    for i in 0..8 {
        let row: String = (0..8)
            .map(|j| {
                let sign = if table.sign[i][j] < 0 { '-' } else { '+' };
                format!(" {sign}e{}", table.index[i][j])
            })
            .collect();
        println!("e{i} | {row}");
    }

    let (e1, e2, e4) = (basis(1), basis(2), basis(4));
    let left = cd_product(&cd_product(&e1, &e2)?, &e4)?;
    let right = cd_product(&e1, &cd_product(&e2, &e4)?)?;
    println!("(e1 e2) e4 = {left:?}");
    println!("e1 (e2 e4) = {right:?}");

    let a = [0.5, -1.0, 0.25, 2.0, 0.0, 1.5, -0.5, 0.75];
    let b = [1.0, 0.5, -0.5, 0.0, 3.0, -1.0, 0.25, 0.5];
    let ab = cd_product(&a, &b)?;
    println!(
        "|ab| = {:.15}, |a||b| = {:.15}",
        norm(&ab),
        norm(&a) * norm(&b)
    );
    Ok(())
}
