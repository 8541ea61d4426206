//! Cycle structure of linear and affine maps without enumerating states.

use fds::gf::Field;
use fds::linear::{
    fitting_decomposition, min_poly, predict_affine_cycles, predict_cycle_structure, MatrixGF,
};

fn main() -> fds::Result<()> {
    let f2 = Field::boolean();
    // companion matrix of x^4 + x + 1 next to a nilpotent 2x2 block
    let a = MatrixGF::from_rows(
        f2,
        [
            vec![0, 0, 0, 1, 0, 0],
            vec![1, 0, 0, 1, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 1],
            vec![0, 0, 0, 0, 0, 0],
        ],
    )?;
    println!("A =\n{a}");
    println!("minimal polynomial: {}", min_poly(&a)?);
    let fit = fitting_decomposition(&a)?;
    println!(
        "invertible block:\n{}nilpotent block:\n{}",
        fit.invertible, fit.nilpotent
    );
    let s = predict_cycle_structure(&a)?;
    println!("{s}");
    let levels: Vec<String> = s
        .tree_level_sizes()
        .iter()
        .map(ToString::to_string)
        .collect();
    println!(
        "every periodic state roots a tree with levels {}",
        levels.join(" ")
    );

    let b = vec![1, 0, 0, 0, 0, 1];
    println!("\nx -> Ax + b, b = {b:?}");
    for (len, count) in predict_affine_cycles(&a, &b)? {
        println!("  {count} cycle(s) of length {len}");
    }
    Ok(())
}
