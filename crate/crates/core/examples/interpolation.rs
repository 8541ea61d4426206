//! Truth tables to reduced polynomials and back.

use fds::gf::Field;
use fds::multipoly::{parse_bool, MPoly};

fn main() -> fds::Result<()> {
    let f2 = Field::boolean();
    // majority of three, little-endian table over (x1, x2, x3)
    let majority = [0, 0, 0, 1, 0, 1, 1, 1];
    let p = MPoly::interpolate(f2, 3, &majority)?;
    println!("majority(x1,x2,x3) = {p}");

    let nor = parse_bool(2, "!(x1 | x2)")?.to_poly(f2, 2)?;
    println!("nor(x1,x2) = {nor}");

    let f3 = Field::new(3)?;
    let table: Vec<u32> = (0..9).map(|i| (i % 3) * (i / 3) % 3).collect();
    let q = MPoly::interpolate(f3, 2, &table)?;
    println!("GF(3) product table -> {q}");
    let vars = [0, 1];
    assert_eq!(MPoly::interpolate_separable(f3, 2, &vars, &table)?, q);
    for (i, &want) in table.iter().enumerate() {
        assert_eq!(q.eval(&[(i % 3) as u32, (i / 3) as u32])?, want);
    }
    println!("support of the GF(3) polynomial: {:?}", q.support());
    Ok(())
}
