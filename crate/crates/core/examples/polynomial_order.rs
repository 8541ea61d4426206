//! Factorization and order of univariate polynomials over GF(p).

use fds::gf::{factor, order, Field, UPoly};

fn main() -> fds::Result<()> {
    for (p, text) in [
        (2, "x^4 + x + 1"),
        (2, "x^6 + x^5 + x^4 + x^3 + x^2 + x + 1"),
        (3, "x^4 + 2*x^2 + 1"),
        (5, "x^3 + 2"),
    ] {
        let field = Field::new(p)?;
        let poly = UPoly::parse(field, text)?;
        let parts: Vec<String> = factor(&poly)?
            .iter()
            .map(|(g, e)| {
                if *e == 1 {
                    format!("({g})")
                } else {
                    format!("({g})^{e}")
                }
            })
            .collect();
        println!(
            "GF({p}): {poly} = {}  order {}",
            parts.join(" "),
            order(&poly)?
        );
    }
    Ok(())
}
