//! Loop numbers decide whether a Boolean monomial system has only fixed points.

use fds::gf::Field;
use fds::monomial::loop_numbers;
use fds::multipoly::parse_polynomial;
use fds::phase::PhaseSpace;
use fds::system::{System, UpdateMode, DEFAULT_BUDGET};

fn report(name: &str, locals: &[&str]) -> fds::Result<()> {
    let f = Field::boolean();
    let n = locals.len();
    let polys = locals
        .iter()
        .map(|t| parse_polynomial(f, n, t, &[]))
        .collect::<fds::Result<_>>()?;
    let system = System::new(f, polys)?;
    let r = loop_numbers(&system)?;
    println!("{name}:");
    for c in &r.components {
        let names: Vec<String> = c.vertices.iter().map(|v| format!("x{}", v + 1)).collect();
        println!("  {{{}}} loop number {}", names.join(","), c.loop_number);
    }
    let ps = PhaseSpace::enumerate(&system, &UpdateMode::Parallel, DEFAULT_BUDGET)?;
    println!(
        "  only fixed points: {} (enumeration: {:?})",
        r.fixed_points_only,
        ps.cycle_counts()
    );
    Ok(())
}

fn main() -> fds::Result<()> {
    report("3-cycle", &["x3", "x1", "x2"])?;
    report("3-cycle with a chord", &["x3", "x1", "x1*x2"])?;
    report("self-loops", &["x1*x2", "x2*x3", "x3"])?;
    Ok(())
}
