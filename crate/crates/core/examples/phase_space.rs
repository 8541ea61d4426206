//! Parallel phase space of the four-variable XOR system, plus its DOT rendering.

use fds::export::{dependency_dot, phase_space_dot};
use fds::generators::runex;
use fds::phase::PhaseSpace;
use fds::specfile::Model;
use fds::system::DEFAULT_BUDGET;

fn main() -> fds::Result<()> {
    let spec = runex();
    print!("{spec}");
    let Model::Deterministic { system, mode } = spec.model()? else {
        unreachable!("runex is deterministic");
    };
    let ps = PhaseSpace::enumerate(&system, &mode, DEFAULT_BUDGET)?;
    println!("\n{} states, fixed points:", ps.size());
    for c in ps.fixed_points() {
        println!("  {}", c.label());
    }
    for (u, shape) in ps.transient_trees() {
        println!(
            "tree at {}: levels {:?}",
            ps.space().config(u).label(),
            shape.level_sizes
        );
    }
    println!("\n{}", dependency_dot(system.dependency_graph()));
    print!("{}", phase_space_dot(&ps));
    Ok(())
}
