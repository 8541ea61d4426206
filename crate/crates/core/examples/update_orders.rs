//! Update-order equivalence: components of U(Y) against acyclic orientations.

use fds::system::DEFAULT_BUDGET;
use fds::updorder::{
    distinct_sequential_maps, enumerate_acyclic_orientations, nor_system, update_graph_components,
    SimpleGraph,
};

fn main() -> fds::Result<()> {
    for (name, g) in [
        ("path on 3 vertices", SimpleGraph::path(3)),
        ("triangle", SimpleGraph::complete(3)),
        ("4-cycle", SimpleGraph::cycle(4)),
        ("star on 4 vertices", SimpleGraph::star(4)),
    ] {
        let summary = update_graph_components(&g)?;
        let acyc = enumerate_acyclic_orientations(&g)?;
        let maps = distinct_sequential_maps(&nor_system(&g), DEFAULT_BUDGET)?;
        println!(
            "{name}: {} components, {} acyclic orientations, {maps} distinct NOR maps, {} independent sets",
            summary.component_count(),
            acyc.len(),
            g.independent_set_count()
        );
        if g.vertex_count() == 3 {
            for (k, c) in summary.components.iter().enumerate() {
                let members: Vec<String> =
                    summary.members(k).iter().map(ToString::to_string).collect();
                println!("  {} <- {}", c.orientation, members.join(" "));
            }
        }
    }
    Ok(())
}
