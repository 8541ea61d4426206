//! The star-graph election: update order decides the winner.

use fds::generators::{election_winner, voting_star};
use fds::specfile::Model;
use fds::system::UpdateWord;

fn main() -> fds::Result<()> {
    for order in ["(2,3,1,4,5)", "(1,2,3,4,5)"] {
        let spec = voting_star(UpdateWord::parse(5, order)?)?;
        let Model::Deterministic { system, mode } = spec.model()? else {
            unreachable!("voting is deterministic");
        };
        let start = spec.init.clone().expect("voting sets an initial state");
        let end = system.step(&mode, &start)?;
        println!(
            "order {order}: {} -> {}, winner {}",
            start.label(),
            end.label(),
            election_winner(&end)
        );
    }
    Ok(())
}
