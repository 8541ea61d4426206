//! A small Hopfield network as a Boolean SDS; symmetric weights mean every
//! sequential orbit settles on a fixed point.

use fds::generators::hopfield;
use fds::phase::PhaseSpace;
use fds::specfile::Model;
use fds::system::{UpdateMode, UpdateWord, DEFAULT_BUDGET};

fn main() -> fds::Result<()> {
    let w = vec![
        vec![0.0, 1.0, -1.0, 0.5],
        vec![1.0, 0.0, 1.0, 0.0],
        vec![-1.0, 1.0, 0.0, -0.5],
        vec![0.5, 0.0, -0.5, 0.0],
    ];
    let theta = [0.0, 0.5, -0.5, 0.0];
    for mode in [
        UpdateMode::Word(UpdateWord::identity(4)),
        UpdateMode::Parallel,
    ] {
        let spec = hopfield(&w, &theta, mode)?;
        let Model::Deterministic { system, mode } = spec.model()? else {
            unreachable!("hopfield is deterministic");
        };
        let ps = PhaseSpace::enumerate(&system, &mode, DEFAULT_BUDGET)?;
        let fixed: Vec<String> = ps.fixed_points().iter().map(|c| c.label()).collect();
        println!(
            "{mode}: cycles {:?}, fixed points {}",
            ps.cycle_counts(),
            fixed.join(" ")
        );
    }
    Ok(())
}
