//! The same locals under parallel and two sequential update words.

use fds::generators::runex;
use fds::phase::PhaseSpace;
use fds::specfile::Model;
use fds::system::{UpdateMode, UpdateWord, DEFAULT_BUDGET};

fn main() -> fds::Result<()> {
    let Model::Deterministic { system, .. } = runex().model()? else {
        unreachable!("runex is deterministic");
    };
    let modes = [
        UpdateMode::Parallel,
        UpdateMode::Word(UpdateWord::parse(4, "(2,1,3,4)")?),
        UpdateMode::Word(UpdateWord::identity(4)),
    ];
    for mode in &modes {
        let ps = PhaseSpace::enumerate(&system, mode, DEFAULT_BUDGET)?;
        println!(
            "{mode}: cycles {:?}, invertible {}",
            ps.cycle_counts(),
            ps.is_bijective()
        );
    }
    // the words differ only in where x2 goes, yet give different maps
    let a = system.materialize(&modes[1], DEFAULT_BUDGET)?;
    let b = system.materialize(&modes[2], DEFAULT_BUDGET)?;
    let differ = (0..16).filter(|&u| a.image(u) != b.image(u)).count();
    println!("(2,1,3,4) and (1,2,3,4) disagree on {differ} of 16 states");
    Ok(())
}
