//! Ring traffic with random braking. Cells hold a car's velocity (0..5) or 6 for empty.

use fds::generators::{traffic, TrafficParams, EMPTY};
use fds::specfile::Model;

fn main() -> fds::Result<()> {
    let params = TrafficParams {
        length: 5,
        density: 0.4,
        ..TrafficParams::default()
    };
    let spec = traffic(&params)?;
    let Model::Stochastic(ss) = spec.model()? else {
        unreachable!("traffic is a PFDS");
    };
    let start = spec.init.clone().expect("traffic sets an initial state");
    let mut flow = 0u32;
    let steps = 40;
    for (t, c) in ss.simulate(&start, steps, 11)?.iter().enumerate() {
        let row: String = c
            .values()
            .iter()
            .map(|&v| {
                if v == EMPTY {
                    '.'
                } else {
                    char::from_digit(v, 10).unwrap_or('?')
                }
            })
            .collect();
        if t < 12 {
            println!("{t:>3} {row}");
        }
        flow += c.values().iter().filter(|&&v| v != EMPTY).sum::<u32>();
    }
    println!(
        "mean total speed per step: {:.2}",
        f64::from(flow) / (steps + 1) as f64
    );
    Ok(())
}
