//! Random choice between two update orders as a Markov chain.

use fds::export::stochastic_dot;
use fds::specfile::{Model, SpecFile};
use fds::stochastic::{stationary_distributions, total_variation, MAX_STATIONARY_ITERATIONS};
use fds::system::{Configuration, DEFAULT_BUDGET};

const SPEC: &str = "\
field 2
vars 4
local 1 = x1 + x2 + x3 + x4
local 2 = x1 + x2
local 3 = x1 + x3
local 4 = x1 + x4
member 1/2 word (2,1,3,4)
member 1/2 word (1,2,3,4)
";

fn main() -> fds::Result<()> {
    let Model::Stochastic(ss) = SpecFile::parse(SPEC)?.model()? else {
        unreachable!("the spec has members");
    };
    let m = ss.transition_matrix(DEFAULT_BUDGET)?;
    print!("{m}");
    println!("{}", stochastic_dot(&m));

    let stationary = stationary_distributions(&m, MAX_STATIONARY_ITERATIONS)?;
    let c0 = Configuration::parse("(1,0,0,0)")?;
    let steps = 200_000;
    let mut counts = vec![0.0; m.size()];
    let mut last = 0;
    for c in ss.trajectory(&c0, 1)?.skip(1).take(steps) {
        last = m.space().index(c.values());
        counts[last] += 1.0;
    }
    let empirical: Vec<f64> = counts.iter().map(|c| c / steps as f64).collect();
    for st in &stationary {
        let labels: Vec<String> = st
            .class
            .iter()
            .map(|&u| m.space().config(u).label())
            .collect();
        println!("class {{{}}} period {}", labels.join(","), st.period);
        if st.class.contains(&last) {
            let tv = total_variation(&empirical, &st.dense(m.size()));
            println!("  simulated from 1000: total variation {tv:.4} after {steps} steps");
        }
    }
    Ok(())
}
