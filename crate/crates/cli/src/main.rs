//! `fds`: analyze finite dynamical systems described in spec files.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fds::export::{dependency_dot, phase_space_dot, stochastic_dot, trajectory_csv};
use fds::generators::{self, election_winner, TrafficParams};
use fds::linear::{
    affine_embed, as_linear, enumerated_cycles, predict_affine_cycles, predict_cycle_structure,
    verify_transient_trees,
};
use fds::monomial::loop_numbers;
use fds::phase::PhaseSpace;
use fds::specfile::{Model, SpecFile};
use fds::stochastic::{
    parse_probability, stationary_distributions, StochasticSystem, MAX_STATIONARY_ITERATIONS,
};
use fds::system::{Configuration, System, UpdateMode, UpdateWord, DEFAULT_BUDGET};
use fds::updorder::{distinct_sequential_maps, update_graph_components, SimpleGraph};
use fds::{Error, Result};

#[derive(Parser)]
#[command(
    name = "fds",
    version,
    about = "Finite dynamical systems over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the phase space: fixed points, cycles, transients.
    Phase {
        #[command(flatten)]
        common: Common,
        /// Emit the dependency graph instead of the phase space.
        #[arg(long)]
        dependency: bool,
    },
    /// Predict cycle structure of an affine system without enumeration.
    AnalyzeLinear {
        #[command(flatten)]
        common: Common,
        /// Also enumerate the phase space and compare; exit 1 on mismatch.
        #[arg(long)]
        verify: bool,
    },
    /// Loop-number test of a Boolean monomial system; exit 1 unless every
    /// periodic point is fixed.
    Monomial {
        #[command(flatten)]
        common: Common,
    },
    /// Update-order equivalence classes of a symmetric system.
    Orders {
        #[command(flatten)]
        common: Common,
        /// Also count distinct sequential maps over all permutations.
        #[arg(long)]
        maps: bool,
    },
    /// Transition matrix, recurrent classes and stationary distributions.
    Markov {
        #[command(flatten)]
        common: Common,
    },
    /// Iterate from an initial state.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Initial state, e.g. `(1,0,0,0)` or `1000`; defaults to the spec's `init`.
        #[arg(long)]
        init: Option<String>,
        /// Print only the final state and its most frequent value.
        #[arg(long)]
        tally: bool,
    },
    /// Whether one state is reachable from another; exit 1 if not.
    Reach {
        #[command(flatten)]
        common: Common,
        /// Start state; defaults to the spec's `init`.
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: String,
    },
    /// Print a built-in example as a spec file.
    Gen(GenArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    spec: PathBuf,
    /// Overrides the spec's mode.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Update word such as `(2,1,3,4)`; implies `--mode word`.
    #[arg(long)]
    order: Option<String>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Parallel,
    Word,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Runex,
    Voting,
    Hopfield,
    Traffic,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    name: Example,
    /// Voting: update order over the star (x1 is the center).
    #[arg(long, default_value = "(2,3,1,4,5)")]
    order: String,
    /// Hopfield: rows separated by `;`, entries by `,`.
    #[arg(long)]
    weights: Option<String>,
    /// Hopfield: one threshold per node, comma separated.
    #[arg(long)]
    thresholds: Option<String>,
    /// Traffic: ring length.
    #[arg(long, default_value_t = 5)]
    length: usize,
    /// Traffic: initial fraction of occupied cells.
    #[arg(long, default_value_t = 0.4)]
    density: f64,
    /// Traffic: speed limit.
    #[arg(long, default_value_t = 5)]
    vmax: u32,
    /// Traffic: braking probability, e.g. `1/4` or `0.25`.
    #[arg(long, default_value = "1/4")]
    decel: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Output text plus the verdict that decides the exit code.
struct Report {
    text: String,
    verdict: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report {
            text,
            verdict: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Phase { common, .. }
        | Command::AnalyzeLinear { common, .. }
        | Command::Monomial { common }
        | Command::Orders { common, .. }
        | Command::Markov { common }
        | Command::Simulate { common, .. }
        | Command::Reach { common, .. } => common.out.clone(),
        Command::Gen(g) => g.out.clone(),
    };
    let result = run(&cli.command).and_then(|report| {
        match &out {
            Some(path) => std::fs::write(path, &report.text).map_err(|e| {
                Error::InvalidParams(format!("cannot write {}: {e}", path.display()))
            })?,
            None => print!("{}", report.text),
        }
        Ok(report.verdict)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Phase { common, dependency } => phase(common, *dependency),
        Command::AnalyzeLinear { common, verify } => analyze_linear(common, *verify),
        Command::Monomial { common } => monomial(common),
        Command::Orders { common, maps } => orders(common, *maps),
        Command::Markov { common } => markov(common),
        Command::Simulate {
            common,
            steps,
            seed,
            init,
            tally,
        } => simulate(common, *steps, *seed, init.as_deref(), *tally),
        Command::Reach { common, from, to } => reach(common, from.as_deref(), to),
        Command::Gen(args) => gen(args).map(|s| Report::ok(s.to_string())),
    }
}

struct Loaded {
    spec: SpecFile,
    model: Model,
}

fn load(common: &Common) -> Result<Loaded> {
    let text = std::fs::read_to_string(&common.spec)
        .map_err(|e| Error::InvalidParams(format!("cannot read {}: {e}", common.spec.display())))?;
    let spec = SpecFile::parse(&text)?;
    let mut model = spec.model()?;
    if let Some(mode) = mode_override(common, spec.n)? {
        model = match model {
            Model::Deterministic { system, .. } => Model::Deterministic { system, mode },
            Model::Stochastic(_) => {
                return Err(Error::InvalidParams(
                    "--mode/--order apply to deterministic specs only".into(),
                ))
            }
        };
    }
    Ok(Loaded { spec, model })
}

fn mode_override(common: &Common, n: usize) -> Result<Option<UpdateMode>> {
    Ok(match (common.mode, &common.order) {
        (Some(ModeArg::Parallel), Some(_)) => {
            return Err(Error::InvalidParams(
                "--order conflicts with --mode parallel".into(),
            ))
        }
        (Some(ModeArg::Parallel), None) => Some(UpdateMode::Parallel),
        (_, Some(order)) => Some(UpdateMode::Word(UpdateWord::parse(n, order)?)),
        (Some(ModeArg::Word), None) => Some(UpdateMode::Word(UpdateWord::identity(n))),
        (None, None) => None,
    })
}

fn deterministic(model: Model, command: &str) -> Result<(System, UpdateMode)> {
    match model {
        Model::Deterministic { system, mode } => Ok((system, mode)),
        Model::Stochastic(_) => Err(Error::InvalidParams(format!(
            "'{command}' needs a deterministic spec"
        ))),
    }
}

fn require_format(common: &Common, allowed: &[Format], command: &str) -> Result<()> {
    if allowed.contains(&common.format) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "'{command}' does not support this --format"
        )))
    }
}

fn phase(common: &Common, dependency: bool) -> Result<Report> {
    let (system, mode) = deterministic(load(common)?.model, "phase")?;
    if dependency {
        require_format(common, &[Format::Dot], "phase --dependency")?;
        return Ok(Report::ok(dependency_dot(system.dependency_graph())));
    }
    let ps = PhaseSpace::enumerate(&system, &mode, common.budget)?;
    let text = match common.format {
        Format::Dot => phase_space_dot(&ps),
        Format::Csv => {
            let mut out = String::from("state,successor,transient,period\n");
            for u in 0..ps.size() {
                let label = |i| ps.space().config(i).label();
                writeln!(
                    out,
                    "{},{},{},{}",
                    label(u),
                    label(ps.successor(u)),
                    ps.transient_length(u),
                    ps.terminal_period(u)
                )
                .expect("string write");
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "mode: {mode}").expect("string write");
            writeln!(out, "states: {}", ps.size()).expect("string write");
            let fixed = ps.fixed_points();
            writeln!(out, "fixed points: {}", fixed.len()).expect("string write");
            for c in &fixed {
                writeln!(out, "  {}", c.label()).expect("string write");
            }
            writeln!(out, "cycles (length count):").expect("string write");
            for (len, count) in ps.cycle_counts() {
                writeln!(out, "  {len} {count}").expect("string write");
            }
            let longest = (0..ps.size())
                .map(|u| ps.transient_length(u))
                .max()
                .unwrap_or(0);
            writeln!(out, "longest transient: {longest}").expect("string write");
            writeln!(out, "invertible: {}", ps.is_bijective()).expect("string write");
            out
        }
    };
    Ok(Report::ok(text))
}

fn analyze_linear(common: &Common, verify: bool) -> Result<Report> {
    require_format(common, &[Format::Text], "analyze-linear")?;
    let (system, _) = deterministic(load(common)?.model, "analyze-linear")?;
    let (a, b) = as_linear(&system)?;
    let mut out = String::new();
    writeln!(out, "matrix:\n{a}").expect("string write");
    let mut verdict = true;
    if b.iter().all(|&v| v == 0) {
        let structure = predict_cycle_structure(&a)?;
        writeln!(
            out,
            "invertible part: {}, nilpotent part: {}, period bound: {}",
            structure.invertible_dim, structure.nilpotent_dim, structure.period_bound
        )
        .expect("string write");
        writeln!(out, "{structure}").expect("string write");
        let levels: Vec<String> = structure
            .tree_level_sizes()
            .iter()
            .map(|s| s.to_string())
            .collect();
        writeln!(out, "tree level sizes: {}", levels.join(" ")).expect("string write");
        if verify {
            let ps = PhaseSpace::enumerate(&system, &UpdateMode::Parallel, common.budget)?;
            let cycles_match = enumerated_cycles(&ps) == structure.cycles;
            let trees = verify_transient_trees(&a, common.budget)?;
            writeln!(out, "enumeration agrees on cycles: {cycles_match}").expect("string write");
            writeln!(out, "transient trees isomorphic: {}", trees.isomorphic)
                .expect("string write");
            writeln!(out, "tree levels match profile: {}", trees.matches_profile)
                .expect("string write");
            verdict = cycles_match && trees.isomorphic && trees.matches_profile;
        }
    } else {
        let shift: Vec<String> = b.iter().map(u32::to_string).collect();
        writeln!(out, "shift: ({})", shift.join(",")).expect("string write");
        writeln!(out, "affine embedding:\n{}", affine_embed(&a, &b)?).expect("string write");
        let cycles = predict_affine_cycles(&a, &b)?;
        writeln!(out, "length count").expect("string write");
        for (len, count) in &cycles {
            writeln!(out, "{len} {count}").expect("string write");
        }
        if verify {
            let ps = PhaseSpace::enumerate(&system, &UpdateMode::Parallel, common.budget)?;
            verdict = enumerated_cycles(&ps) == cycles;
            writeln!(out, "enumeration agrees on cycles: {verdict}").expect("string write");
        }
    }
    Ok(Report { text: out, verdict })
}

fn monomial(common: &Common) -> Result<Report> {
    require_format(common, &[Format::Text], "monomial")?;
    let (system, _) = deterministic(load(common)?.model, "monomial")?;
    let report = loop_numbers(&system)?;
    let mut out = String::new();
    for c in &report.components {
        let names: Vec<String> = c.vertices.iter().map(|v| format!("x{}", v + 1)).collect();
        writeln!(
            out,
            "component {{{}}}: loop number {}",
            names.join(","),
            c.loop_number
        )
        .expect("string write");
    }
    writeln!(out, "only fixed points: {}", report.fixed_points_only).expect("string write");
    Ok(Report {
        text: out,
        verdict: report.fixed_points_only,
    })
}

fn orders(common: &Common, maps: bool) -> Result<Report> {
    require_format(common, &[Format::Text], "orders")?;
    let (system, _) = deterministic(load(common)?.model, "orders")?;
    let g = SimpleGraph::from_system(&system)?;
    let summary = update_graph_components(&g)?;
    let mut out = String::new();
    writeln!(out, "permutations: {}", summary.permutation_count).expect("string write");
    writeln!(
        out,
        "update graph components: {}",
        summary.component_count()
    )
    .expect("string write");
    writeln!(
        out,
        "acyclic orientations: {}",
        fds::updorder::count_inequivalent(&g)?
    )
    .expect("string write");
    writeln!(out, "bijection holds: {}", summary.bijection_holds).expect("string write");
    for (k, c) in summary.components.iter().enumerate() {
        writeln!(
            out,
            "component {}: representative {}, size {}, orientation {}",
            k + 1,
            c.representative,
            c.size,
            c.orientation
        )
        .expect("string write");
    }
    if maps {
        let distinct = distinct_sequential_maps(&system, common.budget)?;
        writeln!(out, "distinct sequential maps: {distinct}").expect("string write");
    }
    Ok(Report::ok(out))
}

fn stochastic(model: Model) -> Result<StochasticSystem> {
    match model {
        Model::Deterministic { system, mode } => StochasticSystem::deterministic(system, mode),
        Model::Stochastic(s) => Ok(s),
    }
}

fn markov(common: &Common) -> Result<Report> {
    require_format(common, &[Format::Text, Format::Dot], "markov")?;
    let ss = stochastic(load(common)?.model)?;
    let m = ss.transition_matrix(common.budget)?;
    if common.format == Format::Dot {
        return Ok(Report::ok(stochastic_dot(&m)));
    }
    let mut out = String::new();
    writeln!(out, "states: {}", m.size()).expect("string write");
    writeln!(out, "transitions: {}", m.edge_count()).expect("string write");
    write!(out, "{m}").expect("string write");
    let space = m.space();
    for st in stationary_distributions(&m, MAX_STATIONARY_ITERATIONS)? {
        let labels: Vec<String> = st.class.iter().map(|&u| space.config(u).label()).collect();
        writeln!(
            out,
            "recurrent class {{{}}} period {}",
            labels.join(","),
            st.period
        )
        .expect("string write");
        for (label, w) in labels.iter().zip(&st.weights) {
            writeln!(out, "  {label} {w:.6}").expect("string write");
        }
    }
    Ok(Report::ok(out))
}

fn initial_state(spec: &SpecFile, given: Option<&str>) -> Result<Configuration> {
    match given {
        Some(text) => Configuration::parse(text),
        None => spec.init.clone().ok_or_else(|| {
            Error::InvalidParams("no initial state: pass one or add 'init' to the spec".into())
        }),
    }
}

fn simulate(
    common: &Common,
    steps: usize,
    seed: u64,
    init: Option<&str>,
    tally: bool,
) -> Result<Report> {
    require_format(common, &[Format::Text, Format::Csv], "simulate")?;
    let Loaded { spec, model } = load(common)?;
    let c0 = initial_state(&spec, init)?;
    let trajectory = match model {
        Model::Deterministic { system, mode } => {
            system.check_config(&c0)?;
            let mut out = vec![c0];
            for _ in 0..steps {
                let next = system.step(&mode, out.last().expect("nonempty"))?;
                out.push(next);
            }
            out
        }
        Model::Stochastic(ss) => ss.simulate(&c0, steps, seed)?,
    };
    let last = trajectory.last().expect("nonempty");
    if tally {
        return Ok(Report::ok(format!(
            "final: {}\nwinner: {}\n",
            last.label(),
            election_winner(last)
        )));
    }
    let text = match common.format {
        Format::Csv => trajectory_csv(&trajectory),
        _ => trajectory
            .iter()
            .enumerate()
            .map(|(t, c)| format!("{t} {}\n", c.label()))
            .collect(),
    };
    Ok(Report::ok(text))
}

fn reach(common: &Common, from: Option<&str>, to: &str) -> Result<Report> {
    require_format(common, &[Format::Text], "reach")?;
    let Loaded { spec, model } = load(common)?;
    let from = initial_state(&spec, from)?;
    let to = Configuration::parse(to)?;
    let steps = match model {
        Model::Deterministic { system, mode } => {
            fds::phase::reachable(&system, &mode, &from, &to, common.budget)?
        }
        Model::Stochastic(ss) => {
            let m = ss.transition_matrix(common.budget)?;
            let space = m.space();
            for c in [&from, &to] {
                if c.len() != space.n() || c.values().iter().any(|&v| v >= space.field().modulus())
                {
                    return Err(Error::InvalidParams(format!(
                        "{} is not a state of this system",
                        c.label()
                    )));
                }
            }
            m.reachable(space.index(from.values()), space.index(to.values()))
        }
    };
    Ok(match steps {
        Some(k) => Report::ok(format!("reachable in {k} steps\n")),
        None => Report {
            text: "unreachable\n".into(),
            verdict: false,
        },
    })
}

fn parse_reals(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParams(format!("invalid number '{s}'")))
        })
        .collect()
}

fn gen(args: &GenArgs) -> Result<SpecFile> {
    match args.name {
        Example::Runex => Ok(generators::runex()),
        Example::Voting => generators::voting_star(UpdateWord::parse(5, &args.order)?),
        Example::Hopfield => {
            let missing =
                || Error::InvalidParams("hopfield needs --weights and --thresholds".into());
            let weights = args
                .weights
                .as_deref()
                .ok_or_else(missing)?
                .split(';')
                .map(parse_reals)
                .collect::<Result<Vec<_>>>()?;
            let thresholds = parse_reals(args.thresholds.as_deref().ok_or_else(missing)?)?;
            generators::hopfield(&weights, &thresholds, UpdateMode::Parallel)
        }
        Example::Traffic => generators::traffic(&TrafficParams {
            length: args.length,
            density: args.density,
            vmax: args.vmax,
            decel: parse_probability(&args.decel)
                .map_err(|e| Error::InvalidParams(e.to_string()))?,
        }),
    }
}
