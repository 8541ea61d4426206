//! Stochastic systems: random choice of system (SFDS) or of local function
//! per variable (PFDS), their Markov chains, stationary analysis and seeded
//! sampling.
//!
//! Sampling uses ChaCha8 (`rand_chacha`). The generator for step `t` of a
//! trajectory is `ChaCha8Rng::seed_from_u64(seed)` switched to stream `t`,
//! so any step can be replayed on its own. Each random choice draws
//! `r = random_range(0..D)` with `D` the common denominator of the
//! probabilities and picks the first outcome whose cumulative numerator
//! exceeds `r`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::monomial::{loop_number, strongly_connected_components};
use crate::multipoly::MPoly;
use crate::system::{CompiledLocal, Configuration, StateSpace, System, UpdateMode};

/// Parses `1/3`, `0.25` or `1` as an exact rational.
pub fn parse_probability(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Semantic(format!("invalid probability '{text}'"));
    let value = if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let int = if int.is_empty() { "0" } else { int };
        let whole = BigInt::from_str(int).map_err(|_| bad())?;
        let digits = BigInt::from_str(frac).map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        BigRational::from_integer(whole) + BigRational::new(digits, scale)
    } else {
        BigRational::from_str(t).map_err(|_| bad())?
    };
    if value < BigRational::zero() || value > BigRational::one() {
        return Err(Error::Semantic(format!(
            "probability {text} outside [0, 1]"
        )));
    }
    Ok(value)
}

fn check_distribution<'a>(probs: impl Iterator<Item = &'a BigRational>, what: &str) -> Result<()> {
    let mut sum = BigRational::zero();
    for p in probs {
        if *p < BigRational::zero() || *p > BigRational::one() {
            return Err(Error::Semantic(format!(
                "{what}: probability {p} outside [0, 1]"
            )));
        }
        sum += p;
    }
    if !sum.is_one() {
        return Err(Error::Semantic(format!(
            "{what}: probabilities sum to {sum}, not 1"
        )));
    }
    Ok(())
}

/// Exact discrete sampler over outcome indices.
#[derive(Debug, Clone)]
struct Sampler {
    denominator: u64,
    cumulative: Vec<u64>,
}

impl Sampler {
    fn new(probs: &[BigRational]) -> Result<Self> {
        let denom = probs
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
        let denominator = denom
            .to_u64()
            .ok_or(Error::Overflow("probability denominator"))?;
        let mut acc = 0u64;
        let cumulative = probs
            .iter()
            .map(|p| {
                acc += (p.numer() * (&denom / p.denom()))
                    .to_u64()
                    .expect("numerator below denominator");
                acc
            })
            .collect();
        Ok(Sampler {
            denominator,
            cumulative,
        })
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        let r = rng.random_range(0..self.denominator);
        self.cumulative.partition_point(|&c| c <= r)
    }
}

/// One deterministic member of an SFDS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub system: System,
    pub mode: UpdateMode,
    pub probability: BigRational,
}

/// One candidate local function of a PFDS variable.
#[derive(Debug, Clone)]
pub struct Choice {
    pub poly: MPoly,
    pub probability: BigRational,
    compiled: CompiledLocal,
}

impl PartialEq for Choice {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && self.probability == other.probability
    }
}

impl Eq for Choice {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Sfds(Vec<Member>),
    Pfds {
        choices: Vec<Vec<Choice>>,
        mode: UpdateMode,
    },
}

/// A stochastic finite dynamical system.
#[derive(Debug, Clone)]
pub struct StochasticSystem {
    field: Field,
    n: usize,
    kind: Kind,
    samplers: Vec<Sampler>,
}

impl PartialEq for StochasticSystem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.kind == other.kind
    }
}

impl Eq for StochasticSystem {}

impl StochasticSystem {
    /// Random choice among deterministic systems with update modes.
    pub fn sfds(members: Vec<Member>) -> Result<Self> {
        let first = members.first().ok_or_else(|| {
            Error::Semantic("a stochastic system needs at least one member".into())
        })?;
        let (field, n) = (first.system.field(), first.system.n());
        for m in &members {
            if m.system.field() != field {
                return Err(Error::ModulusMismatch(
                    field.modulus(),
                    m.system.field().modulus(),
                ));
            }
            if m.system.n() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: m.system.n(),
                });
            }
            m.system.check_mode(&m.mode)?;
        }
        check_distribution(members.iter().map(|m| &m.probability), "members")?;
        let probs: Vec<BigRational> = members.iter().map(|m| m.probability.clone()).collect();
        Ok(StochasticSystem {
            field,
            n,
            samplers: vec![Sampler::new(&probs)?],
            kind: Kind::Sfds(members),
        })
    }

    /// Independent random choice of local function for every variable.
    pub fn pfds(
        field: Field,
        choices: Vec<Vec<(MPoly, BigRational)>>,
        mode: UpdateMode,
    ) -> Result<Self> {
        let n = choices.len();
        if n == 0 {
            return Err(Error::Semantic(
                "a stochastic system needs at least one variable".into(),
            ));
        }
        let mut samplers = Vec::with_capacity(n);
        let mut built = Vec::with_capacity(n);
        for (i, list) in choices.into_iter().enumerate() {
            if list.is_empty() {
                return Err(Error::Semantic(format!(
                    "variable {} has no local functions",
                    i + 1
                )));
            }
            for (f, _) in &list {
                if f.arity() != n {
                    return Err(Error::ArityMismatch {
                        expected: n,
                        found: f.arity(),
                    });
                }
                if f.field() != field {
                    return Err(Error::ModulusMismatch(field.modulus(), f.field().modulus()));
                }
            }
            check_distribution(list.iter().map(|(_, p)| p), &format!("variable {}", i + 1))?;
            let probs: Vec<BigRational> = list.iter().map(|(_, p)| p.clone()).collect();
            samplers.push(Sampler::new(&probs)?);
            built.push(
                list.into_iter()
                    .map(|(poly, probability)| Choice {
                        compiled: CompiledLocal::new(&poly),
                        poly,
                        probability,
                    })
                    .collect(),
            );
        }
        if let UpdateMode::Word(w) = &mode {
            if let Some(&bad) = w.entries().iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange { index: bad + 1, n });
            }
        }
        Ok(StochasticSystem {
            field,
            n,
            samplers,
            kind: Kind::Pfds {
                choices: built,
                mode,
            },
        })
    }

    /// A single deterministic member with probability 1.
    pub fn deterministic(system: System, mode: UpdateMode) -> Result<Self> {
        Self::sfds(vec![Member {
            system,
            mode,
            probability: BigRational::one(),
        }])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// SFDS members, if this is an SFDS.
    pub fn members(&self) -> Option<&[Member]> {
        match &self.kind {
            Kind::Sfds(m) => Some(m),
            Kind::Pfds { .. } => None,
        }
    }

    /// PFDS choices and mode, if this is a PFDS.
    pub fn choices(&self) -> Option<(&[Vec<Choice>], &UpdateMode)> {
        match &self.kind {
            Kind::Sfds(_) => None,
            Kind::Pfds { choices, mode } => Some((choices, mode)),
        }
    }

    pub fn state_space(&self, budget: usize) -> Result<StateSpace> {
        StateSpace::new(self.field, self.n, budget)
    }

    /// Markov transition matrix, exact.
    ///
    /// For an SFDS this is `Σ p_i P_i`. For a PFDS in parallel mode each
    /// variable's next value is drawn independently; in word mode the
    /// active variable draws afresh at every letter.
    pub fn transition_matrix(&self, budget: usize) -> Result<TransitionMatrix> {
        let space = self.state_space(budget)?;
        let rows: Vec<Vec<(usize, BigRational)>> = match &self.kind {
            Kind::Sfds(members) => {
                let maps = members
                    .iter()
                    .map(|m| m.system.materialize(&m.mode, budget))
                    .collect::<Result<Vec<_>>>()?;
                (0..space.size())
                    .into_par_iter()
                    .map(|u| {
                        merge(
                            maps.iter()
                                .zip(members)
                                .map(|(map, m)| (map.image(u), m.probability.clone())),
                        )
                    })
                    .collect()
            }
            Kind::Pfds { choices, mode } => (0..space.size())
                .into_par_iter()
                .map(|u| {
                    let x = space.config(u).into_values();
                    let outcomes = match mode {
                        UpdateMode::Parallel => pfds_parallel_row(choices, &x),
                        UpdateMode::Word(w) => {
                            let mut dist = BTreeMap::from([(x, BigRational::one())]);
                            for &i in w.entries() {
                                dist = pfds_letter(choices, i, dist);
                            }
                            dist.into_iter().collect()
                        }
                    };
                    merge(outcomes.into_iter().map(|(y, p)| (space.index(&y), p)))
                })
                .collect(),
        };
        Ok(TransitionMatrix { space, rows })
    }

    /// Seeded trajectory starting at `c0`, yielding `c0` first.
    pub fn trajectory(&self, c0: &Configuration, seed: u64) -> Result<Trajectory<'_>> {
        if c0.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: c0.len(),
            });
        }
        let p = self.field.modulus();
        if let Some(v) = c0.values().iter().find(|&&v| v >= p) {
            return Err(Error::Semantic(format!(
                "state value {v} is not a residue mod {p}"
            )));
        }
        Ok(Trajectory {
            system: self,
            seed,
            step: 0,
            state: c0.values().to_vec(),
            scratch: vec![0; self.n],
        })
    }

    /// `steps + 1` configurations: `c0` followed by `steps` sampled updates.
    pub fn simulate(
        &self,
        c0: &Configuration,
        steps: usize,
        seed: u64,
    ) -> Result<Vec<Configuration>> {
        Ok(self.trajectory(c0, seed)?.take(steps + 1).collect())
    }

    fn sample_step(&self, rng: &mut ChaCha8Rng, x: &mut [u32], scratch: &mut [u32]) {
        match &self.kind {
            Kind::Sfds(members) => {
                let m = &members[self.samplers[0].sample(rng)];
                match &m.mode {
                    UpdateMode::Parallel => {
                        for (i, s) in scratch.iter_mut().enumerate() {
                            *s = m.system.eval_local(i, x);
                        }
                        x.copy_from_slice(scratch);
                    }
                    UpdateMode::Word(w) => m.system.word_in_place(w, x),
                }
            }
            Kind::Pfds { choices, mode } => match mode {
                UpdateMode::Parallel => {
                    for (i, s) in scratch.iter_mut().enumerate() {
                        *s = choices[i][self.samplers[i].sample(rng)].compiled.eval(x);
                    }
                    x.copy_from_slice(scratch);
                }
                UpdateMode::Word(w) => {
                    for &i in w.entries() {
                        x[i] = choices[i][self.samplers[i].sample(rng)].compiled.eval(x);
                    }
                }
            },
        }
    }
}

fn pfds_parallel_row(choices: &[Vec<Choice>], x: &[u32]) -> Vec<(Vec<u32>, BigRational)> {
    let mut partial: Vec<(Vec<u32>, BigRational)> = vec![(Vec::new(), BigRational::one())];
    for list in choices {
        let mut values: BTreeMap<u32, BigRational> = BTreeMap::new();
        for c in list {
            *values
                .entry(c.compiled.eval(x))
                .or_insert_with(BigRational::zero) += &c.probability;
        }
        partial = partial
            .iter()
            .flat_map(|(prefix, p)| {
                values.iter().map(move |(&v, q)| {
                    let mut y = prefix.clone();
                    y.push(v);
                    (y, p * q)
                })
            })
            .collect();
    }
    partial
}

fn pfds_letter(
    choices: &[Vec<Choice>],
    i: usize,
    dist: BTreeMap<Vec<u32>, BigRational>,
) -> BTreeMap<Vec<u32>, BigRational> {
    let mut out = BTreeMap::new();
    for (x, p) in dist {
        for c in &choices[i] {
            let mut y = x.clone();
            y[i] = c.compiled.eval(&x);
            *out.entry(y).or_insert_with(BigRational::zero) += &p * &c.probability;
        }
    }
    out
}

/// Sums weights per target, drops zeros, sorts by target.
fn merge(entries: impl Iterator<Item = (usize, BigRational)>) -> Vec<(usize, BigRational)> {
    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (v, p) in entries {
        *acc.entry(v).or_insert_with(BigRational::zero) += p;
    }
    acc.into_iter().filter(|(_, p)| !p.is_zero()).collect()
}

/// Iterator over a sampled trajectory.
pub struct Trajectory<'a> {
    system: &'a StochasticSystem,
    seed: u64,
    step: u64,
    state: Vec<u32>,
    scratch: Vec<u32>,
}

impl Trajectory<'_> {
    /// Generator for the transition out of step `t`.
    pub fn step_rng(seed: u64, t: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t);
        rng
    }

    /// State that the next call to `next` yields.
    pub fn state_values(&self) -> &[u32] {
        &self.state
    }
}

impl Iterator for Trajectory<'_> {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        let out = Configuration::new(self.state.clone());
        let mut rng = Self::step_rng(self.seed, self.step);
        self.system
            .sample_step(&mut rng, &mut self.state, &mut self.scratch);
        self.step += 1;
        Some(out)
    }
}

/// Sparse row-stochastic matrix with exact entries; equivalently the
/// weighted stochastic phase space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    space: StateSpace,
    rows: Vec<Vec<(usize, BigRational)>>,
}

/// The weighted phase space of a stochastic system is its transition
/// matrix read as a digraph.
pub type StochasticPhaseSpace = TransitionMatrix;

impl TransitionMatrix {
    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Nonzero entries of row `u`, sorted by column.
    pub fn row(&self, u: usize) -> &[(usize, BigRational)] {
        &self.rows[u]
    }

    pub fn entry(&self, u: usize, v: usize) -> BigRational {
        self.rows[u]
            .binary_search_by_key(&v, |(w, _)| *w)
            .map(|k| self.rows[u][k].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    /// Every weighted edge `(u, v, w)` in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |(v, w)| (u, *v, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// True iff every row sums to exactly 1.
    pub fn is_row_stochastic(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.iter().map(|(_, p)| p).sum::<BigRational>().is_one())
    }

    /// Positive-probability successors of every state.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|(v, _)| *v).collect())
            .collect()
    }

    /// Whether `to` can be reached from `from` along positive-probability
    /// edges; returns the least number of steps.
    pub fn reachable(&self, from: usize, to: usize) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.size()];
        dist[from] = 0;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                return Some(dist[u]);
            }
            for (v, _) in &self.rows[u] {
                if dist[*v] == usize::MAX {
                    dist[*v] = dist[u] + 1;
                    queue.push_back(*v);
                }
            }
        }
        None
    }

    /// Closed communicating classes (terminal strongly connected
    /// components), each sorted, ordered by smallest state.
    pub fn recurrent_classes(&self) -> Vec<Vec<usize>> {
        let succ = self.successors();
        let comps = strongly_connected_components(&succ);
        let mut comp_of = vec![0; self.size()];
        for (k, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = k;
            }
        }
        comps
            .into_iter()
            .enumerate()
            .filter(|(k, c)| c.iter().all(|&u| succ[u].iter().all(|&v| comp_of[v] == *k)))
            .map(|(_, c)| c)
            .collect()
    }

    /// Floating-point copy of the rows.
    pub fn to_f64(&self) -> Vec<Vec<(usize, f64)>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(v, p)| (*v, p.to_f64().expect("probabilities are finite")))
                    .collect()
            })
            .collect()
    }
}

/// Stationary distribution supported on one recurrent class.
#[derive(Debug, Clone, PartialEq)]
pub struct Stationary {
    /// States of the class, ascending.
    pub class: Vec<usize>,
    /// Period of the class.
    pub period: usize,
    /// Probability of each state of `class`, in the same order.
    pub weights: Vec<f64>,
}

impl Stationary {
    /// Probability vector over the whole state space.
    pub fn dense(&self, size: usize) -> Vec<f64> {
        let mut out = vec![0.0; size];
        for (&s, &w) in self.class.iter().zip(&self.weights) {
            out[s] = w;
        }
        out
    }
}

/// Default iteration cap for [`stationary_distributions`].
pub const MAX_STATIONARY_ITERATIONS: usize = 1_000_000;
/// L1 residual at which power iteration stops.
pub const STATIONARY_TOLERANCE: f64 = 1e-10;

/// One extreme stationary distribution per recurrent class.
///
/// Power iteration from the uniform distribution on the class. For a class
/// of period `d` the iterates cycle, so the average of `d` consecutive
/// iterates is tested instead.
pub fn stationary_distributions(
    m: &TransitionMatrix,
    max_iterations: usize,
) -> Result<Vec<Stationary>> {
    let rows = m.to_f64();
    let succ = m.successors();
    let mut out = Vec::new();
    for class in m.recurrent_classes() {
        let period = loop_number(&succ, &class, class[0]).max(1);
        let local: BTreeMap<usize, usize> =
            class.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let step = |mu: &[f64]| -> Vec<f64> {
            let mut next = vec![0.0; mu.len()];
            for (k, &s) in class.iter().enumerate() {
                for &(v, w) in &rows[s] {
                    next[local[&v]] += mu[k] * w;
                }
            }
            next
        };
        let size = class.len();
        let mut window: Vec<Vec<f64>> = vec![vec![1.0 / size as f64; size]];
        for _ in 1..period {
            let next = step(window.last().expect("nonempty"));
            window.push(next);
        }
        let mut converged = None;
        for _ in 0..max_iterations {
            let avg: Vec<f64> = (0..size)
                .map(|k| window.iter().map(|mu| mu[k]).sum::<f64>() / period as f64)
                .collect();
            let moved = step(&avg);
            let residual: f64 = moved.iter().zip(&avg).map(|(a, b)| (a - b).abs()).sum();
            if residual < STATIONARY_TOLERANCE {
                converged = Some(avg);
                break;
            }
            let next = step(window.last().expect("nonempty"));
            window.remove(0);
            window.push(next);
        }
        let weights = converged.ok_or(Error::ConvergenceFailure(max_iterations))?;
        out.push(Stationary {
            class,
            period,
            weights,
        });
    }
    Ok(out)
}

/// Total-variation distance `½ Σ |a_i - b_i|`.
pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (u, row) in self.rows.iter().enumerate() {
            let entries: Vec<String> = row
                .iter()
                .map(|(v, p)| format!("{}:{}", self.space.config(*v).label(), p))
                .collect();
            writeln!(
                f,
                "{} -> {}",
                self.space.config(u).label(),
                entries.join(" ")
            )?;
        }
        Ok(())
    }
}
