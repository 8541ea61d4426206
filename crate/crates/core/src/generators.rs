//! Built-in example systems, returned as spec files.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::multipoly::{parse_polynomial, MPoly};
use crate::specfile::{LocalDef, SpecFile};
use crate::system::{Configuration, UpdateMode, UpdateWord};
use crate::updorder::SimpleGraph;

/// The four-variable XOR system over GF(2), parallel mode, started at 1000.
pub fn runex() -> SpecFile {
    let f = Field::boolean();
    let locals = ["x1+x2+x3+x4", "x1+x2", "x1+x3", "x1+x4"]
        .iter()
        .enumerate()
        .map(|(i, t)| {
            (
                i,
                LocalDef::Poly(parse_polynomial(f, 4, t, &[]).expect("valid polynomial")),
            )
        })
        .collect();
    SpecFile {
        field: f,
        n: 4,
        locals,
        mode: Some(UpdateMode::Parallel),
        init: Some(Configuration::new(vec![1, 0, 0, 0])),
        members: Vec::new(),
        choices: BTreeMap::new(),
    }
}

/// Interpolates a Boolean rule given on the listed variables.
fn boolean_local(n: usize, vars: &[usize], rule: impl Fn(&[u32]) -> bool) -> Result<MPoly> {
    let k = vars.len();
    let table: Vec<u32> = (0..1usize << k)
        .map(|idx| {
            let x: Vec<u32> = (0..k).map(|b| ((idx >> b) & 1) as u32).collect();
            u32::from(rule(&x))
        })
        .collect();
    MPoly::interpolate_separable(Field::boolean(), n, vars, &table)
}

/// Majority vote with self on `graph`, ties going to candidate 1.
pub fn voting(graph: &SimpleGraph, init: Configuration, order: UpdateWord) -> Result<SpecFile> {
    let n = graph.vertex_count();
    if init.len() != n {
        return Err(Error::InvalidParams(format!(
            "initial state has {} entries, graph has {n} vertices",
            init.len()
        )));
    }
    if init.values().iter().any(|&v| v > 1) {
        return Err(Error::InvalidParams("votes must be 0 or 1".into()));
    }
    if order.entries().iter().any(|&i| i >= n) {
        return Err(Error::InvalidParams(
            "order mentions a vertex outside the graph".into(),
        ));
    }
    let locals = (0..n)
        .map(|i| {
            let nb = graph.closed_neighborhood(i);
            let k = nb.len() as u32;
            let f = boolean_local(n, &nb, |x| 2 * x.iter().sum::<u32>() >= k)?;
            Ok((i, LocalDef::Poly(f)))
        })
        .collect::<Result<_>>()?;
    Ok(SpecFile {
        field: Field::boolean(),
        n,
        locals,
        mode: Some(UpdateMode::Word(order)),
        init: Some(init),
        members: Vec::new(),
        choices: BTreeMap::new(),
    })
}

/// The five-voter star: `x1` is the center, `x2..x5` the leaves, and only
/// the center starts with candidate 1.
pub fn voting_star(order: UpdateWord) -> Result<SpecFile> {
    voting(
        &SimpleGraph::star(5),
        Configuration::new(vec![1, 0, 0, 0, 0]),
        order,
    )
}

/// Election outcome: the most frequent value in the final state, ties
/// going to the larger value (candidate 1 in a two-way race).
pub fn election_winner(state: &Configuration) -> u32 {
    let mut counts = BTreeMap::new();
    for &v in state.values() {
        *counts.entry(v).or_insert(0usize) += 1;
    }
    counts
        .into_iter()
        .max_by_key(|&(v, c)| (c, v))
        .map_or(0, |(v, _)| v)
}

/// Hopfield network with symmetric weights. Boolean state 1 stands for
/// +1 and 0 for -1; node i switches to 1 iff `sum_j w_ij s_j - theta_i >= 0`.
/// The inputs of node i are i itself and every j with `w_ij != 0`.
pub fn hopfield(weights: &[Vec<f64>], thresholds: &[f64], mode: UpdateMode) -> Result<SpecFile> {
    let n = thresholds.len();
    if n == 0 {
        return Err(Error::InvalidParams(
            "hopfield needs at least one node".into(),
        ));
    }
    if weights.len() != n || weights.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidParams(format!(
            "weights must be a {n}x{n} matrix"
        )));
    }
    if weights
        .iter()
        .flatten()
        .chain(thresholds)
        .any(|w| !w.is_finite())
    {
        return Err(Error::InvalidParams(
            "weights and thresholds must be finite".into(),
        ));
    }
    if let Some((i, j)) = (0..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .find(|&(i, j)| weights[i][j] != weights[j][i])
    {
        return Err(Error::InvalidParams(format!(
            "weights not symmetric at ({}, {})",
            i + 1,
            j + 1
        )));
    }
    let locals = (0..n)
        .map(|i| {
            let vars: Vec<usize> = (0..n).filter(|&j| j == i || weights[i][j] != 0.0).collect();
            if vars.len() > 16 {
                return Err(Error::InvalidParams(format!(
                    "node {} has more than 16 inputs",
                    i + 1
                )));
            }
            let f = boolean_local(n, &vars, |x| {
                let field: f64 = vars
                    .iter()
                    .zip(x)
                    .map(|(&j, &s)| weights[i][j] * if s == 1 { 1.0 } else { -1.0 })
                    .sum();
                field - thresholds[i] >= 0.0
            })?;
            Ok((i, LocalDef::Poly(f)))
        })
        .collect::<Result<_>>()?;
    Ok(SpecFile {
        field: Field::boolean(),
        n,
        locals,
        mode: Some(mode),
        init: None,
        members: Vec::new(),
        choices: BTreeMap::new(),
    })
}

/// Ring traffic parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct TrafficParams {
    /// Number of cells on the ring.
    pub length: usize,
    /// Fraction of occupied cells in the initial state.
    pub density: f64,
    /// Speed limit in cells per step.
    pub vmax: u32,
    /// Probability that a car brakes by one unit.
    pub decel: BigRational,
}

impl Default for TrafficParams {
    fn default() -> Self {
        TrafficParams {
            length: 5,
            density: 0.4,
            vmax: 5,
            decel: BigRational::new(1.into(), 4.into()),
        }
    }
}

/// State value for an empty cell.
pub const EMPTY: u32 = 6;
/// Largest ring the generator accepts; tables grow as `7^length`.
pub const MAX_TRAFFIC_LENGTH: usize = 5;

/// Deterministic part of the traffic rule: the state of cell `i` after one
/// step, given whether the arriving car brakes.
///
/// A cell holds the velocity the occupying car will drive next, or
/// [`EMPTY`]. Every car first moves by its velocity; then the car now at
/// `i` speeds up by one, is capped by `vmax` and the free gap ahead, and
/// optionally brakes by one. If several cars claim the same cell (only
/// possible from states no valid run reaches) the one coming from the
/// nearest cell wins.
pub fn traffic_cell(state: &[u32], i: usize, vmax: u32, brake: bool) -> u32 {
    let len = state.len();
    let target = |j: usize| (j + state[j] as usize) % len;
    let arriving = (0..len)
        .map(|d| (i + len - d) % len)
        .find(|&j| state[j] != EMPTY && target(j) == i);
    let Some(j) = arriving else {
        return EMPTY;
    };
    let occupied: Vec<bool> = {
        let mut occ = vec![false; len];
        for k in (0..len).filter(|&k| state[k] != EMPTY) {
            occ[target(k)] = true;
        }
        occ
    };
    let ahead = (1..=len).find(|&d| occupied[(i + d) % len]).unwrap_or(len);
    let gap = (ahead - 1) as u32;
    let v = (state[j] + 1).min(vmax).min(gap);
    if brake {
        v.saturating_sub(1)
    } else {
        v
    }
}

/// Single-lane ring traffic over GF(7) as a PFDS: each cell picks the
/// braking or non-braking rule independently.
pub fn traffic(params: &TrafficParams) -> Result<SpecFile> {
    let TrafficParams {
        length,
        density,
        vmax,
        decel,
    } = params;
    let (len, vmax) = (*length, *vmax);
    if !(2..=MAX_TRAFFIC_LENGTH).contains(&len) {
        return Err(Error::InvalidParams(format!(
            "ring length must be in 2..={MAX_TRAFFIC_LENGTH}"
        )));
    }
    if !(*density > 0.0 && *density <= 1.0) {
        return Err(Error::InvalidParams("density must be in (0, 1]".into()));
    }
    if !(1..=5).contains(&vmax) {
        return Err(Error::InvalidParams("vmax must be in 1..=5".into()));
    }
    if decel < &BigRational::zero() || decel > &BigRational::one() {
        return Err(Error::InvalidParams(
            "deceleration probability must be in [0, 1]".into(),
        ));
    }
    let field = Field::new(7)?;
    let vars: Vec<usize> = (0..len).collect();
    let size = 7usize.pow(len as u32);
    let mut state = vec![0u32; len];
    let tables = |brake: bool, i: usize, state: &mut Vec<u32>| -> Vec<u32> {
        (0..size)
            .map(|mut idx| {
                for s in state.iter_mut() {
                    *s = (idx % 7) as u32;
                    idx /= 7;
                }
                traffic_cell(state, i, vmax, brake)
            })
            .collect()
    };
    let keep = BigRational::one() - decel;
    let mut choices = BTreeMap::new();
    for i in 0..len {
        let mut list = Vec::new();
        for (brake, p) in [(false, &keep), (true, decel)] {
            if !p.is_zero() {
                let values = tables(brake, i, &mut state);
                list.push((
                    p.clone(),
                    LocalDef::Table {
                        vars: vars.clone(),
                        values,
                    },
                ));
            }
        }
        choices.insert(i, list);
    }
    let cars = ((density * len as f64).round() as usize).clamp(1, len);
    let mut init = vec![EMPTY; len];
    for k in 0..cars {
        init[k * len / cars] = 0;
    }
    Ok(SpecFile {
        field,
        n: len,
        locals: BTreeMap::new(),
        mode: Some(UpdateMode::Parallel),
        init: Some(Configuration::new(init)),
        members: Vec::new(),
        choices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfile::Model;
    use crate::system::System;

    fn deterministic(spec: &SpecFile) -> (System, UpdateMode) {
        match spec.model().unwrap() {
            Model::Deterministic { system, mode } => (system, mode),
            Model::Stochastic(_) => panic!("expected a deterministic model"),
        }
    }

    #[test]
    fn voting_orders_tip_the_election() {
        let run = |order: &[usize]| {
            let spec = voting_star(UpdateWord::from_one_based(5, order).unwrap()).unwrap();
            let (s, mode) = deterministic(&spec);
            s.step(&mode, spec.init.as_ref().unwrap()).unwrap()
        };
        let a = run(&[2, 3, 1, 4, 5]);
        assert_eq!(a.values(), &[1, 1, 1, 1, 1]);
        assert_eq!(election_winner(&a), 1);
        let b = run(&[1, 2, 3, 4, 5]);
        assert_eq!(b.values(), &[0, 0, 0, 0, 0]);
        assert_eq!(election_winner(&b), 0);
    }

    #[test]
    fn majority_tie_goes_to_one() {
        let spec = voting(
            &SimpleGraph::path(2),
            Configuration::new(vec![0, 1]),
            UpdateWord::identity(2),
        )
        .unwrap();
        let (s, _) = deterministic(&spec);
        assert_eq!(s.eval_local(0, &[0, 1]), 1);
        assert_eq!(s.eval_local(0, &[0, 0]), 0);
    }

    #[test]
    fn hopfield_zero_network_goes_to_plus_one() {
        let spec = hopfield(&vec![vec![0.0; 3]; 3], &[0.0; 3], UpdateMode::Parallel).unwrap();
        let (s, mode) = deterministic(&spec);
        for c in s.state_space(1 << 10).unwrap().configs() {
            assert_eq!(s.step(&mode, &c).unwrap().values(), &[1, 1, 1]);
        }
    }

    #[test]
    fn hopfield_threshold_rule() {
        let w = vec![
            vec![0.0, 1.0, -2.0],
            vec![1.0, 0.0, 0.5],
            vec![-2.0, 0.5, 0.0],
        ];
        let th = [0.5, -0.25, 1.0];
        let spec = hopfield(&w, &th, UpdateMode::Parallel).unwrap();
        let (s, _) = deterministic(&spec);
        for c in s.state_space(1 << 10).unwrap().configs() {
            let spin: Vec<f64> = c
                .values()
                .iter()
                .map(|&v| if v == 1 { 1.0 } else { -1.0 })
                .collect();
            for i in 0..3 {
                let h: f64 = (0..3).map(|j| w[i][j] * spin[j]).sum::<f64>() - th[i];
                assert_eq!(s.eval_local(i, c.values()), u32::from(h >= 0.0));
            }
        }
        let asym = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        assert!(matches!(
            hopfield(&asym, &[0.0, 0.0], UpdateMode::Parallel),
            Err(Error::InvalidParams(_))
        ));
    }

    /// Particle view of the same rule: move every car, then update speeds.
    fn reference_step(
        cars: &[(usize, u32)],
        len: usize,
        vmax: u32,
        brake: bool,
    ) -> Vec<(usize, u32)> {
        let moved: Vec<usize> = cars.iter().map(|&(x, v)| (x + v as usize) % len).collect();
        let mut out: Vec<(usize, u32)> = moved
            .iter()
            .zip(cars)
            .map(|(&x, &(_, v))| {
                let ahead = moved
                    .iter()
                    .filter(|&&y| y != x)
                    .map(|&y| (y + len - x) % len)
                    .min()
                    .unwrap_or(len);
                let v = (v + 1).min(vmax).min(ahead as u32 - 1);
                (x, if brake { v.saturating_sub(1) } else { v })
            })
            .collect();
        out.sort_unstable();
        out
    }

    #[test]
    fn traffic_matches_particle_reference() {
        let spec = traffic(&TrafficParams {
            length: 4,
            vmax: 2,
            ..TrafficParams::default()
        })
        .unwrap();
        let field = spec.field;
        for (c, brake) in [(0, false), (1, true)] {
            let locals: Vec<MPoly> = (0..4)
                .map(|i| spec.choices[&i][c].1.to_poly(field, 4).unwrap())
                .collect();
            let s = System::new(field, locals).unwrap();
            // every car placement with speeds small enough to stay collision-free
            for occ in 1u32..16 {
                let pos: Vec<usize> = (0..4).filter(|&k| occ >> k & 1 == 1).collect();
                let gaps: Vec<u32> = pos
                    .iter()
                    .map(|&x| {
                        let d = pos
                            .iter()
                            .filter(|&&y| y != x)
                            .map(|&y| (y + 4 - x) % 4)
                            .min()
                            .unwrap_or(4);
                        (d as u32 - 1).min(2)
                    })
                    .collect();
                let mut speeds = vec![0u32; pos.len()];
                loop {
                    let mut state = vec![EMPTY; 4];
                    for (&x, &v) in pos.iter().zip(&speeds) {
                        state[x] = v;
                    }
                    let cars: Vec<(usize, u32)> =
                        pos.iter().copied().zip(speeds.iter().copied()).collect();
                    let mut expect = vec![EMPTY; 4];
                    for (x, v) in reference_step(&cars, 4, 2, brake) {
                        expect[x] = v;
                    }
                    let got = s.step_parallel(&Configuration::new(state)).unwrap();
                    assert_eq!(got.values(), expect.as_slice());
                    let Some(k) = (0..speeds.len()).find(|&k| speeds[k] < gaps[k]) else {
                        break;
                    };
                    speeds[k] += 1;
                    speeds[..k].fill(0);
                }
            }
        }
    }

    #[test]
    fn traffic_spec_round_trips_and_conserves_cars() {
        let spec = traffic(&TrafficParams {
            length: 3,
            ..TrafficParams::default()
        })
        .unwrap();
        assert_eq!(SpecFile::parse(&spec.to_string()).unwrap(), spec);
        let Model::Stochastic(ss) = spec.model().unwrap() else {
            panic!()
        };
        let init = spec.init.clone().unwrap();
        let cars = |c: &Configuration| c.values().iter().filter(|&&v| v != EMPTY).count();
        for c in ss.simulate(&init, 50, 7).unwrap() {
            assert_eq!(cars(&c), cars(&init));
            assert!(c.values().iter().all(|&v| v == EMPTY || v <= 5));
        }
    }

    #[test]
    fn traffic_rejects_bad_params() {
        for p in [
            TrafficParams {
                length: 9,
                ..TrafficParams::default()
            },
            TrafficParams {
                density: 0.0,
                ..TrafficParams::default()
            },
            TrafficParams {
                vmax: 6,
                ..TrafficParams::default()
            },
            TrafficParams {
                decel: BigRational::new(3.into(), 2.into()),
                ..TrafficParams::default()
            },
        ] {
            assert!(matches!(traffic(&p), Err(Error::InvalidParams(_))));
        }
    }
}
