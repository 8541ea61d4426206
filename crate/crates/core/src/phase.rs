//! Exhaustive phase spaces of deterministic systems.
//!
//! The phase space is the functional digraph `v -> Φ(v)` on all p^n
//! configurations. Every component is a cycle with in-trees of transient
//! states hanging off its nodes.

use std::collections::{BTreeMap, HashMap};

use crate::error::Result;
use crate::system::{Configuration, GlobalMap, StateSpace, System, UpdateMode};

/// Functional graph with its cycle/transient decomposition.
#[derive(Debug, Clone)]
pub struct PhaseSpace {
    map: GlobalMap,
    /// Cycles, each starting at its smallest state index, sorted by that index.
    cycles: Vec<Vec<usize>>,
    /// Index into `cycles` of the cycle each state eventually enters.
    terminal: Vec<usize>,
    /// Steps until the state first lands on a cycle; 0 on cycles.
    transient: Vec<usize>,
}

/// Shape of the transient in-tree rooted at a periodic state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeShape {
    /// Canonical code id; equal ids within one [`PhaseSpace`] mean
    /// isomorphic rooted trees.
    pub code: usize,
    /// Node count at each depth, root at depth 0.
    pub level_sizes: Vec<usize>,
}

impl TreeShape {
    pub fn size(&self) -> usize {
        self.level_sizes.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.level_sizes.len() - 1
    }
}

impl PhaseSpace {
    /// Enumerates the phase space of `system` under `mode`.
    pub fn enumerate(system: &System, mode: &UpdateMode, budget: usize) -> Result<Self> {
        Ok(Self::from_map(system.materialize(mode, budget)?))
    }

    /// Decomposes an already materialized map.
    pub fn from_map(map: GlobalMap) -> Self {
        let size = map.table().len();
        const UNSEEN: usize = usize::MAX;
        let mut stamp = vec![UNSEEN; size];
        let mut terminal = vec![UNSEEN; size];
        let mut transient = vec![0usize; size];
        let mut raw_cycles: Vec<Vec<usize>> = Vec::new();
        let mut path = Vec::new();
        let mut pos = vec![0usize; size];

        for start in 0..size {
            if stamp[start] != UNSEEN {
                continue;
            }
            path.clear();
            let mut v = start;
            while stamp[v] == UNSEEN {
                stamp[v] = start;
                pos[v] = path.len();
                path.push(v);
                v = map.image(v);
            }
            let mut tail_end = path.len();
            if stamp[v] == start {
                // closed a new cycle inside this walk
                let cyc = path[pos[v]..].to_vec();
                let id = raw_cycles.len();
                for &c in &cyc {
                    terminal[c] = id;
                    transient[c] = 0;
                }
                raw_cycles.push(cyc);
                tail_end = pos[v];
            }
            for k in (0..tail_end).rev() {
                let u = path[k];
                let next = map.image(u);
                terminal[u] = terminal[next];
                transient[u] = transient[next] + 1;
            }
        }

        // canonical order: rotate each cycle to its minimum, sort by minimum
        let mut order: Vec<usize> = (0..raw_cycles.len()).collect();
        for cyc in raw_cycles.iter_mut() {
            let m = cyc
                .iter()
                .enumerate()
                .min_by_key(|(_, &s)| s)
                .map(|(i, _)| i)
                .unwrap();
            cyc.rotate_left(m);
        }
        order.sort_by_key(|&i| raw_cycles[i][0]);
        let mut remap = vec![0; raw_cycles.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let cycles = order.iter().map(|&i| raw_cycles[i].clone()).collect();
        for t in terminal.iter_mut() {
            *t = remap[*t];
        }
        PhaseSpace {
            map,
            cycles,
            terminal,
            transient,
        }
    }

    pub fn map(&self) -> &GlobalMap {
        &self.map
    }

    pub fn space(&self) -> &StateSpace {
        self.map.space()
    }

    pub fn size(&self) -> usize {
        self.transient.len()
    }

    pub fn successor(&self, idx: usize) -> usize {
        self.map.image(idx)
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn is_periodic(&self, idx: usize) -> bool {
        self.transient[idx] == 0
    }

    pub fn transient_length(&self, idx: usize) -> usize {
        self.transient[idx]
    }

    /// Length of the cycle that `idx` eventually enters.
    pub fn terminal_period(&self, idx: usize) -> usize {
        self.cycles[self.terminal[idx]].len()
    }

    pub fn terminal_cycle(&self, idx: usize) -> usize {
        self.terminal[idx]
    }

    pub fn periodic_states(&self) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.is_periodic(i)).collect()
    }

    /// Indices with `Φ(c) = c`, ascending.
    pub fn fixed_point_indices(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&i| self.map.image(i) == i)
            .collect()
    }

    pub fn fixed_points(&self) -> Vec<Configuration> {
        self.fixed_point_indices()
            .into_iter()
            .map(|i| self.space().config(i))
            .collect()
    }

    /// Cycle length -> number of cycles of that length.
    pub fn cycle_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for c in &self.cycles {
            *m.entry(c.len()).or_insert(0) += 1;
        }
        m
    }

    pub fn has_transients(&self) -> bool {
        self.transient.iter().any(|&t| t > 0)
    }

    pub fn is_bijective(&self) -> bool {
        !self.has_transients()
    }

    /// Predecessor lists (reversed successor pointers).
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pre = vec![Vec::new(); self.size()];
        for v in 0..self.size() {
            pre[self.map.image(v)].push(v);
        }
        pre
    }

    /// Transient tree at every periodic state, keyed by state index.
    ///
    /// Each tree consists of the root and all non-periodic states whose
    /// forward orbit enters the cycle at that root. Codes come from one
    /// shared interner, so equal codes mean isomorphic rooted trees.
    pub fn transient_trees(&self) -> BTreeMap<usize, TreeShape> {
        let pre = self.predecessors();
        let mut interner: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut code = vec![usize::MAX; self.size()];
        // children of a tree node: non-periodic predecessors
        let children = |v: usize| pre[v].iter().copied().filter(|&u| !self.is_periodic(u));
        // post-order: process states by decreasing depth from their root
        let mut order: Vec<usize> = (0..self.size()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.transient[v]));
        for &v in order.iter().filter(|&&v| !self.is_periodic(v)) {
            let mut kids: Vec<usize> = children(v).map(|u| code[u]).collect();
            kids.sort_unstable();
            let next = interner.len();
            code[v] = *interner.entry(kids).or_insert(next);
        }
        let mut out = BTreeMap::new();
        for root in self.periodic_states() {
            let mut kids: Vec<usize> = children(root).map(|u| code[u]).collect();
            kids.sort_unstable();
            let next = interner.len();
            let id = *interner.entry(kids).or_insert(next);
            let mut level_sizes = vec![1];
            let mut frontier: Vec<usize> = children(root).collect();
            while !frontier.is_empty() {
                level_sizes.push(frontier.len());
                frontier = frontier.iter().flat_map(|&u| children(u)).collect();
            }
            out.insert(
                root,
                TreeShape {
                    code: id,
                    level_sizes,
                },
            );
        }
        out
    }

    /// True iff all transient trees at periodic states are isomorphic.
    pub fn trees_isomorphic(&self) -> bool {
        let trees = self.transient_trees();
        let mut codes = trees.values().map(|t| t.code);
        match codes.next() {
            None => true,
            Some(first) => codes.all(|c| c == first),
        }
    }
}

/// Fixed points of `system` under `mode`, in enumeration order.
pub fn fixed_points(
    system: &System,
    mode: &UpdateMode,
    budget: usize,
) -> Result<Vec<Configuration>> {
    Ok(PhaseSpace::enumerate(system, mode, budget)?.fixed_points())
}

/// Whether iterating from `from` ever reaches `to`; returns the first
/// hitting time. Iterates at most p^n steps, after which the orbit has
/// closed.
pub fn reachable(
    system: &System,
    mode: &UpdateMode,
    from: &Configuration,
    to: &Configuration,
    budget: usize,
) -> Result<Option<usize>> {
    let space = system.state_space(budget)?;
    system.check_config(from)?;
    system.check_config(to)?;
    let mut cur = from.clone();
    for t in 0..=space.size() {
        if &cur == to {
            return Ok(Some(t));
        }
        cur = system.step(mode, &cur)?;
    }
    Ok(None)
}

/// Whether the global map is a bijection on GF(p)^n.
pub fn is_invertible(system: &System, mode: &UpdateMode, budget: usize) -> Result<bool> {
    Ok(system.materialize(mode, budget)?.is_bijective())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::multipoly::{parse_polynomial, MPoly};
    use crate::system::{UpdateWord, DEFAULT_BUDGET};

    fn system(p: u64, locals: &[&str]) -> System {
        let f = Field::new(p).unwrap();
        let n = locals.len();
        System::new(
            f,
            locals
                .iter()
                .map(|t| parse_polynomial(f, n, t, &[]).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn runex() -> System {
        system(2, &["x1+x2+x3+x4", "x1+x2", "x1+x3", "x1+x4"])
    }

    fn labels(cs: &[Configuration]) -> Vec<String> {
        cs.iter().map(Configuration::label).collect()
    }

    #[test]
    fn runex_parallel() {
        let ps = PhaseSpace::enumerate(&runex(), &UpdateMode::Parallel, DEFAULT_BUDGET).unwrap();
        assert_eq!(ps.size(), 16);
        assert_eq!(
            labels(&ps.fixed_points()),
            vec!["0000", "0110", "0101", "0011"]
        );
    }

    #[test]
    fn identity_and_negation() {
        let ps = PhaseSpace::enumerate(
            &system(2, &["x1", "x2"]),
            &UpdateMode::Parallel,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(ps.fixed_points().len(), 4);
        assert!(!ps.has_transients());
        let ps =
            PhaseSpace::enumerate(&system(2, &["x1+1"]), &UpdateMode::Parallel, DEFAULT_BUDGET)
                .unwrap();
        assert_eq!(ps.cycles(), &[vec![0, 1]]);
        assert!(ps.fixed_points().is_empty());
    }

    #[test]
    fn fixed_point_examples() {
        let zero = fixed_points(
            &system(2, &["0", "0", "0"]),
            &UpdateMode::Parallel,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(labels(&zero), vec!["000"]);
        let rot = system(2, &["x3", "x1", "x2"]);
        let fp = fixed_points(&rot, &UpdateMode::Parallel, DEFAULT_BUDGET).unwrap();
        assert_eq!(labels(&fp), vec!["000", "111"]);
    }

    #[test]
    fn reachability() {
        let s = runex();
        let c = |t: &str| Configuration::parse(t).unwrap();
        let m = UpdateMode::Parallel;
        assert_eq!(
            reachable(&s, &m, &c("1000"), &c("0000"), DEFAULT_BUDGET).unwrap(),
            Some(2)
        );
        assert_eq!(
            reachable(&s, &m, &c("0110"), &c("0110"), DEFAULT_BUDGET).unwrap(),
            Some(0)
        );
        assert_eq!(
            reachable(&s, &m, &c("0000"), &c("1000"), DEFAULT_BUDGET).unwrap(),
            None
        );
        assert!(reachable(&s, &m, &c("0000"), &c("1000"), 8).is_err());
    }

    #[test]
    fn invertibility() {
        // parity on the path 1-2-3: closed-neighbourhood sums
        let parity = system(2, &["x1+x2", "x1+x2+x3", "x2+x3"]);
        for w in [
            "(1,2,3)", "(2,1,3)", "(3,2,1)", "(1,3,2)", "(2,3,1)", "(3,1,2)",
        ] {
            let mode = UpdateMode::Word(UpdateWord::parse(3, w).unwrap());
            assert!(is_invertible(&parity, &mode, DEFAULT_BUDGET).unwrap());
        }
        assert!(!is_invertible(
            &system(2, &["1", "0"]),
            &UpdateMode::Parallel,
            DEFAULT_BUDGET
        )
        .unwrap());
        let s = runex();
        assert!(!is_invertible(&s, &UpdateMode::Parallel, DEFAULT_BUDGET).unwrap());
        let map = s
            .materialize(&UpdateMode::Parallel, DEFAULT_BUDGET)
            .unwrap();
        let preimages_of_origin = map.table().iter().filter(|&&t| t == 0).count();
        assert!(preimages_of_origin >= 2);
    }

    #[test]
    fn transient_trees_of_runex() {
        let ps = PhaseSpace::enumerate(&runex(), &UpdateMode::Parallel, DEFAULT_BUDGET).unwrap();
        let trees = ps.transient_trees();
        assert_eq!(trees.len(), 4);
        assert!(ps.trees_isomorphic());
        for t in trees.values() {
            assert_eq!(t.size(), 4);
        }
    }

    #[test]
    fn non_isomorphic_trees_detected() {
        // GF(3), one variable: 0 -> 0, 1 -> 1, 2 -> 1: root 1 has a tail, root 0 does not
        let f = Field::new(3).unwrap();
        let loc = MPoly::interpolate(f, 1, &[0, 1, 1]).unwrap();
        let s = System::new(f, vec![loc]).unwrap();
        let ps = PhaseSpace::enumerate(&s, &UpdateMode::Parallel, DEFAULT_BUDGET).unwrap();
        assert!(!ps.trees_isomorphic());
        assert_eq!(ps.transient_length(2), 1);
        assert_eq!(ps.terminal_period(2), 1);
    }
}
