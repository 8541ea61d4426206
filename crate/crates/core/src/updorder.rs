//! Update orders of sequential systems: the update graph, acyclic
//! orientations, and equivalence of permutations.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::multipoly::MPoly;
use crate::system::{System, UpdateMode, UpdateWord};

/// Largest vertex count for explicit permutation searches (8! states).
pub const MAX_PERMUTATION_VERTICES: usize = 8;
/// Largest edge count for exhaustive orientation enumeration.
pub const MAX_ORIENTATION_EDGES: usize = 20;

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    adj: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    /// Self-loops are dropped; edges may be listed in either direction.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![BTreeSet::new(); n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange {
                    index: i.max(j) + 1,
                    n,
                });
            }
            if i != j {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
        Ok(SimpleGraph { adj })
    }

    /// Undirected graph underlying a system's dependency graph, self-loops
    /// stripped. Refuses asymmetric dependencies.
    pub fn from_system(system: &System) -> Result<Self> {
        let dep = system.dependency_graph();
        if let Some((i, j)) = dep.asymmetric_edge() {
            return Err(Error::GraphNotSymmetric(i + 1, j + 1));
        }
        Self::from_edges(dep.vertex_count(), &dep.edges())
    }

    pub fn edgeless(n: usize) -> Self {
        SimpleGraph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("valid indices")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n > 2 {
            edges.push((n - 1, 0));
        }
        Self::from_edges(n, &edges).expect("valid indices")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self::from_edges(n, &edges).expect("valid indices")
    }

    /// Star with centre 0.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::from_edges(n, &edges).expect("valid indices")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(&j)
    }

    pub fn neighbors(&self, i: usize) -> &BTreeSet<usize> {
        &self.adj[i]
    }

    /// `i` together with its neighbours, ascending.
    pub fn closed_neighborhood(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.adj[i].iter().copied().collect();
        v.push(i);
        v.sort_unstable();
        v
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.range(i + 1..).map(move |&j| (i, j)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Number of independent vertex sets, the empty set included.
    pub fn independent_set_count(&self) -> u64 {
        let n = self.vertex_count();
        (0u64..1 << n)
            .filter(|&mask| {
                self.edges()
                    .iter()
                    .all(|&(i, j)| mask >> i & 1 == 0 || mask >> j & 1 == 0)
            })
            .count() as u64
    }
}

/// Every connected labelled graph on `1..=max_n` vertices.
pub fn connected_graph_catalog(max_n: usize) -> Vec<SimpleGraph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let all = SimpleGraph::complete(n).edges();
        for mask in 0u64..1 << all.len() {
            let edges: Vec<_> = (0..all.len())
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| all[k])
                .collect();
            let g = SimpleGraph::from_edges(n, &edges).expect("valid indices");
            if g.is_connected() {
                out.push(g);
            }
        }
    }
    out
}

/// A direction for every edge of a graph, as arcs listed in the graph's
/// edge order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AcyclicOrientation {
    arcs: Vec<(usize, usize)>,
}

impl AcyclicOrientation {
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }
}

impl fmt::Display for AcyclicOrientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .arcs
            .iter()
            .map(|(a, b)| format!("{}->{}", a + 1, b + 1))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn is_acyclic(n: usize, arcs: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0; n];
    let mut out = vec![Vec::new(); n];
    for &(a, b) in arcs {
        indeg[b] += 1;
        out[a].push(b);
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    seen == n
}

fn check_permutation(g: &SimpleGraph, pi: &UpdateWord) -> Result<()> {
    if pi.is_permutation(g.vertex_count()) {
        Ok(())
    } else {
        Err(Error::NotPermutation)
    }
}

/// Orients each edge from the vertex that comes first in `pi`.
pub fn induced_orientation(g: &SimpleGraph, pi: &UpdateWord) -> Result<AcyclicOrientation> {
    check_permutation(g, pi)?;
    let mut position = vec![0; g.vertex_count()];
    for (k, &v) in pi.entries().iter().enumerate() {
        position[v] = k;
    }
    let arcs = g
        .edges()
        .into_iter()
        .map(|(i, j)| {
            if position[i] < position[j] {
                (i, j)
            } else {
                (j, i)
            }
        })
        .collect();
    Ok(AcyclicOrientation { arcs })
}

/// All acyclic orientations, ordered by the bitmask of reversed edges.
pub fn enumerate_acyclic_orientations(g: &SimpleGraph) -> Result<Vec<AcyclicOrientation>> {
    let edges = g.edges();
    if edges.len() > MAX_ORIENTATION_EDGES {
        return Err(Error::BudgetExceeded {
            needed: 1u128 << edges.len(),
            budget: 1 << MAX_ORIENTATION_EDGES,
        });
    }
    let n = g.vertex_count();
    Ok((0u64..1 << edges.len())
        .map(|mask| {
            edges
                .iter()
                .enumerate()
                .map(|(k, &(i, j))| if mask >> k & 1 == 1 { (j, i) } else { (i, j) })
                .collect::<Vec<_>>()
        })
        .filter(|arcs| is_acyclic(n, arcs))
        .map(|arcs| AcyclicOrientation { arcs })
        .collect())
}

/// Whether `sigma` and `tau` induce the same orientation, and hence the
/// same sequential map for any local functions on `g`.
pub fn same_sds(g: &SimpleGraph, sigma: &UpdateWord, tau: &UpdateWord) -> Result<bool> {
    Ok(induced_orientation(g, sigma)? == induced_orientation(g, tau)?)
}

/// Upper bound on functionally distinct sequential maps: `|Acyc(g)|`.
pub fn count_inequivalent(g: &SimpleGraph) -> Result<usize> {
    Ok(enumerate_acyclic_orientations(g)?.len())
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Rank of a permutation of `0..n` in lexicographic order (Lehmer code).
pub fn permutation_rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&v| v < perm[i]).count();
        rank += smaller * factorial(n - 1 - i);
    }
    rank
}

/// Inverse of [`permutation_rank`].
pub fn permutation_unrank(n: usize, mut rank: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i);
        out.push(pool.remove(rank / f));
        rank %= f;
    }
    out
}

/// Every permutation of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = UpdateWord> {
    (0..factorial(n)).map(move |r| UpdateWord::new(n, permutation_unrank(n, r)).expect("in range"))
}

/// One connected component of the update graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateComponent {
    /// Lexicographically smallest member.
    pub representative: UpdateWord,
    pub size: usize,
    pub orientation: AcyclicOrientation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateGraphSummary {
    pub permutation_count: usize,
    pub components: Vec<UpdateComponent>,
    /// Component index of every permutation, by lexicographic rank.
    component_of: Vec<u32>,
    /// Components and acyclic orientations are in bijection.
    pub bijection_holds: bool,
}

impl UpdateGraphSummary {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Members of component `k`, in lexicographic order.
    pub fn members(&self, k: usize) -> Vec<UpdateWord> {
        let n = self.components[k].representative.entries().len();
        self.component_of
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c as usize == k)
            .map(|(r, _)| UpdateWord::new(n, permutation_unrank(n, r)).expect("in range"))
            .collect()
    }
}

/// Connected components of the update graph, found by breadth-first search
/// over permutations. Neighbours are generated on the fly by swapping
/// adjacent entries that are not joined by an edge.
pub fn update_graph_components(g: &SimpleGraph) -> Result<UpdateGraphSummary> {
    let n = g.vertex_count();
    if n > MAX_PERMUTATION_VERTICES {
        return Err(Error::BudgetExceeded {
            needed: (1..=n as u128).product(),
            budget: factorial(MAX_PERMUTATION_VERTICES),
        });
    }
    let total = factorial(n);
    const UNSEEN: u32 = u32::MAX;
    let mut component_of = vec![UNSEEN; total];
    let mut components = Vec::new();
    for start in 0..total {
        if component_of[start] != UNSEEN {
            continue;
        }
        let id = components.len() as u32;
        component_of[start] = id;
        let mut size = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(r) = queue.pop_front() {
            size += 1;
            let mut perm = permutation_unrank(n, r);
            for k in 1..n {
                if g.has_edge(perm[k - 1], perm[k]) {
                    continue;
                }
                perm.swap(k - 1, k);
                let nr = permutation_rank(&perm);
                if component_of[nr] == UNSEEN {
                    component_of[nr] = id;
                    queue.push_back(nr);
                }
                perm.swap(k - 1, k);
            }
        }
        let representative = UpdateWord::new(n, permutation_unrank(n, start)).expect("in range");
        let orientation = induced_orientation(g, &representative)?;
        components.push(UpdateComponent {
            representative,
            size,
            orientation,
        });
    }
    let distinct: HashSet<&AcyclicOrientation> =
        components.iter().map(|c| &c.orientation).collect();
    let acyclic = count_inequivalent(g)?;
    Ok(UpdateGraphSummary {
        permutation_count: total,
        bijection_holds: distinct.len() == components.len() && components.len() == acyclic,
        components,
        component_of,
    })
}

/// Number of distinct global maps over all permutation update orders.
pub fn distinct_sequential_maps(system: &System, budget: usize) -> Result<usize> {
    let n = system.n();
    if n > MAX_PERMUTATION_VERTICES {
        return Err(Error::BudgetExceeded {
            needed: (1..=n as u128).product(),
            budget: factorial(MAX_PERMUTATION_VERTICES),
        });
    }
    let mut seen = HashSet::new();
    for pi in all_permutations(n) {
        let map = system.materialize(&UpdateMode::Word(pi), budget)?;
        seen.insert(map.table().to_vec());
    }
    Ok(seen.len())
}

/// NOR over the closed neighbourhood at every vertex, over GF(2).
pub fn nor_system(g: &SimpleGraph) -> System {
    let f = Field::boolean();
    let n = g.vertex_count();
    let locals = (0..n)
        .map(|i| {
            g.closed_neighborhood(i)
                .into_iter()
                .fold(MPoly::constant(f, n, 1), |acc, j| {
                    acc.mul(&MPoly::var(f, n, j).add(&MPoly::constant(f, n, 1)))
                })
        })
        .collect();
    System::new(f, locals).expect("consistent arity")
}

/// Parity over the closed neighbourhood; `complement[i]` adds 1 at vertex i.
pub fn parity_system(g: &SimpleGraph, complement: &[bool]) -> System {
    let f = Field::boolean();
    let n = g.vertex_count();
    let locals = (0..n)
        .map(|i| {
            let base = MPoly::constant(f, n, complement.get(i).copied().unwrap_or(false) as u32);
            g.closed_neighborhood(i)
                .into_iter()
                .fold(base, |acc, j| acc.add(&MPoly::var(f, n, j)))
        })
        .collect();
    System::new(f, locals).expect("consistent arity")
}

/// Boolean local on `vars` whose value depends only on how many of them
/// are 1: `by_count[k]` is the output when exactly `k` inputs are set.
pub fn symmetric_boolean_local(n: usize, vars: &[usize], by_count: &[u32]) -> Result<MPoly> {
    if by_count.len() != vars.len() + 1 {
        return Err(Error::IncompleteTable {
            expected: vars.len() + 1,
            found: by_count.len(),
        });
    }
    let table: Vec<u32> = (0u32..1 << vars.len())
        .map(|idx| by_count[idx.count_ones() as usize])
        .collect();
    MPoly::interpolate_on(Field::boolean(), n, vars, &table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::PhaseSpace;
    use crate::system::DEFAULT_BUDGET;

    fn word(n: usize, text: &str) -> UpdateWord {
        UpdateWord::parse(n, text).unwrap()
    }

    #[test]
    fn orientations_on_path() {
        let g = SimpleGraph::path(3);
        assert_eq!(
            induced_orientation(&g, &word(3, "(1,2,3)")).unwrap().arcs(),
            &[(0, 1), (1, 2)]
        );
        assert_eq!(
            induced_orientation(&g, &word(3, "(3,2,1)")).unwrap().arcs(),
            &[(1, 0), (2, 1)]
        );
        let a = induced_orientation(&g, &word(3, "(1,3,2)")).unwrap();
        assert_eq!(a.arcs(), &[(0, 1), (2, 1)]);
        assert_eq!(a, induced_orientation(&g, &word(3, "(3,1,2)")).unwrap());
        assert_eq!(
            induced_orientation(&g, &word(3, "(1,1,2)")),
            Err(Error::NotPermutation)
        );
    }

    #[test]
    fn path_components() {
        let s = update_graph_components(&SimpleGraph::path(3)).unwrap();
        assert_eq!(s.permutation_count, 6);
        assert_eq!(s.component_count(), 4);
        assert!(s.bijection_holds);
        let groups: Vec<Vec<String>> = (0..4)
            .map(|k| s.members(k).iter().map(|w| w.to_string()).collect())
            .collect();
        assert_eq!(
            groups,
            vec![
                vec!["(1,2,3)"],
                vec!["(1,3,2)", "(3,1,2)"],
                vec!["(2,1,3)", "(2,3,1)"],
                vec!["(3,2,1)"],
            ]
        );
    }

    #[test]
    fn triangle_and_edgeless() {
        let k3 = update_graph_components(&SimpleGraph::complete(3)).unwrap();
        assert_eq!(k3.component_count(), 6);
        assert!(k3.components.iter().all(|c| c.size == 1));
        assert_eq!(
            update_graph_components(&SimpleGraph::edgeless(3))
                .unwrap()
                .component_count(),
            1
        );
    }

    #[test]
    fn acyclic_counts() {
        assert_eq!(count_inequivalent(&SimpleGraph::path(3)).unwrap(), 4);
        assert_eq!(count_inequivalent(&SimpleGraph::complete(3)).unwrap(), 6);
        assert_eq!(count_inequivalent(&SimpleGraph::path(2)).unwrap(), 2);
        assert_eq!(count_inequivalent(&SimpleGraph::edgeless(4)).unwrap(), 1);
    }

    #[test]
    fn equivalence_of_words() {
        let g = SimpleGraph::path(3);
        assert!(same_sds(&g, &word(3, "(1,3,2)"), &word(3, "(3,1,2)")).unwrap());
        assert!(!same_sds(&g, &word(3, "(1,2,3)"), &word(3, "(3,2,1)")).unwrap());
        for pi in all_permutations(3) {
            assert!(same_sds(&g, &pi, &pi).unwrap());
        }
    }

    #[test]
    fn ranking_roundtrip() {
        for r in 0..120 {
            assert_eq!(permutation_rank(&permutation_unrank(5, r)), r);
        }
        assert_eq!(permutation_unrank(3, 0), vec![0, 1, 2]);
        assert_eq!(permutation_unrank(3, 5), vec![2, 1, 0]);
    }

    #[test]
    fn nor_sharp_on_small_graphs() {
        let path = nor_system(&SimpleGraph::path(3));
        assert_eq!(distinct_sequential_maps(&path, DEFAULT_BUDGET).unwrap(), 4);
        let k3 = nor_system(&SimpleGraph::complete(3));
        assert_eq!(distinct_sequential_maps(&k3, DEFAULT_BUDGET).unwrap(), 6);
    }

    #[test]
    fn nor_periodic_states_are_independent_sets() {
        for g in [
            SimpleGraph::complete(1),
            SimpleGraph::path(2),
            SimpleGraph::path(3),
        ] {
            let s = nor_system(&g);
            let pi = UpdateMode::Word(UpdateWord::identity(g.vertex_count()));
            let ps = PhaseSpace::enumerate(&s, &pi, DEFAULT_BUDGET).unwrap();
            let periodic = ps.periodic_states();
            assert_eq!(periodic.len() as u64, g.independent_set_count());
            for idx in periodic {
                let c = ps.space().config(idx);
                let ones: Vec<usize> = (0..g.vertex_count())
                    .filter(|&i| c.values()[i] == 1)
                    .collect();
                assert!(ones
                    .iter()
                    .all(|&i| ones.iter().all(|&j| !g.has_edge(i, j))));
            }
        }
    }

    #[test]
    fn graph_from_system() {
        let s = nor_system(&SimpleGraph::path(3));
        assert_eq!(SimpleGraph::from_system(&s).unwrap(), SimpleGraph::path(3));
        let f = Field::boolean();
        let asym = System::new(f, vec![MPoly::var(f, 2, 1), MPoly::constant(f, 2, 0)]).unwrap();
        assert_eq!(
            SimpleGraph::from_system(&asym),
            Err(Error::GraphNotSymmetric(2, 1))
        );
    }

    #[test]
    fn catalog_sizes() {
        // connected labelled graphs on 1..=4 vertices: 1, 1, 4, 38
        assert_eq!(connected_graph_catalog(4).len(), 1 + 1 + 4 + 38);
    }

    #[test]
    fn symmetric_locals() {
        let nor = symmetric_boolean_local(2, &[0, 1], &[1, 0, 0]).unwrap();
        assert_eq!(nor.to_string(), "x1*x2 + x1 + x2 + 1");
        assert!(symmetric_boolean_local(2, &[0, 1], &[1, 0]).is_err());
    }
}
