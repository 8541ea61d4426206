//! Boolean monomial systems: strongly connected components, loop numbers
//! and the fixed-point criterion.

use std::collections::VecDeque;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::system::System;

/// True iff the system is over GF(2) and every local is a single product of
/// variables with coefficient 1, or a constant.
pub fn is_monomial_system(system: &System) -> bool {
    system.field().modulus() == 2 && system.locals().iter().all(|f| f.term_count() <= 1)
}

/// Strongly connected components of a digraph given as successor lists.
///
/// Iterative Tarjan. Each component is sorted and the list is ordered by
/// smallest member.
pub fn strongly_connected_components(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const NONE: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![NONE; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    // call frames: (vertex, position in its successor list)
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != NONE {
            continue;
        }
        frames.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            if let Some(&w) = succ[v].get(*pos) {
                *pos += 1;
                if index[w] == NONE {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack holds v");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Loop number of the strongly connected component containing `root`:
/// gcd over internal edges `u -> v` of `level(u) + 1 - level(v)`, with BFS
/// levels from `root`. Zero when the component has no cycle.
pub fn loop_number(succ: &[Vec<usize>], component: &[usize], root: usize) -> usize {
    let n = succ.len();
    let mut inside = vec![false; n];
    for &v in component {
        inside[v] = true;
    }
    let mut level = vec![usize::MAX; n];
    level[root] = 0;
    let mut queue = VecDeque::from([root]);
    let mut g: i64 = 0;
    while let Some(u) = queue.pop_front() {
        for &v in succ[u].iter().filter(|&&v| inside[v]) {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    for &u in component {
        for &v in succ[u].iter().filter(|&&v| inside[v]) {
            g = g.gcd(&(level[u] as i64 + 1 - level[v] as i64));
        }
    }
    g as usize
}

/// One strongly connected component with its loop number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccLoop {
    /// 0-based vertices, ascending.
    pub vertices: Vec<usize>,
    /// 0 for a single vertex without a self-loop.
    pub loop_number: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopNumberReport {
    pub components: Vec<SccLoop>,
    /// Every component containing a cycle has loop number 1.
    pub fixed_points_only: bool,
}

/// Loop numbers of every SCC of the dependency graph.
pub fn loop_numbers(system: &System) -> Result<LoopNumberReport> {
    if !is_monomial_system(system) {
        return Err(Error::NotMonomial);
    }
    let succ = system.dependency_graph().successors();
    let components: Vec<SccLoop> = strongly_connected_components(&succ)
        .into_iter()
        .map(|vertices| SccLoop {
            loop_number: loop_number(&succ, &vertices, vertices[0]),
            vertices,
        })
        .collect();
    let fixed_points_only = components
        .iter()
        .all(|c| c.loop_number == 0 || c.loop_number == 1);
    Ok(LoopNumberReport {
        components,
        fixed_points_only,
    })
}

/// Whether the only periodic points are fixed points, decided from loop
/// numbers alone.
pub fn fixed_point_criterion(system: &System) -> Result<bool> {
    Ok(loop_numbers(system)?.fixed_points_only)
}
