//! Graphviz DOT and CSV renderings.
//!
//! Nodes appear in state-index order and edges in source order, so output
//! is byte-identical across runs.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::phase::PhaseSpace;
use crate::stochastic::TransitionMatrix;
use crate::system::{Configuration, DependencyGraph, StateSpace};

fn node_lines(out: &mut String, space: &StateSpace) {
    for idx in 0..space.size() {
        writeln!(out, "  s{idx} [label=\"{}\"];", space.config(idx).label()).expect("string write");
    }
}

/// Phase space as a DOT digraph, one edge per state.
pub fn phase_space_dot(ps: &PhaseSpace) -> String {
    let mut out = String::from("digraph phase_space {\n");
    node_lines(&mut out, ps.space());
    for u in 0..ps.size() {
        writeln!(out, "  s{u} -> s{};", ps.successor(u)).expect("string write");
    }
    out.push_str("}\n");
    out
}

/// Weighted phase space of a stochastic system; edge labels carry the
/// transition probability to 6 significant digits.
pub fn stochastic_dot(m: &TransitionMatrix) -> String {
    let mut out = String::from("digraph stochastic_phase_space {\n");
    node_lines(&mut out, m.space());
    for (u, v, w) in m.edges() {
        let w = w.to_f64().expect("probabilities are finite");
        writeln!(out, "  s{u} -> s{v} [label=\"{}\"];", format_weight(w)).expect("string write");
    }
    out.push_str("}\n");
    out
}

/// Dependency graph with 1-based vertex labels `x1, x2, ...`.
pub fn dependency_dot(g: &DependencyGraph) -> String {
    let mut out = String::from("digraph dependency {\n");
    for i in 0..g.vertex_count() {
        writeln!(out, "  v{i} [label=\"x{}\"];", i + 1).expect("string write");
    }
    for (i, j) in g.edges() {
        writeln!(out, "  v{i} -> v{j};").expect("string write");
    }
    out.push_str("}\n");
    out
}

/// Six significant digits with trailing zeros trimmed, keeping one digit
/// after the point: `1.0`, `0.5`, `0.333333`.
pub fn format_weight(w: f64) -> String {
    if w == 0.0 {
        return "0.0".into();
    }
    let magnitude = w.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(1) as usize;
    let mut s = format!("{w:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') && !s.ends_with(".0") {
            s.pop();
        }
    }
    s
}

/// Trajectory as CSV with header `step,x1,...,xn`.
pub fn trajectory_csv(trajectory: &[Configuration]) -> String {
    let n = trajectory.first().map_or(0, Configuration::len);
    let mut out = String::from("step");
    for i in 1..=n {
        write!(out, ",x{i}").expect("string write");
    }
    out.push('\n');
    for (t, c) in trajectory.iter().enumerate() {
        write!(out, "{t}").expect("string write");
        for v in c.values() {
            write!(out, ",{v}").expect("string write");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::multipoly::MPoly;
    use crate::system::{System, UpdateMode, DEFAULT_BUDGET};

    #[test]
    fn weights() {
        assert_eq!(format_weight(1.0), "1.0");
        assert_eq!(format_weight(0.5), "0.5");
        assert_eq!(format_weight(1.0 / 3.0), "0.333333");
        assert_eq!(format_weight(0.125), "0.125");
        assert_eq!(format_weight(2.0 / 30000.0), "0.0000666667");
    }

    #[test]
    fn identity_dot() {
        let f = Field::boolean();
        let s = System::new(f, vec![MPoly::var(f, 1, 0)]).unwrap();
        let ps = PhaseSpace::enumerate(&s, &UpdateMode::Parallel, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            phase_space_dot(&ps),
            "digraph phase_space {\n  s0 [label=\"0\"];\n  s1 [label=\"1\"];\n  s0 -> s0;\n  s1 -> s1;\n}\n"
        );
        assert_eq!(
            dependency_dot(s.dependency_graph()),
            "digraph dependency {\n  v0 [label=\"x1\"];\n  v0 -> v0;\n}\n"
        );
    }

    #[test]
    fn csv_header() {
        let t = vec![
            Configuration::new(vec![1, 0]),
            Configuration::new(vec![0, 0]),
        ];
        assert_eq!(trajectory_csv(&t), "step,x1,x2\n0,1,0\n1,0,0\n");
    }
}
