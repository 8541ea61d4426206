//! Finite dynamical systems: local functions, dependency graph, and the
//! parallel and word-sequential global maps.
//!
//! Variable indices are 0-based throughout the API. Text forms (update
//! words, polynomial variables) are 1-based.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::multipoly::MPoly;

/// Default cap on the number of configurations an enumeration may touch.
pub const DEFAULT_BUDGET: usize = 1 << 20;

/// Locals whose support spans at most this many points are evaluated by
/// table lookup.
const TABLE_LIMIT: usize = 1 << 16;

/// A point of GF(p)^n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration(Vec<u32>);

impl Configuration {
    pub fn new(values: Vec<u32>) -> Self {
        Configuration(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_values(self) -> Vec<u32> {
        self.0
    }

    /// Compact label: digits run together when every value is a single
    /// digit (`0110`), comma separated otherwise.
    pub fn label(&self) -> String {
        if self.0.iter().all(|&v| v < 10) {
            self.0.iter().map(|v| v.to_string()).collect()
        } else {
            self.0
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Parses `(1,0,0,0)`, `1,0,0,0` or the compact digit form `1000`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        let bad = || Error::Syntax {
            line: 0,
            message: format!("invalid configuration '{text}'"),
        };
        if t.is_empty() {
            return Err(bad());
        }
        let values: Option<Vec<u32>> = if t.contains(',') || t.contains(' ') {
            t.split([',', ' '])
                .filter(|s| !s.is_empty())
                .map(|s| s.trim().parse::<u32>().ok())
                .collect()
        } else {
            t.chars().map(|c| c.to_digit(10)).collect()
        };
        values.map(Configuration).ok_or_else(bad)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Indexing of GF(p)^n: configuration `c` has index `sum c_i p^i`, so x1
/// varies fastest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSpace {
    field: Field,
    n: usize,
    size: usize,
}

impl StateSpace {
    pub fn new(field: Field, n: usize, budget: usize) -> Result<Self> {
        let needed = (field.modulus() as u128)
            .checked_pow(n as u32)
            .unwrap_or(u128::MAX);
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        Ok(StateSpace {
            field,
            n,
            size: needed as usize,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index(&self, values: &[u32]) -> usize {
        let p = self.field.modulus() as usize;
        values.iter().rev().fold(0, |acc, &v| acc * p + v as usize)
    }

    pub fn decode_into(&self, mut idx: usize, out: &mut [u32]) {
        let p = self.field.modulus() as usize;
        for v in out.iter_mut() {
            *v = (idx % p) as u32;
            idx /= p;
        }
    }

    pub fn config(&self, idx: usize) -> Configuration {
        let mut v = vec![0; self.n];
        self.decode_into(idx, &mut v);
        Configuration(v)
    }

    pub fn configs(&self) -> impl Iterator<Item = Configuration> + '_ {
        (0..self.size).map(|i| self.config(i))
    }
}

/// Update schedule: a nonempty word over the variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UpdateWord(Vec<usize>);

impl UpdateWord {
    /// From 0-based indices.
    pub fn new(n: usize, word: Vec<usize>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Semantic("update word must be nonempty".into()));
        }
        if let Some(&bad) = word.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad + 1, n });
        }
        Ok(UpdateWord(word))
    }

    pub fn from_one_based(n: usize, word: &[usize]) -> Result<Self> {
        if let Some(&bad) = word.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        Self::new(n, word.iter().map(|i| i - 1).collect())
    }

    /// `(1,2,...,n)`.
    pub fn identity(n: usize) -> Self {
        UpdateWord((0..n).collect())
    }

    /// Parses the 1-based text form `(2,1,3,4)`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        let idx: std::result::Result<Vec<usize>, _> = t
            .split([',', ' '])
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<usize>())
            .collect();
        let idx = idx.map_err(|_| Error::Syntax {
            line: 0,
            message: format!("invalid update word '{text}'"),
        })?;
        Self::from_one_based(n, &idx)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn is_permutation(&self, n: usize) -> bool {
        self.0.len() == n && self.0.iter().collect::<BTreeSet<_>>().len() == n
    }

    /// Concatenation `self ++ rhs`.
    pub fn concat(&self, rhs: &UpdateWord) -> UpdateWord {
        UpdateWord(self.0.iter().chain(&rhs.0).copied().collect())
    }
}

impl fmt::Display for UpdateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// How the local functions assemble into a global map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum UpdateMode {
    Parallel,
    Word(UpdateWord),
}

impl fmt::Display for UpdateMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpdateMode::Parallel => write!(f, "parallel"),
            UpdateMode::Word(w) => write!(f, "word {w}"),
        }
    }
}

/// Directed graph with an edge `i -> j` iff `x_i` occurs in `f_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyGraph {
    n: usize,
    /// `inputs[j]` = variables that `f_j` depends on.
    inputs: Vec<BTreeSet<usize>>,
}

impl DependencyGraph {
    pub fn from_inputs(inputs: Vec<BTreeSet<usize>>) -> Self {
        DependencyGraph {
            n: inputs.len(),
            inputs,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.inputs[to].contains(&from)
    }

    /// Inputs of `f_j`.
    pub fn inputs(&self, j: usize) -> &BTreeSet<usize> {
        &self.inputs[j]
    }

    /// Out-neighbours of every vertex (the variables each one feeds).
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for (j, ins) in self.inputs.iter().enumerate() {
            for &i in ins {
                out[i].push(j);
            }
        }
        out
    }

    /// All edges `(from, to)`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .inputs
            .iter()
            .enumerate()
            .flat_map(|(j, ins)| ins.iter().map(move |&i| (i, j)))
            .collect();
        e.sort_unstable();
        e
    }

    /// True when every edge between distinct vertices has its reverse.
    /// Self-loops are ignored.
    pub fn is_symmetric(&self) -> bool {
        self.asymmetric_edge().is_none()
    }

    pub fn asymmetric_edge(&self) -> Option<(usize, usize)> {
        self.edges()
            .into_iter()
            .find(|&(i, j)| i != j && !self.has_edge(j, i))
    }
}

/// A local function prepared for evaluation: a lookup table over its
/// support when that is small enough, otherwise the polynomial itself.
#[derive(Debug, Clone)]
pub(crate) enum CompiledLocal {
    Table {
        p: usize,
        vars: Vec<usize>,
        values: Vec<u32>,
    },
    Poly(MPoly),
}

impl CompiledLocal {
    pub(crate) fn new(f: &MPoly) -> Self {
        let p = f.field().modulus() as usize;
        let vars: Vec<usize> = f.support().into_iter().collect();
        let fits = (p as u128)
            .checked_pow(vars.len() as u32)
            .is_some_and(|s| s <= TABLE_LIMIT as u128);
        if fits {
            let values = f.grid_values(&vars).expect("support covers the polynomial");
            CompiledLocal::Table { p, vars, values }
        } else {
            CompiledLocal::Poly(f.clone())
        }
    }

    #[inline]
    pub(crate) fn eval(&self, x: &[u32]) -> u32 {
        match self {
            CompiledLocal::Table { p, vars, values } => {
                let idx = vars.iter().rev().fold(0, |acc, &v| acc * p + x[v] as usize);
                values[idx]
            }
            CompiledLocal::Poly(f) => f.eval_unchecked(x),
        }
    }
}

/// A finite dynamical system: `n` local functions over GF(p).
#[derive(Debug, Clone)]
pub struct System {
    field: Field,
    locals: Vec<MPoly>,
    dependency: DependencyGraph,
    compiled: Vec<CompiledLocal>,
}

impl PartialEq for System {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.locals == other.locals
    }
}

impl Eq for System {}

impl System {
    /// Assembles a system and derives its dependency graph.
    pub fn new(field: Field, locals: Vec<MPoly>) -> Result<Self> {
        let n = locals.len();
        if n == 0 {
            return Err(Error::Semantic(
                "a system needs at least one local function".into(),
            ));
        }
        for f in &locals {
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
        let inputs: Vec<BTreeSet<usize>> = locals.iter().map(MPoly::support).collect();
        let compiled = locals.iter().map(CompiledLocal::new).collect();
        Ok(System {
            field,
            locals,
            dependency: DependencyGraph::from_inputs(inputs),
            compiled,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.locals.len()
    }

    pub fn locals(&self) -> &[MPoly] {
        &self.locals
    }

    pub fn dependency_graph(&self) -> &DependencyGraph {
        &self.dependency
    }

    pub fn is_symmetric(&self) -> bool {
        self.dependency.is_symmetric()
    }

    pub fn state_space(&self, budget: usize) -> Result<StateSpace> {
        StateSpace::new(self.field, self.n(), budget)
    }

    pub fn check_config(&self, c: &Configuration) -> Result<()> {
        if c.len() != self.n() {
            return Err(Error::ArityMismatch {
                expected: self.n(),
                found: c.len(),
            });
        }
        let p = self.field.modulus();
        if let Some(v) = c.values().iter().find(|&&v| v >= p) {
            return Err(Error::Semantic(format!(
                "state value {v} is not a residue mod {p}"
            )));
        }
        Ok(())
    }

    pub(crate) fn check_mode(&self, mode: &UpdateMode) -> Result<()> {
        if let UpdateMode::Word(w) = mode {
            if let Some(&bad) = w.entries().iter().find(|&&i| i >= self.n()) {
                return Err(Error::IndexOutOfRange {
                    index: bad + 1,
                    n: self.n(),
                });
            }
        }
        Ok(())
    }

    /// Value of `f_i` at `x`.
    #[inline]
    pub fn eval_local(&self, i: usize, x: &[u32]) -> u32 {
        self.compiled[i].eval(x)
    }

    /// `(f_1(c), ..., f_n(c))`.
    pub fn step_parallel(&self, c: &Configuration) -> Result<Configuration> {
        self.check_config(c)?;
        let mut out = vec![0; self.n()];
        self.parallel_into(c.values(), &mut out);
        Ok(Configuration(out))
    }

    /// Applies the locals in word order, each rewriting only its own
    /// coordinate.
    pub fn step_word(&self, w: &UpdateWord, c: &Configuration) -> Result<Configuration> {
        self.check_config(c)?;
        self.check_mode(&UpdateMode::Word(w.clone()))?;
        let mut x = c.values().to_vec();
        self.word_in_place(w, &mut x);
        Ok(Configuration(x))
    }

    pub fn step(&self, mode: &UpdateMode, c: &Configuration) -> Result<Configuration> {
        match mode {
            UpdateMode::Parallel => self.step_parallel(c),
            UpdateMode::Word(w) => self.step_word(w, c),
        }
    }

    fn parallel_into(&self, x: &[u32], out: &mut [u32]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.eval_local(i, x);
        }
    }

    pub(crate) fn word_in_place(&self, w: &UpdateWord, x: &mut [u32]) {
        for &i in w.entries() {
            x[i] = self.eval_local(i, x);
        }
    }

    /// Full successor table of the global map in the given mode.
    pub fn materialize(&self, mode: &UpdateMode, budget: usize) -> Result<GlobalMap> {
        self.check_mode(mode)?;
        let space = self.state_space(budget)?;
        let n = self.n();
        let table: Vec<usize> = (0..space.size())
            .into_par_iter()
            .map_init(
                || (vec![0u32; n], vec![0u32; n]),
                |(x, y), idx| {
                    space.decode_into(idx, x);
                    match mode {
                        UpdateMode::Parallel => {
                            self.parallel_into(x, y);
                            space.index(y)
                        }
                        UpdateMode::Word(w) => {
                            self.word_in_place(w, x);
                            space.index(x)
                        }
                    }
                },
            )
            .collect();
        Ok(GlobalMap { space, table })
    }
}

/// A total map on GF(p)^n stored as a successor table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalMap {
    space: StateSpace,
    table: Vec<usize>,
}

impl GlobalMap {
    pub fn from_table(space: StateSpace, table: Vec<usize>) -> Result<Self> {
        if table.len() != space.size() || table.iter().any(|&t| t >= space.size()) {
            return Err(Error::DimensionMismatch(
                "successor table does not match the state space".into(),
            ));
        }
        Ok(GlobalMap { space, table })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn image(&self, idx: usize) -> usize {
        self.table[idx]
    }

    pub fn apply(&self, c: &Configuration) -> Configuration {
        self.space.config(self.table[self.space.index(c.values())])
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GlobalMap) -> GlobalMap {
        GlobalMap {
            space: self.space,
            table: self.table.iter().map(|&t| other.table[t]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        for &t in &self.table {
            if seen[t] {
                return false;
            }
            seen[t] = true;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_polynomial;

    pub(crate) fn runex() -> System {
        let f = Field::boolean();
        let locals = ["x1+x2+x3+x4", "x1+x2", "x1+x3", "x1+x4"]
            .iter()
            .map(|t| parse_polynomial(f, 4, t, &[]).unwrap())
            .collect();
        System::new(f, locals).unwrap()
    }

    fn cfg(v: &[u32]) -> Configuration {
        Configuration::new(v.to_vec())
    }

    #[test]
    fn runex_dependency_graph() {
        let s = runex();
        let mut expected = vec![(0, 0), (1, 1), (2, 2), (3, 3)];
        for j in 1..4 {
            expected.push((0, j));
            expected.push((j, 0));
        }
        expected.sort();
        assert_eq!(s.dependency_graph().edges(), expected);
        assert!(s.is_symmetric());
    }

    #[test]
    fn small_graphs() {
        let f = Field::boolean();
        let s = System::new(f, vec![MPoly::constant(f, 1, 1)]).unwrap();
        assert!(s.dependency_graph().edges().is_empty());
        let s = System::new(f, vec![MPoly::var(f, 2, 1), MPoly::var(f, 2, 0)]).unwrap();
        assert_eq!(s.dependency_graph().edges(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn build_errors() {
        let f = Field::boolean();
        assert!(matches!(
            System::new(f, vec![MPoly::var(f, 2, 0)]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(System::new(f, vec![]).is_err());
        let g3 = Field::new(3).unwrap();
        assert!(matches!(
            System::new(f, vec![MPoly::var(g3, 1, 0)]),
            Err(Error::ModulusMismatch(2, 3))
        ));
    }

    #[test]
    fn parallel_steps() {
        let s = runex();
        assert_eq!(
            s.step_parallel(&cfg(&[0, 0, 0, 0])).unwrap(),
            cfg(&[0, 0, 0, 0])
        );
        assert_eq!(
            s.step_parallel(&cfg(&[1, 0, 0, 0])).unwrap(),
            cfg(&[1, 1, 1, 1])
        );
        assert_eq!(
            s.step_parallel(&cfg(&[1, 1, 1, 1])).unwrap(),
            cfg(&[0, 0, 0, 0])
        );
        assert!(s.step_parallel(&cfg(&[1, 0, 0])).is_err());
        assert!(s.step_parallel(&cfg(&[2, 0, 0, 0])).is_err());
    }

    #[test]
    fn word_steps() {
        let s = runex();
        let pi = UpdateWord::parse(4, "(2,1,3,4)").unwrap();
        // f2: x2 = 1+0 = 1; f1: x1 = 1+1+0+0 = 0; f3: x3 = 0+0 = 0; f4: x4 = 0
        assert_eq!(
            s.step_word(&pi, &cfg(&[1, 0, 0, 0])).unwrap(),
            cfg(&[0, 1, 0, 0])
        );
        let id = UpdateWord::identity(4);
        assert_eq!(
            s.step_word(&id, &cfg(&[0, 0, 0, 0])).unwrap(),
            cfg(&[0, 0, 0, 0])
        );
        // f2(0,0,1,1) = 0 = x2, so the single-letter word leaves c unchanged
        let w = UpdateWord::from_one_based(4, &[2]).unwrap();
        assert_eq!(
            s.step_word(&w, &cfg(&[0, 0, 1, 1])).unwrap(),
            cfg(&[0, 0, 1, 1])
        );
        assert!(UpdateWord::from_one_based(4, &[5]).is_err());
        assert!(UpdateWord::parse(4, "(0,1)").is_err());
        let long = UpdateWord::identity(5);
        assert!(matches!(
            s.step_word(&long, &cfg(&[0, 0, 0, 0])),
            Err(Error::IndexOutOfRange { index: 5, n: 4 })
        ));
    }

    #[test]
    fn materialize_tables() {
        let s = runex();
        let par = s
            .materialize(&UpdateMode::Parallel, DEFAULT_BUDGET)
            .unwrap();
        assert_eq!(par.table().len(), 16);
        assert_eq!(par.image(15), 0);
        let pi = UpdateMode::Word(UpdateWord::parse(4, "(2,1,3,4)").unwrap());
        let id = UpdateMode::Word(UpdateWord::identity(4));
        let a = s.materialize(&pi, DEFAULT_BUDGET).unwrap();
        let b = s.materialize(&id, DEFAULT_BUDGET).unwrap();
        assert_ne!(a, b);
        assert!(matches!(
            s.materialize(&UpdateMode::Parallel, 15),
            Err(Error::BudgetExceeded {
                needed: 16,
                budget: 15
            })
        ));
        let f = Field::new(3).unwrap();
        let ident = System::new(f, (0..3).map(|i| MPoly::var(f, 3, i)).collect()).unwrap();
        let t = ident
            .materialize(&UpdateMode::Parallel, DEFAULT_BUDGET)
            .unwrap();
        assert!(t.table().iter().enumerate().all(|(i, &j)| i == j));
    }

    #[test]
    fn configuration_text() {
        assert_eq!(
            Configuration::parse("(1,0,0,0)").unwrap(),
            cfg(&[1, 0, 0, 0])
        );
        assert_eq!(Configuration::parse("0110").unwrap(), cfg(&[0, 1, 1, 0]));
        assert_eq!(cfg(&[0, 1, 1, 0]).label(), "0110");
        assert_eq!(cfg(&[10, 1]).label(), "10,1");
        assert!(Configuration::parse("(a,b)").is_err());
        let sp = StateSpace::new(Field::boolean(), 4, 16).unwrap();
        assert_eq!(sp.index(&[1, 0, 0, 0]), 1);
        assert_eq!(sp.config(6), cfg(&[0, 1, 1, 0]));
    }
}
