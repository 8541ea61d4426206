//! Plain-text system descriptions.
//!
//! ```text
//! # run-ex
//! field 2
//! vars 4
//! local 1 = x1 + x2 + x3 + x4
//! local 2 = bool x1 ^ x2
//! local 3 = table (x1,x3) 0 1 1 0
//! local 4 = x1 + x4
//! mode word (2,1,3,4)
//! init (1,0,0,0)
//! ```
//!
//! Stochastic systems add either `member <prob> parallel|word (..)` lines
//! (random choice of system; `local` lines after a member override the base
//! locals for that member) or `choice <i> <prob> = <local>` lines (random
//! choice of local function per variable). The full grammar is in
//! `docs/spec-format.md`.

use std::collections::BTreeMap;
use std::fmt::{self, Write};

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::multipoly::{parse_bool, parse_polynomial, MPoly};
use crate::stochastic::{parse_probability, Member, StochasticSystem};
use crate::system::{Configuration, System, UpdateMode, UpdateWord};

/// Right-hand side of a `local` or `choice` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalDef {
    /// Polynomial form; Boolean expressions are converted on parsing.
    Poly(MPoly),
    /// Value table over `vars`, little-endian (first listed variable
    /// varies fastest).
    Table { vars: Vec<usize>, values: Vec<u32> },
}

impl LocalDef {
    pub fn to_poly(&self, field: Field, n: usize) -> Result<MPoly> {
        match self {
            LocalDef::Poly(f) => Ok(f.clone()),
            LocalDef::Table { vars, values } => {
                MPoly::interpolate_separable(field, n, vars, values)
            }
        }
    }
}

impl fmt::Display for LocalDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalDef::Poly(p) => write!(f, "{p}"),
            LocalDef::Table { vars, values } => {
                let vars: Vec<String> = vars.iter().map(|v| format!("x{}", v + 1)).collect();
                let values: Vec<String> = values.iter().map(u32::to_string).collect();
                write!(f, "table ({}) {}", vars.join(","), values.join(" "))
            }
        }
    }
}

/// One `member` block of a stochastic spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberDef {
    pub probability: BigRational,
    pub mode: UpdateMode,
    /// 0-based variable -> local replacing the base definition.
    pub overrides: BTreeMap<usize, LocalDef>,
}

/// A parsed spec file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub field: Field,
    pub n: usize,
    /// Base local per variable, 0-based.
    pub locals: BTreeMap<usize, LocalDef>,
    pub mode: Option<UpdateMode>,
    pub init: Option<Configuration>,
    pub members: Vec<MemberDef>,
    /// 0-based variable -> weighted alternatives.
    pub choices: BTreeMap<usize, Vec<(BigRational, LocalDef)>>,
}

/// What a spec describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Deterministic { system: System, mode: UpdateMode },
    Stochastic(StochasticSystem),
}

impl Model {
    pub fn field(&self) -> Field {
        match self {
            Model::Deterministic { system, .. } => system.field(),
            Model::Stochastic(s) => s.field(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Model::Deterministic { system, .. } => system.n(),
            Model::Stochastic(s) => s.n(),
        }
    }
}

fn at(line: usize, err: Error) -> Error {
    match err {
        Error::Syntax { message, .. } => Error::Syntax { line, message },
        Error::Semantic(m) => Error::Semantic(format!("line {line}: {m}")),
        other => Error::Semantic(format!("line {line}: {other}")),
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn semantic(line: usize, message: impl Into<String>) -> Error {
    Error::Semantic(format!("line {line}: {}", message.into()))
}

/// Splits `rest` at the first `=`.
fn split_eq(line: usize, rest: &str) -> Result<(&str, &str)> {
    rest.split_once('=')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| syntax(line, "expected '='"))
}

fn parse_var_name(line: usize, n: usize, name: &str) -> Result<usize> {
    let k = name
        .trim()
        .strip_prefix('x')
        .and_then(|d| d.parse::<usize>().ok())
        .ok_or_else(|| syntax(line, format!("invalid variable '{name}'")))?;
    if k == 0 || k > n {
        return Err(at(line, Error::IndexOutOfRange { index: k, n }));
    }
    Ok(k - 1)
}

fn parse_index(line: usize, n: usize, text: &str) -> Result<usize> {
    let k: usize = text
        .trim()
        .parse()
        .map_err(|_| syntax(line, format!("invalid variable index '{text}'")))?;
    if k == 0 || k > n {
        return Err(at(line, Error::IndexOutOfRange { index: k, n }));
    }
    Ok(k - 1)
}

fn parse_local(line: usize, field: Field, n: usize, rhs: &str) -> Result<LocalDef> {
    if let Some(expr) = rhs.strip_prefix("bool ") {
        let e = parse_bool(n, expr).map_err(|e| at(line, e))?;
        return Ok(LocalDef::Poly(
            e.to_poly(field, n).map_err(|e| at(line, e))?,
        ));
    }
    if let Some(body) = rhs.strip_prefix("table") {
        let body = body.trim_start();
        let close = body
            .strip_prefix('(')
            .and_then(|b| b.find(')').map(|k| (b, k)))
            .ok_or_else(|| syntax(line, "table needs a variable list like (x1,x2)"))?;
        let (inner, k) = close;
        let vars = inner[..k]
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| parse_var_name(line, n, s))
            .collect::<Result<Vec<_>>>()?;
        let p = field.modulus();
        let values = inner[k + 1..]
            .split_whitespace()
            .map(|s| match s.parse::<u32>() {
                Ok(v) if v < p => Ok(v),
                Ok(v) => Err(semantic(
                    line,
                    format!("table value {v} is not a residue mod {p}"),
                )),
                Err(_) => Err(syntax(line, format!("invalid table value '{s}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let expected = (p as usize)
            .checked_pow(vars.len() as u32)
            .ok_or_else(|| semantic(line, "table too large"))?;
        if values.len() != expected {
            return Err(at(
                line,
                Error::IncompleteTable {
                    expected,
                    found: values.len(),
                },
            ));
        }
        let mut sorted = vars.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(semantic(line, "table lists a variable twice"));
        }
        return Ok(LocalDef::Table { vars, values });
    }
    Ok(LocalDef::Poly(
        parse_polynomial(field, n, rhs, &[]).map_err(|e| at(line, e))?,
    ))
}

fn parse_mode(line: usize, n: usize, text: &str) -> Result<UpdateMode> {
    let text = text.trim();
    if text == "parallel" {
        return Ok(UpdateMode::Parallel);
    }
    if let Some(w) = text.strip_prefix("word") {
        return Ok(UpdateMode::Word(
            UpdateWord::parse(n, w).map_err(|e| at(line, e))?,
        ));
    }
    Err(syntax(
        line,
        format!("expected 'parallel' or 'word (..)', found '{text}'"),
    ))
}

impl SpecFile {
    /// Parses spec text. Errors carry 1-based line numbers.
    pub fn parse(text: &str) -> Result<SpecFile> {
        let mut field: Option<Field> = None;
        let mut n: Option<usize> = None;
        let mut spec: Option<SpecFile> = None;

        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (keyword, rest) = content
                .split_once(char::is_whitespace)
                .map(|(a, b)| (a, b.trim()))
                .unwrap_or((content, ""));

            match keyword {
                "field" => {
                    if field.is_some() {
                        return Err(semantic(line, "duplicate 'field'"));
                    }
                    let p: u64 = rest
                        .parse()
                        .map_err(|_| syntax(line, "field needs a prime"))?;
                    field = Some(Field::new(p).map_err(|e| at(line, e))?);
                    continue;
                }
                "vars" => {
                    if n.is_some() {
                        return Err(semantic(line, "duplicate 'vars'"));
                    }
                    let v: usize = rest
                        .parse()
                        .map_err(|_| syntax(line, "vars needs a count"))?;
                    if v == 0 {
                        return Err(semantic(line, "vars must be at least 1"));
                    }
                    n = Some(v);
                    continue;
                }
                _ => {}
            }

            let (f, nv) = match (field, n) {
                (Some(f), Some(nv)) => (f, nv),
                _ => return Err(semantic(line, "'field' and 'vars' must come first")),
            };
            let spec = spec.get_or_insert_with(|| SpecFile {
                field: f,
                n: nv,
                locals: BTreeMap::new(),
                mode: None,
                init: None,
                members: Vec::new(),
                choices: BTreeMap::new(),
            });

            match keyword {
                "local" => {
                    let (idx, rhs) = split_eq(line, rest)?;
                    let i = parse_index(line, nv, idx)?;
                    let def = parse_local(line, f, nv, rhs)?;
                    let target = match spec.members.last_mut() {
                        Some(m) => &mut m.overrides,
                        None => &mut spec.locals,
                    };
                    if target.insert(i, def).is_some() {
                        return Err(semantic(line, format!("local {} defined twice", i + 1)));
                    }
                }
                "choice" => {
                    let (head, rhs) = split_eq(line, rest)?;
                    let mut parts = head.split_whitespace();
                    let (Some(idx), Some(prob), None) = (parts.next(), parts.next(), parts.next())
                    else {
                        return Err(syntax(
                            line,
                            "expected 'choice <i> <probability> = <local>'",
                        ));
                    };
                    let i = parse_index(line, nv, idx)?;
                    let p = parse_probability(prob).map_err(|e| at(line, e))?;
                    let def = parse_local(line, f, nv, rhs)?;
                    spec.choices.entry(i).or_default().push((p, def));
                }
                "member" => {
                    let (prob, mode) = rest
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| syntax(line, "expected 'member <probability> <mode>'"))?;
                    spec.members.push(MemberDef {
                        probability: parse_probability(prob).map_err(|e| at(line, e))?,
                        mode: parse_mode(line, nv, mode)?,
                        overrides: BTreeMap::new(),
                    });
                }
                "mode" => {
                    if spec.mode.is_some() {
                        return Err(semantic(line, "duplicate 'mode'"));
                    }
                    spec.mode = Some(parse_mode(line, nv, rest)?);
                }
                "init" => {
                    let c = Configuration::parse(rest).map_err(|e| at(line, e))?;
                    if c.len() != nv {
                        return Err(at(
                            line,
                            Error::ArityMismatch {
                                expected: nv,
                                found: c.len(),
                            },
                        ));
                    }
                    if let Some(v) = c.values().iter().find(|&&v| v >= f.modulus()) {
                        return Err(semantic(
                            line,
                            format!("state value {v} is not a residue mod {}", f.modulus()),
                        ));
                    }
                    spec.init = Some(c);
                }
                other => return Err(syntax(line, format!("unknown keyword '{other}'"))),
            }
        }

        match spec {
            Some(s) => {
                if !s.members.is_empty() && !s.choices.is_empty() {
                    return Err(Error::Semantic(
                        "a spec cannot mix 'member' and 'choice' lines".into(),
                    ));
                }
                Ok(s)
            }
            None => match (field, n) {
                (Some(field), Some(n)) => Err(Error::Semantic(format!(
                    "no local definitions for {n} variables over {field}"
                ))),
                _ => Err(Error::Semantic("spec needs 'field' and 'vars'".into())),
            },
        }
    }

    fn base_locals(&self, overrides: &BTreeMap<usize, LocalDef>) -> Result<Vec<MPoly>> {
        (0..self.n)
            .map(|i| {
                overrides
                    .get(&i)
                    .or_else(|| self.locals.get(&i))
                    .ok_or_else(|| Error::Semantic(format!("local {} is missing", i + 1)))?
                    .to_poly(self.field, self.n)
            })
            .collect()
    }

    /// Builds the described system.
    pub fn model(&self) -> Result<Model> {
        let mode = self.mode.clone().unwrap_or(UpdateMode::Parallel);
        if !self.members.is_empty() {
            let members = self
                .members
                .iter()
                .map(|m| {
                    Ok(Member {
                        system: System::new(self.field, self.base_locals(&m.overrides)?)?,
                        mode: m.mode.clone(),
                        probability: m.probability.clone(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Model::Stochastic(StochasticSystem::sfds(members)?));
        }
        if !self.choices.is_empty() {
            let choices = (0..self.n)
                .map(|i| match self.choices.get(&i) {
                    Some(list) => list
                        .iter()
                        .map(|(p, d)| Ok((d.to_poly(self.field, self.n)?, p.clone())))
                        .collect::<Result<Vec<_>>>(),
                    None => {
                        let d = self.locals.get(&i).ok_or_else(|| {
                            Error::Semantic(format!("local {} is missing", i + 1))
                        })?;
                        Ok(vec![(d.to_poly(self.field, self.n)?, BigRational::one())])
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Model::Stochastic(StochasticSystem::pfds(
                self.field, choices, mode,
            )?));
        }
        let system = System::new(self.field, self.base_locals(&BTreeMap::new())?)?;
        Ok(Model::Deterministic { system, mode })
    }

    /// Deterministic spec with polynomial locals.
    pub fn from_system(
        system: &System,
        mode: Option<UpdateMode>,
        init: Option<Configuration>,
    ) -> SpecFile {
        SpecFile {
            field: system.field(),
            n: system.n(),
            locals: system
                .locals()
                .iter()
                .cloned()
                .map(LocalDef::Poly)
                .enumerate()
                .collect(),
            mode,
            init,
            members: Vec::new(),
            choices: BTreeMap::new(),
        }
    }
}

impl fmt::Display for SpecFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        writeln!(out, "field {}", self.field.modulus())?;
        writeln!(out, "vars {}", self.n)?;
        for (i, d) in &self.locals {
            writeln!(out, "local {} = {d}", i + 1)?;
        }
        if let Some(m) = &self.mode {
            writeln!(out, "mode {m}")?;
        }
        if let Some(c) = &self.init {
            writeln!(out, "init {c}")?;
        }
        for m in &self.members {
            writeln!(out, "member {} {}", m.probability, m.mode)?;
            for (i, d) in &m.overrides {
                writeln!(out, "local {} = {d}", i + 1)?;
            }
        }
        for (i, list) in &self.choices {
            for (p, d) in list {
                writeln!(out, "choice {} {p} = {d}", i + 1)?;
            }
        }
        f.write_str(&out)
    }
}
