//! Line-oriented instance files.
//!
//! ```text
//! # cusp
//! field GF(2)
//! ring x y
//! mod  y^2 + x^3
//! ideal I0 = x
//! task srel I0 e_max=2
//! ```
//!
//! `field` accepts `GF(p)`, `GF(q) mod <irreducible in one generator>` and
//! `GF(p)(t,s,...)`. `mod` and `ideal` take comma-separated generators;
//! `mod` may be repeated or omitted. Generators are stored in the canonical
//! form printed by the ring, so printing and re-parsing is the identity.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::poly::{OrderKind, PolyRing, Polynomial};
use crate::signature::LocalRingPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaskKind {
    Hk,
    Srel,
    Srat,
    Gamma,
    Verify,
    OracleDiff,
}

impl TaskKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TaskKind::Hk => "hk",
            TaskKind::Srel => "srel",
            TaskKind::Srat => "srat",
            TaskKind::Gamma => "gamma",
            TaskKind::Verify => "verify",
            TaskKind::OracleDiff => "oracle-diff",
        }
    }
}

impl FromStr for TaskKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "hk" => TaskKind::Hk,
            "srel" => TaskKind::Srel,
            "srat" => TaskKind::Srat,
            "gamma" => TaskKind::Gamma,
            "verify" => TaskKind::Verify,
            "oracle-diff" => TaskKind::OracleDiff,
            other => return Err(format!("unknown task `{other}`")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub kind: TaskKind,
    pub ideal: String,
    pub e_max: Option<u32>,
    pub e: Option<u32>,
    pub order: Option<OrderKind>,
    pub dim: Option<usize>,
    pub budget: Option<u64>,
    pub gamma: Option<Vec<String>>,
    pub levels: Option<Vec<u32>>,
    /// Coefficient sample for function fields, as field-element text.
    pub sample: Option<Vec<String>>,
}

impl Task {
    pub fn new(kind: TaskKind, ideal: impl Into<String>) -> Self {
        Task {
            kind,
            ideal: ideal.into(),
            e_max: None,
            e: None,
            order: None,
            dim: None,
            budget: None,
            gamma: None,
            levels: None,
            sample: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub defining: Vec<String>,
    pub ideals: Vec<(String, Vec<String>)>,
    pub task: Option<Task>,
}

impl Instance {
    pub fn ideal(&self, name: &str) -> Result<&[String]> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g.as_slice())
            .ok_or_else(|| Error::UnknownIdeal(name.to_string()))
    }

    pub fn ring(&self, order: OrderKind) -> Result<PolyRing> {
        let field = Field::new(self.field.clone())?;
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        Ok(PolyRing::new(field, &vars, order))
    }

    pub fn presentation(&self, order: OrderKind) -> Result<LocalRingPresentation> {
        let ring = self.ring(order)?;
        let defining = parse_all(&ring, &self.defining)?;
        LocalRingPresentation::new(ring, defining)
    }

    pub fn ideal_generators(&self, ring: &PolyRing, name: &str) -> Result<Vec<Polynomial>> {
        parse_all(ring, self.ideal(name)?)
    }
}

fn parse_all(ring: &PolyRing, gens: &[String]) -> Result<Vec<Polynomial>> {
    gens.iter().map(|g| ring.parse(g)).collect()
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        writeln!(f, "ring {}", self.vars.join(" "))?;
        if !self.defining.is_empty() {
            writeln!(f, "mod {}", self.defining.join(", "))?;
        }
        for (name, gens) in &self.ideals {
            writeln!(f, "ideal {name} = {}", gens.join(", "))?;
        }
        if let Some(t) = &self.task {
            write!(f, "task {} {}", t.kind.as_str(), t.ideal)?;
            if let Some(v) = t.e_max {
                write!(f, " e_max={v}")?;
            }
            if let Some(v) = t.e {
                write!(f, " e={v}")?;
            }
            if let Some(v) = t.order {
                write!(f, " order={v}")?;
            }
            if let Some(v) = t.dim {
                write!(f, " dim={v}")?;
            }
            if let Some(v) = t.budget {
                write!(f, " budget={v}")?;
            }
            if let Some(v) = &t.gamma {
                write!(f, " Gamma={}", v.join(","))?;
            }
            if let Some(v) = &t.levels {
                let v: Vec<String> = v.iter().map(u32::to_string).collect();
                write!(f, " levels={}", v.join(","))?;
            }
            if let Some(v) = &t.sample {
                write!(f, " sample={}", v.join(","))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_') && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn prime_power(q: u64) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

fn parse_field(text: &str, line: usize, col: usize) -> Result<FieldSpec> {
    let err = |msg: &str| Error::parse(line, col, msg.to_string());
    let rest = text.strip_prefix("GF(").ok_or_else(|| err("field must start with `GF(`"))?;
    let close = rest.find(')').ok_or_else(|| err("missing `)` in field"))?;
    let q: u64 = rest[..close].trim().parse().map_err(|_| err("field size must be an integer"))?;
    let (p, m) = prime_power(q).ok_or_else(|| err("field size must be a prime power"))?;
    let tail = rest[close + 1..].trim();
    let spec = if tail.is_empty() {
        if m != 1 {
            return Err(err("non-prime field size needs `mod <modulus>`"));
        }
        FieldSpec::prime(p)
    } else if let Some(names) = tail.strip_prefix('(') {
        if m != 1 {
            return Err(err("function fields are built over a prime field"));
        }
        let names = names.strip_suffix(')').ok_or_else(|| err("missing `)` after transcendentals"))?;
        let names: Vec<&str> = names.split(',').map(str::trim).collect();
        if names.iter().any(|n| !is_identifier(n)) {
            return Err(err("transcendentals must be identifiers"));
        }
        FieldSpec::function(p, &names)
    } else if let Some(modulus) = tail.strip_prefix("mod") {
        let modulus = modulus.trim();
        let mut idents: Vec<String> = Vec::new();
        let mut current = String::new();
        for c in modulus.chars().chain(std::iter::once(' ')) {
            if c.is_alphanumeric() || c == '_' {
                current.push(c);
            } else {
                if current.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') && !idents.contains(&current) {
                    idents.push(current.clone());
                }
                current.clear();
            }
        }
        if idents.len() != 1 {
            return Err(err("modulus must be a polynomial in exactly one generator"));
        }
        let ring = PolyRing::new(Field::prime(p).map_err(|e| err(&e.to_string()))?, &[idents[0].as_str()], OrderKind::Lex);
        let poly = ring.parse(modulus).map_err(|e| err(&e.to_string()))?;
        let deg = poly.total_degree() as usize;
        let mut coeffs = vec![0u32; deg + 1];
        for (mono, c) in poly.terms() {
            coeffs[mono.exponents()[0] as usize] = ring.field().index_of(c).unwrap_or(0) as u32;
        }
        if deg as u32 != m {
            return Err(err("modulus degree does not match the field size"));
        }
        FieldSpec::extension(p, coeffs, idents[0].clone())
    } else {
        return Err(err("unexpected text after field size"));
    };
    Field::new(spec.clone()).map_err(|e| err(&e.to_string()))?;
    Ok(spec)
}

/// Splits on commas, keeping the column of each trimmed piece relative to
/// a text starting at column `col`.
fn split_generators(text: &str, col: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        out.push((piece.trim(), col + text[..offset].chars().count() + piece[..lead].chars().count()));
        offset += piece.len() + 1;
    }
    out
}

fn canonical(ring: &PolyRing, text: &str, line: usize, col: usize) -> Result<String> {
    match ring.parse(text) {
        Ok(f) => Ok(ring.format(&f)),
        Err(Error::Parse { column, message, .. }) => Err(Error::parse(line, col + column - 1, message)),
        Err(e) => Err(e),
    }
}

fn parse_list<T: FromStr>(v: &str, line: usize, col: usize, key: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::parse(line, col, format!("bad value in `{key}`"))))
        .collect()
}

/// Whitespace-separated words with their 1-based columns.
fn words_with_columns(text: &str, col: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((&text[s..i], col + text[..s].chars().count()));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn parse_task(rest: &str, line: usize, col: usize) -> Result<Task> {
    let mut words = words_with_columns(rest, col).into_iter();
    let (kind, kind_col) = words.next().ok_or_else(|| Error::parse(line, col, "task needs a kind"))?;
    let kind: TaskKind = kind.parse().map_err(|m: String| Error::parse(line, kind_col, m))?;
    let (ideal, _) = words.next().ok_or_else(|| Error::parse(line, col, "task needs an ideal name"))?;
    let mut task = Task::new(kind, ideal);
    for (w, col) in words {
        let (key, value) = w
            .split_once('=')
            .ok_or_else(|| Error::parse(line, col, format!("expected key=value, got `{w}`")))?;
        let bad = || Error::parse(line, col, format!("bad value for `{key}`"));
        match key {
            "e_max" => task.e_max = Some(value.parse().map_err(|_| bad())?),
            "e" => task.e = Some(value.parse().map_err(|_| bad())?),
            "order" => task.order = Some(value.parse().map_err(|_| bad())?),
            "dim" => task.dim = Some(value.parse().map_err(|_| bad())?),
            "budget" => task.budget = Some(value.parse().map_err(|_| bad())?),
            "Gamma" => {
                task.gamma = Some(if value.is_empty() {
                    Vec::new()
                } else {
                    value.split(',').map(|s| s.trim().to_string()).collect()
                })
            }
            "levels" => task.levels = Some(parse_list(value, line, col, key)?),
            "sample" => task.sample = Some(value.split(',').map(|s| s.trim().to_string()).collect()),
            other => return Err(Error::parse(line, col, format!("unknown task key `{other}`"))),
        }
    }
    Ok(task)
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut field: Option<FieldSpec> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut defining = Vec::new();
    let mut ideals: Vec<(String, Vec<String>)> = Vec::new();
    let mut task: Option<(Task, usize)> = None;
    let mut ring: Option<PolyRing> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let content = content.trim();
        let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest_col = indent + key.len() + 1 + (rest.len() - rest.trim_start().len()) + 1;
        let rest = rest.trim();
        let need_ring = |ring: &Option<PolyRing>| {
            ring.clone()
                .ok_or_else(|| Error::parse(line, indent + 1, format!("`{key}` before `field` and `ring`")))
        };
        match key {
            "field" => {
                if field.is_some() {
                    return Err(Error::parse(line, indent + 1, "duplicate `field`"));
                }
                field = Some(parse_field(rest, line, rest_col)?);
            }
            "ring" => {
                if vars.is_some() {
                    return Err(Error::parse(line, indent + 1, "duplicate `ring`"));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if names.is_empty() || names.iter().any(|n| !is_identifier(n)) {
                    return Err(Error::parse(line, rest_col, "`ring` needs variable names"));
                }
                vars = Some(names);
            }
            "mod" => {
                let r = need_ring(&ring)?;
                for (g, c) in split_generators(rest, rest_col) {
                    defining.push(canonical(&r, g, line, c)?);
                }
            }
            "ideal" => {
                let r = need_ring(&ring)?;
                let (name, gens) = rest
                    .split_once('=')
                    .ok_or_else(|| Error::parse(line, rest_col, "expected `ideal NAME = generators`"))?;
                let name = name.trim();
                if !is_identifier(name) {
                    return Err(Error::parse(line, rest_col, "ideal name must be an identifier"));
                }
                if ideals.iter().any(|(n, _)| n == name) {
                    return Err(Error::parse(line, rest_col, format!("duplicate ideal `{name}`")));
                }
                let gens_col = rest_col + rest[..rest.find('=').unwrap()].chars().count() + 1;
                let gens = split_generators(gens, gens_col)
                    .into_iter()
                    .map(|(g, c)| canonical(&r, g, line, c))
                    .collect::<Result<Vec<_>>>()?;
                ideals.push((name.to_string(), gens));
            }
            "task" => {
                if task.is_some() {
                    return Err(Error::parse(line, indent + 1, "duplicate `task`"));
                }
                task = Some((parse_task(rest, line, rest_col)?, line));
            }
            other => return Err(Error::parse(line, indent + 1, format!("unknown key `{other}`"))),
        }
        if ring.is_none() {
            if let (Some(f), Some(v)) = (&field, &vars) {
                let field = Field::new(f.clone())?;
                let names: Vec<&str> = v.iter().map(String::as_str).collect();
                if field.generator_names().iter().any(|g| names.contains(&g.as_str())) {
                    return Err(Error::parse(line, 1, "a field generator clashes with a ring variable"));
                }
                ring = Some(PolyRing::new(field, &names, OrderKind::Grevlex));
            }
        }
    }
    let field = field.ok_or_else(|| Error::parse(1, 1, "missing `field`"))?;
    let vars = vars.ok_or_else(|| Error::parse(1, 1, "missing `ring`"))?;
    let task = match task {
        Some((t, _)) => {
            if !ideals.iter().any(|(n, _)| *n == t.ideal) {
                return Err(Error::UnknownIdeal(t.ideal));
            }
            Some(t)
        }
        None => None,
    };
    Ok(Instance {
        field,
        vars,
        defining,
        ideals,
        task,
    })
}
