//! Serializable reports and their JSON, CSV and table renderings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::field::Field;
use crate::linalg::Matrix;

/// Exact rational as decimal strings, so no precision is lost in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rational {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for Rational {
    fn from(r: &BigRational) -> Self {
        Rational {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

/// Twelve-digit decimal rendering, for display only.
pub fn decimal(r: &BigRational) -> String {
    let scale = num_traits::pow(BigInt::from(10), 12);
    let scaled = (r.abs() * BigRational::from_integer(scale.clone())).round().to_integer();
    let int = &scaled / &scale;
    let frac = &scaled % &scale;
    let sign = if r.is_negative() && !scaled.is_zero() { "-" } else { "" };
    format!("{sign}{int}.{frac:0>12}")
}

pub fn matrix_rows(field: &Field, m: &Matrix) -> Vec<Vec<String>> {
    m.rows().map(|row| row.iter().map(|c| field.format(c)).collect()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Dimension {
    pub value: usize,
    pub source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealRef {
    pub name: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Closure {
    pub holds: bool,
    pub minimizer_count: usize,
    pub pairs_checked: usize,
    pub maximal_minimizer: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub e: u32,
    pub value: Rational,
    pub value_decimal: String,
    /// True when the value is only an upper bound (sampled candidates).
    pub upper_bound: bool,
    pub argmin: Vec<Vec<String>>,
    pub candidate_count: usize,
    pub candidate_values: Vec<Rational>,
    pub socle_dimension: usize,
    pub paths_agree: bool,
    pub rank_path_checked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure: Option<Closure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HkEntry {
    pub e: u32,
    pub length: u64,
    pub normalized: Rational,
    pub normalized_decimal: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Difference {
    pub e: u32,
    pub e_prime: u32,
    pub difference: Rational,
    pub scaled: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntervalOut {
    pub e: u32,
    pub lower: Rational,
    pub upper: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaRow {
    pub level: u32,
    pub field: String,
    pub bound: Rational,
    pub bound_decimal: String,
    pub argmin: Vec<Vec<String>>,
    pub candidate_count: usize,
    pub carried: usize,
    pub preserved: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaSection {
    pub e: u32,
    #[serde(rename = "Gamma")]
    pub gamma: Vec<String>,
    pub sample: String,
    pub levels: Vec<GammaRow>,
    pub monotone: bool,
    pub preserved: bool,
    pub stabilized_from: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleEntry {
    pub e: u32,
    pub matrix: Vec<Vec<String>>,
    pub groebner: Rational,
    pub rank: Option<Rational>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroebnerDump {
    pub label: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub instance: String,
    pub task: String,
    pub field: String,
    pub variables: Vec<String>,
    pub defining: Vec<String>,
    pub order: String,
    pub ideal: IdealRef,
    pub dimension: Dimension,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hk: Option<Vec<HkEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Check>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<OracleEntry>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub differences: Vec<Difference>,
    #[serde(rename = "C_emp")]
    pub c_emp: Option<Rational>,
    pub limit_interval: Option<IntervalOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groebner_bases: Option<Vec<GroebnerDump>>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "instance,task,e,num,den,value_decimal,candidate_count,paths_agree,C_emp_num,C_emp_den,warnings\n",
        );
        let (cn, cd) = match &self.c_emp {
            Some(c) => (c.num.clone(), c.den.clone()),
            None => (String::new(), String::new()),
        };
        let warnings = csv_field(&self.warnings.join("; "));
        let mut line = |instance: &str, e: String, v: &Rational, dec: &str, count: String, agree: String| {
            let _ = writeln!(
                out,
                "{},{},{e},{},{},{dec},{count},{agree},{cn},{cd},{warnings}",
                csv_field(instance),
                self.task,
                v.num,
                v.den
            );
        };
        for r in &self.rows {
            line(&self.instance, r.e.to_string(), &r.value, &r.value_decimal, r.candidate_count.to_string(), r.paths_agree.to_string());
        }
        if let Some(hk) = &self.hk {
            for h in hk {
                line(&self.instance, h.e.to_string(), &h.normalized, &h.normalized_decimal, String::new(), String::new());
            }
        }
        if let Some(g) = &self.gamma {
            for l in &g.levels {
                let name = format!("{}[level={}]", self.instance, l.level);
                line(&name, g.e.to_string(), &l.bound, &l.bound_decimal, l.candidate_count.to_string(), l.preserved.to_string());
            }
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}: {} on {} over {} (dim {} {})",
            self.instance, self.task, self.ideal.name, self.field, self.dimension.value, self.dimension.source
        );
        if !self.rows.is_empty() {
            let rows: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.e.to_string(),
                        format!("{}{}", if r.upper_bound { "<= " } else { "" }, fraction(&r.value)),
                        r.value_decimal.clone(),
                        r.candidate_count.to_string(),
                        r.paths_agree.to_string(),
                    ]
                })
                .collect();
            table(&mut out, &["e", "value", "decimal", "candidates", "paths_agree"], &rows);
        }
        if let Some(hk) = &self.hk {
            let rows: Vec<Vec<String>> = hk
                .iter()
                .map(|h| vec![h.e.to_string(), h.length.to_string(), fraction(&h.normalized)])
                .collect();
            table(&mut out, &["e", "length", "normalized"], &rows);
        }
        if let Some(g) = &self.gamma {
            let rows: Vec<Vec<String>> = g
                .levels
                .iter()
                .map(|l| {
                    vec![
                        l.level.to_string(),
                        l.field.clone(),
                        format!("<= {}", fraction(&l.bound)),
                        l.candidate_count.to_string(),
                        l.preserved.to_string(),
                    ]
                })
                .collect();
            table(&mut out, &["level", "field", "bound", "candidates", "preserved"], &rows);
            let _ = writeln!(out, "monotone: {}  stabilized from level: {:?}", g.monotone, g.stabilized_from);
        }
        if let Some(checks) = &self.checks {
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| vec![c.name.clone(), if c.passed { "pass" } else { "FAIL" }.to_string(), c.detail.clone()])
                .collect();
            table(&mut out, &["check", "status", "detail"], &rows);
        }
        if let Some(oracle) = &self.oracle {
            let rows: Vec<Vec<String>> = oracle
                .iter()
                .map(|o| {
                    vec![
                        o.e.to_string(),
                        format!("{:?}", o.matrix),
                        fraction(&o.groebner),
                        o.rank.as_ref().map_or("-".into(), fraction),
                        o.agree.to_string(),
                    ]
                })
                .collect();
            table(&mut out, &["e", "matrix", "groebner", "rank", "agree"], &rows);
        }
        if let Some(c) = &self.c_emp {
            let _ = write!(out, "C_emp = {}", fraction(c));
            if let Some(i) = &self.limit_interval {
                let _ = write!(out, "  interval at e={}: [{}, {}]", i.e, fraction(&i.lower), fraction(&i.upper));
            }
            let _ = writeln!(out);
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

fn fraction(r: &Rational) -> String {
    if r.den == "1" {
        r.num.clone()
    } else {
        format!("{}/{}", r.num, r.den)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let fmt_row = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let _ = writeln!(out, "{}", fmt_row(header.to_vec()));
    for r in rows {
        let _ = writeln!(out, "{}", fmt_row(r.iter().map(String::as_str).collect()));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals() {
        assert_eq!(decimal(&BigRational::new(1.into(), 3.into())), "0.333333333333");
        assert_eq!(decimal(&BigRational::new((-5).into(), 2.into())), "-2.500000000000");
        assert_eq!(decimal(&BigRational::zero()), "0.000000000000");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a, b"), "\"a, b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
