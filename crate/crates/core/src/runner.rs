//! Executes an instance's task and assembles a [`Report`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::artin::{default_sample, socle, ArtinAlgebra};
use crate::error::{Error, Result};
use crate::extension::{flat_invariance_check, gamma_report, GammaReport};
use crate::field::Field;
use crate::groebner::buchberger;
use crate::instance::{Instance, TaskKind};
use crate::linalg::Matrix;
use crate::poly::{OrderKind, Polynomial};
use crate::report::{
    decimal, matrix_rows, Check, Closure, Difference, Dimension, GammaRow, GammaSection, GroebnerDump, HkEntry,
    IdealRef, IntervalOut, OracleEntry, Rational, Report, Row,
};
use crate::signature::{
    closure_from, hk_function, presentation_warnings, s_rat_trunc, s_trunc_min, signature_report, LocalRingPresentation,
    MinimumResult, SearchMode, SearchOptions, DEFAULT_BUDGET,
};

pub const DEFAULT_E_MAX: u32 = 2;

/// Command-line overrides; `None` falls back to the instance's task line,
/// then to the defaults.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub task: Option<TaskKind>,
    pub ideal: Option<String>,
    pub e_max: Option<u32>,
    pub e: Option<u32>,
    pub order: Option<OrderKind>,
    pub dim: Option<usize>,
    pub budget: Option<u64>,
    pub rank1_only: bool,
    pub parallel: usize,
    pub emit_gb: bool,
    pub gamma: Option<Vec<String>>,
    pub levels: Option<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    /// `None` when every internal consistency check held.
    pub failure: Option<String>,
}

struct Resolved {
    kind: TaskKind,
    ideal: String,
    e_max: u32,
    e: u32,
    order: OrderKind,
    search: SearchOptions,
    gamma: Vec<String>,
    levels: Vec<u32>,
}

fn resolve(instance: &Instance, opts: &RunOptions, field: &Field) -> Result<Resolved> {
    let task = instance.task.as_ref();
    let kind = opts
        .task
        .or(task.map(|t| t.kind))
        .ok_or_else(|| Error::IncompatibleSpec("the instance has no task line and none was given".into()))?;
    let ideal = opts
        .ideal
        .clone()
        .or_else(|| task.map(|t| t.ideal.clone()))
        .or_else(|| instance.ideals.first().map(|(n, _)| n.clone()))
        .ok_or_else(|| Error::UnknownIdeal("<none declared>".into()))?;
    instance.ideal(&ideal)?;
    let sample = match task.and_then(|t| t.sample.as_ref()) {
        Some(s) => {
            let ring = instance.ring(OrderKind::Grevlex)?;
            let mut out = Vec::new();
            for text in s {
                let p = ring.parse(text)?;
                match p.terms() {
                    [] => out.push(field.zero()),
                    [(m, c)] if m.is_one() => out.push(c.clone()),
                    _ => return Err(Error::IncompatibleSpec(format!("sample entry `{text}` is not a constant"))),
                }
            }
            Some(out)
        }
        None => None,
    };
    Ok(Resolved {
        kind,
        ideal,
        e_max: opts.e_max.or(task.and_then(|t| t.e_max)).unwrap_or(DEFAULT_E_MAX),
        e: opts.e.or(task.and_then(|t| t.e)).unwrap_or(1),
        order: opts.order.or(task.and_then(|t| t.order)).unwrap_or(OrderKind::Grevlex),
        search: SearchOptions {
            budget: opts.budget.or(task.and_then(|t| t.budget)).unwrap_or(DEFAULT_BUDGET),
            parallel: opts.parallel.max(1),
            rank1_only: opts.rank1_only,
            sample,
            ..SearchOptions::default()
        },
        gamma: opts
            .gamma
            .clone()
            .or_else(|| task.and_then(|t| t.gamma.clone()))
            .unwrap_or_default()
            .into_iter()
            .filter(|g| !g.is_empty())
            .collect(),
        levels: opts
            .levels
            .clone()
            .or_else(|| task.and_then(|t| t.levels.clone()))
            .unwrap_or_else(|| vec![0, 1]),
    })
}

fn rat(r: &BigRational) -> Rational {
    r.into()
}

fn row_from(field: &Field, r: &MinimumResult) -> Result<Row> {
    let closure = if r.mode == SearchMode::Exhaustive {
        let c = closure_from(field, r)?;
        Some(Closure {
            holds: c.holds(),
            minimizer_count: c.minimizers.len(),
            pairs_checked: c.pairs_checked,
            maximal_minimizer: matrix_rows(field, &c.maximal),
        })
    } else {
        None
    };
    Ok(Row {
        e: r.e,
        value: rat(&r.minimum),
        value_decimal: decimal(&r.minimum),
        upper_bound: r.is_upper_bound(),
        argmin: matrix_rows(field, r.argmin()),
        candidate_count: r.candidates.len(),
        candidate_values: r.value_set().iter().map(rat).collect(),
        socle_dimension: r.socle_dimension,
        paths_agree: r.paths_agree(),
        rank_path_checked: r.rank_path_checked,
        closure,
    })
}

pub fn run(instance: &Instance, name: &str, opts: &RunOptions) -> Result<Outcome> {
    let field = Field::new(instance.field.clone())?;
    let res = resolve(instance, opts, &field)?;
    let mut pres = instance.presentation(res.order)?;
    let dim_override = opts.dim.or(instance.task.as_ref().and_then(|t| t.dim));
    if let Some(d) = dim_override {
        pres = pres.with_dimension(d);
    }
    let ring = pres.ring().clone();
    let i0 = instance.ideal_generators(&ring, &res.ideal)?;

    let mut report = Report {
        instance: name.to_string(),
        task: res.kind.as_str().to_string(),
        field: instance.field.to_string(),
        variables: instance.vars.clone(),
        defining: instance.defining.clone(),
        order: res.order.to_string(),
        ideal: IdealRef {
            name: res.ideal.clone(),
            generators: instance.ideal(&res.ideal)?.to_vec(),
        },
        dimension: Dimension {
            value: pres.dimension(),
            source: pres.dimension_source().as_str().to_string(),
        },
        mode: None,
        rows: Vec::new(),
        hk: None,
        gamma: None,
        checks: None,
        oracle: None,
        differences: Vec::new(),
        c_emp: None,
        limit_interval: None,
        groebner_bases: None,
        warnings: Vec::new(),
    };
    let mut failure = None;

    match res.kind {
        TaskKind::Hk => {
            let rows = hk_function(&pres, &i0, res.e_max)?;
            report.hk = Some(
                rows.iter()
                    .map(|h| HkEntry {
                        e: h.e,
                        length: h.length,
                        normalized: rat(&h.normalized),
                        normalized_decimal: decimal(&h.normalized),
                    })
                    .collect(),
            );
        }
        TaskKind::Srel | TaskKind::Srat | TaskKind::OracleDiff => {
            let rank1 = res.kind == TaskKind::Srat;
            let sig = signature_report(&pres, &i0, res.e_max, &res.search, rank1)?;
            report.mode = sig.rows.first().map(|r| r.mode.as_str().to_string());
            report.rows = sig.rows.iter().map(|r| row_from(&field, r)).collect::<Result<_>>()?;
            report.differences = sig
                .convergence
                .differences
                .iter()
                .map(|d| Difference {
                    e: d.e,
                    e_prime: d.e_prime,
                    difference: rat(&d.difference),
                    scaled: rat(&d.scaled),
                })
                .collect();
            report.c_emp = sig.convergence.c_emp.as_ref().map(rat);
            report.limit_interval = sig.convergence.limit_interval().map(|i| IntervalOut {
                e: i.e,
                lower: rat(&i.lower),
                upper: rat(&i.upper),
            });
            report.warnings = sig.warnings.clone();
            if res.kind == TaskKind::OracleDiff {
                let field = &field;
                report.oracle = Some(
                    sig.rows
                        .iter()
                        .flat_map(|r| {
                            r.candidates.iter().map(move |c| OracleEntry {
                                e: r.e,
                                matrix: matrix_rows(field, &c.matrix),
                                groebner: rat(&c.value.value),
                                rank: c.rank_value.as_ref().map(rat),
                                agree: c.paths_agree(),
                            })
                        })
                        .collect(),
                );
            }
            if !sig.paths_agree() {
                failure = Some("the Gröbner and rank-formula paths disagree".into());
            }
            if report.rows.iter().any(|r| r.closure.as_ref().is_some_and(|c| !c.holds)) {
                failure = Some("the set of minimizers is not closed under sums".into());
            }
        }
        TaskKind::Gamma => {
            let rep = gamma_report(&pres, &i0, res.e, &res.gamma, &res.levels, &res.search)?;
            report.gamma = Some(gamma_section(&field, &rep, &res));
            report.warnings = presentation_warnings(&pres, &i0);
            report
                .warnings
                .push("bounds come from sampled rank-1 candidates and are upper bounds for s^e at each level".into());
            if !rep.preserved() || !rep.monotone() {
                failure = Some("a carried candidate changed value or a bound increased".into());
            }
        }
        TaskKind::Verify => {
            let checks = verify_checks(&pres, &i0, res.e_max, &res.search)?;
            if let Some(c) = checks.iter().find(|c| !c.passed) {
                failure = Some(format!("check `{}` failed: {}", c.name, c.detail));
            }
            report.checks = Some(checks);
            report.warnings = presentation_warnings(&pres, &i0);
        }
    }

    if opts.emit_gb {
        let mut dumps = vec![GroebnerDump {
            label: "J".into(),
            generators: pres.ambient().generators().iter().map(|g| ring.format(g)).collect(),
        }];
        dumps.push(GroebnerDump {
            label: format!("J + {}", res.ideal),
            generators: pres.ideal_basis(&i0)?.generators().iter().map(|g| ring.format(g)).collect(),
        });
        for e in 1..=res.e_max {
            dumps.push(GroebnerDump {
                label: format!("J + {}^[p^{e}]", res.ideal),
                generators: pres.bracket_basis(&i0, e)?.generators().iter().map(|g| ring.format(g)).collect(),
            });
        }
        report.groebner_bases = Some(dumps);
    }
    Ok(Outcome { report, failure })
}

fn gamma_section(field: &Field, rep: &GammaReport, res: &Resolved) -> GammaSection {
    let sample = match &res.search.sample {
        Some(s) => s.iter().map(|c| field.format(c)).collect::<Vec<_>>().join(", "),
        None => default_sample(field).iter().map(|c| field.format(c)).collect::<Vec<_>>().join(", "),
    };
    GammaSection {
        e: rep.e,
        gamma: rep.gamma.clone(),
        sample: format!("lines through vectors with entries in {{{sample}}}, pushed forward between levels"),
        levels: rep
            .levels
            .iter()
            .map(|l| {
                let lf = Field::new(l.field.clone()).expect("field from a successful run");
                GammaRow {
                    level: l.level,
                    field: l.field.to_string(),
                    bound: rat(&l.bound),
                    bound_decimal: decimal(&l.bound),
                    argmin: matrix_rows(&lf, &l.argmin),
                    candidate_count: l.candidates.len(),
                    carried: l.carried,
                    preserved: l.preserved,
                }
            })
            .collect(),
        monotone: rep.monotone(),
        preserved: rep.preserved(),
        stabilized_from: rep.stabilized_from(),
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Runs every invariant that applies to `(R, I0)` for levels `1..=e_max`.
pub fn verify_checks(pres: &LocalRingPresentation, i0: &[Polynomial], e_max: u32, opts: &SearchOptions) -> Result<Vec<Check>> {
    let field = pres.field().clone();
    let ring = pres.ring().clone();
    let mut checks = Vec::new();
    let finite = !field.is_function_field();

    let small = ArtinAlgebra::from_groebner(pres.ideal_basis(i0)?)?;
    let structure = small.verify_structure_constants();
    checks.push(check(
        "structure-constants",
        structure.is_ok(),
        structure.err().map_or(format!("R/I0 of dimension {}", small.dim()), |e| e.to_string()),
    ));
    let soc = socle(&small);
    let socle_ok = soc
        .lifts
        .iter()
        .all(|eps| (0..ring.nvars()).all(|v| ring.mul(&ring.var(v), eps).is_ok_and(|f| small.groebner().contains(&f))));
    checks.push(check("socle-annihilated", socle_ok, format!("socle dimension {}", soc.dim())));

    let hk = hk_function(pres, i0, e_max)?;
    let monotone = hk.windows(2).all(|w| w[1].length >= w[0].length);
    let lengths: Vec<String> = hk.iter().map(|h| h.length.to_string()).collect();
    checks.push(check("hk-monotone", monotone, format!("lengths {}", lengths.join(", "))));

    if let Some(first) = i0.iter().find(|g| !g.is_zero()) {
        let redundant = ring.mul(first, &ring.var(0))?;
        let extended: Vec<Polynomial> = i0.iter().cloned().chain(std::iter::once(redundant)).collect();
        let hk2 = hk_function(pres, &extended, e_max)?;
        let same = hk.iter().zip(&hk2).all(|(a, b)| a.length == b.length);
        checks.push(check("generator-independence", same, "redundant generator x_1*g_1 added"));
    }

    let other = match ring.order().kind {
        OrderKind::Grevlex => OrderKind::Lex,
        OrderKind::Lex => OrderKind::Grevlex,
    };
    let reordered = ring.reordered(crate::poly::MonomialOrder::new(other, ring.nvars()));
    let adopt = |fs: &[Polynomial]| fs.iter().map(|f| reordered.adopt(f)).collect::<Vec<_>>();
    let gens: Vec<Polynomial> = pres.defining().iter().chain(i0).cloned().collect();
    let l1 = buchberger(&ring, &gens)?.colength()?;
    let l2 = buchberger(&reordered, &adopt(&gens))?.colength()?;
    checks.push(check("order-independence", l1 == l2, format!("colength {l1} under both orders")));

    for e in 1..=e_max {
        let rank1 = opts.rank1_only || !finite;
        let min = if rank1 { s_rat_trunc(pres, i0, e, opts)? } else { s_trunc_min(pres, i0, e, opts)? };
        checks.push(check(
            &format!("dual-path e={e}"),
            min.paths_agree() && min.rank_path_checked,
            format!("{} candidates", min.candidates.len()),
        ));

        let lq0 = pres.bracket_basis(i0, e)?.colength()?;
        let bound = BigRational::from_integer(BigInt::from(lq0));
        let den_bound = pres.frobenius_scale(e) * factorial(small.dim());
        let grid = min.candidates.iter().all(|c| {
            let v = &c.value.value;
            *v >= BigRational::zero() && *v <= bound && (&den_bound % v.denom()).is_zero()
        });
        checks.push(check(&format!("grid-membership e={e}"), grid, format!("values in [0, {lq0}]")));

        if pres.defining().is_empty() {
            let unit = min.candidates.iter().all(|c| c.value.value.is_one());
            checks.push(check(&format!("regular-unit-value e={e}"), unit, "polynomial ring"));
        }

        if finite {
            let rat = s_rat_trunc(pres, i0, e, opts)?;
            checks.push(check(
                &format!("rank1-upper-bound e={e}"),
                rat.minimum >= min.minimum,
                format!("s^(e,1) = {}, s^e = {}", rat.minimum, min.minimum),
            ));
        }

        if min.mode == SearchMode::Exhaustive {
            let cert = closure_from(&field, &min)?;
            checks.push(check(
                &format!("minimizer-closure e={e}"),
                cert.holds(),
                format!("{} minimizers, {} pairs", cert.minimizers.len(), cert.pairs_checked),
            ));

            // Row-space invariance: doubling a row of the argmin changes nothing.
            let m = min.argmin();
            let doubled = m.stack(&Matrix::from_rows(vec![m.row(0).to_vec()])?)?;
            let ctx = crate::signature::LevelContext::new(pres, i0, e, opts)?;
            let a = ctx.evaluate(m)?;
            let b = ctx.evaluate(&doubled)?;
            checks.push(check(
                &format!("row-space-invariance e={e}"),
                a.value == b.value && a.rank_value == b.rank_value,
                "argmin with a repeated row",
            ));
        }

        if matches!(field.spec().kind, crate::field::FieldKind::Prime) && e == 1 {
            match flat_invariance_check(pres, i0, e, 2, opts) {
                Ok(cert) => checks.push(check(
                    "flat-invariance F_p -> F_p^2",
                    cert.holds(),
                    format!("minima {} and {}", cert.source.minimum, cert.target.minimum),
                )),
                Err(err) if err.is_budget() => {
                    checks.push(check("flat-invariance F_p -> F_p^2", true, format!("skipped: {err}")))
                }
                Err(err) => return Err(err),
            }
        }

        if field.is_function_field() && e == 1 {
            let names = field.generator_names();
            let rep = gamma_report(pres, i0, e, &names, &[0, 1], opts)?;
            checks.push(check(
                "gamma-monotone",
                rep.preserved() && rep.monotone(),
                format!("bounds {}", rep.levels.iter().map(|l| l.bound.to_string()).collect::<Vec<_>>().join(", ")),
            ));
        }
    }
    Ok(checks)
}
