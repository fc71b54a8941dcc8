//! Base change of presentations: finite extensions of the prime field, and
//! adjoining `p^level`-th roots of some transcendentals of a rational
//! function field.
//!
//! `k^{Γ,level}` is modelled as a fresh rational function field in which
//! each `t_i` with `i ∈ Γ` is replaced by `u_i`, standing for
//! `t_i^(1/p^level)`; the embedding sends `t_i` to `u_i^(p^level)`.

use std::collections::HashSet;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{first_irreducible, Field, FieldElement, FieldKind, FieldSpec};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::signature::{
    s_trunc, s_trunc_min, LevelContext, LocalRingPresentation, MinimumResult, SearchOptions,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseChangeSpec {
    /// `F_p -> F_{p^degree}`.
    ExtendPrimeField { degree: u32 },
    /// Adjoin `p^level`-th roots of the named transcendentals.
    Gamma { gamma: Vec<String>, level: u32 },
}

/// Name of the transcendental standing for `t^(1/root)`.
pub fn root_name(t: &str, root: u64) -> String {
    format!("{t}_r{root}")
}

/// The coefficient map of a base change.
#[derive(Clone, Debug)]
pub struct FieldMap {
    source: Field,
    target: Field,
    /// Exponent applied to each transcendental, for function fields.
    factors: Option<Vec<u32>>,
}

impl FieldMap {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.source.spec() == self.target.spec()
    }

    pub fn element(&self, a: &FieldElement) -> FieldElement {
        if self.is_identity() {
            return a.clone();
        }
        match &self.factors {
            Some(f) => self.source.substitute_powers(a, f, &self.target),
            None => self.source.embed_prime(a, &self.target),
        }
    }

    pub fn matrix(&self, m: &Matrix) -> Matrix {
        m.map(|c| self.element(c))
    }
}

fn pick_generator_name(taken: &[String]) -> String {
    ["w", "a", "g", "zeta"]
        .iter()
        .map(|s| s.to_string())
        .find(|s| !taken.contains(s))
        .unwrap_or_else(|| format!("w{}", taken.len()))
}

fn target_field(source: &Field, spec: &BaseChangeSpec, vars: &[String]) -> Result<(Field, Option<Vec<u32>>)> {
    let p = source.characteristic();
    match spec {
        BaseChangeSpec::ExtendPrimeField { degree } => {
            if !matches!(source.spec().kind, FieldKind::Prime) {
                return Err(Error::IncompatibleSpec("prime-field extension needs a prime coefficient field".into()));
            }
            if *degree == 0 {
                return Err(Error::IncompatibleSpec("extension degree must be positive".into()));
            }
            if *degree == 1 {
                return Ok((source.clone(), None));
            }
            let modulus = first_irreducible(p, *degree);
            let field = Field::new(FieldSpec::extension(p, modulus, pick_generator_name(vars)))
                .map_err(|e| Error::IncompatibleSpec(e.to_string()))?;
            Ok((field, None))
        }
        BaseChangeSpec::Gamma { gamma, level } => {
            let FieldKind::Function { transcendentals } = &source.spec().kind else {
                return Err(Error::IncompatibleSpec("root adjunction needs a rational function field".into()));
            };
            if let Some(g) = gamma.iter().find(|g| !transcendentals.contains(g)) {
                return Err(Error::IncompatibleSpec(format!("`{g}` is not a transcendental of {}", source.spec())));
            }
            if gamma.is_empty() || *level == 0 {
                return Ok((source.clone(), None));
            }
            let root = (p as u64)
                .checked_pow(*level)
                .filter(|r| *r <= u32::MAX as u64)
                .ok_or_else(|| Error::IncompatibleSpec(format!("level {level} is too large")))?;
            let mut names = Vec::new();
            let mut factors = Vec::new();
            for t in transcendentals {
                if gamma.contains(t) {
                    names.push(root_name(t, root));
                    factors.push(root as u32);
                } else {
                    names.push(t.clone());
                    factors.push(1);
                }
            }
            let unique: HashSet<&String> = names.iter().collect();
            if unique.len() != names.len() || names.iter().any(|n| vars.contains(n)) {
                return Err(Error::IncompatibleSpec("fresh transcendental names collide".into()));
            }
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let field = Field::new(FieldSpec::function(p, &refs)).map_err(|e| Error::IncompatibleSpec(e.to_string()))?;
            Ok((field, Some(factors)))
        }
    }
}

/// The coefficient map for `spec` without building a presentation.
pub fn field_map(source: &Field, spec: &BaseChangeSpec, vars: &[String]) -> Result<FieldMap> {
    let (target, factors) = target_field(source, spec, vars)?;
    Ok(FieldMap {
        source: source.clone(),
        target,
        factors,
    })
}

/// The same generators read over the new coefficient field.
pub fn base_change(pres: &LocalRingPresentation, spec: &BaseChangeSpec) -> Result<(LocalRingPresentation, FieldMap)> {
    let map = field_map(pres.field(), spec, pres.ring().vars())?;
    let ring = pres.ring().over(map.target.clone());
    let defining = pres
        .defining()
        .iter()
        .map(|g| pres.ring().map_coefficients(g, &ring, |c| map.element(c)))
        .collect();
    let mut out = LocalRingPresentation::new(ring, defining)?;
    if pres.dimension_source() == crate::signature::DimensionSource::User {
        out = out.with_dimension(pres.dimension());
    }
    Ok((out, map))
}

pub fn map_polynomials(pres: &LocalRingPresentation, target: &LocalRingPresentation, map: &FieldMap, gens: &[Polynomial]) -> Vec<Polynomial> {
    gens.iter()
        .map(|g| pres.ring().map_coefficients(g, target.ring(), |c| map.element(c)))
        .collect()
}

/// Outcome of comparing `s^e` before and after `F_p -> F_{p^m}`.
#[derive(Clone, Debug)]
pub struct FlatCertificate {
    pub e: u32,
    pub degree: u32,
    pub source: MinimumResult,
    pub target: MinimumResult,
    /// Every socle ideal of `R` keeps its value after extension.
    pub values_preserved: bool,
    /// `S^e(R) ⊆ S^e(R ⊗ F_{p^m})`.
    pub set_contained: bool,
    pub minima_equal: bool,
}

impl FlatCertificate {
    pub fn holds(&self) -> bool {
        self.values_preserved && self.set_contained && self.minima_equal && self.source.minimum >= self.target.minimum
    }
}

pub fn flat_invariance_check(
    pres: &LocalRingPresentation,
    i0: &[Polynomial],
    e: u32,
    degree: u32,
    opts: &SearchOptions,
) -> Result<FlatCertificate> {
    let exhaustive = SearchOptions {
        rank1_only: false,
        ..opts.clone()
    };
    let (ext, map) = base_change(pres, &BaseChangeSpec::ExtendPrimeField { degree })?;
    let ext_i0 = map_polynomials(pres, &ext, &map, i0);
    let source = s_trunc_min(pres, i0, e, &exhaustive)?;
    let target = s_trunc_min(&ext, &ext_i0, e, &exhaustive)?;

    let ctx = LevelContext::new(pres, i0, e, &SearchOptions { dual_path: false, ..opts.clone() })?;
    let mut values_preserved = true;
    for cand in &source.candidates {
        let extra = crate::artin::ideal_from_matrix(pres.ring(), ctx.socle(), &cand.matrix)?;
        let ext_i = map_polynomials(pres, &ext, &map, &[i0, &extra[..]].concat());
        let after = s_trunc(&ext, &ext_i0, &ext_i, e)?;
        if after.value != cand.value.value {
            values_preserved = false;
        }
    }
    let target_set = target.value_set();
    let set_contained = source.value_set().is_subset(&target_set);
    let minima_equal = source.minimum == target.minimum;
    Ok(FlatCertificate {
        e,
        degree,
        source,
        target,
        values_preserved,
        set_contained,
        minima_equal,
    })
}

/// One level of a root-adjunction experiment.
#[derive(Clone, Debug)]
pub struct GammaLevel {
    pub level: u32,
    pub field: FieldSpec,
    /// Sampled upper bound for `s^e` at this level.
    pub bound: BigRational,
    pub argmin: Matrix,
    /// Candidates evaluated at this level, in order; earlier levels'
    /// candidates come first, pushed forward.
    pub candidates: Vec<(Matrix, BigRational)>,
    /// Number of candidates carried over from earlier levels.
    pub carried: usize,
    /// Every carried candidate kept its value.
    pub preserved: bool,
}

#[derive(Clone, Debug)]
pub struct GammaReport {
    pub e: u32,
    pub gamma: Vec<String>,
    pub levels: Vec<GammaLevel>,
}

impl GammaReport {
    /// Bounds never increase from one level to the next.
    pub fn monotone(&self) -> bool {
        self.levels.windows(2).all(|w| w[1].bound <= w[0].bound)
    }

    pub fn preserved(&self) -> bool {
        self.levels.iter().all(|l| l.preserved)
    }

    /// First level from which the bound no longer changes.
    pub fn stabilized_from(&self) -> Option<u32> {
        let last = &self.levels.last()?.bound;
        let tail = self.levels.iter().rev().take_while(|l| &l.bound == last).count();
        Some(self.levels[self.levels.len() - tail].level)
    }
}

/// Sampled `s^e` bounds after adjoining `p^level`-th roots of `gamma`, for
/// each level in increasing order. The sample at each level contains the
/// images of all earlier samples, so the bounds are non-increasing.
pub fn gamma_report(
    pres: &LocalRingPresentation,
    i0: &[Polynomial],
    e: u32,
    gamma: &[String],
    levels: &[u32],
    opts: &SearchOptions,
) -> Result<GammaReport> {
    if !pres.field().is_function_field() {
        return Err(Error::IncompatibleSpec("root adjunction needs a rational function field".into()));
    }
    let mut levels = levels.to_vec();
    levels.sort_unstable();
    levels.dedup();
    let FieldKind::Function { transcendentals } = &pres.field().spec().kind else {
        unreachable!("checked above")
    };
    let mut out: Vec<GammaLevel> = Vec::new();
    let mut previous: Option<(u32, Field)> = None;
    for &level in &levels {
        let spec = BaseChangeSpec::Gamma {
            gamma: gamma.to_vec(),
            level,
        };
        let (changed, map) = base_change(pres, &spec)?;
        let changed_i0 = map_polynomials(pres, &changed, &map, i0);

        // Carry the previous level's candidates along `u_prev -> u^(p^(level - prev))`.
        let mut cands: Vec<Matrix> = Vec::new();
        let mut carried_values: Vec<BigRational> = Vec::new();
        if let (Some((prev_level, prev_field)), Some(prev)) = (&previous, out.last()) {
            let step = field_step(prev_field, map.target(), transcendentals, gamma, level - prev_level);
            for (m, v) in &prev.candidates {
                cands.push(step.matrix(m));
                carried_values.push(v.clone());
            }
        }
        let carried = cands.len();
        let ctx = LevelContext::new(&changed, &changed_i0, e, opts)?;
        let sample = opts.sample.as_ref().map(|s| s.iter().map(|c| map.element(c)).collect::<Vec<_>>());
        let fresh = crate::artin::sampled_lines(
            map.target(),
            ctx.socle().dim(),
            &sample.unwrap_or_else(|| crate::artin::default_sample(map.target())),
            opts.budget,
        )?;
        let mut seen: HashSet<Matrix> = cands.iter().cloned().collect();
        for m in fresh {
            if seen.insert(m.clone()) {
                cands.push(m);
            }
        }
        let values = ctx.evaluate_all(&cands, opts.parallel)?;
        let preserved = values.iter().zip(&carried_values).all(|(v, old)| v.value.value == *old);
        let candidates: Vec<(Matrix, BigRational)> = values.into_iter().map(|v| (v.matrix, v.value.value)).collect();
        let (argmin, bound) = candidates
            .iter()
            .min_by(|a, b| a.1.cmp(&b.1))
            .cloned()
            .ok_or_else(|| Error::InvalidPresentation("no candidate socle ideals".into()))?;
        out.push(GammaLevel {
            level,
            field: map.target().spec().clone(),
            bound,
            argmin,
            candidates,
            carried,
            preserved,
        });
        previous = Some((level, map.target().clone()));
    }
    Ok(GammaReport {
        e,
        gamma: gamma.to_vec(),
        levels: out,
    })
}

/// The map between two root-adjunction levels of the same base field,
/// whose transcendentals sit at the same positions as `original`.
fn field_step(from: &Field, to: &Field, original: &[String], gamma: &[String], levels_up: u32) -> FieldMap {
    let factor = from.characteristic().pow(levels_up);
    let factors = original.iter().map(|t| if gamma.contains(t) { factor } else { 1 }).collect();
    FieldMap {
        source: from.clone(),
        target: to.clone(),
        factors: Some(factors),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::OrderKind;

    fn func_pres(defining: &[&str]) -> LocalRingPresentation {
        let k = Field::new(FieldSpec::function(2, &["t"])).unwrap();
        LocalRingPresentation::parse(k, &["x", "y"], OrderKind::Grevlex, defining).unwrap()
    }

    #[test]
    fn extend_prime_field_keeps_generators() {
        let cusp = LocalRingPresentation::parse(Field::prime(2).unwrap(), &["x", "y"], OrderKind::Grevlex, &["y^2 + x^3"]).unwrap();
        let (ext, _) = base_change(&cusp, &BaseChangeSpec::ExtendPrimeField { degree: 2 }).unwrap();
        assert_eq!(ext.field().size(), Some(4));
        assert_eq!(ext.ring().format(&ext.defining()[0]), "x^3 + y^2");
    }

    #[test]
    fn gamma_substitutes_roots() {
        let r = func_pres(&["y^2 + t*x^2 + x^3"]);
        let (changed, _) = base_change(
            &r,
            &BaseChangeSpec::Gamma {
                gamma: vec!["t".into()],
                level: 1,
            },
        )
        .unwrap();
        assert_eq!(changed.field().spec().to_string(), "GF(2)(t_r2)");
        assert_eq!(changed.ring().format(&changed.defining()[0]), changed.ring().format(&changed.ring().parse("y^2 + t_r2^2*x^2 + x^3").unwrap()));

        let (same, _) = base_change(
            &r,
            &BaseChangeSpec::Gamma {
                gamma: vec![],
                level: 3,
            },
        )
        .unwrap();
        assert_eq!(same.field().spec(), r.field().spec());
        assert_eq!(same.defining(), r.defining());
    }

    #[test]
    fn gamma_rejects_unknown_names() {
        let r = func_pres(&[]);
        let err = base_change(
            &r,
            &BaseChangeSpec::Gamma {
                gamma: vec!["s".into()],
                level: 1,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::IncompatibleSpec(_)));
        let prime = LocalRingPresentation::parse(Field::prime(2).unwrap(), &["x"], OrderKind::Grevlex, &[]).unwrap();
        assert!(base_change(&prime, &BaseChangeSpec::Gamma { gamma: vec![], level: 1 }).is_err());
    }

    #[test]
    fn flat_check_on_cusp() {
        let cusp = LocalRingPresentation::parse(Field::prime(2).unwrap(), &["x", "y"], OrderKind::Grevlex, &["y^2 + x^3"]).unwrap();
        let i0 = cusp.parse_ideal(&["x"]).unwrap();
        let cert = flat_invariance_check(&cusp, &i0, 1, 2, &SearchOptions::default()).unwrap();
        assert!(cert.holds());
        assert_eq!(cert.target.minimum, BigRational::from_integer(0.into()));
    }

    #[test]
    fn gamma_levels_on_unused_transcendental() {
        let r = func_pres(&["y^2 + x^3"]);
        let i0 = r.parse_ideal(&["x"]).unwrap();
        let rep = gamma_report(&r, &i0, 1, &["t".into()], &[0, 1, 2], &SearchOptions::default()).unwrap();
        assert!(rep.monotone() && rep.preserved());
        assert!(rep.levels.iter().all(|l| l.bound == rep.levels[0].bound));
    }
}
