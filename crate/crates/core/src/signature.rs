//! Truncated relative signatures `s^e_{I0}(R, I)`, their minima over socle
//! ideals, Hilbert–Kunz functions, convergence diagnostics and the
//! minimizer-closure certificate.
//!
//! `R` is always a polynomial ring modulo an ambient ideal `J`, localized at
//! the origin. Ideals of `R` are given by generator lists; every length is
//! the colength of `J + (generators)` in the polynomial ring.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::artin::{
    default_sample, enumerate_projective_points, enumerate_socle_subspaces, frobenius_coordinates, ideal_from_matrix,
    s_via_rank, sampled_lines, socle, ArtinAlgebra, FrobeniusCoordinates, SocleData,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::linalg::Matrix;
use crate::poly::{OrderKind, PolyRing, Polynomial};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Largest big-algebra dimension for which the rank path is run by default.
pub const DEFAULT_RANK_PATH_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimensionSource {
    Computed,
    User,
}

impl DimensionSource {
    pub fn as_str(self) -> &'static str {
        match self {
            DimensionSource::Computed => "computed",
            DimensionSource::User => "user",
        }
    }
}

/// `k[x_1..x_n]/J` localized at the origin.
#[derive(Clone, Debug)]
pub struct LocalRingPresentation {
    ring: PolyRing,
    defining: Vec<Polynomial>,
    ambient: GroebnerBasis,
    dimension: usize,
    dimension_source: DimensionSource,
}

impl LocalRingPresentation {
    pub fn new(ring: PolyRing, defining: Vec<Polynomial>) -> Result<Self> {
        if let Some(g) = defining.iter().find(|g| g.has_constant_term()) {
            return Err(Error::InvalidPresentation(format!(
                "defining generator `{}` does not vanish at the origin",
                ring.format(g)
            )));
        }
        let ambient = buchberger(&ring, &defining)?;
        let dimension = ambient.krull_dimension();
        Ok(LocalRingPresentation {
            ring,
            defining,
            ambient,
            dimension,
            dimension_source: DimensionSource::Computed,
        })
    }

    /// Convenience constructor from textual generators.
    pub fn parse(field: Field, vars: &[&str], order: OrderKind, defining: &[&str]) -> Result<Self> {
        let ring = PolyRing::new(field, vars, order);
        let defining = defining.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, defining)
    }

    pub fn with_dimension(mut self, d: usize) -> Self {
        self.dimension = d;
        self.dimension_source = DimensionSource::User;
        self
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn defining(&self) -> &[Polynomial] {
        &self.defining
    }

    pub fn ambient(&self) -> &GroebnerBasis {
        &self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn dimension_source(&self) -> DimensionSource {
        self.dimension_source
    }

    pub fn parse_ideal(&self, gens: &[&str]) -> Result<Vec<Polynomial>> {
        gens.iter().map(|g| self.ring.parse(g)).collect()
    }

    /// Gröbner basis of `J + (gens)`.
    pub fn ideal_basis(&self, gens: &[Polynomial]) -> Result<GroebnerBasis> {
        self.ambient.extend(gens)
    }

    /// Gröbner basis of `J + (gens)^[p^e]`, bracketing the given generators.
    pub fn bracket_basis(&self, gens: &[Polynomial], e: u32) -> Result<GroebnerBasis> {
        let powered = bracket(&self.ring, gens, e)?;
        self.ambient.extend(&powered)
    }

    /// `p^(e d)` as a big integer.
    pub fn frobenius_scale(&self, e: u32) -> BigInt {
        num_traits::pow(BigInt::from(self.field().characteristic()), e as usize * self.dimension)
    }
}

pub fn bracket(ring: &PolyRing, gens: &[Polynomial], e: u32) -> Result<Vec<Polynomial>> {
    gens.iter().map(|g| ring.frobenius_power(g, e)).collect()
}

fn primary_colength(gb: &GroebnerBasis, what: &str) -> Result<usize> {
    // The unit ideal arises as I = I0 + (1) when I0 is the maximal ideal.
    if gb.is_unit() {
        return Ok(0);
    }
    if !gb.is_primary_to_origin()? {
        return Err(Error::NotPrimaryToOrigin(what.to_string()));
    }
    gb.colength()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureValue {
    pub value: BigRational,
    /// `l(I^[q]/I0^[q])`.
    pub numerator_length: u64,
    /// `l(I/I0)`.
    pub denominator_length: u64,
    pub e: u32,
}

fn make_value(pres: &LocalRingPresentation, e: u32, num: usize, den: usize) -> SignatureValue {
    let scale = pres.frobenius_scale(e) * BigInt::from(den);
    SignatureValue {
        value: BigRational::new(BigInt::from(num), scale),
        numerator_length: num as u64,
        denominator_length: den as u64,
        e,
    }
}

/// `s^e_{I0}(R, I) = l(I^[q]/I0^[q]) / (p^(e d) l(I/I0))`.
pub fn s_trunc(pres: &LocalRingPresentation, i0: &[Polynomial], i: &[Polynomial], e: u32) -> Result<SignatureValue> {
    let gb0 = pres.ideal_basis(i0)?;
    let gbi = pres.ideal_basis(i)?;
    let l0 = primary_colength(&gb0, "J + I0 is not primary to the origin")?;
    let li = primary_colength(&gbi, "J + I is not primary to the origin")?;
    if !gbi.contains_ideal(&gb0) {
        return Err(Error::NotProperContainment("I does not contain I0".into()));
    }
    if gb0.contains_ideal(&gbi) {
        return Err(Error::NotProperContainment("I equals I0".into()));
    }
    let lq0 = primary_colength(&pres.bracket_basis(i0, e)?, "J + I0^[q] is not primary to the origin")?;
    let lqi = primary_colength(&pres.bracket_basis(i, e)?, "J + I^[q] is not primary to the origin")?;
    Ok(make_value(pres, e, lq0 - lqi, l0 - li))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkRow {
    pub e: u32,
    pub length: u64,
    pub normalized: BigRational,
}

/// `e ↦ l(R/I^[p^e])` and its normalization by `p^(e d)`, for `0 <= e <= e_max`.
pub fn hk_function(pres: &LocalRingPresentation, i: &[Polynomial], e_max: u32) -> Result<Vec<HkRow>> {
    (0..=e_max)
        .map(|e| {
            let gb = pres.bracket_basis(i, e)?;
            let length = primary_colength(&gb, "J + I^[q] is not primary to the origin")? as u64;
            Ok(HkRow {
                e,
                length,
                normalized: BigRational::new(BigInt::from(length), pres.frobenius_scale(e)),
            })
        })
        .collect()
}

/// How candidate socle ideals are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Every nonzero subspace of the socle.
    Exhaustive,
    /// Every line of the socle: ideals `I0 + (u)`.
    Rank1,
    /// Lines spanned by vectors with sampled coefficients; minima are upper bounds.
    SampledRank1,
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Rank1 => "rank1",
            SearchMode::SampledRank1 => "sampled-rank1",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    pub parallel: usize,
    pub rank1_only: bool,
    /// Also evaluate every candidate through the rank formula.
    pub dual_path: bool,
    pub rank_path_limit: usize,
    /// Coefficient sample for function fields; `None` means `{0, 1, t_i, t_i + 1}`.
    pub sample: Option<Vec<FieldElement>>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            parallel: 1,
            rank1_only: false,
            dual_path: true,
            rank_path_limit: DEFAULT_RANK_PATH_LIMIT,
            sample: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateValue {
    pub matrix: Matrix,
    pub value: SignatureValue,
    /// The same value through the rank formula, when that path ran.
    pub rank_value: Option<BigRational>,
}

impl CandidateValue {
    pub fn paths_agree(&self) -> bool {
        self.rank_value.as_ref().is_none_or(|r| *r == self.value.value)
    }
}

/// Everything that depends on `(R, I0, e)` but not on the candidate.
#[derive(Debug)]
pub struct LevelContext<'a> {
    pres: &'a LocalRingPresentation,
    e: u32,
    gb0: GroebnerBasis,
    gbq: GroebnerBasis,
    len0: usize,
    lenq: usize,
    socle: SocleData,
    rank: Option<(ArtinAlgebra, FrobeniusCoordinates)>,
}

impl<'a> LevelContext<'a> {
    pub fn new(pres: &'a LocalRingPresentation, i0: &[Polynomial], e: u32, opts: &SearchOptions) -> Result<Self> {
        let gb0 = pres.ideal_basis(i0)?;
        let small = ArtinAlgebra::from_groebner(gb0.clone())?;
        let len0 = small.dim();
        let socle = socle(&small);
        let gbq = pres.bracket_basis(i0, e)?;
        let lenq = primary_colength(&gbq, "J + I0^[q] is not primary to the origin")?;
        let rank = if opts.dual_path && lenq <= opts.rank_path_limit {
            let big = ArtinAlgebra::from_groebner(gbq.clone())?;
            let coords = frobenius_coordinates(&big, &socle, e)?;
            Some((big, coords))
        } else {
            None
        };
        Ok(LevelContext {
            pres,
            e,
            gb0,
            gbq,
            len0,
            lenq,
            socle,
            rank,
        })
    }

    pub fn socle(&self) -> &SocleData {
        &self.socle
    }

    pub fn colength_i0(&self) -> usize {
        self.len0
    }

    pub fn colength_i0_bracket(&self) -> usize {
        self.lenq
    }

    pub fn rank_path_enabled(&self) -> bool {
        self.rank.is_some()
    }

    pub fn evaluate(&self, m: &Matrix) -> Result<CandidateValue> {
        let ring = self.pres.ring();
        let gens = ideal_from_matrix(ring, &self.socle, m)?;
        let lj = self.gb0.extend(&gens)?.colength()?;
        let ljq = self.gbq.extend(&bracket(ring, &gens, self.e)?)?.colength()?;
        let value = make_value(self.pres, self.e, self.lenq - ljq, self.len0 - lj);
        let rank_value = match &self.rank {
            Some((big, coords)) => Some(s_via_rank(coords, big, m, self.pres.dimension() as u32)?.value),
            None => None,
        };
        Ok(CandidateValue {
            matrix: m.clone(),
            value,
            rank_value,
        })
    }

    /// Evaluates candidates in order; `parallel > 1` spreads the work over a
    /// thread pool without changing the result.
    pub fn evaluate_all(&self, candidates: &[Matrix], parallel: usize) -> Result<Vec<CandidateValue>> {
        let results: Vec<Result<CandidateValue>> = if parallel > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(parallel)
                .build()
                .map_err(|e| Error::Io(e.to_string()))?;
            pool.install(|| candidates.par_iter().map(|m| self.evaluate(m)).collect())
        } else {
            candidates.iter().map(|m| self.evaluate(m)).collect()
        };
        results.into_iter().collect()
    }
}

#[derive(Clone, Debug)]
pub struct MinimumResult {
    pub e: u32,
    pub mode: SearchMode,
    pub socle_dimension: usize,
    pub minimum: BigRational,
    /// Every minimizing candidate, in enumeration order; the first is the
    /// reported argmin.
    pub argmins: Vec<Matrix>,
    pub candidates: Vec<CandidateValue>,
    pub rank_path_checked: bool,
}

impl MinimumResult {
    pub fn argmin(&self) -> &Matrix {
        &self.argmins[0]
    }

    pub fn paths_agree(&self) -> bool {
        self.candidates.iter().all(CandidateValue::paths_agree)
    }

    /// The candidate-value set `S^e`.
    pub fn value_set(&self) -> BTreeSet<BigRational> {
        self.candidates.iter().map(|c| c.value.value.clone()).collect()
    }

    /// True when the minimum is only an upper bound for the true minimum.
    pub fn is_upper_bound(&self) -> bool {
        self.mode == SearchMode::SampledRank1
    }
}

fn candidates(field: &Field, n: usize, opts: &SearchOptions, rank1: bool) -> Result<(SearchMode, Vec<Matrix>)> {
    if field.is_function_field() {
        let sample = opts.sample.clone().unwrap_or_else(|| default_sample(field));
        return Ok((SearchMode::SampledRank1, sampled_lines(field, n, &sample, opts.budget)?));
    }
    if rank1 {
        Ok((SearchMode::Rank1, enumerate_projective_points(field, n, opts.budget)?.collect()))
    } else {
        Ok((SearchMode::Exhaustive, enumerate_socle_subspaces(field, n, opts.budget)?.collect()))
    }
}

/// Evaluates an explicit candidate list; used for pushed-forward samples.
pub fn s_trunc_min_over(
    pres: &LocalRingPresentation,
    i0: &[Polynomial],
    e: u32,
    candidates: &[Matrix],
    mode: SearchMode,
    opts: &SearchOptions,
) -> Result<MinimumResult> {
    let ctx = LevelContext::new(pres, i0, e, opts)?;
    minimum_from(&ctx, e, candidates, mode, opts)
}

fn minimum_from(
    ctx: &LevelContext<'_>,
    e: u32,
    candidates: &[Matrix],
    mode: SearchMode,
    opts: &SearchOptions,
) -> Result<MinimumResult> {
    let values = ctx.evaluate_all(candidates, opts.parallel)?;
    let minimum = values
        .iter()
        .map(|c| &c.value.value)
        .min()
        .cloned()
        .ok_or_else(|| Error::InvalidPresentation("no candidate socle ideals".into()))?;
    let argmins = values
        .iter()
        .filter(|c| c.value.value == minimum)
        .map(|c| c.matrix.clone())
        .collect();
    Ok(MinimumResult {
        e,
        mode,
        socle_dimension: ctx.socle().dim(),
        minimum,
        argmins,
        candidates: values,
        rank_path_checked: ctx.rank_path_enabled(),
    })
}

fn search(pres: &LocalRingPresentation, i0: &[Polynomial], e: u32, opts: &SearchOptions, rank1: bool) -> Result<MinimumResult> {
    let ctx = LevelContext::new(pres, i0, e, opts)?;
    let (mode, cands) = candidates(pres.field(), ctx.socle().dim(), opts, rank1)?;
    minimum_from(&ctx, e, &cands, mode, opts)
}

/// `s^e_{I0}(R)`: the minimum over all socle ideals. Over a function field
/// this falls back to sampled lines and the result is an upper bound.
pub fn s_trunc_min(pres: &LocalRingPresentation, i0: &[Polynomial], e: u32, opts: &SearchOptions) -> Result<MinimumResult> {
    search(pres, i0, e, opts, opts.rank1_only)
}

/// `s^{e,1}_{I0}(R)`: the minimum over ideals `I0 + (u)`, `u` a nonzero socle element.
pub fn s_rat_trunc(pres: &LocalRingPresentation, i0: &[Polynomial], e: u32, opts: &SearchOptions) -> Result<MinimumResult> {
    search(pres, i0, e, opts, true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledDifference {
    pub e: u32,
    pub e_prime: u32,
    /// `|s^e - s^e'|`.
    pub difference: BigRational,
    /// `p^e |s^e - s^e'|`.
    pub scaled: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub e: u32,
    pub lower: BigRational,
    pub upper: BigRational,
}

impl Interval {
    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub differences: Vec<ScaledDifference>,
    /// `max p^e |s^e - s^e'|` over all pairs; `None` with fewer than two levels.
    pub c_emp: Option<BigRational>,
    /// For every level `k` past the first, the bracket `s^k ± C_k p^-k`
    /// one would report when stopping at `k`, where `C_k` is the maximum
    /// scaled difference among levels `<= k`.
    pub limit_intervals: Vec<Interval>,
}

impl ConvergenceReport {
    /// The bracket at the largest level.
    pub fn limit_interval(&self) -> Option<&Interval> {
        self.limit_intervals.last()
    }

    /// True when each successive bracket lies inside the previous one.
    pub fn intervals_nested(&self) -> bool {
        self.limit_intervals.windows(2).all(|w| w[0].contains_interval(&w[1]))
    }

    /// True when every scaled difference is at most `C_emp`.
    pub fn differences_bounded(&self) -> bool {
        match &self.c_emp {
            Some(c) => self.differences.iter().all(|d| d.scaled <= *c),
            None => self.differences.is_empty(),
        }
    }
}

/// Scaled pairwise differences of per-level values, their maximum `C_emp`,
/// and the extrapolation brackets.
pub fn convergence_report(values: &[(u32, BigRational)], p: u32) -> ConvergenceReport {
    let mut values = values.to_vec();
    values.sort_by_key(|(e, _)| *e);
    let pow = |e: u32| BigRational::from_integer(num_traits::pow(BigInt::from(p), e as usize));
    let mut differences = Vec::new();
    for (a, (e, s)) in values.iter().enumerate() {
        for (e2, s2) in &values[a + 1..] {
            let difference = (s - s2).abs();
            let scaled = &difference * pow(*e);
            differences.push(ScaledDifference {
                e: *e,
                e_prime: *e2,
                difference,
                scaled,
            });
        }
    }
    let c_emp = differences.iter().map(|d| d.scaled.clone()).max();
    let limit_intervals = values
        .iter()
        .skip(1)
        .map(|(k, s)| {
            let c = differences
                .iter()
                .filter(|d| d.e_prime <= *k)
                .map(|d| d.scaled.clone())
                .max()
                .unwrap_or_else(BigRational::zero);
            let radius = c / pow(*k);
            Interval {
                e: *k,
                lower: s - &radius,
                upper: s + &radius,
            }
        })
        .collect();
    ConvergenceReport {
        differences,
        c_emp,
        limit_intervals,
    }
}

/// Result of checking that minimizing socle ideals are closed under sums.
#[derive(Clone, Debug)]
pub struct ClosureCertificate {
    pub e: u32,
    pub minimum: BigRational,
    pub minimizers: Vec<Matrix>,
    pub pairs_checked: usize,
    /// Pairs whose sum is not a minimizer; empty when closed.
    pub violations: Vec<(usize, usize)>,
    /// The sum of all minimizers, in reduced echelon form.
    pub maximal: Matrix,
    pub maximal_value: BigRational,
}

impl ClosureCertificate {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.maximal_value == self.minimum
    }
}

fn span(field: &Field, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    Ok(a.stack(b)?.rref(field).0)
}

/// Exhaustively verifies that pairwise sums of minimizers are minimizers
/// and that the sum of all of them attains the minimum.
pub fn minimizer_closure_check(
    pres: &LocalRingPresentation,
    i0: &[Polynomial],
    e: u32,
    opts: &SearchOptions,
) -> Result<ClosureCertificate> {
    if pres.field().is_function_field() {
        return Err(Error::InfiniteResidueField);
    }
    let result = search(pres, i0, e, opts, false)?;
    closure_from(pres.field(), &result)
}

/// The closure check on an exhaustive search result already in hand.
pub fn closure_from(field: &Field, result: &MinimumResult) -> Result<ClosureCertificate> {
    if result.mode != SearchMode::Exhaustive {
        return Err(Error::InvalidPresentation("closure check needs an exhaustive search".into()));
    }
    let lookup: HashMap<&Matrix, &BigRational> =
        result.candidates.iter().map(|c| (&c.matrix, &c.value.value)).collect();
    let value_of = |m: &Matrix| -> Result<BigRational> {
        lookup
            .get(m)
            .map(|v| (*v).clone())
            .ok_or_else(|| Error::InvalidPresentation("sum of subspaces missing from the enumeration".into()))
    };
    let mins = &result.argmins;
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for a in 0..mins.len() {
        for b in a + 1..mins.len() {
            pairs_checked += 1;
            if value_of(&span(field, &mins[a], &mins[b])?)? != result.minimum {
                violations.push((a, b));
            }
        }
    }
    let mut maximal = mins[0].clone();
    for m in &mins[1..] {
        maximal = span(field, &maximal, m)?;
    }
    let maximal_value = value_of(&maximal)?;
    Ok(ClosureCertificate {
        e: result.e,
        minimum: result.minimum.clone(),
        minimizers: mins.clone(),
        pairs_checked,
        violations,
        maximal,
        maximal_value,
    })
}

/// Per-level minima plus convergence data for levels `1..=e_max`.
#[derive(Clone, Debug)]
pub struct SignatureReport {
    pub dimension: usize,
    pub dimension_source: DimensionSource,
    pub rows: Vec<MinimumResult>,
    pub convergence: ConvergenceReport,
    pub warnings: Vec<String>,
}

impl SignatureReport {
    pub fn paths_agree(&self) -> bool {
        self.rows.iter().all(MinimumResult::paths_agree)
    }
}

pub const EQUIDIMENSIONAL_DISCLAIMER: &str =
    "formal equidimensionality of R is assumed, not checked";
pub const HEURISTIC_BRACKET_WARNING: &str =
    "limit_interval uses the empirical constant C_emp and is a heuristic bracket, not a proven bound";

pub fn signature_report(
    pres: &LocalRingPresentation,
    i0: &[Polynomial],
    e_max: u32,
    opts: &SearchOptions,
    rank1: bool,
) -> Result<SignatureReport> {
    let rows = (1..=e_max)
        .map(|e| search(pres, i0, e, opts, rank1 || opts.rank1_only))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<(u32, BigRational)> = rows.iter().map(|r| (r.e, r.minimum.clone())).collect();
    let convergence = convergence_report(&values, pres.field().characteristic());
    let mut warnings = presentation_warnings(pres, i0);
    if rows.iter().any(MinimumResult::is_upper_bound) {
        warnings.push("candidates were sampled over a function field; minima are upper bounds".into());
    }
    if rows.iter().any(|r| !r.rank_path_checked) {
        warnings.push("the rank-formula cross-check was skipped on at least one level".into());
    }
    Ok(SignatureReport {
        dimension: pres.dimension(),
        dimension_source: pres.dimension_source(),
        rows,
        convergence,
        warnings,
    })
}

pub fn presentation_warnings(pres: &LocalRingPresentation, i0: &[Polynomial]) -> Vec<String> {
    let mut warnings = Vec::new();
    let count = i0.iter().filter(|g| !g.is_zero()).count();
    if count != pres.dimension() {
        warnings.push(format!(
            "I0 has {count} generators but dim R = {}; it is not given as a parameter ideal",
            pres.dimension()
        ));
    }
    warnings.push(EQUIDIMENSIONAL_DISCLAIMER.into());
    warnings.push(HEURISTIC_BRACKET_WARNING.into());
    warnings
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pres(p: u32, vars: &[&str], defining: &[&str]) -> LocalRingPresentation {
        LocalRingPresentation::parse(Field::prime(p).unwrap(), vars, OrderKind::Grevlex, defining).unwrap()
    }

    #[test]
    fn s_trunc_examples() {
        let r = pres(2, &["x", "y"], &[]);
        assert_eq!(r.dimension(), 2);
        let i0 = r.parse_ideal(&["x^2", "y^2"]).unwrap();
        let i = r.parse_ideal(&["x^2", "y^2", "x*y"]).unwrap();
        let v = s_trunc(&r, &i0, &i, 1).unwrap();
        assert_eq!((v.numerator_length, v.denominator_length), (4, 1));
        assert_eq!(v.value, rat(1, 1));
        assert!(matches!(s_trunc(&r, &i0, &i0, 1), Err(Error::NotProperContainment(_))));

        let cusp = pres(2, &["x", "y"], &["y^2 + x^3"]);
        assert_eq!(cusp.dimension(), 1);
        let v = s_trunc(&cusp, &cusp.parse_ideal(&["x"]).unwrap(), &cusp.parse_ideal(&["x", "y"]).unwrap(), 1).unwrap();
        assert_eq!((v.numerator_length, v.denominator_length), (0, 1));
        assert_eq!(v.value, rat(0, 1));
    }

    #[test]
    fn rejects_constant_term() {
        let err = LocalRingPresentation::parse(Field::prime(2).unwrap(), &["x"], OrderKind::Grevlex, &["x + 1"]).unwrap_err();
        assert!(matches!(err, Error::InvalidPresentation(_)));
    }

    #[test]
    fn minimum_examples() {
        let opts = SearchOptions::default();
        let cusp = pres(2, &["x", "y"], &["y^2 + x^3"]);
        let res = s_trunc_min(&cusp, &cusp.parse_ideal(&["x"]).unwrap(), 1, &opts).unwrap();
        assert_eq!(res.minimum, rat(0, 1));
        assert_eq!(res.candidates.len(), 1);
        assert!(res.paths_agree() && res.rank_path_checked);

        let plane = pres(2, &["x", "y"], &[]);
        let res = s_trunc_min(&plane, &plane.parse_ideal(&["x", "y"]).unwrap(), 1, &opts).unwrap();
        assert_eq!(res.minimum, rat(1, 1));
        assert_eq!(res.candidates[0].value.numerator_length, 4);

        let artinian = pres(2, &["x", "y"], &["x^2", "y^2"]);
        assert_eq!(artinian.dimension(), 0);
        let res = s_trunc_min(&artinian, &[], 1, &opts).unwrap();
        assert_eq!(res.minimum, rat(0, 1));
        assert!(res.paths_agree());
    }

    #[test]
    fn rank1_examples() {
        let opts = SearchOptions::default();
        let plane = pres(2, &["x", "y"], &[]);
        let res = s_rat_trunc(&plane, &plane.parse_ideal(&["x^2", "y^2"]).unwrap(), 1, &opts).unwrap();
        assert_eq!(res.minimum, rat(1, 1));
        assert_eq!(res.candidates.len(), 1);
        let cusp = pres(2, &["x", "y"], &["y^2 + x^3"]);
        let res = s_rat_trunc(&cusp, &cusp.parse_ideal(&["x"]).unwrap(), 1, &opts).unwrap();
        assert_eq!(res.minimum, rat(0, 1));
    }

    #[test]
    fn hk_examples() {
        let plane = pres(2, &["x", "y"], &[]);
        let rows = hk_function(&plane, &plane.parse_ideal(&["x", "y"]).unwrap(), 3).unwrap();
        let lengths: Vec<u64> = rows.iter().map(|r| r.length).collect();
        assert_eq!(lengths, vec![1, 4, 16, 64]);
        assert!(rows.iter().all(|r| r.normalized == rat(1, 1)));

        let cusp = pres(2, &["x", "y"], &["y^2 + x^3"]);
        let rows = hk_function(&cusp, &cusp.parse_ideal(&["x"]).unwrap(), 3).unwrap();
        let lengths: Vec<u64> = rows.iter().map(|r| r.length).collect();
        assert_eq!(lengths, vec![2, 4, 8, 16]);
        assert!(rows.iter().all(|r| r.normalized == rat(2, 1)));
        assert_eq!(hk_function(&cusp, &cusp.parse_ideal(&["x"]).unwrap(), 0).unwrap().len(), 1);
    }

    #[test]
    fn convergence_examples() {
        let c = convergence_report(&[(1, rat(1, 1)), (2, rat(1, 1)), (3, rat(1, 1))], 2);
        assert_eq!(c.c_emp, Some(rat(0, 1)));
        let last = c.limit_interval().unwrap();
        assert_eq!((&last.lower, &last.upper), (&rat(1, 1), &rat(1, 1)));

        let c = convergence_report(&[(1, rat(1, 2)), (2, rat(1, 4))], 2);
        assert_eq!(c.c_emp, Some(rat(1, 2)));
        assert!(convergence_report(&[(1, rat(1, 2))], 2).c_emp.is_none());

        // 5/9, 41/81, 365/729 at p = 3: brackets at e = 2 and 3 are nested.
        let c = convergence_report(&[(1, rat(5, 9)), (2, rat(41, 81)), (3, rat(365, 729))], 3);
        assert_eq!(c.c_emp, Some(rat(40, 243)));
        assert!(c.differences_bounded());
        assert!(c.intervals_nested());
        assert_eq!(c.limit_intervals.len(), 2);
    }

    #[test]
    fn closure_examples() {
        let opts = SearchOptions::default();
        let cusp = pres(2, &["x", "y"], &["y^2 + x^3"]);
        let cert = minimizer_closure_check(&cusp, &cusp.parse_ideal(&["x"]).unwrap(), 1, &opts).unwrap();
        assert!(cert.holds());
        assert_eq!(cert.minimizers.len(), 1);

        let plane = pres(2, &["x", "y"], &[]);
        let cert = minimizer_closure_check(&plane, &plane.parse_ideal(&["x^2", "y^2"]).unwrap(), 1, &opts).unwrap();
        assert!(cert.holds());
        assert_eq!(cert.minimizers.len(), 1);
    }
}
