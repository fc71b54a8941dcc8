//! Reduced Gröbner bases by Buchberger's algorithm (normal selection
//! strategy, coprime and chain criteria), normal forms, standard monomials,
//! multiplication matrices, the primary-to-origin test and Krull dimension.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::poly::{Monomial, PolyRing, Polynomial};

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: PolyRing,
    generators: Vec<Polynomial>,
}

/// Full reduction of `f` modulo `basis`, whose members must be monic.
fn reduce(ring: &PolyRing, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let field = ring.field();
    let lms: Vec<&Monomial> = basis.iter().map(|g| g.leading_monomial().unwrap()).collect();
    let mut rest = f.clone();
    let mut remainder = Vec::new();
    while let Some((m, c)) = rest.leading_term().cloned() {
        match lms.iter().position(|lm| lm.divides(&m)) {
            Some(k) => {
                let shift = lms[k].quotient_of(&m);
                rest = ring.add_scaled(&rest, &field.neg(&c), &shift, &basis[k]);
            }
            None => {
                let mut terms = rest.into_terms();
                let lead = terms.remove(0);
                remainder.push(lead);
                rest = Polynomial::from_sorted_terms(terms);
            }
        }
    }
    Polynomial::from_sorted_terms(remainder)
}

struct Builder<'a> {
    ring: &'a PolyRing,
    basis: Vec<Polynomial>,
    pending: Vec<(usize, usize)>,
    pending_set: HashSet<(usize, usize)>,
}

impl<'a> Builder<'a> {
    fn lm(&self, i: usize) -> &Monomial {
        self.basis[i].leading_monomial().unwrap()
    }

    fn add_pair(&mut self, i: usize, j: usize) {
        let key = (i.min(j), i.max(j));
        if self.pending_set.insert(key) {
            self.pending.push(key);
        }
    }

    /// Index into `pending` of the pair with the smallest lcm; ties go to
    /// the pair created first.
    fn select(&self) -> usize {
        let order = self.ring.order();
        let mut best = 0;
        let mut best_lcm = self.lm(self.pending[0].0).lcm(self.lm(self.pending[0].1));
        for (k, &(i, j)) in self.pending.iter().enumerate().skip(1) {
            let l = self.lm(i).lcm(self.lm(j));
            if order.cmp(&l, &best_lcm) == std::cmp::Ordering::Less {
                best = k;
                best_lcm = l;
            }
        }
        best
    }

    fn chain_criterion(&self, i: usize, j: usize, lcm: &Monomial) -> bool {
        (0..self.basis.len()).any(|k| {
            k != i
                && k != j
                && self.lm(k).divides(lcm)
                && !self.pending_set.contains(&(i.min(k), i.max(k)))
                && !self.pending_set.contains(&(j.min(k), j.max(k)))
        })
    }

    fn s_polynomial(&self, i: usize, j: usize, lcm: &Monomial) -> Result<Polynomial> {
        let field = self.ring.field();
        let a = self.ring.mul_monomial(&self.basis[i], &self.lm(i).quotient_of(lcm))?;
        Ok(self.ring.add_scaled(
            &a,
            &field.neg(&field.one()),
            &self.lm(j).quotient_of(lcm),
            &self.basis[j],
        ))
    }

    fn run(&mut self) -> Result<()> {
        while !self.pending.is_empty() {
            let k = self.select();
            let (i, j) = self.pending.remove(k);
            self.pending_set.remove(&(i, j));
            let (lmi, lmj) = (self.lm(i).clone(), self.lm(j).clone());
            if lmi.is_coprime(&lmj) {
                continue;
            }
            let lcm = lmi.lcm(&lmj);
            if self.chain_criterion(i, j, &lcm) {
                continue;
            }
            let s = self.s_polynomial(i, j, &lcm)?;
            let r = reduce(self.ring, &s, &self.basis);
            if r.is_zero() {
                continue;
            }
            let r = self.ring.monic(&r);
            if r.leading_monomial().unwrap().is_one() {
                self.basis = vec![r];
                self.pending.clear();
                self.pending_set.clear();
                return Ok(());
            }
            let n = self.basis.len();
            self.basis.push(r);
            for k in 0..n {
                self.add_pair(k, n);
            }
        }
        Ok(())
    }
}

/// Minimal, inter-reduced, monic basis sorted by increasing leading monomial.
fn reduce_basis(ring: &PolyRing, basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let hm = h.leading_monomial().unwrap();
            l != k && hm.divides(lm) && (hm != lm || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, g)| g.clone())
            .collect();
        let lead = Polynomial::from_sorted_terms(vec![minimal[k].leading_term().unwrap().clone()]);
        let tail = ring.sub(&minimal[k], &lead);
        let tail = reduce(ring, &tail, &others);
        reduced.push(ring.monic(&ring.add(&lead, &tail)));
    }
    let order = ring.order();
    reduced.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    reduced
}

/// Reduced Gröbner basis of the ideal generated by `gens`. Zero generators
/// are ignored; the zero ideal has the empty basis.
pub fn buchberger(ring: &PolyRing, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| ring.monic(g)).collect();
    if let Some(unit) = basis.iter().find(|g| g.leading_monomial().unwrap().is_one()) {
        return Ok(GroebnerBasis {
            ring: ring.clone(),
            generators: vec![unit.clone()],
        });
    }
    let mut builder = Builder {
        ring,
        basis,
        pending: Vec::new(),
        pending_set: HashSet::new(),
    };
    for j in 0..builder.basis.len() {
        for i in 0..j {
            builder.add_pair(i, j);
        }
    }
    builder.run()?;
    Ok(GroebnerBasis {
        ring: ring.clone(),
        generators: reduce_basis(ring, builder.basis),
    })
}

impl GroebnerBasis {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.first().is_some_and(|g| g.leading_monomial().unwrap().is_one())
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.generators.iter().map(|g| g.leading_monomial().unwrap()).collect()
    }

    /// Gröbner basis of this ideal plus `extra`; pairs among the existing
    /// generators are known to reduce to zero and are skipped.
    pub fn extend(&self, extra: &[Polynomial]) -> Result<GroebnerBasis> {
        let ring = &self.ring;
        let mut basis = self.generators.clone();
        let old = basis.len();
        for f in extra {
            let r = reduce(ring, f, &basis);
            if !r.is_zero() {
                basis.push(ring.monic(&r));
            }
        }
        if basis.len() == old {
            return Ok(self.clone());
        }
        if let Some(unit) = basis.iter().find(|g| g.leading_monomial().unwrap().is_one()) {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                generators: vec![unit.clone()],
            });
        }
        let mut builder = Builder {
            ring,
            basis,
            pending: Vec::new(),
            pending_set: HashSet::new(),
        };
        for j in old..builder.basis.len() {
            for i in 0..j {
                builder.add_pair(i, j);
            }
        }
        builder.run()?;
        Ok(GroebnerBasis {
            ring: ring.clone(),
            generators: reduce_basis(ring, builder.basis),
        })
    }

    /// The unique remainder of `f` modulo the ideal; zero iff `f` is a member.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        if self.generators.is_empty() {
            return f.clone();
        }
        reduce(&self.ring, f, &self.generators)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// True iff every generator of `other` lies in this ideal.
    pub fn contains_ideal(&self, other: &GroebnerBasis) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn quotient_basis(&self) -> Result<QuotientBasis> {
        QuotientBasis::new(self)
    }

    /// Dimension of the quotient ring: the largest set of variables such that
    /// no leading monomial involves only those variables.
    pub fn krull_dimension(&self) -> usize {
        let n = self.ring.nvars();
        if self.is_unit() {
            return 0;
        }
        let masks: Vec<u64> = self.generators.iter().map(|g| g.leading_monomial().unwrap().support_mask()).collect();
        let mut best = 0;
        for subset in 0u64..(1u64 << n) {
            let size = subset.count_ones() as usize;
            if size > best && masks.iter().all(|&m| m & !subset != 0) {
                best = size;
            }
        }
        best
    }

    /// True iff the vanishing locus of the ideal is the origin alone: every
    /// variable acts nilpotently on the quotient.
    pub fn is_primary_to_origin(&self) -> Result<bool> {
        let qb = self.quotient_basis()?;
        if qb.is_empty() {
            return Ok(false);
        }
        let field = self.ring.field();
        for v in 0..self.ring.nvars() {
            let action = qb.multiplication_matrix(self, v)?;
            // x_v acts nilpotently iff x_v^k * 1 vanishes for some k <= dim.
            let mut vec: SparseVec = vec![(0, field.one())];
            let mut nilpotent = false;
            for _ in 0..qb.len() {
                vec = action.apply(field, &vec);
                if vec.is_empty() {
                    nilpotent = true;
                    break;
                }
            }
            if !nilpotent {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Number of standard monomials; the colength of the ideal.
    pub fn colength(&self) -> Result<usize> {
        Ok(self.quotient_basis()?.len())
    }
}

/// Standard monomials of a zero-dimensional ideal, in increasing monomial
/// order (so the first one is `1` unless the ideal is the unit ideal).
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl QuotientBasis {
    fn new(gb: &GroebnerBasis) -> Result<Self> {
        let ring = gb.ring();
        let n = ring.nvars();
        if gb.is_unit() {
            return Ok(QuotientBasis {
                monomials: Vec::new(),
                index: HashMap::new(),
            });
        }
        let lms = gb.leading_monomials();
        for v in 0..n {
            if !lms.iter().any(|m| m.pure_power_var() == Some(v)) {
                return Err(Error::NotZeroDimensional(ring.vars()[v].clone()));
            }
        }
        let one = ring.one_monomial();
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut stack = vec![one.clone()];
        seen.insert(one);
        while let Some(m) = stack.pop() {
            for v in 0..n {
                let next = m.mul(&Monomial::var(v, n));
                if !seen.contains(&next) && !lms.iter().any(|lm| lm.divides(&next)) {
                    seen.insert(next.clone());
                    stack.push(next);
                }
            }
        }
        let mut monomials: Vec<Monomial> = seen.into_iter().collect();
        let order = ring.order();
        monomials.sort_by(|a, b| order.cmp(a, b));
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(QuotientBasis { monomials, index })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a polynomial already in normal form.
    pub fn coordinates(&self, f: &Polynomial) -> SparseVec {
        let mut v: Vec<(usize, FieldElement)> = f
            .terms()
            .iter()
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect();
        v.sort_by_key(|t| t.0);
        v
    }

    /// The polynomial with the given coordinates.
    pub fn polynomial(&self, ring: &PolyRing, v: &[(usize, FieldElement)]) -> Polynomial {
        ring.from_terms(v.iter().map(|(i, c)| (self.monomials[*i].clone(), c.clone())).collect())
    }

    /// Matrix of multiplication by variable `v`: column `j` holds the
    /// coordinates of `x_v` times the `j`-th standard monomial.
    pub fn multiplication_matrix(&self, gb: &GroebnerBasis, v: usize) -> Result<SparseMatrix> {
        let ring = gb.ring();
        let field = ring.field();
        let x = Monomial::var(v, ring.nvars());
        let columns = self
            .monomials
            .iter()
            .map(|m| {
                let shifted = m.mul(&x);
                match self.index.get(&shifted) {
                    Some(&i) => Ok(vec![(i, field.one())]),
                    None => {
                        let nf = gb.normal_form(&ring.monomial(shifted));
                        Ok(self.coordinates(&nf))
                    }
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix {
            nrows: self.len(),
            columns,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::linalg::Matrix;
    use crate::poly::OrderKind;

    fn ring(p: u32, vars: &[&str], order: OrderKind) -> PolyRing {
        PolyRing::new(Field::prime(p).unwrap(), vars, order)
    }

    fn gb(r: &PolyRing, gens: &[&str]) -> GroebnerBasis {
        let gens: Vec<Polynomial> = gens.iter().map(|g| r.parse(g).unwrap()).collect();
        buchberger(r, &gens).unwrap()
    }

    fn formatted(g: &GroebnerBasis) -> Vec<String> {
        g.generators().iter().map(|p| g.ring().format(p)).collect()
    }

    #[test]
    fn buchberger_examples() {
        let r = ring(2, &["x", "y"], OrderKind::Grevlex);
        assert_eq!(formatted(&gb(&r, &["x^2", "x*y"])), vec!["x*y", "x^2"]);
        let g = gb(&r, &["y^2 + x^3", "x^2"]);
        assert_eq!(formatted(&g), vec!["y^2", "x^2"]);
        // Membership oracle: both original generators and both basis
        // elements reduce to zero against each other's ideals.
        let monomial = gb(&r, &["x^2", "y^2"]);
        assert!(monomial.contains(&r.parse("y^2 + x^3").unwrap()));
        assert!(g.contains(&r.parse("y^2").unwrap()));

        let lex = ring(2, &["x", "y"], OrderKind::Lex);
        assert_eq!(formatted(&gb(&lex, &["x + y"])), vec!["x + y"]);
    }

    #[test]
    fn zero_ideal_and_unit_ideal() {
        let r = ring(3, &["x", "y"], OrderKind::Grevlex);
        let zero = buchberger(&r, &[Polynomial::zero()]).unwrap();
        assert!(zero.generators().is_empty());
        assert_eq!(zero.krull_dimension(), 2);
        let unit = gb(&r, &["x + 1", "x"]);
        assert!(unit.is_unit());
        assert_eq!(unit.colength().unwrap(), 0);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(2, &["x", "y"], OrderKind::Grevlex);
        let g = gb(&r, &["x^2", "y^2"]);
        assert!(g.normal_form(&r.parse("x^3").unwrap()).is_zero());
        let f = r.parse("x*y + x").unwrap();
        assert_eq!(g.normal_form(&f), f);
        assert!(g.normal_form(&r.parse("y^2 + x^3").unwrap()).is_zero());
    }

    #[test]
    fn quotient_basis_examples() {
        let r = ring(2, &["x", "y"], OrderKind::Grevlex);
        let qb = gb(&r, &["x^2", "y^2"]).quotient_basis().unwrap();
        let names: Vec<String> = qb.monomials().iter().map(|m| r.format_monomial(m)).collect();
        assert_eq!(names, vec!["1", "y", "x", "x*y"]);
        assert_eq!(gb(&r, &["x^4", "y^4"]).colength().unwrap(), 16);
        // Oracle: count exponent pairs (a, b) in [0,4)^2 outside a >= 2 and b >= 2.
        let brute = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).filter(|&(a, b)| !(a >= 2 && b >= 2)).count();
        assert_eq!(gb(&r, &["x^4", "y^4", "x^2*y^2"]).colength().unwrap(), brute);
        assert_eq!(brute, 12);
        assert!(matches!(gb(&r, &["x^2"]).quotient_basis(), Err(Error::NotZeroDimensional(v)) if v == "y"));
    }

    #[test]
    fn multiplication_matrix_examples() {
        let f2 = Field::prime(2).unwrap();
        let r = ring(2, &["x"], OrderKind::Grevlex);
        let g = gb(&r, &["x^2"]);
        let m = g.quotient_basis().unwrap().multiplication_matrix(&g, 0).unwrap().to_dense(&f2);
        let e = |n| f2.from_i64(n);
        assert_eq!(m, Matrix::from_rows(vec![vec![e(0), e(0)], vec![e(1), e(0)]]).unwrap());

        let g = gb(&r, &["x - 1"]);
        let m = g.quotient_basis().unwrap().multiplication_matrix(&g, 0).unwrap().to_dense(&f2);
        assert_eq!(m, Matrix::from_rows(vec![vec![e(1)]]).unwrap());

        let r2 = ring(2, &["x", "y"], OrderKind::Grevlex);
        let g = gb(&r2, &["x^2", "y^2"]);
        let qb = g.quotient_basis().unwrap();
        let mx = qb.multiplication_matrix(&g, 0).unwrap();
        let idx = |s: &str| qb.index_of(r2.parse(s).unwrap().leading_monomial().unwrap()).unwrap();
        assert_eq!(mx.columns[idx("1")], vec![(idx("x"), e(1))]);
        assert!(mx.columns[idx("x")].is_empty());
        assert_eq!(mx.columns[idx("y")], vec![(idx("x*y"), e(1))]);
        assert!(mx.columns[idx("x*y")].is_empty());
    }

    #[test]
    fn primary_to_origin_examples() {
        let r = ring(2, &["x", "y"], OrderKind::Grevlex);
        assert!(gb(&r, &["x^2", "y^2"]).is_primary_to_origin().unwrap());
        let r1 = ring(2, &["x"], OrderKind::Grevlex);
        assert!(!gb(&r1, &["x - 1"]).is_primary_to_origin().unwrap());
        assert!(!gb(&r1, &["x^2 + x"]).is_primary_to_origin().unwrap());
        assert!(matches!(gb(&r, &["x"]).is_primary_to_origin(), Err(Error::NotZeroDimensional(_))));
    }

    #[test]
    fn krull_dimension_examples() {
        let r = ring(2, &["x", "y"], OrderKind::Grevlex);
        assert_eq!(gb(&r, &["y^2 + x^3"]).krull_dimension(), 1);
        let lex = ring(2, &["x", "y"], OrderKind::Lex);
        assert_eq!(gb(&lex, &["y^2 + x^3"]).krull_dimension(), 1);
        assert_eq!(gb(&r, &["x", "y"]).krull_dimension(), 0);
    }

    #[test]
    fn extend_matches_full_recomputation() {
        let r = ring(3, &["x", "y", "z"], OrderKind::Grevlex);
        let base = gb(&r, &["x^2 - y*z", "y^3", "z^3"]);
        let extra = vec![r.parse("x*y + z^2").unwrap()];
        let incremental = base.extend(&extra).unwrap();
        let full = gb(&r, &["x^2 - y*z", "y^3", "z^3", "x*y + z^2"]);
        assert_eq!(incremental.generators(), full.generators());
    }
}
