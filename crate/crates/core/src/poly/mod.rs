//! Sparse multivariate polynomials over a [`Field`], monomial orders, and
//! the termwise Frobenius power `f -> f^(p^e)`.

mod parse;

pub use parse::parse_polynomial;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Monomials of total degree above this abort with `DegreeBudgetExceeded`.
pub const DEGREE_BUDGET: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents.into_boxed_slice())
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let m = self.mul(other);
        check_degree(&m)?;
        Ok(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(self.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn scale(&self, factor: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * factor).collect())
    }

    /// Index of the only variable occurring, if this is a pure power `x_i^k`
    /// with `k > 0`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Bitmask of the variables that occur.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (i, _)| acc | (1 << i))
    }
}

fn check_degree(m: &Monomial) -> Result<()> {
    let degree = m.degree();
    if degree > DEGREE_BUDGET {
        return Err(Error::DegreeBudgetExceeded {
            degree,
            budget: DEGREE_BUDGET,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
}

impl std::str::FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(OrderKind::Grevlex),
            "lex" => Ok(OrderKind::Lex),
            other => Err(Error::parse(0, 0, format!("unknown monomial order `{other}`"))),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Grevlex => "grevlex",
            OrderKind::Lex => "lex",
        })
    }
}

/// A monomial order together with a variable precedence: `precedence[0]`
/// is the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::Grevlex, nvars)
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, nvars)
    }

    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Result<Self> {
        let mut seen = precedence.clone();
        seen.sort_unstable();
        if seen.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::AmbientMismatch("precedence is not a permutation".into()));
        }
        Ok(MonomialOrder { kind, precedence })
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    /// Checked comparison.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != self.nvars() || b.nvars() != self.nvars() {
            return Err(Error::AmbientMismatch(format!(
                "monomials with {} and {} variables under an order on {}",
                a.nvars(),
                b.nvars(),
                self.nvars()
            )));
        }
        Ok(self.cmp(a, b))
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (&a.0, &b.0);
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.precedence {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                if da != db {
                    return da.cmp(&db);
                }
                for &v in self.precedence.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A polynomial: terms with nonzero coefficients in strictly decreasing
/// order with respect to the owning ring's monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, FieldElement)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, FieldElement)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, FieldElement)>) -> Self {
        Polynomial { terms }
    }

    pub(crate) fn into_terms(self) -> Vec<(Monomial, FieldElement)> {
        self.terms
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.iter().any(|t| t.0.is_one())
    }
}

/// The ambient polynomial ring: coefficient field, variable names and the
/// active monomial order. Cheap to clone.
#[derive(Clone, Debug)]
pub struct PolyRing {
    field: Field,
    vars: Arc<[String]>,
    order: MonomialOrder,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.vars == other.vars && self.order == other.order
    }
}

impl PolyRing {
    pub fn new(field: Field, vars: &[&str], order: OrderKind) -> Self {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Self::with_order(field, vars.clone(), MonomialOrder::new(order, vars.len()))
    }

    pub fn with_order(field: Field, vars: Vec<String>, order: MonomialOrder) -> Self {
        assert_eq!(vars.len(), order.nvars(), "order and variable count differ");
        PolyRing {
            field,
            vars: vars.into(),
            order,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn check_same(&self, other: &PolyRing) -> Result<()> {
        if self.vars != other.vars || self.field != other.field {
            return Err(Error::AmbientMismatch(format!(
                "rings over [{}] and [{}] differ",
                self.vars.join(","),
                other.vars.join(",")
            )));
        }
        Ok(())
    }

    /// The same variables and field under a different order.
    pub fn reordered(&self, order: MonomialOrder) -> PolyRing {
        PolyRing::with_order(self.field.clone(), self.vars.to_vec(), order)
    }

    /// The same variables and order over a different field.
    pub fn over(&self, field: Field) -> PolyRing {
        PolyRing::with_order(field, self.vars.to_vec(), self.order.clone())
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: FieldElement) -> Polynomial {
        self.term(self.one_monomial(), c)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.term(Monomial::var(i, self.nvars()), self.field.one())
    }

    pub fn term(&self, m: Monomial, c: FieldElement) -> Polynomial {
        if self.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        self.term(m, self.field.one())
    }

    /// Builds a polynomial from unsorted terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, FieldElement)>) -> Polynomial {
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = self.field.add(&last.1, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !self.field.is_zero(&t.1));
        Polynomial { terms: out }
    }

    /// Re-sorts a polynomial produced under another order of the same
    /// variables.
    pub fn adopt(&self, f: &Polynomial) -> Polynomial {
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        Polynomial { terms }
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.merge(f, g, None)
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.merge(f, g, Some(&self.field.neg(&self.field.one())))
    }

    /// `f + c * x^m * g`.
    pub fn add_scaled(&self, f: &Polynomial, c: &FieldElement, m: &Monomial, g: &Polynomial) -> Polynomial {
        let field = &self.field;
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut i = 0;
        let mut gi = g.terms.iter().map(|(gm, gc)| (gm.mul(m), field.mul(gc, c))).peekable();
        while i < f.terms.len() {
            match gi.peek() {
                None => break,
                Some((gm, _)) => match self.order.cmp(&f.terms[i].0, gm) {
                    Ordering::Greater => {
                        out.push(f.terms[i].clone());
                        i += 1;
                    }
                    Ordering::Less => out.push(gi.next().unwrap()),
                    Ordering::Equal => {
                        let (gm, gc) = gi.next().unwrap();
                        let s = field.add(&f.terms[i].1, &gc);
                        if !field.is_zero(&s) {
                            out.push((gm, s));
                        }
                        i += 1;
                    }
                },
            }
        }
        out.extend(f.terms[i..].iter().cloned());
        out.extend(gi);
        Polynomial { terms: out }
    }

    fn merge(&self, f: &Polynomial, g: &Polynomial, scale: Option<&FieldElement>) -> Polynomial {
        let one = self.field.one();
        self.add_scaled(f, scale.unwrap_or(&one), &self.one_monomial(), g)
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        self.scale(f, &self.field.neg(&self.field.one()))
    }

    pub fn scale(&self, f: &Polynomial, c: &FieldElement) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, f: &Polynomial, m: &Monomial) -> Result<Polynomial> {
        let terms = f
            .terms
            .iter()
            .map(|(fm, c)| Ok((fm.checked_mul(m)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { terms })
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        if f.is_zero() || g.is_zero() {
            return Ok(Polynomial::zero());
        }
        let mut terms = Vec::with_capacity(f.len() * g.len());
        for (fm, fc) in &f.terms {
            for (gm, gc) in &g.terms {
                terms.push((fm.checked_mul(gm)?, self.field.mul(fc, gc)));
            }
        }
        Ok(self.from_terms(terms))
    }

    pub fn pow(&self, f: &Polynomial, n: u64) -> Result<Polynomial> {
        let mut result = self.one();
        for _ in 0..n {
            result = self.mul(&result, f)?;
        }
        Ok(result)
    }

    /// `f^(p^e)`, computed termwise: exponents scale by `p^e` and each
    /// coefficient goes through the field Frobenius.
    pub fn frobenius_power(&self, f: &Polynomial, e: u32) -> Result<Polynomial> {
        let q = (self.field.characteristic() as u64).pow(e);
        let factor = u32::try_from(q).map_err(|_| Error::DegreeBudgetExceeded {
            degree: q.saturating_mul(f.total_degree()),
            budget: DEGREE_BUDGET,
        })?;
        if f.total_degree().saturating_mul(q) > DEGREE_BUDGET {
            return Err(Error::DegreeBudgetExceeded {
                degree: f.total_degree().saturating_mul(q),
                budget: DEGREE_BUDGET,
            });
        }
        // Scaling all exponents by the same factor preserves the order.
        let terms = f
            .terms
            .iter()
            .map(|(m, c)| (m.scale(factor), self.field.frobenius(c, e)))
            .collect();
        Ok(Polynomial { terms })
    }

    pub fn monic(&self, f: &Polynomial) -> Polynomial {
        match f.terms.first() {
            None => Polynomial::zero(),
            Some((_, c)) if self.field.is_one(c) => f.clone(),
            Some((_, c)) => self.scale(f, &self.field.inv(c).expect("nonzero leading coefficient")),
        }
    }

    /// Applies `map` to every coefficient, producing a polynomial in
    /// `target` (same variables).
    pub fn map_coefficients(&self, f: &Polynomial, target: &PolyRing, map: impl Fn(&FieldElement) -> FieldElement) -> Polynomial {
        target.from_terms(f.terms.iter().map(|(m, c)| (m.clone(), map(c))).collect())
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(self, text)
    }

    pub fn format(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in f.terms.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let mono = self.format_monomial(m);
            let coeff = self.field.format(c);
            let coeff = if self.field.is_compound(c) {
                format!("({coeff})")
            } else {
                coeff
            };
            if m.is_one() {
                out.push_str(&coeff);
            } else if self.field.is_one(c) {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{coeff}*{mono}"));
            }
        }
        out
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.exponents()
            .iter()
            .zip(self.vars.iter())
            .filter(|(&e, _)| e > 0)
            .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}
