//! Sparse multivariate polynomials over a prime field, used as numerators
//! and denominators of rational-function-field elements.
//!
//! Terms are kept in strictly decreasing lexicographic order of their
//! exponent vectors, so the first term is the lex-leading term and two
//! polynomials are equal iff their term vectors are equal.

use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    terms: Vec<(Vec<u32>, u32)>,
}

#[inline]
fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

impl FpPoly {
    pub fn zero() -> Self {
        FpPoly { terms: Vec::new() }
    }

    pub fn constant(c: u32, nvars: usize, p: u32) -> Self {
        let c = c % p;
        if c == 0 {
            Self::zero()
        } else {
            FpPoly {
                terms: vec![(vec![0; nvars], c)],
            }
        }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        FpPoly {
            terms: vec![(e, 1)],
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(mut terms: Vec<(Vec<u32>, u32)>, p: u32) -> Self {
        terms.sort_by(|a, b| lex_cmp(&b.0, &a.0));
        let mut out: Vec<(Vec<u32>, u32)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            let c = c % p;
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = (last.1 + c) % p,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        FpPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Vec<u32>, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].1 == 1
    }

    pub fn leading_coefficient(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn add(&self, other: &Self, p: u32) -> Self {
        self.combine(other, p, |b| b)
    }

    pub fn sub(&self, other: &Self, p: u32) -> Self {
        self.combine(other, p, |b| (p - b) % p)
    }

    fn combine(&self, other: &Self, p: u32, map_other: impl Fn(u32) -> u32) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match lex_cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.0.clone(), map_other(b.1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = (a.1 + map_other(b.1)) % p;
                    if c != 0 {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|b| (b.0.clone(), map_other(b.1))));
        FpPoly { terms: out }
    }

    pub fn scale(&self, c: u32, p: u32) -> Self {
        let c = c % p;
        if c == 0 {
            return Self::zero();
        }
        FpPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a * c % p))
                .collect(),
        }
    }

    pub fn mul_term(&self, exps: &[u32], c: u32, p: u32) -> Self {
        let c = c % p;
        if c == 0 {
            return Self::zero();
        }
        // Multiplying by a monomial preserves lex order.
        FpPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.iter().zip(exps).map(|(x, y)| x + y).collect(), a * c % p))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self, p: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() < other.terms.len() {
            return other.mul(self, p);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (eb, cb) in &other.terms {
            for (ea, ca) in &self.terms {
                terms.push((ea.iter().zip(eb).map(|(x, y)| x + y).collect(), ca * cb % p));
            }
        }
        Self::from_terms(terms, p)
    }

    /// Exact division; returns `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self, p: u32) -> Option<Self> {
        assert!(!divisor.is_zero());
        let (lead_e, lead_c) = &divisor.terms[0];
        let lead_inv = inv_mod(*lead_c, p);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((e, c)) = rem.terms.first().cloned() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c * lead_inv % p;
            rem = rem.sub(&divisor.mul_term(&qe, qc, p), p);
            quot.push((qe, qc));
        }
        Some(FpPoly { terms: quot })
    }

    pub fn monic(&self, p: u32) -> Self {
        match self.terms.first() {
            None => Self::zero(),
            Some((_, c)) if *c == 1 => self.clone(),
            Some((_, c)) => self.scale(inv_mod(*c, p), p),
        }
    }

    /// Replaces every exponent `e_i` by `e_i * factors[i]`.
    pub fn scale_exponents(&self, factors: &[u32]) -> Self {
        let mut terms: Vec<(Vec<u32>, u32)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(factors).map(|(x, f)| x * f).collect(), *c))
            .collect();
        // Scaling by positive factors is injective and keeps lex order only
        // when all factors are equal; re-sort in general.
        terms.sort_by(|a, b| lex_cmp(&b.0, &a.0));
        FpPoly { terms }
    }

    /// Divides every exponent by `p`, or returns `None` if some exponent is
    /// not divisible.
    pub fn exponent_root(&self, p: u32) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if e.iter().any(|x| x % p != 0) {
                return None;
            }
            terms.push((e.iter().map(|x| x / p).collect(), *c));
        }
        Some(FpPoly { terms })
    }

    fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e[var]).max()
    }

    fn involves_from(&self, var: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[var..].iter().any(|&x| x > 0))
    }

    /// Coefficients of `self` viewed as a polynomial in `var`, keyed by degree.
    fn coefficients_in(&self, var: usize) -> Vec<(u32, FpPoly)> {
        let mut by_degree: Vec<(u32, Vec<(Vec<u32>, u32)>)> = Vec::new();
        for (e, c) in &self.terms {
            let d = e[var];
            let mut stripped = e.clone();
            stripped[var] = 0;
            match by_degree.iter_mut().find(|(k, _)| *k == d) {
                Some((_, ts)) => ts.push((stripped, *c)),
                None => by_degree.push((d, vec![(stripped, *c)])),
            }
        }
        by_degree.sort_by(|a, b| b.0.cmp(&a.0));
        by_degree
            .into_iter()
            .map(|(d, ts)| {
                let mut ts = ts;
                ts.sort_by(|a, b| lex_cmp(&b.0, &a.0));
                (d, FpPoly { terms: ts })
            })
            .collect()
    }

    fn leading_coefficient_in(&self, var: usize) -> (u32, FpPoly) {
        self.coefficients_in(var)
            .into_iter()
            .next()
            .unwrap_or((0, FpPoly::zero()))
    }

    fn content_in(&self, var: usize, p: u32) -> FpPoly {
        let nvars = self.terms.first().map_or(0, |t| t.0.len());
        let mut g = FpPoly::zero();
        for (_, c) in self.coefficients_in(var) {
            g = gcd_from(&g, &c, var + 1, nvars, p);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_part_in(&self, var: usize, p: u32) -> FpPoly {
        if self.is_zero() {
            return FpPoly::zero();
        }
        let c = self.content_in(var, p);
        self.div_exact(&c, p).expect("content divides")
    }

    /// Monic greatest common divisor (lex-leading coefficient 1).
    pub fn gcd(&self, other: &Self, p: u32) -> Self {
        let nvars = self
            .terms
            .first()
            .or(other.terms.first())
            .map_or(0, |t| t.0.len());
        gcd_from(self, other, 0, nvars, p)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|&x| x as u64).sum::<u64>())
            .max()
            .unwrap_or(0)
    }
}

/// Recursive gcd of polynomials involving only variables `var..nvars`.
fn gcd_from(a: &FpPoly, b: &FpPoly, var: usize, nvars: usize, p: u32) -> FpPoly {
    if a.is_zero() {
        return b.monic(p);
    }
    if b.is_zero() {
        return a.monic(p);
    }
    if var >= nvars || (!a.involves_from(var) && !b.involves_from(var)) {
        return FpPoly::constant(1, nvars, p);
    }
    if a == b {
        return a.monic(p);
    }
    let ca = a.content_in(var, p);
    let cb = b.content_in(var, p);
    let content = gcd_from(&ca, &cb, var + 1, nvars, p);
    let mut f = a.div_exact(&ca, p).expect("content divides");
    let mut g = b.div_exact(&cb, p).expect("content divides");
    if f.degree_in(var) < g.degree_in(var) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() && g.degree_in(var) != Some(0) {
        let r = pseudo_remainder(&f, &g, var, p);
        f = g;
        g = r.primitive_part_in(var, p);
    }
    let core = if g.is_zero() {
        f.primitive_part_in(var, p)
    } else {
        // A nonzero remainder of degree zero in `var`: the primitive parts are coprime.
        FpPoly::constant(1, nvars, p)
    };
    content.mul(&core, p).monic(p)
}

fn pseudo_remainder(f: &FpPoly, g: &FpPoly, var: usize, p: u32) -> FpPoly {
    let (dg, lg) = g.leading_coefficient_in(var);
    let mut r = f.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lr) = r.leading_coefficient_in(var);
        if dr < dg {
            return r;
        }
        let nvars = r.terms[0].0.len();
        let mut shift = vec![0; nvars];
        shift[var] = dr - dg;
        let shifted: FpPoly = g.mul_term(&shift, 1, p).mul(&lr, p);
        r = r.mul(&lg, p).sub(&shifted, p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: u32, terms: &[(&[u32], u32)]) -> FpPoly {
        FpPoly::from_terms(terms.iter().map(|(e, c)| (e.to_vec(), *c)).collect(), p)
    }

    #[test]
    fn univariate_gcd() {
        // (t+1)^2 and (t+1)(t+2) over F_3 share t+1.
        let p = 3;
        let a = t(p, &[(&[2], 1), (&[1], 2), (&[0], 1)]);
        let b = t(p, &[(&[2], 1), (&[1], 0), (&[0], 2)]);
        let g = a.gcd(&b, p);
        assert_eq!(g, t(p, &[(&[1], 1), (&[0], 1)]));
    }

    #[test]
    fn bivariate_gcd() {
        let p = 5;
        let x = FpPoly::var(0, 2);
        let y = FpPoly::var(1, 2);
        let one = FpPoly::constant(1, 2, p);
        let common = x.add(&y.mul(&y, p), p).add(&one, p);
        let a = common.mul(&x.add(&one, p), p);
        let b = common.mul(&y.sub(&x, p), p).mul(&y, p);
        assert_eq!(a.gcd(&b, p), common.monic(p));
        let coprime = x.add(&one, p).gcd(&y, p);
        assert!(coprime.is_one());
    }

    #[test]
    fn gcd_with_content_only() {
        let p = 2;
        let x = FpPoly::var(0, 2);
        let y = FpPoly::var(1, 2);
        let one = FpPoly::constant(1, 2, p);
        // (y+1) x and (y+1)
        let a = y.add(&one, p).mul(&x, p);
        let b = y.add(&one, p);
        assert_eq!(a.gcd(&b, p), b);
    }

    #[test]
    fn exact_division() {
        let p = 7;
        let x = FpPoly::var(0, 1);
        let one = FpPoly::constant(1, 1, p);
        let a = x.add(&one, p);
        let prod = a.mul(&a, p).mul(&a, p);
        assert_eq!(prod.div_exact(&a, p).unwrap(), a.mul(&a, p));
        assert!(x.div_exact(&a, p).is_none());
    }
}
