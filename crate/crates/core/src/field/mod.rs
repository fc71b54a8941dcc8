//! Exact coefficient fields: prime fields `F_p`, extensions `F_{p^m}` given
//! by an irreducible modulus, and rational function fields `F_p(t_1,...,t_s)`.
//!
//! Elements do not carry their field; all arithmetic goes through a
//! [`Field`] handle, which is cheap to clone and safe to share between
//! threads.

mod fp_poly;

pub use fp_poly::FpPoly;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Limits on the fields the library accepts. All enumeration costs scale
/// with the field size, so these keep instances at desk scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldLimits {
    pub max_characteristic: u32,
    pub max_extension_degree: u32,
}

impl Default for FieldLimits {
    fn default() -> Self {
        FieldLimits {
            max_characteristic: 31,
            max_extension_degree: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime,
    /// `F_p[w]/(modulus)`; `modulus` is monic, coefficients from low to high
    /// degree, so its length is `degree + 1`.
    Extension { modulus: Vec<u32>, generator: String },
    Function { transcendentals: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub characteristic: u32,
    pub kind: FieldKind,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec {
            characteristic: p,
            kind: FieldKind::Prime,
        }
    }

    pub fn extension(p: u32, modulus: Vec<u32>, generator: impl Into<String>) -> Self {
        FieldSpec {
            characteristic: p,
            kind: FieldKind::Extension {
                modulus,
                generator: generator.into(),
            },
        }
    }

    pub fn function(p: u32, names: &[&str]) -> Self {
        FieldSpec {
            characteristic: p,
            kind: FieldKind::Function {
                transcendentals: names.iter().map(|s| s.to_string()).collect(),
            },
        }
    }

    pub fn extension_degree(&self) -> u32 {
        match &self.kind {
            FieldKind::Extension { modulus, .. } => modulus.len() as u32 - 1,
            _ => 1,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.characteristic;
        match &self.kind {
            FieldKind::Prime => write!(f, "GF({p})"),
            FieldKind::Extension { modulus, generator } => {
                let m = modulus.len() as u32 - 1;
                write!(
                    f,
                    "GF({}) mod {}",
                    (p as u64).pow(m),
                    format_univariate(modulus, generator)
                )
            }
            FieldKind::Function { transcendentals } => {
                write!(f, "GF({p})({})", transcendentals.join(","))
            }
        }
    }
}

fn format_univariate(coeffs: &[u32], var: &str) -> String {
    let mut parts = Vec::new();
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match deg {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{deg}"),
        };
        parts.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// A reduced fraction of two polynomials over `F_p` whose denominator has
/// lex-leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub num: FpPoly,
    pub den: FpPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Prime(u32),
    Ext(Box<[u32]>),
    Func(Arc<Fraction>),
}

#[derive(Debug)]
struct FieldInner {
    spec: FieldSpec,
    inverses: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Field {}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        Self::with_limits(spec, FieldLimits::default())
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(FieldSpec::prime(p))
    }

    pub fn with_limits(spec: FieldSpec, limits: FieldLimits) -> Result<Self> {
        let p = spec.characteristic;
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > limits.max_characteristic {
            return Err(Error::InvalidField(format!(
                "characteristic {p} exceeds the limit {}",
                limits.max_characteristic
            )));
        }
        match &spec.kind {
            FieldKind::Prime => {}
            FieldKind::Extension { modulus, .. } => {
                let m = modulus.len().saturating_sub(1) as u32;
                if m < 1 || modulus.last() != Some(&1) {
                    return Err(Error::InvalidField("extension modulus must be monic of degree >= 1".into()));
                }
                if m > limits.max_extension_degree {
                    return Err(Error::InvalidField(format!(
                        "extension degree {m} exceeds the limit {}",
                        limits.max_extension_degree
                    )));
                }
                if modulus.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField("modulus coefficients must be reduced mod p".into()));
                }
                if !is_irreducible(modulus, p) {
                    return Err(Error::InvalidField(format!(
                        "modulus {} is reducible over GF({p})",
                        format_univariate(modulus, "w")
                    )));
                }
            }
            FieldKind::Function { transcendentals } => {
                if transcendentals.is_empty() {
                    return Err(Error::InvalidField("function field needs at least one transcendental".into()));
                }
                for (i, n) in transcendentals.iter().enumerate() {
                    if transcendentals[..i].contains(n) {
                        return Err(Error::InvalidField(format!("duplicate transcendental `{n}`")));
                    }
                }
            }
        }
        let inverses = (0..p)
            .map(|a| if a == 0 { 0 } else { pow_mod(a, p - 2, p) })
            .collect();
        Ok(Field {
            inner: Arc::new(FieldInner { spec, inverses }),
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.spec.characteristic
    }

    fn p(&self) -> u32 {
        self.inner.spec.characteristic
    }

    fn ext_degree(&self) -> usize {
        match &self.inner.spec.kind {
            FieldKind::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    fn nvars(&self) -> usize {
        match &self.inner.spec.kind {
            FieldKind::Function { transcendentals } => transcendentals.len(),
            _ => 0,
        }
    }

    pub fn is_function_field(&self) -> bool {
        matches!(self.inner.spec.kind, FieldKind::Function { .. })
    }

    /// Number of elements, or `None` for function fields.
    pub fn size(&self) -> Option<u64> {
        match &self.inner.spec.kind {
            FieldKind::Function { .. } => None,
            _ => Some((self.p() as u64).pow(self.ext_degree() as u32)),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_u32(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_u32(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        let p = self.p() as i64;
        self.from_u32(n.rem_euclid(p) as u32)
    }

    fn from_u32(&self, c: u32) -> FieldElement {
        let c = c % self.p();
        match &self.inner.spec.kind {
            FieldKind::Prime => FieldElement::Prime(c),
            FieldKind::Extension { .. } => {
                let mut v = vec![0; self.ext_degree()];
                v[0] = c;
                FieldElement::Ext(v.into_boxed_slice())
            }
            FieldKind::Function { .. } => self.fraction(FpPoly::constant(c, self.nvars(), self.p()), FpPoly::constant(1, self.nvars(), self.p())),
        }
    }

    /// The element represented by `index` in the enumeration of a finite
    /// field: the base-`p` digits of `index` are the coordinates in the
    /// power basis, lowest degree first.
    pub fn element_at(&self, index: u64) -> FieldElement {
        let p = self.p() as u64;
        match &self.inner.spec.kind {
            FieldKind::Prime => FieldElement::Prime((index % p) as u32),
            FieldKind::Extension { .. } => {
                let mut rest = index;
                let v: Vec<u32> = (0..self.ext_degree())
                    .map(|_| {
                        let d = (rest % p) as u32;
                        rest /= p;
                        d
                    })
                    .collect();
                FieldElement::Ext(v.into_boxed_slice())
            }
            FieldKind::Function { .. } => panic!("function fields are not enumerable"),
        }
    }

    /// Inverse of [`Field::element_at`] for finite fields.
    pub fn index_of(&self, a: &FieldElement) -> Option<u64> {
        let p = self.p() as u64;
        match a {
            FieldElement::Prime(c) => Some(*c as u64),
            FieldElement::Ext(v) => Some(v.iter().rev().fold(0, |acc, &d| acc * p + d as u64)),
            FieldElement::Func(_) => None,
        }
    }

    /// The extension generator `w` or a transcendental `t_i`, by name.
    pub fn generator(&self, name: &str) -> Option<FieldElement> {
        match &self.inner.spec.kind {
            FieldKind::Prime => None,
            FieldKind::Extension { generator, modulus } => {
                if generator != name {
                    return None;
                }
                if modulus.len() == 2 {
                    // Degree-one modulus w + c: w = -c.
                    return Some(self.from_u32((self.p() - modulus[0]) % self.p()));
                }
                let mut v = vec![0; self.ext_degree()];
                v[1] = 1;
                Some(FieldElement::Ext(v.into_boxed_slice()))
            }
            FieldKind::Function { transcendentals } => {
                let i = transcendentals.iter().position(|t| t == name)?;
                Some(self.fraction(FpPoly::var(i, self.nvars()), FpPoly::constant(1, self.nvars(), self.p())))
            }
        }
    }

    pub fn generator_names(&self) -> Vec<String> {
        match &self.inner.spec.kind {
            FieldKind::Prime => Vec::new(),
            FieldKind::Extension { generator, .. } => vec![generator.clone()],
            FieldKind::Function { transcendentals } => transcendentals.clone(),
        }
    }

    /// Builds a canonical fraction `num/den`. Panics if `den` is zero.
    pub fn fraction(&self, num: FpPoly, den: FpPoly) -> FieldElement {
        let p = self.p();
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return FieldElement::Func(Arc::new(Fraction {
                num,
                den: FpPoly::constant(1, self.nvars(), p),
            }));
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den, p);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g, p).unwrap(), den.div_exact(&g, p).unwrap())
            }
        };
        let lc = den.leading_coefficient();
        let (num, den) = if lc == 1 {
            (num, den)
        } else {
            let s = self.inner.inverses[lc as usize];
            (num.scale(s, p), den.scale(s, p))
        };
        FieldElement::Func(Arc::new(Fraction { num, den }))
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Prime(c) => *c == 0,
            FieldElement::Ext(v) => v.iter().all(|&c| c == 0),
            FieldElement::Func(f) => f.num.is_zero(),
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Prime(c) => *c == 1,
            FieldElement::Ext(v) => v[0] == 1 && v[1..].iter().all(|&c| c == 0),
            FieldElement::Func(f) => f.num.is_one() && f.den.is_one(),
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p();
        match (a, b) {
            (FieldElement::Prime(x), FieldElement::Prime(y)) => FieldElement::Prime((x + y) % p),
            (FieldElement::Ext(x), FieldElement::Ext(y)) => {
                FieldElement::Ext(x.iter().zip(y.iter()).map(|(s, t)| (s + t) % p).collect())
            }
            (FieldElement::Func(x), FieldElement::Func(y)) => {
                if x.num.is_zero() {
                    return b.clone();
                }
                if y.num.is_zero() {
                    return a.clone();
                }
                if x.den == y.den {
                    return self.fraction(x.num.add(&y.num, p), x.den.clone());
                }
                let num = x.num.mul(&y.den, p).add(&y.num.mul(&x.den, p), p);
                self.fraction(num, x.den.mul(&y.den, p))
            }
            _ => panic!("mixed field element kinds"),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.p();
        match a {
            FieldElement::Prime(x) => FieldElement::Prime((p - x) % p),
            FieldElement::Ext(x) => FieldElement::Ext(x.iter().map(|s| (p - s) % p).collect()),
            FieldElement::Func(x) => FieldElement::Func(Arc::new(Fraction {
                num: x.num.scale(p - 1, p),
                den: x.den.clone(),
            })),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p();
        match (a, b) {
            (FieldElement::Prime(x), FieldElement::Prime(y)) => FieldElement::Prime(x * y % p),
            (FieldElement::Ext(x), FieldElement::Ext(y)) => FieldElement::Ext(self.ext_mul(x, y)),
            (FieldElement::Func(x), FieldElement::Func(y)) => {
                if x.num.is_zero() || y.num.is_zero() {
                    return self.zero();
                }
                if self.is_one(a) {
                    return b.clone();
                }
                if self.is_one(b) {
                    return a.clone();
                }
                // Cross-cancel before multiplying to keep intermediate sizes small.
                let g1 = x.num.gcd(&y.den, p);
                let g2 = y.num.gcd(&x.den, p);
                let xn = x.num.div_exact(&g1, p).unwrap();
                let yd = y.den.div_exact(&g1, p).unwrap();
                let yn = y.num.div_exact(&g2, p).unwrap();
                let xd = x.den.div_exact(&g2, p).unwrap();
                let num = xn.mul(&yn, p);
                let den = xd.mul(&yd, p);
                let lc = den.leading_coefficient();
                let s = self.inner.inverses[lc as usize];
                FieldElement::Func(Arc::new(Fraction {
                    num: num.scale(s, p),
                    den: den.scale(s, p),
                }))
            }
            _ => panic!("mixed field element kinds"),
        }
    }

    fn ext_mul(&self, x: &[u32], y: &[u32]) -> Box<[u32]> {
        let p = self.p() as u64;
        let FieldKind::Extension { modulus, .. } = &self.inner.spec.kind else {
            unreachable!()
        };
        let m = modulus.len() - 1;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a as u64 * b as u64) % p;
            }
        }
        for deg in (m..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            // w^m = -(modulus[0] + ... + modulus[m-1] w^{m-1})
            for (k, &mk) in modulus[..m].iter().enumerate() {
                let idx = deg - m + k;
                prod[idx] = (prod[idx] + c * ((p - mk as u64) % p)) % p;
            }
        }
        prod.truncate(m);
        prod.into_iter().map(|c| c as u32).collect()
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            FieldElement::Prime(x) => FieldElement::Prime(self.inner.inverses[*x as usize]),
            FieldElement::Ext(_) => {
                let q = self.size().unwrap();
                self.pow(a, q - 2)
            }
            FieldElement::Func(x) => {
                let p = self.p();
                let lc = x.num.leading_coefficient();
                let s = self.inner.inverses[lc as usize];
                FieldElement::Func(Arc::new(Fraction {
                    num: x.den.scale(s, p),
                    den: x.num.scale(s, p),
                }))
            }
        })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, mut n: u64) -> FieldElement {
        let mut result = self.one();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(&result, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// `a^(p^e)`.
    pub fn frobenius(&self, a: &FieldElement, e: u32) -> FieldElement {
        let p = self.p();
        match a {
            FieldElement::Prime(_) => a.clone(),
            FieldElement::Ext(_) => {
                // The Frobenius has order m on F_{p^m}.
                let m = self.ext_degree() as u32;
                let mut r = a.clone();
                for _ in 0..(e % m) {
                    r = self.pow(&r, p as u64);
                }
                r
            }
            FieldElement::Func(x) => {
                let q = p.pow(e);
                let factors = vec![q; self.nvars()];
                FieldElement::Func(Arc::new(Fraction {
                    num: x.num.scale_exponents(&factors),
                    den: x.den.scale_exponents(&factors),
                }))
            }
        }
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: &FieldElement) -> Result<FieldElement> {
        let p = self.p();
        match a {
            FieldElement::Prime(_) => Ok(a.clone()),
            FieldElement::Ext(_) => {
                let m = self.ext_degree() as u32;
                Ok(self.frobenius(a, m - 1))
            }
            FieldElement::Func(x) => {
                let num = x.num.exponent_root(p).ok_or(Error::NotAPthPower)?;
                let den = x.den.exponent_root(p).ok_or(Error::NotAPthPower)?;
                Ok(FieldElement::Func(Arc::new(Fraction { num, den })))
            }
        }
    }

    /// Substitutes `t_i -> t_i^(factors[i])` in a function-field element and
    /// reinterprets the result in `target`.
    pub fn substitute_powers(&self, a: &FieldElement, factors: &[u32], target: &Field) -> FieldElement {
        match a {
            FieldElement::Func(x) => target.fraction(x.num.scale_exponents(factors), x.den.scale_exponents(factors)),
            _ => a.clone(),
        }
    }

    /// Embeds a prime-field element into `target`, which must have the same
    /// characteristic.
    pub fn embed_prime(&self, a: &FieldElement, target: &Field) -> FieldElement {
        match a {
            FieldElement::Prime(c) => target.from_u32(*c),
            _ => panic!("embed_prime needs a prime-field element"),
        }
    }

    pub fn format(&self, a: &FieldElement) -> String {
        match a {
            FieldElement::Prime(c) => c.to_string(),
            FieldElement::Ext(v) => {
                let FieldKind::Extension { generator, .. } = &self.inner.spec.kind else {
                    unreachable!()
                };
                format_univariate(v, generator)
            }
            FieldElement::Func(x) => {
                let FieldKind::Function { transcendentals } = &self.inner.spec.kind else {
                    unreachable!()
                };
                let num = format_fp_poly(&x.num, transcendentals);
                if x.den.is_one() {
                    num
                } else {
                    format!("({num})/({})", format_fp_poly(&x.den, transcendentals))
                }
            }
        }
    }

    /// True when the element needs parentheses as a coefficient.
    pub fn is_compound(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Prime(_) => false,
            FieldElement::Ext(v) => v.iter().filter(|&&c| c != 0).count() > 1 || v.iter().skip(1).any(|&c| c > 1),
            FieldElement::Func(x) => !x.den.is_one() || x.num.terms().len() > 1 || x.num.terms().first().is_some_and(|t| t.1 != 1),
        }
    }
}

fn format_fp_poly(f: &FpPoly, names: &[String]) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = f
        .terms()
        .iter()
        .map(|(e, c)| {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(&x, _)| x > 0)
                .map(|(&x, n)| if x == 1 { n.clone() } else { format!("{n}^{x}") })
                .collect();
            match (mono.is_empty(), *c) {
                (true, c) => c.to_string(),
                (false, 1) => mono.join("*"),
                (false, c) => format!("{c}*{}", mono.join("*")),
            }
        })
        .collect();
    parts.join(" + ")
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Remainder of `a` modulo `b` over `F_p`; both low-to-high, `b` nonzero.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.iter().rposition(|&c| c != 0).expect("nonzero divisor");
    let inv = pow_mod(b[db], p - 2, p);
    while let Some(dr) = r.iter().rposition(|&c| c != 0) {
        if dr < db {
            break;
        }
        let q = (r[dr] as u64 * inv as u64 % p as u64) as u32;
        for (k, &bk) in b[..=db].iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = ((r[idx] as u64 + (p - q) as u64 * bk as u64) % p as u64) as u32;
        }
    }
    r
}

/// Brute-force irreducibility test: no monic factor of degree `1..=m/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                f.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            f.push(1);
            if poly_rem(modulus, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The first monic irreducible polynomial of degree `m` over `F_p` in the
/// enumeration order of [`is_irreducible`]'s candidates (low coefficients
/// vary fastest).
pub fn first_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for idx in 0..count {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut rest = idx;
        for _ in 0..m {
            f.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::new(FieldSpec::extension(2, vec![1, 1, 1], "w")).unwrap()
    }

    fn f2t() -> Field {
        Field::new(FieldSpec::function(2, &["t"])).unwrap()
    }

    #[test]
    fn inverse_examples() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.inv(&f5.from_i64(2)).unwrap(), f5.from_i64(3));

        let f4 = gf4();
        let w = f4.generator("w").unwrap();
        let w1 = f4.add(&w, &f4.one());
        assert_eq!(f4.inv(&w).unwrap(), w1);

        let k = f2t();
        let t = k.generator("t").unwrap();
        let inv = k.inv(&t).unwrap();
        assert_eq!(k.format(&inv), "(1)/(t)");
        assert!(k.is_one(&k.mul(&t, &inv)));
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.inv(&f5.zero()), Err(Error::DivisionByZero));
        let k = f2t();
        assert_eq!(k.inv(&k.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn frobenius_examples() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.frobenius(&f2.one(), 3), f2.one());

        let f4 = gf4();
        let w = f4.generator("w").unwrap();
        // Oracle: direct multiplication w*w.
        let direct = f4.mul(&w, &w);
        assert_eq!(f4.frobenius(&w, 1), direct);
        assert_eq!(direct, f4.add(&w, &f4.one()));

        let k = f2t();
        let t = k.generator("t").unwrap();
        assert_eq!(k.frobenius(&t, 2), k.pow(&t, 4));
    }

    #[test]
    fn pth_root_examples() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.pth_root(&f3.from_i64(2)).unwrap(), f3.from_i64(2));

        let f4 = gf4();
        let w = f4.generator("w").unwrap();
        let r = f4.pth_root(&w).unwrap();
        assert_eq!(r, f4.mul(&w, &w));
        assert_eq!(f4.mul(&r, &r), w);

        let k = f2t();
        let t = k.generator("t").unwrap();
        assert_eq!(k.pth_root(&t), Err(Error::NotAPthPower));
        let t2 = k.mul(&t, &t);
        assert_eq!(k.pth_root(&t2).unwrap(), t);
    }

    #[test]
    fn rejects_reducible_modulus_and_bad_characteristic() {
        // w^2 + 1 = (w+1)^2 over F_2
        assert!(Field::new(FieldSpec::extension(2, vec![1, 0, 1], "w")).is_err());
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(37).is_err());
        assert!(Field::new(FieldSpec::function(2, &[])).is_err());
        assert!(Field::new(FieldSpec::function(2, &["t", "t"])).is_err());
    }

    #[test]
    fn first_irreducibles() {
        assert_eq!(first_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(first_irreducible(3, 2), vec![1, 0, 1]);
        assert!(is_irreducible(&first_irreducible(2, 8), 2));
    }

    #[test]
    fn element_enumeration_round_trips() {
        let f9 = Field::new(FieldSpec::extension(3, vec![1, 0, 1], "i")).unwrap();
        for idx in 0..9 {
            assert_eq!(f9.index_of(&f9.element_at(idx)), Some(idx));
        }
    }

    #[test]
    fn function_field_canonical_form() {
        let k = Field::new(FieldSpec::function(3, &["t", "s"])).unwrap();
        let t = k.generator("t").unwrap();
        let s = k.generator("s").unwrap();
        let one = k.one();
        // (t+s)/(t+1) + (1-s)/(t+1) = 1
        let a = k.div(&k.add(&t, &s), &k.add(&t, &one)).unwrap();
        let b = k.div(&k.sub(&one, &s), &k.add(&t, &one)).unwrap();
        assert!(k.is_one(&k.add(&a, &b)));
        // 2t / 2s == t / s
        let two = k.from_i64(2);
        let x = k.div(&k.mul(&two, &t), &k.mul(&two, &s)).unwrap();
        let y = k.div(&t, &s).unwrap();
        assert_eq!(x, y);
    }
}
