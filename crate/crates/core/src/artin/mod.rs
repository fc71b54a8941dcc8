//! Finite-dimensional quotient algebras `k[x]/I` presented by standard
//! monomials, and the linear-algebra route to truncated signatures.
//!
//! An [`ArtinAlgebra`] is built once from a Gröbner basis. Afterwards all
//! products are computed from the variable actions alone, so the rank
//! formula in [`s_via_rank`] never calls back into the Gröbner engine and
//! serves as an independent check on colength differences.

mod subspace;

pub use subspace::{
    default_sample, enumerate_projective_points, enumerate_socle_subspaces, gaussian_binomial, sampled_lines, subspace_count,
    SubspaceIter,
};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, GroebnerBasis, QuotientBasis};
use crate::linalg::{axpy, from_dense, Echelon, Matrix, SparseMatrix, SparseVec};
use crate::poly::{PolyRing, Polynomial};

#[derive(Clone, Debug)]
pub struct ArtinAlgebra {
    gb: GroebnerBasis,
    basis: QuotientBasis,
    actions: Vec<SparseMatrix>,
    /// For every basis index `l > 0`: a variable `v` and the index of
    /// `ε'_l / x_v`, which is again a standard monomial.
    parents: Vec<(usize, usize)>,
}

impl ArtinAlgebra {
    pub fn from_quotient(ring: &PolyRing, defining: &[Polynomial]) -> Result<Self> {
        Self::from_groebner(buchberger(ring, defining)?)
    }

    pub fn from_groebner(gb: GroebnerBasis) -> Result<Self> {
        let basis = gb.quotient_basis()?;
        if !gb.is_primary_to_origin()? {
            return Err(Error::NotPrimaryToOrigin(
                "the quotient has points of its vanishing locus away from the origin".into(),
            ));
        }
        let ring = gb.ring().clone();
        let actions = (0..ring.nvars())
            .map(|v| basis.multiplication_matrix(&gb, v))
            .collect::<Result<Vec<_>>>()?;
        let mut parents = vec![(0, 0)];
        for m in &basis.monomials()[1..] {
            let v = m.exponents().iter().position(|&e| e > 0).expect("only the first basis element is 1");
            let mut e = m.exponents().to_vec();
            e[v] -= 1;
            let parent = basis
                .index_of(&crate::poly::Monomial::new(e))
                .expect("standard monomials form an order ideal");
            parents.push((v, parent));
        }
        Ok(ArtinAlgebra {
            gb,
            basis,
            actions,
            parents,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ring(&self) -> &PolyRing {
        self.gb.ring()
    }

    pub fn field(&self) -> &Field {
        self.gb.ring().field()
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn basis(&self) -> &QuotientBasis {
        &self.basis
    }

    pub fn variable_actions(&self) -> &[SparseMatrix] {
        &self.actions
    }

    /// Coordinates of the residue class of `f`.
    pub fn coordinates(&self, f: &Polynomial) -> SparseVec {
        self.basis.coordinates(&self.gb.normal_form(f))
    }

    pub fn element(&self, v: &[(usize, crate::field::FieldElement)]) -> Polynomial {
        self.basis.polynomial(self.ring(), v)
    }

    /// `ε'_k * v`, by applying the variable actions along the exponents of
    /// the `k`-th standard monomial.
    pub fn monomial_times(&self, k: usize, v: &[(usize, crate::field::FieldElement)]) -> SparseVec {
        let mut out: SparseVec = v.to_vec();
        for (var, &e) in self.basis.monomials()[k].exponents().iter().enumerate() {
            for _ in 0..e {
                if out.is_empty() {
                    return out;
                }
                out = self.actions[var].apply(self.field(), &out);
            }
        }
        out
    }

    /// Structure constants `d_{kl·}`: coordinates of `ε'_k ε'_l`.
    pub fn basis_product(&self, k: usize, l: usize) -> SparseVec {
        self.monomial_times(k, &[(l, self.field().one())])
    }

    /// The full tensor `d[k][l]`; intended for small algebras.
    pub fn structure_constants(&self) -> Vec<Vec<SparseVec>> {
        (0..self.dim())
            .map(|k| (0..self.dim()).map(|l| self.basis_product(k, l)).collect())
            .collect()
    }

    pub fn multiply(&self, a: &[(usize, crate::field::FieldElement)], b: &[(usize, crate::field::FieldElement)]) -> SparseVec {
        let field = self.field();
        let mut acc = Vec::new();
        for (k, c) in a {
            let term = self.monomial_times(*k, b);
            acc = axpy(field, &acc, c, &term);
        }
        acc
    }

    /// `[g ε'_1, ..., g ε'_m]`, computed along the parent tree of the
    /// standard monomials.
    pub fn translates(&self, g: &[(usize, crate::field::FieldElement)]) -> Vec<SparseVec> {
        let mut out: Vec<SparseVec> = Vec::with_capacity(self.dim());
        out.push(g.to_vec());
        for l in 1..self.dim() {
            let (v, parent) = self.parents[l];
            let next = if out[parent].is_empty() {
                Vec::new()
            } else {
                self.actions[v].apply(self.field(), &out[parent])
            };
            out.push(next);
        }
        out
    }

    /// Vector-space dimension of the ideal generated by `gens`.
    pub fn ideal_dimension(&self, gens: &[SparseVec]) -> usize {
        let mut ech = Echelon::new(self.field());
        for g in gens {
            for t in self.translates(g) {
                if !t.is_empty() {
                    ech.insert(&t);
                }
            }
        }
        ech.rank()
    }

    /// Checks commutativity, associativity and the unit on basis elements:
    /// exhaustively when `dim <= 64`, otherwise on a deterministic sample.
    pub fn verify_structure_constants(&self) -> Result<()> {
        let m = self.dim();
        let field = self.field();
        let idx: Vec<usize> = if m <= 64 {
            (0..m).collect()
        } else {
            let step = m / 24 + 1;
            (0..m).step_by(step).collect()
        };
        for &k in &idx {
            let unit = self.basis_product(0, k);
            if unit != vec![(k, field.one())] {
                return Err(Error::InvalidPresentation(format!("basis element 1 does not act as the unit on {k}")));
            }
            for &l in &idx {
                let kl = self.basis_product(k, l);
                if kl != self.basis_product(l, k) {
                    return Err(Error::InvalidPresentation(format!("products {k}*{l} and {l}*{k} differ")));
                }
                for &h in &idx {
                    let left = self.multiply(&kl, &[(h, field.one())]);
                    let right = self.multiply(&[(k, field.one())], &self.basis_product(l, h));
                    if left != right {
                        return Err(Error::InvalidPresentation(format!("associativity fails on ({k},{l},{h})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Polynomials whose residues form a basis of the socle `(I0 : m)/I0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleData {
    pub lifts: Vec<Polynomial>,
    pub coordinates: Vec<SparseVec>,
}

impl SocleData {
    pub fn dim(&self) -> usize {
        self.lifts.len()
    }
}

/// Socle of `A`: the common kernel of all variable actions, returned in
/// reduced echelon form with pivots on the largest possible monomials.
pub fn socle(a: &ArtinAlgebra) -> SocleData {
    let field = a.field();
    let m = a.dim();
    let mut stacked = Matrix::zeros(field, a.actions.len() * m, m);
    for (v, action) in a.actions.iter().enumerate() {
        for (j, col) in action.columns.iter().enumerate() {
            for (i, c) in col {
                stacked.set(v * m + i, j, c.clone());
            }
        }
    }
    let kernel = stacked.kernel(field);
    if kernel.is_empty() {
        return SocleData {
            lifts: Vec::new(),
            coordinates: Vec::new(),
        };
    }
    // Reverse the columns so the echelon pivots land on the highest monomials.
    let reversed: Vec<Vec<_>> = kernel.iter().map(|v| v.iter().rev().cloned().collect()).collect();
    let (rref, _) = Matrix::from_rows(reversed).expect("kernel rows").rref(field);
    let coordinates: Vec<SparseVec> = rref
        .rows()
        .map(|row| {
            let natural: Vec<_> = row.iter().rev().cloned().collect();
            from_dense(field, &natural)
        })
        .collect();
    let lifts = coordinates.iter().map(|c| a.element(c)).collect();
    SocleData { lifts, coordinates }
}

/// Generators `Σ_j M_ij ε_j` (one per nonzero row) to adjoin to `I0`.
pub fn ideal_from_matrix(ring: &PolyRing, socle: &SocleData, m: &Matrix) -> Result<Vec<Polynomial>> {
    let field = ring.field();
    if m.ncols() != socle.dim() {
        return Err(Error::ShapeMismatch(format!(
            "matrix has {} columns, socle dimension is {}",
            m.ncols(),
            socle.dim()
        )));
    }
    if m.is_zero(field) {
        return Err(Error::ZeroMatrix);
    }
    Ok(m.rows()
        .filter(|row| row.iter().any(|c| !field.is_zero(c)))
        .map(|row| {
            row.iter().zip(&socle.lifts).fold(ring.zero(), |acc, (c, eps)| {
                ring.add(&acc, &ring.scale(eps, c))
            })
        })
        .collect())
}

/// Row `i` holds the coordinates of `ε_i^(p^e)` in the standard-monomial
/// basis of `R/(J + I0^[p^e])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusCoordinates {
    pub rows: Vec<SparseVec>,
    pub e: u32,
}

pub fn frobenius_coordinates(big: &ArtinAlgebra, socle: &SocleData, e: u32) -> Result<FrobeniusCoordinates> {
    let ring = big.ring();
    let rows = socle
        .lifts
        .iter()
        .map(|eps| Ok(big.coordinates(&ring.frobenius_power(eps, e)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FrobeniusCoordinates { rows, e })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankEvaluation {
    pub rank_m_prime: usize,
    pub rank_m: usize,
    pub value: BigRational,
}

/// The generators `Σ_j M_ij^(p^e) c_j·` of `J^[p^e]/I0^[p^e]` inside the big algebra.
fn frobenius_generators(field: &Field, coords: &FrobeniusCoordinates, m: &Matrix) -> Vec<SparseVec> {
    m.rows()
        .map(|row| {
            row.iter().zip(&coords.rows).fold(Vec::new(), |acc, (a, c)| {
                let aq = field.frobenius(a, coords.e);
                axpy(field, &acc, &aq, c)
            })
        })
        .collect()
}

fn check_rank_inputs(field: &Field, coords: &FrobeniusCoordinates, m: &Matrix) -> Result<()> {
    if m.ncols() != coords.rows.len() {
        return Err(Error::ShapeMismatch(format!(
            "matrix has {} columns, {} Frobenius coordinate rows",
            m.ncols(),
            coords.rows.len()
        )));
    }
    if m.is_zero(field) {
        return Err(Error::ZeroMatrix);
    }
    Ok(())
}

/// Columns of `M'` straight from the structure-constant tensor: column
/// `(l, i)` is `(Σ_k Σ_j M_ij^(p^e) c_jk d_klh)_h`, ordered with `i`
/// varying fastest. Quadratic in the algebra dimension; for cross-checks.
pub fn m_prime_columns(coords: &FrobeniusCoordinates, big: &ArtinAlgebra, m: &Matrix) -> Result<Vec<SparseVec>> {
    let field = big.field();
    check_rank_inputs(field, coords, m)?;
    let d = big.structure_constants();
    let gens = frobenius_generators(field, coords, m);
    let mut columns = Vec::with_capacity(big.dim() * gens.len());
    for l in 0..big.dim() {
        for g in &gens {
            let mut col = Vec::new();
            for (k, gk) in g {
                col = axpy(field, &col, gk, &d[*k][l]);
            }
            columns.push(col);
        }
    }
    Ok(columns)
}

/// `rank(M') / (p^(e d) rank(M))`, which equals the truncated signature
/// of the socle ideal defined by `M`.
pub fn s_via_rank(coords: &FrobeniusCoordinates, big: &ArtinAlgebra, m: &Matrix, dimension: u32) -> Result<RankEvaluation> {
    let field = big.field();
    check_rank_inputs(field, coords, m)?;
    let rank_m = m.rank(field);
    let gens = frobenius_generators(field, coords, m);
    let rank_m_prime = big.ideal_dimension(&gens);
    let p = BigInt::from(field.characteristic());
    let scale = num_traits::pow(p, (coords.e * dimension) as usize) * BigInt::from(rank_m);
    Ok(RankEvaluation {
        rank_m_prime,
        rank_m,
        value: BigRational::new(BigInt::from(rank_m_prime), scale),
    })
}
