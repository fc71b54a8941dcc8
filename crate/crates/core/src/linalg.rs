//! Exact linear algebra over a [`Field`]: sparse vectors with an incremental
//! echelon basis for large quotient algebras, and small dense matrices with
//! reduced row-echelon forms.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Sparse vector: `(index, nonzero coefficient)` pairs sorted by index.
pub type SparseVec = Vec<(usize, FieldElement)>;

/// `x + c * y`.
pub fn axpy(field: &Field, x: &[(usize, FieldElement)], c: &FieldElement, y: &[(usize, FieldElement)]) -> SparseVec {
    if field.is_zero(c) {
        return x.to_vec();
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            std::cmp::Ordering::Less => {
                out.push(x[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((y[j].0, field.mul(c, &y[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let s = field.add(&x[i].1, &field.mul(c, &y[j].1));
                if !field.is_zero(&s) {
                    out.push((x[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(x[i..].iter().cloned());
    out.extend(y[j..].iter().map(|(k, v)| (*k, field.mul(c, v))));
    out
}

pub fn scale(field: &Field, x: &[(usize, FieldElement)], c: &FieldElement) -> SparseVec {
    if field.is_zero(c) {
        return Vec::new();
    }
    x.iter().map(|(k, v)| (*k, field.mul(c, v))).collect()
}

pub fn to_dense(field: &Field, x: &[(usize, FieldElement)], len: usize) -> Vec<FieldElement> {
    let mut out = vec![field.zero(); len];
    for (k, v) in x {
        out[*k] = v.clone();
    }
    out
}

pub fn from_dense(field: &Field, x: &[FieldElement]) -> SparseVec {
    x.iter()
        .enumerate()
        .filter(|(_, v)| !field.is_zero(v))
        .map(|(k, v)| (k, v.clone()))
        .collect()
}

/// Square or rectangular matrix stored by sparse columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    /// `self * v`.
    pub fn apply(&self, field: &Field, v: &[(usize, FieldElement)]) -> SparseVec {
        match v {
            [] => Vec::new(),
            [(j, c)] => scale(field, &self.columns[*j], c),
            _ => {
                let mut acc: BTreeMap<usize, FieldElement> = BTreeMap::new();
                for (j, c) in v {
                    for (i, a) in &self.columns[*j] {
                        let term = field.mul(a, c);
                        match acc.get_mut(i) {
                            Some(slot) => *slot = field.add(slot, &term),
                            None => {
                                acc.insert(*i, term);
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect()
            }
        }
    }

    pub fn to_dense(&self, field: &Field) -> Matrix {
        let mut m = Matrix::zeros(field, self.nrows, self.ncols());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col {
                m.set(*i, j, c.clone());
            }
        }
        m
    }
}

/// Incremental row-echelon basis of a subspace, for rank computations
/// where the vectors are long but sparse.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(field: &Field) -> Self {
        Echelon {
            field: field.clone(),
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[(usize, FieldElement)]) -> SparseVec {
        let mut v: SparseVec = v.to_vec();
        let mut start = 0;
        while start < v.len() {
            let (idx, c) = v[start].clone();
            match self.rows.get(&idx) {
                Some(row) => {
                    let neg = self.field.neg(&c);
                    // Entries before `start` are not pivots and stay untouched.
                    let tail = axpy(&self.field, &v[start..], &neg, row);
                    v.truncate(start);
                    v.extend(tail);
                }
                None => start += 1,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, FieldElement)]) -> bool {
        let mut v: SparseVec = v.to_vec();
        loop {
            let Some((idx, c)) = v.first().cloned() else {
                return false;
            };
            match self.rows.get(&idx) {
                Some(row) => v = axpy(&self.field, &v, &self.field.neg(&c), row),
                None => {
                    let inv = self.field.inv(&c).expect("nonzero pivot");
                    self.rows.insert(idx, scale(&self.field, &v, &inv));
                    return true;
                }
            }
        }
    }

    pub fn contains(&self, v: &[(usize, FieldElement)]) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("rows of unequal length".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FieldElement]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self, field: &Field) -> bool {
        self.data.iter().all(|v| field.is_zero(v))
    }

    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row-echelon form with zero rows removed, and the pivot columns.
    pub fn rref(&self, field: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !field.is_zero(m.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = field.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = field.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || field.is_zero(m.get(i, c)) {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = field.sub(m.get(i, j), &field.mul(&f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.rref(field).1.len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column, in
    /// increasing order of the free column.
    pub fn kernel(&self, field: &Field) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![field.zero(); self.cols];
                v[f] = field.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = field.neg(r.get(i, f));
                }
                v
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), &field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }
}
