//! Exact linear algebra on the 8-dimensional coordinate space.
//!
//! A [`LinearMap`] is an 8x8 matrix whose column `j` is the image of basis
//! vector `j`. A [`Subspace`] is stored as the nonzero rows of its reduced
//! row-echelon form, which makes equality and hashing structural.
//!
//! Elimination always takes the leftmost available pivot; there is no
//! magnitude-based pivoting since every field here is exact.

use thiserror::Error;

use crate::field::Field;
use crate::octonion::{Octonion, DIM};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("singular matrix")]
    Singular,
}

/// Reduces `rows` (each of length `ncols`) to RREF in place, drops zero rows
/// and returns the pivot column of each remaining row.
pub(crate) fn rref<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(x, &field.mul(&factor, p));
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{ x : A x = 0 }` for the matrix given by `rows` (`ncols` wide).
pub(crate) fn null_space<F: Field>(
    field: &F,
    rows: &[Vec<F::Elem>],
    ncols: usize,
) -> Vec<Vec<F::Elem>> {
    let mut reduced = rows.to_vec();
    let pivots = rref(field, &mut reduced, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in reduced.iter().zip(&pivots) {
            v[pc] = field.neg(&row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a square matrix by elimination.
pub(crate) fn determinant<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> F::Elem {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !field.is_zero(&a[i][c])) else {
            return field.zero();
        };
        if p != c {
            a.swap(p, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[c][c]);
        let inv = field.inv(&a[c][c]).expect("pivot is nonzero");
        for i in c + 1..n {
            if field.is_zero(&a[i][c]) {
                continue;
            }
            let factor = field.mul(&a[i][c], &inv);
            for k in c..n {
                let t = field.mul(&factor, &a[c][k]);
                a[i][k] = field.sub(&a[i][k], &t);
            }
        }
    }
    det
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap<F: Field> {
    field: F,
    rows: [[F::Elem; DIM]; DIM],
}

impl<F: Field> LinearMap<F> {
    pub fn from_fn(field: F, mut entry: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let rows = std::array::from_fn(|r| std::array::from_fn(|c| entry(r, c)));
        LinearMap { field, rows }
    }

    pub fn from_rows(field: F, rows: [[F::Elem; DIM]; DIM]) -> Self {
        LinearMap { field, rows }
    }

    pub fn from_int_rows(field: F, rows: [[i64; DIM]; DIM]) -> Self {
        let f = field.clone();
        LinearMap::from_fn(field, |r, c| f.from_i64(rows[r][c]))
    }

    /// Column `j` is the image of basis vector `j`.
    pub fn from_columns(field: F, columns: &[Octonion<F>; DIM]) -> Self {
        LinearMap::from_fn(field, |r, c| columns[c][r].clone())
    }

    pub fn zero(field: F) -> Self {
        let f = field.clone();
        LinearMap::from_fn(field, |_, _| f.zero())
    }

    pub fn identity(field: F) -> Self {
        LinearMap::scalar(field.clone(), &field.one())
    }

    /// `s * id`.
    pub fn scalar(field: F, s: &F::Elem) -> Self {
        let f = field.clone();
        LinearMap::from_fn(field, |r, c| if r == c { s.clone() } else { f.zero() })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn entry(&self, r: usize, c: usize) -> &F::Elem {
        &self.rows[r][c]
    }

    pub fn rows(&self) -> &[[F::Elem; DIM]; DIM] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Octonion<F> {
        Octonion::new(std::array::from_fn(|r| self.rows[r][j].clone()))
    }

    pub fn columns(&self) -> [Octonion<F>; DIM] {
        std::array::from_fn(|j| self.column(j))
    }

    pub fn apply(&self, x: &Octonion<F>) -> Octonion<F> {
        let f = &self.field;
        Octonion::new(std::array::from_fn(|r| {
            let mut acc = f.zero();
            for c in 0..DIM {
                if !f.is_zero(&x[c]) && !f.is_zero(&self.rows[r][c]) {
                    acc = f.mul_add(&self.rows[r][c], &x[c], &acc);
                }
            }
            acc
        }))
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &LinearMap<F>) -> LinearMap<F> {
        let f = &self.field;
        let mut out = LinearMap::zero(f.clone());
        for r in 0..DIM {
            for k in 0..DIM {
                let a = &self.rows[r][k];
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..DIM {
                    let b = &other.rows[k][c];
                    if !f.is_zero(b) {
                        out.rows[r][c] = f.mul_add(a, b, &out.rows[r][c]);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> LinearMap<F> {
        (0..k).fold(LinearMap::identity(self.field.clone()), |acc, _| acc.compose(self))
    }

    pub fn add(&self, other: &LinearMap<F>) -> LinearMap<F> {
        let f = &self.field;
        LinearMap::from_fn(f.clone(), |r, c| f.add(&self.rows[r][c], &other.rows[r][c]))
    }

    pub fn sub(&self, other: &LinearMap<F>) -> LinearMap<F> {
        let f = &self.field;
        LinearMap::from_fn(f.clone(), |r, c| f.sub(&self.rows[r][c], &other.rows[r][c]))
    }

    pub fn neg(&self) -> LinearMap<F> {
        let f = &self.field;
        LinearMap::from_fn(f.clone(), |r, c| f.neg(&self.rows[r][c]))
    }

    pub fn scale(&self, s: &F::Elem) -> LinearMap<F> {
        let f = &self.field;
        LinearMap::from_fn(f.clone(), |r, c| f.mul(s, &self.rows[r][c]))
    }

    pub fn transpose(&self) -> LinearMap<F> {
        LinearMap::from_fn(self.field.clone(), |r, c| self.rows[c][r].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        *self == LinearMap::identity(self.field.clone())
    }

    pub fn trace(&self) -> F::Elem {
        let f = &self.field;
        (0..DIM).fold(f.zero(), |acc, i| f.add(&acc, &self.rows[i][i]))
    }

    fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        self.rows.iter().map(|r| r.to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        rref(&self.field, &mut rows, DIM).len()
    }

    pub fn determinant(&self) -> F::Elem {
        determinant(&self.field, &self.row_vecs())
    }

    pub fn kernel(&self) -> Subspace<F> {
        let basis: Vec<Octonion<F>> = null_space(&self.field, &self.row_vecs(), DIM)
            .into_iter()
            .map(|v| Octonion::new(v.try_into().expect("length 8")))
            .collect();
        Subspace::span(self.field.clone(), &basis)
    }

    pub fn image(&self) -> Subspace<F> {
        Subspace::span(self.field.clone(), &self.columns())
    }

    /// Gauss-Jordan on `[M | I]`.
    pub fn invert(&self) -> Result<LinearMap<F>, LinAlgError> {
        let f = &self.field;
        let mut aug: Vec<Vec<F::Elem>> = (0..DIM)
            .map(|r| {
                let mut row = self.rows[r].to_vec();
                row.extend((0..DIM).map(|c| if c == r { f.one() } else { f.zero() }));
                row
            })
            .collect();
        let pivots = rref(f, &mut aug, 2 * DIM);
        if pivots.len() < DIM || pivots[DIM - 1] != DIM - 1 {
            return Err(LinAlgError::Singular);
        }
        Ok(LinearMap::from_fn(f.clone(), |r, c| aug[r][DIM + c].clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == DIM
    }

    /// Image of a subspace.
    pub fn map_subspace(&self, s: &Subspace<F>) -> Subspace<F> {
        let images: Vec<Octonion<F>> = s.basis().iter().map(|x| self.apply(x)).collect();
        Subspace::span(self.field.clone(), &images)
    }

    /// Coefficients `c_0, ..., c_8` (low to high, monic) of `det(t I - M)`,
    /// via reduction to upper Hessenberg form.
    pub fn characteristic_polynomial(&self) -> Vec<F::Elem> {
        let f = &self.field;
        let n = DIM;
        let mut h: Vec<Vec<F::Elem>> = self.row_vecs();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| !f.is_zero(&h[i][j])) else {
                continue;
            };
            if i != j + 1 {
                h.swap(i, j + 1);
                for row in h.iter_mut() {
                    row.swap(i, j + 1);
                }
            }
            let t = f.inv(&h[j + 1][j]).expect("nonzero pivot");
            for k in j + 2..n {
                if f.is_zero(&h[k][j]) {
                    continue;
                }
                let u = f.mul(&h[k][j], &t);
                for c in 0..n {
                    let s = f.mul(&u, &h[j + 1][c]);
                    h[k][c] = f.sub(&h[k][c], &s);
                }
                for row in h.iter_mut() {
                    let s = f.mul(&u, &row[k]);
                    row[j + 1] = f.add(&row[j + 1], &s);
                }
            }
        }
        // p_m is the characteristic polynomial of the leading m x m block.
        let mut polys: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
        for m in 1..=n {
            let prev = &polys[m - 1];
            let mut p = vec![f.zero(); m + 1];
            for (d, c) in prev.iter().enumerate() {
                p[d + 1] = f.add(&p[d + 1], c);
                p[d] = f.sub(&p[d], &f.mul(&h[m - 1][m - 1], c));
            }
            let mut t = f.one();
            for i in 1..m {
                t = f.mul(&t, &h[m - i][m - i - 1]);
                let coeff = f.mul(&t, &h[m - i - 1][m - 1]);
                for (d, c) in polys[m - i - 1].iter().enumerate() {
                    p[d] = f.sub(&p[d], &f.mul(&coeff, c));
                }
            }
            polys.push(p);
        }
        polys.pop().expect("n >= 1")
    }
}

/// A subspace of the coordinate space in canonical reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    field: F,
    rows: Vec<Octonion<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn span(field: F, vectors: &[Octonion<F>]) -> Self {
        let mut rows: Vec<Vec<F::Elem>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
        let pivots = rref(&field, &mut rows, DIM);
        let rows = rows
            .into_iter()
            .map(|r| Octonion::new(r.try_into().expect("length 8")))
            .collect();
        Subspace { field, rows, pivots }
    }

    pub fn zero(field: F) -> Self {
        Subspace {
            field,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: F) -> Self {
        let id = LinearMap::identity(field.clone());
        Subspace::span(field, &id.columns())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The canonical RREF basis.
    pub fn basis(&self) -> &[Octonion<F>] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `x` with respect to the RREF basis, if `x` lies in the
    /// subspace.
    pub fn coordinates(&self, x: &Octonion<F>) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let coeffs: Vec<F::Elem> = self.pivots.iter().map(|&p| x[p].clone()).collect();
        let mut residual = x.coords().clone();
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if f.is_zero(c) {
                continue;
            }
            for (r, v) in residual.iter_mut().zip(row.coords()) {
                *r = f.sub(r, &f.mul(c, v));
            }
        }
        residual.iter().all(|r| f.is_zero(r)).then_some(coeffs)
    }

    pub fn contains(&self, x: &Octonion<F>) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.rows.iter().all(|x| self.contains(x))
    }

    /// Linear combination of the basis with the given coefficients.
    pub fn combine(&self, coeffs: &[F::Elem]) -> Octonion<F> {
        let f = &self.field;
        let mut out: [F::Elem; DIM] = std::array::from_fn(|_| f.zero());
        for (c, row) in coeffs.iter().zip(&self.rows) {
            for (o, v) in out.iter_mut().zip(row.coords()) {
                *o = f.mul_add(c, v, o);
            }
        }
        Octonion::new(out)
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Subspace::span(self.field.clone(), &all)
    }

    /// Solves `sum a_i v_i = sum b_j w_j` and maps the solutions back.
    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        let f = &self.field;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(f.clone());
        }
        let rows: Vec<Vec<F::Elem>> = (0..DIM)
            .map(|k| {
                let mut row: Vec<F::Elem> = self.rows.iter().map(|v| v[k].clone()).collect();
                row.extend(other.rows.iter().map(|w| f.neg(&w[k])));
                row
            })
            .collect();
        let vectors: Vec<Octonion<F>> = null_space(f, &rows, a + b)
            .into_iter()
            .map(|sol| self.combine(&sol[..a]))
            .collect();
        Subspace::span(f.clone(), &vectors)
    }

    /// A complement spanned by the standard basis vectors at non-pivot
    /// columns, in increasing order.
    pub fn standard_complement(&self) -> Vec<usize> {
        (0..DIM).filter(|c| !self.pivots.contains(c)).collect()
    }
}
