//! Dense exact linear algebra: matrices, echelon forms and subspaces.

use std::fmt;

use crate::error::LinalgError;
use crate::field::Field;

/// A column vector of field elements.
pub type Vector<F> = Vec<<F as Field>::Elem>;

pub fn zero_vector<F: Field>(field: &F, d: usize) -> Vector<F> {
    vec![field.zero(); d]
}

pub fn unit_vector<F: Field>(field: &F, d: usize, i: usize) -> Vector<F> {
    let mut v = zero_vector(field, d);
    v[i] = field.one();
    v
}

pub fn is_zero_vector<F: Field>(field: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| field.is_zero(x))
}

/// `acc += c * v`
pub fn add_scaled<F: Field>(field: &F, acc: &mut [F::Elem], c: &F::Elem, v: &[F::Elem]) {
    if field.is_zero(c) {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !field.is_zero(x) {
            *a = field.add(a, &field.mul(c, x));
        }
    }
}

pub fn scale_vector<F: Field>(field: &F, c: &F::Elem, v: &[F::Elem]) -> Vector<F> {
    v.iter().map(|x| field.mul(c, x)).collect()
}

/// Dense row-major matrix over `F`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.render(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vector<F>>) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Self { field: field.clone(), rows: n, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_cols(field: &F, rows: usize, cols: &[Vector<F>]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::DimensionMismatch { expected: rows, found: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col_vectors(&self) -> Vec<Vector<F>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let v = f.add(out.get(i, j), &f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vector<F>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let f = &self.field;
        let mut out = zero_vector(f, self.rows);
        for (c, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !f.is_zero(a) {
                    *o = f.add(o, &f.mul(a, x));
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form, its rank and the pivot columns.
    ///
    /// Pivots are chosen as the first nonzero entry in column order.
    pub fn rref_with_pivots(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> (Self, usize) {
        let (m, p) = self.rref_with_pivots();
        (m, p.len())
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of `{v : M v = 0}`.
    pub fn nullspace(&self) -> Subspace<F> {
        let f = &self.field;
        let (m, pivots) = self.rref_with_pivots();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = zero_vector(f, self.cols);
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        Subspace::span(f, self.cols, &basis).expect("consistent dimensions")
    }

    pub fn invert(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, f.one());
        }
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Self::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    /// One solution of `M x = b` (free variables set to zero), if any.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vector<F>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let f = &self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vector(f, self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn det(&self) -> Result<F::Elem, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(det_of(&self.field, self.row_vectors()))
    }
}

/// Determinant by Gaussian elimination of a square list of rows.
pub fn det_of<F: Field>(f: &F, mut m: Vec<Vector<F>>) -> F::Elem {
    let n = m.len();
    let mut det = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(&m[i][c])) else {
            return f.zero();
        };
        if p != c {
            m.swap(p, c);
            det = f.neg(&det);
        }
        det = f.mul(&det, &m[c][c]);
        let inv = f.inv(&m[c][c]).expect("nonzero pivot");
        for i in c + 1..n {
            if f.is_zero(&m[i][c]) {
                continue;
            }
            let factor = f.mul(&m[i][c], &inv);
            for j in c..n {
                let v = f.sub(&m[i][j], &f.mul(&factor, &m[c][j]));
                m[i][j] = v;
            }
        }
    }
    det
}

/// A subspace of `F^d`, stored as its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|v| {
                let s: Vec<String> = v.iter().map(|x| self.field.render(x)).collect();
                format!("({})", s.join(","))
            })
            .collect();
        write!(f, "Subspace[d={}]{{{}}}", self.ambient, rows.join(", "))
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Self { field: field.clone(), ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit_vector(field, ambient, i)).collect();
        Self { field: field.clone(), ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span(field: &F, ambient: usize, vectors: &[Vector<F>]) -> Result<Self, LinalgError> {
        if vectors.is_empty() {
            return Ok(Self::zero(field, ambient));
        }
        let m = Matrix::from_rows(field, ambient, vectors.to_vec())?;
        let (red, pivots) = m.rref_with_pivots();
        let basis = (0..pivots.len()).map(|r| red.row(r).to_vec()).collect();
        Ok(Self { field: field.clone(), ambient, basis, pivots })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    /// Echelon basis vectors.
    pub fn basis(&self) -> &[Vector<F>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(&self.field, self.ambient, self.basis.clone()).expect("echelon rows")
    }

    fn check(&self, other: &Self) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[F::Elem]) -> Result<Option<Vector<F>>, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        let f = &self.field;
        let coords: Vec<_> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            add_scaled(f, &mut rest, &f.neg(c), b);
        }
        Ok(is_zero_vector(f, &rest).then_some(coords))
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool, LinalgError> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check(other)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(&self.field, self.ambient, &all)
    }

    /// Row vectors annihilating the subspace.
    pub fn annihilator(&self) -> Self {
        if self.basis.is_empty() {
            return Self::full(&self.field, self.ambient);
        }
        self.basis_matrix().nullspace()
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        let mut rows = self.annihilator().basis.clone();
        rows.extend(other.annihilator().basis.iter().cloned());
        if rows.is_empty() {
            return Ok(Self::full(&self.field, self.ambient));
        }
        Ok(Matrix::from_rows(&self.field, self.ambient, rows)?.nullspace())
    }

    /// Indices of standard basis vectors that extend this subspace to the
    /// whole space: those that are not pivot columns, in increasing order.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }

    pub fn complement_basis(&self) -> Vec<Vector<F>> {
        self.complement_indices()
            .into_iter()
            .map(|i| unit_vector(&self.field, self.ambient, i))
            .collect()
    }

    /// A basis of a complement of `self` inside `outer`, drawn from the
    /// echelon basis of `outer`.
    pub fn complement_within(&self, outer: &Self) -> Result<Vec<Vector<F>>, LinalgError> {
        self.check(outer)?;
        let mut current = self.clone();
        let mut out = Vec::new();
        for b in &outer.basis {
            if !current.contains(b)? {
                out.push(b.clone());
                current = current.sum(&Self::span(&self.field, self.ambient, std::slice::from_ref(b))?)?;
            }
        }
        Ok(out)
    }
}
