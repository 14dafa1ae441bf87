//! The n-Lie algebra data model: bracket tables, the Filippov identity,
//! derived and central series, quotients, sums and base changes.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{AlgebraError, LinalgError};
use crate::field::Field;
use crate::linalg::{add_scaled, det_of, is_zero_vector, unit_vector, zero_vector, Matrix, Subspace, Vector};
use crate::tuples::{combinations, one_based, sort_with_sign};

/// An alternating n-ary bracket on `F^d`, stored on strictly increasing
/// 0-based index tuples. Absent keys are zero brackets.
#[derive(Clone)]
pub struct NLieAlgebra<F: Field> {
    field: F,
    arity: usize,
    dim: usize,
    brackets: BTreeMap<Vec<usize>, Vector<F>>,
    labels: Option<Vec<String>>,
}

/// Table equality: labels are presentation only.
impl<F: Field> PartialEq for NLieAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.arity == other.arity
            && self.dim == other.dim
            && self.brackets == other.brackets
    }
}

impl<F: Field> Eq for NLieAlgebra<F> {}

impl<F: Field> fmt::Debug for NLieAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NLieAlgebra(n={}, d={}, {}) {{", self.arity, self.dim, self.field.spec())?;
        for (k, v) in &self.brackets {
            write!(f, " {:?}={}", one_based(k), self.render_vector(v))?;
        }
        write!(f, " }}")
    }
}

/// Outcome of checking the Filippov identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilippovCheck<F: Field> {
    Pass,
    /// First failing pair in iteration order (0-based indices).
    Violation { x: Vec<usize>, y: Vec<usize>, lhs: Vector<F>, rhs: Vector<F> },
}

impl<F: Field> FilippovCheck<F> {
    pub fn passed(&self) -> bool {
        matches!(self, FilippovCheck::Pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NilpotencyClass {
    Abelian,
    Class(usize),
    NotNilpotent,
}

impl fmt::Display for NilpotencyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NilpotencyClass::Abelian => write!(f, "abelian"),
            NilpotencyClass::Class(c) => write!(f, "{c}"),
            NilpotencyClass::NotNilpotent => write!(f, "not nilpotent"),
        }
    }
}

/// Derived series `A = A¹ ⊇ A² ⊇ …` and upper central series `0 = Z₀ ⊆ Z₁ ⊆ …`,
/// each listed up to the point where it stabilises.
#[derive(Clone, Debug)]
pub struct SeriesReport<F: Field> {
    pub derived: Vec<Subspace<F>>,
    pub central: Vec<Subspace<F>>,
    pub class: NilpotencyClass,
}

/// An invertible matrix whose columns are the new basis vectors written in
/// old coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange<F: Field> {
    matrix: Matrix<F>,
    inverse: Matrix<F>,
}

impl<F: Field> BasisChange<F> {
    pub fn new(matrix: Matrix<F>) -> Result<Self, LinalgError> {
        let inverse = matrix.invert()?;
        Ok(Self { matrix, inverse })
    }

    pub fn identity(field: &F, d: usize) -> Self {
        let m = Matrix::identity(field, d);
        Self { matrix: m.clone(), inverse: m }
    }

    /// Basis change from new basis vectors given in old coordinates.
    pub fn from_columns(field: &F, d: usize, cols: &[Vector<F>]) -> Result<Self, LinalgError> {
        Self::new(Matrix::from_cols(field, d, cols)?)
    }

    /// `e'_j = scalars[j] · e_{perm[j]}`.
    pub fn signed_permutation(field: &F, perm: &[usize], scalars: &[F::Elem]) -> Result<Self, LinalgError> {
        let d = perm.len();
        let cols: Vec<_> = perm
            .iter()
            .zip(scalars)
            .map(|(&p, c)| {
                let mut v = zero_vector(field, d);
                v[p] = c.clone();
                v
            })
            .collect();
        Self::from_columns(field, d, &cols)
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }
    pub fn inverse_matrix(&self) -> &Matrix<F> {
        &self.inverse
    }
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn inverse(&self) -> Self {
        Self { matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    /// The change equivalent to applying `self` and then `next`.
    pub fn then(&self, next: &Self) -> Result<Self, LinalgError> {
        Ok(Self { matrix: self.matrix.mul(&next.matrix)?, inverse: next.inverse.mul(&self.inverse)? })
    }
}

impl<F: Field> NLieAlgebra<F> {
    pub fn new(field: &F, arity: usize, dim: usize) -> Result<Self, AlgebraError> {
        if arity < 2 {
            return Err(AlgebraError::InvalidArity(arity));
        }
        Ok(Self { field: field.clone(), arity, dim, brackets: BTreeMap::new(), labels: None })
    }

    /// The abelian algebra F(d).
    pub fn abelian(field: &F, arity: usize, dim: usize) -> Result<Self, AlgebraError> {
        Self::new(field, arity, dim)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn arity(&self) -> usize {
        self.arity
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.dim {
            self.labels = Some(labels);
        }
        self
    }

    /// Nonzero brackets keyed by increasing 0-based tuples.
    pub fn brackets(&self) -> &BTreeMap<Vec<usize>, Vector<F>> {
        &self.brackets
    }

    pub fn is_abelian_table(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn render_vector(&self, v: &[F::Elem]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !self.field.is_zero(x))
            .map(|(i, x)| {
                if self.field.is_one(x) {
                    format!("e{}", i + 1)
                } else {
                    format!("{}*e{}", self.field.render(x), i + 1)
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    fn check_vector(&self, v: &[F::Elem]) -> Result<(), AlgebraError> {
        if v.len() != self.dim {
            return Err(LinalgError::DimensionMismatch { expected: self.dim, found: v.len() }.into());
        }
        Ok(())
    }

    /// Sets `[e_{i₁},…,e_{iₙ}] = value` for 0-based indices in any order;
    /// the stored key is the sorted tuple with the sign absorbed.
    pub fn set_bracket(&mut self, indices: &[usize], value: Vector<F>) -> Result<(), AlgebraError> {
        if indices.len() != self.arity {
            return Err(AlgebraError::WrongArgCount { expected: self.arity, found: indices.len() });
        }
        self.check_vector(&value)?;
        let (key, negative) = sort_with_sign(indices)
            .filter(|(k, _)| k.iter().all(|&i| i < self.dim))
            .ok_or_else(|| AlgebraError::InvalidKey(indices.to_vec(), self.dim))?;
        let value = if negative { value.iter().map(|x| self.field.neg(x)).collect() } else { value };
        if is_zero_vector(&self.field, &value) {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, value);
        }
        Ok(())
    }

    /// Convenience for monomial tables: `[e_{i₁},…] = e_target` with 1-based indices.
    pub fn set_monomial(&mut self, indices_1: &[usize], target_1: usize) -> Result<(), AlgebraError> {
        let idx: Vec<usize> = indices_1.iter().map(|i| i.wrapping_sub(1)).collect();
        if target_1 == 0 || target_1 > self.dim {
            return Err(AlgebraError::InvalidKey(vec![target_1], self.dim));
        }
        let v = unit_vector(&self.field, self.dim, target_1 - 1);
        self.set_bracket(&idx, v)
    }

    /// Bracket of basis vectors with 0-based indices in any order.
    pub fn bracket_basis(&self, indices: &[usize]) -> Vector<F> {
        match sort_with_sign(indices) {
            None => zero_vector(&self.field, self.dim),
            Some((key, negative)) => match self.brackets.get(&key) {
                None => zero_vector(&self.field, self.dim),
                Some(v) if negative => v.iter().map(|x| self.field.neg(x)).collect(),
                Some(v) => v.clone(),
            },
        }
    }

    /// Multilinear alternating extension of the table.
    pub fn bracket(&self, args: &[Vector<F>]) -> Result<Vector<F>, AlgebraError> {
        if args.len() != self.arity {
            return Err(AlgebraError::WrongArgCount { expected: self.arity, found: args.len() });
        }
        for a in args {
            self.check_vector(a)?;
        }
        let f = &self.field;
        let mut out = zero_vector(f, self.dim);
        for (key, value) in &self.brackets {
            // Coefficient of the key tuple in v₁∧…∧vₙ.
            let minor: Vec<Vector<F>> =
                args.iter().map(|v| key.iter().map(|&k| v[k].clone()).collect()).collect();
            if minor.iter().any(|r| is_zero_vector(f, r)) {
                continue;
            }
            let c = det_of(f, minor);
            add_scaled(f, &mut out, &c, value);
        }
        Ok(out)
    }

    /// `[v, e_{j₂},…,e_{jₙ}]` for a vector `v` and basis indices `rest`.
    pub fn bracket_vector_with_basis(&self, v: &[F::Elem], rest: &[usize]) -> Vector<F> {
        let f = &self.field;
        let mut out = zero_vector(f, self.dim);
        let mut idx = Vec::with_capacity(self.arity);
        for (k, c) in v.iter().enumerate() {
            if f.is_zero(c) || rest.contains(&k) {
                continue;
            }
            idx.clear();
            idx.push(k);
            idx.extend_from_slice(rest);
            let b = self.bracket_basis(&idx);
            add_scaled(f, &mut out, c, &b);
        }
        out
    }

    /// Bracket where position `slot` holds a vector and the rest are basis indices.
    fn bracket_slot(&self, basis: &[usize], slot: usize, v: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = zero_vector(f, self.dim);
        let mut idx = basis.to_vec();
        for (k, c) in v.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            idx[slot] = k;
            let b = self.bracket_basis(&idx);
            add_scaled(f, &mut out, c, &b);
        }
        out
    }

    /// Keys are strictly increasing in range and values have length d.
    pub fn check_alternating(&self) -> bool {
        self.brackets.iter().all(|(k, v)| {
            k.len() == self.arity
                && k.windows(2).all(|w| w[0] < w[1])
                && k.iter().all(|&i| i < self.dim)
                && v.len() == self.dim
        })
    }

    /// Checks `[[x₁…xₙ],y₂…yₙ] = Σᵢ [x₁,…,[xᵢ,y₂…yₙ],…,xₙ]` on all increasing basis
    /// tuples `x` and increasing basis (n-1)-tuples `y`.
    pub fn check_filippov(&self) -> FilippovCheck<F> {
        let f = &self.field;
        let n = self.arity;
        // ad(y) columns, skipping the (common) tuples with ad(y) = 0.
        let ads: Vec<(Vec<usize>, Vec<Option<Vector<F>>>)> = combinations(self.dim, n - 1)
            .into_iter()
            .filter_map(|y| {
                let cols: Vec<Option<Vector<F>>> = (0..self.dim)
                    .map(|i| {
                        let mut idx = vec![i];
                        idx.extend_from_slice(&y);
                        Some(self.bracket_basis(&idx)).filter(|v| !is_zero_vector(f, v))
                    })
                    .collect();
                cols.iter().any(Option::is_some).then_some((y, cols))
            })
            .collect();
        for x in combinations(self.dim, n) {
            let xv = self.bracket_basis(&x);
            for (y, ad) in &ads {
                let mut lhs = zero_vector(f, self.dim);
                for (k, c) in xv.iter().enumerate() {
                    if let (false, Some(col)) = (f.is_zero(c), &ad[k]) {
                        add_scaled(f, &mut lhs, c, col);
                    }
                }
                let mut rhs = zero_vector(f, self.dim);
                for i in 0..n {
                    if let Some(inner) = &ad[x[i]] {
                        let term = self.bracket_slot(&x, i, inner);
                        add_scaled(f, &mut rhs, &f.one(), &term);
                    }
                }
                if lhs != rhs {
                    return FilippovCheck::Violation { x, y: y.clone(), lhs, rhs };
                }
            }
        }
        FilippovCheck::Pass
    }

    /// `M_J` with `M_J e_i = [e_i, e_J]` for an increasing (n-1)-tuple `J`.
    pub fn ad_matrix(&self, rest: &[usize]) -> Matrix<F> {
        let cols: Vec<_> = (0..self.dim)
            .map(|i| {
                let mut idx = vec![i];
                idx.extend_from_slice(rest);
                self.bracket_basis(&idx)
            })
            .collect();
        Matrix::from_cols(&self.field, self.dim, &cols).expect("square")
    }

    /// All ad matrices over increasing (n-1)-tuples, skipping zero ones.
    pub fn ad_matrices(&self) -> Vec<Matrix<F>> {
        combinations(self.dim, self.arity - 1)
            .into_iter()
            .map(|j| self.ad_matrix(&j))
            .filter(|m| (0..m.rows()).any(|r| !is_zero_vector(&self.field, m.row(r))))
            .collect()
    }

    /// `A² = span of all brackets`.
    pub fn derived_algebra(&self) -> Subspace<F> {
        let vals: Vec<_> = self.brackets.values().cloned().collect();
        Subspace::span(&self.field, self.dim, &vals).expect("values have length d")
    }

    /// `[S, A, …, A]`.
    pub fn bracket_with_algebra(&self, s: &Subspace<F>) -> Subspace<F> {
        let mut vals = Vec::new();
        for rest in combinations(self.dim, self.arity - 1) {
            for b in s.basis() {
                let v = self.bracket_vector_with_basis(b, &rest);
                if !is_zero_vector(&self.field, &v) {
                    vals.push(v);
                }
            }
        }
        Subspace::span(&self.field, self.dim, &vals).expect("length d")
    }

    /// `{x : [x, A, …, A] ⊆ S}`.
    fn preimage_center(&self, s: &Subspace<F>) -> Subspace<F> {
        let ann = s.annihilator();
        if ann.is_zero() {
            return Subspace::full(&self.field, self.dim);
        }
        let mut rows = Vec::new();
        for m in self.ad_matrices() {
            for a in ann.basis() {
                // Row functional x ↦ a · (M x).
                let row: Vec<_> = (0..self.dim)
                    .map(|c| {
                        let mut acc = self.field.zero();
                        for r in 0..self.dim {
                            let e = m.get(r, c);
                            if !self.field.is_zero(e) && !self.field.is_zero(&a[r]) {
                                acc = self.field.add(&acc, &self.field.mul(&a[r], e));
                            }
                        }
                        acc
                    })
                    .collect();
                if !is_zero_vector(&self.field, &row) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return Subspace::full(&self.field, self.dim);
        }
        Matrix::from_rows(&self.field, self.dim, rows).expect("length d").nullspace()
    }

    /// `Z(A) = {x : [x, A, …, A] = 0}`.
    pub fn center(&self) -> Subspace<F> {
        self.preimage_center(&Subspace::zero(&self.field, self.dim))
    }

    pub fn derived_series(&self) -> Vec<Subspace<F>> {
        let mut series = vec![Subspace::full(&self.field, self.dim)];
        loop {
            let next = self.bracket_with_algebra(series.last().expect("nonempty"));
            if &next == series.last().expect("nonempty") {
                return series;
            }
            let done = next.is_zero();
            series.push(next);
            if done {
                return series;
            }
        }
    }

    pub fn upper_central_series(&self) -> Vec<Subspace<F>> {
        let mut series = vec![Subspace::zero(&self.field, self.dim)];
        loop {
            let next = self.preimage_center(series.last().expect("nonempty"));
            if &next == series.last().expect("nonempty") {
                return series;
            }
            series.push(next);
        }
    }

    pub fn nilpotency_class(&self) -> NilpotencyClass {
        class_from_derived(&self.derived_series())
    }

    pub fn series_report(&self) -> SeriesReport<F> {
        let derived = self.derived_series();
        let class = class_from_derived(&derived);
        SeriesReport { derived, central: self.upper_central_series(), class }
    }

    /// Non-abelian with `A² ⊆ Z(A)`.
    pub fn is_class_two(&self) -> bool {
        let d2 = self.derived_algebra();
        !d2.is_zero() && d2.is_subspace_of(&self.center()).expect("same ambient")
    }

    /// The table in the basis given by the columns of `p`:
    /// `[e'_{i₁},…,e'_{iₙ}]' = P⁻¹ [P e_{i₁},…,P e_{iₙ}]`.
    pub fn apply_basis_change(&self, p: &BasisChange<F>) -> Result<Self, AlgebraError> {
        if p.dim() != self.dim {
            return Err(LinalgError::DimensionMismatch { expected: self.dim, found: p.dim() }.into());
        }
        if p.matrix().field() != &self.field {
            return Err(AlgebraError::FieldMismatch);
        }
        let f = &self.field;
        let cols = p.matrix().col_vectors();
        let mut out = Self::new(f, self.arity, self.dim)?;
        out.labels = self.labels.clone();
        for idx in combinations(self.dim, self.arity) {
            let args: Vec<_> = idx.iter().map(|&i| cols[i].clone()).collect();
            let v = self.bracket(&args)?;
            if is_zero_vector(f, &v) {
                continue;
            }
            let w = p.inverse_matrix().mul_vec(&v)?;
            out.brackets.insert(idx, w);
        }
        Ok(out)
    }

    /// `A/I` for a central subspace `I`, on the standard basis vectors that are
    /// not pivot columns of `I`, together with the coordinate projection.
    pub fn quotient_central(&self, ideal: &Subspace<F>) -> Result<(Self, Matrix<F>), AlgebraError> {
        if ideal.ambient() != self.dim {
            return Err(LinalgError::DimensionMismatch { expected: self.dim, found: ideal.ambient() }.into());
        }
        if !ideal.is_subspace_of(&self.center())? {
            return Err(AlgebraError::NotCentral);
        }
        let f = &self.field;
        let keep = ideal.complement_indices();
        let k = keep.len();
        let project = |v: &[F::Elem]| -> Vector<F> {
            let mut r = v.to_vec();
            for (b, &p) in ideal.basis().iter().zip(ideal.pivots()) {
                let c = f.neg(&r[p]);
                add_scaled(f, &mut r, &c, b);
            }
            keep.iter().map(|&i| r[i].clone()).collect()
        };
        let proj_cols: Vec<_> = (0..self.dim).map(|i| project(&unit_vector(f, self.dim, i))).collect();
        let projection = Matrix::from_cols(f, k, &proj_cols)?;
        let mut q = Self::new(f, self.arity, k)?;
        if let Some(l) = &self.labels {
            q.labels = Some(keep.iter().map(|&i| l[i].clone()).collect());
        }
        for idx in combinations(k, self.arity) {
            let orig: Vec<usize> = idx.iter().map(|&i| keep[i]).collect();
            let v = project(&self.bracket_basis(&orig));
            if !is_zero_vector(f, &v) {
                q.brackets.insert(idx, v);
            }
        }
        Ok((q, projection))
    }

    /// Block direct sum; mixed brackets vanish.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.arity != other.arity {
            return Err(AlgebraError::ArityMismatch(self.arity, other.arity));
        }
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch);
        }
        let f = &self.field;
        let d = self.dim + other.dim;
        let mut out = Self::new(f, self.arity, d)?;
        for (k, v) in &self.brackets {
            let mut w = v.clone();
            w.extend(zero_vector(f, other.dim));
            out.brackets.insert(k.clone(), w);
        }
        for (k, v) in &other.brackets {
            let key = k.iter().map(|i| i + self.dim).collect();
            let mut w = zero_vector(f, self.dim);
            w.extend(v.iter().cloned());
            out.brackets.insert(key, w);
        }
        Ok(out)
    }

    /// Adds one new central coordinate (index `d`, 0-based) receiving the
    /// cocycle values; Filippov validity is left to the caller.
    pub fn central_extension(&self, cocycle: &BTreeMap<Vec<usize>, F::Elem>) -> Result<Self, AlgebraError> {
        let f = &self.field;
        let d = self.dim + 1;
        let mut out = Self::new(f, self.arity, d)?;
        for (k, v) in &self.brackets {
            let mut w = v.clone();
            w.push(f.zero());
            out.brackets.insert(k.clone(), w);
        }
        for (k, c) in cocycle {
            if k.len() != self.arity || !k.windows(2).all(|w| w[0] < w[1]) || k.iter().any(|&i| i >= self.dim) {
                return Err(AlgebraError::InvalidKey(k.clone(), self.dim));
            }
            if f.is_zero(c) {
                continue;
            }
            let entry = out.brackets.entry(k.clone()).or_insert_with(|| zero_vector(f, d));
            entry[self.dim] = f.add(&entry[self.dim], c);
        }
        Ok(out)
    }

    /// First increasing tuple where two tables differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Vec<usize>, Vector<F>, Vector<F>)> {
        if self.dim != other.dim || self.arity != other.arity {
            return Some((Vec::new(), Vec::new(), Vec::new()));
        }
        let keys: std::collections::BTreeSet<_> = self.brackets.keys().chain(other.brackets.keys()).collect();
        for k in keys {
            let a = self.bracket_basis(k);
            let b = other.bracket_basis(k);
            if a != b {
                return Some((k.clone(), a, b));
            }
        }
        None
    }

    /// Whether every structure constant is an integer.
    pub fn is_integral(&self) -> bool {
        self.brackets.values().flatten().all(|x| self.field.to_integer(x).is_some())
    }

    /// Transports the table to another field through a scalar map.
    pub fn map_field<G: Field>(
        &self,
        target: &G,
        mut map: impl FnMut(&F::Elem) -> Option<G::Elem>,
    ) -> Option<NLieAlgebra<G>> {
        let mut out = NLieAlgebra::new(target, self.arity, self.dim).ok()?;
        for (k, v) in &self.brackets {
            let w: Option<Vec<_>> = v.iter().map(&mut map).collect();
            let w = w?;
            if !is_zero_vector(target, &w) {
                out.brackets.insert(k.clone(), w);
            }
        }
        out.labels = self.labels.clone();
        Some(out)
    }

    /// Reduction of an integral table into another field (e.g. GF(p)).
    pub fn reduce_integral<G: Field>(&self, target: &G) -> Option<NLieAlgebra<G>> {
        self.map_field(target, |x| {
            let i = self.field.to_integer(x)?;
            target.parse(&i.to_string()).ok()
        })
    }
}

fn class_from_derived<F: Field>(derived: &[Subspace<F>]) -> NilpotencyClass {
    let last = derived.last().expect("nonempty");
    if !last.is_zero() {
        return NilpotencyClass::NotNilpotent;
    }
    // derived = [A¹, …, A^{c+1} = 0]
    match derived.len() {
        0 | 1 => NilpotencyClass::Abelian,
        2 => NilpotencyClass::Abelian,
        l => NilpotencyClass::Class(l - 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn heisenberg3() -> NLieAlgebra<Rationals> {
        let mut a = NLieAlgebra::new(&Rationals, 3, 4).unwrap();
        a.set_monomial(&[1, 2, 3], 4).unwrap();
        a
    }

    fn q(v: &[i64]) -> Vector<Rationals> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn bracket_signs_and_repeats() {
        let a = heisenberg3();
        let e = |i: usize| unit_vector(&Rationals, 4, i);
        assert_eq!(a.bracket(&[e(0), e(1), e(2)]).unwrap(), q(&[0, 0, 0, 1]));
        assert_eq!(a.bracket(&[e(1), e(0), e(2)]).unwrap(), q(&[0, 0, 0, -1]));
        let v = q(&[1, 2, 0, 5]);
        assert_eq!(a.bracket(&[v.clone(), v, e(2)]).unwrap(), q(&[0, 0, 0, 0]));
        assert!(a.bracket(&[e(0), e(1)]).is_err());
        assert!(a.bracket(&[e(0), e(1), q(&[1])]).is_err());
        // Multilinearity in the first slot.
        let u = q(&[1, 1, 0, 0]);
        let w = q(&[2, -1, 0, 3]);
        let mut s = u.clone();
        add_scaled(&Rationals, &mut s, &Rationals.one(), &w);
        let lhs = a.bracket(&[s, e(1), e(2)]).unwrap();
        let mut rhs = a.bracket(&[u, e(1), e(2)]).unwrap();
        add_scaled(&Rationals, &mut rhs, &Rationals.one(), &a.bracket(&[w, e(1), e(2)]).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn set_bracket_rejects_bad_keys() {
        let mut a = NLieAlgebra::new(&Rationals, 3, 4).unwrap();
        assert!(a.set_bracket(&[0, 0, 1], q(&[0, 0, 0, 1])).is_err());
        assert!(a.set_bracket(&[0, 1, 4], q(&[0, 0, 0, 1])).is_err());
        assert!(a.set_bracket(&[0, 1], q(&[0, 0, 0, 1])).is_err());
        a.set_bracket(&[2, 1, 0], q(&[0, 0, 0, 1])).unwrap();
        assert_eq!(a.bracket_basis(&[0, 1, 2]), q(&[0, 0, 0, -1]));
        assert!(NLieAlgebra::new(&Rationals, 1, 3).is_err());
    }

    #[test]
    fn filippov_counterexample() {
        // n = 2: [e1,e2] = e3, [e1,e3] = e1.
        let mut a = NLieAlgebra::new(&Rationals, 2, 3).unwrap();
        a.set_monomial(&[1, 2], 3).unwrap();
        a.set_monomial(&[1, 3], 1).unwrap();
        match a.check_filippov() {
            FilippovCheck::Violation { x, y, lhs, rhs } => {
                assert_eq!((x, y), (vec![0, 1], vec![2]));
                assert_eq!(lhs, q(&[0, 0, 0]));
                assert_eq!(rhs, q(&[0, 0, 1]));
            }
            FilippovCheck::Pass => panic!("expected a violation"),
        }
        assert!(heisenberg3().check_filippov().passed());
    }

    #[test]
    fn not_class_two() {
        let mut a = NLieAlgebra::new(&Rationals, 2, 2).unwrap();
        a.set_monomial(&[1, 2], 2).unwrap();
        assert!(!a.is_class_two());
        assert_eq!(a.nilpotency_class(), NilpotencyClass::NotNilpotent);
        assert!(!NLieAlgebra::abelian(&Rationals, 3, 4).unwrap().is_class_two());
        assert!(heisenberg3().is_class_two());
    }

    #[test]
    fn series_of_heisenberg() {
        let a = heisenberg3();
        let r = a.series_report();
        assert_eq!(r.class, NilpotencyClass::Class(2));
        assert_eq!(r.derived.iter().map(|s| s.dim()).collect::<Vec<_>>(), vec![4, 1, 0]);
        assert_eq!(r.central.iter().map(|s| s.dim()).collect::<Vec<_>>(), vec![0, 1, 4]);
        let ab = NLieAlgebra::abelian(&Rationals, 3, 4).unwrap();
        assert_eq!(ab.nilpotency_class(), NilpotencyClass::Abelian);
        assert_eq!(ab.center().dim(), 4);
    }

    #[test]
    fn quotients_and_sums() {
        let h = heisenberg3();
        let (qa, proj) = h.quotient_central(&h.center()).unwrap();
        assert_eq!(qa.dim(), 3);
        assert!(qa.is_abelian_table());
        assert_eq!(proj.rows(), 3);
        let span_e1 = Subspace::span(&Rationals, 4, &[q(&[1, 0, 0, 0])]).unwrap();
        assert_eq!(h.quotient_central(&span_e1).unwrap_err(), AlgebraError::NotCentral);

        let f4 = NLieAlgebra::abelian(&Rationals, 3, 4).unwrap();
        let s = h.direct_sum(&f4).unwrap();
        assert_eq!(s.dim(), 8);
        assert_eq!(s.derived_algebra().dim(), 1);
        assert_eq!(s.center().dim(), 5);
        let f0 = NLieAlgebra::abelian(&Rationals, 3, 0).unwrap();
        assert_eq!(h.direct_sum(&f0).unwrap(), h);
        let f2 = NLieAlgebra::abelian(&Rationals, 3, 2).unwrap();
        let f3 = NLieAlgebra::abelian(&Rationals, 3, 3).unwrap();
        assert_eq!(f2.direct_sum(&f3).unwrap(), NLieAlgebra::abelian(&Rationals, 3, 5).unwrap());
        let two = NLieAlgebra::abelian(&Rationals, 2, 2).unwrap();
        assert_eq!(h.direct_sum(&two).unwrap_err(), AlgebraError::ArityMismatch(3, 2));
    }

    #[test]
    fn zero_cocycle_extension_is_sum_with_line() {
        let h = heisenberg3();
        let e = h.central_extension(&BTreeMap::new()).unwrap();
        assert_eq!(e, h.direct_sum(&NLieAlgebra::abelian(&Rationals, 3, 1).unwrap()).unwrap());
    }

    fn random_class_two(seed: u64, p: u64) -> NLieAlgebra<PrimeField> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = PrimeField::new(p).unwrap();
        let n = rng.gen_range(2..=4);
        let top = rng.gen_range(n..=n + 3);
        let central = rng.gen_range(1..=3);
        let d = top + central;
        let mut a = NLieAlgebra::new(&f, n, d).unwrap();
        for t in combinations(top, n) {
            if rng.gen_bool(0.4) {
                let mut v = zero_vector(&f, d);
                for c in top..d {
                    v[c] = rng.gen_range(0..p);
                }
                a.set_bracket(&t, v).unwrap();
            }
        }
        a
    }

    fn random_invertible(f: &PrimeField, d: usize, rng: &mut ChaCha8Rng) -> BasisChange<PrimeField> {
        loop {
            let cols: Vec<_> = (0..d).map(|_| (0..d).map(|_| rng.gen_range(0..f.modulus())).collect()).collect();
            if let Ok(p) = BasisChange::from_columns(f, d, &cols) {
                return p;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn base_change_round_trip(seed in any::<u64>(), pi in 0usize..3) {
            let p = [2u64, 3, 5][pi];
            let a = random_class_two(seed, p);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcdef);
            let change = random_invertible(a.field(), a.dim(), &mut rng);
            let b = a.apply_basis_change(&change).unwrap();
            prop_assert_eq!(b.apply_basis_change(&change.inverse()).unwrap(), a.clone());
            prop_assert_eq!(a.derived_algebra().dim(), b.derived_algebra().dim());
            prop_assert_eq!(a.center().dim(), b.center().dim());
            prop_assert_eq!(a.nilpotency_class(), b.nilpotency_class());
        }

        #[test]
        fn class_two_tables_satisfy_filippov(seed in any::<u64>(), pi in 0usize..3) {
            let a = random_class_two(seed, [2u64, 3, 5][pi]);
            prop_assert!(a.check_filippov().passed());
            if !a.is_abelian_table() {
                prop_assert!(a.is_class_two());
                let derived = a.derived_series();
                prop_assert!(derived.len() <= 3 && derived.last().unwrap().is_zero());
                let central = a.upper_central_series();
                prop_assert_eq!(central.len(), 3);
                prop_assert_eq!(central[2].dim(), a.dim());
            }
        }

        #[test]
        fn sums_commute_with_series(s1 in any::<u64>(), s2 in any::<u64>()) {
            let a = random_class_two(s1, 3);
            let mut b = random_class_two(s2, 3);
            if b.arity() != a.arity() {
                b = NLieAlgebra::abelian(a.field(), a.arity(), 2).unwrap();
            }
            let s = a.direct_sum(&b).unwrap();
            prop_assert_eq!(s.center().dim(), a.center().dim() + b.center().dim());
            prop_assert_eq!(s.derived_algebra().dim(), a.derived_algebra().dim() + b.derived_algebra().dim());
        }

        #[test]
        fn extension_then_quotient(seed in any::<u64>()) {
            let a = random_class_two(seed, 5);
            let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(7));
            let mut cocycle = BTreeMap::new();
            for t in combinations(a.dim(), a.arity()) {
                if rng.gen_bool(0.3) {
                    cocycle.insert(t, rng.gen_range(0..5u64));
                }
            }
            let e = a.central_extension(&cocycle).unwrap();
            let line = Subspace::span(a.field(), e.dim(), &[unit_vector(a.field(), e.dim(), a.dim())]).unwrap();
            let (back, _) = e.quotient_central(&line).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
