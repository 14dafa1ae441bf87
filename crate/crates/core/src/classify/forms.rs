//! Exterior-algebra helpers on a `w`-dimensional space with a fixed basis.
//!
//! An n-form or r-vector is a coordinate vector indexed by the increasing
//! tuples of `combinations(w, ·)`.

use std::collections::HashMap;

use crate::field::{quadratic_roots, Field};
use crate::linalg::{is_zero_vector, zero_vector, Matrix, Subspace, Vector};
use crate::tuples::{combinations, sort_with_sign};

/// Coordinates of `Λ^r` of a `w`-dimensional space.
pub struct Exterior {
    pub w: usize,
    pub r: usize,
    pub subsets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Exterior {
    pub fn new(w: usize, r: usize) -> Self {
        let subsets = combinations(w, r);
        let index = subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Self { w, r, subsets, index }
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn index_of(&self, sorted: &[usize]) -> usize {
        self.index[sorted]
    }
}

/// The r-vector `τ` (with `r = w − n`) such that `φ(x) = vol(τ ∧ x)`:
/// `τ_S = sgn(S, Sᶜ) · φ(Sᶜ)`.
pub fn dual_of_form<F: Field>(f: &F, forms: &Exterior, form: &[F::Elem]) -> Vector<F> {
    let w = forms.w;
    let duals = Exterior::new(w, w - forms.r);
    duals
        .subsets
        .iter()
        .map(|s| {
            let rest: Vec<usize> = (0..w).filter(|i| !s.contains(i)).collect();
            let mut cat = s.clone();
            cat.extend(&rest);
            let (_, negative) = sort_with_sign(&cat).expect("disjoint");
            let x = form[forms.index_of(&rest)].clone();
            if negative {
                f.neg(&x)
            } else {
                x
            }
        })
        .collect()
}

/// The smallest subspace `T` with every given r-vector in `Λ^r T`: the span
/// of all contractions by (r−1)-covectors.
pub fn support<F: Field>(f: &F, ext: &Exterior, vectors: &[Vector<F>]) -> Subspace<F> {
    let w = ext.w;
    if ext.r == 0 {
        return Subspace::zero(f, w);
    }
    let mut gens = Vec::new();
    for tau in vectors {
        for s in combinations(w, ext.r - 1) {
            let mut v = zero_vector(f, w);
            for i in (0..w).filter(|i| !s.contains(i)) {
                let mut cat = s.clone();
                cat.push(i);
                let (sorted, negative) = sort_with_sign(&cat).expect("distinct");
                let x = &tau[ext.index_of(&sorted)];
                v[i] = if negative { f.neg(x) } else { x.clone() };
            }
            if !is_zero_vector(f, &v) {
                gens.push(v);
            }
        }
    }
    Subspace::span(f, w, &gens).expect("length w")
}

/// `E_{ij}` acting on an r-vector as a derivation (`E_{ij} e_j = e_i`).
fn elementary_action<F: Field>(f: &F, ext: &Exterior, i: usize, j: usize, tau: &[F::Elem]) -> Vector<F> {
    let mut out = zero_vector(f, ext.len());
    for (idx, s) in ext.subsets.iter().enumerate() {
        if f.is_zero(&tau[idx]) {
            continue;
        }
        let Some(pos) = s.iter().position(|&x| x == j) else {
            continue;
        };
        let mut t = s.clone();
        t[pos] = i;
        if let Some((sorted, negative)) = sort_with_sign(&t) {
            let k = ext.index_of(&sorted);
            out[k] = if negative { f.sub(&out[k], &tau[idx]) } else { f.add(&out[k], &tau[idx]) };
        }
    }
    out
}

/// Basis of `{X ∈ gl(w) : X·B ⊆ B}` for a subspace `B ⊆ Λ^r`.
pub fn stabilizer<F: Field>(f: &F, ext: &Exterior, b: &Subspace<F>) -> Vec<Matrix<F>> {
    let w = ext.w;
    let ann = b.annihilator();
    let mut rows = Vec::new();
    let actions: Vec<Vec<Vector<F>>> = b
        .basis()
        .iter()
        .map(|tau| {
            (0..w * w).map(|x| elementary_action(f, ext, x / w, x % w, tau)).collect()
        })
        .collect();
    for alpha in ann.basis() {
        for per_tau in &actions {
            let row: Vector<F> = per_tau
                .iter()
                .map(|v| alpha.iter().zip(v).fold(f.zero(), |acc, (a, x)| f.add(&acc, &f.mul(a, x))))
                .collect();
            if !is_zero_vector(f, &row) {
                rows.push(row);
            }
        }
    }
    let sols = if rows.is_empty() {
        Subspace::full(f, w * w)
    } else {
        Matrix::from_rows(f, w * w, rows).expect("length w²").nullspace()
    };
    sols.basis()
        .iter()
        .map(|v| {
            let rows = (0..w).map(|r| v[r * w..(r + 1) * w].to_vec()).collect();
            Matrix::from_rows(f, w, rows).expect("square")
        })
        .collect()
}

/// Matrices of `mats` restricted to the invariant subspace `t`, in the
/// echelon basis of `t`; `None` if `t` is not invariant.
pub fn restrict<F: Field>(mats: &[Matrix<F>], t: &Subspace<F>) -> Option<Vec<Matrix<F>>> {
    let f = t.field();
    let k = t.dim();
    let mut out = Vec::with_capacity(mats.len());
    for m in mats {
        let mut cols = Vec::with_capacity(k);
        for v in t.basis() {
            cols.push(t.coordinates(&m.mul_vec(v).ok()?).ok()??);
        }
        out.push(Matrix::from_cols(f, k, &cols).ok()?);
    }
    Some(out)
}

/// Basis of `{Y : YX = XY for all X}` inside `End(F^k)`.
pub fn commutant<F: Field>(f: &F, k: usize, mats: &[Matrix<F>]) -> Vec<Matrix<F>> {
    let mut rows = Vec::new();
    for x in mats {
        for a in 0..k {
            for b in 0..k {
                // (YX − XY)_{ab} = Σ_c Y_{ac} X_{cb} − X_{ac} Y_{cb}
                let mut row = zero_vector(f, k * k);
                for c in 0..k {
                    row[a * k + c] = f.add(&row[a * k + c], x.get(c, b));
                    row[c * k + b] = f.sub(&row[c * k + b], x.get(a, c));
                }
                if !is_zero_vector(f, &row) {
                    rows.push(row);
                }
            }
        }
    }
    let sols = if rows.is_empty() {
        Subspace::full(f, k * k)
    } else {
        Matrix::from_rows(f, k * k, rows).expect("length k²").nullspace()
    };
    sols.basis()
        .iter()
        .map(|v| Matrix::from_rows(f, k, (0..k).map(|r| v[r * k..(r + 1) * k].to_vec()).collect()).expect("square"))
        .collect()
}

/// The decomposition `T = S₁ ⊕ S₂` of the support of `B` into the two
/// eigenspaces of its stabilizer's commutant, when that commutant is
/// two-dimensional and split over the field. Bases are in ambient coordinates.
pub fn two_blocks<F: Field>(f: &F, ext: &Exterior, b: &Subspace<F>) -> Option<(Subspace<F>, Vec<Vector<F>>, Vec<Vector<F>>)> {
    let t = support(f, ext, b.basis());
    let k = t.dim();
    let g = restrict(&stabilizer(f, ext, b), &t)?;
    let comm = commutant(f, k, &g);
    if comm.len() != 2 {
        return None;
    }
    let id = Matrix::identity(f, k);
    let scalar = |m: &Matrix<F>| {
        let c = m.get(0, 0).clone();
        (0..k).all(|i| (0..k).all(|j| *m.get(i, j) == if i == j { c.clone() } else { f.zero() }))
    };
    let y = comm.iter().find(|m| !scalar(m))?.clone();
    // Y² = a·Y + c·I
    let y2 = y.mul(&y).ok()?;
    let flat = |m: &Matrix<F>| -> Vector<F> { (0..k).flat_map(|i| m.row(i).to_vec()).collect() };
    let system = Matrix::from_cols(f, k * k, &[flat(&y), flat(&id)]).ok()?;
    let coeffs = system.solve(&flat(&y2)).ok()??;
    // λ² − aλ − c = 0
    let (l1, l2) = quadratic_roots(f, &f.one(), &f.neg(&coeffs[0]), &f.neg(&coeffs[1]))?;
    if l1 == l2 {
        return None;
    }
    let eigen = |l: &F::Elem| -> Vec<Vector<F>> {
        let shifted = {
            let mut m = y.clone();
            for i in 0..k {
                m.set(i, i, f.sub(m.get(i, i), l));
            }
            m
        };
        shifted
            .nullspace()
            .basis()
            .iter()
            .map(|c| {
                let mut v = zero_vector(f, ext.w);
                for (coef, tb) in c.iter().zip(t.basis()) {
                    crate::linalg::add_scaled(f, &mut v, coef, tb);
                }
                v
            })
            .collect()
    };
    let (s1, s2) = (eigen(&l1), eigen(&l2));
    if s1.len() + s2.len() != k {
        return None;
    }
    // B must lie on the two blocks, not merely be stabilized by their scalings.
    if s1.len() == ext.r && s2.len() == ext.r {
        let blocks = Subspace::span(f, ext.len(), &[wedge(f, ext, &s1), wedge(f, ext, &s2)]).ok()?;
        if !b.is_subspace_of(&blocks).ok()? {
            return None;
        }
    }
    Some((t, s1, s2))
}

/// `v₁ ∧ … ∧ v_r` for `r = ext.r` vectors.
pub fn wedge<F: Field>(f: &F, ext: &Exterior, vectors: &[Vector<F>]) -> Vector<F> {
    ext.subsets
        .iter()
        .map(|s| crate::linalg::det_of(f, vectors.iter().map(|v| s.iter().map(|&i| v[i].clone()).collect()).collect()))
        .collect()
}

/// Coordinates of a 2-vector of `Λ²T` in the echelon basis of `T`:
/// `c_{ij}` is the coordinate at the pivot pair.
pub fn pair_coordinates<F: Field>(ext: &Exterior, t: &Subspace<F>, tau: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let p = t.pivots();
    let k = p.len();
    let f = t.field();
    let mut c = vec![vec![f.zero(); k]; k];
    for i in 0..k {
        for j in i + 1..k {
            c[i][j] = tau[ext.index_of(&[p[i], p[j]])].clone();
        }
    }
    c
}

/// Pfaffian of a 2-vector in a 4-dimensional `T`.
pub fn pfaffian4<F: Field>(f: &F, c: &[Vec<F::Elem>]) -> F::Elem {
    let t1 = f.mul(&c[0][1], &c[2][3]);
    let t2 = f.mul(&c[0][2], &c[1][3]);
    let t3 = f.mul(&c[0][3], &c[1][2]);
    f.add(&f.sub(&t1, &t2), &t3)
}
