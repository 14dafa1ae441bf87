//! Structural normal forms for class-two algebras.
//!
//! A class-two algebra splits as `W ⊕ K ⊕ U` with `W` the standard
//! complement of the center, `U = A²` and `K` a complement of `A²` in the
//! center. The bracket is a linear map `ΛⁿW → U`, i.e. a `u`-dimensional
//! space of n-forms on `W`, studied through its dual space `B ⊆ Λ^r W`,
//! `r = w − n`. Normalizing means choosing a basis of `W` in which `B`
//! coincides with the target's; the remaining columns are then forced.

use crate::algebra::{BasisChange, NLieAlgebra};
use crate::catalog::Label;
use crate::field::Field;
use crate::linalg::{add_scaled, zero_vector, Subspace, Vector};

use super::forms::{dual_of_form, pair_coordinates, pfaffian4, support, two_blocks, Exterior};

pub struct Shape<F: Field> {
    pub n: usize,
    pub d: usize,
    pub w: usize,
    pub u: usize,
    pub k: usize,
    pub w_idx: Vec<usize>,
    pub center: Subspace<F>,
    pub derived: Subspace<F>,
    pub k_basis: Vec<Vector<F>>,
    /// `B ⊆ Λ^r W`; meaningful only when `u > 0`.
    pub duals: Subspace<F>,
    pub ext: Exterior,
}

impl<F: Field> Shape<F> {
    pub fn of(a: &NLieAlgebra<F>) -> Self {
        let f = a.field();
        let (n, d) = (a.arity(), a.dim());
        let center = a.center();
        let derived = a.derived_algebra();
        let w_idx = center.complement_indices();
        let w = w_idx.len();
        let k_basis = derived.complement_within(&center).expect("same ambient");
        let u = derived.dim();
        let r = w.saturating_sub(n);
        let ext = Exterior::new(w, r);
        let mut duals = Subspace::zero(f, ext.len());
        if u > 0 && w >= n {
            let forms_ext = Exterior::new(w, n);
            let mut forms = vec![zero_vector(f, forms_ext.len()); u];
            for (ti, t) in forms_ext.subsets.iter().enumerate() {
                let args: Vec<usize> = t.iter().map(|&i| w_idx[i]).collect();
                let v = a.bracket_basis(&args);
                for (form, &q) in forms.iter_mut().zip(derived.pivots()) {
                    form[ti] = v[q].clone();
                }
            }
            let taus: Vec<Vector<F>> = forms.iter().map(|phi| dual_of_form(f, &forms_ext, phi)).collect();
            duals = Subspace::span(f, ext.len(), &taus).expect("length");
        }
        Shape { n, d, w, u, k: k_basis.len(), w_idx, center, derived, k_basis, duals, ext }
    }

    pub fn r(&self) -> usize {
        self.ext.r
    }

    pub fn support_dim(&self, field: &F) -> usize {
        support(field, &self.ext, self.duals.basis()).dim()
    }
}

/// How the `W` basis is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// `B` is trivial or all of `ΛⁿW`: any ordered basis works.
    Ordered,
    /// `r = 1`: `B` is a subspace of `W`.
    Subspace,
    /// `B` lives on two complementary blocks of its support.
    TwoBlock,
    /// `B = Λ²T` for a three-dimensional support `T`.
    FullSquare,
    /// `B` is a net of 2-vectors on a four-dimensional support whose polar
    /// Pfaffian pairing has a decomposable radical.
    RadicalNet,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Ordered => "ordered basis",
            Method::Subspace => "subspace adapted basis",
            Method::TwoBlock => "two-block eigenspaces of the stabilizer commutant",
            Method::FullSquare => "support basis",
            Method::RadicalNet => "Pfaffian radical and decomposable pencil points",
        }
    }
}

/// Positions `ℓ` (local to `W`) whose index occurs in a nonzero coordinate of `B`.
fn occupied_positions<F: Field>(s: &Shape<F>, f: &F) -> Vec<usize> {
    let mut out = Vec::new();
    for tau in s.duals.basis() {
        for (i, set) in s.ext.subsets.iter().enumerate() {
            if !f.is_zero(&tau[i]) {
                out.extend(set.iter().copied());
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Distinct monomials of the target's `B`.
fn monomials<F: Field>(s: &Shape<F>, f: &F) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for tau in s.duals.basis() {
        for (i, set) in s.ext.subsets.iter().enumerate() {
            if !f.is_zero(&tau[i]) && !out.contains(set) {
                out.push(set.clone());
            }
        }
    }
    out
}

/// Fills positions `slots` from `vectors` in order and the remaining
/// positions from `rest`.
fn place<F: Field>(w: usize, assignments: &[(Vec<usize>, Vec<Vector<F>>)], rest: Vec<Vector<F>>) -> Option<Vec<Vector<F>>> {
    let mut cols: Vec<Option<Vector<F>>> = vec![None; w];
    for (slots, vectors) in assignments {
        if slots.len() != vectors.len() {
            return None;
        }
        for (&s, v) in slots.iter().zip(vectors) {
            if cols[s].is_some() {
                return None;
            }
            cols[s] = Some(v.clone());
        }
    }
    let mut rest = rest.into_iter();
    for c in cols.iter_mut().filter(|c| c.is_none()) {
        *c = Some(rest.next()?);
    }
    if rest.next().is_some() {
        return None;
    }
    cols.into_iter().collect()
}

/// Chooses the `W` basis of `a` (in local coordinates, ordered by the
/// target's `W` positions).
pub fn choose_w_basis<F: Field>(
    a: &NLieAlgebra<F>,
    sa: &Shape<F>,
    target: &NLieAlgebra<F>,
    st: &Shape<F>,
    method: Method,
) -> Result<Vec<Vector<F>>, String> {
    let f = a.field();
    let w = sa.w;
    let unit = |i: usize| crate::linalg::unit_vector(f, w, i);
    match method {
        Method::Ordered => Ok((0..w).map(unit).collect()),
        Method::Subspace => {
            let slots = occupied_positions(st, f);
            let basis = sa.duals.basis().to_vec();
            place::<F>(w, &[(slots, basis)], sa.duals.complement_basis())
                .ok_or_else(|| "subspace dimensions disagree with the target".to_string())
        }
        Method::FullSquare => {
            let t = support(f, &sa.ext, sa.duals.basis());
            let slots = occupied_positions(st, f);
            place::<F>(w, &[(slots, t.basis().to_vec())], t.complement_basis())
                .ok_or_else(|| "support dimension disagrees with the target".to_string())
        }
        Method::TwoBlock => {
            let (t, s1, s2) = two_blocks(f, &sa.ext, &sa.duals)
                .ok_or_else(|| "support does not split into two blocks over this field".to_string())?;
            let blocks = monomials(st, f);
            if blocks.len() != 2 {
                return Err("target is not a two-block form".into());
            }
            let mut cols = place::<F>(w, &[(blocks[0].clone(), s1), (blocks[1].clone(), s2)], t.complement_basis())
                .ok_or_else(|| "block dimensions disagree with the target".to_string())?;
            if sa.u == 1 {
                rescale_second_block(a, sa, target, st, &mut cols)?;
            }
            Ok(cols)
        }
        Method::RadicalNet => radical_net(f, sa).map_err(|e| e.to_string()),
    }
}

fn embed<F: Field>(f: &F, s: &Shape<F>, local: &[F::Elem]) -> Vector<F> {
    let mut v = zero_vector(f, s.d);
    for (c, &i) in local.iter().zip(&s.w_idx) {
        v[i] = c.clone();
    }
    v
}

fn local_position<F: Field>(s: &Shape<F>, global: usize) -> Option<usize> {
    s.w_idx.iter().position(|&g| g == global)
}

/// With a single target coordinate and two blocks, the two block brackets
/// must agree; scale one vector of the second block to make them equal.
fn rescale_second_block<F: Field>(
    a: &NLieAlgebra<F>,
    sa: &Shape<F>,
    target: &NLieAlgebra<F>,
    st: &Shape<F>,
    cols: &mut [Vector<F>],
) -> Result<(), String> {
    let f = a.field();
    let keys: Vec<&Vec<usize>> = target.brackets().keys().collect();
    if keys.len() != 2 {
        return Err("target has no two-block bracket rows".into());
    }
    let local = |k: &Vec<usize>| -> Option<Vec<usize>> { k.iter().map(|&g| local_position(st, g)).collect() };
    let (k1, k2) = (local(keys[0]).ok_or("row outside W")?, local(keys[1]).ok_or("row outside W")?);
    let value = |k: &[usize], cols: &[Vector<F>]| {
        let args: Vec<Vector<F>> = k.iter().map(|&l| embed(f, sa, &cols[l])).collect();
        a.bracket(&args).expect("shapes agree")
    };
    let (v1, v2) = (value(&k1, cols), value(&k2, cols));
    let Some(p) = v1.iter().position(|x| !f.is_zero(x)) else {
        return Err("first block brackets to zero".into());
    };
    let s = f.div(&v2[p], &v1[p]).ok_or("division by zero")?;
    let inv = f.inv(&s).ok_or("second block brackets to zero")?;
    let l = k2[0];
    cols[l] = cols[l].iter().map(|x| f.mul(x, &inv)).collect();
    Ok(())
}

fn radical_net<F: Field>(f: &F, sa: &Shape<F>) -> Result<Vec<Vector<F>>, &'static str> {
    let ext = &sa.ext;
    let t = support(f, ext, sa.duals.basis());
    if t.dim() != 4 || sa.duals.dim() != 3 || ext.r != 2 {
        return Err("net is not three 2-vectors on a 4-dimensional support");
    }
    let pf = |tau: &[F::Elem]| pfaffian4(f, &pair_coordinates(ext, &t, tau));
    let sum = |x: &[F::Elem], y: &[F::Elem]| -> Vector<F> { x.iter().zip(y).map(|(a, b)| f.add(a, b)).collect() };
    let polar = |x: &[F::Elem], y: &[F::Elem]| f.sub(&f.sub(&pf(&sum(x, y)), &pf(x)), &pf(y));
    let basis = sa.duals.basis();
    let gram: Vec<Vector<F>> = basis.iter().map(|x| basis.iter().map(|y| polar(x, y)).collect()).collect();
    let radical = crate::linalg::Matrix::from_rows(f, 3, gram).expect("3×3").nullspace();
    if radical.dim() != 1 {
        return Err("polar pairing radical is not a line");
    }
    let mut r = zero_vector(f, ext.len());
    for (c, b) in radical.basis()[0].iter().zip(basis) {
        add_scaled(f, &mut r, c, b);
    }
    if !f.is_zero(&pf(&r)) {
        return Err("radical 2-vector is not decomposable");
    }
    let rline = Subspace::span(f, ext.len(), &[r.clone()]).expect("length");
    let pencil = rline.complement_within(&sa.duals).expect("same ambient");
    let (b1, b2) = (&pencil[0], &pencil[1]);
    let (p1, q, p2) = (pf(b1), polar(b1, b2), pf(b2));
    // Projective roots (x : y) of x²·p1 + xy·q + y²·p2.
    let mut roots: Vec<(F::Elem, F::Elem)> = Vec::new();
    if f.is_zero(&p2) {
        roots.push((f.zero(), f.one()));
        if !f.is_zero(&p1) || !f.is_zero(&q) {
            roots.push((q.clone(), f.neg(&p1)));
        }
    } else {
        let (y1, y2) = crate::field::quadratic_roots(f, &p2, &q, &p1).ok_or("pencil has no decomposable points")?;
        roots.push((f.one(), y1));
        roots.push((f.one(), y2));
    }
    if roots.len() != 2 || roots[0] == roots[1] || (f.is_zero(&roots[1].0) && f.is_zero(&roots[1].1)) {
        return Err("pencil does not have two distinct decomposable points");
    }
    let rsup = support(f, ext, &[r]);
    let mut factors = Vec::new();
    for (x, y) in &roots {
        let mut delta = zero_vector(f, ext.len());
        add_scaled(f, &mut delta, x, b1);
        add_scaled(f, &mut delta, y, b2);
        let dsup = support(f, ext, &[delta]);
        let common = dsup.intersect(&rsup).expect("same ambient");
        if dsup.dim() != 2 || common.dim() != 1 {
            return Err("decomposable point does not meet the radical in a line");
        }
        let other = common.complement_within(&dsup).expect("same ambient");
        factors.push((common.basis()[0].clone(), other[0].clone()));
    }
    let (c1, w2) = factors[0].clone();
    let (c2, wn1) = factors[1].clone();
    let n = sa.n;
    place::<F>(sa.w, &[(vec![0, 1, n, n + 1], vec![c1, w2, wn1, c2])], t.complement_basis())
        .ok_or("net positions do not fit")
}

/// Completes a `W` basis to a basis change towards `target`: center
/// complement columns from a complement of `A²` in `Z(A)`, derived columns
/// from the brackets of the first target row hitting each coordinate.
pub fn assemble<F: Field>(
    a: &NLieAlgebra<F>,
    sa: &Shape<F>,
    target: &NLieAlgebra<F>,
    st: &Shape<F>,
    w_cols: &[Vector<F>],
) -> Result<BasisChange<F>, String> {
    let f = a.field();
    let d = a.dim();
    let mut cols: Vec<Option<Vector<F>>> = vec![None; d];
    for (l, &g) in st.w_idx.iter().enumerate() {
        cols[g] = Some(embed(f, sa, &w_cols[l]));
    }
    let u_pos: Vec<usize> = st.derived.pivots().to_vec();
    let k_pos: Vec<usize> = st.center.pivots().iter().copied().filter(|p| !u_pos.contains(p)).collect();
    if k_pos.len() != sa.k_basis.len() {
        return Err("center complement dimensions disagree".into());
    }
    for (&p, v) in k_pos.iter().zip(&sa.k_basis) {
        cols[p] = Some(v.clone());
    }
    for &c in &u_pos {
        let unit = crate::linalg::unit_vector(f, d, c);
        let key = target
            .brackets()
            .iter()
            .find(|(_, v)| **v == unit)
            .map(|(k, _)| k.clone())
            .ok_or_else(|| format!("target has no monomial row onto e{}", c + 1))?;
        let args: Vec<Vector<F>> =
            key.iter().map(|&i| cols[i].clone().ok_or("row argument outside W")).collect::<Result<_, _>>()?;
        cols[c] = Some(a.bracket(&args).map_err(|e| e.to_string())?);
    }
    let cols: Vec<Vector<F>> = cols.into_iter().collect::<Option<_>>().ok_or("unfilled column")?;
    BasisChange::from_columns(f, d, &cols).map_err(|_| "assembled basis is singular".to_string())
}

/// The label and method for a class-two shape, when it is one the catalog lists.
pub fn decide<F: Field>(f: &F, s: &Shape<F>) -> Result<(Label, Method), String> {
    let (n, d, w, u, k) = (s.n, s.d, s.w, s.u, s.k);
    let r = s.r();
    if u == 1 {
        return if w == n {
            Ok((Label::heisenberg(n, 1, k), Method::Ordered))
        } else if w == 2 * n {
            Ok((Label::heisenberg(n, 2, k), Method::TwoBlock))
        } else {
            Err(format!("one-dimensional derived algebra with w = {w} is not a multiple of n = {n} in {{n, 2n}}"))
        };
    }
    let fam = |offset: usize, idx: usize| Label::family(n, offset, idx);
    let found = match (r, d.saturating_sub(n), u, k) {
        (1, 3, 2, 0) => Some((Label::family(n, 3, 1), Method::Subspace)),
        (1, 4, 2, 1) => Some((Label::family(n, 4, 1), Method::Subspace)),
        (1, 4, 3, 0) => Some((Label::family(n, 4, 3), Method::Subspace)),
        (1, 5, 2, 2) => Some((fam(5, 1), Method::Subspace)),
        (1, 5, 3, 1) => Some((fam(5, 4), Method::Subspace)),
        (1, 5, 4, 0) => Some((fam(5, 7), Method::Subspace)),
        (2, 4, 2, 0) | (2, 5, 2, 1) if s.support_dim(f) == 4 => {
            let label = if d == n + 4 { Label::family(n, 4, 2) } else { fam(5, 2) };
            Some((label, Method::TwoBlock))
        }
        (2, 5, 3, 0) => match s.support_dim(f) {
            3 => Some((fam(5, 5), Method::FullSquare)),
            4 => Some((fam(5, 6), Method::RadicalNet)),
            _ => None,
        },
        (3, 5, 2, 0) if s.support_dim(f) == 6 => {
            Some((if n == 3 { Label::A387 } else { fam(5, 3) }, Method::TwoBlock))
        }
        _ => None,
    };
    found.ok_or_else(|| {
        format!(
            "no listed algebra has w = {w}, dim A² = {u}, k = {k}, support dim {} (r = {r})",
            s.support_dim(f)
        )
    })
}
