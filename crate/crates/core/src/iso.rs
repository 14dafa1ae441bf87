//! Isomorphism witnesses: verification and two bounded searches.
//!
//! A witness from `a` to `b` is a [`BasisChange`] `P` with
//! `a.apply_basis_change(P) == b`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{BasisChange, NLieAlgebra};
use crate::error::AlgebraError;
use crate::field::Field;
use crate::fingerprint::{fingerprint, FingerprintOptions};
use crate::format::matrix_to_json;
use crate::linalg::{add_scaled, is_zero_vector, unit_vector, zero_vector, Matrix, Vector};
use crate::tuples::{combinations, sort_with_sign};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessCheck<F: Field> {
    Valid,
    /// First increasing tuple (0-based) where the transported table differs from `b`.
    Mismatch { args: Vec<usize>, expected: Vector<F>, found: Vector<F> },
}

impl<F: Field> WitnessCheck<F> {
    pub fn is_valid(&self) -> bool {
        matches!(self, WitnessCheck::Valid)
    }
}

pub fn verify_witness<F: Field>(
    a: &NLieAlgebra<F>,
    b: &NLieAlgebra<F>,
    p: &BasisChange<F>,
) -> Result<WitnessCheck<F>, AlgebraError> {
    if a.arity() != b.arity() {
        return Err(AlgebraError::ArityMismatch(a.arity(), b.arity()));
    }
    if a.dim() != b.dim() {
        return Err(crate::error::LinalgError::DimensionMismatch { expected: a.dim(), found: b.dim() }.into());
    }
    let moved = a.apply_basis_change(p)?;
    Ok(match moved.first_difference(b) {
        None => WitnessCheck::Valid,
        Some((args, found, expected)) => WitnessCheck::Mismatch { args, expected, found },
    })
}

/// [`verify_witness`] for a raw matrix; a singular matrix is an error.
pub fn verify_matrix<F: Field>(
    a: &NLieAlgebra<F>,
    b: &NLieAlgebra<F>,
    m: &Matrix<F>,
) -> Result<WitnessCheck<F>, AlgebraError> {
    let p = BasisChange::new(m.clone())?;
    verify_witness(a, b, &p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<F: Field> {
    Found { witness: BasisChange<F>, checked: u64 },
    /// The candidate family was searched completely without success.
    NotFound { checked: u64 },
    /// The budget ran out first.
    Exhausted { checked: u64 },
}

impl<F: Field> SearchOutcome<F> {
    pub fn checked(&self) -> u64 {
        match self {
            SearchOutcome::Found { checked, .. }
            | SearchOutcome::NotFound { checked }
            | SearchOutcome::Exhausted { checked } => *checked,
        }
    }

    pub fn witness(&self) -> Option<&BasisChange<F>> {
        match self {
            SearchOutcome::Found { witness, .. } => Some(witness),
            _ => None,
        }
    }

    /// The report object `{ "isomorphic", "witness", "checked" }`.
    ///
    /// `not_isomorphic` is set when invariants have separated the pair; a
    /// search alone never proves non-isomorphism.
    pub fn report(&self, not_isomorphic: bool) -> Value {
        match self {
            SearchOutcome::Found { witness, checked } => json!({
                "isomorphic": true,
                "witness": matrix_to_json(witness.matrix()),
                "checked": checked,
            }),
            _ if not_isomorphic => json!({ "isomorphic": false, "witness": null, "checked": self.checked() }),
            _ => json!({ "isomorphic": "unknown", "witness": null, "checked": self.checked() }),
        }
    }
}

/// Whether coarse invariants (dimensions of `A²`, `Z`, `A²∩Z`, class) differ,
/// which proves the algebras non-isomorphic.
pub fn invariants_separate<F: Field>(a: &NLieAlgebra<F>, b: &NLieAlgebra<F>, opts: &FingerprintOptions) -> bool {
    if a.arity() != b.arity() || a.dim() != b.dim() {
        return true;
    }
    fingerprint(a, opts) != fingerprint(b, opts)
}

/// Table transported along `e'_j = c_j e_{perm[j]}`.
fn transport_signed<F: Field>(
    a: &NLieAlgebra<F>,
    perm: &[usize],
    inv_perm: &[usize],
    scalars: &[F::Elem],
    inv_scalars: &[F::Elem],
) -> BTreeMap<Vec<usize>, Vector<F>> {
    let f = a.field();
    let mut out = BTreeMap::new();
    for (key, v) in a.brackets() {
        let pre: Vec<usize> = key.iter().map(|&k| inv_perm[k]).collect();
        let (j, negative) = sort_with_sign(&pre).expect("distinct");
        let mut coeff = j.iter().fold(f.one(), |acc, &x| f.mul(&acc, &scalars[x]));
        if negative {
            coeff = f.neg(&coeff);
        }
        let w: Vector<F> =
            (0..a.dim()).map(|i| f.mul(&f.mul(&coeff, &v[perm[i]]), &inv_scalars[i])).collect();
        out.insert(j, w);
    }
    out
}

struct PermSearch<'a, F: Field> {
    a: &'a NLieAlgebra<F>,
    b: &'a NLieAlgebra<F>,
    budget: u64,
    checked: u64,
    nodes: u64,
    sig_a: Vec<(usize, usize)>,
    sig_b: Vec<(usize, usize)>,
    /// Indices that occur as bracket arguments in `b`; their scalars are free.
    free: Vec<usize>,
    /// For every other index: the first `(key, coordinate)` of `b` fixing its scalar.
    fixed_by: Vec<Option<Vec<usize>>>,
    scalar_pool: Vec<F::Elem>,
    signs_only: bool,
}

fn signatures<F: Field>(a: &NLieAlgebra<F>) -> Vec<(usize, usize)> {
    let f = a.field();
    let mut s = vec![(0, 0); a.dim()];
    for (k, v) in a.brackets() {
        for &i in k {
            s[i].0 += 1;
        }
        for (i, x) in v.iter().enumerate() {
            if !f.is_zero(x) {
                s[i].1 += 1;
            }
        }
    }
    s
}

enum Step<F: Field> {
    Found(BasisChange<F>),
    Continue,
    Stop,
}

impl<'a, F: Field> PermSearch<'a, F> {
    /// Zero-pattern check of all tuples inside `0..=j`.
    fn consistent(&self, perm: &[usize], j: usize) -> bool {
        let f = self.a.field();
        let n = self.a.arity();
        if j + 1 < n {
            return true;
        }
        for mut t in combinations(j, n - 1) {
            t.push(j);
            let bv = self.b.bracket_basis(&t);
            let img: Vec<usize> = t.iter().map(|&x| perm[x]).collect();
            let av = self.a.bracket_basis(&img);
            for i in 0..=j {
                if f.is_zero(&bv[i]) != f.is_zero(&av[perm[i]]) {
                    return false;
                }
            }
            if is_zero_vector(f, &bv) != is_zero_vector(f, &av) {
                return false;
            }
        }
        // Coordinate j of earlier tuples.
        for t in combinations(j, n) {
            let bv = self.b.bracket_basis(&t);
            let img: Vec<usize> = t.iter().map(|&x| perm[x]).collect();
            let av = self.a.bracket_basis(&img);
            if f.is_zero(&bv[j]) != f.is_zero(&av[perm[j]]) {
                return false;
            }
        }
        true
    }

    fn try_scalars(&mut self, perm: &[usize], free_vals: &[F::Elem]) -> Option<BasisChange<F>> {
        let f = self.a.field();
        let d = self.a.dim();
        let mut inv_perm = vec![0; d];
        for (j, &p) in perm.iter().enumerate() {
            inv_perm[p] = j;
        }
        let mut scalars = vec![f.one(); d];
        for (&i, c) in self.free.iter().zip(free_vals) {
            scalars[i] = c.clone();
        }
        for i in 0..d {
            if let Some(key) = &self.fixed_by[i] {
                // b[J]_i = (Π c_J) · s · a[πJ]_{π(i)} / c_i
                let img: Vec<usize> = key.iter().map(|&x| perm[x]).collect();
                let av = self.a.bracket_basis(&img);
                let bv = self.b.bracket_basis(key);
                let prod = key.iter().fold(f.one(), |acc, &x| f.mul(&acc, &scalars[x]));
                let c = f.div(&f.mul(&prod, &av[perm[i]]), &bv[i])?;
                if f.is_zero(&c) {
                    return None;
                }
                scalars[i] = c;
            }
        }
        let inv: Vec<_> = scalars.iter().map(|c| f.inv(c).expect("nonzero")).collect();
        let moved = transport_signed(self.a, perm, &inv_perm, &scalars, &inv);
        if &moved != self.b.brackets() {
            return None;
        }
        let p = BasisChange::signed_permutation(f, perm, &scalars).ok()?;
        let ok = verify_witness(self.a, self.b, &p).map(|c| c.is_valid()).unwrap_or(false);
        ok.then_some(p)
    }

    fn leaf(&mut self, perm: &[usize]) -> Step<F> {
        let k = self.free.len();
        let f = self.a.field().clone();
        // Phase 1: signs. Phase 2 (finite fields): all nonzero scalars.
        let signs = if f.characteristic() == 2 { vec![f.one()] } else { vec![f.one(), f.neg(&f.one())] };
        let phases: Vec<Vec<F::Elem>> = if self.signs_only || self.scalar_pool.len() <= signs.len() {
            vec![signs]
        } else {
            vec![signs, self.scalar_pool.clone()]
        };
        for (phase, pool) in phases.iter().enumerate() {
            let mut idx = vec![0usize; k];
            loop {
                let vals: Vec<F::Elem> = idx.iter().map(|&i| pool[i].clone()).collect();
                let skip = phase == 1 && vals.iter().all(|v| phases[0].contains(v));
                if !skip {
                    if self.checked >= self.budget {
                        return Step::Stop;
                    }
                    self.checked += 1;
                    if let Some(p) = self.try_scalars(perm, &vals) {
                        return Step::Found(p);
                    }
                }
                // Odometer.
                let mut pos = k;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < pool.len() {
                        break;
                    }
                    idx[pos] = 0;
                }
                if idx.iter().all(|&i| i == 0) {
                    break;
                }
            }
        }
        Step::Continue
    }

    fn recurse(&mut self, perm: &mut Vec<usize>, used: &mut [bool]) -> Step<F> {
        let j = perm.len();
        let d = self.a.dim();
        if j == d {
            return self.leaf(perm);
        }
        self.nodes += 1;
        if self.nodes > self.budget.saturating_mul(64) {
            return Step::Stop;
        }
        for cand in 0..d {
            if used[cand] || self.sig_a[cand] != self.sig_b[j] {
                continue;
            }
            perm.push(cand);
            used[cand] = true;
            if self.consistent(perm, j) {
                match self.recurse(perm, used) {
                    Step::Continue => {}
                    other => return other,
                }
            }
            used[cand] = false;
            perm.pop();
        }
        Step::Continue
    }
}

/// Searches basis changes `e'_j = c_j e_{π(j)}`: scalars `±1` over Q, and
/// over GF(p) first `±1`, then every nonzero residue while the budget lasts.
///
/// `budget` counts complete (permutation, scalars) candidates.
pub fn signed_perm_iso<F: Field>(a: &NLieAlgebra<F>, b: &NLieAlgebra<F>, budget: u64) -> SearchOutcome<F> {
    if a.arity() != b.arity() || a.dim() != b.dim() || a.field() != b.field() {
        return SearchOutcome::NotFound { checked: 0 };
    }
    let f = a.field();
    let d = b.dim();
    let mut is_arg = vec![false; d];
    for k in b.brackets().keys() {
        for &i in k {
            is_arg[i] = true;
        }
    }
    let free: Vec<usize> = (0..d).filter(|&i| is_arg[i]).collect();
    let mut fixed_by = vec![None; d];
    for (k, v) in b.brackets() {
        for (i, x) in v.iter().enumerate() {
            if !is_arg[i] && fixed_by[i].is_none() && !f.is_zero(x) {
                fixed_by[i] = Some(k.clone());
            }
        }
    }
    let scalar_pool: Vec<F::Elem> = match f.size() {
        Some(q) => (1..q).map(|i| f.element(i)).collect(),
        None => vec![],
    };
    let mut s = PermSearch {
        a,
        b,
        budget,
        checked: 0,
        nodes: 0,
        sig_a: signatures(a),
        sig_b: signatures(b),
        free,
        fixed_by,
        scalar_pool,
        signs_only: f.size().is_none(),
    };
    let mut sorted_a = s.sig_a.clone();
    let mut sorted_b = s.sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return SearchOutcome::NotFound { checked: 0 };
    }
    let mut used = vec![false; d];
    match s.recurse(&mut Vec::with_capacity(d), &mut used) {
        Step::Found(witness) => SearchOutcome::Found { witness, checked: s.checked },
        Step::Continue => SearchOutcome::NotFound { checked: s.checked },
        Step::Stop => SearchOutcome::Exhausted { checked: s.checked },
    }
}

/// Echelon rows over the concatenation `(B-part ‖ A-part)`; a row whose
/// pivot lies in the A-part means the correspondence is not a function.
#[derive(Clone)]
struct PairEchelon<F: Field> {
    split: usize,
    rows: Vec<(usize, Vector<F>)>,
}

impl<F: Field> PairEchelon<F> {
    fn insert(&mut self, f: &F, mut v: Vector<F>) -> bool {
        for (p, r) in &self.rows {
            if !f.is_zero(&v[*p]) {
                let c = f.neg(&v[*p]);
                add_scaled(f, &mut v, &c, r);
            }
        }
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return true;
        };
        if p >= self.split {
            return false;
        }
        let inv = f.inv(&v[p]).expect("nonzero");
        let v: Vector<F> = v.iter().map(|x| f.mul(x, &inv)).collect();
        for (_, r) in self.rows.iter_mut() {
            if !f.is_zero(&r[p]) {
                let c = f.neg(&r[p]);
                add_scaled(f, r, &c, &v);
            }
        }
        self.rows.push((p, v));
        true
    }
}

struct Graded<'a, F: Field> {
    a: &'a NLieAlgebra<F>,
    b: &'a NLieAlgebra<F>,
    w_a: Vec<usize>,
    w_b: Vec<usize>,
    k_a: Vec<Vector<F>>,
    k_b: Vec<Vector<F>>,
    u: usize,
    vectors: Vec<Vector<F>>,
    budget: u64,
    checked: u64,
    nodes: u64,
}

impl<'a, F: Field> Graded<'a, F> {
    fn embed(&self, local: &[F::Elem]) -> Vector<F> {
        let f = self.a.field();
        let mut v = zero_vector(f, self.a.dim());
        for (c, &i) in local.iter().zip(&self.w_a) {
            v[i] = c.clone();
        }
        v
    }

    fn finish(&self, cols: &[Vector<F>], ech: &PairEchelon<F>) -> Option<BasisChange<F>> {
        let f = self.a.field();
        let d = self.a.dim();
        if ech.rows.len() != self.u {
            return None;
        }
        let mut dom = Vec::with_capacity(d);
        let mut img = Vec::with_capacity(d);
        for (j, &i) in self.w_b.iter().enumerate() {
            dom.push(unit_vector(f, d, i));
            img.push(self.embed(&cols[j]));
        }
        for (kb, ka) in self.k_b.iter().zip(&self.k_a) {
            dom.push(kb.clone());
            img.push(ka.clone());
        }
        for (_, r) in &ech.rows {
            dom.push(r[..d].to_vec());
            img.push(r[d..].to_vec());
        }
        let dom = Matrix::from_cols(f, d, &dom).ok()?;
        let img = Matrix::from_cols(f, d, &img).ok()?;
        let p = BasisChange::new(img.mul(&dom.invert().ok()?).ok()?).ok()?;
        verify_witness(self.a, self.b, &p).ok()?.is_valid().then_some(p)
    }

    fn recurse(&mut self, cols: &mut Vec<Vector<F>>, ech: &PairEchelon<F>) -> Step<F> {
        let f = self.a.field().clone();
        let w = self.w_b.len();
        let n = self.a.arity();
        let j = cols.len();
        if j == w {
            if self.checked >= self.budget {
                return Step::Stop;
            }
            self.checked += 1;
            return match self.finish(cols, ech) {
                Some(p) => Step::Found(p),
                None => Step::Continue,
            };
        }
        self.nodes += 1;
        if self.nodes > self.budget.saturating_mul(64) {
            return Step::Stop;
        }
        let span = if cols.is_empty() {
            None
        } else {
            Some(crate::linalg::Subspace::span(&f, w, cols).expect("length w"))
        };
        for idx in 0..self.vectors.len() {
            let cand = self.vectors[idx].clone();
            if let Some(s) = &span {
                if s.contains(&cand).expect("length w") {
                    continue;
                }
            }
            cols.push(cand);
            let mut next = ech.clone();
            let mut ok = true;
            if j + 1 >= n {
                for mut t in combinations(j, n - 1) {
                    t.push(j);
                    let bt: Vec<usize> = t.iter().map(|&x| self.w_b[x]).collect();
                    let bv = self.b.bracket_basis(&bt);
                    let args: Vec<Vector<F>> = t.iter().map(|&x| self.embed(&cols[x])).collect();
                    let av = self.a.bracket(&args).expect("shapes agree");
                    let mut pair = bv;
                    pair.extend(av);
                    if !next.insert(&f, pair) {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                match self.recurse(cols, &next) {
                    Step::Continue => {}
                    other => return other,
                }
            }
            cols.pop();
        }
        Step::Continue
    }
}

/// Exhaustive search over finite fields exploiting the class-two grading:
/// every isomorphism may be taken to send a complement of `Z(B)` into the
/// chosen complement of `Z(A)`, so it is fixed by an element of `GL(w)` up to
/// the forced map on the derived algebras.
///
/// `budget` counts complete `GL(w)` candidates. Over Q nothing is
/// enumerated and the outcome is `Exhausted`.
pub fn graded_iso_search<F: Field>(a: &NLieAlgebra<F>, b: &NLieAlgebra<F>, budget: u64) -> SearchOutcome<F> {
    if a.arity() != b.arity() || a.dim() != b.dim() || a.field() != b.field() {
        return SearchOutcome::NotFound { checked: 0 };
    }
    if a == b {
        return SearchOutcome::Found { witness: BasisChange::identity(a.field(), a.dim()), checked: 1 };
    }
    if invariants_separate(a, b, &FingerprintOptions::coarse()) {
        return SearchOutcome::NotFound { checked: 0 };
    }
    let f = a.field();
    let Some(q) = f.size() else {
        return SearchOutcome::Exhausted { checked: 0 };
    };
    if !(a.is_class_two() || a.is_abelian_table()) {
        return SearchOutcome::Exhausted { checked: 0 };
    }
    let (za, zb) = (a.center(), b.center());
    let (da, db) = (a.derived_algebra(), b.derived_algebra());
    let w = a.dim() - za.dim();
    // Nonzero vectors of F^w in lexicographic order of their coordinates.
    let mut vectors = Vec::new();
    let total = q.checked_pow(w as u32).unwrap_or(u64::MAX);
    if total > 10_000_000 {
        return SearchOutcome::Exhausted { checked: 0 };
    }
    for code in 1..total {
        let mut c = code;
        let mut v = vec![f.zero(); w];
        for slot in (0..w).rev() {
            v[slot] = f.element(c % q);
            c /= q;
        }
        vectors.push(v);
    }
    let mut g = Graded {
        a,
        b,
        w_a: za.complement_indices(),
        w_b: zb.complement_indices(),
        k_a: da.complement_within(&za).expect("A² ⊆ Z"),
        k_b: db.complement_within(&zb).expect("A² ⊆ Z"),
        u: db.dim(),
        vectors,
        budget,
        checked: 0,
        nodes: 0,
    };
    let ech = PairEchelon { split: a.dim(), rows: Vec::new() };
    match g.recurse(&mut Vec::with_capacity(w), &ech) {
        Step::Found(witness) => SearchOutcome::Found { witness, checked: g.checked },
        Step::Continue => SearchOutcome::NotFound { checked: g.checked },
        Step::Stop => SearchOutcome::Exhausted { checked: g.checked },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, Label};
    use crate::field::{PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_change(f: &PrimeField, d: usize, seed: u64) -> BasisChange<PrimeField> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let cols: Vec<_> = (0..d).map(|_| (0..d).map(|_| rng.gen_range(0..f.modulus())).collect()).collect();
            if let Ok(p) = BasisChange::from_columns(f, d, &cols) {
                return p;
            }
        }
    }

    #[test]
    fn identity_and_swap_witnesses() {
        let a = build(&Label::A381, &Rationals).unwrap();
        let b = build(&Label::A387, &Rationals).unwrap();
        let out = signed_perm_iso(&a, &a, DEFAULT_BUDGET);
        assert_eq!(out.witness().unwrap(), &BasisChange::identity(&Rationals, 8));
        let out = signed_perm_iso(&a, &b, DEFAULT_BUDGET);
        let p = out.witness().expect("swap witness");
        assert!(verify_witness(&a, &b, p).unwrap().is_valid());
        // The minimal witness is the central swap.
        let mut perm: Vec<usize> = (0..8).collect();
        perm.swap(6, 7);
        let swap = BasisChange::signed_permutation(&Rationals, &perm, &vec![Rationals.one(); 8]).unwrap();
        assert_eq!(p, &swap);
    }

    #[test]
    fn perturbed_witness_is_rejected() {
        let a = build(&Label::A381, &Rationals).unwrap();
        let b = build(&Label::A387, &Rationals).unwrap();
        let mut perm: Vec<usize> = (0..8).collect();
        perm.swap(6, 7);
        let mut scalars = vec![Rationals.one(); 8];
        scalars[0] = Rationals.from_i64(2);
        let bad = BasisChange::signed_permutation(&Rationals, &perm, &scalars).unwrap();
        match verify_witness(&a, &b, &bad).unwrap() {
            WitnessCheck::Mismatch { args, .. } => assert_eq!(args, vec![0, 1, 2]),
            WitnessCheck::Valid => panic!("perturbed witness accepted"),
        }
        let singular = Matrix::zeros(&Rationals, 8, 8);
        assert!(verify_matrix(&a, &b, &singular).is_err());
    }

    #[test]
    fn graded_search_recovers_conjugate() {
        let f2 = PrimeField::new(2).unwrap();
        let a = build(&Label::family(3, 5, 1), &f2).unwrap();
        let b = a.apply_basis_change(&random_change(&f2, 8, 11)).unwrap();
        let out = graded_iso_search(&a, &b, DEFAULT_BUDGET);
        let p = out.witness().expect("witness");
        assert!(verify_witness(&a, &b, p).unwrap().is_valid());
        assert_eq!(graded_iso_search(&a, &a, 10).checked(), 1);
    }

    #[test]
    fn graded_search_separated_pair() {
        let f2 = PrimeField::new(2).unwrap();
        let a = build(&Label::family(3, 5, 4), &f2).unwrap();
        let b = build(&Label::A387, &f2).unwrap();
        assert_eq!(graded_iso_search(&a, &b, DEFAULT_BUDGET), SearchOutcome::NotFound { checked: 0 });
    }

    #[test]
    fn graded_search_over_gf3() {
        let f3 = PrimeField::new(3).unwrap();
        let a = build(&Label::family(3, 4, 3), &f3).unwrap();
        let b = a.apply_basis_change(&random_change(&f3, 7, 5)).unwrap();
        let out = graded_iso_search(&b, &a, DEFAULT_BUDGET);
        assert!(verify_witness(&b, &a, out.witness().expect("witness")).unwrap().is_valid());
    }

    #[test]
    fn perm_search_over_prime_field_uses_scalars() {
        let f5 = PrimeField::new(5).unwrap();
        let a = build(&Label::family(3, 5, 6), &f5).unwrap();
        let mut perm: Vec<usize> = (0..8).collect();
        perm.swap(0, 1);
        let scalars = vec![2, 3, 1, 1, 4, 1, 1, 1];
        let p = BasisChange::signed_permutation(&f5, &perm, &scalars).unwrap();
        let b = a.apply_basis_change(&p).unwrap();
        let out = signed_perm_iso(&a, &b, DEFAULT_BUDGET);
        assert!(verify_witness(&a, &b, out.witness().expect("witness")).unwrap().is_valid());
    }
}
