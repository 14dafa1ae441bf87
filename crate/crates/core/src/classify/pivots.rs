//! Coefficient-elimination base changes for lifted brackets.
//!
//! A lift of `[e₁,…,eₙ] = e_{n+1}` to a central extension by `e_t` may carry
//! brackets `[e₁,…,êᵢ,…,eₙ, e_s] = cᵢ e_t`. Replacing the pivot `e_p` by
//! `e_p + Σ_{i>p} (−1)^{i−p} (cᵢ/c_p) eᵢ` and `e_t` by `c_p e_t` clears every
//! `cᵢ` with `i > p` and normalizes `c_p` to one.

use crate::algebra::BasisChange;
use crate::field::Field;
use crate::linalg::{unit_vector, Vector};

/// Smallest 1-based index with a nonzero coefficient.
pub fn first_pivot<F: Field>(field: &F, coeffs: &[F::Elem]) -> Option<usize> {
    coeffs.iter().position(|c| !field.is_zero(c)).map(|i| i + 1)
}

/// The elimination change on a `d`-dimensional algebra. `coeffs[i-1]` is `cᵢ`,
/// indices are 1-based; `None` if `c_p = 0`.
pub fn pivot_elimination<F: Field>(
    field: &F,
    d: usize,
    pivot: usize,
    coeffs: &[F::Elem],
    target: usize,
) -> Option<BasisChange<F>> {
    let cp = coeffs.get(pivot - 1)?;
    let inv = field.inv(cp)?;
    let mut cols: Vec<Vector<F>> = (0..d).map(|i| unit_vector(field, d, i)).collect();
    for (i, c) in coeffs.iter().enumerate().skip(pivot) {
        let idx = i + 1;
        let mut x = field.mul(c, &inv);
        if (idx - pivot) % 2 == 1 {
            x = field.neg(&x);
        }
        cols[pivot - 1][i] = x;
    }
    cols[target - 1][target - 1] = cp.clone();
    BasisChange::from_columns(field, d, &cols).ok()
}

/// `e'_from = e_from + α·e_into` (1-based), clearing a constant that
/// `e_into` absorbs.
pub fn absorb<F: Field>(field: &F, d: usize, from: usize, into: usize, alpha: &F::Elem) -> BasisChange<F> {
    let mut cols: Vec<Vector<F>> = (0..d).map(|i| unit_vector(field, d, i)).collect();
    cols[from - 1][into - 1] = field.add(&cols[from - 1][into - 1], alpha);
    BasisChange::from_columns(field, d, &cols).expect("unipotent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::NLieAlgebra;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    /// `[e₁..eₙ] = e_{n+1}` and `[e₁..êᵢ..eₙ, e_{n+2}] = cᵢ e_{n+5}`.
    fn lifted<F: Field>(f: &F, n: usize, coeffs: &[F::Elem]) -> NLieAlgebra<F> {
        let d = n + 5;
        let mut a = NLieAlgebra::new(f, n, d).unwrap();
        a.set_monomial(&(1..=n).collect::<Vec<_>>(), n + 1).unwrap();
        for (i, c) in coeffs.iter().enumerate() {
            let args: Vec<usize> = (0..n).filter(|&j| j != i).chain([n + 1]).collect();
            let mut v = vec![f.zero(); d];
            v[d - 1] = c.clone();
            a.set_bracket(&args, v).unwrap();
        }
        a
    }

    fn expected<F: Field>(f: &F, n: usize, pivot: usize) -> NLieAlgebra<F> {
        let mut coeffs = vec![f.zero(); n];
        coeffs[pivot - 1] = f.one();
        lifted(f, n, &coeffs)
    }

    #[test]
    fn first_pivot_is_smallest_nonzero() {
        let f = Rationals;
        assert_eq!(first_pivot(&f, &[f.zero(), f.from_i64(3), f.one()]), Some(2));
        assert_eq!(first_pivot(&f, &[f.zero()]), None);
    }

    #[test]
    fn zero_pivot_is_refused() {
        let f = Rationals;
        assert!(pivot_elimination(&f, 8, 1, &[f.zero(), f.one(), f.one()], 8).is_none());
    }

    #[test]
    fn absorb_clears_constant() {
        // [e1,e2,e3] = e6 + α e8 becomes e'6 after e'6 = e6 + α e8.
        let f = Rationals;
        let mut a = NLieAlgebra::new(&f, 3, 8).unwrap();
        let mut v = vec![f.zero(); 8];
        v[5] = f.one();
        v[7] = f.from_i64(5);
        a.set_bracket(&[0, 1, 2], v).unwrap();
        let b = a.apply_basis_change(&absorb(&f, 8, 6, 8, &f.from_i64(5))).unwrap();
        let mut want = NLieAlgebra::new(&f, 3, 8).unwrap();
        want.set_monomial(&[1, 2, 3], 6).unwrap();
        assert_eq!(b, want);
    }

    proptest! {
        #[test]
        fn elimination_leaves_single_normalized_row(
            n in 3usize..6,
            pivot in 1usize..4,
            raw in proptest::collection::vec(-4i64..5, 6),
            p in prop::sample::select(vec![0u64, 5, 7]),
        ) {
            prop_assume!(pivot <= n);
            if p == 0 {
                let f = Rationals;
                let mut c: Vec<_> = raw[..n].iter().map(|&x| f.from_i64(x)).collect();
                for x in c.iter_mut().take(pivot - 1) { *x = f.zero(); }
                prop_assume!(!f.is_zero(&c[pivot - 1]));
                let a = lifted(&f, n, &c);
                let change = pivot_elimination(&f, n + 5, pivot, &c, n + 5).unwrap();
                prop_assert_eq!(a.apply_basis_change(&change).unwrap(), expected(&f, n, pivot));
            } else {
                let f = PrimeField::new(p).unwrap();
                let mut c: Vec<_> = raw[..n].iter().map(|&x| f.from_i64(x)).collect();
                for x in c.iter_mut().take(pivot - 1) { *x = f.zero(); }
                prop_assume!(!f.is_zero(&c[pivot - 1]));
                let a = lifted(&f, n, &c);
                let change = pivot_elimination(&f, n + 5, pivot, &c, n + 5).unwrap();
                prop_assert_eq!(a.apply_basis_change(&change).unwrap(), expected(&f, n, pivot));
            }
        }
    }
}
