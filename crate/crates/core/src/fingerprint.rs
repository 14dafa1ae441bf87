//! Isomorphism invariants.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{NLieAlgebra, NilpotencyClass};
use crate::field::{Field, FieldSpec, PrimeField};
use crate::linalg::{Matrix, Vector};

/// Multiset of ad-ranks over the projective points of `F_p^d`, as
/// `rank → number of points`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankProfile {
    pub prime: u64,
    pub counts: BTreeMap<usize, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub arity: usize,
    pub dim: usize,
    pub derived_dim: usize,
    pub center_dim: usize,
    pub derived_center_dim: usize,
    pub class: NilpotencyClass,
    /// Empty when no finite reduction exists or the point count exceeds the budget.
    pub profiles: Vec<RankProfile>,
}

#[derive(Clone, Debug)]
pub struct FingerprintOptions {
    /// Largest number of projective points for which a profile is computed.
    pub max_points: u64,
    /// Primes used to reduce integral tables over Q.
    pub reduction_primes: Vec<u64>,
}

impl Default for FingerprintOptions {
    fn default() -> Self {
        Self { max_points: 20_000, reduction_primes: vec![2, 3] }
    }
}

impl FingerprintOptions {
    pub fn coarse() -> Self {
        Self { max_points: 0, reduction_primes: vec![] }
    }
}

impl Fingerprint {
    /// The components that do not depend on point enumeration.
    pub fn coarse(&self) -> (usize, usize, usize, usize, usize, NilpotencyClass) {
        (self.arity, self.dim, self.derived_dim, self.center_dim, self.derived_center_dim, self.class)
    }

    pub fn to_json(&self) -> Value {
        let profiles: Vec<Value> = self
            .profiles
            .iter()
            .map(|p| {
                let counts: serde_json::Map<String, Value> =
                    p.counts.iter().map(|(r, c)| (r.to_string(), json!(c))).collect();
                json!({ "field": FieldSpec::Prime(p.prime).to_string(), "rank_counts": counts })
            })
            .collect();
        json!({
            "arity": self.arity,
            "dim": self.dim,
            "dim_derived": self.derived_dim,
            "dim_center": self.center_dim,
            "dim_derived_cap_center": self.derived_center_dim,
            "class": self.class.to_string(),
            "ad_rank_profiles": profiles,
        })
    }
}

/// Number of projective points of `F_p^d`, saturating.
pub fn projective_points(p: u64, d: usize) -> u64 {
    let mut total: u64 = 0;
    let mut term: u64 = 1;
    for _ in 0..d {
        total = total.saturating_add(term);
        term = term.saturating_mul(p);
    }
    total
}

/// Calls `visit` on the normalized representative (first nonzero entry 1)
/// of every projective point, in lexicographic order of the tail.
fn for_each_projective_point(p: u64, d: usize, mut visit: impl FnMut(&[u64])) {
    let mut v = vec![0u64; d];
    for lead in 0..d {
        v.iter_mut().for_each(|x| *x = 0);
        v[lead] = 1;
        loop {
            visit(&v);
            // Odometer on positions lead+1..d.
            let mut i = d;
            loop {
                if i == lead + 1 {
                    break;
                }
                i -= 1;
                v[i] += 1;
                if v[i] < p {
                    break;
                }
                v[i] = 0;
            }
            if v[lead + 1..].iter().all(|&x| x == 0) {
                break;
            }
        }
    }
}

/// Ad-rank profile over GF(p) by enumerating all projective points.
pub fn rank_profile(a: &NLieAlgebra<PrimeField>) -> RankProfile {
    let f = a.field();
    let p = f.modulus();
    let mats = a.ad_matrices();
    let mut counts = BTreeMap::new();
    for_each_projective_point(p, a.dim(), |v| {
        let rows: Vec<Vector<PrimeField>> =
            mats.iter().map(|m| m.mul_vec(v).expect("square")).filter(|r| r.iter().any(|&x| x != 0)).collect();
        let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(f, a.dim(), rows).expect("length d").rank() };
        *counts.entry(rank).or_insert(0) += 1;
    });
    RankProfile { prime: p, counts }
}

pub fn fingerprint<F: Field>(a: &NLieAlgebra<F>, opts: &FingerprintOptions) -> Fingerprint {
    let derived = a.derived_algebra();
    let center = a.center();
    let cap = derived.intersect(&center).expect("same ambient");
    let mut profiles = Vec::new();
    match a.field().spec() {
        FieldSpec::Prime(p) => {
            if projective_points(p, a.dim()) <= opts.max_points {
                let fp = PrimeField::new(p).expect("valid prime");
                let local = a.reduce_integral(&fp).expect("residues are integers");
                profiles.push(rank_profile(&local));
            }
        }
        FieldSpec::Rationals => {
            for &p in &opts.reduction_primes {
                if projective_points(p, a.dim()) > opts.max_points {
                    continue;
                }
                let fp = match PrimeField::new(p) {
                    Ok(fp) => fp,
                    Err(_) => continue,
                };
                if let Some(red) = a.reduce_integral(&fp) {
                    profiles.push(rank_profile(&red));
                }
            }
        }
    }
    Fingerprint {
        arity: a.arity(),
        dim: a.dim(),
        derived_dim: derived.dim(),
        center_dim: center.dim(),
        derived_center_dim: cap.dim(),
        class: a.nilpotency_class(),
        profiles,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, Label};

    #[test]
    fn point_enumeration_counts() {
        for (p, d) in [(2u64, 3usize), (3, 2), (5, 3), (2, 1)] {
            let mut seen = std::collections::HashSet::new();
            for_each_projective_point(p, d, |v| {
                assert_eq!(v.iter().find(|&&x| x != 0), Some(&1));
                seen.insert(v.to_vec());
            });
            assert_eq!(seen.len() as u64, projective_points(p, d));
            // Oracle: (p^d - 1) / (p - 1).
            assert_eq!(projective_points(p, d), (p.pow(d as u32) - 1) / (p - 1));
        }
    }

    #[test]
    fn coarse_values() {
        let f2 = PrimeField::new(2).unwrap();
        let a5 = fingerprint(&build(&Label::family(3, 5, 5), &f2).unwrap(), &FingerprintOptions::coarse());
        assert_eq!((a5.derived_dim, a5.center_dim), (3, 3));
        let a4 = fingerprint(&build(&Label::family(3, 5, 4), &f2).unwrap(), &FingerprintOptions::coarse());
        assert_eq!((a4.derived_dim, a4.center_dim), (3, 4));
        let ab = fingerprint(&build(&Label::Abelian { n: 3, d: 8 }, &f2).unwrap(), &FingerprintOptions::default());
        assert_eq!(ab.class, NilpotencyClass::Abelian);
        assert_eq!(ab.derived_dim, 0);
        assert_eq!(ab.profiles[0].counts, BTreeMap::from([(0, 255)]));
    }

    #[test]
    fn heisenberg_profile() {
        // H(3,1): [v, A, A] is nonzero exactly when v has a nonzero e1..e3 component.
        let f2 = PrimeField::new(2).unwrap();
        let h = build(&Label::heisenberg(3, 1, 0), &f2).unwrap();
        let p = rank_profile(&h);
        assert_eq!(p.counts, BTreeMap::from([(0, 1), (1, 14)]));
    }

    #[test]
    fn rational_tables_use_reductions() {
        let h = build(&Label::heisenberg(3, 1, 0), &crate::field::Rationals).unwrap();
        let fp = fingerprint(&h, &FingerprintOptions::default());
        assert_eq!(fp.profiles.iter().map(|p| p.prime).collect::<Vec<_>>(), vec![2, 3]);
    }
}
