//! Random class-two central extensions and the completeness audit.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::NLieAlgebra;
use crate::catalog::{build, list_for, Label};
use crate::error::{CatalogError, ClassifyError};
use crate::field::Field;
use crate::tuples::combinations;

#[derive(Clone, Debug)]
pub struct Sample<F: Field> {
    pub quotient: Label,
    pub algebra: NLieAlgebra<F>,
}

/// Upper bound on redraws for a single sample.
const MAX_ATTEMPTS: usize = 1000;

/// A one-dimensional central extension of a random `(d−1)`-dimensional
/// listed algebra by a random cocycle that vanishes on tuples touching the
/// quotient's derived coordinates, redrawn until the result is class two.
pub fn sample_extension<F: Field, R: Rng>(n: usize, d: usize, field: &F, rng: &mut R) -> Result<Sample<F>, CatalogError> {
    if d < 2 {
        return Err(CatalogError::InvalidParameters(format!("cannot sample dimension {d}")));
    }
    let quotients = list_for(n, d - 1).labels;
    for _ in 0..MAX_ATTEMPTS {
        let quotient = quotients[rng.gen_range(0..quotients.len())];
        let q = build(&quotient, field)?;
        let derived = q.derived_algebra();
        let free: Vec<usize> = (0..d - 1).filter(|i| !derived.pivots().contains(i)).collect();
        let mut cocycle = BTreeMap::new();
        for t in combinations(free.len(), n) {
            let c = field.random(rng);
            if !field.is_zero(&c) {
                cocycle.insert(t.iter().map(|&i| free[i]).collect::<Vec<_>>(), c);
            }
        }
        let a = q.central_extension(&cocycle).map_err(|e| CatalogError::InvalidParameters(e.to_string()))?;
        if a.is_class_two() {
            return Ok(Sample { quotient, algebra: a });
        }
    }
    Err(CatalogError::InvalidParameters(format!("no class-two extension found for n={n}, d={d}")))
}

#[derive(Clone, Debug)]
pub struct AuditFailure<F: Field> {
    pub index: usize,
    pub quotient: Label,
    pub algebra: NLieAlgebra<F>,
    pub error: ClassifyError,
}

#[derive(Clone, Debug)]
pub struct AuditReport<F: Field> {
    pub seed: u64,
    pub count: usize,
    pub histogram: BTreeMap<String, usize>,
    pub failures: Vec<AuditFailure<F>>,
    /// Labels emitted that are not in the list for `(n, d)`.
    pub unlisted: Vec<String>,
}

/// Samples `count` extensions with a ChaCha8 generator seeded by `seed` and
/// classifies each one.
pub fn audit<F: Field>(n: usize, d: usize, field: &F, count: usize, seed: u64) -> Result<AuditReport<F>, CatalogError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let listed = list_for(n, d).labels;
    let mut report = AuditReport { seed, count, histogram: BTreeMap::new(), failures: Vec::new(), unlisted: Vec::new() };
    for index in 0..count {
        let s = sample_extension(n, d, field, &mut rng)?;
        match crate::classify::classify(&s.algebra) {
            Ok(r) => {
                let name = r.label.to_string();
                if !listed.contains(&r.label) && !report.unlisted.contains(&name) {
                    report.unlisted.push(name.clone());
                }
                *report.histogram.entry(name).or_insert(0) += 1;
            }
            Err(error) => {
                *report.histogram.entry("failure".into()).or_insert(0) += 1;
                report.failures.push(AuditFailure { index, quotient: s.quotient, algebra: s.algebra, error });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn samples_are_class_two_extensions() {
        let f2 = PrimeField::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let s = sample_extension(3, 8, &f2, &mut rng).unwrap();
            assert_eq!(s.algebra.dim(), 8);
            assert!(s.algebra.is_class_two());
            assert!(list_for(3, 7).labels.contains(&s.quotient));
        }
    }

    #[test]
    fn audit_is_deterministic() {
        let f2 = PrimeField::new(2).unwrap();
        let a = audit(3, 8, &f2, 20, 7).unwrap();
        let b = audit(3, 8, &f2, 20, 7).unwrap();
        assert_eq!(a.histogram, b.histogram);
        assert_eq!(a.histogram.values().sum::<usize>(), 20);
    }
}
