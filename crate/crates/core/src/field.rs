//! Exact scalar fields: the rationals and prime fields GF(p).
//!
//! Fields are runtime objects (a modulus is only known after reading an input
//! file), so arithmetic goes through the field value rather than through
//! operator overloads on the elements.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

/// Selects one of the supported fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| FieldError::BadFieldSpec(s.to_string()))?;
        let p: u64 = inner
            .trim()
            .parse()
            .map_err(|_| FieldError::BadFieldSpec(s.to_string()))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

/// A field whose elements are exact values of type [`Field::Elem`].
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// A square root inside the field, if one exists.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Number of elements, `None` for an infinite field.
    fn size(&self) -> Option<u64>;
    /// The `i`-th element in a fixed enumeration (finite fields only).
    fn element(&self, i: u64) -> Self::Elem;
    /// Index of `a` in the enumeration used by [`Field::element`].
    fn index_of(&self, a: &Self::Elem) -> u64;
    /// A random element. Over Q this is a small integer.
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;
    fn render(&self, a: &Self::Elem) -> String;
    /// The element as an integer when it is one (over GF(p): its residue).
    fn to_integer(&self, a: &Self::Elem) -> Option<BigInt>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn characteristic(&self) -> u64 {
        match self.spec() {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    /// A random nonzero element.
    fn random_nonzero(&self, rng: &mut dyn RngCore) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

/// The field of rational numbers with arbitrary-precision numerators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_negative() {
            return None;
        }
        let n = exact_isqrt(a.numer())?;
        let d = exact_isqrt(a.denom())?;
        Some(BigRational::new(n, d))
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn element(&self, i: u64) -> BigRational {
        // 0, 1, -1, 2, -2, ...
        let k = i.div_ceil(2) as i64;
        self.from_i64(if i % 2 == 1 { k } else { -k })
    }
    fn index_of(&self, a: &BigRational) -> u64 {
        let k = a.to_integer().to_i64().unwrap_or(0);
        if k > 0 {
            (2 * k - 1) as u64
        } else {
            (-2 * k) as u64
        }
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        self.from_i64(rng.gen_range(-3..=3))
    }
    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        let bad = || FieldError::BadScalar(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    }
    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn to_integer(&self, a: &BigRational) -> Option<BigInt> {
        a.is_integer().then(|| a.to_integer())
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// The prime field GF(p) with residues stored canonically in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !(2..MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    fn is_square(&self, a: u64) -> bool {
        a == 0 || self.p == 2 || self.pow(a, (self.p - 1) / 2) == 1
    }

    /// Tonelli–Shanks for odd p.
    fn tonelli(&self, a: u64) -> Option<u64> {
        let p = self.p;
        if a == 0 || p == 2 {
            return Some(a);
        }
        if !self.is_square(a) {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.is_square(z) {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = tt * tt % p;
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = b * b % p;
            t = t * c % p;
            r = r * b % p;
        }
        Some(r)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sqrt(&self, a: &u64) -> Option<u64> {
        self.tonelli(*a)
    }
    fn size(&self) -> Option<u64> {
        Some(self.p)
    }
    fn element(&self, i: u64) -> u64 {
        i % self.p
    }
    fn index_of(&self, a: &u64) -> u64 {
        *a
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn parse(&self, s: &str) -> Result<u64, FieldError> {
        let t = s.trim();
        // Integral rational strings are accepted and reduced.
        let v: BigInt = t.parse().map_err(|_| FieldError::BadScalar(s.to_string()))?;
        let r = v.mod_floor(&BigInt::from(self.p));
        Ok(r.to_u64().expect("residue fits"))
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn to_integer(&self, a: &u64) -> Option<BigInt> {
        Some(BigInt::from(*a))
    }
}

/// Roots of `a·x² + b·x + c` with `a ≠ 0`, if both lie in the field.
///
/// A double root is returned twice.
pub fn quadratic_roots<F: Field>(
    field: &F,
    a: &F::Elem,
    b: &F::Elem,
    c: &F::Elem,
) -> Option<(F::Elem, F::Elem)> {
    let a_inv = field.inv(a)?;
    if field.characteristic() == 2 {
        // Only GF(2) is admissible in characteristic two.
        let roots: Vec<_> = (0..2)
            .map(|i| field.element(i))
            .filter(|x| {
                let v = field.add(&field.mul(a, &field.mul(x, x)), &field.add(&field.mul(b, x), c));
                field.is_zero(&v)
            })
            .collect();
        return match roots.len() {
            2 => Some((roots[0].clone(), roots[1].clone())),
            // x² + x·b/a + c/a with one root in GF(2): the other is b/a - r.
            1 => {
                let other = field.sub(&field.mul(&field.neg(b), &a_inv), &roots[0]);
                Some((roots[0].clone(), other))
            }
            _ => None,
        };
    }
    let four = field.from_i64(4);
    let two_a = field.mul(&field.from_i64(2), a);
    let disc = field.sub(&field.mul(b, b), &field.mul(&four, &field.mul(a, c)));
    let s = field.sqrt(&disc)?;
    let nb = field.neg(b);
    let r1 = field.div(&field.add(&nb, &s), &two_a)?;
    let r2 = field.div(&field.sub(&nb, &s), &two_a)?;
    Some((r1, r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spec_round_trip() {
        for s in ["Q", "GF(2)", "GF(5)", "GF(2147483647)"] {
            assert_eq!(s.parse::<FieldSpec>().unwrap().to_string(), s);
        }
        assert!("GF(4)".parse::<FieldSpec>().is_err());
        assert!("GF(2147483648)".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn rational_strings() {
        let q = Rationals;
        assert_eq!(q.render(&q.parse("4/6").unwrap()), "2/3");
        assert_eq!(q.render(&q.parse("3/-6").unwrap()), "-1/2");
        assert_eq!(q.render(&q.parse("-7").unwrap()), "-7");
        assert_eq!(q.render(&q.parse("8/4").unwrap()), "2");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
    }

    #[test]
    fn prime_field_inverse_and_sqrt() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.parse("-1").unwrap(), 4);
        for a in 0..5 {
            if let Some(r) = f.sqrt(&a) {
                assert_eq!(r * r % 5, a);
            }
        }
        assert_eq!(f.sqrt(&2), None);
        let big = PrimeField::new(1_000_000_007 % MAX_PRIME).unwrap();
        let r = big.sqrt(&big.mul(&123456, &123456)).unwrap();
        assert_eq!(big.mul(&r, &r), big.mul(&123456, &123456));
    }

    #[test]
    fn quadratic_roots_split() {
        let q = Rationals;
        // (x - 2)(x + 3/2) = x² - x/2 - 3
        let (r1, r2) = quadratic_roots(&q, &q.one(), &q.parse("-1/2").unwrap(), &q.from_i64(-3)).unwrap();
        let mut got = vec![q.render(&r1), q.render(&r2)];
        got.sort();
        assert_eq!(got, vec!["-3/2", "2"]);
        assert!(quadratic_roots(&q, &q.one(), &q.zero(), &q.from_i64(-2)).is_none());

        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(quadratic_roots(&f2, &1, &1, &0), Some((0, 1)));
        assert!(quadratic_roots(&f2, &1, &1, &1).is_none());
        let f7 = PrimeField::new(7).unwrap();
        let (a, b) = quadratic_roots(&f7, &1, &f7.from_i64(-5), &6).unwrap();
        let mut v = [a, b];
        v.sort();
        assert_eq!(v, [2, 3]);
    }

    fn check_axioms<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) {
        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
        assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
        assert_eq!(f.add(a, &f.neg(a)), f.zero());
        if let Some(ai) = f.inv(a) {
            assert_eq!(f.mul(a, &ai), f.one());
        } else {
            assert!(f.is_zero(a));
        }
        assert_eq!(f.parse(&f.render(a)).unwrap(), *a);
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20, e in -9i64..9) {
            let q = Rationals;
            let x = q.div(&q.from_i64(a), &q.from_i64(b)).unwrap();
            let y = q.div(&q.from_i64(c), &q.from_i64(d)).unwrap();
            check_axioms(&q, &x, &y, &q.from_i64(e));
        }

        #[test]
        fn prime_field_axioms(pi in 0usize..4, a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
            let p = [2u64, 3, 5, 7][pi];
            let f = PrimeField::new(p).unwrap();
            check_axioms(&f, &(a % p), &(b % p), &(c % p));
        }
    }
}
