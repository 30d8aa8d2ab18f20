//! Ground fields: the rationals with arbitrary-precision entries, and prime fields.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LinAlgError;

/// Field selector as it appears in input files and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, LinAlgError> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(LinAlgError::NotPrime(p))
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact field arithmetic. Elements carry no reference to their field, so
/// every operation goes through the field value.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + Display + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of `num/den`; `None` when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// Every element in a fixed order, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// Number of elements, for finite fields.
    fn order(&self) -> Option<u64>;
    /// Exact rational value of a representative (the least non-negative
    /// residue for prime fields); used for printing and serialization.
    fn to_ratio(&self, a: &Self::Elem) -> BigRational;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

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
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn to_ratio(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

/// The field with `p` elements; elements are least non-negative residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinAlgError> {
        if !is_prime(p) {
            return Err(LinAlgError::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(LinAlgError::PrimeTooLarge(p));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // a^(p-2) by square-and-multiply
        let (mut base, mut exp, mut acc) = (*a, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        Some(acc)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u64> {
        let d = self.reduce_big(den);
        let n = self.reduce_big(num);
        self.inv(&d).map(|di| n * di % self.p)
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn to_ratio(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
}

/// Renders an element in the text syntax used by input files
/// (`3`, `-1/2`).
pub fn format_elem<F: Field>(field: &F, a: &F::Elem) -> String {
    let r = field.to_ratio(a);
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `true` when the rational value is negative (always `false` over a prime field).
pub fn is_negative<F: Field>(field: &F, a: &F::Elem) -> bool {
    field.to_ratio(a).is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_detection() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(PrimeField::new(4).is_err());
        assert!(FieldSpec::prime(9).is_err());
    }

    #[test]
    fn prime_field_inverses() {
        for p in [2u64, 3, 5, 7, 13] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                let inv = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &inv), 1, "p={p} a={a}");
            }
            assert_eq!(f.inv(&0), None);
        }
    }

    #[test]
    fn ratios_reduce() {
        let f = PrimeField::new(5).unwrap();
        // 1/2 = 3 in GF(5)
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(2)), Some(3));
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(10)), None);
        assert_eq!(f.from_i64(-1), 4);
        let q = Rationals;
        let half = q.from_ratio(&BigInt::from(2), &BigInt::from(4)).unwrap();
        assert_eq!(format_elem(&q, &half), "1/2");
        assert_eq!(format_elem(&q, &q.from_i64(-3)), "-3");
    }
}
