//! Exact scalar fields: arbitrary-precision rationals and small prime fields.
//!
//! All linear algebra in this crate is generic over [`Field`], so every
//! computation can be cross-checked over `Z/p` with the same code paths.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// An exact field. Arithmetic never rounds; `inv` on zero returns `None`.
pub trait Field:
    Clone + PartialEq + Eq + std::hash::Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Serialized form; rationals use the "p/q" convention.
    fn to_string_repr(&self) -> String {
        format!("{self}")
    }

    fn parse_repr(s: &str) -> Option<Self>;

    /// Short human-readable name of the field, used in reports.
    fn field_name() -> String;
}

/// Arbitrary-precision rational, always reduced with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn int(v: i64) -> Self {
        Rat(BigRational::from(BigInt::from(v)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Rat(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rat(&self.0 - &other.0)
    }
    fn neg(&self) -> Self {
        Rat(-self.0.clone())
    }
    fn mul(&self, other: &Self) -> Self {
        Rat(&self.0 * &other.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }
    fn from_i64(v: i64) -> Self {
        Rat::int(v)
    }
    fn parse_repr(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() || d.is_negative() {
                    return None;
                }
                Some(Rat(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = s.parse().ok()?;
                Some(Rat(BigRational::from(n)))
            }
        }
    }
    fn field_name() -> String {
        "Q".into()
    }
}

/// Prime field `Z/P` with `P` a small prime, canonical representative in `0..P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % P)
    }
    fn sub(&self, other: &Self) -> Self {
        Fp((self.0 + P - other.0) % P)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(self.0 * other.0 % P)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // P is prime, so a^(P-2) = a^-1.
        let mut result = 1u64;
        let mut base = self.0;
        let mut e = P - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Some(Fp(result))
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn parse_repr(s: &str) -> Option<Self> {
        let v: i64 = s.trim().parse().ok()?;
        Some(Fp::new(v))
    }
    fn field_name() -> String {
        format!("F{P}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rat_display_roundtrip() {
        let x = Rat::new(-6, 4);
        assert_eq!(x.to_string_repr(), "-3/2");
        assert_eq!(Rat::parse_repr("-3/2"), Some(x));
        assert_eq!(Rat::parse_repr("7"), Some(Rat::int(7)));
        assert_eq!(Rat::parse_repr("1/0"), None);
    }

    #[test]
    fn fp_inverse() {
        for v in 1..7 {
            let x = Fp::<7>::new(v);
            assert_eq!(x.mul(&x.inv().unwrap()), Fp::<7>::one());
        }
        assert_eq!(Fp::<7>::zero().inv(), None);
    }

    proptest! {
        #[test]
        fn rat_mul_inverse_is_one(n in -1000i64..1000, d in 1i64..1000) {
            prop_assume!(n != 0);
            let x = Rat::new(n, d);
            prop_assert_eq!(x.mul(&x.inv().unwrap()), Rat::one());
        }

        #[test]
        fn rat_field_axioms(a in -50i64..50, b in -50i64..50, c in -50i64..50) {
            let (a, b, c) = (Rat::int(a), Rat::int(b), Rat::int(c));
            prop_assert_eq!(a.add(&b).mul(&c), b.add(&a).mul(&c));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }
    }
}
