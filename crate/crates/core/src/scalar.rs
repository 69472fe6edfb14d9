//! Scalar traits shared by the generic matrix and polynomial code.
//!
//! `num_traits::Zero`/`One` assume a constant zero and one per type, which does
//! not hold for residues whose modulus is only known at runtime. The traits
//! here instead derive the neutral elements from an existing value.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A commutative ring whose elements know which ring they belong to.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Additive identity of the ring containing `self`.
    fn zero_like(&self) -> Self;
    /// Multiplicative identity of the ring containing `self`.
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Image of the integer `n` in the ring containing `self`.
    fn int_like(&self, n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

/// A field: every nonzero element has an inverse.
///
/// The inverse is fallible because some scalar types (split étale algebras)
/// share the field interface while containing zero divisors.
pub trait Field: Ring {
    fn try_inv(&self) -> Result<Self>;

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.try_inv()?)
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for BigRational {
    fn try_inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

macro_rules! float_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn zero_like(&self) -> Self {
                0.0
            }
            fn one_like(&self) -> Self {
                1.0
            }
            fn is_zero(&self) -> bool {
                *self == 0.0
            }
            fn int_like(&self, n: i64) -> Self {
                n as $t
            }
        }

        impl Field for $t {
            fn try_inv(&self) -> Result<Self> {
                if *self == 0.0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(1.0 / *self)
                }
            }
        }
    };
}

float_ring!(f32);
float_ring!(f64);

/// Residue class in `Z/mZ` for a runtime modulus `m >= 2`.
///
/// This is the "ring mode" scalar: it is not a field unless `m` is prime, so
/// only division-free algorithms accept it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zmod {
    value: u64,
    modulus: u64,
}

impl Zmod {
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidSpec(format!("modulus {modulus} must be at least 2")));
        }
        let m = modulus as i128;
        let v = ((value as i128 % m) + m) % m;
        Ok(Zmod { value: v as u64, modulus })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn with(&self, v: u128) -> Self {
        Zmod { value: (v % self.modulus as u128) as u64, modulus: self.modulus }
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.modulus, rhs.modulus, "Zmod operands with different moduli");
    }
}

impl fmt::Display for Zmod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Zmod {
    type Output = Zmod;
    fn add(self, rhs: Zmod) -> Zmod {
        self.check(&rhs);
        self.with(self.value as u128 + rhs.value as u128)
    }
}

impl Sub for Zmod {
    type Output = Zmod;
    fn sub(self, rhs: Zmod) -> Zmod {
        self.check(&rhs);
        self.with(self.value as u128 + (self.modulus - rhs.value) as u128)
    }
}

impl Mul for Zmod {
    type Output = Zmod;
    fn mul(self, rhs: Zmod) -> Zmod {
        self.check(&rhs);
        self.with(self.value as u128 * rhs.value as u128)
    }
}

impl Neg for Zmod {
    type Output = Zmod;
    fn neg(self) -> Zmod {
        self.with((self.modulus - self.value) as u128)
    }
}

impl Ring for Zmod {
    fn zero_like(&self) -> Self {
        Zmod { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Zmod { value: 1, modulus: self.modulus }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn int_like(&self, n: i64) -> Self {
        Zmod::new(n, self.modulus).expect("modulus already validated")
    }
}

/// Rational number helpers used by several modules.
pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_wraps() {
        let a = Zmod::new(-1, 6).unwrap();
        assert_eq!(a.value(), 5);
        assert_eq!((a * a).value(), 1);
        assert_eq!((a + a.one_like()).value(), 0);
        assert_eq!((-a).value(), 1);
    }

    #[test]
    fn rational_square_roots() {
        let q = BigRational::new(BigInt::from(9), BigInt::from(4));
        assert_eq!(rational_sqrt(&q), Some(BigRational::new(3.into(), 2.into())));
        assert_eq!(rational_sqrt(&BigRational::from_integer(2.into())), None);
        assert_eq!(rational_sqrt(&BigRational::from_integer((-4).into())), None);
    }
}
