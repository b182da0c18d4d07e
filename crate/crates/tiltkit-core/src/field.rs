//! Exact scalar fields: the rationals (session default) and prime fields F_p.
//!
//! Every computation in the engine is generic over [`Field`]. Arithmetic is
//! exact — there is no rounding anywhere — so linear-algebra results (ranks,
//! kernels, solutions) are certificates, not estimates.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An exact field. `BigRational` implements this for ℚ; [`Fp`] for F_p.
///
/// Operations take `self` by value (all implementors are cheap-to-clone or
/// reference-counted internally); `inv` is the only fallible operation.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse; `Err(DivisionByZero)` on zero.
    fn inv(&self) -> Result<Self>;
    fn from_i64(n: i64) -> Self;
    /// Field characteristic; 0 for ℚ.
    fn characteristic() -> u64;
    /// Exact square root, `None` when `self` is not a square in the field.
    /// Used to decide irreducibility of quadratics, so it must never
    /// approximate: a `Some` answer squares back to `self` exactly.
    fn sqrt(&self) -> Option<Self>;
}

/// The session default field ℚ, represented exactly as big rationals.
pub type Q = BigRational;

impl Field for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn inv(&self) -> Result<Self> {
        if <BigRational as Zero>::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic() -> u64 {
        0
    }
    fn sqrt(&self) -> Option<Self> {
        use num_integer::Roots;
        use num_traits::Signed;
        if self.is_negative() {
            return None;
        }
        // `BigRational` keeps the fraction reduced with a positive
        // denominator, so p/q is a square iff p and q both are.
        let (num, den) = (self.numer(), self.denom());
        let (rn, rd) = (num.sqrt(), den.sqrt());
        if &(&rn * &rn) == num && &(&rd * &rd) == den {
            Some(BigRational::new(rn, rd))
        } else {
            None
        }
    }
}

/// The prime field F_p with `P` fixed at the type level, elements normalized
/// to `0..P`. The primality of `P` is the caller's obligation (the CLI only
/// instantiates a checked whitelist); arithmetic itself never overflows since
/// products are formed in `u128`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(n: u64) -> Self {
        Fp(n % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
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
    fn inv(&self) -> Result<Self> {
        if self.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        // Extended Euclid on (P, self) over i128; gcd is 1 for prime P.
        let (mut r0, mut r1) = (P as i128, self.0 as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "P must be prime");
        Ok(Fp(t0.rem_euclid(P as i128) as u64))
    }
    fn from_i64(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u64)
    }
    fn characteristic() -> u64 {
        P
    }
    fn sqrt(&self) -> Option<Self> {
        // Exhaustive search; the supported primes are small enough that this
        // stays instant and it works uniformly, including p = 2.
        (0..P)
            .map(Fp::<P>)
            .find(|x| *x * *x == *self)
    }
}
