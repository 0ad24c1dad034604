//! Coefficient fields: exact rationals and prime fields `Z/p`.
//!
//! The prime used by [`Fp`] is fixed once per process (see [`set_prime`]);
//! all residues live in `[0, p)`.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact coefficient field.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    /// Short name used in reports (`QQ`, `FP32003`).
    fn field_name() -> String;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    /// `num / den`; `None` when `den` vanishes in the field.
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self>;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    fn is_negative_display(&self) -> bool {
        false
    }
}

/// Arbitrary precision rational, always reduced with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rational {
    fn field_name() -> String {
        "QQ".to_string()
    }
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "inverse of zero");
        Rational(self.0.recip())
    }
    fn div(&self, other: &Self) -> Self {
        Rational(&self.0 / &other.0)
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(num.clone(), den.clone())))
        }
    }
    fn is_negative_display(&self) -> bool {
        self.0.is_negative()
    }
}

/// Default modulus for [`Fp`]: the largest prime below 2^31.
pub const DEFAULT_PRIME: u32 = 2_147_483_647;

static PRIME: OnceLock<u32> = OnceLock::new();

/// Fix the session prime. Returns the prime actually in effect, which differs
/// from `p` when another prime was already installed.
pub fn set_prime(p: u32) -> u32 {
    *PRIME.get_or_init(|| p)
}

pub fn prime() -> u32 {
    *PRIME.get_or_init(|| DEFAULT_PRIME)
}

/// Residue modulo the session prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp(u32);

impl Fp {
    pub fn new(v: i64) -> Self {
        let p = prime() as i64;
        Fp(v.rem_euclid(p) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Fp {
        let p = prime() as u64;
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // symmetric representative reads better in printed polynomials
        let p = prime();
        if self.0 > p / 2 {
            write!(f, "-{}", p - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Field for Fp {
    fn field_name() -> String {
        format!("FP{}", prime())
    }
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn add(&self, other: &Self) -> Self {
        let p = prime() as u64;
        Fp(((self.0 as u64 + other.0 as u64) % p) as u32)
    }
    fn sub(&self, other: &Self) -> Self {
        let p = prime() as u64;
        Fp(((self.0 as u64 + p - other.0 as u64) % p) as u32)
    }
    fn mul(&self, other: &Self) -> Self {
        let p = prime() as u64;
        Fp((self.0 as u64 * other.0 as u64 % p) as u32)
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp(prime() - self.0)
        }
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(prime() as u64 - 2)
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        let p = BigInt::from(prime());
        let n = num.mod_floor(&p).to_i64()?;
        let d = den.mod_floor(&p).to_i64()?;
        if d == 0 {
            None
        } else {
            Some(Fp::new(n).div(&Fp::new(d)))
        }
    }
    fn is_negative_display(&self) -> bool {
        self.0 > prime() / 2
    }
}
