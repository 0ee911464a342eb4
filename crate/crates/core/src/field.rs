//! Coefficient fields: exact rationals and a prime field.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Default prime for modular mode, `2^61 − 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// A field element that carries enough context to build constants of the
/// same field (a prime-field element knows its modulus).
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Whether the printed form should carry a leading minus sign.
    fn is_negative(&self) -> bool;

    fn add_assign(&mut self, other: &Self) {
        *self = Field::add(self, other);
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Exact rational number, always in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(n: i64, d: i64) -> Self {
        Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Rational::integer(n)
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
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
    fn add_assign(&mut self, other: &Self) {
        self.0 += &other.0;
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

/// Element of `GF(p)` for a prime `p < 2^63`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i128, modulus: u64) -> Self {
        let m = modulus as i128;
        Fp {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    /// Reduces a rational into the field; `None` when the denominator vanishes.
    pub fn from_rational(q: &Rational, modulus: u64) -> Option<Self> {
        let m = BigInt::from(modulus);
        let reduce = |x: &BigInt| -> u64 {
            let r = ((x % &m) + &m) % &m;
            u64::try_from(r).unwrap()
        };
        let num = Fp { value: reduce(q.0.numer()), modulus };
        let den = Fp { value: reduce(q.0.denom()), modulus };
        den.inv().map(|d| num.mul(&d))
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1 % self.modulus, modulus: self.modulus }
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Fp::new(n as i128, self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn add(&self, other: &Self) -> Self {
        let s = self.value as u128 + other.value as u128;
        Fp { value: (s % self.modulus as u128) as u64, modulus: self.modulus }
    }
    fn sub(&self, other: &Self) -> Self {
        let s = self.value as u128 + self.modulus as u128 - other.value as u128;
        Fp { value: (s % self.modulus as u128) as u64, modulus: self.modulus }
    }
    fn mul(&self, other: &Self) -> Self {
        let p = self.value as u128 * other.value as u128;
        Fp { value: (p % self.modulus as u128) as u64, modulus: self.modulus }
    }
    fn neg(&self) -> Self {
        self.zero_like().sub(self)
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // Fermat: a^(p−2)
        Some(self.pow(self.modulus - 2))
    }
    /// Residues above `p/2` print as negatives, so small integers stay legible.
    fn is_negative(&self) -> bool {
        self.value > self.modulus / 2
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Deterministic primality test for `u64` (Miller–Rabin with a fixed base set).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
