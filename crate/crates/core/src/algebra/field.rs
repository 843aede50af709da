use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::rand_core::RngCore;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Commutative ring with a canonical representation, so `is_zero` is an exact test.
pub trait Ring {
    type El: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn from_i64(&self, n: i64) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;

    fn is_one(&self, a: &Self::El) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::El, mut e: u64) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// A base field: F_p or Q.
pub trait Field: Ring + Clone + Debug + PartialEq {
    fn inv(&self, a: &Self::El) -> Self::El;
    /// 0 for Q.
    fn characteristic(&self) -> u64;
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::El;
    fn from_bigint(&self, n: &BigInt) -> Self::El;
    fn from_ratio(&self, num: i64, den: i64) -> Self::El {
        self.div(&self.from_i64(num), &self.from_i64(den))
    }
    fn to_json(&self, a: &Self::El) -> Value;
    fn show(&self, a: &Self::El) -> String;
    fn name(&self) -> String;
    /// Sign-aware rendering helper: `Some(abs)` when the element prints as a negative number.
    fn negative_part(&self, a: &Self::El) -> Option<Self::El>;

    fn div(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.mul(a, &self.inv(b))
    }

    /// Irreducible factors of a monic square-free polynomial, where the field has a
    /// factorizer.
    fn split_squarefree(&self, _f: &[Self::El], _rng: &mut ChaCha8Rng) -> Option<Vec<Vec<Self::El>>> {
        None
    }

    /// Rejects characteristic p with 0 < p <= d.
    fn check_char(&self, d: usize) -> crate::Result<()> {
        let p = self.characteristic();
        if p != 0 && p <= d as u64 {
            return Err(crate::Error::CharTooSmall { p, d });
        }
        Ok(())
    }
}

/// Prime field F_p, p < 2^63.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> crate::Result<Self> {
        if p < 2 || p >= 1 << 63 || !is_prime(p) {
            return Err(crate::Error::Usage(format!("{p} is not a prime below 2^63")));
        }
        Ok(Fp { p })
    }

    /// Lifts to the symmetric range (-p/2, p/2].
    pub fn symmetric(&self, a: u64) -> i128 {
        if a > self.p / 2 {
            a as i128 - self.p as i128
        } else {
            a as i128
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // deterministic witness set for 64-bit integers
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl Ring for Fp {
    type El = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (if s >= self.p as u128 { s - self.p as u128 } else { s }) as u64
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            (*a as u128 + self.p as u128 - *b as u128) as u64
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

impl Field for Fp {
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        s0.rem_euclid(self.p as i128) as u64
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.next_u64() % self.p
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().unwrap()
    }
    fn to_json(&self, a: &u64) -> Value {
        json!(a)
    }
    fn show(&self, a: &u64) -> String {
        let s = self.symmetric(*a);
        s.to_string()
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
    fn split_squarefree(&self, f: &[u64], rng: &mut ChaCha8Rng) -> Option<Vec<Vec<u64>>> {
        Some(super::fpfactor::factor_squarefree(self, f, rng))
    }
    fn negative_part(&self, a: &u64) -> Option<u64> {
        if self.symmetric(*a) < 0 {
            Some(self.p - a)
        } else {
            None
        }
    }
}

/// The rationals, with normalized big fractions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type El = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> BigRational {
        self.from_i64((rng.next_u64() % 41) as i64 - 20)
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn to_json(&self, a: &BigRational) -> Value {
        json!({"num": a.numer().to_string(), "den": a.denom().to_string()})
    }
    fn show(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn name(&self) -> String {
        "Q".into()
    }
    fn negative_part(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_negative() {
            Some(-a)
        } else {
            None
        }
    }
}
