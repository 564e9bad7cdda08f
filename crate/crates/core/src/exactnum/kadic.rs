use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactNumError;

/// A base-`k` fraction `num / k^t` in canonical form.
///
/// The base `k ≥ 1` is not stored; it is supplied by the surrounding context
/// to every operation that needs it. Canonical form means `t = 0` or
/// `k ∤ num`, and for `k = 1` always `t = 0`, so two values are numerically
/// equal (for a fixed base) exactly when they are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KAdic {
    num: BigInt,
    t: u32,
}

impl KAdic {
    /// Canonical representative of `num / k^t`.
    pub fn new(num: impl Into<BigInt>, t: u32, k: u32) -> KAdic {
        assert!(k >= 1, "base k must be at least 1");
        let mut num: BigInt = num.into();
        let mut t = t;
        if k == 1 || num.is_zero() {
            return KAdic {
                num: if num.is_zero() { BigInt::zero() } else { num },
                t: 0,
            };
        }
        let k_big = BigInt::from(k);
        while t > 0 {
            let (q, r) = num.div_rem(&k_big);
            if !r.is_zero() {
                break;
            }
            num = q;
            t -= 1;
        }
        KAdic { num, t }
    }

    pub fn from_int(n: impl Into<BigInt>) -> KAdic {
        KAdic { num: n.into(), t: 0 }
    }

    pub fn zero() -> KAdic {
        KAdic::from_int(0)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// The exponent `t` of the canonical denominator `k^t`.
    pub fn level(&self) -> u32 {
        self.t
    }

    /// Sign of the represented rational (the denominator is positive).
    pub fn signum(&self) -> i32 {
        match self.num.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Numerator after lifting to the common denominator `k^level`.
    ///
    /// Requires `level >= self.level()`.
    pub fn numerator_at_level(&self, level: u32, k: u32) -> BigInt {
        assert!(level >= self.t, "cannot lift to a lower level");
        &self.num * BigInt::from(k).pow(level - self.t)
    }

    pub fn add(&self, other: &KAdic, k: u32) -> KAdic {
        let t = self.t.max(other.t);
        let num = self.numerator_at_level(t, k) + other.numerator_at_level(t, k);
        KAdic::new(num, t, k)
    }

    pub fn neg(&self) -> KAdic {
        KAdic {
            num: -&self.num,
            t: self.t,
        }
    }

    pub fn sub(&self, other: &KAdic, k: u32) -> KAdic {
        self.add(&other.neg(), k)
    }

    /// Total order agreeing with the rational values for base `k`.
    pub fn cmp_in(&self, other: &KAdic, k: u32) -> Ordering {
        let t = self.t.max(other.t);
        self.numerator_at_level(t, k)
            .cmp(&other.numerator_at_level(t, k))
    }

    pub fn to_rational(&self, k: u32) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::from(k).pow(self.t))
    }

    /// Renders the reduced rational value, e.g. `-3/4`.
    pub fn render(&self, k: u32) -> String {
        let r = self.to_rational(k);
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    /// Parses a rational literal and expresses it over a power of `k`.
    ///
    /// Fails when the reduced denominator is not supported by the base, i.e.
    /// when the value is not of the form `h / k^t`.
    pub fn parse(input: &str, k: u32) -> Result<KAdic, ExactNumError> {
        let err = || ExactNumError::Parse {
            input: input.to_string(),
            expected: "base-k fraction like `-3/4`",
        };
        let s = input.trim();
        let (num_s, den_s) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num_s.parse().map_err(|_| err())?;
        let den: BigInt = match den_s {
            Some(d) => d.parse().map_err(|_| err())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(err());
        }
        let r = BigRational::new(num, den);
        Self::from_rational(&r, k).ok_or_else(err)
    }

    /// Exact conversion from a rational, if it lies in the base-`k` group.
    pub fn from_rational(r: &BigRational, k: u32) -> Option<KAdic> {
        let denom = r.denom();
        if denom.is_one() {
            return Some(KAdic::from_int(r.numer().clone()));
        }
        if k == 1 {
            return None;
        }
        // The reduced denominator must divide some power of k.
        let k_big = BigInt::from(k);
        let mut rest = denom.clone();
        loop {
            let g = rest.gcd(&k_big);
            if g.is_one() {
                break;
            }
            while (&rest % &g).is_zero() {
                rest /= &g;
            }
        }
        if !rest.is_one() {
            return None;
        }
        let mut pow = BigInt::one();
        let mut t = 0u32;
        while !(&pow % denom).is_zero() {
            pow *= &k_big;
            t += 1;
        }
        Some(KAdic::new(r.numer() * (pow / denom), t, k))
    }
}
