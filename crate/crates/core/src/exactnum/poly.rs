use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::RatInterval;

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`; the vector carries no leading
/// zeros, and the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> IntPoly {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly::monomial(BigInt::one(), 0)
    }

    pub fn monomial(coeff: BigInt, degree: usize) -> IntPoly {
        if coeff.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = coeff;
        IntPoly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^n`.
    pub fn shift_up(&self, n: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Exact division of every coefficient; panics if any division leaves a
    /// remainder.
    pub fn div_scalar_exact(&self, c: &BigInt) -> IntPoly {
        assert!(!c.is_zero());
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    let (q, r) = a.div_rem(c);
                    assert!(r.is_zero(), "non-exact scalar division in polynomial");
                    q
                })
                .collect(),
        }
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// Sign of the value at `x`: -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Enclosure of `{p(x) : x ∈ iv}` by interval extension of Horner.
    pub fn eval_interval(&self, iv: &RatInterval) -> RatInterval {
        let mut acc = RatInterval::point(BigRational::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(iv)
                .add(&RatInterval::point(BigRational::from(c.clone())));
        }
        acc
    }

    /// Number of sign changes in the coefficient sequence, zeros skipped
    /// (the Descartes count for positive roots).
    pub fn sign_changes(&self) -> usize {
        let mut changes = 0;
        let mut last = 0i32;
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let s = if c.is_positive() { 1 } else { -1 };
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// Splits off the largest power of `x`, returning `(m, q)` with
    /// `self = x^m * q` and `q(0) != 0` (for nonzero `self`).
    pub fn deflate(&self) -> (usize, IntPoly) {
        if self.is_zero() {
            return (0, IntPoly::zero());
        }
        let m = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial has a nonzero coefficient");
        (m, IntPoly::new(self.coeffs[m..].to_vec()))
    }

    /// `p(x^e)`: spreads coefficients to every `e`-th slot.
    pub fn compose_power(&self, e: usize) -> IntPoly {
        assert!(e >= 1);
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * e + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * e] = c.clone();
        }
        IntPoly { coeffs }
    }

    /// Positive gcd of the coefficients (content); zero for the zero
    /// polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content, preserving signs.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        self.div_scalar_exact(&self.content())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_positive(&self) -> IntPoly {
        let p = self.primitive();
        if p.leading_coeff().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Pseudo-remainder: the unique `r` with
    /// `lc(d)^(deg n - deg d + 1) * n = q*d + r` and `deg r < deg d`.
    ///
    /// Requires `deg n >= deg d` and `d` nonzero.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let dn = self.degree().expect("pseudo_rem of zero polynomial");
        assert!(dn >= dd);
        let lc_d = d.leading_coeff();
        let mut r = self.clone();
        let mut remaining = (dn - dd + 1) as u32;
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lc_r = r.leading_coeff();
            r = r.mul_scalar(&lc_d).sub(&d.mul_scalar(&lc_r).shift_up(dr - dd));
            remaining -= 1;
        }
        // Pad to the full multiplier so callers can rely on the exact factor.
        if remaining > 0 {
            r = r.mul_scalar(&lc_d.pow(remaining));
        }
        r
    }

    /// Whether `d` divides `self` over the rationals.
    pub fn divisible_by(&self, d: &IntPoly) -> bool {
        if d.is_zero() {
            return self.is_zero();
        }
        if self.is_zero() {
            return true;
        }
        if self.degree() < d.degree() {
            return false;
        }
        self.pseudo_rem(d).is_zero()
    }
}

/// Greatest common divisor over the rationals via the subresultant
/// polynomial remainder sequence, returned primitive with positive leading
/// coefficient.
pub fn poly_gcd(p: &IntPoly, q: &IntPoly) -> IntPoly {
    assert!(!(p.is_zero() && q.is_zero()), "gcd(0, 0) is undefined");
    if p.is_zero() {
        return q.primitive_positive();
    }
    if q.is_zero() {
        return p.primitive_positive();
    }
    let (mut a, mut b) = if p.degree() >= q.degree() {
        (p.primitive(), q.primitive())
    } else {
        (q.primitive(), p.primitive())
    };
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return b.primitive_positive();
        }
        if r.degree() == Some(0) {
            return IntPoly::one();
        }
        a = std::mem::replace(&mut b, {
            let divisor = &g * h.pow(delta as u32);
            r.div_scalar_exact(&divisor)
        });
        g = a.leading_coeff();
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta as u32);
            let den = h.pow(delta as u32 - 1);
            let (q, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            q
        };
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
