//! Exact arithmetic in the additive group generated by fractional powers of
//! the structure constant `α`, together with the sign/equality decision that
//! makes every downstream group computation exact.

mod sum;

pub use sum::AlphaSum;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exactnum::{
    isolate_unique_positive_root, poly_gcd, refine_root, sturm_count, IntPoly, KAdic, RatInterval,
};

/// Sign of the real number an [`AlphaSum`] denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

/// Shared context for a parameter pair `(k, l)`.
///
/// Fixes the defining polynomial `P(x) = Σ_{i=k+1}^{k+l} x^i − Σ_{i=1}^{k} x^i`
/// whose unique positive root `ρ` carries the structure constant `α = ρ^k`,
/// and caches one monotonically shrinking isolating interval per lift level.
/// `α` itself is never materialized numerically; `ρ` exists only as an
/// interval plus the polynomial.
pub struct AlphaContext {
    k: u32,
    l: u32,
    poly: IntPoly,
    levels: Mutex<BTreeMap<u32, LevelEntry>>,
}

#[derive(Clone)]
struct LevelEntry {
    poly: IntPoly,
    iv: RatInterval,
}

impl AlphaContext {
    /// Builds the context; the roles of `k` and `l` are swapped when `l < k`.
    pub fn new(k: u32, l: u32) -> AlphaContext {
        assert!(k >= 1 && l >= 1, "parameters must be positive");
        let (k, l) = if l < k { (l, k) } else { (k, l) };
        let degree = (k + l) as usize;
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        for c in coeffs.iter_mut().take(k as usize + 1).skip(1) {
            *c = BigInt::from(-1);
        }
        for c in coeffs.iter_mut().take(degree + 1).skip(k as usize + 1) {
            *c = BigInt::from(1);
        }
        let poly = IntPoly::new(coeffs);
        debug_assert!(poly.coeff(0).is_zero() && poly.coeff(1) == BigInt::from(-1));
        let iv = isolate_unique_positive_root(&poly)
            .expect("the defining polynomial has a single coefficient sign change");
        let mut levels = BTreeMap::new();
        levels.insert(
            1,
            LevelEntry {
                poly: poly.clone(),
                iv,
            },
        );
        AlphaContext {
            k,
            l,
            poly,
            levels: Mutex::new(levels),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// The defining polynomial `P` in the variable `ρ = α^{1/k}`.
    pub fn defining_poly(&self) -> &IntPoly {
        &self.poly
    }

    /// The current cached enclosure of `ρ`.
    pub fn rho_interval(&self) -> RatInterval {
        self.level(1).1
    }

    /// Shrinks the cached enclosure of `ρ` to at most `width` and returns it.
    pub fn refine_rho(&self, width: &BigRational) -> RatInterval {
        let (poly, iv) = self.level(1);
        let refined = refine_root(&poly, &iv, width);
        self.store_refined(1, refined.clone());
        refined
    }

    // Level t holds P_t(y) = P(y^(k^(t-1))), whose unique positive root is
    // γ_t = ρ^(1/k^(t-1)), i.e. α^(1/k^t); exponents lifted to denominator
    // k^t become plain integer powers of γ_t.
    fn level(&self, t: u32) -> (IntPoly, RatInterval) {
        assert!(t >= 1);
        let mut levels = self.levels.lock().unwrap();
        let entry = levels.entry(t).or_insert_with(|| {
            let e = (self.k as u64).checked_pow(t - 1).expect("lift level overflow");
            assert!(e <= 1 << 16, "lift level out of supported range");
            let poly = self.poly.compose_power(e as usize);
            let iv = isolate_unique_positive_root(&poly)
                .expect("power substitution preserves the single sign change");
            LevelEntry { poly, iv }
        });
        (entry.poly.clone(), entry.iv.clone())
    }

    fn store_refined(&self, t: u32, iv: RatInterval) {
        let mut levels = self.levels.lock().unwrap();
        if let Some(entry) = levels.get_mut(&t) {
            if iv.width() < entry.iv.width() {
                entry.iv = iv;
            }
        }
    }

    // Lifts all exponents to the common denominator k^t, shifts out the
    // minimal power, and returns (t, D, m): an integer polynomial D with
    // sign(D(γ_t)) = sign(x), where x = γ_t^m · D(γ_t).
    fn lift(&self, x: &AlphaSum) -> (u32, IntPoly, BigInt) {
        debug_assert!(!x.is_zero());
        let t = x
            .terms()
            .map(|(q, _)| q.level())
            .max()
            .expect("nonzero sum has terms")
            .max(1);
        let lifted: Vec<(BigInt, BigInt)> = x
            .terms()
            .map(|(q, g)| (q.numerator_at_level(t, self.k), g.clone()))
            .collect();
        let min = lifted.iter().map(|(h, _)| h).min().cloned().unwrap();
        let max = lifted.iter().map(|(h, _)| h).max().cloned().unwrap();
        let span = (&max - &min)
            .to_usize()
            .expect("exponent span within supported range");
        let mut coeffs = vec![BigInt::zero(); span + 1];
        for (h, g) in lifted {
            let idx = (&h - &min).to_usize().unwrap();
            coeffs[idx] = g;
        }
        (t, IntPoly::new(coeffs), min)
    }

    /// Exact sign of the real number denoted by `x`.
    ///
    /// Zero is certified through a polynomial gcd with the level polynomial
    /// (a Sturm count over the isolating interval decides whether the common
    /// factor vanishes at `γ`); a nonzero value is then signed by interval
    /// refinement, which must terminate because zero was excluded.
    pub fn sign(&self, x: &AlphaSum) -> Sign {
        if x.is_zero() {
            return Sign::Zero;
        }
        let (t, d, _) = self.lift(x);
        let (p_t, mut iv) = self.level(t);
        let g = poly_gcd(&d, &p_t);
        if g.degree().unwrap_or(0) >= 1 {
            let common_roots = sturm_count(&g, &iv)
                .expect("isolating-interval endpoints are never roots of the level polynomial");
            if common_roots == 1 {
                return Sign::Zero;
            }
        }
        loop {
            match d.eval_interval(&iv).uniform_sign() {
                Some(s) => {
                    debug_assert!(s != 0);
                    self.store_refined(t, iv);
                    return if s > 0 { Sign::Positive } else { Sign::Negative };
                }
                None => {
                    let half = iv.width() / BigRational::from_integer(2.into());
                    iv = refine_root(&p_t, &iv, &half);
                }
            }
        }
    }

    pub fn cmp(&self, x: &AlphaSum, y: &AlphaSum) -> Ordering {
        self.sign(&x.sub(y)).as_ordering()
    }

    /// Semantic equality of real values.
    pub fn eq(&self, x: &AlphaSum, y: &AlphaSum) -> bool {
        self.cmp(x, y) == Ordering::Equal
    }

    /// Applies the automorphism `φ_u`.
    pub fn scale(&self, x: &AlphaSum, u: &KAdic) -> AlphaSum {
        x.scaled(u, self.k)
    }

    /// An enclosure of the real value of `x` of width at most `width`.
    pub fn approx(&self, x: &AlphaSum, width: &BigRational) -> RatInterval {
        assert!(width.is_positive(), "width must be positive");
        if x.is_zero() {
            return RatInterval::point(BigRational::zero());
        }
        let (t, d, min) = self.lift(x);
        let shift = min.to_i64().expect("exponent within supported range");
        let (p_t, mut iv) = self.level(t);
        loop {
            let enclosure = d.eval_interval(&iv).mul(&iv.pow_positive_base(shift));
            if enclosure.width() <= *width {
                self.store_refined(t, iv);
                return enclosure;
            }
            let half = iv.width() / BigRational::from_integer(2.into());
            iv = refine_root(&p_t, &iv, &half);
        }
    }

    /// `Σ_{i=k+1}^{k+l} α^{i/k} − Σ_{i=1}^{k} α^{i/k}`, the sum that the
    /// defining relation sends to zero.
    pub fn relation_sum(&self) -> AlphaSum {
        let mut out = AlphaSum::zero();
        for i in 1..=self.k {
            out = out.add(&AlphaSum::monomial(-1, KAdic::new(i, 1, self.k)));
        }
        for i in self.k + 1..=self.k + self.l {
            out = out.add(&AlphaSum::monomial(1, KAdic::new(i, 1, self.k)));
        }
        out
    }
}

impl std::fmt::Debug for AlphaContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlphaContext")
            .field("k", &self.k)
            .field("l", &self.l)
            .field("poly", &self.poly.to_string())
            .finish()
    }
}
