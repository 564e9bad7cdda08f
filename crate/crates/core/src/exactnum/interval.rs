use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Closed interval with exact rational endpoints.
///
/// Arithmetic returns enclosures: the true value of any enclosed quantity
/// stays inside through every operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> RatInterval {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(v: BigRational) -> RatInterval {
        RatInterval { lo: v.clone(), hi: v }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    /// `self^e` for an interval with `lo > 0`; negative exponents invert.
    pub fn pow_positive_base(&self, e: i64) -> RatInterval {
        assert!(self.lo.is_positive(), "base interval must be positive");
        let mag = e.unsigned_abs() as u32;
        let (lo, hi) = (pow_rat(&self.lo, mag), pow_rat(&self.hi, mag));
        if e >= 0 {
            RatInterval { lo, hi }
        } else {
            RatInterval {
                lo: hi.recip(),
                hi: lo.recip(),
            }
        }
    }

    /// Sign of every value in the interval, if uniform: returns `None` when
    /// the interval straddles zero, `Some(0)` only for the degenerate point
    /// interval at zero.
    pub fn uniform_sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }
}

fn pow_rat(v: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= v.clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::IntPoly;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn mul_covers_sign_cases() {
        let a = RatInterval::new(rat(-1, 1), rat(2, 1));
        let sq = a.mul(&a);
        assert_eq!(sq.lo(), &rat(-2, 1));
        assert_eq!(sq.hi(), &rat(4, 1));
    }

    #[test]
    fn eval_interval_on_monomials() {
        // x^2 over (-1, 2) encloses [0, 4]
        let p = IntPoly::from_i64(&[0, 0, 1]);
        let iv = p.eval_interval(&RatInterval::new(rat(-1, 1), rat(2, 1)));
        assert!(iv.contains(&rat(0, 1)));
        assert!(iv.contains(&rat(4, 1)));
        // x + 1 over (0, 1) is exactly (1, 2)
        let q = IntPoly::from_i64(&[1, 1]);
        let iv = q.eval_interval(&RatInterval::new(rat(0, 1), rat(1, 1)));
        assert_eq!(iv, RatInterval::new(rat(1, 1), rat(2, 1)));
    }

    #[test]
    fn eval_interval_endpoint_example() {
        // x^2 + x - 1 over (1/2, 1) must enclose (-1/4, 1)
        let p = IntPoly::from_i64(&[-1, 1, 1]);
        let iv = p.eval_interval(&RatInterval::new(rat(1, 2), rat(1, 1)));
        assert!(iv.contains(&rat(-1, 4)));
        assert!(iv.contains(&rat(1, 1)));
    }

    #[test]
    fn negative_powers_invert() {
        let iv = RatInterval::new(rat(1, 2), rat(2, 1));
        let inv = iv.pow_positive_base(-2);
        assert_eq!(inv, RatInterval::new(rat(1, 4), rat(4, 1)));
    }

    proptest! {
        // Interval soundness: p(x) ∈ eval_interval(p, iv) for sampled x ∈ iv.
        #[test]
        fn interval_encloses_point_values(
            coeffs in proptest::collection::vec(-9i64..10, 1..6),
            an in -20i64..20, bn in -20i64..20, frac in 0u32..=16,
        ) {
            let p = IntPoly::from_i64(&coeffs);
            let (lo, hi) = if an <= bn { (an, bn) } else { (bn, an) };
            let iv = RatInterval::new(rat(lo, 2), rat(hi, 2));
            // a sample point on a 16-step grid inside iv
            let x = iv.lo() + (iv.hi() - iv.lo()) * rat(frac as i64, 16);
            prop_assert!(p.eval_interval(&iv).contains(&p.eval(&x)));
        }
    }
}
