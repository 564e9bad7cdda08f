//! Root isolation and counting for the single-positive-root polynomials the
//! group construction produces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{ExactNumError, IntPoly, RatInterval};

/// Isolates the unique positive root of `p`.
///
/// Requires that after removing the power-of-x factor the coefficient
/// sequence of `p` has exactly one sign change; by Descartes' rule the
/// positive root is then unique and simple. The returned interval has
/// `0 < lo < hi` and a strict sign change of `p` at its endpoints.
pub fn isolate_unique_positive_root(p: &IntPoly) -> Result<RatInterval, ExactNumError> {
    if p.is_zero() {
        return Err(ExactNumError::ZeroPolynomial);
    }
    let (_, q) = p.deflate();
    let changes = q.sign_changes();
    if changes != 1 {
        return Err(ExactNumError::NotSingleSignChange { changes });
    }
    // Cauchy-style bound: every root satisfies |x| < 1 + max |coeff|.
    let bound = q
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
        + 1;
    let mut lo = BigRational::zero();
    let mut hi = BigRational::from(bound);
    let s_lo = q.sign_at(&lo);
    debug_assert!(s_lo != 0 && q.sign_at(&hi) == -s_lo);
    while lo.is_zero() {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        match q.sign_at(&mid) {
            0 => return Ok(straddle_exact_root(&q, &lo, &hi, &mid)),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(RatInterval::new(lo, hi))
}

/// Shrinks an interval that still isolates the root down to the requested
/// width, preserving the endpoint sign change.
pub fn refine_root(p: &IntPoly, iv: &RatInterval, width: &BigRational) -> RatInterval {
    assert!(width.is_positive(), "target width must be positive");
    let mut lo = iv.lo().clone();
    let mut hi = iv.hi().clone();
    let s_lo = p.sign_at(&lo);
    debug_assert!(s_lo != 0 && p.sign_at(&hi) == -s_lo, "no sign change on interval");
    let two = BigRational::from_integer(2.into());
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        match p.sign_at(&mid) {
            0 => {
                let out = straddle_exact_root_within(p, &lo, &hi, &mid, width);
                return out;
            }
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    RatInterval::new(lo, hi)
}

// The bisection midpoint hit the root exactly. Back off symmetrically; any
// positive offset works because the interval isolates this single root.
fn straddle_exact_root(p: &IntPoly, lo: &BigRational, hi: &BigRational, mid: &BigRational) -> RatInterval {
    let delta = (hi - lo) / BigRational::from_integer(4.into());
    let (a, b) = (mid - &delta, mid + &delta);
    debug_assert!(p.sign_at(&a) != 0 && p.sign_at(&b) != 0 && p.sign_at(&a) != p.sign_at(&b));
    RatInterval::new(a, b)
}

fn straddle_exact_root_within(
    p: &IntPoly,
    lo: &BigRational,
    hi: &BigRational,
    mid: &BigRational,
    width: &BigRational,
) -> RatInterval {
    let quarter = (hi - lo) / BigRational::from_integer(4.into());
    let half_width = width / BigRational::from_integer(2.into());
    let delta = if quarter < half_width { quarter } else { half_width };
    let (a, b) = (mid - &delta, mid + &delta);
    debug_assert!(p.sign_at(&a) != 0 && p.sign_at(&b) != 0 && p.sign_at(&a) != p.sign_at(&b));
    RatInterval::new(a, b)
}

/// Number of distinct real roots of `p` in the open interval, by Sturm's
/// theorem over exact rationals. Endpoints must not be roots.
pub fn sturm_count(p: &IntPoly, iv: &RatInterval) -> Result<usize, ExactNumError> {
    if p.is_zero() {
        return Err(ExactNumError::ZeroPolynomial);
    }
    if p.sign_at(iv.lo()) == 0 || p.sign_at(iv.hi()) == 0 {
        return Err(ExactNumError::EndpointIsRoot);
    }
    let chain = sturm_chain(p);
    let v_lo = sign_variations(&chain, iv.lo());
    let v_hi = sign_variations(&chain, iv.hi());
    Ok(v_lo - v_hi)
}

// Chain elements are kept primitive over the integers; every normalization
// multiplies by a positive rational only, which leaves all signs intact.
fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.primitive()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d.primitive());
    loop {
        let n = chain.len();
        let (f, g) = (&chain[n - 2], &chain[n - 1]);
        if f.degree() < g.degree() {
            break;
        }
        let delta = f.degree().unwrap() - g.degree().unwrap();
        let mut r = f.pseudo_rem(g);
        if r.is_zero() {
            break;
        }
        // pseudo_rem scales by lc(g)^(delta+1); flip when that factor is
        // negative so r stays a positive multiple of the true remainder.
        if g.leading_coeff().is_negative() && (delta + 1) % 2 == 1 {
            r = r.neg();
        }
        chain.push(r.neg().primitive());
    }
    chain
}

fn sign_variations(chain: &[IntPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i32;
    for p in chain {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}
