use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{ExactNumError, KAdic};

/// A finite formal integer combination `Σ g·α^q` of powers of the structure
/// constant, with exponents `q` in the base-`k` fraction group.
///
/// The representation is canonical as a formal object (exponents distinct and
/// in a fixed structural order, no zero coefficients), but two formally
/// different sums may denote the same real number: the defining relation of
/// `α` collapses them. Structural `PartialEq` is therefore *formal* equality;
/// semantic equality and order are decided by the context's sign oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaSum {
    // sorted by (level, numerator) of the exponent
    terms: Vec<(KAdic, BigInt)>,
}

fn exp_key(q: &KAdic) -> (u32, BigInt) {
    (q.level(), q.numerator().clone())
}

impl AlphaSum {
    pub fn zero() -> AlphaSum {
        AlphaSum { terms: Vec::new() }
    }

    pub fn one() -> AlphaSum {
        AlphaSum::monomial(1, KAdic::zero())
    }

    /// The single term `g·α^q`; `q` must already be normalized for the
    /// context's base.
    pub fn monomial(coeff: impl Into<BigInt>, exponent: KAdic) -> AlphaSum {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return AlphaSum::zero();
        }
        AlphaSum {
            terms: vec![(exponent, coeff)],
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigInt, KAdic)>) -> AlphaSum {
        let mut out = AlphaSum::zero();
        for (g, q) in terms {
            out = out.add(&AlphaSum::monomial(g, q));
        }
        out
    }

    /// Formal emptiness; a formally nonzero sum may still denote zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KAdic, &BigInt)> {
        self.terms.iter().map(|(q, g)| (q, g))
    }

    /// Merges exponents, dropping coefficients that cancel.
    pub fn add(&self, other: &AlphaSum) -> AlphaSum {
        let mut out: Vec<(KAdic, BigInt)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((qa, ga)), Some((qb, gb))) => match exp_key(qa).cmp(&exp_key(qb)) {
                    std::cmp::Ordering::Less => {
                        out.push((qa.clone(), ga.clone()));
                        a.next();
                    }
                    std::cmp::Ordering::Greater => {
                        out.push((qb.clone(), gb.clone()));
                        b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        let g = ga.clone() + gb.clone();
                        if !g.is_zero() {
                            out.push(((*qa).clone(), g));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => {
                    out.extend(a.cloned());
                    break;
                }
                (None, Some(_)) => {
                    out.extend(b.cloned());
                    break;
                }
                (None, None) => break,
            }
        }
        AlphaSum { terms: out }
    }

    pub fn neg(&self) -> AlphaSum {
        AlphaSum {
            terms: self.terms.iter().map(|(q, g)| (q.clone(), -g)).collect(),
        }
    }

    pub fn sub(&self, other: &AlphaSum) -> AlphaSum {
        self.add(&other.neg())
    }

    /// Multiplies every coefficient by `c` (the ℤ-module action).
    pub fn mul_scalar(&self, c: &BigInt) -> AlphaSum {
        if c.is_zero() {
            return AlphaSum::zero();
        }
        AlphaSum {
            terms: self.terms.iter().map(|(q, g)| (q.clone(), g * c)).collect(),
        }
    }

    /// The automorphism `x ↦ α^u · x`: shifts every exponent by `u`.
    pub fn scaled(&self, u: &KAdic, k: u32) -> AlphaSum {
        let mut terms: Vec<(KAdic, BigInt)> = self
            .terms
            .iter()
            .map(|(q, g)| (q.add(u, k), g.clone()))
            .collect();
        terms.sort_by_key(|(q, _)| exp_key(q));
        AlphaSum { terms }
    }

    /// Renders in the CLI grammar, highest exponent first,
    /// e.g. `3*a^(5/4) - a^(1/2) + 2`.
    pub fn render(&self, k: u32) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut sorted: Vec<&(KAdic, BigInt)> = self.terms.iter().collect();
        sorted.sort_by(|(qa, _), (qb, _)| qb.cmp_in(qa, k));
        let mut out = String::new();
        for (i, (q, g)) in sorted.iter().enumerate() {
            let mag = g.abs();
            if i == 0 {
                if g.is_negative() {
                    out.push('-');
                }
            } else if g.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let base = render_power(q, k);
            match base {
                None => out.push_str(&mag.to_string()),
                Some(b) => {
                    if !mag.is_one() {
                        out.push_str(&mag.to_string());
                        out.push('*');
                    }
                    out.push_str(&b);
                }
            }
        }
        out
    }

    /// Parses the `render` grammar.
    pub fn parse(input: &str, k: u32) -> Result<AlphaSum, ExactNumError> {
        let err = || ExactNumError::Parse {
            input: input.to_string(),
            expected: "alpha-sum like `3*a^(5/4) - a^(1/2)`",
        };
        let s = input.trim();
        if s.is_empty() {
            return Err(err());
        }
        if s == "0" {
            return Ok(AlphaSum::zero());
        }
        let mut out = AlphaSum::zero();
        for piece in split_signed_terms(s).ok_or_else(err)? {
            let (sign, body) = piece;
            let body = body.trim();
            if body.is_empty() {
                return Err(err());
            }
            let (coeff_str, power_str) = match body.find('a') {
                None => (body, None),
                Some(pos) => (&body[..pos], Some(&body[pos..])),
            };
            let coeff_str = coeff_str.trim().trim_end_matches('*').trim();
            let mut coeff: BigInt = if coeff_str.is_empty() {
                BigInt::one()
            } else {
                coeff_str.parse().map_err(|_| err())?
            };
            if sign < 0 {
                coeff = -coeff;
            }
            let exponent = match power_str {
                None => KAdic::zero(),
                Some(p) => parse_power(p, k).ok_or_else(err)?,
            };
            out = out.add(&AlphaSum::monomial(coeff, exponent));
        }
        Ok(out)
    }
}

fn render_power(q: &KAdic, k: u32) -> Option<String> {
    if q.is_zero() {
        return None;
    }
    let s = q.render(k);
    if s == "1" {
        Some("a".to_string())
    } else if q.level() == 0 && q.signum() > 0 {
        Some(format!("a^{s}"))
    } else {
        Some(format!("a^({s})"))
    }
}

// Splits "3*a^(5/4) - a^(1/2)" into sign/body pieces at top-level +/-.
fn split_signed_terms(s: &str) -> Option<Vec<(i32, String)>> {
    let mut pieces = Vec::new();
    let mut cur = String::new();
    let mut sign = 1i32;
    let mut depth = 0i32;
    let mut seen_any = false;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                // inside an exponent like a^-2 there are no depth-0 signs;
                // a leading sign has an empty current body
                if cur.trim().is_empty() && !seen_any {
                    if ch == '-' {
                        sign = -sign;
                    }
                    seen_any = true;
                    continue;
                }
                if cur.trim().is_empty() {
                    return None;
                }
                pieces.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
            }
            _ => {
                if !ch.is_whitespace() {
                    seen_any = true;
                }
                cur.push(ch);
            }
        }
    }
    if depth != 0 || cur.trim().is_empty() {
        return None;
    }
    pieces.push((sign, cur));
    Some(pieces)
}

fn parse_power(p: &str, k: u32) -> Option<KAdic> {
    let p = p.trim();
    let rest = p.strip_prefix('a')?;
    let rest = rest.trim();
    if rest.is_empty() {
        return Some(KAdic::from_int(1));
    }
    let rest = rest.strip_prefix('^')?.trim();
    let inner = if let Some(stripped) = rest.strip_prefix('(') {
        stripped.strip_suffix(')')?
    } else {
        rest
    };
    KAdic::parse(inner, k).ok()
}
