//! The linearly ordered groups `E[S]^r ⋊_φ E[k]`: exact group law, the
//! bi-invariant order from the positive cone, distinguished generators,
//! projections, and the identity/cone verifiers built on top of them.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::alphafield::{AlphaContext, AlphaSum, Sign};
use crate::exactnum::{ExactNumError, KAdic};
use crate::rng::SplitMix64;

/// An element `(g_1, …, g_r; h)` with coefficients in the α-power group and a
/// base-`k` fraction shift. Elements belong to the [`OrderedGroup`] that
/// created them; all algebra goes through the group handle.
#[derive(Clone, Debug)]
pub struct GroupElement {
    coeffs: Vec<AlphaSum>,
    shift: KAdic,
}

impl GroupElement {
    pub fn coeffs(&self) -> &[AlphaSum] {
        &self.coeffs
    }

    pub fn shift(&self) -> &KAdic {
        &self.shift
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }
}

/// The group `E[S]^r ⋊_φ E[k]` for a fixed context, with `φ` acting
/// diagonally by `x ↦ α^u x` and the lexicographic-then-shift positive cone.
#[derive(Clone)]
pub struct OrderedGroup {
    ctx: Arc<AlphaContext>,
    rank: usize,
}

impl OrderedGroup {
    pub fn new(ctx: Arc<AlphaContext>, rank: usize) -> OrderedGroup {
        assert!(rank >= 1, "the coefficient group needs at least one copy");
        OrderedGroup { ctx, rank }
    }

    pub fn ctx(&self) -> &AlphaContext {
        &self.ctx
    }

    pub fn ctx_arc(&self) -> Arc<AlphaContext> {
        Arc::clone(&self.ctx)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coeffs: vec![AlphaSum::zero(); self.rank],
            shift: KAdic::zero(),
        }
    }

    /// Wraps raw parts as an element, validating the rank.
    pub fn element(&self, coeffs: Vec<AlphaSum>, shift: KAdic) -> GroupElement {
        assert_eq!(coeffs.len(), self.rank, "coefficient tuple has wrong rank");
        GroupElement { coeffs, shift }
    }

    fn check(&self, a: &GroupElement) {
        assert_eq!(a.rank(), self.rank, "element rank does not match the group");
    }

    /// `(g⃗₁; h₁)(g⃗₂; h₂) = (g⃗₁ + φ_{h₁}(g⃗₂); h₁ + h₂)`.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.check(a);
        self.check(b);
        let k = self.ctx.k();
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x.add(&y.scaled(&a.shift, k)))
            .collect();
        GroupElement {
            coeffs,
            shift: a.shift.add(&b.shift, k),
        }
    }

    /// `(g⃗; h)⁻¹ = (φ_{−h}(−g⃗); −h)`.
    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        self.check(a);
        let k = self.ctx.k();
        let minus = a.shift.neg();
        let coeffs = a.coeffs.iter().map(|x| x.neg().scaled(&minus, k)).collect();
        GroupElement {
            coeffs,
            shift: minus,
        }
    }

    pub fn pow(&self, a: &GroupElement, n: i64) -> GroupElement {
        self.check(a);
        let (mut base, mut n) = if n < 0 {
            (self.inv(a), n.unsigned_abs())
        } else {
            (a.clone(), n as u64)
        };
        let mut acc = self.identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// The generator `e_i` for `0 ≤ i ≤ rank`.
    ///
    /// For rank ≥ 2 this is the general layout: shift `1/k`, with `α^{1/k}`
    /// in component `i` when `i ≠ 0`. The rank-1 construction names its two
    /// generators the other way around — `e_0 = (α^{1/k}; 1/k)`,
    /// `e_1 = (0; 1/k)` — and the swap is kept here so rendered output
    /// matches that convention; the verified identities are symmetric in it.
    pub fn generator(&self, i: usize) -> GroupElement {
        assert!(i <= self.rank, "generator index out of range");
        let k = self.ctx.k();
        let carries_alpha = if self.rank == 1 { i == 0 } else { i != 0 };
        let mut coeffs = vec![AlphaSum::zero(); self.rank];
        if carries_alpha {
            let component = if self.rank == 1 { 1 } else { i };
            coeffs[component - 1] = AlphaSum::monomial(1, KAdic::new(1, 1, k));
        }
        GroupElement {
            coeffs,
            shift: KAdic::new(1, 1, k),
        }
    }

    /// The set `{e_0, …, e_{rank−1}}` realizing the quadratic product-set
    /// construction.
    pub fn generator_set(&self) -> Vec<GroupElement> {
        (0..self.rank).map(|i| self.generator(i)).collect()
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        self.sign(a) == Ordering::Equal
    }

    /// Position of `a` relative to the identity: the cone is
    /// `shift > 0, or shift = 0 and the first nonzero coefficient positive`.
    pub fn sign(&self, a: &GroupElement) -> Ordering {
        self.check(a);
        match a.shift.signum() {
            s if s > 0 => Ordering::Greater,
            s if s < 0 => Ordering::Less,
            _ => {
                for c in &a.coeffs {
                    match self.ctx.sign(c) {
                        Sign::Positive => return Ordering::Greater,
                        Sign::Negative => return Ordering::Less,
                        Sign::Zero => continue,
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn is_positive(&self, a: &GroupElement) -> bool {
        self.sign(a) == Ordering::Greater
    }

    /// Order by positivity of the left quotient `b⁻¹a`; the cone is
    /// conjugation-invariant, so the right quotient induces the same order.
    pub fn cmp(&self, a: &GroupElement, b: &GroupElement) -> Ordering {
        self.sign(&self.mul(&self.inv(b), a))
    }

    pub fn eq(&self, a: &GroupElement, b: &GroupElement) -> bool {
        self.cmp(a, b) == Ordering::Equal
    }

    /// The projection `π_h` onto a single coefficient copy, `1 ≤ h ≤ rank`.
    pub fn project(&self, a: &GroupElement, h: usize) -> GroupElement {
        self.check(a);
        assert!(h >= 1 && h <= self.rank, "projection index out of range");
        GroupElement {
            coeffs: vec![a.coeffs[h - 1].clone()],
            shift: a.shift.clone(),
        }
    }

    /// The rank-1 group the projections land in.
    pub fn projected_group(&self) -> OrderedGroup {
        OrderedGroup {
            ctx: Arc::clone(&self.ctx),
            rank: 1,
        }
    }

    /// Renders as `(c_1, …, c_r; shift)` in the α-sum grammar.
    pub fn render(&self, a: &GroupElement) -> String {
        self.check(a);
        let k = self.ctx.k();
        let coeffs: Vec<String> = a.coeffs.iter().map(|c| c.render(k)).collect();
        format!("({}; {})", coeffs.join(", "), a.shift.render(k))
    }

    pub fn parse_element(&self, input: &str) -> Result<GroupElement, ExactNumError> {
        let err = || ExactNumError::Parse {
            input: input.to_string(),
            expected: "group element like `(a^(1/2), 0; 1/2)`",
        };
        let k = self.ctx.k();
        let s = input.trim();
        let s = s.strip_prefix('(').ok_or_else(err)?;
        let s = s.strip_suffix(')').ok_or_else(err)?;
        let (coeff_part, shift_part) = s.rsplit_once(';').ok_or_else(err)?;
        let mut coeffs = Vec::new();
        for piece in split_top_level_commas(coeff_part) {
            coeffs.push(AlphaSum::parse(&piece, k)?);
        }
        if coeffs.len() != self.rank {
            return Err(err());
        }
        let shift = KAdic::parse(shift_part, k)?;
        Ok(GroupElement { coeffs, shift })
    }

    /// Deterministic sample for property checks: a few small α-monomials per
    /// component, shift zero often enough to exercise the lexicographic tier.
    pub fn random_element(&self, rng: &mut SplitMix64) -> GroupElement {
        let k = self.ctx.k();
        let coeffs = (0..self.rank)
            .map(|_| {
                let terms = rng.next_below(3);
                AlphaSum::from_terms((0..terms).map(|_| {
                    (
                        BigInt::from(rng.next_range(-3, 3)),
                        KAdic::new(rng.next_range(-4, 4), rng.next_below(2) as u32, k),
                    )
                }))
            })
            .collect();
        let shift = if rng.next_below(4) == 0 {
            KAdic::zero()
        } else {
            KAdic::new(rng.next_range(-4, 4), rng.next_below(2) as u32, k)
        };
        GroupElement { coeffs, shift }
    }
}

fn split_top_level_commas(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    out.push(cur);
    out
}

/// One checked identity `e_i^k e_j^l = e_j^k e_i^l`, both sides rendered.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub i: usize,
    pub j: usize,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub k: u32,
    pub l: u32,
    pub rank: usize,
    pub checks: Vec<IdentityCheck>,
    pub all_pass: bool,
}

/// Checks `e_0^k e_1^l = e_1^k e_0^l` in the rank-1 group.
pub fn verify_pair_identity(ctx: &Arc<AlphaContext>) -> IdentityReport {
    grid_report(ctx, 1, &[(0, 1)])
}

/// Checks `e_i^k e_j^l = e_j^k e_i^l` for all `0 ≤ i, j ≤ rank`.
pub fn verify_grid_identities(ctx: &Arc<AlphaContext>, rank: usize) -> IdentityReport {
    let pairs: Vec<(usize, usize)> = (0..=rank)
        .flat_map(|i| (0..=rank).map(move |j| (i, j)))
        .collect();
    grid_report(ctx, rank, &pairs)
}

fn grid_report(ctx: &Arc<AlphaContext>, rank: usize, pairs: &[(usize, usize)]) -> IdentityReport {
    let group = OrderedGroup::new(Arc::clone(ctx), rank);
    let (k, l) = (ctx.k() as i64, ctx.l() as i64);
    let mut checks = Vec::with_capacity(pairs.len());
    for &(i, j) in pairs {
        let (ei, ej) = (group.generator(i), group.generator(j));
        let lhs = group.mul(&group.pow(&ei, k), &group.pow(&ej, l));
        let rhs = group.mul(&group.pow(&ej, k), &group.pow(&ei, l));
        let pass = group.eq(&lhs, &rhs);
        checks.push(IdentityCheck {
            i,
            j,
            lhs: group.render(&lhs),
            rhs: group.render(&rhs),
            pass,
        });
    }
    IdentityReport {
        k: ctx.k(),
        l: ctx.l(),
        rank,
        all_pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeViolation {
    pub condition: String,
    pub elements: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeReport {
    pub samples: usize,
    pub product_pairs_checked: usize,
    pub conjugation_pairs_checked: usize,
    pub violations: Vec<ConeViolation>,
}

impl ConeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Empirically tests the four positive-cone conditions on the samples:
/// identity excluded, exactly one of `x`/`x⁻¹` in the cone, closure under
/// products, closure under conjugation. Sampling, not a proof.
pub fn cone_property_check(
    group: &OrderedGroup,
    samples: &[GroupElement],
    seed: u64,
) -> ConeReport {
    cone_property_check_with(group, samples, seed, |x| group.is_positive(x))
}

/// Same sampling harness, but for an arbitrary candidate membership
/// predicate, so that a broken cone shows up as concrete violations.
pub fn cone_property_check_with(
    group: &OrderedGroup,
    samples: &[GroupElement],
    seed: u64,
    positive: impl Fn(&GroupElement) -> bool,
) -> ConeReport {
    const PAIR_BUDGET: usize = 20_000;
    let mut violations = Vec::new();

    if positive(&group.identity()) {
        violations.push(ConeViolation {
            condition: "identity-excluded".into(),
            elements: vec![group.render(&group.identity())],
            detail: "the identity tested positive".into(),
        });
    }

    let mut positives: Vec<&GroupElement> = Vec::new();
    for x in samples {
        if group.is_identity(x) {
            continue;
        }
        let xp = positive(x);
        let ip = positive(&group.inv(x));
        if xp == ip {
            violations.push(ConeViolation {
                condition: "exactly-one-of-pair".into(),
                elements: vec![group.render(x)],
                detail: format!("x positive: {xp}, x^-1 positive: {ip}; exactly one must hold"),
            });
        }
        if xp {
            positives.push(x);
        }
    }

    let mut rng = SplitMix64::new(seed);
    let n = positives.len();
    let mut product_pairs = 0usize;
    if n > 0 {
        let exhaustive = n * n <= PAIR_BUDGET;
        let total = if exhaustive { n * n } else { PAIR_BUDGET };
        for idx in 0..total {
            let (i, j) = if exhaustive {
                (idx / n, idx % n)
            } else {
                (
                    rng.next_below(n as u64) as usize,
                    rng.next_below(n as u64) as usize,
                )
            };
            let prod = group.mul(positives[i], positives[j]);
            product_pairs += 1;
            if !positive(&prod) {
                violations.push(ConeViolation {
                    condition: "closed-under-products".into(),
                    elements: vec![group.render(positives[i]), group.render(positives[j])],
                    detail: format!("product {} is not positive", group.render(&prod)),
                });
            }
        }
    }

    let mut conjugation_pairs = 0usize;
    if n > 0 && !samples.is_empty() {
        let m = samples.len();
        let exhaustive = n * m <= PAIR_BUDGET;
        let total = if exhaustive { n * m } else { PAIR_BUDGET };
        for idx in 0..total {
            let (i, j) = if exhaustive {
                (idx / m, idx % m)
            } else {
                (
                    rng.next_below(n as u64) as usize,
                    rng.next_below(m as u64) as usize,
                )
            };
            let y = &samples[j];
            let conj = group.mul(&group.mul(y, positives[i]), &group.inv(y));
            conjugation_pairs += 1;
            if !positive(&conj) {
                violations.push(ConeViolation {
                    condition: "closed-under-conjugation".into(),
                    elements: vec![group.render(positives[i]), group.render(y)],
                    detail: format!("conjugate {} is not positive", group.render(&conj)),
                });
            }
        }
    }

    ConeReport {
        samples: samples.len(),
        product_pairs_checked: product_pairs,
        conjugation_pairs_checked: conjugation_pairs,
        violations,
    }
}
