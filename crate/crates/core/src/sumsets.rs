//! Dilate and sumset engines over `ℤ`, `ℤⁿ` and constructed groups, plus the
//! lattice machinery (Hermite basis, coset labels) behind the constructive
//! `3|X| − 2` certificate for dilates with distinct absolute values.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::ordgroup::{GroupElement, OrderedGroup};

pub type ZSet = BTreeSet<i64>;
pub type ZnSet = BTreeSet<Vec<i64>>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SumsetError {
    #[error("set must be non-empty")]
    EmptySet,
    #[error("all-zero set has no coordinate gcd")]
    AllZero,
    #[error("vectors have mismatched dimensions")]
    DimensionMismatch,
    #[error("dilate coefficients must be nonzero with distinct absolute values (got {0}, {1})")]
    InvalidDilatePair(i64, i64),
    #[error("cannot parse {input:?} as {expected}")]
    Parse { input: String, expected: &'static str },
}

pub fn dilate_z(xs: &ZSet, m: i64) -> ZSet {
    xs.iter().map(|&x| m * x).collect()
}

/// `{kx + ly : x, y ∈ X}`, exactly.
pub fn sumset_z(k: i64, xs: &ZSet, l: i64) -> ZSet {
    let mut out = ZSet::new();
    for &x in xs {
        for &y in xs {
            out.insert(k * x + l * y);
        }
    }
    out
}

pub fn dilate_zn(xs: &ZnSet, m: i64) -> ZnSet {
    xs.iter()
        .map(|v| v.iter().map(|&c| m * c).collect())
        .collect()
}

pub fn sumset_zn(k: i64, xs: &ZnSet, l: i64) -> ZnSet {
    let mut out = ZnSet::new();
    for x in xs {
        for y in xs {
            out.insert(x.iter().zip(y).map(|(&a, &b)| k * a + l * b).collect());
        }
    }
    out
}

/// The gcd of all coordinates of all elements; rejects empty or all-zero
/// sets.
pub fn gcd_of_set(xs: &ZnSet) -> Result<u64, SumsetError> {
    if xs.is_empty() {
        return Err(SumsetError::EmptySet);
    }
    let mut g: u64 = 0;
    for v in xs {
        for &c in v {
            g = g.gcd(&c.unsigned_abs());
        }
    }
    if g == 0 {
        Err(SumsetError::AllZero)
    } else {
        Ok(g)
    }
}

/// Column-style Hermite basis of an integer lattice: pivot entries positive,
/// entries of earlier basis vectors reduced to `[0, pivot)` at each pivot
/// row. Supports exact membership tests and canonical coset labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnfBasis {
    dim: usize,
    /// Basis vectors, one per pivot, ordered by pivot row.
    cols: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

pub fn hnf_lattice(generators: &[Vec<i64>]) -> HnfBasis {
    let dim = generators.first().map_or(0, |v| v.len());
    assert!(generators.iter().all(|v| v.len() == dim), "mixed dimensions");
    let mut work: Vec<Vec<i64>> = generators
        .iter()
        .filter(|v| v.iter().any(|&c| c != 0))
        .cloned()
        .collect();
    let mut cols: Vec<Vec<i64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in 0..dim {
        loop {
            let mut nonzero: Vec<usize> = (0..work.len()).filter(|&i| work[i][row] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                let mut pivot = work.swap_remove(nonzero[0]);
                if pivot[row] < 0 {
                    for c in pivot.iter_mut() {
                        *c = -*c;
                    }
                }
                // reduce the new row in all previously found basis vectors
                let d = pivot[row];
                for col in cols.iter_mut() {
                    let q = col[row].div_euclid(d);
                    if q != 0 {
                        for (c, p) in col.iter_mut().zip(&pivot) {
                            *c -= q * p;
                        }
                    }
                }
                cols.push(pivot);
                pivots.push(row);
                break;
            }
            // gcd step: reduce every column by the one with smallest |entry|
            nonzero.sort_by_key(|&i| work[i][row].unsigned_abs());
            let min_idx = nonzero[0];
            let min_col = work[min_idx].clone();
            for &i in &nonzero[1..] {
                let q = work[i][row].div_euclid(min_col[row]);
                for (c, m) in work[i].iter_mut().zip(&min_col) {
                    *c -= q * m;
                }
            }
            work.retain(|v| v.iter().any(|&c| c != 0));
        }
    }
    HnfBasis { dim, cols, pivots }
}

impl HnfBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.cols
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical residue of `v` modulo the lattice: reduce along each basis
    /// vector in pivot order; equal labels exactly characterize equal cosets.
    pub fn coset_label(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        let mut out = v.to_vec();
        for (col, &row) in self.cols.iter().zip(&self.pivots) {
            let q = out[row].div_euclid(col[row]);
            if q != 0 {
                for (c, b) in out.iter_mut().zip(col) {
                    *c -= q * b;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coset_label(v).iter().all(|&c| c == 0)
    }
}

/// A finite set of group elements deduplicated by the exact order oracle.
#[derive(Clone, Debug, Default)]
pub struct GSet {
    elems: Vec<GroupElement>,
}

impl GSet {
    pub fn new() -> GSet {
        GSet { elems: Vec::new() }
    }

    pub fn from_elements(
        group: &OrderedGroup,
        elems: impl IntoIterator<Item = GroupElement>,
    ) -> GSet {
        let mut out = GSet::new();
        for e in elems {
            out.insert(group, e);
        }
        out
    }

    /// Inserts unless an equal element is present; comparisons are pairwise
    /// and exact, so insertion is quadratic in the set size.
    pub fn insert(&mut self, group: &OrderedGroup, elem: GroupElement) -> bool {
        if self.elems.iter().any(|e| group.eq(e, &elem)) {
            return false;
        }
        self.elems.push(elem);
        true
    }

    pub fn contains(&self, group: &OrderedGroup, elem: &GroupElement) -> bool {
        self.elems.iter().any(|e| group.eq(e, elem))
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elems
    }
}

/// `{x^k y^l : x, y ∈ X}` deduplicated by exact equality.
pub fn productset(group: &OrderedGroup, xs: &GSet, k: i64, l: i64) -> GSet {
    let mut out = GSet::new();
    for x in xs.elements() {
        let xk = group.pow(x, k);
        for y in xs.elements() {
            out.insert(group, group.mul(&xk, &group.pow(y, l)));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetPart {
    pub label: Vec<i64>,
    pub members: Vec<Vec<i64>>,
    /// `|K_i + l·X|`
    pub part_sumset_size: usize,
}

/// Partition of `k·X` into its non-empty coset intersections modulo
/// `H = ⟨l·X⟩`, with the additivity identity checked outright.
#[derive(Clone, Debug, Serialize)]
pub struct CosetDecomposition {
    pub q: usize,
    pub parts: Vec<CosetPart>,
    pub hnf: HnfBasis,
    /// `|k·X + l·X|`
    pub total_sumset_size: usize,
    /// `Σ_i |K_i + l·X|`, which must equal the total
    pub sum_of_parts: usize,
    pub additivity_holds: bool,
    /// `(q+1)|X| − q`
    pub part_count_bound: i64,
    pub bound_holds: bool,
}

/// Decomposes `k·X` by cosets of the lattice generated by `l·X` and verifies
/// the additivity identity `|k·X + l·X| = Σ |K_i + l·X|` by direct
/// computation.
pub fn coset_decompose(xs: &ZnSet, k: i64, l: i64) -> CosetDecomposition {
    assert!(!xs.is_empty() && k != 0 && l != 0, "need a non-empty set and nonzero dilates");
    let lx = dilate_zn(xs, l);
    let hnf = hnf_lattice(&lx.iter().cloned().collect::<Vec<_>>());
    let kx = dilate_zn(xs, k);

    let mut parts: Vec<CosetPart> = Vec::new();
    for v in &kx {
        let label = hnf.coset_label(v);
        match parts.iter_mut().find(|p| p.label == label) {
            Some(part) => part.members.push(v.clone()),
            None => parts.push(CosetPart {
                label,
                members: vec![v.clone()],
                part_sumset_size: 0,
            }),
        }
    }
    for part in parts.iter_mut() {
        let mut sums = ZnSet::new();
        for a in &part.members {
            for b in &lx {
                sums.insert(a.iter().zip(b).map(|(&x, &y)| x + y).collect());
            }
        }
        part.part_sumset_size = sums.len();
    }
    parts.sort_by(|a, b| a.label.cmp(&b.label));

    let total = sumset_zn(k, xs, l).len();
    let sum_of_parts: usize = parts.iter().map(|p| p.part_sumset_size).sum();
    let q = parts.len();
    let bound = (q as i64 + 1) * xs.len() as i64 - q as i64;
    CosetDecomposition {
        q,
        hnf,
        total_sumset_size: total,
        sum_of_parts,
        additivity_holds: sum_of_parts == total,
        part_count_bound: bound,
        bound_holds: total as i64 >= bound,
        parts,
    }
}

/// Full certificate for `|k·X + l·X| ≥ 3|X| − 2` over `ℤⁿ` when the dilate
/// coefficients have distinct absolute values.
#[derive(Clone, Debug, Serialize)]
pub struct DilateBoundReport {
    pub k: i64,
    pub l: i64,
    /// dilates divided by their gcd, ordered so the lattice uses the larger
    pub normalized_k: i64,
    pub normalized_l: i64,
    pub set_size: usize,
    pub normalized_set: Vec<Vec<i64>>,
    pub translated_by: Vec<i64>,
    pub divided_by: u64,
    pub sumset_size: usize,
    pub lower_bound: i64,
    pub bound_holds: bool,
    /// the normalized instance reproduces the original cardinality
    pub cardinality_preserved: bool,
    pub decomposition: Option<CosetDecomposition>,
}

impl DilateBoundReport {
    pub fn passed(&self) -> bool {
        self.bound_holds && self.cardinality_preserved && self.additivity_ok()
    }

    pub fn additivity_ok(&self) -> bool {
        self.decomposition.as_ref().is_none_or(|d| d.additivity_holds)
    }

    /// `q ≥ 2` is forced for sets of size ≥ 2 once the instance is
    /// normalized (0 ∈ X, gcd X = 1, coprime dilates).
    pub fn q(&self) -> Option<usize> {
        self.decomposition.as_ref().map(|d| d.q)
    }
}

pub fn verify_distinct_dilates_bound(
    xs: &ZnSet,
    k: i64,
    l: i64,
) -> Result<DilateBoundReport, SumsetError> {
    if k == 0 || l == 0 || k.abs() == l.abs() {
        return Err(SumsetError::InvalidDilatePair(k, l));
    }
    if xs.is_empty() {
        return Err(SumsetError::EmptySet);
    }
    let dim = xs.iter().next().unwrap().len();
    if xs.iter().any(|v| v.len() != dim) {
        return Err(SumsetError::DimensionMismatch);
    }

    let original_size = sumset_zn(k, xs, l).len();
    let n = xs.len();
    let bound = 3 * n as i64 - 2;

    if n == 1 {
        let only = xs.iter().next().unwrap().clone();
        return Ok(DilateBoundReport {
            k,
            l,
            normalized_k: k,
            normalized_l: l,
            set_size: 1,
            normalized_set: vec![vec![0; dim]],
            translated_by: only,
            divided_by: 1,
            sumset_size: original_size,
            lower_bound: bound,
            bound_holds: original_size as i64 >= bound,
            cardinality_preserved: true,
            decomposition: None,
        });
    }

    // normalize exactly as the constructive argument does: coprime dilates,
    // 0 ∈ X, coordinate gcd 1, lattice from the larger dilate
    let g = k.unsigned_abs().gcd(&l.unsigned_abs()) as i64;
    let (mut nk, mut nl) = (k / g, l / g);
    if nk.abs() > nl.abs() {
        std::mem::swap(&mut nk, &mut nl);
    }
    let base = xs.iter().next().unwrap().clone();
    let translated: ZnSet = xs
        .iter()
        .map(|v| v.iter().zip(&base).map(|(&a, &b)| a - b).collect())
        .collect();
    let d = gcd_of_set(&translated)?;
    let normalized: ZnSet = translated
        .iter()
        .map(|v| v.iter().map(|&c| c / d as i64).collect())
        .collect();

    let sumset_size = sumset_zn(nk, &normalized, nl).len();
    let decomposition = coset_decompose(&normalized, nk, nl);

    Ok(DilateBoundReport {
        k,
        l,
        normalized_k: nk,
        normalized_l: nl,
        set_size: n,
        normalized_set: normalized.iter().cloned().collect(),
        translated_by: base,
        divided_by: d,
        sumset_size,
        lower_bound: bound,
        bound_holds: sumset_size as i64 >= bound,
        cardinality_preserved: sumset_size == original_size,
        decomposition: Some(decomposition),
    })
}

pub fn parse_zset(input: &str) -> Result<ZSet, SumsetError> {
    let err = || SumsetError::Parse {
        input: input.to_string(),
        expected: "integer set like `0,1,3,4`",
    };
    let mut out = ZSet::new();
    for piece in input.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(err());
        }
        out.insert(piece.parse().map_err(|_| err())?);
    }
    Ok(out)
}

pub fn render_zset(xs: &ZSet) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_znset(input: &str) -> Result<ZnSet, SumsetError> {
    let err = || SumsetError::Parse {
        input: input.to_string(),
        expected: "vector set like `(0,0);(1,0);(0,1)`",
    };
    let mut out = ZnSet::new();
    let mut dim = None;
    for piece in input.split(';') {
        let piece = piece.trim();
        let inner = piece
            .strip_prefix('(')
            .and_then(|p| p.strip_suffix(')'))
            .ok_or_else(err)?;
        let mut v = Vec::new();
        for c in inner.split(',') {
            v.push(c.trim().parse().map_err(|_| err())?);
        }
        if *dim.get_or_insert(v.len()) != v.len() {
            return Err(SumsetError::DimensionMismatch);
        }
        out.insert(v);
    }
    if out.is_empty() {
        return Err(err());
    }
    Ok(out)
}

pub fn render_znset(xs: &ZnSet) -> String {
    xs.iter()
        .map(|v| {
            format!(
                "({})",
                v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            )
        })
        .collect::<Vec<_>>()
        .join(";")
}
