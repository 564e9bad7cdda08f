//! Reduced words in finitely generated free groups: free reduction, cyclic
//! reduction, proper-power detection, the two-generator relators, finite
//! presentations of the grid shape, and evaluation of words inside a
//! constructed ordered group.

use serde::Serialize;
use thiserror::Error;

use crate::ordgroup::{GroupElement, OrderedGroup};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("generator index {0} is out of range")]
    GeneratorOutOfRange(u32),
    #[error("relator requires two distinct generators (got i = j = {0})")]
    TrivialRelator(u32),
    #[error("duplicate relation ({0}, {1}, {2}, {3})")]
    DuplicateRelation(u32, u32, u32, u32),
    #[error("no image assigned to generator {0}")]
    UnassignedGenerator(u32),
    #[error("cannot parse {0:?} as a word")]
    Parse(String),
}

/// One maximal run `gen^exp` with `gen ≥ 1` and `exp ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: u32,
    pub exp: i64,
}

/// A freely reduced word: adjacent syllables use distinct generators; the
/// empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    syllables: Vec<Syllable>,
}

impl ReducedWord {
    pub fn identity() -> ReducedWord {
        ReducedWord {
            syllables: Vec::new(),
        }
    }

    /// Reduces a raw syllable sequence: merges equal-generator neighbours and
    /// drops zero exponents until the word is reduced.
    pub fn from_syllables(raw: impl IntoIterator<Item = (u32, i64)>) -> ReducedWord {
        let mut stack: Vec<Syllable> = Vec::new();
        for (gen, exp) in raw {
            assert!(gen >= 1, "generator indices start at 1");
            if exp == 0 {
                continue;
            }
            match stack.last_mut() {
                Some(top) if top.gen == gen => {
                    top.exp += exp;
                    if top.exp == 0 {
                        stack.pop();
                    }
                }
                _ => stack.push(Syllable { gen, exp }),
            }
        }
        ReducedWord { syllables: stack }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    /// Letter length `Σ |exp|`.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        ReducedWord::from_syllables(
            self.syllables
                .iter()
                .chain(&other.syllables)
                .map(|s| (s.gen, s.exp)),
        )
    }

    pub fn inv(&self) -> ReducedWord {
        ReducedWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    gen: s.gen,
                    exp: -s.exp,
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: i64) -> ReducedWord {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut acc = ReducedWord::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Writes `self = conjugator · core · conjugator⁻¹` with the core
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (ReducedWord, ReducedWord) {
        let mut conj: Vec<Syllable> = Vec::new();
        let mut core = self.syllables.clone();
        loop {
            if core.len() < 2 || core.first().unwrap().gen != core.last().unwrap().gen {
                break;
            }
            let first = core[0];
            let last = *core.last().unwrap();
            if first.exp + last.exp == 0 {
                conj.push(first);
                core.remove(0);
                core.pop();
            } else {
                // g^p u g^q with p+q ≠ 0: conjugate by g^p, core becomes u·g^(p+q)
                conj.push(first);
                core.remove(0);
                core.last_mut().unwrap().exp = first.exp + last.exp;
                break;
            }
        }
        (ReducedWord { syllables: conj }, ReducedWord { syllables: core })
    }

    /// Detects whether the word is a proper power `x^t`, `t ≥ 2`, returning
    /// the root (conjugated back into place) with the maximal exponent.
    ///
    /// A cyclically reduced word with several syllables is a power exactly
    /// when its syllable sequence is periodic with a period dividing its
    /// length, because powers of cyclically reduced words concatenate without
    /// cancellation.
    pub fn proper_power(&self) -> Option<(ReducedWord, u64)> {
        let (conj, core) = self.cyclic_reduce();
        let n = core.syllables.len();
        if n == 0 {
            return None;
        }
        let (root_core, t) = if n == 1 {
            let s = core.syllables[0];
            let t = s.exp.unsigned_abs();
            if t < 2 {
                return None;
            }
            (
                ReducedWord {
                    syllables: vec![Syllable {
                        gen: s.gen,
                        exp: s.exp.signum(),
                    }],
                },
                t,
            )
        } else {
            let mut found = None;
            for m in 1..n {
                if n % m != 0 {
                    continue;
                }
                if (m..n).all(|i| core.syllables[i] == core.syllables[i - m]) {
                    found = Some(m);
                    break;
                }
            }
            let m = found?;
            (
                ReducedWord {
                    syllables: core.syllables[..m].to_vec(),
                },
                (n / m) as u64,
            )
        };
        let root = conj.mul(&root_core).mul(&conj.inv());
        Some((root, t))
    }

    /// Renders as whitespace-separated syllables, `a^2 b^-3 a`; generators
    /// 1 and 2 print as `a` and `b`, 3..26 as `c`..`z`, beyond that as `xN`.
    pub fn render(&self) -> String {
        if self.syllables.is_empty() {
            return "1".to_string();
        }
        self.syllables
            .iter()
            .map(|s| {
                let gen = gen_name(s.gen);
                if s.exp == 1 {
                    gen
                } else {
                    format!("{gen}^{}", s.exp)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(input: &str) -> Result<ReducedWord, WordError> {
        let err = || WordError::Parse(input.to_string());
        let s = input.trim();
        if s.is_empty() {
            return Err(err());
        }
        if s == "1" {
            return Ok(ReducedWord::identity());
        }
        let mut raw = Vec::new();
        for token in s.split_whitespace() {
            let (gen_part, exp_part) = match token.split_once('^') {
                Some((g, e)) => (g, Some(e)),
                None => (token, None),
            };
            let gen = parse_gen(gen_part).ok_or_else(err)?;
            let exp: i64 = match exp_part {
                Some(e) => e.parse().map_err(|_| err())?,
                None => 1,
            };
            raw.push((gen, exp));
        }
        Ok(ReducedWord::from_syllables(raw))
    }
}

fn gen_name(gen: u32) -> String {
    if (1..=26).contains(&gen) {
        char::from(b'a' + (gen - 1) as u8).to_string()
    } else {
        format!("x{gen}")
    }
}

fn parse_gen(s: &str) -> Option<u32> {
    let mut chars = s.chars();
    let first = chars.next()?;
    let rest = chars.as_str();
    if rest.is_empty() {
        if first.is_ascii_lowercase() {
            Some(first as u32 - 'a' as u32 + 1)
        } else {
            None
        }
    } else if first == 'x' {
        rest.parse().ok().filter(|&g| g >= 1)
    } else {
        None
    }
}

/// The relator `x_i^k x_j^l x_i^{−l} x_j^{−k}` of the two-generator
/// one-relator group; `i = j` collapses it and is rejected.
pub fn relator(k: i64, l: i64, i: u32, j: u32) -> Result<ReducedWord, WordError> {
    if i == j {
        return Err(WordError::TrivialRelator(i));
    }
    Ok(ReducedWord::from_syllables([
        (i, k),
        (j, l),
        (i, -l),
        (j, -k),
    ]))
}

/// A relation `x_i^k x_j^l = x_u^k x_v^l` (the exponents come from the
/// ambient parameter pair).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub i: u32,
    pub j: u32,
    pub u: u32,
    pub v: u32,
}

/// A finite presentation whose relations all have the grid shape.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    generators: u32,
    relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(generators: u32, relations: Vec<Relation>) -> Result<Presentation, WordError> {
        assert!(generators >= 1);
        let mut seen = Vec::new();
        for r in &relations {
            for idx in [r.i, r.j, r.u, r.v] {
                if idx < 1 || idx > generators {
                    return Err(WordError::GeneratorOutOfRange(idx));
                }
            }
            let key = (r.i, r.j, r.u, r.v);
            if seen.contains(&key) {
                return Err(WordError::DuplicateRelation(r.i, r.j, r.u, r.v));
            }
            seen.push(key);
        }
        Ok(Presentation {
            generators,
            relations,
        })
    }

    /// The full grid `x_i^k x_j^l = x_j^k x_i^l` over all pairs `i < j`.
    pub fn full_grid(generators: u32) -> Presentation {
        let mut relations = Vec::new();
        for i in 1..=generators {
            for j in i + 1..=generators {
                relations.push(Relation { i, j, u: j, v: i });
            }
        }
        Presentation {
            generators,
            relations,
        }
    }

    pub fn generators(&self) -> u32 {
        self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// The relator `x_i^k x_j^l (x_u^k x_v^l)^{-1}`, reduced.
    pub fn relation_word(&self, r: &Relation, k: i64, l: i64) -> ReducedWord {
        ReducedWord::from_syllables([(r.i, k), (r.j, l), (r.v, -l), (r.u, -k)])
    }
}

/// Evaluates a word under a generator assignment (`images[n-1]` is the image
/// of generator `n`), multiplying exactly in the target group.
pub fn hom_eval(
    group: &OrderedGroup,
    word: &ReducedWord,
    images: &[GroupElement],
) -> Result<GroupElement, WordError> {
    let mut acc = group.identity();
    for s in word.syllables() {
        let image = images
            .get(s.gen as usize - 1)
            .ok_or(WordError::UnassignedGenerator(s.gen))?;
        acc = group.mul(&acc, &group.pow(image, s.exp));
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: Relation,
    pub relator: String,
    pub image: String,
    pub trivial: bool,
}

/// Per-relation record of the von Dyck premise: the assignment extends to a
/// homomorphism exactly when every relator image is the identity.
#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub generators: u32,
    pub k: i64,
    pub l: i64,
    pub checks: Vec<RelationCheck>,
    pub all_pass: bool,
}

pub fn check_presentation_homomorphism(
    group: &OrderedGroup,
    presentation: &Presentation,
    images: &[GroupElement],
    k: i64,
    l: i64,
) -> Result<PresentationReport, WordError> {
    let mut checks = Vec::with_capacity(presentation.relations().len());
    for rel in presentation.relations() {
        let word = presentation.relation_word(rel, k, l);
        let image = hom_eval(group, &word, images)?;
        checks.push(RelationCheck {
            relation: *rel,
            relator: word.render(),
            image: group.render(&image),
            trivial: group.is_identity(&image),
        });
    }
    Ok(PresentationReport {
        generators: presentation.generators(),
        k,
        l,
        all_pass: checks.iter().all(|c| c.trivial),
        checks,
    })
}
