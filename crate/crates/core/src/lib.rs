//! Exact-arithmetic workbench for the sums-of-dilates problem in ordered groups.
//!
//! The crate builds, entirely over exact arithmetic, the linearly ordered
//! semidirect-product groups in which two dilates of a small set collapse to
//! fewer sums than any abelian torsion-free group allows, and provides the
//! verification and search machinery around them:
//!
//! * [`exactnum`] — arbitrary-precision base-`k` fractions, integer
//!   polynomials, rational intervals, root isolation and Sturm counts;
//! * [`alphafield`] — formal integer combinations of fractional powers of the
//!   structure constant `α`, with an exact sign/equality decision;
//! * [`ordgroup`] — the groups `E[S]^r ⋊ E[k]`, their bi-invariant order,
//!   generators and identity verifiers;
//! * [`freewords`] — reduced words in free groups, proper-power detection,
//!   finite presentations and homomorphism evaluation;
//! * [`sumsets`] — dilate/sumset engines over `ℤ`, `ℤⁿ` and constructed
//!   groups, lattice coset decompositions and the abelian lower-bound
//!   certifier;
//! * [`bounds`] — the bound tables for the minimal sumset size `χ`, the
//!   exhaustive normalized search over `ℤ`, and the five-element witness
//!   checker.

pub mod alphafield;
pub mod bounds;
pub mod exactnum;
pub mod freewords;
pub mod ordgroup;
pub mod rng;
pub mod sumsets;
