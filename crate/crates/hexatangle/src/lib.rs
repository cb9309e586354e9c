//! Exact computation with integral fillings of the six-box marked tangle.
//!
//! The object of study is the planar template obtained from the basic
//! 6-vertex polyhedron (the octahedral diagram template) by marking each of
//! its six 4-valent vertices as a slot for a two-string tangle.  Filling every
//! slot with an integral twist region produces a knot or link, and the central
//! question answered by this crate is: **which integral fillings produce the
//! trivial knot?**
//!
//! The six slots are labelled `alpha, beta, gamma, delta, epsilon, eta`.  They
//! sit on the six edges of a tetrahedron, so slots come in three *opposite*
//! pairs — `{alpha, epsilon}`, `{beta, eta}`, `{gamma, delta}` — and the
//! 24 rotation/reflection symmetries of the tetrahedron, together with the
//! global mirror (negating every filling), act on fillings by a group of 48
//! symmetries that preserve the link type (the mirror half preserves
//! triviality).
//!
//! # Modules
//!
//! - [`tanglecalc`] — exact rational tangle arithmetic: canonical fractions,
//!   continued-fraction evaluation, 2-bridge triviality and equivalence,
//!   Montesinos determinants and integral-tangle reduction, and exact
//!   single-variable Laurent polynomials.
//! - [`diagrams`] — planar diagram codes, the six-slot skeleton, Kauffman
//!   bracket (fast multilinear form and a brute-force state-sum reference),
//!   Jones polynomial and knot determinant.
//! - [`hexcore`] — the 48-element symmetry group, the classification tables
//!   of trivial fillings, exact row matching, and the classifier.
//! - [`braids`] — 3-braid words, conjugacy normal forms in the braid group
//!   B3 (via its central quotient Z2 * Z3), closed-braid triviality and
//!   compositeness tests, and the translation from fillings to surgery
//!   descriptions on a six-component link with exact first-homology orders.
//! - [`harness`] — table verification, orbit-deduplicated census enumeration
//!   with JSONL/CSV output, and the braid-family consistency check backing
//!   the `hexatangle` command line tool.
//!
//! All arithmetic is exact: checked 128-bit integers (overflow is a hard
//! failure, never silent wrap-around), integer fractions in canonical form,
//! and integer-coefficient Laurent polynomials.  No floating point is used
//! anywhere.
//!
//! # Quick start
//!
//! ```
//! use hexatangle::hexcore::{classify, HexFilling, ClassificationResult};
//!
//! // A filling equivalent to the trivial knot, with the witness row.
//! let f = HexFilling::new([1, 1, 1, 0, 0, 0]);
//! assert!(matches!(classify(&f), ClassificationResult::Trivial(_)));
//!
//! // A filling that is a 2-component link, hence not a knot at all.
//! let l = HexFilling::new([2, 2, 5, 7, 2, 2]);
//! assert!(matches!(classify(&l), ClassificationResult::NotAKnot { .. }));
//! ```

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod braids;
pub mod diagrams;
pub mod exact;
pub mod harness;
pub mod hexcore;
pub mod tanglecalc;
