//! Finite bounded lattices, their distributive envelopes, and the adjoint-
//! pair duality that reconstructs a lattice from a binary relation between
//! two posets.
//!
//! The crate is organised around small, fully validated structures:
//!
//! * [`finlat`] — lattices as dense order matrices, subset-family lattices,
//!   isomorphism search, and exhaustive enumeration up to isomorphism;
//! * [`admissible`] — joins and meets that distribute over every element,
//!   and the ideals/filters closed under them;
//! * [`envelope`] — the distributive join- and meet-envelopes, their units,
//!   the lifting of maps along the units, and the Galois adjunction between
//!   the two envelopes;
//! * [`morphisms`] — classification of maps between lattices by which
//!   structure they preserve, plus exhaustive/sampled map enumeration;
//! * [`duality`] — polarities (two posets and a relation), the modal
//!   operators they induce, tightness, the dual space of an adjoint pair,
//!   and the classical comparison constructions;
//! * [`pervin`] — quasi-uniform point spaces, their block lattices, and the
//!   bicompletion-style point extension;
//! * [`corpus`] — named example lattices and maps.
//!
//! Everything is exact integer/bitmask arithmetic; every constructor checks
//! its axioms and every cap is an explicit error, so the library is safe to
//! drive from fuzzers and exhaustive scans.

pub mod admissible;
pub mod cli;
pub mod corpus;
pub mod doc;
pub mod duality;
pub mod envelope;
pub mod error;
pub mod finlat;
pub mod morphisms;
pub mod pervin;
pub mod selftest;

pub use error::{Error, Result};
