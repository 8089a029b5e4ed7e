//! Constructions, homomorphic reductions, and exact verification of B_h[g]
//! sets in finite abelian groups.
//!
//! A set A is B_h[g] in a group G when every element of G has at most g
//! representations as a sum of h elements of A, counted up to reordering.
//! This crate builds such sets from the classical finite-field families
//! (Bose–Chowla, Ruzsa, Gómez–Trujillo, generalized Singer, and Derksen's
//! x − S sets in unit groups of quotient rings), transports them along group
//! homomorphisms — a homomorphism with kernel of size k sends a B_h[g] set to
//! a B_h[gk] set — and determines the exact multiplicity g* of any finite set
//! by complete enumeration, with a meet-in-the-middle strategy above a size
//! threshold.
//!
//! Entry points:
//! - [`constructions`]: the set families and the [`constructions::BhSet`]
//!   container with its provenance trail.
//! - [`reduction`]: generic and family-specific reductions with claimed-bound
//!   bookkeeping.
//! - [`verifier`]: exact multiplicity, collision witnesses, and reports.
//! - [`bounds`]: lower-bound tables for f_h(N, g) with verified witnesses.
//! - [`golden`]: embedded reference chains that double as fixtures.
//! - [`matchrep`]: recovery of the field presentation behind a published set.
//! - [`reproduce`]: one-shot replay of everything above.

pub mod algebra;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod golden;
pub mod groups;
pub mod matchrep;
pub mod reduction;
pub mod reproduce;
pub mod rng;
pub mod verifier;

pub use constructions::BhSet;
pub use error::{Error, Result};
pub use groups::{GroupDescriptor, GroupValue, Homomorphism};
pub use verifier::VerificationReport;
