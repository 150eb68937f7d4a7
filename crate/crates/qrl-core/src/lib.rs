//! Combinatorics of stable curves and exact plane-quartic analysis.
//!
//! The crate has two halves that meet in the middle:
//!
//! * graph side — weighted dual graphs with legs ([`graph`]), separating
//!   nodes and pairs ([`connectivity`]), exhaustive enumeration of stable
//!   types ([`enumeration`]), and the named genus-3 classification
//!   ([`genus3`]);
//! * arithmetic side — finite fields ([`field`]), homogeneous polynomials
//!   and a polynomial parser ([`poly`]), Laurent differentials
//!   ([`laurent`]), exact quartic analysis over finite fields
//!   ([`quartic`]), and regular differentials with the tricuspidal
//!   verification ([`differentials`]).
//!
//! [`reduction`] ties them together: from a GIT-stable quartic special
//! fiber it predicts the candidate stable-reduction types.

pub mod field;
pub mod poly;
pub mod unipoly;
