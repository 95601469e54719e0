//! Desk-scale computations in `SL2` over small finite commutative rings.
//!
//! The crate enumerates `SL2(R)` for rings of order up to a few dozen. On top of that it
//! computes conjugacy classes, normal closures, abelianizations, conjugation-invariant word
//! norms and `Δ_k`, the subgroups `G(N)` attached to a normal subgroup `N` with their sandwich
//! inclusions, explicit abelianization maps for small 2- and 3-local rings, and the splitting
//! of 2 and 3 in real quadratic fields.

pub mod error;
pub mod finring;
pub mod group;
pub mod normlab;
pub mod quadfields;
pub mod sandwich;
pub mod sl2;
pub mod verify;

pub use error::{Error, Result};
pub use finring::{parse_element, parse_ring_spec, Elem, FiniteRing, Ideal};
