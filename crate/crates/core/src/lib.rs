//! τ-factorization in finite commutative rings with zero-divisors.
//!
//! Rings are `Z/n`, `GF(q)` and finite products of these, with elements as
//! dense indices. A τ-relation is a symmetric relation on the non-zero
//! non-units `R#`; a τ-factorization is `a = λ·a₁⋯a_n` with `λ` a unit and
//! the `a_i ∈ R#` pairwise τ-related.

pub mod associates;
pub mod corpus;
pub mod factor;
pub mod irr;
pub mod props;
pub mod query;
pub mod replay;
pub mod ring;
pub mod taurel;
pub mod verdict;
pub mod zdgraph;

pub use associates::AssocKind;
pub use factor::Factorization;
pub use ring::{Elem, Ring, RingSpec};
pub use taurel::{TauName, TauRelation};
pub use verdict::Verdict;
