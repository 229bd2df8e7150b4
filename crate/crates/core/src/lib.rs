//! Exact arithmetic for finite semigroups and ω-term identities.
//!
//! A finite semigroup is an explicit [`CayleyTable`]; elements are dense
//! indices `0..m` and `table[i][j]` is the product `eᵢ·eⱼ` (row = left
//! factor). Identities are pairs of [`Term`]s built from variables,
//! concatenation and `ω+k` powers, and are checked by exhaustive
//! substitution.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI,
//! parallel drivers and verification suites live in the `semiwork` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod bitset;
pub mod classify;
mod congruence;
pub mod derive;
pub mod enumerate;
mod eval;
mod iso;
mod parse;
mod perm;
mod table;
mod term;
mod transform;
pub mod zoo;

pub use bitset::ElementSet;
pub use classify::{Classification, ClassifyError, ProductIdentity, Step, Verdict};
pub use congruence::Congruence;
pub use derive::{derive_search, Budget, Derivation, DeriveError, DeriveOutcome};
pub use eval::{Assignment, CompiledIdentity, Satisfaction, Witness};
pub use iso::IsoMode;
pub use parse::{parse_identity, parse_identity_set, parse_term, ParseError};
pub use perm::{Permutation, PermutationError};
pub use table::{CayleyTable, Element, Subsemigroup, TableError, MAX_ORDER};
pub use term::{Identity, Length, Multiplicity, Rhs, Term, TermError, TermProfile, Var};
pub use transform::{expand_all, expand_zero, Side};
