//! Built-in identity catalogs, shipped as text files.

use semiwork_core::classify::perm_identity;
use semiwork_core::{parse_identity_set, Identity, Permutation};

/// Product identities used by the classification suite.
pub const CLASSIFICATION_TEXT: &str = include_str!("../catalog/classification.txt");

/// Expansion identities by arity.
pub const EXPANSION_TEXT: &str = include_str!("../catalog/expansion.txt");

fn parse(text: &str) -> Vec<Identity> {
    parse_identity_set(text).expect("built-in catalog parses")
}

pub fn classification() -> Vec<Identity> {
    parse(CLASSIFICATION_TEXT)
}

pub fn expansion() -> Vec<Identity> {
    parse(EXPANSION_TEXT)
}

/// Catalog expansion identities with `k` variables on the left.
pub fn expansion_of_arity(k: usize) -> Vec<Identity> {
    expansion()
        .into_iter()
        .filter(|e| e.lhs.letters().map(|l| l.len()) == Some(k))
        .collect()
}

/// `x1 … xn = x_{1σ} … x_{nσ}` for every σ ≠ id, in lexicographic order.
pub fn permutation_identities(n: usize) -> Vec<(Permutation, Identity)> {
    Permutation::all(n)
        .into_iter()
        .filter(|p| !p.is_identity())
        .map(|p| {
            let e = perm_identity(n, &p).expect("nontrivial permutation");
            (p, e)
        })
        .collect()
}
