//! Brute-force implication checking over small semigroups.
//!
//! A negative answer is evidence only: it means no counterexample exists
//! among the semigroups enumerated, not that the implication holds.

use rayon::prelude::*;
use semiwork_core::enumerate::EnumerationMode;
use semiwork_core::{expand_all, CayleyTable, Identity};

use crate::enumeration::small_semigroups;
use crate::report::Counterexample;
use crate::WorkbenchError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    NoCounterexampleUpTo(usize),
    Counterexample(Box<Counterexample>),
}

impl OracleVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, OracleVerdict::NoCounterexampleUpTo(_))
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            OracleVerdict::NoCounterexampleUpTo(_) => None,
            OracleVerdict::Counterexample(c) => Some(c),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            OracleVerdict::NoCounterexampleUpTo(n) => format!("no counterexample up to order {n}"),
            OracleVerdict::Counterexample(c) => format!("counterexample: {}", c.describe()),
        }
    }
}

/// The first semigroup (in enumeration order) satisfying `premises` and
/// failing `conclusion`, with the failing assignment.
pub fn first_counterexample(
    semigroups: &[CayleyTable],
    premises: &[Identity],
    conclusion: &Identity,
) -> Option<Counterexample> {
    let premises = expand_all(premises);
    semigroups.par_iter().enumerate().find_map_first(|(k, s)| {
        if !s.satisfies_all(&premises) {
            return None;
        }
        s.satisfies(conclusion)
            .witness()
            .map(|w| Counterexample::new(&format!("S{}#{k}", s.order()), s, w))
    })
}

/// Looks for a semigroup of order at most `max_order` satisfying every
/// premise and failing the conclusion.
pub fn implies_oracle(
    premises: &[Identity],
    conclusion: &Identity,
    max_order: usize,
) -> Result<OracleVerdict, WorkbenchError> {
    let all = small_semigroups(max_order, EnumerationMode::UpToIsomorphism)?;
    Ok(match first_counterexample(&all, premises, conclusion) {
        None => OracleVerdict::NoCounterexampleUpTo(max_order),
        Some(c) => OracleVerdict::Counterexample(Box::new(c)),
    })
}
