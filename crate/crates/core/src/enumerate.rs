//! Exhaustive enumeration of small semigroups.
//!
//! Tables are filled cell by cell in row-major order. Each new cell is
//! checked against every associativity triple it completes, and in the
//! quotiented modes a partial table is abandoned as soon as some relabeling
//! (or relabeling of the transpose) is already lexicographically smaller on
//! a fully determined prefix. Every emitted table is therefore the
//! lexicographically least member of its class, and tables come out in
//! increasing lexicographic order.

use alloc::vec;
use alloc::vec::Vec;

use crate::perm::Permutation;
use crate::table::{CayleyTable, Element, TableError};

/// Largest order the enumerator accepts.
pub const MAX_ENUMERATION_ORDER: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EnumerationMode {
    /// One table per isomorphism class.
    UpToIsomorphism,
    /// One table per class of isomorphism or anti-isomorphism.
    UpToIsoAndAntiIso,
    /// Every associative table on `0..n`.
    RawTables,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("enumeration order must be between 1 and {max}, got {order}")]
    Order { order: usize, max: usize },
    #[error("prefix of length {len} does not fit a table of order {order}")]
    Prefix { len: usize, order: usize },
}

const UNSET: u8 = u8::MAX;

struct Transform {
    perm: Vec<u8>,
    inv: Vec<u8>,
    transpose: bool,
}

fn transforms(n: usize, mode: EnumerationMode) -> Vec<Transform> {
    let mut out = Vec::new();
    if mode == EnumerationMode::RawTables {
        return out;
    }
    for p in Permutation::all(n) {
        let perm: Vec<u8> = p.images().iter().map(|&i| i as u8).collect();
        let mut inv = vec![0u8; n];
        for (i, &j) in perm.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        if !p.is_identity() {
            out.push(Transform {
                perm: perm.clone(),
                inv: inv.clone(),
                transpose: false,
            });
        }
        if mode == EnumerationMode::UpToIsoAndAntiIso {
            out.push(Transform {
                perm,
                inv,
                transpose: true,
            });
        }
    }
    out
}

struct Search {
    n: usize,
    cells: Vec<u8>,
    transforms: Vec<Transform>,
}

impl Search {
    fn new(n: usize, mode: EnumerationMode) -> Self {
        Search {
            n,
            cells: vec![UNSET; n * n],
            transforms: transforms(n, mode),
        }
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> u8 {
        self.cells[a * self.n + b]
    }

    /// Every triple whose four cells are known must associate. Only
    /// triples that use cell `(i, j)` can have changed status.
    fn associative_after(&self, i: usize, j: usize) -> bool {
        let n = self.n;
        let check = |a: usize, b: usize, c: usize| -> bool {
            let ab = self.get(a, b);
            let bc = self.get(b, c);
            if ab == UNSET || bc == UNSET {
                return true;
            }
            let l = self.get(ab as usize, c);
            let r = self.get(a, bc as usize);
            l == UNSET || r == UNSET || l == r
        };
        for c in 0..n {
            // (i j) c
            if !check(i, j, c) {
                return false;
            }
            // a (i j)
            if !check(c, i, j) {
                return false;
            }
        }
        // (a b) j with ab = i, or i (b c) with bc = j
        for a in 0..n {
            for b in 0..n {
                if self.get(a, b) as usize == i && !check(a, b, j) {
                    return false;
                }
                if self.get(a, b) as usize == j && !check(i, a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// False if some transform is already smaller on a determined prefix.
    fn may_be_canonical(&self) -> bool {
        let n = self.n;
        'next: for t in &self.transforms {
            for p in 0..n * n {
                let c = self.cells[p];
                if c == UNSET {
                    continue 'next;
                }
                let (x, y) = (t.inv[p / n] as usize, t.inv[p % n] as usize);
                let (x, y) = if t.transpose { (y, x) } else { (x, y) };
                let s = self.get(x, y);
                if s == UNSET {
                    continue 'next;
                }
                let image = t.perm[s as usize];
                if image < c {
                    return false;
                }
                if image > c {
                    continue 'next;
                }
            }
        }
        true
    }

    fn place(&mut self, pos: usize, v: u8) -> bool {
        self.cells[pos] = v;
        let ok = self.associative_after(pos / self.n, pos % self.n) && self.may_be_canonical();
        if !ok {
            self.cells[pos] = UNSET;
        }
        ok
    }

    fn run(&mut self, pos: usize, stop: usize, visit: &mut dyn FnMut(&[u8])) {
        if pos == stop {
            visit(&self.cells[..stop]);
            return;
        }
        for v in 0..self.n as u8 {
            if self.place(pos, v) {
                self.run(pos + 1, stop, visit);
                self.cells[pos] = UNSET;
            }
        }
    }
}

fn check_order(n: usize) -> Result<(), EnumerateError> {
    if (1..=MAX_ENUMERATION_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(EnumerateError::Order {
            order: n,
            max: MAX_ENUMERATION_ORDER,
        })
    }
}

/// All viable partial tables with the first `depth` cells filled, in
/// lexicographic order. Enumerating each with [`enumerate_branch`] and
/// concatenating the results in this order reproduces [`enumerate`].
pub fn branch_prefixes(
    n: usize,
    mode: EnumerationMode,
    depth: usize,
) -> Result<Vec<Vec<Element>>, EnumerateError> {
    check_order(n)?;
    let depth = depth.min(n * n);
    let mut out = Vec::new();
    Search::new(n, mode).run(0, depth, &mut |cells| {
        out.push(cells.iter().map(|&c| c as Element).collect())
    });
    Ok(out)
}

/// Visits every table extending `prefix`, each as row-major cells.
pub fn enumerate_branch(
    n: usize,
    mode: EnumerationMode,
    prefix: &[Element],
    visit: &mut dyn FnMut(&[Element]),
) -> Result<(), EnumerateError> {
    check_order(n)?;
    if prefix.len() > n * n || prefix.iter().any(|&c| c >= n) {
        return Err(EnumerateError::Prefix {
            len: prefix.len(),
            order: n,
        });
    }
    let mut search = Search::new(n, mode);
    for (pos, &v) in prefix.iter().enumerate() {
        if !search.place(pos, v as u8) {
            return Ok(());
        }
    }
    let mut buf = Vec::with_capacity(n * n);
    search.run(prefix.len(), n * n, &mut |cells| {
        buf.clear();
        buf.extend(cells.iter().map(|&c| c as Element));
        visit(&buf);
    });
    Ok(())
}

/// Every table of order `n` in the given mode, in lexicographic order.
pub fn enumerate(n: usize, mode: EnumerationMode) -> Result<Vec<CayleyTable>, EnumerateError> {
    let mut out = Vec::new();
    enumerate_branch(n, mode, &[], &mut |cells| {
        out.push(CayleyTable::from_cells(n, cells.to_vec()).expect("enumerated tables associate"))
    })?;
    Ok(out)
}

/// Number of tables of order `n` in the given mode.
pub fn count(n: usize, mode: EnumerationMode) -> Result<usize, EnumerateError> {
    let mut total = 0;
    enumerate_branch(n, mode, &[], &mut |_| total += 1)?;
    Ok(total)
}

fn transformed(cells: &[Element], n: usize, perm: &[Element], transpose: bool) -> Vec<Element> {
    let mut inv = vec![0; n];
    for (i, &j) in perm.iter().enumerate() {
        inv[j] = i;
    }
    (0..n * n)
        .map(|p| {
            let (x, y) = (inv[p / n], inv[p % n]);
            let (x, y) = if transpose { (y, x) } else { (x, y) };
            perm[cells[x * n + y]]
        })
        .collect()
}

/// The lexicographically least table in the class of `s`. Intended for the
/// small orders the enumerator handles; cost grows as `n!`.
pub fn canonical_form(s: &CayleyTable, mode: EnumerationMode) -> Result<CayleyTable, TableError> {
    let n = s.order();
    let mut best = s.cells().to_vec();
    if mode != EnumerationMode::RawTables {
        for p in Permutation::all(n) {
            for transpose in [false, true] {
                if transpose && mode != EnumerationMode::UpToIsoAndAntiIso {
                    continue;
                }
                let t = transformed(s.cells(), n, p.images(), transpose);
                if t < best {
                    best = t;
                }
            }
        }
    }
    CayleyTable::from_cells(n, best)
}

pub fn is_canonical(s: &CayleyTable, mode: EnumerationMode) -> bool {
    canonical_form(s, mode).is_ok_and(|c| c.cells() == s.cells())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IsoMode;

    #[test]
    fn small_counts() {
        use EnumerationMode::*;
        assert_eq!(count(1, UpToIsomorphism), Ok(1));
        assert_eq!(count(2, UpToIsomorphism), Ok(5));
        assert_eq!(count(2, UpToIsoAndAntiIso), Ok(4));
        assert_eq!(count(3, UpToIsomorphism), Ok(24));
        assert_eq!(count(3, UpToIsoAndAntiIso), Ok(18));
        assert_eq!(count(2, RawTables), Ok(8));
        assert_eq!(count(3, RawTables), Ok(113));
    }

    #[test]
    fn representatives_are_canonical_and_distinct() {
        let reps = enumerate(3, EnumerationMode::UpToIsomorphism).unwrap();
        for (a, s) in reps.iter().enumerate() {
            assert!(is_canonical(s, EnumerationMode::UpToIsomorphism));
            for t in &reps[..a] {
                assert!(!s.is_isomorphic(t, IsoMode::Plain));
            }
        }
    }

    #[test]
    fn raw_tables_cover_the_classes() {
        let reps = enumerate(3, EnumerationMode::UpToIsomorphism).unwrap();
        let mut hits = vec![0usize; reps.len()];
        for s in enumerate(3, EnumerationMode::RawTables).unwrap() {
            let c = canonical_form(&s, EnumerationMode::UpToIsomorphism).unwrap();
            let k = reps.iter().position(|r| r.cells() == c.cells()).unwrap();
            hits[k] += 1;
        }
        assert!(hits.iter().all(|&h| h > 0));
        assert_eq!(hits.iter().sum::<usize>(), 113);
    }

    #[test]
    fn prefixes_partition_the_search() {
        let whole = enumerate(3, EnumerationMode::UpToIsoAndAntiIso).unwrap();
        let mut joined = Vec::new();
        for prefix in branch_prefixes(3, EnumerationMode::UpToIsoAndAntiIso, 2).unwrap() {
            enumerate_branch(3, EnumerationMode::UpToIsoAndAntiIso, &prefix, &mut |c| {
                joined.push(c.to_vec())
            })
            .unwrap();
        }
        let whole: Vec<Vec<Element>> = whole.iter().map(|t| t.cells().to_vec()).collect();
        assert_eq!(joined, whole);
    }

    #[test]
    fn order_guard() {
        assert!(count(0, EnumerationMode::RawTables).is_err());
        assert!(count(6, EnumerationMode::RawTables).is_err());
        assert!(enumerate_branch(2, EnumerationMode::RawTables, &[0, 5], &mut |_| {}).is_err());
    }
}
