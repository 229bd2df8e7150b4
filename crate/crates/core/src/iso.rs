use alloc::vec;
use alloc::vec::Vec;

use crate::table::{CayleyTable, Element};

/// Whether anti-isomorphisms (`f(ab) = f(b)f(a)`) are also accepted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsoMode {
    Plain,
    /// Isomorphism or anti-isomorphism.
    WithAnti,
}

/// Per-element data preserved by isomorphisms, used to prune candidates.
fn signatures(t: &CayleyTable) -> Vec<[usize; 6]> {
    let m = t.order();
    (0..m)
        .map(|e| {
            let idempotent = usize::from(t.mul(e, e) == e);
            let index = {
                // number of distinct powers before the cycle
                let mut count = 0;
                let mut p = e;
                let mut seen = vec![false; m];
                while !seen[p] {
                    seen[p] = true;
                    count += 1;
                    p = t.mul(p, e);
                }
                count
            };
            let left_fixers = (0..m).filter(|&x| t.mul(x, e) == e).count();
            let right_fixers = (0..m).filter(|&x| t.mul(e, x) == e).count();
            let roots = (0..m).filter(|&x| t.mul(x, x) == e).count();
            let row_image = {
                let mut seen = vec![false; m];
                (0..m)
                    .filter(|&x| !core::mem::replace(&mut seen[t.mul(e, x)], true))
                    .count()
            };
            [
                idempotent,
                index,
                t.period(e),
                left_fixers,
                right_fixers,
                roots * m + row_image,
            ]
        })
        .collect()
}

impl CayleyTable {
    /// A multiplication-preserving bijection `self → other`, found by
    /// backtracking over candidates with equal invariants. Exponential in the
    /// worst case; meant for small orders.
    pub fn find_isomorphism(&self, other: &CayleyTable) -> Option<Vec<Element>> {
        let m = self.order();
        if m != other.order() {
            return None;
        }
        let sig_s = signatures(self);
        let sig_t = signatures(other);
        let mut a = sig_s.clone();
        let mut b = sig_t.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
        let mut map = vec![usize::MAX; m];
        let mut used = vec![false; m];
        if extend(self, other, &sig_s, &sig_t, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    pub fn is_isomorphic(&self, other: &CayleyTable, mode: IsoMode) -> bool {
        self.find_isomorphism(other).is_some()
            || (mode == IsoMode::WithAnti && self.find_isomorphism(&other.opposite()).is_some())
    }
}

fn extend(
    s: &CayleyTable,
    t: &CayleyTable,
    sig_s: &[[usize; 6]],
    sig_t: &[[usize; 6]],
    next: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let m = s.order();
    if next == m {
        return true;
    }
    for cand in 0..m {
        if used[cand] || sig_s[next] != sig_t[cand] {
            continue;
        }
        map[next] = cand;
        let consistent = (0..=next).all(|a| {
            (0..=next).all(|b| {
                let ab = s.mul(a, b);
                let image = t.mul(map[a], map[b]);
                if ab <= next {
                    map[ab] == image
                } else {
                    // image must still be free for ab
                    !used[image] && image != cand
                }
            })
        });
        if consistent {
            used[cand] = true;
            if extend(s, t, sig_s, sig_t, next + 1, map, used) {
                return true;
            }
            used[cand] = false;
        }
        map[next] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn left_zero() -> CayleyTable {
        CayleyTable::validate(&[vec![0, 0], vec![1, 1]]).unwrap()
    }

    fn right_zero() -> CayleyTable {
        CayleyTable::validate(&[vec![0, 1], vec![0, 1]]).unwrap()
    }

    #[test]
    fn self_isomorphic() {
        for t in [
            zoo::build_t(3).unwrap().table,
            zoo::build_v(2, 3).unwrap().table,
        ] {
            let map = t.find_isomorphism(&t).unwrap();
            for a in 0..t.order() {
                for b in 0..t.order() {
                    assert_eq!(map[t.mul(a, b)], t.mul(map[a], map[b]));
                }
            }
        }
    }

    #[test]
    fn left_and_right_zero_bands() {
        assert!(!left_zero().is_isomorphic(&right_zero(), IsoMode::Plain));
        assert!(left_zero().is_isomorphic(&right_zero(), IsoMode::WithAnti));
    }

    #[test]
    fn monogenic_vs_null_and_chain() {
        // a·a = a² and a² absorbs: C2 is the null semigroup of order 2
        let c2 = zoo::build_c(2).unwrap().table;
        let null = CayleyTable::validate(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(c2.is_isomorphic(&null, IsoMode::Plain));
        let chain = CayleyTable::validate(&[vec![0, 0], vec![0, 1]]).unwrap();
        assert!(!c2.is_isomorphic(&chain, IsoMode::WithAnti));
    }

    #[test]
    fn relabelled_copy_is_found() {
        let t = zoo::build_rees(2, [[0, 0], [0, 1]]).unwrap().table;
        let m = t.order();
        // reverse the element order
        let perm: Vec<usize> = (0..m).rev().collect();
        let mut cells = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                cells[perm[a] * m + perm[b]] = perm[t.mul(a, b)];
            }
        }
        let copy = CayleyTable::from_cells(m, cells).unwrap();
        assert!(t.is_isomorphic(&copy, IsoMode::Plain));
    }
}
