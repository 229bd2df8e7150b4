use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::ElementSet;
use crate::table::{CayleyTable, Element, TableError};

/// A partition of the elements of a table, as a class index per element.
///
/// Classes are numbered in order of their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    class_of: Vec<usize>,
    classes: usize,
}

impl Congruence {
    pub fn identity(order: usize) -> Self {
        Congruence {
            class_of: (0..order).collect(),
            classes: order,
        }
    }

    pub fn universal(order: usize) -> Self {
        Congruence {
            class_of: vec![0; order],
            classes: usize::from(order > 0),
        }
    }

    /// Builds a partition from arbitrary class labels; labels are renumbered.
    /// Compatibility with a table is checked by [`CayleyTable::quotient`].
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut renumber: Vec<(usize, usize)> = Vec::new();
        let class_of = labels
            .iter()
            .map(|&l| match renumber.iter().find(|(old, _)| *old == l) {
                Some(&(_, new)) => new,
                None => {
                    let new = renumber.len();
                    renumber.push((l, new));
                    new
                }
            })
            .collect();
        Congruence {
            class_of,
            classes: renumber.len(),
        }
    }

    pub fn class_of(&self, e: Element) -> usize {
        self.class_of[e]
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    pub fn same(&self, a: Element, b: Element) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Classes as ascending element lists, in class-index order.
    pub fn classes(&self) -> Vec<Vec<Element>> {
        let mut out = vec![Vec::new(); self.classes];
        for (e, &c) in self.class_of.iter().enumerate() {
            out[c].push(e);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    /// First pair `(i, j)` where compatibility fails, if any.
    pub fn incompatibility(&self, s: &CayleyTable) -> Option<(Element, Element)> {
        let reps: Vec<Element> = self.classes().iter().map(|c| c[0]).collect();
        let m = s.order();
        for i in 0..m {
            for j in 0..m {
                let expected = self.class_of[s.mul(reps[self.class_of[i]], reps[self.class_of[j]])];
                if self.class_of[s.mul(i, j)] != expected {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins two classes; the smaller root survives.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

impl CayleyTable {
    /// The smallest congruence containing `pairs`.
    ///
    /// Every successful union pushes all left and right translates of the
    /// merged pair; the relation is a congruence once the queue drains.
    pub fn congruence_closure(&self, pairs: &[(Element, Element)]) -> Congruence {
        let m = self.order();
        let mut uf = UnionFind::new(m);
        let mut queue: Vec<(Element, Element)> = pairs.iter().rev().copied().collect();
        while let Some((a, b)) = queue.pop() {
            if !uf.union(a, b) {
                continue;
            }
            for s in (0..m).rev() {
                queue.push((self.mul(a, s), self.mul(b, s)));
                queue.push((self.mul(s, a), self.mul(s, b)));
            }
        }
        let roots: Vec<usize> = (0..m).map(|e| uf.find(e)).collect();
        Congruence::from_labels(&roots)
    }

    /// The quotient table on classes. Each class is labelled by its least
    /// element.
    pub fn quotient(&self, c: &Congruence) -> Result<CayleyTable, TableError> {
        if c.len() != self.order() {
            return Err(TableError::PartitionSize {
                len: c.len(),
                order: self.order(),
            });
        }
        if let Some((i, j)) = c.incompatibility(self) {
            return Err(TableError::NotACongruence { i, j });
        }
        let reps: Vec<Element> = c.classes().iter().map(|cl| cl[0]).collect();
        let k = reps.len();
        let mut cells = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                cells.push(c.class_of(self.mul(a, b)));
            }
        }
        let labels = reps.iter().map(|&r| String::from(self.label(r))).collect();
        CayleyTable::from_flat(k, cells, labels)
    }

    pub fn is_ideal(&self, ideal: &ElementSet) -> bool {
        let all = self.all();
        self.set_product(&all, ideal).is_subset(ideal)
            && self.set_product(ideal, &all).is_subset(ideal)
    }

    /// Collapses a two-sided ideal to a single zero, placed last and
    /// labelled `0` (or by the ideal's only element when it is a singleton).
    pub fn rees_quotient(&self, ideal: &ElementSet) -> Result<CayleyTable, TableError> {
        if ideal.is_empty() || ideal.universe() != self.order() || !self.is_ideal(ideal) {
            return Err(TableError::NotAnIdeal);
        }
        let keep: Vec<Element> = (0..self.order()).filter(|&e| !ideal.contains(e)).collect();
        let zero = keep.len();
        let mut index = vec![zero; self.order()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let k = zero + 1;
        let mut cells = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                cells.push(if a == zero || b == zero {
                    zero
                } else {
                    index[self.mul(keep[a], keep[b])]
                });
            }
        }
        let mut labels: Vec<String> = keep.iter().map(|&e| String::from(self.label(e))).collect();
        labels.push(if ideal.len() == 1 {
            String::from(self.label(ideal.iter().next().unwrap()))
        } else {
            String::from("0")
        });
        CayleyTable::from_flat(k, cells, labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use crate::IsoMode;

    #[test]
    fn empty_pairs_give_identity_partition() {
        let t2 = zoo::build_t(2).unwrap().table;
        assert_eq!(t2.congruence_closure(&[]), Congruence::identity(5));
    }

    #[test]
    fn monogenic_collapse() {
        let c2 = zoo::build_c(2).unwrap().table;
        let c = c2.congruence_closure(&[(0, 1)]);
        assert_eq!(c.num_classes(), 1);
        assert_eq!(c2.quotient(&c).unwrap().order(), 1);
    }

    #[test]
    fn t2_commutative_quotient() {
        let t2 = zoo::build_t(2).unwrap().table;
        let l = |s: &str| t2.element_by_label(s).unwrap();
        let c = t2.congruence_closure(&[(l("a1a2"), l("a2a1"))]);
        assert!(c.same(l("a1a2"), l("a2a1")));
        assert_eq!(c.num_classes(), 4);
        let q = t2.quotient(&c).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_commutative());
    }

    #[test]
    fn identity_and_universal_quotients() {
        let t3 = zoo::build_t(3).unwrap().table;
        let same = t3.quotient(&Congruence::identity(16)).unwrap();
        assert!(same.is_isomorphic(&t3, IsoMode::Plain));
        assert_eq!(t3.quotient(&Congruence::universal(16)).unwrap().order(), 1);
    }

    #[test]
    fn incompatible_partition_rejected() {
        let c3 = zoo::build_c(3).unwrap().table;
        // {a}, {a², a³} is a congruence; {a, a²}, {a³} is not.
        assert!(c3.quotient(&Congruence::from_labels(&[0, 1, 1])).is_ok());
        assert!(matches!(
            c3.quotient(&Congruence::from_labels(&[0, 0, 1])),
            Err(TableError::NotACongruence { .. })
        ));
    }

    #[test]
    fn closure_is_smallest() {
        // Every congruence containing the pair must contain the closure;
        // checked against all 52 partitions of T_2.
        let t2 = zoo::build_t(2).unwrap().table;
        let m = t2.order();
        let partitions = set_partitions(m);
        for a in 0..m {
            for b in 0..m {
                let closure = t2.congruence_closure(&[(a, b)]);
                assert!(closure.incompatibility(&t2).is_none());
                for p in &partitions {
                    let cand = Congruence::from_labels(p);
                    if cand.same(a, b) && cand.incompatibility(&t2).is_none() {
                        for x in 0..m {
                            for y in 0..m {
                                if closure.same(x, y) {
                                    assert!(cand.same(x, y));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    fn set_partitions(n: usize) -> Vec<Vec<usize>> {
        // restricted growth strings
        let mut out = Vec::new();
        let mut cur = vec![0usize; n];
        fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == cur.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..=max + 1 {
                cur[i] = v;
                rec(i + 1, max.max(v), cur, out);
            }
        }
        if n > 0 {
            rec(1, 0, &mut cur, &mut out);
        }
        out
    }

    #[test]
    fn rees_quotients() {
        let c3 = zoo::build_c(3).unwrap().table;
        let q = c3
            .rees_quotient(&ElementSet::from_elements(3, [2]))
            .unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.zero(), Some(2));
        let nil3 = CayleyTable::validate(&[vec![1, 2, 2], vec![2, 2, 2], vec![2, 2, 2]]).unwrap();
        assert!(q.is_isomorphic(&nil3, IsoMode::Plain));
        let t2 = zoo::build_t(2).unwrap().table;
        let z = ElementSet::from_elements(5, [t2.zero().unwrap()]);
        assert!(t2
            .rees_quotient(&z)
            .unwrap()
            .is_isomorphic(&t2, IsoMode::Plain));
        assert_eq!(t2.rees_quotient(&t2.all()).unwrap().order(), 1);
        let a1 = ElementSet::from_elements(5, [0]);
        assert_eq!(t2.rees_quotient(&a1), Err(TableError::NotAnIdeal));
    }
}
