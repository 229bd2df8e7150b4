use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::ElementSet;

/// Index of an element in its table.
pub type Element = usize;

/// Largest order a table may have.
pub const MAX_ORDER: usize = 2048;

/// Full O(m³) associativity scans are used up to this order; larger tables
/// go through Light's test over a generating set.
const FULL_SCAN_ORDER: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("a semigroup must have at least one element")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    Shape {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("entry table[{row}][{col}] = {value} is outside 0..{order}")]
    Range {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("not associative: ({i}·{j})·{k} ≠ {i}·({j}·{k})")]
    Associativity { i: Element, j: Element, k: Element },
    #[error("order {order} exceeds the limit {max}")]
    TooLarge { order: usize, max: usize },
    #[error("{labels} labels given for {order} elements")]
    LabelCount { labels: usize, order: usize },
    #[error("element {0} is not a two-sided zero")]
    NotAZero(Element),
    #[error("element {0} is not a two-sided identity")]
    NotAnIdentity(Element),
    #[error("element set is not a two-sided ideal")]
    NotAnIdeal,
    #[error("partition is not compatible with multiplication at ({i}, {j})")]
    NotACongruence { i: Element, j: Element },
    #[error("partition has {len} entries for a table of order {order}")]
    PartitionSize { len: usize, order: usize },
    #[error("generating set is empty")]
    NoGenerators,
}

/// A finite semigroup given by its multiplication table.
///
/// Construction always re-checks associativity, so every value of this type
/// is a genuine semigroup. The zero and identity (if any) are detected
/// automatically; ω-powers are precomputed.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    order: usize,
    cells: Vec<Element>,
    labels: Vec<String>,
    zero: Option<Element>,
    identity: Option<Element>,
    omega: Vec<Element>,
    period: Vec<usize>,
}

impl PartialEq for CayleyTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.cells == other.cells && self.labels == other.labels
    }
}

impl Eq for CayleyTable {}

/// A subsemigroup re-indexed as its own table, with its embedding.
#[derive(Clone, Debug)]
pub struct Subsemigroup {
    pub table: CayleyTable,
    /// `embedding[e]` is the element of the parent that `e` stands for.
    pub embedding: Vec<Element>,
}

fn default_labels(order: usize) -> Vec<String> {
    (0..order).map(|i| format!("e{i}")).collect()
}

impl CayleyTable {
    /// Validates a raw table given as rows, labelling elements `e0, e1, …`.
    pub fn validate(rows: &[Vec<usize>]) -> Result<Self, TableError> {
        Self::with_labels(rows, default_labels(rows.len()))
    }

    pub fn with_labels(rows: &[Vec<usize>], labels: Vec<String>) -> Result<Self, TableError> {
        let order = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != order {
                return Err(TableError::Shape {
                    row,
                    len: r.len(),
                    order,
                });
            }
        }
        Self::from_flat(order, rows.concat(), labels)
    }

    /// Builds a table from row-major cells.
    pub fn from_flat(
        order: usize,
        cells: Vec<Element>,
        labels: Vec<String>,
    ) -> Result<Self, TableError> {
        if order == 0 {
            return Err(TableError::Empty);
        }
        if order > MAX_ORDER {
            return Err(TableError::TooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        if cells.len() != order * order {
            return Err(TableError::Shape {
                row: cells.len() / order,
                len: cells.len() % order,
                order,
            });
        }
        if labels.len() != order {
            return Err(TableError::LabelCount {
                labels: labels.len(),
                order,
            });
        }
        if let Some(pos) = cells.iter().position(|&v| v >= order) {
            return Err(TableError::Range {
                row: pos / order,
                col: pos % order,
                value: cells[pos],
                order,
            });
        }
        let mut table = CayleyTable {
            order,
            cells,
            labels,
            zero: None,
            identity: None,
            omega: Vec::new(),
            period: Vec::new(),
        };
        if let Some((i, j, k)) = table.associativity_violation() {
            return Err(TableError::Associativity { i, j, k });
        }
        table.zero = (0..order).find(|&z| table.is_zero(z));
        table.identity = (0..order).find(|&u| table.is_identity(u));
        table.compute_powers();
        Ok(table)
    }

    /// Same as [`CayleyTable::from_flat`] but with default labels.
    pub fn from_cells(order: usize, cells: Vec<Element>) -> Result<Self, TableError> {
        Self::from_flat(order, cells, default_labels(order))
    }

    fn is_zero(&self, z: Element) -> bool {
        (0..self.order).all(|x| self.mul(z, x) == z && self.mul(x, z) == z)
    }

    fn is_identity(&self, u: Element) -> bool {
        (0..self.order).all(|x| self.mul(u, x) == x && self.mul(x, u) == x)
    }

    /// Checks that `z` is the zero; the zero is detected automatically, this
    /// only confirms a declared one.
    pub fn declare_zero(&self, z: Element) -> Result<(), TableError> {
        if self.zero == Some(z) {
            Ok(())
        } else {
            Err(TableError::NotAZero(z))
        }
    }

    pub fn declare_identity(&self, u: Element) -> Result<(), TableError> {
        if self.identity == Some(u) {
            Ok(())
        } else {
            Err(TableError::NotAnIdentity(u))
        }
    }

    /// First violating triple in lexicographic order (for small tables), or
    /// some violating triple found by Light's test.
    fn associativity_violation(&self) -> Option<(Element, Element, Element)> {
        let m = self.order;
        if m <= FULL_SCAN_ORDER {
            for i in 0..m {
                for j in 0..m {
                    let ij = self.mul(i, j);
                    for k in 0..m {
                        if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                            return Some((i, j, k));
                        }
                    }
                }
            }
            return None;
        }
        // Elements g with (xg)y = x(gy) for all x, y form a subsemigroup, so
        // checking a generating set suffices.
        for g in self.generating_set() {
            for x in 0..m {
                let xg = self.mul(x, g);
                for y in 0..m {
                    if self.mul(xg, y) != self.mul(x, self.mul(g, y)) {
                        return Some((x, g, y));
                    }
                }
            }
        }
        None
    }

    /// A generating set chosen greedily in ascending element order.
    pub fn generating_set(&self) -> Vec<Element> {
        let m = self.order;
        let mut members: Vec<Element> = Vec::new();
        let mut inside = ElementSet::empty(m);
        let mut gens = Vec::new();
        for g in 0..m {
            if inside.contains(g) {
                continue;
            }
            gens.push(g);
            inside.insert(g);
            let mut queue = vec![g];
            while let Some(x) = queue.pop() {
                members.push(x);
                let mut k = 0;
                while k < members.len() {
                    let y = members[k];
                    for p in [self.mul(x, y), self.mul(y, x)] {
                        if inside.insert(p) {
                            queue.push(p);
                        }
                    }
                    k += 1;
                }
            }
        }
        gens
    }

    fn compute_powers(&mut self) {
        let m = self.order;
        let mut seen = vec![usize::MAX; m];
        let mut powers = Vec::with_capacity(m + 1);
        self.omega = vec![0; m];
        self.period = vec![0; m];
        for s in 0..m {
            powers.clear();
            // powers[t] = s^(t+1)
            let mut p = s;
            let start = loop {
                if seen[p] != usize::MAX {
                    break seen[p];
                }
                seen[p] = powers.len();
                powers.push(p);
                p = self.mul(p, s);
            };
            let period = powers.len() - start;
            // exponent t+1 must be a multiple of the period and ≥ start+1
            let exponent = (start + 1).div_ceil(period) * period;
            self.omega[s] = powers[exponent - 1];
            self.period[s] = period;
            for &q in &powers {
                seen[q] = usize::MAX;
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.cells[a * self.order + b]
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[Element] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.cells.chunks(self.order).map(<[_]>::to_vec).collect()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Element) -> &str {
        &self.labels[e]
    }

    pub fn element_by_label(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn zero(&self) -> Option<Element> {
        self.zero
    }

    pub fn identity(&self) -> Option<Element> {
        self.identity
    }

    /// Replaces the labels, keeping the multiplication.
    pub fn relabeled(mut self, labels: Vec<String>) -> Result<Self, TableError> {
        if labels.len() != self.order {
            return Err(TableError::LabelCount {
                labels: labels.len(),
                order: self.order,
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The opposite semigroup, `a ∘ b = b·a`.
    pub fn opposite(&self) -> CayleyTable {
        let m = self.order;
        let mut cells = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                cells[a * m + b] = self.mul(b, a);
            }
        }
        CayleyTable::from_flat(m, cells, self.labels.clone()).expect("opposite of a semigroup")
    }

    /// E(S).
    pub fn idempotents(&self) -> ElementSet {
        ElementSet::from_elements(self.order, (0..self.order).filter(|&e| self.mul(e, e) == e))
    }

    /// The unique idempotent among the positive powers of `s`.
    pub fn omega_power(&self, s: Element) -> Element {
        self.omega[s]
    }

    /// Length of the cycle the powers of `s` end up in.
    pub fn period(&self, s: Element) -> usize {
        self.period[s]
    }

    /// `s^ω · s^k`; with `k = 0` this is `s^ω`.
    pub fn omega_plus(&self, s: Element, k: u32) -> Element {
        let mut acc = self.omega[s];
        for _ in 0..(k as usize % self.period[s]) {
            acc = self.mul(acc, s);
        }
        acc
    }

    /// I(S): elements with `s = s^(ω+1)`.
    pub fn completely_regular(&self) -> ElementSet {
        ElementSet::from_elements(
            self.order,
            (0..self.order).filter(|&s| self.omega_plus(s, 1) == s),
        )
    }

    /// `{ab : a ∈ A, b ∈ B}`.
    pub fn set_product(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        let bs = b.to_vec();
        for x in a.iter() {
            for &y in &bs {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// Sⁿ, all products of exactly `n` elements, for `n ≥ 1`.
    pub fn power_ideal(&self, n: usize) -> ElementSet {
        assert!(n >= 1, "power_ideal needs n ≥ 1");
        let all = self.all();
        let mut acc = all.clone();
        for _ in 1..n {
            acc = self.set_product(&acc, &all);
        }
        acc
    }

    /// Componentwise product; element `(s, t)` has index `s·|T| + t`.
    pub fn direct_product(&self, other: &CayleyTable) -> Result<CayleyTable, TableError> {
        let (m, n) = (self.order, other.order);
        let order = m
            .checked_mul(n)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(TableError::TooLarge {
                order: m.saturating_mul(n),
                max: MAX_ORDER,
            })?;
        let mut cells = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let (s1, t1) = (a / n, a % n);
                let (s2, t2) = (b / n, b % n);
                cells.push(self.mul(s1, s2) * n + other.mul(t1, t2));
            }
        }
        let labels = (0..order)
            .map(|a| format!("({},{})", self.labels[a / n], other.labels[a % n]))
            .collect();
        CayleyTable::from_flat(order, cells, labels)
    }

    /// The subsemigroup generated by `gens`, re-indexed in ascending order of
    /// the parent's indices.
    pub fn subsemigroup(&self, gens: &ElementSet) -> Result<Subsemigroup, TableError> {
        if gens.is_empty() {
            return Err(TableError::NoGenerators);
        }
        let closure = self.closure(gens);
        Ok(self.restrict(&closure))
    }

    /// Closure of a set under multiplication.
    pub fn closure(&self, gens: &ElementSet) -> ElementSet {
        let mut inside = gens.clone();
        let mut members: Vec<Element> = Vec::new();
        let mut queue = gens.to_vec();
        while let Some(x) = queue.pop() {
            members.push(x);
            let mut k = 0;
            while k < members.len() {
                let y = members[k];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if inside.insert(p) {
                        queue.push(p);
                    }
                }
                k += 1;
            }
        }
        inside
    }

    /// Restriction to a multiplicatively closed set.
    pub(crate) fn restrict(&self, closed: &ElementSet) -> Subsemigroup {
        let embedding = closed.to_vec();
        let mut index = vec![usize::MAX; self.order];
        for (new, &old) in embedding.iter().enumerate() {
            index[old] = new;
        }
        let k = embedding.len();
        let mut cells = Vec::with_capacity(k * k);
        for &a in &embedding {
            for &b in &embedding {
                cells.push(index[self.mul(a, b)]);
            }
        }
        let labels = embedding
            .iter()
            .map(|&e| self.labels[e].to_owned())
            .collect();
        let table = CayleyTable::from_flat(k, cells, labels).expect("closed subset");
        Subsemigroup { table, embedding }
    }

    /// Value of `elements[0]·elements[1]·…` (left to right).
    pub fn product<I: IntoIterator<Item = Element>>(&self, elements: I) -> Option<Element> {
        elements.into_iter().reduce(|a, b| self.mul(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn c(r: usize) -> CayleyTable {
        zoo::build_c(r).unwrap().table
    }

    #[test]
    fn trivial_semigroup() {
        let t = CayleyTable::validate(&[vec![0]]).unwrap();
        assert_eq!(t.zero(), Some(0));
        assert_eq!(t.identity(), Some(0));
    }

    #[test]
    fn constant_zero_table() {
        let t = CayleyTable::validate(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(t.zero(), Some(0));
        assert_eq!(t.identity(), None);
    }

    #[test]
    fn nonassociative_witness_is_real() {
        // (0·0)·0 = 1·0 = 0 = 0·1 = 0·(0·0), so (0,0,0) is fine; (0,0,1) is not.
        let err = CayleyTable::validate(&[vec![1, 0], vec![0, 0]]).unwrap_err();
        assert_eq!(err, TableError::Associativity { i: 0, j: 0, k: 1 });
        let raw = [[1usize, 0], [0, 0]];
        assert_ne!(raw[raw[0][0]][1], raw[0][raw[0][1]]);
    }

    #[test]
    fn sixteen_binary_tables() {
        let mut associative = 0;
        for code in 0..16usize {
            let cells: Vec<usize> = (0..4).map(|b| (code >> b) & 1).collect();
            match CayleyTable::from_cells(2, cells.clone()) {
                Ok(_) => associative += 1,
                Err(TableError::Associativity { i, j, k }) => {
                    let m = |a: usize, b: usize| cells[a * 2 + b];
                    assert_ne!(m(m(i, j), k), m(i, m(j, k)));
                }
                Err(e) => panic!("{e}"),
            }
        }
        assert_eq!(associative, 8);
    }

    #[test]
    fn range_and_shape_errors() {
        assert!(matches!(
            CayleyTable::validate(&[vec![0, 2], vec![0, 0]]),
            Err(TableError::Range {
                row: 0,
                col: 1,
                value: 2,
                ..
            })
        ));
        assert!(matches!(
            CayleyTable::validate(&[vec![0, 0], vec![0]]),
            Err(TableError::Shape { row: 1, .. })
        ));
        assert_eq!(CayleyTable::validate(&[]), Err(TableError::Empty));
    }

    #[test]
    fn light_test_on_large_tables() {
        let t = zoo::build_t(4).unwrap().table;
        assert!(t.order() < FULL_SCAN_ORDER);
        let big = zoo::build_ufree(8).unwrap().table;
        assert_eq!(big.order(), 256);
        // Break one cell of a large table and expect a genuine violation.
        let mut cells = big.cells().to_vec();
        cells[3 * 256 + 5] = 7;
        match CayleyTable::from_cells(256, cells.clone()) {
            Err(TableError::Associativity { i, j, k }) => {
                let m = |a: usize, b: usize| cells[a * 256 + b];
                assert_ne!(m(m(i, j), k), m(i, m(j, k)));
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn omega_power_examples() {
        let c3 = c(3);
        assert_eq!(c3.omega_power(0), 2);
        assert_eq!(c3.omega_plus(0, 1), 2);
        let t2 = zoo::build_t(2).unwrap().table;
        let a1 = t2.element_by_label("a1").unwrap();
        assert_eq!(Some(t2.omega_power(a1)), t2.zero());
        let v = zoo::build_v(1, 2).unwrap().table;
        let b = v.element_by_label("b").unwrap();
        assert_eq!(Some(v.omega_plus(b, 1)), v.zero());
        for e in t2.idempotents().iter() {
            assert_eq!(t2.omega_plus(e, 1), e);
        }
    }

    #[test]
    fn omega_commutes_and_is_idempotent() {
        for t in [c(5), zoo::build_rees(3, [[0, 0], [0, 1]]).unwrap().table] {
            for s in 0..t.order() {
                let w = t.omega_power(s);
                assert_eq!(t.mul(w, w), w);
                assert_eq!(t.mul(w, s), t.mul(s, w));
                assert_eq!(t.mul(w, s), t.omega_plus(s, 1));
                assert_eq!(t.omega_plus(s, 3), t.mul(t.mul(t.omega_plus(s, 1), s), s));
            }
        }
    }

    #[test]
    fn distinguished_sets() {
        let t2 = zoo::build_t(2).unwrap().table;
        let zero = t2.zero().unwrap();
        assert_eq!(t2.idempotents().to_vec(), vec![zero]);
        assert_eq!(t2.completely_regular().to_vec(), vec![zero]);
        let c3 = c(3);
        assert_eq!(c3.completely_regular().to_vec(), vec![2]);
        let w2 = zoo::build_w(2).unwrap().table;
        let idem: Vec<&str> = w2.idempotents().iter().map(|e| w2.label(e)).collect();
        assert_eq!(idem, ["aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn set_products_and_powers() {
        let t2 = zoo::build_t(2).unwrap().table;
        let l = |s: &str| t2.element_by_label(s).unwrap();
        let a1 = ElementSet::from_elements(5, [l("a1")]);
        let a2 = ElementSet::from_elements(5, [l("a2")]);
        assert_eq!(t2.set_product(&a1, &a2).to_vec(), vec![l("a1a2")]);
        assert!(t2.set_product(&ElementSet::empty(5), &a2).is_empty());
        assert_eq!(t2.power_ideal(1), t2.all());
        assert_eq!(t2.power_ideal(3).to_vec(), vec![l("0")]);
        assert_eq!(c(3).power_ideal(3).to_vec(), vec![2]);
        let w2 = zoo::build_w(2).unwrap().table;
        let a = ElementSet::from_elements(6, [w2.element_by_label("a").unwrap()]);
        let b = ElementSet::from_elements(6, [w2.element_by_label("b").unwrap()]);
        assert_eq!(
            w2.set_product(&a, &b).to_vec(),
            vec![w2.element_by_label("ab").unwrap()]
        );
        for n in 2..5 {
            assert_eq!(
                t2.power_ideal(n),
                t2.set_product(&t2.power_ideal(n - 1), &t2.all())
            );
        }
    }

    #[test]
    fn direct_products() {
        let trivial = CayleyTable::validate(&[vec![0]]).unwrap();
        let t2 = zoo::build_t(2).unwrap().table;
        assert!(t2
            .direct_product(&trivial)
            .unwrap()
            .is_isomorphic(&t2, crate::IsoMode::Plain));
        let c2 = c(2);
        let cc = c2.direct_product(&c2).unwrap();
        assert_eq!(cc.order(), 4);
        let p = t2.direct_product(&c2).unwrap();
        let idem: Vec<&str> = p.idempotents().iter().map(|e| p.label(e)).collect();
        assert_eq!(idem, ["(0,a^2)"]);
        let big = zoo::build_ufree(6).unwrap().table;
        assert!(matches!(
            big.direct_product(&big),
            Err(TableError::TooLarge { .. })
        ));
    }

    #[test]
    fn subsemigroups() {
        let t2 = zoo::build_t(2).unwrap().table;
        assert_eq!(t2.subsemigroup(&t2.all()).unwrap().table, t2);
        let a1 = ElementSet::from_elements(5, [t2.element_by_label("a1").unwrap()]);
        let sub = t2.subsemigroup(&a1).unwrap();
        assert_eq!(sub.table.order(), 2);
        assert_eq!(sub.table.labels(), ["a1", "0"]);
        let null2 = CayleyTable::validate(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(sub.table.is_isomorphic(&null2, crate::IsoMode::Plain));
        let w2 = zoo::build_w(2).unwrap().table;
        let a = ElementSet::from_elements(6, [w2.element_by_label("a").unwrap()]);
        assert_eq!(w2.subsemigroup(&a).unwrap().table.labels(), ["a", "aa"]);
        assert_eq!(
            t2.subsemigroup(&ElementSet::empty(5)).unwrap_err(),
            TableError::NoGenerators
        );
    }

    #[test]
    fn declared_zero_and_identity() {
        let n1 = zoo::build_n1().table;
        assert!(n1.declare_zero(n1.element_by_label("0").unwrap()).is_ok());
        assert!(n1
            .declare_identity(n1.element_by_label("1").unwrap())
            .is_ok());
        assert_eq!(n1.declare_zero(0), Err(TableError::NotAZero(0)));
    }
}
