//! Concrete semigroups and identity presets.
//!
//! Element orders are fixed so that tables are stable across runs:
//!
//! * `T_k`: injective words by length, then lexicographically, then `0`.
//! * `Ω_k(U)`: nonempty subsets by size, then by bitmask value, then `0`.
//! * `W_k`: words by length, then lexicographically (`a < b`).
//! * `V_{k,n}`: `a, a^2, …, a^n`, then `b, ba, …, ba^(n-k)`, then `0`.
//! * `C_r`: `a, a^2, …, a^r`.
//! * `K_p`: triples `(i,g,j)` in lexicographic order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::classify::{acr_identity, perm_identity};
use crate::eval::CompiledIdentity;
use crate::parse::parse_identity;
use crate::perm::Permutation;
use crate::table::{CayleyTable, TableError, MAX_ORDER};
use crate::term::{indexed_vars, Identity, Term};
use crate::transform::expand_all;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZooError {
    #[error("parameter {name} = {value} is outside {min}..={max}")]
    SizeGuard {
        name: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },
    #[error("{0} is not a prime")]
    NotPrime(usize),
    #[error("unknown preset or model: {0}")]
    UnknownPreset(String),
    #[error("bad parameters: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// A table together with the parameters that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledModel {
    pub name: String,
    pub table: CayleyTable,
    pub parameters: BTreeMap<String, i64>,
    /// Short description of the construction.
    pub provenance: String,
}

impl LabeledModel {
    fn new(name: String, table: CayleyTable, params: &[(&str, usize)], provenance: &str) -> Self {
        LabeledModel {
            name,
            table,
            parameters: params
                .iter()
                .map(|&(k, v)| (k.to_string(), v as i64))
                .collect(),
            provenance: provenance.to_string(),
        }
    }
}

fn guard(name: &'static str, value: usize, min: usize, max: usize) -> Result<(), ZooError> {
    if (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(ZooError::SizeGuard {
            name,
            value: value as i64,
            min: min as i64,
            max: max as i64,
        })
    }
}

fn build(
    order: usize,
    labels: Vec<String>,
    mut mul: impl FnMut(usize, usize) -> usize,
) -> Result<CayleyTable, TableError> {
    let mut cells = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            cells.push(mul(a, b));
        }
    }
    CayleyTable::from_flat(order, cells, labels)
}

fn power_label(base: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{e}"),
    }
}

/// Nonempty injective words over `a1 … ak` with zero; products that repeat
/// a letter are zero.
pub fn build_t(k: usize) -> Result<LabeledModel, ZooError> {
    guard("k", k, 1, 6)?;
    let mut words: Vec<Vec<u8>> = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for w in &layer {
            for letter in 0..k as u8 {
                if !w.contains(&letter) {
                    let mut v = w.clone();
                    v.push(letter);
                    next.push(v);
                }
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    let zero = words.len();
    let index: BTreeMap<&[u8], usize> =
        words.iter().enumerate().map(|(i, w)| (&w[..], i)).collect();
    let masks: Vec<u32> = words
        .iter()
        .map(|w| w.iter().fold(0, |m, &l| m | 1 << l))
        .collect();
    let mut labels: Vec<String> = words
        .iter()
        .map(|w| w.iter().map(|l| format!("a{}", l + 1)).collect())
        .collect();
    labels.push(String::from("0"));
    let mut buf = Vec::with_capacity(k);
    let table = build(zero + 1, labels, |a, b| {
        if a == zero || b == zero || masks[a] & masks[b] != 0 {
            return zero;
        }
        buf.clear();
        buf.extend_from_slice(&words[a]);
        buf.extend_from_slice(&words[b]);
        index[&buf[..]]
    })?;
    Ok(LabeledModel::new(
        format!("T{k}"),
        table,
        &[("k", k)],
        "injective words over k letters, zero for repeated letters",
    ))
}

/// Nonempty subsets of `{1 … k}` with zero; the product is the union of
/// disjoint sets and zero otherwise.
pub fn build_ufree(k: usize) -> Result<LabeledModel, ZooError> {
    guard("k", k, 1, 10)?;
    let mut masks: Vec<u32> = (1..1u32 << k).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let zero = masks.len();
    let mut index = vec![0; 1 << k];
    for (i, &m) in masks.iter().enumerate() {
        index[m as usize] = i;
    }
    let mut labels: Vec<String> = masks
        .iter()
        .map(|&m| {
            let members: Vec<String> = (0..k)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| (i + 1).to_string())
                .collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    labels.push(String::from("0"));
    let table = build(zero + 1, labels, |a, b| {
        if a == zero || b == zero || masks[a] & masks[b] != 0 {
            zero
        } else {
            index[(masks[a] | masks[b]) as usize]
        }
    })?;
    Ok(LabeledModel::new(
        format!("U{k}"),
        table,
        &[("k", k)],
        "commutative quotient of injective words: disjoint unions of subsets with zero",
    ))
}

/// Nonempty words over `{a, b}` of length at most `k`; the product keeps
/// the first `k` letters of the concatenation.
pub fn build_w(k: usize) -> Result<LabeledModel, ZooError> {
    guard("k", k, 1, 6)?;
    // (length, bits) with the first letter in the highest bit, `b` = 1.
    let mut words: Vec<(usize, u32)> = Vec::new();
    for len in 1..=k {
        for bits in 0..1u32 << len {
            words.push((len, bits));
        }
    }
    let offset = |len: usize| (1usize << len) - 2;
    let labels = words
        .iter()
        .map(|&(len, bits)| {
            (0..len)
                .rev()
                .map(|i| if bits >> i & 1 == 1 { 'b' } else { 'a' })
                .collect()
        })
        .collect();
    let table = build(words.len(), labels, |x, y| {
        let (lx, bx) = words[x];
        let (ly, by) = words[y];
        let keep = ly.min(k - lx);
        let len = lx + keep;
        let bits = (bx << keep) | (by >> (ly - keep));
        offset(len) + bits as usize
    })?;
    Ok(LabeledModel::new(
        format!("W{k}"),
        table,
        &[("k", k)],
        "words over {a,b} truncated to length k",
    ))
}

/// `⟨a, b : a^n = a^(n+1), ab = b, ba^(n-k+1) = 0⟩`.
pub fn build_v(k: usize, n: usize) -> Result<LabeledModel, ZooError> {
    guard("n", n, 1, 8)?;
    guard("k", k, 1, n)?;
    let tail = n - k; // largest r with ba^r nonzero
    let zero = n + tail + 1;
    // a^i is i-1, ba^r is n+r
    let mut labels: Vec<String> = (1..=n).map(|i| power_label("a", i)).collect();
    labels.extend((0..=tail).map(|r| format!("b{}", power_label("a", r))));
    labels.push(String::from("0"));
    let table = build(zero + 1, labels, |x, y| {
        if x == zero || y == zero {
            return zero;
        }
        match (x < n, y < n) {
            (true, true) => (x + 1 + y + 1).min(n) - 1,
            (true, false) => y,
            (false, true) => {
                let r = x - n + y + 1;
                if r <= tail {
                    n + r
                } else {
                    zero
                }
            }
            (false, false) => zero,
        }
    })?;
    Ok(LabeledModel::new(
        format!("V{k},{n}"),
        table,
        &[("k", k), ("n", n)],
        "a^n = a^(n+1), ab = b, ba^(n-k+1) = 0",
    ))
}

/// The monogenic semigroup `⟨a : a^r = a^(r+1)⟩`.
pub fn build_c(r: usize) -> Result<LabeledModel, ZooError> {
    guard("r", r, 1, MAX_ORDER)?;
    let labels = (1..=r).map(|i| power_label("a", i)).collect();
    let table = build(r, labels, |x, y| (x + y + 1).min(r - 1))?;
    Ok(LabeledModel::new(
        format!("C{r}"),
        table,
        &[("r", r)],
        "monogenic semigroup a^r = a^(r+1)",
    ))
}

/// The monoid `{1, n, 0}` with `n² = 0`.
pub fn build_n1() -> LabeledModel {
    let rows = [vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]];
    let labels = ["1", "n", "0"].map(String::from).to_vec();
    let table = CayleyTable::with_labels(&rows, labels).expect("N1 is a monoid");
    debug_assert!(Preset::VN1
        .identities()
        .iter()
        .all(|id| table.satisfies(id).holds()));
    LabeledModel::new(
        String::from("N1"),
        table,
        &[],
        "null semigroup {n, 0} with identity adjoined",
    )
}

/// The Rees matrix semigroup over `Z/pZ` with 2×2 index sets and sandwich
/// matrix `sandwich` (entries reduced mod `p`).
pub fn build_rees(p: usize, sandwich: [[i64; 2]; 2]) -> Result<LabeledModel, ZooError> {
    guard("p", p, 2, 13)?;
    if !(2..p).all(|d| !p.is_multiple_of(d)) {
        return Err(ZooError::NotPrime(p));
    }
    let pm = p as i64;
    let sw = sandwich.map(|row| row.map(|v| v.rem_euclid(pm) as usize));
    let index = |i: usize, g: usize, j: usize| (i * p + g) * 2 + j;
    let decode = |e: usize| (e / (2 * p), e / 2 % p, e % 2);
    let order = 4 * p;
    let labels = (0..order)
        .map(|e| {
            let (i, g, j) = decode(e);
            format!("({},{},{})", i + 1, g, j + 1)
        })
        .collect();
    let table = build(order, labels, |x, y| {
        let (i, g, j) = decode(x);
        let (k, h, l) = decode(y);
        index(i, (g + sw[j][k] + h) % p, l)
    })?;
    let mut model = LabeledModel::new(
        format!("K{p}"),
        table,
        &[("p", p)],
        "Rees matrix semigroup over Z/pZ with 2x2 sandwich matrix",
    );
    for (r, row) in sw.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            model
                .parameters
                .insert(format!("P{}{}", r + 1, c + 1), *v as i64);
        }
    }
    Ok(model)
}

/// `S¹`: `S` with a new neutral element appended as the last element.
pub fn adjoin_identity(s: &CayleyTable) -> Result<CayleyTable, TableError> {
    let m = s.order();
    let mut label = String::from("1");
    while s.element_by_label(&label).is_some() {
        label.push('\'');
    }
    let mut labels = s.labels().to_vec();
    labels.push(label);
    build(m + 1, labels, |a, b| {
        if a == m {
            b
        } else if b == m {
            a
        } else {
            s.mul(a, b)
        }
    })
}

/// The largest quotient of `s` satisfying `ids`: the congruence generated by
/// `(lhs(α), rhs(α))` over every assignment `α`.
pub fn free_quotient(s: &CayleyTable, ids: &[Identity]) -> Result<LabeledModel, ZooError> {
    let expanded = expand_all(ids);
    let mut pairs = Vec::new();
    let m = s.order();
    for c in expanded.iter().flat_map(CompiledIdentity::new) {
        let n = c.arity();
        let mut values = vec![0; n];
        'sweep: loop {
            let (l, r) = c.sides(s, &values);
            if l != r {
                pairs.push((l, r));
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break 'sweep;
                }
                i -= 1;
                values[i] += 1;
                if values[i] < m {
                    break;
                }
                values[i] = 0;
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let congruence = s.congruence_closure(&pairs);
    let table = s.quotient(&congruence)?;
    assert!(
        table.satisfies_all(&expanded),
        "quotient must satisfy the identities"
    );
    let names: Vec<String> = ids.iter().map(|id| format!("{id}")).collect();
    Ok(LabeledModel {
        name: format!("quotient by {{{}}}", names.join(", ")),
        table,
        parameters: BTreeMap::new(),
        provenance: String::from("largest quotient satisfying the given identities"),
    })
}

/// Named identity sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    T,
    U,
    N(usize),
    K(usize),
    Perm,
    Medial,
    Lrb,
    Rrb,
    Acr { n: usize, i: usize, j: usize },
    P { n: usize, sigma: Permutation },
    VN1,
    VY,
    VQ,
}

fn ids(lines: &[&str]) -> Vec<Identity> {
    lines
        .iter()
        .map(|l| parse_identity(l).expect("preset identity"))
        .collect()
}

impl Preset {
    /// The identities as displayed, zero-forms unexpanded.
    pub fn identities(&self) -> Vec<Identity> {
        match self {
            Preset::T => ids(&["x y x = 0", "x x = 0"]),
            Preset::U => ids(&["x y = y x", "x x = 0"]),
            Preset::N(k) => {
                let vars = indexed_vars("x", *k);
                vec![Identity::zero_form(Term::concat(
                    vars.into_iter().map(Term::Var),
                ))]
            }
            Preset::K(k) => {
                let word = Term::concat(indexed_vars("x", *k).into_iter().map(Term::Var));
                let longer = Term::concat([word.clone(), Term::var("y")]);
                vec![Identity::new(word, longer)]
            }
            Preset::Perm => ids(&["x^w y1 y2 z^w = x^w y2 y1 z^w"]),
            Preset::Medial => ids(&["x y1 y2 z = x y2 y1 z"]),
            Preset::Lrb => ids(&["x x = x", "x y x = x y"]),
            Preset::Rrb => ids(&["x x = x", "x y x = y x"]),
            Preset::Acr { n, i, j } => vec![acr_identity(*n, *i, *j).expect("validated indices")],
            Preset::P { n, sigma } => {
                vec![perm_identity(*n, sigma).expect("validated permutation")]
            }
            Preset::VN1 => ids(&["x x x = x x", "x x y = x y x", "x y x = y x x"]),
            Preset::VY => ids(&["x x x = x x", "x x y y = x y x", "x y x = y y x x"]),
            Preset::VQ => ids(&[
                "x x x = x x",
                "x x y x x = x y x",
                "y1 y1 x y2 y2 = y1 y1 x y2 y2",
                "x y1 x y2 x = x y2 x y1 x",
            ]),
        }
    }

    /// The identities with zero-forms expanded.
    pub fn expanded(&self) -> Vec<Identity> {
        expand_all(&self.identities())
    }

    /// Displayed identities whose two sides coincide; kept verbatim.
    pub fn trivial_as_printed(&self) -> Vec<Identity> {
        self.identities()
            .into_iter()
            .filter(Identity::is_trivial)
            .collect()
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::T => f.write_str("T"),
            Preset::U => f.write_str("U"),
            Preset::N(k) => write!(f, "N({k})"),
            Preset::K(k) => write!(f, "K({k})"),
            Preset::Perm => f.write_str("Perm"),
            Preset::Medial => f.write_str("Medial"),
            Preset::Lrb => f.write_str("LRB"),
            Preset::Rrb => f.write_str("RRB"),
            Preset::Acr { n, i, j } => write!(f, "ACR({n},{i},{j})"),
            Preset::P { n, sigma } => write!(f, "P({n},{sigma})"),
            Preset::VN1 => f.write_str("VN1"),
            Preset::VY => f.write_str("VY"),
            Preset::VQ => f.write_str("VQ"),
        }
    }
}

/// Splits `Name(a,b,…)` into the name and its comma-separated arguments.
/// Commas inside brackets or parentheses do not split.
fn split_call(text: &str) -> Result<(&str, Vec<&str>), ZooError> {
    let text = text.trim();
    let Some(open) = text.find('(') else {
        return Ok((text, Vec::new()));
    };
    let body = text[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| ZooError::BadParameter(text.to_string()))?;
    let mut args = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in body.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                args.push(body[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    args.push(body[start..].trim());
    Ok((text[..open].trim(), args))
}

fn numbers<const N: usize>(call: &str, args: &[&str]) -> Result<[usize; N], ZooError> {
    let bad = || ZooError::BadParameter(format!("{call} expects {N} integer argument(s)"));
    if args.len() != N {
        return Err(bad());
    }
    let mut out = [0; N];
    for (slot, a) in out.iter_mut().zip(args) {
        *slot = a.parse().map_err(|_| bad())?;
    }
    Ok(out)
}

impl FromStr for Preset {
    type Err = ZooError;

    /// Names: `T`, `U`, `N(k)`, `K(k)`, `Perm`, `Medial`, `LRB`, `RRB`,
    /// `ACR(n,i,j)`, `P(n,σ)` (σ as `[2,1,3]` or `(1 2)`), `VN1`, `VY`,
    /// `VQ`. Names are case-insensitive.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (name, args) = split_call(text)?;
        let upper = name.to_ascii_uppercase();
        let no_args = |p: Preset| {
            if args.is_empty() {
                Ok(p)
            } else {
                Err(ZooError::BadParameter(format!("{name} takes no arguments")))
            }
        };
        match upper.as_str() {
            "T" => no_args(Preset::T),
            "U" => no_args(Preset::U),
            "PERM" => no_args(Preset::Perm),
            "MEDIAL" => no_args(Preset::Medial),
            "LRB" => no_args(Preset::Lrb),
            "RRB" => no_args(Preset::Rrb),
            "VN1" => no_args(Preset::VN1),
            "VY" => no_args(Preset::VY),
            "VQ" => no_args(Preset::VQ),
            "N" | "K" => {
                let [k] = numbers::<1>(name, &args)?;
                guard("k", k, 1, 16)?;
                Ok(if upper == "N" {
                    Preset::N(k)
                } else {
                    Preset::K(k)
                })
            }
            "ACR" => {
                let [n, i, j] = numbers::<3>(name, &args)?;
                acr_identity(n, i, j).map_err(|e| ZooError::BadParameter(e.to_string()))?;
                Ok(Preset::Acr { n, i, j })
            }
            "P" => {
                if args.len() != 2 {
                    return Err(ZooError::BadParameter(String::from("P expects (n, σ)")));
                }
                let [n] = numbers::<1>(name, &args[..1])?;
                let sigma = Permutation::parse_with_degree(args[1], Some(n))
                    .map_err(|e| ZooError::BadParameter(e.to_string()))?;
                perm_identity(n, &sigma).map_err(|e| ZooError::BadParameter(e.to_string()))?;
                Ok(Preset::P { n, sigma })
            }
            _ => Err(ZooError::UnknownPreset(text.trim().to_string())),
        }
    }
}

/// Builds a model from a textual description: `T(k)`, `U(k)`, `W(k)`,
/// `V(k,n)`, `C(r)`, `N1`, `K(p)` (default sandwich matrix) or
/// `K(p,a,b,c,d)`. Names are case-insensitive.
pub fn build_named(text: &str) -> Result<LabeledModel, ZooError> {
    let (name, args) = split_call(text)?;
    match name.to_ascii_uppercase().as_str() {
        "T" => build_t(numbers::<1>(name, &args)?[0]),
        "U" | "OMEGA" => build_ufree(numbers::<1>(name, &args)?[0]),
        "W" => build_w(numbers::<1>(name, &args)?[0]),
        "V" => {
            let [k, n] = numbers::<2>(name, &args)?;
            build_v(k, n)
        }
        "C" => build_c(numbers::<1>(name, &args)?[0]),
        "N1" if args.is_empty() => Ok(build_n1()),
        "K" | "REES" => match args.len() {
            1 => build_rees(numbers::<1>(name, &args)?[0], [[0, 0], [0, 1]]),
            5 => {
                let [p, a, b, c, d] = numbers::<5>(name, &args)?;
                let m = [[a as i64, b as i64], [c as i64, d as i64]];
                build_rees(p, m)
            }
            _ => Err(ZooError::BadParameter(String::from(
                "K expects (p) or (p,a,b,c,d)",
            ))),
        },
        _ => Err(ZooError::UnknownPreset(text.trim().to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_identity, IsoMode};

    fn id(s: &str) -> Identity {
        parse_identity(s).unwrap()
    }

    fn falling(k: usize) -> usize {
        // 1 + Σ k!/(k-m)!
        let mut total = 1;
        let mut term = 1;
        for m in 0..k {
            term *= k - m;
            total += term;
        }
        total
    }

    #[test]
    fn t_sizes_and_products() {
        for k in 1..=5 {
            assert_eq!(build_t(k).unwrap().table.order(), falling(k));
        }
        assert_eq!(
            [1, 2, 3, 4].map(|k| build_t(k).unwrap().table.order()),
            [2, 5, 16, 65]
        );
        let t2 = build_t(2).unwrap().table;
        let e = |l: &str| t2.element_by_label(l).unwrap();
        assert_eq!(t2.mul(e("a1"), e("a2")), e("a1a2"));
        assert_eq!(t2.mul(e("a1a2"), e("a2")), e("0"));
        assert_eq!(t2.zero(), Some(e("0")));
        assert_eq!(t2.labels(), ["a1", "a2", "a1a2", "a2a1", "0"]);
        assert!(build_t(7).is_err());
        assert!(build_t(0).is_err());
    }

    #[test]
    fn t3_lies_in_t_and_is_four_nilpotent() {
        let t3 = build_t(3).unwrap().table;
        assert!(t3.satisfies_all(&Preset::T.expanded()));
        assert!(t3.satisfies_all(&expand_all(&[id("x1 x2 x3 x4 = 0")])));
        assert!(!t3.satisfies_all(&expand_all(&[id("x1 x2 x3 = 0")])));
    }

    #[test]
    fn ufree_sizes_and_identities() {
        assert_eq!(
            [1, 2, 3].map(|k| build_ufree(k).unwrap().table.order()),
            [2, 4, 8]
        );
        let u3 = build_ufree(3).unwrap().table;
        assert_eq!(u3.labels()[..4], ["{1}", "{2}", "{3}", "{1,2}"]);
        assert!(u3.satisfies_all(&Preset::U.expanded()));
        let e = |l: &str| u3.element_by_label(l).unwrap();
        let p = u3.product([e("{1}"), e("{2}"), e("{3}")]).unwrap();
        assert_eq!(u3.label(p), "{1,2,3}");
        assert!(!u3.satisfies_all(&expand_all(&[id("x1 x2 x3 = 0")])));
    }

    #[test]
    fn w_sizes_and_truncation() {
        assert_eq!(
            [1, 2, 3].map(|k| build_w(k).unwrap().table.order()),
            [2, 6, 14]
        );
        let w2 = build_w(2).unwrap().table;
        assert_eq!(w2.labels(), ["a", "b", "aa", "ab", "ba", "bb"]);
        let e = |l: &str| w2.element_by_label(l).unwrap();
        assert_eq!(w2.mul(e("a"), e("ba")), e("ab"));
        assert_eq!(w2.mul(e("ab"), e("b")), e("ab"));
        assert!(w2.satisfies(&id("x1 x2 = x1 x2 y")).holds());
        let w3 = build_w(3).unwrap().table;
        let e3 = |l: &str| w3.element_by_label(l).unwrap();
        assert_eq!(w3.mul(e3("ab"), e3("ba")), e3("abb"));
    }

    #[test]
    fn v_sizes_and_products() {
        for n in 1..=4 {
            for k in 1..=n {
                assert_eq!(build_v(k, n).unwrap().table.order(), 2 * n - k + 2);
            }
        }
        let v = build_v(1, 2).unwrap().table;
        assert_eq!(v.labels(), ["a", "a^2", "b", "ba", "0"]);
        let e = |l: &str| v.element_by_label(l).unwrap();
        assert_eq!(v.mul(e("b"), e("a")), e("ba"));
        assert_eq!(v.mul(e("ba"), e("a")), e("0"));
        assert_eq!(v.mul(e("a"), e("b")), e("b"));
        assert_eq!(v.omega_power(e("b")), e("0"));
        let w = v
            .satisfies(&acr_identity(2, 1, 1).unwrap())
            .witness()
            .cloned()
            .expect("V_{1,2} fails ACR(2,1,1)");
        let labels: Vec<&str> = w.assignment.iter().map(|(_, x)| v.label(*x)).collect();
        assert_eq!(labels, ["b", "a"]);
        assert_eq!((v.label(w.lhs_value), v.label(w.rhs_value)), ("ba", "0"));
        assert!(build_v(3, 2).is_err());
    }

    #[test]
    fn monogenic() {
        let c1 = build_c(1).unwrap().table;
        assert_eq!(c1.order(), 1);
        let c3 = build_c(3).unwrap().table;
        assert_eq!(c3.labels(), ["a", "a^2", "a^3"]);
        for n in 1..=3 {
            let cn = build_c(n + 1).unwrap().table;
            for sigma in Permutation::all(n).into_iter().filter(|p| !p.is_identity()) {
                assert!(cn.satisfies(&perm_identity(n, &sigma).unwrap()).holds());
            }
        }
        let acr = acr_identity(2, 1, 1).unwrap();
        assert!(!c3.satisfies(&acr).holds());
        assert!(build_c(2).unwrap().table.satisfies(&acr).holds());
    }

    #[test]
    fn n1_monoid() {
        let n1 = build_n1().table;
        assert_eq!(n1.identity(), n1.element_by_label("1"));
        assert_eq!(n1.zero(), n1.element_by_label("0"));
        assert!(n1.satisfies(&id("x x x = x x")).holds());
        assert!(n1.is_commutative());
        let w = n1.satisfies(&id("x x = x")).witness().cloned().unwrap();
        assert_eq!(n1.label(w.assignment[0].1), "n");
        let t2 = build_t(2).unwrap().table;
        assert!(t2.satisfies_all(&Preset::VN1.identities()));
    }

    #[test]
    fn rees_matrix() {
        for p in [2, 3, 5] {
            let k = build_rees(p, [[0, 0], [0, 1]]).unwrap();
            assert_eq!(k.table.order(), 4 * p);
        }
        let k2 = build_rees(2, [[0, 0], [0, 1]]).unwrap().table;
        assert!(!k2.is_commutative());
        assert!(matches!(
            build_rees(4, [[0, 0], [0, 1]]),
            Err(ZooError::NotPrime(4))
        ));
        assert!(build_rees(17, [[0, 0], [0, 1]]).is_err());
        assert_eq!(k2.completely_regular().len(), 8);
    }

    #[test]
    fn presets() {
        assert_eq!(Preset::T.expanded().len(), 4);
        assert_eq!(
            Preset::Perm.identities(),
            [id("x^w y1 y2 z^w = x^w y2 y1 z^w")]
        );
        let vq: Preset = "VQ".parse().unwrap();
        assert_eq!(vq.trivial_as_printed(), [id("y1^2 x y2^2 = y1^2 x y2^2")]);
        assert!(Preset::VY.trivial_as_printed().is_empty());
        assert_eq!("n(3)".parse::<Preset>().unwrap(), Preset::N(3));
        assert_eq!(
            "K(2)".parse::<Preset>().unwrap().identities(),
            [id("x1 x2 = x1 x2 y")]
        );
        assert_eq!(
            "ACR(3,1,2)".parse::<Preset>().unwrap().identities(),
            [id("x1 x2 x3 = (x1 x2)^(w+1) x3")]
        );
        let p = "P(3,(1 2))".parse::<Preset>().unwrap();
        assert_eq!(p.identities(), [id("x1 x2 x3 = x2 x1 x3")]);
        assert_eq!(p.to_string().parse::<Preset>().unwrap(), p);
        assert!(matches!(
            "Foo".parse::<Preset>(),
            Err(ZooError::UnknownPreset(_))
        ));
        assert!("ACR(2,2,1)".parse::<Preset>().is_err());
        assert!("P(3,[1,2,3])".parse::<Preset>().is_err());
    }

    #[test]
    fn named_models() {
        assert_eq!(build_named("T(3)").unwrap().table.order(), 16);
        assert_eq!(build_named("v(1,2)").unwrap().table.order(), 5);
        assert_eq!(build_named("N1").unwrap().table.order(), 3);
        assert_eq!(
            build_named("K(3,0,0,0,1)").unwrap(),
            build_rees(3, [[0, 0], [0, 1]]).unwrap()
        );
        assert!(build_named("X(1)").is_err());
        assert!(build_named("T(a)").is_err());
    }

    #[test]
    fn identity_adjunction() {
        let trivial = CayleyTable::validate(&[vec![0]]).unwrap();
        let chain = adjoin_identity(&trivial).unwrap();
        assert_eq!(chain.order(), 2);
        assert!(chain.satisfies_all(&[id("x x = x"), id("x y = y x")]));
        let null = CayleyTable::validate(&[vec![1, 1], vec![1, 1]]).unwrap();
        let n1 = adjoin_identity(&null).unwrap();
        assert!(n1.is_isomorphic(&build_n1().table, IsoMode::Plain));
        let t2 = build_t(2).unwrap().table;
        assert_eq!(adjoin_identity(&t2).unwrap().order(), 6);
    }

    #[test]
    fn free_quotients() {
        let t2 = build_t(2).unwrap().table;
        assert_eq!(free_quotient(&t2, &[id("x = x")]).unwrap().table, t2);
        let c2 = build_c(2).unwrap().table;
        assert_eq!(
            free_quotient(&c2, &[id("x = x x")]).unwrap().table.order(),
            1
        );
        let t3 = build_t(3).unwrap().table;
        let swap12 = id("x1 x2 x3 = x2 x1 x3");
        let q = free_quotient(&t3, std::slice::from_ref(&swap12))
            .unwrap()
            .table;
        assert!(q.satisfies(&swap12).holds());
        assert!(!q.satisfies(&id("x1 x2 x3 = x3 x2 x1")).holds());
    }
}
