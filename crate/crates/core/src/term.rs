use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A variable name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub String);

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var(String::from(s))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An ω-term: variables, concatenation and `ω+k` powers.
///
/// Finite powers are plain repetition inside a `Concat`. Build terms through
/// [`Term::concat`] and [`Term::power`] to keep the `Concat` lists flat.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Var),
    /// At least two factors, none of them a `Concat`.
    Concat(Vec<Term>),
    /// `base^(ω+k)`.
    Power(Box<Term>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("variable {0} has no value")]
    UnboundVariable(Var),
    #[error("identity has a zero right-hand side")]
    ZeroForm,
    #[error("identity is not finite")]
    NotFinite,
    #[error("{assignments} assignments exceed the budget of {budget}")]
    TooExpensive { assignments: u128, budget: u128 },
    #[error("expected a power node")]
    NotAPower,
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Var::from(name))
    }

    /// Concatenation, flattening nested `Concat`s. A single factor is
    /// returned as is.
    ///
    /// # Panics
    /// If `factors` is empty.
    pub fn concat<I: IntoIterator<Item = Term>>(factors: I) -> Term {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                Term::Concat(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => panic!("empty concatenation"),
            1 => flat.pop().unwrap(),
            _ => Term::Concat(flat),
        }
    }

    pub fn power(base: Term, k: u32) -> Term {
        Term::Power(Box::new(base), k)
    }

    /// A finite word over the given variable names.
    pub fn word<'a, I: IntoIterator<Item = &'a str>>(names: I) -> Term {
        Term::concat(names.into_iter().map(Term::var))
    }

    /// The factors of a top-level concatenation (a single factor otherwise).
    pub fn factors(&self) -> &[Term] {
        match self {
            Term::Concat(fs) => fs,
            other => core::slice::from_ref(other),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Concat(fs) => fs.iter().all(Term::is_finite),
            Term::Power(..) => false,
        }
    }

    /// The letters of a finite term, left to right.
    pub fn letters(&self) -> Option<Vec<&Var>> {
        let mut out = Vec::new();
        fn walk<'a>(t: &'a Term, out: &mut Vec<&'a Var>) -> bool {
            match t {
                Term::Var(v) => {
                    out.push(v);
                    true
                }
                Term::Concat(fs) => fs.iter().all(|f| walk(f, out)),
                Term::Power(..) => false,
            }
        }
        walk(self, &mut out).then_some(out)
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Concat(fs) => fs.iter().for_each(|f| f.collect_vars(out)),
            Term::Power(b, _) => b.collect_vars(out),
        }
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::Concat(fs) => fs.iter().any(|f| f.contains_var(v)),
            Term::Power(b, _) => b.contains_var(v),
        }
    }

    /// Re-flattens a term built without the smart constructors.
    pub fn normalized(&self) -> Term {
        match self {
            Term::Var(_) => self.clone(),
            Term::Concat(fs) => Term::concat(fs.iter().map(Term::normalized)),
            Term::Power(b, k) => Term::power(b.normalized(), *k),
        }
    }

    pub fn first_var(&self) -> &Var {
        match self {
            Term::Var(v) => v,
            Term::Concat(fs) => fs[0].first_var(),
            Term::Power(b, _) => b.first_var(),
        }
    }

    pub fn last_var(&self) -> &Var {
        match self {
            Term::Var(v) => v,
            Term::Concat(fs) => fs[fs.len() - 1].last_var(),
            Term::Power(b, _) => b.last_var(),
        }
    }

    /// Renames variables; names missing from `map` are kept.
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Term {
        match self {
            Term::Var(v) => Term::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            Term::Concat(fs) => Term::Concat(fs.iter().map(|f| f.rename(map)).collect()),
            Term::Power(b, k) => Term::power(b.rename(map), *k),
        }
    }

    pub fn profile(&self) -> TermProfile {
        let mut multiplicity = BTreeMap::new();
        fn walk(t: &Term, under_power: bool, m: &mut BTreeMap<Var, Multiplicity>) {
            match t {
                Term::Var(v) => {
                    let entry = m.entry(v.clone()).or_insert(Multiplicity::Zero);
                    *entry = if under_power {
                        Multiplicity::Many
                    } else {
                        match entry {
                            Multiplicity::Zero => Multiplicity::One,
                            _ => Multiplicity::Many,
                        }
                    };
                }
                Term::Concat(fs) => fs.iter().for_each(|f| walk(f, under_power, m)),
                Term::Power(b, _) => walk(b, true, m),
            }
        }
        walk(self, false, &mut multiplicity);
        TermProfile {
            content: self.variables(),
            length: match self.letters() {
                Some(ls) => Length::Finite(ls.len()),
                None => Length::Infinite,
            },
            first: self.first_var().clone(),
            last: self.last_var().clone(),
            multiplicity,
        }
    }
}

fn needs_parens_as_base(t: &Term) -> bool {
    !matches!(t, Term::Var(_))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Concat(fs) => {
                for (i, t) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            Term::Power(b, k) => {
                if needs_parens_as_base(b) {
                    write!(f, "({b})")?;
                } else {
                    write!(f, "{b}")?;
                }
                if *k == 0 {
                    f.write_str("^w")
                } else {
                    write!(f, "^(w+{k})")
                }
            }
        }
    }
}

/// `|ρ|`: a natural number, or infinite for terms with an ω-power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Zero,
    One,
    Many,
}

/// Content, length, end letters and occurrence classes of a term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermProfile {
    /// Variables in order of first occurrence.
    pub content: Vec<Var>,
    pub length: Length,
    pub first: Var,
    pub last: Var,
    pub multiplicity: BTreeMap<Var, Multiplicity>,
}

impl TermProfile {
    pub fn multiplicity_of(&self, v: &Var) -> Multiplicity {
        self.multiplicity
            .get(v)
            .copied()
            .unwrap_or(Multiplicity::Zero)
    }
}

/// Right-hand side of an identity: a term, or the zero marker.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rhs {
    Term(Term),
    Zero,
}

/// `lhs ≈ rhs`, or `lhs ≈ 0`, which abbreviates `{u·lhs ≈ lhs, lhs·u ≈ lhs}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Rhs,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Identity {
            lhs,
            rhs: Rhs::Term(rhs),
        }
    }

    pub fn zero_form(lhs: Term) -> Self {
        Identity {
            lhs,
            rhs: Rhs::Zero,
        }
    }

    pub fn is_zero_form(&self) -> bool {
        matches!(self.rhs, Rhs::Zero)
    }

    pub fn rhs_term(&self) -> Option<&Term> {
        match &self.rhs {
            Rhs::Term(t) => Some(t),
            Rhs::Zero => None,
        }
    }

    /// Variables of the left side followed by new ones from the right side.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars = self.lhs.variables();
        if let Rhs::Term(r) = &self.rhs {
            r.collect_vars(&mut vars);
        }
        vars
    }

    /// Both sides are ordinary words.
    pub fn is_finite(&self) -> bool {
        self.lhs.is_finite() && self.rhs_term().is_some_and(Term::is_finite)
    }

    /// Structurally equal sides.
    pub fn is_trivial(&self) -> bool {
        self.rhs_term() == Some(&self.lhs)
    }

    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Identity {
        Identity {
            lhs: self.lhs.rename(map),
            rhs: match &self.rhs {
                Rhs::Term(t) => Rhs::Term(t.rename(map)),
                Rhs::Zero => Rhs::Zero,
            },
        }
    }

    /// Equality up to a bijective renaming of variables.
    pub fn alpha_eq(&self, other: &Identity) -> bool {
        let (a, b) = (self.variables(), other.variables());
        if a.len() != b.len() {
            return false;
        }
        let map: BTreeMap<Var, Var> = a.into_iter().zip(b).collect();
        &self.rename(&map) == other
    }

    /// The two sides swapped (not defined for zero-forms).
    pub fn flipped(&self) -> Option<Identity> {
        self.rhs_term()
            .map(|r| Identity::new(r.clone(), self.lhs.clone()))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rhs {
            Rhs::Term(t) => write!(f, "{} = {}", self.lhs, t),
            Rhs::Zero => write!(f, "{} = 0", self.lhs),
        }
    }
}

/// `x1 … xn` style variable names.
pub(crate) fn indexed_vars(prefix: &str, n: usize) -> Vec<Var> {
    (1..=n)
        .map(|i| Var(alloc::format!("{prefix}{i}")))
        .collect()
}

/// A fresh name not in `taken`, trying `preferred` first.
pub(crate) fn fresh_var(taken: &[Var], preferred: &[&str]) -> Var {
    for p in preferred {
        if !taken.iter().any(|v| v.as_str() == *p) {
            return Var::from(*p);
        }
    }
    let base = preferred.first().copied().unwrap_or("v");
    (1..)
        .map(|i| Var(alloc::format!("{base}{i}")))
        .find(|v| !taken.contains(v))
        .unwrap()
}

pub(crate) fn repeat(t: &Term, n: usize) -> Vec<Term> {
    vec![t.clone(); n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_term;

    #[test]
    fn concat_flattens() {
        let t = Term::concat([Term::var("x"), Term::word(["y", "z"])]);
        assert_eq!(t, Term::word(["x", "y", "z"]));
        assert_eq!(Term::concat([Term::var("x")]), Term::var("x"));
    }

    #[test]
    fn profile_of_word() {
        let p = parse_term("x y z").unwrap().profile();
        assert_eq!(p.content, [Var::from("x"), Var::from("y"), Var::from("z")]);
        assert_eq!(p.length, Length::Finite(3));
        assert_eq!((p.first.as_str(), p.last.as_str()), ("x", "z"));
        assert!(p.multiplicity.values().all(|&m| m == Multiplicity::One));
    }

    #[test]
    fn profile_of_omega_terms() {
        let p = parse_term("y^(w+1) x^(w+1)").unwrap().profile();
        assert_eq!(p.length, Length::Infinite);
        assert_eq!((p.first.as_str(), p.last.as_str()), ("y", "x"));
        assert!(p.multiplicity.values().all(|&m| m == Multiplicity::Many));

        let p = parse_term("(x y)^w x").unwrap().profile();
        assert_eq!((p.first.as_str(), p.last.as_str()), ("x", "x"));
        assert_eq!(p.multiplicity_of(&Var::from("x")), Multiplicity::Many);
        assert_eq!(p.multiplicity_of(&Var::from("y")), Multiplicity::Many);
        assert_eq!(p.multiplicity_of(&Var::from("z")), Multiplicity::Zero);

        let p = parse_term("x y x").unwrap().profile();
        assert_eq!(p.multiplicity_of(&Var::from("x")), Multiplicity::Many);
        assert_eq!(p.multiplicity_of(&Var::from("y")), Multiplicity::One);
    }

    #[test]
    fn printing() {
        let t = Term::concat([
            Term::power(Term::word(["x", "y"]), 1),
            Term::power(Term::var("z"), 0),
        ]);
        assert_eq!(alloc::format!("{t}"), "(x y)^(w+1) z^w");
        let nested = Term::power(Term::power(Term::var("x"), 0), 2);
        assert_eq!(alloc::format!("{nested}"), "(x^w)^(w+2)");
    }

    #[test]
    fn alpha_equivalence() {
        let a = crate::parse_identity("x y = y x").unwrap();
        let b = crate::parse_identity("x1 x2 = x2 x1").unwrap();
        let c = crate::parse_identity("x1 x2 = x1 x2 x2").unwrap();
        assert!(a.alpha_eq(&b));
        assert!(!a.alpha_eq(&c));
    }
}
