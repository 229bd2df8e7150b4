use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::term::{fresh_var, repeat, Identity, Rhs, Term, TermError, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// `ρ ≈ 0` becomes `{uρ ≈ ρ, ρu ≈ ρ}` with a fresh `u`.
pub fn expand_zero(id: &Identity) -> Result<[Identity; 2], TermError> {
    if !id.is_zero_form() {
        return Err(TermError::ZeroForm);
    }
    let u = Term::Var(fresh_var(&id.variables(), &["u", "v", "t"]));
    let rho = id.lhs.clone();
    Ok([
        Identity::new(Term::concat([u.clone(), rho.clone()]), rho.clone()),
        Identity::new(Term::concat([rho.clone(), u]), rho),
    ])
}

/// Expands every zero-form in a set, keeping order.
pub fn expand_all<'a, I: IntoIterator<Item = &'a Identity>>(ids: I) -> Vec<Identity> {
    let mut out = Vec::new();
    for id in ids {
        match expand_zero(id) {
            Ok(pair) => out.extend(pair),
            Err(_) => out.push(id.clone()),
        }
    }
    out
}

fn map_sides(id: &Identity, f: impl Fn(&Term) -> Term) -> Identity {
    Identity {
        lhs: f(&id.lhs),
        rhs: match &id.rhs {
            Rhs::Term(t) => Rhs::Term(f(t)),
            Rhs::Zero => Rhs::Zero,
        },
    }
}

impl Identity {
    /// Prefixes both sides with a fresh variable.
    pub fn res_left(&self) -> Identity {
        let z = fresh_var(&self.variables(), &["z", "w", "t", "u", "v"]);
        self.res_left_with(z)
    }

    /// Prefixes both sides with `x`, which should not occur in the identity.
    pub fn res_left_with(&self, x: Var) -> Identity {
        debug_assert!(!self.variables().contains(&x));
        let x = Term::Var(x);
        map_sides(self, |t| Term::concat([x.clone(), t.clone()]))
    }

    pub fn res_right(&self) -> Identity {
        let z = fresh_var(&self.variables(), &["z", "w", "t", "u", "v"]);
        self.res_right_with(z)
    }

    pub fn res_right_with(&self, z: Var) -> Identity {
        debug_assert!(!self.variables().contains(&z));
        let z = Term::Var(z);
        map_sides(self, |t| Term::concat([t.clone(), z.clone()]))
    }

    pub fn substitute(&self, v: &Var, s: &Term) -> Identity {
        map_sides(self, |t| t.substitute(v, s))
    }

    /// Replaces every variable by a product of `k` fresh variables
    /// (`x` becomes `x1 … xk`).
    pub fn malcev_split(&self, k: usize) -> Identity {
        assert!(k >= 1, "split width must be positive");
        let vars = self.variables();
        let mut names = split_names(&vars, k, "");
        if has_collisions(&names) {
            names = split_names(&vars, k, "_");
        }
        let mut out = self.clone();
        // Substitute through temporary names so replacements never clash
        // with variables still to be replaced.
        let temps: Vec<Var> = (0..vars.len()).map(|i| Var(format!("\u{0}{i}"))).collect();
        for (v, t) in vars.iter().zip(&temps) {
            out = out.substitute(v, &Term::Var(t.clone()));
        }
        for (t, parts) in temps.iter().zip(&names) {
            let product = Term::concat(parts.iter().cloned().map(Term::Var));
            out = out.substitute(t, &product);
        }
        out
    }
}

fn split_names(vars: &[Var], k: usize, sep: &str) -> Vec<Vec<Var>> {
    vars.iter()
        .map(|v| (1..=k).map(|i| Var(format!("{v}{sep}{i}"))).collect())
        .collect()
}

fn has_collisions(names: &[Vec<Var>]) -> bool {
    let mut all: Vec<&Var> = names.iter().flatten().collect();
    let n = all.len();
    all.sort();
    all.dedup();
    all.len() != n
}

impl Term {
    /// Replaces every occurrence of `v` by `s`.
    pub fn substitute(&self, v: &Var, s: &Term) -> Term {
        match self {
            Term::Var(w) if w == v => s.clone(),
            Term::Var(_) => self.clone(),
            Term::Concat(fs) => Term::concat(fs.iter().map(|f| f.substitute(v, s))),
            Term::Power(b, k) => Term::power(b.substitute(v, s), *k),
        }
    }

    /// Simultaneous substitution.
    pub fn substitute_all(&self, map: &BTreeMap<Var, Term>) -> Term {
        match self {
            Term::Var(w) => map.get(w).cloned().unwrap_or_else(|| self.clone()),
            Term::Concat(fs) => Term::concat(fs.iter().map(|f| f.substitute_all(map))),
            Term::Power(b, k) => Term::power(b.substitute_all(map), *k),
        }
    }

    /// Rewrites `b^(ω+k)` as `b^k · b^ω` (left) or `b^ω · b^k` (right).
    /// With `k = 0` the node is returned unchanged.
    pub fn unroll(&self, side: Side) -> Result<Term, TermError> {
        let Term::Power(b, k) = self else {
            return Err(TermError::NotAPower);
        };
        if *k == 0 {
            return Ok(self.clone());
        }
        let copies = repeat(b, *k as usize);
        let core = Term::power((**b).clone(), 0);
        Ok(match side {
            Side::Left => Term::concat(copies.into_iter().chain([core])),
            Side::Right => Term::concat([core].into_iter().chain(copies)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_identity, parse_term, zoo, Assignment};

    fn id(s: &str) -> Identity {
        parse_identity(s).unwrap()
    }

    fn term(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn zero_expansion() {
        let [a, b] = expand_zero(&id("x^2 = 0")).unwrap();
        assert_eq!(a, id("u x x = x x"));
        assert_eq!(b, id("x x u = x x"));
        let [a, b] = expand_zero(&id("x = 0")).unwrap();
        assert_eq!((a, b), (id("u x = x"), id("x u = x")));
        let [a, _] = expand_zero(&id("x1 x2 x3 = 0")).unwrap();
        assert_eq!(a.variables().len(), 4);
        // fresh name avoids clashes
        let [a, _] = expand_zero(&id("u v = 0")).unwrap();
        assert_eq!(a, id("t u v = u v"));
        assert_eq!(expand_zero(&id("x = x")), Err(TermError::ZeroForm));
    }

    #[test]
    fn restrictions() {
        assert_eq!(id("x y = y x").res_left(), id("z x y = z y x"));
        assert_eq!(id("x = x^(w+1)").res_right(), id("x z = x^(w+1) z"));
        let twice = id("y1 y2 = y2 y1")
            .res_left_with(Var::from("x2"))
            .res_left_with(Var::from("x1"));
        assert_eq!(twice, id("x1 x2 y1 y2 = x1 x2 y2 y1"));
        let full = twice
            .res_right_with(Var::from("z1"))
            .res_right_with(Var::from("z2"))
            .res_right_with(Var::from("z3"));
        assert_eq!(full, id("x1 x2 y1 y2 z1 z2 z3 = x1 x2 y2 y1 z1 z2 z3"));
    }

    #[test]
    fn substitution() {
        let x = Var::from("x");
        assert_eq!(term("x y").substitute(&x, &term("x z")), term("x z y"));
        assert_eq!(term("x^w").substitute(&x, &term("y y")), term("(y y)^w"));
        let sigma = term("s1 s2");
        assert_eq!(
            term("x r1").substitute(&x, &term("x s1 s2")),
            term("x s1 s2 r1")
        );
        assert_eq!(term("x").substitute(&x, &sigma), sigma);
    }

    #[test]
    fn unrolling() {
        assert_eq!(
            term("(x y)^(w+1)").unroll(Side::Left),
            Ok(term("x y (x y)^w"))
        );
        assert_eq!(term("x^w").unroll(Side::Left), Ok(term("x^w")));
        assert_eq!(term("x^(w+2)").unroll(Side::Right), Ok(term("x^w x x")));
        assert_eq!(term("x y").unroll(Side::Left), Err(TermError::NotAPower));
    }

    #[test]
    fn unroll_preserves_values() {
        let p = term("(x y)^(w+2)");
        let left = p.unroll(Side::Left).unwrap();
        let right = p.unroll(Side::Right).unwrap();
        let s = zoo::build_rees(3, [[0, 0], [0, 1]]).unwrap().table;
        for a in 0..s.order() {
            for b in 0..s.order() {
                let asg: Assignment = [(Var::from("x"), a), (Var::from("y"), b)]
                    .into_iter()
                    .collect();
                let v = p.evaluate(&s, &asg).unwrap();
                assert_eq!(left.evaluate(&s, &asg).unwrap(), v);
                assert_eq!(right.evaluate(&s, &asg).unwrap(), v);
            }
        }
    }

    #[test]
    fn malcev() {
        assert_eq!(
            id("x y z = x y^(w+1) z").malcev_split(2),
            id("x1 x2 y1 y2 z1 z2 = x1 x2 (y1 y2)^(w+1) z1 z2")
        );
        let one = id("x y = y x").malcev_split(1);
        assert!(one.alpha_eq(&id("x y = y x")));
        assert_eq!(
            id("x = x^2").malcev_split(3),
            id("x1 x2 x3 = x1 x2 x3 x1 x2 x3")
        );
        // names already ending in digits
        let split = id("x x1 = x1 x").malcev_split(11);
        assert_eq!(split.variables().len(), 22);
    }
}
