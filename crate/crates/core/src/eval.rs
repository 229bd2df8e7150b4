use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::table::{CayleyTable, Element};
use crate::term::{Identity, Rhs, Term, TermError, Var};
use crate::transform::expand_zero;

/// Values for variables.
pub type Assignment = BTreeMap<Var, Element>;

/// A term with variables replaced by slot indices.
#[derive(Clone, Debug)]
enum Node {
    Slot(usize),
    Concat(Vec<Node>),
    Power(Box<Node>, u32),
}

impl Node {
    fn compile(t: &Term, vars: &[Var]) -> Node {
        match t {
            Term::Var(v) => {
                Node::Slot(vars.iter().position(|w| w == v).expect("declared variable"))
            }
            Term::Concat(fs) => Node::Concat(fs.iter().map(|f| Node::compile(f, vars)).collect()),
            Term::Power(b, k) => Node::Power(Box::new(Node::compile(b, vars)), *k),
        }
    }

    fn eval(&self, s: &CayleyTable, values: &[Element]) -> Element {
        match self {
            Node::Slot(i) => values[*i],
            Node::Concat(fs) => {
                let mut acc = fs[0].eval(s, values);
                for f in &fs[1..] {
                    acc = s.mul(acc, f.eval(s, values));
                }
                acc
            }
            Node::Power(b, k) => s.omega_plus(b.eval(s, values), *k),
        }
    }
}

/// Evaluates a term under an assignment; ω-powers use the table's
/// idempotent powers.
pub(crate) fn evaluate(
    t: &Term,
    s: &CayleyTable,
    assignment: &Assignment,
) -> Result<Element, TermError> {
    let vars = t.variables();
    let mut values = Vec::with_capacity(vars.len());
    for v in &vars {
        match assignment.get(v) {
            Some(&e) => values.push(e),
            None => return Err(TermError::UnboundVariable(v.clone())),
        }
    }
    Ok(Node::compile(t, &vars).eval(s, &values))
}

impl Term {
    pub fn evaluate(&self, s: &CayleyTable, assignment: &Assignment) -> Result<Element, TermError> {
        evaluate(self, s, assignment)
    }
}

/// A failing assignment for one (expanded) identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// The identity that failed; for zero-forms, one of the two expanded
    /// identities.
    pub identity: Identity,
    pub assignment: Vec<(Var, Element)>,
    pub lhs_value: Element,
    pub rhs_value: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Satisfaction {
    Holds,
    Fails(Witness),
}

impl Satisfaction {
    pub fn holds(&self) -> bool {
        matches!(self, Satisfaction::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Satisfaction::Holds => None,
            Satisfaction::Fails(w) => Some(w),
        }
    }
}

/// An identity without zero-forms, compiled for repeated checking.
#[derive(Clone, Debug)]
pub struct CompiledIdentity {
    identity: Identity,
    vars: Vec<Var>,
    lhs: Node,
    rhs: Node,
}

impl CompiledIdentity {
    /// Compiles an identity; zero-forms become two compiled identities.
    pub fn new(id: &Identity) -> Vec<CompiledIdentity> {
        match &id.rhs {
            Rhs::Zero => expand_zero(id)
                .expect("zero-form")
                .iter()
                .flat_map(CompiledIdentity::new)
                .collect(),
            Rhs::Term(r) => {
                let vars = id.variables();
                vec![CompiledIdentity {
                    lhs: Node::compile(&id.lhs, &vars),
                    rhs: Node::compile(r, &vars),
                    vars,
                    identity: id.clone(),
                }]
            }
        }
    }

    pub fn identity(&self) -> &Identity {
        &self.identity
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    /// `|S|^#vars`, saturating.
    pub fn assignment_count(&self, s: &CayleyTable) -> u128 {
        (s.order() as u128).saturating_pow(self.vars.len() as u32)
    }

    /// Checks every assignment in odometer order (last variable fastest);
    /// the first failure is reported.
    pub fn check(&self, s: &CayleyTable) -> Satisfaction {
        let m = s.order();
        let n = self.vars.len();
        let mut values = vec![0; n];
        loop {
            let l = self.lhs.eval(s, &values);
            let r = self.rhs.eval(s, &values);
            if l != r {
                return Satisfaction::Fails(Witness {
                    identity: self.identity.clone(),
                    assignment: self
                        .vars
                        .iter()
                        .cloned()
                        .zip(values.iter().copied())
                        .collect(),
                    lhs_value: l,
                    rhs_value: r,
                });
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return Satisfaction::Holds;
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

    /// Evaluates both sides under explicit slot values (in variable order).
    pub fn sides(&self, s: &CayleyTable, values: &[Element]) -> (Element, Element) {
        (self.lhs.eval(s, values), self.rhs.eval(s, values))
    }

    pub fn variables(&self) -> &[Var] {
        &self.vars
    }
}

impl CayleyTable {
    /// Exhaustive check of `S ⊨ ε`. Zero-forms are expanded first, so they
    /// fail on tables without a zero.
    pub fn satisfies(&self, id: &Identity) -> Satisfaction {
        for c in CompiledIdentity::new(id) {
            if let fail @ Satisfaction::Fails(_) = c.check(self) {
                return fail;
            }
        }
        Satisfaction::Holds
    }

    /// Like [`CayleyTable::satisfies`], refusing checks with more than
    /// `budget` assignments.
    pub fn satisfies_within(&self, id: &Identity, budget: u128) -> Result<Satisfaction, TermError> {
        let compiled = CompiledIdentity::new(id);
        for c in &compiled {
            let assignments = c.assignment_count(self);
            if assignments > budget {
                return Err(TermError::TooExpensive {
                    assignments,
                    budget,
                });
            }
        }
        for c in compiled {
            if let fail @ Satisfaction::Fails(_) = c.check(self) {
                return Ok(fail);
            }
        }
        Ok(Satisfaction::Holds)
    }

    /// `S ⊨ Δ` for a set of identities.
    pub fn satisfies_all<'a, I: IntoIterator<Item = &'a Identity>>(&self, ids: I) -> bool {
        ids.into_iter().all(|id| self.satisfies(id).holds())
    }
}
