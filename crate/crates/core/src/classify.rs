//! Product identities `x1 … xn ≈ ρ` and the constructive reduction to an
//! implied permutation identity or almost-completely-regular (ACR) identity.
//!
//! The reduction: square a missing variable if the identity is not regular;
//! a regular identity whose right side is a word of length `n` is a
//! permutation identity; otherwise it is an expansion identity, and leading
//! `x_i` / trailing `x_j` factors that occur nowhere else are stripped until
//! the remaining core is primitive. A primitive core on `x_i … x_j` forces
//! `x_i … x_j ≈ (x_i … x_j)^(ω+1)`, and the stripped variables are added
//! back as context.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::perm::Permutation;
use crate::term::{indexed_vars, Identity, Length, Rhs, Term, Var};
use crate::transform::Side;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("not a product identity: {0}")]
    NotAProductIdentity(String),
    #[error("identity is trivial")]
    TrivialIdentity,
    #[error("identity is already regular")]
    AlreadyRegular,
    #[error("right-hand side must be a finite word longer than the left")]
    NotFiniteExpansion,
    #[error("indices must satisfy 1 ≤ i ≤ j ≤ n, got n={n}, i={i}, j={j}")]
    Index { n: usize, i: usize, j: usize },
    #[error("permutation has degree {found}, expected {expected}")]
    PermutationDegree { expected: usize, found: usize },
    #[error("the identity permutation gives a trivial identity")]
    IdentityPermutation,
}

/// `x1 … xn ≈ ρ` with distinct left-hand variables and `c(ρ) ⊆ {x1 … xn}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductIdentity {
    vars: Vec<Var>,
    rhs: Term,
}

impl ProductIdentity {
    pub fn new(vars: Vec<Var>, rhs: Term) -> Result<Self, ClassifyError> {
        if vars.is_empty() {
            return Err(ClassifyError::NotAProductIdentity(String::from(
                "empty left side",
            )));
        }
        for (k, v) in vars.iter().enumerate() {
            if vars[..k].contains(v) {
                return Err(ClassifyError::NotAProductIdentity(alloc::format!(
                    "variable {v} repeats on the left"
                )));
            }
        }
        if let Some(v) = rhs.variables().into_iter().find(|v| !vars.contains(v)) {
            return Err(ClassifyError::NotAProductIdentity(alloc::format!(
                "variable {v} does not occur on the left"
            )));
        }
        let p = ProductIdentity {
            vars,
            rhs: rhs.normalized(),
        };
        if p.is_trivial() {
            return Err(ClassifyError::TrivialIdentity);
        }
        Ok(p)
    }

    /// The typed form of an identity whose left side is a product of
    /// distinct variables.
    pub fn from_identity(id: &Identity) -> Result<Self, ClassifyError> {
        let rhs = match &id.rhs {
            Rhs::Term(t) => t.clone(),
            Rhs::Zero => {
                return Err(ClassifyError::NotAProductIdentity(String::from(
                    "zero right-hand side",
                )))
            }
        };
        let letters = id.lhs.letters().ok_or_else(|| {
            ClassifyError::NotAProductIdentity(String::from("left side is not a word"))
        })?;
        Self::new(letters.into_iter().cloned().collect(), rhs)
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn lhs(&self) -> Term {
        Term::concat(self.vars.iter().cloned().map(Term::Var))
    }

    pub fn to_identity(&self) -> Identity {
        Identity::new(self.lhs(), self.rhs.clone())
    }

    fn is_trivial(&self) -> bool {
        self.rhs == self.lhs()
    }

    /// Every left-hand variable occurs on the right.
    pub fn is_regular(&self) -> bool {
        self.vars.iter().all(|v| self.rhs.contains_var(v))
    }

    /// `|ρ| > n`, with infinite length counting as longer.
    pub fn is_expansion(&self) -> bool {
        match self.rhs.profile().length {
            Length::Finite(len) => len > self.arity(),
            Length::Infinite => true,
        }
    }

    /// 1-based index of the first variable missing from the right side.
    pub fn least_missing(&self) -> Option<usize> {
        self.vars
            .iter()
            .position(|v| !self.rhs.contains_var(v))
            .map(|i| i + 1)
    }

    /// `x1 … xn ≈ x1 … x_{i-1} x_i x_i x_{i+1} … xn` for the least missing
    /// index `i`, which a nonregular identity implies.
    pub fn regularize(&self) -> Result<ProductIdentity, ClassifyError> {
        let i = self.least_missing().ok_or(ClassifyError::AlreadyRegular)?;
        let mut word: Vec<Term> = self.vars.iter().cloned().map(Term::Var).collect();
        word.insert(i, Term::Var(self.vars[i - 1].clone()));
        ProductIdentity::new(self.vars.clone(), Term::concat(word))
    }

    /// `ρ0 = x1 … xn`, and `ρ_{i+1}` replaces the length-`n` prefix
    /// `y1 … yn` of `ρ_i` by `ρ(y1, …, yn)`. Requires a finite expansion
    /// identity.
    pub fn unroll_sequence(&self, steps: usize) -> Result<Vec<Term>, ClassifyError> {
        let n = self.arity();
        let rho: Vec<usize> = self
            .rhs
            .letters()
            .ok_or(ClassifyError::NotFiniteExpansion)?
            .into_iter()
            .map(|v| self.vars.iter().position(|w| w == v).unwrap())
            .collect();
        if rho.len() <= n {
            return Err(ClassifyError::NotFiniteExpansion);
        }
        let growth = rho.len() - n;
        let regular = self.is_regular();
        let mut current: Vec<usize> = (0..n).collect();
        let mut out = vec![self.word(&current)];
        for step in 1..=steps {
            let mut next: Vec<usize> = rho.iter().map(|&slot| current[slot]).collect();
            next.extend_from_slice(&current[n..]);
            current = next;
            assert_eq!(current.len(), n + step * growth);
            if regular {
                assert!((0..n).all(|v| current.contains(&v)));
            }
            out.push(self.word(&current));
        }
        Ok(out)
    }

    fn word(&self, slots: &[usize]) -> Term {
        Term::concat(slots.iter().map(|&s| Term::Var(self.vars[s].clone())))
    }

    /// Factors of the right side after unrolling a leading (trailing)
    /// `ω+k` power with `k ≥ 1`.
    fn normalized_factors(&self, side: Side) -> Vec<Term> {
        let fs = self.rhs.factors();
        let end = match side {
            Side::Left => &fs[0],
            Side::Right => &fs[fs.len() - 1],
        };
        if !matches!(end, Term::Power(_, k) if *k >= 1) {
            return fs.to_vec();
        }
        let unrolled = end.unroll(side).expect("power node");
        let parts = match side {
            Side::Left => [unrolled]
                .into_iter()
                .chain(fs[1..].iter().cloned())
                .collect::<Vec<_>>(),
            Side::Right => fs[..fs.len() - 1]
                .iter()
                .cloned()
                .chain([unrolled])
                .collect(),
        };
        Term::concat(parts).factors().to_vec()
    }

    /// The remainder `ρ'` if `ρ = x1 ρ'` (left) or `ρ = ρ' xn` (right) with
    /// the stripped variable absent from `ρ'`.
    fn split(&self, side: Side) -> Option<Term> {
        let mut fs = self.normalized_factors(side);
        if fs.len() < 2 {
            return None;
        }
        let (end, var) = match side {
            Side::Left => (fs.remove(0), &self.vars[0]),
            Side::Right => (fs.pop().unwrap(), &self.vars[self.arity() - 1]),
        };
        let rest = Term::concat(fs);
        (end == Term::Var(var.clone()) && !rest.contains_var(var)).then_some(rest)
    }

    pub fn is_left_primitive(&self) -> bool {
        self.split(Side::Left).is_none()
    }

    pub fn is_right_primitive(&self) -> bool {
        self.split(Side::Right).is_none()
    }

    pub fn is_primitive(&self) -> bool {
        self.is_left_primitive() && self.is_right_primitive()
    }

    /// The identity this one is a restriction of, on the given side.
    pub fn strip(&self, side: Side) -> Option<ProductIdentity> {
        let rest = self.split(side)?;
        let vars = match side {
            Side::Left => self.vars[1..].to_vec(),
            Side::Right => self.vars[..self.arity() - 1].to_vec(),
        };
        ProductIdentity::new(vars, rest).ok()
    }
}

impl fmt::Display for ProductIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_identity())
    }
}

/// One step of the reduction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// The identity was not regular; variable `i` (1-based) was squared.
    NonRegularSquare(usize),
    LeftStrip,
    RightStrip,
    PrimitiveCore,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::NonRegularSquare(i) => write!(f, "NonRegularSquare({i})"),
            Step::LeftStrip => f.write_str("LeftStrip"),
            Step::RightStrip => f.write_str("RightStrip"),
            Step::PrimitiveCore => f.write_str("PrimitiveCore"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Permutation(Permutation),
    /// `x1 … x_{i-1} (x_i … x_j)^(ω+1) x_{j+1} … xn`, 1-based.
    Acr {
        n: usize,
        i: usize,
        j: usize,
    },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Permutation(p) => write!(f, "Permutation({p})"),
            Verdict::Acr { i, j, .. } => write!(f, "ACR({i},{j})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub input: ProductIdentity,
    pub verdict: Verdict,
    pub trace: Vec<Step>,
    /// The primitive core for ACR verdicts.
    pub core: Option<ProductIdentity>,
}

impl Classification {
    /// The implied identity, written over the input's variable names.
    pub fn implied_identity(&self) -> Identity {
        match &self.verdict {
            Verdict::Permutation(p) => perm_identity_over(self.input.vars(), p),
            Verdict::Acr { i, j, .. } => acr_identity_over(self.input.vars(), *i, *j),
        }
    }

    /// Re-applies the recorded steps to the input, returning the identity
    /// reached at the end (the primitive core for ACR verdicts).
    pub fn replay(&self) -> Option<ProductIdentity> {
        let mut current = self.input.clone();
        for step in &self.trace {
            current = match step {
                Step::NonRegularSquare(i) => {
                    if current.least_missing() != Some(*i) {
                        return None;
                    }
                    current.regularize().ok()?
                }
                Step::LeftStrip => current.strip(Side::Left)?,
                Step::RightStrip => current.strip(Side::Right)?,
                Step::PrimitiveCore => {
                    if !current.is_primitive() {
                        return None;
                    }
                    current
                }
            };
        }
        Some(current)
    }
}

/// Runs the reduction. Left strips are exhausted before right strips.
pub fn classify(input: &ProductIdentity) -> Result<Classification, ClassifyError> {
    if input.is_trivial() {
        return Err(ClassifyError::TrivialIdentity);
    }
    let n = input.arity();
    let mut trace = Vec::new();
    let mut current = input.clone();
    if let Some(i) = current.least_missing() {
        current = current.regularize()?;
        trace.push(Step::NonRegularSquare(i));
    }
    if let Some(letters) = current.rhs.letters() {
        if letters.len() == n {
            let images = letters
                .iter()
                .map(|v| current.vars.iter().position(|w| w == *v).unwrap())
                .collect();
            let sigma = Permutation::from_images(images).expect("regular word of length n");
            return Ok(Classification {
                input: input.clone(),
                verdict: Verdict::Permutation(sigma),
                trace,
                core: None,
            });
        }
    }
    let (mut i, mut j) = (1, n);
    loop {
        if let Some(next) = current.strip(Side::Left) {
            current = next;
            i += 1;
            trace.push(Step::LeftStrip);
        } else if let Some(next) = current.strip(Side::Right) {
            current = next;
            j -= 1;
            trace.push(Step::RightStrip);
        } else {
            break;
        }
    }
    trace.push(Step::PrimitiveCore);
    Ok(Classification {
        input: input.clone(),
        verdict: Verdict::Acr { n, i, j },
        trace,
        core: Some(current),
    })
}

/// Convenience wrapper taking an untyped identity.
pub fn classify_identity(id: &Identity) -> Result<Classification, ClassifyError> {
    classify(&ProductIdentity::from_identity(id)?)
}

/// `x1 … xn ≈ x1 … x_{i-1} (x_i … x_j)^(ω+1) x_{j+1} … xn`.
pub fn acr_identity(n: usize, i: usize, j: usize) -> Result<Identity, ClassifyError> {
    if !(1 <= i && i <= j && j <= n) {
        return Err(ClassifyError::Index { n, i, j });
    }
    Ok(acr_identity_over(&indexed_vars("x", n), i, j))
}

fn acr_identity_over(vars: &[Var], i: usize, j: usize) -> Identity {
    let v = |k: usize| Term::Var(vars[k].clone());
    let lhs = Term::concat((0..vars.len()).map(v));
    let middle = Term::power(Term::concat((i - 1..j).map(v)), 1);
    let rhs = Term::concat(
        (0..i - 1)
            .map(v)
            .chain([middle])
            .chain((j..vars.len()).map(v)),
    );
    Identity::new(lhs, rhs)
}

/// `x1 … xn ≈ x_{1σ} … x_{nσ}`.
pub fn perm_identity(n: usize, sigma: &Permutation) -> Result<Identity, ClassifyError> {
    if sigma.degree() != n {
        return Err(ClassifyError::PermutationDegree {
            expected: n,
            found: sigma.degree(),
        });
    }
    if sigma.is_identity() {
        return Err(ClassifyError::IdentityPermutation);
    }
    Ok(perm_identity_over(&indexed_vars("x", n), sigma))
}

fn perm_identity_over(vars: &[Var], sigma: &Permutation) -> Identity {
    let lhs = Term::concat(vars.iter().cloned().map(Term::Var));
    let rhs = Term::concat((0..vars.len()).map(|k| Term::Var(vars[sigma.apply(k)].clone())));
    Identity::new(lhs, rhs)
}
