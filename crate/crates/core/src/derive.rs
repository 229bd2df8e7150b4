//! Bounded search for equational derivations between finite identities.
//!
//! A derivation step replaces a factor `u·σ(l)·v` by `u·σ(r)·v` where `l ≈ r`
//! (or `r ≈ l`) is a basis identity and `σ` maps variables to nonempty
//! words. The search is a bidirectional breadth-first search over words of
//! bounded length, so a negative answer only means nothing was found within
//! the budget.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::term::{Identity, Rhs, Term, Var};

/// Limits for [`derive_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Longest word that may appear in a derivation.
    pub max_len: usize,
    /// Longest derivation, in rewrite steps.
    pub max_steps: usize,
    /// Most words visited before giving up.
    pub max_nodes: usize,
}

impl Budget {
    pub const DEFAULT_NODES: usize = 200_000;

    pub fn new(max_len: usize, max_steps: usize) -> Self {
        Budget {
            max_len,
            max_steps,
            max_nodes: Self::DEFAULT_NODES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeriveError {
    #[error("identity {0} is not finite")]
    NotFinite(Identity),
}

/// One rewrite: `to` is `from` with the instance of one side of basis
/// identity `rule` at `position` replaced by the instance of the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub from: Term,
    pub to: Term,
    pub rule: usize,
    /// `true` when the rule was applied right-to-left.
    pub reversed: bool,
    /// 0-based letter offset of the rewritten factor.
    pub position: usize,
    pub substitution: Vec<(Var, Term)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub goal: Identity,
    pub steps: Vec<RewriteStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeriveOutcome {
    Derivable(Derivation),
    NotFoundWithinBudget { visited: usize },
}

impl DeriveOutcome {
    pub fn is_derivable(&self) -> bool {
        matches!(self, DeriveOutcome::Derivable(_))
    }
}

type Word = Vec<u16>;

struct Rule {
    lhs: Vec<usize>,
    rhs: Vec<usize>,
    vars: Vec<Var>,
    index: usize,
    reversed: bool,
}

fn letters_of(t: &Term) -> Option<Vec<Var>> {
    t.letters().map(|ls| ls.into_iter().cloned().collect())
}

fn finite_sides(id: &Identity) -> Result<(Vec<Var>, Vec<Var>), DeriveError> {
    let err = || DeriveError::NotFinite(id.clone());
    let Rhs::Term(r) = &id.rhs else {
        return Err(err());
    };
    Ok((
        letters_of(&id.lhs).ok_or_else(err)?,
        letters_of(r).ok_or_else(err)?,
    ))
}

fn compile_rules(basis: &[Identity]) -> Result<Vec<Rule>, DeriveError> {
    let mut rules = Vec::new();
    for (index, id) in basis.iter().enumerate() {
        let (l, r) = finite_sides(id)?;
        if l == r {
            continue;
        }
        let vars = id.variables();
        let slots = |w: &[Var]| -> Vec<usize> {
            w.iter()
                .map(|v| vars.iter().position(|u| u == v).unwrap())
                .collect()
        };
        let (ls, rs) = (slots(&l), slots(&r));
        rules.push(Rule {
            lhs: ls.clone(),
            rhs: rs.clone(),
            vars: vars.clone(),
            index,
            reversed: false,
        });
        rules.push(Rule {
            lhs: rs,
            rhs: ls,
            vars,
            index,
            reversed: true,
        });
    }
    Ok(rules)
}

/// A rewrite found while expanding a word.
struct Edge {
    to: Word,
    rule: usize,
    position: usize,
    binding: Vec<Word>,
}

struct Expander<'a> {
    rules: &'a [Rule],
    alphabet: u16,
    max_len: usize,
}

impl Expander<'_> {
    fn neighbours(&self, w: &Word) -> Vec<Edge> {
        let mut out = Vec::new();
        for (ri, rule) in self.rules.iter().enumerate() {
            let mut binding: Vec<Option<(usize, usize)>> = vec![None; rule.vars.len()];
            for start in 0..w.len() {
                self.match_at(w, rule, ri, start, start, 0, &mut binding, &mut out);
            }
        }
        out
    }

    /// Matches `rule.lhs[k..]` against `w[pos..]`, the factor having started
    /// at `start`.
    #[allow(clippy::too_many_arguments)]
    fn match_at(
        &self,
        w: &Word,
        rule: &Rule,
        ri: usize,
        start: usize,
        pos: usize,
        k: usize,
        binding: &mut Vec<Option<(usize, usize)>>,
        out: &mut Vec<Edge>,
    ) {
        if k == rule.lhs.len() {
            self.emit(w, rule, ri, start, pos, binding, out);
            return;
        }
        let v = rule.lhs[k];
        if let Some((s, len)) = binding[v] {
            if pos + len <= w.len() && w[pos..pos + len] == w[s..s + len] {
                self.match_at(w, rule, ri, start, pos + len, k + 1, binding, out);
            }
            return;
        }
        for len in 1..=w.len() - pos {
            binding[v] = Some((pos, len));
            self.match_at(w, rule, ri, start, pos + len, k + 1, binding, out);
        }
        binding[v] = None;
    }

    #[allow(clippy::too_many_arguments)]
    fn emit(
        &self,
        w: &Word,
        rule: &Rule,
        ri: usize,
        start: usize,
        end: usize,
        binding: &[Option<(usize, usize)>],
        out: &mut Vec<Edge>,
    ) {
        let bound: Vec<Option<Word>> = binding
            .iter()
            .map(|b| b.map(|(s, len)| w[s..s + len].to_vec()))
            .collect();
        let context = w.len() - (end - start);
        let fixed: usize = rule
            .rhs
            .iter()
            .filter_map(|&v| bound[v].as_ref().map(Vec::len))
            .sum();
        if context + fixed > self.max_len {
            return;
        }
        // Variables occurring only on the replacement side range over all
        // nonempty words. Letters outside the goal are never needed: mapping
        // them onto a goal letter turns any derivation into one that avoids
        // them.
        let free: Vec<usize> = (0..rule.vars.len())
            .filter(|&v| bound[v].is_none() && rule.rhs.contains(&v))
            .collect();
        let mut values = bound;
        self.assign_free(
            w,
            rule,
            ri,
            start,
            end,
            &free,
            0,
            context + fixed,
            &mut values,
            out,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_free(
        &self,
        w: &Word,
        rule: &Rule,
        ri: usize,
        start: usize,
        end: usize,
        free: &[usize],
        k: usize,
        used: usize,
        values: &mut Vec<Option<Word>>,
        out: &mut Vec<Edge>,
    ) {
        if k == free.len() {
            let mut to = w[..start].to_vec();
            for &v in &rule.rhs {
                to.extend_from_slice(values[v].as_ref().unwrap());
            }
            to.extend_from_slice(&w[end..]);
            let binding = values
                .iter()
                .map(|b| b.clone().unwrap_or_default())
                .collect();
            out.push(Edge {
                to,
                rule: ri,
                position: start,
                binding,
            });
            return;
        }
        let v = free[k];
        let occurrences = rule.rhs.iter().filter(|&&u| u == v).count();
        let mut len = 1;
        while used + occurrences * len <= self.max_len {
            for word in words_of_length(self.alphabet, len) {
                values[v] = Some(word);
                self.assign_free(
                    w,
                    rule,
                    ri,
                    start,
                    end,
                    free,
                    k + 1,
                    used + occurrences * len,
                    values,
                    out,
                );
            }
            len += 1;
        }
        values[v] = None;
    }
}

fn words_of_length(alphabet: u16, len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..alphabet).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// Parent link: the word we came from and the rewrite that led here,
/// oriented from parent to child.
struct Visit {
    depth: usize,
    parent: Option<(Word, usize, usize, Vec<Word>)>,
}

struct Side {
    visited: BTreeMap<Word, Visit>,
    frontier: VecDeque<Word>,
    depth: usize,
}

impl Side {
    fn new(root: Word) -> Self {
        let mut visited = BTreeMap::new();
        visited.insert(
            root.clone(),
            Visit {
                depth: 0,
                parent: None,
            },
        );
        Side {
            visited,
            frontier: VecDeque::from([root]),
            depth: 0,
        }
    }

    /// The chain of (parent, child, rule, position, binding) from the root
    /// down to `w`.
    fn path_to(&self, w: &Word) -> Vec<(Word, Word, usize, usize, Vec<Word>)> {
        let mut out = Vec::new();
        let mut cur = w.clone();
        while let Some((p, rule, pos, binding)) = &self.visited[&cur].parent {
            out.push((p.clone(), cur.clone(), *rule, *pos, binding.clone()));
            cur = p.clone();
        }
        out.reverse();
        out
    }
}

/// Searches for a derivation of `goal` from `basis`.
pub fn derive_search(
    basis: &[Identity],
    goal: &Identity,
    budget: Budget,
) -> Result<DeriveOutcome, DeriveError> {
    let rules = compile_rules(basis)?;
    let (l, r) = finite_sides(goal)?;
    let letters = goal.variables();
    let encode = |w: &[Var]| -> Word {
        w.iter()
            .map(|v| letters.iter().position(|u| u == v).unwrap() as u16)
            .collect()
    };
    let (start, target) = (encode(&l), encode(&r));
    if start == target {
        return Ok(DeriveOutcome::Derivable(Derivation {
            goal: goal.clone(),
            steps: Vec::new(),
        }));
    }
    if start.len() > budget.max_len || target.len() > budget.max_len {
        return Ok(DeriveOutcome::NotFoundWithinBudget { visited: 0 });
    }
    let expander = Expander {
        rules: &rules,
        alphabet: letters.len() as u16,
        max_len: budget.max_len,
    };
    let mut sides = [Side::new(start), Side::new(target)];
    loop {
        let visited = sides[0].visited.len() + sides[1].visited.len();
        if sides[0].depth + sides[1].depth >= budget.max_steps || visited >= budget.max_nodes {
            return Ok(DeriveOutcome::NotFoundWithinBudget { visited });
        }
        // grow the smaller frontier by one full layer
        let s = if sides[0].frontier.len() <= sides[1].frontier.len() {
            0
        } else {
            1
        };
        if sides[s].frontier.is_empty() {
            return Ok(DeriveOutcome::NotFoundWithinBudget { visited });
        }
        let layer: Vec<Word> = sides[s].frontier.drain(..).collect();
        let depth = sides[s].depth + 1;
        let mut meeting = None;
        'layer: for w in layer {
            for edge in expander.neighbours(&w) {
                if sides[s].visited.contains_key(&edge.to) {
                    continue;
                }
                sides[s].visited.insert(
                    edge.to.clone(),
                    Visit {
                        depth,
                        parent: Some((w.clone(), edge.rule, edge.position, edge.binding)),
                    },
                );
                if sides[1 - s].visited.contains_key(&edge.to) {
                    meeting = Some(edge.to);
                    break 'layer;
                }
                sides[s].frontier.push_back(edge.to);
                if sides[0].visited.len() + sides[1].visited.len() >= budget.max_nodes {
                    break 'layer;
                }
            }
        }
        sides[s].depth = depth;
        if let Some(m) = meeting {
            let total = sides[0].visited[&m].depth + sides[1].visited[&m].depth;
            if total > budget.max_steps {
                let visited = sides[0].visited.len() + sides[1].visited.len();
                return Ok(DeriveOutcome::NotFoundWithinBudget { visited });
            }
            let forward = sides[0].path_to(&m);
            let backward = sides[1].path_to(&m);
            let mut steps = Vec::new();
            let decode =
                |w: &Word| Term::concat(w.iter().map(|&i| Term::Var(letters[i as usize].clone())));
            let mut push =
                |from: &Word, to: &Word, ri: usize, pos: usize, binding: &[Word], flip: bool| {
                    let rule = &rules[ri];
                    let substitution = rule
                        .vars
                        .iter()
                        .zip(binding)
                        .filter(|(_, b)| !b.is_empty())
                        .map(|(v, b)| (v.clone(), decode(b)))
                        .collect();
                    steps.push(RewriteStep {
                        from: decode(from),
                        to: decode(to),
                        rule: rule.index,
                        reversed: rule.reversed != flip,
                        position: pos,
                        substitution,
                    });
                };
            for (p, c, ri, pos, b) in &forward {
                push(p, c, *ri, *pos, b, false);
            }
            // the target side was explored from the goal's right-hand side,
            // so its steps run backwards
            for (p, c, ri, pos, b) in backward.iter().rev() {
                push(c, p, *ri, *pos, b, true);
            }
            return Ok(DeriveOutcome::Derivable(Derivation {
                goal: goal.clone(),
                steps,
            }));
        }
    }
}

impl Derivation {
    /// Re-checks every step against the basis: each step must rewrite one
    /// instance of a basis side, and the chain must connect the goal's two
    /// sides.
    pub fn verify(&self, basis: &[Identity]) -> bool {
        let Some(lhs) = self.goal.lhs.letters() else {
            return false;
        };
        let Some(rhs) = self.goal.rhs_term().and_then(Term::letters) else {
            return false;
        };
        let mut current: Vec<Var> = lhs.into_iter().cloned().collect();
        for step in &self.steps {
            if letters_of(&step.from).as_ref() != Some(&current) {
                return false;
            }
            let Some(id) = basis.get(step.rule) else {
                return false;
            };
            let Ok((l, r)) = finite_sides(id) else {
                return false;
            };
            let (pat, rep) = if step.reversed { (r, l) } else { (l, r) };
            let map: BTreeMap<&Var, Vec<Var>> = step
                .substitution
                .iter()
                .filter_map(|(v, t)| letters_of(t).map(|w| (v, w)))
                .collect();
            let inst = |w: &[Var]| -> Option<Vec<Var>> {
                let mut out = Vec::new();
                for v in w {
                    out.extend(map.get(v)?.iter().cloned());
                }
                Some(out)
            };
            let (Some(a), Some(b)) = (inst(&pat), inst(&rep)) else {
                return false;
            };
            let p = step.position;
            if p + a.len() > current.len() || current[p..p + a.len()] != a[..] {
                return false;
            }
            let mut next = current[..p].to_vec();
            next.extend(b);
            next.extend_from_slice(&current[p + a.len()..]);
            if letters_of(&step.to).as_ref() != Some(&next) {
                return false;
            }
            current = next;
        }
        rhs.into_iter().cloned().collect::<Vec<_>>() == current
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_identity;

    fn id(s: &str) -> Identity {
        parse_identity(s).unwrap()
    }

    fn derive(basis: &[&str], goal: &str, l: usize, steps: usize) -> DeriveOutcome {
        let basis: Vec<Identity> = basis.iter().map(|s| id(s)).collect();
        derive_search(&basis, &id(goal), Budget::new(l, steps)).unwrap()
    }

    #[test]
    fn one_context_step() {
        let out = derive(&["x y = y x"], "z x y = z y x", 4, 2);
        let DeriveOutcome::Derivable(d) = out else {
            panic!("expected a derivation");
        };
        assert_eq!(d.steps.len(), 1);
        assert_eq!(d.steps[0].position, 1);
        assert!(d.verify(&[id("x y = y x")]));
    }

    #[test]
    fn restriction_by_substitution() {
        let basis = [id("z x y = z y x")];
        let out = derive_search(&basis, &id("z w x y = z w y x"), Budget::new(5, 2)).unwrap();
        let DeriveOutcome::Derivable(d) = out else {
            panic!("expected a derivation");
        };
        assert!(d.verify(&basis));
    }

    #[test]
    fn commutativity_never_gives_idempotency() {
        let out = derive(&["x y = y x"], "x = x x", 6, 8);
        assert!(!out.is_derivable());
    }

    #[test]
    fn multi_step_and_reversed_rules() {
        let basis = [id("x x = x")];
        let out = derive_search(&basis, &id("x = x x x"), Budget::new(4, 4)).unwrap();
        let DeriveOutcome::Derivable(d) = out else {
            panic!("expected a derivation");
        };
        assert_eq!(d.steps.len(), 2);
        assert!(d.verify(&basis));
        assert!(d.steps.iter().all(|s| s.reversed));
    }

    #[test]
    fn free_variables_on_the_replacement_side() {
        // x1 x2 = x1 x2 y introduces y
        let basis = [id("x1 x2 = x1 x2 y")];
        let out = derive_search(&basis, &id("a b = a b b a"), Budget::new(5, 3)).unwrap();
        let DeriveOutcome::Derivable(d) = out else {
            panic!("expected a derivation");
        };
        assert!(d.verify(&basis));
    }

    #[test]
    fn trivial_goal_and_bad_input() {
        assert_eq!(
            derive(&["x y = y x"], "x y = x y", 2, 1),
            DeriveOutcome::Derivable(Derivation {
                goal: id("x y = x y"),
                steps: Vec::new(),
            })
        );
        assert!(derive_search(&[id("x = x^w")], &id("x = x"), Budget::new(2, 2)).is_err());
        assert!(derive_search(&[], &id("x y = 0"), Budget::new(2, 2)).is_err());
    }

    #[test]
    fn tampered_derivations_fail_verification() {
        let basis = [id("x y = y x")];
        let DeriveOutcome::Derivable(mut d) =
            derive_search(&basis, &id("z x y = z y x"), Budget::new(4, 2)).unwrap()
        else {
            panic!("expected a derivation");
        };
        d.steps[0].position = 0;
        assert!(!d.verify(&basis));
    }
}
