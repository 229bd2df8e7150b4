use std::sync::OnceLock;

use proptest::prelude::*;
use semiwork_core::classify::{classify, ProductIdentity, Verdict};
use semiwork_core::enumerate::{canonical_form, enumerate, EnumerationMode};
use semiwork_core::{
    derive_search, expand_zero, parse_identity, Assignment, Budget, CayleyTable, DeriveOutcome,
    Identity, IsoMode, Side, Term, Var,
};

/// One representative per isomorphism class, orders 1 to 4.
fn small() -> &'static [CayleyTable] {
    static CELL: OnceLock<Vec<CayleyTable>> = OnceLock::new();
    CELL.get_or_init(|| {
        (1..=4)
            .flat_map(|n| enumerate(n, EnumerationMode::UpToIsomorphism).unwrap())
            .collect()
    })
}

fn id(s: &str) -> Identity {
    parse_identity(s).unwrap()
}

fn holds(s: &CayleyTable, e: &Identity) -> bool {
    s.satisfies(e).holds()
}

const CATALOG: &[&str] = &[
    "x y = y^(w+1) x^(w+1)",
    "x y = y x y",
    "x1 x2 = x1 x2 x2",
    "x1 x2 = x2 x1",
    "x1 x2 x3 = x2 x1 x3",
    "x1 x2 x3 = x1 x3 x2",
    "x1 x2 x3 = x3 x2 x1",
    "x1 x2 x3 = x2 x3 x1",
    "x1 x2 x3 = x3 x1 x2",
    "x1 x2 = x1 x1",
    "x = x x",
    "x1 x2 = x2 x2 x1",
];

#[test]
fn enumeration_counts_and_anti_pairing() {
    let iso = enumerate(4, EnumerationMode::UpToIsomorphism).unwrap();
    let anti = enumerate(4, EnumerationMode::UpToIsoAndAntiIso).unwrap();
    assert_eq!((iso.len(), anti.len()), (188, 126));
    let not_self_dual = iso
        .iter()
        .filter(|s| !s.is_isomorphic(&s.opposite(), IsoMode::Plain))
        .count();
    assert_eq!(not_self_dual, 2 * (iso.len() - anti.len()));
    for s in &anti {
        assert_eq!(
            canonical_form(s, EnumerationMode::UpToIsoAndAntiIso)
                .unwrap()
                .cells(),
            s.cells()
        );
    }
}

#[test]
fn omega_powers_and_regular_elements() {
    for s in small() {
        let e = s.idempotents();
        assert!(e.is_subset(&s.completely_regular()));
        for x in 0..s.order() {
            let w = s.omega_power(x);
            assert_eq!(s.mul(w, w), w);
            assert_eq!(s.omega_plus(x, s.period(x) as u32), w);
        }
    }
}

#[test]
fn evaluation_is_multiplicative() {
    let u = id("x (y x)^w = y^(w+1)");
    let (l, r) = (u.lhs.clone(), u.rhs_term().unwrap().clone());
    let both = Term::concat([l.clone(), r.clone()]);
    for s in small() {
        for a in 0..s.order() {
            for b in 0..s.order() {
                let asg: Assignment = [(Var::from("x"), a), (Var::from("y"), b)].into();
                let lv = l.evaluate(s, &asg).unwrap();
                let rv = r.evaluate(s, &asg).unwrap();
                assert_eq!(both.evaluate(s, &asg).unwrap(), s.mul(lv, rv));
            }
        }
    }
}

#[test]
fn unrolling_preserves_values() {
    for text in ["(x y)^(w+1)", "x^(w+3)", "(x y x)^(w+2)"] {
        let p = semiwork_core::parse_term(text).unwrap();
        let left = p.unroll(Side::Left).unwrap();
        let right = p.unroll(Side::Right).unwrap();
        for s in small() {
            let e1 = Identity::new(p.clone(), left.clone());
            let e2 = Identity::new(p.clone(), right.clone());
            assert!(holds(s, &e1) && holds(s, &e2), "{text}");
        }
    }
}

#[test]
fn restrictions_are_consequences() {
    for text in CATALOG {
        let e = id(text);
        let (l, r) = (e.res_left(), e.res_right());
        for s in small() {
            if holds(s, &e) {
                assert!(holds(s, &l) && holds(s, &r), "{text}");
            }
        }
    }
}

#[test]
fn zero_forms_mean_constant_zero() {
    for text in ["x y x = 0", "x x = 0", "x1 x2 x3 = 0"] {
        let e = id(text);
        let expanded = expand_zero(&e).unwrap();
        let vars = e.variables();
        for s in small() {
            let by_expansion = s.satisfies_all(&expanded);
            let direct = s.zero().is_some_and(|z| {
                let m = s.order();
                let total = m.pow(vars.len() as u32);
                (0..total).all(|mut code| {
                    let mut asg = Assignment::new();
                    for v in &vars {
                        asg.insert(v.clone(), code % m);
                        code /= m;
                    }
                    e.lhs.evaluate(s, &asg).unwrap() == z
                })
            });
            assert_eq!(by_expansion, direct, "{text}");
        }
    }
}

#[test]
fn satisfaction_is_invariant_under_relabeling() {
    let reps = enumerate(3, EnumerationMode::UpToIsomorphism).unwrap();
    let perm = [2, 0, 1];
    for s in &reps {
        let m = s.order();
        let p = |x: usize| perm[x];
        let mut cells = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                cells[p(a) * m + p(b)] = p(s.mul(a, b));
            }
        }
        let t = CayleyTable::from_cells(m, cells).unwrap();
        for text in CATALOG {
            assert_eq!(holds(s, &id(text)), holds(&t, &id(text)));
        }
    }
}

#[test]
fn catalog_classifications_are_sound() {
    for text in CATALOG {
        let p = ProductIdentity::from_identity(&id(text)).unwrap();
        let c = classify(&p).unwrap();
        if let Some(core) = &c.core {
            assert_eq!(c.replay().as_ref(), Some(core));
        }
        let implied = c.implied_identity();
        for s in small() {
            if holds(s, &p.to_identity()) {
                assert!(holds(s, &implied), "{text} on {:?}", s.rows());
            }
        }
    }
}

#[test]
fn derivations_are_sound() {
    let cases = [
        (vec!["x y = y x"], "z x y = z y x"),
        (vec!["z x y = z y x"], "z w x y = z w y x"),
        (vec!["x x = x"], "x y x y = x y"),
        (vec!["x y z = x z y"], "x y z w = x w z y"),
    ];
    for (basis, goal) in cases {
        let basis: Vec<Identity> = basis.iter().map(|b| id(b)).collect();
        let out = derive_search(&basis, &id(goal), Budget::new(6, 4)).unwrap();
        let DeriveOutcome::Derivable(d) = out else {
            panic!("{goal} not derived");
        };
        assert!(d.verify(&basis));
        for s in small() {
            if s.satisfies_all(&basis) {
                assert!(holds(s, &id(goal)), "{goal}");
            }
        }
    }
}

fn arb_rhs(n: usize) -> impl Strategy<Value = Term> {
    let leaf = (1..=n).prop_map(|i| Term::Var(Var::new(format!("x{i}"))));
    leaf.prop_recursive(3, 12, 4, |inner| {
        prop_oneof![
            3 => prop::collection::vec(inner.clone(), 2..5).prop_map(Term::concat),
            1 => (inner, 0u32..2).prop_map(|(b, k)| Term::power(b, k)),
        ]
    })
}

fn arb_product_identity() -> impl Strategy<Value = ProductIdentity> {
    (1usize..=3)
        .prop_flat_map(|n| (Just(n), arb_rhs(n)))
        .prop_filter_map("trivial", |(n, rhs)| {
            let vars = (1..=n).map(|i| Var::new(format!("x{i}"))).collect();
            ProductIdentity::new(vars, rhs).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classification_is_exclusive_and_sound(p in arb_product_identity()) {
        let c = classify(&p).unwrap();
        match &c.verdict {
            Verdict::Permutation(sigma) => {
                prop_assert!(!sigma.is_identity());
                prop_assert!(c.core.is_none());
            }
            Verdict::Acr { n, i, j } => {
                prop_assert!(1 <= *i && i <= j && j <= n);
                let core = c.core.clone().unwrap();
                prop_assert!(core.is_primitive());
                prop_assert_eq!(c.replay(), Some(core));
            }
        }
        let implied = c.implied_identity();
        for s in small() {
            if holds(s, &p.to_identity()) {
                prop_assert!(holds(s, &implied), "{} does not give {}", p, implied);
            }
        }
    }

    #[test]
    fn unroll_sequence_grows_linearly(n in 1usize..=3, extra in prop::collection::vec(0usize..3, 1..4), steps in 0usize..4) {
        let mut word: Vec<Term> = (1..=n).map(|i| Term::Var(Var::new(format!("x{i}")))).collect();
        word.extend(extra.iter().map(|&i| Term::Var(Var::new(format!("x{}", i % n + 1)))));
        let k = extra.len();
        let vars = (1..=n).map(|i| Var::new(format!("x{i}"))).collect();
        let p = ProductIdentity::new(vars, Term::concat(word)).unwrap();
        let seq = p.unroll_sequence(steps).unwrap();
        for (i, t) in seq.iter().enumerate() {
            prop_assert_eq!(t.letters().unwrap().len(), n + i * k);
        }
    }
}
