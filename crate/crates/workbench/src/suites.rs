//! Verification suites. Each returns a [`SuiteReport`] whose checks are
//! listed in a fixed order, independent of scheduling.

use std::time::Instant;

use rayon::prelude::*;
use semiwork_core::classify::{acr_identity, classify_identity};
use semiwork_core::enumerate::{canonical_form, EnumerationMode, MAX_ENUMERATION_ORDER};
use semiwork_core::zoo::{self, Preset};
use semiwork_core::{CayleyTable, Identity, IsoMode, Permutation};

use crate::catalog;
use crate::enumeration::{mode_name, small_semigroups, EnumerationSpec};
use crate::oracle::implies_oracle;
use crate::report::{Check, Counterexample, SuiteReport};
use crate::WorkbenchError;

pub const SUITE_NAMES: [&str; 5] = [
    "classification",
    "obstructions",
    "independence",
    "permutative",
    "enumeration",
];

/// Default order bound for sweeps over enumerated semigroups.
pub const DEFAULT_SUITE_ORDER: usize = 4;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub max_order: usize,
    /// Product identities added to the built-in classification catalog.
    pub extra_catalog: Vec<Identity>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_order: DEFAULT_SUITE_ORDER,
            extra_catalog: Vec::new(),
        }
    }
}

/// Runs the suite called `name` (or every suite for `all`).
pub fn run(name: &str, opts: &SuiteOptions) -> Result<Vec<SuiteReport>, WorkbenchError> {
    if opts.max_order == 0 || opts.max_order > MAX_ENUMERATION_ORDER {
        return Err(WorkbenchError::Usage(format!(
            "suite order must be between 1 and {MAX_ENUMERATION_ORDER}"
        )));
    }
    let mut catalog = catalog::classification();
    catalog.extend(opts.extra_catalog.iter().cloned());
    match name {
        "classification" => Ok(vec![classification(&catalog, opts.max_order)?]),
        "obstructions" => Ok(vec![
            obstructions(2, opts.max_order)?,
            obstructions(3, opts.max_order)?,
        ]),
        "independence" => Ok(vec![independence(3)?]),
        "permutative" => Ok(vec![permutative(opts.max_order)?]),
        "enumeration" => Ok(vec![enumeration(opts.max_order)?]),
        "all" => {
            let mut out = Vec::new();
            for n in SUITE_NAMES {
                out.extend(run(n, opts)?);
            }
            Ok(out)
        }
        _ => Err(WorkbenchError::Usage(format!(
            "unknown suite {name:?} (expected one of {}, all)",
            SUITE_NAMES.join(", ")
        ))),
    }
}

fn elapsed(start: Instant) -> u128 {
    start.elapsed().as_millis()
}

/// `name ⊨ id`; a failure carries the counterexample.
pub fn expect_holds(name: &str, s: &CayleyTable, id: &Identity, location: &str) -> Check {
    let sat = s.satisfies(id);
    Check::new(format!("{name} satisfies {id}"), location, sat.holds())
        .with_counterexample(sat.witness().map(|w| Counterexample::new(name, s, w)))
}

/// `name ⊭ id`; a pass carries the failing assignment as a witness.
pub fn expect_fails(name: &str, s: &CayleyTable, id: &Identity, location: &str) -> Check {
    let sat = s.satisfies(id);
    Check::new(format!("{name} fails {id}"), location, !sat.holds())
        .with_witness(sat.witness().map(|w| Counterexample::new(name, s, w)))
}

fn expect(name: &str, s: &CayleyTable, id: &Identity, holds: bool, location: &str) -> Check {
    if holds {
        expect_holds(name, s, id, location)
    } else {
        expect_fails(name, s, id, location)
    }
}

/// Classifies every catalog entry and asks the oracle whether the entry
/// implies the identity its verdict names.
pub fn classification(
    catalog: &[Identity],
    max_order: usize,
) -> Result<SuiteReport, WorkbenchError> {
    const LOC: &str = "classification of product identities";
    let start = Instant::now();
    let mut checks = Vec::new();
    for e in catalog {
        let c = classify_identity(e)?;
        let implied = c.implied_identity();
        let replay_ok = match &c.core {
            Some(core) => c.replay().as_ref() == Some(core),
            None => c.replay().is_some(),
        };
        let verdict = implies_oracle(std::slice::from_ref(e), &implied, max_order)?;
        let trace: Vec<String> = c.trace.iter().map(|s| s.to_string()).collect();
        checks.push(
            Check::new(
                format!("{e} classifies as {}, implying {implied}", c.verdict),
                LOC,
                replay_ok && verdict.holds(),
            )
            .with_counterexample(verdict.counterexample().cloned())
            .with_detail(format!(
                "trace [{}]; {}",
                trace.join(", "),
                verdict.describe()
            )),
        );
    }
    let mut r = SuiteReport::new("classification", checks, elapsed(start));
    r.notes.insert(
        String::from("scope"),
        format!(
            "{} catalog identities, oracle over semigroups of order at most {max_order}",
            catalog.len()
        ),
    );
    Ok(r)
}

fn is_nilpotent(s: &CayleyTable) -> bool {
    s.zero()
        .is_some_and(|z| s.power_ideal(s.order()).to_vec() == [z])
}

/// Nilpotent obstructions for `k`-ary identities.
pub fn obstructions(k: usize, max_order: usize) -> Result<SuiteReport, WorkbenchError> {
    const LOC: &str = "nilpotent obstructions";
    if !(2..=3).contains(&k) {
        return Err(WorkbenchError::Usage(format!(
            "obstructions needs k in 2..=3, got {k}"
        )));
    }
    let start = Instant::now();
    let t = zoo::build_t(k)?;
    let u = zoo::build_ufree(k)?;
    let tn = format!("T{k}");
    let un = format!("U{k}");
    let expansions = catalog::expansion_of_arity(k);
    let mut checks = Vec::new();
    for (_, e) in catalog::permutation_identities(k) {
        checks.push(expect_fails(&tn, &t.table, &e, LOC));
    }
    for e in &expansions {
        checks.push(expect_fails(&tn, &t.table, e, LOC));
    }
    for e in &expansions {
        checks.push(expect_fails(&un, &u.table, e, LOC));
    }
    checks.push(expect_holds(
        &un,
        &u.table,
        &semiwork_core::parse_identity("x y = y x").expect("literal"),
        LOC,
    ));
    for e in Preset::T
        .expanded()
        .iter()
        .chain(&Preset::N(k + 1).expanded())
    {
        checks.push(expect_holds(&tn, &t.table, e, LOC));
    }
    for e in Preset::N(k).expanded() {
        checks.push(expect_fails(&tn, &t.table, &e, LOC));
    }

    // A nilpotent semigroup satisfies a k-ary expansion identity iff it is
    // k-nilpotent; checked against the catalog.
    let nk = Preset::N(k).expanded();
    let reps = small_semigroups(max_order, EnumerationMode::UpToIsomorphism)?;
    let rows: Vec<Option<(bool, bool)>> = reps
        .par_iter()
        .map(|s| {
            is_nilpotent(s).then(|| {
                let some = expansions.iter().any(|e| s.satisfies(e).holds());
                (some, s.satisfies_all(&nk))
            })
        })
        .collect();
    let nilpotent = rows.iter().flatten().count();
    let bad = rows
        .iter()
        .position(|r| matches!(r, Some((a, b)) if a != b));
    let mut check = Check::new(
        format!(
            "nilpotent semigroups of order at most {max_order} satisfy a catalog {k}-ary expansion identity iff they satisfy x1..x{k} = 0"
        ),
        LOC,
        bad.is_none(),
    )
    .with_detail(format!("{nilpotent} nilpotent semigroups checked"));
    if let Some(i) = bad {
        check = check.with_detail(format!(
            "violated by {}",
            crate::json::table_json(&format!("S{}", reps[i].order()), &reps[i])
        ));
    }
    checks.push(check);
    let mut r = SuiteReport::new(&format!("obstructions(k={k})"), checks, elapsed(start));
    r.notes.insert(
        String::from("scope"),
        format!(
            "{} catalog expansion identities of arity {k}",
            expansions.len()
        ),
    );
    Ok(r)
}

/// Membership of the witness semigroups in the `n`-ary ACR classes, the
/// free-quotient permutation lattice and the monogenic separator.
pub fn independence(n: usize) -> Result<SuiteReport, WorkbenchError> {
    const LOC: &str = "incomparability of ACR and permutation classes";
    if !(2..=4).contains(&n) {
        return Err(WorkbenchError::Usage(format!(
            "independence needs n in 2..=4, got {n}"
        )));
    }
    let start = Instant::now();
    let mut checks = Vec::new();
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
    for k in 1..=n {
        let w = zoo::build_w(k)?;
        let v = zoo::build_v(k, n)?;
        for &(i, j) in &pairs {
            let acr = acr_identity(n, i, j)?;
            checks.push(expect(&format!("W{k}"), &w.table, &acr, k <= j, LOC));
            checks.push(expect(&format!("V({k},{n})"), &v.table, &acr, k > j, LOC));
        }
    }

    let perms = catalog::permutation_identities(n);
    let t = zoo::build_t(n)?;
    for (sigma, e) in &perms {
        let q = zoo::free_quotient(&t.table, std::slice::from_ref(e))?;
        let group: Vec<Permutation> = sigma.cyclic_subgroup();
        for (tau, f) in &perms {
            let name = format!("T{n}/{sigma}");
            checks.push(expect(&name, &q.table, f, group.contains(tau), LOC));
        }
    }

    let c = zoo::build_c(n + 1)?;
    let cn = format!("C{}", n + 1);
    for (_, e) in &perms {
        checks.push(expect_holds(&cn, &c.table, e, LOC));
    }
    for &(i, j) in &pairs {
        checks.push(expect_fails(&cn, &c.table, &acr_identity(n, i, j)?, LOC));
    }
    Ok(SuiteReport::new(
        &format!("independence(n={n})"),
        checks,
        elapsed(start),
    ))
}

/// Outcome of a conditional property on one semigroup.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Cond {
    Vacuous,
    Holds,
    Violated,
}

fn cond(antecedent: bool, consequent: impl FnOnce() -> bool) -> Cond {
    match (antecedent, antecedent && consequent()) {
        (false, _) => Cond::Vacuous,
        (true, true) => Cond::Holds,
        (true, false) => Cond::Violated,
    }
}

fn sweep_check(
    reps: &[CayleyTable],
    claim: String,
    location: &str,
    f: impl Fn(&CayleyTable) -> Cond + Sync + Send,
) -> Check {
    let out: Vec<Cond> = reps.par_iter().map(f).collect();
    let applies = out.iter().filter(|c| **c != Cond::Vacuous).count();
    let bad = out.iter().position(|c| *c == Cond::Violated);
    let check = Check::new(claim, location, bad.is_none()).with_detail(format!(
        "{applies} of {} semigroups meet the hypothesis",
        reps.len()
    ));
    match bad {
        None => check,
        Some(i) => check.with_detail(format!(
            "violated by {}",
            crate::json::table_json(&format!("S{}", reps[i].order()), &reps[i])
        )),
    }
}

/// Structural consequences of product identities, swept over every
/// semigroup of order at most `max_order`.
pub fn permutative(max_order: usize) -> Result<SuiteReport, WorkbenchError> {
    const LOC: &str = "structure of semigroups with product identities";
    let start = Instant::now();
    let reps = small_semigroups(max_order, EnumerationMode::UpToIsomorphism)?;
    let perms: Vec<Identity> = (2..=3)
        .flat_map(catalog::permutation_identities)
        .map(|(_, e)| e)
        .collect();
    let mut products = catalog::classification();
    products.extend(catalog::expansion());
    products.extend(perms.iter().cloned());
    let xyx = semiwork_core::parse_identity("x y = y x y").expect("literal");
    let medial = Preset::Medial.expanded();
    let perm = Preset::Perm.expanded();
    let some_perm = |s: &CayleyTable| perms.iter().any(|e| s.satisfies(e).holds());
    let bound = format!("order at most {max_order}");

    let mut checks = vec![
        sweep_check(
            &reps,
            format!("x y = y x y implies S^2 = SES = I(S), {bound}"),
            LOC,
            |s| {
                cond(s.satisfies(&xyx).holds(), || {
                    let all = s.all();
                    let ses = s.set_product(&s.set_product(&all, &s.idempotents()), &all);
                    let i = s.completely_regular();
                    s.power_ideal(2) == ses && ses == i
                })
            },
        ),
        sweep_check(
            &reps,
            format!(
                "a nontrivial catalog product identity implies I(S) is a subsemigroup, {bound}"
            ),
            LOC,
            |s| {
                cond(products.iter().any(|e| s.satisfies(e).holds()), || {
                    let i = s.completely_regular();
                    s.set_product(&i, &i).is_subset(&i)
                })
            },
        ),
        sweep_check(
            &reps,
            format!("completely regular and permutative implies medial, {bound}"),
            LOC,
            |s| {
                cond(
                    s.completely_regular().len() == s.order() && some_perm(s),
                    || s.satisfies_all(&medial),
                )
            },
        ),
        sweep_check(
            &reps,
            format!("a permutation identity of arity at most 3 implies the Perm identity, {bound}"),
            LOC,
            |s| cond(some_perm(s), || s.satisfies_all(&perm)),
        ),
    ];
    let t2 = zoo::build_t(2)?;
    for preset in [Preset::VN1, Preset::VY, Preset::VQ] {
        for e in preset.expanded() {
            let mut c = expect_holds("T2", &t2.table, &e, LOC);
            c.claim = format!("{} ({preset})", c.claim);
            checks.push(c);
        }
    }
    Ok(SuiteReport::new("permutative", checks, elapsed(start)))
}

/// Cross-mode consistency of the enumerator.
pub fn enumeration(max_order: usize) -> Result<SuiteReport, WorkbenchError> {
    const LOC: &str = "enumeration of small semigroups";
    let start = Instant::now();
    let mut checks = Vec::new();
    let mut counts = Vec::new();
    let run = |n: usize, mode: EnumerationMode, workers: Option<usize>| {
        EnumerationSpec {
            order: n,
            mode,
            must_satisfy: Vec::new(),
            must_fail: Vec::new(),
        }
        .run(workers)
    };
    for n in 1..=max_order {
        let iso = run(n, EnumerationMode::UpToIsomorphism, None)?;
        let anti = run(n, EnumerationMode::UpToIsoAndAntiIso, None)?;
        let not_self_dual = iso
            .par_iter()
            .filter(|s| !s.is_isomorphic(&s.opposite(), IsoMode::Plain))
            .count();
        counts.push(format!("{n}: {}/{}", iso.len(), anti.len()));
        checks.push(Check::new(
            format!(
                "order {n}: {} classes up to isomorphism, at least the {} up to anti-isomorphism",
                iso.len(),
                anti.len()
            ),
            LOC,
            iso.len() >= anti.len(),
        ));
        checks.push(Check::new(
            format!("order {n}: the {not_self_dual} non-self-dual classes pair up to give the difference"),
            LOC,
            not_self_dual % 2 == 0 && iso.len() - anti.len() == not_self_dual / 2,
        ));
        for (mode, out) in [
            (EnumerationMode::UpToIsomorphism, &iso),
            (EnumerationMode::UpToIsoAndAntiIso, &anti),
        ] {
            let closed = out
                .par_iter()
                .all(|s| canonical_form(s, mode).is_ok_and(|c| &c == s));
            checks.push(Check::new(
                format!(
                    "order {n}: {} output is fixed by re-canonicalization",
                    mode_name(mode)
                ),
                LOC,
                closed,
            ));
        }
        let inequivalent = iso.par_iter().enumerate().all(|(a, s)| {
            iso[a + 1..]
                .iter()
                .all(|t| !s.is_isomorphic(t, IsoMode::Plain))
        });
        checks.push(Check::new(
            format!("order {n}: iso representatives are pairwise non-isomorphic"),
            LOC,
            inequivalent,
        ));
    }
    for mode in [
        EnumerationMode::UpToIsomorphism,
        EnumerationMode::UpToIsoAndAntiIso,
    ] {
        let one = run(max_order, mode, Some(1))?;
        let four = run(max_order, mode, Some(4))?;
        checks.push(Check::new(
            format!(
                "order {max_order}: {} output is the same with 1 and 4 workers",
                mode_name(mode)
            ),
            LOC,
            one == four,
        ));
    }
    let mut r = SuiteReport::new("enumeration", checks, elapsed(start));
    r.notes
        .insert(String::from("counts (iso/iso-anti)"), counts.join(", "));
    Ok(r)
}
