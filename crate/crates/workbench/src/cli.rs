//! The `semiwork` command line.
//!
//! Exit codes: 0 on success or pass, 1 when a check fails or a
//! counterexample is found, 2 on usage or input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use semiwork_core::classify::{classify_identity, Verdict};
use semiwork_core::zoo::{self, free_quotient};
use semiwork_core::{derive_search, Budget, CayleyTable, DeriveOutcome};
use serde::Serialize;
use serde_json::json;

use crate::enumeration::{max_order, parse_mode, EnumerationSpec};
use crate::input::{identities_arg, identities_arg_as_written, load_identity_file, parse_one};
use crate::json::{read_table, table_json, TableDoc};
use crate::report::Counterexample;
use crate::suites::{self, SuiteOptions};
use crate::WorkbenchError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "semiwork",
    version,
    about = "Finite semigroups and ω-term identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check identities in a semigroup (JSON file or model name like `T(2)`).
    Check {
        semigroup: String,
        /// Identities, `;`-separated lists or identity-set files.
        #[arg(required = true)]
        identities: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Classify a product identity.
    Classify {
        identity: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the Cayley-table JSON of a model: T(k), U(k), W(k), V(k,n),
    /// C(r), N1, K(p) or K(p,a,b,c,d).
    Build {
        model: String,
        /// Write to a file instead of standard output.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Enumerate semigroups of one order.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// iso, iso-anti or raw.
        #[arg(long, default_value = "iso")]
        mode: String,
        /// Keep semigroups satisfying these identities.
        #[arg(long)]
        satisfies: Option<String>,
        /// Keep semigroups failing each of these identities.
        #[arg(long)]
        fails: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
        /// Print only the number of semigroups.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        json: bool,
    },
    /// Quotient of a semigroup by the congruence its identities generate.
    Quotient {
        semigroup: String,
        #[arg(long)]
        by: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite (classification, obstructions, independence,
    /// permutative, enumeration or all).
    Suite {
        name: String,
        /// Write the reports as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Order bound for sweeps; defaults to the enumeration cap.
        #[arg(long)]
        max_order: Option<usize>,
        /// Extra product identities for the classification catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Search for an equational derivation of a finite goal from a basis.
    Derive {
        basis: String,
        goal: String,
        /// Maximum word length and number of steps.
        #[arg(long, default_value = "12,8")]
        budget: String,
        #[arg(long)]
        json: bool,
    },
}

/// Runs the command line on `args` (including the program name).
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(WorkbenchError::Io { source, .. })
            if source.kind() == std::io::ErrorKind::BrokenPipe =>
        {
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<u8, WorkbenchError> {
    match cmd {
        Command::Check {
            semigroup,
            identities,
            json,
        } => check(&semigroup, &identities, json, out),
        Command::Classify { identity, json } => classify(&identity, json, out),
        Command::Build { model, out: path } => {
            let m = zoo::build_named(&model)?;
            emit(&table_json(&m.name, &m.table), path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Enumerate {
            order,
            mode,
            satisfies,
            fails,
            workers,
            count,
            json,
        } => {
            let mut spec = EnumerationSpec::new(order, parse_mode(&mode)?)?;
            if let Some(s) = satisfies {
                spec = spec.satisfying(identities_arg(&s)?);
            }
            if let Some(f) = fails {
                spec = spec.failing(identities_arg(&f)?);
            }
            let found = spec.run(workers)?;
            enumerate_output(&found, count, json, out)?;
            Ok(EXIT_OK)
        }
        Command::Quotient {
            semigroup,
            by,
            out: path,
        } => {
            let (name, s) = load_semigroup(&semigroup)?;
            let q = free_quotient(&s, &identities_arg(&by)?)?;
            let name = format!("{name}/({by})");
            emit(&table_json(&name, &q.table), path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Suite {
            name,
            json,
            max_order: order,
            catalog,
        } => {
            let opts = SuiteOptions {
                max_order: match order {
                    Some(n) => n,
                    None => max_order()?,
                },
                extra_catalog: match catalog {
                    Some(p) => load_identity_file(&p)?,
                    None => Vec::new(),
                },
            };
            let reports = suites::run(&name, &opts)?;
            for r in &reports {
                write_out(out, &r.render_text())?;
            }
            if let Some(p) = json {
                let text = serde_json::to_string_pretty(&reports)?;
                std::fs::write(&p, text + "\n").map_err(|e| WorkbenchError::io(&p, e))?;
            }
            Ok(if reports.iter().all(|r| r.passed) {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::Derive {
            basis,
            goal,
            budget,
            json,
        } => derive(&basis, &goal, &budget, json, out),
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), WorkbenchError> {
    out.write_all(text.as_bytes())
        .map_err(|e| WorkbenchError::io("<stdout>", e))
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), WorkbenchError> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| WorkbenchError::io(p, e)),
        None => write_out(out, &format!("{text}\n")),
    }
}

/// A JSON file, or a model name understood by `build`.
fn load_semigroup(arg: &str) -> Result<(String, CayleyTable), WorkbenchError> {
    let path = Path::new(arg);
    if path.is_file() {
        return read_table(path);
    }
    match zoo::build_named(arg) {
        Ok(m) => Ok((m.name, m.table)),
        Err(_) => Err(WorkbenchError::Usage(format!(
            "{arg:?} is neither a semigroup file nor a model name"
        ))),
    }
}

#[derive(Serialize)]
struct CheckResult {
    identity: String,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<Counterexample>,
}

fn check(
    semigroup: &str,
    args: &[String],
    json: bool,
    out: &mut dyn Write,
) -> Result<u8, WorkbenchError> {
    let (name, s) = load_semigroup(semigroup)?;
    let mut results = Vec::new();
    for a in args {
        for id in identities_arg_as_written(a)? {
            let sat = s.satisfies(&id);
            results.push(CheckResult {
                identity: id.to_string(),
                holds: sat.holds(),
                counterexample: sat.witness().map(|w| Counterexample::new(&name, &s, w)),
            });
        }
    }
    if json {
        write_out(out, &(serde_json::to_string_pretty(&results)? + "\n"))?;
    } else {
        for r in &results {
            match &r.counterexample {
                None => write_out(out, &format!("pass  {}\n", r.identity))?,
                Some(c) => write_out(out, &format!("FAIL  {}\n", c.describe()))?,
            }
        }
    }
    Ok(if results.iter().all(|r| r.holds) {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn classify(text: &str, json: bool, out: &mut dyn Write) -> Result<u8, WorkbenchError> {
    let id = parse_one(text)?;
    let c = classify_identity(&id)?;
    let implied = c.implied_identity();
    let trace: Vec<String> = c.trace.iter().map(|s| s.to_string()).collect();
    if json {
        let mut doc = json!({
            "input": id.to_string(),
            "trace": trace,
            "implied_identity_text": implied.to_string(),
        });
        match &c.verdict {
            Verdict::Permutation(sigma) => {
                doc["verdict"] = json!("Permutation");
                doc["n"] = json!(sigma.degree());
                doc["sigma"] = json!(sigma.images().iter().map(|i| i + 1).collect::<Vec<_>>());
            }
            Verdict::Acr { n, i, j } => {
                doc["verdict"] = json!("ACR");
                doc["n"] = json!(n);
                doc["i"] = json!(i);
                doc["j"] = json!(j);
            }
        }
        write_out(out, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    } else {
        write_out(out, &format!("{}: {implied}\n", c.verdict))?;
        if !trace.is_empty() {
            write_out(out, &format!("trace: {}\n", trace.join(", ")))?;
        }
    }
    Ok(EXIT_OK)
}

fn enumerate_output(
    found: &[CayleyTable],
    count: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<(), WorkbenchError> {
    if count {
        return write_out(out, &format!("{}\n", found.len()));
    }
    if json {
        let docs: Vec<TableDoc> = found
            .iter()
            .enumerate()
            .map(|(k, s)| TableDoc::from_table(&format!("S{}#{k}", s.order()), s))
            .collect();
        return write_out(out, &(serde_json::to_string_pretty(&docs)? + "\n"));
    }
    for s in found {
        write_out(out, &format!("{}\n", serde_json::to_string(&s.rows())?))?;
    }
    write_out(out, &format!("{} semigroups\n", found.len()))
}

fn parse_budget(s: &str) -> Result<Budget, WorkbenchError> {
    let bad = || WorkbenchError::Usage(format!("budget must be LEN,STEPS, got {s:?}"));
    let (l, k) = s.split_once(',').ok_or_else(bad)?;
    let l = l.trim().parse().map_err(|_| bad())?;
    let k = k.trim().parse().map_err(|_| bad())?;
    Ok(Budget::new(l, k))
}

fn derive(
    basis: &str,
    goal: &str,
    budget: &str,
    json: bool,
    out: &mut dyn Write,
) -> Result<u8, WorkbenchError> {
    let basis = identities_arg(basis)?;
    let goal = parse_one(goal)?;
    let budget = parse_budget(budget)?;
    let outcome = derive_search(&basis, &goal, budget)?;
    match &outcome {
        DeriveOutcome::Derivable(d) => {
            let verified = d.verify(&basis);
            if json {
                let steps: Vec<_> = d
                    .steps
                    .iter()
                    .map(|st| {
                        json!({
                            "from": st.from.to_string(),
                            "to": st.to.to_string(),
                            "rule": basis[st.rule].to_string(),
                            "reversed": st.reversed,
                            "position": st.position,
                        })
                    })
                    .collect();
                let doc = json!({"goal": goal.to_string(), "derivable": true, "verified": verified, "steps": steps});
                write_out(out, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
            } else {
                write_out(out, &format!("derivable in {} steps\n", d.steps.len()))?;
                for st in &d.steps {
                    let dir = if st.reversed { "<-" } else { "->" };
                    write_out(
                        out,
                        &format!(
                            "  {}  =  {}   [{dir} {} at {}]\n",
                            st.from, st.to, basis[st.rule], st.position
                        ),
                    )?;
                }
            }
            Ok(if verified { EXIT_OK } else { EXIT_FAILED })
        }
        DeriveOutcome::NotFoundWithinBudget { visited } => {
            if json {
                let doc = json!({"goal": goal.to_string(), "derivable": false, "visited": visited});
                write_out(out, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
            } else {
                write_out(
                    out,
                    &format!("no derivation within budget ({visited} words visited)\n"),
                )?;
            }
            Ok(EXIT_FAILED)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets() {
        assert_eq!(parse_budget("10, 6").unwrap(), Budget::new(10, 6));
        assert!(parse_budget("10").is_err());
        assert!(parse_budget("a,b").is_err());
    }

    #[test]
    fn models_load_by_name() {
        let (name, s) = load_semigroup("T(2)").unwrap();
        assert_eq!((name.as_str(), s.order()), ("T2", 5));
        assert!(load_semigroup("no-such-thing.json").is_err());
    }
}
