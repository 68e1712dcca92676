//! `malcev`: replica congruences, Mal'tsev product membership, `Σ^p`
//! generation and f/g witness search from the command line.
//!
//! Exit codes: 0 pass, 1 semantic failure, 2 usage or input error.

mod load;
mod suite;

use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use malcev::congruence::all_congruences_with_guard;
use malcev::replica::{h_closure_probe, maltsev_member, relative_member, replica_congruence};
use malcev::sigma_p::{sigma_p_generate, sigma_p_holds_in, SigmaPConfig};
use malcev::witness::fg_search;
use malcev::{FiniteAlgebra, Identity, Partition};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "malcev", version, about = "Mal'tsev products of varieties on finite algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// JSON
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Check an identity in an algebra.
    Check {
        /// Algebra file or builtin name.
        algebra: String,
        /// `lhs = rhs` in prefix syntax.
        identity: String,
    },
    /// The replica congruence of an algebra for a variety.
    Replica {
        algebra: String,
        #[arg(long)]
        variety: String,
        /// Decide the variety by evaluation in this algebra.
        #[arg(long)]
        generated_by: Option<String>,
    },
    /// Membership in V∘W, or in V∘_K W with `--k`.
    Member {
        algebra: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        v_generated_by: Option<String>,
        #[arg(long)]
        w_generated_by: Option<String>,
    },
    /// Quotients of an algebra that leave V∘W.
    ProbeH {
        algebra: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
    },
    /// Generate `Σ^p` from a base of V and a variety W.
    SigmaP {
        /// Identity file holding the base of V.
        #[arg(long)]
        v_base: String,
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = 2)]
        pool: usize,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long)]
        max_results: Option<usize>,
        #[arg(long)]
        no_dedup: bool,
        /// Also check every generated identity in this algebra.
        #[arg(long)]
        holds_in: Option<String>,
    },
    /// Search for binary terms f, g with V ⊨ f = x, V ⊨ g = y, W ⊨ f = g.
    FindFg {
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
    /// All congruences of an algebra.
    Congruences { algebra: String },
    /// Replay the published finite examples.
    #[command(name = "verify-paper")]
    Examples {
        /// Print check names without running them.
        #[arg(long)]
        list: bool,
        /// Override a fixture, `A=path` or `B=path`.
        #[arg(long, value_name = "NAME=PATH")]
        fixture: Vec<String>,
    },
}

struct Output {
    text: String,
    data: Value,
    pass: bool,
}

fn labelled(alg: &FiniteAlgebra, p: &Partition) -> String {
    p.display_with(&|e| alg.label(e))
}

fn run(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Check { algebra, identity } => {
            let alg = load::algebra(&algebra)?;
            let id = Identity::parse(&identity, alg.signature())?;
            let cex = alg.counterexample(&id)?;
            let text = match &cex {
                None => format!("pass {id}\n"),
                Some(env) => {
                    let env: Vec<String> = env.iter().map(|(v, e)| format!("{v}={}", alg.label(*e))).collect();
                    format!("fail {id} at {}\n", env.join(", "))
                }
            };
            let data = json!({
                "identity": id,
                "holds": cex.is_none(),
                "counterexample": cex.as_ref().map(|env| env.iter().map(|(v, e)| (v.to_string(), *e)).collect::<Vec<_>>()),
            });
            Ok(Output { text, data, pass: cex.is_none() })
        }
        Command::Replica { algebra, variety, generated_by } => {
            let alg = load::algebra(&algebra)?;
            let w = load::variety(&variety, Some(alg.signature()), generated_by.as_deref())?;
            let rho = replica_congruence(&alg, &w)?;
            let text = format!("{}\n", labelled(&alg, &rho));
            Ok(Output { text, data: json!({ "variety": w.name(), "replica": rho }), pass: true })
        }
        Command::Member { algebra, v, w, k, v_generated_by, w_generated_by } => {
            let alg = load::algebra(&algebra)?;
            let sig = Some(alg.signature());
            let v = load::variety(&v, sig, v_generated_by.as_deref())?;
            let w = load::variety(&w, sig, w_generated_by.as_deref())?;
            let report = match k {
                Some(k) => relative_member(&alg, &v, &w, &load::variety(&k, sig, None)?)?,
                None => maltsev_member(&alg, &v, &w)?,
            };
            Ok(Output { text: report.to_string(), data: serde_json::to_value(&report)?, pass: report.member })
        }
        Command::ProbeH { algebra, v, w } => {
            let alg = load::algebra(&algebra)?;
            let sig = Some(alg.signature());
            let (v, w) = (load::variety(&v, sig, None)?, load::variety(&w, sig, None)?);
            let report = h_closure_probe(&alg, &v, &w, load::guard()?)?;
            let pass = report.failures.is_empty();
            Ok(Output { text: report.to_string(), data: serde_json::to_value(&report)?, pass })
        }
        Command::SigmaP { v_base, w, pool, max_size, max_results, no_dedup, holds_in } => {
            let w = load::variety(&w, None, None)?;
            let base = load::identities(&v_base, w.signature())?;
            let cfg = SigmaPConfig { pool, max_term_size: max_size, max_results, dedup: !no_dedup };
            let emissions: Vec<_> = sigma_p_generate(&base, &w, &cfg)?.collect();
            let mut text: String = emissions.iter().map(|e| format!("{}\n", e.identity)).collect();
            let mut data = json!({ "emissions": emissions });
            let mut pass = true;
            if let Some(path) = holds_in {
                let alg = load::algebra(&path)?;
                let ids: Vec<Identity> = emissions.iter().map(|e| e.identity.clone()).collect();
                let report = sigma_p_holds_in(&alg, &ids)?;
                text = report.to_string();
                pass = report.all_pass;
                data["holds"] = serde_json::to_value(&report)?;
            }
            Ok(Output { text, data, pass })
        }
        Command::FindFg { v, w, max_size } => {
            let (v, w) = (load::variety(&v, None, None)?, load::variety(&w, None, None)?);
            match fg_search(&v, &w, max_size)? {
                Some(found) => Ok(Output { text: found.to_string(), data: serde_json::to_value(&found)?, pass: true }),
                None => Ok(Output {
                    text: format!("no witness with terms of size at most {max_size}\n"),
                    data: json!({ "witness": null, "max_size": max_size }),
                    pass: false,
                }),
            }
        }
        Command::Congruences { algebra } => {
            let alg = load::algebra(&algebra)?;
            let all = all_congruences_with_guard(&alg, load::guard()?)?;
            let text: String = all.iter().map(|p| format!("{}\n", labelled(&alg, p))).collect();
            Ok(Output { text, data: json!({ "congruences": all }), pass: true })
        }
        Command::Examples { list, fixture } => replay_examples(list, &fixture),
    }
}

fn replay_examples(list: bool, overrides: &[String]) -> Result<Output> {
    if list {
        let text = suite::CHECKS.iter().map(|c| format!("{:<22}{}\n", c.name, c.about)).collect();
        let data = suite::CHECKS.iter().map(|c| json!({ "name": c.name, "about": c.about })).collect();
        return Ok(Output { text, data: Value::Array(data), pass: true });
    }
    let mut fx = suite::Fixtures::builtin(load::guard()?);
    for o in overrides {
        let (name, path) = o.split_once('=').ok_or_else(|| anyhow!("--fixture expects NAME=PATH, got `{o}`"))?;
        let alg = load::algebra(path).with_context(|| format!("fixture {name}"))?;
        fx.set(name, alg)?;
    }
    let start = Instant::now();
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failed = 0;
    for c in suite::CHECKS {
        let outcome = (c.run)(&fx);
        match &outcome {
            Ok(()) => text.push_str(&format!("ok   {}\n", c.name)),
            Err(why) => {
                failed += 1;
                text.push_str(&format!("FAIL {}: {why}\n", c.name));
            }
        }
        rows.push(json!({ "name": c.name, "pass": outcome.is_ok(), "reason": outcome.err() }));
    }
    let total = suite::CHECKS.len();
    text.push_str(&format!("{}/{total} checks passed\n", total - failed));
    // elapsed time goes to stderr so stdout stays byte-identical across runs
    eprintln!("examples replayed in {} ms", start.elapsed().as_millis());
    Ok(Output { text, data: json!({ "checks": rows, "failed": failed }), pass: failed == 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Structured => {
                    let mut data = out.data;
                    if let Value::Object(map) = &mut data {
                        map.insert("pass".into(), Value::Bool(out.pass));
                    }
                    println!("{}", serde_json::to_string_pretty(&data).expect("values serialize"));
                }
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
