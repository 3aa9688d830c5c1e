// Copyright 2026 The divrank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! `divrank`: evaluate diversity rank functions, check their axioms, and
//! run dependence and independence inference.
//!
//! Exit status: 0 on success (valid, derivable, round-trip holds), 1 on a
//! semantic negative (axiom failure, not derivable, round-trip fails), 2 on
//! usage and input errors.

mod model;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use divrank_core::axioms::{self, Verdict};
use divrank_core::formats;
use divrank_core::{dep, indep, represent};
use divrank_core::{Assertion, AssertionSet, AtomKind, Error, GroundSet, Team};
use serde_json::{json, Value};

use model::{read, ModelArgs};

#[derive(Parser, Debug)]
#[command(name = "divrank", version, about = "Diversity rank functions and dependence/independence inference")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the rank of each subset, e.g. `a,b` (use "" for the empty set)
    Rank {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(required = true, value_name = "SUBSET")]
        subsets: Vec<String>,
    },
    /// Check R1-R4, SUBM and the interaction laws
    Check {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// List every dependence and independence atom that holds
    Atoms {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Decide whether a goal follows from a set of assertions
    Infer {
        #[command(flatten)]
        problem: Problem,
    },
    /// Write a team satisfying the assertions but not the goal
    Counterexample {
        #[command(flatten)]
        problem: Problem,
    },
    /// Realize an Armstrong-closed set of dependence atoms as a rank table
    Represent {
        #[arg(long, value_name = "FILE")]
        assertions: PathBuf,
        /// Close the set under Armstrong's axioms first
        #[arg(long)]
        close: bool,
        /// Write the table here instead of standard output
        #[arg(long, value_name = "JSON")]
        out: Option<PathBuf>,
        /// Also write the class order as a DOT graph
        #[arg(long, value_name = "DOT")]
        dot: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct Problem {
    #[arg(long, value_name = "FILE")]
    assertions: PathBuf,
    /// Goal atom, e.g. "dep: a -> b" or "indep: a _||_ b"
    #[arg(long)]
    goal: String,
    /// Where to write the countermodel team ("-" for standard output)
    #[arg(long, value_name = "CSV", default_value = "countermodel.csv")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Rank { model, subsets } => cmd_rank(cli.format, model, subsets),
        Command::Check { model } => cmd_check(cli.format, model),
        Command::Atoms { model } => cmd_atoms(cli.format, model),
        Command::Infer { problem } => cmd_infer(cli.format, problem, false),
        Command::Counterexample { problem } => cmd_infer(cli.format, problem, true),
        Command::Represent {
            assertions,
            close,
            out,
            dot,
        } => cmd_represent(cli.format, assertions, *close, out.as_deref(), dot.as_deref()),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_rank(format: Format, args: &ModelArgs, subsets: &[String]) -> Result<ExitCode> {
    let model = args.load()?;
    let g = model.ground();
    let mut ranks = Vec::new();
    for s in subsets {
        let x = g.parse_subset(s).with_context(|| format!("subset `{s}`"))?;
        ranks.push((x, model.rank(x)?));
    }
    match format {
        Format::Human => {
            for (_, v) in &ranks {
                println!("{v}");
            }
        }
        Format::Json => print_json(&json!({
            "model": model.to_string(),
            "ranks": ranks.iter().map(|(x, v)| json!({
                "subset": g.format(*x),
                "value": v.to_string(),
                "approx": v.to_f64(),
            })).collect::<Vec<_>>(),
        })),
    }
    Ok(ExitCode::SUCCESS)
}

fn verdict_json(ground: &GroundSet, name: &str, vars: &[char], v: &Verdict) -> Value {
    let mut out = json!({ "name": name, "pass": v.passed() });
    match v {
        Verdict::Pass => {}
        Verdict::Sampled(n) => out["sampled"] = json!(n),
        Verdict::Fail(w) => {
            let mut wj = json!({
                "expression": w.expression,
                "lhs": w.lhs.to_string(),
                "relation": w.relation,
                "rhs": w.rhs.to_string(),
            });
            for (c, set) in vars.iter().zip([w.x, w.y, w.z]) {
                wj[c.to_string()] = json!(ground.format(set));
            }
            out["witness"] = wj;
        }
    }
    out
}

fn cmd_check(format: Format, args: &ModelArgs) -> Result<ExitCode> {
    let opts = args.options();
    let model = match args.load() {
        Ok(m) => m,
        Err(e) => match e.downcast::<Error>() {
            // An explicit table rejected on construction is a negative verdict.
            Ok(Error::AxiomViolation(report)) => {
                match format {
                    Format::Human => print!("{report}"),
                    Format::Json => print_json(&json!({
                        "valid": false,
                        "axioms": report.verdicts.iter()
                            .map(|(a, v)| verdict_json(&report.ground, a.name(), a.vars(), v))
                            .collect::<Vec<_>>(),
                    })),
                }
                return Ok(ExitCode::from(1));
            }
            Ok(other) => return Err(other.into()),
            Err(e) => return Err(e),
        },
    };
    let report = axioms::check_axioms(&model, &opts)?;
    let interaction = axioms::check_interaction(&model, &opts)?;
    let g = model.ground();
    match format {
        Format::Human => {
            println!("{model}");
            print!("{report}{interaction}");
        }
        Format::Json => {
            let mut laws: Vec<Value> = report
                .verdicts
                .iter()
                .map(|(a, v)| verdict_json(g, a.name(), a.vars(), v))
                .collect();
            laws.push(verdict_json(g, "Constancy Equivalence", &['x'], &interaction.constancy_equivalence));
            laws.push(verdict_json(g, "Propagation", &['x', 'y', 'z'], &interaction.propagation));
            print_json(&json!({
                "model": model.to_string(),
                "valid": report.is_diversity_rank(),
                "axioms": laws,
            }));
        }
    }
    Ok(code(report.is_diversity_rank()))
}

fn cmd_atoms(format: Format, args: &ModelArgs) -> Result<ExitCode> {
    let model = args.load()?;
    let atoms = axioms::atoms_of(&model, args.cap)?;
    let g = model.ground();
    let lines: Vec<String> = atoms.iter().map(|a| a.display(g).to_string()).collect();
    match format {
        Format::Human => {
            println!("universe: {}", g.names().join(" "));
            for l in &lines {
                println!("{l}");
            }
        }
        Format::Json => print_json(&json!({ "universe": g.names(), "atoms": lines })),
    }
    Ok(ExitCode::SUCCESS)
}

fn write_team(out: &Path, team: &Team) -> Result<()> {
    let csv = formats::team_to_csv(team);
    if out == Path::new("-") {
        print!("{csv}");
        Ok(())
    } else {
        fs::write(out, csv).with_context(|| format!("cannot write {}", out.display()))
    }
}

fn is_dep_family(kind: AtomKind) -> bool {
    kind != AtomKind::Indep
}

struct Refutation {
    team: Team,
    notes: Vec<(String, String)>,
}

fn cmd_infer(format: Format, p: &Problem, counterexample_only: bool) -> Result<ExitCode> {
    let text = read(&p.assertions)?;
    let (sigma, goal) = AssertionSet::parse_with_goal(&text, &p.assertions.display().to_string(), &p.goal)?;
    let dep_side = sigma.iter().any(|a| is_dep_family(a.kind));
    let indep_side = sigma.iter().any(|a| !is_dep_family(a.kind));
    let goal_dep = is_dep_family(goal.kind);
    if (dep_side && indep_side) || (goal_dep && indep_side) || (!goal_dep && dep_side) {
        bail!("combined inference unsupported (open problem): dependence and independence atoms cannot be mixed");
    }
    let g = sigma.universe().clone();
    let goal_text = goal.display(&g).to_string();
    let (proof, refutation) = if goal_dep {
        match dep::derive(&sigma, &goal)? {
            Some(d) => (Some(d.render(&g)), None),
            None => {
                let cm = dep::dep_countermodel(&sigma, &goal)?;
                let notes = vec![
                    ("closure".into(), g.display(cm.closed)),
                    ("two-valued ones".into(), g.display(g.full().difference(cm.closed))),
                ];
                (None, Some(Refutation { team: cm.team, notes }))
            }
        }
    } else {
        let st = indep::indep_saturate(&sigma)?;
        if st.contains(goal.lhs, goal.rhs) {
            (st.explain(goal.lhs, goal.rhs), None)
        } else {
            let (x, y) = st.minimize(goal.lhs, goal.rhs)?;
            let team = st.countermodel(goal.lhs, goal.rhs)?;
            let notes = vec![
                ("minimal refuted atom".into(), Assertion::indep(x, y).display(&g).to_string()),
                ("constant attributes".into(), g.display(st.constancy_set())),
            ];
            (None, Some(Refutation { team, notes }))
        }
    };
    if let Some(r) = &refutation {
        verify_countermodel(&sigma, &goal, &r.team)?;
    }
    match (proof, refutation) {
        (Some(proof), None) => {
            match format {
                Format::Human if counterexample_only => println!("DERIVABLE: {goal_text} has no countermodel"),
                Format::Human => print!("DERIVABLE\n{proof}"),
                Format::Json => print_json(&json!({
                    "goal": goal_text,
                    "derivable": true,
                    "derivation": proof.lines().map(str::trim).collect::<Vec<_>>(),
                })),
            }
            Ok(code(!counterexample_only))
        }
        (None, Some(r)) => {
            write_team(&p.out, &r.team)?;
            let to_stdout = p.out == Path::new("-");
            match format {
                Format::Human if to_stdout => {}
                Format::Human => {
                    if !counterexample_only {
                        println!("NOT DERIVABLE");
                    }
                    for (k, v) in &r.notes {
                        println!("{k}: {v}");
                    }
                    println!("countermodel: {} rows written to {}", r.team.len(), p.out.display());
                }
                Format::Json => {
                    let mut v = json!({
                        "goal": goal_text,
                        "derivable": false,
                        "countermodel": p.out.display().to_string(),
                        "rows": r.team.len(),
                    });
                    for (k, val) in &r.notes {
                        v[k.as_str()] = json!(val);
                    }
                    if !to_stdout {
                        print_json(&v);
                    }
                }
            }
            Ok(code(counterexample_only))
        }
        _ => unreachable!("exactly one of proof and refutation"),
    }
}

/// Re-checks a countermodel by exact row counts before it is reported.
fn verify_countermodel(sigma: &AssertionSet, goal: &Assertion, team: &Team) -> Result<()> {
    let holds = |a: &Assertion| {
        let a = a.normalized();
        match a.kind {
            AtomKind::Indep => indep::team_satisfies(team, a.lhs, a.rhs),
            _ => team.count(a.lhs.union(a.rhs)) == team.count(a.lhs),
        }
    };
    if holds(goal) || !sigma.iter().all(holds) {
        return Err(anyhow!("internal error: countermodel failed verification"));
    }
    Ok(())
}

fn cmd_represent(format: Format, path: &Path, close: bool, out: Option<&Path>, dot: Option<&Path>) -> Result<ExitCode> {
    let mut sigma = AssertionSet::parse(&read(path)?, &path.display().to_string())?;
    if close {
        sigma = dep::armstrong_close(&sigma)?;
    }
    let poset = match represent::build_poset(&sigma) {
        Ok(p) => p,
        Err(Error::NotClosed(missing)) => {
            eprintln!("not closed under Armstrong's axioms: missing {missing} (use --close)");
            return Ok(ExitCode::from(1));
        }
        Err(e) => return Err(e.into()),
    };
    let f = represent::assign_values(&poset);
    let table = represent::table_from(&poset, &f)?;
    let mismatch = represent::roundtrip_mismatch(&sigma, &table)?;
    if let Some(d) = dot {
        fs::write(d, poset.to_dot()).with_context(|| format!("cannot write {}", d.display()))?;
    }
    let table_json = formats::explicit_to_json(&table);
    if let Some(o) = out {
        fs::write(o, &table_json).with_context(|| format!("cannot write {}", o.display()))?;
    }
    let g = sigma.universe();
    match format {
        Format::Human => {
            println!("classes: {}", poset.len());
            if out.is_none() {
                print!("{table_json}");
            } else if let Some(o) = out {
                println!("table written to {}", o.display());
            }
            match mismatch {
                None => println!("roundtrip: OK"),
                Some(a) => println!("roundtrip: FAILED at {}", a.display(g)),
            }
        }
        Format::Json => {
            let table: Value = serde_json::from_str(&table_json).expect("own JSON parses");
            print_json(&json!({
                "classes": poset.len(),
                "table": table,
                "roundtrip": mismatch.is_none(),
            }));
        }
    }
    Ok(code(mismatch.is_none()))
}
