//! `topmono` command-line tool.
//!
//! Exit codes: 0 when the property holds (or the command simply produced
//! its output), 1 when it does not, 2 on bad input or a capacity or
//! precondition failure, 3 when the solver node budget runs out.

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use topmono::format::{
    format_order, parse_nb, parse_order, parse_partial_profile, parse_profile, write_nb, write_partial_profile,
    write_weak_profile, ProfileDocument,
};
use topmono::report::{analyze, CheckReport, DocumentReport, ErrorReport, SolveReport, TestReport};
use topmono::{
    extract_constraints, generate, reduce_nb_to_profile, single_peaked_extension, solve_nb, test_tm,
    test_tm_bruteforce, test_tm_partial, verify_tm, Limits, ProfileKind, SolverOptions, TmDecision, ViolationReason,
    WeakProfile,
};

#[derive(Parser)]
#[command(name = "topmono", version, about = "Test preference profiles for top monotonicity")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one linear order against the between-tops condition.
    Check {
        #[arg(long)]
        profile: PathBuf,
        /// Order such as `x>y>z`.
        #[arg(long)]
        order: String,
    },
    /// Decide whether some order works.
    Test {
        #[arg(long)]
        profile: PathBuf,
        /// Scan all permutations instead of solving constraints.
        #[arg(long)]
        brute_force: bool,
        /// Abort the constraint search after this many nodes.
        #[arg(long, value_name = "NODES")]
        budget: Option<u64>,
    },
    /// Print the non-betweenness constraints of a profile.
    ExtractNb {
        #[arg(long)]
        profile: PathBuf,
    },
    /// Find an order satisfying a constraint file, or report UNSAT.
    SolveNb {
        #[arg(long)]
        constraints: PathBuf,
        #[arg(long, value_name = "NODES")]
        budget: Option<u64>,
    },
    /// Build the partial-order gadget profile of a constraint file.
    Reduce {
        #[arg(long)]
        constraints: PathBuf,
    },
    /// Decide top monotonicity of a partial-order profile.
    TestPartial {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, value_name = "NODES")]
        budget: Option<u64>,
        /// Allow more voters than the default cap.
        #[arg(long)]
        max_voters: Option<usize>,
    },
    /// Extend a gadget profile to a single-peaked one along a witness order.
    SpExtend {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        order: String,
    },
    /// Generate a random profile.
    Gen {
        /// random-weak, random-linear, dichotomous or single-peaked
        #[arg(long)]
        kind: String,
        #[arg(long)]
        alts: usize,
        #[arg(long)]
        voters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Summarize a weak-order profile as JSON.
    Analyze {
        #[arg(long)]
        profile: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Test { .. } => "test",
            Command::ExtractNb { .. } => "extract-nb",
            Command::SolveNb { .. } => "solve-nb",
            Command::Reduce { .. } => "reduce",
            Command::TestPartial { .. } => "test-partial",
            Command::SpExtend { .. } => "sp-extend",
            Command::Gen { .. } => "gen",
            Command::Analyze { .. } => "analyze",
        }
    }
}

enum Failure {
    Io(PathBuf, io::Error),
    Lib(topmono::Error),
}

impl From<topmono::Error> for Failure {
    fn from(e: topmono::Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    Ok(text)
}

fn read_weak(path: &Path) -> Result<WeakProfile, Failure> {
    match parse_profile(&read_input(path)?)? {
        ProfileDocument::Weak(p) => Ok(p),
        ProfileDocument::Partial(_) => {
            Err(topmono::Error::Input("this is a partial-order profile; use `test-partial`".into()).into())
        }
    }
}

fn options(budget: Option<u64>) -> SolverOptions {
    SolverOptions {
        node_budget: budget,
        ..SolverOptions::default()
    }
}

fn code(ok: bool) -> ExitCode {
    ExitCode::from(if ok { 0 } else { 1 })
}

struct Out {
    json: bool,
}

impl Out {
    fn json<T: Serialize>(&self, value: &T) {
        println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
    }

    fn document(&self, command: &'static str, document: String) {
        if self.json {
            self.json(&DocumentReport { command, document });
        } else {
            print!("{document}");
        }
    }

    fn decision(
        &self,
        command: &'static str,
        method: &'static str,
        profile_alts: &topmono::Alternatives,
        d: &TmDecision,
    ) {
        if self.json {
            self.json(&TestReport::new(command, method, profile_alts, d));
            return;
        }
        if d.is_top_monotonic() {
            println!("top monotonic");
            if let Some(w) = &d.witness {
                println!("witness: {}", format_order(profile_alts, w));
            }
        } else {
            println!("not top monotonic");
        }
        if let Some(c) = &d.certificate {
            println!("constraints: {}", c.len());
        }
        if let Some(ext) = &d.extension {
            println!("extension:");
            print!("{}", write_weak_profile(ext));
        }
    }
}

fn run(cmd: &Command, out: &Out) -> Outcome {
    match cmd {
        Command::Check { profile, order } => {
            let p = read_weak(profile)?;
            let o = parse_order(p.alternatives(), order)?;
            let verdict = verify_tm(&p, &o)?;
            let text = format_order(p.alternatives(), &o);
            if out.json {
                out.json(&CheckReport::new(&p, text, &verdict));
            } else if let Some(v) = verdict.violated() {
                let a = p.alternatives();
                let need = match v.reason {
                    ViolationReason::IndifferenceRequired => "weak preference",
                    ViolationReason::StrictRequired => "strict preference",
                };
                println!(
                    "violated on {}: voters {} and {}, {} > {} > {} needs {need} of {} over {} for voter {}",
                    topmono::format::format_set(a, &v.witness_set),
                    p.voters()[v.voter_i].name,
                    p.voters()[v.voter_j].name,
                    a.id(v.x),
                    a.id(v.y),
                    a.id(v.z),
                    a.id(v.y),
                    a.id(v.z),
                    p.voters()[v.voter_i].name,
                );
            } else {
                println!("holds");
            }
            Ok(code(verdict.holds()))
        }
        Command::Test {
            profile,
            brute_force,
            budget,
        } => {
            let p = read_weak(profile)?;
            let (d, method) = if *brute_force {
                (test_tm_bruteforce(&p, &Limits::default())?, "brute-force")
            } else {
                (test_tm(&p, &options(*budget))?, "nb-pipeline")
            };
            out.decision("test", method, p.alternatives(), &d);
            Ok(code(d.is_top_monotonic()))
        }
        Command::ExtractNb { profile } => {
            let p = read_weak(profile)?;
            out.document("extract-nb", write_nb(&extract_constraints(&p)));
            Ok(code(true))
        }
        Command::SolveNb { constraints, budget } => {
            let cs = parse_nb(&read_input(constraints)?)?;
            let s = solve_nb(&cs, &options(*budget))?;
            if out.json {
                out.json(&SolveReport::new(cs.elements(), &s));
            } else {
                match s.solution.witness() {
                    Some(w) => println!("{}", format_order(cs.elements(), w)),
                    None => println!("UNSAT"),
                }
            }
            Ok(code(s.solution.is_sat()))
        }
        Command::Reduce { constraints } => {
            let cs = parse_nb(&read_input(constraints)?)?;
            out.document("reduce", write_partial_profile(&reduce_nb_to_profile(&cs)?));
            Ok(code(true))
        }
        Command::TestPartial {
            profile,
            budget,
            max_voters,
        } => {
            let p = parse_partial_profile(&read_input(profile)?)?;
            let mut limits = Limits::default();
            if let Some(n) = max_voters {
                limits.partial_voters = *n;
            }
            let d = test_tm_partial(&p, &limits, &options(*budget))?;
            out.decision("test-partial", "partial-search", p.alternatives(), &d);
            Ok(code(d.is_top_monotonic()))
        }
        Command::SpExtend { profile, order } => {
            let g = parse_partial_profile(&read_input(profile)?)?;
            let w = parse_order(g.alternatives(), order)?;
            out.document("sp-extend", write_weak_profile(&single_peaked_extension(&g, &w)?));
            Ok(code(true))
        }
        Command::Gen {
            kind,
            alts,
            voters,
            seed,
        } => {
            let kind: ProfileKind = kind.parse()?;
            let g = generate(kind, *alts, *voters, *seed)?;
            let mut doc = String::new();
            if let Some(axis) = &g.axis {
                doc.push_str(&format!("# axis: {}\n", format_order(g.profile.alternatives(), axis)));
            }
            doc.push_str(&write_weak_profile(&g.profile));
            out.document("gen", doc);
            Ok(code(true))
        }
        Command::Analyze { profile } => {
            let p = read_weak(profile)?;
            out.json(&analyze(&p, &Limits::default(), &SolverOptions::default())?);
            Ok(code(true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out { json: cli.json };
    let name = cli.command.name();
    let result = run(&cli.command, &out);
    let _ = io::stdout().flush();
    match result {
        Ok(c) => c,
        Err(failure) => {
            let (report, exit) = match &failure {
                Failure::Io(path, e) => (
                    ErrorReport {
                        command: name.to_string(),
                        error: format!("{}: {e}", path.display()),
                        kind: "io",
                    },
                    2,
                ),
                Failure::Lib(e) => {
                    let exit = if matches!(e, topmono::Error::BudgetExhausted { .. }) {
                        3
                    } else {
                        2
                    };
                    (ErrorReport::new(name, e), exit)
                }
            };
            eprintln!("topmono {name}: {}", report.error);
            if out.json {
                out.json(&report);
            }
            ExitCode::from(exit)
        }
    }
}
