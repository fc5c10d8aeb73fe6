//! The `fmzv` command line.
//!
//! [`run`] never touches the process: it returns the text for stdout and
//! stderr and the exit code, which keeps the front end testable in-process.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::corpus::{run_corpus, CorpusSpec};
use crate::error::{Error, Result};
use crate::hoffman::{shuffle, z_word, ZTuple};
use crate::oracle::{
    eval_mt_mod_p, eval_tree_mod_p, verify_reduction, verify_shuffle_relation, VerificationReport,
};
use crate::par::Execution;
use crate::reducer::reduce;
use crate::tree::{parse_tree_json, IndexMap, Tree};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "fmzv",
    version,
    about = "Finite multiple zeta values of 2-colored rooted trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputOpts {
    /// Emit JSON (the default for tree commands).
    #[arg(long)]
    json: bool,
    /// Emit indented JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Debug, Args)]
struct PrimeOpts {
    /// Comma-separated odd primes to sample.
    #[arg(long, value_delimiter = ',', default_value = "5,7,11,13")]
    primes: Vec<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduce a tree to a signed combination of FMZVs.
    Reduce {
        /// Tree JSON file, or `-` for stdin.
        file: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Evaluate the tree sum modulo each prime.
    Eval {
        file: PathBuf,
        #[command(flatten)]
        primes: PrimeOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Check the reduction against the brute-force sum.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        primes: PrimeOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Shuffle product of two z-words given as index tuples (`2,1`).
    Shuffle {
        #[arg(allow_hyphen_values = true)]
        t: String,
        #[arg(allow_hyphen_values = true)]
        u: String,
        /// Print x/y words instead of z-words.
        #[arg(long)]
        words: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Check Z(z(t) ш z(u)) = (-1)^{|u|} Z(t, reversed u).
    ShuffleRelation {
        t: String,
        u: String,
        #[command(flatten)]
        primes: PrimeOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Verify every small tree pair.
    Corpus {
        #[arg(long, default_value_t = 3)]
        max_edges: usize,
        #[arg(long, default_value_t = 4)]
        max_weight: u32,
        #[command(flatten)]
        primes: PrimeOpts,
        /// Run on a single thread.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Evaluate the MT-type sum zeta^MT(ks; k_last) modulo each prime.
    MtEval {
        ks: String,
        k_last: u32,
        #[command(flatten)]
        primes: PrimeOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
}

/// What a CLI invocation printed and how it exited.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn input_error(e: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_INPUT,
        }
    }
}

fn to_json<T: Serialize>(value: &T, out: &OutputOpts) -> String {
    let mut s = if out.pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("output types serialize");
    s.push('\n');
    s
}

fn read_tree(path: &PathBuf) -> Result<(Tree, IndexMap)> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_tree_json(&text)
}

fn report_outcome(report: &VerificationReport, out: &OutputOpts, text: bool) -> Outcome {
    let stdout = if text && !out.json && !out.pretty {
        let mut s = String::from("p\tlhs\trhs\tpass\n");
        for r in &report.primes {
            s.push_str(&format!("{}\t{}\t{}\t{}\n", r.p, r.lhs, r.rhs, r.pass));
        }
        s.push_str(if report.pass { "pass\n" } else { "FAIL\n" });
        s
    } else {
        to_json(report, out)
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if report.pass { EXIT_OK } else { EXIT_VERIFY },
    }
}

fn residues(primes: &[u64], f: impl Fn(u64) -> Result<u64>) -> Result<BTreeMap<u64, u64>> {
    primes.iter().map(|&p| Ok((p, f(p)?))).collect()
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Reduce { file, out } => {
            let (tree, k) = read_tree(&file)?;
            Ok(Outcome::ok(to_json(&reduce(&tree, &k)?.to_json(), &out)))
        }
        Command::Eval { file, primes, out } => {
            let (tree, k) = read_tree(&file)?;
            let values = residues(&primes.primes, |p| {
                Ok(eval_tree_mod_p(&tree, &k, p)?.residue)
            })?;
            Ok(Outcome::ok(to_json(&values, &out)))
        }
        Command::Verify { file, primes, out } => {
            let (tree, k) = read_tree(&file)?;
            Ok(report_outcome(
                &verify_reduction(&tree, &k, &primes.primes)?,
                &out,
                false,
            ))
        }
        Command::Shuffle { t, u, words, out } => {
            let (t, u): (ZTuple, ZTuple) = (t.parse()?, u.parse()?);
            let product = shuffle(&z_word(&t), &z_word(&u));
            let stdout = if out.json || out.pretty {
                to_json(&product.to_z_json()?, &out)
            } else if words {
                format!("{product}\n")
            } else {
                format!("{}\n", product.display_z()?)
            };
            Ok(Outcome::ok(stdout))
        }
        Command::ShuffleRelation { t, u, primes, out } => {
            let (t, u): (ZTuple, ZTuple) = (t.parse()?, u.parse()?);
            if t.depth() == 0 || u.depth() == 0 {
                return Err(Error::InvalidArgument(
                    "both tuples must be nonempty".into(),
                ));
            }
            Ok(report_outcome(
                &verify_shuffle_relation(&t, &u, &primes.primes)?,
                &out,
                true,
            ))
        }
        Command::Corpus {
            max_edges,
            max_weight,
            primes,
            sequential,
            out,
        } => {
            let spec = CorpusSpec::new(max_edges, max_weight, primes.primes)?;
            let exec = if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let start = Instant::now();
            let summary = run_corpus(&spec, exec);
            let elapsed = start.elapsed();
            let stdout = if out.json || out.pretty {
                to_json(&summary, &out)
            } else {
                let mut s = format!(
                    "shapes {}\ncolored trees {}\npairs {}\nchecks {}\npassed {}\nfailures {}\n",
                    summary.shapes,
                    summary.colored_trees,
                    summary.pairs,
                    summary.checks,
                    summary.passed,
                    summary.failures.len()
                );
                for f in &summary.failures {
                    s.push_str(&serde_json::to_string(f).expect("failures serialize"));
                    s.push('\n');
                }
                s
            };
            let code = if summary.pass() { EXIT_OK } else { EXIT_VERIFY };
            let stderr = format!("corpus finished in {:.2?}\n", elapsed);
            Ok(Outcome {
                stdout,
                stderr,
                code,
            })
        }
        Command::MtEval {
            ks,
            k_last,
            primes,
            out,
        } => {
            let ks: ZTuple = ks.parse()?;
            let values = residues(&primes.primes, |p| {
                Ok(eval_mt_mod_p(ks.entries(), k_last, p)?.residue)
            })?;
            Ok(Outcome::ok(to_json(&values, &out)))
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code: EXIT_INPUT,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(Outcome::input_error)
}
