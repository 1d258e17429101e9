//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::braid::identities::{identity_suite, Check};
use crate::character::Character;
use crate::chi_graph::{build_kchi, oracle_star_or_small_parallel, ORACLE_MAX_VERTICES};
use crate::circles::{enumerate_circles, locate_circle};
use crate::classifier::{classify, Classification, Verdict};
use crate::dot::to_dot;
use crate::sample::{random_character, rng};
use crate::witness::{build_witness, verify_witness, WitnessPackage};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "pbsigma", version, about = "Decide membership of pure braid group characters in Sigma^1")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify one character or a JSON array of characters.
    Classify {
        /// File path, `-` for stdin, or inline JSON.
        #[arg(long = "in")]
        input: String,
        /// Attach and verify a witness package for each Sigma^1 verdict.
        #[arg(long)]
        witness: bool,
        /// Also write K_chi as DOT to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// List the complement circles of P_n.
    Circles {
        #[arg(long)]
        n: usize,
    },
    /// Export K_chi as DOT (to stdout unless --dot is given).
    Graph {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run the word-level identity suite and a seeded classifier cross-check.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random characters per strand count in the cross-check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Brute-force the star-or-small lemma on all graphs up to this size.
    Oracle {
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
    },
}

/// A user-facing failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

type Outcome = std::result::Result<i32, Failure>;

pub fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    match cli.command {
        Command::Classify { input, witness, dot } => cmd_classify(&input, witness, dot.as_deref(), out),
        Command::Circles { n } => cmd_circles(n, out),
        Command::Graph { input, dot } => cmd_graph(&input, dot.as_deref(), out),
        Command::Verify { seed, samples } => cmd_verify(seed, samples, out),
        Command::Oracle { max_vertices } => cmd_oracle(max_vertices, out),
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure { code: EXIT_INPUT, message: format!("write failed: {e}") })
}

fn read_source(input: &str) -> std::result::Result<String, Failure> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(input.to_string());
    }
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| input_error(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(input).map_err(|e| input_error(format!("{input}: {e}")))
}

/// One character or an array of them. The flag records which, so output
/// mirrors the input shape.
fn read_characters(input: &str) -> std::result::Result<(Vec<Character>, bool), Failure> {
    let text = read_source(input)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| input_error(format!("invalid JSON: {e}")))?;
    match value {
        Value::Array(items) => {
            let chars = items
                .into_iter()
                .enumerate()
                .map(|(k, v)| serde_json::from_value(v).map_err(|e| input_error(format!("item {k}: {e}"))))
                .collect::<std::result::Result<Vec<Character>, _>>()?;
            Ok((chars, true))
        }
        v => Ok((vec![serde_json::from_value(v).map_err(|e| input_error(e.to_string()))?], false)),
    }
}

#[derive(Serialize)]
struct ClassifyRecord {
    #[serde(flatten)]
    classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessPackage>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_classify(input: &str, witness: bool, dot: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let (chars, batch) = read_characters(input)?;
    let results: Vec<std::result::Result<(ClassifyRecord, Vec<String>), Failure>> = chars
        .par_iter()
        .enumerate()
        .map(|(k, chi)| {
            let at = if batch { format!("item {k}: ") } else { String::new() };
            let classification = classify(chi).map_err(|e| input_error(format!("{at}{e}")))?;
            let mut problems = Vec::new();
            let mut pkg = None;
            if witness && classification.verdict == Verdict::InSigma1 {
                match build_witness(&classification.certificate, chi) {
                    Ok(p) => {
                        let report = verify_witness(&p, chi);
                        problems.extend(report.failures.iter().map(|f| format!("{at}{f}")));
                        pkg = Some(p);
                    }
                    Err(e) => problems.push(format!("{at}{e}")),
                }
            }
            Ok((ClassifyRecord { classification, witness: pkg }, problems))
        })
        .collect();

    let mut records = Vec::with_capacity(results.len());
    let mut problems = Vec::new();
    for r in results {
        let (rec, p) = r?;
        records.push(rec);
        problems.extend(p);
    }

    if let Some(path) = dot {
        let text: String = chars.iter().map(|c| to_dot(&build_kchi(c))).collect();
        fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    }
    let text = if batch { to_json(&records) } else { to_json(&records[0]) };
    write_out(out, &text)?;
    if problems.is_empty() {
        Ok(EXIT_OK)
    } else {
        Err(Failure { code: EXIT_VERIFY, message: format!("witness verification failed:\n{}", problems.join("\n")) })
    }
}

fn cmd_circles(n: usize, out: &mut dyn Write) -> Outcome {
    if n < 2 {
        return Err(input_error(format!("--n must be at least 2, got {n}")));
    }
    write_out(out, &to_json(&enumerate_circles(n)))?;
    Ok(EXIT_OK)
}

fn cmd_graph(input: &str, dot: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let (chars, _) = read_characters(input)?;
    let text: String = chars.iter().map(|c| to_dot(&build_kchi(c))).collect();
    match dot {
        Some(path) => fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))?,
        None => write_out(out, &text)?,
    }
    Ok(EXIT_OK)
}

/// Seeded agreement between the classifier, circle location and witnesses.
pub fn cross_check(seed: u64, samples: usize) -> Vec<Check> {
    (4..=6)
        .map(|n| {
            let mut r = rng(seed.wrapping_add(n as u64));
            let chars: Vec<Character> = (0..samples).map(|_| random_character(&mut r, n)).collect();
            let bad: Vec<String> = chars
                .par_iter()
                .filter_map(|chi| {
                    let c = match classify(chi) {
                        Ok(c) => c,
                        Err(e) => return Some(format!("{chi:?}: {e}")),
                    };
                    let located = locate_circle(chi).ok()?.is_some();
                    if located != (c.verdict == Verdict::InComplement) {
                        return Some(format!("{chi:?}: verdict disagrees with circle location"));
                    }
                    if c.verdict == Verdict::InSigma1 {
                        let ok = build_witness(&c.certificate, chi).map(|p| verify_witness(&p, chi).passed());
                        if ok != Ok(true) {
                            return Some(format!("{chi:?}: witness rejected"));
                        }
                    }
                    None
                })
                .collect();
            let detail = match bad.first() {
                None => format!("{samples} characters, seed {seed}"),
                Some(b) => format!("{} failures, first {b}", bad.len()),
            };
            Check { name: format!("classifier cross-check n={n}"), passed: bad.is_empty(), detail }
        })
        .collect()
}

fn cmd_verify(seed: u64, samples: usize, out: &mut dyn Write) -> Outcome {
    let mut checks = identity_suite().map_err(|e| Failure { code: EXIT_VERIFY, message: e.to_string() })?;
    checks.extend(cross_check(seed, samples));
    let mut text: String = checks.iter().map(|c| format!("{c}\n")).collect();
    let passed = checks.iter().filter(|c| c.passed).count();
    text.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    write_out(out, &text)?;
    Ok(if passed == checks.len() { EXIT_OK } else { EXIT_VERIFY })
}

fn cmd_oracle(max_vertices: usize, out: &mut dyn Write) -> Outcome {
    if max_vertices > ORACLE_MAX_VERTICES {
        return Err(input_error(format!("--max-vertices is limited to {ORACLE_MAX_VERTICES}")));
    }
    let report = oracle_star_or_small_parallel(max_vertices).map_err(|e| input_error(e.to_string()))?;
    write_out(out, &to_json(&report))?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY })
}
