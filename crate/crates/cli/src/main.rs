//! Command-line front end: validates presentations, runs the prime-element
//! recursion, computes centers and the pivot certificate, decomposes
//! derivations, and prints machine-readable reports.
//!
//! Exit codes: 0 success/valid; 1 validation or hypothesis failure
//! (definitive); 2 inconclusive at the configured bounds; 3 malformed
//! input.  A JSON report is always emitted; diagnostics go to stderr.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use qna_core::center;
use qna_core::deriv::{self, DecompositionStatus};
use qna_core::gy;
use qna_core::ore::Presentation;
use qna_core::wire;

#[derive(Parser)]
#[command(name = "qna", about = "Quantum nilpotent algebra pipeline", version)]
struct Cli {
    /// Degree bound for inner-witness and decomposition solves.
    #[arg(long, global = true, default_value_t = 8)]
    degree_bound: u32,
    /// Bound for the local-nilpotency certificate.
    #[arg(long, global = true, default_value_t = 16)]
    nilpotency_bound: u32,
    /// Coefficient bound for the nonnegative-basis search.
    #[arg(long, global = true, default_value_t = 4)]
    search_bound: u32,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the axiom checks on a presentation.
    Validate { file: String },
    /// Construct the recursive cluster elements.
    YElements { file: String },
    /// Commutation matrix, kernel and center ranks.
    Center { file: String },
    /// Search for the pivot certificate on the torus center.
    Hypothesis { file: String },
    /// Decompose a derivation as inner plus homogeneous.
    Decompose {
        file: String,
        derivation_file: String,
    },
    /// The homogeneous basis of the first cohomology group.
    Hh1 { file: String },
    /// Normal form of an element given as words in the generators.
    Nf { file: String, word_file: String },
    /// Emit a named catalog presentation with its expected data.
    Catalog { name: String },
}

struct Reporter {
    json: Option<PathBuf>,
}

impl Reporter {
    fn emit(&self, report: &serde_json::Value, code: u8) -> ExitCode {
        let text = serde_json::to_string_pretty(report).expect("report serializes");
        match &self.json {
            Some(path) => {
                if let Err(e) = std::fs::write(path, text + "\n") {
                    eprintln!("error: cannot write report: {e}");
                    return ExitCode::from(3);
                }
            }
            None => println!("{text}"),
        }
        ExitCode::from(code)
    }

    fn malformed(&self, msg: &str) -> ExitCode {
        eprintln!("error: {msg}");
        self.emit(&json!({ "format": wire::FORMAT, "error": msg }), 3)
    }
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_presentation(path: &str) -> anyhow::Result<Presentation> {
    let text = read_input(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    Ok(wire::presentation_from_json_value(&value)?)
}

/// Everything downstream of validation in one struct.
struct Pipeline {
    p: Presentation,
    cluster: gy::Cluster,
    matrix: gy::CommutationMatrix,
}

fn run_pipeline(p: Presentation, nilpotency_bound: u32) -> Result<Pipeline, (String, u8)> {
    let report = p.validate(nilpotency_bound);
    if !report.is_valid() {
        let code = if report.sigma_failures.is_empty()
            && report.delta_failures.is_empty()
            && report.grading_failures.is_empty()
            && report.weight_structure_failures.is_empty()
            && report.q_skew_error.is_none()
        {
            2 // only nilpotency is uncertified at this bound
        } else {
            1
        };
        return Err((format!("presentation fails validation: {report:?}"), code));
    }
    let cluster = gy::compute_y_elements(&p).map_err(|e| (e.to_string(), 1))?;
    let matrix = gy::commutation_matrix(&p, &cluster).map_err(|e| (e.to_string(), 1))?;
    Ok(Pipeline { p, cluster, matrix })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let reporter = Reporter {
        json: cli.json.clone(),
    };

    match &cli.command {
        Command::Validate { file } => {
            let p = match load_presentation(file) {
                Ok(p) => p,
                Err(e) => return reporter.malformed(&e.to_string()),
            };
            let report = p.validate(cli.nilpotency_bound);
            let wire_report = wire::validation_to_wire(&report);
            let code = if report.is_valid() {
                0
            } else if report.sigma_failures.is_empty()
                && report.delta_failures.is_empty()
                && report.grading_failures.is_empty()
                && report.weight_structure_failures.is_empty()
                && report.q_skew_error.is_none()
            {
                eprintln!(
                    "nilpotency not certified within bound {}",
                    cli.nilpotency_bound
                );
                2
            } else {
                eprintln!("validation failed");
                1
            };
            reporter.emit(&serde_json::to_value(&wire_report).unwrap(), code)
        }

        Command::YElements { file } => {
            let p = match load_presentation(file) {
                Ok(p) => p,
                Err(e) => return reporter.malformed(&e.to_string()),
            };
            match run_pipeline(p, cli.nilpotency_bound) {
                Ok(pipe) => {
                    let doc = wire::cluster_to_wire(&pipe.cluster);
                    reporter.emit(&serde_json::to_value(&doc).unwrap(), 0)
                }
                Err((msg, code)) => {
                    eprintln!("{msg}");
                    reporter.emit(&json!({ "format": wire::FORMAT, "error": msg }), code)
                }
            }
        }

        Command::Center { file } => {
            let p = match load_presentation(file) {
                Ok(p) => p,
                Err(e) => return reporter.malformed(&e.to_string()),
            };
            match run_pipeline(p, cli.nilpotency_bound) {
                Ok(pipe) => {
                    let kernel = center::kernel_basis(&pipe.matrix);
                    let affine = center::affine_center_rank(&pipe.matrix, cli.search_bound);
                    let cert = center::verify_hypothesis(
                        &pipe.matrix,
                        &pipe.cluster.prime_indices(),
                        cli.search_bound,
                    );
                    let mut doc = json!({
                        "format": wire::FORMAT,
                        "torus_center_rank": kernel.rank(),
                        "affine_center_rank": affine,
                        "kernel_basis": kernel.vectors,
                        "simple_torus": center::is_simple_torus(&pipe.matrix),
                        "commutation_matrix": pipe.matrix.0,
                    });
                    if cert.valid {
                        let report =
                            center::centers_report(&pipe.p, &pipe.cluster, &pipe.matrix, &cert);
                        match report {
                            Ok(r) => {
                                doc["center_report"] =
                                    serde_json::to_value(wire::center_report_to_wire(&r)).unwrap();
                            }
                            Err(e) => {
                                eprintln!("{e}");
                                return reporter.emit(
                                    &json!({ "format": wire::FORMAT, "error": e.to_string() }),
                                    1,
                                );
                            }
                        }
                    }
                    reporter.emit(&doc, 0)
                }
                Err((msg, code)) => {
                    eprintln!("{msg}");
                    reporter.emit(&json!({ "format": wire::FORMAT, "error": msg }), code)
                }
            }
        }

        Command::Hypothesis { file } => {
            let p = match load_presentation(file) {
                Ok(p) => p,
                Err(e) => return reporter.malformed(&e.to_string()),
            };
            match run_pipeline(p, cli.nilpotency_bound) {
                Ok(pipe) => {
                    let cert = center::verify_hypothesis(
                        &pipe.matrix,
                        &pipe.cluster.prime_indices(),
                        cli.search_bound,
                    );
                    let doc = wire::hypothesis_to_wire(&cert);
                    let code = if cert.valid {
                        0
                    } else if cert.search_exhausted {
                        eprintln!("hypothesis search exhausted at bound {}", cli.search_bound);
                        2
                    } else {
                        eprintln!(
                            "hypothesis fails: {}",
                            cert.failure_reason.map(|r| r.as_str()).unwrap_or("unknown")
                        );
                        1
                    };
                    reporter.emit(&serde_json::to_value(&doc).unwrap(), code)
                }
                Err((msg, code)) => {
                    eprintln!("{msg}");
                    reporter.emit(&json!({ "format": wire::FORMAT, "error": msg }), code)
                }
            }
        }

        Command::Decompose {
            file,
            derivation_file,
        } => {
            let p = match load_presentation(file) {
                Ok(p) => p,
                Err(e) => return reporter.malformed(&e.to_string()),
            };
            let dtext = match read_input(derivation_file) {
                Ok(t) => t,
                Err(e) => return reporter.malformed(&e.to_string()),
            };
            let dwire: wire::DerivationJson = match serde_json::from_str(&dtext) {
                Ok(d) => d,
                Err(e) => return reporter.malformed(&format!("bad derivation file: {e}")),
            };
            let d = match wire::derivation_from_wire(&dwire, p.n_vars()) {
                Ok(d) => d,
                Err(e) => return reporter.malformed(&e.to_string()),
            };
            match run_pipeline(p, cli.nilpotency_bound) {
                Ok(pipe) => {
                    let cert = center::verify_hypothesis(
                        &pipe.matrix,
                        &pipe.cluster.prime_indices(),
                        cli.search_bound,
                    );
                    if !cert.valid {
                        let msg = "hypothesis certificate invalid";
                        eprintln!("{msg}");
                        let code = if cert.search_exhausted { 2 } else { 1 };
                        return reporter.emit(
                            &json!({
                                "format": wire::FORMAT,
                                "error": msg,
                                "hypothesis": serde_json::to_value(wire::hypothesis_to_wire(&cert)).unwrap(),
                            }),
                            code,
                        );
                    }
                    match deriv::decompose(&pipe.p, &pipe.cluster, &cert, &d, cli.degree_bound) {
                        Ok(result) => {
                            let code = match result.status {
                                DecompositionStatus::Exact => 0,
                                DecompositionStatus::InconclusiveAtBound(b) => {
                                    eprintln!("inconclusive at degree bound {b}");
                                    2
                                }
                            };
                            let doc = wire::decomposition_to_wire(&result);
                            reporter.emit(&serde_json::to_value(&doc).unwrap(), code)
                        }
                        Err(e) => {
                            eprintln!("{e}");
                            reporter.emit(
                                &json!({ "format": wire::FORMAT, "error": e.to_string() }),
                                1,
                            )
                        }
                    }
                }
                Err((msg, code)) => {
                    eprintln!("{msg}");
                    reporter.emit(&json!({ "format": wire::FORMAT, "error": msg }), code)
                }
            }
        }

        Command::Hh1 { file } => {
            let p = match load_presentation(file) {
                Ok(p) => p,
                Err(e) => return reporter.malformed(&e.to_string()),
            };
            match run_pipeline(p, cli.nilpotency_bound) {
                Ok(pipe) => {
                    let cert = center::verify_hypothesis(
                        &pipe.matrix,
                        &pipe.cluster.prime_indices(),
                        cli.search_bound,
                    );
                    if !cert.valid {
                        let msg = "hypothesis certificate invalid";
                        eprintln!("{msg}");
                        let code = if cert.search_exhausted { 2 } else { 1 };
                        return reporter
                            .emit(&json!({ "format": wire::FORMAT, "error": msg }), code);
                    }
                    match deriv::hh1_basis(&pipe.p, &cert) {
                        Ok(basis) => {
                            let doc = json!({
                                "format": wire::FORMAT,
                                "rank": basis.len(),
                                "basis": basis
                                    .iter()
                                    .map(|d| serde_json::to_value(wire::derivation_to_wire(d)).unwrap())
                                    .collect::<Vec<_>>(),
                            });
                            reporter.emit(&doc, 0)
                        }
                        Err(e) => {
                            eprintln!("{e}");
                            reporter.emit(
                                &json!({ "format": wire::FORMAT, "error": e.to_string() }),
                                1,
                            )
                        }
                    }
                }
                Err((msg, code)) => {
                    eprintln!("{msg}");
                    reporter.emit(&json!({ "format": wire::FORMAT, "error": msg }), code)
                }
            }
        }

        Command::Nf { file, word_file } => {
            let p = match load_presentation(file) {
                Ok(p) => p,
                Err(e) => return reporter.malformed(&e.to_string()),
            };
            let wtext = match read_input(word_file) {
                Ok(t) => t,
                Err(e) => return reporter.malformed(&e.to_string()),
            };
            let words: wire::WordFileJson = match serde_json::from_str(&wtext) {
                Ok(w) => w,
                Err(e) => return reporter.malformed(&format!("bad word file: {e}")),
            };
            match wire::evaluate_word_file(&p, &words) {
                Ok(element) => {
                    let doc = json!({
                        "format": wire::FORMAT,
                        "element": wire::element_to_wire(&element),
                    });
                    reporter.emit(&doc, 0)
                }
                Err(e) => reporter.malformed(&e.to_string()),
            }
        }

        Command::Catalog { name } => match qna_core::catalog::by_name(name) {
            Ok(entry) => {
                let doc = wire::catalog_to_wire(&entry);
                reporter.emit(&serde_json::to_value(&doc).unwrap(), 0)
            }
            Err(e) => reporter.malformed(&e.to_string()),
        },
    }
}
