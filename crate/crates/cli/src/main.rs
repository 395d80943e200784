use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use nctorus::catalog::{four_torus_fixtures, gl3_survey, FOUR_TORUS_ORDERS};
use nctorus::cyclotomic::{cyclotomic_companion, cyclotomic_poly, euler_phi};
use nctorus::exactla::unimodular_inverse;
use nctorus::forms::{canonical_nondegenerate_seed, invariant_form_space};
use nctorus::ktheory::{af_verdict, fixed_witnesses, partition_search, s1};
use nctorus::simplicity::{is_free_outside_origin, is_nondegenerate};
use nctorus::verify::verify_paper;
use nctorus::weyl::{action_table, conjugacy_check, NormalWord};
use nctorus::{Error, IntMatrix, ParamMatrix};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "nctorus",
    version,
    about = "Exact invariants of finite cyclic actions on noncommutative tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct JsonFlag {
    /// Emit machine-readable JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// The n-th cyclotomic polynomial
    Cyclotomic {
        n: u64,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Companion matrix of the n-th cyclotomic polynomial
    Companion {
        n: u64,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Euler's totient
    Phi {
        n: u64,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Basis of the skew forms invariant under a matrix
    InvariantSpace {
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        cyclotomic: Option<u64>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Nondegeneracy of a skew form, with a witness when degenerate
    Nondegenerate {
        #[arg(long)]
        form: PathBuf,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Whether the cyclic group generated by a matrix acts freely off the origin
    FreeCheck {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        order: u64,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// K1 rank of the companion action
    K1 {
        n: u64,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// AF criterion for a C_n-invariant form (default: the averaged seed)
    AfVerdict {
        n: u64,
        #[arg(long)]
        form: Option<PathBuf>,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Search for a covering partition certificate
    Partition {
        n: u64,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Generator images on the tensor-square form
    Action {
        #[arg(long)]
        n: u64,
        /// Derive the action by conjugating C_n on its own form
        #[arg(long)]
        conjugated: bool,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Nondegeneracy survey over the finite-order generators of GL3(Z)
    Gl3Survey {
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Run every reproduction check
    VerifyPaper {
        #[command(flatten)]
        out: JsonFlag,
    },
}

enum Failure {
    /// Bad input or a violated precondition.
    Usage(String),
    /// The computation ran and a check did not hold.
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CrossCheck(_) | Error::Fixture(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// What a subcommand hands back: its JSON and text renderings, and whether
/// it counts as a passed verification.
struct Outcome {
    json: Value,
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Self {
            json,
            text,
            passed: true,
        }
    }
}

fn envelope(command: &str, inputs: Value, outputs: Value) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "version": env!("CARGO_PKG_VERSION"),
        "schema": nctorus::ktheory::SCHEMA_VERSION,
    })
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn read_int_matrix(path: &Path) -> Result<IntMatrix, Failure> {
    Ok(IntMatrix::from_json_str(&read_file(path)?)?)
}

fn read_form(path: &Path) -> Result<ParamMatrix, Failure> {
    Ok(ParamMatrix::from_json_str(&read_file(path)?)?)
}

fn word_list(words: &[NormalWord]) -> String {
    words
        .iter()
        .enumerate()
        .map(|(i, w)| format!("u{} -> {}\n", i + 1, w.render()))
        .collect()
}

fn run(command: Command) -> Result<(Outcome, bool), Failure> {
    let (outcome, json) = match command {
        Command::Cyclotomic { n, out } => {
            let p = cyclotomic_poly(n)?;
            let o = envelope(
                "cyclotomic",
                json!({ "n": n }),
                serde_json::to_value(&p).unwrap(),
            );
            (Outcome::ok(o, format!("{p}\n")), out.json)
        }
        Command::Companion { n, out } => {
            let c = cyclotomic_companion(n)?;
            let o = envelope("companion", json!({ "n": n }), c.to_json_value());
            (Outcome::ok(o, c.to_string()), out.json)
        }
        Command::Phi { n, out } => {
            let d = euler_phi(n)?;
            (
                Outcome::ok(
                    envelope("phi", json!({ "n": n }), json!(d)),
                    format!("{d}\n"),
                ),
                out.json,
            )
        }
        Command::InvariantSpace {
            cyclotomic,
            matrix,
            out,
        } => {
            let (a, inputs) = match (cyclotomic, matrix) {
                (Some(n), _) => (cyclotomic_companion(n)?, json!({ "cyclotomic": n })),
                (None, Some(path)) => {
                    let a = read_int_matrix(&path)?;
                    let inputs = json!({ "matrix": a.to_json_value() });
                    (a, inputs)
                }
                (None, None) => return Err(Failure::Usage("need --cyclotomic or --matrix".into())),
            };
            let space = invariant_form_space(&a)?;
            let mut text = format!("{} invariant forms on Z^{}\n", space.basis.len(), space.dim);
            text.push_str(&format!("general member:\n{}", space.general_member()));
            let o = envelope(
                "invariant-space",
                inputs,
                serde_json::to_value(&space).unwrap(),
            );
            (Outcome::ok(o, text), out.json)
        }
        Command::Nondegenerate { form, out } => {
            let theta = read_form(&form)?;
            let v = is_nondegenerate(&theta)?;
            let text = match &v.witness {
                None => "nondegenerate\n".to_string(),
                Some(w) => {
                    let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                    format!("degenerate, witness ({})\n", w.join(", "))
                }
            };
            let o = envelope(
                "nondegenerate",
                json!({ "form": theta.to_json_value() }),
                v.to_json_value(),
            );
            (Outcome::ok(o, text), out.json)
        }
        Command::FreeCheck { matrix, order, out } => {
            let a = read_int_matrix(&matrix)?;
            let free = is_free_outside_origin(&a, order)?;
            let text = if free {
                "free outside the origin\n"
            } else {
                "not free outside the origin\n"
            };
            let o = envelope(
                "free-check",
                json!({ "matrix": a.to_json_value(), "order": order }),
                json!({ "free": free }),
            );
            (Outcome::ok(o, text.to_string()), out.json)
        }
        Command::K1 { n, out } => {
            let r = s1(n)?;
            (Outcome::ok(r.to_json_value(), r.to_table()), out.json)
        }
        Command::AfVerdict { n, form, out } => {
            let theta = match &form {
                Some(path) => read_form(path)?,
                None => canonical_nondegenerate_seed(n)?,
            };
            let v = af_verdict(n, &theta)?;
            let mut text = format!("{} ({}), s1 = {}\n", v.verdict.as_str(), v.level, v.s1);
            for j in &v.justification {
                text.push_str(&format!("  {j}\n"));
            }
            let o = envelope(
                "af-verdict",
                json!({ "n": n, "form": theta.to_json_value() }),
                serde_json::to_value(&v).unwrap(),
            );
            (Outcome::ok(o, text), out.json)
        }
        Command::Partition { n, out } => {
            let found = partition_search(n)?;
            let (outputs, text) = match found {
                None => (
                    json!({ "certificate": null }),
                    format!("no covering partition for n = {n}\n"),
                ),
                Some(cert) => {
                    let w = fixed_witnesses(n, &cert)?;
                    let top = w.top_coefficient.to_string();
                    (
                        json!({
                            "certificate": cert,
                            "top_coefficient": top,
                            "shuffle_sign": w.shuffle_sign,
                        }),
                        format!(
                            "I = {:?}\nJ = {:?}\nw_I ^ w_J = {top} e_1 ^ ... ^ e_d\n",
                            cert.i, cert.j
                        ),
                    )
                }
            };
            (
                Outcome::ok(envelope("partition", json!({ "n": n }), outputs), text),
                out.json,
            )
        }
        Command::Action { n, conjugated, out } => (action(n, conjugated)?, out.json),
        Command::Gl3Survey { out } => {
            let r = gl3_survey()?;
            let mut text = String::new();
            for row in &r.rows {
                let w = match &row.generic_witness {
                    Some(w) => format!(
                        "witness ({})",
                        w.iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                    None => "admits nondegenerate forms".to_string(),
                };
                text.push_str(&format!(
                    "{:<6} order {}  dim {}  {w}\n",
                    row.name, row.order, row.space_dim
                ));
            }
            text.push_str(&format!("flip is the only exception: {}\n", r.flip_only));
            let passed = r.flip_only;
            (
                Outcome {
                    json: envelope("gl3-survey", json!({}), r.to_json_value()),
                    text,
                    passed,
                },
                out.json,
            )
        }
        Command::VerifyPaper { out } => {
            let r = verify_paper();
            let mut text = String::new();
            for c in &r.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let level = c.level.map_or(String::new(), |l| format!(" [{l}]"));
                text.push_str(&format!(
                    "{status} {:>2} {}{level} ({})",
                    c.criterion, c.name, c.citation
                ));
                if !c.details.is_empty() {
                    text.push_str(&format!(": {}", c.details));
                }
                text.push('\n');
            }
            let failed = r.checks.iter().filter(|c| !c.passed).count();
            text.push_str(&format!("{} checks, {failed} failed\n", r.checks.len()));
            (
                Outcome {
                    json: r.to_json_value(),
                    passed: r.passed,
                    text,
                },
                out.json,
            )
        }
    };
    Ok((outcome, json))
}

fn action(n: u64, conjugated: bool) -> Result<Outcome, Failure> {
    if !FOUR_TORUS_ORDERS.contains(&n) {
        return Err(Failure::Usage(format!(
            "action tables exist for n in {FOUR_TORUS_ORDERS:?}, got {n}"
        )));
    }
    let fx = four_torus_fixtures()?;
    let expected = &fx.expected_tables[&n];
    let (a, theta, mut text, mut failures) = if conjugated {
        let b_inv = unimodular_inverse(&fx.b[&n])?;
        let report = conjugacy_check(&b_inv, &fx.theta_n[&n], &fx.companions[&n])?;
        let mut text = format!("C_{n} on Theta_{n}theta:\n");
        text.push_str(&word_list(&action_table(
            &fx.companions[&n],
            &fx.theta_n[&n],
        )?));
        text.push_str(&format!("conjugated by B_{n}^-1:\n"));
        let mut failures = report.failures.clone();
        if report.psi != fx.a[&n] {
            failures.push(format!("conjugate of C_{n} differs from A_{n}"));
        }
        (report.psi, report.theta, text, failures)
    } else {
        (
            fx.a[&n].clone(),
            fx.theta_tensor.clone(),
            String::new(),
            Vec::new(),
        )
    };
    let words = action_table(&a, &theta)?;
    text.push_str(&word_list(&words));
    let rendered: Vec<String> = words.iter().map(NormalWord::render).collect();
    if &rendered != expected {
        failures.push("generator images differ from the stored table".into());
    }
    for f in &failures {
        text.push_str(&format!("mismatch: {f}\n"));
    }
    let json = envelope(
        "action",
        json!({ "n": n, "conjugated": conjugated }),
        json!({
            "generator": a.to_json_value(),
            "images": words.iter().map(NormalWord::to_json_value).collect::<Vec<_>>(),
            "matches_table": failures.is_empty(),
            "failures": failures,
        }),
    );
    Ok(Outcome {
        json,
        text,
        passed: failures.is_empty(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli.command);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok((outcome, as_json)) => {
            if as_json {
                println!(
                    "{}",
                    serde_json::to_string(&outcome.json).expect("JSON output")
                );
            } else {
                print!("{}", outcome.text);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
