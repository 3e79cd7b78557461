//! `nilgrade`: JSON front end for the library. Reports go to stdout (or
//! `--out`), a one-line summary goes to stderr.
//!
//! Exit codes: 0 success, 1 failed verification, 2 invalid input, and the
//! classification codes 10, 11, 12 of `check-grading` and
//! `check-automorphism`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use nilgrade::anosov::{build_phi, AnosovError};
use nilgrade::automorphisms::{classify_spectrum, is_automorphism, Automorphism, SpectrumKind};
use nilgrade::example_tower::ExampleTower;
use nilgrade::exact_linear::json::{subspace_from_rows, JsonRational, JsonRow};
use nilgrade::exact_linear::{RatMatrix, Rationals};
use nilgrade::fixtures;
use nilgrade::free_nilpotent::HallBasis;
use nilgrade::gradings::{grading_from_diagonal_automorphism, verify_and_classify, Grading, GradingClass, GradingError, GradingJson};
use nilgrade::lie_core::{ideal_closure, quotient, AlgebraJson, IdealDescriptor, LieAlgebra};
use nilgrade::number_field::{find_pisot_unit, find_sigma, pisot_unit_check, NumberField, NumberFieldJson};

const SIGMA_SEARCH_HEIGHT: i64 = 3;

#[derive(Parser, Debug)]
#[command(name = "nilgrade", version, about = "Exact computations with nilpotent Lie algebras")]
struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of sampled triples for Jacobi checks on large algebras.
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Free nilpotent Lie algebra in its Hall basis.
    Free {
        /// Number of generators.
        #[arg(long)]
        gens: usize,
        /// Nilpotency class.
        #[arg(long)]
        class: usize,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Quotient of an algebra by an ideal given as a list of rows.
    Quotient {
        #[arg(long)]
        alg: PathBuf,
        #[arg(long)]
        ideal: PathBuf,
        /// Replace the rows by the ideal they generate instead of rejecting
        /// a non-ideal.
        #[arg(long)]
        close: bool,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Verifies a grading and classifies it (exit 0 positive, 10 nonnegative, 11 trivial, 12 other).
    CheckGrading {
        #[arg(long)]
        alg: PathBuf,
        #[arg(long)]
        grading: PathBuf,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Verifies an automorphism and classifies its spectrum (exit 0 expanding, 10 partially expanding, 12 neither).
    CheckAutomorphism {
        #[arg(long)]
        alg: PathBuf,
        /// Matrix as an array of rows; column j is the image of e_j.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Grading read off a diagonalizable automorphism with rational spectrum.
    GradingFromAut {
        #[arg(long)]
        alg: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// The 4-generator class-6 example and its claims.
    PaperExample {
        #[command(subcommand)]
        action: ExampleAction,
    },
    /// First unit Pisot number with integer coordinates up to the height bound.
    FindPisot {
        /// Number field file; the shipped cyclic quartic when omitted.
        #[arg(long)]
        field: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        height: i64,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Builds the diagonal automorphism of n from a unit Pisot number and certifies it.
    AnosovCheck {
        /// Number field file; the shipped cyclic quartic when omitted.
        #[arg(long)]
        field: Option<PathBuf>,
        /// Unit as a coefficient array; searched for when omitted.
        #[arg(long)]
        mu: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        height: i64,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum ExampleAction {
    /// Writes the algebras and projections of the tower into a directory.
    Build {
        #[arg(long)]
        out: PathBuf,
    },
    /// Checks every claim about the tower; exit 1 if one fails.
    Verify {
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
}

/// Why a command stopped early.
enum Failure {
    Invalid(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Free { gens, class, out } => {
            let hall = HallBasis::generate(gens, class).map_err(|e| anyhow!(e))?;
            let alg = hall.to_lie_algebra();
            eprintln!("free({gens},{class}): dim {}", alg.dim());
            emit(&out, &alg.to_json())?;
            Ok(0)
        }
        Command::Quotient { alg, ideal, close, out } => {
            let alg = read_algebra(&alg)?;
            let rows: Vec<JsonRow> = read_json(&ideal)?;
            let space = subspace_from_rows(alg.dim(), &rows).map_err(|e| anyhow!(e))?;
            let ideal = if close {
                ideal_closure(&alg, space.rows()).map_err(|e| anyhow!(e))?
            } else {
                IdealDescriptor::new(&alg, space).map_err(|e| anyhow!(e))?
            };
            let q = quotient(&alg, &ideal).map_err(|e| anyhow!(e))?;
            eprintln!("quotient: dim {} / {} = {}", alg.dim(), ideal.dim(), q.algebra.dim());
            emit(&out, &json!({ "algebra": q.algebra.to_json(), "projection": q.projection.to_json() }))?;
            Ok(0)
        }
        Command::CheckGrading { alg, grading, out } => {
            let alg = read_algebra(&alg)?;
            let gj: GradingJson = read_json(&grading)?;
            let verdict = Grading::from_json(alg.dim(), &gj).and_then(|g| verify_and_classify(&alg, &g));
            match verdict {
                Ok(class) => {
                    eprintln!("grading: {class:?}");
                    emit(&out, &json!({ "valid": true, "class": class }))?;
                    Ok(match class {
                        GradingClass::Positive => 0,
                        GradingClass::NonnegativeNontrivial => 10,
                        GradingClass::Trivial => 11,
                        GradingClass::Other => 12,
                    })
                }
                Err(e) => {
                    eprintln!("grading: invalid: {e}");
                    emit(&out, &grading_error_json(&e))?;
                    Ok(2)
                }
            }
        }
        Command::CheckAutomorphism { alg, matrix, out } => {
            let alg = read_algebra(&alg)?;
            let m: RatMatrix = read_json(&matrix)?;
            let check = is_automorphism(&alg, &Rationals, &m.to_sparse()).map_err(|e| anyhow!(e))?;
            if !check.holds() {
                eprintln!("not an automorphism");
                emit(&out, &json!({ "automorphism": check }))?;
                return Ok(2);
            }
            let a = Automorphism::from_rat_matrix(&alg, &m).map_err(|e| Failure::Internal(anyhow!(e)))?;
            let class = classify_spectrum(&a);
            let c = class.partition;
            eprintln!("spectrum: {:?} (eigenvalue 1 x{}; inside {}, on circle {}, outside {})", class.kind, class.eigenvalue_one_multiplicity, c.inside, c.on_circle, c.outside);
            emit(&out, &json!({ "automorphism": check, "spectrum": class }))?;
            Ok(match class.kind {
                SpectrumKind::Expanding => 0,
                SpectrumKind::PartiallyExpanding => 10,
                SpectrumKind::Neither => 12,
            })
        }
        Command::GradingFromAut { alg, matrix, out } => {
            let alg = read_algebra(&alg)?;
            let m: RatMatrix = read_json(&matrix)?;
            let a = Automorphism::from_rat_matrix(&alg, &m).map_err(|e| anyhow!(e))?;
            match grading_from_diagonal_automorphism(&alg, &a) {
                Ok(r) => {
                    let class = verify_and_classify(&alg, &r.grading).map_err(|e| Failure::Internal(anyhow!(e)))?;
                    eprintln!("grading with weights {:?}: {class:?}", r.grading.weights());
                    let mu = r.mu.map(JsonRational);
                    emit(&out, &json!({ "recovered": true, "grading": r.grading.to_json(), "mu": mu, "class": class }))?;
                    Ok(0)
                }
                Err(GradingError::Inapplicable(reason)) => {
                    eprintln!("no grading recovered: {reason}");
                    emit(&out, &json!({ "recovered": false, "reason": reason }))?;
                    Ok(1)
                }
                Err(e) => Err(Failure::Internal(anyhow!(e))),
            }
        }
        Command::PaperExample { action } => {
            let ex = ExampleTower::build().map_err(|e| Failure::Internal(anyhow!(e)))?;
            match action {
                ExampleAction::Build { out } => build_example(&ex, &out),
                ExampleAction::Verify { out } => {
                    let report = ex.verify_all(cli.samples, cli.seed);
                    for c in report.failed() {
                        eprintln!("FAILED {}: {}", c.name, c.detail);
                    }
                    eprintln!("{} of {} claims pass", report.claims.len() - report.failed().len(), report.claims.len());
                    let passed = report.passed();
                    emit(&out, &json!({ "passed": passed, "report": report }))?;
                    Ok(if passed { 0 } else { 1 })
                }
            }
        }
        Command::FindPisot { field, height, out } => {
            let field = load_field(field.as_deref())?;
            match find_pisot_unit(&field, height) {
                Some(mu) => {
                    let report = pisot_unit_check(&field, &mu);
                    eprintln!("Pisot unit {mu:?}");
                    emit(&out, &json!({ "field": field.to_json(), "mu": mu, "pisot": report }))?;
                    Ok(0)
                }
                None => {
                    eprintln!("no Pisot unit of height <= {height}");
                    emit(&out, &json!({ "field": field.to_json(), "mu": Value::Null }))?;
                    Ok(1)
                }
            }
        }
        Command::AnosovCheck { field, mu, height, out } => {
            let field = load_field(field.as_deref())?;
            let mu = match mu {
                Some(p) => {
                    let coeffs: Vec<JsonRational> = read_json(&p)?;
                    field.parse_element(&coeffs).map_err(|e| anyhow!(e))?
                }
                None => match find_pisot_unit(&field, height) {
                    Some(mu) => mu,
                    None => {
                        eprintln!("no Pisot unit of height <= {height}");
                        emit(&out, &json!({ "passed": false, "error": "no Pisot unit found" }))?;
                        return Ok(1);
                    }
                },
            };
            let ex = ExampleTower::build().map_err(|e| Failure::Internal(anyhow!(e)))?;
            match build_phi(&ex, &field, &mu) {
                Ok((_, cert)) => {
                    let ok = cert.hyperbolic && cert.equivariant;
                    eprintln!("hyperbolic: {}, equivariant: {}", cert.hyperbolic, cert.equivariant);
                    emit(&out, &cert)?;
                    Ok(if ok { 0 } else { 1 })
                }
                Err(AnosovError::Tower(e)) => Err(Failure::Internal(anyhow!(e))),
                Err(e) => {
                    eprintln!("precondition failed: {e}");
                    let report = match &e {
                        AnosovError::Galois(r) => serde_json::to_value(r),
                        AnosovError::NotPisot(r) => serde_json::to_value(r),
                        AnosovError::FullRank(r) => serde_json::to_value(r),
                        AnosovError::Tower(_) => Ok(Value::Null),
                    }
                    .expect("serializable");
                    emit(&out, &json!({ "passed": false, "error": e.to_string(), "report": report }))?;
                    Ok(1)
                }
            }
        }
    }
}

fn build_example(ex: &ExampleTower, dir: &Path) -> Outcome {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let files: [(&str, Value); 5] = [
        ("free.json", serde_json::to_value(ex.free.to_json()).expect("serializable")),
        ("ntilde.json", serde_json::to_value(ex.ntilde.algebra.to_json()).expect("serializable")),
        ("n.json", serde_json::to_value(ex.n.algebra.to_json()).expect("serializable")),
        ("projection_free_ntilde.json", serde_json::to_value(ex.ntilde.projection.to_json()).expect("serializable")),
        ("projection_ntilde_n.json", serde_json::to_value(ex.n.projection.to_json()).expect("serializable")),
    ];
    let mut written = Vec::new();
    for (name, value) in &files {
        let path = dir.join(name);
        write_json(&path, value)?;
        written.push(json!({ "file": name, "dim": value.get("dim").or_else(|| value.get("target_dim")) }));
    }
    eprintln!("wrote {} files to {}", files.len(), dir.display());
    print_json(&json!({ "files": written }));
    Ok(0)
}

fn grading_error_json(e: &GradingError) -> Value {
    let witness = match e {
        GradingError::Bracket { i, j, witness } => json!({ "components": [i, j], "bracket": witness }),
        _ => Value::Null,
    };
    json!({ "valid": false, "error": e.to_string(), "witness": witness })
}

fn load_field(path: Option<&Path>) -> Result<NumberField, Failure> {
    let Some(path) = path else { return Ok(fixtures::cyclic_quartic()) };
    let fj: NumberFieldJson = read_json(path)?;
    let field = NumberField::from_json(&fj).map_err(|e| anyhow!(e))?;
    if field.sigma_poly().is_some() {
        return Ok(field);
    }
    match find_sigma(field.min_poly(), SIGMA_SEARCH_HEIGHT) {
        Some(s) => {
            eprintln!("using sigma found by search: {s:?}");
            Ok(field.with_sigma(s).map_err(|e| anyhow!(e))?)
        }
        None => Ok(field),
    }
}

fn read_algebra(path: &Path) -> Result<LieAlgebra, Failure> {
    let j: AlgebraJson = read_json(path)?;
    Ok(LieAlgebra::from_json(&j).map_err(|e| anyhow!(e))?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")?
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn emit<T: serde::Serialize>(out: &Path, value: &T) -> Result<(), Failure> {
    if out.as_os_str() == "-" {
        print_json(value);
        Ok(())
    } else {
        write_json(out, value)
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn print_json<T: serde::Serialize + ?Sized>(value: &T) {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn write_json<T: serde::Serialize + ?Sized>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display())).map_err(Failure::Internal)
}
