//! `coha`: batch front end for DT-series, factorizations, invariants, COHA products,
//! mutations and verification suites.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on invalid usage or input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use coha::checks::run_suite;
use coha::docs::{
    certificate_to_json, factorization_to_json, ingest_series, parse_quiver, parse_rational, series_to_json,
    serialize_quiver, sympoly_from_json, sympoly_to_json, to_pretty,
};
use coha::dt::dt_series_zero_potential;
use coha::plethystic::quantum_admissible_factorize;
use coha::shuffle::shuffle_product;
use coha::{mutate_potential, CentralCharge, CohaElement, Error, Potential, Quiver, TorusSeries};

#[derive(Parser)]
#[command(name = "coha", version, about = "Exact COHA and motivic DT-series computations for quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// DT-series of a quiver with zero potential.
    DtSeries {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long = "truncate")]
        truncation: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ordered ray factors of a series for a central charge.
    Factorize {
        #[command(flatten)]
        input: SeriesInput,
        #[arg(long)]
        charge: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Admissibility certificates (δ tables and refined invariants) per ray.
    Invariants {
        #[command(flatten)]
        input: SeriesInput,
        #[arg(long)]
        charge: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shuffle product of two symmetric polynomials.
    CohaProduct {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        f1: PathBuf,
        #[arg(long)]
        f2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mutation of a quiver with potential at a vertex.
    Mutate {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a verification suite: pentagon, reineke, macmahon, dynkin, theorem6, theorem9.
    Check {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct SeriesInput {
    #[arg(long)]
    quiver: PathBuf,
    /// Series document; without it the zero-potential DT-series is used.
    #[arg(long)]
    series: Option<PathBuf>,
    #[arg(long = "truncate")]
    truncation: Option<u32>,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResidualNotOne | Error::NotLaurent { .. } | Error::ExactDivision(_) => {
                Failure::Verification(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, v: &Value) -> Result<(), Failure> {
    let text = to_pretty(v);
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_quiver(path: &PathBuf) -> Result<(Quiver, Potential), Failure> {
    parse_quiver(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Parses `"v1=re,im;v2=re,im"` with one entry per vertex.
fn parse_charge(q: &Quiver, text: &str) -> Result<CentralCharge, Failure> {
    let mut values = vec![None; q.rank()];
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (label, pair) = part
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("charge entry `{part}` is not `vertex=re,im`")))?;
        let (re, im) = pair
            .split_once(',')
            .ok_or_else(|| Failure::Usage(format!("charge value `{pair}` is not `re,im`")))?;
        let i = q.vertex_index(label.trim())?;
        values[i] = Some((parse_rational(re)?, parse_rational(im)?));
    }
    let z: Vec<_> = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Failure::Usage(format!("no charge for vertex `{}`", q.vertices()[i]))))
        .collect::<Result<_, _>>()?;
    Ok(CentralCharge::new(q, z)?)
}

fn load_series(input: &SeriesInput) -> Result<TorusSeries, Failure> {
    let (q, w) = load_quiver(&input.quiver)?;
    let q = Arc::new(q);
    match &input.series {
        Some(path) => Ok(ingest_series(&read(path)?, q, input.truncation)?),
        None => {
            if !w.is_zero() {
                return Err(Failure::Usage(
                    "the quiver has a potential; supply its series with --series".into(),
                ));
            }
            let n = input
                .truncation
                .ok_or_else(|| Failure::Usage("--truncate is required without --series".into()))?;
            Ok(dt_series_zero_potential(q, n))
        }
    }
}

fn charge_json(z: &CentralCharge, q: &Quiver) -> Value {
    Value::Array(
        q.vertices()
            .iter()
            .zip(z.values())
            .map(|(v, (re, im))| json!({"vertex": v, "re": re.to_string(), "im": im.to_string()}))
            .collect(),
    )
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::DtSeries { quiver, truncation, out } => {
            let (q, w) = load_quiver(&quiver)?;
            if !w.is_zero() {
                return Err(Failure::Usage("dt-series needs a quiver with zero potential".into()));
            }
            emit(&out, &series_to_json(&dt_series_zero_potential(Arc::new(q), truncation)))
        }
        Command::Factorize { input, charge, out } => {
            let a = load_series(&input)?;
            let z = parse_charge(a.quiver(), &charge)?;
            let factors = a.hn_peel(&z)?;
            let mut doc = factorization_to_json(&factors, true);
            doc["charge"] = charge_json(&z, a.quiver());
            emit(&out, &doc)
        }
        Command::Invariants { input, charge, out } => {
            let a = load_series(&input)?;
            let z = parse_charge(a.quiver(), &charge)?;
            let rays = quantum_admissible_factorize(&a, &z)?;
            let doc = json!({
                "charge": charge_json(&z, a.quiver()),
                "rays": rays
                    .iter()
                    .map(|(r, c)| json!({"ray": r.primitive().entries(), "certificate": certificate_to_json(c)}))
                    .collect::<Vec<_>>(),
            });
            emit(&out, &doc)
        }
        Command::CohaProduct { quiver, f1, f2, out } => {
            let (q, _) = load_quiver(&quiver)?;
            let a = CohaElement::new(sympoly_from_json(&read(&f1)?)?);
            let b = CohaElement::new(sympoly_from_json(&read(&f2)?)?);
            let p = shuffle_product(&q, &a, &b)?;
            emit(&out, &sympoly_to_json(&p.poly))
        }
        Command::Mutate { quiver, vertex, out } => {
            let (q, w) = load_quiver(&quiver)?;
            let (q2, w2) = mutate_potential(&q, &w, &vertex)?;
            let doc: Value = serde_json::from_str(&serialize_quiver(&q2, &w2)).expect("valid json");
            emit(&out, &doc)
        }
        Command::Check { suite, seed } => {
            let report = run_suite(&suite, seed)?;
            for line in &report.log {
                println!("{line}");
            }
            println!("{}: {}", report.name, if report.passed { "PASS" } else { "FAIL" });
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Verification(format!("suite `{suite}` failed")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("COHA_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // the global pool can only be configured once; ignore a second attempt
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
