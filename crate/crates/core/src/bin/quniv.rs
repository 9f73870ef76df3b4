use clap::{Parser, Subcommand};
use quniv::local_universality::LocalOptions;
use quniv::report::{self, AnalyzeOptions, DEFAULT_BOUND};
use quniv::suite::run_checks;
use quniv::{lattice, Error};
use serde_json::Value;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "quniv", version, about = "Universality of integral quadratic lattices")]
struct Cli {
    /// add wall-clock time to the report (breaks byte-identical output)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide local, global and potential universality of a lattice
    Analyze {
        /// path to a lattice JSON file, or the JSON itself
        lattice: String,
        /// only check these rational primes (the infinite place is always checked)
        #[arg(long, value_delimiter = ',')]
        places: Option<Vec<u64>>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: i64,
        /// decide finite places by enumeration only
        #[arg(long)]
        oracle: bool,
    },
    /// Build one of the example families and analyze it
    Construct {
        #[command(subcommand)]
        kind: Kind,
        #[arg(long, default_value_t = DEFAULT_BOUND, global = true)]
        bound: i64,
    },
    /// Rerun the example and property checks
    VerifyPaper {
        /// check ids or tags, comma separated
        #[arg(long)]
        only: Option<String>,
        /// also write the results as JSON
        #[arg(long)]
        json: Option<String>,
    },
}

#[derive(Subcommand)]
enum Kind {
    /// ax^2 + bxy + cy^2 over Q(sqrt d) attached to an ideal
    Binary {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        /// ideal generators, e.g. 2,1+w
        #[arg(long)]
        ideal: String,
    },
    /// binary part plus 4a p^2 z^2 for inert primes p
    Ternary {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, value_delimiter = ',')]
        p: Vec<u64>,
    },
    /// x^2 + y^2 - pq z^2 representing every |n| <= N
    Counterexample {
        #[arg(long = "N")]
        n: i64,
        /// search bound for the z coordinate
        #[arg(long, default_value_t = 10)]
        z_bound: i64,
    },
}

fn read_lattice(arg: &str) -> quniv::Result<lattice::QuadLattice> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Input(format!("{arg}: {e}")))?
    };
    lattice::lattice_from_json(&text)
}

fn summary(r: &Value) -> String {
    let a = match r["members"].as_array().and_then(|m| m.last()) {
        Some(m) => &m["analysis"],
        None => &r["analysis"],
    };
    let failing: Vec<&String> = a["local"]["places"]
        .as_object()
        .map(|m| m.iter().filter(|(_, v)| v["universal"] == false).map(|(k, _)| k).collect())
        .unwrap_or_default();
    format!(
        "locally universal: {} (failing at {:?}); global: {} {}; potentially universal: {}",
        a["local"]["universal"],
        failing,
        a["global"]["status"].as_str().unwrap_or("?"),
        a["global"]["proof_kind"].as_str().or(a["global"]["reason"].as_str()).unwrap_or(""),
        a["potential"]["universal"],
    )
}

fn run(cli: Cli, command: Vec<String>) -> quniv::Result<(Value, bool)> {
    let start = Instant::now();
    let (mut out, ok) = match cli.cmd {
        Cmd::Analyze { lattice, places, bound, oracle } => {
            let l = read_lattice(&lattice)?;
            let opts = AnalyzeOptions { local: LocalOptions { places, oracle }, bound };
            (report::analyze_report(&command, &l, &opts)?, true)
        }
        Cmd::Construct { kind, bound } => {
            let opts = AnalyzeOptions { bound, ..Default::default() };
            let r = match kind {
                Kind::Binary { d, ideal } => report::construct_binary_report(&command, d, &ideal, &opts)?,
                Kind::Ternary { d, ideal, p } => {
                    report::construct_ternary_report(&command, d, ideal.as_deref(), &p, &opts)?
                }
                Kind::Counterexample { n, z_bound } => {
                    report::construct_counterexample_report(&command, n, z_bound, &opts)?
                }
            };
            (r, true)
        }
        Cmd::VerifyPaper { only, json } => {
            let results = run_checks(only.as_deref());
            if results.is_empty() {
                return Err(Error::Input(format!("no check matches {:?}", only.unwrap_or_default())));
            }
            for r in &results {
                let _ = writeln!(
                    std::io::stdout().lock(),
                    "{:>2} {} {}: {}",
                    r.id,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                );
            }
            let ok = results.iter().all(|r| r.passed);
            let v = serde_json::json!({
                "tool": {"name": "quniv", "version": report::VERSION},
                "command": command,
                "passed": ok,
                "checks": results,
            });
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&v).expect("serializable");
                std::fs::write(&path, text + "\n").map_err(|e| Error::Input(format!("{path}: {e}")))?;
            }
            return Ok((Value::Null, ok));
        }
    };
    if cli.timing {
        out["elapsed_ms"] = serde_json::json!(start.elapsed().as_millis() as u64);
    }
    Ok((out, ok))
}

fn main() -> ExitCode {
    let command: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let code = if e.use_stderr() { 2 } else { 0 };
        let _ = e.print();
        std::process::exit(code);
    });
    match run(cli, command) {
        Ok((v, ok)) => {
            if !v.is_null() {
                let text = serde_json::to_string_pretty(&v).expect("serializable");
                // a closed pipe is not an error worth reporting
                let _ = writeln!(std::io::stdout().lock(), "{text}");
                eprintln!("{}", summary(&v));
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
