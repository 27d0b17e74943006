//! `qtdeg`: mapping degrees between quasitoric 4-manifolds.
//!
//! Exit codes: 0 realizable or success, 1 obstructed or none exists,
//! 2 unknown or budget exhausted, 3 usage error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qtdeg::charpair::{cohomology_form, identify_form, parse_vectors, validate_pair, Identification};
use qtdeg::classify::{conjecture_scan, degree_set, realize_with, universal_dominator, DegreeAnswer};
use qtdeg::manifold::parse_spec;
use qtdeg::obstructions::run_all;
use qtdeg::search::{verify_certificate, Budget, SearchOutcome};
use qtdeg::{IntMatrix, QuasitoricSum};

const EXIT_OK: u8 = 0;
const EXIT_NONE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "qtdeg", version, about = "Mapping degrees between quasitoric 4-manifolds")]
struct Cli {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Search threads (default: available parallelism).
    #[arg(long, global = true, env = "QTDEG_THREADS")]
    threads: Option<usize>,

    /// Single-threaded, byte-identical output.
    #[arg(long, global = true)]
    deterministic: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pair {
    /// Domain, e.g. "2*CP2 # -CP2 # S2xS2".
    #[arg(long, value_parser = parse_manifold)]
    from: QuasitoricSum,
    /// Target.
    #[arg(long, value_parser = parse_manifold)]
    to: QuasitoricSum,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a map of the given degree exists and print a certificate.
    Decide {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        /// Entry bound for searches over indefinite domains.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Tabulate membership of each degree in a range.
    Set {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, allow_hyphen_values = true)]
        min: i64,
        #[arg(long, allow_hyphen_values = true)]
        max: i64,
    },
    /// Check a matrix certificate.
    Verify {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        /// JSON rows, e.g. "[[2,3],[3,-2]]".
        #[arg(long)]
        matrix: String,
    },
    /// Scan self-map degrees of (CP2)#n, n = 2 mod 4, against the two-square prediction.
    Conjecture {
        #[arg(long)]
        copies: u32,
        #[arg(long, default_value_t = 19)]
        max_degree: u32,
    },
    /// Intersection form and manifold of a characteristic pair over a polygon.
    Charpair {
        /// Facet vectors, e.g. "1,0;0,1;-1,3;0,-1".
        #[arg(long, allow_hyphen_values = true)]
        vectors: String,
    },
    /// Print a domain that maps onto the target in every degree.
    Dominate {
        #[arg(long, value_parser = parse_manifold)]
        to: QuasitoricSum,
    },
}

fn parse_manifold(s: &str) -> Result<QuasitoricSum, String> {
    parse_spec(s).map_err(|e| e.to_string())
}

struct Report {
    code: u8,
    json: Value,
    text: String,
}

fn budget(cli: &Cli) -> Result<Budget, String> {
    let threads = if cli.deterministic {
        1
    } else {
        cli.threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    };
    let b = Budget::default().with_threads(threads);
    b.validate().map_err(|e| e.to_string())?;
    Ok(b)
}

fn answer_text(a: &DegreeAnswer) -> String {
    let mut s = format!("{:?} {}", a.status, a.set.name());
    for src in &a.sources {
        s.push_str(&format!("\n  source: {src}"));
    }
    if let Some(flag) = &a.conjecture_flag {
        s.push_str(&format!("\n  conjecture: {flag}"));
    }
    s
}

fn decide(pair: &Pair, k: i64, bound: Option<u64>, budget: &Budget) -> Report {
    let (m, n) = (pair.from, pair.to);
    let obstructions = run_all(&m, &n, k);
    let outcome = realize_with(&m, &n, k, budget, bound);
    let answer = degree_set(&m, &n);
    let (code, reason) = match &outcome {
        SearchOutcome::Found(_) => (EXIT_OK, None),
        SearchOutcome::NoneExists(why) => (EXIT_NONE, Some(why.clone())),
        SearchOutcome::Unknown(why) => (EXIT_UNKNOWN, Some(why.clone())),
    };
    let mut json = serde_json::to_value(outcome.report(&m, &n, k)).expect("serializable");
    json["reason"] = json!(reason);
    json["obstructions"] = serde_json::to_value(&obstructions).expect("serializable");
    json["degree_set"] = serde_json::to_value(&answer).expect("serializable");
    let text = match &outcome {
        SearchOutcome::Found(c) => format!("found: degree {k} map {m} -> {n}\nmatrix {}", c.matrix()),
        SearchOutcome::NoneExists(why) => format!("none: {why}"),
        SearchOutcome::Unknown(why) => format!("unknown: {why}"),
    };
    Report { code, json, text }
}

fn set(pair: &Pair, min: i64, max: i64, budget: &Budget) -> Report {
    let (m, n) = (pair.from, pair.to);
    let answer = degree_set(&m, &n);
    let mut rows = Vec::new();
    let mut text = answer_text(&answer);
    for k in min..=max {
        let (status, source) = match answer.decides(k) {
            Some(true) => ("member", answer.sources.first().cloned().unwrap_or_default()),
            Some(false) => ("non-member", answer.set.exclusion().to_string()),
            None => match realize_with(&m, &n, k, budget, None) {
                SearchOutcome::Found(_) => ("member", "search".to_string()),
                SearchOutcome::NoneExists(why) => ("non-member", why),
                SearchOutcome::Unknown(why) => ("unknown", why),
            },
        };
        text.push_str(&format!("\n{k:>6}  {status:<10}  {source}"));
        rows.push(json!({ "k": k, "status": status, "source": source }));
    }
    let members: Vec<i64> = rows
        .iter()
        .filter(|r| r["status"] == "member")
        .map(|r| r["k"].as_i64().expect("integer"))
        .collect();
    let json = json!({
        "domain": m.to_string(),
        "target": n.to_string(),
        "answer": answer,
        "members": members,
        "rows": rows,
    });
    Report { code: EXIT_OK, json, text }
}

fn verify(pair: &Pair, k: i64, matrix: &str) -> Result<Report, String> {
    let p: IntMatrix = matrix.parse().map_err(|e: qtdeg::Error| e.to_string())?;
    let (m, n) = (pair.from, pair.to);
    let (valid, reason) = match verify_certificate(&p, &m, &n, k) {
        Ok(true) => (true, None),
        Ok(false) => (false, Some("PᵗAP differs from kB".to_string())),
        Err(e) => (false, Some(e.to_string())),
    };
    let json = json!({
        "domain": m.to_string(),
        "target": n.to_string(),
        "degree": k,
        "valid": valid,
        "reason": reason,
    });
    let text = if valid { "valid".to_string() } else { format!("invalid: {}", reason.unwrap_or_default()) };
    Ok(Report { code: if valid { EXIT_OK } else { EXIT_NONE }, json, text })
}

fn conjecture(copies: u32, max_degree: u32, budget: &Budget) -> Result<Report, String> {
    let r = conjecture_scan(copies, max_degree, budget).map_err(|e| e.to_string())?;
    let code = if !r.refutations.is_empty() || !r.unknown.is_empty() {
        EXIT_UNKNOWN
    } else if !r.missing_members.is_empty() {
        EXIT_NONE
    } else {
        EXIT_OK
    };
    let mut json = serde_json::to_value(&r).expect("serializable");
    json["consistent"] = json!(r.consistent());
    let text = format!(
        "{}\nrealizable: {:?}\nnot realizable: {:?}\nunknown: {:?}\nrefutations: {:?}\nmissing members: {:?}",
        if r.consistent() { "consistent" } else { "inconsistent" },
        r.realizable,
        r.not_realizable,
        r.unknown,
        r.refutations,
        r.missing_members
    );
    Ok(Report { code, json, text })
}

fn charpair(vectors: &str) -> Result<Report, String> {
    let lambdas = parse_vectors(vectors).map_err(|e| e.to_string())?;
    let pair = match validate_pair(lambdas.len(), &lambdas) {
        Ok(p) => p,
        Err(e) => {
            return Ok(Report {
                code: EXIT_NONE,
                json: json!({ "valid": false, "error": e.to_string() }),
                text: format!("invalid pair: {e}"),
            })
        }
    };
    let q = cohomology_form(&pair);
    let id = identify_form(&q);
    let parity = q.parity();
    let json = json!({
        "valid": true,
        "form": q,
        "rank": q.order(),
        "signature": q.signature(),
        "parity": parity,
        "determinant": q.determinant().to_string().parse::<serde_json::Number>().expect("integer"),
        "manifold": id.to_string(),
        "triple": match &id {
            Identification::Manifold(x) => json!(x.triple()),
            Identification::Undetermined(_) => Value::Null,
        },
    });
    let text = format!(
        "form {q}\nrank {}\nsignature {}\nparity {:?}\ndeterminant {}\nmanifold {id}",
        q.order(),
        q.signature(),
        parity,
        q.determinant()
    );
    Ok(Report { code: EXIT_OK, json, text })
}

fn run(cli: &Cli) -> Result<Report, String> {
    let budget = budget(cli)?;
    match &cli.command {
        Command::Decide { pair, degree, bound } => {
            if *bound == Some(0) {
                return Err("--bound must be at least 1".into());
            }
            Ok(decide(pair, *degree, *bound, &budget))
        }
        Command::Set { pair, min, max } => {
            if min > max {
                return Err(format!("--min {min} exceeds --max {max}"));
            }
            Ok(set(pair, *min, *max, &budget))
        }
        Command::Verify { pair, degree, matrix } => verify(pair, *degree, matrix),
        Command::Conjecture { copies, max_degree } => conjecture(*copies, *max_degree, &budget),
        Command::Charpair { vectors } => charpair(vectors),
        Command::Dominate { to } => {
            let d = universal_dominator(to);
            Ok(Report {
                code: EXIT_OK,
                json: json!({ "target": to.to_string(), "dominator": d.to_string(), "triple": d.triple() }),
                text: d.to_string(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string(&r.json).expect("serializable"));
            } else {
                println!("{}", r.text);
            }
            ExitCode::from(r.code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
