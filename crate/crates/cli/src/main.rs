mod suites;
mod supp;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use wittmod::kweight::KWeightModule;
use wittmod::par::Exec;
use wittmod::report::CheckReport;
use wittmod::tensormod::{
    hc_brute_force, hc_classify_n2, published_list_verdict, GlnSpec, QSet, TensorModule, Window,
};
use wittmod::uea::{NormalOrderer, WittModule, DEFAULT_BUDGET};
use wittmod::witt::parse_witt;

use suites::Config;

#[derive(Parser)]
#[command(
    name = "wittmod",
    version,
    about = "Exact checks for weight modules over the Witt algebra W_n^+"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Modules,
    Series,
    Cover,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write a JSON report.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=4))]
        n: u32,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        deg: u32,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(1..))]
        radius: i64,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        #[arg(long, default_value_t = 3)]
        smax: u32,
        /// Comma-separated factors: poly, torsion, laurent:p/q.
        #[arg(long = "P")]
        p: Option<String>,
        /// ext:k, hw:a1,..,a_{n-1}:b or triv.
        #[arg(long = "M")]
        m: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Weight multiplicities of F(P, M) as CSV (and SVG when n = 2), or a
    /// Harish-Chandra verdict for a support triple.
    Supp {
        #[arg(long = "P")]
        p: Option<String>,
        #[arg(long = "M", default_value = "triv")]
        m: String,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(0..))]
        radius: i64,
        /// Support triple q1,q2,q3 with entries Z, Z+ or Z-.
        #[arg(long = "Q")]
        q: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Bracket of two vector fields, e.g. "t^(1,0) d_1" "2 d_2".
    Bracket {
        #[arg(long, default_value_t = 2)]
        n: usize,
        x: String,
        y: String,
    },
}

enum Failure {
    Usage(String),
    Check,
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            suite,
            n,
            deg,
            radius,
            kmax,
            smax,
            p,
            m,
            seed,
            budget,
            out,
            sequential,
        } => (|| {
            let n = n as usize;
            let p = p
                .map(|s| s.parse::<KWeightModule>())
                .transpose()
                .map_err(usage)?;
            if p.as_ref().is_some_and(|p| p.rank() != n) {
                return Err(Failure::Usage(format!(
                    "--P has rank {}, expected {n}",
                    p.map_or(0, |p| p.rank())
                )));
            }
            let m = m.map(|s| s.parse::<GlnSpec>()).transpose().map_err(usage)?;
            let exec = if sequential {
                Exec::Sequential
            } else {
                Exec::Parallel
            };
            let cfg = Config {
                n,
                deg,
                radius,
                kmax,
                smax,
                p,
                m,
                seed,
                orderer: NormalOrderer::with_budget(budget),
                exec,
            };
            verify(suite, &cfg, out)
        })(),
        Command::Supp {
            p,
            m,
            radius,
            q,
            out,
            svg,
        } => supp(p, &m, radius, q, out, svg),
        Command::Bracket { n, x, y } => (|| {
            let a = parse_witt(n, &x).map_err(usage)?;
            let b = parse_witt(n, &y).map_err(usage)?;
            println!("{}", a.bracket(&b).map_err(usage)?);
            Ok(())
        })(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn verify(suite: Suite, cfg: &Config, out: Option<PathBuf>) -> Result<(), Failure> {
    let runs: Vec<(&str, fn(&Config) -> suites::SuiteResult)> = match suite {
        Suite::Identities => vec![("identities", suites::identities)],
        Suite::Modules => vec![("modules", suites::modules)],
        Suite::Series => vec![("series", suites::series)],
        Suite::Cover => vec![("cover", suites::cover)],
        Suite::All => vec![
            ("identities", suites::identities),
            ("modules", suites::modules),
            ("series", suites::series),
            ("cover", suites::cover),
        ],
    };
    let mut checks: Vec<CheckReport> = Vec::new();
    for (name, run) in runs {
        checks.extend(run(cfg).map_err(|e| Failure::Usage(format!("{name}: {e}")))?);
    }
    checks.sort_by_key(|c| (c.check.clone(), c.params.to_string()));
    let pass = checks.iter().all(|c| c.pass);
    for c in &checks {
        let note = c
            .note
            .as_deref()
            .map(|n| format!(" ({n})"))
            .unwrap_or_default();
        println!(
            "{} {} [{} checked, {} failed]{note}",
            if c.pass { "PASS" } else { "FAIL" },
            c.check,
            c.checked,
            c.failures
        );
    }
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let report = json!({
        "schema": 1,
        "suite": format!("{suite:?}").to_lowercase(),
        "config": {
            "n": cfg.n, "deg": cfg.deg, "radius": cfg.radius, "kmax": cfg.kmax, "smax": cfg.smax,
            "P": cfg.p.as_ref().map(ToString::to_string), "M": cfg.m.as_ref().map(ToString::to_string),
            "seed": cfg.seed, "budget": cfg.orderer.budget,
        },
        "pass": pass,
        "checks": checks,
        "timestamp": timestamp,
    });
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&report).expect("serializable");
        std::fs::write(&path, text + "\n")
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn parse_q(text: &str) -> Result<(QSet, QSet, QSet), Failure> {
    let parts = text
        .split(',')
        .map(str::parse::<QSet>)
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    match parts[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(Failure::Usage(format!(
            "--Q needs three entries, got {}",
            parts.len()
        ))),
    }
}

fn supp(
    p: Option<String>,
    m: &str,
    radius: i64,
    q: Option<String>,
    out: Option<PathBuf>,
    svg: Option<PathBuf>,
) -> Result<(), Failure> {
    if let Some(q) = q {
        let (q1, q2, q3) = parse_q(&q)?;
        let verdict = hc_classify_n2(q1, q2, q3);
        let report = json!({
            "schema": 1,
            "Q": [q1, q2, q3],
            "verdict": verdict,
            "published_list": published_list_verdict(q1, q2, q3),
            "brute_force": hc_brute_force(q1, q2, q3, 10),
        });
        println!("{verdict:?}");
        if let Some(path) = &out {
            std::fs::write(path, report.to_string() + "\n").map_err(usage)?;
        }
        if p.is_none() {
            return Ok(());
        }
    }
    let p: KWeightModule = p
        .ok_or_else(|| Failure::Usage("--P or --Q is required".into()))?
        .parse()
        .map_err(usage)?;
    let f = TensorModule::from_spec(p, &m.parse().map_err(usage)?).map_err(usage)?;
    let n = f.rank();
    let window = Window::around_anchor(&f, radius);
    let csv = supp::csv(n, &supp::rows(&f, &window));
    match out {
        Some(path) => std::fs::write(&path, &csv).map_err(usage)?,
        None => print!("{csv}"),
    }
    if let Some(path) = svg {
        if n != 2 {
            return Err(Failure::Usage("SVG output needs n = 2".into()));
        }
        std::fs::write(&path, supp::svg(&f, &window)).map_err(usage)?;
    }
    Ok(())
}
