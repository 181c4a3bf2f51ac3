use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use relcoh_cli::{parse_session, run_session, Config, Status};

/// Local cohomology, duality and base change for graded modules over QQ or
/// QQ[t]. Reads a session script and writes one JSON report per command.
#[derive(Parser, Debug)]
#[command(name = "relcoh", version)]
struct Cli {
    /// Session script; standard input when absent or `-`.
    script: Option<PathBuf>,
    /// Degree window `lo..hi` for commands without `window=`.
    #[arg(long, default_value = "-12..4", allow_hyphen_values = true, value_parser = parse_window)]
    window: (i64, i64),
    /// Largest power of the ideal used by the `oracle` route.
    #[arg(long, default_value_t = 6)]
    tmax: usize,
    /// Number of final powers that must agree for the oracle to be stable.
    #[arg(long, default_value_t = 2)]
    streak: usize,
    /// Exit with status 3 when a report contradicts a theorem.
    #[arg(long)]
    strict: bool,
    /// Worker threads; all cores when absent.
    #[arg(long)]
    threads: Option<usize>,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or("expected lo..hi")?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty window {a}..{b}"));
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.tmax < 2 || cli.streak == 0 {
        eprintln!("error: --tmax must be at least 2 and --streak at least 1");
        return ExitCode::from(1);
    }
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let mut text = String::new();
    let read = match &cli.script {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map(|t| text = t),
        _ => std::io::stdin().read_to_string(&mut text).map(|_| ()),
    };
    if let Err(e) = read {
        eprintln!("error: cannot read script: {e}");
        return ExitCode::from(1);
    }
    let session = match parse_session(&text) {
        Ok(s) => s,
        Err(e) => {
            let name = cli.script.as_ref().map_or("<stdin>".to_string(), |p| p.display().to_string());
            eprintln!("{name}:{e}");
            return ExitCode::from(1);
        }
    };
    let config = Config {
        window: cli.window,
        t_max: cli.tmax,
        streak: cli.streak,
    };
    let reports = run_session(&session, &config);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for r in &reports {
        let _ = writeln!(out, "{}", r.json);
        let detail = r.json.get("error").and_then(|e| e.as_str()).unwrap_or("");
        eprintln!("{} {}: {} {detail}", r.command, r.target, r.status.as_str());
    }
    if reports.iter().any(|r| r.status == Status::Error) {
        ExitCode::from(2)
    } else if cli.strict && reports.iter().any(|r| r.status == Status::Violation) {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}
