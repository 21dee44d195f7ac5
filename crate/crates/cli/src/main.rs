use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qdepth_core::checks::{selftest, SelftestDepth};
use qdepth_core::exec::{default_jobs, with_jobs};
use qdepth_core::format::parse_ideal;
use qdepth_core::scan::{run_scan, CellStatus, ScanConfig};
use qdepth_core::theorems::{verify_theorem, TheoremId};
use qdepth_core::{
    maximal_power_ideal, qdepth_general, qdepth_power_fast, Error, MonomialIdeal, PowerParams,
    QDepthResult,
};
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_INCLUSION: u8 = 2;
const EXIT_STRICT: u8 = 3;
const EXIT_BUG: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "qdepth",
    version,
    about = "Quasi depth of monomial quotients and powers of the maximal ideal"
)]
struct Cli {
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress human-readable output.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// qdepth of m^t from the closed-form β values.
    Power {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        /// Also run the enumeration oracle and require agreement.
        #[arg(long)]
        oracle: bool,
        /// Largest n*t accepted with --oracle.
        #[arg(long, default_value_t = 16)]
        oracle_cap: u64,
        /// Check a statement for this (n, t); may be repeated.
        #[arg(long = "theorem", value_enum)]
        theorems: Vec<TheoremArg>,
    },
    /// qdepth of outer/inner for ideals read from files.
    Ideal {
        /// Inner ideal I; the zero ideal when omitted.
        #[arg(long)]
        inner: Option<PathBuf>,
        /// Outer ideal J.
        #[arg(long)]
        outer: PathBuf,
    },
    /// Sweep 2 <= n <= n_max, 1 <= t <= t_max and compare with ceil(n/(t+1)).
    Scan {
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        t_max: u64,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        /// CSV output; the JSON report is written alongside with a .json extension.
        #[arg(long, default_value = "scan.csv")]
        out: PathBuf,
        /// Exit 3 if a proven-region cell disagrees or the upper bound fails.
        #[arg(long)]
        strict: bool,
        /// Record wall-clock timing inside the JSON report.
        #[arg(long)]
        timing: bool,
    },
    /// Run the identity, oracle-equivalence and lemma suites.
    Selftest {
        #[arg(value_enum, default_value_t = Depth::Quick)]
        depth: Depth,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Depth {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum TheoremArg {
    UpperBound,
    TGeNMinus1,
    Square,
    Teo3,
    RemarkZero,
}

impl From<TheoremArg> for TheoremId {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::UpperBound => TheoremId::UpperBound,
            TheoremArg::TGeNMinus1 => TheoremId::TGeNMinus1,
            TheoremArg::Square => TheoremId::Square,
            TheoremArg::Teo3 => TheoremId::Teo3,
            TheoremArg::RemarkZero => TheoremId::RemarkZero,
        }
    }
}

struct Out {
    json: bool,
    quiet: bool,
}

impl Out {
    fn say(&self, line: impl AsRef<str>) {
        if !self.json && !self.quiet {
            println!("{}", line.as_ref());
        }
    }

    fn emit(&self, value: serde_json::Value) {
        if self.json {
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("serializable")
            );
        }
    }
}

fn fail(code: u8, msg: impl AsRef<str>) -> ExitCode {
    eprintln!("error: {}", msg.as_ref());
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = Out {
        json: cli.json,
        quiet: cli.quiet,
    };
    match cli.cmd {
        Command::Power {
            n,
            t,
            oracle,
            oracle_cap,
            theorems,
        } => cmd_power(&out, n, t, oracle, oracle_cap, &theorems),
        Command::Ideal { inner, outer } => cmd_ideal(&out, inner, outer),
        Command::Scan {
            n_max,
            t_max,
            jobs,
            out: path,
            strict,
            timing,
        } => {
            let cfg = ScanConfig {
                n_max,
                t_max,
                jobs: jobs.unwrap_or_else(default_jobs),
                out: path,
                timing,
            };
            cmd_scan(&out, &cfg, strict)
        }
        Command::Selftest { depth } => cmd_selftest(&out, depth),
    }
}

fn print_result(out: &Out, r: &QDepthResult) {
    out.say(format!("qdepth: {}", r.qdepth));
    out.say(format!(
        "polarized qdepth: {} ({} variables, {} added)",
        r.polarized_qdepth, r.nvars, r.added_vars
    ));
    let row: Vec<String> = r.certificate.iter().map(|b| b.to_string()).collect();
    out.say(format!(
        "certificate d={}: [{}]",
        r.polarized_qdepth,
        row.join(", ")
    ));
    match &r.witness {
        Some(w) => out.say(format!("witness: beta_{}^{} = {}", w.k, w.d, w.beta)),
        None => out.say("witness: none (every row is feasible)"),
    }
    if r.gap_below {
        out.say("note: some d below the maximum is infeasible");
    }
}

fn cmd_power(
    out: &Out,
    n: u64,
    t: u64,
    oracle: bool,
    cap: u64,
    theorems: &[TheoremArg],
) -> ExitCode {
    let p = match PowerParams::new(n, t) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_USAGE, e.to_string()),
    };
    if oracle && n * t > cap {
        return fail(
            EXIT_USAGE,
            format!("--oracle needs n*t <= {cap}, got {}", n * t),
        );
    }
    let fast = match qdepth_power_fast(n, t) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_USAGE, e.to_string()),
    };
    out.say(format!("n={n} t={t} m=ceil(n/(t+1))={}", p.m));
    print_result(out, &fast);

    let mut oracle_result = None;
    if oracle {
        let ideal = match maximal_power_ideal(n as usize, t as u32) {
            Ok(i) => i,
            Err(e) => return fail(EXIT_USAGE, e.to_string()),
        };
        let slow = match qdepth_general(&MonomialIdeal::zero(n as usize), &ideal) {
            Ok(r) => r,
            Err(e) => return fail(EXIT_BUG, e.to_string()),
        };
        if slow != fast {
            out.emit(json!({ "n": n, "t": t, "fast": fast, "oracle": slow, "agree": false }));
            return fail(
                EXIT_BUG,
                format!(
                    "oracle qdepth {} disagrees with fast path {}",
                    slow.qdepth, fast.qdepth
                ),
            );
        }
        out.say("oracle: agrees");
        oracle_result = Some(slow);
    }

    let mut verdicts = Vec::new();
    for &th in theorems {
        match verify_theorem(th.into(), n, t) {
            Ok(v) => {
                out.say(format!(
                    "{}: {} (qdepth {}, expected {})",
                    v.theorem,
                    if v.pass { "pass" } else { "FAIL" },
                    v.qdepth,
                    v.expected
                ));
                verdicts.push(v);
            }
            Err(e @ Error::Hypothesis { .. }) => return fail(EXIT_USAGE, e.to_string()),
            Err(e) => return fail(EXIT_USAGE, e.to_string()),
        }
    }
    out.emit(json!({
        "n": n,
        "t": t,
        "m": p.m,
        "result": fast,
        "oracle": oracle_result,
        "verdicts": verdicts,
    }));
    if verdicts.iter().any(|v| !v.pass) {
        return ExitCode::from(EXIT_BUG);
    }
    ExitCode::SUCCESS
}

fn read_ideal(path: &PathBuf) -> Result<MonomialIdeal, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_ideal(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_ideal(out: &Out, inner: Option<PathBuf>, outer: PathBuf) -> ExitCode {
    let outer = match read_ideal(&outer) {
        Ok(i) => i,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let inner = match inner {
        Some(p) => match read_ideal(&p) {
            Ok(i) => i,
            Err(e) => return fail(EXIT_USAGE, e),
        },
        None => MonomialIdeal::zero(outer.nvars()),
    };
    if inner.nvars() != outer.nvars() {
        return fail(
            EXIT_USAGE,
            format!(
                "inner has {} variables, outer has {}",
                inner.nvars(),
                outer.nvars()
            ),
        );
    }
    match qdepth_general(&inner, &outer) {
        Ok(r) => {
            out.say(format!("quotient {outer} / {inner}"));
            print_result(out, &r);
            out.emit(serde_json::to_value(&r).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(e @ (Error::NotContained | Error::EqualIdeals)) => fail(EXIT_INCLUSION, e.to_string()),
        Err(e) => fail(EXIT_USAGE, e.to_string()),
    }
}

fn cmd_scan(out: &Out, cfg: &ScanConfig, strict: bool) -> ExitCode {
    let outcome = match run_scan(cfg) {
        Ok(o) => o,
        Err(e) => return fail(EXIT_USAGE, e.to_string()),
    };
    let r = &outcome.report;
    let s = &r.summary;
    out.say(format!(
        "scanned {} cells (n <= {}, t <= {})",
        s.cells, r.n_max, r.t_max
    ));
    out.say(format!(
        "proven-match {}, conjectural-match {}, COUNTEREXAMPLE {}, bound-violation {}, proven-mismatch {}",
        s.proven_match, s.conjectural_match, s.counterexample, s.bound_violation, s.proven_mismatch
    ));
    if s.gap_below > 0 {
        out.say(format!(
            "cells with an infeasible d below the maximum: {}",
            s.gap_below
        ));
    }
    for c in &r.cells {
        match c.status {
            CellStatus::Counterexample => out.say(format!(
                "COUNTEREXAMPLE: n={} t={} qdepth={} < m={}",
                c.n, c.t, c.qdepth_computed, c.m_expected
            )),
            st if st.is_failure() => out.say(format!(
                "{}: n={} t={} qdepth={} m={}",
                st.as_str(),
                c.n,
                c.t,
                c.qdepth_computed,
                c.m_expected
            )),
            _ => {}
        }
    }
    out.say(format!(
        "wrote {} and {}",
        outcome.csv_path.display(),
        outcome.json_path.display()
    ));
    if !out.quiet {
        eprintln!(
            "computed {} cells, resumed {}, {:.2}s",
            outcome.timing.computed_cells, outcome.timing.resumed_cells, outcome.timing.seconds
        );
    }
    out.emit(json!({
        "csv": outcome.csv_path,
        "json": outcome.json_path,
        "summary": s,
    }));
    if strict && s.has_failures() {
        return fail(EXIT_STRICT, "proven-region mismatch");
    }
    ExitCode::SUCCESS
}

fn cmd_selftest(out: &Out, depth: Depth) -> ExitCode {
    let depth = match depth {
        Depth::Quick => SelftestDepth::Quick,
        Depth::Full => SelftestDepth::Full,
    };
    let suites = with_jobs(default_jobs(), |exec| selftest(depth, exec));
    for s in &suites {
        let status = if s.informational {
            "info"
        } else if s.passed() {
            "ok"
        } else {
            "FAIL"
        };
        out.say(format!(
            "[{status}] {}: {} checked, {} failed",
            s.name, s.checked, s.failed
        ));
        for f in &s.failures {
            out.say(format!("    {f}"));
        }
    }
    out.emit(json!({ "depth": depth, "suites": suites }));
    if suites.iter().all(|s| s.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_BUG)
    }
}
