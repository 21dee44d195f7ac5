//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use qdepth_core::checks::{
    binomial_law_suite, identity_suites, lemma_b2_suite, lemma_b_closed_suite,
    lemma_b_positive_suite, SuiteOutcome,
};
use qdepth_core::oracle::alpha_enumerate_with;
use qdepth_core::power::{
    alpha_power, b_sum, beta_edge_plus, beta_edge_plus_as_printed, beta_quotient_power,
    criterion_b, criterion_b_with, f_ratio_as_printed, f_ratio_exact, qdepth_quotient_power_fast,
    CriterionIndexing,
};
use qdepth_core::scan::{in_proven_region, CellStatus, Report};
use qdepth_core::{
    binom, maximal_power_ideal, polarize, qdepth_general, qdepth_power_fast, ExactInt, ExactRatio,
    Exec, MonomialIdeal, QuotientPresentation,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// `(n, t)` with `n ∈ {2,3,4}`, `t ∈ {1,2,3}`, `nt <= 12`.
fn oracle_grid() -> Vec<(u64, u64)> {
    let mut v = Vec::new();
    for n in 2..=4 {
        for t in 1..=3 {
            if n * t <= 12 {
                v.push((n, t));
            }
        }
    }
    v
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: String, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn alpha_oracle() -> Outcome {
    let mut checked = 0;
    for (n, t) in oracle_grid() {
        let ideal = polarize(&maximal_power_ideal(n as usize, t as u32).unwrap())
            .unwrap()
            .ideal;
        let nt = (n * t) as usize;
        let q = QuotientPresentation::new(ideal, MonomialIdeal::unit(nt)).unwrap();
        let alpha = alpha_enumerate_with(&q, Exec::Parallel).unwrap();
        for k in 0..=nt {
            expect_eq(
                format!("alpha n={n} t={t} k={k}"),
                alpha.get(k).clone(),
                alpha_power(n, t, k as u64).unwrap(),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} α values"))
}

fn qdepth_oracle() -> Outcome {
    let grid = oracle_grid();
    for &(n, t) in &grid {
        let ideal = maximal_power_ideal(n as usize, t as u32).unwrap();
        let slow = qdepth_general(&MonomialIdeal::zero(n as usize), &ideal).unwrap();
        let fast = qdepth_power_fast(n, t).unwrap();
        expect_eq(format!("qdepth n={n} t={t}"), slow, fast)?;
    }
    Ok(format!("{} cells", grid.len()))
}

fn fast_equals(cells: impl IntoIterator<Item = (u64, u64, i64)>) -> Outcome {
    let mut checked = 0;
    for (n, t, want) in cells {
        expect_eq(
            format!("qdepth n={n} t={t}"),
            qdepth_power_fast(n, t).unwrap().qdepth,
            want,
        )?;
        checked += 1;
    }
    Ok(format!("{checked} cells"))
}

fn linear_power() -> Outcome {
    fast_equals((2..=200).map(|n| (n, 1, ceil_div(n, 2) as i64)))
}

fn square_power() -> Outcome {
    fast_equals((2..=200).map(|n| (n, 2, ceil_div(n, 3) as i64)))
}

fn high_power() -> Outcome {
    fast_equals((2..=20u64).flat_map(|n| (n - 1..=n + 3).map(move |t| (n, t, 1))))
}

fn edge_witness() -> Outcome {
    let mut checked = 0;
    for n in 2..=150u64 {
        for t in 1..=12u64 {
            let (ni, ti) = (n as i64, t as i64);
            let m = ceil_div(n, t + 1) as i64;
            let edge = beta_edge_plus(n, t).unwrap();
            let closed = binom(ni + ti, ti + 1) - (m + 1) * binom(ni + ti - 1, ti);
            expect_eq(format!("edge n={n} t={t}"), edge.clone(), closed)?;
            if edge >= ExactInt::from(0) {
                return Err(format!("edge n={n} t={t} is {edge}, not negative"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} cells"))
}

fn bounded_region() -> Outcome {
    fast_equals(
        (3..=8u64)
            .flat_map(|t| (2..=(t + 1) * (t + 3)).map(move |n| (n, t, ceil_div(n, t + 1) as i64))),
    )
}

fn quotient_zero() -> Outcome {
    let mut checked = 0;
    for n in 2..=30u64 {
        for t in 1..=6u64 {
            let base = n * t - n;
            let r = qdepth_quotient_power_fast(n, t).unwrap();
            expect_eq(
                format!("polarized qdepth n={n} t={t}"),
                r.polarized_qdepth as u64,
                base,
            )?;
            for k in 0..=base {
                let b = beta_quotient_power(n, t, base, k).unwrap();
                if b < ExactInt::from(0) {
                    return Err(format!("β_{k}^{base} = {b} < 0 at n={n} t={t}"));
                }
            }
            let w = beta_quotient_power(n, t, base + 1, t).unwrap();
            let want = -binom(n as i64 + t as i64 - 2, t as i64 - 1);
            expect_eq(format!("witness n={n} t={t}"), w.clone(), want)?;
            if w >= ExactInt::from(0) {
                return Err(format!("witness n={n} t={t} is not negative"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} cells"))
}

fn suites(parts: Vec<SuiteOutcome>) -> Outcome {
    let mut total = 0;
    for s in &parts {
        if !s.passed() {
            return Err(format!(
                "{}: {} failed, e.g. {:?}",
                s.name, s.failed, s.failures
            ));
        }
        total += s.checked;
    }
    Ok(format!("{total} checks, 0 violations"))
}

fn identities() -> Outcome {
    let mut parts = identity_suites(30);
    parts.push(binomial_law_suite(60, 60));
    suites(parts)
}

fn lemmas() -> Outcome {
    suites(vec![
        lemma_b_closed_suite(40, 10, 6),
        lemma_b_positive_suite(60, 8),
        lemma_b2_suite(6),
    ])
}

fn errata() -> Outcome {
    expect_eq(
        "printed edge value (2,2)".into(),
        beta_edge_plus_as_printed(2, 2).unwrap(),
        ExactInt::from(-3),
    )?;
    expect_eq(
        "edge value (2,2)".into(),
        beta_edge_plus(2, 2).unwrap(),
        ExactInt::from(-2),
    )?;
    expect_eq("b(2,1,2,1)".into(), b_sum(2, 1, 2, 1), ExactInt::from(-1))?;
    expect_eq(
        "literal criterion (2,2)".into(),
        criterion_b_with(2, 2, CriterionIndexing::Literal).unwrap(),
        false,
    )?;
    expect_eq(
        "corrected criterion (2,2)".into(),
        criterion_b(2, 2).unwrap(),
        true,
    )?;
    expect_eq(
        "qdepth n=2 t=2".into(),
        qdepth_power_fast(2, 2).unwrap().qdepth,
        1,
    )?;
    // (n, m, k, t, j) = (10, 4, 3, 1, 0)
    let printed = f_ratio_as_printed(10, 4, 1, 3, 0).unwrap();
    let exact = f_ratio_exact(10, 4, 1, 3, 0).unwrap().unwrap();
    expect_eq(
        "printed f ratio".into(),
        printed.clone(),
        ExactRatio::from_int(1),
    )?;
    expect_eq(
        "exact f ratio".into(),
        exact.clone(),
        ExactRatio::new(5.into(), 8.into()).unwrap(),
    )?;
    if printed == exact {
        return Err("printed and exact f ratio agree".into());
    }
    Ok("3 discrepancies pinned".into())
}

fn conjecture_scan() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for jobs in ["1", "3", "8"] {
        let csv = dir.path().join(format!("scan-{jobs}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_qdepth"))
            .args([
                "--quiet", "scan", "--n-max", "120", "--t-max", "10", "--jobs", jobs,
            ])
            .arg("--out")
            .arg(&csv)
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("scan --jobs {jobs} exited with {status}"));
        }
        let json = fs::read(csv.with_extension("json")).map_err(|e| e.to_string())?;
        outputs.push((fs::read(&csv).map_err(|e| e.to_string())?, json));
    }
    if outputs.windows(2).any(|w| w[0] != w[1]) {
        return Err("reports differ across --jobs".into());
    }
    let report: Report = serde_json::from_slice(&outputs[0].1).map_err(|e| e.to_string())?;
    let expected_cells = 119 * 10;
    expect_eq("cell count".into(), report.cells.len(), expected_cells)?;
    let mut counterexamples = Vec::new();
    for c in &report.cells {
        if in_proven_region(c.n, c.t) && c.status != CellStatus::ProvenMatch {
            return Err(format!(
                "proven cell n={} t={} is {}",
                c.n,
                c.t,
                c.status.as_str()
            ));
        }
        match c.status {
            CellStatus::BoundViolation => {
                return Err(format!("bound violation at n={} t={}", c.n, c.t))
            }
            CellStatus::Counterexample => counterexamples.push(format!("({},{})", c.n, c.t)),
            _ => {}
        }
    }
    let s = &report.summary;
    let mut note = format!(
        "{} cells, {} proven-match, {} conjectural-match, {} counterexample",
        s.cells, s.proven_match, s.conjectural_match, s.counterexample
    );
    if !counterexamples.is_empty() {
        note.push_str(&format!(" at {}", counterexamples.join(" ")));
    }
    Ok(note)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("α enumeration equals closed form, nt <= 12", alpha_oracle),
        (
            "qdepth enumeration equals fast path, nt <= 12",
            qdepth_oracle,
        ),
        ("qdepth(m^1) = ceil(n/2), n <= 200", linear_power),
        ("qdepth(m^2) = ceil(n/3), n <= 200", square_power),
        ("qdepth(m^t) = 1 for n-1 <= t <= n+3, n <= 20", high_power),
        (
            "edge β closed form and negativity, n <= 150, t <= 12",
            edge_witness,
        ),
        (
            "qdepth(m^t) = ceil(n/(t+1)) for n <= (t+1)(t+3), 3 <= t <= 8",
            bounded_region,
        ),
        (
            "qdepth(S/m^t) = 0 with witness, n <= 30, t <= 6",
            quotient_zero,
        ),
        ("binomial identities and laws", identities),
        ("b-sum lemma sweeps", lemmas),
        ("pinned discrepancies", errata),
        ("scan n <= 120, t <= 10 across --jobs", conjecture_scan),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("PASS {:>2} {name} ({note}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
