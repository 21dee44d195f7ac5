//! Grid sweeps of `qdepth(𝔪^t)` over `2 <= n <= n_max`, `1 <= t <= t_max`
//! with resumable CSV output and a JSON report.
//!
//! Cells are always ordered by `(t, n)`. Work is computed in fixed-size
//! chunks; each finished chunk is appended to the CSV and flushed, so an
//! interrupted scan resumes from the last complete chunk.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{with_jobs, Exec};
use crate::power::{qdepth_power_fast, PowerParams};

pub const CSV_HEADER: [&str; 9] = [
    "n",
    "t",
    "m",
    "qdepth",
    "status",
    "witness_d",
    "witness_k",
    "witness_beta",
    "gap_below",
];

const CHUNK: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CellStatus {
    #[serde(rename = "proven-match")]
    ProvenMatch,
    #[serde(rename = "conjectural-match")]
    ConjecturalMatch,
    #[serde(rename = "COUNTEREXAMPLE")]
    Counterexample,
    #[serde(rename = "bound-violation")]
    BoundViolation,
    #[serde(rename = "proven-mismatch")]
    ProvenMismatch,
}

impl CellStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CellStatus::ProvenMatch => "proven-match",
            CellStatus::ConjecturalMatch => "conjectural-match",
            CellStatus::Counterexample => "COUNTEREXAMPLE",
            CellStatus::BoundViolation => "bound-violation",
            CellStatus::ProvenMismatch => "proven-mismatch",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [
            CellStatus::ProvenMatch,
            CellStatus::ConjecturalMatch,
            CellStatus::Counterexample,
            CellStatus::BoundViolation,
            CellStatus::ProvenMismatch,
        ]
        .into_iter()
        .find(|c| c.as_str() == s)
    }

    /// Signals an implementation bug rather than a discovery.
    pub fn is_failure(self) -> bool {
        matches!(
            self,
            CellStatus::BoundViolation | CellStatus::ProvenMismatch
        )
    }
}

/// `t <= 2`, `t >= n - 1`, or `n <= (t+1)(t+3)`.
pub fn in_proven_region(n: u64, t: u64) -> bool {
    t <= 2 || t + 1 >= n || n <= (t + 1) * (t + 3)
}

pub fn classify(n: u64, t: u64, m: u64, qdepth: i64) -> CellStatus {
    let m = m as i64;
    let proven = in_proven_region(n, t);
    if qdepth > m {
        CellStatus::BoundViolation
    } else if qdepth == m {
        if proven {
            CellStatus::ProvenMatch
        } else {
            CellStatus::ConjecturalMatch
        }
    } else if proven {
        CellStatus::ProvenMismatch
    } else {
        CellStatus::Counterexample
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellWitness {
    pub d: u64,
    pub k: u64,
    #[serde(with = "crate::decimal")]
    pub beta: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCell {
    pub n: u64,
    pub t: u64,
    pub m_expected: u64,
    pub qdepth_computed: i64,
    pub status: CellStatus,
    pub witness: Option<CellWitness>,
    pub gap_below: bool,
}

impl ScanCell {
    pub fn compute(n: u64, t: u64) -> Result<Self> {
        let p = PowerParams::new(n, t)?;
        let r = qdepth_power_fast(n, t)?;
        Ok(ScanCell {
            n,
            t,
            m_expected: p.m,
            qdepth_computed: r.qdepth,
            status: classify(n, t, p.m, r.qdepth),
            witness: r.witness.map(|w| CellWitness {
                d: w.d as u64,
                k: w.k as u64,
                beta: w.beta,
            }),
            gap_below: r.gap_below,
        })
    }

    fn to_record(&self) -> Vec<String> {
        let (wd, wk, wb) = match &self.witness {
            Some(w) => (w.d.to_string(), w.k.to_string(), w.beta.to_string()),
            None => Default::default(),
        };
        vec![
            self.n.to_string(),
            self.t.to_string(),
            self.m_expected.to_string(),
            self.qdepth_computed.to_string(),
            self.status.as_str().to_string(),
            wd,
            wk,
            wb,
            self.gap_below.to_string(),
        ]
    }

    fn from_record(rec: &csv::StringRecord) -> Result<Self> {
        let bad = |what: &str| Error::Report(format!("bad {what} in CSV row {rec:?}"));
        let field = |i: usize| rec.get(i).ok_or_else(|| bad("row length"));
        let num =
            |i: usize, what: &str| -> Result<u64> { field(i)?.parse().map_err(|_| bad(what)) };
        let witness = if field(5)?.is_empty() {
            None
        } else {
            Some(CellWitness {
                d: num(5, "witness_d")?,
                k: num(6, "witness_k")?,
                beta: field(7)?.parse().map_err(|_| bad("witness_beta"))?,
            })
        };
        Ok(ScanCell {
            n: num(0, "n")?,
            t: num(1, "t")?,
            m_expected: num(2, "m")?,
            qdepth_computed: field(3)?.parse().map_err(|_| bad("qdepth"))?,
            status: CellStatus::parse(field(4)?).ok_or_else(|| bad("status"))?,
            witness,
            gap_below: field(8)?.parse().map_err(|_| bad("gap_below"))?,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub cells: u64,
    pub proven_match: u64,
    pub conjectural_match: u64,
    pub counterexample: u64,
    pub bound_violation: u64,
    pub proven_mismatch: u64,
    /// Cells where some `d` below the maximum was infeasible.
    pub gap_below: u64,
}

impl Summary {
    pub fn of(cells: &[ScanCell]) -> Self {
        let mut s = Summary::default();
        for c in cells {
            s.cells += 1;
            match c.status {
                CellStatus::ProvenMatch => s.proven_match += 1,
                CellStatus::ConjecturalMatch => s.conjectural_match += 1,
                CellStatus::Counterexample => s.counterexample += 1,
                CellStatus::BoundViolation => s.bound_violation += 1,
                CellStatus::ProvenMismatch => s.proven_mismatch += 1,
            }
            s.gap_below += c.gap_below as u64;
        }
        s
    }

    pub fn has_failures(&self) -> bool {
        self.bound_violation + self.proven_mismatch > 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub seconds: f64,
    pub computed_cells: u64,
    pub resumed_cells: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub n_max: u64,
    pub t_max: u64,
    pub cells: Vec<ScanCell>,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub n_max: u64,
    pub t_max: u64,
    pub jobs: usize,
    /// CSV path; the JSON report goes next to it with a `.json` extension.
    pub out: PathBuf,
    /// Embed timing in the JSON report (makes it run-dependent).
    pub timing: bool,
}

#[derive(Clone, Debug)]
pub struct ScanOutcome {
    pub report: Report,
    pub timing: Timing,
    pub csv_path: PathBuf,
    pub json_path: PathBuf,
}

pub fn json_path_for(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

/// Grid cells in report order.
pub fn grid(n_max: u64, t_max: u64) -> Vec<(u64, u64)> {
    (1..=t_max)
        .flat_map(|t| (2..=n_max).map(move |n| (n, t)))
        .collect()
}

/// Computes cells in order with the given strategy.
pub fn compute_cells(cells: &[(u64, u64)], exec: Exec) -> Result<Vec<ScanCell>> {
    exec.map(cells, |&(n, t)| ScanCell::compute(n, t))
        .into_iter()
        .collect()
}

fn load_existing(path: &Path, n_max: u64, t_max: u64) -> Result<BTreeMap<(u64, u64), ScanCell>> {
    let mut out = BTreeMap::new();
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
        Err(e) => return Err(e.into()),
    };
    if text.is_empty() {
        return Ok(out);
    }
    // drop a torn final line left by an interrupted write
    let end = text.rfind('\n').map_or(0, |i| i + 1);
    if end < text.len() {
        OpenOptions::new()
            .write(true)
            .open(path)?
            .set_len(end as u64)?;
    }
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(&text.as_bytes()[..end]);
    let header = rdr
        .headers()
        .map_err(|e| Error::Report(e.to_string()))?
        .clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Report(format!(
            "{} has an unexpected header",
            path.display()
        )));
    }
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Report(e.to_string()))?;
        let cell = ScanCell::from_record(&rec)?;
        if cell.n < 2 || cell.n > n_max || cell.t < 1 || cell.t > t_max {
            return Err(Error::Report(format!(
                "{} holds cell (n={}, t={}) outside the requested grid",
                path.display(),
                cell.n,
                cell.t
            )));
        }
        out.insert((cell.t, cell.n), cell);
    }
    Ok(out)
}

fn write_records(file: &mut fs::File, cells: &[ScanCell], header: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if header {
        w.write_record(CSV_HEADER)
            .map_err(|e| Error::Report(e.to_string()))?;
    }
    for c in cells {
        w.write_record(c.to_record())
            .map_err(|e| Error::Report(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Report(e.to_string()))?;
    file.write_all(&bytes)?;
    file.flush()?;
    Ok(())
}

pub fn write_csv(path: &Path, cells: &[ScanCell]) -> Result<()> {
    let mut f = fs::File::create(path)?;
    write_records(&mut f, cells, true)
}

pub fn read_csv(path: &Path) -> Result<Vec<ScanCell>> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| Error::Report(e.to_string()))?;
    rdr.records()
        .map(|r| ScanCell::from_record(&r.map_err(|e| Error::Report(e.to_string()))?))
        .collect()
}

pub fn report_json(report: &Report) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| Error::Report(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn run_scan(cfg: &ScanConfig) -> Result<ScanOutcome> {
    if cfg.n_max < 2 || cfg.t_max < 1 {
        return Err(Error::InvalidParameter(
            "scan needs n_max >= 2 and t_max >= 1".into(),
        ));
    }
    let start = Instant::now();
    let mut done = load_existing(&cfg.out, cfg.n_max, cfg.t_max)?;
    let resumed = done.len() as u64;
    let fresh_file = resumed == 0 && fs::metadata(&cfg.out).map_or(true, |m| m.len() == 0);
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&cfg.out)?;
    if fresh_file {
        write_records(&mut file, &[], true)?;
    }

    let todo: Vec<(u64, u64)> = grid(cfg.n_max, cfg.t_max)
        .into_iter()
        .filter(|&(n, t)| !done.contains_key(&(t, n)))
        .collect();
    let computed = todo.len() as u64;
    with_jobs(cfg.jobs, |exec| -> Result<()> {
        for chunk in todo.chunks(CHUNK) {
            let cells = compute_cells(chunk, exec)?;
            write_records(&mut file, &cells, false)?;
            for c in cells {
                done.insert((c.t, c.n), c);
            }
        }
        Ok(())
    })?;

    let cells: Vec<ScanCell> = done.into_values().collect();
    let timing = Timing {
        seconds: start.elapsed().as_secs_f64(),
        computed_cells: computed,
        resumed_cells: resumed,
    };
    let report = Report {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        n_max: cfg.n_max,
        t_max: cfg.t_max,
        summary: Summary::of(&cells),
        cells,
        timing: cfg.timing.then(|| timing.clone()),
    };
    let json_path = json_path_for(&cfg.out);
    fs::write(&json_path, report_json(&report)?)?;
    Ok(ScanOutcome {
        report,
        timing,
        csv_path: cfg.out.clone(),
        json_path,
    })
}
