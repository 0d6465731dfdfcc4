//! Benchmark harness: times each algorithm on the rank-deficient matrix
//! family across sizes and seeds, verifies every result against the four
//! Penrose conditions, and renders the outcome as CSV or a markdown table.

use std::fmt::Write as _;
use std::time::Instant;

use pinv_core::{
    penrose_residuals, random_rank_deficient, AlgorithmConfig, Matrix, MatrixFamilySpec,
    PenroseReport, PinvAlgorithm,
};

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub sizes: Vec<usize>,
    pub algorithms: Vec<PinvAlgorithm>,
    pub seeds: Vec<u64>,
    pub repetitions: usize,
    pub bound: f64,
}

impl Default for BenchSpec {
    fn default() -> Self {
        BenchSpec {
            sizes: vec![32, 64, 128, 256],
            algorithms: PinvAlgorithm::ALL.to_vec(),
            seeds: vec![20060524],
            repetitions: 5,
            bound: 2e-10,
        }
    }
}

impl BenchSpec {
    pub fn validate(&self) -> Result<(), String> {
        if self.sizes.is_empty() {
            return Err("at least one size is required".into());
        }
        if self.algorithms.is_empty() {
            return Err("at least one algorithm is required".into());
        }
        if self.seeds.is_empty() {
            return Err("at least one seed is required".into());
        }
        if self.repetitions == 0 {
            return Err("repetitions must be at least 1".into());
        }
        if !(self.bound > 0.0) {
            return Err("bound must be positive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub algorithm: PinvAlgorithm,
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    pub seed: u64,
    pub median_seconds: f64,
    /// None when the algorithm failed to produce a result.
    pub residuals: Option<PenroseReport>,
    pub pass: bool,
    /// Max-abs difference from the SVD result; present only when the SVD
    /// oracle is among the selected algorithms.
    pub oracle_diff: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Diagnostics per (n, seed) cell, printed on --verbose.
pub struct CellDiagnostics {
    pub n: usize,
    pub seed: u64,
    pub detected_rank: usize,
    pub lt_l_condition: f64,
}

fn median(mut times: Vec<f64>) -> f64 {
    times.sort_by(|a, b| a.total_cmp(b));
    let k = times.len();
    if k % 2 == 1 {
        times[k / 2]
    } else {
        0.5 * (times[k / 2 - 1] + times[k / 2])
    }
}

fn run_cell(
    algorithm: PinvAlgorithm,
    g: &Matrix,
    cfg: &AlgorithmConfig,
    repetitions: usize,
) -> (f64, Result<Matrix, pinv_core::Error>) {
    // The first run is a discarded warm-up when there are enough
    // repetitions to spare one; the median of the rest is reported.
    let warm_up = repetitions >= 3;
    let mut times = Vec::with_capacity(repetitions);
    let mut result = None;
    for rep in 0..repetitions + warm_up as usize {
        let t0 = Instant::now();
        let r = algorithm.compute(g, cfg);
        let dt = t0.elapsed().as_secs_f64();
        if !(warm_up && rep == 0) {
            times.push(dt);
        }
        let failed = r.is_err();
        result = Some(r);
        if failed {
            break;
        }
    }
    (median(times), result.unwrap())
}

pub fn run_bench(
    spec: &BenchSpec,
    cfg: &AlgorithmConfig,
    mut on_cell: impl FnMut(&CellDiagnostics),
) -> Result<BenchReport, String> {
    spec.validate()?;
    let with_oracle = spec.algorithms.contains(&PinvAlgorithm::Svd);
    let mut rows = Vec::new();
    for &n in &spec.sizes {
        for &seed in &spec.seeds {
            let family = MatrixFamilySpec::benchmark_default(n, seed);
            let (g, _, _) = random_rank_deficient(&family).map_err(|e| e.to_string())?;
            let oracle = if with_oracle {
                match PinvAlgorithm::Svd.compute(&g, cfg) {
                    Ok(x) => Some(x),
                    Err(e) => return Err(format!("svd oracle failed at n={n} seed={seed}: {e}")),
                }
            } else {
                None
            };
            if let Ok((_, d)) = pinv_core::pinv_geninv_detailed(&g, &cfg.tolerance) {
                on_cell(&CellDiagnostics {
                    n,
                    seed,
                    detected_rank: d.rank,
                    lt_l_condition: d.lt_l_condition,
                });
            }
            for &algorithm in &spec.algorithms {
                let (median_seconds, result) = run_cell(algorithm, &g, cfg, spec.repetitions);
                let row = match result {
                    Ok(x) => {
                        let residuals = penrose_residuals(&g, &x).map_err(|e| e.to_string())?;
                        let pass = pinv_core::is_valid_pinv(&residuals, spec.bound);
                        let oracle_diff = oracle.as_ref().map(|o| {
                            x.subtract(o).map(|d| d.max_abs()).unwrap_or(f64::INFINITY)
                        });
                        BenchRow {
                            algorithm,
                            n,
                            m: family.m,
                            rank: family.rank,
                            seed,
                            median_seconds,
                            residuals: Some(residuals),
                            pass,
                            oracle_diff,
                        }
                    }
                    Err(_) => BenchRow {
                        algorithm,
                        n,
                        m: family.m,
                        rank: family.rank,
                        seed,
                        median_seconds,
                        residuals: None,
                        pass: false,
                        oracle_diff: None,
                    },
                };
                rows.push(row);
            }
        }
    }
    Ok(BenchReport { rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(format!("unknown format {other:?} (expected csv or markdown)")),
        }
    }
}

pub const CSV_HEADER: &str = "algorithm,n,m,rank,seed,median_seconds,r1,r2,r3,r4,pass,oracle_diff";

pub fn emit_report(report: &BenchReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => emit_csv(report),
        ReportFormat::Markdown => emit_markdown(report),
    }
}

fn emit_csv(report: &BenchReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &report.rows {
        let res = |f: fn(&PenroseReport) -> f64| match &r.residuals {
            Some(p) => format!("{:e}", f(p)),
            None => "NaN".into(),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.5e},{},{},{},{},{},{}",
            r.algorithm,
            r.n,
            r.m,
            r.rank,
            r.seed,
            r.median_seconds,
            res(|p| p.r1),
            res(|p| p.r2),
            res(|p| p.r3),
            res(|p| p.r4),
            r.pass,
            r.oracle_diff.map(|d| format!("{d:e}")).unwrap_or_default(),
        );
    }
    out
}

/// Parses text produced by emit_csv back into a report. Times survive to
/// 6 significant digits; everything else is exact.
pub fn parse_csv(text: &str) -> Result<BenchReport, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        _ => return Err("missing or unexpected CSV header".into()),
    }
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 12 {
            return Err(format!("line {}: expected 12 fields, got {}", k + 2, f.len()));
        }
        let err = |e: String| format!("line {}: {e}", k + 2);
        let num = |s: &str| s.parse::<f64>().map_err(|e| err(e.to_string()));
        let residuals = if f[6] == "NaN" {
            None
        } else {
            Some(PenroseReport {
                r1: num(f[6])?,
                r2: num(f[7])?,
                r3: num(f[8])?,
                r4: num(f[9])?,
            })
        };
        rows.push(BenchRow {
            algorithm: f[0].parse().map_err(|e: pinv_core::Error| err(e.to_string()))?,
            n: f[1].parse().map_err(|e: std::num::ParseIntError| err(e.to_string()))?,
            m: f[2].parse().map_err(|e: std::num::ParseIntError| err(e.to_string()))?,
            rank: f[3].parse().map_err(|e: std::num::ParseIntError| err(e.to_string()))?,
            seed: f[4].parse().map_err(|e: std::num::ParseIntError| err(e.to_string()))?,
            median_seconds: num(f[5])?,
            residuals,
            pass: f[10].parse().map_err(|e: std::str::ParseBoolError| err(e.to_string()))?,
            oracle_diff: if f[11].is_empty() { None } else { Some(num(f[11])?) },
        });
    }
    Ok(BenchReport { rows })
}

fn emit_markdown(report: &BenchReport) -> String {
    let mut algorithms: Vec<PinvAlgorithm> = Vec::new();
    let mut sizes: Vec<usize> = Vec::new();
    for r in &report.rows {
        if !algorithms.contains(&r.algorithm) {
            algorithms.push(r.algorithm);
        }
        if !sizes.contains(&r.n) {
            sizes.push(r.n);
        }
    }
    sizes.sort_unstable();

    let mut out = String::from("| n |");
    for a in &algorithms {
        let _ = write!(out, " {a} |");
    }
    out.push('\n');
    out.push_str("|---|");
    for _ in &algorithms {
        out.push_str("---|");
    }
    out.push('\n');
    for &n in &sizes {
        let _ = write!(out, "| {n} |");
        for &a in &algorithms {
            let times: Vec<f64> = report
                .rows
                .iter()
                .filter(|r| r.n == n && r.algorithm == a && r.residuals.is_some())
                .map(|r| r.median_seconds)
                .collect();
            if times.is_empty() {
                out.push_str(" failed |");
            } else {
                let _ = write!(out, " {:.3e} |", median(times));
            }
        }
        out.push('\n');
    }

    let worst = report
        .rows
        .iter()
        .filter_map(|r| r.residuals.as_ref().map(|p| p.max()))
        .fold(0.0f64, f64::max);
    let failures = report.rows.iter().filter(|r| !r.pass).count();
    let _ = write!(
        out,
        "\nMedian wall time in seconds. Largest Penrose residual across all \
         cells: {worst:.2e}; {failures} of {} rows exceed the bound.\n",
        report.rows.len()
    );
    out
}
