//! Timed sweeps over generated datasets.
//!
//! For each parameter point the dataset is generated and parsed once, then
//! every algorithm is timed `trials` times on that same database. Only the
//! mining call is inside the timed region. Trials run sequentially.

use std::fmt::Write as _;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use crate::alloc;
use crate::database::TransactionDatabase;
use crate::datagen::{Generator, GeneratorConfig};
use crate::error::{Error, Result};
use crate::miner::{self, Algorithm, MineOptions};
use crate::scalar::Fraction;
use crate::support::Threshold;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    /// Vary the probability that a basket embeds a planted set.
    Density,
    /// Vary the maximum basket size.
    BasketSize,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Density => "density",
            ExperimentKind::BasketSize => "basket-size",
        }
    }

    /// Column value in the CSV reports.
    pub fn param_name(self) -> &'static str {
        match self {
            ExperimentKind::Density => "density",
            ExperimentKind::BasketSize => "max_basket_size",
        }
    }

    /// 0.1..=0.8 by 0.1 for density, 5..=100 by 5 for basket size.
    pub fn default_points(self) -> Vec<f64> {
        match self {
            ExperimentKind::Density => (1..=8).map(|i| i as f64 / 10.0).collect(),
            ExperimentKind::BasketSize => (1..=20).map(|i| (i * 5) as f64).collect(),
        }
    }

    /// Applies a point to `base`, with a seed derived from the point index.
    pub fn config_at(self, base: &GeneratorConfig, index: usize, value: f64) -> GeneratorConfig {
        let mut cfg = base.clone();
        match self {
            ExperimentKind::Density => cfg.density = value,
            ExperimentKind::BasketSize => cfg.max_basket_size = value as u32,
        }
        cfg.seed = base
            .seed
            .wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        cfg
    }
}

impl std::str::FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "density" => Ok(ExperimentKind::Density),
            "basket-size" => Ok(ExperimentKind::BasketSize),
            other => Err(Error::Usage(format!(
                "unknown experiment {other:?}; expected density or basket-size"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec<F> {
    pub kind: ExperimentKind,
    pub base_config: GeneratorConfig,
    /// Ascending parameter values.
    pub points: Vec<f64>,
    pub algorithms: Vec<Algorithm>,
    pub trials: usize,
    pub min_support: Threshold<F>,
    pub options: MineOptions,
}

impl<F: Fraction> ExperimentSpec<F> {
    /// Default points, all three timed algorithms, 3 trials.
    pub fn new(
        kind: ExperimentKind,
        base_config: GeneratorConfig,
        min_support: Threshold<F>,
    ) -> Self {
        Self {
            kind,
            base_config,
            points: kind.default_points(),
            algorithms: Algorithm::TIMED.to_vec(),
            trials: 3,
            min_support,
            options: MineOptions::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::Config(
                "an experiment needs at least one point".into(),
            ));
        }
        if !self.points.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Config(
                "experiment points must be strictly ascending".into(),
            ));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms selected".into()));
        }
        if let Some(a) = self.algorithms.iter().find(|a| **a == Algorithm::Naive) {
            return Err(Error::Usage(format!("{a} cannot be benchmarked")));
        }
        self.min_support.validate()?;
        for (index, &value) in self.points.iter().enumerate() {
            self.kind
                .config_at(&self.base_config, index, value)
                .validate()
                .map_err(|e| self.point_error(index, value, e))?;
        }
        Ok(())
    }

    fn point_error(&self, index: usize, value: f64, source: Error) -> Error {
        Error::Point {
            index,
            param: self.kind.param_name(),
            value,
            source: Box::new(source),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub algorithm: Algorithm,
    pub param_value: f64,
    pub trial: usize,
    pub wall_seconds: f64,
    /// `None` when the trial failed.
    pub itemsets_found: Option<u64>,
    /// `None` when no tracking allocator is installed.
    pub peak_memory_bytes: Option<u64>,
    /// Diagnostic for a failed trial.
    pub error: Option<String>,
}

impl TrialResult {
    pub fn succeeded(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MedianRow {
    pub algorithm: Algorithm,
    pub param_value: f64,
    /// Lower median over successful trials.
    pub median_wall_seconds: Option<f64>,
    pub successful_trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport<F> {
    pub spec: ExperimentSpec<F>,
    pub trials: Vec<TrialResult>,
    pub medians: Vec<MedianRow>,
}

impl<F> BenchReport<F> {
    /// Points where successful trials disagree on the itemset count.
    pub fn disagreements(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for &p in &self.spec.points {
            let mut found = self
                .trials
                .iter()
                .filter(|t| t.param_value == p)
                .filter_map(|t| t.itemsets_found);
            if let Some(first) = found.next() {
                if found.any(|n| n != first) {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Lower median; `None` for an empty slice.
pub fn lower_median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Some(sorted[(sorted.len() - 1) / 2])
}

/// Times `run` `trials` times. Errors and panics become failed trials.
pub fn time_with<R>(algorithm: Algorithm, trials: usize, mut run: R) -> Vec<TrialResult>
where
    R: FnMut() -> Result<u64>,
{
    (0..trials)
        .map(|trial| {
            alloc::reset_peak();
            let start = Instant::now();
            let outcome = panic::catch_unwind(AssertUnwindSafe(&mut run));
            let wall_seconds = start.elapsed().as_secs_f64();
            let peak_memory_bytes = alloc::peak_bytes();
            let (itemsets_found, error) = match outcome {
                Ok(Ok(found)) => (Some(found), None),
                Ok(Err(e)) => (None, Some(e.to_string())),
                Err(payload) => (None, Some(panic_message(payload.as_ref()))),
            };
            TrialResult {
                algorithm,
                param_value: 0.0,
                trial,
                wall_seconds,
                itemsets_found,
                peak_memory_bytes,
                error,
            }
        })
        .collect()
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    let msg = payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".to_owned());
    format!("miner panicked: {msg}")
}

/// Times one miner on a loaded database.
pub fn time_miner<F: Fraction>(
    algorithm: Algorithm,
    db: &TransactionDatabase,
    sigma: &Threshold<F>,
    trials: usize,
    opts: &MineOptions,
) -> Result<Vec<TrialResult>> {
    if algorithm == Algorithm::Naive {
        return Err(Error::Usage("the naive miner is not benchmarked".into()));
    }
    if trials == 0 {
        return Err(Error::Usage("trials must be at least 1".into()));
    }
    Ok(time_with(algorithm, trials, || {
        miner::mine(algorithm, db, sigma, opts).map(|r| r.len() as u64)
    }))
}

/// Builds a database straight from the generator's line stream.
pub fn load_generated(config: &GeneratorConfig) -> Result<TransactionDatabase> {
    TransactionDatabase::from_lines(Generator::new(config.clone())?.map(|l| l.text))
}

pub fn run_experiment<F: Fraction>(spec: &ExperimentSpec<F>) -> Result<BenchReport<F>> {
    run_experiment_with_progress(spec, |_| {})
}

/// Like [`run_experiment`], calling `progress` after every trial.
pub fn run_experiment_with_progress<F, P>(
    spec: &ExperimentSpec<F>,
    mut progress: P,
) -> Result<BenchReport<F>>
where
    F: Fraction,
    P: FnMut(&TrialResult),
{
    spec.validate()?;
    let mut trials = Vec::new();
    let mut medians = Vec::new();
    for (index, &value) in spec.points.iter().enumerate() {
        let config = spec.kind.config_at(&spec.base_config, index, value);
        let db = load_generated(&config).map_err(|e| spec.point_error(index, value, e))?;
        for &algorithm in &spec.algorithms {
            let mut results = time_miner(
                algorithm,
                &db,
                &spec.min_support,
                spec.trials,
                &spec.options,
            )?;
            for r in &mut results {
                r.param_value = value;
                progress(r);
            }
            let ok: Vec<f64> = results
                .iter()
                .filter(|r| r.succeeded())
                .map(|r| r.wall_seconds)
                .collect();
            medians.push(MedianRow {
                algorithm,
                param_value: value,
                median_wall_seconds: lower_median(&ok),
                successful_trials: ok.len(),
            });
            trials.extend(results);
        }
    }
    Ok(BenchReport {
        spec: spec.clone(),
        trials,
        medians,
    })
}

pub const TRIALS_CSV: &str = "trials.csv";
pub const MEDIANS_CSV: &str = "medians.csv";
pub const CHART_SVG: &str = "runtime.svg";
pub const FAILURES_TXT: &str = "failures.txt";

pub fn trials_csv<F>(report: &BenchReport<F>) -> String {
    let mut out =
        String::from("algorithm,param_name,param_value,trial,wall_seconds,itemsets_found\n");
    let param = report.spec.kind.param_name();
    for t in &report.trials {
        let found = t.itemsets_found.map(|n| n.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{:.9},{}",
            t.algorithm, param, t.param_value, t.trial, t.wall_seconds, found
        );
    }
    out
}

pub fn medians_csv<F>(report: &BenchReport<F>) -> String {
    let mut out =
        String::from("algorithm,param_name,param_value,median_wall_seconds,successful_trials\n");
    let param = report.spec.kind.param_name();
    for m in &report.medians {
        let median = m
            .median_wall_seconds
            .map(|s| format!("{s:.9}"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            m.algorithm, param, m.param_value, median, m.successful_trials
        );
    }
    out
}

const SERIES_COLORS: [&str; 4] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd"];

/// Line chart of median runtime per algorithm, SVG 1.1 with no external
/// references.
pub fn render_svg<F>(report: &BenchReport<F>) -> String {
    let (width, height) = (720.0, 440.0);
    let (left, right, top, bottom) = (70.0, 150.0, 40.0, 60.0);
    let plot_w = width - left - right;
    let plot_h = height - top - bottom;

    let points = &report.spec.points;
    let x_min = points.first().copied().unwrap_or(0.0);
    let x_max = points.last().copied().unwrap_or(1.0);
    let x_span = if x_max > x_min { x_max - x_min } else { 1.0 };
    let y_max = report
        .medians
        .iter()
        .filter_map(|m| m.median_wall_seconds)
        .fold(0.0f64, f64::max);
    let y_max = if y_max > 0.0 { y_max * 1.1 } else { 1.0 };
    let sx = |x: f64| left + (x - x_min) / x_span * plot_w;
    let sy = |y: f64| top + plot_h - y / y_max * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">
<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>
<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">Median runtime vs {}</text>"#,
        left + plot_w / 2.0,
        report.spec.kind.param_name()
    );
    // axes
    let _ = writeln!(
        svg,
        r#"<line x1="{left}" y1="{}" x2="{}" y2="{}" stroke="black"/>
<line x1="{left}" y1="{top}" x2="{left}" y2="{}" stroke="black"/>"#,
        top + plot_h,
        left + plot_w,
        top + plot_h,
        top + plot_h
    );
    for &p in points {
        let x = sx(p);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="black"/>
<text x="{x:.2}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{p}</text>"#,
            top + plot_h,
            top + plot_h + 5.0,
            top + plot_h + 18.0
        );
    }
    for i in 0..=4 {
        let v = y_max * i as f64 / 4.0;
        let y = sy(v);
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{y:.2}" x2="{left}" y2="{y:.2}" stroke="black"/>
<text x="{}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{v:.3}</text>"#,
            left - 5.0,
            left - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>
<text x="16" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 16 {})">median seconds</text>"#,
        left + plot_w / 2.0,
        height - 16.0,
        report.spec.kind.param_name(),
        top + plot_h / 2.0,
        top + plot_h / 2.0
    );

    for (i, &algorithm) in report.spec.algorithms.iter().enumerate() {
        let color = SERIES_COLORS[i % SERIES_COLORS.len()];
        let coords: Vec<String> = report
            .medians
            .iter()
            .filter(|m| m.algorithm == algorithm)
            .filter_map(|m| {
                m.median_wall_seconds
                    .map(|s| format!("{:.2},{:.2}", sx(m.param_value), sy(s)))
            })
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"><title>{algorithm}</title></polyline>"#,
            coords.join(" ")
        );
        let ly = top + 20.0 * i as f64 + 10.0;
        let lx = left + plot_w + 15.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>
<text x="{}" y="{}" font-family="sans-serif" font-size="12">{algorithm}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Writes the trials CSV, medians CSV and SVG chart into `out_dir`, plus a
/// failures file when any trial failed.
pub fn emit_report<F>(report: &BenchReport<F>, out_dir: &Path) -> Result<()> {
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join(TRIALS_CSV), trials_csv(report))?;
    fs::write(out_dir.join(MEDIANS_CSV), medians_csv(report))?;
    fs::write(out_dir.join(CHART_SVG), render_svg(report))?;
    let failures: Vec<String> = report
        .trials
        .iter()
        .filter_map(|t| {
            t.error.as_ref().map(|e| {
                format!(
                    "{} {}={} trial {}: {e}",
                    t.algorithm,
                    report.spec.kind.param_name(),
                    t.param_value,
                    t.trial
                )
            })
        })
        .collect();
    if !failures.is_empty() {
        fs::write(out_dir.join(FAILURES_TXT), failures.join("\n") + "\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::DB5;

    fn tiny_spec() -> ExperimentSpec<f64> {
        let base = GeneratorConfig {
            basket_count: 300,
            item_count: 200,
            frequent_set_count: 3,
            max_basket_size: 8,
            density: 0.5,
            seed: 5,
            f_pool_size: None,
        };
        let mut spec = ExperimentSpec::new(
            ExperimentKind::Density,
            base,
            Threshold::relative(0.05).unwrap(),
        );
        spec.points = vec![0.2, 0.5];
        spec.trials = 2;
        spec
    }

    #[test]
    fn eclat_on_db5() {
        let db = TransactionDatabase::parse_str(DB5).unwrap();
        let results = time_miner(
            Algorithm::Eclat,
            &db,
            &Threshold::<f64>::Absolute(2),
            3,
            &MineOptions::default(),
        )
        .unwrap();
        assert_eq!(results.len(), 3);
        assert!(results
            .iter()
            .all(|r| r.itemsets_found == Some(15) && r.wall_seconds >= 0.0));
    }

    #[test]
    fn empty_database_timing() {
        let db = TransactionDatabase::default();
        let results = time_miner(
            Algorithm::Apriori,
            &db,
            &Threshold::<f64>::Absolute(1),
            1,
            &MineOptions::default(),
        )
        .unwrap();
        assert_eq!(results[0].itemsets_found, Some(0));
        assert!(results[0].wall_seconds >= 0.0);
    }

    #[test]
    fn naive_and_zero_trials_are_usage_errors() {
        let db = TransactionDatabase::default();
        let sigma = Threshold::<f64>::Absolute(1);
        assert!(matches!(
            time_miner(Algorithm::Naive, &db, &sigma, 1, &MineOptions::default()),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            time_miner(Algorithm::Eclat, &db, &sigma, 0, &MineOptions::default()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn failures_and_panics_are_recorded() {
        let failed = time_with(Algorithm::Apriori, 1, || {
            Err(Error::MemoryExhausted("test".into()))
        });
        assert!(!failed[0].succeeded());
        assert!(failed[0].error.as_ref().unwrap().contains("memory"));
        let panicked = time_with(Algorithm::Eclat, 1, || panic!("boom"));
        assert!(panicked[0].error.as_ref().unwrap().contains("boom"));
    }

    #[test]
    fn harness_overhead_is_small() {
        let results = time_with(Algorithm::Eclat, 20, || Ok(0));
        let median =
            lower_median(&results.iter().map(|r| r.wall_seconds).collect::<Vec<_>>()).unwrap();
        assert!(median < 1e-3, "no-op trial took {median}s");
    }

    #[test]
    fn lower_median_is_an_order_statistic() {
        assert_eq!(lower_median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(lower_median(&[4.0, 1.0, 3.0, 2.0]), Some(2.0));
        assert_eq!(lower_median(&[]), None);
    }

    #[test]
    fn default_points() {
        assert_eq!(ExperimentKind::Density.default_points().len(), 8);
        let basket = ExperimentKind::BasketSize.default_points();
        assert_eq!(basket.len(), 20);
        assert_eq!((basket[0], basket[19]), (5.0, 100.0));
        assert_eq!(
            format!("{}", ExperimentKind::Density.default_points()[2]),
            "0.3"
        );
    }

    #[test]
    fn spec_validation() {
        let mut spec = tiny_spec();
        spec.points = vec![0.5, 0.2];
        assert!(spec.validate().is_err());
        let mut spec = tiny_spec();
        spec.trials = 0;
        assert!(spec.validate().is_err());
        let mut spec = tiny_spec();
        spec.algorithms.push(Algorithm::Naive);
        assert!(spec.validate().is_err());
        let mut spec = tiny_spec();
        spec.points = vec![0.5, 1.5];
        assert!(spec.validate().is_err());
        assert!("sideways".parse::<ExperimentKind>().is_err());
    }

    #[test]
    fn small_sweep_report() {
        let spec = tiny_spec();
        let report = run_experiment(&spec).unwrap();
        assert_eq!(report.trials.len(), 3 * 2 * 2);
        assert_eq!(report.medians.len(), 3 * 2);
        assert!(report.disagreements().is_empty());
        assert!(report.trials.iter().all(TrialResult::succeeded));

        let dir = tempfile::tempdir().unwrap();
        emit_report(&report, dir.path()).unwrap();
        let csv = fs::read_to_string(dir.path().join(TRIALS_CSV)).unwrap();
        assert_eq!(csv.lines().count(), 13);
        assert!(
            csv.starts_with("algorithm,param_name,param_value,trial,wall_seconds,itemsets_found\n")
        );
        let svg = fs::read_to_string(dir.path().join(CHART_SVG)).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert!(!dir.path().join(FAILURES_TXT).exists());

        emit_report(&report, dir.path()).unwrap();
        assert_eq!(
            fs::read_to_string(dir.path().join(TRIALS_CSV)).unwrap(),
            csv
        );
    }

    #[test]
    fn point_failure_names_the_point() {
        let mut spec = tiny_spec();
        spec.kind = ExperimentKind::BasketSize;
        spec.points = vec![1.0, 8.0];
        let err = run_experiment(&spec).unwrap_err();
        match err {
            Error::Point {
                index,
                value,
                ref source,
                ..
            } => {
                assert_eq!((index, value), (0, 1.0));
                assert!(matches!(**source, Error::Config(_)));
            }
            other => panic!("unexpected {other}"),
        }
    }
}
