//! Repeated seeded runs over datasets and objective sets, aggregated into
//! per-cell means and standard deviations, plus the trend verdicts the
//! aggregate is judged by.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::belief_space::RuleId;
use crate::config::{RunConfig, TestProtocol};
use crate::dataset::Dataset;
use crate::error::{Error, FieldError, Result};
use crate::evolution::Engine;
use crate::presets;
use crate::render::render_rule;
use crate::rule_model::{count_matches, metric_value, Chromosome, Metric, Objective};

const TABLE5: &str = include_str!("../plans/table5.json");

/// Names accepted by [`ExperimentPlan::bundled`].
pub const BUNDLED_PLANS: [&str; 1] = ["table5"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentPlan {
    /// Preset names, or CSV paths whose schema comes from the overrides.
    pub datasets: Vec<String>,
    pub objective_sets: Vec<Vec<Objective>>,
    pub repetitions: usize,
    /// Repetition `r` runs with seed `base_seed + r`.
    pub base_seed: u64,
    /// `KEY=VALUE` overrides applied to every run.
    pub overrides: Vec<String>,
    /// Further overrides per dataset, applied after `overrides`.
    pub dataset_overrides: BTreeMap<String, Vec<String>>,
    /// Adds a six-objective set (rule difference both maximized and
    /// minimized) to watch the front collapse. Reported, never judged.
    pub six_objective_probe: bool,
    /// Runs repetitions concurrently. Results do not depend on it.
    pub parallel: bool,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            datasets: Vec::new(),
            objective_sets: Vec::new(),
            repetitions: 10,
            base_seed: 42,
            overrides: Vec::new(),
            dataset_overrides: BTreeMap::new(),
            six_objective_probe: false,
            parallel: true,
        }
    }
}

/// One scheduled run.
#[derive(Clone, Debug, PartialEq)]
pub struct PlannedRun {
    pub dataset: String,
    pub set_index: usize,
    pub repetition: usize,
    pub config: RunConfig,
}

impl ExperimentPlan {
    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn bundled(name: &str) -> Option<Self> {
        match name {
            "table5" => Some(Self::from_json(TABLE5).expect("bundled plan parses")),
            _ => None,
        }
    }

    /// A bundled plan name or a path to a plan file.
    pub fn load(name_or_path: &str) -> Result<Self> {
        if let Some(plan) = Self::bundled(name_or_path) {
            return Ok(plan);
        }
        let text = std::fs::read_to_string(name_or_path)?;
        Self::from_json(&text)
    }

    /// Objective sets actually run, the probe included.
    pub fn effective_sets(&self) -> Vec<Vec<Objective>> {
        let mut sets = self.objective_sets.clone();
        if self.six_objective_probe {
            let mut six: Vec<Objective> = Metric::ALL.iter().map(|&m| Objective::maximize(m)).collect();
            six.push(Objective::minimize(Metric::RuleDifference));
            sets.push(six);
        }
        sets
    }

    pub fn validate(&self) -> Vec<FieldError> {
        let mut errors = Vec::new();
        if self.datasets.is_empty() {
            errors.push(FieldError::new("datasets", "name at least one dataset"));
        }
        for name in &self.datasets {
            if !presets::NAMES.contains(&name.as_str()) && !Path::new(name).is_file() {
                errors.push(FieldError::new(
                    "datasets",
                    format!("`{name}` is neither a preset nor a readable file"),
                ));
            }
        }
        for name in self.dataset_overrides.keys() {
            if !self.datasets.contains(name) {
                errors.push(FieldError::new(
                    "dataset_overrides",
                    format!("`{name}` is not in the dataset list"),
                ));
            }
        }
        if self.objective_sets.is_empty() {
            errors.push(FieldError::new("objective_sets", "give at least one objective set"));
        }
        if self.objective_sets.iter().any(Vec::is_empty) {
            errors.push(FieldError::new("objective_sets", "objective sets must be non-empty"));
        }
        if self.repetitions < 1 {
            errors.push(FieldError::new("repetitions", "must be at least 1"));
        }
        errors
    }

    /// Every run of the plan in execution order: dataset, then objective set,
    /// then repetition.
    pub fn runs(&self) -> Result<Vec<PlannedRun>> {
        let errors = self.validate();
        if !errors.is_empty() {
            return Err(Error::InvalidConfig(errors));
        }
        let mut runs = Vec::new();
        for dataset in &self.datasets {
            let mut base = if presets::NAMES.contains(&dataset.as_str()) {
                RunConfig::preset(dataset)?
            } else {
                RunConfig {
                    dataset: dataset.clone(),
                    ..RunConfig::default()
                }
            };
            base.apply_overrides(&self.overrides)?;
            if let Some(extra) = self.dataset_overrides.get(dataset) {
                base.apply_overrides(extra)?;
            }
            for (set_index, set) in self.effective_sets().into_iter().enumerate() {
                for repetition in 0..self.repetitions {
                    let mut config = base.clone();
                    config.metrics = set.clone();
                    config.rng_seed = self.base_seed + repetition as u64;
                    let errors = config.validate();
                    if !errors.is_empty() {
                        return Err(Error::InvalidConfig(errors));
                    }
                    runs.push(PlannedRun {
                        dataset: dataset.clone(),
                        set_index,
                        repetition,
                        config,
                    });
                }
            }
        }
        Ok(runs)
    }
}

/// A final dominator with all five metrics measured on the training rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrontPoint {
    pub rule_id: RuleId,
    pub rule: Chromosome,
    pub text: String,
    /// Keyed by metric name.
    pub metrics: BTreeMap<String, f64>,
}

/// One repetition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub dataset: String,
    pub objectives: Vec<String>,
    pub repetition: usize,
    pub seed: u64,
    pub rules_rks: usize,
    pub rules_hks: usize,
    pub cpu_time_ms: f64,
    pub accuracy: f64,
    pub full_data_accuracy: f64,
    pub front: Vec<FrontPoint>,
}

/// Mean and sample standard deviation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub sd: f64,
}

impl Stat {
    /// Sample standard deviation (n - 1), zero for a single value.
    pub fn of(values: &[f64]) -> Stat {
        if values.is_empty() {
            return Stat::default();
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let sd = if values.len() < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        };
        Stat { mean, sd }
    }
}

/// Aggregate over the repetitions of one (dataset, objective set) cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub dataset: String,
    pub instances: usize,
    pub attributes: usize,
    pub objectives: Vec<String>,
    pub objective_count: usize,
    pub rules_rks: Stat,
    pub rules_hks: Stat,
    pub cpu_time_ms: Stat,
    pub accuracy: Stat,
    pub full_data_accuracy: Stat,
    pub rows: Vec<RunRow>,
}

impl CellReport {
    fn from_rows(dataset: &Dataset, rows: Vec<RunRow>) -> Self {
        let stat = |f: &dyn Fn(&RunRow) -> f64| Stat::of(&rows.iter().map(f).collect::<Vec<_>>());
        CellReport {
            dataset: dataset.name.clone(),
            instances: dataset.len(),
            attributes: dataset.attribute_count(),
            objectives: rows[0].objectives.clone(),
            objective_count: rows[0].objectives.len(),
            rules_rks: stat(&|r| r.rules_rks as f64),
            rules_hks: stat(&|r| r.rules_hks as f64),
            cpu_time_ms: stat(&|r| r.cpu_time_ms),
            accuracy: stat(&|r| r.accuracy),
            full_data_accuracy: stat(&|r| r.full_data_accuracy),
            rows,
        }
    }

    pub fn summary(&self) -> CellSummary {
        CellSummary {
            dataset: self.dataset.clone(),
            objective_count: self.objective_count,
            rules_rks: self.rules_rks.mean,
            rules_hks: self.rules_hks.mean,
            accuracy: self.accuracy.mean,
        }
    }
}

/// The means trend verdicts are computed from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub dataset: String,
    pub objective_count: usize,
    pub rules_rks: f64,
    pub rules_hks: f64,
    pub accuracy: f64,
}

/// Per-dataset trend verdicts over objective counts up to five.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendVerdict {
    pub dataset: String,
    /// Mean dominator count strictly falls with every added objective.
    pub hks_decreasing: bool,
    /// Mean accuracy at four objectives is the largest. `None` without a
    /// four-objective cell.
    pub accuracy_peaks_at_four: Option<bool>,
    /// Iris: more unique rules with more objectives; ljb and wbc: fewer.
    /// Compares the fewest and the most objectives. `None` for other
    /// datasets.
    pub rks_trend: Option<bool>,
    /// Mean dominators at two objectives exceed those at five.
    pub hks_two_above_five: Option<bool>,
    /// Mean accuracy at four objectives is at least that at five.
    pub accuracy_four_not_below_five: Option<bool>,
}

impl TrendVerdict {
    /// The three verdicts together.
    pub fn all(&self) -> bool {
        self.hks_decreasing && self.accuracy_peaks_at_four == Some(true) && self.rks_trend == Some(true)
    }
}

/// Trend verdicts per dataset, in order of first appearance. Cells with more
/// than five objectives are ignored.
pub fn trend_check(cells: &[CellSummary]) -> Result<Vec<TrendVerdict>> {
    let mut order: Vec<&str> = Vec::new();
    for c in cells {
        if !order.contains(&c.dataset.as_str()) {
            order.push(&c.dataset);
        }
    }
    if order.is_empty() {
        return Err(Error::InsufficientCoverage("no cells".into()));
    }
    let mut verdicts = Vec::new();
    for name in order {
        let mut by_count: BTreeMap<usize, &CellSummary> = BTreeMap::new();
        for c in cells.iter().filter(|c| c.dataset == name && c.objective_count <= 5) {
            by_count.insert(c.objective_count, c);
        }
        if by_count.len() < 2 {
            return Err(Error::InsufficientCoverage(format!(
                "{name} needs at least two objective-set sizes"
            )));
        }
        let seq: Vec<&CellSummary> = by_count.values().copied().collect();
        let hks_decreasing = seq.windows(2).all(|w| w[0].rules_hks > w[1].rules_hks);
        let accuracy_peaks_at_four = by_count
            .get(&4)
            .map(|four| seq.iter().all(|c| four.accuracy >= c.accuracy));
        let (first, last) = (seq[0], seq[seq.len() - 1]);
        let rks_trend = match name {
            "iris" => Some(last.rules_rks > first.rules_rks),
            "ljb" | "wbc" => Some(last.rules_rks < first.rules_rks),
            _ => None,
        };
        let hks_two_above_five = match (by_count.get(&2), by_count.get(&5)) {
            (Some(two), Some(five)) => Some(two.rules_hks > five.rules_hks),
            _ => None,
        };
        let accuracy_four_not_below_five = match (by_count.get(&4), by_count.get(&5)) {
            (Some(four), Some(five)) => Some(four.accuracy >= five.accuracy),
            _ => None,
        };
        verdicts.push(TrendVerdict {
            dataset: name.to_string(),
            hks_decreasing,
            accuracy_peaks_at_four,
            rks_trend,
            hks_two_above_five,
            accuracy_four_not_below_five,
        });
    }
    Ok(verdicts)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub plan: ExperimentPlan,
    pub test_protocol: TestProtocol,
    pub generations: Vec<usize>,
    pub cells: Vec<CellReport>,
    /// Absent when the plan covers fewer than two objective-set sizes.
    pub trends: Option<Vec<TrendVerdict>>,
}

impl ExperimentReport {
    pub fn summaries(&self) -> Vec<CellSummary> {
        self.cells.iter().map(CellReport::summary).collect()
    }

    /// The report with every timing zeroed, for reproducibility checks.
    pub fn without_timings(&self) -> ExperimentReport {
        let mut out = self.clone();
        for cell in &mut out.cells {
            cell.cpu_time_ms = Stat::default();
            for row in &mut cell.rows {
                row.cpu_time_ms = 0.0;
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Runs that finished before a failure, and the failure.
#[derive(Debug)]
pub struct PlanFailure {
    pub partial: Vec<RunRow>,
    pub error: Error,
}

impl std::fmt::Display for PlanFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ({} runs completed)", self.error, self.partial.len())
    }
}

impl std::error::Error for PlanFailure {}

impl From<Error> for PlanFailure {
    fn from(error: Error) -> Self {
        PlanFailure {
            partial: Vec::new(),
            error,
        }
    }
}

fn run_one(planned: &PlannedRun, dataset: &Dataset) -> Result<RunRow> {
    let mut engine = Engine::new(planned.config.clone(), dataset.clone())?;
    while !engine.is_done() {
        engine.step()?;
    }
    let result = engine.result()?;
    let schema = planned.config.schema_for(dataset);
    let front = result
        .front
        .iter()
        .map(|record| {
            let counts = count_matches(&record.rule, engine.train_rows());
            FrontPoint {
                rule_id: record.id,
                rule: record.rule.clone(),
                text: render_rule(&record.rule, dataset),
                metrics: Metric::ALL
                    .iter()
                    .map(|&m| (m.name().to_string(), metric_value(m, &counts, &record.rule, &schema)))
                    .collect(),
            }
        })
        .collect();
    Ok(RunRow {
        dataset: planned.dataset.clone(),
        objectives: result.objectives.clone(),
        repetition: planned.repetition,
        seed: planned.config.rng_seed,
        rules_rks: result.rules_rks,
        rules_hks: result.rules_hks,
        cpu_time_ms: result.total_ms(),
        accuracy: result.accuracy,
        full_data_accuracy: result.full_data_accuracy,
        front,
    })
}

/// Executes every run of `plan` and aggregates the cells. Run order, and so
/// the report, is fixed by the plan whether or not runs execute in parallel.
pub fn run_plan(plan: &ExperimentPlan) -> Result<ExperimentReport, PlanFailure> {
    let runs = plan.runs()?;
    let mut datasets: BTreeMap<String, Dataset> = BTreeMap::new();
    for planned in &runs {
        if !datasets.contains_key(&planned.dataset) {
            datasets.insert(planned.dataset.clone(), planned.config.load_dataset()?);
        }
    }

    let outcomes: Vec<Result<RunRow>> = if plan.parallel {
        runs.par_iter()
            .map(|p| run_one(p, &datasets[&p.dataset]))
            .collect()
    } else {
        runs.iter().map(|p| run_one(p, &datasets[&p.dataset])).collect()
    };
    let mut rows = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        match outcome {
            Ok(row) => rows.push(row),
            Err(error) => return Err(PlanFailure { partial: rows, error }),
        }
    }

    let mut cells = Vec::new();
    let mut rows = rows.into_iter();
    let sets = plan.effective_sets().len();
    for name in &plan.datasets {
        for _ in 0..sets {
            let cell_rows: Vec<RunRow> = rows.by_ref().take(plan.repetitions).collect();
            cells.push(CellReport::from_rows(&datasets[name], cell_rows));
        }
    }
    let summaries: Vec<CellSummary> = cells.iter().map(CellReport::summary).collect();
    let trends = trend_check(&summaries).ok();
    let mut generations: Vec<usize> = runs.iter().map(|r| r.config.generations).collect();
    generations.sort_unstable();
    generations.dedup();
    Ok(ExperimentReport {
        test_protocol: runs[0].config.test_protocol,
        generations,
        plan: plan.clone(),
        cells,
        trends,
    })
}

/// Plain-text table with one row per cell, laid out like the published
/// results table.
pub fn render_table(report: &ExperimentReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<8} {:>9} {:>10} {:>10} {:>16} {:>14} {:>18} {:>14}",
        "Dataset", "Instances", "Attributes", "Objectives", "Rules (RKS)", "Rules (HKS)", "Time (ms)", "Accuracy %"
    );
    let mut last = "";
    for cell in &report.cells {
        let (name, inst, attrs) = if cell.dataset == last {
            (String::new(), String::new(), String::new())
        } else {
            (cell.dataset.clone(), cell.instances.to_string(), cell.attributes.to_string())
        };
        last = &cell.dataset;
        let _ = writeln!(
            out,
            "{:<8} {:>9} {:>10} {:>10} {:>16} {:>14} {:>18} {:>14}",
            name,
            inst,
            attrs,
            cell.objective_count,
            format!("{:.1} ± {:.1}", cell.rules_rks.mean, cell.rules_rks.sd),
            format!("{:.2} ± {:.2}", cell.rules_hks.mean, cell.rules_hks.sd),
            format!("{:.1} ± {:.1}", cell.cpu_time_ms.mean, cell.cpu_time_ms.sd),
            format!("{:.2} ± {:.2}", cell.accuracy.mean * 100.0, cell.accuracy.sd * 100.0),
        );
    }
    let reps = report.plan.repetitions;
    let gens: Vec<String> = report.generations.iter().map(ToString::to_string).collect();
    let _ = writeln!(
        out,
        "\nmean ± sd over {reps} repetitions; generations {}; accuracy on {:?} test rows",
        gens.join("/"),
        report.test_protocol
    );
    if let Some(trends) = &report.trends {
        let _ = writeln!(out);
        for t in trends {
            let _ = writeln!(
                out,
                "{:<8} dominators falling: {}  accuracy peaks at 4: {}  unique-rule trend: {}",
                t.dataset,
                yes_no(Some(t.hks_decreasing)),
                yes_no(t.accuracy_peaks_at_four),
                yes_no(t.rks_trend)
            );
        }
    }
    out
}

fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

/// CSV of every final dominator of every run with all five metrics.
pub fn fronts_csv(report: &ExperimentReport) -> String {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = ["dataset", "objectives", "repetition", "rule_id"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend(Metric::ALL.iter().map(|m| m.name().to_string()));
    header.push("rule".into());
    wtr.write_record(&header).expect("in-memory write");
    for cell in &report.cells {
        for row in &cell.rows {
            for point in &row.front {
                let mut record = vec![
                    row.dataset.clone(),
                    row.objectives.join(" "),
                    row.repetition.to_string(),
                    point.rule_id.to_string(),
                ];
                record.extend(Metric::ALL.iter().map(|m| point.metrics[m.name()].to_string()));
                record.push(point.text.clone());
                wtr.write_record(&record).expect("in-memory write");
            }
        }
    }
    String::from_utf8(wtr.into_inner().expect("flush")).expect("utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(dataset: &str, k: usize, rks: f64, hks: f64, acc: f64) -> CellSummary {
        CellSummary {
            dataset: dataset.into(),
            objective_count: k,
            rules_rks: rks,
            rules_hks: hks,
            accuracy: acc,
        }
    }

    #[test]
    fn stat_uses_sample_deviation() {
        let s = Stat::of(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.sd - (5.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!(Stat::of(&[7.0]), Stat { mean: 7.0, sd: 0.0 });
    }

    #[test]
    fn constant_report_fails_trends() {
        let cells = vec![cell("iris", 2, 10.0, 5.0, 0.9), cell("iris", 4, 10.0, 5.0, 0.9), cell("iris", 5, 10.0, 5.0, 0.9)];
        let v = &trend_check(&cells).unwrap()[0];
        assert!(!v.hks_decreasing);
        assert_eq!(v.rks_trend, Some(false));
        assert_eq!(v.accuracy_peaks_at_four, Some(true));
    }

    #[test]
    fn single_size_is_insufficient() {
        let cells = vec![cell("iris", 2, 10.0, 5.0, 0.9)];
        assert!(matches!(trend_check(&cells), Err(Error::InsufficientCoverage(_))));
        assert!(trend_check(&[]).is_err());
    }

    #[test]
    fn six_objective_cells_are_ignored() {
        let cells = vec![cell("ljb", 2, 9.0, 5.0, 0.7), cell("ljb", 5, 8.0, 2.0, 0.6), cell("ljb", 6, 1.0, 9.0, 0.9)];
        let v = &trend_check(&cells).unwrap()[0];
        assert!(v.hks_decreasing);
        assert_eq!(v.accuracy_peaks_at_four, None);
        assert_eq!(v.hks_two_above_five, Some(true));
    }

    #[test]
    fn bundled_plan_shape() {
        let plan = ExperimentPlan::bundled("table5").unwrap();
        assert!(plan.validate().is_empty());
        assert_eq!(plan.datasets.len() * plan.objective_sets.len(), 9);
        assert_eq!(plan.repetitions, 10);
        let runs = plan.runs().unwrap();
        assert_eq!(runs.len(), 90);
        assert_eq!(runs[0].config.population_size, 200);
        assert_eq!(runs[89].config.rng_seed, 51);
        assert!(runs.iter().all(|r| r.config.schema.is_some()));
    }

    #[test]
    fn plan_errors() {
        let plan = ExperimentPlan {
            datasets: vec!["nope".into()],
            objective_sets: vec![],
            repetitions: 0,
            ..ExperimentPlan::default()
        };
        let fields: Vec<String> = plan.validate().into_iter().map(|e| e.field).collect();
        assert_eq!(fields, vec!["datasets", "objective_sets", "repetitions"]);
        assert!(plan.runs().is_err());
    }

    #[test]
    fn one_repetition_cell_equals_its_row() {
        let plan = ExperimentPlan {
            datasets: vec!["iris".into()],
            objective_sets: vec![Objective::parse_list("coverage,confidence").unwrap()],
            repetitions: 1,
            overrides: vec!["generations=3".into(), "population_size=20".into()],
            ..ExperimentPlan::default()
        };
        let report = run_plan(&plan).unwrap();
        assert_eq!(report.cells.len(), 1);
        let cell = &report.cells[0];
        assert_eq!(cell.rows.len(), 1);
        assert_eq!(cell.rules_hks.mean, cell.rows[0].rules_hks as f64);
        assert_eq!(cell.accuracy.mean, cell.rows[0].accuracy);
        assert_eq!(cell.accuracy.sd, 0.0);
        assert!(report.trends.is_none());
        assert!(render_table(&report).contains("iris"));
        let csv = fronts_csv(&report);
        assert!(csv.starts_with("dataset,objectives,repetition,rule_id,coverage,confidence,interest,surprise,rule_difference,rule"));
        assert_eq!(csv.lines().count(), 1 + cell.rows[0].front.len());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let mut plan = ExperimentPlan {
            datasets: vec!["iris".into()],
            objective_sets: vec![
                Objective::parse_list("coverage,confidence").unwrap(),
                Objective::parse_list("coverage,confidence,interest,surprise").unwrap(),
            ],
            repetitions: 2,
            overrides: vec!["generations=4".into(), "population_size=30".into()],
            ..ExperimentPlan::default()
        };
        let a = run_plan(&plan).unwrap().without_timings();
        plan.parallel = false;
        let b = run_plan(&plan).unwrap().without_timings();
        assert_eq!(a.cells, b.cells);
        assert!(a.trends.is_some());
    }

    #[test]
    fn probe_adds_six_objective_set() {
        let plan = ExperimentPlan {
            objective_sets: vec![vec![Objective::maximize(Metric::Coverage)]],
            six_objective_probe: true,
            ..ExperimentPlan::default()
        };
        let sets = plan.effective_sets();
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[1].len(), 6);
    }
}
