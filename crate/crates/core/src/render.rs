//! Text renderings of rules and results.

use std::fmt::Write;

use crate::dataset::Dataset;
use crate::evolution::{RuleRecord, RunResult};
use crate::rule_model::Chromosome;

/// `IF attr=label AND ... THEN class=label`, labels decoded from the
/// attribute metadata.
pub fn render_rule(rule: &Chromosome, dataset: &Dataset) -> String {
    let conditions: Vec<String> = rule
        .genes
        .iter()
        .zip(&dataset.attributes)
        .map(|(&code, meta)| format!("{}={}", meta.name, meta.describe(code)))
        .collect();
    format!(
        "IF {} THEN {}={}",
        conditions.join(" AND "),
        dataset.class_attribute.name,
        dataset.class_attribute.describe(rule.class)
    )
}

fn fmt_metric(v: f64) -> String {
    format!("{v:.4}")
}

/// One line per rule: id, objective vector, rendered rule.
pub fn rules_listing(records: &[RuleRecord], objectives: &[String], dataset: &Dataset) -> String {
    let mut out = String::new();
    for r in records {
        let metrics: Vec<String> = objectives
            .iter()
            .zip(&r.metrics)
            .map(|(name, v)| format!("{name}={}", fmt_metric(*v)))
            .collect();
        let _ = writeln!(
            out,
            "#{:<5} [{}]  {}",
            r.id.0,
            metrics.join(", "),
            render_rule(&r.rule, dataset)
        );
    }
    out
}

/// CSV with one row per rule: id, metric values, rendered rule.
pub fn front_csv(records: &[RuleRecord], objectives: &[String], dataset: &Dataset) -> String {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["rule_id".to_string()];
    header.extend(objectives.iter().cloned());
    header.push("rule".into());
    wtr.write_record(&header).expect("in-memory write");
    for r in records {
        let mut row = vec![r.id.0.to_string()];
        row.extend(r.metrics.iter().map(|v| v.to_string()));
        row.push(render_rule(&r.rule, dataset));
        wtr.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(wtr.into_inner().expect("flush")).expect("utf-8")
}

/// Human-readable summary of a run.
pub fn run_report(result: &RunResult) -> String {
    let c = &result.config;
    let mut out = String::new();
    let _ = writeln!(out, "dataset            {}", result.dataset);
    let _ = writeln!(out, "objectives         {}", result.objectives.join(", "));
    let _ = writeln!(out, "population size    {}", c.population_size);
    let _ = writeln!(
        out,
        "generations        {} of {}{}",
        result.completed_generations,
        c.generations,
        if result.stopped_early { " (stopped early)" } else { "" }
    );
    let _ = writeln!(out, "crossover/mutation {} / {}", c.crossover_rate, c.mutation_rate);
    let _ = writeln!(
        out,
        "agents             {} risk takers, {} imitators, {} cautious",
        c.agents.risk_takers, c.agents.imitators, c.agents.cautious
    );
    let _ = writeln!(out, "seed               {}", c.rng_seed);
    let _ = writeln!(
        out,
        "test protocol      {:?} (train {}, test {})",
        result.test_protocol, result.train_size, result.test_size
    );
    let _ = writeln!(
        out,
        "match threshold    {} ({:?}), rules from {:?}",
        result.match_threshold, result.threshold_mode, result.rule_source
    );
    let _ = writeln!(out, "rules (RKS)        {}", result.rules_rks);
    let _ = writeln!(out, "rules (HKS)        {}", result.rules_hks);
    let _ = writeln!(out, "accuracy           {:.2}%", result.accuracy * 100.0);
    let _ = writeln!(out, "full-data accuracy {:.2}%", result.full_data_accuracy * 100.0);
    if let Some(t) = &result.timings {
        let _ = writeln!(out, "wall time          {:.1} ms", t.total_ms);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::AttributeMeta;
    use crate::presets::{self, IRIS_SETOSA};

    #[test]
    fn iris_rule_text() {
        let ds = presets::load("iris").unwrap();
        let rule = Chromosome::new(vec![1, 2, 1, 1], IRIS_SETOSA);
        assert_eq!(
            render_rule(&rule, &ds),
            "IF sepal_length=(-inf,5.5] AND sepal_width=(2.8,3.7] AND petal_length=(-inf,3.0] \
             AND petal_width=(-inf,0.8] THEN class=Iris-setosa"
        );
    }

    #[test]
    fn single_attribute_layout() {
        let ds = Dataset {
            name: "t".into(),
            attributes: vec![AttributeMeta::nominal("a", &[("v", 1)])],
            class_attribute: AttributeMeta::nominal("class", &[("c", 1)]),
            instances: vec![],
        };
        assert_eq!(render_rule(&Chromosome::new(vec![1], 1), &ds), "IF a=v THEN class=c");
    }
}
