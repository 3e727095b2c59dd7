//! Test-phase class assignment from a set of mined rules.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dataset::{Code, Row};
use crate::error::{Error, Result};
use crate::rule_model::Chromosome;

/// How the match fraction is compared with the threshold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdMode {
    /// fraction >= threshold
    #[default]
    Inclusive,
    /// fraction > threshold
    Strict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleSet {
    pub rules: Vec<Chromosome>,
    pub majority_class: Code,
}

impl RuleSet {
    pub fn new(rules: Vec<Chromosome>, majority_class: Code) -> Self {
        RuleSet {
            rules,
            majority_class,
        }
    }
}

/// Most frequent class among `rows`, lowest code on ties.
pub fn majority_class(rows: &[Row]) -> Option<Code> {
    let mut counts: BTreeMap<Code, usize> = BTreeMap::new();
    for row in rows {
        *counts.entry(*row.last()?).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .max_by(|(ca, na), (cb, nb)| na.cmp(nb).then(cb.cmp(ca)))
        .map(|(c, _)| c)
}

/// Share of antecedent positions where the rule equals the instance.
pub fn match_fraction(rule: &Chromosome, instance: &[Code]) -> f64 {
    if rule.genes.is_empty() {
        return 0.0;
    }
    let equal = rule
        .genes
        .iter()
        .zip(instance)
        .filter(|(g, v)| g == v)
        .count();
    equal as f64 / rule.genes.len() as f64
}

fn covers(fraction: f64, threshold: f64, mode: ThresholdMode) -> bool {
    match mode {
        ThresholdMode::Inclusive => fraction >= threshold,
        ThresholdMode::Strict => fraction > threshold,
    }
}

/// Number of rules covering `instance`.
pub fn covering_count(instance: &[Code], ruleset: &RuleSet, threshold: f64, mode: ThresholdMode) -> usize {
    ruleset
        .rules
        .iter()
        .filter(|r| covers(match_fraction(r, instance), threshold, mode))
        .count()
}

/// Modal class among covering rules; ties go to the class with the larger
/// summed match fraction, then to the lower code. Falls back to the majority
/// class when nothing covers the instance.
pub fn classify(instance: &[Code], ruleset: &RuleSet, threshold: f64, mode: ThresholdMode) -> Code {
    // class -> (votes, summed fraction)
    let mut tally: BTreeMap<Code, (usize, f64)> = BTreeMap::new();
    for rule in &ruleset.rules {
        let fraction = match_fraction(rule, instance);
        if covers(fraction, threshold, mode) {
            let entry = tally.entry(rule.class).or_insert((0, 0.0));
            entry.0 += 1;
            entry.1 += fraction;
        }
    }
    tally
        .into_iter()
        .max_by(|(ca, (va, sa)), (cb, (vb, sb))| {
            va.cmp(vb)
                .then(sa.total_cmp(sb))
                .then(cb.cmp(ca))
        })
        .map_or(ruleset.majority_class, |(c, _)| c)
}

/// Fraction of `test` rows whose predicted class equals the last column.
pub fn accuracy(test: &[Row], ruleset: &RuleSet, threshold: f64, mode: ThresholdMode) -> Result<f64> {
    if test.is_empty() {
        return Err(Error::EmptyTest);
    }
    let hits = test
        .iter()
        .filter(|row| classify(row, ruleset, threshold, mode) == *row.last().unwrap())
        .count();
    Ok(hits as f64 / test.len() as f64)
}
