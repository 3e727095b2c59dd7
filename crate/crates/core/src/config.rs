//! Run configuration: every user-controllable parameter of a run, its JSON
//! form and `key=value` overrides.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::belief_space::{DistanceMode, FrontScope};
use crate::classifier::ThresholdMode;
use crate::dataset::{AttributeMeta, Dataset};
use crate::error::{Error, FieldError, Result};
use crate::presets;
use crate::rule_model::{Metric, Objective, RuleSchema};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgentTrait {
    RiskTaker,
    Imitator,
    Cautious,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentPool {
    pub risk_takers: usize,
    pub imitators: usize,
    pub cautious: usize,
}

impl Default for AgentPool {
    fn default() -> Self {
        AgentPool {
            risk_takers: 3,
            imitators: 3,
            cautious: 3,
        }
    }
}

impl AgentPool {
    pub fn total(&self) -> usize {
        self.risk_takers + self.imitators + self.cautious
    }

    /// One trait per agent: risk takers, then imitators, then cautious.
    pub fn agents(&self) -> Vec<AgentTrait> {
        std::iter::repeat_n(AgentTrait::RiskTaker, self.risk_takers)
            .chain(std::iter::repeat_n(AgentTrait::Imitator, self.imitators))
            .chain(std::iter::repeat_n(AgentTrait::Cautious, self.cautious))
            .collect()
    }
}

/// Which mined rules classify the test set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleSource {
    /// The last history front.
    #[default]
    Front,
    /// Every rule in the rule source.
    All,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestProtocol {
    /// Stratified holdout with `train_fraction` of each class in train.
    #[default]
    Holdout,
    /// Train and test on every instance.
    FullData,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Preset name (`iris`, `ljb`, `wbc`) or CSV path.
    pub dataset: String,
    /// Schema for CSV datasets: a preset name or a JSON file holding a list
    /// of attribute metadata. Ignored for presets.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dataset_schema: Option<String>,
    pub population_size: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub metrics: Vec<Objective>,
    /// User rule schema; all wildcards when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<RuleSchema>,
    pub agents: AgentPool,
    pub rng_seed: u64,
    pub train_fraction: f64,
    pub test_protocol: TestProtocol,
    pub match_threshold: f64,
    pub threshold_mode: ThresholdMode,
    pub rule_source: RuleSource,
    pub tks_count_matches: bool,
    /// Whether rules compete for the front globally or within their class.
    pub front_scope: FrontScope,
    /// Dominated entries kept in the domain source; twice the population
    /// size when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominated_capacity: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::preset("iris").expect("iris preset")
    }
}

pub const DEFAULT_GENERATIONS: usize = 50;

impl RunConfig {
    /// Defaults for a bundled dataset: 80% crossover, 20% mutation, the
    /// preset's population size, coverage and confidence objectives.
    pub fn preset(name: &str) -> Result<Self> {
        let population_size = presets::population_size(name)
            .ok_or_else(|| Error::Dataset(crate::error::DatasetError::UnknownPreset(name.into())))?;
        Ok(RunConfig {
            dataset: name.to_string(),
            dataset_schema: None,
            population_size,
            generations: DEFAULT_GENERATIONS,
            crossover_rate: 0.8,
            mutation_rate: 0.2,
            metrics: vec![
                Objective::maximize(Metric::Coverage),
                Objective::maximize(Metric::Confidence),
            ],
            schema: None,
            agents: AgentPool::default(),
            rng_seed: 42,
            train_fraction: 0.8,
            test_protocol: TestProtocol::Holdout,
            match_threshold: 0.75,
            threshold_mode: ThresholdMode::Inclusive,
            rule_source: RuleSource::Front,
            tks_count_matches: false,
            front_scope: FrontScope::PerClass,
            dominated_capacity: None,
        })
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn distance_mode(&self) -> DistanceMode {
        if self.tks_count_matches {
            DistanceMode::MatchCount
        } else {
            DistanceMode::Hamming
        }
    }

    pub fn dominated_capacity(&self) -> usize {
        self.dominated_capacity.unwrap_or(2 * self.population_size)
    }

    /// Field-level problems that do not need the dataset.
    pub fn validate(&self) -> Vec<FieldError> {
        let mut errors = Vec::new();
        if self.dataset.trim().is_empty() {
            errors.push(FieldError::new("dataset", "must name a preset or a CSV path"));
        }
        if self.population_size < 2 {
            errors.push(FieldError::new("population_size", "must be at least 2"));
        }
        if self.generations < 1 {
            errors.push(FieldError::new("generations", "must be at least 1"));
        }
        for (field, rate) in [
            ("crossover_rate", self.crossover_rate),
            ("mutation_rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                errors.push(FieldError::new(field, "must lie in [0, 1]"));
            }
        }
        if self.metrics.is_empty() {
            errors.push(FieldError::new("metrics", "select at least one metric"));
        }
        if self.agents.total() < 1 {
            errors.push(FieldError::new("agents", "need at least one agent"));
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            errors.push(FieldError::new("train_fraction", "must lie in (0, 1)"));
        }
        if !(0.0..=1.0).contains(&self.match_threshold) {
            errors.push(FieldError::new("match_threshold", "must lie in [0, 1]"));
        }
        errors
    }

    /// Problems that depend on the dataset layout.
    pub fn validate_for(&self, dataset: &Dataset) -> Vec<FieldError> {
        let mut errors = self.validate();
        if dataset.attribute_count() < 2 {
            errors.push(FieldError::new(
                "dataset",
                "one-point crossover needs at least two attributes",
            ));
        }
        if let Some(schema) = &self.schema {
            if schema.pattern.len() != dataset.attribute_count() {
                errors.push(FieldError::new(
                    "schema",
                    format!(
                        "pattern has {} slots, dataset has {} attributes",
                        schema.pattern.len(),
                        dataset.attribute_count()
                    ),
                ));
            } else {
                for (slot, meta) in schema.pattern.iter().zip(&dataset.attributes) {
                    if let Some(code) = slot {
                        if !meta.contains(*code) {
                            errors.push(FieldError::new(
                                "schema",
                                format!("{code} is not a value of {}", meta.name),
                            ));
                        }
                    }
                }
            }
            if let Some(code) = schema.class {
                if !dataset.class_attribute.contains(code) {
                    errors.push(FieldError::new("schema", format!("{code} is not a class value")));
                }
            }
        }
        errors
    }

    pub fn check(&self) -> Result<()> {
        let errors = self.validate();
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(errors))
        }
    }

    pub fn schema_for(&self, dataset: &Dataset) -> RuleSchema {
        self.schema
            .clone()
            .unwrap_or_else(|| RuleSchema::wildcard(dataset.attribute_count()))
    }

    /// Loads the configured dataset.
    pub fn load_dataset(&self) -> Result<Dataset> {
        if presets::NAMES.contains(&self.dataset.as_str()) {
            return Ok(presets::load(&self.dataset)?);
        }
        let schema = match &self.dataset_schema {
            None => {
                return Err(Error::InvalidConfig(vec![FieldError::new(
                    "dataset_schema",
                    "required when the dataset is a CSV path",
                )]))
            }
            Some(name) if presets::NAMES.contains(&name.as_str()) => presets::schema(name)?,
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                serde_json::from_str::<Vec<AttributeMeta>>(&text)?
            }
        };
        Ok(crate::dataset::load_csv(Path::new(&self.dataset), &schema)?)
    }

    /// Applies a `key=value` override. Keys are field names, with dots for
    /// nested fields (`agents.cautious`). Values are parsed as JSON, falling
    /// back to a plain string; `metrics` also takes a comma list.
    pub fn apply_override(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim();
        let value = value.trim();
        let mut doc = serde_json::to_value(&*self)?;
        let parsed: Value = match key {
            "metrics" | "objectives" if !value.starts_with('[') => {
                serde_json::to_value(Objective::parse_list(value)?)?
            }
            _ => serde_json::from_str(value).unwrap_or_else(|_| Value::String(value.to_string())),
        };
        let key = if key == "objectives" { "metrics" } else { key };
        let path: Vec<&str> = key.split('.').collect();
        if !known_key(&path) {
            return Err(Error::UnknownKey(key.to_string()));
        }
        let mut slot = &mut doc;
        for part in &path[..path.len() - 1] {
            slot = slot
                .as_object_mut()
                .ok_or_else(|| Error::UnknownKey(key.to_string()))?
                .entry(part.to_string())
                .or_insert_with(|| Value::Object(Default::default()));
        }
        slot.as_object_mut()
            .ok_or_else(|| Error::UnknownKey(key.to_string()))?
            .insert(path[path.len() - 1].to_string(), parsed);
        *self = serde_json::from_value(doc).map_err(|e| Error::BadValue {
            key: key.to_string(),
            message: e.to_string(),
        })?;
        Ok(())
    }

    /// Applies `KEY=VALUE` strings in order; later ones win.
    pub fn apply_overrides<S: AsRef<str>>(&mut self, overrides: &[S]) -> Result<()> {
        for item in overrides {
            let item = item.as_ref();
            let (key, value) = item.split_once('=').ok_or_else(|| Error::BadValue {
                key: item.to_string(),
                message: "expected KEY=VALUE".into(),
            })?;
            self.apply_override(key, value)?;
        }
        Ok(())
    }
}

const TOP_KEYS: [&str; 18] = [
    "dataset",
    "dataset_schema",
    "population_size",
    "generations",
    "crossover_rate",
    "mutation_rate",
    "metrics",
    "schema",
    "agents",
    "rng_seed",
    "train_fraction",
    "test_protocol",
    "match_threshold",
    "threshold_mode",
    "rule_source",
    "tks_count_matches",
    "front_scope",
    "dominated_capacity",
];

fn known_key(path: &[&str]) -> bool {
    match path {
        [top] => TOP_KEYS.contains(top),
        ["agents", sub] => ["risk_takers", "imitators", "cautious"].contains(sub),
        ["schema", sub] => ["pattern", "class"].contains(sub),
        _ => false,
    }
}
