//! JSON shapes served to clients.

use std::collections::BTreeMap;

use carm_core::dataset::AttributeKind;
use carm_core::evolution::RuleRecord;
use carm_core::render::render_rule;
use carm_core::{AttributeMeta, Chromosome, Dataset, FieldError, RunConfig, RunResult};
use serde::{Deserialize, Serialize};
use uuid::Uuid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunState {
    Pending,
    Running,
    Stopped,
    Finished,
    Failed,
}

impl RunState {
    pub fn is_terminal(self) -> bool {
        matches!(self, RunState::Stopped | RunState::Finished | RunState::Failed)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Progress {
    pub completed: usize,
    pub total: usize,
}

/// A rule with its rendering and metric values keyed by objective label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RulePoint {
    pub rule_id: u32,
    pub rule: Chromosome,
    pub text: String,
    pub metrics: BTreeMap<String, f64>,
}

impl RulePoint {
    pub fn from_record(record: &RuleRecord, objectives: &[String], dataset: &Dataset) -> Self {
        RulePoint {
            rule_id: record.id.0,
            rule: record.rule.clone(),
            text: render_rule(&record.rule, dataset),
            metrics: objectives.iter().cloned().zip(record.metrics.iter().copied()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunHandle {
    pub run_id: Uuid,
    pub state: RunState,
    pub progress: Progress,
    pub objectives: Vec<String>,
    pub latest_front: Vec<RulePoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub accuracy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationEvent {
    pub generation: usize,
    pub front_size: usize,
    pub rks_size: usize,
    pub objectives: Vec<String>,
    pub front_vectors: Vec<Vec<f64>>,
    pub top_rules: Vec<String>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TerminalEvent {
    pub state: RunState,
    pub completed_generations: usize,
    pub total_generations: usize,
    pub rules_rks: usize,
    pub rules_hks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub accuracy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full_data_accuracy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TerminalEvent {
    pub fn new(state: RunState, total: usize, result: Option<&RunResult>, error: Option<String>) -> Self {
        TerminalEvent {
            state,
            completed_generations: result.map_or(0, |r| r.completed_generations),
            total_generations: total,
            rules_rks: result.map_or(0, |r| r.rules_rks),
            rules_hks: result.map_or(0, |r| r.rules_hks),
            accuracy: result.map(|r| r.accuracy),
            full_data_accuracy: result.map(|r| r.full_data_accuracy),
            error,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RunEvent {
    Generation(GenerationEvent),
    Terminal(TerminalEvent),
}

impl RunEvent {
    pub fn name(&self) -> &'static str {
        match self {
            RunEvent::Generation(_) => "generation",
            RunEvent::Terminal(_) => "terminal",
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, RunEvent::Terminal(_))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fields: Vec<FieldError>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeLabel {
    pub code: u16,
    pub label: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AttributeView {
    pub name: String,
    pub kind: AttributeKind,
    pub values: Vec<CodeLabel>,
}

impl From<&AttributeMeta> for AttributeView {
    fn from(meta: &AttributeMeta) -> Self {
        AttributeView {
            name: meta.name.clone(),
            kind: meta.kind,
            values: meta
                .values
                .iter()
                .map(|&code| CodeLabel {
                    code,
                    label: meta.describe(code),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatasetView {
    pub name: String,
    pub instances: usize,
    pub attributes: Vec<AttributeView>,
    pub class: AttributeView,
}

impl From<&Dataset> for DatasetView {
    fn from(ds: &Dataset) -> Self {
        DatasetView {
            name: ds.name.clone(),
            instances: ds.len(),
            attributes: ds.attributes.iter().map(AttributeView::from).collect(),
            class: AttributeView::from(&ds.class_attribute),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresetView {
    pub name: String,
    pub population_size: usize,
    pub config: RunConfig,
}
