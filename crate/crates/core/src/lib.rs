//! Multi-objective classification rule mining with a cultural algorithm.
//!
//! A population of fixed-length rule chromosomes evolves under the influence
//! of a belief space holding six knowledge sources. Rules are accepted into
//! the belief space by Pareto dominance over a user-chosen set of rule
//! metrics, and the surviving dominators classify unseen instances.

pub mod belief_space;
pub mod classifier;
pub mod config;
pub mod dataset;
pub mod error;
pub mod evolution;
pub mod experiment;
pub mod presets;
pub mod render;
pub mod rule_model;

pub use belief_space::{dominates, pareto_front, BeliefSpace, FrontScope, RuleId};
pub use classifier::{accuracy, classify, RuleSet, ThresholdMode};
pub use config::{AgentPool, AgentTrait, RuleSource, RunConfig, TestProtocol};
pub use dataset::{AttributeMeta, Code, Dataset, Row};
pub use error::{DatasetError, Error, FieldError, Result};
pub use evolution::{run, Engine, RunResult};
pub use rule_model::{Chromosome, Metric, MetricVector, Objective, Orientation, RuleSchema};
