//! Population space: seeding, trait-driven parent selection, one-point
//! crossover, normative mutation and the generation loop that feeds the
//! belief space.
//!
//! Generation 0 evaluates the seeded population and submits it to acceptance
//! directly, since agents have nothing to query before the first acceptance.
//! Every later generation is produced by the agents.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::belief_space::{scoped_front, BeliefSpace, KnowledgeSource, NormativeKs, RuleId};
use crate::classifier::{self, RuleSet, ThresholdMode};
use crate::config::{AgentTrait, RuleSource, RunConfig, TestProtocol};
use crate::dataset::{self, Dataset, Row};
use crate::error::{Error, Result};
use crate::rule_model::{evaluate_counted, Chromosome, MatchCounts, MetricVector, Objective, RuleSchema};

/// Sources a risk taker draws from, one uniformly per parent.
pub const RISK_TAKER_SOURCES: [KnowledgeSource; 4] = [
    KnowledgeSource::History,
    KnowledgeSource::Rule,
    KnowledgeSource::Situational,
    KnowledgeSource::Topographical,
];

/// Children of a one-point crossover at `point`: suffixes from `point` on,
/// class included, are exchanged.
pub fn crossover_at(p1: &Chromosome, p2: &Chromosome, point: usize) -> (Chromosome, Chromosome) {
    let mut c1 = p1.clone();
    let mut c2 = p2.clone();
    c1.genes[point..].copy_from_slice(&p2.genes[point..]);
    c2.genes[point..].copy_from_slice(&p1.genes[point..]);
    std::mem::swap(&mut c1.class, &mut c2.class);
    (c1, c2)
}

/// One-point crossover with the point uniform in `1..genes.len()`.
///
/// Panics on layouts with fewer than two genes; configurations are checked
/// for that before a run starts.
pub fn crossover<R: Rng + ?Sized>(p1: &Chromosome, p2: &Chromosome, rng: &mut R) -> (Chromosome, Chromosome) {
    let point = rng.random_range(1..p1.genes.len());
    crossover_at(p1, p2, point)
}

/// Replaces one position (class included) with a different normative value
/// when its domain allows one.
pub fn mutate<R: Rng + ?Sized>(c: &Chromosome, nks: &NormativeKs, rng: &mut R) -> Chromosome {
    let position = rng.random_range(0..c.len());
    mutate_at(c, position, nks, rng)
}

pub fn mutate_at<R: Rng + ?Sized>(c: &Chromosome, position: usize, nks: &NormativeKs, rng: &mut R) -> Chromosome {
    let domain = &nks.domains[position];
    let mut out = c.clone();
    if domain.size() < 2 {
        return out;
    }
    let current = c.get(position);
    let mut value = domain.sample(rng);
    while value == current {
        value = domain.sample(rng);
    }
    out.set(position, value);
    out
}

/// Initial population grown from the all-minimum and all-maximum chromosomes
/// by repeated crossover and mutation of the pool built so far.
pub fn seed_population<R: Rng + ?Sized>(
    population_size: usize,
    nks: &NormativeKs,
    rng: &mut R,
) -> Result<Vec<Chromosome>> {
    if population_size < 2 {
        return Err(Error::InvalidConfig(vec![crate::error::FieldError::new(
            "population_size",
            "must be at least 2",
        )]));
    }
    let mut pool = vec![nks.min_chromosome(), nks.max_chromosome()];
    while pool.len() < population_size {
        let a = rng.random_range(0..pool.len());
        let b = rng.random_range(0..pool.len());
        let (c1, c2) = crossover(&pool[a], &pool[b], rng);
        pool.push(mutate(&c1, nks, rng));
        if pool.len() < population_size {
            pool.push(mutate(&c2, nks, rng));
        }
    }
    Ok(pool)
}

/// Parents for one reproduction step, chosen by the agent's trait.
pub fn select_parents<R: Rng + ?Sized>(
    agent: AgentTrait,
    beliefs: &BeliefSpace,
    rng: &mut R,
) -> (Chromosome, Chromosome) {
    let (first, second) = match agent {
        AgentTrait::RiskTaker => {
            let a = RISK_TAKER_SOURCES[rng.random_range(0..RISK_TAKER_SOURCES.len())];
            let b = RISK_TAKER_SOURCES[rng.random_range(0..RISK_TAKER_SOURCES.len())];
            (a, b)
        }
        AgentTrait::Cautious => (KnowledgeSource::History, KnowledgeSource::History),
        AgentTrait::Imitator => (KnowledgeSource::Situational, KnowledgeSource::Rule),
    };
    let mut pick = |ks| {
        beliefs
            .parent(ks, rng)
            .unwrap_or_else(|| beliefs.normative.random_chromosome(rng))
    };
    let p1 = pick(first);
    let p2 = pick(second);
    (p1, p2)
}

/// Offspring quota per agent: an equal share, remainder one each from the
/// first agent on.
pub fn agent_quotas(population_size: usize, agents: usize) -> Vec<usize> {
    let base = population_size / agents;
    let extra = population_size % agents;
    (0..agents).map(|i| base + (i < extra) as usize).collect()
}

fn breed<R: Rng + ?Sized>(
    agent: AgentTrait,
    quota: usize,
    crossover_rate: f64,
    mutation_rate: f64,
    beliefs: &BeliefSpace,
    rng: &mut R,
) -> Vec<Chromosome> {
    let mut children = Vec::with_capacity(quota);
    while children.len() < quota {
        let (p1, p2) = select_parents(agent, beliefs, rng);
        let (c1, c2) = if rng.random_bool(crossover_rate) {
            crossover(&p1, &p2, rng)
        } else {
            (p1, p2)
        };
        for child in [c1, c2] {
            if children.len() == quota {
                break;
            }
            let child = if rng.random_bool(mutation_rate) {
                mutate(&child, &beliefs.normative, rng)
            } else {
                child
            };
            children.push(child);
        }
    }
    children
}

/// One completed generation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Generation {
    pub index: usize,
    pub population: Vec<Chromosome>,
    pub evaluations: Vec<MetricVector>,
    pub front_ids: Vec<RuleId>,
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationSummary {
    pub index: usize,
    pub distinct_offspring: usize,
    pub accepted: usize,
    pub new_rules: usize,
    pub rks_size: usize,
    pub front: Vec<RuleId>,
}

/// A rule with its metric values as defined (not orientation-flipped).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleRecord {
    pub id: RuleId,
    pub rule: Chromosome,
    pub metrics: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
    pub per_generation_ms: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub config: RunConfig,
    pub dataset: String,
    pub objectives: Vec<String>,
    pub test_protocol: TestProtocol,
    pub train_size: usize,
    pub test_size: usize,
    pub completed_generations: usize,
    pub stopped_early: bool,
    pub generations: Vec<GenerationSummary>,
    /// Size of the rule source at the end of the run.
    pub rules_rks: usize,
    /// Size of the final history front.
    pub rules_hks: usize,
    pub front: Vec<RuleRecord>,
    pub rules: Vec<RuleRecord>,
    pub rule_source: RuleSource,
    pub match_threshold: f64,
    pub threshold_mode: ThresholdMode,
    /// Accuracy on the test rows of the configured protocol.
    pub accuracy: f64,
    /// Accuracy of the same rules on every instance.
    pub full_data_accuracy: f64,
    /// Wall-clock timings; absent from reproducible outputs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl RunResult {
    pub fn without_timings(&self) -> RunResult {
        RunResult {
            timings: None,
            ..self.clone()
        }
    }

    pub fn total_ms(&self) -> f64 {
        self.timings.as_ref().map_or(0.0, |t| t.total_ms)
    }
}

/// A run in progress. [`Engine::step`] advances one generation; the result
/// can be taken at any generation boundary.
pub struct Engine {
    config: RunConfig,
    dataset: Dataset,
    objectives: Vec<Objective>,
    schema: RuleSchema,
    train: Vec<Row>,
    test: Vec<Row>,
    beliefs: BeliefSpace,
    population: Vec<Chromosome>,
    agents: Vec<AgentTrait>,
    agent_rngs: Vec<ChaCha8Rng>,
    /// Metric vectors of every rule ever accepted.
    evaluated: BTreeMap<RuleId, MetricVector>,
    summaries: Vec<GenerationSummary>,
    per_generation_ms: Vec<f64>,
    started: Instant,
}

impl Engine {
    pub fn new(config: RunConfig, dataset: Dataset) -> Result<Self> {
        let errors = config.validate_for(&dataset);
        if !errors.is_empty() {
            return Err(Error::InvalidConfig(errors));
        }
        dataset.validate()?;
        let (train, test) = match config.test_protocol {
            TestProtocol::Holdout => {
                let split = dataset::split(&dataset, config.train_fraction, config.rng_seed)?;
                (dataset.rows(&split.train), dataset.rows(&split.test))
            }
            TestProtocol::FullData => (dataset.instances.clone(), dataset.instances.clone()),
        };
        let schema = config.schema_for(&dataset);
        let nks = NormativeKs::from_rows(&dataset, &train)?;
        let beliefs = BeliefSpace::new(
            config.metrics.clone(),
            nks,
            schema.clone(),
            config.dominated_capacity(),
            config.distance_mode(),
        )?
        .with_front_scope(config.front_scope);

        // stream 0 seeds the population, stream i + 1 belongs to agent i
        let mut seed_rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
        let population = seed_population(config.population_size, &beliefs.normative, &mut seed_rng)?;
        let agents = config.agents.agents();
        let agent_rngs = (0..agents.len())
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
                rng.set_stream(i as u64 + 1);
                rng
            })
            .collect();

        Ok(Engine {
            objectives: config.metrics.clone(),
            config,
            dataset,
            schema,
            train,
            test,
            beliefs,
            population,
            agents,
            agent_rngs,
            evaluated: BTreeMap::new(),
            summaries: Vec::new(),
            per_generation_ms: Vec::new(),
            started: Instant::now(),
        })
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn dataset(&self) -> &Dataset {
        &self.dataset
    }

    pub fn beliefs(&self) -> &BeliefSpace {
        &self.beliefs
    }

    pub fn train_rows(&self) -> &[Row] {
        &self.train
    }

    pub fn completed(&self) -> usize {
        self.summaries.len()
    }

    pub fn is_done(&self) -> bool {
        self.completed() >= self.config.generations
    }

    pub fn summaries(&self) -> &[GenerationSummary] {
        &self.summaries
    }

    /// Runs the next generation: breeding (skipped for generation 0),
    /// evaluation, per-agent nondominated filtering and acceptance.
    pub fn step(&mut self) -> Result<Generation> {
        let started = Instant::now();
        let index = self.completed();

        let groups: Vec<Vec<Chromosome>> = if index == 0 {
            vec![self.population.clone()]
        } else {
            let quotas = agent_quotas(self.config.population_size, self.agents.len());
            let beliefs = &self.beliefs;
            let (cr, mr) = (self.config.crossover_rate, self.config.mutation_rate);
            self.agents
                .par_iter()
                .zip(self.agent_rngs.par_iter_mut())
                .zip(quotas)
                .map(|((&agent, rng), quota)| breed(agent, quota, cr, mr, beliefs, rng))
                .collect()
        };

        // evaluate each distinct chromosome once
        let mut distinct: Vec<Chromosome> = Vec::new();
        let mut slot: HashMap<Chromosome, usize> = HashMap::new();
        for c in groups.iter().flatten() {
            if !slot.contains_key(c) {
                slot.insert(c.clone(), distinct.len());
                distinct.push(c.clone());
            }
        }
        let evaluated: Vec<(MatchCounts, MetricVector)> = distinct
            .par_iter()
            .map(|c| evaluate_counted(c, &self.train, &self.objectives, &self.schema))
            .collect::<Result<_>>()?;
        let (counts, vectors): (Vec<MatchCounts>, Vec<MetricVector>) = evaluated.into_iter().unzip();

        // each agent returns the nondominated part of its own offspring
        let mut batch: Vec<(Chromosome, MetricVector)> = Vec::new();
        let mut in_batch = vec![false; distinct.len()];
        for group in &groups {
            let mut local: Vec<usize> = group.iter().map(|c| slot[c]).collect();
            local.sort_unstable();
            local.dedup();
            // only rules that cover some training instance qualify
            local.retain(|&i| counts[i].ac > 0);
            let scope = self.config.front_scope;
            let kept = scoped_front(
                local.iter().map(|&i| (RuleId(i as u32), distinct[i].class, &vectors[i])),
                scope,
            );
            for RuleId(i) in kept {
                let i = i as usize;
                if !in_batch[i] {
                    in_batch[i] = true;
                    batch.push((distinct[i].clone(), vectors[i].clone()));
                }
            }
        }

        let report = self.beliefs.accept(&batch, index)?;
        for (rule, vector) in &batch {
            let id = self.beliefs.rules.id_of(rule).expect("accepted rule is interned");
            self.evaluated.insert(id, vector.clone());
        }

        let population: Vec<Chromosome> = groups.into_iter().flatten().collect();
        let evaluations = population.iter().map(|c| vectors[slot[c]].clone()).collect();
        self.population = population.clone();

        self.summaries.push(GenerationSummary {
            index,
            distinct_offspring: distinct.len(),
            accepted: batch.len(),
            new_rules: report.new_rules.len(),
            rks_size: self.beliefs.rules.len(),
            front: report.front.clone(),
        });
        let wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
        self.per_generation_ms.push(wall_time_ms);

        Ok(Generation {
            index,
            population,
            evaluations,
            front_ids: report.front,
            wall_time_ms,
        })
    }

    fn record(&self, id: RuleId) -> RuleRecord {
        RuleRecord {
            id,
            rule: self.beliefs.rules.get(id).expect("known rule").clone(),
            metrics: self.evaluated[&id].raw_values(&self.objectives),
        }
    }

    pub fn front_records(&self) -> Vec<RuleRecord> {
        self.beliefs
            .latest_front()
            .iter()
            .map(|&id| self.record(id))
            .collect()
    }

    /// The rules used for classification under the configured source.
    pub fn ruleset(&self) -> RuleSet {
        let rules = match self.config.rule_source {
            RuleSource::Front => self
                .beliefs
                .latest_front()
                .iter()
                .map(|&id| self.beliefs.rules.get(id).expect("known rule").clone())
                .collect(),
            RuleSource::All => self.beliefs.rules.iter().map(|(_, r)| r.clone()).collect(),
        };
        let majority = classifier::majority_class(&self.train).expect("non-empty training rows");
        RuleSet::new(rules, majority)
    }

    /// Result as of the last completed generation.
    pub fn result(&self) -> Result<RunResult> {
        let ruleset = self.ruleset();
        let threshold = self.config.match_threshold;
        let mode = self.config.threshold_mode;
        let accuracy = classifier::accuracy(&self.test, &ruleset, threshold, mode)?;
        let full_data_accuracy = classifier::accuracy(&self.dataset.instances, &ruleset, threshold, mode)?;
        let front = self.front_records();
        Ok(RunResult {
            config: self.config.clone(),
            dataset: self.dataset.name.clone(),
            objectives: self.objectives.iter().map(Objective::label).collect(),
            test_protocol: self.config.test_protocol,
            train_size: self.train.len(),
            test_size: self.test.len(),
            completed_generations: self.completed(),
            stopped_early: !self.is_done(),
            generations: self.summaries.clone(),
            rules_rks: self.beliefs.rules.len(),
            rules_hks: front.len(),
            front,
            rules: self.evaluated.keys().map(|&id| self.record(id)).collect(),
            rule_source: self.config.rule_source,
            match_threshold: threshold,
            threshold_mode: mode,
            accuracy,
            full_data_accuracy,
            timings: Some(Timings {
                total_ms: self.started.elapsed().as_secs_f64() * 1e3,
                per_generation_ms: self.per_generation_ms.clone(),
            }),
        })
    }
}

/// Runs `config.generations` generations on `dataset`.
pub fn run(config: &RunConfig, dataset: &Dataset) -> Result<RunResult> {
    let mut engine = Engine::new(config.clone(), dataset.clone())?;
    while !engine.is_done() {
        engine.step()?;
    }
    engine.result()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief_space::{DistanceMode, Domain};
    use crate::config::AgentPool;
    use crate::presets::{self, IRIS_SETOSA, IRIS_VIRGINICA};
    use crate::rule_model::Metric;

    fn iris_nks() -> NormativeKs {
        let ds = presets::load("iris").unwrap();
        NormativeKs::from_rows(&ds, &ds.instances).unwrap()
    }

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn crossover_swaps_suffix_and_class() {
        let p1 = Chromosome::new(vec![1, 1, 1, 1], IRIS_SETOSA);
        let p2 = Chromosome::new(vec![3, 3, 3, 3], IRIS_VIRGINICA);
        let (c1, c2) = crossover_at(&p1, &p2, 2);
        assert_eq!(c1, Chromosome::new(vec![1, 1, 3, 3], IRIS_VIRGINICA));
        assert_eq!(c2, Chromosome::new(vec![3, 3, 1, 1], IRIS_SETOSA));
        let mut r = rng(3);
        for _ in 0..20 {
            let (a, b) = crossover(&p1, &p1, &mut r);
            assert_eq!((a, b), (p1.clone(), p1.clone()));
        }
    }

    #[test]
    #[should_panic]
    fn crossover_needs_two_genes() {
        let p = Chromosome::new(vec![1], 1);
        crossover(&p, &p, &mut rng(1));
    }

    #[test]
    fn mutation_changes_one_position() {
        let nks = iris_nks();
        let c = Chromosome::new(vec![1, 1, 1, 1], IRIS_SETOSA);
        let mut r = rng(9);
        for _ in 0..50 {
            let m = mutate_at(&c, 0, &nks, &mut r);
            assert!([2, 3].contains(&m.genes[0]));
            assert_eq!(&m.genes[1..], &c.genes[1..]);
            let m = mutate(&c, &nks, &mut r);
            assert_eq!(crate::rule_model::dissimilarity(&c, &m), 1);
            assert!(nks.admits(&m));
        }
        let mut single = nks.clone();
        single.domains[0] = Domain::Codes(vec![1]);
        assert_eq!(mutate_at(&c, 0, &single, &mut r), c);
        assert_eq!(mutate(&c, &nks, &mut rng(4)), mutate(&c, &nks, &mut rng(4)));
    }

    #[test]
    fn seeds_are_min_and_max() {
        let nks = iris_nks();
        let pop = seed_population(2, &nks, &mut rng(1)).unwrap();
        assert_eq!(pop[0], Chromosome::new(vec![1, 1, 1, 1], IRIS_SETOSA));
        assert_eq!(pop[1], Chromosome::new(vec![3, 3, 3, 3], IRIS_VIRGINICA));
        let a = seed_population(200, &nks, &mut rng(5)).unwrap();
        assert_eq!(a.len(), 200);
        assert!(a.iter().all(|c| nks.admits(c)));
        assert_eq!(a, seed_population(200, &nks, &mut rng(5)).unwrap());
        assert!(seed_population(1, &nks, &mut rng(5)).is_err());
    }

    #[test]
    fn quotas_sum_to_population() {
        assert_eq!(agent_quotas(200, 9), vec![23, 23, 22, 22, 22, 22, 22, 22, 22]);
        assert_eq!(agent_quotas(2, 9).iter().sum::<usize>(), 2);
        assert_eq!(agent_quotas(7, 1), vec![7]);
    }

    fn beliefs_with(front: &[(Chromosome, MetricVector)], schema: RuleSchema) -> BeliefSpace {
        let mut bs = BeliefSpace::new(
            vec![Objective::maximize(Metric::Coverage)],
            iris_nks(),
            schema,
            10,
            DistanceMode::Hamming,
        )
        .unwrap();
        bs.accept(front, 0).unwrap();
        bs
    }

    #[test]
    fn trait_selection() {
        let elite = Chromosome::new(vec![2, 2, 2, 2], 2);
        let bs = beliefs_with(&[(elite.clone(), MetricVector(vec![1.0]))], RuleSchema::wildcard(4));
        let mut r = rng(11);
        assert_eq!(
            select_parents(AgentTrait::Cautious, &bs, &mut r),
            (elite.clone(), elite.clone())
        );

        let concrete = RuleSchema {
            pattern: vec![Some(1), Some(3), Some(1), Some(3)],
            class: None,
        };
        let bs = beliefs_with(&[(elite.clone(), MetricVector(vec![1.0]))], concrete);
        let (p1, p2) = select_parents(AgentTrait::Imitator, &bs, &mut r);
        assert_eq!(p1.genes, vec![1, 3, 1, 3]);
        assert_eq!(p2, elite);

        let a: Vec<_> = (0..10)
            .map(|_| select_parents(AgentTrait::RiskTaker, &bs, &mut r))
            .collect();
        let mut r1 = rng(7);
        let mut r2 = rng(7);
        for _ in 0..10 {
            assert_eq!(
                select_parents(AgentTrait::RiskTaker, &bs, &mut r1),
                select_parents(AgentTrait::RiskTaker, &bs, &mut r2)
            );
        }
        assert_eq!(a.len(), 10);
    }

    fn small_config(generations: usize) -> RunConfig {
        let mut c = RunConfig::preset("iris").unwrap();
        c.generations = generations;
        c
    }

    #[test]
    fn identity_pipeline_clones_parents() {
        let ds = presets::load("iris").unwrap();
        let mut c = small_config(2);
        c.crossover_rate = 0.0;
        c.mutation_rate = 0.0;
        c.agents = AgentPool {
            risk_takers: 0,
            imitators: 0,
            cautious: 1,
        };
        let mut engine = Engine::new(c, ds).unwrap();
        engine.step().unwrap();
        let front: Vec<Chromosome> = engine
            .beliefs()
            .latest_front()
            .iter()
            .map(|&id| engine.beliefs().rule(id).unwrap().clone())
            .collect();
        let g = engine.step().unwrap();
        assert_eq!(g.population.len(), 200);
        assert!(g.population.iter().all(|c| front.contains(c)));
    }

    #[test]
    fn risk_taker_crossover_only() {
        let ds = presets::load("iris").unwrap();
        let mut c = small_config(3);
        c.crossover_rate = 1.0;
        c.mutation_rate = 0.0;
        c.agents = AgentPool {
            risk_takers: 1,
            imitators: 0,
            cautious: 0,
        };
        let mut engine = Engine::new(c, ds).unwrap();
        for _ in 0..3 {
            let g = engine.step().unwrap();
            assert_eq!(g.population.len(), 200);
            assert!(g.population.iter().all(|x| engine.beliefs().normative.admits(x)));
        }
    }

    #[test]
    fn one_generation_one_history_entry() {
        let ds = presets::load("iris").unwrap();
        let result = run(&small_config(1), &ds).unwrap();
        assert_eq!(result.generations.len(), 1);
        assert_eq!(result.completed_generations, 1);
        assert!(!result.stopped_early);
        assert!(result.rules_hks >= 1);
    }

    #[test]
    fn minimal_runs_on_every_preset() {
        for name in presets::NAMES {
            let ds = presets::load(name).unwrap();
            let mut c = RunConfig::preset(name).unwrap();
            c.population_size = 2;
            c.generations = 1;
            let r = run(&c, &ds).unwrap();
            assert!((0.0..=1.0).contains(&r.accuracy));
        }
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let ds = presets::load("iris").unwrap();
        let a = run(&small_config(10), &ds).unwrap();
        let b = run(&small_config(10), &ds).unwrap();
        assert_eq!(a.without_timings(), b.without_timings());
        let mut other = small_config(10);
        other.rng_seed = 43;
        assert_ne!(
            run(&other, &ds).unwrap().generations,
            a.generations
        );
    }

    #[test]
    fn engine_rejects_bad_schema() {
        let ds = presets::load("iris").unwrap();
        let mut c = small_config(1);
        c.schema = Some(RuleSchema::wildcard(3));
        assert!(matches!(Engine::new(c, ds), Err(Error::InvalidConfig(_))));
    }
}
