mod support;

use std::collections::{BTreeSet, HashMap};

use carm_core::belief_space::{DistanceMode, NormativeKs};
use carm_core::{presets, BeliefSpace, Chromosome, FrontScope, Metric, MetricVector, Objective, RuleId, RuleSchema};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn space(scope: FrontScope, capacity: usize, dims: usize) -> BeliefSpace {
    let ds = presets::load("iris").unwrap();
    let nks = NormativeKs::from_rows(&ds, &ds.instances).unwrap();
    let metrics = [Metric::Coverage, Metric::Confidence, Metric::Interest, Metric::Surprise];
    let objectives = metrics[..dims].iter().map(|&m| Objective::maximize(m)).collect();
    BeliefSpace::new(objectives, nks, RuleSchema::wildcard(4), capacity, DistanceMode::Hamming)
        .unwrap()
        .with_front_scope(scope)
}

fn oracle_scoped(bs: &BeliefSpace, scope: FrontScope) -> Vec<RuleId> {
    let entries: Vec<(RuleId, u16, Vec<f64>)> = bs
        .domain
        .iter()
        .map(|(id, e)| (*id, bs.rule(*id).unwrap().class, e.vector.values().to_vec()))
        .collect();
    let groups: BTreeSet<Option<u16>> = entries
        .iter()
        .map(|e| (scope == FrontScope::PerClass).then_some(e.1))
        .collect();
    let mut front = Vec::new();
    for g in groups {
        let members: Vec<&(RuleId, u16, Vec<f64>)> =
            entries.iter().filter(|e| g.is_none_or(|c| c == e.1)).collect();
        let vectors: Vec<Vec<f64>> = members.iter().map(|e| e.2.clone()).collect();
        front.extend(support::oracle_front(&vectors).into_iter().map(|i| members[i].0));
    }
    front.sort_unstable();
    front
}

fn fuzz(scope: FrontScope, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = 2 + (seed as usize % 3);
    let capacity = 6;
    let mut bs = space(scope, capacity, dims);
    // each rule keeps one vector for the whole run, as evaluation would
    let mut table: HashMap<Chromosome, MetricVector> = HashMap::new();
    let mut seen: BTreeSet<Chromosome> = BTreeSet::new();
    for generation in 0..2_500 {
        let batch: Vec<(Chromosome, MetricVector)> = (0..rng.random_range(0..8))
            .map(|_| {
                let rule = support::random_rule(&mut rng, 4, 3, 3);
                let v = support::random_vectors(&mut rng, 1, dims).remove(0);
                let v = table.entry(rule.clone()).or_insert(MetricVector(v)).clone();
                (rule, v)
            })
            .collect();
        let report = bs.accept(&batch, generation).unwrap();
        seen.extend(batch.into_iter().map(|(r, _)| r));

        assert_eq!(bs.verify(), Vec::<String>::new());
        assert_eq!(bs.rules.len(), seen.len());
        for (id, rule) in bs.rules.iter() {
            assert_eq!(bs.rules.id_of(rule), Some(id));
            assert!(seen.contains(rule));
        }
        assert_eq!(report.front, oracle_scoped(&bs, scope));
        assert_eq!(bs.latest_front(), report.front.as_slice());
        assert!(bs.domain.len() - report.front.len() <= capacity);
        assert_eq!(bs.history.len(), generation + 1);
    }
}

#[test]
fn global_acceptance_cycles() {
    for seed in 0..2 {
        fuzz(FrontScope::Global, seed);
    }
}

#[test]
fn per_class_acceptance_cycles() {
    for seed in 2..4 {
        fuzz(FrontScope::PerClass, seed);
    }
}
