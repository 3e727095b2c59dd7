//! The belief space: six knowledge sources shared by all agents, the
//! Pareto-based acceptance step and the queries agents issue when picking
//! parents.
//!
//! All sources refer to rules through [`RuleId`]s handed out by the rule
//! knowledge source, which deduplicates chromosomes.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{AttributeKind, Code, Dataset, Row};
use crate::error::{Error, Result};
use crate::rule_model::{dissimilarity, matching_positions, Chromosome, MetricVector, Objective, RuleSchema};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RuleId(pub u32);

impl std::fmt::Display for RuleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

// ---------------------------------------------------------------------------
// Dominance

/// Pareto dominance with every component maximized.
pub fn dominates(u: &MetricVector, v: &MetricVector) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    Ok(dominates_unchecked(u.values(), v.values()))
}

pub(crate) fn dominates_unchecked(u: &[f64], v: &[f64]) -> bool {
    let mut strictly = false;
    for (a, b) in u.iter().zip(v) {
        if a < b {
            return false;
        }
        if a > b {
            strictly = true;
        }
    }
    strictly
}

/// Ids whose vectors no other entry dominates. Identical vectors are all
/// kept. Returned in ascending id order.
///
/// Entries are visited in descending lexicographic order, so any dominator
/// of a vector is seen before it and only the front built so far needs to be
/// checked.
pub fn pareto_front<'a, I>(entries: I) -> Vec<RuleId>
where
    I: IntoIterator<Item = (RuleId, &'a MetricVector)>,
{
    let mut sorted: Vec<(RuleId, &[f64])> = entries
        .into_iter()
        .map(|(id, v)| (id, v.values()))
        .collect();
    sorted.sort_by(|(ia, a), (ib, b)| {
        for (x, y) in a.iter().zip(b.iter()) {
            match y.total_cmp(x) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        ia.cmp(ib)
    });
    let mut front: Vec<(RuleId, &[f64])> = Vec::new();
    for (id, v) in sorted {
        if !front.iter().any(|(_, f)| dominates_unchecked(f, v)) {
            front.push((id, v));
        }
    }
    let mut ids: Vec<RuleId> = front.into_iter().map(|(id, _)| id).collect();
    ids.sort_unstable();
    ids
}

/// Indices of the nondominated vectors in `vectors`.
pub fn nondominated_indices(vectors: &[MetricVector]) -> Vec<usize> {
    pareto_front(
        vectors
            .iter()
            .enumerate()
            .map(|(i, v)| (RuleId(i as u32), v)),
    )
    .into_iter()
    .map(|id| id.0 as usize)
    .collect()
}

/// Which rules compete with each other for a place on the front.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrontScope {
    /// Every rule against every other rule.
    #[default]
    Global,
    /// Rules only against rules predicting the same class.
    PerClass,
}

/// Front of `entries` under `scope`: the union of the per-class fronts when
/// scoped by class. Ascending id order.
pub fn scoped_front<'a, I>(entries: I, scope: FrontScope) -> Vec<RuleId>
where
    I: IntoIterator<Item = (RuleId, Code, &'a MetricVector)>,
{
    match scope {
        FrontScope::Global => pareto_front(entries.into_iter().map(|(id, _, v)| (id, v))),
        FrontScope::PerClass => {
            let mut groups: BTreeMap<Code, Vec<(RuleId, &MetricVector)>> = BTreeMap::new();
            for (id, class, v) in entries {
                groups.entry(class).or_default().push((id, v));
            }
            let mut ids: Vec<RuleId> = groups.into_values().flat_map(pareto_front).collect();
            ids.sort_unstable();
            ids
        }
    }
}

// ---------------------------------------------------------------------------
// Knowledge sources

/// Admissible values of one chromosome position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Codes(Vec<Code>),
    Range { min: Code, max: Code },
}

impl Domain {
    pub fn min(&self) -> Code {
        match self {
            Domain::Codes(c) => c[0],
            Domain::Range { min, .. } => *min,
        }
    }

    pub fn max(&self) -> Code {
        match self {
            Domain::Codes(c) => *c.last().expect("non-empty domain"),
            Domain::Range { max, .. } => *max,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Domain::Codes(c) => c.len(),
            Domain::Range { min, max } => (max - min) as usize + 1,
        }
    }

    pub fn contains(&self, code: Code) -> bool {
        match self {
            Domain::Codes(c) => c.binary_search(&code).is_ok(),
            Domain::Range { min, max } => (*min..=*max).contains(&code),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Code {
        match self {
            Domain::Codes(c) => *c.choose(rng).expect("non-empty domain"),
            Domain::Range { min, max } => rng.random_range(*min..=*max),
        }
    }

    fn admit(&mut self, code: Code) {
        match self {
            Domain::Codes(c) => {
                if let Err(pos) = c.binary_search(&code) {
                    c.insert(pos, code);
                }
            }
            Domain::Range { min, max } => {
                *min = (*min).min(code);
                *max = (*max).max(code);
            }
        }
    }
}

/// Values each position can take, gathered from the training rows. The last
/// domain is the class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormativeKs {
    pub domains: Vec<Domain>,
}

impl NormativeKs {
    /// Integer-range attributes keep (min, max) bounds; the others keep the
    /// list of codes seen.
    pub fn from_rows(dataset: &Dataset, rows: &[Row]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Layout("cannot build normative knowledge from no rows".into()));
        }
        let width = dataset.attribute_count() + 1;
        let domains = (0..width)
            .map(|j| {
                let mut seen: Vec<Code> = rows.iter().map(|r| r[j]).collect();
                seen.sort_unstable();
                seen.dedup();
                match dataset.meta(j).kind {
                    AttributeKind::IntegerRange => Domain::Range {
                        min: seen[0],
                        max: *seen.last().unwrap(),
                    },
                    _ => Domain::Codes(seen),
                }
            })
            .collect();
        Ok(NormativeKs { domains })
    }

    /// Adds the concrete slots of a user schema so schema instantiations stay
    /// admissible.
    pub fn admit_schema(&mut self, schema: &RuleSchema) {
        for (i, slot) in schema.pattern.iter().enumerate() {
            if let Some(code) = slot {
                self.domains[i].admit(*code);
            }
        }
        if let Some(code) = schema.class {
            self.domains.last_mut().expect("class domain").admit(code);
        }
    }

    /// Chromosome length including the class.
    pub fn width(&self) -> usize {
        self.domains.len()
    }

    pub fn random_value<R: Rng + ?Sized>(&self, position: usize, rng: &mut R) -> Code {
        self.domains[position].sample(rng)
    }

    pub fn random_chromosome<R: Rng + ?Sized>(&self, rng: &mut R) -> Chromosome {
        let genes = self.domains[..self.width() - 1]
            .iter()
            .map(|d| d.sample(rng))
            .collect();
        Chromosome::new(genes, self.domains[self.width() - 1].sample(rng))
    }

    pub fn admits(&self, rule: &Chromosome) -> bool {
        rule.len() == self.width() && (0..self.width()).all(|i| self.domains[i].contains(rule.get(i)))
    }

    pub fn min_chromosome(&self) -> Chromosome {
        let w = self.width();
        Chromosome::new(
            self.domains[..w - 1].iter().map(Domain::min).collect(),
            self.domains[w - 1].min(),
        )
    }

    pub fn max_chromosome(&self) -> Chromosome {
        let w = self.width();
        Chromosome::new(
            self.domains[..w - 1].iter().map(Domain::max).collect(),
            self.domains[w - 1].max(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SituationalKs {
    pub schema: RuleSchema,
    pub best_exemplar: Option<RuleId>,
}

impl SituationalKs {
    /// Fills every wildcard slot of the schema with a normative value.
    pub fn instantiate<R: Rng + ?Sized>(&self, nks: &NormativeKs, rng: &mut R) -> Chromosome {
        let genes = self
            .schema
            .pattern
            .iter()
            .enumerate()
            .map(|(i, slot)| slot.unwrap_or_else(|| nks.random_value(i, rng)))
            .collect();
        let class = self
            .schema
            .class
            .unwrap_or_else(|| nks.random_value(nks.width() - 1, rng));
        Chromosome::new(genes, class)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainEntry {
    pub vector: MetricVector,
    /// Insertion order; larger is more recent.
    pub stamp: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TksPair {
    pub a: RuleId,
    pub b: RuleId,
    pub distance: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub generation: usize,
    pub front: Vec<RuleId>,
}

/// Deduplicated store of every rule accepted so far. Ids are dense indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Chromosome>", into = "Vec<Chromosome>")]
pub struct RuleKs {
    rules: Vec<Chromosome>,
    index: HashMap<Chromosome, RuleId>,
}

impl RuleKs {
    /// Returns the id of `rule`, allocating one if it is new.
    pub fn intern(&mut self, rule: &Chromosome) -> (RuleId, bool) {
        if let Some(&id) = self.index.get(rule) {
            return (id, false);
        }
        let id = RuleId(self.rules.len() as u32);
        self.rules.push(rule.clone());
        self.index.insert(rule.clone(), id);
        (id, true)
    }

    pub fn get(&self, id: RuleId) -> Option<&Chromosome> {
        self.rules.get(id.0 as usize)
    }

    pub fn id_of(&self, rule: &Chromosome) -> Option<RuleId> {
        self.index.get(rule).copied()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (RuleId, &Chromosome)> {
        self.rules
            .iter()
            .enumerate()
            .map(|(i, r)| (RuleId(i as u32), r))
    }
}

impl TryFrom<Vec<Chromosome>> for RuleKs {
    type Error = String;

    fn try_from(rules: Vec<Chromosome>) -> std::result::Result<Self, String> {
        let mut ks = RuleKs::default();
        for rule in &rules {
            if !ks.intern(rule).1 {
                return Err(format!("duplicate rule {rule}"));
            }
        }
        Ok(ks)
    }
}

impl From<RuleKs> for Vec<Chromosome> {
    fn from(ks: RuleKs) -> Self {
        ks.rules
    }
}

// ---------------------------------------------------------------------------
// Belief space

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMode {
    /// Count of differing positions.
    #[default]
    Hamming,
    /// Count of equal positions.
    MatchCount,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnowledgeSource {
    Normative,
    Situational,
    Domain,
    Topographical,
    History,
    Rule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query {
    Parent(KnowledgeSource),
    /// A random admissible code for the given chromosome position.
    MutationValue(usize),
    DistantPair,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Knowledge {
    Parent(Chromosome),
    Value(Code),
    Pair(TksPair),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcceptanceReport {
    pub generation: usize,
    pub new_rules: Vec<RuleId>,
    pub front: Vec<RuleId>,
    pub evicted: Vec<RuleId>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BeliefSpace {
    pub objectives: Vec<Objective>,
    pub normative: NormativeKs,
    pub situational: SituationalKs,
    pub domain: BTreeMap<RuleId, DomainEntry>,
    pub topographical: Vec<TksPair>,
    pub history: Vec<HistoryEntry>,
    pub rules: RuleKs,
    /// How many dominated entries the domain source retains.
    pub dominated_capacity: usize,
    pub distance_mode: DistanceMode,
    #[serde(default)]
    pub front_scope: FrontScope,
    next_stamp: u64,
}

impl BeliefSpace {
    pub fn new(
        objectives: Vec<Objective>,
        mut normative: NormativeKs,
        schema: RuleSchema,
        dominated_capacity: usize,
        distance_mode: DistanceMode,
    ) -> Result<Self> {
        if objectives.is_empty() {
            return Err(Error::EmptyMetricList);
        }
        if schema.pattern.len() + 1 != normative.width() {
            return Err(Error::Layout(format!(
                "schema has {} slots, dataset has {} attributes",
                schema.pattern.len(),
                normative.width() - 1
            )));
        }
        normative.admit_schema(&schema);
        Ok(BeliefSpace {
            objectives,
            normative,
            situational: SituationalKs {
                schema,
                best_exemplar: None,
            },
            domain: BTreeMap::new(),
            topographical: Vec::new(),
            history: Vec::new(),
            rules: RuleKs::default(),
            dominated_capacity,
            distance_mode,
            front_scope: FrontScope::Global,
            next_stamp: 0,
        })
    }

    pub fn with_front_scope(mut self, scope: FrontScope) -> Self {
        self.front_scope = scope;
        self
    }

    /// Front of the current domain source under the configured scope.
    pub fn domain_front(&self) -> Vec<RuleId> {
        scoped_front(
            self.domain
                .iter()
                .map(|(id, e)| (*id, self.rules.rules[id.0 as usize].class, &e.vector)),
            self.front_scope,
        )
    }

    pub fn distance(&self, a: &Chromosome, b: &Chromosome) -> usize {
        match self.distance_mode {
            DistanceMode::Hamming => dissimilarity(a, b),
            DistanceMode::MatchCount => matching_positions(a, b),
        }
    }

    pub fn latest_front(&self) -> &[RuleId] {
        self.history.last().map_or(&[], |h| h.front.as_slice())
    }

    pub fn rule(&self, id: RuleId) -> Option<&Chromosome> {
        self.rules.get(id)
    }

    /// Pareto acceptance of one generation's returned individuals.
    pub fn accept(
        &mut self,
        batch: &[(Chromosome, MetricVector)],
        generation: usize,
    ) -> Result<AcceptanceReport> {
        let width = self.objectives.len();
        if let Some((_, v)) = batch.iter().find(|(_, v)| v.len() != width) {
            return Err(Error::LengthMismatch(v.len(), width));
        }
        if let Some((c, _)) = batch.iter().find(|(c, _)| c.len() != self.normative.width()) {
            return Err(Error::Layout(format!("rule {c} does not fit the dataset layout")));
        }

        let mut new_rules = Vec::new();
        for (rule, vector) in batch {
            let (id, fresh) = self.rules.intern(rule);
            if fresh {
                new_rules.push(id);
            }
            self.domain.insert(
                id,
                DomainEntry {
                    vector: vector.clone(),
                    stamp: self.next_stamp,
                },
            );
            self.next_stamp += 1;
        }

        let front = self.domain_front();
        let previous: Vec<RuleId> = self.latest_front().to_vec();
        self.history.push(HistoryEntry {
            generation,
            front: front.clone(),
        });

        let evicted = self.prune(&front);
        self.refresh_topography(&front, &previous);

        self.situational.best_exemplar = front
            .iter()
            .copied()
            .max_by(|a, b| {
                let va = self.domain[a].vector.values()[0];
                let vb = self.domain[b].vector.values()[0];
                // ties go to the lower id
                va.total_cmp(&vb).then(b.cmp(a))
            });

        Ok(AcceptanceReport {
            generation,
            new_rules,
            front,
            evicted,
        })
    }

    /// Keeps the front plus the `dominated_capacity` most recent dominated
    /// entries.
    fn prune(&mut self, front: &[RuleId]) -> Vec<RuleId> {
        let in_front: BTreeSet<RuleId> = front.iter().copied().collect();
        let mut dominated: Vec<(u64, RuleId)> = self
            .domain
            .iter()
            .filter(|(id, _)| !in_front.contains(id))
            .map(|(id, e)| (e.stamp, *id))
            .collect();
        if dominated.len() <= self.dominated_capacity {
            return Vec::new();
        }
        dominated.sort_unstable();
        let excess = dominated.len() - self.dominated_capacity;
        let mut evicted: Vec<RuleId> = dominated[..excess].iter().map(|&(_, id)| id).collect();
        for id in &evicted {
            self.domain.remove(id);
        }
        evicted.sort_unstable();
        evicted
    }

    /// Pairs within the new front and between the new and previous fronts.
    fn refresh_topography(&mut self, front: &[RuleId], previous: &[RuleId]) {
        let mut pairs: BTreeSet<(RuleId, RuleId)> = BTreeSet::new();
        for (i, &a) in front.iter().enumerate() {
            for &b in &front[i + 1..] {
                pairs.insert((a.min(b), a.max(b)));
            }
            for &b in previous {
                if a != b {
                    pairs.insert((a.min(b), a.max(b)));
                }
            }
        }
        self.topographical = pairs
            .into_iter()
            .map(|(a, b)| TksPair {
                a,
                b,
                distance: self.distance(&self.rules.rules[a.0 as usize], &self.rules.rules[b.0 as usize]),
            })
            .collect();
    }

    /// The stored pair with the largest distance, earliest on ties.
    pub fn distant_pair(&self) -> Option<TksPair> {
        self.topographical
            .iter()
            .copied()
            .reduce(|best, p| if p.distance > best.distance { p } else { best })
    }

    fn uniform_rule<R: Rng + ?Sized>(&self, ids: &[RuleId], rng: &mut R) -> Option<Chromosome> {
        ids.choose(rng).map(|&id| self.rules.rules[id.0 as usize].clone())
    }

    fn rks_parent<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Chromosome> {
        if self.rules.is_empty() {
            return None;
        }
        let i = rng.random_range(0..self.rules.len());
        Some(self.rules.rules[i].clone())
    }

    /// A parent drawn from the requested source, falling back to the rule
    /// source when that one is empty. `None` only when no rule exists yet.
    pub fn parent<R: Rng + ?Sized>(&self, ks: KnowledgeSource, rng: &mut R) -> Option<Chromosome> {
        let found = match ks {
            KnowledgeSource::History => self.uniform_rule(self.latest_front(), rng),
            KnowledgeSource::Rule => return self.rks_parent(rng),
            KnowledgeSource::Situational => {
                return Some(self.situational.instantiate(&self.normative, rng))
            }
            KnowledgeSource::Normative => return Some(self.normative.random_chromosome(rng)),
            KnowledgeSource::Domain => {
                let ids: Vec<RuleId> = self.domain.keys().copied().collect();
                self.uniform_rule(&ids, rng)
            }
            KnowledgeSource::Topographical => self.distant_pair().map(|p| {
                let id = if rng.random_bool(0.5) { p.a } else { p.b };
                self.rules.rules[id.0 as usize].clone()
            }),
        };
        found.or_else(|| self.rks_parent(rng))
    }

    pub fn query<R: Rng + ?Sized>(&self, query: Query, rng: &mut R) -> Option<Knowledge> {
        match query {
            Query::Parent(ks) => self.parent(ks, rng).map(Knowledge::Parent),
            Query::MutationValue(position) => (position < self.normative.width())
                .then(|| Knowledge::Value(self.normative.random_value(position, rng))),
            Query::DistantPair => self.distant_pair().map(Knowledge::Pair),
        }
    }

    /// Consistency violations across the sources; empty when healthy.
    pub fn verify(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for (id, rule) in self.rules.iter() {
            if self.rules.id_of(rule) != Some(id) {
                problems.push(format!("rule index disagrees for {id}"));
            }
        }
        if self.rules.index.len() != self.rules.len() {
            problems.push("duplicate chromosomes in rule source".into());
        }
        let known = |id: &RuleId| (id.0 as usize) < self.rules.len();
        if let Some(id) = self.domain.keys().find(|id| !known(id)) {
            problems.push(format!("domain entry {id} has no rule"));
        }
        for h in &self.history {
            if let Some(id) = h.front.iter().find(|id| !known(id)) {
                problems.push(format!("history entry {id} has no rule"));
            }
        }
        for p in &self.topographical {
            if !known(&p.a) || !known(&p.b) {
                problems.push(format!("dangling topographical pair {}-{}", p.a, p.b));
                continue;
            }
            if p.a == p.b {
                problems.push(format!("self pair {}", p.a));
            }
            let d = self.distance(&self.rules.rules[p.a.0 as usize], &self.rules.rules[p.b.0 as usize]);
            if d != p.distance {
                problems.push(format!("pair {}-{} stores {} not {d}", p.a, p.b, p.distance));
            }
        }
        let front = self.latest_front();
        let dominated = self.domain.len().saturating_sub(front.len());
        if dominated > self.dominated_capacity {
            problems.push(format!(
                "domain holds {dominated} dominated entries over capacity {}",
                self.dominated_capacity
            ));
        }
        problems
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule_model::Metric;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mv(v: &[f64]) -> MetricVector {
        MetricVector(v.to_vec())
    }

    fn all_pairs_front(entries: &[(RuleId, MetricVector)]) -> Vec<RuleId> {
        entries
            .iter()
            .filter(|(i, v)| {
                !entries
                    .iter()
                    .any(|(j, u)| j != i && dominates(u, v).unwrap())
            })
            .map(|(i, _)| *i)
            .collect()
    }

    fn nks() -> NormativeKs {
        NormativeKs {
            domains: vec![
                Domain::Codes(vec![1, 2, 3]),
                Domain::Codes(vec![1, 2, 3]),
                Domain::Codes(vec![1, 2, 3]),
                Domain::Codes(vec![1, 2, 3]),
                Domain::Codes(vec![1, 2, 3]),
            ],
        }
    }

    fn space() -> BeliefSpace {
        BeliefSpace::new(
            vec![
                Objective::maximize(Metric::Coverage),
                Objective::maximize(Metric::Confidence),
            ],
            nks(),
            RuleSchema::wildcard(4),
            4,
            DistanceMode::Hamming,
        )
        .unwrap()
    }

    #[test]
    fn dominance_cases() {
        assert!(dominates(&mv(&[0.8, 0.9]), &mv(&[0.7, 0.9])).unwrap());
        assert!(!dominates(&mv(&[0.8, 0.9]), &mv(&[0.8, 0.9])).unwrap());
        assert!(!dominates(&mv(&[0.9, 0.1]), &mv(&[0.1, 0.9])).unwrap());
        assert!(!dominates(&mv(&[0.1, 0.9]), &mv(&[0.9, 0.1])).unwrap());
        assert!(dominates(&mv(&[1.0]), &mv(&[0.1, 0.9])).is_err());
    }

    #[test]
    fn front_by_hand() {
        let entries = [
            (RuleId(1), mv(&[0.5, 0.5])),
            (RuleId(2), mv(&[0.9, 0.1])),
            (RuleId(3), mv(&[0.4, 0.4])),
        ];
        assert_eq!(
            pareto_front(entries.iter().map(|(i, v)| (*i, v))),
            vec![RuleId(1), RuleId(2)]
        );
        assert!(pareto_front(std::iter::empty()).is_empty());
        assert_eq!(pareto_front([(RuleId(7), &mv(&[0.0]))]), vec![RuleId(7)]);
        let ties = [(RuleId(0), mv(&[1.0, 1.0])), (RuleId(1), mv(&[1.0, 1.0]))];
        assert_eq!(pareto_front(ties.iter().map(|(i, v)| (*i, v))).len(), 2);
    }

    #[test]
    fn accept_dedups_and_records_history() {
        let mut bs = space();
        let r1 = Chromosome::new(vec![1, 1, 1, 1], 1);
        let r2 = Chromosome::new(vec![2, 2, 2, 2], 2);
        let r3 = Chromosome::new(vec![3, 3, 3, 3], 3);
        let report = bs
            .accept(
                &[
                    (r1.clone(), mv(&[0.5, 0.5])),
                    (r2.clone(), mv(&[0.9, 0.1])),
                    (r3.clone(), mv(&[0.4, 0.4])),
                ],
                0,
            )
            .unwrap();
        assert_eq!(bs.rules.len(), 3);
        assert_eq!(report.new_rules.len(), 3);
        assert_eq!(bs.history[0].front, vec![RuleId(0), RuleId(1)]);
        // best exemplar: highest coverage
        assert_eq!(bs.situational.best_exemplar, Some(RuleId(1)));
        assert_eq!(bs.topographical.len(), 1);
        assert_eq!(bs.topographical[0].distance, 5);

        let report = bs.accept(&[(r1.clone(), mv(&[1.0, 1.0]))], 1).unwrap();
        assert!(report.new_rules.is_empty());
        assert_eq!(bs.rules.len(), 3);
        assert_eq!(bs.domain[&RuleId(0)].vector, mv(&[1.0, 1.0]));
        assert_eq!(bs.latest_front(), &[RuleId(0)]);
        assert!(bs.verify().is_empty(), "{:?}", bs.verify());
    }

    #[test]
    fn accept_rejects_wrong_width() {
        let mut bs = space();
        let r = Chromosome::new(vec![1, 1, 1, 1], 1);
        assert!(bs.accept(&[(r, mv(&[1.0]))], 0).is_err());
        let short = Chromosome::new(vec![1, 1], 1);
        assert!(bs.accept(&[(short, mv(&[1.0, 1.0]))], 0).is_err());
    }

    #[test]
    fn pruning_evicts_oldest_dominated() {
        let mut bs = space();
        bs.dominated_capacity = 2;
        let batch: Vec<(Chromosome, MetricVector)> = (0..5)
            .map(|i| {
                (
                    Chromosome::new(vec![1, 1, 1, (i % 3) as Code + 1], (i / 3) as Code + 1),
                    mv(&[i as f64 / 10.0, i as f64 / 10.0]),
                )
            })
            .collect();
        let report = bs.accept(&batch, 0).unwrap();
        assert_eq!(report.front, vec![RuleId(4)]);
        assert_eq!(report.evicted, vec![RuleId(0), RuleId(1)]);
        assert_eq!(bs.domain.len(), 3);
        assert_eq!(bs.rules.len(), 5);
    }

    #[test]
    fn best_exemplar_ties_go_to_lowest_id() {
        let mut bs = space();
        let a = Chromosome::new(vec![1, 1, 1, 1], 1);
        let b = Chromosome::new(vec![2, 1, 1, 1], 1);
        bs.accept(&[(a, mv(&[0.5, 0.2])), (b, mv(&[0.5, 0.2]))], 0)
            .unwrap();
        assert_eq!(bs.situational.best_exemplar, Some(RuleId(0)));
    }

    #[test]
    fn queries() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut bs = space();
        assert!(bs.parent(KnowledgeSource::History, &mut rng).is_none());
        assert!(bs.parent(KnowledgeSource::Rule, &mut rng).is_none());
        let fresh = bs.parent(KnowledgeSource::Situational, &mut rng).unwrap();
        assert!(bs.normative.admits(&fresh));
        let only = Chromosome::new(vec![2, 3, 1, 2], 3);
        bs.accept(&[(only.clone(), mv(&[0.3, 0.3]))], 0).unwrap();
        for ks in [
            KnowledgeSource::History,
            KnowledgeSource::Rule,
            KnowledgeSource::Domain,
            // empty topography falls back to the rule source
            KnowledgeSource::Topographical,
        ] {
            assert_eq!(bs.parent(ks, &mut rng), Some(only.clone()));
        }
        for _ in 0..50 {
            match bs.query(Query::MutationValue(0), &mut rng) {
                Some(Knowledge::Value(v)) => assert!((1..=3).contains(&v)),
                other => panic!("{other:?}"),
            }
        }
        assert!(bs.query(Query::MutationValue(9), &mut rng).is_none());
        assert!(bs.query(Query::DistantPair, &mut rng).is_none());
    }

    #[test]
    fn topographical_parent_is_an_endpoint_of_the_widest_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut bs = space();
        let a = Chromosome::new(vec![1, 1, 1, 1], 1);
        let b = Chromosome::new(vec![1, 1, 1, 2], 1);
        let c = Chromosome::new(vec![3, 3, 3, 3], 3);
        bs.accept(
            &[
                (a.clone(), mv(&[0.9, 0.1])),
                (b, mv(&[0.5, 0.5])),
                (c.clone(), mv(&[0.1, 0.9])),
            ],
            0,
        )
        .unwrap();
        let pair = bs.distant_pair().unwrap();
        assert_eq!((pair.a, pair.b, pair.distance), (RuleId(0), RuleId(2), 5));
        for _ in 0..20 {
            let p = bs.parent(KnowledgeSource::Topographical, &mut rng).unwrap();
            assert!(p == a || p == c);
        }
    }

    #[test]
    fn schema_codes_become_admissible() {
        let mut n = nks();
        n.domains[0] = Domain::Codes(vec![1]);
        let schema = RuleSchema {
            pattern: vec![Some(3), None, None, None],
            class: None,
        };
        let bs = BeliefSpace::new(
            vec![Objective::maximize(Metric::Coverage)],
            n,
            schema,
            1,
            DistanceMode::Hamming,
        )
        .unwrap();
        assert_eq!(bs.normative.domains[0], Domain::Codes(vec![1, 3]));
    }

    #[test]
    fn snapshot_roundtrip() {
        let mut bs = space();
        bs.accept(
            &[
                (Chromosome::new(vec![1, 2, 3, 1], 1), mv(&[0.5, 0.5])),
                (Chromosome::new(vec![3, 2, 1, 1], 2), mv(&[0.6, 0.4])),
            ],
            0,
        )
        .unwrap();
        let back = BeliefSpace::from_json(&bs.to_json().unwrap()).unwrap();
        assert_eq!(back, bs);
        assert!(serde_json::from_str::<RuleKs>(r#"[{"genes":[1],"class":1},{"genes":[1],"class":1}]"#).is_err());
    }

    fn vectors(max_len: usize, dims: usize) -> impl Strategy<Value = Vec<MetricVector>> {
        prop::collection::vec(
            prop::collection::vec((0u8..5).prop_map(|x| x as f64 / 4.0), dims),
            0..max_len,
        )
        .prop_map(|vs| vs.into_iter().map(MetricVector).collect())
    }

    proptest! {
        #[test]
        fn dominance_is_a_strict_partial_order(
            u in prop::collection::vec(0u8..3, 3),
            v in prop::collection::vec(0u8..3, 3),
            w in prop::collection::vec(0u8..3, 3),
        ) {
            let f = |x: &Vec<u8>| mv(&x.iter().map(|&a| a as f64).collect::<Vec<_>>());
            let (u, v, w) = (f(&u), f(&v), f(&w));
            prop_assert!(!dominates(&u, &u).unwrap());
            prop_assert!(!(dominates(&u, &v).unwrap() && dominates(&v, &u).unwrap()));
            if dominates(&u, &v).unwrap() && dominates(&v, &w).unwrap() {
                prop_assert!(dominates(&u, &w).unwrap());
            }
        }

        #[test]
        fn front_matches_all_pairs(vs in vectors(40, 3)) {
            let entries: Vec<(RuleId, MetricVector)> = vs
                .into_iter()
                .enumerate()
                .map(|(i, v)| (RuleId(i as u32), v))
                .collect();
            let front = pareto_front(entries.iter().map(|(i, v)| (*i, v)));
            prop_assert_eq!(&front, &all_pairs_front(&entries));
            for (i, v) in &entries {
                if !front.contains(i) {
                    prop_assert!(front.iter().any(|f| dominates(&entries[f.0 as usize].1, v).unwrap()));
                }
            }
        }
    }
}
