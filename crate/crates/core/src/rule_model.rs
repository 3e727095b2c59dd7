//! Rule representation and rule metrics.
//!
//! A rule `A -> C` is a [`Chromosome`]: one concrete code per independent
//! attribute (the antecedent) plus a class code (the consequent). Metrics are
//! computed from four counts over a training set, see [`MatchCounts`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dataset::{Code, Row};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chromosome {
    pub genes: Vec<Code>,
    pub class: Code,
}

impl Chromosome {
    pub fn new(genes: Vec<Code>, class: Code) -> Self {
        Chromosome { genes, class }
    }

    /// Number of positions including the class.
    pub fn len(&self) -> usize {
        self.genes.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Code at position `i`, where `i == genes.len()` addresses the class.
    pub fn get(&self, i: usize) -> Code {
        if i == self.genes.len() {
            self.class
        } else {
            self.genes[i]
        }
    }

    pub fn set(&mut self, i: usize, code: Code) {
        if i == self.genes.len() {
            self.class = code;
        } else {
            self.genes[i] = code;
        }
    }

    /// True when every antecedent gene equals the row's attribute value.
    pub fn antecedent_matches(&self, row: &[Code]) -> bool {
        self.genes.iter().zip(row).all(|(g, v)| g == v)
    }
}

impl fmt::Display for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let genes: Vec<String> = self.genes.iter().map(ToString::to_string).collect();
        write!(f, "({}|{})", genes.join(","), self.class)
    }
}

/// A user-specified rule template; `None` slots are wildcards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSchema {
    #[serde(with = "slots")]
    pub pattern: Vec<Option<Code>>,
    #[serde(default, with = "slot")]
    pub class: Option<Code>,
}

impl RuleSchema {
    pub fn wildcard(attribute_count: usize) -> Self {
        RuleSchema {
            pattern: vec![None; attribute_count],
            class: None,
        }
    }

    pub fn is_vacuous(&self) -> bool {
        self.pattern.iter().all(Option::is_none) && self.class.is_none()
    }
}

impl fmt::Display for RuleSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &Option<Code>| s.map_or_else(|| "*".to_string(), |c| c.to_string());
        let pattern: Vec<String> = self.pattern.iter().map(show).collect();
        write!(f, "({}|{})", pattern.join(","), show(&self.class))
    }
}

// Wildcards travel as "*" in JSON.
mod slot {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    pub(super) enum Slot {
        Code(Code),
        Text(String),
    }

    pub(super) fn to_slot(v: &Option<Code>) -> Slot {
        match v {
            Some(c) => Slot::Code(*c),
            None => Slot::Text("*".into()),
        }
    }

    pub(super) fn from_slot<E: serde::de::Error>(s: Slot) -> std::result::Result<Option<Code>, E> {
        match s {
            Slot::Code(c) => Ok(Some(c)),
            Slot::Text(t) if t == "*" => Ok(None),
            Slot::Text(t) => t
                .parse()
                .map(Some)
                .map_err(|_| E::custom(format!("schema slot `{t}` is neither a code nor `*`"))),
        }
    }

    pub fn serialize<S: Serializer>(v: &Option<Code>, s: S) -> std::result::Result<S::Ok, S::Error> {
        to_slot(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Code>, D::Error> {
        match Option::<Slot>::deserialize(d)? {
            None => Ok(None),
            Some(s) => from_slot(s),
        }
    }
}

mod slots {
    use super::slot::{from_slot, to_slot, Slot};
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[Option<Code>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(to_slot))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Option<Code>>, D::Error> {
        Vec::<Slot>::deserialize(d)?
            .into_iter()
            .map(from_slot)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Coverage,
    Confidence,
    Interest,
    Surprise,
    RuleDifference,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::Coverage,
        Metric::Confidence,
        Metric::Interest,
        Metric::Surprise,
        Metric::RuleDifference,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Coverage => "coverage",
            Metric::Confidence => "confidence",
            Metric::Interest => "interest",
            Metric::Surprise => "surprise",
            Metric::RuleDifference => "rule_difference",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "coverage" | "cov" => Ok(Metric::Coverage),
            "confidence" | "conf" => Ok(Metric::Confidence),
            "interest" | "int" => Ok(Metric::Interest),
            "surprise" | "sur" => Ok(Metric::Surprise),
            "rule_difference" | "rdiff" | "difference" => Ok(Metric::RuleDifference),
            other => Err(Error::BadValue {
                key: "metrics".into(),
                message: format!("unknown metric `{other}`"),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    #[default]
    Maximize,
    Minimize,
}

/// A metric together with the direction the user wants it optimized in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Objective {
    pub metric: Metric,
    pub orientation: Orientation,
}

impl Objective {
    pub fn maximize(metric: Metric) -> Self {
        Objective {
            metric,
            orientation: Orientation::Maximize,
        }
    }

    pub fn minimize(metric: Metric) -> Self {
        Objective {
            metric,
            orientation: Orientation::Minimize,
        }
    }

    /// Parses `coverage,confidence,-rule_difference`; a leading `-` asks
    /// for minimization.
    pub fn parse_list(s: &str) -> Result<Vec<Objective>> {
        let list = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                let p = p.trim();
                match p.strip_prefix('-') {
                    Some(rest) => rest.parse().map(Objective::minimize),
                    None => p.parse().map(Objective::maximize),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if list.is_empty() {
            return Err(Error::EmptyMetricList);
        }
        Ok(list)
    }

    /// Label used as a column or key name, `-` prefixed when minimized.
    pub fn label(&self) -> String {
        match self.orientation {
            Orientation::Maximize => self.metric.name().to_string(),
            Orientation::Minimize => format!("-{}", self.metric.name()),
        }
    }
}

impl<'de> Deserialize<'de> for Objective {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Full {
            metric: Metric,
            #[serde(default)]
            orientation: Orientation,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Name(String),
            Full(Full),
        }
        match Repr::deserialize(d)? {
            Repr::Name(name) => {
                let mut list = Objective::parse_list(&name).map_err(serde::de::Error::custom)?;
                if list.len() != 1 {
                    return Err(serde::de::Error::custom("expected a single metric"));
                }
                Ok(list.remove(0))
            }
            Repr::Full(f) => Ok(Objective {
                metric: f.metric,
                orientation: f.orientation,
            }),
        }
    }
}

/// Objective values in the order of the active objective list, every
/// component oriented so that larger is better.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MetricVector(pub Vec<f64>);

impl MetricVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Undoes the orientation flip, giving the metric values as defined.
    pub fn raw_values(&self, objectives: &[Objective]) -> Vec<f64> {
        self.0
            .iter()
            .zip(objectives)
            .map(|(&v, o)| match o.orientation {
                Orientation::Maximize => v,
                Orientation::Minimize => 0.0 - v,
            })
            .collect()
    }
}

/// `n` = sample size, `a` = |A|, `c` = |C|, `ac` = |A and C|.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchCounts {
    pub n: usize,
    pub a: usize,
    pub c: usize,
    pub ac: usize,
}

pub fn count_matches(rule: &Chromosome, rows: &[Row]) -> MatchCounts {
    let width = rule.genes.len();
    let mut counts = MatchCounts {
        n: rows.len(),
        ..MatchCounts::default()
    };
    for row in rows {
        let a = rule.antecedent_matches(row);
        let c = row[width] == rule.class;
        counts.a += a as usize;
        counts.c += c as usize;
        counts.ac += (a && c) as usize;
    }
    counts
}

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// |A and C| / |C|
pub fn coverage(k: &MatchCounts) -> f64 {
    ratio(k.ac as f64, k.c as f64)
}

/// |A and C| / |A|
pub fn confidence(k: &MatchCounts) -> f64 {
    ratio(k.ac as f64, k.a as f64)
}

/// N |A and C| / (|A| |C|)
pub fn interest(k: &MatchCounts) -> f64 {
    ratio((k.n * k.ac) as f64, (k.a * k.c) as f64)
}

/// (|A and C| - |A and not C|) / |not C|
pub fn surprise(k: &MatchCounts) -> f64 {
    let correct = k.ac as f64;
    let wrong = (k.a - k.ac) as f64;
    ratio(correct - wrong, (k.n - k.c) as f64)
}

/// Non-wildcard antecedent slots of `schema` where the rule departs from it.
pub fn rule_difference(rule: &Chromosome, schema: &RuleSchema) -> usize {
    rule.genes
        .iter()
        .zip(&schema.pattern)
        .filter(|(g, s)| matches!(s, Some(code) if code != *g))
        .count()
}

/// Hamming distance over genes and class.
pub fn dissimilarity(r1: &Chromosome, r2: &Chromosome) -> usize {
    r1.genes
        .iter()
        .zip(&r2.genes)
        .filter(|(a, b)| a != b)
        .count()
        + (r1.class != r2.class) as usize
}

/// Count of equal positions (genes and class); the literal pairwise
/// counting, kept for comparison runs.
pub fn matching_positions(r1: &Chromosome, r2: &Chromosome) -> usize {
    r1.len() - dissimilarity(r1, r2)
}

pub fn metric_value(metric: Metric, counts: &MatchCounts, rule: &Chromosome, schema: &RuleSchema) -> f64 {
    match metric {
        Metric::Coverage => coverage(counts),
        Metric::Confidence => confidence(counts),
        Metric::Interest => interest(counts),
        Metric::Surprise => surprise(counts),
        Metric::RuleDifference => rule_difference(rule, schema) as f64,
    }
}

/// Evaluates `rule` on `rows` for each objective, flipping minimized ones so
/// that every stored component is maximized.
pub fn evaluate(
    rule: &Chromosome,
    rows: &[Row],
    objectives: &[Objective],
    schema: &RuleSchema,
) -> Result<MetricVector> {
    evaluate_counted(rule, rows, objectives, schema).map(|(_, v)| v)
}

/// [`evaluate`] that also hands back the match counts.
pub fn evaluate_counted(
    rule: &Chromosome,
    rows: &[Row],
    objectives: &[Objective],
    schema: &RuleSchema,
) -> Result<(MatchCounts, MetricVector)> {
    if objectives.is_empty() {
        return Err(Error::EmptyMetricList);
    }
    let counts = count_matches(rule, rows);
    let vector = MetricVector(
        objectives
            .iter()
            .map(|o| {
                let v = metric_value(o.metric, &counts, rule, schema);
                match o.orientation {
                    Orientation::Maximize => v,
                    // 0.0 - 0.0 stays +0.0
                    Orientation::Minimize => 0.0 - v,
                }
            })
            .collect(),
    );
    Ok((counts, vector))
}
