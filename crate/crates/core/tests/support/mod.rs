//! Brute-force oracles and random case generators shared by the integration
//! tests. Nothing here calls into the code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use carm_core::{Chromosome, Code, Metric, RuleSchema};
use rand::Rng;

/// Metric values by explicit set construction.
pub fn oracle_metric(metric: Metric, rule: &Chromosome, rows: &[Vec<Code>], schema: &RuleSchema) -> f64 {
    let width = rule.genes.len();
    let all: BTreeSet<usize> = (0..rows.len()).collect();
    let a: BTreeSet<usize> = all
        .iter()
        .copied()
        .filter(|&i| (0..width).all(|j| rows[i][j] == rule.genes[j]))
        .collect();
    let c: BTreeSet<usize> = all.iter().copied().filter(|&i| rows[i][width] == rule.class).collect();
    let ac = a.intersection(&c).count() as i64;
    let a_not_c = a.difference(&c).count() as i64;
    let not_c = all.difference(&c).count() as i64;
    let (n, a, c) = (all.len() as i64, a.len() as i64, c.len() as i64);
    let div = |num: i64, den: i64| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    match metric {
        Metric::Coverage => div(ac, c),
        Metric::Confidence => div(ac, a),
        Metric::Interest => div(n * ac, a * c),
        Metric::Surprise => div(ac - a_not_c, not_c),
        Metric::RuleDifference => {
            let mut d = 0;
            for j in 0..width {
                if let Some(s) = schema.pattern[j] {
                    if s != rule.genes[j] {
                        d += 1;
                    }
                }
            }
            d as f64
        }
    }
}

/// Maximizing dominance written out independently.
pub fn oracle_dominates(u: &[f64], v: &[f64]) -> bool {
    let mut better = false;
    for i in 0..u.len() {
        if u[i] < v[i] {
            return false;
        }
        if u[i] > v[i] {
            better = true;
        }
    }
    better
}

/// Indices not dominated by any other vector, by comparing all pairs.
pub fn oracle_front(vectors: &[Vec<f64>]) -> Vec<usize> {
    (0..vectors.len())
        .filter(|&i| !(0..vectors.len()).any(|j| j != i && oracle_dominates(&vectors[j], &vectors[i])))
        .collect()
}

/// A random table of `rows` rows over `width` attributes with codes
/// `1..=arity`, plus a class column in `1..=classes`.
pub fn random_rows<R: Rng>(rng: &mut R, rows: usize, width: usize, arity: Code, classes: Code) -> Vec<Vec<Code>> {
    (0..rows)
        .map(|_| {
            let mut row: Vec<Code> = (0..width).map(|_| rng.random_range(1..=arity)).collect();
            row.push(rng.random_range(1..=classes));
            row
        })
        .collect()
}

pub fn random_rule<R: Rng>(rng: &mut R, width: usize, arity: Code, classes: Code) -> Chromosome {
    Chromosome::new(
        (0..width).map(|_| rng.random_range(1..=arity)).collect(),
        rng.random_range(1..=classes),
    )
}

pub fn random_schema<R: Rng>(rng: &mut R, width: usize, arity: Code) -> RuleSchema {
    RuleSchema {
        pattern: (0..width)
            .map(|_| rng.random_bool(0.5).then(|| rng.random_range(1..=arity)))
            .collect(),
        class: None,
    }
}

/// Random vectors with coarse values so that ties and duplicates occur.
pub fn random_vectors<R: Rng>(rng: &mut R, count: usize, dims: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| (0..dims).map(|_| rng.random_range(0..8) as f64 / 4.0).collect())
        .collect()
}
