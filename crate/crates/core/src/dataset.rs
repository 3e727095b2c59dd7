//! Discretized instance tables: attribute metadata, CSV loading, binning and
//! stratified train/test splits.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::DatasetError;

/// A discrete attribute value as stored in chromosomes and instance rows.
pub type Code = u16;

/// One instance: a code per independent attribute followed by the class code.
pub type Row = Vec<Code>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttributeKind {
    Nominal,
    DiscretizedNumeric,
    IntegerRange,
}

/// Upper-inclusive interval of a discretized attribute. The last bin of every
/// attribute has an infinite bound, serialized as `null`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bin {
    #[serde(with = "upper_bound")]
    pub upper: f64,
    pub code: Code,
}

mod upper_bound {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() {
            s.serialize_none()
        } else {
            s.serialize_some(v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

/// Display label for a code, also accepted as raw cell text when loading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Label {
    pub text: String,
    pub code: Code,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttributeMeta {
    pub name: String,
    pub kind: AttributeKind,
    /// Admissible codes, ascending.
    pub values: Vec<Code>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bins: Option<Vec<Bin>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<Label>,
}

impl AttributeMeta {
    /// Nominal attribute whose codes are taken from `labels`.
    pub fn nominal(name: &str, labels: &[(&str, Code)]) -> Self {
        let mut values: Vec<Code> = labels.iter().map(|&(_, c)| c).collect();
        values.sort_unstable();
        values.dedup();
        AttributeMeta {
            name: name.to_string(),
            kind: AttributeKind::Nominal,
            values,
            bins: None,
            labels: labels
                .iter()
                .map(|&(text, code)| Label {
                    text: text.to_string(),
                    code,
                })
                .collect(),
        }
    }

    /// Discretized numeric attribute. `bounds` lists the finite upper bounds;
    /// codes run 1, 2, ... and one extra open-ended bin is appended.
    pub fn discretized(name: &str, bounds: &[f64]) -> Self {
        let mut bins: Vec<Bin> = bounds
            .iter()
            .enumerate()
            .map(|(i, &upper)| Bin {
                upper,
                code: (i + 1) as Code,
            })
            .collect();
        bins.push(Bin {
            upper: f64::INFINITY,
            code: (bounds.len() + 1) as Code,
        });
        AttributeMeta {
            name: name.to_string(),
            kind: AttributeKind::DiscretizedNumeric,
            values: bins.iter().map(|b| b.code).collect(),
            bins: Some(bins),
            labels: Vec::new(),
        }
    }

    pub fn integer_range(name: &str, lo: Code, hi: Code) -> Self {
        AttributeMeta {
            name: name.to_string(),
            kind: AttributeKind::IntegerRange,
            values: (lo..=hi).collect(),
            bins: None,
            labels: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), DatasetError> {
        let bad = |msg: String| {
            Err(DatasetError::Schema {
                attribute: self.name.clone(),
                message: msg,
            })
        };
        if self.values.is_empty() {
            return bad("no admissible values".into());
        }
        if self.values.windows(2).any(|w| w[0] >= w[1]) {
            return bad("values must be strictly ascending and duplicate-free".into());
        }
        if let Some(bins) = &self.bins {
            if bins.is_empty() {
                return bad("empty bin list".into());
            }
            if bins.windows(2).any(|w| w[0].upper.partial_cmp(&w[1].upper) != Some(std::cmp::Ordering::Less)) {
                return bad("bin upper bounds must be strictly increasing".into());
            }
            if bins.last().map(|b| b.upper) != Some(f64::INFINITY) {
                return bad("last bin must be open-ended".into());
            }
            if bins.iter().any(|b| !self.contains(b.code)) {
                return bad("bin code outside admissible values".into());
            }
        } else if self.kind == AttributeKind::DiscretizedNumeric {
            return bad("discretized attribute without bins".into());
        }
        if self.labels.iter().any(|l| !self.contains(l.code)) {
            return bad("label code outside admissible values".into());
        }
        Ok(())
    }

    pub fn contains(&self, code: Code) -> bool {
        self.values.binary_search(&code).is_ok()
    }

    /// Human-readable rendering of a code: the bin interval for discretized
    /// attributes, the label for labelled ones, otherwise the number.
    pub fn describe(&self, code: Code) -> String {
        if let Some(bins) = &self.bins {
            if let Some(pos) = bins.iter().position(|b| b.code == code) {
                let lower = if pos == 0 {
                    "(-inf".to_string()
                } else {
                    format!("({}", fmt_bound(bins[pos - 1].upper))
                };
                let upper = if bins[pos].upper.is_infinite() {
                    "+inf)".to_string()
                } else {
                    format!("{}]", fmt_bound(bins[pos].upper))
                };
                return format!("{lower},{upper}");
            }
        }
        if let Some(label) = self.labels.iter().find(|l| l.code == code) {
            return label.text.clone();
        }
        code.to_string()
    }

    fn parse_cell(&self, raw: &str) -> Option<Code> {
        let cell = raw.trim();
        match self.kind {
            AttributeKind::DiscretizedNumeric => {
                let value = parse_numeric_cell(cell)?;
                discretize(value, self).ok()
            }
            AttributeKind::IntegerRange => {
                let code: Code = cell.parse().ok()?;
                self.contains(code).then_some(code)
            }
            AttributeKind::Nominal => {
                let by_label = self
                    .labels
                    .iter()
                    .find(|l| l.text == cell)
                    .or_else(|| {
                        self.labels
                            .iter()
                            .find(|l| l.text.eq_ignore_ascii_case(cell))
                    })
                    .map(|l| l.code);
                by_label.or_else(|| {
                    let code: Code = cell.parse().ok()?;
                    self.contains(code).then_some(code)
                })
            }
        }
    }
}

/// Bounds keep at least one decimal (`3.0`, `5.5`).
fn fmt_bound(v: f64) -> String {
    if v.fract() == 0.0 {
        format!("{v:.1}")
    } else {
        v.to_string()
    }
}

/// Numeric cells are plain reals or closed ranges such as `30-39`; a range is
/// represented by its midpoint.
fn parse_numeric_cell(cell: &str) -> Option<f64> {
    if let Ok(v) = cell.parse::<f64>() {
        return Some(v);
    }
    let (lo, hi) = cell.split_once('-')?;
    let lo: f64 = lo.trim().parse().ok()?;
    let hi: f64 = hi.trim().parse().ok()?;
    Some((lo + hi) / 2.0)
}

/// Code of the first bin whose (inclusive) upper bound is at least `value`.
pub fn discretize(value: f64, meta: &AttributeMeta) -> Result<Code, DatasetError> {
    if !value.is_finite() {
        return Err(DatasetError::NonFinite {
            attribute: meta.name.clone(),
        });
    }
    let bins = match (&meta.kind, &meta.bins) {
        (AttributeKind::DiscretizedNumeric, Some(bins)) => bins,
        _ => {
            return Err(DatasetError::Schema {
                attribute: meta.name.clone(),
                message: "attribute is not discretized".into(),
            })
        }
    };
    // the last bound is +inf, so a finite value always lands somewhere
    let bin = bins
        .iter()
        .find(|b| value <= b.upper)
        .expect("last bin is open-ended");
    Ok(bin.code)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub name: String,
    pub attributes: Vec<AttributeMeta>,
    pub class_attribute: AttributeMeta,
    pub instances: Vec<Row>,
}

impl Dataset {
    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn class_of(&self, row: &[Code]) -> Code {
        row[self.attributes.len()]
    }

    /// Metadata for chromosome position `i`; the class sits after the
    /// independent attributes.
    pub fn meta(&self, i: usize) -> &AttributeMeta {
        if i == self.attributes.len() {
            &self.class_attribute
        } else {
            &self.attributes[i]
        }
    }

    pub fn rows(&self, indices: &[usize]) -> Vec<Row> {
        indices.iter().map(|&i| self.instances[i].clone()).collect()
    }

    /// Instance count per class code.
    pub fn class_counts(&self) -> BTreeMap<Code, usize> {
        let mut counts = BTreeMap::new();
        for row in &self.instances {
            *counts.entry(self.class_of(row)).or_insert(0) += 1;
        }
        counts
    }

    pub fn validate(&self) -> Result<(), DatasetError> {
        for meta in self.attributes.iter().chain(Some(&self.class_attribute)) {
            meta.validate()?;
        }
        let width = self.attributes.len() + 1;
        for (r, row) in self.instances.iter().enumerate() {
            if row.len() != width {
                return Err(DatasetError::RowWidth {
                    row: r,
                    expected: width,
                    found: row.len(),
                });
            }
            for (j, &code) in row.iter().enumerate() {
                if !self.meta(j).contains(code) {
                    return Err(DatasetError::Unmappable {
                        row: r,
                        column: self.meta(j).name.clone(),
                        value: code.to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Loads a CSV file whose header matches `schema` (class column last).
pub fn load_csv(path: &Path, schema: &[AttributeMeta]) -> Result<Dataset, DatasetError> {
    let file = std::fs::File::open(path).map_err(|source| DatasetError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".to_string());
    parse_csv(file, schema, &name)
}

pub fn parse_csv<R: Read>(
    reader: R,
    schema: &[AttributeMeta],
    name: &str,
) -> Result<Dataset, DatasetError> {
    let (class_attribute, attributes) = match schema.split_last() {
        Some((class, attrs)) if !attrs.is_empty() => (class.clone(), attrs.to_vec()),
        _ => {
            return Err(DatasetError::Schema {
                attribute: String::new(),
                message: "schema needs at least one attribute and a class".into(),
            })
        }
    };
    for meta in schema {
        meta.validate()?;
    }

    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr
        .headers()
        .map_err(DatasetError::Csv)?
        .iter()
        .map(str::to_string)
        .collect();
    let expected: Vec<String> = schema.iter().map(|m| m.name.clone()).collect();
    if header.is_empty() || (header.len() == 1 && header[0].is_empty()) {
        return Err(DatasetError::Empty);
    }
    if header != expected {
        return Err(DatasetError::HeaderMismatch {
            expected: expected.join(","),
            found: header.join(","),
        });
    }

    let mut instances = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let record = record.map_err(DatasetError::Csv)?;
        if record.iter().all(|c| c.is_empty()) {
            continue;
        }
        if record.len() != schema.len() {
            return Err(DatasetError::RowWidth {
                row: r,
                expected: schema.len(),
                found: record.len(),
            });
        }
        let row = record
            .iter()
            .zip(schema)
            .map(|(cell, meta)| {
                meta.parse_cell(cell).ok_or_else(|| DatasetError::Unmappable {
                    row: r,
                    column: meta.name.clone(),
                    value: cell.to_string(),
                })
            })
            .collect::<Result<Row, _>>()?;
        instances.push(row);
    }
    if instances.is_empty() {
        return Err(DatasetError::Empty);
    }
    Ok(Dataset {
        name: name.to_string(),
        attributes,
        class_attribute,
        instances,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
    pub seed: u64,
}

/// Stratified, seeded split. Each class contributes `floor((1 - f) * size)`
/// instances to the test side; the remainder goes to train.
pub fn split(dataset: &Dataset, train_fraction: f64, seed: u64) -> Result<Split, DatasetError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(DatasetError::Precondition(format!(
            "train fraction must lie in (0, 1), got {train_fraction}"
        )));
    }
    if dataset.is_empty() {
        return Err(DatasetError::Empty);
    }
    let mut by_class: BTreeMap<Code, Vec<usize>> = BTreeMap::new();
    for (i, row) in dataset.instances.iter().enumerate() {
        by_class.entry(dataset.class_of(row)).or_default().push(i);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (class, mut members) in by_class {
        if members.len() < 2 {
            log::warn!(
                "class {} of {} has a single instance; keeping it in train",
                dataset.class_attribute.describe(class),
                dataset.name
            );
            train.extend(members);
            continue;
        }
        members.shuffle(&mut rng);
        let n_test = ((1.0 - train_fraction) * members.len() as f64 + 1e-9).floor() as usize;
        let n_test = n_test.min(members.len() - 1);
        test.extend_from_slice(&members[..n_test]);
        train.extend_from_slice(&members[n_test..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    if test.is_empty() {
        return Err(DatasetError::Precondition(
            "split leaves the test set empty".into(),
        ));
    }
    Ok(Split { train, test, seed })
}

impl fmt::Display for Dataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} instances, {} attributes",
            self.name,
            self.len(),
            self.attribute_count()
        )?;
        for meta in self.attributes.iter().chain(Some(&self.class_attribute)) {
            let rendered: Vec<String> = meta
                .values
                .iter()
                .map(|&c| format!("{c}={}", meta.describe(c)))
                .collect();
            writeln!(f, "  {:<28} {}", meta.name, rendered.join("  "))?;
        }
        write!(f, "  class counts:")?;
        for (code, n) in self.class_counts() {
            write!(f, " {}={n}", self.class_attribute.describe(code))?;
        }
        Ok(())
    }
}
