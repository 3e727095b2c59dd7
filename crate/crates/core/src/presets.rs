//! Built-in dataset schemas and bundled data for `iris`, `ljb` and `wbc`.

use crate::dataset::{parse_csv, AttributeMeta, Code, Dataset};
use crate::error::DatasetError;

pub const NAMES: [&str; 3] = ["iris", "ljb", "wbc"];

pub const IRIS_SETOSA: Code = 1;
pub const IRIS_VERSICOLOR: Code = 2;
pub const IRIS_VIRGINICA: Code = 3;

const IRIS_CSV: &str = include_str!("../data/iris.csv");
const LJB_CSV: &str = include_str!("../data/ljb.csv");
const WBC_CSV: &str = include_str!("../data/wbc.csv");

pub fn iris_schema() -> Vec<AttributeMeta> {
    vec![
        AttributeMeta::discretized("sepal_length", &[5.5, 6.8]),
        AttributeMeta::discretized("sepal_width", &[2.8, 3.7]),
        AttributeMeta::discretized("petal_length", &[3.0, 5.0]),
        AttributeMeta::discretized("petal_width", &[0.8, 1.7]),
        AttributeMeta::nominal(
            "class",
            &[
                ("Iris-setosa", IRIS_SETOSA),
                ("Iris-versicolor", IRIS_VERSICOLOR),
                ("Iris-virginica", IRIS_VIRGINICA),
            ],
        ),
    ]
}

/// Ljubljana breast cancer. Range-valued cells (`40-49`) are binned by their
/// midpoint; values past the last listed interval fall into the last code.
pub fn ljb_schema() -> Vec<AttributeMeta> {
    vec![
        AttributeMeta::discretized("age", &[39.0, 49.0, 59.0]),
        AttributeMeta::nominal("menopause", &[("lt40", 1), ("ge40", 2), ("premeno", 3)]),
        AttributeMeta::discretized("tumor_size", &[9.0, 19.0, 29.0, 39.0, 49.0]),
        AttributeMeta::discretized("inv_nodes", &[2.0, 5.0, 8.0, 11.0, 14.0, 17.0]),
        AttributeMeta::nominal("node_caps", &[("no", 0), ("yes", 1)]),
        AttributeMeta::integer_range("deg_malig", 1, 3),
        AttributeMeta::nominal("breast", &[("left", 0), ("right", 1)]),
        AttributeMeta::nominal(
            "breast_quad",
            &[
                ("left_up", 1),
                ("left_low", 2),
                ("right_up", 3),
                ("right_low", 4),
                ("central", 5),
            ],
        ),
        AttributeMeta::nominal("irradiat", &[("no", 0), ("yes", 1)]),
        AttributeMeta::nominal(
            "class",
            &[("no-recurrence-events", 0), ("recurrence-events", 1)],
        ),
    ]
}

/// Wisconsin breast cancer: nine 1..10 attributes used as is.
pub fn wbc_schema() -> Vec<AttributeMeta> {
    let mut schema: Vec<AttributeMeta> = [
        "clump_thickness",
        "cell_size_uniformity",
        "cell_shape_uniformity",
        "marginal_adhesion",
        "single_epithelial_cell_size",
        "bare_nuclei",
        "bland_chromatin",
        "normal_nucleoli",
        "mitoses",
    ]
    .iter()
    .map(|name| AttributeMeta::integer_range(name, 1, 10))
    .collect();
    schema.push(AttributeMeta::nominal(
        "class",
        &[("benign", 2), ("malignant", 4)],
    ));
    schema
}

pub fn schema(name: &str) -> Result<Vec<AttributeMeta>, DatasetError> {
    match name {
        "iris" => Ok(iris_schema()),
        "ljb" => Ok(ljb_schema()),
        "wbc" => Ok(wbc_schema()),
        other => Err(DatasetError::UnknownPreset(other.to_string())),
    }
}

/// Default population size per preset.
pub fn population_size(name: &str) -> Option<usize> {
    match name {
        "iris" => Some(200),
        "ljb" => Some(300),
        "wbc" => Some(500),
        _ => None,
    }
}

pub fn load(name: &str) -> Result<Dataset, DatasetError> {
    let data = match name {
        "iris" => IRIS_CSV,
        "ljb" => LJB_CSV,
        "wbc" => WBC_CSV,
        other => return Err(DatasetError::UnknownPreset(other.to_string())),
    };
    parse_csv(data.as_bytes(), &schema(name)?, name)
}
