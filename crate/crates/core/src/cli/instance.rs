//! JSON instance documents.
//!
//! ```json
//! {
//!   "dimension": 1,
//!   "colors": [
//!     {"name": "red", "generators": [[3]]},
//!     {"name": "blue", "generators": [[5]]}
//!   ],
//!   "targets": [[8]]
//! }
//! ```
//!
//! Entries are JSON integers or decimal strings (for values beyond 64 bits).

use std::collections::HashSet;
use std::io::Read;

use num_bigint::BigInt;
use serde_json::Value;
use thiserror::Error;

use crate::colored::ColoredSemigroup;
use crate::numerical::ColoredNumericalSemigroup;
use crate::semigroup::AffineSemigroup;
use crate::vector::IntVector;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("{source_name}:{line}:{column}: {message}")]
    Parse { source_name: String, line: usize, column: usize, message: String },

    #[error("{path}: {message}")]
    Validation { path: String, message: String },

    #[error("cannot read {0}: {1}")]
    Io(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Color {
    pub name: String,
    pub generators: Vec<IntVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDocument {
    pub dimension: usize,
    pub colors: Vec<Color>,
    pub targets: Vec<IntVector>,
}

impl InstanceDocument {
    pub fn colored(&self) -> crate::Result<ColoredSemigroup> {
        ColoredSemigroup::new(self.dimension, self.colors.iter().map(|c| c.generators.clone()).collect())
    }

    /// All generators, color by color.
    pub fn pooled(&self) -> crate::Result<AffineSemigroup> {
        AffineSemigroup::new(self.dimension, self.colors.iter().flat_map(|c| c.generators.clone()).collect())
    }

    /// One semigroup per color.
    pub fn members(&self) -> crate::Result<Vec<AffineSemigroup>> {
        self.colors.iter().map(|c| AffineSemigroup::new(self.dimension, c.generators.clone())).collect()
    }

    pub fn numerical(&self) -> std::result::Result<ColoredNumericalSemigroup, InstanceError> {
        if self.dimension != 1 {
            return Err(InstanceError::Validation {
                path: "dimension".into(),
                message: format!("numerical commands need dimension 1, found {}", self.dimension),
            });
        }
        let mut classes = Vec::with_capacity(self.colors.len());
        for (i, c) in self.colors.iter().enumerate() {
            let mut class = Vec::with_capacity(c.generators.len());
            for (j, g) in c.generators.iter().enumerate() {
                let v = u64::try_from(&g[0]).ok().filter(|&v| v > 0).ok_or_else(|| InstanceError::Validation {
                    path: format!("colors[{i}].generators[{j}]"),
                    message: format!("expected a positive 64-bit integer, found {}", g[0]),
                })?;
                class.push(v);
            }
            classes.push(class);
        }
        ColoredNumericalSemigroup::new(classes)
            .map_err(|e| InstanceError::Validation { path: "colors".into(), message: e.to_string() })
    }
}

/// Reads a document from a file, or from stdin when `path` is `-`.
pub fn parse_instance(path: &str) -> std::result::Result<InstanceDocument, InstanceError> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| InstanceError::Io("stdin".into(), e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| InstanceError::Io(path.into(), e.to_string()))?
    };
    parse_instance_str(&text, if path == "-" { "<stdin>" } else { path })
}

pub fn parse_instance_str(text: &str, source_name: &str) -> std::result::Result<InstanceDocument, InstanceError> {
    let value: Value = serde_json::from_str(text).map_err(|e| InstanceError::Parse {
        source_name: source_name.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_value(&value)
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> InstanceError {
    InstanceError::Validation { path: path.into(), message: message.into() }
}

fn from_value(v: &Value) -> std::result::Result<InstanceDocument, InstanceError> {
    let obj = v.as_object().ok_or_else(|| invalid("$", "expected an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "dimension" | "colors" | "targets") {
            return Err(invalid(key.clone(), "unknown field"));
        }
    }
    let dimension = obj
        .get("dimension")
        .ok_or_else(|| invalid("dimension", "missing field"))?
        .as_u64()
        .filter(|&d| d >= 1)
        .ok_or_else(|| invalid("dimension", "expected a positive integer"))? as usize;
    let colors_v = obj
        .get("colors")
        .ok_or_else(|| invalid("colors", "missing field"))?
        .as_array()
        .ok_or_else(|| invalid("colors", "expected an array"))?;
    if colors_v.is_empty() {
        return Err(invalid("colors", "at least one color is required"));
    }
    let mut names = HashSet::new();
    let mut colors = Vec::with_capacity(colors_v.len());
    for (i, c) in colors_v.iter().enumerate() {
        let path = format!("colors[{i}]");
        let c = c.as_object().ok_or_else(|| invalid(&path, "expected an object"))?;
        for key in c.keys() {
            if !matches!(key.as_str(), "name" | "generators") {
                return Err(invalid(format!("{path}.{key}"), "unknown field"));
            }
        }
        let name = c
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| invalid(format!("{path}.name"), "expected a string"))?
            .to_string();
        if !names.insert(name.clone()) {
            return Err(invalid(format!("{path}.name"), format!("duplicate color name '{name}'")));
        }
        let gens = c
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| invalid(format!("{path}.generators"), "expected an array of vectors"))?;
        let generators = gens
            .iter()
            .enumerate()
            .map(|(j, g)| vector(g, dimension, &format!("{path}.generators[{j}]")))
            .collect::<std::result::Result<_, _>>()?;
        colors.push(Color { name, generators });
    }
    let targets = match obj.get("targets") {
        None | Some(Value::Null) => Vec::new(),
        Some(t) => t
            .as_array()
            .ok_or_else(|| invalid("targets", "expected an array of vectors"))?
            .iter()
            .enumerate()
            .map(|(j, g)| vector(g, dimension, &format!("targets[{j}]")))
            .collect::<std::result::Result<_, _>>()?,
    };
    Ok(InstanceDocument { dimension, colors, targets })
}

fn vector(v: &Value, dim: usize, path: &str) -> std::result::Result<IntVector, InstanceError> {
    let items = v.as_array().ok_or_else(|| invalid(path, "expected an array of integers"))?;
    if items.len() != dim {
        return Err(invalid(path, format!("expected {dim} entries, found {}", items.len())));
    }
    let entries = items
        .iter()
        .enumerate()
        .map(|(k, x)| {
            integer(x).ok_or_else(|| invalid(format!("{path}[{k}]"), format!("expected an integer, found {x}")))
        })
        .collect::<std::result::Result<_, _>>()?;
    Ok(IntVector::new(entries))
}

fn integer(x: &Value) -> Option<BigInt> {
    match x {
        Value::Number(n) => n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// Parses `3,95,98` (or `-1, 2`) as a vector.
pub fn parse_vector(s: &str) -> std::result::Result<IntVector, String> {
    s.split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| format!("'{t}' is not an integer")))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(IntVector::new)
}
