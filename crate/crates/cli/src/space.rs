//! Space descriptions and function literals.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use cmeasure::complemented_sets::{GroundSet, IndicatorFn, SetError};
use cmeasure::completion::{CompletionError, Representation};
use cmeasure::premeasure::{
    dirac, explicit_measure, weighted_counting, PreMeasureSpace, SpaceError,
};
use cmeasure::rational::{parse_rational, ParseRationalError, Rational};
use cmeasure::simple_functions::SimpleFunction;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational: {0}")]
    Rational(#[from] ParseRationalError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Completion(#[from] CompletionError),
    #[error("{0}")]
    Literal(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDescription {
    pub ground_set: Vec<String>,
    pub measure: MeasureDescription,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MeasureDescription {
    Dirac {
        point: String,
    },
    Weighted {
        weights: BTreeMap<String, String>,
    },
    /// Measure tabulated per indicator bitstring; meant for mutants.
    Explicit {
        values: BTreeMap<String, String>,
        #[serde(default = "zero_string")]
        default: String,
    },
}

fn zero_string() -> String {
    "0".to_string()
}

fn rational_table(table: &BTreeMap<String, String>) -> Result<Vec<(String, Rational)>, InputError> {
    table
        .iter()
        .map(|(k, v)| Ok((k.clone(), parse_rational(v)?)))
        .collect()
}

impl SpaceDescription {
    pub fn build(&self) -> Result<PreMeasureSpace, InputError> {
        let ground = GroundSet::new(self.ground_set.iter().cloned())?;
        let space = match &self.measure {
            MeasureDescription::Dirac { point } => dirac(&ground, point)?,
            MeasureDescription::Weighted { weights } => {
                weighted_counting(&ground, &rational_table(weights)?)?
            }
            MeasureDescription::Explicit { values, default } => {
                explicit_measure(&ground, &rational_table(values)?, parse_rational(default)?)?
            }
        };
        Ok(space)
    }
}

pub fn load_space(path: &Path) -> Result<PreMeasureSpace, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let desc: SpaceDescription = serde_json::from_str(&text)?;
    desc.build()
}

/// Inline JSON, or `@path` to read it from a file.
fn literal_json(text: &str) -> Result<Value, InputError> {
    let text = match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|source| InputError::Io {
            path: path.to_string(),
            source,
        })?,
        None => text.to_string(),
    };
    Ok(serde_json::from_str(&text)?)
}

/// `[["3/2", "101"], ["-1", "011"]]`.
pub fn simple_from_value(
    space: &PreMeasureSpace,
    value: &Value,
) -> Result<SimpleFunction, InputError> {
    let pairs: Vec<(String, String)> = serde_json::from_value(value.clone()).map_err(|_| {
        InputError::Literal("a simple function is a list of [coefficient, bitstring] pairs".into())
    })?;
    let mut terms = Vec::with_capacity(pairs.len());
    for (coeff, bits) in pairs {
        let f = IndicatorFn::from_bitstring(space.ground(), &bits)?;
        let i = space
            .index_of_label(&f.to_bitstring())
            .ok_or_else(|| InputError::Literal(format!("no index named {bits:?}")))?;
        terms.push((parse_rational(&coeff)?, i));
    }
    Ok(SimpleFunction::new(terms))
}

pub fn parse_simple(space: &PreMeasureSpace, text: &str) -> Result<SimpleFunction, InputError> {
    simple_from_value(space, &literal_json(text)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometricLiteral {
    base: Value,
    ratio: String,
}

/// `{"support": [...]}` or `{"geometric": {"base": [...], "ratio": "1/2"}}`.
pub fn parse_rep(space: &PreMeasureSpace, text: &str) -> Result<Representation, InputError> {
    let value = literal_json(text)?;
    let obj = value.as_object().filter(|o| o.len() == 1).ok_or_else(|| {
        InputError::Literal("a representation is {\"support\": ..} or {\"geometric\": ..}".into())
    })?;
    if let Some(support) = obj.get("support") {
        let items = support.as_array().ok_or_else(|| {
            InputError::Literal("support must be a list of simple functions".into())
        })?;
        let terms = items
            .iter()
            .map(|v| simple_from_value(space, v))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Representation::finite(space, terms));
    }
    if let Some(g) = obj.get("geometric") {
        let g: GeometricLiteral = serde_json::from_value(g.clone())?;
        let base = simple_from_value(space, &g.base)?;
        return Ok(Representation::geometric(
            space,
            &base,
            &parse_rational(&g.ratio)?,
        )?);
    }
    Err(InputError::Literal(
        "a representation is {\"support\": ..} or {\"geometric\": ..}".into(),
    ))
}
