//! Simulation configuration: a flat TOML document.
//!
//! ```toml
//! space = "sphere"
//! m1 = 1.0
//! m2 = 1.0
//! q1 = [0.0, 0.0, 0.0]
//! q2 = [0.5, 0.0, 0.0]
//! q1dot = [0.0, 0.1, 0.0]
//! q2dot = [0.0, -0.1, 0.0]
//! potential = "coulomb"   # or "free", "oscillator"
//! alpha = 1.0
//! dt = 1e-3
//! steps = 1000
//! output_every = 1
//! seed = 0
//! ```
//!
//! `potential` may also be written as an inline table,
//! `potential = { kind = "oscillator", omega = 2.0 }`.

use std::str::FromStr;

use curvebody::dynamics::{IntegratorSettings, PotentialSpec};
use curvebody::{Masses, PhaseState, SpaceSign, Vec3};
use serde::Deserialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown key `{key}`")]
    UnknownKey { key: String },
    #[error("invalid value for `{key}`: {message}")]
    Validation { key: String, message: String },
}

impl ConfigError {
    fn invalid(key: &str, message: impl Into<String>) -> Self {
        ConfigError::Validation { key: key.to_string(), message: message.into() }
    }
}

const TOP_LEVEL: &[&str] = &[
    "space", "m1", "m2", "q1", "q2", "q1dot", "q2dot", "potential", "alpha", "omega", "dt", "steps",
    "output_every", "seed",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub space: SpaceSign,
    pub masses: Masses<f64>,
    pub state: PhaseState<f64>,
    pub potential: PotentialSpec<f64>,
    pub dt: f64,
    pub steps: usize,
    pub output_every: usize,
    pub seed: u64,
}

impl SimConfig {
    pub fn settings(&self) -> IntegratorSettings<f64> {
        IntegratorSettings { dt: self.dt, steps: self.steps, output_every: self.output_every }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PotentialField {
    Name(String),
    Table {
        kind: String,
        alpha: Option<f64>,
        omega: Option<f64>,
    },
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn get<'a>(table: &'a toml::Table, key: &str) -> Result<&'a toml::Value, ConfigError> {
    table.get(key).ok_or_else(|| ConfigError::invalid(key, "missing required key"))
}

fn number(table: &toml::Table, key: &str) -> Result<Option<f64>, ConfigError> {
    match table.get(key) {
        None => Ok(None),
        Some(toml::Value::Float(x)) => Ok(Some(*x)),
        Some(toml::Value::Integer(i)) => Ok(Some(*i as f64)),
        Some(other) => Err(ConfigError::invalid(key, format!("expected a number, found {}", other.type_str()))),
    }
}

fn required_number(table: &toml::Table, key: &str) -> Result<f64, ConfigError> {
    get(table, key)?;
    number(table, key).map(|x| x.unwrap_or_default())
}

fn integer(table: &toml::Table, key: &str) -> Result<Option<i64>, ConfigError> {
    match table.get(key) {
        None => Ok(None),
        Some(toml::Value::Integer(i)) => Ok(Some(*i)),
        Some(other) => Err(ConfigError::invalid(key, format!("expected an integer, found {}", other.type_str()))),
    }
}

fn triple(table: &toml::Table, key: &str) -> Result<Vec3<f64>, ConfigError> {
    let arr: [f64; 3] = get(table, key)?
        .clone()
        .try_into()
        .map_err(|_| ConfigError::invalid(key, "expected an array of three numbers"))?;
    if !arr.iter().all(|x| x.is_finite()) {
        return Err(ConfigError::invalid(key, "components must be finite"));
    }
    Ok(Vec3(arr))
}

fn positive(table: &toml::Table, key: &str) -> Result<f64, ConfigError> {
    let x = required_number(table, key)?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(ConfigError::invalid(key, format!("must be a finite number > 0, got {x}")));
    }
    Ok(x)
}

fn potential(table: &toml::Table) -> Result<PotentialSpec<f64>, ConfigError> {
    let field = match table.get("potential") {
        None => PotentialField::Name("free".into()),
        Some(v) => v
            .clone()
            .try_into()
            .map_err(|_| ConfigError::invalid("potential", "expected a name or a table with `kind`"))?,
    };
    let (kind, alpha, omega) = match field {
        PotentialField::Name(kind) => (kind, number(table, "alpha")?, number(table, "omega")?),
        PotentialField::Table { kind, alpha, omega } => {
            if table.contains_key("alpha") || table.contains_key("omega") {
                return Err(ConfigError::invalid(
                    "potential",
                    "parameters given both inside the potential table and at top level",
                ));
            }
            (kind, alpha, omega)
        }
    };
    let param = |key: &str, value: Option<f64>| -> Result<f64, ConfigError> {
        let v = value.ok_or_else(|| ConfigError::invalid(key, format!("required by potential `{kind}`")))?;
        if !v.is_finite() {
            return Err(ConfigError::invalid(key, "must be finite"));
        }
        Ok(v)
    };
    let unused = |key: &str, value: Option<f64>| -> Result<(), ConfigError> {
        match value {
            Some(_) => Err(ConfigError::invalid(key, format!("not used by potential `{kind}`"))),
            None => Ok(()),
        }
    };
    match kind.as_str() {
        "free" => {
            unused("alpha", alpha)?;
            unused("omega", omega)?;
            Ok(PotentialSpec::Free)
        }
        "coulomb" => {
            unused("omega", omega)?;
            Ok(PotentialSpec::Coulomb { alpha: param("alpha", alpha)? })
        }
        "oscillator" => {
            unused("alpha", alpha)?;
            Ok(PotentialSpec::Oscillator { omega: param("omega", omega)? })
        }
        other => Err(ConfigError::invalid(
            "potential",
            format!("unknown kind `{other}` (expected free, coulomb or oscillator)"),
        )),
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<SimConfig, ConfigError> {
    let table: toml::Table = toml::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.span().map(|s| line_of(text, s.start)).unwrap_or(1),
        message: e.message().to_string(),
    })?;
    if let Some(key) = table.keys().find(|k| !TOP_LEVEL.contains(&k.as_str())) {
        return Err(ConfigError::UnknownKey { key: key.clone() });
    }
    let space = match get(&table, "space")? {
        toml::Value::String(s) => SpaceSign::from_str(s)
            .map_err(|_| ConfigError::invalid("space", format!("expected \"sphere\" or \"hyperbolic\", got \"{s}\"")))?,
        other => return Err(ConfigError::invalid("space", format!("expected a string, found {}", other.type_str()))),
    };
    let m1 = positive(&table, "m1")?;
    let m2 = positive(&table, "m2")?;
    let (q1, q2) = (triple(&table, "q1")?, triple(&table, "q2")?);
    let (w1, w2) = (triple(&table, "q1dot")?, triple(&table, "q2dot")?);
    let dt = positive(&table, "dt")?;
    get(&table, "steps")?;
    let steps = integer(&table, "steps")?.unwrap_or_default();
    if steps < 1 {
        return Err(ConfigError::invalid("steps", format!("must be an integer >= 1, got {steps}")));
    }
    let output_every = integer(&table, "output_every")?.unwrap_or(1);
    if output_every < 1 {
        return Err(ConfigError::invalid("output_every", format!("must be an integer >= 1, got {output_every}")));
    }
    let seed = integer(&table, "seed")?.unwrap_or(0);
    if seed < 0 {
        return Err(ConfigError::invalid("seed", format!("must be an integer >= 0, got {seed}")));
    }
    let potential = potential(&table)?;
    let masses = Masses { m1, m2 };
    let point = |key: &str, v: Vec3<f64>| {
        curvebody::ChartPoint::new(v, space).map_err(|e| ConfigError::invalid(key, e.to_string()))
    };
    point("q1", q1)?;
    point("q2", q2)?;
    let state = PhaseState { v1: q1, v2: q2, w1, w2, sign: space };
    Ok(SimConfig {
        space,
        masses,
        state,
        potential,
        dt,
        steps: steps as usize,
        output_every: output_every as usize,
        seed: seed as u64,
    })
}
