//! Scenario files.
//!
//! ```json
//! {"kind": "matrix", "n": 2, "entries": [1, 0, 0, 1], "f": [1, 0], "c": 1,
//!  "lambda0": [1], "actions": ["classify", "verify"], "format": "json"}
//! {"kind": "dirichlet", "alpha": 1, "N": 400, "actions": ["classify", "roots"]}
//! ```

use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Action {
    Classify,
    Roots,
    Verify,
    SecularCurve,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixScenario {
    pub n: usize,
    pub entries: Vec<f64>,
    pub f: Vec<f64>,
    pub c: f64,
    #[serde(default)]
    pub lambda0: Option<Vec<f64>>,
    pub actions: Vec<Action>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirichletScenario {
    pub alpha: f64,
    #[serde(rename = "N", alias = "n")]
    pub nodes: usize,
    pub actions: Vec<Action>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scenario {
    Matrix(MatrixScenario),
    Dirichlet(DirichletScenario),
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Matrix(_) => "matrix",
            Scenario::Dirichlet(_) => "dirichlet",
        }
    }

    pub fn actions(&self) -> &[Action] {
        match self {
            Scenario::Matrix(m) => &m.actions,
            Scenario::Dirichlet(d) => &d.actions,
        }
    }

    pub fn format(&self) -> Option<Format> {
        match self {
            Scenario::Matrix(m) => m.format,
            Scenario::Dirichlet(d) => d.format,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Scenario::Matrix(m) => m.seed,
            Scenario::Dirichlet(d) => d.seed,
        }
    }

    pub fn wants(&self, a: Action) -> bool {
        self.actions().contains(&a)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("scenario is not valid JSON: {e}")))?;
        let kind = match value.get("kind") {
            Some(serde_json::Value::String(k)) => k.clone(),
            Some(_) => return Err(CliError::Input("kind: expected a string".into())),
            None => return Err(CliError::Input("kind: missing field".into())),
        };
        let mut body = value;
        if let Some(obj) = body.as_object_mut() {
            obj.remove("kind");
        }
        let scenario = match kind.as_str() {
            "matrix" => Scenario::Matrix(typed(body)?),
            "dirichlet" => Scenario::Dirichlet(typed(body)?),
            other => {
                return Err(CliError::Input(format!(
                    "kind: unknown variant `{other}`, expected `matrix` or `dirichlet`"
                )))
            }
        };
        if scenario.actions().is_empty() {
            return Err(CliError::Input("actions: must not be empty".into()));
        }
        Ok(scenario)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

fn typed<T: DeserializeOwned>(body: serde_json::Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(body).map_err(|e| {
        let path = e.path().to_string();
        CliError::Input(format!("{path}: {}", e.into_inner()))
    })
}
