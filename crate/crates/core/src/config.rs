//! One JSON document configures everything: pitch, ball drag, agent
//! constants (keyed by their conventional names), both fuzzy rule bases,
//! the formation and the simulator. A user file only needs the keys it
//! changes; everything else falls back to the built-in `config/default.json`.

use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::ball::DragModel;
use crate::fuzzy::FuzzySystems;
use crate::sim::SimSettings;
use crate::team::Formation;
use crate::world::{FieldSpec, Params};

const BUILTIN: &str = include_str!("../config/default.json");

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("config key `{key}`: {msg}")]
    Key { key: String, msg: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default, rename = "_notes", skip_serializing)]
    pub notes: Value,
    pub field: FieldSpec,
    pub drag: DragModel,
    pub params: Params,
    pub fuzzy: FuzzySystems,
    pub formation: Formation,
    pub sim: SimSettings,
}

impl Config {
    /// The shipped defaults.
    pub fn builtin() -> &'static Config {
        static CELL: OnceLock<Config> = OnceLock::new();
        CELL.get_or_init(|| {
            let value: Value = serde_json::from_str(BUILTIN).expect("built-in config parses");
            Config::from_value(value).expect("built-in config is valid")
        })
    }

    pub fn builtin_json() -> &'static str {
        BUILTIN
    }

    /// Parses a (possibly partial) config document layered over the defaults.
    pub fn from_json_str(text: &str) -> Result<Config, ConfigError> {
        let overlay: Value = serde_json::from_str(text).map_err(|e| ConfigError::Syntax {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        if !overlay.is_object() {
            return Err(ConfigError::Key { key: "<root>".into(), msg: "expected a JSON object".into() });
        }
        let mut base: Value = serde_json::from_str(BUILTIN).expect("built-in config parses");
        merge(&mut base, overlay);
        Config::from_value(base)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Config, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Config::from_json_str(&text)
    }

    fn from_value(value: Value) -> Result<Config, ConfigError> {
        let config: Config = serde_path_to_error::deserialize(value).map_err(|e| ConfigError::Key {
            key: e.path().to_string(),
            msg: e.inner().to_string(),
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let key = |section: &str, msg: String| {
            // Messages from params name their own key first.
            let (k, m) = match msg.split_once(' ') {
                Some((first, rest)) if section == "params" => (format!("params.{first}"), rest.to_owned()),
                _ => (section.to_owned(), msg),
            };
            ConfigError::Key { key: k, msg: m }
        };
        self.field.validate().map_err(|m| key("field", m))?;
        self.drag.validate().map_err(|m| key("drag", m))?;
        self.params.validate().map_err(|m| key("params", m))?;
        self.fuzzy.validate().map_err(|m| key("fuzzy", m))?;
        self.sim.validate().map_err(|m| key("sim", m))?;
        Ok(())
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Recursive object merge; scalars and arrays in `overlay` replace `base`.
fn merge(base: &mut Value, overlay: Value) {
    match (base, overlay) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}
