//! Flat TOML config files. Keys mirror the long flag names (`grid-theta` or
//! `grid_theta`); anything given on the command line wins.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Default)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.replace('_', "-")
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("--config: cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Usage(format!("--config {}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| e.message().to_string())?;
        let mut values = BTreeMap::new();
        for (key, value) in table {
            let rendered = match value {
                toml::Value::String(s) => s,
                toml::Value::Integer(i) => i.to_string(),
                toml::Value::Float(f) => f.to_string(),
                toml::Value::Boolean(b) => b.to_string(),
                other => return Err(format!("key `{key}` must be a scalar, got {}", other.type_str())),
            };
            values.insert(normalize(&key), rendered);
        }
        Ok(Self { values })
    }

    /// Rejects keys that the running subcommand does not understand.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<(), CliError> {
        match self.values.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(CliError::Usage(format!(
                "--config: unknown key `{k}` for this command (expected one of: {})",
                allowed.join(", ")
            ))),
            None => Ok(()),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&String, &String)> {
        self.values.iter()
    }

    /// Command-line value if present, else the parsed file value.
    pub fn pick_with<T>(
        &self,
        cli: Option<T>,
        key: &str,
        parse: impl Fn(&str) -> Result<T, String>,
    ) -> Result<Option<T>, CliError> {
        if cli.is_some() {
            return Ok(cli);
        }
        self.values
            .get(key)
            .map(|raw| parse(raw).map_err(|e| CliError::Usage(format!("--{key}: {e}"))))
            .transpose()
    }

    pub fn pick<T: FromStr>(&self, cli: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.pick_with(cli, key, |raw| raw.parse::<T>().map_err(|e| format!("invalid value `{raw}`: {e}")))
    }

    /// Switches: set on the command line, or `true` in the file.
    pub fn flag(&self, cli: bool, key: &str) -> Result<bool, CliError> {
        Ok(cli || self.pick::<bool>(None, key)?.unwrap_or(false))
    }
}
