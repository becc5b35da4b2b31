//! Flat key=value configuration files with CLI-flag overrides.

use std::collections::HashMap;
use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use realign::{Error, Result};

/// Parsed key=value file. Blank lines and `#` comments are ignored.
pub struct Kv(HashMap<String, String>);

impl Kv {
    /// Loads a config file; `None` yields an empty map.
    pub fn load(path: Option<&Path>) -> Result<Kv> {
        let mut map = HashMap::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path)?;
            for (lineno, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    Error::Parse(format!(
                        "{}:{}: expected key=value, got `{line}`",
                        path.display(),
                        lineno + 1
                    ))
                })?;
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Kv(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: Display,
    {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| Error::Parse(format!("config key `{key}`: {e}"))),
        }
    }
}

/// Flag value, else config value, else the default.
pub fn pick<T: FromStr>(flag: Option<T>, kv: &Kv, key: &str, default: T) -> Result<T>
where
    T::Err: Display,
{
    Ok(match flag {
        Some(v) => v,
        None => kv.get(key)?.unwrap_or(default),
    })
}

/// Flag value, else config value, else `None`.
pub fn pick_opt<T: FromStr>(flag: Option<T>, kv: &Kv, key: &str) -> Result<Option<T>>
where
    T::Err: Display,
{
    Ok(match flag {
        Some(v) => Some(v),
        None => kv.get(key)?,
    })
}
