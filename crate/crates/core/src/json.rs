//! Versioned JSON envelope `{schema_version, kind, payload}` and output formats.

use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: String,
    pub kind: String,
    pub payload: T,
}

pub fn to_json<T: Serialize>(kind: &str, payload: &T) -> Result<String> {
    let env = Envelope {
        schema_version: SCHEMA_VERSION.to_string(),
        kind: kind.to_string(),
        payload,
    };
    let mut s = serde_json::to_string_pretty(&env).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Parse an envelope, checking the version and the kind.
pub fn from_json<T: DeserializeOwned>(kind: &str, text: &str) -> Result<T> {
    let env: Envelope<T> =
        serde_json::from_str(text).map_err(|e| Error::InvalidData(e.to_string()))?;
    if env.schema_version != SCHEMA_VERSION {
        return Err(Error::InvalidData(format!(
            "unsupported schema version {}",
            env.schema_version
        )));
    }
    if env.kind != kind {
        return Err(Error::InvalidData(format!(
            "expected a `{kind}` document, found `{}`",
            env.kind
        )));
    }
    Ok(env.payload)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Latex,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "latex" => Ok(OutputFormat::Latex),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::lookup;

    #[test]
    fn envelope_round_trip() {
        let f = lookup("E3").unwrap();
        let text = to_json("family", &f).unwrap();
        assert!(text.contains("\"schema_version\": \"1\""));
        let back: crate::classify::FamilyDescriptor = from_json("family", &text).unwrap();
        assert_eq!(back, f);
        assert!(from_json::<crate::classify::FamilyDescriptor>("model", &text).is_err());
    }

    #[test]
    fn formats() {
        assert_eq!(
            "latex".parse::<OutputFormat>().unwrap(),
            OutputFormat::Latex
        );
        assert_eq!(
            "xml".parse::<OutputFormat>(),
            Err(Error::UnknownFormat("xml".into()))
        );
    }
}
