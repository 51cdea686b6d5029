use std::fmt;

use serde_json::{json, Value};

#[derive(Debug)]
pub enum CliError {
    Domain { error: wedgecalc::Error, hint: Option<String> },
    Io { path: String, message: String },
}

impl CliError {
    pub fn hinted(error: wedgecalc::Error, hint: impl Into<String>) -> Self {
        CliError::Domain {
            error,
            hint: Some(hint.into()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CliError::Domain { error, .. } => error.name(),
            CliError::Io { .. } => "IoError",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain { error, .. } if !error.is_parse_error() => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = match self {
            CliError::Domain { error, .. } => serde_json::to_value(error).expect("errors serialize"),
            CliError::Io { path, .. } => json!({ "error": "IoError", "path": path }),
        };
        v["message"] = json!(self.message());
        if let CliError::Domain { hint: Some(h), .. } = self {
            v["hint"] = json!(h);
        }
        v
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Domain { error, .. } => error.to_string(),
            CliError::Io { path, message } => format!("{path}: {message}"),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: {}: {}", self.name(), self.message())?;
        if let CliError::Domain { hint: Some(h), .. } = self {
            write!(f, "\nhint: {h}")?;
        }
        Ok(())
    }
}

impl From<wedgecalc::Error> for CliError {
    fn from(error: wedgecalc::Error) -> Self {
        CliError::Domain { error, hint: None }
    }
}
