use movingcurves::text::ParseError;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("expression {index}: {source}")]
    Parse {
        index: usize,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Core(#[from] movingcurves::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { source, .. } => source.code(),
            CliError::Core(e) => e.code(),
            CliError::Usage(_) => "USAGE",
            CliError::Io(_) => "IO",
        }
    }

    /// 3 for a broken internal invariant, 2 for everything the caller can fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => 3,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut err = json!({
            "code": self.code(),
            "message": self.to_string(),
        });
        if let CliError::Parse { index, source } = self {
            err["expression"] = json!(index);
            match source {
                ParseError::Syntax { pos, .. } | ParseError::DivisionByZero(pos) => {
                    err["position"] = json!(pos);
                }
                ParseError::NotHomogeneous {
                    first_degree,
                    first_pos,
                    second_degree,
                    second_pos,
                } => {
                    err["position"] = json!(second_pos);
                    err["degrees"] = json!([[first_pos, first_degree], [second_pos, second_degree]]);
                }
            }
        }
        json!({ "error": err })
    }
}
