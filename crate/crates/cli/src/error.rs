use std::fmt;

use crate::parse::{ParseError, Pos};

/// Everything the front end can fail with, mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    /// Input that parses but is not valid for the session, reported like a
    /// syntax error.
    Syntax(String),
    Eval {
        pos: Pos,
        message: String,
    },
    Usage(String),
    Io(std::io::Error),
    /// A check ran and found counterexamples.
    Verification(String),
}

impl CliError {
    pub fn eval(pos: Pos, message: impl Into<String>) -> Self {
        CliError::Eval {
            pos,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Syntax(m) => write!(f, "invalid input: {m}"),
            CliError::Eval { pos, message } => write!(f, "error at {pos}: {message}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<mrb_core::Error> for CliError {
    fn from(e: mrb_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}
