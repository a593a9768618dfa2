//! Front end for `mrb-core`: expression language, REPL and the helpers
//! behind the `mrb` subcommands.

pub mod error;
pub mod eval;
pub mod opcheck;
pub mod parse;
pub mod render;
pub mod repl;

pub use error::CliError;
pub use eval::{Format, Session, SessionConfig, Value, Weight};
pub use parse::{parse, Expr, ExprKind, ParseError, Pos};
