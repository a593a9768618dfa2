//! Line-oriented session loop with `:set` directives.

use std::io::{BufRead, Write};

use mrb_core::{BaseInstance, Rational};

use crate::error::CliError;
use crate::eval::{Session, Weight};
use crate::render::render;

const HELP: &str = "\
expressions: u_k, [a|b|...], + - * /, ^, P(e), coprod(e), counit(e), antipode(e), lift(target, e)
:set base trivial | poly:x,y | laurent:e
:set kappa <q>     :set lambda <q>
:set engine recursive | stuffle | cross-check | auto
:set format text | json
:set seed <n>
:show   :help   :quit";

/// Applies one `:` directive. Returns `Ok(false)` on `:quit`.
pub fn directive(
    session: &mut Session,
    line: &str,
    out: &mut impl Write,
) -> Result<bool, CliError> {
    let words: Vec<&str> = line.split_whitespace().collect();
    let bad = |why: String| CliError::Usage(why);
    match words.as_slice() {
        [":quit" | ":q" | ":exit"] => return Ok(false),
        [":help"] => writeln!(out, "{HELP}")?,
        [":show"] => writeln!(out, "{}", session.config())?,
        [":set", key, value] => {
            let mut cfg = session.config().clone();
            match *key {
                "base" => cfg.base = value.parse::<BaseInstance>()?,
                "kappa" => cfg.weight = Weight::Kappa(parse_rational(value)?),
                "lambda" => cfg.weight = Weight::Lambda(parse_rational(value)?),
                "engine" => cfg.engine = value.parse()?,
                "format" => cfg.format = value.parse()?,
                "seed" => {
                    cfg.seed = value
                        .parse()
                        .map_err(|_| bad(format!("bad seed `{value}`")))?
                }
                other => return Err(bad(format!("unknown setting `{other}`"))),
            }
            session.reconfigure(cfg)?;
            writeln!(out, "{}", session.config())?;
        }
        _ => return Err(bad(format!("unknown directive `{line}` (try :help)"))),
    }
    Ok(true)
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.parse()
        .map_err(|_| CliError::Usage(format!("`{s}` is not a rational number")))
}

/// Runs until end of input or `:quit`. Errors are printed and the loop
/// continues; the return value counts them.
pub fn run(
    session: &mut Session,
    input: impl BufRead,
    out: &mut impl Write,
    err: &mut impl Write,
    prompt: bool,
) -> Result<usize, CliError> {
    let mut errors = 0;
    if prompt {
        write!(out, "mrb> ")?;
        out.flush()?;
    }
    for line in input.lines() {
        let line = line?;
        let trimmed = line.trim();
        let result = if trimmed.is_empty() || trimmed.starts_with('#') {
            Ok(true)
        } else if trimmed.starts_with(':') {
            directive(session, trimmed, out)
        } else {
            session.eval_str(trimmed).and_then(|v| {
                writeln!(out, "{}", render(&v, session.config().format))?;
                Ok(true)
            })
        };
        match result {
            Ok(true) => {}
            Ok(false) => break,
            Err(e) => {
                errors += 1;
                writeln!(err, "{e}")?;
            }
        }
        if prompt {
            write!(out, "mrb> ")?;
            out.flush()?;
        }
    }
    Ok(errors)
}
