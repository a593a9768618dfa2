use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mrb_cli::eval::{Format, Session, SessionConfig, Weight};
use mrb_cli::render::render;
use mrb_cli::{opcheck, repl, CliError};
use mrb_core::stuffle::{count_j, enumerate_j, render_pair_table, stuffle_pair_product, Engine};
use mrb_core::verify::{self, Suite, SuiteConfig};
use mrb_core::{Monomial, Rational, TensorWord};

/// Free commutative modified Rota-Baxter algebras: evaluate, explore, verify.
#[derive(Parser)]
#[command(name = "mrb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one expression.
    Eval {
        #[arg(short = 'e', long = "expr", allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        session: SessionArgs,
    },
    /// Interactive session; reads expressions and `:set` directives from stdin.
    Repl {
        #[command(flatten)]
        session: SessionArgs,
    },
    /// Injection pairs behind the explicit product.
    Stuffle {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Overlap; all overlaps when omitted.
        #[arg(long)]
        r: Option<usize>,
        /// Print every pair with its deflation tables.
        #[arg(long)]
        list_pairs: bool,
        /// Print the number of pairs.
        #[arg(long)]
        count: bool,
    },
    /// Check an operator identity on seeded samples.
    Opcheck {
        /// Built-in instance name.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        instance: Option<String>,
        /// JSON instance table.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Args)]
struct SessionArgs {
    /// trivial, poly:x,y,... or laurent:e
    #[arg(long, default_value = "trivial")]
    base: String,
    /// Weight of the product.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "lambda")]
    kappa: Option<String>,
    /// Hopf mode with weight -lambda^2 (default lambda = 1).
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// recursive, stuffle, cross-check or auto
    #[arg(long, default_value = "auto")]
    engine: String,
    /// text or json
    #[arg(long, default_value = "text")]
    format: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn rational(s: &str, what: &str) -> Result<Rational, CliError> {
    s.parse()
        .map_err(|_| CliError::Usage(format!("{what} `{s}` is not a rational number")))
}

impl SessionArgs {
    fn config(&self) -> Result<SessionConfig, CliError> {
        let weight = match (&self.kappa, &self.lambda) {
            (Some(k), _) => Weight::Kappa(rational(k, "kappa")?),
            (None, Some(l)) => Weight::Lambda(rational(l, "lambda")?),
            (None, None) => Weight::Lambda(Rational::one()),
        };
        Ok(SessionConfig {
            base: self.base.parse()?,
            weight,
            engine: self.engine.parse::<Engine>()?,
            format: self.format.parse::<Format>()?,
            seed: seed_override(self.seed)?,
        })
    }
}

/// `MRB_SEED`, when set, takes precedence over the seed flags.
fn seed_override(flag: u64) -> Result<u64, CliError> {
    match std::env::var("MRB_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("MRB_SEED=`{s}` is not a nonnegative integer"))),
        Err(_) => Ok(flag),
    }
}

fn symbolic_word(prefix: &str, len: usize) -> TensorWord {
    let slots = (0..len)
        .map(|i| Monomial::var(&format!("{prefix}{i}")))
        .collect();
    TensorWord::new(slots).expect("nonempty")
}

fn stuffle_cmd(
    m: usize,
    n: usize,
    r: Option<usize>,
    list: bool,
    count: bool,
) -> Result<(), CliError> {
    let overlaps: Vec<usize> = match r {
        Some(r) => vec![r],
        None => (0..=m.min(n)).collect(),
    };
    let mut out = io::stdout().lock();
    let mut total = Rational::zero();
    for &r in &overlaps {
        let pairs = enumerate_j(m, n, r)?;
        let expected = count_j(m, n, r)?;
        total += &Rational::from(pairs.len() as i64);
        if count || !list {
            writeln!(
                out,
                "|J({m},{n},{r})| = {} (formula {expected})",
                pairs.len()
            )?;
        }
        if list {
            let (a, b) = (symbolic_word("a", m + 1), symbolic_word("b", n + 1));
            for p in &pairs {
                write!(out, "{}", render_pair_table(p))?;
                writeln!(out, "product   {}\n", stuffle_pair_product(&a, &b, p)?)?;
            }
        }
    }
    if overlaps.len() > 1 && (count || !list) {
        writeln!(out, "|J({m},{n})| = {total}")?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval { expr, session } => {
            let s = Session::new(session.config()?)?;
            let v = s.eval_str(&expr)?;
            println!("{}", render(&v, s.config().format));
        }
        Command::Repl { session } => {
            let mut s = Session::new(session.config()?)?;
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            let errors = repl::run(
                &mut s,
                stdin.lock(),
                &mut io::stdout(),
                &mut io::stderr(),
                prompt,
            )?;
            if errors > 0 && !prompt {
                return Err(CliError::Usage(format!("{errors} input line(s) failed")));
            }
        }
        Command::Stuffle {
            m,
            n,
            r,
            list_pairs,
            count,
        } => stuffle_cmd(m, n, r, list_pairs, count)?,
        Command::Opcheck {
            instance,
            file,
            samples,
            seed,
        } => {
            let seed = seed_override(seed)?;
            let loaded = match (instance, file) {
                (Some(name), _) => opcheck::builtin(&name, samples, seed)?,
                (None, Some(path)) => opcheck::from_json(&std::fs::read_to_string(path)?)?,
                (None, None) => unreachable!("clap requires one of --instance, --file"),
            };
            let outcome = opcheck::run(&loaded, samples, seed);
            print!("{}", outcome.render(&loaded.name));
            if !outcome.passed() {
                return Err(CliError::Verification(format!("instance {}", loaded.name)));
            }
        }
        Command::Verify {
            suite,
            seed,
            samples,
        } => {
            let suite: Suite = suite.parse()?;
            let cfg = SuiteConfig {
                seed: seed_override(seed)?,
                samples,
            };
            let report = verify::run(suite, cfg);
            println!("{report}");
            if !report.passed() {
                return Err(CliError::Verification(format!("suite {suite}")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mrb: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn negative_weights_parse() {
        let cli = Cli::try_parse_from(["mrb", "eval", "-e", "u_1*u_1", "--kappa", "-1"]).unwrap();
        let Command::Eval { session, .. } = cli.command else {
            panic!()
        };
        assert_eq!(
            session.config().unwrap().weight,
            Weight::Kappa(Rational::from(-1))
        );
        assert!(
            Cli::try_parse_from(["mrb", "eval", "-e", "u_0", "--kappa", "1", "--lambda", "1"])
                .is_err()
        );
    }
}
