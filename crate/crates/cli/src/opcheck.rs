//! Operator instances for `mrb opcheck`: built-in names and JSON tables.

use std::fmt::Write as _;

use mrb_core::operators::{
    check_mrb, check_rb, laurent_carrier, laurent_pole_rb, laurent_split, named_rule, negate,
    rb_to_mrb, scalar_mrb, IdentityReport, LinearOperator, OperatorInstance,
};
use mrb_core::{BaseAlgebra, BaseElement, BaseInstance, Monomial, Rational};
use serde_json::Value as Json;

use crate::error::CliError;
use crate::eval::{Session, SessionConfig, Value, Weight};

/// Which identity an instance is meant to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    Mrb,
    Rb,
}

pub struct LoadedInstance {
    pub name: String,
    pub inst: OperatorInstance<BaseAlgebra>,
    pub identity: IdentityKind,
    /// Also check `P² = id` on `ε^k`, `|k| ≤ 3`.
    pub involutive: bool,
}

pub const BUILTIN_NAMES: &str =
    "laurent-split, laurent-split-negated, laurent-pole, laurent-pole-mrb, identity, scalar:<lambda>";

pub fn builtin(name: &str, samples: usize, seed: u64) -> Result<LoadedInstance, CliError> {
    let carrier = laurent_carrier();
    let loaded = |inst, identity, involutive| LoadedInstance {
        name: name.to_string(),
        inst,
        identity,
        involutive,
    };
    Ok(match name {
        "laurent-split" => loaded(laurent_split(&carrier), IdentityKind::Mrb, true),
        "laurent-split-negated" => {
            loaded(negate(&laurent_split(&carrier)), IdentityKind::Mrb, true)
        }
        "laurent-pole" => loaded(laurent_pole_rb(&carrier), IdentityKind::Rb, false),
        "laurent-pole-mrb" => loaded(
            rb_to_mrb(&laurent_pole_rb(&carrier), samples, seed)?,
            IdentityKind::Mrb,
            true,
        ),
        "identity" => loaded(
            OperatorInstance::new(
                carrier.clone(),
                LinearOperator::identity(&carrier),
                Rational::from(-1),
            ),
            IdentityKind::Mrb,
            true,
        ),
        other => match other.strip_prefix("scalar:") {
            Some(l) => {
                let lambda: Rational = l.parse().map_err(|_| {
                    CliError::Usage(format!("bad scalar `{l}` in instance `{other}`"))
                })?;
                loaded(scalar_mrb(&carrier, &lambda), IdentityKind::Mrb, false)
            }
            None => {
                return Err(CliError::Usage(format!(
                    "unknown instance `{other}` (expected one of {BUILTIN_NAMES})"
                )))
            }
        },
    })
}

fn field<'a>(obj: &'a serde_json::Map<String, Json>, key: &str) -> Option<&'a Json> {
    obj.get(key)
}

fn as_str<'a>(v: &'a Json, what: &str) -> Result<&'a str, CliError> {
    v.as_str()
        .ok_or_else(|| CliError::Usage(format!("`{what}` must be a string")))
}

/// Loads `{"base": .., "images": {monomial: expr}, "default": rule,
/// "weight": rational, "identity": "mrb" | "rb"}`.
pub fn from_json(text: &str) -> Result<LoadedInstance, CliError> {
    let root: Json = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("invalid instance JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| CliError::Usage("instance JSON must be an object".into()))?;
    for key in obj.keys() {
        if !["base", "images", "default", "weight", "identity", "name"].contains(&key.as_str()) {
            return Err(CliError::Usage(format!(
                "unknown key `{key}` in instance JSON"
            )));
        }
    }
    let base: BaseInstance = match field(obj, "base") {
        Some(b) => as_str(b, "base")?.parse()?,
        None => BaseInstance::laurent("e"),
    };
    let weight: Rational = match field(obj, "weight") {
        Some(Json::String(s)) => s
            .parse()
            .map_err(|_| CliError::Usage(format!("bad weight `{s}`")))?,
        Some(Json::Number(n)) => n.as_i64().map(Rational::from).ok_or_else(|| {
            CliError::Usage(format!("weight {n} must be an integer or a \"p/q\" string"))
        })?,
        Some(_) => {
            return Err(CliError::Usage(
                "`weight` must be a string or integer".into(),
            ))
        }
        None => Rational::from(-1),
    };
    let identity = match field(obj, "identity")
        .map(|v| as_str(v, "identity"))
        .transpose()?
    {
        None | Some("mrb") => IdentityKind::Mrb,
        Some("rb") => IdentityKind::Rb,
        Some(other) => {
            return Err(CliError::Usage(format!(
                "unknown identity `{other}` (expected mrb or rb)"
            )))
        }
    };
    let carrier = BaseAlgebra::new(base.clone());
    let default = match field(obj, "default") {
        Some(d) => named_rule(as_str(d, "default")?, &carrier)?,
        None => named_rule("zero", &carrier)?,
    };

    let session = Session::new(SessionConfig {
        base: base.clone(),
        weight: Weight::Kappa(weight.clone()),
        ..SessionConfig::default()
    })?;
    let mut table: Vec<(Monomial, BaseElement)> = Vec::new();
    if let Some(images) = field(obj, "images") {
        let images = images
            .as_object()
            .ok_or_else(|| CliError::Usage("`images` must be an object".into()))?;
        for (key, val) in images {
            let key_val = session.eval_str(key)?;
            let m = match key_val {
                Value::Base(b) => single_monomial(&b),
                Value::Scalar(c) if c.is_one() => Some(Monomial::one()),
                _ => None,
            }
            .ok_or_else(|| {
                CliError::Usage(format!("image key `{key}` must be a single monomial"))
            })?;
            let img = match session.eval_str(as_str(val, "image")?)? {
                Value::Base(b) => b,
                Value::Scalar(c) => BaseElement::constant(&base, c),
                _ => {
                    return Err(CliError::Usage(format!(
                        "image of `{key}` must be a base element"
                    )))
                }
            };
            table.push((m, img));
        }
    }
    let name = match field(obj, "name") {
        Some(n) => as_str(n, "name")?.to_string(),
        None => "json".to_string(),
    };
    let op = default.with_table(table);
    Ok(LoadedInstance {
        name,
        inst: OperatorInstance::new(carrier, op, weight),
        identity,
        involutive: false,
    })
}

fn single_monomial(b: &BaseElement) -> Option<Monomial> {
    let mut it = b.terms().iter();
    match (it.next(), it.next()) {
        (Some((m, c)), None) if c.is_one() => Some(m.clone()),
        _ => None,
    }
}

pub struct OpcheckOutcome {
    pub report: IdentityReport,
    /// `None` when involution was not checked.
    pub involution: Option<Vec<String>>,
}

impl OpcheckOutcome {
    pub fn passed(&self) -> bool {
        self.report.passed() && self.involution.as_ref().is_none_or(Vec::is_empty)
    }

    pub fn render(&self, name: &str) -> String {
        let status = |ok: bool| if ok { "PASS" } else { "FAIL" };
        let mut out = format!("{} {name}: {}\n", status(self.report.passed()), self.report);
        if let Some(failures) = &self.involution {
            let _ = write!(
                out,
                "{} involution on e^k, |k| <= 3",
                status(failures.is_empty())
            );
            if let Some(first) = failures.first() {
                let _ = write!(out, ": {first}");
            }
            out.push('\n');
        }
        out
    }
}

pub fn run(loaded: &LoadedInstance, samples: usize, seed: u64) -> OpcheckOutcome {
    let report = match loaded.identity {
        IdentityKind::Mrb => check_mrb(&loaded.inst, samples, seed),
        IdentityKind::Rb => check_rb(&loaded.inst, samples, seed),
    };
    let involution = loaded.involutive.then(|| {
        let carrier = loaded.inst.carrier();
        (-3..=3)
            .filter_map(|k| {
                let e = carrier.power(k);
                let back = loaded.inst.apply(&loaded.inst.apply(&e));
                (back != e).then(|| format!("P(P({e})) = {back}"))
            })
            .collect()
    });
    OpcheckOutcome { report, involution }
}
