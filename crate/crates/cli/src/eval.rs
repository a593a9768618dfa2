//! Session configuration and evaluation of parsed expressions.

use std::fmt;

use mrb_core::algebra::Algebra;
use mrb_core::hopf::SquareAlgebra;
use mrb_core::operators::{
    free_operator, laurent_carrier, laurent_split, scalar_mrb, LinearOperator,
};
use mrb_core::stuffle::{multiply, Engine};
use mrb_core::{
    operator_p, BaseAlgebra, BaseElement, BaseInstance, BaseMap, FreeMrbAlgebra, HopfContext,
    Monomial, MrbContext, MrbElement, MrbSquare, OperatorInstance, Rational,
};

use crate::error::CliError;
use crate::parse::{parse, Expr, ExprKind, Pos};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(CliError::Usage(format!(
                "unknown format `{other}` (expected text or json)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
        })
    }
}

/// The weight is given either directly or as `κ = −λ²`.
#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Kappa(Rational),
    Lambda(Rational),
}

impl Weight {
    pub fn kappa(&self) -> Rational {
        match self {
            Weight::Kappa(k) => k.clone(),
            Weight::Lambda(l) => -(l * l),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SessionConfig {
    pub base: BaseInstance,
    pub weight: Weight,
    pub engine: Engine,
    pub format: Format,
    pub seed: u64,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            base: BaseInstance::Trivial,
            weight: Weight::Lambda(Rational::one()),
            engine: Engine::Auto,
            format: Format::Text,
            seed: 0,
        }
    }
}

impl fmt::Display for SessionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let weight = match &self.weight {
            Weight::Kappa(k) => format!("kappa {k}"),
            Weight::Lambda(l) => format!("lambda {l} (kappa {})", self.weight.kappa()),
        };
        write!(
            f,
            "base {}, {weight}, engine {}, format {}, seed {}",
            self.base, self.engine, self.format, self.seed
        )
    }
}

/// Result of an evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Rational),
    Base(BaseElement),
    Element(MrbElement),
    Square(MrbSquare),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "a scalar",
            Value::Base(_) => "a base element",
            Value::Element(_) => "an element",
            Value::Square(_) => "a tensor square element",
        }
    }
}

/// Configuration plus the contexts built from it. Contexts carry the
/// product and coproduct caches, so a session reuses them across inputs.
pub struct Session {
    cfg: SessionConfig,
    mrb: MrbContext,
    hopf: Option<HopfContext>,
}

impl Session {
    pub fn new(cfg: SessionConfig) -> Result<Self, CliError> {
        let mrb = MrbContext::new(cfg.base.clone(), cfg.weight.kappa());
        let hopf = match &cfg.weight {
            Weight::Lambda(l) if cfg.base.is_bialgebra() => {
                Some(HopfContext::new(cfg.base.clone(), l.clone())?)
            }
            _ => None,
        };
        Ok(Session { cfg, mrb, hopf })
    }

    pub fn config(&self) -> &SessionConfig {
        &self.cfg
    }

    pub fn reconfigure(&mut self, cfg: SessionConfig) -> Result<(), CliError> {
        *self = Session::new(cfg)?;
        Ok(())
    }

    pub fn eval_str(&self, src: &str) -> Result<Value, CliError> {
        let e = parse(src)?;
        self.eval(&e)
    }

    fn instance(&self) -> &BaseInstance {
        &self.cfg.base
    }

    fn hopf(&self, pos: Pos, op: &str) -> Result<&HopfContext, CliError> {
        self.hopf.as_ref().ok_or_else(|| {
            let why = if self.cfg.base.is_bialgebra() {
                "the weight was given as kappa; set lambda instead"
            } else {
                "the base carries no coalgebra structure"
            };
            CliError::eval(pos, format!("{op} needs a Hopf context: {why}"))
        })
    }

    fn to_element(&self, v: Value, pos: Pos) -> Result<MrbElement, CliError> {
        match v {
            Value::Scalar(c) => Ok(MrbElement::one(self.instance()).scale(&c)),
            Value::Base(b) => Ok(MrbElement::from_base(&b)),
            Value::Element(e) => Ok(e),
            Value::Square(_) => Err(CliError::eval(
                pos,
                "expected an element, found a tensor square element",
            )),
        }
    }

    fn to_base(&self, v: Value, pos: Pos) -> Result<BaseElement, CliError> {
        match v {
            Value::Scalar(c) => Ok(BaseElement::constant(self.instance(), c)),
            Value::Base(b) => Ok(b),
            other => Err(CliError::eval(
                pos,
                format!("word slots must be base elements, found {}", other.kind()),
            )),
        }
    }

    fn core<T>(&self, pos: Pos, r: mrb_core::Result<T>) -> Result<T, CliError> {
        r.map_err(|e| CliError::eval(pos, e.to_string()))
    }

    pub fn eval(&self, e: &Expr) -> Result<Value, CliError> {
        let pos = e.pos;
        match &e.kind {
            ExprKind::Num(c) => Ok(Value::Scalar(c.clone())),
            ExprKind::Atom(name) => {
                if !self.instance().has_generator(name) {
                    return Err(CliError::eval(
                        pos,
                        format!(
                            "unknown name `{name}`: not a generator of base {}",
                            self.instance()
                        ),
                    ));
                }
                Ok(Value::Base(self.core(
                    pos,
                    BaseElement::generator(self.instance(), name),
                )?))
            }
            ExprKind::U(k) => {
                if *self.instance() != BaseInstance::Trivial {
                    return Err(CliError::Syntax(format!(
                        "u_{k} at {pos}: u_k is only available over the trivial base (current base {})",
                        self.instance()
                    )));
                }
                Ok(Value::Element(MrbElement::u(*k)))
            }
            ExprKind::Word(slots) => {
                let mut bases = Vec::with_capacity(slots.len());
                for s in slots {
                    let v = self.eval(s)?;
                    bases.push(self.to_base(v, s.pos)?);
                }
                let elem = self.core(
                    pos,
                    MrbElement::normalize(self.instance(), [(Rational::one(), bases)]),
                )?;
                Ok(Value::Element(elem))
            }
            ExprKind::Neg(inner) => self.scale(Rational::from(-1), self.eval(inner)?),
            ExprKind::Add(a, b) => self.add(pos, self.eval(a)?, self.eval(b)?, false),
            ExprKind::Sub(a, b) => self.add(pos, self.eval(a)?, self.eval(b)?, true),
            ExprKind::Mul(a, b) => self.mul(pos, self.eval(a)?, self.eval(b)?),
            ExprKind::Div(a, b) => match self.eval(b)? {
                Value::Scalar(c) => match c.recip() {
                    Some(inv) => self.scale(inv, self.eval(a)?),
                    None => Err(CliError::eval(pos, "division by zero")),
                },
                other => Err(CliError::eval(
                    pos,
                    format!("can only divide by a scalar, found {}", other.kind()),
                )),
            },
            ExprKind::Pow(base, n) => self.pow(pos, base, *n),
            ExprKind::Call(name, args) => self.call(pos, name, args),
        }
    }

    fn scale(&self, c: Rational, v: Value) -> Result<Value, CliError> {
        Ok(match v {
            Value::Scalar(x) => Value::Scalar(&c * &x),
            Value::Base(b) => Value::Base(b.scale(&c)),
            Value::Element(e) => Value::Element(e.scale(&c)),
            Value::Square(s) => Value::Square(s.scale(&c)),
        })
    }

    fn add(&self, pos: Pos, a: Value, b: Value, subtract: bool) -> Result<Value, CliError> {
        let b = if subtract {
            self.scale(Rational::from(-1), b)?
        } else {
            b
        };
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x + &y)),
            (Value::Square(x), Value::Square(y)) => Ok(Value::Square(self.core(pos, x.add(&y))?)),
            (x @ Value::Square(_), y) | (y, x @ Value::Square(_)) => Err(CliError::eval(
                pos,
                format!("cannot add {} and {}", x.kind(), y.kind()),
            )),
            (x @ (Value::Scalar(_) | Value::Base(_)), y @ (Value::Scalar(_) | Value::Base(_))) => {
                let (x, y) = (self.to_base(x, pos)?, self.to_base(y, pos)?);
                Ok(Value::Base(self.core(pos, x.add(&y))?))
            }
            (x, y) => {
                let (x, y) = (self.to_element(x, pos)?, self.to_element(y, pos)?);
                Ok(Value::Element(self.core(pos, x.add(&y))?))
            }
        }
    }

    fn mul(&self, pos: Pos, a: Value, b: Value) -> Result<Value, CliError> {
        match (a, b) {
            (Value::Scalar(c), v) | (v, Value::Scalar(c)) => self.scale(c, v),
            (Value::Base(x), Value::Base(y)) => Ok(Value::Base(self.core(pos, x.mul(&y))?)),
            (Value::Square(x), Value::Square(y)) => {
                self.core(
                    pos,
                    self.mrb_instance_check(&x).and(self.mrb_instance_check(&y)),
                )?;
                Ok(Value::Square(
                    SquareAlgebra::new(self.mrb.clone()).mul(&x, &y),
                ))
            }
            (x @ Value::Square(_), y) | (y, x @ Value::Square(_)) => Err(CliError::eval(
                pos,
                format!("cannot multiply {} by {}", x.kind(), y.kind()),
            )),
            (x, y) => {
                let (x, y) = (self.to_element(x, pos)?, self.to_element(y, pos)?);
                Ok(Value::Element(
                    self.core(pos, multiply(&self.mrb, &x, &y, self.cfg.engine))?,
                ))
            }
        }
    }

    fn mrb_instance_check(&self, s: &MrbSquare) -> mrb_core::Result<()> {
        if s.instance() == self.instance() {
            Ok(())
        } else {
            Err(mrb_core::Error::InstanceMismatch {
                left: self.instance().to_string(),
                right: s.instance().to_string(),
            })
        }
    }

    fn pow(&self, pos: Pos, base: &Expr, n: i32) -> Result<Value, CliError> {
        let v = self.eval(base)?;
        match v {
            Value::Scalar(c) => {
                if c.is_zero() && n < 0 {
                    return Err(CliError::eval(pos, "zero to a negative power"));
                }
                Ok(Value::Scalar(c.pow(n)))
            }
            Value::Base(b) => {
                // a bare monomial takes any exponent its base allows
                if let [(m, c)] = b.terms().iter().collect::<Vec<_>>().as_slice() {
                    if c.is_one() {
                        let powered =
                            Monomial::from_exponents(m.exponents().map(|(g, e)| (g, e * n)));
                        return Ok(Value::Base(
                            self.core(pos, BaseElement::monomial(self.instance(), powered))?,
                        ));
                    }
                }
                if n < 0 {
                    return Err(CliError::eval(
                        pos,
                        "negative powers apply to single monomials only",
                    ));
                }
                Ok(Value::Base(self.core(pos, b.pow(n as u32))?))
            }
            Value::Element(e) => {
                if n < 0 {
                    return Err(CliError::eval(
                        pos,
                        "negative powers of elements are undefined",
                    ));
                }
                let mut acc = MrbElement::one(self.instance());
                for _ in 0..n {
                    acc = self.core(pos, multiply(&self.mrb, &acc, &e, self.cfg.engine))?;
                }
                Ok(Value::Element(acc))
            }
            Value::Square(_) => Err(CliError::eval(
                pos,
                "powers of tensor square elements are not supported",
            )),
        }
    }

    fn one_arg<'a>(&self, pos: Pos, name: &str, args: &'a [Expr]) -> Result<&'a Expr, CliError> {
        match args {
            [a] => Ok(a),
            _ => Err(CliError::eval(
                pos,
                format!("{name} takes 1 argument, got {}", args.len()),
            )),
        }
    }

    fn call(&self, pos: Pos, name: &str, args: &[Expr]) -> Result<Value, CliError> {
        match name {
            "P" => {
                let a = self.one_arg(pos, name, args)?;
                let e = self.to_element(self.eval(a)?, a.pos)?;
                Ok(Value::Element(operator_p(&e)))
            }
            "coprod" => {
                let a = self.one_arg(pos, name, args)?;
                let h = self.hopf(pos, name)?;
                let e = self.to_element(self.eval(a)?, a.pos)?;
                Ok(Value::Square(self.core(pos, h.coproduct(&e))?))
            }
            "counit" => {
                let a = self.one_arg(pos, name, args)?;
                let h = self.hopf(pos, name)?;
                let e = self.to_element(self.eval(a)?, a.pos)?;
                Ok(Value::Scalar(self.core(pos, h.counit(&e))?))
            }
            "antipode" => {
                let a = self.one_arg(pos, name, args)?;
                let h = self.hopf(pos, name)?;
                let e = self.to_element(self.eval(a)?, a.pos)?;
                Ok(Value::Element(self.core(pos, h.antipode(&e))?))
            }
            "lift" => match args {
                [target, a] => {
                    let ExprKind::Atom(t) = &target.kind else {
                        return Err(CliError::eval(target.pos, "lift target must be a name"));
                    };
                    let e = self.to_element(self.eval(a)?, a.pos)?;
                    self.lift(target.pos, t, &e)
                }
                _ => Err(CliError::eval(
                    pos,
                    format!("lift takes 2 arguments, got {}", args.len()),
                )),
            },
            other => Err(CliError::eval(
                pos,
                format!(
                    "unknown function `{other}` (expected P, coprod, counit, antipode or lift)"
                ),
            )),
        }
    }

    /// Lift targets: `free` (`P` on the free algebra, `f = j`), `identity`
    /// (identity on `A`, weight −1), `scalar` (`λ·id` on `A`, weight `−λ²`),
    /// `split` (Laurent splitting operator, generators sent to `ε`).
    fn lift(&self, pos: Pos, target: &str, e: &MrbElement) -> Result<Value, CliError> {
        let inst = self.instance().clone();
        let identity_map = |carrier: &BaseAlgebra| {
            BaseMap::new(
                carrier.clone(),
                inst.generators().into_iter().map(|g| {
                    (
                        g.to_string(),
                        BaseElement::generator(&inst, g).expect("declared generator"),
                    )
                }),
            )
        };
        match target {
            "free" => {
                let inst_op = free_operator(&self.mrb);
                let carrier: FreeMrbAlgebra = inst_op.carrier().clone();
                let f = BaseMap::new(
                    carrier,
                    inst.generators().into_iter().map(|g| {
                        let b = BaseElement::generator(&inst, g).expect("declared generator");
                        (g.to_string(), MrbElement::from_base(&b))
                    }),
                );
                let lift = self.core(pos, self.mrb.lift(f, inst_op))?;
                Ok(Value::Element(self.core(pos, lift.apply(e))?))
            }
            "identity" | "scalar" => {
                let carrier = BaseAlgebra::new(inst.clone());
                let op = if target == "identity" {
                    OperatorInstance::new(
                        carrier.clone(),
                        LinearOperator::identity(&carrier),
                        Rational::from(-1),
                    )
                } else {
                    let Weight::Lambda(l) = &self.cfg.weight else {
                        return Err(CliError::eval(
                            pos,
                            "lift target `scalar` needs lambda to be set",
                        ));
                    };
                    scalar_mrb(&carrier, l)
                };
                let lift = self.core(pos, self.mrb.lift(identity_map(&carrier), op))?;
                Ok(Value::Base(self.core(pos, lift.apply(e))?))
            }
            "split" => {
                let carrier = laurent_carrier();
                let eps = carrier.power(1);
                let f = BaseMap::new(
                    carrier.clone(),
                    inst.generators()
                        .into_iter()
                        .map(|g| (g.to_string(), eps.clone())),
                );
                let lift = self.core(pos, self.mrb.lift(f, laurent_split(&carrier)))?;
                Ok(Value::Base(self.core(pos, lift.apply(e))?))
            }
            other => Err(CliError::eval(
                pos,
                format!("unknown lift target `{other}` (expected free, identity, scalar or split)"),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session(base: &str, weight: Weight) -> Session {
        Session::new(SessionConfig {
            base: base.parse().unwrap(),
            weight,
            ..SessionConfig::default()
        })
        .unwrap()
    }

    fn text(s: &Session, src: &str) -> String {
        crate::render::render(&s.eval_str(src).unwrap(), Format::Text)
    }

    #[test]
    fn golden_cli_values() {
        let k = session("trivial", Weight::Kappa(Rational::from(-1)));
        assert_eq!(text(&k, "u_1*u_1"), "2*u_2 - u_0");
        let l = session("trivial", Weight::Lambda(Rational::one()));
        assert_eq!(text(&l, "counit(u_3)"), "-1");
        assert_eq!(text(&l, "antipode(u_1)"), "-u_1 - 2*u_0");
        assert_eq!(
            text(&l, "coprod(u_1)"),
            "u_1 (x) u_0 + u_0 (x) u_1 + u_0 (x) u_0"
        );
        assert_eq!(text(&l, "u_1 - u_1"), "0");
    }

    #[test]
    fn hopf_ops_need_lambda() {
        let k = session("trivial", Weight::Kappa(Rational::from(-1)));
        assert!(matches!(
            k.eval_str("coprod(u_1)"),
            Err(CliError::Eval { .. })
        ));
    }

    #[test]
    fn u_sugar_rejected_off_trivial_base() {
        let s = session("poly:x,y", Weight::Kappa(Rational::one()));
        let err = s.eval_str("P([x|y]) + 3/2*u_0").unwrap_err();
        assert!(matches!(err, CliError::Syntax(_)));
        assert_eq!(err.exit_code(), 2);
        assert_eq!(text(&s, "P([x|y]) + 3/2*[1]"), "[1|x|y] + 3/2*[1]");
    }

    #[test]
    fn base_arithmetic_and_words() {
        let s = session("poly:x,y", Weight::Kappa(Rational::from(2)));
        assert_eq!(text(&s, "[x + y | 2]"), "2*[x|1] + 2*[y|1]");
        assert_eq!(text(&s, "x^2*y - 1"), "x^2*y - 1");
        assert_eq!(text(&s, "[x]*[y]"), "[x*y]");
        assert!(s.eval_str("[u_1]").is_err());
        assert!(s.eval_str("z").is_err());
        let l = session("laurent:e", Weight::Kappa(Rational::from(-1)));
        assert_eq!(text(&l, "e^-1 * e^2"), "e");
    }

    #[test]
    fn lifts() {
        let s = session("trivial", Weight::Lambda(Rational::from(2)));
        assert_eq!(text(&s, "lift(scalar, u_2)"), "4");
        assert_eq!(
            text(&s, "lift(free, u_1*u_1 + u_2)"),
            text(&s, "u_1*u_1 + u_2")
        );
        let k = session("trivial", Weight::Lambda(Rational::one()));
        assert_eq!(text(&k, "lift(split, u_1)"), "1");
        assert!(matches!(
            s.eval_str("lift(split, u_1)"),
            Err(CliError::Eval { .. })
        ));
    }

    #[test]
    fn render_parse_round_trip() {
        let s = session("poly:x,y", Weight::Kappa(Rational::new(-1, 3)));
        for src in [
            "[x|y]*[y|1|x] - 7/2*[x^2]",
            "P(P([x]*[y|x]))",
            "3*[1|1] + [x*y|y^2]",
        ] {
            let v = s.eval_str(src).unwrap();
            let again = s
                .eval_str(&crate::render::render(&v, Format::Text))
                .unwrap();
            assert_eq!(v, again, "{src}");
        }
    }
}
