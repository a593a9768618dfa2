//! Commutative base algebras `A` with a monomial basis.
//!
//! Three instances are supported:
//!
//! * [`BaseInstance::Trivial`]: `A = k`, the only monomial is `1`.
//! * [`BaseInstance::Polynomial`]: `A = k[X]` over a declared alphabet. As a
//!   bialgebra the generators are primitive, `Δ(x) = x⊗1 + 1⊗x`, the counit is
//!   the constant term and the filtration is by total degree. This is a
//!   connected filtered bialgebra.
//! * [`BaseInstance::Laurent`]: Laurent polynomials `k[ε, ε⁻¹]` in one
//!   generator. Algebra only; used as an operator carrier, never as a Hopf base.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmt::write_terms;
use crate::linear::LinComb;
use crate::rational::{binomial, Rational};

/// A commutative monomial `x₁^e₁ ⋯ x_k^e_k`; the empty product is `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<String, i32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(name: &str) -> Self {
        Monomial::from_exponents([(name, 1)])
    }

    pub fn from_exponents<'a>(exps: impl IntoIterator<Item = (&'a str, i32)>) -> Self {
        let mut m = Monomial::one();
        for (g, e) in exps {
            m.bump(g, e);
        }
        m
    }

    fn bump(&mut self, g: &str, e: i32) {
        if e == 0 {
            return;
        }
        let slot = self.exps.entry(g.to_string()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exps.remove(g);
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, g: &str) -> i32 {
        self.exps.get(g).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&str, i32)> {
        self.exps.iter().map(|(g, e)| (g.as_str(), *e))
    }

    /// Sum of exponents.
    pub fn total_degree(&self) -> i64 {
        self.exps.values().map(|&e| i64::from(e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (g, &e) in &other.exps {
            out.bump(g, e);
        }
        out
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponents compared
    /// generator by generator in sorted-name order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let names: std::collections::BTreeSet<&String> =
                    self.exps.keys().chain(other.exps.keys()).collect();
                for g in names {
                    let ord = self.exponent(g).cmp(&other.exponent(g));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which base algebra `A` the tensor words are built from.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BaseInstance {
    Trivial,
    Polynomial(Arc<[String]>),
    Laurent(Arc<str>),
}

impl BaseInstance {
    pub fn polynomial<S: AsRef<str>>(gens: impl IntoIterator<Item = S>) -> Self {
        let mut g: Vec<String> = gens.into_iter().map(|s| s.as_ref().to_string()).collect();
        g.sort();
        g.dedup();
        BaseInstance::Polynomial(g.into())
    }

    pub fn laurent(generator: &str) -> Self {
        BaseInstance::Laurent(generator.into())
    }

    pub fn generators(&self) -> Vec<&str> {
        match self {
            BaseInstance::Trivial => Vec::new(),
            BaseInstance::Polynomial(g) => g.iter().map(String::as_str).collect(),
            BaseInstance::Laurent(g) => vec![g],
        }
    }

    pub fn is_bialgebra(&self) -> bool {
        !matches!(self, BaseInstance::Laurent(_))
    }

    pub fn has_generator(&self, name: &str) -> bool {
        self.generators().contains(&name)
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        for (g, e) in m.exponents() {
            if !self.has_generator(g) {
                return Err(Error::UnknownGenerator {
                    generator: g.to_string(),
                    instance: self.to_string(),
                });
            }
            if e < 0 && !matches!(self, BaseInstance::Laurent(_)) {
                return Err(Error::NegativeExponent {
                    generator: g.to_string(),
                    exponent: e,
                });
            }
        }
        Ok(())
    }

    pub(crate) fn ensure_same(&self, other: &BaseInstance) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::InstanceMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    pub(crate) fn ensure_bialgebra(&self) -> Result<()> {
        if self.is_bialgebra() {
            Ok(())
        } else {
            Err(Error::UnsupportedCoalgebra(self.to_string()))
        }
    }

    /// `Δ` on a basis monomial.
    pub fn monomial_coproduct(&self, m: &Monomial) -> Result<BaseSquare> {
        self.ensure_bialgebra()?;
        // generators are primitive: Δ(x^a) = Σ_i C(a,i) x^i ⊗ x^(a-i)
        let mut acc = LinComb::basis((Monomial::one(), Monomial::one()));
        for (g, e) in m.exponents() {
            let e = e as usize;
            let factor: BaseSquare = (0..=e)
                .map(|i| {
                    (
                        binomial(e, i),
                        (
                            Monomial::from_exponents([(g, i as i32)]),
                            Monomial::from_exponents([(g, (e - i) as i32)]),
                        ),
                    )
                })
                .collect();
            acc = acc.bilinear(&factor, |(l1, r1), (l2, r2)| {
                LinComb::basis((l1.mul(l2), r1.mul(r2)))
            });
        }
        Ok(acc)
    }

    /// `ε` on a basis monomial: the constant term.
    pub fn monomial_counit(&self, m: &Monomial) -> Result<Rational> {
        self.ensure_bialgebra()?;
        Ok(if m.is_one() {
            Rational::one()
        } else {
            Rational::zero()
        })
    }

    /// Filtration degree of a basis monomial.
    pub fn monomial_degree(&self, m: &Monomial) -> Result<i64> {
        match self {
            BaseInstance::Laurent(_) => Err(Error::NoFiltration(self.to_string())),
            _ => Ok(m.total_degree()),
        }
    }
}

impl fmt::Display for BaseInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseInstance::Trivial => f.write_str("trivial"),
            BaseInstance::Polynomial(g) => write!(f, "poly:{}", g.join(",")),
            BaseInstance::Laurent(g) => write!(f, "laurent:{g}"),
        }
    }
}

impl FromStr for BaseInstance {
    type Err = Error;

    /// `trivial`, `poly:x,y,...` or `laurent:e`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("invalid base `{s}`: {why}"));
        let valid_name = |g: &str| {
            let mut ch = g.chars();
            matches!(ch.next(), Some(c) if c.is_ascii_alphabetic())
                && ch.all(|c| c.is_ascii_alphanumeric())
        };
        match s.trim().split_once(':') {
            None if s.trim() == "trivial" => Ok(BaseInstance::Trivial),
            None if s.trim() == "laurent" => Ok(BaseInstance::laurent("e")),
            Some(("poly", gens)) => {
                let gens: Vec<&str> = gens.split(',').map(str::trim).collect();
                if gens.iter().any(|g| !valid_name(g)) {
                    return Err(bad("generator names must be alphanumeric identifiers"));
                }
                if gens.iter().any(|g| g.starts_with("u_") || *g == "u") {
                    return Err(bad("generator names may not collide with `u_n`"));
                }
                Ok(BaseInstance::polynomial(gens))
            }
            Some(("laurent", g)) if valid_name(g.trim()) => Ok(BaseInstance::laurent(g.trim())),
            _ => Err(bad("expected trivial, poly:x,y,... or laurent:e")),
        }
    }
}

/// Elements of `A ⊗ A` on the monomial basis.
pub type BaseSquare = LinComb<(Monomial, Monomial)>;

/// An element of the base algebra `A`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BaseElement {
    instance: BaseInstance,
    terms: LinComb<Monomial>,
}

impl BaseElement {
    pub fn zero(instance: &BaseInstance) -> Self {
        BaseElement {
            instance: instance.clone(),
            terms: LinComb::zero(),
        }
    }

    pub fn one(instance: &BaseInstance) -> Self {
        Self::constant(instance, Rational::one())
    }

    pub fn constant(instance: &BaseInstance, c: Rational) -> Self {
        BaseElement {
            instance: instance.clone(),
            terms: LinComb::term(c, Monomial::one()),
        }
    }

    pub fn generator(instance: &BaseInstance, name: &str) -> Result<Self> {
        Self::monomial(instance, Monomial::var(name))
    }

    pub fn monomial(instance: &BaseInstance, m: Monomial) -> Result<Self> {
        Self::from_terms(instance, [(Rational::one(), m)])
    }

    pub fn from_terms(
        instance: &BaseInstance,
        terms: impl IntoIterator<Item = (Rational, Monomial)>,
    ) -> Result<Self> {
        let terms: LinComb<Monomial> = terms.into_iter().collect();
        for m in terms.keys() {
            instance.check_monomial(m)?;
        }
        Ok(BaseElement {
            instance: instance.clone(),
            terms,
        })
    }

    pub(crate) fn from_lincomb(instance: &BaseInstance, terms: LinComb<Monomial>) -> Self {
        BaseElement {
            instance: instance.clone(),
            terms,
        }
    }

    pub fn instance(&self) -> &BaseInstance {
        &self.instance
    }

    pub fn terms(&self) -> &LinComb<Monomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.coeff(m)
    }

    pub fn add(&self, other: &BaseElement) -> Result<BaseElement> {
        self.instance.ensure_same(&other.instance)?;
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        Ok(Self::from_lincomb(&self.instance, terms))
    }

    pub fn sub(&self, other: &BaseElement) -> Result<BaseElement> {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, c: &Rational) -> BaseElement {
        Self::from_lincomb(&self.instance, self.terms.scaled(c))
    }

    /// Commutative multiplication of `A`.
    pub fn mul(&self, other: &BaseElement) -> Result<BaseElement> {
        self.instance.ensure_same(&other.instance)?;
        let terms = self
            .terms
            .bilinear(&other.terms, |a, b| LinComb::basis(a.mul(b)));
        Ok(Self::from_lincomb(&self.instance, terms))
    }

    pub fn pow(&self, n: u32) -> Result<BaseElement> {
        let mut acc = BaseElement::one(&self.instance);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The coproduct `Δ: A → A ⊗ A`.
    pub fn coproduct(&self) -> Result<BaseSquare> {
        self.terms
            .try_map_linear(|m| self.instance.monomial_coproduct(m))
    }

    /// The counit `ε: A → k`.
    pub fn counit(&self) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in self.terms.iter() {
            acc += c * &self.instance.monomial_counit(m)?;
        }
        Ok(acc)
    }

    /// `deg(a) = min{k | a ∈ A_k}`: the largest total degree in the support.
    pub fn degree(&self) -> Result<i64> {
        let mut best = None;
        for m in self.terms.keys() {
            let d = self.instance.monomial_degree(m)?;
            best = Some(best.map_or(d, |b: i64| b.max(d)));
        }
        best.ok_or(Error::UndefinedDegree)
    }
}

impl fmt::Display for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| (c, (!m.is_one()).then(|| m.to_string())));
        write_terms(f, terms, |s| s.to_string())
    }
}

/// JSON form of a single base term.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct MonomialTermJson {
    pub coeff: Rational,
    pub monomial: BTreeMap<String, i32>,
}

/// `{"terms":[{"coeff":"3/2","monomial":{"x":2,"y":1}}, ...]}`
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct BaseElementJson {
    pub terms: Vec<MonomialTermJson>,
}

impl BaseElement {
    pub fn to_json(&self) -> BaseElementJson {
        BaseElementJson {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| MonomialTermJson {
                    coeff: c.clone(),
                    monomial: m.exps.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(instance: &BaseInstance, json: &BaseElementJson) -> Result<Self> {
        Self::from_terms(
            instance,
            json.terms.iter().map(|t| {
                (
                    t.coeff.clone(),
                    Monomial::from_exponents(t.monomial.iter().map(|(g, e)| (g.as_str(), *e))),
                )
            }),
        )
    }
}
