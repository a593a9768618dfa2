//! The module `Ш(A) = ⊕_{k≥1} A^{⊗k}` of tensor words over a base algebra.
//!
//! A [`TensorWord`] is a pure tensor `a₀⊗a₁⊗⋯⊗a_m` whose slots are single
//! monomials; linear structure lives in [`MrbElement`], so every element has a
//! unique canonical term map. Words are ordered length-major, then slotwise.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::base::{BaseElement, BaseInstance, Monomial};
use crate::error::{Error, Result};
use crate::fmt::write_terms;
use crate::linear::LinComb;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorWord(Vec<Monomial>);

impl TensorWord {
    pub fn new(slots: Vec<Monomial>) -> Result<Self> {
        if slots.is_empty() {
            return Err(Error::MalformedWord(
                "a tensor word needs at least one slot".into(),
            ));
        }
        Ok(TensorWord(slots))
    }

    pub fn single(m: Monomial) -> Self {
        TensorWord(vec![m])
    }

    /// `u_n = 1^{⊗(n+1)}`.
    pub fn u(n: usize) -> Self {
        TensorWord(vec![Monomial::one(); n + 1])
    }

    pub fn slots(&self) -> &[Monomial] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; words have at least one slot.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of tensor factors beyond the first (the `m` in `A^{⊗(m+1)}`).
    pub fn tail_len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn head(&self) -> &Monomial {
        &self.0[0]
    }

    /// `𝔞'` for `𝔞 = a₀⊗𝔞'`, `None` on length-one words.
    pub fn tail(&self) -> Option<TensorWord> {
        (self.0.len() > 1).then(|| TensorWord(self.0[1..].to_vec()))
    }

    /// `c ⊗ 𝔞`.
    pub fn prepend(&self, m: Monomial) -> TensorWord {
        let mut slots = Vec::with_capacity(self.0.len() + 1);
        slots.push(m);
        slots.extend_from_slice(&self.0);
        TensorWord(slots)
    }

    /// Multiplies `m` into the first slot.
    pub fn mul_head(&self, m: &Monomial) -> TensorWord {
        let mut slots = self.0.clone();
        slots[0] = slots[0].mul(m);
        TensorWord(slots)
    }

    /// Whether all slots are `1`, i.e. the word is some `u_n`.
    pub fn is_u(&self) -> bool {
        self.0.iter().all(Monomial::is_one)
    }

    /// `deg(a₀⊗⋯⊗a_m) = deg(a₀)+⋯+deg(a_m)+m`.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(Monomial::total_degree).sum::<i64>() + self.tail_len() as i64
    }

    pub fn check_instance(&self, instance: &BaseInstance) -> Result<()> {
        self.0.iter().try_for_each(|m| instance.check_monomial(m))
    }
}

impl Ord for TensorWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for TensorWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TensorWord {
    /// `u_n` when every slot is `1`, otherwise `[a0|a1|...]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_u() {
            return write!(f, "u_{}", self.tail_len());
        }
        f.write_str("[")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Renders a word, falling back to bracket syntax on non-trivial bases.
fn word_text(w: &TensorWord, instance: &BaseInstance) -> String {
    if matches!(instance, BaseInstance::Trivial) {
        w.to_string()
    } else {
        let slots: Vec<String> = w.0.iter().map(|m| m.to_string()).collect();
        format!("[{}]", slots.join("|"))
    }
}

/// An element of `Ш(A)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MrbElement {
    instance: BaseInstance,
    terms: LinComb<TensorWord>,
}

impl MrbElement {
    pub fn zero(instance: &BaseInstance) -> Self {
        MrbElement {
            instance: instance.clone(),
            terms: LinComb::zero(),
        }
    }

    /// The unit `[1_A]`.
    pub fn one(instance: &BaseInstance) -> Self {
        Self::from_lincomb(
            instance,
            LinComb::basis(TensorWord::single(Monomial::one())),
        )
    }

    /// `u_n` on the trivial base.
    pub fn u(n: usize) -> Self {
        Self::from_lincomb(&BaseInstance::Trivial, LinComb::basis(TensorWord::u(n)))
    }

    pub fn word(instance: &BaseInstance, w: TensorWord) -> Result<Self> {
        w.check_instance(instance)?;
        Ok(Self::from_lincomb(instance, LinComb::basis(w)))
    }

    pub fn from_terms(
        instance: &BaseInstance,
        terms: impl IntoIterator<Item = (Rational, TensorWord)>,
    ) -> Result<Self> {
        let terms: LinComb<TensorWord> = terms.into_iter().collect();
        for w in terms.keys() {
            w.check_instance(instance)?;
        }
        Ok(Self::from_lincomb(instance, terms))
    }

    pub(crate) fn from_lincomb(instance: &BaseInstance, terms: LinComb<TensorWord>) -> Self {
        MrbElement {
            instance: instance.clone(),
            terms,
        }
    }

    /// `j_A: A → Ш(A)`, base elements as length-one words.
    pub fn from_base(a: &BaseElement) -> Self {
        Self::from_lincomb(
            a.instance(),
            a.terms().map_keys(|m| TensorWord::single(m.clone())),
        )
    }

    /// Inverse of [`MrbElement::from_base`] when every word has length one.
    pub fn to_base(&self) -> Option<BaseElement> {
        if self.terms.keys().any(|w| w.len() != 1) {
            return None;
        }
        Some(BaseElement::from_lincomb(
            &self.instance,
            self.terms.map_keys(|w| w.head().clone()),
        ))
    }

    /// Multilinear expansion of a formal sum `Σ c·(s₀⊗s₁⊗⋯)` whose slots are
    /// arbitrary base elements. A zero slot makes its term vanish.
    pub fn normalize(
        instance: &BaseInstance,
        raw: impl IntoIterator<Item = (Rational, Vec<BaseElement>)>,
    ) -> Result<Self> {
        let mut out = LinComb::zero();
        for (c, slots) in raw {
            if slots.is_empty() {
                return Err(Error::MalformedWord("empty word in formal sum".into()));
            }
            let mut partial: LinComb<Vec<Monomial>> = LinComb::term(c, Vec::new());
            for s in &slots {
                instance.ensure_same(s.instance())?;
                partial = partial.bilinear(s.terms(), |prefix, m| {
                    let mut next = prefix.clone();
                    next.push(m.clone());
                    LinComb::basis(next)
                });
            }
            for (slots, c) in partial {
                out.add_term(c, TensorWord(slots));
            }
        }
        Ok(Self::from_lincomb(instance, out))
    }

    pub fn instance(&self) -> &BaseInstance {
        &self.instance
    }

    pub fn terms(&self) -> &LinComb<TensorWord> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, w: &TensorWord) -> Rational {
        self.terms.coeff(w)
    }

    pub fn add(&self, other: &MrbElement) -> Result<MrbElement> {
        self.instance.ensure_same(&other.instance)?;
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        Ok(Self::from_lincomb(&self.instance, terms))
    }

    pub fn sub(&self, other: &MrbElement) -> Result<MrbElement> {
        self.instance.ensure_same(&other.instance)?;
        let mut terms = self.terms.clone();
        terms.sub_assign(&other.terms);
        Ok(Self::from_lincomb(&self.instance, terms))
    }

    pub fn scale(&self, c: &Rational) -> MrbElement {
        Self::from_lincomb(&self.instance, self.terms.scaled(c))
    }

    pub fn neg(&self) -> MrbElement {
        self.scale(&Rational::from(-1))
    }

    /// Filtration degree: the largest word degree in the support.
    pub fn degree(&self) -> Result<i64> {
        if matches!(self.instance, BaseInstance::Laurent(_)) {
            return Err(Error::NoFiltration(self.instance.to_string()));
        }
        self.terms
            .keys()
            .map(TensorWord::degree)
            .max()
            .ok_or(Error::UndefinedDegree)
    }

    /// Membership in `𝔄_k`; zero belongs to every level.
    pub fn in_filtration(&self, k: i64) -> Result<bool> {
        match self.degree() {
            Ok(d) => Ok(d <= k),
            Err(Error::UndefinedDegree) => Ok(true),
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for MrbElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inst = &self.instance;
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| (c, Some(word_text(w, inst))));
        write_terms(f, terms, |s| s.to_string())
    }
}

pub type WordPair = (TensorWord, TensorWord);

/// An element of `Ш(A) ⊗ Ш(A)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MrbSquare {
    instance: BaseInstance,
    terms: LinComb<WordPair>,
}

impl MrbSquare {
    pub fn zero(instance: &BaseInstance) -> Self {
        MrbSquare {
            instance: instance.clone(),
            terms: LinComb::zero(),
        }
    }

    /// `1 ⊗ 1`.
    pub fn one(instance: &BaseInstance) -> Self {
        let u0 = TensorWord::single(Monomial::one());
        Self::from_lincomb(instance, LinComb::basis((u0.clone(), u0)))
    }

    pub fn from_lincomb(instance: &BaseInstance, terms: LinComb<WordPair>) -> Self {
        MrbSquare {
            instance: instance.clone(),
            terms,
        }
    }

    pub fn from_terms(
        instance: &BaseInstance,
        terms: impl IntoIterator<Item = (Rational, WordPair)>,
    ) -> Result<Self> {
        let terms: LinComb<WordPair> = terms.into_iter().collect();
        for (l, r) in terms.keys() {
            l.check_instance(instance)?;
            r.check_instance(instance)?;
        }
        Ok(Self::from_lincomb(instance, terms))
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &MrbElement, b: &MrbElement) -> Result<Self> {
        a.instance.ensure_same(&b.instance)?;
        let terms = a
            .terms
            .bilinear(&b.terms, |l, r| LinComb::basis((l.clone(), r.clone())));
        Ok(Self::from_lincomb(&a.instance, terms))
    }

    pub fn instance(&self) -> &BaseInstance {
        &self.instance
    }

    pub fn terms(&self) -> &LinComb<WordPair> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &MrbSquare) -> Result<MrbSquare> {
        self.instance.ensure_same(&other.instance)?;
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        Ok(Self::from_lincomb(&self.instance, terms))
    }

    pub fn sub(&self, other: &MrbSquare) -> Result<MrbSquare> {
        self.instance.ensure_same(&other.instance)?;
        let mut terms = self.terms.clone();
        terms.sub_assign(&other.terms);
        Ok(Self::from_lincomb(&self.instance, terms))
    }

    pub fn scale(&self, c: &Rational) -> MrbSquare {
        Self::from_lincomb(&self.instance, self.terms.scaled(c))
    }

    /// `(f ⊗ g)` for linear maps given on basis words.
    pub fn map_each(
        &self,
        mut f: impl FnMut(&TensorWord) -> LinComb<TensorWord>,
        mut g: impl FnMut(&TensorWord) -> LinComb<TensorWord>,
    ) -> MrbSquare {
        let terms = self.terms.map_linear(|(l, r)| {
            f(l).bilinear(&g(r), |a, b| LinComb::basis((a.clone(), b.clone())))
        });
        Self::from_lincomb(&self.instance, terms)
    }
}

impl fmt::Display for MrbSquare {
    /// `a (x) b` term lists in descending canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inst = &self.instance;
        let terms = self.terms.iter().rev().map(|((l, r), c)| {
            (
                c,
                Some(format!("{} (x) {}", word_text(l, inst), word_text(r, inst))),
            )
        });
        write_terms(f, terms, |s| s.to_string())
    }
}

/// JSON form of a single word term.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct WordTermJson {
    pub coeff: Rational,
    pub word: Vec<BTreeMap<String, i32>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct MrbElementJson {
    pub base: String,
    pub terms: Vec<WordTermJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct PairTermJson {
    pub coeff: Rational,
    pub left: Vec<BTreeMap<String, i32>>,
    pub right: Vec<BTreeMap<String, i32>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct MrbSquareJson {
    pub base: String,
    pub terms: Vec<PairTermJson>,
}

fn word_json(w: &TensorWord) -> Vec<BTreeMap<String, i32>> {
    w.0.iter()
        .map(|m| m.exponents().map(|(g, e)| (g.to_string(), e)).collect())
        .collect()
}

fn word_from_json(slots: &[BTreeMap<String, i32>]) -> Result<TensorWord> {
    TensorWord::new(
        slots
            .iter()
            .map(|m| Monomial::from_exponents(m.iter().map(|(g, e)| (g.as_str(), *e))))
            .collect(),
    )
}

impl MrbElement {
    pub fn to_json(&self) -> MrbElementJson {
        MrbElementJson {
            base: self.instance.to_string(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(w, c)| WordTermJson {
                    coeff: c.clone(),
                    word: word_json(w),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &MrbElementJson) -> Result<Self> {
        let instance: BaseInstance = json.base.parse()?;
        let terms = json
            .terms
            .iter()
            .map(|t| Ok((t.coeff.clone(), word_from_json(&t.word)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(&instance, terms)
    }
}

impl MrbSquare {
    pub fn to_json(&self) -> MrbSquareJson {
        MrbSquareJson {
            base: self.instance.to_string(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|((l, r), c)| PairTermJson {
                    coeff: c.clone(),
                    left: word_json(l),
                    right: word_json(r),
                })
                .collect(),
        }
    }
}
