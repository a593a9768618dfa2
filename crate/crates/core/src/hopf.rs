//! Coproduct, counit and antipode on `Ш(A)` for weight `κ = −λ²`.
//!
//! The coproduct extends that of `A` through the cocycle condition
//!
//! ```text
//! Δ(P(𝔞')) = P(𝔞') ⊗ 1 + (id ⊗ P)Δ(𝔞') + λ 𝔞' ⊗ 1
//! Δ(a₀ ⊗ 𝔞') = Δ(a₀) · Δ(P(𝔞'))
//! ```
//!
//! with the product on the square taken componentwise. The counit is
//! `ε(a₀⊗⋯⊗a_k) = (−λ)^k ε(a₀⋯a_k)`. The antipode is solved degreewise
//! from `m(S ⊗ id)Δ = uε` on the filtration by word degree.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::Rng;

use crate::algebra::Algebra;
use crate::base::{BaseInstance, Monomial};
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::operators::{LinearOperator, OperatorInstance};
use crate::product::{operator_p, MrbContext};
use crate::random::{basis_words, random_element_of_degree, rng};
use crate::rational::Rational;
use crate::tensor::{MrbElement, MrbSquare, TensorWord, WordPair};

type Triple = (TensorWord, TensorWord, TensorWord);

/// The weight-`−λ²` algebra with its Hopf structure.
#[derive(Clone)]
pub struct HopfContext {
    mrb: MrbContext,
    lambda: Rational,
    coproducts: Arc<RwLock<HashMap<TensorWord, LinComb<WordPair>>>>,
    antipodes: Arc<RwLock<HashMap<TensorWord, LinComb<TensorWord>>>>,
}

impl fmt::Debug for HopfContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HopfContext")
            .field("instance", self.mrb.instance())
            .field("lambda", &self.lambda)
            .finish()
    }
}

impl HopfContext {
    pub fn new(instance: BaseInstance, lambda: Rational) -> Result<Self> {
        instance.ensure_bialgebra()?;
        let kappa = -(&lambda * &lambda);
        Ok(HopfContext {
            mrb: MrbContext::new(instance, kappa),
            lambda,
            coproducts: Arc::default(),
            antipodes: Arc::default(),
        })
    }

    pub fn mrb(&self) -> &MrbContext {
        &self.mrb
    }

    pub fn instance(&self) -> &BaseInstance {
        self.mrb.instance()
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn kappa(&self) -> &Rational {
        self.mrb.kappa()
    }

    fn unit_word() -> TensorWord {
        TensorWord::single(Monomial::one())
    }

    /// `Δ` on one word, memoized.
    pub fn coproduct_word(&self, w: &TensorWord) -> LinComb<WordPair> {
        if let Some(hit) = self.coproducts.read().expect("cache poisoned").get(w) {
            return hit.clone();
        }
        let head = self
            .instance()
            .monomial_coproduct(w.head())
            .expect("bialgebra checked at construction")
            .map_keys(|(l, r)| (TensorWord::single(l.clone()), TensorWord::single(r.clone())));
        let out = match w.tail() {
            None => head,
            Some(rest) => {
                let cocycle = self.coproduct_of_p(&rest);
                square_product(&self.mrb, &head, &cocycle)
            }
        };
        self.coproducts
            .write()
            .expect("cache poisoned")
            .insert(w.clone(), out.clone());
        out
    }

    /// `Δ(P(𝔞'))` by the cocycle condition.
    fn coproduct_of_p(&self, rest: &TensorWord) -> LinComb<WordPair> {
        let u0 = Self::unit_word();
        let mut out = LinComb::basis((rest.prepend(Monomial::one()), u0.clone()));
        let inner = self.coproduct_word(rest);
        out.add_assign(&inner.map_keys(|(l, r)| (l.clone(), r.prepend(Monomial::one()))));
        out.add_term(self.lambda.clone(), (rest.clone(), u0));
        out
    }

    pub fn coproduct(&self, a: &MrbElement) -> Result<MrbSquare> {
        self.mrb.ensure_element(a)?;
        let terms = a.terms().map_linear(|w| self.coproduct_word(w));
        Ok(MrbSquare::from_lincomb(self.instance(), terms))
    }

    pub fn counit_word(&self, w: &TensorWord) -> Rational {
        let product = w.slots().iter().fold(Monomial::one(), |acc, m| acc.mul(m));
        let base = self
            .instance()
            .monomial_counit(&product)
            .expect("bialgebra checked at construction");
        if base.is_zero() {
            return base;
        }
        (-&self.lambda).pow(w.tail_len() as i32) * base
    }

    pub fn counit(&self, a: &MrbElement) -> Result<Rational> {
        self.mrb.ensure_element(a)?;
        Ok(a.terms()
            .iter()
            .map(|(w, c)| c * &self.counit_word(w))
            .sum())
    }

    /// Componentwise `⋄` on the square.
    pub fn square_diamond(&self, s: &MrbSquare, t: &MrbSquare) -> Result<MrbSquare> {
        self.instance().ensure_same(s.instance())?;
        self.instance().ensure_same(t.instance())?;
        let terms = square_product(&self.mrb, s.terms(), t.terms());
        Ok(MrbSquare::from_lincomb(self.instance(), terms))
    }

    /// `(id ⊗ P)` on the square.
    pub fn id_tensor_p(&self, s: &MrbSquare) -> MrbSquare {
        let terms = s
            .terms()
            .map_keys(|(l, r)| (l.clone(), r.prepend(Monomial::one())));
        MrbSquare::from_lincomb(s.instance(), terms)
    }

    /// `m ∘ (f ⊗ g)` on a square, with `f`, `g` given on words.
    fn multiply_out(
        &self,
        s: &LinComb<WordPair>,
        mut f: impl FnMut(&TensorWord) -> Result<LinComb<TensorWord>>,
        mut g: impl FnMut(&TensorWord) -> Result<LinComb<TensorWord>>,
    ) -> Result<MrbElement> {
        let mut acc = LinComb::zero();
        for ((l, r), c) in s.iter() {
            let prod = f(l)?.bilinear(&g(r)?, |x, y| self.mrb.diamond_words(x, y));
            acc.add_scaled(c, &prod);
        }
        Ok(MrbElement::from_lincomb(self.instance(), acc))
    }

    /// `T = id − uε` on a word.
    fn reduced(&self, w: &TensorWord) -> LinComb<TensorWord> {
        let mut out = LinComb::basis(w.clone());
        out.add_term(-self.counit_word(w), Self::unit_word());
        out
    }

    /// `S` on one word, memoized. Uses
    /// `S(x) = ε(x)·1 − Σ S(x') ⋄ T(x'')` over the terms of `Δ(x)` with
    /// `deg x'' ≥ 1`; those have `deg x' < deg x`.
    pub fn antipode_word(&self, w: &TensorWord) -> Result<LinComb<TensorWord>> {
        if let Some(hit) = self.antipodes.read().expect("cache poisoned").get(w) {
            return Ok(hit.clone());
        }
        let deg = w.degree();
        let mut out = LinComb::term(self.counit_word(w), Self::unit_word());
        for ((l, r), c) in self.coproduct_word(w).iter() {
            if r.degree() == 0 {
                continue;
            }
            if l.degree() >= deg {
                return Err(Error::FiltrationViolation(format!(
                    "{w}: coproduct term {l} (x) {r} does not lower the degree"
                )));
            }
            let s = self.antipode_word(l)?;
            let prod = s.bilinear(&self.reduced(r), |x, y| self.mrb.diamond_words(x, y));
            out.add_scaled(&-c, &prod);
        }
        self.antipodes
            .write()
            .expect("cache poisoned")
            .insert(w.clone(), out.clone());
        Ok(out)
    }

    pub fn antipode(&self, a: &MrbElement) -> Result<MrbElement> {
        self.mrb.ensure_element(a)?;
        let terms = a.terms().try_map_linear(|w| self.antipode_word(w))?;
        Ok(MrbElement::from_lincomb(self.instance(), terms))
    }

    /// `m(S ⊗ id)Δ(a)`.
    pub fn left_convolution(&self, a: &MrbElement) -> Result<MrbElement> {
        let d = self.coproduct(a)?;
        self.multiply_out(
            d.terms(),
            |w| self.antipode_word(w),
            |w| Ok(LinComb::basis(w.clone())),
        )
    }

    /// `m(id ⊗ S)Δ(a)`.
    pub fn right_convolution(&self, a: &MrbElement) -> Result<MrbElement> {
        let d = self.coproduct(a)?;
        self.multiply_out(
            d.terms(),
            |w| Ok(LinComb::basis(w.clone())),
            |w| self.antipode_word(w),
        )
    }

    /// `(id ⊗ Δ)Δ` and `(Δ ⊗ id)Δ` on one word.
    fn coassociativity_sides(&self, w: &TensorWord) -> (LinComb<Triple>, LinComb<Triple>) {
        let d = self.coproduct_word(w);
        let left = d.map_linear(|(l, r)| {
            self.coproduct_word(r)
                .map_keys(|(r1, r2)| (l.clone(), r1.clone(), r2.clone()))
        });
        let right = d.map_linear(|(l, r)| {
            self.coproduct_word(l)
                .map_keys(|(l1, l2)| (l1.clone(), l2.clone(), r.clone()))
        });
        (left, right)
    }

    fn random_sample<R: Rng + ?Sized>(&self, r: &mut R, max_degree: usize) -> MrbElement {
        random_element_of_degree(r, self.instance(), max_degree, 3)
    }

    /// The four bialgebra obligations on seeded samples of degree at most
    /// `max_degree`: multiplicativity of `Δ` and `ε`, coassociativity, and
    /// the counit laws.
    pub fn verify_bialgebra(
        &self,
        samples: usize,
        seed: u64,
        max_degree: usize,
    ) -> Vec<CheckOutcome> {
        let mut mult = CheckOutcome::new("coproduct multiplicative");
        let mut counit_mult = CheckOutcome::new("counit multiplicative");
        let mut coassoc = CheckOutcome::new("coassociativity");
        let mut counit_law = CheckOutcome::new("counit laws");
        let mut r = rng(seed);
        for _ in 0..samples {
            let a = self.random_sample(&mut r, max_degree);
            let b = self.random_sample(&mut r, max_degree);
            let ab = self.mrb.diamond(&a, &b).expect("same instance");

            let lhs = self.coproduct(&ab).expect("same instance");
            let rhs = self
                .square_diamond(
                    &self.coproduct(&a).expect("same instance"),
                    &self.coproduct(&b).expect("same instance"),
                )
                .expect("same instance");
            mult.record(lhs == rhs, || {
                format!(
                    "a = {a}, b = {b}: coprod(a*b) - coprod(a)coprod(b) = {}",
                    lhs.sub(&rhs).expect("same instance")
                )
            });

            let (ea, eb) = (self.counit(&a).unwrap(), self.counit(&b).unwrap());
            let eab = self.counit(&ab).unwrap();
            counit_mult.record(eab == &ea * &eb, || {
                format!(
                    "a = {a}, b = {b}: counit(a*b) = {eab}, counit(a)counit(b) = {}",
                    &ea * &eb
                )
            });

            for (w, _) in a.terms().iter() {
                let (left, right) = self.coassociativity_sides(w);
                coassoc.record(left == right, || {
                    let mut diff = left.clone();
                    diff.sub_assign(&right);
                    format!("{w}: {} differing terms", diff.len())
                });
            }

            let d = self.coproduct(&a).unwrap();
            let mut id_eps = LinComb::zero();
            let mut eps_id = LinComb::zero();
            for ((l, rt), c) in d.terms().iter() {
                id_eps.add_term(c * &self.counit_word(rt), l.clone());
                eps_id.add_term(c * &self.counit_word(l), rt.clone());
            }
            let id_eps = MrbElement::from_lincomb(self.instance(), id_eps);
            let eps_id = MrbElement::from_lincomb(self.instance(), eps_id);
            counit_law.record(id_eps == a && eps_id == a, || {
                format!("a = {a}: (id (x) e)D(a) = {id_eps}, (e (x) id)D(a) = {eps_id}")
            });
        }
        vec![mult, counit_mult, coassoc, counit_law]
    }

    /// The cocycle condition on random elements.
    pub fn check_cocycle(&self, samples: usize, seed: u64, max_degree: usize) -> CheckOutcome {
        let mut out = CheckOutcome::new("cocycle condition");
        let mut r = rng(seed);
        let one = MrbElement::one(self.instance());
        for _ in 0..samples {
            let a = self.random_sample(&mut r, max_degree);
            let pa = operator_p(&a);
            let lhs = self.coproduct(&pa).unwrap();
            let rhs = MrbSquare::tensor(&pa, &one)
                .unwrap()
                .add(&self.id_tensor_p(&self.coproduct(&a).unwrap()))
                .unwrap()
                .add(&MrbSquare::tensor(&a, &one).unwrap().scale(&self.lambda))
                .unwrap();
            out.record(lhs == rhs, || {
                format!("a = {a}: defect {}", lhs.sub(&rhs).unwrap())
            });
        }
        out
    }

    /// `m(S ⊗ id)Δ = uε = m(id ⊗ S)Δ` on every basis word up to `max_degree`.
    pub fn check_antipode(&self, max_degree: usize) -> CheckOutcome {
        let mut out = CheckOutcome::new("antipode axioms");
        for w in basis_words(self.instance(), max_degree) {
            let x = MrbElement::from_lincomb(self.instance(), LinComb::basis(w.clone()));
            let expected = MrbElement::one(self.instance()).scale(&self.counit_word(&w));
            match (self.left_convolution(&x), self.right_convolution(&x)) {
                (Ok(l), Ok(r)) => out.record(l == expected && r == expected, || {
                    format!("{w}: m(S(x)id)D = {l}, m(id(x)S)D = {r}, expected {expected}")
                }),
                (Err(e), _) | (_, Err(e)) => out.record(false, || format!("{w}: {e}")),
            }
        }
        out
    }

    /// `deg(a⋄b) ≤ deg a + deg b` and `Δ(𝔄_k) ⊆ Σ_{m+n=k} 𝔄_m ⊗ 𝔄_n`.
    pub fn check_filtration(&self, samples: usize, seed: u64, max_degree: usize) -> CheckOutcome {
        let mut out = CheckOutcome::new("filtration");
        let mut r = rng(seed);
        for _ in 0..samples {
            let a = self.random_sample(&mut r, max_degree);
            let b = self.random_sample(&mut r, max_degree);
            let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
            let ab = self.mrb.diamond(&a, &b).unwrap();
            let ok = ab.in_filtration(da + db).unwrap();
            out.record(ok, || {
                format!("deg(({a})*({b})) = {:?} > {}", ab.degree(), da + db)
            });
            let d = self.coproduct(&a).unwrap();
            let bad = d
                .terms()
                .keys()
                .find(|(l, rt)| l.degree() + rt.degree() > da);
            out.record(bad.is_none(), || {
                let (l, rt) = bad.unwrap();
                format!("coprod({a}) has term {l} (x) {rt} above degree {da}")
            });
        }
        out
    }
}

/// `Σ (x₁ ⋄ y₁) ⊗ (x₂ ⋄ y₂)`.
fn square_product(
    ctx: &MrbContext,
    s: &LinComb<WordPair>,
    t: &LinComb<WordPair>,
) -> LinComb<WordPair> {
    s.bilinear(t, |(l1, r1), (l2, r2)| {
        ctx.diamond_words(l1, l2)
            .bilinear(&ctx.diamond_words(r1, r2), |a, b| {
                LinComb::basis((a.clone(), b.clone()))
            })
    })
}

/// One named check with the number of cases tried and failure witnesses.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases", self.name, self.cases)?;
        if !self.passed() {
            write!(f, ", {} failures", self.failures.len())?;
        }
        write!(f, ")")?;
        if let Some(first) = self.failures.first() {
            write!(f, "\n  first counterexample: {first}")?;
        }
        Ok(())
    }
}

/// `Ш(A) ⊗ Ш(A)` with componentwise `⋄`, as a carrier.
#[derive(Clone, Debug)]
pub struct SquareAlgebra {
    ctx: MrbContext,
}

impl SquareAlgebra {
    pub fn new(ctx: MrbContext) -> Self {
        SquareAlgebra { ctx }
    }
}

impl Algebra for SquareAlgebra {
    type Elem = MrbSquare;
    type Basis = WordPair;

    fn name(&self) -> String {
        format!(
            "square({}, kappa={})",
            self.ctx.instance(),
            self.ctx.kappa()
        )
    }

    fn zero(&self) -> MrbSquare {
        MrbSquare::zero(self.ctx.instance())
    }

    fn one(&self) -> MrbSquare {
        MrbSquare::one(self.ctx.instance())
    }

    fn add(&self, a: &MrbSquare, b: &MrbSquare) -> MrbSquare {
        a.add(b).expect("carrier elements share one instance")
    }

    fn scale(&self, c: &Rational, a: &MrbSquare) -> MrbSquare {
        a.scale(c)
    }

    fn mul(&self, a: &MrbSquare, b: &MrbSquare) -> MrbSquare {
        MrbSquare::from_lincomb(
            self.ctx.instance(),
            square_product(&self.ctx, a.terms(), b.terms()),
        )
    }

    fn decompose(&self, a: &MrbSquare) -> Vec<(WordPair, Rational)> {
        a.terms()
            .iter()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect()
    }

    fn basis_element(&self, b: &WordPair) -> MrbSquare {
        MrbSquare::from_lincomb(self.ctx.instance(), LinComb::basis(b.clone()))
    }

    fn random_basis<R: Rng + ?Sized>(&self, rng: &mut R) -> WordPair {
        let inst = self.ctx.instance();
        (
            crate::random::random_word(rng, inst, 3, 1),
            crate::random::random_word(rng, inst, 3, 1),
        )
    }
}

/// `(id ⊗ P)` on the square, of the context's weight.
pub fn square_operator(ctx: &MrbContext) -> OperatorInstance<SquareAlgebra> {
    let carrier = SquareAlgebra::new(ctx.clone());
    let c = carrier.clone();
    let op = LinearOperator::from_rule("id(x)P_A", move |(l, r): &WordPair| {
        c.basis_element(&(l.clone(), r.prepend(Monomial::one())))
    });
    OperatorInstance::new(carrier, op, ctx.kappa().clone())
}
