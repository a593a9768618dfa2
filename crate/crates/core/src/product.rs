//! The modified quasi-shuffle product `⋄` of weight `κ`, the operator
//! `P(𝔞) = 1 ⊗ 𝔞`, and the universal lift out of the free algebra.
//!
//! On pure words `𝔞 = a₀⊗𝔞'`, `𝔟 = b₀⊗𝔟'` the product is defined by
//!
//! ```text
//! a₀ ⋄ b₀         = a₀b₀
//! 𝔞 ⋄ b₀          = a₀b₀ ⊗ 𝔞'
//! a₀ ⋄ 𝔟          = a₀b₀ ⊗ 𝔟'
//! 𝔞 ⋄ 𝔟           = a₀b₀ ⊗ ((1⊗𝔞') ⋄ 𝔟') + a₀b₀ ⊗ (𝔞' ⋄ (1⊗𝔟')) + κ a₀b₀ (𝔞' ⋄ 𝔟')
//! ```
//!
//! where the last term multiplies `a₀b₀` into the first slot. Results on
//! pairs of words are memoized per context.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::algebra::Algebra;
use crate::base::{BaseInstance, Monomial};
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::operators::OperatorInstance;
use crate::rational::Rational;
use crate::tensor::{MrbElement, TensorWord};

type PairCache = HashMap<(TensorWord, TensorWord), LinComb<TensorWord>>;

/// A base instance together with the weight `κ`.
#[derive(Clone)]
pub struct MrbContext {
    instance: BaseInstance,
    kappa: Rational,
    cache: Arc<RwLock<PairCache>>,
}

impl fmt::Debug for MrbContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MrbContext")
            .field("instance", &self.instance)
            .field("kappa", &self.kappa)
            .finish()
    }
}

impl PartialEq for MrbContext {
    fn eq(&self, other: &Self) -> bool {
        self.instance == other.instance && self.kappa == other.kappa
    }
}

impl MrbContext {
    pub fn new(instance: BaseInstance, kappa: Rational) -> Self {
        MrbContext {
            instance,
            kappa,
            cache: Arc::default(),
        }
    }

    pub fn instance(&self) -> &BaseInstance {
        &self.instance
    }

    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }

    pub(crate) fn ensure_element(&self, e: &MrbElement) -> Result<()> {
        self.instance.ensure_same(e.instance())
    }

    /// `a ⋄ b`, extended bilinearly.
    pub fn diamond(&self, a: &MrbElement, b: &MrbElement) -> Result<MrbElement> {
        self.ensure_element(a)?;
        self.ensure_element(b)?;
        let terms = a
            .terms()
            .bilinear(b.terms(), |x, y| self.diamond_words(x, y));
        Ok(MrbElement::from_lincomb(&self.instance, terms))
    }

    /// `⋄` on a pair of pure words.
    pub fn diamond_words(&self, a: &TensorWord, b: &TensorWord) -> LinComb<TensorWord> {
        if a.len() == 1 && b.len() == 1 {
            return LinComb::basis(TensorWord::single(a.head().mul(b.head())));
        }
        if b.len() == 1 {
            return LinComb::basis(a.mul_head(b.head()));
        }
        if a.len() == 1 {
            return LinComb::basis(b.mul_head(a.head()));
        }
        let key = if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        if let Some(hit) = self.cache.read().expect("cache poisoned").get(&key) {
            return hit.clone();
        }

        let head = a.head().mul(b.head());
        let a_tail = a.tail().expect("length checked");
        let b_tail = b.tail().expect("length checked");
        let one = Monomial::one();

        let mut out = LinComb::zero();
        let left = self.diamond_words(&a_tail.prepend(one.clone()), &b_tail);
        out.add_assign(&left.map_keys(|w| w.prepend(head.clone())));
        let right = self.diamond_words(&a_tail, &b_tail.prepend(one));
        out.add_assign(&right.map_keys(|w| w.prepend(head.clone())));
        if !self.kappa.is_zero() {
            let inner = self.diamond_words(&a_tail, &b_tail);
            out.add_scaled(&self.kappa, &inner.map_keys(|w| w.mul_head(&head)));
        }

        self.cache
            .write()
            .expect("cache poisoned")
            .insert(key, out.clone());
        out
    }

    /// The operator `P(𝔞) = 1_A ⊗ 𝔞`.
    pub fn operator_p(&self, a: &MrbElement) -> MrbElement {
        operator_p(a)
    }

    /// The unique MRB homomorphism `f̄: Ш(A) → R` extending `f`, built by
    /// `f̄(a₀⊗𝔞') = f(a₀)·P(f̄(𝔞'))`.
    pub fn lift<C: Algebra>(&self, f: BaseMap<C>, target: OperatorInstance<C>) -> Result<Lift<C>> {
        if target.weight() != &self.kappa {
            return Err(Error::WeightMismatch {
                context: self.kappa.to_string(),
                target: target.weight().to_string(),
            });
        }
        for g in self.instance.generators() {
            if !f.images.contains_key(g) {
                return Err(Error::UnknownGenerator {
                    generator: g.to_string(),
                    instance: format!("lift map over {}", self.instance),
                });
            }
        }
        Ok(Lift {
            ctx: self.clone(),
            f,
            target,
        })
    }
}

/// `P(𝔞) = 1_A ⊗ 𝔞`, linear.
pub fn operator_p(a: &MrbElement) -> MrbElement {
    MrbElement::from_lincomb(
        a.instance(),
        a.terms().map_keys(|w| w.prepend(Monomial::one())),
    )
}

/// An algebra map `f: A → R` fixed by the images of the generators of `A`.
#[derive(Clone)]
pub struct BaseMap<C: Algebra> {
    carrier: C,
    images: BTreeMap<String, C::Elem>,
}

impl<C: Algebra> BaseMap<C> {
    /// The structure map `k → R` for the trivial base.
    pub fn unit(carrier: C) -> Self {
        BaseMap {
            carrier,
            images: BTreeMap::new(),
        }
    }

    pub fn new(carrier: C, images: impl IntoIterator<Item = (String, C::Elem)>) -> Self {
        BaseMap {
            carrier,
            images: images.into_iter().collect(),
        }
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Result<C::Elem> {
        let mut acc = self.carrier.one();
        for (g, e) in m.exponents() {
            let img = self.images.get(g).ok_or_else(|| Error::UnknownGenerator {
                generator: g.to_string(),
                instance: "lift map".into(),
            })?;
            if e < 0 {
                return Err(Error::NegativeExponent {
                    generator: g.to_string(),
                    exponent: e,
                });
            }
            for _ in 0..e {
                acc = self.carrier.mul(&acc, img);
            }
        }
        Ok(acc)
    }
}

/// The evaluator returned by [`MrbContext::lift`].
pub struct Lift<C: Algebra> {
    ctx: MrbContext,
    f: BaseMap<C>,
    target: OperatorInstance<C>,
}

impl<C: Algebra> Lift<C> {
    pub fn target(&self) -> &OperatorInstance<C> {
        &self.target
    }

    pub fn apply_word(&self, w: &TensorWord) -> Result<C::Elem> {
        let head = self.f.apply_monomial(w.head())?;
        match w.tail() {
            None => Ok(head),
            Some(rest) => {
                let inner = self.apply_word(&rest)?;
                let p = self.target.apply(&inner);
                Ok(self.target.carrier().mul(&head, &p))
            }
        }
    }

    pub fn apply(&self, e: &MrbElement) -> Result<C::Elem> {
        self.ctx.ensure_element(e)?;
        let carrier = self.target.carrier();
        let mut acc = carrier.zero();
        for (w, c) in e.terms().iter() {
            let img = self.apply_word(w)?;
            acc = carrier.add(&acc, &carrier.scale(c, &img));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseElement;

    fn ctx(kappa: i64) -> MrbContext {
        MrbContext::new(BaseInstance::Trivial, Rational::from(kappa))
    }

    fn u(n: usize) -> MrbElement {
        MrbElement::u(n)
    }

    fn lin(terms: &[(i64, usize)]) -> MrbElement {
        MrbElement::from_terms(
            &BaseInstance::Trivial,
            terms
                .iter()
                .map(|(c, n)| (Rational::from(*c), TensorWord::u(*n))),
        )
        .unwrap()
    }

    #[test]
    fn golden_trivial_products() {
        for k in [-1, 0, 2, -4] {
            let c = ctx(k);
            for n in 0..5 {
                assert_eq!(c.diamond(&u(0), &u(n)).unwrap(), u(n));
            }
            assert_eq!(c.diamond(&u(1), &u(1)).unwrap(), lin(&[(2, 2), (k, 0)]));
            assert_eq!(c.diamond(&u(1), &u(2)).unwrap(), lin(&[(3, 3), (2 * k, 1)]));
            assert_eq!(
                c.diamond(&u(2), &u(2)).unwrap(),
                lin(&[(6, 4), (6 * k, 2), (k * k, 0)])
            );
        }
    }

    #[test]
    fn length_one_times_word() {
        let inst = BaseInstance::polynomial(["x", "y", "z"]);
        let c = MrbContext::new(inst.clone(), Rational::from(3));
        let x = MrbElement::word(&inst, TensorWord::single(Monomial::var("x"))).unwrap();
        let yz = MrbElement::word(
            &inst,
            TensorWord::new(vec![Monomial::var("y"), Monomial::var("z")]).unwrap(),
        )
        .unwrap();
        let expected = MrbElement::word(
            &inst,
            TensorWord::new(vec![
                Monomial::var("x").mul(&Monomial::var("y")),
                Monomial::var("z"),
            ])
            .unwrap(),
        )
        .unwrap();
        assert_eq!(c.diamond(&x, &yz).unwrap(), expected);
    }

    #[test]
    fn operator_p_examples() {
        assert_eq!(operator_p(&u(0)), u(1));
        let inst = BaseInstance::polynomial(["x", "y"]);
        let xy = MrbElement::word(
            &inst,
            TensorWord::new(vec![Monomial::var("x"), Monomial::var("y")]).unwrap(),
        )
        .unwrap();
        let expected = MrbElement::word(
            &inst,
            TensorWord::new(vec![
                Monomial::one(),
                Monomial::var("x"),
                Monomial::var("y"),
            ])
            .unwrap(),
        )
        .unwrap();
        assert_eq!(operator_p(&xy), expected);
        assert_eq!(operator_p(&lin(&[(2, 0), (1, 1)])), lin(&[(2, 1), (1, 2)]));
    }

    #[test]
    fn instance_mismatch_is_reported() {
        let c = ctx(1);
        let other = MrbElement::one(&BaseInstance::polynomial(["x"]));
        assert!(matches!(
            c.diamond(&u(1), &other),
            Err(Error::InstanceMismatch { .. })
        ));
    }

    #[test]
    fn mrb_identity_on_words() {
        let c = ctx(-4);
        for a in 0..4 {
            for b in 0..4 {
                let (ua, ub) = (u(a), u(b));
                let lhs = c.diamond(&operator_p(&ua), &operator_p(&ub)).unwrap();
                let rhs = operator_p(&c.diamond(&ua, &operator_p(&ub)).unwrap())
                    .add(&operator_p(&c.diamond(&operator_p(&ua), &ub).unwrap()))
                    .unwrap()
                    .add(&c.diamond(&ua, &ub).unwrap().scale(c.kappa()))
                    .unwrap();
                assert_eq!(lhs, rhs, "a = u_{a}, b = u_{b}");
            }
        }
    }

    #[test]
    fn scalar_slots_behave_linearly() {
        let inst = BaseInstance::polynomial(["x"]);
        let c = MrbContext::new(inst.clone(), Rational::from(2));
        let two = MrbElement::from_base(&BaseElement::constant(&inst, Rational::from(2)));
        let w = MrbElement::word(
            &inst,
            TensorWord::new(vec![Monomial::one(), Monomial::var("x")]).unwrap(),
        )
        .unwrap();
        assert_eq!(c.diamond(&two, &w).unwrap(), w.scale(&Rational::from(2)));
    }
}
