//! Carriers for operators: commutative algebras with an exposed basis.

use std::fmt;

use rand::Rng;

use crate::base::{BaseElement, BaseInstance, Monomial};
use crate::linear::LinComb;
use crate::product::MrbContext;
use crate::rational::Rational;
use crate::tensor::{MrbElement, TensorWord};

/// A commutative, associative algebra over `ℚ` whose elements decompose on a
/// basis. Operators on a carrier are defined by their values on the basis.
pub trait Algebra: Clone + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;
    type Basis: Ord + Clone + fmt::Debug + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Rational, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn decompose(&self, a: &Self::Elem) -> Vec<(Self::Basis, Rational)>;
    fn basis_element(&self, b: &Self::Basis) -> Self::Elem;
    fn random_basis<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Basis;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(&Rational::from(-1), b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.decompose(a).is_empty()
    }

    /// One to three basis elements with small integer coefficients.
    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        let mut acc = self.zero();
        for _ in 0..rng.random_range(1..=3) {
            let c = Rational::from(rng.random_range(-3i64..=3));
            let b = self.random_basis(rng);
            acc = self.add(&acc, &self.scale(&c, &self.basis_element(&b)));
        }
        acc
    }
}

/// The base algebra `A` itself (trivial, polynomial or Laurent).
#[derive(Clone, Debug, PartialEq)]
pub struct BaseAlgebra {
    instance: BaseInstance,
}

impl BaseAlgebra {
    pub fn new(instance: BaseInstance) -> Self {
        BaseAlgebra { instance }
    }

    pub fn instance(&self) -> &BaseInstance {
        &self.instance
    }

    /// `ε^k` on a Laurent base (or `x^k` for the first polynomial generator).
    pub fn power(&self, k: i32) -> BaseElement {
        match self.instance.generators().first() {
            Some(g) => BaseElement::from_lincomb(
                &self.instance,
                LinComb::basis(Monomial::from_exponents([(*g, k)])),
            ),
            None => BaseElement::one(&self.instance),
        }
    }
}

impl Algebra for BaseAlgebra {
    type Elem = BaseElement;
    type Basis = Monomial;

    fn name(&self) -> String {
        self.instance.to_string()
    }

    fn zero(&self) -> BaseElement {
        BaseElement::zero(&self.instance)
    }

    fn one(&self) -> BaseElement {
        BaseElement::one(&self.instance)
    }

    fn add(&self, a: &BaseElement, b: &BaseElement) -> BaseElement {
        a.add(b).expect("carrier elements share one instance")
    }

    fn scale(&self, c: &Rational, a: &BaseElement) -> BaseElement {
        a.scale(c)
    }

    fn mul(&self, a: &BaseElement, b: &BaseElement) -> BaseElement {
        a.mul(b).expect("carrier elements share one instance")
    }

    fn decompose(&self, a: &BaseElement) -> Vec<(Monomial, Rational)> {
        a.terms()
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }

    fn basis_element(&self, b: &Monomial) -> BaseElement {
        BaseElement::from_lincomb(&self.instance, LinComb::basis(b.clone()))
    }

    fn random_basis<R: Rng + ?Sized>(&self, rng: &mut R) -> Monomial {
        match &self.instance {
            BaseInstance::Trivial => Monomial::one(),
            BaseInstance::Laurent(g) => {
                Monomial::from_exponents([(&**g, rng.random_range(-3..=3))])
            }
            BaseInstance::Polynomial(gens) => {
                let deg = rng.random_range(0..=3);
                let mut m = Monomial::one();
                for _ in 0..deg {
                    let g = &gens[rng.random_range(0..gens.len())];
                    m = m.mul(&Monomial::var(g));
                }
                m
            }
        }
    }
}

/// The free algebra `(Ш(A), ⋄)` of a given weight, as a carrier.
#[derive(Clone, Debug)]
pub struct FreeMrbAlgebra {
    ctx: MrbContext,
    max_len: usize,
}

impl FreeMrbAlgebra {
    pub fn new(ctx: MrbContext) -> Self {
        FreeMrbAlgebra { ctx, max_len: 3 }
    }

    pub fn context(&self) -> &MrbContext {
        &self.ctx
    }
}

impl Algebra for FreeMrbAlgebra {
    type Elem = MrbElement;
    type Basis = TensorWord;

    fn name(&self) -> String {
        format!("free({}, kappa={})", self.ctx.instance(), self.ctx.kappa())
    }

    fn zero(&self) -> MrbElement {
        MrbElement::zero(self.ctx.instance())
    }

    fn one(&self) -> MrbElement {
        MrbElement::one(self.ctx.instance())
    }

    fn add(&self, a: &MrbElement, b: &MrbElement) -> MrbElement {
        a.add(b).expect("carrier elements share one instance")
    }

    fn scale(&self, c: &Rational, a: &MrbElement) -> MrbElement {
        a.scale(c)
    }

    fn mul(&self, a: &MrbElement, b: &MrbElement) -> MrbElement {
        self.ctx
            .diamond(a, b)
            .expect("carrier elements share one instance")
    }

    fn decompose(&self, a: &MrbElement) -> Vec<(TensorWord, Rational)> {
        a.terms()
            .iter()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect()
    }

    fn basis_element(&self, b: &TensorWord) -> MrbElement {
        MrbElement::from_lincomb(self.ctx.instance(), LinComb::basis(b.clone()))
    }

    fn random_basis<R: Rng + ?Sized>(&self, rng: &mut R) -> TensorWord {
        crate::random::random_word(rng, self.ctx.instance(), self.max_len, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn laurent_sampling_stays_in_range() {
        let alg = BaseAlgebra::new(BaseInstance::laurent("e"));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let m = alg.random_basis(&mut rng);
            assert!((-3..=3).contains(&m.exponent("e")));
        }
    }

    #[test]
    fn free_carrier_multiplies_with_diamond() {
        let alg = FreeMrbAlgebra::new(MrbContext::new(BaseInstance::Trivial, Rational::from(1)));
        let p = alg.mul(&MrbElement::u(1), &MrbElement::u(1));
        assert_eq!(p.to_string(), "2*u_2 + u_0");
    }
}
