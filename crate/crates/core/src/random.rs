//! Seeded sampling of words and elements, plus basis enumeration by degree.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::base::{BaseInstance, Monomial};
use crate::linear::LinComb;
use crate::rational::Rational;
use crate::tensor::{MrbElement, TensorWord};

/// The generator used by every seeded suite.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random monomial of total degree at most `max_deg`.
pub fn random_monomial<R: Rng + ?Sized>(
    rng: &mut R,
    instance: &BaseInstance,
    max_deg: u32,
) -> Monomial {
    match instance {
        BaseInstance::Trivial => Monomial::one(),
        BaseInstance::Laurent(g) => {
            let k = max_deg as i32;
            Monomial::from_exponents([(&**g, rng.random_range(-k..=k))])
        }
        BaseInstance::Polynomial(gens) => {
            let deg = rng.random_range(0..=max_deg);
            let mut m = Monomial::one();
            for _ in 0..deg {
                m = m.mul(&Monomial::var(&gens[rng.random_range(0..gens.len())]));
            }
            m
        }
    }
}

/// A random word with `1..=max_len` slots, each of degree at most `max_slot_deg`.
pub fn random_word<R: Rng + ?Sized>(
    rng: &mut R,
    instance: &BaseInstance,
    max_len: usize,
    max_slot_deg: u32,
) -> TensorWord {
    let len = rng.random_range(1..=max_len.max(1));
    let slots = (0..len)
        .map(|_| random_monomial(rng, instance, max_slot_deg))
        .collect();
    TensorWord::new(slots).expect("len >= 1")
}

/// A random element with up to `max_terms` words of length at most `max_len`
/// and coefficients in `[-5, 5]`.
pub fn random_element<R: Rng + ?Sized>(
    rng: &mut R,
    instance: &BaseInstance,
    max_len: usize,
    max_terms: usize,
) -> MrbElement {
    let n = rng.random_range(1..=max_terms.max(1));
    let terms: LinComb<TensorWord> = (0..n)
        .map(|_| {
            let mut c = 0;
            while c == 0 {
                c = rng.random_range(-5i64..=5);
            }
            (Rational::from(c), random_word(rng, instance, max_len, 1))
        })
        .collect();
    MrbElement::from_lincomb(instance, terms)
}

/// A random element of the filtration level `𝔄_max_degree`.
pub fn random_element_of_degree<R: Rng + ?Sized>(
    rng: &mut R,
    instance: &BaseInstance,
    max_degree: usize,
    max_terms: usize,
) -> MrbElement {
    let basis = basis_words(instance, max_degree);
    let n = rng.random_range(1..=max_terms.max(1)).min(basis.len());
    // distinct words, so the result is never zero
    let picks = rand::seq::index::sample(rng, basis.len(), n);
    let terms: LinComb<TensorWord> = picks
        .into_iter()
        .map(|i| {
            let mut c = 0;
            while c == 0 {
                c = rng.random_range(-5i64..=5);
            }
            (Rational::from(c), basis[i].clone())
        })
        .collect();
    MrbElement::from_lincomb(instance, terms)
}

/// All monomials of the instance of total degree exactly `d`.
fn monomials_of_degree(gens: &[&str], d: usize) -> Vec<Monomial> {
    if d == 0 {
        return vec![Monomial::one()];
    }
    let Some((first, rest)) = gens.split_first() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for e in 0..=d {
        let head = Monomial::from_exponents([(*first, e as i32)]);
        for tail in monomials_of_degree(rest, d - e) {
            out.push(head.mul(&tail));
        }
    }
    out
}

/// Every basis word of filtration degree at most `max_degree`, in canonical
/// order. Laurent bases have no filtration and yield nothing.
pub fn basis_words(instance: &BaseInstance, max_degree: usize) -> Vec<TensorWord> {
    if matches!(instance, BaseInstance::Laurent(_)) {
        return Vec::new();
    }
    let gens = instance.generators();
    let by_degree: Vec<Vec<Monomial>> = (0..=max_degree)
        .map(|d| monomials_of_degree(&gens, d))
        .collect();
    let mut out = Vec::new();
    // word of length L costs L - 1 plus its slot degrees
    fn extend(
        prefix: &mut Vec<Monomial>,
        remaining_slots: usize,
        budget: usize,
        by_degree: &[Vec<Monomial>],
        out: &mut Vec<TensorWord>,
    ) {
        if remaining_slots == 0 {
            out.push(TensorWord::new(prefix.clone()).expect("nonempty"));
            return;
        }
        for d in 0..=budget {
            for m in &by_degree[d] {
                prefix.push(m.clone());
                extend(prefix, remaining_slots - 1, budget - d, by_degree, out);
                prefix.pop();
            }
        }
    }
    for len in 1..=max_degree + 1 {
        extend(
            &mut Vec::new(),
            len,
            max_degree + 1 - len,
            &by_degree,
            &mut out,
        );
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_basis_is_u_words() {
        let words = basis_words(&BaseInstance::Trivial, 3);
        assert_eq!(words, (0..=3).map(TensorWord::u).collect::<Vec<_>>());
    }

    #[test]
    fn polynomial_basis_respects_degree() {
        let inst = BaseInstance::polynomial(["x"]);
        let words = basis_words(&inst, 2);
        // degree 0: [1]; 1: [x], [1|1]; 2: [x^2], [x|1], [1|x], [1|1|1]
        assert_eq!(words.len(), 7);
        assert!(words.iter().all(|w| w.degree() <= 2));
    }

    #[test]
    fn seeded_sampling_is_deterministic() {
        let inst = BaseInstance::polynomial(["x", "y"]);
        let a = random_element(&mut rng(9), &inst, 4, 3);
        let b = random_element(&mut rng(9), &inst, 4, 3);
        assert_eq!(a, b);
    }
}
