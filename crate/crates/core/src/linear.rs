//! Sparse finite linear combinations over an ordered basis.

use std::collections::btree_map::{self, BTreeMap};

use crate::rational::Rational;

/// A finite formal sum `Σ c_k · k` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(Rational::one(), key)
    }

    pub fn term(coeff: Rational, key: K) -> Self {
        let mut out = Self::zero();
        out.add_term(coeff, key);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, coeff: Rational, key: K) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, coeff: &Rational, other: &Self) {
        if coeff.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(coeff * c, k.clone());
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.add_scaled(&Rational::one(), other);
    }

    pub fn sub_assign(&mut self, other: &Self) {
        self.add_scaled(&Rational::from(-1), other);
    }

    pub fn scaled(&self, coeff: &Rational) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * coeff))
                .collect(),
        }
    }

    /// Ascending basis order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Extend a map on basis elements linearly.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(c, &f(k));
        }
        out
    }

    /// Fallible variant of [`LinComb::map_linear`].
    pub fn try_map_linear<L: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<LinComb<L>, E>,
    ) -> Result<LinComb<L>, E> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(c, &f(k)?);
        }
        Ok(out)
    }

    /// Relabel basis elements; colliding images are merged.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(c.clone(), f(k));
        }
        out
    }

    /// Bilinear extension of a map on pairs of basis elements.
    pub fn bilinear<L: Ord + Clone, M: Ord + Clone>(
        &self,
        other: &LinComb<L>,
        mut f: impl FnMut(&K, &L) -> LinComb<M>,
    ) -> LinComb<M> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            for (l, d) in &other.terms {
                out.add_scaled(&(c * d), &f(k, l));
            }
        }
        out
    }

    pub fn try_bilinear<L: Ord + Clone, M: Ord + Clone, E>(
        &self,
        other: &LinComb<L>,
        mut f: impl FnMut(&K, &L) -> Result<LinComb<M>, E>,
    ) -> Result<LinComb<M>, E> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            for (l, d) in &other.terms {
                out.add_scaled(&(c * d), &f(k, l)?);
            }
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> FromIterator<(Rational, K)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (Rational, K)>>(iter: I) -> Self {
        let mut out = LinComb::zero();
        for (c, k) in iter {
            out.add_term(c, k);
        }
        out
    }
}

impl<K: Ord> IntoIterator for LinComb<K> {
    type Item = (K, Rational);
    type IntoIter = btree_map::IntoIter<K, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}
