//! Formal linear combinations over an ordered key type.
//!
//! `FormalSum<K>` is the single representation behind vectors, 2-tensors,
//! 3-tensors, and n-tensors: a finite map from basis keys to nonzero
//! scalars. The zero-coefficient invariant is maintained by every
//! operation, so structural equality is exactly equality of linear
//! combinations.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num::Zero;

use crate::scalar::Scalar;

use super::label::BasisLabel;

/// A finite formal sum with nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalSum<K: Ord + Clone> {
    terms: BTreeMap<K, Scalar>,
}

/// Element of the free vector space on a basis.
pub type FreeVector = FormalSum<BasisLabel>;
/// Element of the tensor square.
pub type Tensor2 = FormalSum<(BasisLabel, BasisLabel)>;
/// Element of the tensor cube.
pub type Tensor3 = FormalSum<(BasisLabel, BasisLabel, BasisLabel)>;
/// Element of an n-fold tensor power; every key must have the same length.
pub type TensorN = FormalSum<Vec<BasisLabel>>;

impl<K: Ord + Clone> FormalSum<K> {
    pub fn zero() -> Self {
        FormalSum {
            terms: BTreeMap::new(),
        }
    }

    /// The basis element `key` with coefficient 1.
    pub fn single(key: K) -> Self {
        Self::term(key, Scalar::from_integer(1.into()))
    }

    pub fn term(key: K, coeff: Scalar) -> Self {
        let mut s = Self::zero();
        s.insert_add(key, coeff);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Scalar)>>(terms: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in terms {
            s.insert_add(k, c);
        }
        s
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

    /// Coefficient of `key`, zero when absent.
    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn get(&self, key: &K) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Adds `coeff` to the coefficient of `key`, dropping the term if the
    /// result is zero.
    pub fn insert_add(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.insert_add(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.insert_add(k.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        FormalSum {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        FormalSum {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * factor))
                .collect(),
        }
    }

    /// True when every coefficient actually stored is nonzero.
    pub fn is_canonical(&self) -> bool {
        self.terms.values().all(|c| !c.is_zero())
    }
}

impl<K: Ord + Clone> Add for &FormalSum<K> {
    type Output = FormalSum<K>;
    fn add(self, rhs: Self) -> FormalSum<K> {
        FormalSum::add(self, rhs)
    }
}

impl<K: Ord + Clone> Sub for &FormalSum<K> {
    type Output = FormalSum<K>;
    fn sub(self, rhs: Self) -> FormalSum<K> {
        FormalSum::sub(self, rhs)
    }
}

impl<K: Ord + Clone> Neg for &FormalSum<K> {
    type Output = FormalSum<K>;
    fn neg(self) -> FormalSum<K> {
        FormalSum::neg(self)
    }
}

impl Tensor2 {
    /// The transposition `x (x) y -> y (x) x`, extended linearly.
    pub fn flip(&self) -> Tensor2 {
        Tensor2::from_terms(
            self.terms()
                .map(|((x, y), c)| ((y.clone(), x.clone()), c.clone())),
        )
    }
}

/// Tensor product of two vectors.
pub fn tensor_vv(u: &FreeVector, v: &FreeVector) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (x, a) in u.terms() {
        for (y, b) in v.terms() {
            out.insert_add((x.clone(), y.clone()), a * b);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn v(name: &str) -> BasisLabel {
        BasisLabel::vertex(name)
    }

    #[test]
    fn cancellation_yields_zero_free_form() {
        let a = FreeVector::single(v("a"));
        let b = FreeVector::single(v("b"));
        let sum = a.add(&b).add(&b.neg());
        assert_eq!(sum, a);
        assert!(sum.is_canonical());
    }

    #[test]
    fn scaling_by_zero_empties_a_tensor() {
        let t = Tensor2::single((v("a"), v("b")));
        assert!(t.scale(&int(0)).is_zero());
    }

    #[test]
    fn equality_ignores_term_order() {
        let t1 = Tensor2::from_terms([((v("a"), v("a")), int(1)), ((v("b"), v("c")), int(1))]);
        let t2 = Tensor2::from_terms([((v("b"), v("c")), int(1)), ((v("a"), v("a")), int(1))]);
        assert_eq!(t1, t2);
    }

    #[test]
    fn flip_swaps_factors() {
        let t = Tensor2::term((v("a"), v("b")), ratio(1, 2));
        assert_eq!(t.flip(), Tensor2::term((v("b"), v("a")), ratio(1, 2)));
    }

    #[test]
    fn tensor_of_vectors_distributes() {
        let u = FreeVector::from_terms([(v("a"), int(2)), (v("b"), int(1))]);
        let w = FreeVector::single(v("c"));
        let t = tensor_vv(&u, &w);
        assert_eq!(t.coeff(&(v("a"), v("c"))), int(2));
        assert_eq!(t.coeff(&(v("b"), v("c"))), int(1));
        assert_eq!(t.len(), 2);
    }
}
