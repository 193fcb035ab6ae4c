//! The doubled coalgebra of a Markov coalgebra and its automorphisms.
//!
//! Doubling adjoins a shadow label `h_i` per basis label `v_i` and
//! extends both coproducts:
//!
//! ```text
//! delta* v_i = delta v_i + v_i (x) h_i      delta* h_i = h_i (x) v_i - h_i (x) h_i
//! tilde* v_i = tilde v_i + h_i (x) v_i      tilde* h_i = v_i (x) h_i - h_i (x) h_i
//! ```
//!
//! The extended coproducts factor through a pair of mutually inverse
//! automorphisms per side. With `in(v_i)` the weighted in-neighbour sum
//! read off `tilde v_i`:
//!
//! ```text
//! psi_left: v_i -> in(v_i) + h_i            h_i -> in(v_i) + h_i + v_i
//! phi_left: v_i -> h_i - v_i                h_i -> sum_k w_k (v_k - h_k) + v_i
//! ```
//!
//! and `tilde* v_i = psi_left(v_i) (x) v_i`, `tilde* h_i = -phi_left(v_i) (x) h_i`.
//! The right-hand pair uses the weighted out-neighbour sums from `delta`
//! with the mirrored factorization through the second tensor leg. The
//! left and right automorphisms coincide exactly when the base coalgebra
//! is cocommutative, which is what makes non-cocommutative bases yield
//! two distinct solutions downstream.

use crate::algebra::{tensor_vv, Basis, BasisLabel, FreeVector, LinearEndo, Tensor2};
use crate::coalgebra::{Coproduct, LCoalgebra};
use crate::error::{Error, Result};

/// A Markov coalgebra together with its double and the four derived
/// automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionCoalgebra {
    base: LCoalgebra,
    full: LCoalgebra,
    psi_left: LinearEndo,
    phi_left: LinearEndo,
    psi_right: LinearEndo,
    phi_right: LinearEndo,
}

impl CompanionCoalgebra {
    /// Doubles a Markov-shaped coalgebra over vertex labels.
    ///
    /// Rejects coalgebras that already contain shadow labels, vertex
    /// names that collide with the `h_` shadow prefix, and coproducts
    /// that are not of Markov shape (every right term must start with its
    /// own label, every left term must end with it).
    pub fn build(base: &LCoalgebra) -> Result<Self> {
        for l in base.basis().labels() {
            if l.is_shadow() {
                return Err(Error::NotMarkov(format!(
                    "basis already contains the shadow label `{l}`"
                )));
            }
            if l.name().starts_with("h_") {
                return Err(Error::ShadowNameClash(l.name().to_string()));
            }
        }
        for v in base.basis().labels() {
            for ((x, _), _) in base.right(v).expect("total").terms() {
                if x != v {
                    return Err(Error::NotMarkov(format!(
                        "delta {v} contains a term with first leg `{x}`"
                    )));
                }
            }
            for ((_, y), _) in base.left(v).expect("total").terms() {
                if y != v {
                    return Err(Error::NotMarkov(format!(
                        "tilde {v} contains a term with second leg `{y}`"
                    )));
                }
            }
        }

        let n = base.dim();
        let mut labels = Vec::with_capacity(2 * n);
        labels.extend(base.basis().labels().iter().cloned());
        labels.extend(
            base.basis()
                .labels()
                .iter()
                .map(|l| BasisLabel::shadow(l.name().to_string())),
        );
        let full_basis = Basis::new(labels)?;

        let shadow = |v: &BasisLabel| BasisLabel::shadow(v.name().to_string());

        let mut right = Coproduct::new();
        let mut left = Coproduct::new();
        for v in base.basis().labels() {
            let h = shadow(v);
            let mut r = base.right(v).expect("total").clone();
            r.insert_add((v.clone(), h.clone()), crate::scalar::int(1));
            right.set(v.clone(), r);
            let mut l = base.left(v).expect("total").clone();
            l.insert_add((h.clone(), v.clone()), crate::scalar::int(1));
            left.set(v.clone(), l);

            right.set(
                h.clone(),
                Tensor2::from_terms([
                    ((h.clone(), v.clone()), crate::scalar::int(1)),
                    ((h.clone(), h.clone()), crate::scalar::int(-1)),
                ]),
            );
            left.set(
                h.clone(),
                Tensor2::from_terms([
                    ((v.clone(), h.clone()), crate::scalar::int(1)),
                    ((h.clone(), h.clone()), crate::scalar::int(-1)),
                ]),
            );
        }
        let full = LCoalgebra::new(full_basis.clone(), right, left)?;

        // Weighted neighbour sums of each vertex label.
        let in_sum = |v: &BasisLabel| -> FreeVector {
            FreeVector::from_terms(
                base.left(v)
                    .expect("total")
                    .terms()
                    .map(|((k, _), w)| (k.clone(), w.clone())),
            )
        };
        let out_sum = |v: &BasisLabel| -> FreeVector {
            FreeVector::from_terms(
                base.right(v)
                    .expect("total")
                    .terms()
                    .map(|((_, k), w)| (k.clone(), w.clone())),
            )
        };

        let psi = |sum_of: &dyn Fn(&BasisLabel) -> FreeVector| -> Result<LinearEndo> {
            LinearEndo::from_columns(full_basis.clone(), |l| {
                let v = BasisLabel::vertex(l.name().to_string());
                let mut col = sum_of(&v);
                col.insert_add(shadow(&v), crate::scalar::int(1));
                if l.is_shadow() {
                    col.insert_add(v, crate::scalar::int(1));
                }
                col
            })
        };
        let phi = |sum_of: &dyn Fn(&BasisLabel) -> FreeVector| -> Result<LinearEndo> {
            LinearEndo::from_columns(full_basis.clone(), |l| {
                let v = BasisLabel::vertex(l.name().to_string());
                if l.is_shadow() {
                    let mut col = FreeVector::zero();
                    for (k, w) in sum_of(&v).terms() {
                        col.insert_add(k.clone(), w.clone());
                        col.insert_add(shadow(k), -w.clone());
                    }
                    col.insert_add(v, crate::scalar::int(1));
                    col
                } else {
                    FreeVector::from_terms([
                        (shadow(&v), crate::scalar::int(1)),
                        (v, crate::scalar::int(-1)),
                    ])
                }
            })
        };

        Ok(CompanionCoalgebra {
            base: base.clone(),
            full,
            psi_left: psi(&in_sum)?,
            phi_left: phi(&in_sum)?,
            psi_right: psi(&out_sum)?,
            phi_right: phi(&out_sum)?,
        })
    }

    pub fn base(&self) -> &LCoalgebra {
        &self.base
    }

    /// The doubled coalgebra.
    pub fn full(&self) -> &LCoalgebra {
        &self.full
    }

    pub fn basis(&self) -> &Basis {
        self.full.basis()
    }

    pub fn psi_left(&self) -> &LinearEndo {
        &self.psi_left
    }

    pub fn phi_left(&self) -> &LinearEndo {
        &self.phi_left
    }

    pub fn psi_right(&self) -> &LinearEndo {
        &self.psi_right
    }

    pub fn phi_right(&self) -> &LinearEndo {
        &self.phi_right
    }

    /// True when the left and right automorphisms differ, i.e. when the
    /// base coalgebra is not cocommutative.
    pub fn is_distinct(&self) -> bool {
        self.psi_left != self.psi_right
    }

    /// Checks that the doubled coproducts factor through the stored
    /// automorphisms on every basis label.
    pub fn verify_factorization(&self) -> bool {
        factorization_holds(
            &self.base,
            &self.full,
            &self.psi_left,
            &self.phi_left,
            &self.psi_right,
            &self.phi_right,
        )
    }

    /// The doubled coproducts never have a cocommutativity defect on
    /// shadow labels; the defect lives entirely on the vertex labels and
    /// equals the base defect there.
    pub fn shadow_defects_are_zero(&self) -> bool {
        self.full
            .is_l_cocommutative()
            .defects
            .iter()
            .all(|(l, _)| !l.is_shadow())
    }
}

fn factorization_holds(
    base: &LCoalgebra,
    full: &LCoalgebra,
    psi_left: &LinearEndo,
    phi_left: &LinearEndo,
    psi_right: &LinearEndo,
    phi_right: &LinearEndo,
) -> bool {
    base.basis().labels().iter().all(|v| {
        let h = BasisLabel::shadow(v.name().to_string());
        let v_vec = FreeVector::single(v.clone());
        let h_vec = FreeVector::single(h.clone());

        let tilde_v = full.left(v).expect("total");
        let tilde_h = full.left(&h).expect("total");
        let delta_v = full.right(v).expect("total");
        let delta_h = full.right(&h).expect("total");

        *tilde_v == tensor_vv(psi_left.column(v).expect("basis"), &v_vec)
            && *tilde_h == tensor_vv(&phi_left.column(v).expect("basis").neg(), &h_vec)
            && *delta_v == tensor_vv(&v_vec, psi_right.column(v).expect("basis"))
            && *delta_h == tensor_vv(&h_vec, &phi_right.column(v).expect("basis").neg())
    })
}
