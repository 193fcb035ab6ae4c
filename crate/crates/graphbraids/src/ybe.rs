//! Endomorphisms of a tensor square and the Yang-Baxter equation.
//!
//! A [`TwoTensorEndo`] stores its action on every ordered basis pair and
//! optionally remembers how it was built:
//!
//! * `tau(basis)` is the transposition `x (x) y -> y (x) x`;
//! * `hat1(psi)` sends `x (x) y -> psi(y) (x) x` and `hat2(psi)` sends
//!   `x (x) y -> y (x) psi(x)`; both solve the Yang-Baxter equation for
//!   every invertible `psi`;
//! * `cross_map(a, b)` sends `x (x) y -> b(y) (x) a(x)` and solves it
//!   exactly when `a` and `b` commute.
//!
//! [`TwoTensorEndo::verify_ybe`] decides
//! `(R (x) id)(id (x) R)(R (x) id) = (id (x) R)(R (x) id)(id (x) R)`
//! by exhausting all basis triples. The lifted maps are applied
//! factor-locally on sparse terms, never as materialized `dim^3` square
//! matrices, and the scan reports the first failing triple in basis
//! order regardless of how many threads participate.

use std::collections::BTreeMap;

use num::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{
    is_valid_name, read_matrix_text, tensor_vv, Basis, BasisLabel, LinearEndo, Tensor2, Tensor3,
};
use crate::error::{Error, Result};
use crate::scalar::{format_scalar, Scalar};

/// How a tensor-square endomorphism was constructed.
#[derive(Clone, Debug)]
pub enum FactoredForm {
    Tau,
    Hat1(LinearEndo),
    Hat2(LinearEndo),
    Cross(LinearEndo, LinearEndo),
    Dense,
}

/// An endomorphism of `W (x) W` given by its action on basis pairs.
///
/// Equality compares the basis and the extensional action only; two maps
/// built through different factored forms are equal when they act the
/// same way.
#[derive(Clone, Debug)]
pub struct TwoTensorEndo {
    basis: Basis,
    action: BTreeMap<(BasisLabel, BasisLabel), Tensor2>,
    form: FactoredForm,
}

/// First failing triple of a Yang-Baxter check, with both evaluated sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YbeCounterexample {
    pub triple: (BasisLabel, BasisLabel, BasisLabel),
    pub lhs: Tensor3,
    pub rhs: Tensor3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YbeReport {
    pub triples_checked: usize,
    pub counterexample: Option<YbeCounterexample>,
}

impl YbeReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl TwoTensorEndo {
    /// The transposition.
    pub fn tau(basis: Basis) -> Self {
        let action = basis
            .pairs_row_major()
            .map(|(x, y)| {
                (
                    (x.clone(), y.clone()),
                    Tensor2::single((y.clone(), x.clone())),
                )
            })
            .collect();
        TwoTensorEndo {
            basis,
            action,
            form: FactoredForm::Tau,
        }
    }

    /// `x (x) y -> psi(y) (x) x`. Requires `psi` invertible.
    pub fn hat1(psi: &LinearEndo) -> Result<Self> {
        psi.invert()?;
        let basis = psi.basis().clone();
        let action = basis
            .pairs_row_major()
            .map(|(x, y)| {
                let col = psi.column(y).expect("basis label");
                let image = Tensor2::from_terms(
                    col.terms()
                        .map(|(u, c)| ((u.clone(), x.clone()), c.clone())),
                );
                ((x.clone(), y.clone()), image)
            })
            .collect();
        Ok(TwoTensorEndo {
            basis,
            action,
            form: FactoredForm::Hat1(psi.clone()),
        })
    }

    /// `x (x) y -> y (x) psi(x)`. Requires `psi` invertible.
    pub fn hat2(psi: &LinearEndo) -> Result<Self> {
        psi.invert()?;
        let basis = psi.basis().clone();
        let action = basis
            .pairs_row_major()
            .map(|(x, y)| {
                let col = psi.column(x).expect("basis label");
                let image = Tensor2::from_terms(
                    col.terms()
                        .map(|(u, c)| ((y.clone(), u.clone()), c.clone())),
                );
                ((x.clone(), y.clone()), image)
            })
            .collect();
        Ok(TwoTensorEndo {
            basis,
            action,
            form: FactoredForm::Hat2(psi.clone()),
        })
    }

    /// `x (x) y -> b(y) (x) a(x)`.
    pub fn cross_map(a: &LinearEndo, b: &LinearEndo) -> Result<Self> {
        if a.basis() != b.basis() {
            return Err(Error::BasisMismatch);
        }
        let basis = a.basis().clone();
        let action = basis
            .pairs_row_major()
            .map(|(x, y)| {
                let image = tensor_vv(
                    b.column(y).expect("basis label"),
                    a.column(x).expect("basis label"),
                );
                ((x.clone(), y.clone()), image)
            })
            .collect();
        Ok(TwoTensorEndo {
            basis,
            action,
            form: FactoredForm::Cross(a.clone(), b.clone()),
        })
    }

    /// Builds a map from an explicit total action on basis pairs.
    pub fn from_action(
        basis: Basis,
        action: BTreeMap<(BasisLabel, BasisLabel), Tensor2>,
    ) -> Result<Self> {
        for ((x, y), image) in &action {
            for l in [x, y] {
                if !basis.contains(l) {
                    return Err(Error::UnknownLabel(l.to_string()));
                }
            }
            for ((u, v), _) in image.terms() {
                for l in [u, v] {
                    if !basis.contains(l) {
                        return Err(Error::UnknownLabel(l.to_string()));
                    }
                }
            }
        }
        for (x, y) in basis.pairs_row_major() {
            if !action.contains_key(&(x.clone(), y.clone())) {
                return Err(Error::MissingColumn(pair_label(x, y)));
            }
        }
        Ok(TwoTensorEndo {
            basis,
            action,
            form: FactoredForm::Dense,
        })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn form(&self) -> &FactoredForm {
        &self.form
    }

    /// Image of a single basis pair.
    pub fn apply_pair(&self, x: &BasisLabel, y: &BasisLabel) -> Result<&Tensor2> {
        self.action
            .get(&(x.clone(), y.clone()))
            .ok_or_else(|| Error::UnknownLabel(pair_label(x, y)))
    }

    /// Linear extension of the pair action.
    pub fn apply2(&self, t: &Tensor2) -> Result<Tensor2> {
        let mut out = Tensor2::zero();
        for ((x, y), c) in t.terms() {
            for (key, w) in self.apply_pair(x, y)?.terms() {
                out.insert_add(key.clone(), c * w);
            }
        }
        Ok(out)
    }

    /// Composition `self` after `other`.
    pub fn compose(&self, other: &TwoTensorEndo) -> Result<TwoTensorEndo> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        let mut action = BTreeMap::new();
        for (pair, image) in &other.action {
            action.insert(pair.clone(), self.apply2(image)?);
        }
        Ok(TwoTensorEndo {
            basis: self.basis.clone(),
            action,
            form: FactoredForm::Dense,
        })
    }

    pub fn is_identity_on_pairs(&self) -> bool {
        self.action
            .iter()
            .all(|(pair, image)| image.len() == 1 && image.coeff(pair).is_one())
    }

    /// Exact inverse, using the factored closed form when one is known
    /// and Gauss-Jordan elimination on the pair basis otherwise.
    pub fn invert(&self) -> Result<TwoTensorEndo> {
        match &self.form {
            FactoredForm::Tau => Ok(TwoTensorEndo::tau(self.basis.clone())),
            FactoredForm::Hat1(psi) => {
                let inv = psi.invert()?;
                TwoTensorEndo::cross_map(&inv, &LinearEndo::identity(self.basis.clone()))
            }
            FactoredForm::Hat2(psi) => {
                let inv = psi.invert()?;
                TwoTensorEndo::cross_map(&LinearEndo::identity(self.basis.clone()), &inv)
            }
            FactoredForm::Cross(a, b) => TwoTensorEndo::cross_map(&b.invert()?, &a.invert()?),
            FactoredForm::Dense => self.invert_dense(),
        }
    }

    fn invert_dense(&self) -> Result<TwoTensorEndo> {
        let d = self.dim();
        let n2 = d * d;
        let pair_at = |i: usize| (self.basis.get(i / d).clone(), self.basis.get(i % d).clone());
        let cols = crate::algebra::invert_dense(n2, |row, col| {
            self.action[&pair_at(col)].coeff(&pair_at(row))
        })
        .ok_or(Error::Singular)?;
        let mut action = BTreeMap::new();
        for (c, col) in cols.into_iter().enumerate() {
            let image =
                Tensor2::from_terms(col.into_iter().enumerate().map(|(r, w)| (pair_at(r), w)));
            action.insert(pair_at(c), image);
        }
        Ok(TwoTensorEndo {
            basis: self.basis.clone(),
            action,
            form: FactoredForm::Dense,
        })
    }

    /// Exhaustively checks the Yang-Baxter equation on all basis triples,
    /// reporting the first failure in basis order.
    pub fn verify_ybe(&self) -> YbeReport {
        let idx = IndexedPairMap::new(self);
        let d = self.dim() as u64;
        let total = d * d * d;

        let sides = |code: u64| {
            let start = vec![(code, Scalar::one())];
            let lhs = idx.apply_at(3, 0, &idx.apply_at(3, 1, &idx.apply_at(3, 0, &start)));
            let rhs = idx.apply_at(3, 1, &idx.apply_at(3, 0, &idx.apply_at(3, 1, &start)));
            (lhs, rhs)
        };

        let first_bad = (0..total).into_par_iter().find_first(|&code| {
            let (lhs, rhs) = sides(code);
            lhs != rhs
        });

        let counterexample = first_bad.map(|code| {
            let (lhs, rhs) = sides(code);
            let decode = |c: u64| self.basis.get(c as usize).clone();
            YbeCounterexample {
                triple: (
                    decode(code / (d * d)),
                    decode((code / d) % d),
                    decode(code % d),
                ),
                lhs: self.decode3(&lhs),
                rhs: self.decode3(&rhs),
            }
        });

        YbeReport {
            triples_checked: total as usize,
            counterexample,
        }
    }

    fn decode3(&self, coded: &[(u64, Scalar)]) -> Tensor3 {
        let d = self.dim() as u64;
        Tensor3::from_terms(coded.iter().map(|(code, c)| {
            (
                (
                    self.basis.get((code / (d * d)) as usize).clone(),
                    self.basis.get(((code / d) % d) as usize).clone(),
                    self.basis.get((code % d) as usize).clone(),
                ),
                c.clone(),
            )
        }))
    }

    /// Renders the matrix text format over the row-major pair basis.
    pub fn to_matrix_text(&self) -> String {
        let mut out = String::from("basis:");
        for (x, y) in self.basis.pairs_row_major() {
            out.push(' ');
            out.push_str(&pair_label(x, y));
        }
        out.push('\n');
        for (x, y) in self.basis.pairs_row_major() {
            let image = &self.action[&(x.clone(), y.clone())];
            out.push_str(&format!(
                "col {} = {}\n",
                pair_label(x, y),
                self.format_pair_sum(image)
            ));
        }
        out
    }

    fn format_pair_sum(&self, image: &Tensor2) -> String {
        let mut terms: Vec<(&(BasisLabel, BasisLabel), &Scalar)> = image.terms().collect();
        terms.sort_by_key(|((x, y), _)| {
            (
                self.basis.pos(x).expect("basis"),
                self.basis.pos(y).expect("basis"),
            )
        });
        if terms.is_empty() {
            return "0".to_string();
        }
        terms
            .into_iter()
            .map(|((x, y), c)| {
                if c.is_one() {
                    pair_label(x, y)
                } else {
                    format!("{}*{}", format_scalar(c), pair_label(x, y))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Emits `row col value` triples over the row-major pair indexing,
    /// one line per nonzero entry, sorted by column then row.
    pub fn to_sparse_text(&self) -> String {
        let d = self.dim();
        let pos = |l: &BasisLabel| self.basis.pos(l).expect("basis");
        let mut out = String::from("# basis:");
        for l in self.basis.labels() {
            out.push(' ');
            out.push_str(&l.to_string());
        }
        out.push('\n');
        out.push_str(&format!("# pairs: {} (row-major)\n", d * d));
        for (x, y) in self.basis.pairs_row_major() {
            let col = pos(x) * d + pos(y);
            let image = &self.action[&(x.clone(), y.clone())];
            let mut rows: Vec<(usize, &Scalar)> = image
                .terms()
                .map(|((u, v), c)| (pos(u) * d + pos(v), c))
                .collect();
            rows.sort_by_key(|(r, _)| *r);
            for (row, c) in rows {
                out.push_str(&format!("{row} {col} {}\n", format_scalar(c)));
            }
        }
        out
    }

    /// Parses the matrix text format over a row-major pair basis.
    pub fn parse_matrix(input: &str) -> Result<TwoTensorEndo> {
        let raw = read_matrix_text(input)?;
        let mut split_pairs = Vec::with_capacity(raw.basis.len());
        for s in &raw.basis {
            split_pairs.push(split_pair_label(s)?);
        }
        let mut underlying: Vec<BasisLabel> = Vec::new();
        for (x, _) in &split_pairs {
            if !underlying.contains(x) {
                underlying.push(x.clone());
            }
        }
        let basis = Basis::new(underlying)?;
        let expected: Vec<(BasisLabel, BasisLabel)> = basis
            .pairs_row_major()
            .map(|(x, y)| (x.clone(), y.clone()))
            .collect();
        if split_pairs != expected {
            return Err(Error::Syntax {
                line: 0,
                msg: "pair basis is not a row-major enumeration".into(),
            });
        }
        let mut action = BTreeMap::new();
        for (label, terms) in raw.columns {
            let key = split_pair_label(&label)?;
            let mut image = Tensor2::zero();
            for (term_label, c) in terms {
                image.insert_add(split_pair_label(&term_label)?, c);
            }
            action.insert(key, image);
        }
        TwoTensorEndo::from_action(basis, action)
    }
}

impl PartialEq for TwoTensorEndo {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.action == other.action
    }
}

impl Eq for TwoTensorEndo {}

/// `a b = b a` as maps on the shared basis.
pub fn commutator_is_zero(a: &LinearEndo, b: &LinearEndo) -> Result<bool> {
    Ok(a.compose(b)? == b.compose(a)?)
}

/// Evaluates `tau . cross_map(p1, p2) . cross_map(p3, p4)` extensionally,
/// together with `cross_map(p2 p3, p1 p4)`, and reports whether the two
/// agree (they always do; the flag is returned so callers can assert it).
pub fn compose_cross(
    p1: &LinearEndo,
    p2: &LinearEndo,
    p3: &LinearEndo,
    p4: &LinearEndo,
) -> Result<(TwoTensorEndo, TwoTensorEndo, bool)> {
    if p1.basis() != p3.basis() {
        return Err(Error::BasisMismatch);
    }
    let c12 = TwoTensorEndo::cross_map(p1, p2)?;
    let c34 = TwoTensorEndo::cross_map(p3, p4)?;
    let mut action = BTreeMap::new();
    for (x, y) in c12.basis().pairs_row_major() {
        let step = c12.apply2(c34.apply_pair(x, y)?)?;
        action.insert((x.clone(), y.clone()), step.flip());
    }
    let lhs = TwoTensorEndo::from_action(c12.basis().clone(), action)?;
    let rhs = TwoTensorEndo::cross_map(&p2.compose(p3)?, &p1.compose(p4)?)?;
    let equal = lhs == rhs;
    Ok((lhs, rhs, equal))
}

/// Serialized form of an ordered pair, `<x>*<y>`.
pub fn pair_label(x: &BasisLabel, y: &BasisLabel) -> String {
    format!("{x}*{y}")
}

fn split_pair_label(s: &str) -> Result<(BasisLabel, BasisLabel)> {
    let parts: Vec<&str> = s.split('*').collect();
    if parts.len() == 2 && is_valid_name(parts[0]) && is_valid_name(parts[1]) {
        Ok((BasisLabel::parse(parts[0]), BasisLabel::parse(parts[1])))
    } else {
        Err(Error::Syntax {
            line: 0,
            msg: format!("invalid pair label `{s}`"),
        })
    }
}

/// A tensor-power element coded over basis positions: strictly
/// increasing codes with nonzero coefficients.
pub(crate) type CodedTensor = Vec<(u64, Scalar)>;

/// Sorts raw `(code, coefficient)` products and sums runs of equal
/// codes, dropping cancellations.
pub(crate) fn merge_coded(mut products: Vec<(u64, Scalar)>) -> CodedTensor {
    products.sort_unstable_by_key(|(code, _)| *code);
    let mut out: CodedTensor = Vec::with_capacity(products.len());
    for (code, value) in products {
        match out.last_mut() {
            Some((current, acc)) if *current == code => {
                *acc = &*acc + &value;
                if acc.is_zero() {
                    out.pop();
                }
            }
            _ => {
                if !value.is_zero() {
                    out.push((code, value));
                }
            }
        }
    }
    out
}

/// Index-coded copy of a pair action for the exhaustive scans.
///
/// `act[x*dim + y]` lists the image of the pair `(x, y)` as
/// `(x'*dim + y', coefficient)` entries.
#[derive(Debug)]
pub(crate) struct IndexedPairMap {
    dim: usize,
    act: Vec<Vec<(u32, Scalar)>>,
}

impl IndexedPairMap {
    pub(crate) fn new(r: &TwoTensorEndo) -> Self {
        let d = r.basis.len();
        let pos = |l: &BasisLabel| r.basis.pos(l).expect("support in basis");
        let mut act = vec![Vec::new(); d * d];
        for ((x, y), image) in &r.action {
            let slot = &mut act[pos(x) * d + pos(y)];
            for ((u, v), c) in image.terms() {
                slot.push(((pos(u) * d + pos(v)) as u32, c.clone()));
            }
        }
        IndexedPairMap { dim: d, act }
    }

    /// Applies the pair map to factors `(pos, pos+1)` of every term of a
    /// base-`dim` coded `arity`-tensor.
    ///
    /// States are sorted, zero-free `(code, coefficient)` vectors, so
    /// equal tensors are equal vectors. Products are merged by one sort
    /// pass; that beats tree insertion on the short-lived states these
    /// scans produce.
    pub(crate) fn apply_at(&self, arity: usize, pos: usize, state: &CodedTensor) -> CodedTensor {
        let d = self.dim as u64;
        let shift = d.pow((arity - pos - 2) as u32);
        let span = shift * d * d;
        let mut products: Vec<(u64, Scalar)> = Vec::new();
        for (code, c) in state {
            let high = code / span * span;
            let pair = (code / shift) % (d * d);
            let low = code % shift;
            for (np, w) in &self.act[pair as usize] {
                products.push((high + u64::from(*np) * shift + low, c * w));
            }
        }
        merge_coded(products)
    }
}
