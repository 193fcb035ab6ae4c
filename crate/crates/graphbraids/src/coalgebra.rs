//! Coalgebras with two coproducts.
//!
//! An [`LCoalgebra`] carries a right coproduct `delta` and a left
//! coproduct `tilde` on a shared basis. Nothing about the pair is assumed
//! at construction; the defining compatibility (the breaking equation),
//! cocommutativity, degeneracy, and counit identities are all checkable
//! queries, so failing fixtures are first-class values.
//!
//! The central constructor is [`LCoalgebra::markov_from_graph`]: a
//! weighted digraph without sinks or sources induces
//! `delta v = sum w(v->k) v (x) k` over the out-arcs of `v` and
//! `tilde v = sum w(j->v) j (x) v` over the in-arcs, with the in-weights
//! taken from the same arcs. Coalgebras of that shape are called Markov;
//! [`LCoalgebra::markovize`] produces one from any single coproduct by
//! splitting each term `c x (x) y` of `delta v` into `c x (x) v` (left)
//! and `c v (x) y` (right).
//!
//! File format: `delta <v> = <sum>` and `tilde <v> = <sum>` lines, where
//! sums follow the shared term syntax with `(x)` separating the two
//! factors. The basis is the left-hand labels in first-mention order.

use std::collections::BTreeMap;

use num::One;

use crate::algebra::{
    format_tensor2, is_valid_name, Basis, BasisLabel, FreeVector, Tensor2, Tensor3,
};
use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::scalar::Scalar;

/// A coproduct given extensionally: one 2-tensor per basis label.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Coproduct {
    action: BTreeMap<BasisLabel, Tensor2>,
}

impl Coproduct {
    pub fn new() -> Self {
        Coproduct::default()
    }

    pub fn set(&mut self, label: BasisLabel, value: Tensor2) {
        self.action.insert(label, value);
    }

    pub fn get(&self, label: &BasisLabel) -> Option<&Tensor2> {
        self.action.get(label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &BasisLabel> {
        self.action.keys()
    }

    fn get_or_zero(&self, label: &BasisLabel) -> Tensor2 {
        self.action
            .get(label)
            .cloned()
            .unwrap_or_else(Tensor2::zero)
    }

    /// `(self (x) id)` applied to a 2-tensor.
    fn expand_first(&self, t: &Tensor2) -> Tensor3 {
        let mut out = Tensor3::zero();
        for ((x, y), c) in t.terms() {
            if let Some(inner) = self.action.get(x) {
                for ((p, q), w) in inner.terms() {
                    out.insert_add((p.clone(), q.clone(), y.clone()), c * w);
                }
            }
        }
        out
    }

    /// `(id (x) self)` applied to a 2-tensor.
    fn expand_second(&self, t: &Tensor2) -> Tensor3 {
        let mut out = Tensor3::zero();
        for ((x, y), c) in t.terms() {
            if let Some(inner) = self.action.get(y) {
                for ((p, q), w) in inner.terms() {
                    out.insert_add((x.clone(), p.clone(), q.clone()), c * w);
                }
            }
        }
        out
    }
}

/// Which counit identity a candidate is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CounitSide {
    /// `(id (x) eps) delta = id`
    Right,
    /// `(eps (x) id) tilde = id`
    Left,
}

/// A linear functional proposed as a counit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounitCandidate {
    values: BTreeMap<BasisLabel, Scalar>,
    side: CounitSide,
}

impl CounitCandidate {
    pub fn new(values: BTreeMap<BasisLabel, Scalar>, side: CounitSide) -> Self {
        CounitCandidate { values, side }
    }

    /// The constant functional sending every basis label to 1.
    pub fn ones(basis: &Basis, side: CounitSide) -> Self {
        CounitCandidate {
            values: basis
                .labels()
                .iter()
                .map(|l| (l.clone(), Scalar::one()))
                .collect(),
            side,
        }
    }

    pub fn side(&self) -> CounitSide {
        self.side
    }

    fn value(&self, label: &BasisLabel) -> Result<&Scalar> {
        self.values
            .get(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

/// First basis label where the breaking equation fails, with both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakingCounterexample {
    pub label: BasisLabel,
    pub lhs: Tensor3,
    pub rhs: Tensor3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakingReport {
    pub counterexample: Option<BreakingCounterexample>,
}

impl BreakingReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// All basis labels with a nonzero cocommutativity defect
/// `(delta - tau tilde) v`, in basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocommutativityReport {
    pub defects: Vec<(BasisLabel, Tensor2)>,
}

impl CocommutativityReport {
    pub fn is_cocommutative(&self) -> bool {
        self.defects.is_empty()
    }
}

/// A vector space with a right and a left coproduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LCoalgebra {
    basis: Basis,
    right: Coproduct,
    left: Coproduct,
}

impl LCoalgebra {
    /// Builds a coalgebra, filling missing coproduct entries with zero and
    /// rejecting supports outside the basis.
    pub fn new(basis: Basis, mut right: Coproduct, mut left: Coproduct) -> Result<Self> {
        for cop in [&right, &left] {
            for label in cop.labels() {
                if !basis.contains(label) {
                    return Err(Error::UnknownLabel(label.to_string()));
                }
            }
            for label in cop.labels() {
                let t = cop.get(label).expect("listed");
                for ((x, y), _) in t.terms() {
                    for l in [x, y] {
                        if !basis.contains(l) {
                            return Err(Error::UnknownLabel(l.to_string()));
                        }
                    }
                }
            }
        }
        for l in basis.labels() {
            if right.get(l).is_none() {
                right.set(l.clone(), Tensor2::zero());
            }
            if left.get(l).is_none() {
                left.set(l.clone(), Tensor2::zero());
            }
        }
        Ok(LCoalgebra { basis, right, left })
    }

    /// The Markov coalgebra of a weighted digraph.
    ///
    /// Requires the graph to have no sinks and no sources; offenders are
    /// listed in the error.
    pub fn markov_from_graph(g: &WeightedDigraph) -> Result<Self> {
        if g.vertex_count() == 0 {
            return Err(Error::EmptyBasis);
        }
        let report = g.validate_no_sink_no_source();
        if !report.is_valid() {
            let mut parts = Vec::new();
            if !report.sources.is_empty() {
                parts.push(format!("sources [{}]", report.sources.join(", ")));
            }
            if !report.sinks.is_empty() {
                parts.push(format!("sinks [{}]", report.sinks.join(", ")));
            }
            return Err(Error::InvalidGraph(parts.join(" and ")));
        }
        let basis = Basis::from_names(g.vertices().iter().cloned())?;
        let mut right = Coproduct::new();
        let mut left = Coproduct::new();
        for v in g.vertices() {
            let vl = BasisLabel::vertex(v.clone());
            right.set(
                vl.clone(),
                Tensor2::from_terms(
                    g.out_arcs(v)
                        .into_iter()
                        .map(|(dst, w)| ((vl.clone(), BasisLabel::vertex(dst)), w.clone())),
                ),
            );
            left.set(
                vl.clone(),
                Tensor2::from_terms(
                    g.in_arcs(v)
                        .into_iter()
                        .map(|(src, w)| ((BasisLabel::vertex(src), vl.clone()), w.clone())),
                ),
            );
        }
        LCoalgebra::new(basis, right, left)
    }

    /// The Markov coalgebra induced by a single coproduct: each term
    /// `c x (x) y` of `delta v` contributes `c x (x) v` to the new left
    /// coproduct and `c v (x) y` to the new right one.
    pub fn markovize(basis: Basis, delta: &Coproduct) -> Result<Self> {
        let mut right = Coproduct::new();
        let mut left = Coproduct::new();
        for v in basis.labels() {
            let mut r = Tensor2::zero();
            let mut l = Tensor2::zero();
            for ((x, y), c) in delta.get_or_zero(v).terms() {
                l.insert_add((x.clone(), v.clone()), c.clone());
                r.insert_add((v.clone(), y.clone()), c.clone());
            }
            right.set(v.clone(), r);
            left.set(v.clone(), l);
        }
        // Support validation happens in `new`; foreign labels in `delta`
        // are reported there.
        LCoalgebra::new(basis, right, left)
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Right coproduct of a basis label.
    pub fn right(&self, label: &BasisLabel) -> Option<&Tensor2> {
        self.right.get(label)
    }

    /// Left coproduct of a basis label.
    pub fn left(&self, label: &BasisLabel) -> Option<&Tensor2> {
        self.left.get(label)
    }

    pub fn right_coproduct(&self) -> &Coproduct {
        &self.right
    }

    pub fn left_coproduct(&self) -> &Coproduct {
        &self.left
    }

    fn right_of(&self, label: &BasisLabel) -> &Tensor2 {
        self.right.get(label).expect("coproducts are total")
    }

    fn left_of(&self, label: &BasisLabel) -> &Tensor2 {
        self.left.get(label).expect("coproducts are total")
    }

    /// Checks `(tilde (x) id) delta = (id (x) delta) tilde` on every basis
    /// label, reporting the first failure in basis order.
    pub fn check_breaking_equation(&self) -> BreakingReport {
        for v in self.basis.labels() {
            let lhs = self.left.expand_first(self.right_of(v));
            let rhs = self.right.expand_second(self.left_of(v));
            if lhs != rhs {
                return BreakingReport {
                    counterexample: Some(BreakingCounterexample {
                        label: v.clone(),
                        lhs,
                        rhs,
                    }),
                };
            }
        }
        BreakingReport {
            counterexample: None,
        }
    }

    /// Lists every basis label with `(delta - tau tilde) v != 0`.
    pub fn is_l_cocommutative(&self) -> CocommutativityReport {
        let defects = self
            .basis
            .labels()
            .iter()
            .filter_map(|v| {
                let defect = self.right_of(v).sub(&self.left_of(v).flip());
                if defect.is_zero() {
                    None
                } else {
                    Some((v.clone(), defect))
                }
            })
            .collect();
        CocommutativityReport { defects }
    }

    /// True when the two coproducts agree pointwise.
    pub fn is_degenerate(&self) -> bool {
        self.basis
            .labels()
            .iter()
            .all(|v| self.right_of(v) == self.left_of(v))
    }

    /// Evaluates the counit identity of the candidate's side on every
    /// basis label.
    pub fn verify_counit(&self, candidate: &CounitCandidate) -> Result<bool> {
        for v in self.basis.labels() {
            let mut contracted = FreeVector::zero();
            match candidate.side() {
                CounitSide::Right => {
                    for ((x, y), c) in self.right_of(v).terms() {
                        contracted.insert_add(x.clone(), c * candidate.value(y)?);
                    }
                }
                CounitSide::Left => {
                    for ((x, y), c) in self.left_of(v).terms() {
                        contracted.insert_add(y.clone(), c * candidate.value(x)?);
                    }
                }
            }
            if contracted != FreeVector::single(v.clone()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reads the support graph off the coproducts: every term `c x (x) y`
    /// of either coproduct becomes an arc `x -> y` with weight `c`.
    ///
    /// Fails when the same arc is implied with two different weights.
    pub fn geometric_support(&self) -> Result<WeightedDigraph> {
        let mut arcs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for v in self.basis.labels() {
            for t in [self.right_of(v), self.left_of(v)] {
                for ((x, y), c) in t.terms() {
                    let key = (
                        self.basis.pos(x).expect("support in basis"),
                        self.basis.pos(y).expect("support in basis"),
                    );
                    match arcs.get(&key) {
                        None => {
                            arcs.insert(key, c.clone());
                        }
                        Some(existing) if existing == c => {}
                        Some(existing) => {
                            return Err(Error::AmbiguousSupport {
                                src: x.to_string(),
                                dst: y.to_string(),
                                first: crate::scalar::format_scalar(existing),
                                second: crate::scalar::format_scalar(c),
                            });
                        }
                    }
                }
            }
        }
        let names: Vec<String> = self.basis.labels().iter().map(|l| l.to_string()).collect();
        let arc_list: Vec<(String, String, Scalar)> = arcs
            .into_iter()
            .map(|((s, d), w)| (names[s].clone(), names[d].clone(), w))
            .collect();
        WeightedDigraph::new(names, arc_list)
    }

    /// Basis labels whose right or left coproduct is empty; its support
    /// graph would have a sink or source there.
    pub fn empty_coproduct_labels(&self) -> Vec<BasisLabel> {
        self.basis
            .labels()
            .iter()
            .filter(|v| self.right_of(v).is_zero() || self.left_of(v).is_zero())
            .cloned()
            .collect()
    }

    /// Renders the coalgebra file format: `delta` lines then `tilde`
    /// lines, both in basis order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.basis.labels() {
            out.push_str(&format!(
                "delta {} = {}\n",
                v,
                format_tensor2(self.right_of(v), &self.basis)
            ));
        }
        for v in self.basis.labels() {
            out.push_str(&format!(
                "tilde {} = {}\n",
                v,
                format_tensor2(self.left_of(v), &self.basis)
            ));
        }
        out
    }

    /// Parses the coalgebra file format; every basis label needs both a
    /// `delta` and a `tilde` line.
    pub fn parse(input: &str) -> Result<Self> {
        let lines = parse_coproduct_lines(input)?;
        let basis = Basis::new(lines.order.clone())?;
        for label in basis.labels() {
            if lines.delta.get(label).is_none() {
                return Err(Error::Syntax {
                    line: 0,
                    msg: format!("missing `delta {label}` line"),
                });
            }
            if lines.tilde.get(label).is_none() {
                return Err(Error::Syntax {
                    line: 0,
                    msg: format!("missing `tilde {label}` line"),
                });
            }
        }
        LCoalgebra::new(basis, lines.delta, lines.tilde)
    }
}

/// Checks ordinary coassociativity `(delta (x) id) delta = (id (x) delta) delta`
/// of a single coproduct on every basis label.
pub fn is_coassociative(basis: &Basis, delta: &Coproduct) -> bool {
    basis.labels().iter().all(|v| {
        let t = delta.get_or_zero(v);
        delta.expand_first(&t) == delta.expand_second(&t)
    })
}

struct CoproductLines {
    order: Vec<BasisLabel>,
    delta: Coproduct,
    tilde: Coproduct,
    tilde_line_count: usize,
}

fn parse_coproduct_lines(input: &str) -> Result<CoproductLines> {
    let mut order: Vec<BasisLabel> = Vec::new();
    let mut delta = Coproduct::new();
    let mut tilde = Coproduct::new();
    let mut tilde_line_count = 0;

    for (idx, raw_line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = crate::algebra::text::strip_comment(raw_line).trim();
        if line.is_empty() {
            continue;
        }
        let (is_delta, rest) = if let Some(rest) = line.strip_prefix("delta ") {
            (true, rest)
        } else if let Some(rest) = line.strip_prefix("tilde ") {
            (false, rest)
        } else {
            return Err(Error::Syntax {
                line: line_no,
                msg: format!("expected `delta` or `tilde` line, found `{line}`"),
            });
        };
        let Some((label, rhs)) = rest.split_once('=') else {
            return Err(Error::Syntax {
                line: line_no,
                msg: "missing `=`".into(),
            });
        };
        let label = label.trim();
        if !is_valid_name(label) {
            return Err(Error::Syntax {
                line: line_no,
                msg: format!("invalid label `{label}`"),
            });
        }
        let label = BasisLabel::parse(label);
        let raw_terms = crate::algebra::text::parse_sum(rhs, 2)
            .map_err(|msg| Error::Syntax { line: line_no, msg })?;
        let mut value = Tensor2::zero();
        for (factors, c) in raw_terms {
            for f in &factors {
                if !is_valid_name(f) {
                    return Err(Error::Syntax {
                        line: line_no,
                        msg: format!("invalid label `{f}`"),
                    });
                }
            }
            value.insert_add(
                (
                    BasisLabel::parse(&factors[0]),
                    BasisLabel::parse(&factors[1]),
                ),
                c,
            );
        }
        let target = if is_delta { &mut delta } else { &mut tilde };
        if target.get(&label).is_some() {
            return Err(Error::Syntax {
                line: line_no,
                msg: format!(
                    "repeated `{} {label}` line",
                    if is_delta { "delta" } else { "tilde" }
                ),
            });
        }
        if !is_delta {
            tilde_line_count += 1;
        }
        if !order.contains(&label) {
            order.push(label.clone());
        }
        target.set(label, value);
    }

    if order.is_empty() {
        return Err(Error::Syntax {
            line: 0,
            msg: "no coproduct lines".into(),
        });
    }
    Ok(CoproductLines {
        order,
        delta,
        tilde,
        tilde_line_count,
    })
}

/// Parses a file holding a single coproduct for [`LCoalgebra::markovize`]:
/// `delta` lines define it, `tilde` lines are ignored and counted so the
/// caller can warn about them. The basis is the `delta` left-hand labels
/// in first-mention order.
pub fn parse_coproduct_file(input: &str) -> Result<(Basis, Coproduct, usize)> {
    let lines = parse_coproduct_lines(input)?;
    let order: Vec<BasisLabel> = lines
        .order
        .iter()
        .filter(|l| lines.delta.get(l).is_some())
        .cloned()
        .collect();
    if order.is_empty() {
        return Err(Error::Syntax {
            line: 0,
            msg: "no `delta` lines".into(),
        });
    }
    Ok((Basis::new(order)?, lines.delta, lines.tilde_line_count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use crate::testutil::{d4_text, e4};

    fn v(name: &str) -> BasisLabel {
        BasisLabel::vertex(name)
    }

    fn pair(x: &str, y: &str) -> (BasisLabel, BasisLabel) {
        (v(x), v(y))
    }

    #[test]
    fn e4_markov_coproducts_match_the_displayed_lists() {
        let lc = LCoalgebra::markov_from_graph(&e4()).unwrap();
        let expect_right = [
            ("a", [("a", "a"), ("a", "b")]),
            ("b", [("b", "c"), ("b", "d")]),
            ("c", [("c", "a"), ("c", "b")]),
            ("d", [("d", "c"), ("d", "d")]),
        ];
        for (label, terms) in expect_right {
            let want = Tensor2::from_terms(terms.iter().map(|(x, y)| (pair(x, y), int(1))));
            assert_eq!(lc.right(&v(label)).unwrap(), &want, "delta {label}");
        }
        let expect_left = [
            ("a", [("a", "a"), ("c", "a")]),
            ("b", [("a", "b"), ("c", "b")]),
            ("c", [("b", "c"), ("d", "c")]),
            ("d", [("b", "d"), ("d", "d")]),
        ];
        for (label, terms) in expect_left {
            let want = Tensor2::from_terms(terms.iter().map(|(x, y)| (pair(x, y), int(1))));
            assert_eq!(lc.left(&v(label)).unwrap(), &want, "tilde {label}");
        }
    }

    #[test]
    fn loop_graph_has_grouplike_coproducts() {
        let g = WeightedDigraph::parse("a -> a").unwrap();
        let lc = LCoalgebra::markov_from_graph(&g).unwrap();
        let want = Tensor2::single(pair("a", "a"));
        assert_eq!(lc.right(&v("a")).unwrap(), &want);
        assert_eq!(lc.left(&v("a")).unwrap(), &want);
        assert!(lc.is_degenerate());
        assert!(lc.is_l_cocommutative().is_cocommutative());
    }

    #[test]
    fn weights_are_carried_verbatim() {
        let g = WeightedDigraph::parse("a -> b 1/2\na -> a 1/2\nb -> a\n").unwrap();
        let lc = LCoalgebra::markov_from_graph(&g).unwrap();
        let want_right_a =
            Tensor2::from_terms([(pair("a", "b"), ratio(1, 2)), (pair("a", "a"), ratio(1, 2))]);
        assert_eq!(lc.right(&v("a")).unwrap(), &want_right_a);
        let want_left_a =
            Tensor2::from_terms([(pair("a", "a"), ratio(1, 2)), (pair("b", "a"), int(1))]);
        assert_eq!(lc.left(&v("a")).unwrap(), &want_left_a);
    }

    #[test]
    fn sink_or_source_blocks_construction() {
        let g = WeightedDigraph::parse("a -> b").unwrap();
        let err = LCoalgebra::markov_from_graph(&g).unwrap_err();
        assert_eq!(err, Error::InvalidGraph("sources [a] and sinks [b]".into()));
    }

    #[test]
    fn breaking_equation_holds_for_markov_coalgebras() {
        let lc = LCoalgebra::markov_from_graph(&e4()).unwrap();
        assert!(lc.check_breaking_equation().holds());
    }

    #[test]
    fn breaking_equation_counterexample_is_reported_at_b() {
        let text = "delta a = a (x) b\ndelta b = b (x) a\ntilde a = b (x) a\ntilde b = a (x) a\n";
        let lc = LCoalgebra::parse(text).unwrap();
        let report = lc.check_breaking_equation();
        let cx = report.counterexample.expect("must fail");
        assert_eq!(cx.label, v("b"));
        assert_eq!(cx.lhs, Tensor3::single((v("a"), v("a"), v("a"))));
        assert_eq!(cx.rhs, Tensor3::single((v("a"), v("a"), v("b"))));
    }

    #[test]
    fn e4_is_not_cocommutative_with_defect_at_a() {
        let lc = LCoalgebra::markov_from_graph(&e4()).unwrap();
        let report = lc.is_l_cocommutative();
        assert!(!report.is_cocommutative());
        let (first_label, first_defect) = &report.defects[0];
        assert_eq!(first_label, &v("a"));
        let want = Tensor2::from_terms([(pair("a", "b"), int(1)), (pair("a", "c"), int(-1))]);
        assert_eq!(first_defect, &want);
    }

    #[test]
    fn symmetric_graphs_are_cocommutative() {
        let g = WeightedDigraph::parse("a -> b\nb -> a\n").unwrap();
        let lc = LCoalgebra::markov_from_graph(&g).unwrap();
        assert!(lc.is_l_cocommutative().is_cocommutative());
        assert!(!lc.is_degenerate());
    }

    #[test]
    fn d4_is_degenerate_and_e4_is_not() {
        let d4 = LCoalgebra::parse(d4_text()).unwrap();
        assert!(d4.is_degenerate());
        assert!(is_coassociative(d4.basis(), d4.right_coproduct()));
        let e4c = LCoalgebra::markov_from_graph(&e4()).unwrap();
        assert!(!e4c.is_degenerate());
    }

    #[test]
    fn counit_identities() {
        let half = WeightedDigraph::parse(
            "a -> a 1/2\na -> b 1/2\nb -> c 1/2\nb -> d 1/2\nc -> a 1/2\nc -> b 1/2\nd -> c 1/2\nd -> d 1/2\n",
        )
        .unwrap();
        let lc = LCoalgebra::markov_from_graph(&half).unwrap();
        let ones_right = CounitCandidate::ones(lc.basis(), CounitSide::Right);
        assert!(lc.verify_counit(&ones_right).unwrap());

        let lc1 = LCoalgebra::markov_from_graph(&e4()).unwrap();
        let ones_right = CounitCandidate::ones(lc1.basis(), CounitSide::Right);
        assert!(!lc1.verify_counit(&ones_right).unwrap());

        let lp = LCoalgebra::markov_from_graph(&WeightedDigraph::parse("a -> a").unwrap()).unwrap();
        for side in [CounitSide::Right, CounitSide::Left] {
            assert!(lp
                .verify_counit(&CounitCandidate::ones(lp.basis(), side))
                .unwrap());
        }
    }

    #[test]
    fn support_round_trips_and_d4_shares_e4_support() {
        let g = e4();
        let lc = LCoalgebra::markov_from_graph(&g).unwrap();
        assert_eq!(lc.geometric_support().unwrap(), g);

        let d4 = LCoalgebra::parse(d4_text()).unwrap();
        assert_eq!(d4.geometric_support().unwrap(), g);
    }

    #[test]
    fn conflicting_weights_make_the_support_ambiguous() {
        let mut right = Coproduct::new();
        right.set(v("a"), Tensor2::term(pair("a", "b"), int(2)));
        let mut left = Coproduct::new();
        left.set(v("b"), Tensor2::term(pair("a", "b"), int(3)));
        let lc = LCoalgebra::new(Basis::from_names(["a", "b"]).unwrap(), right, left).unwrap();
        assert!(matches!(
            lc.geometric_support().unwrap_err(),
            Error::AmbiguousSupport { .. }
        ));
    }

    #[test]
    fn markovize_d4_produces_the_expected_coproducts() {
        let (basis, delta, ignored) = parse_coproduct_file(d4_text()).unwrap();
        assert_eq!(ignored, 4, "the tilde lines are ignored");
        let m = LCoalgebra::markovize(basis, &delta).unwrap();
        let want_left_a = Tensor2::from_terms([(pair("a", "a"), int(1)), (pair("b", "a"), int(1))]);
        let want_right_a =
            Tensor2::from_terms([(pair("a", "a"), int(1)), (pair("a", "c"), int(1))]);
        assert_eq!(m.left(&v("a")).unwrap(), &want_left_a);
        assert_eq!(m.right(&v("a")).unwrap(), &want_right_a);
        assert!(m.check_breaking_equation().holds());
        let report = m.is_l_cocommutative();
        assert_eq!(report.defects.len(), 4, "every label is defective");
        assert_eq!(report.defects[0].0, v("a"));
        let want_defect_a =
            Tensor2::from_terms([(pair("a", "c"), int(1)), (pair("a", "b"), int(-1))]);
        assert_eq!(report.defects[0].1, want_defect_a);
    }

    #[test]
    fn markovize_simple_shapes() {
        let basis = Basis::from_names(["a"]).unwrap();
        let mut delta = Coproduct::new();
        delta.set(v("a"), Tensor2::single(pair("a", "a")));
        let m = LCoalgebra::markovize(basis, &delta).unwrap();
        assert_eq!(m.left(&v("a")).unwrap(), &Tensor2::single(pair("a", "a")));
        assert_eq!(m.right(&v("a")).unwrap(), &Tensor2::single(pair("a", "a")));

        let basis = Basis::from_names(["a", "b", "c"]).unwrap();
        let mut delta = Coproduct::new();
        delta.set(v("a"), Tensor2::term(pair("b", "c"), int(3)));
        let m = LCoalgebra::markovize(basis, &delta).unwrap();
        assert_eq!(
            m.left(&v("a")).unwrap(),
            &Tensor2::term(pair("b", "a"), int(3))
        );
        assert_eq!(
            m.right(&v("a")).unwrap(),
            &Tensor2::term(pair("a", "c"), int(3))
        );
    }

    #[test]
    fn markovize_cancellation_leaves_empty_coproducts() {
        // The two terms of delta a cancel under the per-term rule, so the
        // reshaped coalgebra has no coproduct at a and its support graph
        // would gain a sink and a source there.
        let text = "delta a = b (x) c + -1*b (x) c + a (x) a\ndelta b = a (x) a\n";
        let (basis, delta, _) = parse_coproduct_file(text).unwrap();
        assert_eq!(
            delta.get(&v("a")).unwrap(),
            &Tensor2::single(pair("a", "a"))
        );
        let m = LCoalgebra::markovize(basis, &delta).unwrap();
        assert!(m.empty_coproduct_labels().is_empty());

        let text = "delta a = b (x) c + -1*b (x) c\ndelta b = b (x) c\ndelta c = b (x) c\n";
        let (basis, delta, _) = parse_coproduct_file(text).unwrap();
        let m = LCoalgebra::markovize(basis, &delta).unwrap();
        assert!(m.right(&v("a")).unwrap().is_zero());
        assert!(m.left(&v("a")).unwrap().is_zero());
        assert_eq!(m.empty_coproduct_labels(), [v("a")]);
        let support = m.geometric_support().unwrap();
        let report = support.validate_no_sink_no_source();
        assert_eq!(report.sources, ["a"]);
        assert_eq!(report.sinks, ["a"]);
    }

    #[test]
    fn coalgebra_text_round_trip() {
        let lc = LCoalgebra::markov_from_graph(&e4()).unwrap();
        let text = lc.to_text();
        assert!(text.contains("delta a = a (x) a + a (x) b"));
        assert!(text.contains("tilde a = a (x) a + c (x) a"));
        assert_eq!(LCoalgebra::parse(&text).unwrap(), lc);
    }

    #[test]
    fn coalgebra_parse_requires_both_lines() {
        let err = LCoalgebra::parse("delta a = a (x) a\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));
        let err = LCoalgebra::parse("delta a = a (x) z\ntilde a = a (x) a\n").unwrap_err();
        assert_eq!(err, Error::UnknownLabel("z".into()));
    }
}
