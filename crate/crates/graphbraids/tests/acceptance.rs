//! End-to-end acceptance suite.
//!
//! Each test prints one `criterion N: PASS` line (visible with
//! `cargo test --test acceptance -- --nocapture`) and enforces its
//! runtime budget. All equality checks are exact; there are no
//! tolerances anywhere.

use std::time::{Duration, Instant};

use graphbraids::algebra::{Basis, BasisLabel, LinearEndo, Tensor2, TensorN};
use graphbraids::braid::{two_representations, BraidRepresentation, BraidWord};
use graphbraids::coalgebra::{parse_coproduct_file, LCoalgebra};
use graphbraids::companion::CompanionCoalgebra;
use graphbraids::graph::WeightedDigraph;
use graphbraids::random;
use graphbraids::scalar::{int, Scalar};
use graphbraids::ybe::{commutator_is_zero, compose_cross, TwoTensorEndo};

use num::Signed;

const SUITE_SEED: u64 = 42;
const SUITE_SIZE: usize = 200;

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {path}: {e}"))
}

fn e4() -> WeightedDigraph {
    WeightedDigraph::parse(&fixture("e4.graph")).unwrap()
}

/// The shared randomized graph suite: 200 graphs with 2 to 8 vertices and
/// nonzero rational weights in [-10, 10].
fn suite_graphs() -> Vec<WeightedDigraph> {
    let mut rng = random::rng(SUITE_SEED);
    let graphs: Vec<WeightedDigraph> = (0..SUITE_SIZE)
        .map(|_| random::random_graph(&mut rng, 2, 8))
        .collect();
    assert!(
        graphs
            .iter()
            .any(|g| g.arcs().any(|(_, _, w)| w.is_negative())),
        "the suite must exercise negative weights"
    );
    graphs
}

fn finish(criterion: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    println!("criterion {criterion}: PASS ({elapsed:.2?}, budget {budget:?})");
    assert!(
        elapsed <= budget,
        "criterion {criterion} exceeded its budget: {elapsed:?} > {budget:?}"
    );
}

fn v(name: &str) -> BasisLabel {
    BasisLabel::vertex(name)
}

fn t2(terms: &[(&str, &str, i64)]) -> Tensor2 {
    Tensor2::from_terms(
        terms
            .iter()
            .map(|(x, y, c)| ((BasisLabel::parse(x), BasisLabel::parse(y)), int(*c))),
    )
}

#[test]
fn criterion_01_example_fidelity() {
    let start = Instant::now();
    let g = e4();
    let lc = LCoalgebra::markov_from_graph(&g).unwrap();

    let rights = [
        ("a", t2(&[("a", "a", 1), ("a", "b", 1)])),
        ("b", t2(&[("b", "c", 1), ("b", "d", 1)])),
        ("c", t2(&[("c", "a", 1), ("c", "b", 1)])),
        ("d", t2(&[("d", "c", 1), ("d", "d", 1)])),
    ];
    let lefts = [
        ("a", t2(&[("a", "a", 1), ("c", "a", 1)])),
        ("b", t2(&[("a", "b", 1), ("c", "b", 1)])),
        ("c", t2(&[("b", "c", 1), ("d", "c", 1)])),
        ("d", t2(&[("b", "d", 1), ("d", "d", 1)])),
    ];
    for (label, want) in rights {
        assert_eq!(lc.right(&v(label)).unwrap(), &want, "delta {label}");
    }
    for (label, want) in lefts {
        assert_eq!(lc.left(&v(label)).unwrap(), &want, "tilde {label}");
    }
    assert_eq!(lc.geometric_support().unwrap(), g);

    finish("1 (example fidelity)", start, Duration::from_secs(1));
}

#[test]
fn criterion_02_inverse_pair_suite() {
    let start = Instant::now();
    for g in suite_graphs() {
        let c = CompanionCoalgebra::build(&LCoalgebra::markov_from_graph(&g).unwrap()).unwrap();
        for (psi, phi) in [(c.psi_left(), c.phi_left()), (c.psi_right(), c.phi_right())] {
            assert!(psi.compose(phi).unwrap().is_identity());
            assert!(phi.compose(psi).unwrap().is_identity());
            assert_eq!(&psi.invert().unwrap(), phi);
        }
    }
    finish(
        "2 (inverse pairs, 200 graphs)",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_03_hat_maps_solve_ybe() {
    let start = Instant::now();
    for g in suite_graphs() {
        let c = CompanionCoalgebra::build(&LCoalgebra::markov_from_graph(&g).unwrap()).unwrap();
        let dim = c.full().dim();
        assert!(dim <= 16);
        for psi in [c.psi_left(), c.psi_right()] {
            for r in [
                TwoTensorEndo::hat1(psi).unwrap(),
                TwoTensorEndo::hat2(psi).unwrap(),
            ] {
                let report = r.verify_ybe();
                assert_eq!(report.triples_checked, dim * dim * dim);
                assert!(report.holds());
            }
        }
    }
    finish(
        "3 (hat maps solve YBE, 200 graphs x 4)",
        start,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_04_cross_map_equivalence() {
    let start = Instant::now();
    let mut rng = random::rng(SUITE_SEED);
    let mut true_cases = 0usize;
    let mut false_cases = 0usize;

    for i in 0..500 {
        let basis = Basis::from_names((1..=rng_dim(&mut rng)).map(|k| format!("x{k}"))).unwrap();
        let (a, b) = if i < 150 {
            random::random_commuting_pair(&mut rng, &basis)
        } else {
            (
                random::random_invertible_endo(&mut rng, &basis),
                random::random_invertible_endo(&mut rng, &basis),
            )
        };
        let commutes = commutator_is_zero(&a, &b).unwrap();
        let solves = TwoTensorEndo::cross_map(&a, &b)
            .unwrap()
            .verify_ybe()
            .holds();
        assert_eq!(solves, commutes);
        if commutes {
            true_cases += 1;
        } else {
            false_cases += 1;
        }
    }
    assert!(
        true_cases >= 100,
        "need at least 100 commuting pairs, got {true_cases}"
    );
    assert!(
        false_cases >= 100,
        "need failing pairs too, got {false_cases}"
    );

    for _ in 0..200 {
        let basis = Basis::from_names((1..=rng_dim(&mut rng)).map(|k| format!("x{k}"))).unwrap();
        let quad: Vec<LinearEndo> = (0..4)
            .map(|_| random::random_invertible_endo(&mut rng, &basis))
            .collect();
        let (_, _, equal) = compose_cross(&quad[0], &quad[1], &quad[2], &quad[3]).unwrap();
        assert!(equal);
    }

    finish(
        "4 (cross maps iff commuting, 500 pairs + 200 quadruples)",
        start,
        Duration::from_secs(60),
    );
}

fn rng_dim(rng: &mut rand_chacha::ChaCha8Rng) -> usize {
    use rand::Rng;
    rng.gen_range(2..=4)
}

#[test]
fn criterion_05_companion_structure() {
    let start = Instant::now();
    for g in suite_graphs() {
        let c = CompanionCoalgebra::build(&LCoalgebra::markov_from_graph(&g).unwrap()).unwrap();
        assert!(c.full().check_breaking_equation().holds());
        assert!(c.verify_factorization());
        assert!(c.shadow_defects_are_zero());
    }
    finish(
        "5 (companion structure, 200 graphs)",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_06_distinctness() {
    let start = Instant::now();
    for g in suite_graphs() {
        let base = LCoalgebra::markov_from_graph(&g).unwrap();
        let c = CompanionCoalgebra::build(&base).unwrap();
        assert_eq!(
            c.is_distinct(),
            !base.is_l_cocommutative().is_cocommutative()
        );
    }
    let distinct = |text: &str| {
        let g = WeightedDigraph::parse(text).unwrap();
        CompanionCoalgebra::build(&LCoalgebra::markov_from_graph(&g).unwrap())
            .unwrap()
            .is_distinct()
    };
    assert!(distinct(&fixture("e4.graph")));
    assert!(!distinct(&fixture("loop.graph")));
    assert!(!distinct(&fixture("two_cycle.graph")));
    finish(
        "6 (distinctness, 200 graphs + 3 fixtures)",
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_07_braid_relations() {
    let start = Instant::now();
    let g = e4();

    let (rep3, _, distinct) = two_representations(&g, 3).unwrap();
    assert!(distinct);
    assert_eq!(rep3.dim(), 8);
    let report = rep3.verify_relations(SUITE_SEED);
    assert!(report.holds());
    let braid_check = report
        .checks
        .iter()
        .find(|c| c.description.starts_with("braid"))
        .unwrap();
    assert!(!braid_check.sampled);
    assert_eq!(braid_check.states_checked, 512);

    // The two three-letter words agree on every basis triple.
    let w1 = BraidWord::parse("s1 s2 s1", 3).unwrap();
    let w2 = BraidWord::parse("s2 s1 s2", 3).unwrap();
    let labels = rep3.basis().labels().to_vec();
    for x in &labels {
        for y in &labels {
            for z in &labels {
                let state = TensorN::single(vec![x.clone(), y.clone(), z.clone()]);
                assert_eq!(
                    rep3.evaluate_word(&w1, &state).unwrap(),
                    rep3.evaluate_word(&w2, &state).unwrap()
                );
            }
        }
    }

    // Far commutation at four strands, on a seeded 1000-state sample.
    let (rep4, _, _) = two_representations(&g, 4).unwrap();
    let report = rep4.verify_relations(SUITE_SEED);
    assert!(report.holds());
    let far = report
        .checks
        .iter()
        .find(|c| c.description == "commute s1 s3 = s3 s1")
        .unwrap();
    assert!(far.sampled);
    assert_eq!(far.states_checked, 1000);

    finish(
        "7 (braid relations at 3 and 4 strands)",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_08_markovize_pipeline() {
    let start = Instant::now();
    let (basis, delta, _) = parse_coproduct_file(&fixture("d4_delta_only.coalg")).unwrap();
    let m = LCoalgebra::markovize(basis, &delta).unwrap();

    let report = m.is_l_cocommutative();
    assert!(!report.is_cocommutative());
    // Exactly the labels whose right legs differ from the flipped left
    // coproduct, which here is every label, starting at `a`.
    let defect_labels: Vec<&BasisLabel> = report.defects.iter().map(|(l, _)| l).collect();
    assert_eq!(defect_labels, [&v("a"), &v("b"), &v("c"), &v("d")]);
    assert_eq!(
        report.defects[0].1,
        t2(&[("a", "c", 1), ("a", "b", -1)]),
        "first defect at a: a (x) c versus a (x) b"
    );

    let c = CompanionCoalgebra::build(&m).unwrap();
    let r_left = TwoTensorEndo::hat1(c.psi_left()).unwrap();
    let r_right = TwoTensorEndo::hat1(c.psi_right()).unwrap();
    assert_ne!(r_left, r_right);
    assert!(r_left.verify_ybe().holds());
    assert!(r_right.verify_ybe().holds());

    finish(
        "8 (markovize pipeline on the coassociative fixture)",
        start,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_09_negative_controls() {
    let start = Instant::now();

    let broken = LCoalgebra::parse(&fixture("breaking_fail.coalg")).unwrap();
    let report = broken.check_breaking_equation();
    let cx = report.counterexample.expect("must fail");
    assert_eq!(cx.label, v("b"));

    let r = TwoTensorEndo::parse_matrix(&fixture("cross_noncommuting.matrix")).unwrap();
    let report = r.verify_ybe();
    let cx = report.counterexample.expect("must fail");
    assert_eq!(cx.triple, (v("a"), v("a"), v("a")));
    assert_ne!(cx.lhs, cx.rhs);

    let rep = BraidRepresentation::new_unchecked(r, 3).unwrap();
    assert!(!rep.verify_relations(SUITE_SEED).holds());

    finish("9 (negative controls)", start, Duration::from_secs(5));
}

#[test]
fn suite_weights_stay_in_range() {
    // Companion invariant of the shared suite: generated weights lie in
    // [-10, 10] and are never zero.
    let bound = int(10);
    for g in suite_graphs() {
        for (_, _, w) in g.arcs() {
            assert!(!num::Zero::is_zero(w));
            assert!(w.abs() <= bound);
        }
    }
}

#[test]
fn suite_counit_on_half_weights() {
    // The row-stochastic fixture admits the constant right counit.
    use graphbraids::coalgebra::{CounitCandidate, CounitSide};
    let g = WeightedDigraph::parse(&fixture("e4_half.graph")).unwrap();
    assert!(g.is_row_stochastic());
    let lc = LCoalgebra::markov_from_graph(&g).unwrap();
    let ones = CounitCandidate::ones(lc.basis(), CounitSide::Right);
    assert!(lc.verify_counit(&ones).unwrap());
    let _ = Scalar::from_integer(1.into());
}
