//! Seeded generators for randomized verification.
//!
//! Everything here is deterministic for a fixed seed; reports that use
//! sampling echo the seed so runs can be reproduced.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Basis, FreeVector, LinearEndo};
use crate::graph::WeightedDigraph;
use crate::scalar::{int, ratio, Scalar};

/// Default seed used by the command-line reports.
pub const DEFAULT_SEED: u64 = 42;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero rational with value in `[-10, 10]`.
pub fn random_weight(rng: &mut ChaCha8Rng) -> Scalar {
    let numerator = loop {
        let n = rng.gen_range(-10i64..=10);
        if n != 0 {
            break n;
        }
    };
    ratio(numerator, rng.gen_range(1i64..=10))
}

/// A random graph with `min_v..=max_v` vertices, nonzero rational
/// weights, and neither sinks nor sources.
pub fn random_graph(rng: &mut ChaCha8Rng, min_v: usize, max_v: usize) -> WeightedDigraph {
    let n = rng.gen_range(min_v..=max_v);
    let mut arcs = std::collections::BTreeMap::<(usize, usize), Scalar>::new();
    // One out-arc per vertex, then patch vertices without an in-arc.
    for src in 0..n {
        arcs.insert((src, rng.gen_range(0..n)), random_weight(rng));
    }
    for dst in 0..n {
        if !arcs.keys().any(|(_, d)| *d == dst) {
            arcs.insert((rng.gen_range(0..n), dst), random_weight(rng));
        }
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let key = (rng.gen_range(0..n), rng.gen_range(0..n));
        arcs.entry(key).or_insert_with(|| random_weight(rng));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    WeightedDigraph::new(
        names.clone(),
        arcs.into_iter()
            .map(|((s, d), w)| (names[s].clone(), names[d].clone(), w)),
    )
    .expect("generated arcs are valid")
}

/// A random linear map with small rational entries, each entry present
/// with probability 0.6.
pub fn random_endo(rng: &mut ChaCha8Rng, basis: &Basis) -> LinearEndo {
    LinearEndo::from_columns(basis.clone(), |_| {
        FreeVector::from_terms(basis.labels().iter().filter_map(|l| {
            if rng.gen_bool(0.6) {
                Some((l.clone(), random_weight(rng)))
            } else {
                None
            }
        }))
    })
    .expect("support stays in basis")
}

/// Retries [`random_endo`] until the result is invertible.
pub fn random_invertible_endo(rng: &mut ChaCha8Rng, basis: &Basis) -> LinearEndo {
    loop {
        let f = random_endo(rng, basis);
        if f.invert().is_ok() {
            return f;
        }
    }
}

/// A random invertible diagonal map.
pub fn random_diagonal_endo(rng: &mut ChaCha8Rng, basis: &Basis) -> LinearEndo {
    LinearEndo::from_columns(basis.clone(), |l| {
        FreeVector::term(l.clone(), random_weight(rng))
    })
    .expect("diagonal")
}

/// A commuting pair of invertible maps: either two diagonals or a map
/// together with an invertible polynomial in it.
pub fn random_commuting_pair(rng: &mut ChaCha8Rng, basis: &Basis) -> (LinearEndo, LinearEndo) {
    if rng.gen_bool(0.5) {
        return (
            random_diagonal_endo(rng, basis),
            random_diagonal_endo(rng, basis),
        );
    }
    let a = random_invertible_endo(rng, basis);
    let a2 = a.compose(&a).expect("same basis");
    loop {
        let (c2, c1, c0) = (
            int(rng.gen_range(-3i64..=3)),
            int(rng.gen_range(-3i64..=3)),
            int(rng.gen_range(-3i64..=3)),
        );
        let id = LinearEndo::identity(basis.clone());
        let b = LinearEndo::from_columns(basis.clone(), |l| {
            let quad = a2.column(l).expect("basis").scale(&c2);
            let lin = a.column(l).expect("basis").scale(&c1);
            let cst = id.column(l).expect("basis").scale(&c0);
            quad.add(&lin).add(&cst)
        })
        .expect("support stays in basis");
        if b.invert().is_ok() {
            return (a, b);
        }
    }
}
