//! Markov coalgebras of weighted directed graphs, the Yang-Baxter
//! solutions they induce, and the resulting braid group actions, all in
//! exact rational arithmetic.
//!
//! The pipeline:
//!
//! 1. [`graph`] parses and validates weighted digraphs (no sinks, no
//!    sources, at most one arc per ordered pair, nonzero weights).
//! 2. [`coalgebra`] turns a graph into a coalgebra with a right coproduct
//!    `delta v = sum w(v->k) v (x) k` and a left coproduct
//!    `tilde v = sum w(j->v) j (x) v`, and checks the compatibility
//!    equation `(tilde (x) id) delta = (id (x) delta) tilde`,
//!    cocommutativity, degeneracy, and counit identities. Arbitrary
//!    coproducts can be loaded from files and reshaped into Markov form.
//! 3. [`companion`] doubles a Markov coalgebra with one shadow label per
//!    basis label and derives two pairs of mutually inverse
//!    automorphisms, one from in-neighbourhoods and one from
//!    out-neighbourhoods.
//! 4. [`ybe`] builds tensor-square endomorphisms from those automorphisms
//!    and decides the Yang-Baxter equation by exhausting basis triples.
//! 5. [`braid`] lets verified solutions act on tensor powers, evaluates
//!    braid words, and checks the braid group relations.
//!
//! Scalars are arbitrary-precision rationals throughout, so every check
//! is an exact algebraic identity with no tolerances. All values are
//! immutable after construction and verification scans are deterministic
//! regardless of thread count: counterexamples always come from the first
//! failing point in basis order.

pub mod algebra;
pub mod braid;
pub mod coalgebra;
pub mod companion;
pub mod error;
pub mod graph;
pub mod random;
pub mod scalar;
pub mod ybe;

pub use algebra::{Basis, BasisLabel, FreeVector, LinearEndo, Tensor2, Tensor3, TensorN};
pub use coalgebra::{CounitCandidate, CounitSide, LCoalgebra};
pub use companion::CompanionCoalgebra;
pub use error::{Error, Result};
pub use graph::WeightedDigraph;
pub use scalar::Scalar;
pub use ybe::TwoTensorEndo;
