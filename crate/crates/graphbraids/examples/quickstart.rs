//! Build a coalgebra from a small graph, derive a Yang-Baxter solution,
//! and act on a three-fold tensor state.

use graphbraids::braid::{parse_state, two_representations, BraidWord};
use graphbraids::{CompanionCoalgebra, LCoalgebra, TwoTensorEndo, WeightedDigraph};

fn main() -> Result<(), graphbraids::Error> {
    let g = WeightedDigraph::parse("a -> a\na -> b\nb -> c\nb -> d\nc -> a\nc -> b\nd -> c\nd -> d\n")?;
    let coalgebra = LCoalgebra::markov_from_graph(&g)?;
    assert!(coalgebra.check_breaking_equation().holds());

    let companion = CompanionCoalgebra::build(&coalgebra)?;
    let r = TwoTensorEndo::hat1(companion.psi_left())?;
    assert!(r.verify_ybe().holds());

    let (left, right, distinct) = two_representations(&g, 3)?;
    assert_eq!(distinct, left.r() != right.r());

    let word = BraidWord::parse("s1 s2 s1", 3)?;
    let state = parse_state("a (x) b (x) c", 3)?;
    let result = left.evaluate_word(&word, &state)?;
    println!(
        "{} |-> {}",
        graphbraids::algebra::format_tensor_n(&state, left.basis()),
        graphbraids::algebra::format_tensor_n(&result, left.basis())
    );
    Ok(())
}
