//! Braid group actions on tensor powers of a Yang-Baxter solution.
//!
//! A solution `R` on `W (x) W` acts on `W^(x)n` through the generators
//! `s_i = id^(i-1) (x) R (x) id^(n-i-1)`; inverse letters use `R^-1`.
//! Words apply left to right: in `s1 s2`, the `s1` action happens first.
//! Generator matrices are never materialized; letters act factor-locally
//! on the sparse terms of a state.

use num::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{Basis, BasisLabel, TensorN};
use crate::coalgebra::LCoalgebra;
use crate::companion::CompanionCoalgebra;
use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::scalar::Scalar;
use crate::ybe::{merge_coded, CodedTensor, IndexedPairMap, TwoTensorEndo};

/// States beyond this count are checked on a seeded sample instead of
/// exhaustively.
pub const EXHAUSTIVE_STATE_CAP: u64 = 100_000;

/// Sample size for the non-exhaustive checks.
pub const RELATION_SAMPLES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// A word in the braid generators `s1 .. s(n-1)` and their inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, Sign)>,
}

impl BraidWord {
    pub fn empty(strands: usize) -> Result<Self> {
        if strands < 2 {
            return Err(Error::StrandCount(strands));
        }
        Ok(BraidWord {
            strands,
            letters: Vec::new(),
        })
    }

    pub fn from_letters(strands: usize, letters: Vec<(usize, Sign)>) -> Result<Self> {
        let mut w = BraidWord::empty(strands)?;
        for (index, sign) in letters {
            w.push(index, sign)?;
        }
        Ok(w)
    }

    fn push(&mut self, index: usize, sign: Sign) -> Result<()> {
        if index == 0 || index >= self.strands {
            return Err(Error::IndexOutOfRange {
                index,
                strands: self.strands,
            });
        }
        self.letters.push((index, sign));
        Ok(())
    }

    /// Parses whitespace-separated `s<k>` and `s<k>^-1` tokens.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let mut word = BraidWord::empty(strands)?;
        for token in text.split_whitespace() {
            let Some(rest) = token.strip_prefix('s') else {
                return Err(Error::Syntax {
                    line: 0,
                    msg: format!("expected `s<k>` or `s<k>^-1`, found `{token}`"),
                });
            };
            let (digits, sign) = match rest.strip_suffix("^-1") {
                Some(d) => (d, Sign::Neg),
                None => (rest, Sign::Pos),
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Syntax {
                    line: 0,
                    msg: format!("expected `s<k>` or `s<k>^-1`, found `{token}`"),
                });
            }
            let index: usize = digits.parse().map_err(|_| Error::Syntax {
                line: 0,
                msg: format!("expected `s<k>` or `s<k>^-1`, found `{token}`"),
            })?;
            word.push(index, sign)?;
        }
        Ok(word)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, Sign)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::ArityMismatch {
                expected: self.strands,
                got: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// The group inverse: letters reversed with flipped signs.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(i, s)| (*i, s.flip()))
                .collect(),
        }
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rendered: Vec<String> = self
            .letters
            .iter()
            .map(|(i, s)| match s {
                Sign::Pos => format!("s{i}"),
                Sign::Neg => format!("s{i}^-1"),
            })
            .collect();
        f.write_str(&rendered.join(" "))
    }
}

/// Outcome of one relation check.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub description: String,
    pub states_checked: usize,
    pub sampled: bool,
    /// A basis state where the two sides differ.
    pub counterexample: Option<TensorN>,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(RelationCheck::passed)
    }
}

/// A braid group action built from an invertible Yang-Baxter solution.
#[derive(Debug)]
pub struct BraidRepresentation {
    r: TwoTensorEndo,
    r_inv: TwoTensorEndo,
    strands: usize,
    idx: IndexedPairMap,
    idx_inv: IndexedPairMap,
}

impl BraidRepresentation {
    /// Verifies the Yang-Baxter equation, inverts `r`, and fixes the
    /// strand count.
    pub fn new(r: TwoTensorEndo, strands: usize) -> Result<Self> {
        if !r.verify_ybe().holds() {
            return Err(Error::NotYangBaxter);
        }
        Self::new_unchecked(r, strands)
    }

    /// Same as [`BraidRepresentation::new`] but skips the Yang-Baxter
    /// check, so deliberately broken actions can be probed.
    pub fn new_unchecked(r: TwoTensorEndo, strands: usize) -> Result<Self> {
        if strands < 2 {
            return Err(Error::StrandCount(strands));
        }
        let dim = r.dim() as u64;
        if dim.checked_pow(strands as u32).is_none() {
            return Err(Error::StateSpaceTooLarge {
                dim: r.dim(),
                strands,
            });
        }
        let r_inv = r.invert()?;
        debug_assert!(r
            .compose(&r_inv)
            .expect("same basis")
            .is_identity_on_pairs());
        debug_assert!(r_inv
            .compose(&r)
            .expect("same basis")
            .is_identity_on_pairs());
        let idx = IndexedPairMap::new(&r);
        let idx_inv = IndexedPairMap::new(&r_inv);
        Ok(BraidRepresentation {
            r,
            r_inv,
            strands,
            idx,
            idx_inv,
        })
    }

    pub fn r(&self) -> &TwoTensorEndo {
        &self.r
    }

    pub fn r_inv(&self) -> &TwoTensorEndo {
        &self.r_inv
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn basis(&self) -> &Basis {
        self.r.basis()
    }

    pub fn dim(&self) -> usize {
        self.r.dim()
    }

    fn encode(&self, state: &TensorN) -> Result<CodedTensor> {
        let d = self.dim() as u64;
        let mut out = Vec::new();
        for (key, c) in state.terms() {
            if key.len() != self.strands {
                return Err(Error::ArityMismatch {
                    expected: self.strands,
                    got: key.len(),
                });
            }
            let mut code = 0u64;
            for l in key {
                let p = self
                    .basis()
                    .pos(l)
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))?
                    as u64;
                code = code * d + p;
            }
            out.push((code, c.clone()));
        }
        Ok(merge_coded(out))
    }

    fn decode(&self, coded: &[(u64, Scalar)]) -> TensorN {
        let d = self.dim() as u64;
        TensorN::from_terms(coded.iter().map(|(code, c)| {
            let mut key = vec![0u64; self.strands];
            let mut rest = *code;
            for j in (0..self.strands).rev() {
                key[j] = rest % d;
                rest /= d;
            }
            (
                key.into_iter()
                    .map(|p| self.basis().get(p as usize).clone())
                    .collect::<Vec<BasisLabel>>(),
                c.clone(),
            )
        }))
    }

    fn step(&self, index: usize, sign: Sign, state: &CodedTensor) -> CodedTensor {
        let map = match sign {
            Sign::Pos => &self.idx,
            Sign::Neg => &self.idx_inv,
        };
        map.apply_at(self.strands, index - 1, state)
    }

    /// Applies one generator (or its inverse) to tensor factors
    /// `(index, index + 1)` of every term.
    pub fn apply_generator(&self, index: usize, sign: Sign, state: &TensorN) -> Result<TensorN> {
        if index == 0 || index >= self.strands {
            return Err(Error::IndexOutOfRange {
                index,
                strands: self.strands,
            });
        }
        let coded = self.encode(state)?;
        Ok(self.decode(&self.step(index, sign, &coded)))
    }

    /// Applies a word, leftmost letter first.
    pub fn evaluate_word(&self, word: &BraidWord, state: &TensorN) -> Result<TensorN> {
        if word.strands() != self.strands {
            return Err(Error::ArityMismatch {
                expected: self.strands,
                got: word.strands(),
            });
        }
        let mut coded = self.encode(state)?;
        for &(index, sign) in word.letters() {
            coded = self.step(index, sign, &coded);
        }
        Ok(self.decode(&coded))
    }

    fn eval_coded(&self, letters: &[(usize, Sign)], code: u64) -> CodedTensor {
        let mut state = vec![(code, Scalar::one())];
        for &(index, sign) in letters {
            state = self.step(index, sign, &state);
        }
        state
    }

    /// Checks the defining relations on basis states: the adjacent braid
    /// relation at every position, far commutation for every distant
    /// pair, and cancellation of each generator against its inverse.
    ///
    /// Adjacent and inverse checks exhaust the basis states while their
    /// count stays within [`EXHAUSTIVE_STATE_CAP`]; far commutation uses
    /// a seeded sample once the count exceeds [`RELATION_SAMPLES`].
    pub fn verify_relations(&self, seed: u64) -> RelationReport {
        let n = self.strands;
        let total = (self.dim() as u64)
            .checked_pow(n as u32)
            .expect("checked at construction");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checks = Vec::new();

        let mut run = |description: String,
                       lhs: Vec<(usize, Sign)>,
                       rhs: Vec<(usize, Sign)>,
                       cap: u64,
                       rng: &mut ChaCha8Rng| {
            let (states, sampled) = if total <= cap {
                ((0..total).collect::<Vec<u64>>(), false)
            } else {
                let d = self.dim() as u64;
                let codes = (0..RELATION_SAMPLES)
                    .map(|_| (0..n).fold(0u64, |acc, _| acc * d + rng.gen_range(0..d)))
                    .collect::<Vec<u64>>();
                (codes, true)
            };
            let first_bad = states
                .par_iter()
                .find_first(|&&code| self.eval_coded(&lhs, code) != self.eval_coded(&rhs, code));
            checks.push(RelationCheck {
                description,
                states_checked: states.len(),
                sampled,
                counterexample: first_bad.map(|&code| self.decode(&[(code, Scalar::one())])),
            });
        };

        for i in 1..n.saturating_sub(1) {
            run(
                format!("braid s{i} s{} s{i} = s{} s{i} s{}", i + 1, i + 1, i + 1),
                vec![(i, Sign::Pos), (i + 1, Sign::Pos), (i, Sign::Pos)],
                vec![(i + 1, Sign::Pos), (i, Sign::Pos), (i + 1, Sign::Pos)],
                EXHAUSTIVE_STATE_CAP,
                &mut rng,
            );
        }
        for i in 1..n {
            for j in (i + 2)..n {
                run(
                    format!("commute s{i} s{j} = s{j} s{i}"),
                    vec![(i, Sign::Pos), (j, Sign::Pos)],
                    vec![(j, Sign::Pos), (i, Sign::Pos)],
                    RELATION_SAMPLES as u64,
                    &mut rng,
                );
            }
        }
        for i in 1..n {
            run(
                format!("inverse s{i} s{i}^-1 = id"),
                vec![(i, Sign::Pos), (i, Sign::Neg)],
                Vec::new(),
                EXHAUSTIVE_STATE_CAP,
                &mut rng,
            );
        }

        RelationReport { checks }
    }
}

/// Builds the two braid actions a graph induces through the doubled
/// coalgebra: one from the left automorphism, one from the right.
///
/// The `distinct` flag records whether the two solutions differ, which
/// happens exactly when the base coalgebra is not cocommutative.
pub fn two_representations(
    g: &WeightedDigraph,
    strands: usize,
) -> Result<(BraidRepresentation, BraidRepresentation, bool)> {
    let base = LCoalgebra::markov_from_graph(g)?;
    let companion = CompanionCoalgebra::build(&base)?;
    let r_left = TwoTensorEndo::hat1(companion.psi_left())?;
    let r_right = TwoTensorEndo::hat1(companion.psi_right())?;
    let distinct = companion.is_distinct();
    debug_assert_eq!(distinct, !base.is_l_cocommutative().is_cocommutative());
    Ok((
        BraidRepresentation::new(r_left, strands)?,
        BraidRepresentation::new(r_right, strands)?,
        distinct,
    ))
}

/// Parses a state over `arity` tensor factors in the shared sum syntax,
/// e.g. `a (x) b (x) c + 2*c (x) a (x) a`.
pub fn parse_state(text: &str, arity: usize) -> Result<TensorN> {
    let raw = crate::algebra::text::parse_sum(text, arity)
        .map_err(|msg| Error::Syntax { line: 0, msg })?;
    let mut out = TensorN::zero();
    for (labels, c) in raw {
        let mut key = Vec::with_capacity(labels.len());
        for l in &labels {
            if !crate::algebra::is_valid_name(l) {
                return Err(Error::Syntax {
                    line: 0,
                    msg: format!("invalid label `{l}`"),
                });
            }
            key.push(BasisLabel::parse(l));
        }
        out.insert_add(key, c);
    }
    Ok(out)
}
