//! Shared text syntax for formal sums.
//!
//! All file formats write linear combinations the same way: terms joined
//! by `+`, each term an optional `coef*` prefix followed by labels joined
//! by the tensor separator `(x)`, and `0` for the empty sum. Coefficients
//! use the scalar syntax of [`crate::scalar`]. A `#` starts a comment.

use crate::scalar::{format_scalar, parse_scalar, Scalar};

use super::label::{Basis, BasisLabel};
use super::sum::{FreeVector, Tensor2, Tensor3, TensorN};

/// Cuts a line at the first `#`.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses a sum with exactly `factors` tensor factors per term.
///
/// Returns raw factor strings; the caller decides how to interpret the
/// labels. The literal `0` denotes the empty sum.
pub(crate) fn parse_sum(rhs: &str, factors: usize) -> Result<Vec<(Vec<String>, Scalar)>, String> {
    let rhs = rhs.trim();
    if rhs.is_empty() {
        return Err("empty right-hand side".into());
    }
    if rhs == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for raw_term in rhs.split('+') {
        let raw_term = raw_term.trim();
        if raw_term.is_empty() {
            return Err("empty term in sum".into());
        }
        let parts: Vec<&str> = raw_term.split("(x)").map(str::trim).collect();
        if parts.len() != factors {
            return Err(format!(
                "expected {factors} tensor factor(s), found {} in `{raw_term}`",
                parts.len()
            ));
        }
        let mut labels: Vec<String> = Vec::with_capacity(factors);
        let mut coeff = Scalar::from_integer(1.into());
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(format!("missing label in `{raw_term}`"));
            }
            let mut label = *part;
            if i == 0 {
                if let Some((prefix, rest)) = part.split_once('*') {
                    if let Ok(c) = parse_scalar(prefix) {
                        if rest.is_empty() {
                            return Err(format!("missing label after `{prefix}*`"));
                        }
                        coeff = c;
                        label = rest;
                    }
                }
            }
            labels.push(label.to_string());
        }
        out.push((labels, coeff));
    }
    Ok(out)
}

/// Renders a sum in the syntax accepted by [`parse_sum`].
pub(crate) fn format_sum(terms: &[(Vec<String>, Scalar)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let rendered: Vec<String> = terms
        .iter()
        .map(|(labels, coeff)| {
            let body = labels.join(" (x) ");
            if coeff == &Scalar::from_integer(1.into()) {
                body
            } else {
                format!("{}*{}", format_scalar(coeff), body)
            }
        })
        .collect();
    rendered.join(" + ")
}

fn pos_or_last(basis: &Basis, label: &BasisLabel) -> usize {
    basis.pos(label).unwrap_or(usize::MAX)
}

/// Renders a vector with terms in basis order.
pub fn format_vector(v: &FreeVector, basis: &Basis) -> String {
    let mut terms: Vec<(&BasisLabel, &Scalar)> = v.terms().collect();
    terms.sort_by_key(|(l, _)| (pos_or_last(basis, l), (*l).clone()));
    format_sum(
        &terms
            .into_iter()
            .map(|(l, c)| (vec![l.to_string()], c.clone()))
            .collect::<Vec<_>>(),
    )
}

/// Renders a 2-tensor with terms in basis order.
pub fn format_tensor2(t: &Tensor2, basis: &Basis) -> String {
    let mut terms: Vec<(&(BasisLabel, BasisLabel), &Scalar)> = t.terms().collect();
    terms.sort_by_key(|((x, y), _)| {
        (
            pos_or_last(basis, x),
            pos_or_last(basis, y),
            (x.clone(), y.clone()),
        )
    });
    format_sum(
        &terms
            .into_iter()
            .map(|((x, y), c)| (vec![x.to_string(), y.to_string()], c.clone()))
            .collect::<Vec<_>>(),
    )
}

/// Renders a 3-tensor with terms in basis order.
pub fn format_tensor3(t: &Tensor3, basis: &Basis) -> String {
    let mut terms: Vec<(&(BasisLabel, BasisLabel, BasisLabel), &Scalar)> = t.terms().collect();
    terms.sort_by_key(|((x, y, z), _)| {
        (
            pos_or_last(basis, x),
            pos_or_last(basis, y),
            pos_or_last(basis, z),
            (x.clone(), y.clone(), z.clone()),
        )
    });
    format_sum(
        &terms
            .into_iter()
            .map(|((x, y, z), c)| (vec![x.to_string(), y.to_string(), z.to_string()], c.clone()))
            .collect::<Vec<_>>(),
    )
}

/// Renders an n-tensor with terms in basis order.
pub fn format_tensor_n(t: &TensorN, basis: &Basis) -> String {
    let mut terms: Vec<(&Vec<BasisLabel>, &Scalar)> = t.terms().collect();
    terms.sort_by_key(|(key, _)| {
        (
            key.iter()
                .map(|l| pos_or_last(basis, l))
                .collect::<Vec<_>>(),
            (*key).clone(),
        )
    });
    format_sum(
        &terms
            .into_iter()
            .map(|(key, c)| (key.iter().map(|l| l.to_string()).collect(), c.clone()))
            .collect::<Vec<_>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn parses_coefficients_and_defaults() {
        let terms = parse_sum("a (x) a + 2*a (x) b + -1/2*b (x) c", 2).unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[0], (vec!["a".into(), "a".into()], int(1)));
        assert_eq!(terms[1], (vec!["a".into(), "b".into()], int(2)));
        assert_eq!(terms[2], (vec!["b".into(), "c".into()], ratio(-1, 2)));
    }

    #[test]
    fn pair_labels_keep_their_star() {
        let terms = parse_sum("2*a*a + b*a", 1).unwrap();
        assert_eq!(terms[0], (vec!["a*a".into()], int(2)));
        assert_eq!(terms[1], (vec!["b*a".into()], int(1)));
    }

    #[test]
    fn zero_is_the_empty_sum() {
        assert!(parse_sum("0", 2).unwrap().is_empty());
        assert_eq!(format_sum(&[]), "0");
    }

    #[test]
    fn wrong_arity_is_rejected() {
        assert!(parse_sum("a (x) b", 3).is_err());
        assert!(parse_sum("a", 2).is_err());
        assert!(parse_sum("2*", 1).is_err());
    }

    #[test]
    fn sum_round_trip() {
        let text = "a (x) b + -2/3*c (x) d";
        let parsed = parse_sum(text, 2).unwrap();
        assert_eq!(format_sum(&parsed), text);
    }
}
