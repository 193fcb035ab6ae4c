//! Exact rational scalars.
//!
//! Every computation in this crate happens over the rationals with
//! arbitrary-precision numerator and denominator, so identities between
//! maps are decided by exact equality rather than by tolerances.
//! [`num::BigRational`] already keeps values in lowest terms with a
//! positive denominator; this module adds the strict text syntax used by
//! all file formats (`p`, `-p`, or `p/q` with a plain positive `q`).

use num::bigint::BigInt;
use num::{BigRational, One, Zero};

/// The scalar field: exact rationals.
pub type Scalar = BigRational;

/// Scalar from an integer.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar `n/d`, reduced. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a scalar as `p` when integral and `p/q` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses the strict token syntax `-?digits(/digits)?`.
///
/// The denominator, when present, must be written unsigned; signs on the
/// denominator, leading `+`, and surrounding whitespace are all rejected.
pub(crate) fn parse_scalar(tok: &str) -> Result<Scalar, String> {
    fn digits(s: &str) -> bool {
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
    }
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (tok, None),
    };
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) {
        return Err(format!("expected a number, found `{tok}`"));
    }
    if let Some(d) = den {
        if !digits(d) {
            return Err(format!("expected a positive denominator, found `{tok}`"));
        }
        let d: BigInt = d.parse().expect("checked digits");
        if d.is_zero() {
            return Err(format!("zero denominator in `{tok}`"));
        }
        let n: BigInt = num.parse().expect("checked digits");
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = num.parse().expect("checked digits");
        Ok(BigRational::from_integer(n))
    }
}
