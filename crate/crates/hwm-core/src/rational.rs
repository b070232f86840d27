//! Exact rational scalars.
//!
//! Every pairing, symmetrizer entry, bilinear-form value, and simplex pivot in
//! this crate is a [`Q`]; floating point is never used. Offsets that are known
//! to be integral are kept as `i64` vectors and promoted on demand.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number.
pub type Q = BigRational;

/// `n` as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `p/q` as a rational. Panics if `den == 0`.
pub fn q_ratio(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// True if `x` has denominator 1.
pub fn is_integral(x: &Q) -> bool {
    x.denom().is_one()
}

/// Extracts an `i64` from an integral rational, if it is one and fits.
pub fn to_integer(x: &Q) -> Option<i64> {
    if !is_integral(x) {
        return None;
    }
    i64::try_from(x.numer().clone()).ok()
}

/// Renders `x` as `"n"` for integers and `"p/q"` otherwise.
pub fn q_to_string(x: &Q) -> String {
    if is_integral(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"n"` or `"p/q"` (optional sign on the numerator).
pub fn q_from_str(s: &str) -> Result<Q, Error> {
    let bad = || Error::BadRational(s.to_string());
    let mut parts = s.splitn(2, '/');
    let numer: BigInt = parts
        .next()
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    match parts.next() {
        None => Ok(Q::from_integer(numer)),
        Some(d) => {
            let denom: BigInt = d.trim().parse().map_err(|_| bad())?;
            if denom.is_zero() || denom.is_negative() {
                return Err(bad());
            }
            Ok(Q::new(numer, denom))
        }
    }
}

/// Sum of the entries of a rational vector (the "height" of an offset).
pub fn height_q(v: &[Q]) -> Q {
    v.iter().fold(Q::zero(), |acc, x| acc + x)
}

/// Sum of the entries of an integer vector.
pub fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_integers_and_fractions() {
        for s in ["0", "7", "-3", "1/2", "-5/4"] {
            let x = q_from_str(s).unwrap();
            assert_eq!(q_to_string(&x), s);
        }
    }

    #[test]
    fn normalizes_on_parse() {
        assert_eq!(q_to_string(&q_from_str("4/2").unwrap()), "2");
        assert_eq!(q_to_string(&q_from_str("-2/4").unwrap()), "-1/2");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "x", "1/0", "1/-2", "1/2/3"] {
            assert!(q_from_str(s).is_err(), "expected parse failure for {s:?}");
        }
    }

    #[test]
    fn integrality_checks() {
        assert!(is_integral(&q(5)));
        assert!(!is_integral(&q_ratio(1, 2)));
        assert_eq!(to_integer(&q(-9)), Some(-9));
        assert_eq!(to_integer(&q_ratio(3, 2)), None);
    }
}
