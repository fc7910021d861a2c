//! The exact scalar field: arbitrary-precision rationals.
//!
//! Every quantity in this crate is computed over `Q` with no rounding.
//! [`Rational`] is always stored reduced with a positive denominator,
//! which the backing `num-rational` type guarantees.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number, the coefficient field for every computation here.
pub type Rational = num_rational::BigRational;

/// Shorthand for small rationals in tests and examples.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for small integers as rationals.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p` or `p/q` with optional sign, e.g. `-3/2`.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| RationalParseError::Invalid(text.to_owned()))?;
    let den: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| RationalParseError::Invalid(text.to_owned()))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(RationalParseError::ZeroDenominator(text.to_owned()));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `p` when the denominator is one, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scales a rational vector to a primitive integer vector with the same ray.
///
/// Multiplies by the lcm of denominators and divides by the gcd of the
/// results. The zero vector maps to the zero vector.
pub fn primitive_integer_ray(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    if v.iter().all(|c| c.is_zero()) {
        return vec![BigInt::zero(); v.len()];
    }
    let mut lcm = BigInt::one();
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// Primitive integer scaling that also fixes the sign: the first nonzero
/// entry is made positive. Used for facet normals, where only the
/// halfspace matters up to positive scaling.
pub fn primitive_signed_normal(v: &[Rational]) -> Vec<BigInt> {
    let mut p = primitive_integer_ray(v);
    if let Some(first) = p.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            for c in &mut p {
                *c = -std::mem::take(c);
            }
        }
    }
    p
}

/// Serde adaptor serializing `Vec<Rational>` as an array of `p/q` strings.
pub mod rational_vec_serde {
    use super::{format_rational, parse_rational, Rational};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rational>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(de)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-7", "1/2", "-3/2", "22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("3/1").unwrap(), int(3));
        assert_eq!(format_rational(&parse_rational("3/1").unwrap()), "3");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            parse_rational("1/0"),
            Err(RationalParseError::ZeroDenominator("1/0".into()))
        );
    }

    #[test]
    fn primitive_ray_scaling() {
        let v = vec![rat(1, 2), rat(-1, 3)];
        let p = primitive_integer_ray(&v);
        assert_eq!(p, vec![BigInt::from(3), BigInt::from(-2)]);
        let n = primitive_signed_normal(&[rat(0, 1), rat(-2, 1), rat(4, 1)]);
        assert_eq!(n, vec![BigInt::from(0), BigInt::from(1), BigInt::from(-2)]);
    }
}
