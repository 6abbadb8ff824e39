//! Exact rational scalars.
//!
//! Every exponent, eigenvalue class and threshold in this crate is a reduced
//! fraction with positive denominator; no floating point appears anywhere.

use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::{Signed, Zero};

/// Reduced fraction with positive denominator (maintained by `num_rational`).
pub type Rational = Ratio<i64>;

/// Shorthand constructor.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// Fractional part in `[0, 1)`; this is the eigenvalue class of an exponent.
pub fn frac(r: Rational) -> Rational {
    r - r.floor()
}

/// Floor as a plain integer.
pub fn floor_i64(r: Rational) -> i64 {
    r.floor().to_integer()
}

/// Renders `p/q`, dropping the denominator when it is 1.
pub fn format_rational(r: Rational) -> String {
    if r.denom() == &1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = num
        .parse()
        .map_err(|_| Error::invalid(format!("bad rational numerator in {s:?}")))?;
    let d: i64 = den
        .parse()
        .map_err(|_| Error::invalid(format!("bad rational denominator in {s:?}")))?;
    if d == 0 {
        return Err(Error::invalid(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Serde adapter serializing a `Rational` as its `p/q` string form.
pub mod rational_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        format_rational(*r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for vectors of rationals in `p/q` string form.
pub mod rational_string_vec {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| format_rational(*r))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// True when `r` is a square in `Q`, returning the positive square root.
pub fn rational_sqrt(r: &num_rational::BigRational) -> Option<num_rational::BigRational> {
    use num_bigint::BigInt;
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(num_rational::BigRational::zero());
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &ns * &ns == *r.numer() && &ds * &ds == *r.denom() {
        Some(num_rational::BigRational::new(ns, ds))
    } else {
        None::<num_rational::BigRational>
    }
    .map(|x| x * num_rational::BigRational::from(BigInt::from(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/2", "-5/4", "2", "0", "17/18"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(r), s);
        }
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn frac_lands_in_unit_interval() {
        assert_eq!(frac(rat(37, 18)), rat(1, 18));
        assert_eq!(frac(rat(-1, 2)), rat(1, 2));
        assert_eq!(frac(rat(2, 1)), rat(0, 1));
    }

    #[test]
    fn sqrt_detects_squares() {
        use num_rational::BigRational;
        let r = BigRational::new(9.into(), 4.into());
        assert_eq!(
            rational_sqrt(&r),
            Some(BigRational::new(3.into(), 2.into()))
        );
        let r = BigRational::new(2.into(), 1.into());
        assert_eq!(rational_sqrt(&r), None);
    }
}
