//! Exact-rational helpers: parsing `p/q` literals and conversions.

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Parse `"3"`, `"-1/4"`, or `"0.125"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: Integer = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
        let den: Integer = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
        if den == 0 {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Rational::from((num, den)));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal `{s}`")));
        }
        let num: Integer = digits.parse().expect("ascii digits");
        let den = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
        let r = Rational::from((num, den));
        return Ok(if neg { -r } else { r });
    }
    s.parse::<Integer>()
        .map(Rational::from)
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))
}

/// Parse a comma-separated list of rationals; the empty string is an empty
/// list.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

/// `p/q` shorthand for literals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

pub fn to_float(r: &Rational, prec: u32) -> Float {
    Float::with_val(prec, r)
}

/// True when `r` is an integer `<= 0`.
pub fn is_nonpositive_integer(r: &Rational) -> bool {
    *r.denom() == 1 && *r.numer() <= 0
}

pub fn fmt_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter storing a rational as a `"p/q"` string.
pub(crate) mod serde_one {
    use rug::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        super::fmt_rational(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        super::parse_rational(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter storing a list of rationals as `"p/q"` strings.
pub(crate) mod serde_vec {
    use rug::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(super::fmt_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| super::parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_rational("1/4").unwrap(), rat(1, 4));
        assert_eq!(parse_rational(" -3/6 ").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("5").unwrap(), rat(5, 1));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_rational_list("1/2, 1/2,3/2").unwrap().len(), 3);
        assert!(parse_rational_list("").unwrap().is_empty());
    }

    #[test]
    fn nonpositive_integers() {
        assert!(is_nonpositive_integer(&rat(0, 1)));
        assert!(is_nonpositive_integer(&rat(-3, 1)));
        assert!(!is_nonpositive_integer(&rat(-1, 2)));
        assert!(!is_nonpositive_integer(&rat(2, 1)));
    }
}
