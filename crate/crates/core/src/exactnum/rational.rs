use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `p`, `-p`, `p/q` or `-p/q` (surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// `p/q`, or just `p` when the denominator is one.
pub fn fmt_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Very large numerators or denominators overflow f64 individually.
        let n = value.numer().to_f64().unwrap_or(f64::MAX);
        let d = value.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Nearest rational with the given power-of-two denominator.
pub fn from_f64_dyadic(value: f64, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = (value * 2f64.powi(bits as i32)).round();
    let numer = BigInt::from(scaled as i128);
    Rational::new(numer, scale)
}

/// Real `d`-th root of a rational when it is itself rational.
pub fn rational_root(value: &Rational, d: u32) -> Option<Rational> {
    if d == 0 {
        return None;
    }
    if value.is_negative() {
        if d.is_multiple_of(2) {
            return None;
        }
        return rational_root(&-value, d).map(|r| -r);
    }
    let n = exact_int_root(value.numer(), d)?;
    let q = exact_int_root(value.denom(), d)?;
    Some(Rational::new(n, q))
}

fn exact_int_root(value: &BigInt, d: u32) -> Option<BigInt> {
    let r = value.nth_root(d);
    if num_traits::pow(r.clone(), d as usize) == *value {
        Some(r)
    } else {
        None
    }
}

/// Sign of a nonzero real quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn of(value: &Rational) -> Option<Sign> {
        if value.is_positive() {
            Some(Sign::Positive)
        } else if value.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    /// 0 for positive, 1 for negative.
    pub fn logsign(self) -> bool {
        self == Sign::Negative
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Writes `v = scale * w` with `w` a primitive integer vector whose first
/// nonzero entry is positive. Returns `None` for the zero vector.
pub fn primitive_scaling(values: &[Rational]) -> Option<(Rational, Vec<BigInt>)> {
    let first = values.iter().find(|v| !v.is_zero())?;
    let den = common_denominator(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if first.is_negative() {
        g = -g;
    }
    let prim = ints.iter().map(|x| x / &g).collect();
    Some((Rational::new(g, den), prim))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&rat(10, 5)), "2");
        assert_eq!(fmt_rational(&rat(-1, 11)), "-1/11");
    }

    #[test]
    fn rational_roots() {
        assert_eq!(rational_root(&rat(9, 4), 2), Some(rat(3, 2)));
        assert_eq!(rational_root(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(rational_root(&rat(2, 1), 2), None);
        assert_eq!(rational_root(&rat(-4, 1), 2), None);
    }

    #[test]
    fn primitive_scaling_of_nikolayevsky_vector() {
        let v = [rat(2, 3), rat(2, 3), rat(4, 3)];
        let (s, w) = primitive_scaling(&v).unwrap();
        assert_eq!(s, rat(2, 3));
        assert_eq!(w, vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)]);
        assert!(primitive_scaling(&[int(0)]).is_none());
    }
}
