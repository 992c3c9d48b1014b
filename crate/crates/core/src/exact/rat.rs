//! Arbitrary-precision rational scalars.
//!
//! `Rat` is kept in lowest terms with a positive denominator by
//! construction, so exact equality and hashing are safe everywhere.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Integer as a `Rat`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a `Rat`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

/// Sign of a rational: -1, 0 or +1.
pub fn sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Render as `num/den`, or just `num` when the denominator is 1.
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `num`, `num/den`, or a decimal like `-1.25` into a `Rat`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad rational numerator `{n}`")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad rational denominator `{d}`")))?;
        if d.is_zero() {
            return Err(Error::Usage(format!("zero denominator in `{s}`")));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse()
                .map_err(|_| Error::Usage(format!("bad decimal `{s}`")))?
        };
        let digits = frac.len() as u32;
        let frac_n: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse()
                .map_err(|_| Error::Usage(format!("bad decimal `{s}`")))?
        };
        let den = BigInt::from(10u32).pow(digits);
        let mag = int.abs() * &den + frac_n;
        let val = Rat::new(mag, den);
        return Ok(if neg { -val } else { val });
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Usage(format!("bad rational `{s}`")))?;
    Ok(Rat::from_integer(n))
}

/// Nearest f64 (for the Monte-Carlo layer and display only).
pub fn rat_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-4/2").unwrap(), rat_int(-2));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert_eq!(parse_rat("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(rat_str(&rat(3, 4)), "3/4");
        assert_eq!(rat_str(&rat(-8, 2)), "-4");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn normalization() {
        let r = rat(2, -4);
        assert_eq!(r, rat(-1, 2));
        assert!(r.denom() > &num_bigint::BigInt::from(0));
    }
}
