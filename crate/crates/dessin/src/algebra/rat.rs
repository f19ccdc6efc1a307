//! Arbitrary-precision rational scalars and the shared rational text format.
//!
//! A rational is printed as `n` when the denominator is 1 and `n/d` otherwise;
//! the same forms are accepted on input. This format is shared by the
//! polynomial text format and the CLI.

use super::AlgebraError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `n` or `n/d` (denominator must be nonzero).
pub fn parse_rat(text: &str) -> Result<Rat, AlgebraError> {
    let t = text.trim();
    let bad = || AlgebraError::BadRational(text.to_string());
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Rat::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let num = n.trim().parse::<BigInt>().map_err(|_| bad())?;
            let den = d.trim().parse::<BigInt>().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// `base^exp` for a signed exponent; `0^negative` is rejected by `Rat::recip`.
pub fn pow_i(base: &Rat, exp: i64) -> Rat {
    if exp >= 0 {
        pow_u(base, exp as u64)
    } else {
        pow_u(&base.recip(), (-exp) as u64)
    }
}

/// `base^exp` by repeated squaring.
pub fn pow_u(base: &Rat, exp: u64) -> Rat {
    let mut result = Rat::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    result
}

/// 2^(-bits) as an exact rational, the standard residual threshold.
pub fn pow2_neg(bits: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << bits)
}

/// Round to the nearest multiple of 2^(-bits), ties toward +infinity.
pub fn round_to_bits(x: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits;
    let scaled = x * Rat::from_integer(scale.clone());
    let rounded = (scaled + rat(1, 2)).floor();
    rounded / Rat::from_integer(scale)
}

/// |x| as a rational.
pub fn abs(x: &Rat) -> Rat {
    if x.is_negative() {
        -x.clone()
    } else {
        x.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_rat("8/3").unwrap(), rat(8, 3));
        assert_eq!(parse_rat(" -6 / 4 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("7").unwrap(), int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn display_matches_grammar() {
        assert_eq!(rat(8, 3).to_string(), "8/3");
        assert_eq!(rat(-6, 4).to_string(), "-3/2");
        assert_eq!(int(7).to_string(), "7");
    }

    #[test]
    fn rounding_is_dyadic() {
        let x = rat(1, 3);
        let r = round_to_bits(&x, 4);
        assert_eq!(r, rat(5, 16));
        assert_eq!(round_to_bits(&int(3), 8), int(3));
    }

    #[test]
    fn signed_powers() {
        assert_eq!(pow_i(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(pow_i(&rat(2, 3), 0), int(1));
        assert_eq!(pow_u(&int(2), 10), int(1024));
    }
}
