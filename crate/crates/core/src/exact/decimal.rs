use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Rat;
use crate::error::Error;

/// Decimal number `mantissa * 10^-scale`, carried at `scale` fractional
/// digits. Every arithmetic result is rounded half-to-even back to the
/// precision of its operands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedDecimal {
    mantissa: BigInt,
    scale: u32,
}

fn ten_pow(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// `num / den` rounded to the nearest integer, ties to even. `den > 0`.
pub(crate) fn round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(den.is_positive());
    let (q, r) = num.div_mod_floor(den);
    let twice = &r * 2u32;
    match twice.cmp(den) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1u32,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1u32
            }
        }
    }
}

impl FixedDecimal {
    pub fn from_parts(mantissa: BigInt, scale: u32) -> Self {
        FixedDecimal { mantissa, scale }
    }

    /// Rounds an exact rational to `digits` fractional digits.
    pub fn from_rational(q: &Rat, digits: u32) -> Self {
        let scaled = q.numer() * ten_pow(digits);
        FixedDecimal {
            mantissa: round_half_even(&scaled, q.denom()),
            scale: digits,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    /// Number of fractional digits carried.
    pub fn precision(&self) -> u32 {
        self.scale
    }

    pub fn to_rational(&self) -> Rat {
        Rat::new(self.mantissa.clone(), ten_pow(self.scale))
    }

    /// Same value rounded to another precision.
    pub fn with_precision(&self, digits: u32) -> Self {
        Self::from_rational(&self.to_rational(), digits)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.scale.min(other.scale);
        Self::from_rational(&(self.to_rational() + other.to_rational()), p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.scale.min(other.scale);
        Self::from_rational(&(self.to_rational() - other.to_rational()), p)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.scale.min(other.scale);
        let num = &self.mantissa * &other.mantissa;
        let den = ten_pow(self.scale + other.scale - p);
        FixedDecimal {
            mantissa: round_half_even(&num, &den),
            scale: p,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        if other.mantissa.is_zero() {
            return Err(Error::PreconditionViolated("decimal division by zero".into()));
        }
        let p = self.scale.min(other.scale);
        Ok(Self::from_rational(&(self.to_rational() / other.to_rational()), p))
    }

    /// `self^e`, rounding after every multiplication.
    pub fn powi(&self, e: u32) -> Self {
        let mut out = FixedDecimal {
            mantissa: ten_pow(self.scale),
            scale: self.scale,
        };
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `round(10^digits * self)` as an integer.
    pub fn scaled_integer(&self, digits: u32) -> BigInt {
        self.with_precision(digits).mantissa
    }
}

impl fmt::Display for FixedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.mantissa.is_negative();
        let digits = self.mantissa.abs().to_str_radix(10);
        let scale = self.scale as usize;
        let padded = if digits.len() <= scale {
            format!("{}{}", "0".repeat(scale + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac) = padded.split_at(padded.len() - scale);
        if neg {
            f.write_str("-")?;
        }
        if scale == 0 {
            write!(f, "{int_part}")
        } else {
            write!(f, "{int_part}.{frac}")
        }
    }
}

impl FromStr for FixedDecimal {
    type Err = Error;

    /// Parses `[-]ddd[.ddd]`; the precision is the number of fractional
    /// digits written.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse {
            position: 0,
            message: format!("not a decimal number: {s:?}"),
        };
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let joined = format!("{}{}", if int_part.is_empty() { "0" } else { int_part }, frac);
        let mut mantissa: BigInt = joined.parse().map_err(|_| bad())?;
        if neg {
            mantissa = -mantissa;
        }
        Ok(FixedDecimal {
            mantissa,
            scale: frac.len() as u32,
        })
    }
}

impl From<&FixedDecimal> for Rat {
    fn from(d: &FixedDecimal) -> Rat {
        d.to_rational()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use num_traits::One;

    #[test]
    fn rounds_half_to_even() {
        assert_eq!(FixedDecimal::from_rational(&ratio(5, 1000), 2).to_string(), "0.00");
        assert_eq!(FixedDecimal::from_rational(&ratio(15, 1000), 2).to_string(), "0.02");
        assert_eq!(FixedDecimal::from_rational(&ratio(-15, 1000), 2).to_string(), "-0.02");
        assert_eq!(FixedDecimal::from_rational(&ratio(2, 3), 4).to_string(), "0.6667");
    }

    #[test]
    fn parse_and_print() {
        let x: FixedDecimal = "1.4142135623".parse().unwrap();
        assert_eq!(x.precision(), 10);
        assert_eq!(x.to_string(), "1.4142135623");
        let y: FixedDecimal = "-0.05".parse().unwrap();
        assert_eq!(y.to_rational(), ratio(-1, 20));
        assert!("1.2.3".parse::<FixedDecimal>().is_err());
        assert!("abc".parse::<FixedDecimal>().is_err());
    }

    #[test]
    fn arithmetic_rounds_to_operand_precision() {
        let a: FixedDecimal = "1.25".parse().unwrap();
        let b: FixedDecimal = "0.50".parse().unwrap();
        assert_eq!(a.mul(&b).to_string(), "0.62");
        assert_eq!(a.add(&b).to_string(), "1.75");
        assert_eq!(a.div(&b).unwrap().to_string(), "2.50");
        assert_eq!(a.powi(2).to_string(), "1.56");
        assert_eq!(FixedDecimal::from_rational(&Rat::one(), 3).to_string(), "1.000");
    }
}
