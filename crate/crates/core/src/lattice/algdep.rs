//! Minimal-polynomial guessing for a real number known to fixed precision.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{decimal_width, FixedDecimal, Polynomial, Rat};

use super::lll_reduce;

fn ten_pow(p: u32) -> BigInt {
    BigInt::from(10u32).pow(p)
}

/// Integer polynomial of degree at most `d` that `x` appears to be a root of,
/// primitive with positive leading coefficient.
///
/// The lattice has rows `(e_i | round(10^p x^i))`; the first reduced row is
/// the candidate. It is accepted when it is nonconstant, its residual obeys
/// `|P(x)| <= 10^(-p/2) (1 + sum |c_i|)`, and no coefficient has more than
/// `p / (2(d+1))` digits.
pub fn algdep(x: &FixedDecimal, d: usize, p: u32) -> Option<Polynomial> {
    algdep_with_delta(x, d, p, &Rat::new(3.into(), 4.into()))
}

pub fn algdep_with_delta(x: &FixedDecimal, d: usize, p: u32, delta: &Rat) -> Option<Polynomial> {
    if d == 0 || x.precision() < p {
        return None;
    }
    let xr = x.to_rational();
    let mut power = Rat::one();
    let mut basis = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut row = vec![BigInt::zero(); d + 2];
        row[i] = BigInt::one();
        row[d + 1] = FixedDecimal::from_rational(&power, p).mantissa().clone();
        basis.push(row);
        power *= &xr;
    }
    let reduced = lll_reduce(&basis, delta).ok()?;
    let coeffs: Vec<BigInt> = reduced[0][..=d].to_vec();
    if coeffs[1..].iter().all(Zero::is_zero) {
        return None;
    }
    let max_digits = coeffs
        .iter()
        .map(|c| decimal_width(&c.abs()))
        .max()
        .unwrap_or(0);
    if 2 * (d + 1) * max_digits > p as usize {
        return None;
    }
    let poly = Polynomial::from_bigints(&coeffs);
    let residual = poly.eval(&xr).abs();
    let weight = Rat::from_integer(BigInt::one() + coeffs.iter().map(|c| c.abs()).sum::<BigInt>());
    // |P(x)|^2 <= 10^-p (1 + sum|c|)^2
    if &residual * &residual * Rat::from_integer(ten_pow(p)) > &weight * &weight {
        return None;
    }
    let (ints, _) = poly.to_primitive_integer();
    Some(Polynomial::from_bigints(&ints))
}
