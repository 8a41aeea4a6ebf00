use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{gcd_of, int_to_rat, lcm_of_denominators, Rat};

/// Dense univariate polynomial over the rationals, coefficients in ascending
/// degree. The zero polynomial has no stored coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(int_to_rat).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x + c`.
    pub fn linear_root(c: Rat) -> Self {
        Self::new(vec![c, Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, n: i64) -> Rat {
        self.eval(&super::rat(n))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * super::rat(k as i64))
                .collect(),
        )
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    ///
    /// Panics when `d` is zero.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lead_inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Monic greatest common divisor over the rationals; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            // keep coefficients small between steps
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Same polynomial up to a nonzero rational factor, with coprime integer
    /// coefficients. Used only internally to tame coefficient growth.
    fn primitive_rational(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let (ints, _) = self.to_primitive_integer();
        Polynomial::from_bigints(&ints)
    }

    /// Clears denominators and removes the content: returns `(c, s)` with
    /// `self = s * c`, `c` integral and primitive, and `c`'s leading
    /// coefficient positive.
    pub fn to_primitive_integer(&self) -> (Vec<BigInt>, Rat) {
        if self.is_zero() {
            return (Vec::new(), Rat::one());
        }
        let l = lcm_of_denominators(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * int_to_rat(&l)).to_integer())
            .collect();
        let mut g = gcd_of(&ints);
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (prim, Rat::new(g, l))
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &Rat) -> Polynomial {
        let mut out = Polynomial::zero();
        let lin = Polynomial::linear_root(c.clone());
        for a in self.coeffs.iter().rev() {
            out = &(&out * &lin) + &Polynomial::constant(a.clone());
        }
        out
    }

    /// `p(c * x)`.
    pub fn scale_argument(&self, c: &Rat) -> Polynomial {
        let mut pw = Rat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Polynomial::new(out)
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Coefficient list reversed against `deg`: `x^deg * p(1/x)`.
    pub fn reversed(&self, deg: usize) -> Polynomial {
        let mut v = vec![Rat::zero(); deg + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            assert!(k <= deg, "reversal degree below polynomial degree");
            v[deg - k] = c.clone();
        }
        Polynomial::new(v)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Ascending text `1 - 2*z + 2*z^2` in the named variable.
    pub fn render(&self, var: &str) -> String {
        render_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (c.clone(), monomial_text(var, k))),
        )
    }

    /// Descending, space-free text `4*n-6` as used inside recurrences.
    pub fn render_compact(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = monomial_text(var, k);
            out.push_str(&coefficient_times(&mag, &mono));
        }
        out
    }
}

fn monomial_text(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

fn coefficient_times(mag: &Rat, mono: &str) -> String {
    let c = super::fmt_rat(mag);
    if mono.is_empty() {
        c
    } else if mag.is_one() {
        mono.to_string()
    } else {
        format!("{c}*{mono}")
    }
}

/// Joins `(coefficient, monomial)` pairs as `a + b*m - c*m2`.
pub(crate) fn render_terms(terms: impl Iterator<Item = (Rat, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&coefficient_times(&mag, &mono));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("z"))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn gcd_of_difference_of_squares_and_square() {
        // z^2 - 1 and z^2 - 2z + 1
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[1, -2, 1])), p(&[-1, 1]));
    }

    #[test]
    fn gcd_with_zero_is_monic_input() {
        assert_eq!(p(&[2, 4]).gcd(&Polynomial::zero()), p(&[0, 0]).gcd(&p(&[1, 2])));
        assert_eq!(p(&[2, 4]).gcd(&Polynomial::zero()), Polynomial::new(vec![rat(1) / rat(2), rat(1)]));
    }

    #[test]
    fn gcd_of_repeated_factor() {
        // (1 - z)^3 (1 + z) and (1 - z)^2; hand Euclid gives (z - 1)^2
        let one_minus = p(&[1, -1]);
        let a = &one_minus.pow(3) * &p(&[1, 1]);
        let b = one_minus.pow(2);
        assert_eq!(a.gcd(&b), p(&[1, -2, 1]));
    }

    #[test]
    fn division_identity() {
        let a = p(&[3, -1, 4, 1, -5, 9]);
        let d = p(&[2, 0, 7]);
        let (q, r) = a.div_rem(&d);
        assert!(r.degree().map_or(true, |k| k < 2));
        assert_eq!(&(&q * &d) + &r, a);
    }

    #[test]
    fn shift_and_render() {
        // (x+1)^2 shifted by -1 is x^2
        assert_eq!(p(&[1, 2, 1]).shift(&rat(-1)), p(&[0, 0, 1]));
        assert_eq!(p(&[1, -2, 2]).render("z"), "1 - 2*z + 2*z^2");
        assert_eq!(p(&[-6, 4]).render_compact("n"), "4*n-6");
        assert_eq!(p(&[0, -1]).render_compact("n"), "-n");
        assert_eq!(Polynomial::zero().render("z"), "0");
    }

    #[test]
    fn primitive_integer_form() {
        let q = Polynomial::new(vec![rat(1) / rat(2), rat(-3) / rat(4)]);
        let (c, s) = q.to_primitive_integer();
        assert_eq!(c, vec![BigInt::from(-2), BigInt::from(3)]);
        assert_eq!(Polynomial::from_bigints(&c).scale(&s), q);
    }
}
