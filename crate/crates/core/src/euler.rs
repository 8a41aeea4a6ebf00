//! Euler products `prod_{n>=1} (1 - z^n)^(-c_n)` and their inversion by
//! Möbius inversion over divisors.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, Rat, TruncatedSeries};
use crate::expr::text::Cursor;
use crate::expr::{GfExpr, RationalGF};
use crate::rational_fit::ratpoly_guess;

pub const MAX_PERIOD: usize = 12;
pub const MAX_PREPERIOD: usize = 4;

/// Structure detected in the exponent sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExponentPattern {
    /// `c_1, c_2, ...` is `preperiod` followed by `cycle` repeated.
    Periodic { preperiod: Vec<Rat>, cycle: Vec<Rat> },
    /// Ordinary generating function `sum c_n z^n` (with `c_0 = 0`).
    Rational(RationalGF),
}

impl ExponentPattern {
    /// Exponent `c_n` for `n >= 1`.
    pub fn exponent(&self, n: usize) -> Rat {
        match self {
            ExponentPattern::Periodic { preperiod, cycle } => {
                let i = n - 1;
                if i < preperiod.len() {
                    preperiod[i].clone()
                } else {
                    cycle[(i - preperiod.len()) % cycle.len()].clone()
                }
            }
            ExponentPattern::Rational(r) => r.expand(n + 1).coeff(n),
        }
    }

    /// `c_1 .. c_count`.
    pub fn exponents(&self, count: usize) -> Vec<Rat> {
        match self {
            ExponentPattern::Rational(r) => r.expand(count + 1).coeffs()[1..].to_vec(),
            _ => (1..=count).map(|n| self.exponent(n)).collect(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            ExponentPattern::Periodic { preperiod, cycle } => {
                format!("periodic(pre=[{}], cycle=[{}])", join(preperiod), join(cycle))
            }
            ExponentPattern::Rational(r) => format!("rational({})", r.render()),
        }
    }
}

fn join(v: &[Rat]) -> String {
    v.iter().map(fmt_rat).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EulerProduct {
    /// `c_1 .. c_{T-1}`.
    pub exponents: Vec<Rat>,
    pub integral: bool,
    pub pattern: Option<ExponentPattern>,
}

impl EulerProduct {
    pub fn new(exponents: Vec<Rat>) -> Self {
        let integral = exponents.iter().all(|c| c.is_integer());
        EulerProduct {
            exponents,
            integral,
            pattern: None,
        }
    }

    /// `euler_product(c: [1,1,1]; pattern: periodic(pre=[], cycle=[1]))`
    pub fn render(&self) -> String {
        let pattern = self.pattern.as_ref().map_or_else(|| "none".to_string(), ExponentPattern::render);
        format!("euler_product(c: [{}]; pattern: {pattern})", join(&self.exponents))
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut c = Cursor::new(src);
        c.expect("euler_product(")?;
        c.expect("c:")?;
        let exponents = parse_list(&mut c)?;
        c.expect(";")?;
        c.expect("pattern:")?;
        let pattern = if c.eat("none") {
            None
        } else if c.eat("periodic(") {
            c.expect("pre=")?;
            let preperiod = parse_list(&mut c)?;
            c.expect(",")?;
            c.expect("cycle=")?;
            let cycle = parse_list(&mut c)?;
            c.expect(")")?;
            if cycle.is_empty() {
                return Err(c.error("empty cycle".into()));
            }
            Some(ExponentPattern::Periodic { preperiod, cycle })
        } else {
            c.expect("rational(")?;
            let inner = c.balanced_until_close()?;
            match GfExpr::parse(inner)? {
                GfExpr::Rational(r) => Some(ExponentPattern::Rational(r)),
                _ => return Err(c.error("expected a rational function".into())),
            }
        };
        c.expect(")")?;
        c.finish()?;
        let mut p = EulerProduct::new(exponents);
        p.pattern = pattern;
        Ok(p)
    }
}

impl fmt::Display for EulerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn parse_list(c: &mut Cursor<'_>) -> Result<Vec<Rat>> {
    c.expect("[")?;
    let mut out = Vec::new();
    if c.eat("]") {
        return Ok(out);
    }
    loop {
        out.push(c.parse_rat()?);
        if c.eat("]") {
            return Ok(out);
        }
        c.expect(",")?;
    }
}

/// Möbius function on `0..=n` by a linear sieve.
pub fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    if n >= 1 {
        mu[0] = 0;
    }
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            if i * p > n {
                break;
            }
            composite[i * p] = true;
            if i % p == 0 {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    mu
}

/// Exponents `c_n` with `prod (1 - z^n)^(-c_n) = sum a_n z^n`; needs `a_0 = 1`.
pub fn inverse_euler(seq: &[Rat]) -> Result<EulerProduct> {
    if seq.first().is_none_or(|a| !a.is_one()) {
        return Err(Error::LeadingTermNotOne);
    }
    let t = seq.len();
    if t == 1 {
        return Ok(EulerProduct::new(Vec::new()));
    }
    let s = TruncatedSeries::new(seq.to_vec());
    // z S'/S: coefficient n is d_n = sum_{j | n} j c_j
    let ld = s.derive().div(&s.truncate(t - 1))?;
    let d: Vec<Rat> = std::iter::once(Rat::zero()).chain(ld.into_coeffs()).collect();
    let mu = mobius_table(t);
    let exponents = (1..t)
        .map(|n| {
            let sum = (1..=n)
                .filter(|e| n % e == 0)
                .fold(Rat::zero(), |acc, e| acc + &d[e] * Rat::from_integer(BigInt::from(mu[n / e])));
            sum / Rat::from_integer(BigInt::from(n))
        })
        .collect();
    Ok(EulerProduct::new(exponents))
}

/// Expands `prod_{n=1}^{T-1} (1 - z^n)^(-c_n)` one factor at a time.
pub fn euler_expand(c: &[Rat], order: usize) -> TruncatedSeries {
    let mut acc = vec![Rat::zero(); order];
    acc[0] = Rat::one();
    for (i, cn) in c.iter().enumerate() {
        let n = i + 1;
        if n >= order {
            break;
        }
        if cn.is_zero() {
            continue;
        }
        // (1 - z^n)^(-c) = sum_m binom(c + m - 1, m) z^(nm)
        let mut binom = vec![Rat::one()];
        for m in 1..=(order - 1) / n {
            let prev = &binom[m - 1];
            let next = prev * (cn + Rat::from_integer(BigInt::from(m - 1))) / Rat::from_integer(BigInt::from(m));
            binom.push(next);
        }
        let mut out = vec![Rat::zero(); order];
        for (k, out_k) in out.iter_mut().enumerate() {
            let mut sum = Rat::zero();
            for (m, b) in binom.iter().enumerate() {
                if m * n > k {
                    break;
                }
                sum += b * &acc[k - m * n];
            }
            *out_k = sum;
        }
        acc = out;
    }
    TruncatedSeries::new(acc)
}

/// Smallest period, then smallest preperiod, within the search bounds.
pub fn detect_periodic(c: &[Rat]) -> Option<ExponentPattern> {
    for period in 1..=MAX_PERIOD {
        for pre in 0..=MAX_PREPERIOD {
            if pre + 2 * period > c.len() {
                continue;
            }
            if (pre..c.len() - period).all(|i| c[i] == c[i + period]) {
                return Some(ExponentPattern::Periodic {
                    preperiod: c[..pre].to_vec(),
                    cycle: c[pre..pre + period].to_vec(),
                });
            }
        }
    }
    None
}

/// Inverse Euler transform, kept only when every exponent is an integer, with
/// a periodic or rational pattern attached when one is found. A rational
/// pattern must have at least twice as many exponents as free parameters.
pub fn euler_guess(seq: &[Rat]) -> Option<EulerProduct> {
    let mut p = inverse_euler(seq).ok()?;
    if !p.integral {
        return None;
    }
    p.pattern = detect_periodic(&p.exponents).or_else(|| {
        let series: Vec<Rat> = std::iter::once(Rat::zero()).chain(p.exponents.iter().cloned()).collect();
        let fit = ratpoly_guess(&series)?;
        // a pattern should explain the exponents twice over, not just fit them
        if 2 * (fit.l + fit.m + 2) > series.len() {
            return None;
        }
        match fit.candidate {
            GfExpr::Rational(r) => Some(ExponentPattern::Rational(r)),
            _ => None,
        }
    });
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn rats(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    const PARTITIONS: [i64; 20] = [
        1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490,
    ];

    #[test]
    fn partitions_have_unit_exponents() {
        let p = inverse_euler(&rats(&PARTITIONS[..10])).unwrap();
        assert_eq!(p.exponents, rats(&[1; 9]));
        assert!(p.integral);
    }

    #[test]
    fn planar_partitions() {
        let a = [1, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500, 859, 1479, 2485, 4167];
        let p = euler_guess(&rats(&a)).unwrap();
        assert_eq!(p.exponents, rats(&(1..15).collect::<Vec<_>>()));
        match p.pattern {
            Some(ExponentPattern::Rational(r)) => assert_eq!(r.render(), "(z)/(1 - 2*z + z^2)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn one_plus_z() {
        let p = inverse_euler(&rats(&[1, 1, 0, 0, 0, 0])).unwrap();
        assert_eq!(p.exponents, rats(&[1, -1, 0, 0, 0]));
    }

    #[test]
    fn leading_term_checked() {
        assert_eq!(inverse_euler(&rats(&[2, 1])), Err(Error::LeadingTermNotOne));
    }

    #[test]
    fn expansions() {
        assert_eq!(euler_expand(&rats(&[1; 9]), 10).coeffs(), rats(&PARTITIONS[..10]).as_slice());
        let tau = euler_expand(&rats(&[-24; 7]), 8);
        assert_eq!(tau.coeffs(), rats(&[1, -24, 252, -1472, 4830, -6048, -16744, 84480]).as_slice());
        assert_eq!(euler_expand(&rats(&[0; 4]), 5), TruncatedSeries::from_ints(&[1, 0, 0, 0, 0]));
    }

    #[test]
    fn partitions_guess_is_periodic() {
        let p = euler_guess(&rats(&PARTITIONS)).unwrap();
        assert_eq!(
            p.pattern,
            Some(ExponentPattern::Periodic {
                preperiod: vec![],
                cycle: rats(&[1])
            })
        );
        assert_eq!(
            p.render(),
            "euler_product(c: [1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1]; pattern: periodic(pre=[], cycle=[1]))"
        );
        assert_eq!(EulerProduct::parse(&p.render()).unwrap(), p);
    }

    #[test]
    fn fibonacci_is_patternless() {
        let mut f = vec![1i64, 1];
        while f.len() < 20 {
            f.push(f[f.len() - 1] + f[f.len() - 2]);
        }
        let p = euler_guess(&rats(&f)).unwrap();
        assert!(p.integral);
        assert_eq!(p.pattern, None);
    }

    #[test]
    fn period_four_cycle() {
        let c = rats(&[4, -6, 4, -2, 4, -6, 4, -2, 4, -6, 4]);
        let s = euler_expand(&c, 12);
        let p = euler_guess(s.coeffs()).unwrap();
        assert_eq!(
            p.pattern.unwrap().render(),
            "periodic(pre=[], cycle=[4,-6,4,-2])"
        );
    }

    #[test]
    fn rational_pattern_parses() {
        let s = "euler_product(c: [1,2,3]; pattern: rational((z)/(1 - 2*z + z^2)))";
        assert_eq!(EulerProduct::parse(s).unwrap().render(), s);
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius_table(12)[1..], [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }
}
