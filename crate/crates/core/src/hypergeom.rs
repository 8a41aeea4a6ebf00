//! First-order recurrences read as generalized hypergeometric series.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::exact::{fmt_rat, Polynomial, Rat, TruncatedSeries};
use crate::expr::text::Cursor;
use crate::holonomic::PRecurrence;

/// `num(k)/den(k)`, reduced, as a term ratio `t_{k+1}/t_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermRatio {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl TermRatio {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        let g = num.gcd(&den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        // make den monic so equal ratios compare equal
        let lead = den.leading().cloned().unwrap_or_else(Rat::one);
        let inv = lead.recip();
        TermRatio {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn eval(&self, k: i64) -> Rat {
        self.num.eval_int(k) / self.den.eval_int(k)
    }
}

/// `sum_k t_k z^k` with `t_{k+1}/t_k = w * prod(k + a_i) / (prod(k + b_j) * (k + 1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HypergeometricForm {
    pub upper: Vec<Rat>,
    pub lower: Vec<Rat>,
    pub w: Rat,
    pub t0: Rat,
}

/// Ratio of consecutive terms of a first-order recurrence, in terms of the
/// position `k` of the earlier term.
pub fn ratio_from_recurrence(rec: &PRecurrence) -> Option<TermRatio> {
    if rec.order() != 1 {
        return None;
    }
    // n = offset + k + 1
    let shift = Rat::from_integer(BigInt::from(rec.offset() + 1));
    let p0 = rec.coeffs()[0].shift(&shift);
    let p1 = rec.coeffs()[1].shift(&shift);
    Some(TermRatio::new(p1, p0))
}

/// Rational roots with multiplicity, plus the cofactor without rational roots.
pub fn rational_roots(p: &Polynomial) -> (Vec<Rat>, Polynomial) {
    let mut roots = Vec::new();
    let mut rest = p.clone();
    while let Some(v) = rest.valuation().filter(|&v| v > 0 && rest.degree() > Some(0)) {
        roots.extend(std::iter::repeat_n(Rat::zero(), v));
        rest = Polynomial::new(rest.coeffs()[v..].to_vec());
    }
    loop {
        if rest.degree().unwrap_or(0) == 0 {
            return (roots, rest);
        }
        let (ints, _) = rest.to_primitive_integer();
        let c0 = ints[0].abs();
        let cd = ints.last().unwrap().abs();
        let (Some(ps), Some(qs)) = (divisors(&c0), divisors(&cd)) else {
            return (roots, rest);
        };
        let found = qs.iter().flat_map(|q| ps.iter().map(move |p| (p, q))).find_map(|(p, q)| {
            [Rat::new(p.clone(), q.clone()), Rat::new(-p, q.clone())]
                .into_iter()
                .find(|r| rest.eval(r).is_zero())
        });
        match found {
            Some(r) => {
                rest = rest.div_rem(&Polynomial::linear_root(-r.clone())).0;
                roots.push(r);
            }
            None => return (roots, rest),
        }
    }
}

/// Positive divisors by trial division; gives up on very large inputs.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    const LIMIT: u64 = 10_000_000;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    let mut steps = 0u64;
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            let q = n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
        steps += 1;
        if steps > LIMIT {
            return None;
        }
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// Reads a term ratio as `pFq` parameters, or `None` when a factor is not
/// linear over the rationals or a lower parameter is zero or a negative
/// integer.
pub fn ratio_to_hypergeometric(ratio: &TermRatio, t0: Rat) -> Option<HypergeometricForm> {
    if ratio.num.is_zero() {
        return None;
    }
    let (num_roots, num_rest) = rational_roots(&ratio.num);
    let (den_roots, den_rest) = rational_roots(&ratio.den);
    if num_rest.degree()? > 0 || den_rest.degree()? > 0 {
        return None;
    }
    let w = num_rest.coeff(0) / den_rest.coeff(0);
    // a root r is the factor (k - r), i.e. parameter -r
    let mut upper: Vec<Rat> = num_roots.into_iter().map(|r| -r).collect();
    let mut lower: Vec<Rat> = den_roots.into_iter().map(|r| -r).collect();
    match lower.iter().position(|b| b.is_one()) {
        Some(i) => {
            lower.remove(i);
        }
        None => upper.push(Rat::one()),
    }
    if lower.iter().any(|b| b.is_integer() && !b.is_positive()) {
        return None;
    }
    upper.sort();
    lower.sort();
    Some(HypergeometricForm { upper, lower, w, t0 })
}

impl HypergeometricForm {
    pub fn ratio(&self, k: usize) -> Rat {
        let k = Rat::from_integer(BigInt::from(k));
        let up = self.upper.iter().fold(self.w.clone(), |acc, a| acc * (&k + a));
        let down = self
            .lower
            .iter()
            .fold(&k + Rat::one(), |acc, b| acc * (&k + b));
        up / down
    }

    /// First `order` terms by iterating the ratio.
    pub fn expand(&self, order: usize) -> TruncatedSeries {
        let mut out = Vec::with_capacity(order);
        let mut t = self.t0.clone();
        for k in 0..order {
            out.push(t.clone());
            if k + 1 < order {
                t = &t * self.ratio(k);
            }
        }
        TruncatedSeries::new(out)
    }

    /// `hypergeom([1/2;1],[2]; 4*z; 1)`
    pub fn render(&self) -> String {
        let list = |v: &[Rat]| v.iter().map(fmt_rat).collect::<Vec<_>>().join(";");
        format!(
            "hypergeom([{}],[{}]; {}; {})",
            list(&self.upper),
            list(&self.lower),
            Polynomial::monomial(self.w.clone(), 1).render("z"),
            fmt_rat(&self.t0)
        )
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut c = Cursor::new(src);
        c.expect("hypergeom(")?;
        let upper = parse_list(&mut c)?;
        c.expect(",")?;
        let lower = parse_list(&mut c)?;
        c.expect(";")?;
        let arg = c.parse_poly("z")?;
        if arg.degree() != Some(1) || !arg.coeff(0).is_zero() {
            return Err(c.error("argument must be a multiple of z".into()));
        }
        c.expect(";")?;
        let t0 = c.parse_rat()?;
        c.expect(")")?;
        c.finish()?;
        let mut form = HypergeometricForm {
            upper,
            lower,
            w: arg.coeff(1),
            t0,
        };
        form.upper.sort();
        form.lower.sort();
        Ok(form)
    }
}

impl fmt::Display for HypergeometricForm {
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
        c.expect(";")?;
    }
}

/// Hypergeometric reading of a first-order recurrence, kept only if it
/// re-expands to every given term.
pub fn recognize(rec: &PRecurrence, seq: &[Rat]) -> Option<HypergeometricForm> {
    let t0 = seq.first()?.clone();
    if t0.is_zero() {
        return None;
    }
    let form = ratio_to_hypergeometric(&ratio_from_recurrence(rec)?, t0)?;
    (form.expand(seq.len()).coeffs() == seq).then_some(form)
}
