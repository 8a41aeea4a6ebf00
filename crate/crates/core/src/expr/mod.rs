//! Closed-form candidates and their expansion to series.
//!
//! Every guess the engine reports is one of these trees, and every tree can
//! be expanded back to a [`TruncatedSeries`] so that claims are checked
//! against the input terms instead of being trusted.

pub mod text;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{
    fmt_rat, gcd_of, int_to_rat, lcm_of_denominators, rational_width, Polynomial, Rat,
    TruncatedSeries,
};
use text::Cursor;

/// Reduced fraction `num/den` with `den(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalGF {
    num: Polynomial,
    den: Polynomial,
}

impl RationalGF {
    /// Reduces by the polynomial gcd and normalizes `den(0) = 1`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ExpansionUndefined("zero denominator".into()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_zero() || g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let d0 = den.coeff(0);
        if d0.is_zero() {
            return Err(Error::ExpansionUndefined(
                "denominator vanishes at z = 0 after reduction".into(),
            ));
        }
        let inv = d0.recip();
        Ok(RationalGF {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        RationalGF {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// `(deg num, deg den)`, with the zero numerator counted as degree 0.
    pub fn degrees(&self) -> (usize, usize) {
        (self.num.degree().unwrap_or(0), self.den.degree().unwrap_or(0))
    }

    /// Integer numerator and denominator, jointly primitive, `den(0) > 0`.
    pub fn cleared(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let l = lcm_of_denominators(self.num.coeffs().iter().chain(self.den.coeffs()));
        let lr = int_to_rat(&l);
        let to_ints = |p: &Polynomial| -> Vec<BigInt> {
            p.coeffs().iter().map(|c| (c * &lr).to_integer()).collect()
        };
        let (n, d) = (to_ints(&self.num), to_ints(&self.den));
        let g = gcd_of(n.iter().chain(d.iter()));
        let div = |v: Vec<BigInt>| -> Vec<BigInt> { v.into_iter().map(|c| c / &g).collect() };
        (div(n), div(d))
    }

    /// Total printed width of the nonzero coefficients of the cleared form.
    pub fn digit_mass(&self) -> usize {
        let (n, d) = self.cleared();
        n.iter()
            .chain(d.iter())
            .filter(|c| !c.is_zero())
            .map(|c| rational_width(&int_to_rat(c)))
            .sum()
    }

    pub fn expand(&self, order: usize) -> TruncatedSeries {
        let n = TruncatedSeries::from_polynomial(&self.num, order);
        let d = TruncatedSeries::from_polynomial(&self.den, order);
        n.div(&d).expect("den(0) = 1 by construction")
    }

    /// `(P)/(Q)` from the cleared form, or just `P` when `Q = 1`.
    pub fn render(&self) -> String {
        let (n, d) = self.cleared();
        let np = Polynomial::from_bigints(&n);
        let dp = Polynomial::from_bigints(&d);
        if dp == Polynomial::one() {
            np.render("z")
        } else {
            format!("({})/({})", np.render("z"), dp.render("z"))
        }
    }

    pub(crate) fn parse_from(c: &mut Cursor<'_>) -> Result<Self> {
        if c.eat("(") {
            let num = c.parse_poly("z")?;
            c.expect(")")?;
            c.expect("/")?;
            c.expect("(")?;
            let den = c.parse_poly("z")?;
            c.expect(")")?;
            RationalGF::new(num, den)
        } else {
            let p = c.parse_poly("z")?;
            Ok(RationalGF::polynomial(p))
        }
    }
}

/// `(poly + sign * base^(power/2)) / den`, one branch of a quadratic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Radical {
    pub poly: Polynomial,
    pub negative_root: bool,
    pub base: Polynomial,
    pub power: u32,
    pub den: Polynomial,
}

impl Radical {
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries> {
        let shift = self
            .den
            .valuation()
            .ok_or_else(|| Error::ExpansionUndefined("zero denominator".into()))?;
        let t = order + shift;
        let base = TruncatedSeries::from_polynomial(&self.base, t);
        let root = base
            .sqrt()
            .map_err(|e| Error::ExpansionUndefined(e.to_string()))?;
        let powered = root.pow(self.power);
        let root_term = if self.negative_root { -&powered } else { powered };
        let numer = &TruncatedSeries::from_polynomial(&self.poly, t) + &root_term;
        let numer = numer
            .shift_down(shift)
            .map_err(|_| Error::ExpansionUndefined("numerator has a pole at z = 0".into()))?;
        let den = TruncatedSeries::from_polynomial(&self.den, t)
            .shift_down(shift)
            .expect("valuation of the denominator");
        numer.div(&den)
    }

    pub fn render(&self) -> String {
        let root = format!("({})^({}/2)", self.base.render("z"), self.power);
        let top = if self.poly.is_zero() {
            format!("{}{root}", if self.negative_root { "-" } else { "" })
        } else {
            format!(
                "{} {} {root}",
                self.poly.render("z"),
                if self.negative_root { "-" } else { "+" }
            )
        };
        format!("radical(({top})/({}))", self.den.render("z"))
    }

    fn parse_body(c: &mut Cursor<'_>) -> Result<Self> {
        // body after `radical(`: `(P +- (B)^(k/2))/(Q))`
        c.expect("(")?;
        let mut poly = Polynomial::zero();
        let negative_root;
        if c.eat("-(") {
            negative_root = true;
        } else if c.eat("(") {
            negative_root = false;
        } else {
            poly = c.parse_poly("z")?;
            negative_root = if c.eat("-") {
                true
            } else {
                c.expect("+")?;
                false
            };
            c.expect("(")?;
        }
        let base = c.parse_poly("z")?;
        c.expect(")")?;
        c.expect("^")?;
        c.expect("(")?;
        let power = c.parse_uint()? as u32;
        c.expect("/")?;
        c.expect("2")?;
        c.expect(")")?;
        c.expect(")")?;
        c.expect("/")?;
        c.expect("(")?;
        let den = c.parse_poly("z")?;
        c.expect(")")?;
        c.expect(")")?;
        Ok(Radical {
            poly,
            negative_root,
            base,
            power,
            den,
        })
    }
}

/// A closed-form generating function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GfExpr {
    Rational(RationalGF),
    /// `constant + integral_0^z inner`
    Integral { inner: Box<GfExpr>, constant: Rat },
    /// `exp(integral_0^z inner)`
    ExpIntegral(Box<GfExpr>),
    Reversion(Box<GfExpr>),
    /// The inner expression is an exponential generating function.
    EgfView(Box<GfExpr>),
    Negate(Box<GfExpr>),
    Radical(Radical),
}

impl GfExpr {
    pub fn rational(r: RationalGF) -> Self {
        GfExpr::Rational(r)
    }

    /// First `order` coefficients of the ordinary generating function of the
    /// denoted sequence. `EgfView` multiplies the inner coefficients by `n!`.
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries> {
        assert!(order >= 1, "expansion order must be at least 1");
        match self {
            GfExpr::Rational(r) => Ok(r.expand(order)),
            GfExpr::Integral { inner, constant } => {
                if order == 1 {
                    return Ok(TruncatedSeries::constant(constant.clone(), 1));
                }
                let s = inner.expand(order - 1)?.integrate();
                Ok(&s + &TruncatedSeries::constant(constant.clone(), order))
            }
            GfExpr::ExpIntegral(inner) => {
                if order == 1 {
                    return Ok(TruncatedSeries::one(1));
                }
                inner
                    .expand(order - 1)?
                    .integrate()
                    .exp()
                    .map_err(|e| Error::ExpansionUndefined(e.to_string()))
            }
            GfExpr::Reversion(inner) => inner
                .expand(order)?
                .reversion()
                .map_err(|e| Error::ExpansionUndefined(e.to_string())),
            GfExpr::EgfView(inner) => Ok(inner.expand(order)?.from_egf_view()),
            GfExpr::Negate(inner) => Ok(-&inner.expand(order)?),
            GfExpr::Radical(r) => r.expand(order),
        }
    }

    pub fn render(&self) -> String {
        match self {
            GfExpr::Rational(r) => r.render(),
            GfExpr::Integral { inner, constant } => {
                if constant.is_zero() {
                    format!("integral({})", inner.render())
                } else {
                    format!("integral({}; {})", inner.render(), fmt_rat(constant))
                }
            }
            GfExpr::ExpIntegral(inner) => format!("exp_integral({})", inner.render()),
            GfExpr::Reversion(inner) => format!("rev({})", inner.render()),
            GfExpr::EgfView(inner) => format!("egf({})", inner.render()),
            GfExpr::Negate(inner) => format!("neg({})", inner.render()),
            GfExpr::Radical(r) => r.render(),
        }
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut c = Cursor::new(src);
        let e = Self::parse_from(&mut c)?;
        c.finish()?;
        Ok(e)
    }

    fn parse_from(c: &mut Cursor<'_>) -> Result<Self> {
        let wrap = |c: &mut Cursor<'_>| -> Result<Box<GfExpr>> {
            let e = GfExpr::parse_from(c)?;
            c.expect(")")?;
            Ok(Box::new(e))
        };
        if c.eat("integral(") {
            let inner = Box::new(GfExpr::parse_from(c)?);
            let constant = if c.eat(";") { c.parse_rat()? } else { Rat::zero() };
            c.expect(")")?;
            Ok(GfExpr::Integral { inner, constant })
        } else if c.eat("exp_integral(") {
            Ok(GfExpr::ExpIntegral(wrap(c)?))
        } else if c.eat("rev(") {
            Ok(GfExpr::Reversion(wrap(c)?))
        } else if c.eat("egf(") {
            Ok(GfExpr::EgfView(wrap(c)?))
        } else if c.eat("neg(") {
            Ok(GfExpr::Negate(wrap(c)?))
        } else if c.eat("radical(") {
            Ok(GfExpr::Radical(Radical::parse_body(c)?))
        } else {
            Ok(GfExpr::Rational(RationalGF::parse_from(c)?))
        }
    }

    /// The innermost rational fraction, if the tree has one.
    pub fn core_rational(&self) -> Option<&RationalGF> {
        match self {
            GfExpr::Rational(r) => Some(r),
            GfExpr::Integral { inner, .. }
            | GfExpr::ExpIntegral(inner)
            | GfExpr::Reversion(inner)
            | GfExpr::EgfView(inner)
            | GfExpr::Negate(inner) => inner.core_rational(),
            GfExpr::Radical(_) => None,
        }
    }
}

impl fmt::Display for GfExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `true` when `series` matches `terms` on every listed position.
pub fn matches_terms(series: &TruncatedSeries, terms: &[Rat]) -> bool {
    series.order() >= terms.len() && series.coeffs()[..terms.len()] == *terms
}
