use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{int_to_rat, rat, FixedDecimal, Polynomial, Rat};
use crate::error::{Error, Result};

/// Power series known exactly through `z^(T-1)`, where `T = order()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rat>,
}

/// Result of evaluating a truncated series at a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalReport {
    pub value: FixedDecimal,
    /// `|a_{T-1} x^{T-1}|`, a heuristic for the neglected tail.
    pub last_term: Rat,
}

impl TruncatedSeries {
    /// Panics on an empty coefficient list (order must be at least 1).
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "truncated series needs order >= 1");
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(v: &[BigInt]) -> Self {
        Self::new(v.iter().map(int_to_rat).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Rat::zero(); order])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rat::one(), order)
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z` truncated at `order`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 1 {
            s.coeffs[1] = Rat::one();
        }
        s
    }

    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        Self::new((0..order).map(|k| p.coeff(k)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order >= 1 && order <= self.order(), "cannot truncate to order {order}");
        Self::new(self.coeffs[..order].to_vec())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `z^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let t = self.order();
        let mut out = vec![Rat::zero(); t];
        for i in k..t {
            out[i] = self.coeffs[i - k].clone();
        }
        Self::new(out)
    }

    /// Divides by `z^k`; requires the first `k` coefficients to vanish. The
    /// order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k >= self.order() {
            return Err(Error::PreconditionViolated(format!(
                "cannot divide a series of order {} by z^{k}",
                self.order()
            )));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::PreconditionViolated(format!(
                "series is not divisible by z^{k}"
            )));
        }
        Ok(Self::new(self.coeffs[k..].to_vec()))
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let t = self.order().min(other.order());
        let mut out = vec![Rat::zero(); t];
        for (i, a) in self.coeffs.iter().take(t).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(t - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient `q` with `q * other = self (mod z^T)`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let b0 = other.coeffs[0].clone();
        if b0.is_zero() {
            return Err(Error::DivisorNotUnit);
        }
        let inv = b0.recip();
        let t = self.order().min(other.order());
        let mut q: Vec<Rat> = Vec::with_capacity(t);
        for n in 0..t {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                let bk = &other.coeffs[k];
                if !bk.is_zero() {
                    acc -= bk * &q[n - k];
                }
            }
            q.push(acc * &inv);
        }
        Ok(Self::new(q))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.order()).div(self)
    }

    /// Formal derivative; the order drops by one (never below 1).
    pub fn derive(&self) -> Self {
        if self.order() == 1 {
            return Self::zero(1);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    /// Formal antiderivative with constant term 0; the order rises by one.
    pub fn integrate(&self) -> Self {
        let mut out = Vec::with_capacity(self.order() + 1);
        out.push(Rat::zero());
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / rat(k as i64 + 1)),
        );
        Self::new(out)
    }

    /// `log(s)` for `s(0) = 1`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::PreconditionViolated("log requires s(0) = 1".into()));
        }
        if self.order() == 1 {
            return Ok(Self::zero(1));
        }
        let quotient = self.derive().div(&self.truncate(self.order() - 1))?;
        Ok(quotient.integrate())
    }

    /// `exp(s)` for `s(0) = 0`, via `n e_n = sum_{k=1..n} k s_k e_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::PreconditionViolated("exp requires s(0) = 0".into()));
        }
        let t = self.order();
        let ks: Vec<Rat> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * rat(k as i64))
            .collect();
        let mut e: Vec<Rat> = Vec::with_capacity(t);
        e.push(Rat::one());
        for n in 1..t {
            let mut acc = Rat::zero();
            for k in 1..=n {
                if !ks[k].is_zero() {
                    acc += &ks[k] * &e[n - k];
                }
            }
            e.push(acc / rat(n as i64));
        }
        Ok(Self::new(e))
    }

    /// `self(inner(z))` for `inner(0) = 0`, truncated to the smaller order.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::PreconditionViolated(
                "composition requires inner(0) = 0".into(),
            ));
        }
        let t = self.order().min(inner.order());
        let inner = inner.truncate(t);
        let mut acc = Self::zero(t);
        for c in self.coeffs[..t].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse `r` with `self(r(z)) = z (mod z^T)`.
    ///
    /// Newton iteration `r <- r - (s(r) - z) / s'(r)`, doubling the number of
    /// correct coefficients at each step.
    pub fn reversion(&self) -> Result<Self> {
        let t = self.order();
        if t < 2 || !self.coeffs[0].is_zero() || !self.coeffs[1].is_one() {
            return Err(Error::NotReversible);
        }
        let ds = self.derive_keep_order();
        let mut r = Self::variable(2);
        let mut prec = 2;
        while prec < t {
            prec = (2 * prec).min(t);
            let r_ext = r.extend_zero(prec);
            let s_cut = self.truncate(prec);
            let residual = &s_cut.compose(&r_ext)? - &Self::variable(prec);
            let slope = ds.truncate(prec).compose(&r_ext)?;
            r = &r_ext - &residual.div(&slope)?;
        }
        Ok(r.extend_zero(t).truncate(t))
    }

    /// Derivative padded with a trailing zero so the order is unchanged.
    fn derive_keep_order(&self) -> Self {
        let mut d = self.derive().coeffs;
        while d.len() < self.order() {
            d.push(Rat::zero());
        }
        Self::new(d)
    }

    fn extend_zero(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order.max(c.len()), Rat::zero());
        Self::new(c)
    }

    /// Raises to a nonnegative integer power.
    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `s^(1/2)` for `s(0)` a nonzero rational square.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        let root = rational_sqrt(c0).ok_or_else(|| {
            Error::PreconditionViolated("sqrt requires s(0) to be a nonzero rational square".into())
        })?;
        if root.is_zero() {
            return Err(Error::PreconditionViolated("sqrt requires s(0) != 0".into()));
        }
        let t = self.order();
        let two_r0 = &root * rat(2);
        let mut r: Vec<Rat> = vec![root];
        for n in 1..t {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                acc -= &r[k] * &r[n - k];
            }
            r.push(acc / &two_r0);
        }
        Ok(Self::new(r))
    }

    /// Ordinary view to exponential view: `a_n -> a_n / n!`.
    pub fn to_egf_view(&self) -> Self {
        let mut f = Rat::one();
        let mut out = Vec::with_capacity(self.order());
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f *= rat(n as i64);
            }
            out.push(c / &f);
        }
        Self::new(out)
    }

    /// Exponential view back to the plain sequence: `b_n -> n! b_n`.
    pub fn from_egf_view(&self) -> Self {
        let mut f = Rat::one();
        let mut out = Vec::with_capacity(self.order());
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f *= rat(n as i64);
            }
            out.push(c * &f);
        }
        Self::new(out)
    }

    /// Exact value of the stored partial sum at `x`.
    pub fn eval_exact(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Partial sum at rational `x` (|x| < 1) rounded to `p` decimals.
    ///
    /// Fails with `TailTooLarge` when the last stored term is not below
    /// `10^-p`, a sign that more terms are needed.
    pub fn eval_decimal(&self, x: &Rat, p: u32) -> Result<EvalReport> {
        if x.abs() >= Rat::one() {
            return Err(Error::PreconditionViolated("evaluation point must satisfy |x| < 1".into()));
        }
        if p < 10 {
            return Err(Error::PreconditionViolated("precision must be at least 10 digits".into()));
        }
        let t = self.order();
        let last_term = if t == 1 {
            Rat::zero()
        } else {
            (&self.coeffs[t - 1] * pow_rat(x, t - 1)).abs()
        };
        let bound = Rat::new(BigInt::one(), BigInt::from(10u32).pow(p));
        if last_term >= bound {
            return Err(Error::TailTooLarge);
        }
        let value = FixedDecimal::from_rational(&self.eval_exact(x), p);
        Ok(EvalReport { value, last_term })
    }
}

pub(crate) fn pow_rat(x: &Rat, e: usize) -> Rat {
    let mut out = Rat::one();
    for _ in 0..e {
        out *= x;
    }
    out
}

/// Square root of a nonnegative rational when it is a perfect square.
pub(crate) fn rational_sqrt(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rat::new(n, d))
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let t = self.order().min(rhs.order());
        TruncatedSeries::new((0..t).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect())
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let t = self.order().min(rhs.order());
        TruncatedSeries::new((0..t).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect())
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}
