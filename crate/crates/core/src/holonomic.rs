//! Linear recurrences with polynomial coefficients,
//! `a(n) P_0(n) = a(n-1) P_1(n) + ... + a(n-k) P_k(n)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int_to_rat, nullspace, primitive_int_vector, Polynomial, Rat};
use crate::expr::text::Cursor;
use crate::rational_fit::HELD_BACK;

/// A recurrence of order `k` with integer, jointly primitive coefficient
/// polynomials. `offset` is the index of the first sequence term, so the
/// relation is asserted from `n = offset + k` on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PRecurrence {
    coeffs: Vec<Polynomial>,
    offset: i64,
}

impl PRecurrence {
    /// Normalizes to primitive integers with `P_0`'s leading coefficient
    /// positive.
    pub fn new(coeffs: Vec<Polynomial>, offset: i64) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::PreconditionViolated("recurrence order must be at least 1".into()));
        }
        if coeffs[0].is_zero() {
            return Err(Error::PreconditionViolated("P_0 must be nonzero".into()));
        }
        let width = coeffs.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        let flat: Vec<Rat> = coeffs
            .iter()
            .flat_map(|p| (0..width).map(move |e| p.coeff(e)))
            .collect();
        let mut ints = primitive_int_vector(&flat);
        let lead_negative = coeffs[0].leading().is_some_and(|c| c.is_negative());
        if lead_negative {
            ints.iter_mut().for_each(|c| *c = -&*c);
        }
        let coeffs = ints
            .chunks(width)
            .map(Polynomial::from_bigints)
            .collect();
        Ok(PRecurrence { coeffs, offset })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// First index at which the relation is asserted.
    pub fn n0(&self) -> i64 {
        self.offset + self.order() as i64
    }

    /// `P_0, P_1, ..., P_k`.
    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn with_offset(&self, offset: i64) -> Self {
        PRecurrence {
            coeffs: self.coeffs.clone(),
            offset,
        }
    }

    /// Text such as `n*a(n) = (4*n-6)*a(n-1)`.
    pub fn render(&self) -> String {
        let mut rhs = String::new();
        for (i, p) in self.coeffs.iter().enumerate().skip(1) {
            if p.is_zero() {
                continue;
            }
            let neg = p.leading().is_some_and(|c| c.is_negative());
            let mag = if neg { -p } else { p.clone() };
            let term = factor_text(&mag, &format!("a(n-{i})"));
            match (rhs.is_empty(), neg) {
                (true, false) => rhs.push_str(&term),
                (true, true) => rhs.push_str(&format!("-{term}")),
                (false, false) => rhs.push_str(&format!(" + {term}")),
                (false, true) => rhs.push_str(&format!(" - {term}")),
            }
        }
        if rhs.is_empty() {
            rhs.push('0');
        }
        format!("{} = {rhs}", factor_text(&self.coeffs[0], "a(n)"))
    }

    /// Inverse of [`render`](Self::render); the offset is not part of the text.
    pub fn parse(src: &str, offset: i64) -> Result<Self> {
        let mut c = Cursor::new(src);
        let (p0, i0) = parse_term(&mut c)?;
        if i0 != 0 {
            return Err(c.error("left-hand side must be a multiple of a(n)".into()));
        }
        c.expect("=")?;
        let mut parts: Vec<(usize, Polynomial)> = Vec::new();
        if !c.eat("0") {
            let mut first = true;
            loop {
                let neg = if c.eat("-") {
                    true
                } else if first || c.eat("+") {
                    false
                } else {
                    break;
                };
                first = false;
                let (p, i) = parse_term(&mut c)?;
                if i == 0 {
                    return Err(c.error("a(n) may only appear on the left".into()));
                }
                parts.push((i, if neg { -&p } else { p }));
            }
        }
        c.finish()?;
        let k = parts.iter().map(|(i, _)| *i).max().unwrap_or(1);
        let mut coeffs = vec![Polynomial::zero(); k + 1];
        coeffs[0] = p0;
        for (i, p) in parts {
            coeffs[i] = &coeffs[i] + &p;
        }
        PRecurrence::new(coeffs, offset)
    }
}

impl fmt::Display for PRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn factor_text(p: &Polynomial, atom: &str) -> String {
    let single = p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
    if *p == Polynomial::one() {
        atom.to_string()
    } else if single && !p.leading().unwrap().is_negative() {
        format!("{}*{atom}", p.render_compact("n"))
    } else {
        format!("({})*{atom}", p.render_compact("n"))
    }
}

/// `[factor*]a(n[-i])`, returning the factor and `i`.
fn parse_term(c: &mut Cursor<'_>) -> Result<(Polynomial, usize)> {
    let p = if c.eat("(") {
        let p = c.parse_poly("n")?;
        c.expect(")")?;
        c.expect("*")?;
        p
    } else if c.looking_at("a(") {
        Polynomial::one()
    } else {
        let m = c.parse_multi_poly(&["n"])?;
        if m.len() > 1 {
            return Err(c.error("multi-term factors need parentheses".into()));
        }
        crate::expr::text::poly_from_terms(&m)
    };
    c.expect("a(")?;
    c.expect("n")?;
    let i = if c.eat("-") { c.parse_uint()? as usize } else { 0 };
    c.expect(")")?;
    Ok((p, i))
}

fn powers(n: i64, d: usize) -> Vec<Rat> {
    let n = Rat::from_integer(BigInt::from(n));
    let mut out = Vec::with_capacity(d + 1);
    let mut x = Rat::one();
    for _ in 0..=d {
        out.push(x.clone());
        x *= &n;
    }
    out
}

/// Recurrences of order `k` and degree `d` satisfied on positions
/// `k..fit_len`, normalized, in nullspace-basis order.
fn cell_candidates(seq: &[Rat], offset: i64, k: usize, d: usize, fit_len: usize) -> Vec<PRecurrence> {
    let rows: Vec<Vec<Rat>> = (k..fit_len)
        .map(|j| {
            let pw = powers(offset + j as i64, d);
            let mut row = Vec::with_capacity((k + 1) * (d + 1));
            for i in 0..=k {
                let a = if i == 0 { seq[j].clone() } else { -&seq[j - i] };
                row.extend(pw.iter().map(|x| x * &a));
            }
            row
        })
        .collect();
    nullspace(&rows, (k + 1) * (d + 1))
        .into_iter()
        .filter_map(|v| {
            let coeffs = v.chunks(d + 1).map(|c| Polynomial::new(c.to_vec())).collect();
            PRecurrence::new(coeffs, offset).ok()
        })
        .collect()
}

/// `(k, d)` cells ordered by unknown count `(d+1)(k+1)`, then by `k`.
fn cells(dmax: usize, kmax: usize) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = (1..=kmax)
        .flat_map(|k| (0..=dmax).map(move |d| (k, d)))
        .collect();
    v.sort_by_key(|&(k, d)| ((d + 1) * (k + 1), k));
    v
}

/// Scans the full `(k, d)` grid. Requires enough terms for the largest cell.
pub fn guess_precurrence(seq: &[Rat], offset: i64, dmax: usize, kmax: usize) -> Result<Option<PRecurrence>> {
    let need = (dmax + 1) * (kmax + 1) + kmax + HELD_BACK;
    if seq.len() < need {
        return Err(Error::InsufficientTerms(format!(
            "{} terms given, {need} needed for dmax = {dmax}, kmax = {kmax}",
            seq.len()
        )));
    }
    Ok(guess_precurrence_within(seq, offset, dmax, kmax))
}

/// Like [`guess_precurrence`], but silently skips cells the terms cannot
/// determine (fewer equations than unknowns).
pub fn guess_precurrence_within(seq: &[Rat], offset: i64, dmax: usize, kmax: usize) -> Option<PRecurrence> {
    if seq.iter().all(Zero::is_zero) || seq.len() <= HELD_BACK {
        return None;
    }
    let fit_len = seq.len() - HELD_BACK;
    for (k, d) in cells(dmax, kmax) {
        if fit_len < k || fit_len - k < (d + 1) * (k + 1) {
            continue;
        }
        if let Some(rec) = cell_candidates(seq, offset, k, d, fit_len)
            .into_iter()
            .find(|r| verify_precurrence(r, seq))
        {
            return Some(rec);
        }
    }
    None
}

/// `true` iff the relation holds at every index from `n0` on.
pub fn verify_precurrence(rec: &PRecurrence, seq: &[Rat]) -> bool {
    let k = rec.order();
    (k..seq.len()).all(|j| {
        let n = Rat::from_integer(BigInt::from(rec.offset + j as i64));
        let lhs = &seq[j] * rec.coeffs[0].eval(&n);
        let rhs: Rat = (1..=k)
            .map(|i| &seq[j - i] * rec.coeffs[i].eval(&n))
            .fold(Rat::zero(), |acc, x| acc + x);
        lhs == rhs
    })
}

/// Runs the recurrence forward from `seed` until `count` terms exist.
pub fn extend_precurrence(rec: &PRecurrence, seed: &[BigInt], count: usize) -> Result<Vec<BigInt>> {
    let k = rec.order();
    if seed.len() < k {
        return Err(Error::PreconditionViolated(format!(
            "seed has {} terms, order is {k}",
            seed.len()
        )));
    }
    let mut out: Vec<BigInt> = seed.iter().take(count.max(k)).cloned().collect();
    let evals = |p: &Polynomial, n: i64| -> BigInt {
        // integer coefficients, integer argument
        p.eval_int(n).to_integer()
    };
    while out.len() < count {
        let j = out.len();
        let n = rec.offset + j as i64;
        let p0 = evals(&rec.coeffs[0], n);
        if p0.is_zero() {
            return Err(Error::SingularLeadingCoefficient(n));
        }
        let mut acc = BigInt::zero();
        for i in 1..=k {
            acc += &out[j - i] * evals(&rec.coeffs[i], n);
        }
        if !(&acc % &p0).is_zero() {
            return Err(Error::NonIntegerTerm(n));
        }
        out.push(acc / p0);
    }
    out.truncate(count);
    Ok(out)
}

/// Rational-valued variant of [`extend_precurrence`] for seeds that are not
/// integral, such as exponential-view coefficients.
pub fn extend_precurrence_rational(rec: &PRecurrence, seed: &[Rat], count: usize) -> Result<Vec<Rat>> {
    let k = rec.order();
    if seed.len() < k {
        return Err(Error::PreconditionViolated(format!(
            "seed has {} terms, order is {k}",
            seed.len()
        )));
    }
    let mut out: Vec<Rat> = seed.iter().take(count.max(k)).cloned().collect();
    while out.len() < count {
        let j = out.len();
        let n = rec.offset + j as i64;
        let p0 = rec.coeffs[0].eval_int(n);
        if p0.is_zero() {
            return Err(Error::SingularLeadingCoefficient(n));
        }
        let acc = (1..=k).fold(Rat::zero(), |acc, i| acc + &out[j - i] * rec.coeffs[i].eval_int(n));
        out.push(acc / p0);
    }
    out.truncate(count);
    Ok(out)
}

/// Terms as exact rationals, for callers holding integers.
pub fn to_rationals(seq: &[BigInt]) -> Vec<Rat> {
    seq.iter().map(int_to_rat).collect()
}
