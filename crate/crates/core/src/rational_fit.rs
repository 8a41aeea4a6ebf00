//! Padé fitting with acceptance gates, and the derivative / logarithmic
//! derivative / reversion pre-transforms.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{all_integral, factorial, int_to_rat, nullspace, rational_width, Polynomial, Rat, TruncatedSeries};
use crate::expr::{matches_terms, GfExpr, RationalGF};

/// Terms held back from the fit and used only for verification.
pub const HELD_BACK: usize = 3;

/// Which pre-transform produced a candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transform {
    Identity,
    Derivative,
    LogDerivative,
    Reversion,
}

impl Transform {
    pub const ALL: [Transform; 4] = [
        Transform::Identity,
        Transform::Derivative,
        Transform::LogDerivative,
        Transform::Reversion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Transform::Identity => "identity",
            Transform::Derivative => "derivative",
            Transform::LogDerivative => "log_derivative",
            Transform::Reversion => "reversion",
        }
    }
}

/// Ordinary or exponential reading of the terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum View {
    Ogf,
    Egf,
}

impl View {
    pub fn name(self) -> &'static str {
        match self {
            View::Ogf => "ogf",
            View::Egf => "egf",
        }
    }
}

/// Acceptance gate of the rational fit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Size,
    Degree,
    Surplus,
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gate::Size => "size",
            Gate::Degree => "degree",
            Gate::Surplus => "surplus",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitReport {
    pub transform: Transform,
    pub view: View,
    pub candidate: GfExpr,
    /// Degrees of the reduced numerator and denominator.
    pub l: usize,
    pub m: usize,
    pub degree_ok: bool,
    pub size_ok: bool,
    /// Held-back terms reproduced by the candidate.
    pub surplus_verified: usize,
}

impl FitReport {
    pub fn accepted(&self) -> bool {
        self.degree_ok && self.size_ok && self.surplus_verified >= HELD_BACK
    }

    /// The first gate that fails, checking size before degree before surplus.
    pub fn failing_gate(&self) -> Option<Gate> {
        if !self.size_ok {
            Some(Gate::Size)
        } else if !self.degree_ok {
            Some(Gate::Degree)
        } else if self.surplus_verified < HELD_BACK {
            Some(Gate::Surplus)
        } else {
            None
        }
    }

    /// Short method tag such as `ratpoly` or `log_derivative/egf`.
    pub fn method(&self) -> String {
        match (self.transform, self.view) {
            (Transform::Identity, View::Ogf) => "ratpoly".into(),
            (t, v) => format!("{}/{}", t.name(), v.name()),
        }
    }
}

/// Printed width of the terms, zeros included.
pub fn input_digit_mass(terms: &[Rat]) -> usize {
    terms.iter().map(rational_width).sum()
}

/// `[L/M]` approximant of `s`, reduced and normalized to `den(0) = 1`.
pub fn pade_fit(s: &TruncatedSeries, l: usize, m: usize) -> Result<RationalGF> {
    if l + m + 1 > s.order() {
        return Err(Error::PreconditionViolated(format!(
            "L + M + 1 = {} exceeds the {} available terms",
            l + m + 1,
            s.order()
        )));
    }
    for (num, den) in pade_candidates(s, l, m) {
        if let Ok(r) = RationalGF::new(num, den) {
            return Ok(r);
        }
    }
    Err(Error::NoSolution)
}

/// Unreduced `(num, den)` pairs from the nullspace of the Padé system.
fn pade_candidates(s: &TruncatedSeries, l: usize, m: usize) -> impl Iterator<Item = (Polynomial, Polynomial)> + '_ {
    let a = |i: isize| -> Rat {
        if i < 0 {
            Rat::zero()
        } else {
            s.coeff(i as usize)
        }
    };
    // sum_j v_j a_{i-j} = 0 for L < i <= L+M
    let rows: Vec<Vec<Rat>> = (l + 1..=l + m)
        .map(|i| (0..=m).map(|j| a(i as isize - j as isize)).collect())
        .collect();
    nullspace(&rows, m + 1).into_iter().map(move |v| {
        let den = Polynomial::new(v);
        let prod = s.truncate(l + m + 1).mul(&TruncatedSeries::from_polynomial(&den, l + m + 1));
        (Polynomial::new(prod.coeffs()[..=l].to_vec()), den)
    })
}

fn report_for(terms: &[Rat], r: RationalGF, input_mass: usize) -> FitReport {
    let n = terms.len();
    let (l, m) = r.degrees();
    let expanded = r.expand(n);
    let fit_len = n - HELD_BACK;
    let surplus_verified = if expanded.coeffs()[..fit_len] == terms[..fit_len] {
        (fit_len..n)
            .take_while(|&i| expanded.coeffs()[i] == terms[i])
            .count()
    } else {
        0
    };
    FitReport {
        transform: Transform::Identity,
        view: View::Ogf,
        l,
        m,
        degree_ok: l + m + 2 < n,
        size_ok: r.digit_mass() <= input_mass,
        surplus_verified,
        candidate: GfExpr::Rational(r),
    }
}

/// Every approximant on the anti-diagonal `L + M = N - 4` with both degrees
/// at most `floor((N - 2)/2)`, in order of increasing `M`, each with its gate
/// outcomes.
fn ratpoly_attempts(terms: &[Rat]) -> Vec<FitReport> {
    let n = terms.len();
    if n < 6 {
        return Vec::new();
    }
    let s = TruncatedSeries::new(terms[..n - HELD_BACK].to_vec());
    let mass = input_digit_mass(terms);
    diagonal(n)
        .filter_map(|(l, m)| pade_fit(&s, l, m).ok())
        .map(|r| report_for(terms, r, mass))
        .collect()
}

/// Rational fit on all but the last three terms, accepted only when the
/// held-back terms, the degree bound and the size bound all agree.
pub fn ratpoly_guess(terms: &[Rat]) -> Option<FitReport> {
    let n = terms.len();
    if n < 6 {
        return None;
    }
    let fit_len = n - HELD_BACK;
    let s = TruncatedSeries::new(terms[..fit_len].to_vec());
    let mass = input_digit_mass(terms);
    // reducing a failed candidate is the expensive part, so the held-back
    // terms are checked on the unreduced fraction first
    let holds_back = |den: &Polynomial| {
        den.coeff(0).is_zero()
            || (fit_len..n).all(|i| {
                (0..=den.degree().unwrap_or(0).min(i))
                    .map(|j| den.coeff(j) * &terms[i - j])
                    .sum::<Rat>()
                    .is_zero()
            })
    };
    diagonal(n).find_map(|(l, m)| {
        pade_candidates(&s, l, m)
            .find(|(_, den)| !den.is_zero())
            .filter(|(_, den)| holds_back(den))
            .and_then(|(num, den)| RationalGF::new(num, den).ok())
            .map(|r| report_for(terms, r, mass))
            .filter(FitReport::accepted)
    })
}

/// The `(L, M)` cells of the scan, in order of increasing `M`.
fn diagonal(n: usize) -> impl Iterator<Item = (usize, usize)> {
    let fit_len = n - HELD_BACK;
    let cap = (n - 2) / 2;
    (0..fit_len)
        .filter(move |&m| m <= cap && fit_len - 1 - m <= cap)
        .map(move |m| (fit_len - 1 - m, m))
}

/// Like [`ratpoly_guess`], but on rejection returns the central (`L ≈ M`)
/// attempt so the failing gate can be reported.
pub fn ratpoly_diagnose(terms: &[Rat]) -> Option<FitReport> {
    let attempts = ratpoly_attempts(terms);
    if let Some(r) = attempts.iter().find(|r| r.accepted()) {
        return Some(r.clone());
    }
    let mid = attempts.len() / 2;
    attempts.into_iter().nth(mid)
}

fn view_terms(terms: &[Rat], view: View) -> Vec<Rat> {
    match view {
        View::Ogf => terms.to_vec(),
        View::Egf => terms
            .iter()
            .enumerate()
            .map(|(i, t)| t / int_to_rat(&factorial(i)))
            .collect(),
    }
}

/// Transformed terms and the wrapper that undoes the transform.
fn apply_transform(s: &TruncatedSeries, view: View, t: Transform) -> Option<(Vec<Rat>, Box<dyn Fn(GfExpr) -> GfExpr>)> {
    match t {
        Transform::Identity => Some((s.coeffs().to_vec(), Box::new(|e| e))),
        Transform::Derivative => {
            let c = s.coeff(0);
            Some((
                s.derive().into_coeffs(),
                Box::new(move |e| GfExpr::Integral {
                    inner: Box::new(e),
                    constant: c.clone(),
                }),
            ))
        }
        Transform::LogDerivative => {
            if !s.coeff(0).is_one() {
                return None;
            }
            let ld = s.derive().div(&s.truncate(s.order() - 1)).ok()?;
            Some((ld.into_coeffs(), Box::new(|e| GfExpr::ExpIntegral(Box::new(e)))))
        }
        Transform::Reversion => {
            let r = s.reversion().ok()?;
            let as_terms = match view {
                View::Ogf => r.clone(),
                View::Egf => r.from_egf_view(),
            };
            if !all_integral(as_terms.coeffs()) {
                return None;
            }
            Some((r.into_coeffs(), Box::new(|e| GfExpr::Reversion(Box::new(e)))))
        }
    }
}

/// Tries each pre-transform on the ordinary view, then on the exponential
/// view. The first candidate whose expansion reproduces every term wins.
pub fn transform_guess(terms: &[Rat]) -> Option<FitReport> {
    transform_guess_with(terms, &Transform::ALL)
}

/// [`transform_guess`] restricted to the given transforms.
pub fn transform_guess_with(terms: &[Rat], transforms: &[Transform]) -> Option<FitReport> {
    if terms.len() < 8 {
        return None;
    }
    for view in [View::Ogf, View::Egf] {
        let s = TruncatedSeries::new(view_terms(terms, view));
        for &t in transforms {
            let Some((image, wrap)) = apply_transform(&s, view, t) else {
                continue;
            };
            let Some(inner) = ratpoly_guess(&image) else {
                continue;
            };
            let mut candidate = wrap(inner.candidate.clone());
            if view == View::Egf {
                candidate = GfExpr::EgfView(Box::new(candidate));
            }
            let ok = candidate
                .expand(terms.len())
                .is_ok_and(|e| matches_terms(&e, terms));
            if ok {
                return Some(FitReport {
                    transform: t,
                    view,
                    candidate,
                    ..inner
                });
            }
        }
    }
    None
}
