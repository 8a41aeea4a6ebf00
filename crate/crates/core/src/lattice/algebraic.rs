//! Reconstruction of an algebraic equation `sum c_{j,k} S^j z^k = 0` from a
//! recurrence-extended series, by running `algdep` at many rational points
//! and interpolating the per-point polynomials in `t = 1/z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::exact::{
    gcd_of, lcm_of_denominators, nullspace, rational_sqrt, FixedDecimal, Polynomial, Rat, TruncatedSeries,
};
use crate::expr::text::Cursor;
use crate::expr::{GfExpr, Radical, RationalGF};
use crate::holonomic::{extend_precurrence_rational, guess_precurrence_within, PRecurrence};
use crate::exact::render_terms;

use super::algdep::algdep_with_delta;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgdepConfig {
    /// Decimal digits carried at each evaluation point.
    pub precision: u32,
    /// Candidate degrees in `S`, smallest first.
    pub degrees: RangeInclusive<usize>,
    /// Points are `1/(m + i)` for `i = 0..points`.
    pub base_point: i64,
    pub points: usize,
    /// Length of the recurrence-extended series.
    pub terms: usize,
    pub delta: Rat,
    /// Bounds of the recurrence scan of step 1.
    pub dmax: usize,
    pub kmax: usize,
}

impl Default for AlgdepConfig {
    fn default() -> Self {
        AlgdepConfig {
            precision: 118,
            degrees: 2..=8,
            base_point: 100,
            points: 12,
            terms: 200,
            delta: Rat::new(3.into(), 4.into()),
            dmax: 4,
            kmax: 5,
        }
    }
}

/// Integer polynomial in `x` (the series) and `z`, primitive, with the
/// first nonzero coefficient in `(j, k)` order positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicEquation {
    coeffs: BTreeMap<(usize, usize), BigInt>,
}

impl AlgebraicEquation {
    pub fn new(coeffs: BTreeMap<(usize, usize), BigInt>) -> Self {
        let mut coeffs: BTreeMap<_, _> = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let g = gcd_of(coeffs.values());
        let negate = coeffs.values().next().is_some_and(|c| c.is_negative());
        if !g.is_zero() {
            for c in coeffs.values_mut() {
                *c = &*c / &g;
                if negate {
                    *c = -&*c;
                }
            }
        }
        AlgebraicEquation { coeffs }
    }

    /// From coefficient polynomials `C_j(z)` of `x^j`.
    pub fn from_polys(polys: &[Polynomial]) -> Self {
        let l = lcm_of_denominators(polys.iter().flat_map(|p| p.coeffs()));
        let lr = Rat::from_integer(l);
        let mut m = BTreeMap::new();
        for (j, p) in polys.iter().enumerate() {
            for (k, c) in p.coeffs().iter().enumerate() {
                m.insert((j, k), (c * &lr).to_integer());
            }
        }
        Self::new(m)
    }

    pub fn coeffs(&self) -> &BTreeMap<(usize, usize), BigInt> {
        &self.coeffs
    }

    pub fn x_degree(&self) -> usize {
        self.coeffs.keys().map(|&(j, _)| j).max().unwrap_or(0)
    }

    pub fn z_degree(&self) -> usize {
        self.coeffs.keys().map(|&(_, k)| k).max().unwrap_or(0)
    }

    /// Coefficient of `x^j` as a polynomial in `z`.
    pub fn coeff_poly(&self, j: usize) -> Polynomial {
        let mut c = vec![BigInt::zero(); self.z_degree() + 1];
        for (&(jj, k), v) in &self.coeffs {
            if jj == j {
                c[k] = v.clone();
            }
        }
        Polynomial::from_bigints(&c)
    }

    /// `algebraic(1 - x + x^2*z = 0)`
    pub fn render(&self) -> String {
        let body = render_terms(self.coeffs.iter().map(|(&(j, k), c)| {
            let mut parts = Vec::new();
            match j {
                0 => {}
                1 => parts.push("x".to_string()),
                _ => parts.push(format!("x^{j}")),
            }
            match k {
                0 => {}
                1 => parts.push("z".to_string()),
                _ => parts.push(format!("z^{k}")),
            }
            (Rat::from_integer(c.clone()), parts.join("*"))
        }));
        format!("algebraic({body} = 0)")
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut c = Cursor::new(src);
        c.expect("algebraic(")?;
        let terms = c.parse_multi_poly(&["x", "z"])?;
        c.expect("=")?;
        c.expect("0")?;
        c.expect(")")?;
        c.finish()?;
        let l = lcm_of_denominators(terms.values());
        let lr = Rat::from_integer(l);
        Ok(Self::new(
            terms
                .into_iter()
                .map(|(e, v)| ((e[0] as usize, e[1] as usize), (v * &lr).to_integer()))
                .collect(),
        ))
    }
}

impl fmt::Display for AlgebraicEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `true` iff the equation vanishes on `s` modulo `z^(T - Dz)`.
pub fn verify_annihilation(eq: &AlgebraicEquation, s: &TruncatedSeries) -> bool {
    let t = s.order();
    let dz = eq.z_degree();
    if t <= dz {
        return true;
    }
    let dx = eq.x_degree();
    let mut acc = TruncatedSeries::from_polynomial(&eq.coeff_poly(dx), t);
    for j in (0..dx).rev() {
        acc = &acc.mul(s) + &TruncatedSeries::from_polynomial(&eq.coeff_poly(j), t);
    }
    acc.coeffs()[..t - dz].iter().all(Zero::is_zero)
}

/// Newton's divided-difference interpolation through `(nodes[i], values[i])`.
pub fn interpolate(nodes: &[Rat], values: &[Rat]) -> Polynomial {
    let n = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&nodes[i] - &nodes[i - level]);
        }
    }
    // Horner on the Newton form
    let mut p = Polynomial::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &Polynomial::linear_root(-nodes[i].clone())) + &Polynomial::constant(dd[i].clone());
    }
    p
}

/// Everything the reconstruction produced along the way.
#[derive(Clone, Debug)]
pub struct AlgebraicReconstruction {
    pub equation: AlgebraicEquation,
    pub recurrence: PRecurrence,
    /// Degree in `S` that every point agreed on.
    pub degree: usize,
    /// Sign-aligned polynomial found at each point `1/(m + i)`.
    pub per_point: Vec<Polynomial>,
    pub series: TruncatedSeries,
}

/// Runs the full pipeline on `seq` (first term at index `offset`). `Ok(None)`
/// when no recurrence is found or no degree survives.
pub fn reconstruct_algebraic(seq: &[Rat], offset: i64, cfg: &AlgdepConfig) -> Result<Option<AlgebraicReconstruction>> {
    let Some(rec) = guess_precurrence_within(seq, offset, cfg.dmax, cfg.kmax) else {
        return Ok(None);
    };
    let terms = extend_precurrence_rational(&rec, seq, cfg.terms.max(seq.len()))?;
    let series = TruncatedSeries::new(terms);
    let nodes: Vec<Rat> = (0..cfg.points)
        .map(|i| Rat::from_integer(BigInt::from(cfg.base_point + i as i64)))
        .collect();
    let values: Vec<FixedDecimal> = nodes
        .iter()
        .map(|t| series.eval_decimal(&t.recip(), cfg.precision).map(|r| r.value))
        .collect::<Result<_>>()?;
    for d in cfg.degrees.clone() {
        let mut per_point = Vec::with_capacity(values.len());
        for v in &values {
            match algdep_with_delta(v, d, cfg.precision, &cfg.delta) {
                Some(p) if p.degree() == Some(d) => per_point.push(p),
                _ => break,
            }
        }
        if per_point.len() < values.len() {
            continue;
        }
        let Some(qs) = coefficient_polys(&nodes, &per_point, d) else {
            continue;
        };
        let eq = equation_from_t_polys(&qs);
        if verify_annihilation(&eq, &series) {
            return Ok(Some(AlgebraicReconstruction {
                equation: eq,
                recurrence: rec,
                degree: d,
                per_point,
                series,
            }));
        }
    }
    Ok(None)
}

/// Coefficients `q_j(t)` of `x^j` as polynomials in `t`: plain interpolation
/// when it leaves at least two points to spare, otherwise a fit of
/// `q_j / q_d` to the per-point ratios (the per-point content may vary).
fn coefficient_polys(nodes: &[Rat], per_point: &[Polynomial], d: usize) -> Option<Vec<Polynomial>> {
    let n = nodes.len();
    let column = |j: usize| -> Vec<Rat> { per_point.iter().map(|p| p.coeff(j)).collect() };
    let direct: Vec<Polynomial> = (0..=d).map(|j| interpolate(nodes, &column(j))).collect();
    if direct.iter().all(|q| q.degree().unwrap_or(0) + 3 <= n) {
        return Some(direct);
    }
    // q_j(t_i) c_d(t_i) - q_d(t_i) c_j(t_i) = 0 for j < d
    let cd = column(d);
    for dt in 0.. {
        let unknowns = (d + 1) * (dt + 1);
        if unknowns + 1 > n * d {
            return None;
        }
        let mut rows = Vec::with_capacity(n * d);
        for (i, t) in nodes.iter().enumerate() {
            let mut pw = Vec::with_capacity(dt + 1);
            let mut x = Rat::one();
            for _ in 0..=dt {
                pw.push(x.clone());
                x *= t;
            }
            for j in 0..d {
                let cj = per_point[i].coeff(j);
                let mut row = vec![Rat::zero(); unknowns];
                for e in 0..=dt {
                    row[j * (dt + 1) + e] = &pw[e] * &cd[i];
                    row[d * (dt + 1) + e] = -(&pw[e] * &cj);
                }
                rows.push(row);
            }
        }
        let basis = nullspace(&rows, unknowns);
        if let Some(v) = basis.first() {
            let qs: Vec<Polynomial> = v.chunks(dt + 1).map(|c| Polynomial::new(c.to_vec())).collect();
            if nodes.iter().all(|t| !qs[d].eval(t).is_zero()) {
                return Some(qs);
            }
        }
    }
    None
}

/// Substitutes `t = 1/z` and clears the powers of `z`.
fn equation_from_t_polys(qs: &[Polynomial]) -> AlgebraicEquation {
    let dt = qs.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    let polys: Vec<Polynomial> = qs.iter().map(|q| q.reversed(dt)).collect();
    AlgebraicEquation::from_polys(&polys)
}

/// Largest `k` with `g = f^k` for a polynomial `f`, `f(0) = 1`; requires
/// `g(0) = 1`.
fn perfect_power(g: &Polynomial) -> (Polynomial, u32) {
    let deg = g.degree().unwrap_or(0);
    for k in (2..=deg).rev() {
        if deg % k != 0 {
            continue;
        }
        let order = deg / k + 1;
        let s = TruncatedSeries::from_polynomial(g, order);
        let Ok(log) = s.log() else { continue };
        let inv_k = Rat::new(BigInt::one(), BigInt::from(k));
        let Ok(root) = log.scale(&inv_k).exp() else { continue };
        let f = Polynomial::new(root.into_coeffs());
        if f.pow(k as u32) == *g {
            return (f, k as u32);
        }
    }
    (g.clone(), 1)
}

/// Solves an equation of degree at most 2 in `x`, choosing the branch whose
/// expansion matches `s`.
pub fn solve_closed_form(eq: &AlgebraicEquation, s: &TruncatedSeries) -> Option<GfExpr> {
    let matches = |e: &GfExpr| e.expand(s.order()).is_ok_and(|x| x == *s);
    match eq.x_degree() {
        1 => {
            let r = RationalGF::new(-&eq.coeff_poly(0), eq.coeff_poly(1)).ok()?;
            Some(GfExpr::Rational(r)).filter(matches)
        }
        2 => {
            let (a, b, c) = (eq.coeff_poly(2), eq.coeff_poly(1), eq.coeff_poly(0));
            let four = Polynomial::constant(Rat::from_integer(4.into()));
            let disc = &(&b * &b) - &(&(&four * &a) * &c);
            let c0 = disc.coeff(0);
            let root_c0 = rational_sqrt(&c0).filter(|r| !r.is_zero())?;
            let (base, power) = perfect_power(&disc.scale(&c0.recip()));
            // x = (-b ± sqrt(c0) base^(power/2)) / (2a)
            let inv = root_c0.recip();
            let mut poly = (-&b).scale(&inv);
            let mut den = a.scale(&(Rat::from_integer(2.into()) * &inv));
            if den.leading().is_some_and(|l| l.is_negative()) {
                poly = -&poly;
                den = -&den;
            }
            [false, true]
                .into_iter()
                .map(|negative_root| {
                    GfExpr::Radical(Radical {
                        poly: poly.clone(),
                        negative_root,
                        base: base.clone(),
                        power,
                        den: den.clone(),
                    })
                })
                .find(matches)
        }
        _ => None,
    }
}
