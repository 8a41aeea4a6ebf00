//! Triangular arrays: the generalized tableau generator and rational fitting
//! of `sum T[n][k] t^k z^n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{decimal_width, int_to_rat, nullspace, primitive_int_vector, render_terms, Rat};
use crate::expr::text::Cursor;

/// Rows of a triangle; row `n` has `n + 1` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    rows: Vec<Vec<BigInt>>,
}

impl Triangle {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::PreconditionViolated("triangle has no rows".into()));
        }
        if let Some(n) = rows.iter().enumerate().position(|(n, r)| r.len() != n + 1) {
            return Err(Error::PreconditionViolated(format!(
                "row {n} has {} entries, expected {}",
                rows[n].len(),
                n + 1
            )));
        }
        Ok(Triangle { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// One row per line, whitespace-separated integers; blank lines and
    /// `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let body = line.trim();
            if !body.is_empty() && !body.starts_with('#') {
                let mut row = Vec::new();
                for tok in body.split_whitespace() {
                    let at = offset + line.find(tok).unwrap_or(0);
                    row.push(tok.parse::<BigInt>().map_err(|_| Error::Parse {
                        position: at,
                        message: format!("bad integer {tok:?}"),
                    })?);
                }
                rows.push(row);
            }
            offset += line.len();
        }
        Self::new(rows)
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn truncate(&self, nrows: usize) -> Triangle {
        Triangle {
            rows: self.rows[..nrows.clamp(1, self.rows.len())].to_vec(),
        }
    }

    fn digit_mass(&self) -> usize {
        self.rows.iter().flatten().map(decimal_width).sum()
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Parameters of `A[n+1,k] = (r n + s k + t) A[n,k] + (a n + b k + c) A[n,k-1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TableauSpec {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub r: i64,
    pub s: i64,
    pub t: i64,
}

pub const TABLEAU_BOUND: i64 = 4;

impl TableauSpec {
    pub fn new(a: i64, b: i64, c: i64, r: i64, s: i64, t: i64) -> Result<Self> {
        let spec = TableauSpec { a, b, c, r, s, t };
        if spec.params().iter().any(|p| p.abs() > TABLEAU_BOUND) {
            return Err(Error::PreconditionViolated(format!(
                "tableau parameters must lie in [-{TABLEAU_BOUND}, {TABLEAU_BOUND}]"
            )));
        }
        Ok(spec)
    }

    pub fn params(&self) -> [i64; 6] {
        [self.a, self.b, self.c, self.r, self.s, self.t]
    }
}

pub fn generate_tableau(spec: &TableauSpec, nrows: usize) -> Triangle {
    generate_tableau_from(spec, nrows, BigInt::one())
}

/// As [`generate_tableau`] with `A[0,0] = a00`.
pub fn generate_tableau_from(spec: &TableauSpec, nrows: usize, a00: BigInt) -> Triangle {
    let mut rows = vec![vec![a00]];
    for n in 1..nrows.max(1) {
        let prev = &rows[n - 1];
        let m = (n - 1) as i64;
        let row = (0..=n)
            .map(|k| {
                let ki = k as i64;
                let mut v = BigInt::zero();
                if let Some(x) = prev.get(k) {
                    v += x * (spec.r * m + spec.s * ki + spec.t);
                }
                if k > 0 {
                    v += &prev[k - 1] * (spec.a * m + spec.b * ki + spec.c);
                }
                v
            })
            .collect();
        rows.push(row);
    }
    Triangle { rows }
}

/// Bivariate polynomial keyed by `(z degree, t degree)`.
pub type BiPoly = BTreeMap<(usize, usize), BigInt>;

/// `num / den` in `(t, z)` with `den(0,0) = 1`, jointly primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateRationalGF {
    num: BiPoly,
    den: BiPoly,
}

impl BivariateRationalGF {
    /// Normalizes to a jointly primitive pair; `den(0,0)` must come out as 1.
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        let q00 = den.get(&(0, 0)).cloned().unwrap_or_default();
        if q00.is_zero() {
            return Err(Error::PreconditionViolated("den(0,0) = 0".into()));
        }
        let keys_n: Vec<_> = num.keys().copied().collect();
        let keys_d: Vec<_> = den.keys().copied().collect();
        let mut all: Vec<Rat> = num.values().chain(den.values()).map(int_to_rat).collect();
        if q00.is_negative() {
            all.iter_mut().for_each(|x| *x = -x.clone());
        }
        let ints = primitive_int_vector(&all);
        let (ni, di) = ints.split_at(keys_n.len());
        let strip = |keys: &[(usize, usize)], vals: &[BigInt]| -> BiPoly {
            keys.iter()
                .zip(vals)
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (*k, v.clone()))
                .collect()
        };
        let g = BivariateRationalGF {
            num: strip(&keys_n, ni),
            den: strip(&keys_d, di),
        };
        if !g.den[&(0, 0)].is_one() {
            return Err(Error::PreconditionViolated(
                "den(0,0) is not 1 after normalization".into(),
            ));
        }
        Ok(g)
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn digit_mass(&self) -> usize {
        self.num.values().chain(self.den.values()).map(decimal_width).sum()
    }

    /// `(1)/(1 - z - t*z)`
    pub fn render(&self) -> String {
        format!("({})/({})", render_bipoly(&self.num), render_bipoly(&self.den))
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut c = Cursor::new(src);
        c.expect("(")?;
        let num = c.parse_multi_poly(&["t", "z"])?;
        c.expect(")")?;
        c.expect("/")?;
        c.expect("(")?;
        let den = c.parse_multi_poly(&["t", "z"])?;
        c.expect(")")?;
        c.finish()?;
        let keyed = |m: BTreeMap<Vec<u32>, Rat>| -> Vec<((usize, usize), Rat)> {
            m.into_iter()
                .map(|(e, v)| ((e[1] as usize, e[0] as usize), v))
                .collect()
        };
        let (n, d) = (keyed(num), keyed(den));
        let all: Vec<Rat> = n.iter().chain(&d).map(|(_, v)| v.clone()).collect();
        let scale = int_to_rat(&crate::exact::lcm_of_denominators(&all));
        let to_int = |v: Vec<((usize, usize), Rat)>| -> BiPoly {
            v.into_iter().map(|(k, x)| (k, (x * &scale).to_integer())).collect()
        };
        Self::new(to_int(n), to_int(d))
    }
}

impl fmt::Display for BivariateRationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn render_bipoly(p: &BiPoly) -> String {
    render_terms(p.iter().map(|(&(j, i), c)| {
        let mut parts = Vec::new();
        match i {
            0 => {}
            1 => parts.push("t".to_string()),
            _ => parts.push(format!("t^{i}")),
        }
        match j {
            0 => {}
            1 => parts.push("z".to_string()),
            _ => parts.push(format!("z^{j}")),
        }
        (int_to_rat(c), parts.join("*"))
    }))
}

/// Coefficients `c[n][k]` for `n < nrows`, `k < width`.
fn expand_grid(g: &BivariateRationalGF, nrows: usize, width: usize) -> Vec<Vec<BigInt>> {
    let mut c = vec![vec![BigInt::zero(); width]; nrows];
    for n in 0..nrows {
        for k in 0..width {
            let mut v = g.num.get(&(n, k)).cloned().unwrap_or_default();
            for (&(j, i), q) in &g.den {
                if (j, i) != (0, 0) && j <= n && i <= k {
                    v -= q * &c[n - j][k - i];
                }
            }
            c[n][k] = v;
        }
    }
    c
}

/// Rows `0..nrows` of the expansion, entries `k <= n`.
pub fn bivariate_expand(g: &BivariateRationalGF, nrows: usize) -> Triangle {
    let grid = expand_grid(g, nrows.max(1), nrows.max(1));
    Triangle {
        rows: grid
            .into_iter()
            .enumerate()
            .map(|(n, mut r)| {
                r.truncate(n + 1);
                r
            })
            .collect(),
    }
}

/// Rows withheld from the linear system and used for verification.
pub const HELD_BACK_ROWS: usize = 2;

/// Degree bounds: numerator `t^lt z^lz`, denominator `t^mt z^mz`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub lt: usize,
    pub mt: usize,
    pub lz: usize,
    pub mz: usize,
}

impl Bounds {
    pub fn new(lt: usize, mt: usize, lz: usize, mz: usize) -> Self {
        Bounds { lt, mt, lz, mz }
    }

    fn unknowns(&self) -> usize {
        (self.lt + 1) * (self.lz + 1) + (self.mt + 1) * (self.mz + 1)
    }
}

/// Fits `num/den` within `bounds` to all but the last two rows, then checks
/// the held-back rows and the digit-mass size criterion.
pub fn bivariate_fit(tri: &Triangle, bounds: Bounds) -> Option<BivariateRationalGF> {
    let rows = tri.len();
    if rows < bounds.lz + bounds.mz + 3 {
        return None;
    }
    let fitted = rows - HELD_BACK_ROWS;
    let entry = |n: usize, k: usize| -> Rat {
        tri.rows[n].get(k).map(int_to_rat).unwrap_or_default()
    };
    // unknowns: numerator (j, i) then denominator (j, i), low degrees first
    let mut nkeys = Vec::new();
    for j in 0..=bounds.lz {
        for i in 0..=bounds.lt {
            nkeys.push((j, i));
        }
    }
    let mut dkeys = Vec::new();
    for j in 0..=bounds.mz {
        for i in 0..=bounds.mt {
            dkeys.push((j, i));
        }
    }
    let ncols = nkeys.len() + dkeys.len();
    let mut eqs = Vec::new();
    for n in 0..fitted {
        for k in 0..=(n + bounds.mt).max(bounds.lt) {
            let mut row = vec![Rat::zero(); ncols];
            for (col, &(j, i)) in nkeys.iter().enumerate() {
                if (j, i) == (n, k) {
                    row[col] = -Rat::one();
                }
            }
            for (col, &(j, i)) in dkeys.iter().enumerate() {
                if j <= n && i <= k {
                    row[nkeys.len() + col] = entry(n - j, k - i);
                }
            }
            eqs.push(row);
        }
    }
    if eqs.len() < bounds.unknowns() {
        return None;
    }
    let basis = nullspace(&eqs, ncols);
    let v = lowest_vector(basis)?;
    let to_map = |keys: &[(usize, usize)], vals: &[BigInt]| -> BiPoly {
        keys.iter()
            .zip(vals)
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (*k, x.clone()))
            .collect()
    };
    let ints = primitive_int_vector(&v);
    let (ni, di) = ints.split_at(nkeys.len());
    let g = BivariateRationalGF::new(to_map(&nkeys, ni), to_map(&dkeys, di)).ok()?;
    let width = rows + bounds.lt + bounds.mt + 1;
    let grid = expand_grid(&g, rows, width);
    for (n, row) in grid.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            let want = tri.rows[n].get(k).cloned().unwrap_or_default();
            if *x != want {
                return None;
            }
        }
    }
    (g.digit_mass() <= tri.digit_mass()).then_some(g)
}

/// The nullspace vector vanishing on the most trailing coordinates, i.e. the
/// lowest-degree solution when several are available.
fn lowest_vector(mut basis: Vec<Vec<Rat>>) -> Option<Vec<Rat>> {
    let ncols = basis.first()?.len();
    for col in (0..ncols).rev() {
        if basis.len() == 1 {
            break;
        }
        let Some(p) = basis.iter().position(|b| !b[col].is_zero()) else {
            continue;
        };
        let pivot = basis.remove(p);
        for b in basis.iter_mut() {
            if !b[col].is_zero() {
                let f = &b[col] / &pivot[col];
                for (x, y) in b.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    basis.into_iter().next()
}

/// Scans bounds up to `max_degree` each, by increasing total, and returns
/// the first accepted fit.
pub fn bivariate_guess(tri: &Triangle, max_degree: usize) -> Option<(Bounds, BivariateRationalGF)> {
    let mut all = Vec::new();
    for lt in 0..=max_degree {
        for mt in 0..=max_degree {
            for lz in 0..=max_degree {
                for mz in 0..=max_degree {
                    all.push(Bounds::new(lt, mt, lz, mz));
                }
            }
        }
    }
    all.sort_by_key(|b| (b.lt + b.mt + b.lz + b.mz, b.mz, b.mt, b.lz, b.lt));
    all.into_iter()
        .find_map(|b| bivariate_fit(tri, b).map(|g| (b, g)))
}
