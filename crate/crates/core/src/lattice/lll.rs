//! Integral LLL: exact Gram–Schmidt data kept as integers `d_i` (Gram
//! determinants) and `λ_{k,j} = d_j μ_{k,j}`, so no rational arithmetic is
//! needed inside the loop.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rat;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to `a / b` for `b > 0`.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

/// LLL-reduces the rows of `basis` with parameter `delta`, `1/4 < delta < 1`.
pub fn lll_reduce(basis: &[Vec<BigInt>], delta: &Rat) -> Result<Vec<Vec<BigInt>>> {
    let quarter = Rat::new(1.into(), 4.into());
    if *delta <= quarter || *delta >= Rat::from_integer(1.into()) {
        return Err(Error::PreconditionViolated("delta must lie in (1/4, 1)".into()));
    }
    let n = basis.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let width = basis[0].len();
    if basis.iter().any(|r| r.len() != width) {
        return Err(Error::PreconditionViolated("rows must have equal length".into()));
    }
    let (dp, dq) = (delta.numer().clone(), delta.denom().clone());

    // 1-based indices as in the textbook formulation
    let mut b: Vec<Vec<BigInt>> = std::iter::once(Vec::new()).chain(basis.iter().cloned()).collect();
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[0] = BigInt::from(1);
    d[1] = dot(&b[1], &b[1]);
    if d[1].is_zero() {
        return Err(Error::DependentRows);
    }
    let mut k = 2;
    let mut kmax = 1;

    let red = |b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize| {
        if (&lam[k][l] * BigInt::from(2)).abs() > d[l] {
            let q = round_div(&lam[k][l], &d[l]);
            let bl = b[l].clone();
            for (x, y) in b[k].iter_mut().zip(&bl) {
                *x -= &q * y;
            }
            lam[k][l] -= &q * &d[l];
            for i in 1..l {
                let t = &q * &lam[l][i];
                lam[k][i] -= t;
            }
        }
    };

    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::DependentRows);
                    }
                    d[k] = u;
                }
            }
        }
        loop {
            red(&mut b, &mut lam, &d, k, k - 1);
            // Lovász: d_k d_{k-2} >= delta d_{k-1}^2 - λ^2
            let lhs = &dq * (&d[k] * &d[k - 2] + &lam[k][k - 1] * &lam[k][k - 1]);
            let rhs = &dp * &d[k - 1] * &d[k - 1];
            if lhs >= rhs {
                break;
            }
            // swap k and k-1
            b.swap(k, k - 1);
            for j in 1..k - 1 {
                let t = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = t;
            }
            let l = lam[k][k - 1].clone();
            let bb = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
            for i in k + 1..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
                lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k];
            }
            d[k - 1] = bb;
            if k > 2 {
                k -= 1;
            }
        }
        for l in (1..k - 1).rev() {
            red(&mut b, &mut lam, &d, k, l);
        }
        k += 1;
    }
    b.remove(0);
    Ok(b)
}
