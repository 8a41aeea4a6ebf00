use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{gcd_of, int_to_rat, lcm_of_denominators, Rat};

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut Vec<Vec<Rat>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for c in col..ncols {
            let v = &m[row][c] * &inv;
            m[row][c] = v;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for c in col..ncols {
                if !pivot_row[c].is_zero() {
                    let delta = &f * &pivot_row[c];
                    other[c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of `{ v : M v = 0 }` for a matrix given by rows of length `ncols`.
///
/// Each basis vector has a 1 in one free column and 0 in the other free
/// columns (the usual RREF basis), so the basis is deterministic.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    for r in &m {
        assert_eq!(r.len(), ncols, "ragged matrix");
    }
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| is_pivot[c].is_none()) {
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Scales a nonzero rational vector to coprime integers. The sign is left
/// to the caller.
pub fn primitive_int_vector(v: &[Rat]) -> Vec<BigInt> {
    let l = lcm_of_denominators(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * int_to_rat(&l)).to_integer()).collect();
    let g = gcd_of(&ints);
    if g.is_zero() {
        return ints;
    }
    let g = g.abs();
    ints.into_iter().map(|x| x / &g).collect()
}
