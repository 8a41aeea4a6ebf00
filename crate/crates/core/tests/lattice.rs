use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqgf::exact::{int_to_rat, ratio, FixedDecimal, Polynomial, Rat, TruncatedSeries};
use seqgf::holonomic::to_rationals;
use seqgf::lattice::{algdep, lll_reduce, reconstruct_algebraic, verify_annihilation, AlgdepConfig, AlgebraicEquation};

// ---- an independent oracle: textbook rational Gram–Schmidt ----

fn rdot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_rat(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(int_to_rat).collect()
}

/// (b*, mu) for the rows of `b`.
fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let n = b.len();
    let mut star: Vec<Vec<Rat>> = Vec::new();
    let mut mu = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        let mut v = to_rat(&b[i]);
        for j in 0..i {
            mu[i][j] = rdot(&to_rat(&b[i]), &star[j]) / rdot(&star[j], &star[j]);
            v = v.iter().zip(&star[j]).map(|(x, y)| x - &mu[i][j] * y).collect();
        }
        star.push(v);
    }
    (star, mu)
}

fn gram_det(b: &[Vec<BigInt>]) -> Rat {
    let (star, _) = gram_schmidt(b);
    star.iter().map(|s| rdot(s, s)).product()
}

/// Solves `x B = v` for rows `B` of full rank, `None` if inconsistent.
fn coordinates(b: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<Rat>> {
    let n = b.len();
    let w = v.len();
    // augmented system: columns are equations, one per coordinate of v
    let mut m: Vec<Vec<Rat>> = (0..w)
        .map(|c| {
            let mut row: Vec<Rat> = (0..n).map(|r| int_to_rat(&b[r][c])).collect();
            row.push(int_to_rat(&v[c]));
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (pivot_row..w).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(p, pivot_row);
        let inv = m[pivot_row][col].recip();
        for x in m[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..w {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let base = m[pivot_row].clone();
                for (x, y) in m[r].iter_mut().zip(&base) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][n].clone();
    }
    Some(x)
}

#[test]
fn lll_against_gram_schmidt_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let delta = ratio(3, 4);
    let half = ratio(1, 2);
    let mut tested = 0;
    while tested < 100 {
        let n = rng.gen_range(2..=8);
        let width = n + rng.gen_range(0..=1);
        let bound = [10, 1000, 1_000_000][rng.gen_range(0..3)];
        let basis: Vec<Vec<BigInt>> = (0..n)
            .map(|_| (0..width).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
            .collect();
        let det = gram_det(&basis);
        if det.is_zero() {
            continue;
        }
        let reduced = lll_reduce(&basis, &delta).unwrap();
        assert_eq!(reduced.len(), n);
        // same lattice: equal Gram determinant and every new row an integer
        // combination of the old ones
        assert_eq!(gram_det(&reduced), det);
        for row in &reduced {
            let x = coordinates(&basis, row).expect("row lies in the span");
            assert!(x.iter().all(|c| c.is_integer()), "non-integral coordinates {x:?}");
        }
        // size reduction and the Lovász condition
        let (star, mu) = gram_schmidt(&reduced);
        for i in 0..n {
            for j in 0..i {
                assert!(mu[i][j].abs() <= half, "|mu[{i}][{j}]| = {} > 1/2", mu[i][j]);
            }
        }
        for k in 1..n {
            let lhs = rdot(&star[k], &star[k]);
            let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * rdot(&star[k - 1], &star[k - 1]);
            assert!(lhs >= rhs, "Lovász fails at {k}");
        }
        tested += 1;
    }
}

#[test]
fn lll_rejects_bad_delta() {
    let b = vec![vec![BigInt::one(), BigInt::zero()], vec![BigInt::zero(), BigInt::one()]];
    assert!(lll_reduce(&b, &ratio(1, 4)).is_err());
    assert!(lll_reduce(&b, &ratio(1, 1)).is_err());
}

fn decimal(mantissa: BigInt, digits: u32) -> FixedDecimal {
    FixedDecimal::from_parts(mantissa, digits)
}

#[test]
fn golden_ratio_and_cube_root() {
    let p = 50;
    let scale = BigInt::from(10).pow(p);
    // (1 + sqrt 5)/2 from an integer square root
    let sqrt5 = (BigInt::from(5) * &scale * &scale).sqrt();
    let phi = decimal((&scale + sqrt5) / 2, p);
    assert_eq!(algdep(&phi, 2, p).unwrap(), Polynomial::from_ints(&[-1, -1, 1]));
    // degree 4 allowed, still the minimal polynomial
    assert_eq!(algdep(&phi, 4, p).unwrap(), Polynomial::from_ints(&[-1, -1, 1]));
    let cbrt2 = decimal((BigInt::from(2) * scale.pow(3)).cbrt(), p);
    assert_eq!(algdep(&cbrt2, 3, p).unwrap(), Polynomial::from_ints(&[-2, 0, 0, 1]));
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |r, i| r * (n - i) / (i + 1))
}

#[test]
fn rooted_planar_maps_equation() {
    let maps = |count: u64| -> Vec<BigInt> {
        (0..count)
            .map(|n| BigInt::from(2) * BigInt::from(3).pow(n as u32) * binomial(2 * n, n) / ((n + 1) * (n + 2)))
            .collect()
    };
    let got = reconstruct_algebraic(&to_rationals(&maps(15)), 0, &AlgdepConfig::default())
        .unwrap()
        .unwrap();
    assert_eq!(got.equation.render(), "algebraic(1 - 16*z - x + 18*x*z - 27*x^2*z^2 = 0)");
    // annihilates an independently computed 80-term expansion
    let s = TruncatedSeries::new(to_rationals(&maps(80)));
    assert!(verify_annihilation(&got.equation, &s));
    let wrong = AlgebraicEquation::parse("algebraic(1 - 16*z - x + 18*x*z - 28*x^2*z^2 = 0)").unwrap();
    assert!(!verify_annihilation(&wrong, &s));
}

#[test]
fn catalan_equation() {
    let cat: Vec<BigInt> = (0..20).map(|n| binomial(2 * n, n) / (n + 1)).collect();
    let got = reconstruct_algebraic(&to_rationals(&cat), 0, &AlgdepConfig::default())
        .unwrap()
        .unwrap();
    assert_eq!(got.equation.render(), "algebraic(1 - x + x^2*z = 0)");
    assert_eq!(got.degree, 2);
    assert!(got.per_point.iter().all(|p| p.degree() == Some(2)));
}

#[test]
fn equation_text_round_trip() {
    for src in [
        "algebraic(1 - x + x^2*z = 0)",
        "algebraic(1 - x + x^2*z + x^3*z^2 = 0)",
        "algebraic(1 - x^2 + 4*x^2*z = 0)",
    ] {
        assert_eq!(AlgebraicEquation::parse(src).unwrap().render(), src);
    }
    assert!(AlgebraicEquation::parse("algebraic(1 - x + y = 0)").is_err());
    // a nonzero first coefficient is made positive
    let e = AlgebraicEquation::parse("algebraic(-1 + x - x^2*z = 0)").unwrap();
    assert!(e.coeffs().values().next().unwrap().is_positive());
}
