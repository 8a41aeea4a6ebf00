//! One line per acceptance criterion. Every criterion runs even when an
//! earlier one fails; the test then fails unless the only failures are the
//! ones listed in `UNATTAINABLE`.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seqgf::bivariate::{bivariate_expand, bivariate_fit, generate_tableau, Bounds, TableauSpec, Triangle};
use seqgf::euler::{euler_expand, euler_guess, inverse_euler};
use seqgf::exact::{factorial, int_to_rat, ratio, FixedDecimal, Polynomial, Rat, TruncatedSeries};
use seqgf::expr::GfExpr;
use seqgf::holonomic::{extend_precurrence, guess_precurrence, guess_precurrence_within, to_rationals, PRecurrence};
use seqgf::hypergeom::HypergeometricForm;
use seqgf::lattice::{algdep, lll_reduce, reconstruct_algebraic, solve_closed_form, verify_annihilation, AlgdepConfig};
use seqgf::lookup::{findhard, transformation_catalog, Category, SequenceDB, BUILTIN_DB};
use seqgf::pipeline::{parse_corpus, run_corpus, run_fit, FitOptions, Method, BUILTIN_CORPUS};

/// Criteria that cannot be met as stated; they still run and print FAIL.
/// 4: ten terms cannot determine an order-2, degree-3 recurrence (twelve
/// unknowns, eight equations).
const UNATTAINABLE: &[usize] = &[4];

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure!(t < limit, "{what} took {t:.2?}, limit {limit:?}");
    Ok(t)
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |r, i| r * (n - i) / (i + 1))
}

fn catalan(count: u64) -> Vec<BigInt> {
    (0..count).map(|n| binomial(2 * n, n) / (n + 1)).collect()
}

/// A0168: 2 * 3^n * C(2n, n) / ((n+1)(n+2))
fn planar_maps(count: u64) -> Vec<BigInt> {
    (0..count)
        .map(|n| BigInt::from(2) * BigInt::from(3).pow(n as u32) * binomial(2 * n, n) / ((n + 1) * (n + 2)))
        .collect()
}

/// sum_k C(n,k)^2 C(n+k,k)^2
fn apery(count: u64) -> Vec<BigInt> {
    (0..count)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let b = binomial(n, k) * binomial(n + k, k);
                    &b * &b
                })
                .sum()
        })
        .collect()
}

fn lines(results: &[seqgf::pipeline::GuessResult]) -> Vec<String> {
    results.iter().map(ToString::to_string).collect()
}

fn only(m: Method) -> FitOptions<'static> {
    FitOptions {
        methods: vec![m],
        ..FitOptions::default()
    }
}

fn criterion_1() -> Check {
    let fib = ints(&[1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610]);
    let t = Instant::now();
    let out = run_fit(&fib, 0, &only(Method::Rational)).map_err(|e| e.to_string())?;
    let t1 = within(t, Duration::from_secs(1), "Fibonacci")?;
    ensure!(lines(&out.results) == ["rational: (1)/(1 - z - z^2)"], "Fibonacci gave {:?}", lines(&out.results));

    let cake = ints(&[1, 2, 4, 8, 15, 26, 42, 64, 93, 130]);
    let t = Instant::now();
    let out = run_fit(&cake, 0, &only(Method::Rational)).map_err(|e| e.to_string())?;
    let t2 = within(t, Duration::from_secs(1), "A0125")?;
    let got = lines(&out.results);
    ensure!(
        got == ["rational: (1 - 2*z + 2*z^2)/(1 - 4*z + 6*z^2 - 4*z^3 + z^4)"],
        "A0125 gave {got:?}"
    );
    let degrees = &out.results[0].details["degrees"];
    ensure!(*degrees == serde_json::json!([2, 4]), "A0125 degrees {degrees}");
    Ok(format!("Fibonacci {t1:.2?}, A0125 (2,4) {t2:.2?}"))
}

fn criterion_2() -> Check {
    let primes = ints(&[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71]);
    let out = run_fit(&primes, 0, &only(Method::Rational)).map_err(|e| e.to_string())?;
    ensure!(out.results.is_empty(), "primes accepted: {:?}", lines(&out.results));
    let note = out.notes.iter().find(|n| n.starts_with("rational:")).ok_or("no rational note")?;
    ensure!(note.ends_with("rejected by the size criterion"), "note: {note}");
    Ok("no result; failing gate: size".into())
}

fn criterion_3() -> Check {
    let terms = ints(&[1, 1, 2, 4, 10, 26, 76, 232, 764, 2620]);
    let out = run_fit(&terms, 0, &only(Method::Transform)).map_err(|e| e.to_string())?;
    let got = lines(&out.results);
    ensure!(got == ["transform: egf(exp_integral(1 + z))"], "A0085 gave {got:?}");
    // exp(z + z^2/2) = sum a_n z^n / n!, checked without the library's own view handling
    let mut inner = vec![Rat::zero(); 10];
    inner[1] = Rat::one();
    inner[2] = ratio(1, 2);
    let inner = TruncatedSeries::new(inner);
    let e = inner.exp().map_err(|e| e.to_string())?;
    for (n, a) in terms.iter().enumerate() {
        let scaled = &e.coeffs()[n] * int_to_rat(&factorial(n));
        ensure!(scaled == int_to_rat(a), "term {n}: exp(z+z^2/2) gives {scaled}, want {a}");
    }
    let expr = GfExpr::parse("egf(exp_integral(1 + z))").map_err(|e| e.to_string())?;
    let back = expr.expand(10).map_err(|e| e.to_string())?;
    ensure!(back.coeffs() == &to_rationals(&terms)[..], "re-expansion differs");
    Ok("egf(exp_integral(1 + z)); 10 terms reproduced".into())
}

fn criterion_4() -> Check {
    let t = Instant::now();
    let cat = to_rationals(&catalan(20));
    let rec = guess_precurrence(&cat, 1, 2, 2).map_err(|e| e.to_string())?.ok_or("Catalan: none")?;
    ensure!(rec.render() == "n*a(n) = (4*n-6)*a(n-1)", "Catalan gave {}", rec.render());

    // n^3 a(n) = (34n^3 - 51n^2 + 27n - 5) a(n-1) - (n-1)^3 a(n-2)
    let want = PRecurrence::parse("n^3*a(n) = (34*n^3-51*n^2+27*n-5)*a(n-1) - (n^3-3*n^2+3*n-1)*a(n-2)", 0)
        .map_err(|e| e.to_string())?;
    let from_twenty = guess_precurrence_within(&to_rationals(&apery(20)), 0, 3, 2);
    ensure!(from_twenty.as_ref() == Some(&want), "Apéry from 20 terms gave {from_twenty:?}");
    let ext = extend_precurrence(&want, &apery(10), 110).map_err(|e| e.to_string())?;
    ensure!(ext == apery(110), "Apéry extension differs from the binomial sum");
    // offset 1: a(1) = C_0
    let ext = extend_precurrence(&rec, &catalan(20), 120).map_err(|e| e.to_string())?;
    ensure!(ext == catalan(120), "Catalan extension differs");
    let t_ok = within(t, Duration::from_secs(5), "recurrence checks")?;

    let ten = to_rationals(&apery(10));
    match guess_precurrence(&ten, 0, 3, 2) {
        Ok(Some(r)) if r == want => Ok(format!("all parts, {t_ok:.2?}")),
        Ok(other) => Err(format!("Apéry from 10 terms gave {other:?}")),
        Err(e) => Err(format!(
            "Catalan, Apéry from 20 terms and 100-term extensions pass ({t_ok:.2?}); Apéry from 10 terms: {e}"
        )),
    }
}

fn criterion_5() -> Check {
    let mut done = Vec::new();
    for (name, terms, want) in [
        ("A0168", planar_maps(30), "hypergeometric: hypergeom([1/2;1],[3]; 12*z; 1)"),
        ("Catalan", catalan(30), "hypergeometric: hypergeom([1/2;1],[2]; 4*z; 1)"),
    ] {
        let out = run_fit(&terms, 0, &only(Method::Hypergeometric)).map_err(|e| e.to_string())?;
        let got = lines(&out.results);
        ensure!(got == [want], "{name} gave {got:?}");
        let form = HypergeometricForm::parse(want.trim_start_matches("hypergeometric: ")).map_err(|e| e.to_string())?;
        ensure!(form.expand(30).coeffs() == &to_rationals(&terms)[..], "{name}: re-expansion differs");
        done.push(name);
    }
    Ok(format!("{} match 30 terms", done.join(", ")))
}

fn criterion_6() -> Check {
    let t = Instant::now();
    let cfg = AlgdepConfig::default();
    let seq = to_rationals(&planar_maps(cfg.terms as u64));
    let rec = reconstruct_algebraic(&seq, 0, &cfg).map_err(|e| e.to_string())?.ok_or("no equation")?;
    let first = rec.per_point.first().ok_or("no per-point polynomial")?;
    let want_point = Polynomial::from_ints(&[-8400, 8200, 27]);
    ensure!(
        *first == want_point || *first == -&want_point,
        "per-point polynomial at i=0: {}",
        first.render("x")
    );
    let eq = rec.equation.render();
    ensure!(eq == "algebraic(1 - 16*z - x + 18*x*z - 27*x^2*z^2 = 0)", "equation {eq}");
    let long = TruncatedSeries::new(to_rationals(&planar_maps(200)));
    ensure!(verify_annihilation(&rec.equation, &long), "does not annihilate 200 terms");
    let closed = solve_closed_form(&rec.equation, &rec.series).ok_or("no closed form")?;
    let s = closed.expand(50).map_err(|e| e.to_string())?;
    ensure!(s.coeffs() == &to_rationals(&planar_maps(50))[..], "closed form {} differs", closed.render());
    let took = within(t, Duration::from_secs(60), "reconstruction")?;
    Ok(format!("{eq}; closed form {}; {took:.1?}", closed.render()))
}

fn rdot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let n = b.len();
    let rows: Vec<Vec<Rat>> = b.iter().map(|r| r.iter().map(int_to_rat).collect()).collect();
    let mut star: Vec<Vec<Rat>> = Vec::new();
    let mut mu = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        let mut v = rows[i].clone();
        for j in 0..i {
            mu[i][j] = rdot(&rows[i], &star[j]) / rdot(&star[j], &star[j]);
            v = v.iter().zip(&star[j]).map(|(x, y)| x - &mu[i][j] * y).collect();
        }
        star.push(v);
    }
    (star, mu)
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let delta = ratio(3, 4);
    let half = ratio(1, 2);
    let mut tested = 0;
    while tested < 100 {
        let n = rng.gen_range(2..=8);
        let basis: Vec<Vec<BigInt>> = (0..n)
            .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-1_000_000..=1_000_000))).collect())
            .collect();
        let (star, _) = gram_schmidt(&basis);
        let det: Rat = star.iter().map(|s| rdot(s, s)).product();
        if det.is_zero() {
            continue;
        }
        let red = lll_reduce(&basis, &delta).map_err(|e| e.to_string())?;
        let (rs, mu) = gram_schmidt(&red);
        let rdet: Rat = rs.iter().map(|s| rdot(s, s)).product();
        ensure!(rdet == det, "basis {tested}: Gram determinant changed");
        for i in 0..n {
            for j in 0..i {
                ensure!(mu[i][j].abs() <= half, "basis {tested}: |mu[{i}][{j}]| > 1/2");
            }
        }
        for k in 1..n {
            let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * rdot(&rs[k - 1], &rs[k - 1]);
            ensure!(rdot(&rs[k], &rs[k]) >= rhs, "basis {tested}: Lovász fails at {k}");
        }
        tested += 1;
    }
    let p = 50;
    let scale = BigInt::from(10).pow(p);
    let sqrt5 = (BigInt::from(5) * &scale * &scale).sqrt();
    let phi = FixedDecimal::from_parts((&scale + sqrt5) / 2, p);
    let poly = algdep(&phi, 2, p).ok_or("algdep found nothing for the golden ratio")?;
    ensure!(poly == Polynomial::from_ints(&[-1, -1, 1]), "golden ratio gave {}", poly.render("x"));
    Ok(format!("100 bases reduced; golden ratio -> {}", poly.render("x")))
}

fn criterion_8() -> Check {
    let p = ints(&[1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490]);
    let g = euler_guess(&to_rationals(&p)).ok_or("partitions: no product")?;
    ensure!(g.exponents.iter().all(|c| c.is_one()), "partition exponents {:?}", g.exponents);
    let pat = g.pattern.as_ref().map(|p| p.render());
    ensure!(pat.as_deref() == Some("periodic(pre=[], cycle=[1])"), "partitions pattern {pat:?}");

    let planar = ints(&[1, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500, 859, 1479, 2485, 4167]);
    let g = euler_guess(&to_rationals(&planar)).ok_or("A0219: no product")?;
    let want: Vec<Rat> = (1..15).map(|n| Rat::from_integer(BigInt::from(n))).collect();
    ensure!(g.exponents == want, "A0219 exponents {:?}", g.exponents);
    let pat = g.pattern.as_ref().map(|p| p.render());
    ensure!(pat.as_deref() == Some("rational((z)/(1 - 2*z + z^2))"), "A0219 pattern {pat:?}");

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..200 {
        let mut a = vec![Rat::one()];
        a.extend((1..24).map(|_| Rat::from_integer(BigInt::from(rng.gen_range(-10_000i64..=10_000)))));
        let e = inverse_euler(&a).map_err(|e| e.to_string())?;
        ensure!(euler_expand(&e.exponents, 24).coeffs() == &a[..], "round trip {i} differs");
    }
    Ok("partitions [1]; A0219 c_n = n, z/(1-z)^2; 200 round trips".into())
}

fn criterion_9() -> Check {
    let db = SequenceDB::parse(BUILTIN_DB);
    let q = ints(&[0, 0, 1, 4, 13, 41, 131, 428]);
    let hits = findhard(&q, &db);
    let m = hits.first().ok_or("no match")?;
    ensure!(m.id == "A000108", "first match {}", m.render());
    ensure!(m.chain.len() == 1, "chain {:?}", m.chain);
    let catalog = transformation_catalog();
    let spec = catalog.iter().find(|s| s.name == m.chain[0]).ok_or("unknown transformation")?;
    ensure!(spec.category == Category::Translation, "{} is {:?}", spec.name, spec.category);
    ensure!(m.replay(&q, &db), "replay fails");
    Ok(m.render())
}

fn criterion_10() -> Check {
    let pascal = |rows: u64| {
        Triangle::new((0..rows).map(|n| (0..=n).map(|k| binomial(n, k)).collect()).collect()).unwrap()
    };
    let gen = generate_tableau(&TableauSpec::new(0, 0, 1, 0, 0, 1).map_err(|e| e.to_string())?, 10);
    ensure!(gen == pascal(10), "Pascal tableau differs");
    // S(n+1, k+1) = sum_j (-1)^j C(k+1, j) (k+1-j)^(n+1) / (k+1)!
    let stirling = Triangle::new(
        (0..10u64)
            .map(|n| {
                (0..=n)
                    .map(|k| {
                        let (nn, kk) = (n + 1, k + 1);
                        let s: BigInt = (0..=kk)
                            .map(|j| {
                                let t = binomial(kk, j) * BigInt::from(kk - j).pow(nn as u32);
                                if j % 2 == 0 { t } else { -t }
                            })
                            .sum();
                        s / factorial(kk as usize)
                    })
                    .collect()
            })
            .collect(),
    )
    .map_err(|e| e.to_string())?;
    let gen = generate_tableau(&TableauSpec::new(0, 0, 1, 0, 1, 1).map_err(|e| e.to_string())?, 10);
    ensure!(gen == stirling, "Stirling tableau differs");

    let g = bivariate_fit(&pascal(5), Bounds::new(1, 1, 0, 1)).ok_or("no fit on 5 rows")?;
    ensure!(g.render() == "(1)/(1 - z - t*z)", "fit {}", g.render());
    ensure!(bivariate_expand(&g, 10) == pascal(10), "expansion differs on 10 rows");
    Ok(format!("{}; Pascal and Stirling-2 tableaux", g.render()))
}

fn criterion_11() -> Check {
    let t = Instant::now();
    let entries = parse_corpus(BUILTIN_CORPUS).map_err(|e| e.to_string())?;
    let db = SequenceDB::parse(BUILTIN_DB);
    let opts = FitOptions {
        db: Some(&db),
        ..FitOptions::default()
    };
    let summary = run_corpus(&entries, &opts);
    ensure!(summary.all_passed(), "{}", summary.render());
    let took = within(t, Duration::from_secs(300), "corpus")?;
    Ok(format!("{}/{} entries, {took:.1?}", summary.passed(), entries.len()))
}

#[test]
fn acceptance() {
    let criteria: [fn() -> Check; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let mut failed = Vec::new();
    for (i, c) in criteria.iter().enumerate() {
        let n = i + 1;
        let res = catch_unwind(AssertUnwindSafe(c)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        // straight to the handle, so the lines show even when output is captured
        let mut out = std::io::stdout().lock();
        match res {
            Ok(detail) => writeln!(out, "criterion {n:2}: PASS  {detail}").unwrap(),
            Err(why) => {
                writeln!(out, "criterion {n:2}: FAIL  {why}").unwrap();
                failed.push(n);
            }
        }
    }
    let unexpected: Vec<usize> = failed.iter().copied().filter(|n| !UNATTAINABLE.contains(n)).collect();
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
}
