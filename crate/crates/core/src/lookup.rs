//! Sequence database lookup, directly and after elementary transformations.
//!
//! The comparison window is the terms at ranks 2..16 (positions 1..=15, the
//! first listed term being rank 1). Both the query and each record may be
//! shifted by up to three places to absorb index-origin mismatches.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::euler::{euler_expand, inverse_euler};
use crate::exact::{factorial, gcd_of, int_to_rat, to_integers, Polynomial, Rat, TruncatedSeries};
use crate::expr::text::Cursor;

/// First position of the comparison window (rank 2).
pub const WINDOW_START: usize = 1;
/// Number of positions in a full window (ranks 2..16).
pub const WINDOW_LEN: usize = 15;
/// Shortest common prefix accepted as a match.
pub const MIN_COMPARED: usize = 7;
/// Largest shift tried on either side.
pub const MAX_SHIFT: usize = 3;
/// Records with fewer terms are not indexed.
pub const MIN_RECORD_TERMS: usize = 9;
/// Longest chain of transformations tried by [`findhard`].
pub const MAX_CHAIN: usize = 2;
/// The mini database shipped with the crate.
pub const BUILTIN_DB: &str = include_str!("../data/minidb.txt");

/// Queries are cut to this many terms before transforming.
const QUERY_CAP: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceRecord {
    pub id: String,
    pub terms: Vec<BigInt>,
    pub name: Option<String>,
}

impl SequenceRecord {
    fn window(&self, shift: usize) -> Option<&[BigInt]> {
        window(&self.terms, shift)
    }
}

fn window(terms: &[BigInt], shift: usize) -> Option<&[BigInt]> {
    let start = WINDOW_START + shift;
    let end = (start + WINDOW_LEN).min(terms.len());
    (end >= start + MIN_COMPARED).then(|| &terms[start..end])
}

#[derive(Clone, Debug, Default)]
pub struct SequenceDB {
    records: Vec<SequenceRecord>,
    /// `(window key, record index, record shift)`, sorted by key.
    index: Vec<(Vec<BigInt>, usize, usize)>,
    skipped: Vec<(usize, String)>,
}

impl SequenceDB {
    pub fn from_records(records: Vec<SequenceRecord>) -> Self {
        let mut index = Vec::new();
        for (i, r) in records.iter().enumerate() {
            if r.terms.len() < MIN_RECORD_TERMS {
                continue;
            }
            for shift in 0..=MAX_SHIFT {
                if let Some(w) = r.window(shift) {
                    index.push((w.to_vec(), i, shift));
                }
            }
        }
        index.sort();
        SequenceDB {
            records,
            index,
            skipped: Vec::new(),
        }
    }

    /// Parses the stripped format: `Annnnnn ,t1,t2,...,tk,` with an optional
    /// name after the final comma; `#` starts a comment line.
    pub fn parse(text: &str) -> Self {
        let mut records = Vec::new();
        let mut skipped = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match parse_record(line) {
                Ok(r) => records.push(r),
                Err(msg) => skipped.push((i + 1, msg)),
            }
        }
        let mut db = Self::from_records(records);
        db.skipped = skipped;
        db
    }

    pub fn records(&self) -> &[SequenceRecord] {
        &self.records
    }

    pub fn get(&self, id: &str) -> Option<&SequenceRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Number of records long enough to be indexed.
    pub fn indexed_count(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.terms.len() >= MIN_RECORD_TERMS)
            .count()
    }

    /// Malformed lines as `(line number, reason)`.
    pub fn skipped(&self) -> &[(usize, String)] {
        &self.skipped
    }

    /// Index entries whose key agrees with `w` on the common prefix.
    fn candidates<'a>(&'a self, w: &'a [BigInt]) -> impl Iterator<Item = (usize, usize, usize)> + 'a {
        let probe = &w[..MIN_COMPARED];
        let lo = self.index.partition_point(|(k, _, _)| k[..MIN_COMPARED] < *probe);
        self.index[lo..]
            .iter()
            .take_while(move |(k, _, _)| k[..MIN_COMPARED] == *probe)
            .filter_map(move |(k, rec, shift)| {
                let n = k.len().min(w.len());
                (k[..n] == w[..n]).then_some((*rec, *shift, n))
            })
    }
}

fn parse_record(line: &str) -> std::result::Result<SequenceRecord, String> {
    let (id, rest) = line
        .split_once(char::is_whitespace)
        .ok_or_else(|| "missing terms".to_string())?;
    let rest = rest.trim_start();
    let body = rest
        .strip_prefix(',')
        .ok_or_else(|| "terms must start with ','".to_string())?;
    let mut terms = Vec::new();
    let mut rest = body;
    // terms follow their comma directly; a name is set off by whitespace
    let name = loop {
        if rest.is_empty() || rest.starts_with(char::is_whitespace) {
            break rest.trim();
        }
        let Some((tok, tail)) = rest.split_once(',') else {
            return Err(format!("bad term {rest:?}"));
        };
        terms.push(tok.parse::<BigInt>().map_err(|_| format!("bad term {tok:?}"))?);
        rest = tail;
    };
    if terms.is_empty() {
        return Err("no terms".into());
    }
    Ok(SequenceRecord {
        id: id.to_string(),
        terms,
        name: (!name.is_empty()).then(|| name.to_string()),
    })
}

pub fn load_db(path: impl AsRef<Path>) -> Result<SequenceDB> {
    let text = std::fs::read_to_string(path)?;
    Ok(SequenceDB::parse(&text))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Category {
    Translation,
    Inverse,
    Power,
    SumDifference,
    Euler,
    Set,
    Gcd,
    ShiftBisect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum View {
    Ogf,
    Egf,
}

/// Elementary maps on sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    /// `a_n + c` for every `n`.
    AddAll(i64),
    /// `a_n + c` for `n >= 1`, i.e. `S + c z/(1-z)`.
    AddTail(i64),
    /// `S^e`, negative `e` for reciprocals.
    Power(i32),
    /// `S (1-z)^e`, negative `e` for repeated partial sums.
    DiffPower(i32),
    Euler,
    InverseEuler,
    /// `exp(S)` for `a_0 = 0`.
    Exp,
    /// `log(S)` for `a_0 = 1`.
    Log,
    /// `S e^(c z)`.
    ExpMultiply(i64),
    Complement,
    DivideGcd,
    ShiftLeft,
    ShiftRight,
    Bisect(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformationSpec {
    pub name: String,
    pub category: Category,
    pub view: View,
    pub op: Op,
    /// Catalog name of the inverse map, when there is one.
    pub inverse: Option<String>,
    pub doc: String,
}

impl TransformationSpec {
    /// Image of `terms`, or `None` outside the domain.
    pub fn apply(&self, terms: &[BigInt]) -> Option<Vec<BigInt>> {
        match self.view {
            View::Ogf => apply_ogf(self.op, terms),
            View::Egf => {
                let s: Vec<Rat> = terms
                    .iter()
                    .enumerate()
                    .map(|(i, a)| int_to_rat(a) / int_to_rat(&factorial(i)))
                    .collect();
                let out = series_op(self.op, &TruncatedSeries::new(s), terms)?;
                let back: Vec<Rat> = out
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * int_to_rat(&factorial(i)))
                    .collect();
                to_integers(&back)
            }
        }
    }
}

fn apply_ogf(op: Op, terms: &[BigInt]) -> Option<Vec<BigInt>> {
    match op {
        Op::AddAll(c) => Some(terms.iter().map(|a| a + c).collect()),
        Op::AddTail(c) => Some(
            terms
                .iter()
                .enumerate()
                .map(|(i, a)| if i == 0 { a.clone() } else { a + c })
                .collect(),
        ),
        Op::Euler => {
            if !terms.first()?.is_one() {
                return None;
            }
            let c: Vec<Rat> = terms[1..].iter().map(int_to_rat).collect();
            to_integers(euler_expand(&c, terms.len()).coeffs())
        }
        Op::InverseEuler => {
            let r: Vec<Rat> = terms.iter().map(int_to_rat).collect();
            let p = inverse_euler(&r).ok()?;
            if !p.integral {
                return None;
            }
            let mut out = vec![BigInt::one()];
            out.extend(p.exponents.iter().map(|c| c.to_integer()));
            Some(out)
        }
        Op::Complement => {
            if terms.iter().any(Signed::is_negative) || terms.windows(2).any(|w| w[0] > w[1]) {
                return None;
            }
            let max: u64 = terms.last()?.try_into().ok()?;
            if max > 1_000_000 {
                return None;
            }
            let set: std::collections::BTreeSet<u64> =
                terms.iter().filter_map(|t| u64::try_from(t).ok()).collect();
            let out: Vec<u64> = (1..=max).filter(|n| !set.contains(n)).take(QUERY_CAP).collect();
            // a sparse set leaves a complement that looks like the naturals
            // over the compared window; require a few gaps inside it
            let span = *out.get(WINDOW_START + WINDOW_LEN - 1).or(out.last())?;
            if set.range(..span).count() < 3 {
                return None;
            }
            Some(out.into_iter().map(BigInt::from).collect())
        }
        Op::DivideGcd => {
            let g = gcd_of(terms);
            if g <= BigInt::one() {
                return None;
            }
            Some(terms.iter().map(|t| t / &g).collect())
        }
        Op::ShiftLeft => Some(terms.get(1..)?.to_vec()),
        Op::ShiftRight => {
            let mut out = vec![BigInt::zero()];
            out.extend(terms.iter().cloned());
            Some(out)
        }
        Op::Bisect(r) => Some(terms.iter().skip(r).step_by(2).cloned().collect()),
        _ => {
            let s = TruncatedSeries::new(terms.iter().map(int_to_rat).collect());
            let out = series_op(op, &s, terms)?;
            to_integers(out.coeffs())
        }
    }
}

/// Operations expressed on the generating function itself.
fn series_op(op: Op, s: &TruncatedSeries, terms: &[BigInt]) -> Option<TruncatedSeries> {
    let t = s.order();
    let one_minus_z = TruncatedSeries::from_polynomial(&Polynomial::from_ints(&[1, -1]), t);
    match op {
        Op::AddTail(c) => {
            let mut v = s.coeffs().to_vec();
            for x in v.iter_mut().skip(1) {
                *x += Rat::from_integer(c.into());
            }
            Some(TruncatedSeries::new(v))
        }
        Op::Power(e) => {
            if e < 0 {
                // reciprocals stay integral only for a unit constant term
                if !terms.first()?.abs().is_one() {
                    return None;
                }
                Some(s.recip().ok()?.pow(e.unsigned_abs()))
            } else {
                Some(s.pow(e as u32))
            }
        }
        Op::DiffPower(e) => {
            let f = one_minus_z.pow(e.unsigned_abs());
            if e < 0 {
                s.div(&f).ok()
            } else {
                Some(s.mul(&f))
            }
        }
        Op::Exp => {
            if !s.coeff(0).is_zero() {
                return None;
            }
            s.exp().ok()
        }
        Op::Log => s.log().ok(),
        Op::ExpMultiply(c) => {
            let cz = TruncatedSeries::variable(t).scale(&Rat::from_integer(c.into()));
            Some(s.mul(&cz.exp().ok()?))
        }
        Op::ShiftLeft => {
            if t < 2 {
                return None;
            }
            let mut v = s.coeffs().to_vec();
            v[0] = Rat::zero();
            TruncatedSeries::new(v).shift_down(1).ok()
        }
        Op::ShiftRight => {
            let mut v = vec![Rat::zero()];
            v.extend(s.coeffs().iter().cloned());
            Some(TruncatedSeries::new(v))
        }
        _ => None,
    }
}

fn spec(name: &str, category: Category, view: View, op: Op, inverse: Option<&str>, doc: &str) -> TransformationSpec {
    TransformationSpec {
        name: name.to_string(),
        category,
        view,
        op,
        inverse: inverse.map(str::to_string),
        doc: doc.to_string(),
    }
}

/// The shipped catalog, in search order.
pub fn transformation_catalog() -> Vec<TransformationSpec> {
    use Category::*;
    let mut v = Vec::new();
    for c in 1..=3i64 {
        v.push(spec(
            &format!("add_{c}"),
            Translation,
            View::Ogf,
            Op::AddAll(c),
            Some(&format!("sub_{c}")),
            &format!("a(n) + {c}, i.e. S + {c}/(1-z)"),
        ));
        v.push(spec(
            &format!("sub_{c}"),
            Translation,
            View::Ogf,
            Op::AddAll(-c),
            Some(&format!("add_{c}")),
            &format!("a(n) - {c}, i.e. S - {c}/(1-z)"),
        ));
    }
    for c in 1..=3i64 {
        v.push(spec(
            &format!("add_{c}_tail"),
            Translation,
            View::Ogf,
            Op::AddTail(c),
            Some(&format!("sub_{c}_tail")),
            &format!("S + {c}*z/(1-z)"),
        ));
        v.push(spec(
            &format!("sub_{c}_tail"),
            Translation,
            View::Ogf,
            Op::AddTail(-c),
            Some(&format!("add_{c}_tail")),
            &format!("S - {c}*z/(1-z)"),
        ));
    }
    v.push(spec("reciprocal", Inverse, View::Ogf, Op::Power(-1), Some("reciprocal"), "1/S"));
    v.push(spec("reciprocal_square", Inverse, View::Ogf, Op::Power(-2), None, "1/S^2"));
    v.push(spec("reciprocal_cube", Inverse, View::Ogf, Op::Power(-3), None, "1/S^3"));
    v.push(spec("square", Power, View::Ogf, Op::Power(2), None, "S^2"));
    v.push(spec("cube", Power, View::Ogf, Op::Power(3), None, "S^3"));
    v.push(spec(
        "partial_sums",
        SumDifference,
        View::Ogf,
        Op::DiffPower(-1),
        Some("first_differences"),
        "S/(1-z)",
    ));
    v.push(spec(
        "first_differences",
        SumDifference,
        View::Ogf,
        Op::DiffPower(1),
        Some("partial_sums"),
        "S*(1-z)",
    ));
    v.push(spec(
        "second_differences",
        SumDifference,
        View::Ogf,
        Op::DiffPower(2),
        None,
        "S*(1-z)^2",
    ));
    v.push(spec(
        "euler",
        Category::Euler,
        View::Ogf,
        Op::Euler,
        Some("inverse_euler"),
        "prod (1-z^n)^(-a(n)) for a(0) = 1",
    ));
    v.push(spec(
        "inverse_euler",
        Category::Euler,
        View::Ogf,
        Op::InverseEuler,
        Some("euler"),
        "exponents c(n) of S = prod (1-z^n)^(-c(n)), when integral",
    ));
    v.push(spec(
        "set_complement_in_naturals",
        Set,
        View::Ogf,
        Op::Complement,
        None,
        "positive integers up to max a(n) missing from the sequence",
    ));
    v.push(spec("divide_by_gcd", Gcd, View::Ogf, Op::DivideGcd, None, "a(n) / gcd of all terms"));
    v.push(spec("shift_left", ShiftBisect, View::Ogf, Op::ShiftLeft, None, "(S - a(0))/z"));
    v.push(spec(
        "shift_right",
        ShiftBisect,
        View::Ogf,
        Op::ShiftRight,
        Some("shift_left"),
        "z*S",
    ));
    v.push(spec("bisect_even", ShiftBisect, View::Ogf, Op::Bisect(0), None, "a(2n)"));
    v.push(spec("bisect_odd", ShiftBisect, View::Ogf, Op::Bisect(1), None, "a(2n+1)"));

    for c in 1..=3i64 {
        v.push(spec(
            &format!("egf_add_{c}_tail"),
            Translation,
            View::Egf,
            Op::AddTail(c),
            Some(&format!("egf_sub_{c}_tail")),
            &format!("a(n) + {c}*n! for n >= 1"),
        ));
        v.push(spec(
            &format!("egf_sub_{c}_tail"),
            Translation,
            View::Egf,
            Op::AddTail(-c),
            Some(&format!("egf_add_{c}_tail")),
            &format!("a(n) - {c}*n! for n >= 1"),
        ));
    }
    v.push(spec("egf_reciprocal", Inverse, View::Egf, Op::Power(-1), Some("egf_reciprocal"), "1/E"));
    v.push(spec("egf_reciprocal_square", Inverse, View::Egf, Op::Power(-2), None, "1/E^2"));
    v.push(spec("egf_reciprocal_cube", Inverse, View::Egf, Op::Power(-3), None, "1/E^3"));
    v.push(spec("egf_square", Power, View::Egf, Op::Power(2), None, "E^2"));
    v.push(spec("egf_cube", Power, View::Egf, Op::Power(3), None, "E^3"));
    v.push(spec(
        "egf_partial_sums",
        SumDifference,
        View::Egf,
        Op::DiffPower(-1),
        Some("egf_first_differences"),
        "E/(1-z)",
    ));
    v.push(spec(
        "egf_first_differences",
        SumDifference,
        View::Egf,
        Op::DiffPower(1),
        Some("egf_partial_sums"),
        "E*(1-z)",
    ));
    v.push(spec(
        "egf_second_differences",
        SumDifference,
        View::Egf,
        Op::DiffPower(2),
        None,
        "E*(1-z)^2",
    ));
    v.push(spec(
        "egf_binomial",
        SumDifference,
        View::Egf,
        Op::ExpMultiply(1),
        Some("egf_inverse_binomial"),
        "E*exp(z): sum binomial(n,k) a(k)",
    ));
    v.push(spec(
        "egf_inverse_binomial",
        SumDifference,
        View::Egf,
        Op::ExpMultiply(-1),
        Some("egf_binomial"),
        "E*exp(-z)",
    ));
    v.push(spec("egf_exp", Category::Euler, View::Egf, Op::Exp, Some("egf_log"), "exp(E) for a(0) = 0"));
    v.push(spec("egf_log", Category::Euler, View::Egf, Op::Log, Some("egf_exp"), "log(E) for a(0) = 1"));
    v.push(spec("egf_shift_left", ShiftBisect, View::Egf, Op::ShiftLeft, None, "(E - a(0))/z"));
    v.push(spec(
        "egf_shift_right",
        ShiftBisect,
        View::Egf,
        Op::ShiftRight,
        Some("egf_shift_left"),
        "z*E",
    ));
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchResult {
    /// Transformation names applied to the query, in order.
    pub chain: Vec<String>,
    pub id: String,
    pub query_shift: usize,
    pub record_shift: usize,
    /// Length of the compared window.
    pub compared: usize,
}

impl MatchResult {
    /// `lookup(A0108; chain=[add_1])`
    pub fn render(&self) -> String {
        format!("lookup({}; chain=[{}])", self.id, self.chain.join(","))
    }

    /// Parses [`render`](Self::render) output; shifts are not part of the text.
    pub fn parse(src: &str) -> Result<(String, Vec<String>)> {
        let mut c = Cursor::new(src);
        c.expect("lookup(")?;
        let id = c.parse_ident()?.to_string();
        c.expect(";")?;
        c.expect("chain=[")?;
        let mut chain = Vec::new();
        while !c.eat("]") {
            if !chain.is_empty() {
                c.expect(",")?;
            }
            chain.push(c.parse_ident()?.to_string());
        }
        c.expect(")")?;
        c.finish()?;
        Ok((id, chain))
    }

    /// Recomputes the chain on `query` and compares windows with the record.
    pub fn replay(&self, query: &[BigInt], db: &SequenceDB) -> bool {
        let catalog = transformation_catalog();
        let Some(image) = apply_chain(&catalog, &self.chain, query) else {
            return false;
        };
        let (Some(rec), Some(w)) = (db.get(&self.id), window(&image, self.query_shift)) else {
            return false;
        };
        let Some(k) = rec.window(self.record_shift) else {
            return false;
        };
        let n = self.compared;
        n >= MIN_COMPARED && w.len() >= n && k.len() >= n && w[..n] == k[..n]
    }
}

impl fmt::Display for MatchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Applies named transformations in order.
pub fn apply_chain(catalog: &[TransformationSpec], chain: &[String], query: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut cur = query.to_vec();
    for name in chain {
        let spec = catalog.iter().find(|s| s.name == *name)?;
        cur = spec.apply(&cur)?;
    }
    Some(cur)
}

/// Exact-window matches of `seq` itself, one per record (smallest total shift
/// first), ordered by id.
pub fn find(seq: &[BigInt], db: &SequenceDB) -> Vec<MatchResult> {
    let mut best: BTreeMap<usize, MatchResult> = BTreeMap::new();
    for qshift in 0..=MAX_SHIFT {
        let Some(w) = window(seq, qshift) else { break };
        for (rec, rshift, n) in db.candidates(w) {
            let m = MatchResult {
                chain: Vec::new(),
                id: db.records[rec].id.clone(),
                query_shift: qshift,
                record_shift: rshift,
                compared: n,
            };
            let key = |m: &MatchResult| (m.query_shift + m.record_shift, m.query_shift);
            match best.get(&rec) {
                Some(old) if key(old) <= key(&m) => {}
                _ => {
                    best.insert(rec, m);
                }
            }
        }
    }
    let mut out: Vec<MatchResult> = best.into_values().collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// [`find`] on `seq` and on its images under every chain of at most
/// [`MAX_CHAIN`] catalog transformations. Each record is reported once, via
/// its shortest chain (ties go to the better-aligned match, then catalog
/// order); every result has been replay-verified.
pub fn findhard(seq: &[BigInt], db: &SequenceDB) -> Vec<MatchResult> {
    let catalog = transformation_catalog();
    let query = &seq[..seq.len().min(QUERY_CAP)];
    // (chain length, catalog positions, id) orders the results
    let mut found: BTreeMap<String, (Vec<usize>, MatchResult)> = BTreeMap::new();
    let mut record = |positions: Vec<usize>, image: &[BigInt]| {
        for mut m in find(image, db) {
            m.chain = positions.iter().map(|&i| catalog[i].name.clone()).collect();
            let better = match found.get(&m.id) {
                Some((old, o)) => {
                    let shift = |m: &MatchResult| m.query_shift + m.record_shift;
                    (positions.len(), shift(&m), &positions) < (old.len(), shift(o), old)
                }
                None => true,
            };
            if better {
                found.insert(m.id.clone(), (positions.clone(), m));
            }
        }
    };
    record(Vec::new(), query);
    let images: Vec<(usize, Vec<BigInt>)> = catalog
        .iter()
        .enumerate()
        .filter_map(|(i, s)| s.apply(query).map(|img| (i, capped(img))))
        .collect();
    for (i, img) in &images {
        record(vec![*i], img);
    }
    if MAX_CHAIN >= 2 {
        for (i, img) in &images {
            for (j, s) in catalog.iter().enumerate() {
                if catalog[*i].inverse.as_deref() == Some(s.name.as_str()) {
                    continue;
                }
                if let Some(img2) = s.apply(img).map(capped) {
                    record(vec![*i, j], &img2);
                }
            }
        }
    }
    let mut out: Vec<(Vec<usize>, MatchResult)> = found.into_values().collect();
    out.sort_by(|(pa, a), (pb, b)| (pa.len(), pa, &a.id).cmp(&(pb.len(), pb, &b.id)));
    out.into_iter()
        .map(|(_, m)| m)
        .filter(|m| m.replay(seq, db))
        .collect()
}

fn capped(mut v: Vec<BigInt>) -> Vec<BigInt> {
    v.truncate(QUERY_CAP);
    v
}

/// Rejects lookups on queries with too few terms for a window.
pub fn check_query(seq: &[BigInt]) -> Result<()> {
    if window(seq, 0).is_none() {
        return Err(Error::InsufficientTerms(format!(
            "a lookup needs at least {} terms",
            WINDOW_START + MIN_COMPARED
        )));
    }
    Ok(())
}

/// Integer content helper for callers building records.
pub fn is_divisible_by(terms: &[BigInt], d: &BigInt) -> bool {
    terms.iter().all(|t| t.is_multiple_of(d))
}
