//! Input parsing, the automatic method pipeline and corpus verification.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::euler::{euler_expand, euler_guess, EulerProduct};
use crate::exact::{fmt_rat, Rat, TruncatedSeries};
use crate::expr::{matches_terms, GfExpr};
use crate::holonomic::{guess_precurrence_within, to_rationals, verify_precurrence, PRecurrence};
use crate::hypergeom::{recognize, HypergeometricForm};
use crate::lattice::{
    reconstruct_algebraic, solve_closed_form, verify_annihilation, AlgdepConfig, AlgebraicEquation,
    AlgebraicReconstruction,
};
use crate::lookup::{findhard, MatchResult, SequenceDB};
use crate::rational_fit::{input_digit_mass, ratpoly_diagnose, ratpoly_guess, transform_guess, FitReport};

/// The verification corpus shipped with the crate.
pub const BUILTIN_CORPUS: &str = include_str!("../data/corpus.tsv");

/// Fewest terms [`run_fit`] accepts.
pub const MIN_TERMS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Rational,
    Transform,
    PRecurrence,
    Hypergeometric,
    Algebraic,
    Euler,
    Lookup,
}

impl Method {
    /// Pipeline order.
    pub const ALL: [Method; 7] = [
        Method::Rational,
        Method::Transform,
        Method::PRecurrence,
        Method::Hypergeometric,
        Method::Algebraic,
        Method::Euler,
        Method::Lookup,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Method::Rational => "rational",
            Method::Transform => "transform",
            Method::PRecurrence => "precurrence",
            Method::Hypergeometric => "hypergeometric",
            Method::Algebraic => "algebraic",
            Method::Euler => "euler",
            Method::Lookup => "lookup",
        }
    }

    /// Comma-separated tags; `all` selects every method.
    pub fn parse_list(src: &str) -> Result<Vec<Method>> {
        if src.trim() == "all" {
            return Ok(Method::ALL.to_vec());
        }
        let mut out = Vec::new();
        for tok in src.split(',') {
            let m: Method = tok.trim().parse()?;
            if !out.contains(&m) {
                out.push(m);
            }
        }
        out.sort();
        Ok(out)
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: format!("unknown method {s:?}"),
            })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceInput {
    pub terms: Vec<BigInt>,
    pub offset: i64,
}

/// Comma- or whitespace-separated integers with an optional `offset=N`
/// prefix. Errors carry the byte position of the offending token.
pub fn parse_sequence_input(text: &str) -> Result<SequenceInput> {
    let mut offset = 0;
    let mut terms = Vec::new();
    let mut pos = 0;
    let bytes = text.as_bytes();
    let is_sep = |b: u8| b == b',' || b.is_ascii_whitespace();
    let mut first = true;
    while pos < bytes.len() {
        if is_sep(bytes[pos]) {
            pos += 1;
            continue;
        }
        let start = pos;
        while pos < bytes.len() && !is_sep(bytes[pos]) {
            pos += 1;
        }
        let tok = &text[start..pos];
        let bad = |message: String| Error::Parse {
            position: start,
            message,
        };
        if let Some(v) = tok.strip_prefix("offset=") {
            if !first {
                return Err(bad("offset= must come first".into()));
            }
            offset = v.parse().map_err(|_| bad(format!("bad offset {v:?}")))?;
        } else {
            terms.push(tok.parse::<BigInt>().map_err(|_| bad(format!("not an integer: {tok:?}")))?);
        }
        first = false;
    }
    if terms.is_empty() {
        return Err(Error::Parse {
            position: text.len(),
            message: "no terms given".into(),
        });
    }
    Ok(SequenceInput { terms, offset })
}

/// The native result of each method.
#[derive(Clone, Debug)]
pub enum Payload {
    Rational(FitReport),
    Transform(FitReport),
    PRecurrence(PRecurrence),
    Hypergeometric {
        form: HypergeometricForm,
        recurrence: PRecurrence,
    },
    Algebraic {
        reconstruction: Box<AlgebraicReconstruction>,
        closed_form: Option<GfExpr>,
    },
    Euler(EulerProduct),
    Lookup(MatchResult),
}

#[derive(Clone, Debug)]
pub struct GuessResult {
    pub method: Method,
    pub payload: Payload,
    pub canonical: String,
    /// Number of input terms the result has been checked against.
    pub verified_through: usize,
    pub details: Value,
}

impl GuessResult {
    pub fn to_json(&self) -> Value {
        json!({
            "method": self.method.tag(),
            "expression": self.canonical,
            "verified_through": self.verified_through,
            "details": self.details,
        })
    }
}

impl fmt::Display for GuessResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.method, self.canonical)
    }
}

#[derive(Clone, Debug)]
pub struct FitOptions<'a> {
    pub methods: Vec<Method>,
    pub dmax: usize,
    pub kmax: usize,
    pub algdep: AlgdepConfig,
    pub db: Option<&'a SequenceDB>,
    pub first_only: bool,
}

impl Default for FitOptions<'_> {
    fn default() -> Self {
        let algdep = AlgdepConfig::default();
        FitOptions {
            methods: Method::ALL.to_vec(),
            dmax: algdep.dmax,
            kmax: algdep.kmax,
            algdep,
            db: None,
            first_only: false,
        }
    }
}

impl FitOptions<'_> {
    fn wants(&self, m: Method) -> bool {
        self.methods.contains(&m)
    }
}

#[derive(Clone, Debug, Default)]
pub struct FitOutcome {
    pub results: Vec<GuessResult>,
    /// Why methods produced nothing, e.g. the gate a rational candidate failed.
    pub notes: Vec<String>,
}

/// Runs the selected methods in pipeline order. A rational result makes the
/// constant-coefficient recurrence and the algebraic attempt redundant, so
/// those are skipped after one.
pub fn run_fit(terms: &[BigInt], offset: i64, opts: &FitOptions<'_>) -> Result<FitOutcome> {
    if terms.len() < MIN_TERMS {
        return Err(Error::InsufficientTerms(format!(
            "got {} terms, need at least {MIN_TERMS}",
            terms.len()
        )));
    }
    let rats = to_rationals(terms);
    let mut out = FitOutcome::default();
    let ctx = Check {
        terms,
        rats: &rats,
        offset,
        db: opts.db,
    };
    macro_rules! emit {
        ($r:expr) => {
            match ctx.finish($r) {
                Some(r) => {
                    out.results.push(r);
                    if opts.first_only {
                        return Ok(out);
                    }
                }
                None => out.notes.push("a candidate failed re-verification and was dropped".into()),
            }
        };
    }

    let mut rational_found = false;
    if opts.wants(Method::Rational) {
        match ratpoly_guess(&rats) {
            Some(report) => {
                rational_found = true;
                emit!(rational_result(report, &rats));
            }
            None => out.notes.push(match ratpoly_diagnose(&rats) {
                Some(r) => match r.failing_gate() {
                    Some(g) => format!(
                        "rational: candidate {} rejected by the {g} criterion",
                        r.candidate.render()
                    ),
                    None => "rational: no candidate".into(),
                },
                None => "rational: no candidate".into(),
            }),
        }
    }

    if opts.wants(Method::Transform) {
        match transform_guess(&rats) {
            Some(report) if report.method() != "ratpoly" => emit!(transform_result(report)),
            Some(_) => {}
            None => out.notes.push("transform: no candidate".into()),
        }
    }

    let needs_rec = opts.wants(Method::PRecurrence) || opts.wants(Method::Hypergeometric);
    let rec = if needs_rec {
        guess_precurrence_within(&rats, offset, opts.dmax, opts.kmax)
    } else {
        None
    };
    if opts.wants(Method::PRecurrence) {
        match &rec {
            Some(r) if rational_found && r.degree() == 0 => {}
            Some(r) => emit!(precurrence_result(r.clone())),
            None => out.notes.push("precurrence: none within the degree and order bounds".into()),
        }
    }
    if opts.wants(Method::Hypergeometric) {
        match rec.as_ref().filter(|r| r.order() == 1) {
            Some(r) => match recognize(r, &rats) {
                Some(form) => emit!(hypergeometric_result(form, r.clone())),
                None => out.notes.push("hypergeometric: ratio does not factor over Q".into()),
            },
            None => out.notes.push("hypergeometric: no first-order recurrence".into()),
        }
    }

    if opts.wants(Method::Algebraic) && !rational_found {
        let mut cfg = opts.algdep.clone();
        cfg.dmax = opts.dmax;
        cfg.kmax = opts.kmax;
        match reconstruct_algebraic(&rats, offset, &cfg) {
            Ok(Some(rec)) => {
                let closed = solve_closed_form(&rec.equation, &rec.series);
                emit!(algebraic_result(rec, closed));
            }
            Ok(None) => out.notes.push("algebraic: no equation found".into()),
            Err(e) => out.notes.push(format!("algebraic: {e}")),
        }
    }

    if opts.wants(Method::Euler) {
        match euler_guess(&rats).filter(|p| p.pattern.is_some()) {
            Some(p) => emit!(euler_result(p)),
            None => out.notes.push("euler: no integral exponents with a recognizable pattern".into()),
        }
    }

    if opts.wants(Method::Lookup) {
        if let Some(db) = opts.db {
            let matches = findhard(terms, db);
            if matches.is_empty() {
                out.notes.push("lookup: no match".into());
            }
            for m in matches {
                let name = db.get(&m.id).and_then(|r| r.name.clone());
                emit!(lookup_result(m, name));
            }
        }
    }
    Ok(out)
}

fn rational_result(report: FitReport, rats: &[Rat]) -> GuessResult {
    let details = json!({
        "fit": report.method(),
        "degrees": [report.l, report.m],
        "surplus_verified": report.surplus_verified,
        "digit_mass": report.candidate.core_rational().map(|r| r.digit_mass()),
        "input_digit_mass": input_digit_mass(rats),
    });
    GuessResult {
        method: Method::Rational,
        canonical: report.candidate.render(),
        payload: Payload::Rational(report),
        verified_through: 0,
        details,
    }
}

fn transform_result(report: FitReport) -> GuessResult {
    let details = json!({
        "fit": report.method(),
        "transform": report.transform.name(),
        "view": report.view.name(),
        "inner_degrees": [report.l, report.m],
    });
    GuessResult {
        method: Method::Transform,
        canonical: report.candidate.render(),
        payload: Payload::Transform(report),
        verified_through: 0,
        details,
    }
}

fn precurrence_result(rec: PRecurrence) -> GuessResult {
    GuessResult {
        method: Method::PRecurrence,
        canonical: rec.render(),
        details: json!({"offset": rec.offset(), "order": rec.order(), "degree": rec.degree()}),
        payload: Payload::PRecurrence(rec),
        verified_through: 0,
    }
}

fn hypergeometric_result(form: HypergeometricForm, recurrence: PRecurrence) -> GuessResult {
    let list = |v: &[Rat]| v.iter().map(fmt_rat).collect::<Vec<_>>();
    GuessResult {
        method: Method::Hypergeometric,
        canonical: form.render(),
        details: json!({
            "upper": list(&form.upper),
            "lower": list(&form.lower),
            "argument": fmt_rat(&form.w),
            "first_term": fmt_rat(&form.t0),
            "recurrence": recurrence.render(),
        }),
        payload: Payload::Hypergeometric { form, recurrence },
        verified_through: 0,
    }
}

fn algebraic_result(rec: AlgebraicReconstruction, closed_form: Option<GfExpr>) -> GuessResult {
    GuessResult {
        method: Method::Algebraic,
        canonical: rec.equation.render(),
        details: json!({
            "degree": rec.degree,
            "recurrence": rec.recurrence.render(),
            "first_point_polynomial": rec.per_point.first().map(|p| p.render("x")),
            "annihilation_terms": rec.series.order(),
            "closed_form": closed_form.as_ref().map(GfExpr::render),
        }),
        payload: Payload::Algebraic {
            reconstruction: Box::new(rec),
            closed_form,
        },
        verified_through: 0,
    }
}

fn euler_result(p: EulerProduct) -> GuessResult {
    GuessResult {
        method: Method::Euler,
        canonical: p.render(),
        details: json!({
            "exponents": p.exponents.iter().map(fmt_rat).collect::<Vec<_>>(),
            "pattern": p.pattern.as_ref().map(|x| x.render()),
        }),
        payload: Payload::Euler(p),
        verified_through: 0,
    }
}

fn lookup_result(m: MatchResult, name: Option<String>) -> GuessResult {
    GuessResult {
        method: Method::Lookup,
        canonical: m.render(),
        details: json!({
            "id": m.id,
            "name": name,
            "chain": m.chain,
            "query_shift": m.query_shift,
            "record_shift": m.record_shift,
            "compared": m.compared,
        }),
        payload: Payload::Lookup(m),
        verified_through: 0,
    }
}

/// Re-parses each canonical string and re-checks it against the input.
struct Check<'a> {
    terms: &'a [BigInt],
    rats: &'a [Rat],
    offset: i64,
    db: Option<&'a SequenceDB>,
}

impl Check<'_> {
    fn finish(&self, mut r: GuessResult) -> Option<GuessResult> {
        r.verified_through = self.verify(&r)?;
        Some(r)
    }

    fn expands(&self, e: &GfExpr) -> bool {
        e.expand(self.rats.len()).is_ok_and(|s| matches_terms(&s, self.rats))
    }

    fn verify(&self, r: &GuessResult) -> Option<usize> {
        let n = self.rats.len();
        let ok = match &r.payload {
            Payload::Rational(f) | Payload::Transform(f) => {
                GfExpr::parse(&r.canonical).ok()? == f.candidate && self.expands(&f.candidate)
            }
            Payload::PRecurrence(rec) => {
                PRecurrence::parse(&r.canonical, self.offset).ok()? == *rec && verify_precurrence(rec, self.rats)
            }
            Payload::Hypergeometric { form, .. } => {
                HypergeometricForm::parse(&r.canonical).ok()? == *form && form.expand(n).coeffs() == self.rats
            }
            Payload::Algebraic {
                reconstruction,
                closed_form,
            } => {
                let eq = &reconstruction.equation;
                AlgebraicEquation::parse(&r.canonical).ok()? == *eq
                    && verify_annihilation(eq, &TruncatedSeries::new(self.rats.to_vec()))
                    && verify_annihilation(eq, &reconstruction.series)
                    && reconstruction.series.coeffs()[..n] == *self.rats
                    && closed_form
                        .as_ref()
                        .map_or(true, |c| GfExpr::parse(&c.render()).is_ok_and(|p| p == *c) && self.expands(c))
            }
            Payload::Euler(p) => {
                EulerProduct::parse(&r.canonical).ok()? == *p
                    && euler_expand(&p.exponents, n).coeffs() == self.rats
            }
            Payload::Lookup(m) => {
                let (id, chain) = MatchResult::parse(&r.canonical).ok()?;
                id == m.id && chain == m.chain && m.replay(self.terms, self.db?)
            }
        };
        ok.then(|| match &r.payload {
            Payload::Lookup(m) => m.compared,
            _ => n,
        })
    }
}

/// Re-renders `expr` in canonical form for `method`.
pub fn canonicalize(method: Method, expr: &str, offset: i64) -> Result<String> {
    Ok(match method {
        Method::Rational | Method::Transform => GfExpr::parse(expr)?.render(),
        Method::PRecurrence => PRecurrence::parse(expr, offset)?.render(),
        Method::Hypergeometric => HypergeometricForm::parse(expr)?.render(),
        Method::Algebraic => AlgebraicEquation::parse(expr)?.render(),
        Method::Euler => EulerProduct::parse(expr)?.render(),
        Method::Lookup => {
            let (id, chain) = MatchResult::parse(expr)?;
            format!("lookup({id}; chain=[{}])", chain.join(","))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub method: Method,
    /// Expected expression, already canonical.
    pub expected: String,
    pub terms: Vec<BigInt>,
    pub offset: i64,
}

/// Lines `id <TAB> method <TAB> expression <TAB> terms`; the terms field
/// accepts an `offset=N` prefix. Blank lines and `#` comments are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let mut line_start = 0;
    for line in text.split_inclusive('\n') {
        let here = line_start;
        line_start += line.len();
        let body = line.trim_end_matches(['\n', '\r']);
        if body.trim().is_empty() || body.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = body.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                position: here,
                message: format!("expected 4 tab-separated fields, found {}", fields.len()),
            });
        }
        let at = |i: usize| here + fields[..i].iter().map(|f| f.len() + 1).sum::<usize>();
        let shift = |e: Error, base: usize| match e {
            Error::Parse { position, message } => Error::Parse {
                position: base + position,
                message,
            },
            other => other,
        };
        let method: Method = fields[1].trim().parse().map_err(|e| shift(e, at(1)))?;
        let input = parse_sequence_input(fields[3]).map_err(|e| shift(e, at(3)))?;
        let expected = canonicalize(method, fields[2].trim(), input.offset).map_err(|e| shift(e, at(2)))?;
        out.push(CorpusEntry {
            id: fields[0].trim().to_string(),
            method,
            expected,
            terms: input.terms,
            offset: input.offset,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusOutcome {
    pub id: String,
    pub method: Method,
    pub expected: String,
    /// Results of the entry's method, in pipeline order.
    pub found: Vec<String>,
    pub error: Option<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusSummary {
    pub outcomes: Vec<CorpusOutcome>,
}

impl CorpusSummary {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.ok).count()
    }

    pub fn failed(&self) -> usize {
        self.outcomes.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    /// `(method, passed, total)` in pipeline order, methods with entries only.
    pub fn per_method(&self) -> Vec<(Method, usize, usize)> {
        Method::ALL
            .into_iter()
            .filter_map(|m| {
                let of: Vec<_> = self.outcomes.iter().filter(|o| o.method == m).collect();
                (!of.is_empty()).then(|| (m, of.iter().filter(|o| o.ok).count(), of.len()))
            })
            .collect()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for o in &self.outcomes {
            if o.ok {
                let _ = writeln!(s, "ok    {}\t{}\t{}", o.id, o.method, o.expected);
            } else {
                let _ = writeln!(s, "FAIL  {}\t{}\texpected {}", o.id, o.method, o.expected);
                match &o.error {
                    Some(e) => {
                        let _ = writeln!(s, "      error: {e}");
                    }
                    None if o.found.is_empty() => {
                        let _ = writeln!(s, "      found: nothing");
                    }
                    None => {
                        for f in &o.found {
                            let _ = writeln!(s, "      found: {f}");
                        }
                    }
                }
            }
        }
        for (m, ok, total) in self.per_method() {
            let _ = writeln!(s, "{m}: {ok}/{total}");
        }
        let _ = writeln!(s, "total: {}/{} passed", self.passed(), self.outcomes.len());
        s
    }
}

fn check_entry(e: &CorpusEntry, opts: &FitOptions<'_>) -> CorpusOutcome {
    let mut outcome = CorpusOutcome {
        id: e.id.clone(),
        method: e.method,
        expected: e.expected.clone(),
        found: Vec::new(),
        error: None,
        ok: false,
    };
    match run_fit(&e.terms, e.offset, opts) {
        Ok(fit) => {
            outcome.found = fit
                .results
                .into_iter()
                .filter(|r| r.method == e.method)
                .map(|r| r.canonical)
                .collect();
            outcome.ok = outcome.found.contains(&e.expected);
        }
        Err(err) => outcome.error = Some(err.to_string()),
    }
    outcome
}

/// Runs every entry through [`run_fit`], spreading entries over threads;
/// outcomes keep corpus order.
pub fn run_corpus(entries: &[CorpusEntry], opts: &FitOptions<'_>) -> CorpusSummary {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(entries.len().max(1));
    let mut slots: Vec<Option<CorpusOutcome>> = vec![None; entries.len()];
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        let Some(e) = entries.get(i) else { break };
                        done.push((i, check_entry(e, opts)));
                    }
                    done
                })
            })
            .collect();
        for h in handles {
            for (i, o) in h.join().expect("corpus worker panicked") {
                slots[i] = Some(o);
            }
        }
    });
    CorpusSummary {
        outcomes: slots.into_iter().map(|o| o.expect("every entry processed")).collect(),
    }
}

pub fn run_corpus_file(path: impl AsRef<Path>, opts: &FitOptions<'_>) -> Result<CorpusSummary> {
    let text = std::fs::read_to_string(path)?;
    Ok(run_corpus(&parse_corpus(&text)?, opts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn input_parsing() {
        let a = parse_sequence_input("1,1,2,3,5,8").unwrap();
        assert_eq!((a.terms, a.offset), (ints(&[1, 1, 2, 3, 5, 8]), 0));
        let b = parse_sequence_input("offset=1 1 2 6 24").unwrap();
        assert_eq!((b.terms, b.offset), (ints(&[1, 2, 6, 24]), 1));
        match parse_sequence_input("1, 2, x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_sequence_input("1 offset=2").is_err());
    }

    #[test]
    fn methods_list() {
        assert_eq!(Method::parse_list("euler,rational").unwrap(), vec![Method::Rational, Method::Euler]);
        assert_eq!(Method::parse_list("all").unwrap().len(), 7);
        assert!(Method::parse_list("magic").is_err());
    }

    #[test]
    fn fibonacci_is_rational_only() {
        let fib = ints(&[1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610]);
        let out = run_fit(&fib, 0, &FitOptions::default()).unwrap();
        let got: Vec<String> = out.results.iter().map(ToString::to_string).collect();
        assert_eq!(got, vec!["rational: (1)/(1 - z - z^2)".to_string()]);
        assert_eq!(out.results[0].verified_through, 15);
    }

    #[test]
    fn primes_report_size_gate() {
        let primes = ints(&[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71]);
        let opts = FitOptions {
            methods: vec![Method::Rational],
            ..FitOptions::default()
        };
        let out = run_fit(&primes, 0, &opts).unwrap();
        assert!(out.results.is_empty());
        assert!(out.notes[0].contains("size criterion"), "{:?}", out.notes);
    }

    #[test]
    fn too_short() {
        assert!(matches!(
            run_fit(&ints(&[1, 2, 3]), 0, &FitOptions::default()),
            Err(Error::InsufficientTerms(_))
        ));
    }

    #[test]
    fn corpus_parse_and_falsified_entry() {
        let text = "# comment\nA000045\trational\t(1)/(1-z-z^2)\t1,1,2,3,5,8,13,21,34,55,89,144\n\
                    BAD\trational\t(1)/(1 - 2*z)\t1,1,2,3,5,8,13,21,34,55,89,144\n";
        let entries = parse_corpus(text).unwrap();
        assert_eq!(entries[0].expected, "(1)/(1 - z - z^2)");
        let opts = FitOptions {
            methods: vec![Method::Rational],
            ..FitOptions::default()
        };
        let s = run_corpus(&entries, &opts);
        assert_eq!((s.passed(), s.failed()), (1, 1));
        assert!(s.render().contains("FAIL  BAD"));
        assert!(run_corpus(&[], &opts).all_passed());
        assert!(matches!(parse_corpus("a\tb\n"), Err(Error::Parse { position: 0, .. })));
    }
}
