use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use seqgf::bivariate::{bivariate_fit, bivariate_guess, generate_tableau, Bounds, TableauSpec, Triangle};
use seqgf::euler::{inverse_euler, ExponentPattern};
use seqgf::exact::{fmt_rat, FixedDecimal};
use seqgf::holonomic::{extend_precurrence, guess_precurrence, to_rationals};
use seqgf::lattice::{algdep, reconstruct_algebraic, solve_closed_form, AlgdepConfig};
use seqgf::lookup::{findhard, load_db, SequenceDB, BUILTIN_DB};
use seqgf::pipeline::{
    parse_corpus, parse_sequence_input, run_corpus, run_fit, FitOptions, Method, SequenceInput, BUILTIN_CORPUS,
};
use seqgf::Error;

#[derive(Parser)]
#[command(name = "seqgf", version, about = "Guess generating functions of integer sequences, exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the method pipeline on a sequence
    Fit(Common),
    /// Guess a recurrence with polynomial coefficients
    Recur(Common),
    /// Minimal polynomial of a real number, or an algebraic equation for a sequence
    Algdep(AlgdepArgs),
    /// Exponents of the Euler product of a sequence
    Euler(Common),
    /// Generate or fit triangular arrays
    Table(TableArgs),
    /// Search the sequence database, also under transformations
    Lookup(Common),
    /// Check every entry of a verification corpus
    Corpus(CorpusArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// Terms, comma- or space-separated, optionally starting with offset=N
    #[arg(long, conflicts_with = "stdin")]
    terms: Option<String>,
    /// Read the terms from standard input
    #[arg(long)]
    stdin: bool,
    /// Index of the first term
    #[arg(long)]
    offset: Option<i64>,
    /// Methods to run, comma-separated, or `all`
    #[arg(long, default_value = "all")]
    methods: String,
    /// Largest polynomial degree in recurrences
    #[arg(long, default_value_t = 4)]
    dmax: usize,
    /// Largest recurrence order
    #[arg(long, default_value_t = 5)]
    kmax: usize,
    /// Decimal digits at each evaluation point
    #[arg(long, default_value_t = 118)]
    precision: u32,
    /// Evaluation points are 1/(M + i)
    #[arg(long, default_value_t = 100)]
    base_point: i64,
    /// Number of evaluation points
    #[arg(long, default_value_t = 12)]
    points: usize,
    /// Series length for the algebraic method; for `recur`, print this many terms
    #[arg(long)]
    extend: Option<usize>,
    /// Sequence database in stripped format
    #[arg(long)]
    db: Option<PathBuf>,
    /// One JSON object per result
    #[arg(long)]
    json: bool,
    /// Stop after the first result
    #[arg(long)]
    first_only: bool,
}

#[derive(Args)]
struct AlgdepArgs {
    /// A decimal number to recognize instead of a sequence
    #[arg(long)]
    value: Option<String>,
    /// Degree to try; by default 1 to 8 in turn
    #[arg(long)]
    degree: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TableArgs {
    /// Generate the tableau with parameters a,b,c,r,s,t
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    spec: Option<Vec<i64>>,
    /// Rows to generate
    #[arg(long, default_value_t = 10)]
    rows: usize,
    /// Triangle file, one row per line
    #[arg(long, conflicts_with_all = ["spec", "stdin"])]
    file: Option<PathBuf>,
    /// Read the triangle from standard input
    #[arg(long, conflicts_with = "spec")]
    stdin: bool,
    /// Degree bounds lt,mt,lz,mz; scanned when absent
    #[arg(long, value_delimiter = ',')]
    bounds: Option<Vec<usize>>,
    /// Largest degree scanned for each bound
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus file; the shipped corpus when absent
    path: Option<PathBuf>,
    /// Database for lookup entries; the shipped one when absent
    #[arg(long)]
    db: Option<PathBuf>,
}

/// Exit status: input and usage problems are 2, "nothing found" is 1.
enum Failure {
    Input(String),
    NotFound,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Fit(c) => fit(&c),
        Command::Recur(c) => recur(&c),
        Command::Algdep(a) => algdep_cmd(&a),
        Command::Euler(c) => euler(&c),
        Command::Table(t) => table(&t),
        Command::Lookup(c) => lookup(&c),
        Command::Corpus(c) => corpus(&c),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::NotFound) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Failure::Input(e.to_string()))?;
    Ok(s)
}

fn read_input(c: &Common) -> Result<SequenceInput, Failure> {
    let text = match (&c.terms, c.stdin) {
        (Some(t), _) => t.clone(),
        (None, true) => read_stdin()?,
        (None, false) => return Err(Failure::Input("give the terms with --terms or --stdin".into())),
    };
    let mut input = parse_sequence_input(&text)?;
    if let Some(o) = c.offset {
        input.offset = o;
    }
    Ok(input)
}

fn algdep_config(c: &Common) -> AlgdepConfig {
    AlgdepConfig {
        precision: c.precision,
        base_point: c.base_point,
        points: c.points,
        terms: c.extend.unwrap_or(AlgdepConfig::default().terms),
        dmax: c.dmax,
        kmax: c.kmax,
        ..AlgdepConfig::default()
    }
}

fn open_db(path: &Option<PathBuf>) -> Result<SequenceDB, Failure> {
    let db = match path {
        Some(p) => load_db(p)?,
        None => SequenceDB::parse(BUILTIN_DB),
    };
    for (line, why) in db.skipped() {
        eprintln!("warning: database line {line} skipped: {why}");
    }
    Ok(db)
}

fn found(any: bool) -> Outcome {
    if any {
        Ok(())
    } else {
        Err(Failure::NotFound)
    }
}

fn fit(c: &Common) -> Outcome {
    let input = read_input(c)?;
    let db = match &c.db {
        Some(_) => Some(open_db(&c.db)?),
        None => None,
    };
    let opts = FitOptions {
        methods: Method::parse_list(&c.methods)?,
        dmax: c.dmax,
        kmax: c.kmax,
        algdep: algdep_config(c),
        db: db.as_ref(),
        first_only: c.first_only,
    };
    let out = run_fit(&input.terms, input.offset, &opts)?;
    for r in &out.results {
        if c.json {
            println!("{}", r.to_json());
        } else {
            println!("{r}");
        }
    }
    if out.results.is_empty() {
        for n in &out.notes {
            eprintln!("note: {n}");
        }
    }
    found(!out.results.is_empty())
}

fn recur(c: &Common) -> Outcome {
    let input = read_input(c)?;
    let rats = to_rationals(&input.terms);
    let Some(rec) = guess_precurrence(&rats, input.offset, c.dmax, c.kmax)? else {
        return Err(Failure::NotFound);
    };
    let extended = match c.extend {
        Some(t) => Some(extend_precurrence(&rec, &input.terms, t.max(input.terms.len()))?),
        None => None,
    };
    if c.json {
        let ext: Option<Vec<String>> = extended.map(|v| v.iter().map(ToString::to_string).collect());
        println!(
            "{}",
            json!({
                "method": "precurrence",
                "expression": rec.render(),
                "verified_through": input.terms.len(),
                "details": {"offset": rec.offset(), "order": rec.order(), "degree": rec.degree(), "extension": ext},
            })
        );
    } else {
        println!("precurrence: {}", rec.render());
        if let Some(v) = extended {
            let s: Vec<String> = v.iter().map(ToString::to_string).collect();
            println!("{}", s.join(","));
        }
    }
    Ok(())
}

fn algdep_cmd(a: &AlgdepArgs) -> Outcome {
    let c = &a.common;
    if let Some(v) = &a.value {
        let x: FixedDecimal = v.parse()?;
        let p = c.precision.min(x.precision());
        let degrees = match a.degree {
            Some(d) => d..=d,
            None => 1..=8,
        };
        let poly = degrees.into_iter().find_map(|d| algdep(&x, d, p));
        return match poly {
            Some(poly) => {
                if c.json {
                    println!("{}", json!({"polynomial": poly.render("x"), "precision": p}));
                } else {
                    println!("{}", poly.render("x"));
                }
                Ok(())
            }
            None => Err(Failure::NotFound),
        };
    }
    let input = read_input(c)?;
    let rats = to_rationals(&input.terms);
    let Some(rec) = reconstruct_algebraic(&rats, input.offset, &algdep_config(c))? else {
        return Err(Failure::NotFound);
    };
    let closed = solve_closed_form(&rec.equation, &rec.series).map(|e| e.render());
    if c.json {
        println!(
            "{}",
            json!({
                "method": "algebraic",
                "expression": rec.equation.render(),
                "verified_through": rec.series.order(),
                "details": {
                    "degree": rec.degree,
                    "recurrence": rec.recurrence.render(),
                    "per_point": rec.per_point.iter().map(|p| p.render("x")).collect::<Vec<_>>(),
                    "closed_form": closed,
                },
            })
        );
    } else {
        println!("algebraic: {}", rec.equation.render());
        println!("recurrence: {}", rec.recurrence.render());
        if let Some(p) = rec.per_point.first() {
            println!("first point: {}", p.render("x"));
        }
        if let Some(cf) = closed {
            println!("closed form: {cf}");
        }
    }
    Ok(())
}

fn euler(c: &Common) -> Outcome {
    let input = read_input(c)?;
    let rats = to_rationals(&input.terms);
    let Some(p) = seqgf::euler::euler_guess(&rats) else {
        // say why: non-integral exponents, or a bad first term
        match inverse_euler(&rats) {
            Err(e) => return Err(e.into()),
            Ok(raw) => {
                let c: Vec<String> = raw.exponents.iter().map(fmt_rat).collect();
                eprintln!("note: exponents are not all integers: {}", c.join(","));
                return Err(Failure::NotFound);
            }
        }
    };
    if c.json {
        println!(
            "{}",
            json!({
                "method": "euler",
                "expression": p.render(),
                "verified_through": input.terms.len(),
                "details": {
                    "exponents": p.exponents.iter().map(fmt_rat).collect::<Vec<_>>(),
                    "pattern": p.pattern.as_ref().map(ExponentPattern::render),
                },
            })
        );
    } else {
        println!("euler: {}", p.render());
    }
    Ok(())
}

fn table(t: &TableArgs) -> Outcome {
    if t.spec.as_ref().is_some_and(|s| s.len() != 6) {
        return Err(Failure::Input("--spec takes six integers a,b,c,r,s,t".into()));
    }
    if t.bounds.as_ref().is_some_and(|b| b.len() != 4) {
        return Err(Failure::Input("--bounds takes four degrees lt,mt,lz,mz".into()));
    }
    let tri = if let Some(s) = &t.spec {
        let spec = TableauSpec::new(s[0], s[1], s[2], s[3], s[4], s[5])?;
        let tri = generate_tableau(&spec, t.rows.max(1));
        if !t.json {
            print!("{tri}");
        }
        tri
    } else if let Some(path) = &t.file {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(e.to_string()))?;
        Triangle::parse(&text)?
    } else if t.stdin {
        Triangle::parse(&read_stdin()?)?
    } else {
        return Err(Failure::Input("give --spec, --file or --stdin".into()));
    };
    let fitted = match &t.bounds {
        Some(b) => {
            let b = Bounds::new(b[0], b[1], b[2], b[3]);
            bivariate_fit(&tri, b).map(|g| (b, g))
        }
        None => bivariate_guess(&tri, t.max_degree),
    };
    let Some((b, g)) = fitted else {
        eprintln!("note: no rational generating function within the bounds");
        return Err(Failure::NotFound);
    };
    if t.json {
        println!(
            "{}",
            json!({
                "method": "table",
                "expression": g.render(),
                "verified_through": tri.len(),
                "details": {"bounds": [b.lt, b.mt, b.lz, b.mz]},
            })
        );
    } else {
        println!("table: {}", g.render());
    }
    Ok(())
}

fn lookup(c: &Common) -> Outcome {
    let input = read_input(c)?;
    seqgf::lookup::check_query(&input.terms)?;
    let db = open_db(&c.db)?;
    let mut matches = findhard(&input.terms, &db);
    if c.first_only {
        matches.truncate(1);
    }
    for m in &matches {
        let name = db.get(&m.id).and_then(|r| r.name.clone());
        if c.json {
            println!(
                "{}",
                json!({
                    "method": "lookup",
                    "expression": m.render(),
                    "verified_through": m.compared,
                    "details": {
                        "id": m.id, "name": name, "chain": m.chain,
                        "query_shift": m.query_shift, "record_shift": m.record_shift,
                    },
                })
            );
        } else {
            match name {
                Some(n) => println!("lookup: {}  # {n}", m.render()),
                None => println!("lookup: {}", m.render()),
            }
        }
    }
    found(!matches.is_empty())
}

fn corpus(a: &CorpusArgs) -> Outcome {
    let text = match &a.path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Input(e.to_string()))?,
        None => BUILTIN_CORPUS.to_string(),
    };
    let entries = parse_corpus(&text)?;
    let db = open_db(&a.db)?;
    let opts = FitOptions {
        db: Some(&db),
        ..FitOptions::default()
    };
    let summary = run_corpus(&entries, &opts);
    print!("{}", summary.render());
    if summary.all_passed() {
        Ok(())
    } else {
        Err(Failure::NotFound)
    }
}
