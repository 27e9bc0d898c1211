//! Command-line front end.
//!
//! Every subcommand builds one complete document before anything is
//! written, so a failure never leaves a partial table behind.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::charring::{CharRing, PowerTracePoly, SymCharacter, SymplecticMatrix};
use crate::error::{Error, Result};
use crate::formulas::{self, AMethod, IdentityReport};
use crate::lieoracle::{LieOracle, DEFAULT_BUDGET};
use crate::rational::format_rational;
use crate::spdecomp::{self, Decomposer};

#[derive(Parser, Debug)]
#[command(
    name = "surface-lie",
    version,
    about = "Symplectic characters of surface-group Lie algebras"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,

    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rep {
    Laurent,
    PowerTrace,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Binomial,
    Recurrence,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityArg {
    Log,
    Pbw,
    Labute,
    All,
}

#[derive(Args, Debug)]
pub struct GenusDegree {
    #[arg(long)]
    pub genus: usize,
    #[arg(long)]
    pub degree: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions of the graded pieces in degrees 1..=N.
    Dims {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        max_degree: u64,
    },
    /// The character of one graded piece.
    Character {
        #[command(flatten)]
        at: GenusDegree,
        #[arg(long, value_enum, default_value_t = Rep::Laurent)]
        rep: Rep,
    },
    /// Irreducible multiplicities of one graded piece.
    Decompose {
        #[command(flatten)]
        at: GenusDegree,
    },
    /// The coefficient A_N of -log(1 - t q1 + t^2).
    ACoeff {
        #[command(flatten)]
        at: GenusDegree,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Check the generating-function identities up to an order.
    Verify {
        #[arg(value_enum)]
        identity: IdentityArg,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        order: usize,
    },
    /// Compare the closed form with the brute-force Lie algebra.
    Oracle {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        max_degree: usize,
        /// JSON file {"genus": g, "matrix": [[...]]}; may be repeated.
        #[arg(long = "matrix")]
        matrices: Vec<PathBuf>,
        /// Largest allowed (2g)^N.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

/// A fully computed result in all three output shapes.
pub struct Document {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub plain: String,
    /// False when a verification failed.
    pub pass: bool,
}

impl Document {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = self.header.join(",");
                s.push('\n');
                for r in &self.rows {
                    s.push_str(&r.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Plain => self.plain.clone(),
        }
    }
}

fn aligned_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, f) in widths.iter_mut().zip(r) {
            *w = (*w).max(f.len());
        }
    }
    let line = |fields: &[String]| {
        let cells: Vec<String> = fields
            .iter()
            .zip(&widths)
            .map(|(f, w)| format!("{f:>w$}"))
            .collect();
        cells.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

fn strings<const K: usize>(xs: [&str; K]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn dims(genus: usize, max_degree: u64) -> Result<Document> {
    let pieces = formulas::chi_pieces(genus, max_degree)?;
    let rows: Vec<Vec<String>> = pieces
        .iter()
        .enumerate()
        .map(|(i, chi)| vec![(i + 1).to_string(), format_rational(&chi.dimension())])
        .collect();
    let header = strings(["degree", "dimension"]);
    let json = json!({
        "genus": genus,
        "dimensions": rows
            .iter()
            .map(|r| json!({"degree": i64_of(&r[0]), "dimension": r[1]}))
            .collect::<Vec<_>>(),
    });
    Ok(Document {
        plain: aligned_table(&header, &rows),
        json,
        header,
        rows,
        pass: true,
    })
}

fn i64_of(s: &str) -> i64 {
    s.parse().expect("degree column is an integer")
}

/// Columns `q1..qD` holding exponents, then the coefficient.
fn power_trace_table(p: &PowerTracePoly) -> (Vec<String>, Vec<Vec<String>>) {
    let d = p.max_symbol().max(1);
    let mut header: Vec<String> = (1..=d).map(|i| format!("q{i}")).collect();
    header.push("coefficient".into());
    let rows = p
        .to_serial()
        .into_iter()
        .map(|t| {
            let mut r = vec!["0".to_string(); d as usize];
            for [s, e] in t.monomial {
                r[s as usize - 1] = e.to_string();
            }
            r.push(t.coefficient);
            r
        })
        .collect();
    (header, rows)
}

fn laurent_table(chi: &SymCharacter) -> (Vec<String>, Vec<Vec<String>>) {
    let mut header: Vec<String> = (1..=chi.genus()).map(|i| format!("x{i}")).collect();
    header.push("coefficient".into());
    let rows = chi
        .to_serial()
        .into_iter()
        .map(|t| {
            let mut r: Vec<String> = t.exponents.iter().map(|e| e.to_string()).collect();
            r.push(t.coefficient);
            r
        })
        .collect();
    (header, rows)
}

/// JSON document for a Laurent character; also used to check round trips.
pub fn laurent_json(degree: u64, chi: &SymCharacter) -> Value {
    json!({
        "genus": chi.genus(),
        "degree": degree,
        "representation": "laurent",
        "terms": chi.to_serial(),
    })
}

pub fn power_trace_json(degree: u64, p: &PowerTracePoly) -> Value {
    json!({
        "genus": p.genus(),
        "degree": degree,
        "representation": "power-trace",
        "terms": p.to_serial(),
    })
}

pub fn character(genus: usize, degree: u64, rep: Rep) -> Result<Document> {
    let p = formulas::chi_piece(genus, degree)?;
    Ok(match rep {
        Rep::PowerTrace => {
            let (header, rows) = power_trace_table(&p);
            Document {
                json: power_trace_json(degree, &p),
                plain: format!("{p}\n"),
                header,
                rows,
                pass: true,
            }
        }
        Rep::Laurent => {
            let chi = p.to_laurent();
            let (header, rows) = laurent_table(&chi);
            Document {
                json: laurent_json(degree, &chi),
                plain: format!("{chi}\n"),
                header,
                rows,
                pass: true,
            }
        }
    })
}

pub fn decompose(genus: usize, degree: u64) -> Result<Document> {
    let chi = formulas::chi_piece(genus, degree)?.to_laurent();
    let dec = Decomposer::new();
    let parts = dec.decompose(&chi)?;
    if dec.reconstruct(genus, &parts)? != chi {
        return Err(Error::InternalConsistency(format!(
            "decomposition of chi_{degree} does not reconstruct it"
        )));
    }
    let terms = spdecomp::to_serial(&parts)?;
    let mut header: Vec<String> = (1..=genus).map(|i| format!("l{i}")).collect();
    header.push("multiplicity".into());
    let rows: Vec<Vec<String>> = terms
        .iter()
        .map(|t| {
            let mut r: Vec<String> = t.partition.iter().map(|x| x.to_string()).collect();
            r.push(t.multiplicity.to_string());
            r
        })
        .collect();
    let mut plain = String::new();
    for (lambda, m) in &parts {
        writeln!(plain, "{lambda}  {m}").expect("writing to a String");
    }
    Ok(Document {
        json: json!({"genus": genus, "degree": degree, "terms": terms}),
        header,
        rows,
        plain,
        pass: true,
    })
}

pub fn a_coeff(genus: usize, degree: u64, method: MethodArg) -> Result<Document> {
    let (p, name, equal) = match method {
        MethodArg::Binomial => (
            formulas::a_coeff(genus, degree, AMethod::Binomial)?,
            "binomial",
            None,
        ),
        MethodArg::Recurrence => (
            formulas::a_coeff(genus, degree, AMethod::Recurrence)?,
            "recurrence",
            None,
        ),
        MethodArg::Both => {
            let b = formulas::a_coeff(genus, degree, AMethod::Binomial)?;
            let r = formulas::a_coeff(genus, degree, AMethod::Recurrence)?;
            let eq = b == r;
            (b, "both", Some(eq))
        }
    };
    let (header, rows) = power_trace_table(&p);
    let mut json = json!({
        "genus": genus,
        "degree": degree,
        "method": name,
        "terms": p.to_serial(),
    });
    let mut plain = format!("{p}\n");
    if let Some(eq) = equal {
        json["equal"] = json!(eq);
        plain.push_str(if eq {
            "methods agree\n"
        } else {
            "methods DISAGREE\n"
        });
    }
    Ok(Document {
        json,
        header,
        rows,
        plain,
        pass: equal.unwrap_or(true),
    })
}

pub fn verify(identity: IdentityArg, genus: usize, order: usize) -> Result<Document> {
    type Check = fn(usize, usize) -> Result<IdentityReport>;
    let checks: Vec<Check> = match identity {
        IdentityArg::Log => vec![formulas::verify_log_identity],
        IdentityArg::Pbw => vec![formulas::verify_pbw],
        IdentityArg::Labute => vec![formulas::verify_labute_series],
        IdentityArg::All => vec![
            formulas::verify_log_identity,
            formulas::verify_pbw,
            formulas::verify_labute_series,
        ],
    };
    let reports = checks
        .par_iter()
        .map(|f| f(genus, order))
        .collect::<Result<Vec<_>>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let header = strings(["identity", "genus", "order", "pass", "first_failure_degree"]);
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.identity.clone(),
                r.genus.to_string(),
                r.order.to_string(),
                u8::from(r.pass).to_string(),
                r.first_failure_degree
                    .map_or(String::new(), |d| d.to_string()),
            ]
        })
        .collect();
    let mut plain = String::new();
    for r in &reports {
        let verdict = match r.first_failure_degree {
            None => "PASS".to_string(),
            Some(d) => format!("FAIL at degree {d}"),
        };
        writeln!(
            plain,
            "{:<7} genus {} order {}  {verdict}",
            r.identity, r.genus, r.order
        )
        .expect("writing to a String");
    }
    Ok(Document {
        json: json!({"pass": pass, "reports": reports}),
        header,
        rows,
        plain,
        pass,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    genus: usize,
    matrix: Vec<Vec<i64>>,
}

/// Reads `{"genus": g, "matrix": [[...]]}` and validates it.
pub fn read_matrix_file(path: &Path) -> Result<SymplecticMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::InvalidArgument(format!("cannot read matrix file {}: {e}", path.display()))
    })?;
    let file: MatrixFile = serde_json::from_str(&text).map_err(|e| {
        Error::InvalidArgument(format!("malformed matrix file {}: {e}", path.display()))
    })?;
    SymplecticMatrix::from_rows(file.genus, file.matrix).map_err(|e| match e {
        Error::InvalidMatrix(m) => Error::InvalidMatrix(format!("{}: {m}", path.display())),
        other => other,
    })
}

#[derive(Serialize)]
struct OracleDegree {
    degree: usize,
    formula_dimension: String,
    oracle_dimension: String,
    traces: Vec<crate::lieoracle::TraceCheck>,
    pass: bool,
}

pub fn oracle(
    genus: usize,
    max_degree: usize,
    matrix_files: &[PathBuf],
    budget: u64,
) -> Result<Document> {
    let mut matrices = vec![SymplecticMatrix::identity(genus)?];
    for path in matrix_files {
        let m = read_matrix_file(path)?;
        if m.genus() != genus {
            return Err(Error::IncompatibleOperands(format!(
                "{} holds a genus-{} matrix, expected genus {genus}",
                path.display(),
                m.genus()
            )));
        }
        matrices.push(m);
    }
    let o = LieOracle::build(genus, max_degree, budget)?;
    let degrees = (1..=max_degree)
        .into_par_iter()
        .map(|n| {
            let formula_dim = formulas::chi_piece(genus, n as u64)?.dimension();
            let oracle_dim = o.quotient_dimension(n)?;
            let report = o.verify_character(n, &matrices)?;
            let dims_match = formula_dim == crate::rational::int(oracle_dim as i64);
            Ok(OracleDegree {
                degree: n,
                formula_dimension: format_rational(&formula_dim),
                oracle_dimension: oracle_dim.to_string(),
                pass: dims_match && report.pass,
                traces: report.checks,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = degrees.iter().all(|d| d.pass);
    let header = strings([
        "degree",
        "formula_dimension",
        "oracle_dimension",
        "matrices",
        "pass",
    ]);
    let rows: Vec<Vec<String>> = degrees
        .iter()
        .map(|d| {
            vec![
                d.degree.to_string(),
                d.formula_dimension.clone(),
                d.oracle_dimension.clone(),
                d.traces.len().to_string(),
                u8::from(d.pass).to_string(),
            ]
        })
        .collect();
    let mut plain = aligned_table(&header, &rows);
    for d in &degrees {
        for t in d.traces.iter().filter(|t| !t.pass) {
            writeln!(
                plain,
                "degree {} matrix {}: oracle trace {} but formula gives {}",
                d.degree, t.matrix, t.oracle, t.formula
            )
            .expect("writing to a String");
        }
    }
    Ok(Document {
        json: json!({
            "genus": genus,
            "max_degree": max_degree,
            "pass": pass,
            "degrees": degrees,
        }),
        header,
        rows,
        plain,
        pass,
    })
}

pub fn execute(command: &Command) -> Result<Document> {
    match command {
        Command::Dims { genus, max_degree } => dims(*genus, *max_degree),
        Command::Character { at, rep } => character(at.genus, at.degree, *rep),
        Command::Decompose { at } => decompose(at.genus, at.degree),
        Command::ACoeff { at, method } => a_coeff(at.genus, at.degree, *method),
        Command::Verify {
            identity,
            genus,
            order,
        } => verify(*identity, *genus, *order),
        Command::Oracle {
            genus,
            max_degree,
            matrices,
            budget,
        } => oracle(*genus, *max_degree, matrices, *budget),
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code: 0 on success, 1 if a verification failed, 2 on bad input.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let doc = match execute(&cli.command) {
        Ok(doc) => doc,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let text = doc.render(cli.format);
    let written = match &cli.output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    if doc.pass {
        0
    } else {
        1
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
