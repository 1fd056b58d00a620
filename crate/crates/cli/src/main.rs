//! `qhilb`: closed-form and brute-force Hilbert series of preprojective and
//! quiver Heisenberg algebras.
//!
//! Exit codes: 0 success, 1 input error, 2 oracle cap exceeded, 3 verification
//! mismatch.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use quiver_hilbert::dynkin::NakayamaData;
use quiver_hilbert::formulas::{default_truncation, preprojective_closed_form};
use quiver_hilbert::{
    build_presentation, classify, graded_quotient_dims_with, nakayama_matrix, parse_quiver, root_data,
    AlgebraKind, Field, FormulaError, IntMatrix, OracleConfig, OracleError, PresentationKind, Quiver,
    WeightVector,
};

#[derive(Parser)]
#[command(name = "qhilb", version, about = "Hilbert series of preprojective and quiver Heisenberg algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dynkin / extended Dynkin / wild verdict.
    Classify(Common),
    /// Positive roots, Coxeter number and Nakayama permutation of a Dynkin quiver.
    Roots(Common),
    /// Closed-form series.
    Series(SeriesArgs),
    /// Brute-force series from a presentation.
    Oracle(OracleArgs),
    /// Compare the oracle with the closed form over one or more fields.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    quiver: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    algebra: AlgebraKind,
    /// Truncation degree; defaults to max(2h, 12) for Dynkin quivers.
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, default_value = "q")]
    field: Field,
    /// Weight vector, comma separated.
    #[arg(long)]
    v: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    series: SeriesArgs,
    /// Presentation used for `qha`.
    #[arg(long, value_enum, default_value_t = QhaPresentation::Z)]
    presentation: QhaPresentation,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    algebra: AlgebraKind,
    #[arg(long)]
    degree: Option<usize>,
    /// Comma separated fields, e.g. `q,fp:2,fp:5`.
    #[arg(long, default_value = "q", value_delimiter = ',')]
    fields: Vec<Field>,
    #[arg(long)]
    v: Option<String>,
    /// Test hook: replace the Nakayama permutation (`identity` or 1-based images, comma separated).
    #[arg(long)]
    force_p: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QhaPresentation {
    Z,
    Eta,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Oracle(OracleError::InvalidCap(_)) => 1,
            CliError::Oracle(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

fn input(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

fn load_quiver(path: &PathBuf) -> Result<Quiver, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse_quiver(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn truncation(q: &Quiver, degree: Option<usize>) -> Result<usize, CliError> {
    degree
        .or_else(|| default_truncation(q))
        .ok_or_else(|| input("--degree is required for non-Dynkin quivers"))
}

fn weight(q: &Quiver, v: Option<&str>, field: Field) -> Result<Option<WeightVector>, CliError> {
    v.map(|text| WeightVector::parse(text, field, q.vertex_count()).map_err(input))
        .transpose()
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|x| Value::Number(x.to_string().parse().expect("integers are JSON numbers")))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn coefficients_report(r: usize, coeffs: &[IntMatrix], format: Format) -> String {
    match format {
        Format::Json => {
            let doc = json!({
                "r": r,
                "truncation": coeffs.len() - 1,
                "coefficients": coeffs.iter().map(matrix_json).collect::<Vec<_>>(),
            });
            format!("{doc}\n")
        }
        Format::Text => {
            let mut out = String::new();
            for (d, m) in coeffs.iter().enumerate() {
                let _ = writeln!(out, "deg {d}: {m}");
            }
            out
        }
    }
}

fn cmd_classify(args: &Common) -> Result<String, CliError> {
    let q = load_quiver(&args.quiver)?;
    let class = classify(&q);
    Ok(match args.format {
        Format::Text => format!("{class}\n"),
        Format::Json => {
            let ty = class.dynkin_type().map(|t| t.to_string());
            let verdict = match class {
                quiver_hilbert::QuiverClass::Dynkin { .. } => "Dynkin",
                quiver_hilbert::QuiverClass::ExtendedDynkin => "ExtendedDynkin",
                quiver_hilbert::QuiverClass::Wild => "Wild",
            };
            format!("{}\n", json!({ "class": verdict, "type": ty }))
        }
    })
}

fn cmd_roots(args: &Common) -> Result<String, CliError> {
    let q = load_quiver(&args.quiver)?;
    let class = classify(&q);
    let rd = root_data(&q).map_err(input)?;
    let nak = nakayama_matrix(&q).map_err(input)?;
    let images: Vec<usize> = nak.permutation.iter().map(|i| i + 1).collect();
    Ok(match args.format {
        Format::Json => {
            let doc = json!({
                "class": class.to_string(),
                "coxeter_number": rd.coxeter_number,
                "positive_roots": rd.positive_roots,
                "nakayama_permutation": images,
                "nakayama_matrix": matrix_json(&nak.matrix),
            });
            format!("{doc}\n")
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "class: {class}");
            let _ = writeln!(out, "coxeter number: {}", rd.coxeter_number);
            let _ = writeln!(out, "positive roots ({}):", rd.positive_roots.len());
            for d in &rd.positive_roots {
                let parts: Vec<String> = d.iter().map(i64::to_string).collect();
                let _ = writeln!(out, "  ({})", parts.join(","));
            }
            let parts: Vec<String> = images.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "nakayama permutation: {}", parts.join(","));
            let _ = writeln!(out, "P = {}", nak.matrix);
            out
        }
    })
}

fn cmd_series(args: &SeriesArgs) -> Result<String, CliError> {
    let q = load_quiver(&args.common.quiver)?;
    let n = truncation(&q, args.degree)?;
    let v = weight(&q, args.v.as_deref(), args.field)?;
    let s = args.algebra.series(&q, v.as_ref(), n).map_err(|e| match e {
        FormulaError::WeightRequired => input("--v is required for qha"),
        other => input(other),
    })?;
    Ok(coefficients_report(q.vertex_count(), s.coefficients(), args.common.format))
}

fn presentation_kind(algebra: AlgebraKind, qha: QhaPresentation) -> Result<PresentationKind, CliError> {
    match (algebra, qha) {
        (AlgebraKind::Preprojective, _) => Ok(PresentationKind::PreprojectivePerVertex),
        (AlgebraKind::Qha, QhaPresentation::Z) => Ok(PresentationKind::QhaZ),
        (AlgebraKind::Qha, QhaPresentation::Eta) => Ok(PresentationKind::QhaEta),
        (other, _) => Err(input(format!("no oracle presentation for `{other}` (use preproj or qha)"))),
    }
}

fn run_oracle(
    q: &Quiver,
    kind: PresentationKind,
    field: Field,
    v: Option<&WeightVector>,
    n: usize,
    config: &OracleConfig,
) -> Result<Vec<IntMatrix>, CliError> {
    let pres = build_presentation(kind, q, field, v).map_err(|e| match e {
        quiver_hilbert::PresentationError::MissingWeight => input("--v is required for qha"),
        other => input(other),
    })?;
    Ok(graded_quotient_dims_with(&pres, n, config)?)
}

fn cmd_oracle(args: &OracleArgs) -> Result<String, CliError> {
    let s = &args.series;
    let q = load_quiver(&s.common.quiver)?;
    let n = truncation(&q, s.degree)?;
    let kind = presentation_kind(s.algebra, args.presentation)?;
    let v = weight(&q, s.v.as_deref(), s.field)?;
    let config = OracleConfig::from_env()?;
    let dims = run_oracle(&q, kind, s.field, v.as_ref(), n, &config)?;
    Ok(coefficients_report(q.vertex_count(), &dims, s.common.format))
}

fn forced_nakayama(q: &Quiver, spec: &str) -> Result<NakayamaData, CliError> {
    let r = q.vertex_count();
    let images: Vec<usize> = if spec == "identity" {
        (0..r).collect()
    } else {
        spec.split(',')
            .map(|s| match s.trim().parse::<usize>() {
                Ok(i) if (1..=r).contains(&i) => Ok(i - 1),
                _ => Err(input(format!("invalid --force-p entry `{s}`"))),
            })
            .collect::<Result<_, _>>()?
    };
    let mut seen = vec![false; r];
    if images.len() != r || images.iter().any(|&i| std::mem::replace(&mut seen[i], true)) {
        return Err(input(format!("--force-p `{spec}` is not a permutation of 1..{r}")));
    }
    Ok(NakayamaData::from_permutation(images))
}

struct Mismatch {
    field: Field,
    degree: usize,
    block: (usize, usize),
    expected: String,
    got: String,
}

fn cmd_verify(args: &VerifyArgs) -> Result<String, CliError> {
    let q = load_quiver(&args.common.quiver)?;
    let n = truncation(&q, args.degree)?;
    let kind = presentation_kind(args.algebra, QhaPresentation::Z)?;
    if args.force_p.is_some() && args.algebra != AlgebraKind::Preprojective {
        return Err(input("--force-p only applies to preproj"));
    }
    let config = OracleConfig::from_env()?;
    let mut mismatches = Vec::new();
    for &field in &args.fields {
        let v = weight(&q, args.v.as_deref(), field)?;
        let expected = match &args.force_p {
            Some(spec) => {
                let nak = forced_nakayama(&q, spec)?;
                let h = root_data(&q).map_err(input)?.coxeter_number;
                preprojective_closed_form(&q.adjacency(), Some((&nak.matrix, h)), n)
            }
            None => args.algebra.series(&q, v.as_ref(), n).map_err(|e| match e {
                FormulaError::WeightRequired => input("--v is required for qha"),
                other => input(format!("over {field}: {other}")),
            })?,
        };
        let got = run_oracle(&q, kind, field, v.as_ref(), n, &config)?;
        let first = (0..=n).find(|&d| &got[d] != expected.coefficient(d));
        if let Some(degree) = first {
            let (e, g) = (expected.coefficient(degree), &got[degree]);
            let r = q.vertex_count();
            let block = (0..r * r)
                .map(|t| (t / r, t % r))
                .find(|&(i, j)| e.get(i, j) != g.get(i, j))
                .expect("matrices differ somewhere");
            mismatches.push(Mismatch {
                field,
                degree,
                block,
                expected: e.get(block.0, block.1).to_string(),
                got: g.get(block.0, block.1).to_string(),
            });
        }
    }
    let report = match args.common.format {
        Format::Json => {
            let fields: Vec<Value> = args
                .fields
                .iter()
                .map(|f| match mismatches.iter().find(|m| m.field == *f) {
                    None => json!({ "field": f.to_string(), "match": true }),
                    Some(m) => json!({
                        "field": f.to_string(),
                        "match": false,
                        "degree": m.degree,
                        "block": [m.block.0 + 1, m.block.1 + 1],
                        "expected": m.expected,
                        "got": m.got,
                    }),
                })
                .collect();
            format!("{}\n", json!({ "truncation": n, "fields": fields }))
        }
        Format::Text => {
            let mut out = String::new();
            for f in &args.fields {
                match mismatches.iter().find(|m| m.field == *f) {
                    None => {
                        let _ = writeln!(out, "{f}: match through degree {n}");
                    }
                    Some(m) => {
                        let _ = writeln!(
                            out,
                            "{f}: mismatch at degree {}, block ({},{}): closed form {}, oracle {}",
                            m.degree,
                            m.block.0 + 1,
                            m.block.1 + 1,
                            m.expected,
                            m.got
                        );
                    }
                }
            }
            if mismatches.is_empty() {
                out.push_str("all coefficients match\n");
            }
            out
        }
    };
    if mismatches.is_empty() {
        Ok(report)
    } else {
        print!("{report}");
        let m = &mismatches[0];
        Err(CliError::Mismatch(format!("mismatch over {} at degree {}", m.field, m.degree)))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; --help and --version succeed
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    let result = match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Roots(a) => cmd_roots(a),
        Command::Series(a) => cmd_series(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
