//! `netmap`: command-line front end for NET map presentation diagrams.
//!
//! Exit status: 0 success, 1 invalid diagram or distinct maps, 2 parse or
//! usage error, 3 undecided search or obstructed normalization.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use netmap_core::{
    degree, elementary_divisors, euclidean_equivalence, matrix_from_pullback_data, matrix_twist,
    normalize_divisors, parse, portrait, preimage_slope, projective_canonical, render_svg,
    serialize, translation_twist, validate, EquivalenceVerdict, Error, ExtendedSlope, IntMat2,
    IntVec2, PresentationDiagram, RenderOptions,
};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Map, Number, Value};

const OK: u8 = 0;
const INVALID: u8 = 1;
const USAGE: u8 = 2;
const UNDECIDED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "netmap",
    version,
    about = "Work with NET map presentation diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check diagrams for validity (exit 1 if any is invalid)
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Degree, elementary divisors, critical values and dynamic portrait
    Info {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Print JSON: an object for one file, an array for several
        #[arg(long)]
        json: bool,
    },
    /// Pull a slope P/Q (or `inf`) back and print it with its local degree
    Slope {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        slope: ExtendedSlope,
    },
    /// Rebuild the matrix, up to sign, from the pullbacks of slopes 0 and inf
    MatrixFromSlopes {
        /// Pullback of slope 0
        #[arg(allow_hyphen_values = true)]
        slope0: ExtendedSlope,
        /// Degree on the pullback of slope 0
        d: BigInt,
        /// Pullback of slope inf
        #[arg(allow_hyphen_values = true)]
        slope_inf: ExtendedSlope,
        /// Degree on the pullback of slope inf
        e: BigInt,
    },
    /// Transform a diagram by a matrix of positive determinant
    Twist {
        file: PathBuf,
        /// Row-major entries a,b,c,d of [[a,b],[c,d]]
        #[arg(long, allow_hyphen_values = true)]
        matrix: Matrix,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Shift the translation term by the class of a vector mod 2
    Translate {
        file: PathBuf,
        /// Components x,y in standard coordinates
        #[arg(long, allow_hyphen_values = true)]
        vector: Vector,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Conjugate so that m divides lambda1 and n divides lambda2 (exit 3 if obstructed)
    Normalize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for an affine conjugacy (exit 0 equivalent, 1 distinct, 3 unknown)
    Equiv {
        first: PathBuf,
        second: PathBuf,
        /// Largest absolute entry of the conjugating matrix to try
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Draw a diagram as SVG
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Pixels per lattice unit
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(1..))]
        cell: u32,
        /// Blank cells around the fundamental domain
        #[arg(long, default_value_t = 1)]
        margin: u32,
        #[arg(long)]
        no_grid: bool,
        /// Add id attributes naming dots and pushes
        #[arg(long)]
        labels: bool,
    },
    /// Print the projective canonical form (the lesser of D and -D)
    Canon { file: PathBuf },
}

#[derive(Clone, Debug)]
struct Matrix(IntMat2);

impl FromStr for Matrix {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let e = integers(s, 4)?;
        let [a, b, c, d]: [BigInt; 4] = e.try_into().expect("length checked");
        Ok(Matrix(IntMat2::from_rows(a, b, c, d)))
    }
}

#[derive(Clone, Debug)]
struct Vector(IntVec2);

impl FromStr for Vector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let e = integers(s, 2)?;
        let [x, y]: [BigInt; 2] = e.try_into().expect("length checked");
        Ok(Vector(IntVec2::new(x, y)))
    }
}

fn integers(s: &str, n: usize) -> Result<Vec<BigInt>, String> {
    let v: Vec<BigInt> = s
        .split(',')
        .map(|t| t.trim().parse::<BigInt>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("expected {n} comma-separated integers, got `{s}`"))?;
    if v.len() != n {
        return Err(format!(
            "expected {n} comma-separated integers, got {}",
            v.len()
        ));
    }
    Ok(v)
}

/// An error carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn load(path: &Path) -> Result<PresentationDiagram, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(USAGE, format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::new(USAGE, format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> Result<PresentationDiagram, Failure> {
    let d = load(path)?;
    let report = validate(&d);
    if !report.is_valid() {
        return Err(Failure::new(
            INVALID,
            format!(
                "{}: invalid diagram\n{}",
                path.display(),
                report.to_string().trim_end()
            ),
        ));
    }
    Ok(d)
}

/// Writes `text` to `path` through a temporary file in the same directory.
fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| Failure::new(USAGE, format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(text.as_bytes()).map_err(fail)?;
    tmp.flush().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(p) => write_atomic(p, text)?,
        None => print!("{text}"),
    }
    Ok(OK)
}

fn number(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

fn point(v: &IntVec2) -> Value {
    json!([number(&v.x), number(&v.y)])
}

fn info_json(path: &Path, d: &PresentationDiagram) -> Result<Value, Failure> {
    let p = portrait(d).map_err(|e| Failure::new(INVALID, e.to_string()))?;
    let dv = elementary_divisors(&d.basis()).map_err(|e| Failure::new(INVALID, e.to_string()))?;
    let mut obj = Map::new();
    obj.insert("file".into(), json!(path.display().to_string()));
    obj.insert("degree".into(), number(&degree(d)));
    obj.insert("m".into(), number(&dv.m));
    obj.insert("n".into(), number(&dv.n));
    obj.insert("is_net".into(), json!(p.is_net()));
    obj.insert("postcritical_count".into(), json!(p.postcritical.len()));
    obj.insert(
        "cv_classes".into(),
        Value::Array(p.cv_classes.iter().map(|c| json!([c.0, c.1])).collect()),
    );
    obj.insert(
        "edges".into(),
        Value::Array(
            (0..4)
                .map(|i| {
                    json!({
                        "from": point(&p.points[i].rep),
                        "to": point(&p.points[p.edges[i]].rep),
                    })
                })
                .collect(),
        ),
    );
    Ok(Value::Object(obj))
}

fn info_text(path: &Path, d: &PresentationDiagram) -> Result<String, Failure> {
    let p = portrait(d).map_err(|e| Failure::new(INVALID, e.to_string()))?;
    let dv = elementary_divisors(&d.basis()).map_err(|e| Failure::new(INVALID, e.to_string()))?;
    let cv: Vec<String> = p.cv_classes.iter().map(|c| c.to_string()).collect();
    let mut out = format!(
        "{}\ndegree: {}\nelementary divisors: m = {}, n = {}\ncritical value classes: {}\nportrait (* marks pushed critical values):\n",
        path.display(),
        degree(d),
        dv.m,
        dv.n,
        cv.join(" ")
    );
    for line in p.to_string().lines() {
        out.push_str(&format!("  {line}\n"));
    }
    out.push_str(&format!(
        "postcritical points: {}\nNET map: {}\n",
        p.postcritical.len(),
        if p.is_net() { "yes" } else { "no" }
    ));
    Ok(out)
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Validate { files } => {
            let results: Vec<Result<String, Failure>> = files
                .par_iter()
                .map(|f| {
                    let d = load(f)?;
                    let r = validate(&d);
                    if r.is_valid() {
                        Ok(format!("{}: valid\n", f.display()))
                    } else {
                        let mut s = format!("{}: invalid\n", f.display());
                        for v in &r.violations {
                            s.push_str(&format!("  {}: {}\n", v.code, v.message));
                        }
                        Err(Failure::new(INVALID, s))
                    }
                })
                .collect();
            let mut code = OK;
            for r in results {
                match r {
                    Ok(s) => print!("{s}"),
                    Err(f) if f.code == INVALID => {
                        print!("{}", f.message);
                        code = code.max(INVALID);
                    }
                    Err(f) => {
                        eprintln!("error: {}", f.message);
                        code = code.max(USAGE);
                    }
                }
            }
            Ok(code)
        }
        Command::Info { files, json } => {
            let results: Vec<Result<(String, Option<Value>), Failure>> = files
                .par_iter()
                .map(|f| {
                    let d = load_valid(f)?;
                    if json {
                        Ok((String::new(), Some(info_json(f, &d)?)))
                    } else {
                        Ok((info_text(f, &d)?, None))
                    }
                })
                .collect();
            let mut code = OK;
            let mut values = Vec::new();
            for (k, r) in results.into_iter().enumerate() {
                match r {
                    Ok((text, value)) => {
                        if let Some(v) = value {
                            values.push(v);
                        } else {
                            if k > 0 {
                                println!();
                            }
                            print!("{text}");
                        }
                    }
                    Err(f) => {
                        eprintln!("error: {}", f.message);
                        code = code.max(f.code);
                    }
                }
            }
            if json {
                let v = if files.len() == 1 {
                    values.pop().unwrap_or(Value::Null)
                } else {
                    Value::Array(values)
                };
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializable")
                );
            }
            Ok(code)
        }
        Command::Slope { file, slope } => {
            let d = load_valid(&file)?;
            let (s, k) = preimage_slope(&d.basis(), &slope)
                .map_err(|e| Failure::new(INVALID, e.to_string()))?;
            println!("slope {s}, degree {k}");
            Ok(OK)
        }
        Command::MatrixFromSlopes {
            slope0,
            d,
            slope_inf,
            e,
        } => {
            let m = matrix_from_pullback_data(&slope0, &d, &slope_inf, &e)
                .map_err(|err| Failure::new(INVALID, err.to_string()))?;
            println!("matrix = {m}");
            println!("lambda1 = {}", m.col1);
            println!("lambda2 = {}", m.col2);
            Ok(OK)
        }
        Command::Twist {
            file,
            matrix,
            output,
        } => {
            let d = load_valid(&file)?;
            let t = matrix_twist(&d, &matrix.0).map_err(|e| match e {
                Error::NonPositiveDeterminant => Failure::new(
                    USAGE,
                    format!("matrix {} must have positive determinant", matrix.0),
                ),
                other => Failure::new(INVALID, other.to_string()),
            })?;
            emit(&serialize(&t), output.as_deref())
        }
        Command::Translate {
            file,
            vector,
            output,
        } => {
            let d = load_valid(&file)?;
            emit(
                &serialize(&translation_twist(&d, &vector.0)),
                output.as_deref(),
            )
        }
        Command::Normalize { file, output } => {
            let d = load_valid(&file)?;
            match normalize_divisors(&d) {
                Ok(n) => emit(&serialize(&n), output.as_deref()),
                Err(e @ Error::NormalizationObstructed { .. }) => {
                    Err(Failure::new(UNDECIDED, e.to_string()))
                }
                Err(e) => Err(Failure::new(INVALID, e.to_string())),
            }
        }
        Command::Equiv {
            first,
            second,
            bound,
        } => {
            let (a, b) = (load_valid(&first)?, load_valid(&second)?);
            let verdict = euclidean_equivalence(&a, &b, bound);
            println!("{verdict}");
            Ok(match verdict {
                EquivalenceVerdict::Equivalent { .. } => OK,
                EquivalenceVerdict::Distinct(_) => INVALID,
                EquivalenceVerdict::Unknown => UNDECIDED,
            })
        }
        Command::Render {
            file,
            output,
            cell,
            margin,
            no_grid,
            labels,
        } => {
            let d = load(&file)?;
            let opts = RenderOptions {
                cell,
                margin,
                grid: !no_grid,
                labels,
            };
            write_atomic(&output, &render_svg(&d, &opts))?;
            Ok(OK)
        }
        Command::Canon { file } => {
            let d = load(&file)?;
            emit(&serialize(&projective_canonical(&d)), None)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
