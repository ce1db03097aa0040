//! polynorm: exact Laurent-norm computations for multivariate Laurent
//! polynomials, driven by Newton-polytope geometry.
//!
//! Output is exact and machine-readable: every rational is printed as an
//! integer or "p/q" string, never as a float, and identical invocations
//! produce byte-identical output.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use polynorm::lattice;
use polynorm::norm::{self, BallDescription, Factorization, NormBall, SpecializedNorm};
use polynorm::parser;
use polynorm::poly::LaurentPolynomial;
use polynorm::polytope::{self, HalfSpace};
use polynorm::DualVector;

const FORMAT_VERSION: &str = "polynorm/1";

const EXIT_USAGE: u8 = 2;
const EXIT_ZERO_POLY: u8 = 3;
const EXIT_MONOMIAL_BALL: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

#[derive(Parser)]
#[command(
    name = "polynorm",
    version,
    about = "Exact Laurent norms, unit balls and essential-variable reductions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Supremum of phi(alpha - beta) over support pairs.
    Def,
    /// Width of the Newton polytope in direction phi.
    Width,
    /// Degree span of the single-variable specialization (integer phi).
    Specialize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Laurent norm of a dual vector.
    Norm {
        /// Polynomial expression, or @FILE to read it from a file.
        poly: String,
        /// Comma-separated rational entries, e.g. 1,-1/2,3.
        #[arg(long)]
        phi: String,
        /// Ordered variable universe; inferred lexicographically if absent.
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "def")]
        method: Method,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute the reduced norm unit ball (vertices and half-spaces).
    Ball {
        poly: String,
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        /// Force the symmetric-polynomial route and cross-check it against
        /// the general construction.
        #[arg(long)]
        symmetric_fastpath: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Ambient dimension cap for the facet enumeration.
        #[arg(long, default_value_t = polytope::DEFAULT_MAX_DIM)]
        max_dim: usize,
    },
    /// Essential-variable reduction: lattice basis, degenerate directions
    /// and the reduced polynomial.
    Reduce {
        poly: String,
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Per-factor norms and the decomposition total, verified against the
    /// norm of the product.
    Decompose {
        /// Factors as POLY or POLY^MULT, e.g. "(t1-1)^2".
        factors: Vec<String>,
        #[arg(long)]
        phi: String,
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

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

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("polynorm: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Norm {
            poly,
            phi,
            vars,
            method,
            format,
        } => cmd_norm(&poly, &phi, vars, method, format),
        Command::Ball {
            poly,
            vars,
            symmetric_fastpath,
            format,
            max_dim,
        } => cmd_ball(&poly, vars, symmetric_fastpath, format, max_dim),
        Command::Reduce { poly, vars, format } => cmd_reduce(&poly, vars, format),
        Command::Decompose {
            factors,
            phi,
            vars,
            format,
        } => cmd_decompose(&factors, &phi, vars, format),
    }
}

/// An argument of the form @FILE reads the polynomial text from the file.
fn substitute_file(arg: &str) -> Result<String, Failure> {
    if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot read {path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn parse_poly(
    source: &str,
    vars: Option<&[String]>,
) -> Result<(LaurentPolynomial, Vec<String>), Failure> {
    let refs: Option<Vec<&str>> = vars.map(|v| v.iter().map(|s| s.as_str()).collect());
    parser::parse(source, refs.as_deref())
        .map_err(|e| Failure::new(EXIT_USAGE, format!("parse error: {e}")))
}

fn parse_phi(arg: &str, expected_len: usize) -> Result<DualVector, Failure> {
    let entries: Vec<BigRational> = arg
        .split(',')
        .map(|s| {
            polytope::parse_rational(s)
                .ok_or_else(|| Failure::new(EXIT_USAGE, format!("invalid rational entry {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    if entries.len() != expected_len {
        return Err(Failure::new(
            EXIT_USAGE,
            format!(
                "phi has {} entries but the polynomial has {} variables",
                entries.len(),
                expected_len
            ),
        ));
    }
    Ok(entries)
}

fn norm_error(e: norm::NormError) -> Failure {
    let code = match e {
        norm::NormError::ZeroPolynomial => EXIT_ZERO_POLY,
        norm::NormError::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    };
    Failure::new(code, e.to_string())
}

fn vector_text(v: &[BigRational]) -> String {
    let entries: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", entries.join(","))
}

fn vector_json(v: &[BigRational]) -> Value {
    json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn int_vector_text(v: &[num_bigint::BigInt]) -> String {
    let entries: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", entries.join(","))
}

fn halfspace_text(h: &HalfSpace) -> String {
    format!("{}<={}", int_vector_text(&h.normal), h.offset)
}

fn header_lines(command: &str, vars: &[String], input: &str) -> Vec<String> {
    vec![
        format!("format: {FORMAT_VERSION}"),
        format!("command: {command}"),
        format!("vars: {}", vars.join(",")),
        format!("input: {input}"),
    ]
}

fn header_json(command: &str, vars: &[String], input: &str) -> serde_json::Map<String, Value> {
    let mut map = serde_json::Map::new();
    map.insert("format".into(), json!(FORMAT_VERSION));
    map.insert("command".into(), json!(command));
    map.insert("vars".into(), json!(vars));
    map.insert("input".into(), json!(input));
    map
}

fn cmd_norm(
    poly_arg: &str,
    phi_arg: &str,
    vars: Option<Vec<String>>,
    method: Method,
    format: Format,
) -> Result<String, Failure> {
    let source = substitute_file(poly_arg)?;
    let (f, vars) = parse_poly(&source, vars.as_deref())?;
    let phi = parse_phi(phi_arg, f.num_vars())?;
    let input = f.to_text(&vars);

    let value = match method {
        Method::Def => Some(norm::norm_def(&f, &phi).map_err(norm_error)?),
        Method::Width => Some(norm::norm_geometric(&f, &phi).map_err(norm_error)?),
        Method::Specialize => match norm::norm_specialized(&f, &phi).map_err(norm_error)? {
            SpecializedNorm::Value(v) => Some(BigRational::from_integer(v)),
            SpecializedNorm::Indeterminate => None,
        },
    };
    let (alpha, beta) = norm::active_pair(&f, &phi).map_err(norm_error)?;
    let method_name = match method {
        Method::Def => "def",
        Method::Width => "width",
        Method::Specialize => "specialize",
    };
    let norm_text = match &value {
        Some(v) => v.to_string(),
        None => "indeterminate".to_string(),
    };

    match format {
        Format::Text => {
            let mut lines = header_lines("norm", &vars, &input);
            lines.push(format!("method: {method_name}"));
            lines.push(format!("phi: {}", vector_text(&phi)));
            lines.push(format!("norm: {norm_text}"));
            lines.push(format!("active_alpha: {}", int_vector_text(&alpha.0)));
            lines.push(format!("active_beta: {}", int_vector_text(&beta.0)));
            Ok(lines.join("\n"))
        }
        Format::Json => {
            let mut map = header_json("norm", &vars, &input);
            map.insert("method".into(), json!(method_name));
            map.insert("phi".into(), vector_json(&phi));
            map.insert("norm".into(), json!(norm_text));
            map.insert(
                "active_alpha".into(),
                json!(alpha.0.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            );
            map.insert(
                "active_beta".into(),
                json!(beta.0.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            );
            Ok(Value::Object(map).to_string())
        }
    }
}

fn build_ball(
    f: &LaurentPolynomial,
    symmetric_fastpath: bool,
    max_dim: usize,
) -> Result<NormBall, Failure> {
    let direct = norm::reduced_ball_capped(f, max_dim).map_err(norm_error)?;
    let direct = match direct {
        BallDescription::Ball(b) => b,
        BallDescription::WholeDualSpace { .. } => {
            return Err(Failure::new(
                EXIT_MONOMIAL_BALL,
                "norm identically zero; unit ball is the whole dual space",
            ));
        }
    };
    if symmetric_fastpath {
        let fast = norm::symmetric_ball_capped(f, max_dim).map_err(norm_error)?;
        let mismatch = match fast {
            BallDescription::Ball(b) => {
                b.reduced_ball().vertices() != direct.reduced_ball().vertices()
                    || b.reduced_ball().facets() != direct.reduced_ball().facets()
            }
            BallDescription::WholeDualSpace { .. } => true,
        };
        if mismatch {
            return Err(Failure::new(
                EXIT_INTERNAL,
                "fast path disagrees with the general construction",
            ));
        }
    }
    Ok(direct)
}

fn cmd_ball(
    poly_arg: &str,
    vars: Option<Vec<String>>,
    symmetric_fastpath: bool,
    format: Format,
    max_dim: usize,
) -> Result<String, Failure> {
    let source = substitute_file(poly_arg)?;
    let (f, vars) = parse_poly(&source, vars.as_deref())?;
    let input = f.to_text(&vars);
    let ball = build_ball(&f, symmetric_fastpath, max_dim)?;
    let polytope = ball.reduced_ball();

    match format {
        Format::Text => {
            let mut lines = header_lines("ball", &vars, &input);
            lines.push(format!("essential_dim: {}", ball.essential_dim()));
            lines.push(format!("inessential_dim: {}", ball.inessential_dim()));
            lines.push(format!(
                "lattice_basis: {}",
                ball.reduction()
                    .basis()
                    .iter()
                    .map(|row| int_vector_text(row))
                    .collect::<Vec<_>>()
                    .join("; ")
            ));
            lines.push(format!(
                "vertices: {}",
                polytope
                    .vertices()
                    .iter()
                    .map(|v| vector_text(v))
                    .collect::<Vec<_>>()
                    .join("; ")
            ));
            lines.push(format!(
                "facets: {}",
                polytope
                    .facets()
                    .unwrap_or(&[])
                    .iter()
                    .map(halfspace_text)
                    .collect::<Vec<_>>()
                    .join("; ")
            ));
            if symmetric_fastpath {
                lines.push("symmetric_fastpath: verified".to_string());
            }
            Ok(lines.join("\n"))
        }
        Format::Json => {
            let mut map = header_json("ball", &vars, &input);
            map.insert("ball".into(), ball.to_json());
            if symmetric_fastpath {
                map.insert("symmetric_fastpath".into(), json!("verified"));
            }
            Ok(Value::Object(map).to_string())
        }
    }
}

fn cmd_reduce(
    poly_arg: &str,
    vars: Option<Vec<String>>,
    format: Format,
) -> Result<String, Failure> {
    let source = substitute_file(poly_arg)?;
    let (f, vars) = parse_poly(&source, vars.as_deref())?;
    let input = f.to_text(&vars);
    let reduction = lattice::reduce(&f).map_err(|e| Failure::new(EXIT_ZERO_POLY, e.to_string()))?;
    let annihilator = lattice::degenerate_directions(&reduction);
    let reduced = lattice::reduce_polynomial(&f, &reduction)
        .map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?;
    let reduced_vars: Vec<String> = (1..=reduction.essential_dim())
        .map(|i| format!("s{i}"))
        .collect();
    let reduced_text = reduced.to_text(&reduced_vars);

    match format {
        Format::Text => {
            let mut lines = header_lines("reduce", &vars, &input);
            lines.push(format!("essential_dim: {}", reduction.essential_dim()));
            lines.push(format!("inessential_dim: {}", reduction.inessential_dim()));
            lines.push(format!("base: {}", int_vector_text(&reduction.base().0)));
            lines.push(format!(
                "lattice_basis: {}",
                reduction
                    .basis()
                    .iter()
                    .map(|row| int_vector_text(row))
                    .collect::<Vec<_>>()
                    .join("; ")
            ));
            lines.push(format!(
                "annihilator: {}",
                annihilator
                    .iter()
                    .map(|v| vector_text(v))
                    .collect::<Vec<_>>()
                    .join("; ")
            ));
            lines.push(format!("reduced_vars: {}", reduced_vars.join(",")));
            lines.push(format!("reduced: {reduced_text}"));
            Ok(lines.join("\n"))
        }
        Format::Json => {
            let mut map = header_json("reduce", &vars, &input);
            map.insert("essential_dim".into(), json!(reduction.essential_dim()));
            map.insert("inessential_dim".into(), json!(reduction.inessential_dim()));
            map.insert(
                "base".into(),
                json!(reduction
                    .base()
                    .0
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()),
            );
            map.insert(
                "lattice_basis".into(),
                json!(reduction
                    .basis()
                    .iter()
                    .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>()),
            );
            map.insert(
                "annihilator".into(),
                json!(annihilator
                    .iter()
                    .map(|v| vector_json(v))
                    .collect::<Vec<_>>()),
            );
            map.insert("reduced_vars".into(), json!(reduced_vars));
            map.insert("reduced".into(), json!(reduced_text));
            Ok(Value::Object(map).to_string())
        }
    }
}

/// Split a trailing ^MULT (unsigned, at parenthesis depth zero) off a
/// factor argument. Anything else, including ^-k, is left to the
/// polynomial parser.
fn split_multiplicity(arg: &str) -> Result<(&str, u32), Failure> {
    let bytes = arg.as_bytes();
    let mut digits_start = bytes.len();
    while digits_start > 0 && bytes[digits_start - 1].is_ascii_digit() {
        digits_start -= 1;
    }
    if digits_start == bytes.len() || digits_start == 0 || bytes[digits_start - 1] != b'^' {
        return Ok((arg, 1));
    }
    let caret = digits_start - 1;
    let mut depth = 0i32;
    for &b in &bytes[..caret] {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {}
        }
    }
    if depth != 0 {
        return Ok((arg, 1));
    }
    let mult: u32 = arg[digits_start..]
        .parse()
        .map_err(|_| Failure::new(EXIT_USAGE, format!("invalid multiplicity in {arg:?}")))?;
    if mult == 0 {
        return Err(Failure::new(
            EXIT_USAGE,
            format!("multiplicity must be positive in {arg:?}"),
        ));
    }
    Ok((&arg[..caret], mult))
}

fn cmd_decompose(
    factor_args: &[String],
    phi_arg: &str,
    vars: Option<Vec<String>>,
    format: Format,
) -> Result<String, Failure> {
    if factor_args.is_empty() {
        return Err(Failure::new(EXIT_USAGE, "no factors given"));
    }
    let sources: Vec<String> = factor_args
        .iter()
        .map(|a| substitute_file(a))
        .collect::<Result<_, _>>()?;
    let split: Vec<(&str, u32)> = sources
        .iter()
        .map(|s| split_multiplicity(s))
        .collect::<Result<_, _>>()?;

    // Shared variable universe: declared, or inferred over all factors.
    let universe: Vec<String> = match vars {
        Some(v) => v,
        None => {
            let mut all: Vec<String> = Vec::new();
            for (base, _) in &split {
                let inferred = parser::infer_variables(base)
                    .map_err(|e| Failure::new(EXIT_USAGE, format!("parse error: {e}")))?;
                all.extend(inferred);
            }
            all.sort();
            all.dedup();
            all
        }
    };

    let mut factors: Vec<(LaurentPolynomial, u32)> = Vec::new();
    for (base, mult) in &split {
        let (f, _) = parse_poly(base, Some(&universe))?;
        if f.is_zero() {
            return Err(Failure::new(EXIT_ZERO_POLY, "zero polynomial factor"));
        }
        factors.push((f, *mult));
    }
    let phi = parse_phi(phi_arg, universe.len())?;

    let fact = Factorization::new(factors);
    let product = fact.product();
    let input = product.to_text(&universe);

    let mut per_factor: Vec<(String, u32, BigRational)> = Vec::new();
    let mut total = BigRational::from_integer(0.into());
    for (f, mult) in fact.factors() {
        let value = norm::norm_def(f, &phi).map_err(norm_error)?;
        total += BigRational::from_integer((*mult).into()) * &value;
        per_factor.push((f.to_text(&universe), *mult, value));
    }
    let direct = norm::norm_def(&product, &phi).map_err(norm_error)?;
    if total != direct {
        // The decomposition formula is a theorem; disagreement means a bug.
        return Err(Failure::new(
            EXIT_INTERNAL,
            format!("decomposition total {total} differs from direct norm {direct}"),
        ));
    }

    match format {
        Format::Text => {
            let mut lines = header_lines("decompose", &universe, &input);
            lines.push(format!("phi: {}", vector_text(&phi)));
            for (i, (text, mult, value)) in per_factor.iter().enumerate() {
                lines.push(format!("factor_{i}: mult={mult} norm={value} poly={text}"));
            }
            lines.push(format!("total: {total}"));
            lines.push(format!("direct: {direct}"));
            Ok(lines.join("\n"))
        }
        Format::Json => {
            let mut map = header_json("decompose", &universe, &input);
            map.insert("phi".into(), vector_json(&phi));
            map.insert(
                "factors".into(),
                json!(per_factor
                    .iter()
                    .map(|(text, mult, value)| json!({
                        "poly": text,
                        "multiplicity": mult,
                        "norm": value.to_string(),
                    }))
                    .collect::<Vec<_>>()),
            );
            map.insert("total".into(), json!(total.to_string()));
            map.insert("direct".into(), json!(direct.to_string()));
            Ok(Value::Object(map).to_string())
        }
    }
}
