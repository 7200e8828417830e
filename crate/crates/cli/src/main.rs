//! `sbv`: bidiagonal decompositions, solves and spectra of Said–Ball–
//! Vandermonde matrices from a node file.
//!
//! Exit codes: 0 success, 1 usage or format error, 2 invalid node set,
//! 3 numerical failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::json;

use sbv_core::bd::determinant_from_pivots;
use sbv_core::io::{self, BdDocument, ScalarText};
use sbv_core::oracle::{self, bd_norm_error, exact_determinant, exact_eigenvalues, exact_solve, neville_bd};
use sbv_core::tn_ops::relative_error;
use sbv_core::{
    build_matrix, decompose, determinant_closed_form, eigenvalues, interpolate, reconstruct, solve,
    BdFactorization, Error, Matrix, NodeSet, Rational, Scalar,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Decompose,
    Solve,
    Eig,
    Det,
    Interp,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Float,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "sbv", version, about = "Accurate linear algebra with Said–Ball–Vandermonde matrices")]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Node file: one scalar per line, strictly increasing in (0, 1).
    #[arg(long)]
    nodes: Option<PathBuf>,
    /// Right-hand side for `solve` and `verify`.
    #[arg(long)]
    rhs: Option<PathBuf>,
    /// Data values for `interp`.
    #[arg(long)]
    values: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Float)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    out: Format,
    /// Compare against the exact rational oracle (order ≤ 20).
    #[arg(long)]
    verify: bool,
    /// Sort the nodes instead of rejecting unsorted input.
    #[arg(long)]
    sort: bool,
    /// Reuse a BD array written by `decompose --out json`.
    #[arg(long = "bd-in")]
    bd_in: Option<PathBuf>,
    /// Oracle eigenvalue brackets are refined to relative width 10^-N.
    #[arg(long, default_value_t = 30)]
    tol_digits: u32,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Core(e) => match e {
                Error::EmptyNodes | Error::NodeOutOfRange { .. } | Error::NodesNotIncreasing { .. } => 2,
                Error::MalformedScalar(_)
                | Error::ZeroDenominator(_)
                | Error::Format(_)
                | Error::LengthMismatch { .. }
                | Error::IndexOutOfRange { .. }
                | Error::NotSquare { .. }
                | Error::InvalidBd(_)
                | Error::OracleSizeCap { .. } => 1,
                Error::DivisionByZero
                | Error::ExchangeRequired { .. }
                | Error::Singular
                | Error::NoConvergence { .. }
                | Error::ComplexPair { .. }
                | Error::NonPositiveEigenvalue { .. }
                | Error::NonFinite(_)
                | Error::NotSquarefree => 3,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn read_scalars(path: &Path) -> Outcome<Vec<Rational>> {
    io::parse_scalar_list(&read(path)?)
        .map_err(|e| Failure::Core(Error::Format(format!("{}: {e}", path.display()))))
}

fn required<'a>(path: &'a Option<PathBuf>, flag: &str, command: Command) -> Outcome<&'a Path> {
    path.as_deref()
        .ok_or_else(|| Failure::Usage(format!("{} requires --{flag}", command_name(command))))
}

fn command_name(c: Command) -> String {
    c.to_possible_value().expect("named").get_name().to_string()
}

fn convert<S: Scalar>(v: &[Rational]) -> Vec<S> {
    v.iter().map(S::from_rational).collect()
}

fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

/// Everything a command may need, loaded once.
struct Inputs<S> {
    exact_nodes: Option<NodeSet<Rational>>,
    nodes: Option<NodeSet<S>>,
    bd: BdFactorization<S>,
    /// Exact BD when it came from a file; the oracle then uses its matrix.
    exact_bd_in: Option<BdFactorization<Rational>>,
}

impl<S: ScalarText> Inputs<S> {
    fn load(cli: &Cli) -> Outcome<Self> {
        let exact_nodes = match &cli.nodes {
            Some(p) => {
                let v = read_scalars(p)?;
                Some(if cli.sort { NodeSet::sorted(v)? } else { NodeSet::new(v)? })
            }
            None => None,
        };
        let nodes = match &exact_nodes {
            Some(x) => Some(NodeSet::new(convert(x.as_slice()))?),
            None => None,
        };
        let (bd, exact_bd_in) = match (&cli.bd_in, &nodes) {
            (Some(p), _) => {
                let text = read(p)?;
                (io::bd_from_json::<S>(&text)?, Some(io::bd_from_json::<Rational>(&text)?))
            }
            (None, Some(n)) => (decompose(n), None),
            (None, None) => {
                return Err(Failure::Usage(format!(
                    "{} requires --nodes or --bd-in",
                    command_name(cli.command)
                )))
            }
        };
        if let Some(n) = &nodes {
            if n.order() != bd.order() {
                return Err(Error::LengthMismatch {
                    expected: n.order(),
                    actual: bd.order(),
                }
                .into());
            }
        }
        Ok(Inputs {
            exact_nodes,
            nodes,
            bd,
            exact_bd_in,
        })
    }

    fn need_nodes(&self, command: Command) -> Outcome<(&NodeSet<Rational>, &NodeSet<S>)> {
        match (&self.exact_nodes, &self.nodes) {
            (Some(e), Some(n)) => Ok((e, n)),
            _ => Err(Failure::Usage(format!("{} requires --nodes", command_name(command)))),
        }
    }

    /// The exact matrix the oracle certifies against, after the size check.
    fn exact_matrix(&self) -> Outcome<Matrix<Rational>> {
        oracle::check_size(self.bd.order())?;
        Ok(match (&self.exact_nodes, &self.exact_bd_in) {
            (Some(n), _) => build_matrix(n),
            (None, Some(bd)) => reconstruct(bd),
            (None, None) => unreachable!("inputs always carry nodes or a BD"),
        })
    }
}

fn tol(cli: &Cli) -> Rational {
    Rational::from_ratio(1, 10).powi(cli.tol_digits)
}

fn run(cli: &Cli) -> Outcome<String> {
    match cli.mode {
        Mode::Float => run_in::<f64>(cli),
        Mode::Exact => run_in::<Rational>(cli),
    }
}

fn run_in<S: ScalarText>(cli: &Cli) -> Outcome<String> {
    if cli.bd_in.is_some() && !matches!(cli.command, Command::Solve | Command::Eig) {
        return Err(Failure::Usage("--bd-in applies to solve and eig only".into()));
    }
    let inputs = Inputs::<S>::load(cli)?;
    let json = cli.out == Format::Json;
    match cli.command {
        Command::Decompose => {
            let bd = &inputs.bd;
            let error = if cli.verify {
                let (_, exact) = neville_bd(&inputs.exact_matrix()?)?;
                Some(bd_norm_error(bd, &exact)?)
            } else {
                None
            };
            if json {
                let mut doc = BdDocument::from_bd(bd);
                doc.relative_error = error;
                Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
            } else {
                let mut out = io::bd_to_text(bd);
                if let Some(e) = error {
                    writeln!(out, "relative_error {}", sci(e)).unwrap();
                }
                Ok(out)
            }
        }
        Command::Solve => {
            let b = read_scalars(required(&cli.rhs, "rhs", cli.command)?)?;
            let mut report = solve(&inputs.bd, &convert::<S>(&b))?;
            if cli.verify {
                report = report.with_reference(&exact_solve(&inputs.exact_matrix()?, &b)?)?;
            }
            Ok(if json {
                io::solve_to_json(&report) + "\n"
            } else {
                io::solve_to_text(&report)
            })
        }
        Command::Eig => {
            let mut spectrum = eigenvalues(&inputs.bd)?;
            if cli.verify {
                let roots = exact_eigenvalues(&inputs.exact_matrix()?, &tol(cli))?;
                spectrum = spectrum.with_reference(&roots)?;
            }
            Ok(if json {
                io::spectrum_to_json(&spectrum) + "\n"
            } else {
                io::spectrum_to_text(&spectrum)
            })
        }
        Command::Det => {
            let (_, nodes) = inputs.need_nodes(cli.command)?;
            let closed = determinant_closed_form(nodes);
            let product = determinant_from_pivots(&inputs.bd);
            let errors = if cli.verify {
                let exact = exact_determinant(&inputs.exact_matrix()?)?;
                let e = |x: &S| relative_error(std::slice::from_ref(x), std::slice::from_ref(&exact));
                Some((e(&closed)?, e(&product)?))
            } else {
                None
            };
            if json {
                let mut v = json!({
                    "determinant": closed.to_text(),
                    "pivot_product": product.to_text(),
                });
                if let Some((a, b)) = errors {
                    v["relative_error"] = json!(a);
                    v["pivot_product_relative_error"] = json!(b);
                }
                Ok(serde_json::to_string_pretty(&v).expect("serializable") + "\n")
            } else {
                let mut out = format!("{}\npivot_product {}\n", closed.to_text(), product.to_text());
                if let Some((a, b)) = errors {
                    writeln!(out, "relative_error {}\npivot_product_relative_error {}", sci(a), sci(b)).unwrap();
                }
                Ok(out)
            }
        }
        Command::Interp => {
            let (exact_nodes, nodes) = inputs.need_nodes(cli.command)?;
            let values = read_scalars(required(&cli.values, "values", cli.command)?)?;
            let p = interpolate(nodes, &convert::<S>(&values))?;
            let scale = values.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
            let residual = exact_nodes
                .as_slice()
                .iter()
                .zip(&values)
                .map(|(t, v)| (p.eval(&S::from_rational(t)).to_f64() - v.to_f64()).abs())
                .fold(0.0, f64::max);
            let residual = if scale > 0.0 { residual / scale } else { residual };
            let error = if cli.verify {
                Some(relative_error(p.coefficients(), &exact_solve(&inputs.exact_matrix()?, &values)?)?)
            } else {
                None
            };
            let coefficients: Vec<String> = p.coefficients().iter().map(ScalarText::to_text).collect();
            if json {
                let mut v = json!({ "coefficients": coefficients, "max_residual": residual });
                if let Some(e) = error {
                    v["relative_error"] = json!(e);
                }
                Ok(serde_json::to_string_pretty(&v).expect("serializable") + "\n")
            } else {
                let mut out = coefficients.join("\n") + "\n";
                writeln!(out, "max_residual {}", sci(residual)).unwrap();
                if let Some(e) = error {
                    writeln!(out, "relative_error {}", sci(e)).unwrap();
                }
                Ok(out)
            }
        }
        Command::Verify => verify(cli, &inputs),
    }
}

/// Float-versus-oracle report: BD, solve, determinant and eigenvalues.
fn verify<S: ScalarText>(cli: &Cli, inputs: &Inputs<S>) -> Outcome<String> {
    let (_, nodes) = inputs.need_nodes(cli.command)?;
    let b = read_scalars(required(&cli.rhs, "rhs", cli.command)?)?;
    let exact_matrix = inputs.exact_matrix()?;
    let (_, exact_bd) = neville_bd(&exact_matrix)?;
    let bd_error = bd_norm_error(&inputs.bd, &exact_bd)?;
    let bd_componentwise = oracle::max_componentwise_error(
        inputs.bd.entries().as_slice(),
        exact_bd.entries().as_slice(),
    )?;
    let solve_error = solve(&inputs.bd, &convert::<S>(&b))?
        .with_reference(&exact_solve(&exact_matrix, &b)?)?
        .relative_error
        .expect("reference attached");
    let exact_det = exact_determinant(&exact_matrix)?;
    let det_error = relative_error(&[determinant_closed_form(nodes)], &[exact_det])?;
    let spectrum = eigenvalues(&inputs.bd)?
        .with_reference(&exact_eigenvalues(&exact_matrix, &tol(cli))?)?;
    let eig_errors = spectrum.relative_errors.clone().expect("reference attached");

    if cli.out == Format::Json {
        let v = json!({
            "order": inputs.bd.order(),
            "bd_relative_error": bd_error,
            "bd_max_componentwise_error": bd_componentwise,
            "solve_relative_error": solve_error,
            "determinant_relative_error": det_error,
            "eigenvalues": spectrum.values,
            "eigenvalue_relative_errors": eig_errors,
        });
        return Ok(serde_json::to_string_pretty(&v).expect("serializable") + "\n");
    }
    let mut out = String::new();
    writeln!(out, "order {}", inputs.bd.order()).unwrap();
    writeln!(out, "bd_relative_error {}", sci(bd_error)).unwrap();
    writeln!(out, "bd_max_componentwise_error {}", sci(bd_componentwise)).unwrap();
    writeln!(out, "solve_relative_error {}", sci(solve_error)).unwrap();
    writeln!(out, "determinant_relative_error {}", sci(det_error)).unwrap();
    for (v, e) in spectrum.values.iter().zip(&eig_errors) {
        writeln!(out, "eigenvalue {v:.3e} relative_error {}", sci(*e)).unwrap();
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("sbv: error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
