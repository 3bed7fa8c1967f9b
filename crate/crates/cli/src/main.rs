//! `subentropy`: compute the entropy-subentropy family, run oracles and
//! property suites, and emit surface data for plotting.
//!
//! Exit codes: 0 ok, 1 property failure, 2 parse error, 3 validation
//! error, 4 closed-form cap exceeded, 5 usage error.

mod format;
mod input;

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use subentropy::entropy::{full_report, intermediate_r, interpolant};
use subentropy::oracles::{contour_interpolant, contour_r, haar_average_information, simplex_mc};
use subentropy::verify::{run_suite, Suite};
use subentropy::{ContourConfig, EntropyReport, Error, OracleEstimate, Spectrum};

use format::sig15;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Validation(Error),
    Usage(String),
    PropertyFailure(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::PropertyFailure(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Validation(Error::CapExceeded { .. }) => 4,
            CliError::Validation(_) => 3,
            CliError::Usage(_) => 5,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Validation(e) => write!(f, "validation error: {e}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::PropertyFailure(k) => {
                write!(f, "{k} propert{} failed", if *k == 1 { "y" } else { "ies" })
            }
        }
    }
}

/// Errors caused by command-line parameters rather than by the input data.
fn parameter_error(e: Error) -> CliError {
    match e {
        Error::InvalidR { .. }
        | Error::InvalidIndex(_)
        | Error::AlphaOutOfRange(_)
        | Error::TooFewSamples { .. } => CliError::Usage(e.to_string()),
        other => CliError::Validation(other),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "subentropy",
    version,
    about = "Entropy, subentropy and the family between them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Contour,
    Simplex,
    Haar,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form report: S, Q, every R_r and optional interpolant samples.
    Compute {
        /// JSON input document (`-` for stdin).
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Interpolant grid as start:stop:step, e.g. 0:1:0.25.
        #[arg(long)]
        alpha_grid: Option<String>,
    },
    /// Estimate a quantity with one of the independent oracles.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Quadrature nodes for the contour method.
        #[arg(long, default_value_t = ContourConfig::default().nodes)]
        nodes: usize,
    },
    /// Run property suites and print one JSON verdict per line.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Barycentric grid over the 3-outcome simplex as CSV.
    Surface {
        /// S, Q, R:r or Ralpha:x.
        #[arg(long)]
        quantity: String,
        #[arg(long, default_value_t = 20)]
        resolution: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Accepted for symmetry with the other commands; only csv exists.
        #[arg(long, value_enum, default_value_t = Format::Csv, action = ArgAction::Set)]
        format: Format,
    },
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Usage(format!("cannot write stdout: {e}")))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

/// Parses `start:stop:step` into an inclusive grid.
fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("alpha grid {spec:?} is not start:stop:step"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|k| (start + k as f64 * step).min(stop))
        .collect())
}

pub fn report_csv(report: &EntropyReport) -> String {
    let mut out = String::from("quantity,index,value\n");
    let _ = writeln!(out, "S,,{}", sig15(report.entropy));
    let _ = writeln!(out, "Q,,{}", sig15(report.subentropy));
    for (k, v) in report.r.iter().enumerate() {
        let _ = writeln!(out, "R,{},{}", k + 1, sig15(*v));
    }
    for a in &report.alpha_samples {
        let _ = writeln!(out, "Ralpha,{},{}", sig15(a.alpha), sig15(a.value));
    }
    out
}

fn compute(
    input: &Path,
    output: Option<&Path>,
    format: Format,
    alpha_grid: Option<&str>,
) -> Result<(), CliError> {
    let grid = alpha_grid.map(parse_grid).transpose()?;
    if let Some(a) = grid.iter().flatten().find(|a| !(0.0..=1.0).contains(*a)) {
        return Err(CliError::Usage(format!("alpha = {a} outside [0, 1]")));
    }
    let spectrum = input::load(input)?;
    let report = full_report(&spectrum, grid.as_deref()).map_err(CliError::Validation)?;
    let text = match format {
        Format::Json => to_json(&report),
        Format::Csv => report_csv(&report),
    };
    emit(output, &text)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct OracleOutput {
    quantity: String,
    #[serde(flatten)]
    estimate: OracleEstimate,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    closed_form: Option<f64>,
    discrepancy: Option<f64>,
    /// `None` when the estimate has no standard error.
    discrepancy_sigmas: Option<f64>,
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random::<u64>();
        eprintln!("seed: {s}");
        s
    })
}

#[allow(clippy::too_many_arguments)]
fn oracle(
    input: &Path,
    output: Option<&Path>,
    format: Format,
    method: Method,
    r: Option<usize>,
    alpha: Option<f64>,
    samples: usize,
    seed: Option<u64>,
    nodes: usize,
) -> Result<(), CliError> {
    let usage = |m: &str| Err(CliError::Usage(m.into()));
    match (method, r, alpha) {
        (Method::Contour, Some(_), Some(_)) => {
            return usage("contour takes --r or --alpha, not both")
        }
        (Method::Contour, None, None) => return usage("contour needs --r or --alpha"),
        (Method::Simplex, None, _) => return usage("simplex needs --r"),
        (Method::Simplex, _, Some(_)) => return usage("simplex does not take --alpha"),
        (Method::Haar, Some(_), _) | (Method::Haar, _, Some(_)) => {
            return usage("haar estimates Q and takes neither --r nor --alpha")
        }
        _ => {}
    }
    if method == Method::Contour && nodes < 4 {
        return usage("--nodes must be at least 4");
    }
    let spectrum: Spectrum = input::load(input)?;
    let n = spectrum.dim();
    let cfg = ContourConfig::with_nodes(nodes);

    let mut used_seed = None;
    let (quantity, estimate) = match method {
        Method::Contour => match (r, alpha) {
            (Some(r), _) => (format!("R_{r}"), contour_r(&spectrum, r, &cfg)),
            (None, Some(a)) => (
                format!("Ralpha({a})"),
                contour_interpolant(&spectrum, a, &cfg),
            ),
            _ => unreachable!(),
        },
        Method::Simplex => {
            let r = r.expect("checked above");
            let seed = resolve_seed(seed);
            used_seed = Some(seed);
            (format!("R_{r}"), simplex_mc(&spectrum, r, samples, seed))
        }
        Method::Haar => {
            let seed = resolve_seed(seed);
            used_seed = Some(seed);
            (
                "Q".to_string(),
                haar_average_information(&spectrum, samples, seed),
            )
        }
    };
    let estimate = estimate.map_err(parameter_error)?;

    // the closed form can be capped for large n; the estimate still stands
    let closed = match (method, r, alpha) {
        (Method::Haar, _, _) => intermediate_r(&spectrum, n).ok(),
        (_, Some(r), _) => intermediate_r(&spectrum, r).ok(),
        (_, None, Some(a)) => interpolant(&spectrum, a).ok(),
        _ => None,
    };
    let discrepancy = closed.map(|c| (estimate.value - c).abs());
    let sigmas = closed
        .filter(|_| estimate.stderr > 0.0)
        .map(|c| estimate.z_score(c));
    let out = OracleOutput {
        quantity,
        estimate,
        seed: used_seed,
        closed_form: closed,
        discrepancy,
        discrepancy_sigmas: sigmas,
    };
    let text = match format {
        Format::Json => to_json(&out),
        Format::Csv => {
            let opt = |v: Option<f64>| v.map(sig15).unwrap_or_default();
            let mut s = String::from("quantity,value,stderr,samples,method,seed,closedForm,discrepancy,discrepancySigmas\n");
            let method = serde_json::to_value(out.estimate.method).expect("serializable");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                out.quantity,
                sig15(out.estimate.value),
                sig15(out.estimate.stderr),
                out.estimate.samples,
                method.as_str().unwrap_or_default(),
                out.seed.map(|x| x.to_string()).unwrap_or_default(),
                opt(out.closed_form),
                opt(out.discrepancy),
                opt(out.discrepancy_sigmas),
            );
            s
        }
    };
    emit(output, &text)
}

fn check(
    suite: &str,
    n: usize,
    trials: usize,
    seed: Option<u64>,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let suite: Suite = suite.parse().map_err(parameter_error)?;
    if trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let seed = resolve_seed(seed);
    let verdicts = run_suite(suite, n, trials, seed).map_err(parameter_error)?;
    let mut text = String::new();
    for v in &verdicts {
        text.push_str(&serde_json::to_string(v).expect("serializable"));
        text.push('\n');
    }
    emit(output, &text)?;
    let failed = verdicts.iter().filter(|v| !v.ok()).count();
    if failed > 0 {
        return Err(CliError::PropertyFailure(failed));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Quantity {
    S,
    Q,
    R(usize),
    Ralpha(f64),
}

impl std::str::FromStr for Quantity {
    type Err = CliError;

    fn from_str(spec: &str) -> Result<Self, CliError> {
        let bad = || {
            CliError::Usage(format!(
                "quantity {spec:?} is not S, Q, R:r (1 <= r <= 3) or Ralpha:x (0 <= x <= 1)"
            ))
        };
        match spec.split_once(':') {
            None if spec == "S" => Ok(Quantity::S),
            None if spec == "Q" => Ok(Quantity::Q),
            Some(("R", r)) => match r.parse::<usize>() {
                Ok(r @ 1..=3) => Ok(Quantity::R(r)),
                _ => Err(bad()),
            },
            Some(("Ralpha", a)) => match a.parse::<f64>() {
                Ok(a) if (0.0..=1.0).contains(&a) => Ok(Quantity::Ralpha(a)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

fn surface(quantity: &str, resolution: usize, output: Option<&Path>) -> Result<(), CliError> {
    let q: Quantity = quantity.parse()?;
    if resolution < 2 {
        return Err(CliError::Usage("--resolution must be at least 2".into()));
    }
    let mut text = String::from("l1,l2,l3,value\n");
    let m = resolution as f64;
    for i in 0..=resolution {
        for j in 0..=resolution - i {
            let k = resolution - i - j;
            let l = [i as f64 / m, j as f64 / m, k as f64 / m];
            let s = Spectrum::new(l.to_vec()).map_err(CliError::Validation)?;
            let value = match q {
                Quantity::S => intermediate_r(&s, 1),
                Quantity::Q => intermediate_r(&s, 3),
                Quantity::R(r) => intermediate_r(&s, r),
                Quantity::Ralpha(a) => interpolant(&s, a),
            }
            .map_err(CliError::Validation)?;
            let _ = writeln!(
                text,
                "{},{},{},{}",
                sig15(l[0]),
                sig15(l[1]),
                sig15(l[2]),
                sig15(value)
            );
        }
    }
    emit(output, &text)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute {
            input,
            output,
            format,
            alpha_grid,
        } => compute(&input, output.as_deref(), format, alpha_grid.as_deref()),
        Command::Oracle {
            input,
            output,
            format,
            method,
            r,
            alpha,
            samples,
            seed,
            nodes,
        } => oracle(
            &input,
            output.as_deref(),
            format,
            method,
            r,
            alpha,
            samples,
            seed,
            nodes,
        ),
        Command::Check {
            suite,
            n,
            trials,
            seed,
            output,
        } => check(&suite, n, trials, seed, output.as_deref()),
        Command::Surface {
            quantity,
            resolution,
            output,
            format,
        } => {
            if format != Format::Csv {
                return Err(CliError::Usage("surface output is csv only".into()));
            }
            surface(&quantity, resolution, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let color = if std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty()) {
        clap::ColorChoice::Never
    } else {
        clap::ColorChoice::Auto
    };
    let matches = match Cli::command().color(color).try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(5)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(5);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("subentropy: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(
            parse_grid("0:1:0.25").unwrap(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        assert_eq!(parse_grid("0:1:0.1").unwrap().len(), 11);
        assert_eq!(parse_grid("0.5:0.5:1").unwrap(), vec![0.5]);
        for bad in ["0:1", "0:1:0", "1:0:0.1", "a:b:c", "0:1:-1"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn quantity_parsing() {
        assert_eq!("S".parse::<Quantity>().unwrap(), Quantity::S);
        assert_eq!("R:2".parse::<Quantity>().unwrap(), Quantity::R(2));
        assert_eq!(
            "Ralpha:0.5".parse::<Quantity>().unwrap(),
            Quantity::Ralpha(0.5)
        );
        for bad in ["R:0", "R:4", "Ralpha:2", "X", "R", "R:x"] {
            assert!(bad.parse::<Quantity>().is_err(), "{bad}");
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            CliError::Validation(Error::CapExceeded { n: 25, cap: 24 }).exit_code(),
            4
        );
        assert_eq!(CliError::Validation(Error::NotPsd(-0.1)).exit_code(), 3);
        assert_eq!(
            parameter_error(Error::TooFewSamples { min: 100, got: 1 }).exit_code(),
            5
        );
    }
}
