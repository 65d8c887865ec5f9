//! `cmeasure`: exact integrals, norms and axiom checks on finite
//! pre-measure spaces.

mod space;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cmeasure::complemented_sets::check_algebra;
use cmeasure::completion::{check_pis_completion, integral_rep, norm1, Representation};
use cmeasure::modulated_reals::{checked_cantor_pair, index_pair, ModulatedReal};
use cmeasure::premeasure::{
    check_pms, empty_positive_zero, measure_split_check, monotonicity_check,
    restrict_measure_invariance, PreMeasureSpace,
};
use cmeasure::rational::{format_rational, round_to_dyadic};
use cmeasure::report::{CheckConfig, CheckError, Report};
use cmeasure::simple_functions::{
    abs_sf, check_pis_simple, integral, phi_n_bound_check, pis_basic_lemmas,
};

use space::{load_space, parse_rep, parse_simple, InputError};

#[derive(Parser)]
#[command(
    name = "cmeasure",
    version,
    about = "Exact integration on finite pre-measure spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run axiom suites and print a JSON report.
    Check {
        space: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 16)]
        precision: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_ground: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integral of a simple function or a representation.
    Integrate(FunctionArgs),
    /// 1-norm of a simple function or a representation.
    Norm(FunctionArgs),
    /// The 1-based Cantor enumeration: `pair n k` or `pair --inverse m`.
    Pair {
        #[arg(long, conflicts_with_all = ["n", "k"])]
        inverse: Option<u64>,
        #[arg(required_unless_present = "inverse")]
        n: Option<u64>,
        #[arg(required_unless_present = "inverse")]
        k: Option<u64>,
    },
}

#[derive(Args)]
struct FunctionArgs {
    space: PathBuf,
    /// `[["3/2","101"], ...]`, inline or `@file`.
    #[arg(long, conflicts_with = "rep", required_unless_present = "rep")]
    simple: Option<String>,
    /// `{"support": [..]}` or `{"geometric": {"base": [..], "ratio": "1/2"}}`.
    #[arg(long)]
    rep: Option<String>,
    #[arg(long, default_value_t = 16)]
    precision: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Pms,
    PisSimple,
    PisComplete,
    Algebra,
    All,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {0}: {1}")]
    Write(String, std::io::Error),
}

const SUPERSCRIPT: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

/// Exact `p/q` when `x` is rational, else `a ± 2⁻ᵖ` with a dyadic `a`.
fn render(x: &ModulatedReal, p: u32) -> String {
    if let Some(q) = x.as_exact() {
        return format_rational(q);
    }
    // |approx − x| <= 2^-(p+1), rounding adds at most 2^-(p+2)
    let a = round_to_dyadic(&x.approx_to(p + 1), p + 1);
    let exp: String = p
        .to_string()
        .chars()
        .map(|c| SUPERSCRIPT[c.to_digit(10).unwrap() as usize])
        .collect();
    format!("{} ± 2⁻{exp}", format_rational(&a))
}

fn suite_report(
    space: &PreMeasureSpace,
    suite: Suite,
    config: &CheckConfig,
) -> Result<Report, CheckError> {
    let report = match suite {
        Suite::Pms => {
            let mut r = check_pms(space, config)?;
            r.absorb(empty_positive_zero(space));
            r.absorb(measure_split_check(space));
            r.absorb(restrict_measure_invariance(space, config));
            r.absorb(monotonicity_check(space, config));
            r
        }
        Suite::PisSimple => {
            let mut r = check_pis_simple(space, config)?;
            r.absorb(phi_n_bound_check(space, config)?);
            r.absorb(pis_basic_lemmas(space, config)?);
            r
        }
        Suite::PisComplete => check_pis_completion(space, config)?,
        Suite::Algebra => check_algebra(space.ground(), config)?,
        Suite::All => {
            let mut r = Report::new("all");
            for s in [
                Suite::Algebra,
                Suite::Pms,
                Suite::PisSimple,
                Suite::PisComplete,
            ] {
                r.absorb(suite_report(space, s, config)?);
            }
            r
        }
    };
    Ok(report)
}

fn function_value(args: &FunctionArgs, norm: bool) -> Result<String, CliError> {
    let space = load_space(&args.space)?;
    if let Some(text) = &args.simple {
        let v = parse_simple(&space, text)?;
        let q = if norm {
            integral(&space, &abs_sf(&space, &v))
        } else {
            integral(&space, &v)
        };
        return Ok(format_rational(&q));
    }
    let text = args
        .rep
        .as_deref()
        .expect("clap requires --simple or --rep");
    let alpha: Representation = parse_rep(&space, text)?;
    let x = if norm {
        norm1(&alpha)
    } else {
        integral_rep(&alpha)
    };
    Ok(render(&x, args.precision))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Check {
            space,
            suite,
            precision,
            seed,
            max_ground,
            samples,
            out,
        } => {
            let space = load_space(&space)?;
            let config = CheckConfig {
                max_ground,
                seed,
                samples,
                precision,
            };
            let report = suite_report(&space, suite, &config)?;
            let text = serde_json::to_string_pretty(&report).expect("reports serialize");
            println!("{text}");
            if let Some(path) = out {
                std::fs::write(&path, format!("{text}\n"))
                    .map_err(|e| CliError::Write(path.display().to_string(), e))?;
            }
            for e in report.failures() {
                let cex = e
                    .counterexample
                    .as_ref()
                    .map(|c| c.to_string())
                    .unwrap_or_default();
                eprintln!("FAIL {}: {} counterexample: {cex}", e.id, e.detail);
            }
            Ok(report.exit_code() as u8)
        }
        Command::Integrate(args) => {
            println!("{}", function_value(&args, false)?);
            Ok(0)
        }
        Command::Norm(args) => {
            println!("{}", function_value(&args, true)?);
            Ok(0)
        }
        Command::Pair { inverse, n, k } => {
            match (inverse, n, k) {
                (Some(0), _, _) => return Err(CliError::Usage("positions start at 1".into())),
                (Some(m), _, _) => {
                    let (n, k) = index_pair(m);
                    println!("({n},{k})");
                }
                (None, Some(n), Some(k)) if n >= 1 && k >= 1 => {
                    let m = checked_cantor_pair(n - 1, k - 1)
                        .and_then(|c| c.checked_add(1))
                        .ok_or_else(|| {
                            CliError::Usage("position does not fit in 64 bits".into())
                        })?;
                    println!("{m}");
                }
                _ => return Err(CliError::Usage("pairs are 1-based: n, k >= 1".into())),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
