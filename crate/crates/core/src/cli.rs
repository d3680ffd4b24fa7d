//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on I/O failure, 2 on malformed input or a
//! violated contract. Every failure prints one line on standard error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exact::{parse_rational, Rational};
use crate::formats::{
    bundle_from_json, bundle_to_json, instance_from_json, instance_to_json, partition_from_json,
    partition_to_json, solution_from_json, solution_to_json,
};
use crate::grid::GridGraph;
use crate::reductions::{build_reduction, BundleGraph, Family, ReductionBundle};
use crate::render::{render_ascii, render_svg};
use crate::solvers::corner_cut_oracle;
use crate::tpart::{generate, solve_exact, Mode, TripleSolution};
use crate::verify::{
    audit, decide_three_partition, solve_bundle, Algorithm, AlgorithmPartitioner, Partitioner,
    Replay,
};

#[derive(Parser, Debug)]
#[command(
    name = "kbalance",
    version,
    about = "k-balanced partitioning reductions and solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a 3-PARTITION instance.
    Gen3p {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        s: u64,
        #[arg(long, default_value = "random")]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a 3-PARTITION instance exactly; prints NO when none exists.
    Tpsolve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a reduction graph from an instance.
    Reduce {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value = "0", value_parser = rational_arg)]
        c: Rational,
        #[arg(long, default_value = "0", value_parser = rational_arg)]
        d: Rational,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition a bundle's graph.
    Solve {
        #[arg(long)]
        algo: Algorithm,
        #[arg(long)]
        bundle: PathBuf,
        #[command(flatten)]
        solution: SolutionArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit a partition against a bundle.
    Verify {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        partition: PathBuf,
    },
    /// Decide the bundle's source instance with a partitioner; prints YES or NO.
    Decide {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(
            long,
            required_unless_present = "partition",
            conflicts_with = "partition"
        )]
        algo: Option<Algorithm>,
        /// Replay a stored partition instead of running an algorithm.
        #[arg(long)]
        partition: Option<PathBuf>,
        #[command(flatten)]
        solution: SolutionArgs,
    },
    /// Brute-force oracles.
    Oracle {
        #[command(subcommand)]
        oracle: OracleCommand,
    },
    /// Draw a grid bundle or a full rectangle, optionally coloured.
    Render {
        #[arg(long, required_unless_present = "rect", conflicts_with = "rect")]
        bundle: Option<PathBuf>,
        /// A full `WxH` rectangle.
        #[arg(long, value_parser = rect_arg)]
        rect: Option<(usize, usize)>,
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = RenderFormat::Svg)]
        format: RenderFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Most vertices separable from a full rectangle with at most B edges.
    CornerCut {
        #[arg(long)]
        w: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        b: usize,
    },
}

#[derive(Args, Debug)]
struct SolutionArgs {
    /// 3-PARTITION solution file, for `assemble`.
    #[arg(long, conflicts_with = "solution_from_exact")]
    solution: Option<PathBuf>,
    /// Solve the bundle's source instance exactly, for `assemble`.
    #[arg(long)]
    solution_from_exact: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RenderFormat {
    Svg,
    Ascii,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn rect_arg(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected WxH, got {s:?}");
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((w.parse().map_err(|_| bad())?, h.parse().map_err(|_| bad())?))
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Invalid(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn say(out: &mut dyn Write, line: &str) -> CliResult<()> {
    writeln!(out, "{line}").map_err(|e| Failure::Io(format!("cannot write to stdout: {e}")))
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

fn load_bundle(path: &Path) -> CliResult<ReductionBundle> {
    Ok(bundle_from_json(&read(path)?)?)
}

fn load_solution(
    args: &SolutionArgs,
    bundle: &ReductionBundle,
) -> CliResult<Option<TripleSolution>> {
    if let Some(path) = &args.solution {
        let sol = solution_from_json(&read(path)?)?;
        sol.check(bundle.source())?;
        return Ok(Some(sol));
    }
    if args.solution_from_exact {
        return match solve_exact(bundle.source())? {
            Some(sol) => Ok(Some(sol)),
            None => Err(Error::Infeasible("the source instance has no solution".into()).into()),
        };
    }
    Ok(None)
}

fn pair(r: Rational) -> Value {
    json!([*r.numer(), *r.denom()])
}

fn execute(command: Command, out: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Gen3p {
            k,
            s,
            mode,
            seed,
            out: path,
        } => {
            let inst = generate(k, s, mode, seed)?;
            emit(
                out,
                path.as_deref(),
                &with_newline(instance_to_json(&inst)?),
            )
        }
        Command::Tpsolve { input, out: path } => {
            let inst = instance_from_json(&read(&input)?)?;
            match solve_exact(&inst)? {
                Some(sol) => emit(out, path.as_deref(), &with_newline(solution_to_json(&sol)?)),
                None => say(out, "NO"),
            }
        }
        Command::Reduce {
            family,
            c,
            d,
            input,
            out: path,
        } => {
            let inst = instance_from_json(&read(&input)?)?;
            let bundle = build_reduction(&inst, family, c, d)?;
            emit(
                out,
                path.as_deref(),
                &with_newline(bundle_to_json(&bundle)?),
            )
        }
        Command::Solve {
            algo,
            bundle,
            solution,
            out: path,
        } => {
            let bundle = load_bundle(&bundle)?;
            let sol = load_solution(&solution, &bundle)?;
            let result = solve_bundle(&bundle, algo, sol.as_ref())?;
            let text = with_newline(partition_to_json(&result.partition)?);
            if path.is_some() {
                emit(out, path.as_deref(), &text)?;
                say(
                    out,
                    &format!(
                        "algorithm={} cut={} optimal={}",
                        result.algorithm, result.cut, result.optimal
                    ),
                )
            } else {
                emit(out, None, &text)
            }
        }
        Command::Verify { bundle, partition } => {
            let bundle = load_bundle(&bundle)?;
            let partition = partition_from_json(&read(&partition)?)?;
            let outcome = audit(&bundle, &partition)?;
            let certificates: serde_json::Map<String, Value> = outcome
                .certificates
                .iter()
                .map(|c| (c.name.clone(), Value::Bool(c.passed)))
                .collect();
            let report = json!({
                "balanced": outcome.balanced,
                "certificates": certificates,
                "cut": outcome.report.cut_size,
                "cut_within_alpha_m": outcome.cut_within_alpha_m,
                "m": bundle.params().m,
                "minority": outcome.report.minority_total,
                "minority_budget": pair(outcome.minority_budget),
                "minority_ok": outcome.minority_ok,
                "part_sizes": outcome.report.part_sizes,
                "perfectly_balanced": outcome.perfectly_balanced,
                "reduction_condition_holds": outcome.reduction_condition_holds,
                "smallest_class_lower_bound": pair(outcome.smallest_class_lower_bound),
            });
            say(out, &report.to_string())?;
            if !outcome.certificates_pass() {
                return Err(Error::Mismatch("an analytic certificate failed".into()).into());
            }
            if !outcome.reduction_condition_holds {
                return Err(Error::Mismatch(format!(
                    "cut {} is within alpha*m but {} minority vertices reach the budget",
                    outcome.report.cut_size, outcome.report.minority_total
                ))
                .into());
            }
            Ok(())
        }
        Command::Decide {
            bundle,
            algo,
            partition,
            solution,
        } => {
            let bundle = load_bundle(&bundle)?;
            let partitioner: Box<dyn Partitioner> = match (algo, partition) {
                (_, Some(path)) => Box::new(Replay(partition_from_json(&read(&path)?)?)),
                (Some(algorithm), None) => Box::new(AlgorithmPartitioner {
                    algorithm,
                    solution: load_solution(&solution, &bundle)?,
                }),
                (None, None) => {
                    return Err(Error::InvalidInput("need --algo or --partition".into()).into())
                }
            };
            let alpha = bundle.params().alpha();
            let decision = decide_three_partition(&bundle, partitioner.as_ref(), &alpha)?;
            say(out, &decision.to_string())
        }
        Command::Oracle {
            oracle: OracleCommand::CornerCut { w, h, b },
        } => say(out, &corner_cut_oracle(w, h, b)?.to_string()),
        Command::Render {
            bundle,
            rect,
            partition,
            format,
            out: path,
        } => {
            let (grid, connectors) = match (bundle, rect) {
                (Some(path), _) => {
                    let bundle = load_bundle(&path)?;
                    match bundle.graph() {
                        BundleGraph::Grid(g) => (g.clone(), bundle.connectors().to_vec()),
                        _ => {
                            return Err(Error::InvalidInput(format!(
                                "cannot render a {} bundle",
                                bundle.family()
                            ))
                            .into())
                        }
                    }
                }
                (None, Some((w, h))) => (GridGraph::rectangle(w, h), Vec::new()),
                (None, None) => {
                    return Err(Error::InvalidInput("need --bundle or --rect".into()).into())
                }
            };
            let partition = partition
                .map(|p| read(&p).and_then(|t| Ok(partition_from_json(&t)?)))
                .transpose()?;
            let text = match format {
                RenderFormat::Svg => render_svg(&grid, partition.as_ref(), &connectors)?,
                RenderFormat::Ascii => render_ascii(&grid, partition.as_ref())?,
            };
            emit(out, path.as_deref(), &text)
        }
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Invalid(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
