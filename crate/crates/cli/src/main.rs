use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mckay_core::{Analysis, DiagonalGroup, Error as CoreError, GHilbFan};
use mckay_lab::runner::{run_corpus, CorpusSpec};
use mckay_lab::{diagram, json};

#[derive(Parser)]
#[command(name = "mckay-lab", version, about = "G-Hilbert fans, markings and transform checks for finite diagonal subgroups of SL(3)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
    Tikz,
}

#[derive(Args)]
struct Common {
    /// Group as `r:a,b,c`, with `+` between generators.
    #[arg(long)]
    group: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// The fan of G-Hilb: rays, cones with their G-graphs, edges.
    Fan {
        #[command(flatten)]
        common: Common,
        /// Read a fan JSON file instead, validate it and re-emit it.
        #[arg(long, conflicts_with = "group")]
        from: Option<PathBuf>,
    },
    /// Marked triangulation of the junior simplex.
    Reid(Common),
    /// McKay quiver; with --ray, highlight the arrows vanishing on that divisor.
    Quiver {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ray: Option<usize>,
    },
    /// Sink-source graphs of the exceptional divisors.
    Ssgraph {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ray: Option<usize>,
    },
    /// Transform profiles of the tautological bundles.
    Transforms {
        #[command(flatten)]
        common: Common,
        /// Restrict to one character index.
        #[arg(long = "char")]
        character: Option<u32>,
    },
    /// Full report; exit status 1 when anything fails.
    Verify(Common),
    /// Verify every group in the corpus.
    Corpus {
        #[arg(long, default_value_t = 30)]
        max_order: u32,
        /// Extra groups to include.
        #[arg(long)]
        group: Vec<String>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Directory for per-group reports and summary.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Input errors map to exit status 2.
#[derive(Debug)]
struct InvalidInput(String);

impl std::fmt::Display for InvalidInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidInput {}

impl Common {
    fn group(&self) -> Result<&str> {
        self.group.as_deref().ok_or_else(|| InvalidInput("--group is required".into()).into())
    }
}

fn parse_group(s: &str) -> Result<DiagonalGroup> {
    s.parse::<DiagonalGroup>().map_err(|e| match e {
        CoreError::Syntax(_) | CoreError::NotInSL3(_) | CoreError::EmptyGenerators => {
            InvalidInput(format!("group `{s}`: {e}")).into()
        }
        e => anyhow::Error::from(e),
    })
}

fn analyse(s: &str) -> Result<Analysis> {
    let g = parse_group(s)?;
    Analysis::run(&g).with_context(|| format!("analysing {g}"))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn check_ray(a: &Analysis, ray: Option<usize>) -> Result<()> {
    if let Some(r) = ray {
        if r >= a.fan.rays().len() {
            return Err(InvalidInput(format!("ray {r} out of range; the fan has {} rays", a.fan.rays().len())).into());
        }
    }
    Ok(())
}

fn unsupported(cmd: &str, f: Format) -> anyhow::Error {
    let name = match f {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Svg => "svg",
        Format::Tikz => "tikz",
    };
    InvalidInput(format!("{cmd} does not support --format {name}")).into()
}

/// Returns whether everything checked passed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Fan { common, from } => {
            let format = common.format.unwrap_or(Format::Json);
            let fan = match from {
                Some(p) => {
                    let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                    json::fan_from_json(&text).map_err(|e| InvalidInput(format!("{}: {e:#}", p.display())))?
                }
                None => GHilbFan::build(&parse_group(common.group()?)?)?,
            };
            let text = match format {
                Format::Json => json::fan_json(&fan),
                Format::Svg | Format::Tikz => {
                    let a = Analysis::run(fan.group())?;
                    if format == Format::Svg {
                        diagram::simplex_svg(&a)
                    } else {
                        diagram::simplex_tikz(&a)
                    }
                }
                f => return Err(unsupported("fan", f)),
            };
            emit(common.out.as_deref(), &text)?;
        }
        Command::Reid(common) => {
            let a = analyse(common.group()?)?;
            let text = match common.format.unwrap_or(Format::Json) {
                Format::Json => pretty(&json::marking_doc(&a))?,
                Format::Svg => diagram::simplex_svg(&a),
                Format::Tikz => diagram::simplex_tikz(&a),
                f => return Err(unsupported("reid", f)),
            };
            emit(common.out.as_deref(), &text)?;
        }
        Command::Quiver { common, ray } => {
            let a = analyse(common.group()?)?;
            check_ray(&a, ray)?;
            let text = match common.format.unwrap_or(Format::Dot) {
                Format::Dot => diagram::quiver_dot(&a, ray),
                Format::Json => pretty(&json::quiver_doc(&a))?,
                f => return Err(unsupported("quiver", f)),
            };
            emit(common.out.as_deref(), &text)?;
        }
        Command::Ssgraph { common, ray } => {
            let a = analyse(common.group()?)?;
            check_ray(&a, ray)?;
            match common.format.unwrap_or(Format::Json) {
                Format::Json => {}
                f => return Err(unsupported("ssgraph", f)),
            }
            let docs: Vec<_> = json::sink_source_docs(&a)
                .into_iter()
                .filter(|d| ray.is_none_or(|r| d.ray == r))
                .collect();
            if ray.is_some() && docs.is_empty() {
                return Err(InvalidInput("that ray is not an exceptional divisor".into()).into());
            }
            emit(common.out.as_deref(), &pretty(&docs)?)?;
        }
        Command::Transforms { common, character } => {
            let a = analyse(common.group()?)?;
            match common.format.unwrap_or(Format::Json) {
                Format::Json => {}
                f => return Err(unsupported("transforms", f)),
            }
            let docs = json::transforms_doc(&a, character).map_err(|e| InvalidInput(e.to_string()))?;
            emit(common.out.as_deref(), &pretty(&docs)?)?;
            return Ok(docs.iter().all(|d| d.pass));
        }
        Command::Verify(common) => {
            let a = analyse(common.group()?)?;
            match common.format.unwrap_or(Format::Json) {
                Format::Json => {}
                f => return Err(unsupported("verify", f)),
            }
            let report = json::verify_report(&a);
            emit(common.out.as_deref(), &pretty(&report)?)?;
            eprintln!(
                "{} {}: {}/{} characters, {}/{} divisors, {}/{} property checks",
                if report.summary.pass { "PASS" } else { "FAIL" },
                report.group,
                report.summary.characters_passed,
                report.summary.characters,
                report.summary.divisors_passed,
                report.summary.divisors,
                report.summary.properties_passed,
                report.summary.properties,
            );
            return Ok(report.summary.pass);
        }
        Command::Corpus {
            max_order,
            group,
            jobs,
            out,
        } => {
            for g in &group {
                parse_group(g)?;
            }
            if jobs == Some(0) {
                bail!(InvalidInput("--jobs must be positive".into()));
            }
            let summary = run_corpus(&CorpusSpec {
                max_order,
                groups: group,
                jobs,
                out: out.clone(),
            })?;
            if out.is_none() {
                print!("{}", pretty(&summary)?);
            }
            eprintln!(
                "{} {}/{} groups, {} characters",
                if summary.pass() { "PASS" } else { "FAIL" },
                summary.passed,
                summary.groups,
                summary.characters
            );
            for f in &summary.failed {
                eprintln!("failed: {f}");
            }
            return Ok(summary.pass());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InvalidInput>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
