use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use vbclass::builtins::{builtin, BUILTIN_NAMES};
use vbclass::census::enumerate_cp4;
use vbclass::format;
use vbclass::{
    compute_b, compute_t, count_classes, rr_value, BundleRank, Census, ChernInput, ChernTuple,
    CohomologyClass, Error, ManifoldData, Verdict,
};

const EXIT_UNREALIZABLE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "vbclass",
    version,
    about = "Rank 3 and 4 complex vector bundles over 8-dimensional spin^c manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Manifold description file
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    file: Option<PathBuf>,
    /// Use a built-in manifold instead of a file
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
    /// Skip the validation laws when loading a file
    #[arg(long)]
    no_validate: bool,
}

#[derive(Args)]
struct Chern {
    /// Chern classes, one group of comma-separated coordinates per degree,
    /// groups separated by ';' (e.g. "4;6;4;1"). Use '-' for a zero group.
    #[arg(long, allow_hyphen_values = true)]
    chern: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Check the validation laws of a manifold description
    Validate {
        #[command(flatten)]
        source: Source,
        /// Also check exactness of the Bockstein sequence
        #[arg(long)]
        strict: bool,
    },
    /// Decide whether (u1, u2, u3, u4) is the Chern class of a rank-4 bundle
    Rank4 {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        chern: Chern,
    },
    /// Decide whether (u1, u2, u3) is the Chern class of a rank-3 bundle
    Rank3 {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        chern: Chern,
    },
    /// Count the bundles with the given Chern classes
    Count {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=4))]
        rank: u32,
        #[command(flatten)]
        chern: Chern,
    },
    /// Print the groups B and, when odd generators are supplied, T
    Groups {
        #[command(flatten)]
        source: Source,
        /// (u1; u2; u3) used in T; zero when omitted
        #[arg(long, allow_hyphen_values = true)]
        chern: Option<String>,
    },
    /// Print the exact Riemann-Roch value of a Chern tuple
    Oracle {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        chern: Chern,
    },
    /// Cross-check the generic test against the closed-form CP^4 congruences
    Enumerate {
        #[arg(long, value_parser = ["cp4"], default_value = "cp4")]
        builtin: String,
        #[arg(long)]
        bound: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=4))]
        rank: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// List every tuple, not only the realizable ones
        #[arg(long)]
        all: bool,
        /// Worker threads (single-threaded when omitted)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print a built-in manifold in the file format
    Export {
        #[arg(long, value_name = "NAME")]
        builtin: String,
        /// Write to this file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InternalInconsistency(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn load(source: &Source) -> Result<ManifoldData, Failure> {
    match (&source.file, &source.builtin) {
        (_, Some(name)) => Ok(builtin(name)?),
        (Some(path), None) => Ok(format::load(path, !source.no_validate)?),
        (None, None) => Err(input_error(format!(
            "give a manifold file or --builtin ({})",
            BUILTIN_NAMES.join("|")
        ))),
    }
}

fn parse_groups(
    text: &str,
    data: &ManifoldData,
    degrees: &[usize],
) -> Result<Vec<CohomologyClass>, Failure> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() != degrees.len() {
        return Err(input_error(format!(
            "expected {} ';'-separated coordinate groups, found {}",
            degrees.len(),
            parts.len()
        )));
    }
    parts
        .iter()
        .zip(degrees)
        .map(|(part, &deg)| {
            let part = part.trim();
            let coords: Vec<BigInt> = if part == "-" || part.is_empty() {
                vec![BigInt::from(0); data.ngens(deg)]
            } else {
                part.split(',')
                    .map(|t| {
                        t.trim().parse::<BigInt>().map_err(|_| {
                            input_error(format!("bad coordinate `{}` in degree {deg}", t.trim()))
                        })
                    })
                    .collect::<Result<_, _>>()?
            };
            Ok(data.integral_class(deg, coords)?)
        })
        .collect()
}

fn parse_tuple(text: &str, data: &ManifoldData) -> Result<ChernTuple, Failure> {
    let mut v = parse_groups(text, data, &[2, 4, 6, 8])?.into_iter();
    let mut next = || v.next().expect("four groups");
    Ok(ChernTuple::new(next(), next(), next(), next())?)
}

fn parse_triple(text: &str, data: &ManifoldData) -> Result<ChernInput, Failure> {
    let mut v = parse_groups(text, data, &[2, 4, 6])?.into_iter();
    let mut next = || v.next().expect("three groups");
    Ok(ChernInput::Rank3 {
        u1: next(),
        u2: next(),
        u3: next(),
    })
}

fn verdict_exit(v: &Verdict) -> u8 {
    if v.realizable {
        0
    } else {
        EXIT_UNREALIZABLE
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Validate { source, strict } => {
            let data = match (&source.file, &source.builtin) {
                (Some(path), None) => format::load(path, false)?,
                _ => load(&source)?,
            };
            let report = data.validate(strict);
            print!("{report}");
            Ok(if report.is_ok() { 0 } else { EXIT_INPUT })
        }
        Command::Rank4 { source, chern } => {
            let data = load(&source)?;
            let input = ChernInput::Rank4(parse_tuple(&chern.chern, &data)?);
            let v = input.verdict(&data)?;
            print!("{v}");
            Ok(verdict_exit(&v))
        }
        Command::Rank3 { source, chern } => {
            let data = load(&source)?;
            let v = parse_triple(&chern.chern, &data)?.verdict(&data)?;
            print!("{v}");
            Ok(verdict_exit(&v))
        }
        Command::Count {
            source,
            rank,
            chern,
        } => {
            let data = load(&source)?;
            let input = match rank {
                4 => ChernInput::Rank4(parse_tuple(&chern.chern, &data)?),
                _ => parse_triple(&chern.chern, &data)?,
            };
            let census = count_classes(&data, &input)?;
            print!("{}", census.verdict());
            match &census {
                Census::Unrealizable(_) => {
                    println!("classes: 0");
                    Ok(EXIT_UNREALIZABLE)
                }
                Census::Realizable { classes, .. } => {
                    let count = census
                        .count()
                        .map_or_else(|| "infinite".to_string(), |n| n.to_string());
                    println!("classes: {count} (in bijection with {classes})");
                    Ok(0)
                }
            }
        }
        Command::Groups { source, chern } => {
            let data = load(&source)?;
            println!("B = {}", compute_b(&data)?);
            let input = match &chern {
                Some(text) => parse_triple(text, &data)?,
                None => parse_triple("-;-;-", &data)?,
            };
            let ChernInput::Rank3 { u1, u2, u3 } = input else {
                unreachable!()
            };
            match compute_t(&data, &u1, &u2, &u3) {
                Ok(t) => println!("T = {t}"),
                Err(Error::OddGeneratorsUnavailable) => {
                    println!("T unavailable: supply odd unitary generators")
                }
                Err(e) => return Err(e.into()),
            }
            Ok(0)
        }
        Command::Oracle { source, chern } => {
            let data = load(&source)?;
            let u = parse_tuple(&chern.chern, &data)?;
            let value = rr_value(&data, &u)?;
            let kind = if value.is_integer() {
                "integer"
            } else {
                "not an integer"
            };
            println!("{value} ({kind})");
            Ok(0)
        }
        Command::Enumerate {
            builtin: _,
            bound,
            rank,
            format,
            all,
            jobs,
        } => {
            let rank = BundleRank::from_number(rank).expect("validated by clap");
            let report = enumerate_cp4(bound, rank, jobs)?;
            let width = match rank {
                BundleRank::Four => 4,
                BundleRank::Three => 3,
            };
            let names: Vec<String> = (1..=width).map(|k| format!("a{k}")).collect();
            let rows = report.rows.iter().filter(|r| all || r.generic);
            let mut out = String::new();
            match format {
                OutputFormat::Csv => {
                    let _ = writeln!(out, "{},closed_form,generic", names.join(","));
                    for r in rows {
                        let coeffs: Vec<String> =
                            r.coeffs.iter().map(ToString::to_string).collect();
                        let _ =
                            writeln!(out, "{},{},{}", coeffs.join(","), r.closed_form, r.generic);
                    }
                }
                OutputFormat::Text => {
                    let header: String = names.iter().map(|n| format!("{n:>6}")).collect();
                    let _ = writeln!(out, "{header}  closed  generic");
                    for r in rows {
                        let coeffs: String = r.coeffs.iter().map(|a| format!("{a:>6}")).collect();
                        let mark = |b: bool| if b { "yes" } else { "no" };
                        let _ = writeln!(
                            out,
                            "{coeffs}  {:>6}  {:>7}",
                            mark(r.closed_form),
                            mark(r.generic)
                        );
                    }
                }
            }
            print!("{out}");
            let disagreements = report.disagreement_count();
            let parity = report.parity_violations().len();
            let summary = format!(
                "tuples: {}  realizable: {}  disagreements: {disagreements}  parity violations: {parity}",
                report.rows.len(),
                report.realizable().count()
            );
            match format {
                OutputFormat::Csv => eprintln!("{summary}"),
                OutputFormat::Text => println!("{summary}"),
            }
            for r in report.disagreements() {
                eprintln!(
                    "disagreement at {:?}: closed form {}, generic {}",
                    r.coeffs, r.closed_form, r.generic
                );
            }
            Ok(if disagreements == 0 && parity == 0 {
                0
            } else {
                EXIT_INTERNAL
            })
        }
        Command::Export {
            builtin: name,
            output,
        } => {
            let text = format::to_string(&builtin(&name)?);
            match output {
                Some(path) => std::fs::write(path, text).map_err(|e| input_error(e.to_string()))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
