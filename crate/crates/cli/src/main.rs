use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::Rational64;

use cobordism_core::bounds::{bound_report, verify_theorem, ConstantMode, Grid};
use cobordism_core::link_model::{LinkDescriptor, Theorem};
use cobordism_core::reduction::{plan, DeletionCertificate};
use cobordism_core::signature::{signature_at, signature_from_above, LimitSide};
use cobordism_core::{BraidWord, Error};

/// Cobordism distance bounds between positive 3-braid closures and
/// connected sums of T(2,k) torus links.
#[derive(Parser)]
#[command(name = "cobdist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower and upper bounds for one link, k and n.
    Bounds {
        #[arg(long)]
        link: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
        /// Check against 44 instead of the explicit constants.
        #[arg(long)]
        uniform_constant: bool,
    },
    /// Plan a deletion certificate for a positive braid word.
    Reduce {
        #[arg(long)]
        braid: String,
        #[arg(long)]
        k: u32,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Replay and validate a certificate file.
    Check { certificate: PathBuf },
    /// Signature sweep over a grid of points theta in [0, 1].
    Signature {
        #[arg(long)]
        link: String,
        /// start:step:end, as fractions or decimals.
        #[arg(long)]
        grid: String,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check a distance formula over a parameter grid.
    Verify {
        #[arg(long)]
        theorem: String,
        /// Comma-separated key=lo..hi items (keys k, m, len, n, count).
        #[arg(long, default_value = "")]
        grid: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        uniform_constant: bool,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidParameter(_) | Error::Format(_) | Error::NotNonSplitPositive(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

fn io_err(path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn mode(uniform: bool) -> ConstantMode {
    if uniform {
        ConstantMode::Uniform
    } else {
        ConstantMode::Explicit
    }
}

fn parse_number(s: &str) -> Result<Rational64, Failure> {
    let s = s.trim();
    let bad = || Failure::Usage(format!("`{s}` is not a fraction or decimal"));
    if let Ok(r) = s.parse::<Rational64>() {
        return Ok(r);
    }
    let (int, frac) = s.split_once('.').ok_or_else(bad)?;
    if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let den = 10i64.pow(frac.len() as u32);
    let whole: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let part: i64 = frac.parse().map_err(|_| bad())?;
    Ok(Rational64::new(whole * den + part, den))
}

fn parse_theta_grid(s: &str) -> Result<Vec<Rational64>, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, step, end] = parts[..] else {
        return Err(Failure::Usage(format!("grid `{s}` is not start:step:end")));
    };
    let (start, step, end) = (parse_number(start)?, parse_number(step)?, parse_number(end)?);
    if step <= Rational64::from_integer(0) || start > end {
        return Err(Failure::Usage(format!("grid `{s}` is empty")));
    }
    let mut out = Vec::new();
    let mut t = start;
    while t <= end {
        out.push(t);
        t += step;
    }
    Ok(out)
}

fn write_or_print(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Bounds {
            link,
            k,
            n,
            json,
            uniform_constant,
        } => {
            let d: LinkDescriptor = link.parse()?;
            let r = bound_report(&d, k, n, mode(uniform_constant))?;
            if json {
                println!("{}", r.to_json());
            } else {
                println!("{r}");
            }
            Ok(r.pass != Some(false))
        }
        Command::Reduce { braid, k, output } => {
            let w: BraidWord = braid.parse().map_err(Error::from)?;
            let cert = plan(&w, k)?;
            let s = cert.summary.unwrap_or_default();
            let report = cert.validate()?;
            eprintln!(
                "k = {k}: {} powers, {} singles, tail {}; bound {}",
                s.n, s.j, s.tail_cost, report.bound
            );
            let json = cert.to_json() + "\n";
            write_or_print(output.as_ref(), &json)?;
            Ok(true)
        }
        Command::Check { certificate } => {
            let text = fs::read_to_string(&certificate).map_err(|e| io_err(&certificate, e))?;
            let cert = DeletionCertificate::from_json(&text)?;
            match cert.validate() {
                Ok(r) => {
                    println!(
                        "valid: n = {}, j = {}, tail = {}, bound = {}, lemma form = {}",
                        r.n, r.j, r.tail_cost, r.bound, r.lemma_bound
                    );
                    if let Some(s) = cert.summary {
                        if (s.n, s.j, s.tail_cost) != (r.n, r.j, r.tail_cost) {
                            println!("summary disagrees with replay: {s:?}");
                            return Ok(false);
                        }
                    }
                    Ok(true)
                }
                Err(e) => {
                    println!("invalid: {e}");
                    Ok(false)
                }
            }
        }
        Command::Signature { link, grid, csv } => {
            let d: LinkDescriptor = link.parse()?;
            let mut out = String::from("theta,sigma,nullity,side,evaluated_at\n");
            for theta in parse_theta_grid(&grid)? {
                let v = match signature_at(&d, theta, LimitSide::At) {
                    Ok(v) => v,
                    Err(Error::IrregularPoint { .. }) => signature_from_above(&d, theta, *theta.denom() as u32)?,
                    Err(e) => return Err(e.into()),
                };
                let side = match v.limit_side {
                    LimitSide::At => "at",
                    LimitSide::FromAbove => "above",
                };
                out.push_str(&format!("{theta},{},{},{side},{}\n", v.sigma, v.nullity, v.evaluated_at));
            }
            write_or_print(csv.as_ref(), &out)?;
            Ok(true)
        }
        Command::Verify {
            theorem,
            grid,
            seed,
            csv,
            uniform_constant,
        } => {
            let t: Theorem = theorem.parse()?;
            let g = Grid::parse_for(t, &grid)?;
            let table = verify_theorem(t, &g, seed, mode(uniform_constant))?;
            if let Some(p) = csv.as_ref() {
                fs::write(p, table.to_csv()).map_err(|e| io_err(p, e))?;
            }
            println!("{table}");
            Ok(table.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
