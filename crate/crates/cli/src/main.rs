use alpha_farey::ergodic::{
    farey_normality_report, matching_detect, thin_cylinder_search_from, CylinderSpec, ReportSettings,
};
use alpha_farey::expansion::{alpha_expand, rcf_expand};
use alpha_farey::export::{write_cloud_csv, write_cloud_svg, write_json, write_stream_csv, Header};
use alpha_farey::farey::{farey_orbit, flat_mediant_sequence, mediant_sequence};
use alpha_farey::natext::{measure_estimate, sample_domain, CoordinateSystem, Method, Region};
use alpha_farey::verify::{run_suite, Suite, VerifyConfig};
use alpha_farey::{arith::parse_real, expansion::Alpha, Error, Execution, ExactReal};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact α-continued fractions, α-Farey maps and their natural extensions.
#[derive(Parser)]
#[command(name = "alpha-farey", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Working precision in bits for decimal input and float fallbacks.
    #[arg(long, global = true, default_value_t = 256)]
    precision: u32,
    /// Write here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Run batches on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureMethod {
    Quadrature,
    MonteCarlo,
}

#[derive(Subcommand)]
enum Command {
    /// Digits, convergents and orbit of x.
    Expand {
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Regular continued fraction of x instead.
        #[arg(long)]
        rcf: bool,
    },
    /// The mediant convergent stream of x.
    Mediants {
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Number of Farey steps.
        #[arg(long, default_value_t = 20)]
        k: usize,
        /// Drop the duplicated mediants.
        #[arg(long)]
        flat: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Orbit of x under the α-Farey map; row i holds the i-th image and the
    /// symbol of the branch that produced it.
    FareyOrbit {
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 20)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Sampled point cloud of a planar domain.
    Domain {
        /// Defaults to sqrt2-1.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value = "omega-star")]
        system: String,
        /// Preset system of figure 1 to 8; overrides --system.
        #[arg(long)]
        figure: Option<u8>,
        #[arg(long, default_value_t = 10_000)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Gauss measure dx dy/(x-y)^2 of a rectangle.
    Measure {
        /// x0,x1,y0,y1; y0 may be -inf.
        #[arg(long, default_value = "0,1,-inf,-1", allow_hyphen_values = true)]
        region: String,
        #[arg(long, value_enum, default_value_t = MeasureMethod::Quadrature)]
        method: MeasureMethod,
        #[arg(long, default_value_t = 64)]
        panels: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// Cylinder frequencies along a Farey orbit against measure estimates.
    Normality {
        #[arg(long)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        /// Cylinder such as cf:1,-3, window:-1:2,3, flat1:-2,z2 or flat2:+3; repeatable.
        #[arg(long = "cylinder", default_value = "cf:2")]
        cylinders: Vec<String>,
        /// Orbits behind each measure estimate.
        #[arg(long, default_value_t = 32)]
        orbits: usize,
        #[arg(long, default_value_t = 20_000)]
        orbit_len: usize,
    },
    /// First index pair where the orbits of α and α-1 meet.
    Matching {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 200)]
        max_steps: usize,
    },
    /// A cylinder on which an iterate of G_α is a bijection onto an
    /// interval shorter than eps.
    ThinCylinder {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 40)]
        max_len: usize,
        /// Further orbit to search after those of α-1 and α; repeatable.
        #[arg(long = "start", allow_hyphen_values = true)]
        starts: Vec<String>,
    },
    /// Run self-check suites; all of them when none is named.
    Verify {
        suites: Vec<String>,
        #[arg(long)]
        samples: Option<usize>,
        /// Restrict to these parameters; repeatable.
        #[arg(long = "alpha")]
        alphas: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Verification(usize),
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn sink(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn parse_region(s: &str) -> Result<Region, Error> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| match t.trim() {
            "-inf" => Ok(f64::NEG_INFINITY),
            t => t.parse::<f64>().map_err(|_| Error::Parse(format!("bad number {t:?} in region"))),
        })
        .collect::<Result<_, _>>()?;
    let [x0, x1, y0, y1] = v[..] else { return Err(Error::Parse(format!("region needs 4 numbers, got {}", v.len()))) };
    if !(x0 < x1 && y0 < y1) {
        return Err(Error::Domain(format!("empty region {s}")));
    }
    Ok(Region::rect(x0, x1, y0, y1))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let c = &cli.common;
    let exec = if c.sequential { Execution::Sequential } else { Execution::Parallel };
    let real = |s: &str| parse_real(s, c.precision);
    let header = |cmd: &str, alpha: Option<&ExactReal>, seed: Option<u64>| Header::new(cmd, alpha, seed, c.precision);
    match &cli.command {
        Command::Expand { alpha, x, n, rcf } => {
            let (a, x) = (real(alpha)?, real(x)?);
            let mut w = sink(&c.output)?;
            if *rcf {
                write_json(&mut w, &header("expand --rcf", None, None), &rcf_expand(&x, *n)?)?;
            } else {
                write_json(&mut w, &header("expand", Some(&a), None), &alpha_expand(&a, &x, *n)?)?;
            }
            w.flush()?;
        }
        Command::Mediants { alpha, x, k, flat, format } => {
            let (a, x) = (real(alpha)?, real(x)?);
            let al = Alpha::new(&a)?;
            let stream = if *flat { flat_mediant_sequence(&al, &x, *k)? } else { mediant_sequence(&al, &x, *k)? };
            let h = header(if *flat { "mediants --flat" } else { "mediants" }, Some(&a), None);
            let mut w = sink(&c.output)?;
            match format {
                Format::Json => write_json(&mut w, &h, &stream)?,
                _ => write_stream_csv(&mut w, &h, &stream)?,
            }
            w.flush()?;
        }
        Command::FareyOrbit { alpha, x, k, format } => {
            let (a, x) = (real(alpha)?, real(x)?);
            let orbit = farey_orbit(&Alpha::new(&a)?, &x, *k)?;
            let h = header("farey-orbit", Some(&a), None);
            let mut w = sink(&c.output)?;
            if *format == Format::Json {
                let rows: Vec<(usize, String, String)> =
                    orbit.iter().enumerate().map(|(i, (v, t))| (i + 1, v.to_string(), t.letter().to_string())).collect();
                write_json(&mut w, &h, &rows)?;
            } else {
                write!(w, "{}", h.comment_lines())?;
                writeln!(w, "step,x,symbol")?;
                writeln!(w, "0,{x},")?;
                for (i, (v, t)) in orbit.iter().enumerate() {
                    writeln!(w, "{},{v},{}", i + 1, t.letter())?;
                }
            }
            w.flush()?;
        }
        Command::Domain { alpha, system, figure, points, format } => {
            let a = real(alpha.as_deref().unwrap_or("sqrt2-1"))?;
            let sys = match figure {
                Some(n) => CoordinateSystem::figure(*n)?,
                None => system.parse::<CoordinateSystem>()?,
            };
            let cloud = sample_domain(&a, sys, *points, c.seed, exec)?;
            let h = header(&format!("domain --system {sys}"), Some(&a), Some(c.seed));
            let mut w = sink(&c.output)?;
            match format {
                Format::Csv => write_cloud_csv(&mut w, &h, &cloud)?,
                Format::Json => write_json(&mut w, &h, &cloud)?,
                Format::Svg => write_cloud_svg(&mut w, &h, &cloud, &Alpha::new(&a)?)?,
            }
            w.flush()?;
        }
        Command::Measure { region, method, panels, samples } => {
            let r = parse_region(region)?;
            let m = match method {
                MeasureMethod::Quadrature => Method::Quadrature { panels: *panels },
                MeasureMethod::MonteCarlo => Method::MonteCarlo { samples: *samples, seed: c.seed },
            };
            let est = measure_estimate(&r, m, exec)?;
            let seed = matches!(method, MeasureMethod::MonteCarlo).then_some(c.seed);
            let mut w = sink(&c.output)?;
            write_json(&mut w, &header(&format!("measure --region {region}"), None, seed), &est)?;
            w.flush()?;
        }
        Command::Normality { alpha, x, n, cylinders, orbits, orbit_len } => {
            let (a, x) = (real(alpha)?, real(x)?);
            let specs = cylinders.iter().map(|s| s.parse::<CylinderSpec>()).collect::<Result<Vec<_>, _>>()?;
            let settings = ReportSettings { seed: c.seed, orbits: *orbits, orbit_len: *orbit_len, exec, ..ReportSettings::default() };
            let report = farey_normality_report(&a, &x, &specs, *n, settings)?;
            let mut w = sink(&c.output)?;
            write_json(&mut w, &header("normality", Some(&a), Some(c.seed)), &report)?;
            w.flush()?;
        }
        Command::Matching { alpha, max_steps } => {
            let a = real(alpha)?;
            let m = matching_detect(&a, *max_steps, c.precision)?;
            let mut w = sink(&c.output)?;
            write_json(&mut w, &header("matching", Some(&a), None), &m)?;
            w.flush()?;
        }
        Command::ThinCylinder { alpha, eps, max_len, starts } => {
            let (a, e) = (real(alpha)?, real(eps)?);
            let starts = starts.iter().map(|s| real(s)).collect::<Result<Vec<_>, _>>()?;
            let t = thin_cylinder_search_from(&a, &e, *max_len, &starts)?;
            let mut w = sink(&c.output)?;
            write_json(&mut w, &header("thin-cylinder", Some(&a), None), &t)?;
            w.flush()?;
        }
        Command::Verify { suites, samples, alphas, json } => {
            let chosen = if suites.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suites.iter().map(|s| s.parse::<Suite>()).collect::<Result<Vec<_>, _>>()?
            };
            let alphas = alphas.iter().map(|s| real(s)).collect::<Result<Vec<_>, _>>()?;
            let mut reports = Vec::new();
            for suite in chosen {
                let cfg = VerifyConfig { samples: samples.unwrap_or(suite.default_samples()), seed: c.seed, alphas: alphas.clone(), exec };
                let r = run_suite(suite, &cfg)?;
                if !*json {
                    println!("{r}");
                }
                reports.push(r);
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            if *json || c.output.is_some() {
                let mut w = sink(&c.output)?;
                write_json(&mut w, &header("verify", None, Some(c.seed)), &reports)?;
                w.flush()?;
            }
            if failed > 0 {
                return Err(Failure::Verification(failed));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(n)) => {
            eprintln!("{n} suite(s) failed");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Precision(_)) { 3 } else { 2 })
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(4)
        }
    }
}
