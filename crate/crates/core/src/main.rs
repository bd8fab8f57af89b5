use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use quasipack::enumerate::enumerate_packing;
use quasipack::group::{dihedral_generators, icosahedral_generators, orbit, DEFAULT_DEDUP_TOL};
use quasipack::io::{
    export_packing, fivefold_axis, import_packing, load_config, render_svg, Format, Projection,
    RenderView,
};
use quasipack::oracle::agreement_report;
use quasipack::{Error, Result};

#[derive(Parser)]
#[command(name = "quasipack", version, about = "Quasiperiodic packings of multi-shell clusters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Dihedral,
    Icosahedral,
}

#[derive(Subcommand)]
enum Command {
    /// Print the orbit of a seed point and its cardinality.
    Orbit {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        m: Option<u32>,
        /// Comma-separated coordinates, e.g. `1,0.3,0.1`.
        #[arg(long, allow_hyphen_values = true)]
        seed: String,
    },
    /// Build the packing described by a config file and write it out.
    Generate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        max_points: Option<usize>,
        #[arg(long)]
        radius: Option<f64>,
        /// Worker threads (defaults to all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Draw a packing file as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// `fivefold`, or a unit vector `x,y,z`; required for 3-d packings.
        #[arg(long, allow_hyphen_values = true)]
        axis: Option<String>,
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long, default_value_t = 2.0)]
        point_radius: f64,
        #[arg(long, default_value_t = 800.0)]
        size: f64,
    },
    /// Compare the determinant test against the feasibility oracle.
    Check {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        range: i32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

const EXIT_INPUT: u8 = 1;
const EXIT_LIMIT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::LimitExceeded { .. } => EXIT_LIMIT,
        Error::Invariant(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

fn parse_vector(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|c| {
            c.trim()
                .parse::<f64>()
                .map_err(|_| Error::validation("seed", format!("cannot parse {c:?} as a number")))
        })
        .collect()
}

fn run_orbit(group: GroupArg, m: Option<u32>, seed: &str) -> Result<()> {
    let gens = match group {
        GroupArg::Dihedral => {
            let m = m.ok_or_else(|| Error::validation("m", "required for the dihedral group"))?;
            dihedral_generators(m)?
        }
        GroupArg::Icosahedral => icosahedral_generators(),
    };
    let seed = parse_vector(seed)?;
    let o = orbit(&gens, &seed, DEFAULT_DEDUP_TOL)?;
    println!("cardinality: {}", o.len());
    for p in &o.points {
        let s: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        println!("{}", s.join(","));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_generate(
    config: PathBuf,
    out: PathBuf,
    format: Option<Format>,
    max_points: Option<usize>,
    radius: Option<f64>,
    threads: Option<usize>,
) -> Result<()> {
    let mut spec = load_config(&config)?;
    if max_points.is_some() {
        spec.limits.max_points = max_points;
    }
    if radius.is_some() {
        spec.limits.max_physical_radius = radius;
    }
    let format = format.unwrap_or(spec.format);
    let (emb, cs) = spec.prepare()?;
    eprintln!(
        "n = {}, k = {}, constraints = {} ({} degenerate dropped)",
        emb.n,
        emb.k,
        cs.len(),
        cs.dropped
    );

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        pool = pool.num_threads(t);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let result = pool.install(|| enumerate_packing(&cs, &emb, &spec.limits));

    match result {
        Ok(p) => {
            export_packing(&p, &out, format)?;
            eprintln!("wrote {} points to {}", p.len(), out.display());
            Ok(())
        }
        Err(Error::LimitExceeded { reason, partial }) => {
            export_packing(&partial, &out, format)?;
            eprintln!(
                "limit {reason} reached; wrote partial packing of {} points to {}",
                partial.len(),
                out.display()
            );
            Err(Error::LimitExceeded { reason, partial })
        }
        Err(e) => Err(e),
    }
}

fn run_render(
    input: PathBuf,
    out: PathBuf,
    axis: Option<String>,
    scale: Option<f64>,
    point_radius: f64,
    size: f64,
) -> Result<()> {
    let packing = import_packing(&input)?;
    let projection = match axis.as_deref() {
        None => Projection::Direct,
        Some("fivefold") => Projection::Axis(fivefold_axis(&icosahedral_generators())?),
        Some(v) => {
            let u = parse_vector(v)?;
            let [x, y, z] = u[..] else {
                return Err(Error::validation("axis", "expected three coordinates"));
            };
            Projection::Axis([x, y, z])
        }
    };
    let view = RenderView {
        projection,
        point_radius,
        canvas_size: size,
        scale,
    };
    render_svg(&packing, &view, &out)
}

fn run_check(config: PathBuf, samples: usize, range: i32, seed: u64) -> Result<bool> {
    let spec = load_config(&config)?;
    let (emb, cs) = spec.prepare()?;
    let report = agreement_report(&cs, &emb, samples, range, seed)?;
    println!("{report}");
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Orbit { group, m, seed } => run_orbit(group, m, &seed),
        Command::Generate {
            config,
            out,
            format,
            max_points,
            radius,
            threads,
        } => run_generate(config, out, format, max_points, radius, threads),
        Command::Render {
            input,
            out,
            axis,
            scale,
            point_radius,
            size,
        } => run_render(input, out, axis, scale, point_radius, size),
        Command::Check {
            config,
            samples,
            range,
            seed,
        } => match run_check(config, samples, range, seed) {
            Ok(true) => Ok(()),
            Ok(false) => return ExitCode::from(EXIT_INTERNAL),
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::LimitExceeded { .. }) => {
            eprintln!("warning: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
