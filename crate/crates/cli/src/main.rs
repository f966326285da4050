use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use mft_cli::bench::{self, BenchConfig};
use mft_cli::format::{PolygonFile, ReportFile};
use mft_cli::{io_error, svg, verify, CliError};
use mft_core::polygon::{generate_random, perturb, validate};
use mft_core::solver::{solve, Algorithm, SolveOptions};
use mft_core::Polygon;

#[derive(Parser)]
#[command(name = "mft", version, about = "Minimum-area all-flush triangle of a convex polygon")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one polygon and print the report as JSON.
    Solve(SolveArgs),
    /// Write a random convex polygon.
    Generate(GenerateArgs),
    /// Cross-check all algorithms against the exhaustive oracle.
    Verify(VerifyArgs),
    /// Time algorithms over doubling sizes.
    Bench(BenchArgs),
    /// Draw a polygon and its triangle as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct SolveArgs {
    input: PathBuf,
    #[arg(long, default_value = "linear")]
    algo: Algorithm,
    /// Include every emitted triangle in the report.
    #[arg(long)]
    emit_candidates: bool,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Jitter the vertices slightly when the input fails validation.
    #[arg(long)]
    perturb: bool,
    #[arg(long, env = "MFT_SEED", default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, env = "MFT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    input: Option<PathBuf>,
    /// Check `count` random polygons with `n` vertices from consecutive seeds.
    #[arg(long, num_args = 3, value_names = ["N", "SEED", "COUNT"])]
    random: Option<Vec<u64>>,
    /// Compare a stored report against the oracle instead of re-solving.
    #[arg(long, requires = "input")]
    report: Option<PathBuf>,
    /// Where a minimized failing instance is written.
    #[arg(long, default_value = "mft-failure.json")]
    dump: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated sizes, or a doubling range such as `2^10..2^14`.
    #[arg(long, default_value = "2^10..2^16")]
    sizes: String,
    /// Number of seeds per size, starting from the base seed.
    #[arg(long, default_value_t = 3)]
    seeds: u64,
    #[arg(long, env = "MFT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "linear,logn")]
    algos: Vec<Algorithm>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    input: PathBuf,
    /// Triangle to draw; solved with the linear algorithm when absent.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Render(a) => cmd_render(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| io_error(path, e))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

const PERTURB_TRIES: u64 = 8;

fn load_polygon(path: &Path, allow_perturb: bool, seed: u64) -> Result<(PolygonFile, Polygon), CliError> {
    let mut file = PolygonFile::read(path)?;
    let err = match file.polygon() {
        Ok(p) => return Ok((file, p)),
        Err(e) => e,
    };
    if !allow_perturb {
        return Err(err);
    }
    let points = file.points();
    for k in 0..PERTURB_TRIES {
        let jittered = perturb(&points, seed.wrapping_add(k));
        if let Ok(p) = validate(jittered.clone()) {
            eprintln!("note: input perturbed ({err}), seed {}", seed.wrapping_add(k));
            file = PolygonFile::from_points(&jittered);
            return Ok((file, p));
        }
    }
    Err(err)
}

fn cmd_solve(a: SolveArgs) -> Result<(), CliError> {
    let (file, p) = load_polygon(&a.input, a.perturb, a.seed)?;
    let opts = SolveOptions {
        keep_candidates: a.emit_candidates,
        ..SolveOptions::default()
    };
    let start = Instant::now();
    let rep = solve(&p, a.algo, &opts)?;
    let wall = start.elapsed().as_nanos() as u64;
    let report = ReportFile::new(&p, &rep, wall);
    if let Some(path) = &a.svg {
        write_file(path, &svg::render(&file.vertices, &report.mft.corners))?;
    }
    emit(a.out.as_deref(), &report.to_json())
}

fn cmd_generate(a: GenerateArgs) -> Result<(), CliError> {
    let p: Polygon = generate_random(a.n, a.seed)?;
    let mut file = PolygonFile::from_points(p.vertices());
    file.seed = Some(a.seed);
    file.generator = Some("random-convex".into());
    emit(a.out.as_deref(), &file.to_json())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CliError> {
    if let Some(report_path) = &a.report {
        let input = a.input.as_deref().expect("clap requires input");
        let p = PolygonFile::read(input)?.polygon()?;
        let report = ReportFile::read(report_path)?;
        let bad = verify::check_report(&p, &report)?;
        for b in &bad {
            println!("FAIL {}: {b}", report_path.display());
        }
        println!("{}/1 OK", usize::from(bad.is_empty()));
        return if bad.is_empty() {
            Ok(())
        } else {
            Err(CliError::Verification(format!("report disagrees with the oracle: {}", bad[0])))
        };
    }

    let instances: Vec<(String, Result<Polygon, CliError>)> = match (&a.input, &a.random) {
        (Some(path), _) => vec![(path.display().to_string(), PolygonFile::read(path).and_then(|f| f.polygon()))],
        (None, Some(r)) => verify::random_instances(r[0] as usize, r[1], r[2] as usize)
            .map(|(s, p)| (format!("n={} seed={s}", r[0]), p))
            .collect(),
        (None, None) => unreachable!("clap requires one source"),
    };
    let total = instances.len();
    let mut ok = 0;
    let mut first_failure: Option<(String, Polygon, String)> = None;
    for (name, p) in instances {
        let p = p?;
        let bad = verify::check_polygon(&p)?;
        if bad.is_empty() {
            ok += 1;
            continue;
        }
        for b in &bad {
            println!("FAIL {name}: {b}");
        }
        if first_failure.is_none() {
            first_failure = Some((name, p, bad[0].clone()));
        }
    }
    println!("{ok}/{total} OK");
    match first_failure {
        None => Ok(()),
        Some((name, p, msg)) => {
            let points: Vec<_> = (0..p.n()).map(|k| p.vertex(k)).collect();
            let mut file = PolygonFile::from_points(&verify::minimize(&points));
            file.name = Some(format!("minimized from {name}"));
            write_file(&a.dump, &file.to_json())?;
            eprintln!("minimized failing instance written to {}", a.dump.display());
            Err(CliError::Verification(format!("{name}: {msg}")))
        }
    }
}

fn parse_size(s: &str) -> Result<usize, CliError> {
    let s = s.trim();
    let bad = || CliError::Input(format!("bad size `{s}`"));
    match s.split_once('^') {
        Some(("2", e)) => {
            let e: u32 = e.parse().map_err(|_| bad())?;
            1usize.checked_shl(e).ok_or_else(bad)
        }
        Some(_) => Err(bad()),
        None => s.parse().map_err(|_| bad()),
    }
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, CliError> {
    if let Some((lo, hi)) = s.split_once("..") {
        let (mut x, hi) = (parse_size(lo)?, parse_size(hi)?);
        let mut out = Vec::new();
        while x <= hi && x > 0 {
            out.push(x);
            x *= 2;
        }
        return Ok(out);
    }
    s.split(',').map(parse_size).collect()
}

fn cmd_bench(a: BenchArgs) -> Result<(), CliError> {
    let cfg = BenchConfig {
        sizes: parse_sizes(&a.sizes)?,
        seeds: (0..a.seeds).map(|k| a.seed.wrapping_add(k)).collect(),
        algos: a.algos.clone(),
        repeats: a.repeats,
    };
    let (rows, skipped) = bench::run(&cfg, |r| {
        eprintln!("{} n={} seed={}: {} ns", r.algo, r.size, r.seed, r.wall_ns);
    })?;
    for s in &skipped {
        eprintln!("note: {s}");
    }
    let csv_err = |e: csv::Error| CliError::Input(format!("csv: {e}"));
    match &a.csv {
        Some(path) => {
            let f = std::fs::File::create(path).map_err(|e| io_error(path, e))?;
            bench::write_csv(&rows, f).map_err(csv_err)?;
        }
        None => bench::write_csv(&rows, std::io::stdout()).map_err(csv_err)?,
    }
    for algo in &a.algos {
        for (size, ratio) in bench::doubling_ratios(&rows, algo.name()) {
            println!("ratio {algo} {size}: {ratio:.3}");
        }
    }
    Ok(())
}

fn cmd_render(a: RenderArgs) -> Result<(), CliError> {
    let file = PolygonFile::read(&a.input)?;
    let p = file.polygon()?;
    let corners = match &a.report {
        Some(path) => ReportFile::read(path)?.mft.corners,
        None => {
            let rep = solve(&p, Algorithm::Linear, &SolveOptions::default())?;
            ReportFile::new(&p, &rep, 0).mft.corners
        }
    };
    write_file(&a.out, &svg::render(&file.vertices, &corners))
}
