mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kochawave::tiling::TileKind;
use kochawave::verify::Fault;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "kochawave", version, about = "Build, check and draw the Kochawave curve")]
struct Cli {
    /// Worker threads; all cores when unset.
    #[arg(long, global = true, env = "KOCHAWAVE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertices of the n-th iterate as JSON, CSV or SVG.
    Generate(GenerateArgs),
    /// Run the invariant suite and print a JSON report.
    Verify(VerifyArgs),
    /// Cover a window of the plane with tiles and check the covering.
    Tessellate(TessellateArgs),
    /// Exact properties of the n-th iterate.
    Properties(PropertiesArgs),
    /// Draw one of the built-in figures.
    Render(RenderArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Construction {
    Segments,
    Triangles,
    Lsystem,
    Numeric,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Svg,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Serialize)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value_t = Construction::Segments)]
    construction: Construction,
    #[arg(long, default_value_t = 3)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; stdout when omitted or `-`.
    #[arg(long, short)]
    #[serde(skip)]
    output: Option<String>,
    /// Largest n accepted without `--allow-large`.
    #[arg(long, default_value_t = 12)]
    max_n: u32,
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args, Debug, Clone)]
struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    n: u32,
    /// Comma separated check names; all checks when omitted.
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Break one construction on purpose: `turtle-rule` or `z-step`.
    #[arg(long)]
    inject_fault: Option<Fault>,
    #[arg(long, short)]
    output: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct TessellateArgs {
    #[arg(long, value_parser = parse_scheme)]
    scheme: TileKind,
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Scales of a scale-invariant covering, `lo..hi` inclusive.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_k_range)]
    k_range: Option<(i32, i32)>,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Boundary exclusion distance; a tenth of the finest tile edge when unset.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Window `a,b,w,h` in lattice units: corner a+bω, sides w along 1 and h along ω.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_window, default_value = "0,0,2,2")]
    window: [i64; 4],
    /// Writes PREFIX.json and PREFIX.svg.
    #[arg(long, short, default_value = "covering")]
    output: String,
}

#[derive(Args, Debug, Clone)]
struct PropertiesArgs {
    #[arg(long, default_value_t = 4)]
    n: u32,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    json: bool,
    #[arg(long, short)]
    output: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct RenderArgs {
    #[arg(long)]
    preset: String,
    #[arg(long, short)]
    output: Option<String>,
    /// Also dump the scene as JSON here.
    #[arg(long)]
    scene_json: Option<String>,
}

fn parse_scheme(s: &str) -> Result<TileKind, String> {
    s.parse::<TileKind>().map_err(|_| {
        let names: Vec<&str> = TileKind::ALL.iter().map(|k| k.name()).collect();
        format!("unknown scheme `{s}`; expected one of {}", names.join(", "))
    })
}

fn parse_k_range(s: &str) -> Result<(i32, i32), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got `{s}`"))?;
    let lo: i32 = lo.trim().parse().map_err(|e| format!("bad lower scale `{lo}`: {e}"))?;
    let hi: i32 = hi.trim().parse().map_err(|e| format!("bad upper scale `{hi}`: {e}"))?;
    if lo > hi {
        return Err(format!("empty scale range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn parse_window(s: &str) -> Result<[i64; 4], String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| format!("bad window entry `{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    <[i64; 4]>::try_from(v).map_err(|_| format!("window needs four integers a,b,w,h, got `{s}`"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let run = match &cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Verify(a) => commands::verify(a),
        Command::Tessellate(a) => commands::tessellate(a),
        Command::Properties(a) => commands::properties(a),
        Command::Render(a) => commands::render(a),
    };
    match run {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
