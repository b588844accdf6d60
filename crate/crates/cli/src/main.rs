use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use pg_cubic::Error;
use pg_cubic_cli::commands::{self, parse_complex, parse_times};
use pg_cubic_cli::config::{parse_grid, Format, RunConfig, CONFIG_ENV};
use pg_cubic_cli::output::Table;
use pg_cubic_cli::verify::verify;
use pg_cubic_cli::{exit_code, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};

/// Classify, evolve and scan cubic Hele-Shaw (Polubarinova-Galin) solutions.
#[derive(Debug, Parser)]
#[command(name = "pg-cubic", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Flat key=value config file (defaults to $PG_CUBIC_CONFIG)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_name = "csv|json")]
    format: Option<Format>,
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Width of the band around 1/4 treated as touching
    #[arg(long, global = true, value_name = "R")]
    tolerance: Option<f64>,
    /// Grid size: N (N x N) or NX,NY,NZ
    #[arg(long, global = true, value_name = "N")]
    grid: Option<String>,
    /// Boundary samples used by the univalence oracle
    #[arg(long, global = true, value_name = "N")]
    samples: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify an initial map f = z + a2 z^2 + a3 z^3 as C1, C2 or C3
    Classify(MapArgs),
    /// Evolve an initial map to the given times
    Evolve {
        #[command(flatten)]
        map: MapArgs,
        /// Comma-separated times
        #[arg(long, value_name = "LIST", default_value = "0", value_parser = parse_time_list)]
        t: TimeList,
    },
    /// Classify a grid of the (x1, x2) plane at height x3 = s
    RegionScan {
        /// Slice height; omit to scan the configured number of slices
        #[arg(long, value_name = "R", allow_negative_numbers = true)]
        s: Option<f64>,
        /// Half-width of the square scan window
        #[arg(long, value_name = "R")]
        window: Option<f64>,
    },
    /// Emit the boundary curve of the global-existence region at height s
    Boundary {
        #[arg(long, value_name = "R", allow_negative_numbers = true)]
        s: f64,
        /// Number of curve points
        #[arg(long, value_name = "N", default_value_t = 100)]
        n: usize,
    },
    /// Run the built-in verification suites
    Verify,
}

#[derive(Debug, Clone)]
struct TimeList(Vec<f64>);

fn parse_time_list(text: &str) -> Result<TimeList, String> {
    parse_times(text).map(TimeList)
}

#[derive(Debug, Args)]
struct MapArgs {
    /// Second coefficient, e.g. 0.5-0.1i
    #[arg(long, value_name = "RE+IMi", value_parser = parse_complex, allow_hyphen_values = true)]
    a2: Complex64,
    /// Third coefficient, in (0, 1/3)
    #[arg(long, value_name = "R", allow_negative_numbers = true)]
    a3: f64,
}

fn load_config(common: &Common) -> Result<RunConfig, Error> {
    let path = common
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).filter(|p| !p.is_empty()).map(PathBuf::from));
    let mut cfg = match path {
        Some(p) => RunConfig::from_file(&p)?,
        None => RunConfig::default(),
    };
    if let Some(f) = common.format {
        cfg.format = f;
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    if let Some(t) = common.tolerance {
        cfg.tolerance = t;
    }
    if let Some(g) = &common.grid {
        cfg.grid = parse_grid(g, cfg.grid.2)?;
    }
    if let Some(n) = common.samples {
        cfg.n_boundary_samples = n;
    }
    Ok(cfg)
}

fn emit(table: &Table, format: Format) {
    let text = table.render(format);
    let mut out = std::io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn run(cli: Cli) -> Result<i32, Error> {
    let mut cfg = load_config(&cli.common)?;
    if let Command::RegionScan { window: Some(w), .. } = cli.command {
        cfg.window = w;
    }
    cfg.validate()?;
    let table = match cli.command {
        Command::Classify(m) => commands::classify(&cfg, m.a2, m.a3)?,
        Command::Evolve { map, t } => commands::evolve(&cfg, map.a2, map.a3, &t.0)?,
        Command::RegionScan { s, .. } => commands::region_scan(&cfg, s)?,
        Command::Boundary { s, n } => commands::boundary(&cfg, s, n)?,
        Command::Verify => {
            let (table, ok) = verify(&cfg);
            emit(&table, cfg.format);
            return Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED });
        }
    };
    emit(&table, cfg.format);
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_OK as u8 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
