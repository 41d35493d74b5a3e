use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use exrays_cli::cache::{self, RayCache};
use exrays_cli::commands::{self, RaySource};
use exrays_cli::config::{self, parse_alpha, parse_real, OutputFormat, Scenario, ScenarioConfig};
use exrays_cli::expected::{self, ExpectedTable};
use exrays_cli::rayset::write_ray_set;
use exrays_cli::reproduce::{reproduce, ReproduceOptions};
use exrays_cli::tables::Table;
use exrays_cli::{pmf_io, CliError, Result};

/// Extremal ray densities and VaR/ES bounds for exchangeable default models.
#[derive(Parser)]
#[command(name = "exrays", version)]
struct Cli {
    /// Log progress and timings to stderr (same as RUST_LOG=info).
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ClassArgs {
    /// Number of obligors.
    #[arg(long, default_value_t = config::DEFAULT_D)]
    d: usize,
    /// Marginal default probability, as a decimal or a fraction.
    #[arg(long, value_parser = real_arg)]
    p: Option<f64>,
    /// Rating scenario: A (0.3%), BBB (1.7%) or B (26.6%).
    #[arg(long, value_parser = parse_scenario)]
    scenario: Option<Scenario>,
    /// Default equicorrelation, e.g. 1/6 or 0.5.
    #[arg(long, allow_hyphen_values = true, value_parser = real_arg)]
    rho: Option<f64>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: OutputFormat,
    /// Write into this directory instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Ray-set cache directory.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the ray densities of a class.
    Rays {
        #[command(flatten)]
        class: ClassArgs,
        /// Write the ray set into this directory and print only the count.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Print only the number of rays.
        #[arg(long)]
        count_only: bool,
    },
    /// VaR and ES bounds per confidence level.
    Bounds {
        #[command(flatten)]
        class: ClassArgs,
        /// Comma-separated confidence levels.
        #[arg(long, value_delimiter = ',', default_value = "0.9,0.95,0.99", value_parser = alpha_arg)]
        alpha: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Moment bounds of orders 1 to 4 and the correlation range.
    Moments {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// VaR bounds and beta VaR along an equispaced correlation grid.
    Sweep {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_delimiter = ',', default_value = "0.9,0.95,0.99", value_parser = alpha_arg)]
        alpha: Vec<f64>,
        /// Number of grid points k/N, k = 0..N.
        #[arg(long, default_value_t = config::DEFAULT_GRID)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Regenerate all published tables and sweeps and check them.
    Reproduce {
        #[arg(long, default_value = "reproduction")]
        out: PathBuf,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: OutputFormat,
        #[arg(long, default_value_t = config::DEFAULT_GRID)]
        grid: usize,
        /// JSON file replacing the built-in reference values.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
    /// Moments, VaR and ES of a count pmf read from a file.
    Stats {
        pmf: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0.9,0.95,0.99", value_parser = alpha_arg)]
        alpha: Vec<f64>,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: OutputFormat,
    },
    /// Split a count pmf into a convex combination of mean-only rays.
    Decompose {
        pmf: PathBuf,
        #[arg(long, default_value = "csv", value_parser = parse_format)]
        format: OutputFormat,
    },
}

// clap value parsers need errors that are Display + Send + Sync
fn real_arg(s: &str) -> std::result::Result<f64, String> {
    parse_real(s).map_err(|e| e.to_string())
}

fn alpha_arg(s: &str) -> std::result::Result<f64, String> {
    parse_alpha(s).map_err(|e| e.to_string())
}

fn parse_scenario(s: &str) -> std::result::Result<Scenario, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

impl ClassArgs {
    fn config(&self) -> Result<ScenarioConfig> {
        ScenarioConfig::new(self.d, self.p, self.scenario, self.rho)
    }
}

/// Writes to stdout; a closed pipe (`exrays rays | head`) is not an error.
fn write_stdout(text: &str) -> Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(CliError::io("<stdout>", e)),
        _ => Ok(()),
    }
}

fn open_cache(dir: &Option<PathBuf>) -> Result<Option<RayCache>> {
    dir.as_ref().map(RayCache::new).transpose()
}

fn emit(table: &Table, output: &OutputArgs) -> Result<()> {
    let text = table.render(output.format)?;
    match &output.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            let path = dir.join(format!("{}.{}", table.name, output.format.extension()));
            fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
            println!("{}", path.display());
        }
        None => write_stdout(&text)?,
    }
    Ok(())
}

fn load_expected(path: &Option<PathBuf>) -> Result<Vec<ExpectedTable>> {
    match path {
        None => Ok(expected::published()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            Ok(serde_json::from_str(&text)?)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Rays {
            class,
            out,
            cache: cache_dir,
            count_only,
        } => {
            let cfg = class.config()?;
            let spec = cfg.class()?;
            let rays = cache::rays_for(&spec, open_cache(&cache_dir)?.as_ref())?;
            if count_only {
                println!("{}", rays.len());
                return Ok(());
            }
            let text = write_ray_set(&spec, &rays);
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
                    let path = dir.join(format!("{}.txt", RayCache::key(&spec)));
                    fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
                    println!("count {} -> {}", rays.len(), path.display());
                }
                None => write_stdout(&text)?,
            }
        }
        Command::Bounds {
            class,
            alpha,
            output,
        } => {
            let cfg = class.config()?.with_alphas(alpha);
            let mut source = RaySource::new(open_cache(&output.cache)?);
            let rays = source.rays(&cfg.class()?)?;
            emit(&commands::bounds_table(&cfg, &rays)?, &output)?;
        }
        Command::Moments { class, output } => {
            emit(&commands::moments_table(&class.config()?)?, &output)?;
        }
        Command::Sweep {
            class,
            alpha,
            grid,
            output,
        } => {
            let cfg = class.config()?.with_alphas(alpha);
            let mut source = RaySource::new(open_cache(&output.cache)?);
            emit(&commands::sweep_table(&cfg, grid, &mut source)?, &output)?;
        }
        Command::Reproduce {
            out,
            cache: cache_dir,
            format,
            grid,
            expected,
        } => {
            let reference = load_expected(&expected)?;
            let opts = ReproduceOptions {
                out,
                format,
                cache: cache_dir,
                grid,
            };
            let report = reproduce(&opts, &reference)?;
            println!(
                "wrote {} tables and {} sweeps; manifest {}",
                report.tables.len(),
                report.sweeps.len(),
                report.manifest_path.display()
            );
            if !report.diffs.is_empty() {
                for d in &report.diffs {
                    eprintln!("{d}");
                }
                return Err(CliError::Mismatch(report.diffs));
            }
            println!(
                "all {} tables match the reference values",
                report.tables.len()
            );
        }
        Command::Stats { pmf, alpha, format } => {
            let pmf = pmf_io::read_pmf(&pmf)?;
            write_stdout(&commands::stats_table(&pmf, &alpha)?.render(format)?)?;
        }
        Command::Decompose { pmf, format } => {
            let pmf = pmf_io::read_pmf(Path::new(&pmf))?;
            write_stdout(&commands::decompose_table(&pmf)?.render(format)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
