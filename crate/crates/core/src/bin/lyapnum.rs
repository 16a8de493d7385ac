use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lyapnum::report::commands::{self, ConfigOverrides, EXIT_CONFIG};
use lyapnum::report::RunManifest;
use lyapnum::EstimatorConfig;

#[derive(Parser)]
#[command(
    name = "lyapnum",
    version,
    about = "Estimate the four Lyapunov numbers of zoo systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunFlags {
    /// desk or smoke
    #[arg(long, default_value = "desk")]
    preset: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    horizon: Option<usize>,
    #[arg(long)]
    delta0: Option<f64>,
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long)]
    tail_fraction: Option<f64>,
    /// Restrict L2/L4 separations to n >= 1
    #[arg(long)]
    strict_paper_n: bool,
    /// Print machine-readable JSON
    #[arg(long)]
    json: bool,
}

impl RunFlags {
    fn config(&self) -> Result<EstimatorConfig, lyapnum::ConfigError> {
        let overrides = ConfigOverrides {
            seed: self.seed,
            horizon: self.horizon,
            delta0: self.delta0,
            levels: self.levels,
            tail_fraction: self.tail_fraction,
            strict_paper_n: self.strict_paper_n,
        };
        Ok(overrides.apply(EstimatorConfig::preset(&self.preset)?))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Estimate one system and write report.json and curves.csv
    Estimate {
        #[arg(long, required_unless_present = "manifest")]
        system: Option<String>,
        /// Run manifest (JSON); replaces --system and the config flags
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Check inequalities and theorems on several systems
    Verify {
        /// Repeatable; defaults to the whole registry
        #[arg(long)]
        system: Vec<String>,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Exact values on the full shift by enumeration
    Oracle {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 12)]
        w: usize,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        tail_fraction: f64,
    },
    /// List registry systems
    Zoo {
        filter: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let code = match cli.command {
        Command::Estimate {
            system,
            manifest,
            out: dir,
            run,
        } => {
            let built = match (manifest, system) {
                (Some(path), _) => std::fs::read_to_string(&path)
                    .map_err(|e| format!("reading {}: {e}", path.display()))
                    .and_then(|t| RunManifest::from_json(&t).map_err(|e| e.to_string())),
                (None, Some(name)) => run
                    .config()
                    .and_then(|cfg| RunManifest::new(&name, cfg))
                    .map_err(|e| e.to_string()),
                (None, None) => unreachable!("clap requires one of them"),
            };
            match built {
                Ok(m) => {
                    let m = match dir {
                        Some(d) => m.with_out_dir(d),
                        None => m,
                    };
                    commands::cmd_estimate(&m, run.json, &mut out, &mut err)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_CONFIG
                }
            }
        }
        Command::Verify { system, run } => match run.config() {
            Ok(cfg) => commands::cmd_verify(&system, &cfg, run.json, &mut out, &mut err),
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_CONFIG
            }
        },
        Command::Oracle {
            k,
            m,
            w,
            n,
            tail_fraction,
        } => commands::cmd_oracle(k, m, w, n, tail_fraction, &mut out, &mut err),
        Command::Zoo { filter, json } => commands::cmd_zoo_list(filter.as_deref(), json, &mut out),
    };
    ExitCode::from(code as u8)
}
