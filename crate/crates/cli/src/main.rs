//! `wavesource` command line: table reproductions and single reconstructions,
//! all written as CSV.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use wavesource::harness::{self, ExperimentConfig, Method};
use wavesource::Error;

#[derive(Parser)]
#[command(name = "wavesource", version, about = "Source reconstruction from wave boundary traces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Condition numbers of the Gram matrix over (omega, N, alpha).
    Table1(Common),
    /// Discrepancies of noise-free reconstructions over (omega, N, alpha).
    Table2(Common),
    /// Noisy ensembles with discrepancy-principle cut-off selection.
    Table3(Common),
    /// One reconstruction: writes trace.csv and profile.csv.
    Reconstruct(Common),
}

#[derive(Args)]
struct Common {
    /// JSON experiment definition; defaults are used when omitted.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Number of consecutive seeds when the config has no `seeds` list.
    #[arg(long, value_name = "K", default_value_t = harness::DEFAULT_SEED_COUNT)]
    seed_count: usize,
    /// Inversion route; overrides the config.
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Spectral,
    Volterra,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Spectral => Method::Spectral,
            MethodArg::Volterra => Method::Volterra,
        }
    }
}

fn load(common: &Common) -> wavesource::Result<ExperimentConfig> {
    let mut cfg = match &common.config {
        Some(path) => ExperimentConfig::from_path(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(m) = common.method {
        cfg.method = m.into();
    }
    if common.seed_count == 0 {
        return Err(Error::Config {
            field: "seed-count".into(),
            message: "must be at least 1".into(),
        });
    }
    Ok(cfg)
}

fn out_dir(dir: &Path) -> wavesource::Result<&Path> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("cannot create {}: {e}", dir.display())))?;
    Ok(dir)
}

fn run(command: Command) -> wavesource::Result<()> {
    match command {
        Command::Table1(common) => {
            let cfg = load(&common)?;
            let rows = harness::table1(&cfg)?;
            harness::write_csv(&out_dir(&common.out)?.join("table1.csv"), &rows)
        }
        Command::Table2(common) => {
            let cfg = load(&common)?;
            let rows = harness::table2(&cfg)?;
            harness::write_csv(&out_dir(&common.out)?.join("table2.csv"), &rows)
        }
        Command::Table3(common) => {
            let cfg = load(&common)?;
            let rows = harness::table3(&cfg, &cfg.seed_list(common.seed_count))?;
            harness::write_csv(&out_dir(&common.out)?.join("table3.csv"), &rows)
        }
        Command::Reconstruct(common) => {
            let cfg = load(&common)?;
            let rec = harness::reconstruct(&cfg)?;
            let dir = out_dir(&common.out)?;
            harness::write_csv(&dir.join("trace.csv"), &rec.trace)?;
            harness::write_csv(&dir.join("profile.csv"), &rec.profile)?;
            print!("method={:?} N={} gamma1={:.6e} eps_F={:.6e}", rec.method, cfg.cutoff, rec.gamma1, rec.rel_error);
            if let Some(eta) = rec.discrepancy {
                print!(" eta={eta:.6e}");
            }
            println!();
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wavesource: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
    }
}
