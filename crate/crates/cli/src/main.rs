use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use superharmonic::geometry::DerivativeMode;
use superharmonic_cli::{
    run_selection, summary_table, to_json_lines, validate_overrides, ConfigError, GridSize,
    Selection, SuiteConfig,
};

/// Run a verification suite and report one JSON record per check.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
struct Args {
    /// algebra, clifford, geometry, dirac, torsion, couplings, weyl,
    /// super-weyl, susy-basic, susy-full, varform1 or all
    suite: String,
    /// `key = value` file; command-line flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Grid size as NxM
    #[arg(long)]
    grid: Option<GridSize>,
    /// spectral, fd2 or fd4
    #[arg(long)]
    mode: Option<DerivativeMode>,
    /// Number of Grassmann generators
    #[arg(long)]
    gens: Option<usize>,
    /// Base random seed
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON-lines report here; the summary then goes to standard
    /// output instead of standard error
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add wall time per check to each record
    #[arg(long)]
    timings: bool,
}

fn load(args: &Args) -> Result<SuiteConfig, ConfigError> {
    let mut c = SuiteConfig::default();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        c.apply_text(&text)?;
    }
    if let Some(g) = args.grid {
        c.grid = g;
    }
    if let Some(m) = args.mode {
        c.mode = m;
    }
    if let Some(n) = args.gens {
        c.generators = n;
    }
    if let Some(s) = args.seed {
        c.seed = s;
    }
    if args.out.is_some() {
        c.out.clone_from(&args.out);
    }
    c.timings |= args.timings;
    c.validate()?;
    validate_overrides(&c)?;
    Ok(c)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let selection: Selection = match args.suite.parse() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let config = match load(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let records = run_selection(&selection, &config);
    let report = to_json_lines(&records);
    let summary = summary_table(&records);
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &report) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            print!("{summary}");
        }
        // keep standard output pure JSON lines
        None => {
            print!("{report}");
            eprint!("{summary}");
        }
    }
    if records.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
