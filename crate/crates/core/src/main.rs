use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use horizon_corr::hardcore::HardcoreMode;
use horizon_corr::params::FieldKind;
use horizon_corr::sweep::{
    check_report, figure_preset, run_sweep, write_csv, CheckKind, SweepConfig, PRESET_NAMES,
};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_COMPUTE: u8 = 3;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FieldArg {
    Dirac,
    Scalar,
    Hardcore,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    #[value(name = "truncate_only")]
    TruncateOnly,
    #[value(name = "renormalized")]
    Renormalized,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckArg {
    #[value(name = "I_conservation")]
    IConservation,
    #[value(name = "N_conservation")]
    NConservation,
    #[value(name = "N_ARbar_zero")]
    NArbarZero,
    #[value(name = "oracle")]
    Oracle,
}

/// Correlation curves for a uniformly accelerated observer.
#[derive(Debug, Parser)]
#[command(version, about)]
struct Cli {
    /// Field to sweep (required unless --preset is given).
    #[arg(long, value_enum, required_unless_present = "preset", conflicts_with = "preset")]
    field: Option<FieldArg>,

    /// Figure preset: fig2..fig7.
    #[arg(long)]
    preset: Option<String>,

    #[arg(long)]
    r_min: Option<f64>,

    #[arg(long)]
    r_max: Option<f64>,

    /// Number of grid points, endpoints included.
    #[arg(long)]
    steps: Option<usize>,

    /// Hardcore occupation cap N.
    #[arg(long)]
    cap: Option<usize>,

    #[arg(long, value_enum)]
    hardcore_mode: Option<ModeArg>,

    /// Fock-space tail mass allowed by the adaptive truncation.
    #[arg(long)]
    tail_tol: Option<f64>,

    /// Largest Rob-AntiRob block summed for the scalar negativity.
    #[arg(long)]
    d_max: Option<usize>,

    /// Output CSV path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Run checks; with no names, the ones that hold for the field.
    #[arg(long, value_enum, num_args = 0.., value_delimiter = ',')]
    check: Option<Vec<CheckArg>>,

    /// Skip the constructive cross-check.
    #[arg(long)]
    no_oracle: bool,
}

fn build_config(cli: &Cli) -> Result<SweepConfig, String> {
    let mut cfg = match (&cli.preset, cli.field) {
        (Some(name), _) => figure_preset(name).map_err(|e| e.to_string())?,
        (None, Some(f)) => SweepConfig::for_field(match f {
            FieldArg::Dirac => FieldKind::Dirac,
            FieldArg::Scalar => FieldKind::Scalar,
            FieldArg::Hardcore => FieldKind::Hardcore,
        }),
        (None, None) => return Err(format!("one of --field or --preset ({}) is required", PRESET_NAMES.join(", "))),
    };
    if let Some(v) = cli.r_min {
        cfg.r_min = v;
    }
    if let Some(v) = cli.r_max {
        cfg.r_max = v;
    }
    if let Some(v) = cli.steps {
        cfg.steps = v;
    }
    if let Some(v) = cli.cap {
        cfg.hardcore.cap = v;
    }
    if let Some(m) = cli.hardcore_mode {
        cfg.hardcore.mode = match m {
            ModeArg::TruncateOnly => HardcoreMode::TruncateOnly,
            ModeArg::Renormalized => HardcoreMode::Renormalized,
        };
    }
    if let Some(v) = cli.tail_tol {
        cfg.truncation.tail_tol = v;
    }
    if let Some(v) = cli.d_max {
        cfg.truncation.d_max = v;
    }
    cfg.oracle = !cli.no_oracle;
    cfg.out = cli.out.clone();
    if let Some(names) = &cli.check {
        cfg.checks = if names.is_empty() {
            CheckKind::defaults(cfg.field, cfg.oracle)
        } else {
            names
                .iter()
                .map(|c| match c {
                    CheckArg::IConservation => CheckKind::IConservation,
                    CheckArg::NConservation => CheckKind::NConservation,
                    CheckArg::NArbarZero => CheckKind::NArbarZero,
                    CheckArg::Oracle => CheckKind::Oracle,
                })
                .collect()
        };
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn write_output(cfg: &SweepConfig, rows: &[horizon_corr::sweep::RowResult]) -> io::Result<()> {
    let sink: Box<dyn Write> = match &cfg.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    write_csv(sink, &cfg.columns, rows).map_err(|e| io::Error::other(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let rows = match run_sweep(&cfg) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let mut failed_rows = 0;
    for (r, e) in rows.iter().filter_map(|row| row.as_ref().err()) {
        eprintln!("error at r={r}: {e}");
        failed_rows += 1;
    }
    if let Err(e) = write_output(&cfg, &rows) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_COMPUTE);
    }
    let mut checks_ok = true;
    if !cfg.checks.is_empty() {
        let reports: Vec<_> = rows.iter().filter_map(|r| r.as_ref().ok().copied()).collect();
        match check_report(&reports, cfg.field, &cfg.checks) {
            Ok(summary) => {
                eprint!("{summary}");
                checks_ok = summary.all_pass();
            }
            Err(e) => {
                eprintln!("error: {e}");
                checks_ok = false;
            }
        }
    }
    if failed_rows > 0 {
        ExitCode::from(EXIT_COMPUTE)
    } else if !checks_ok {
        ExitCode::from(EXIT_CHECK_FAILED)
    } else {
        ExitCode::SUCCESS
    }
}
