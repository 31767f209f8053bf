//! Parameter sweeps over `r`, CSV output and conservation checks.

mod check;
mod config;
mod csv;
mod preset;
mod run;

pub use check::{check_report, CheckKind, CheckLine, ConservationSummary};
pub use config::{Column, SweepConfig};
pub use csv::{parse_csv, parse_reports, write_csv, CsvTable};
pub use preset::{figure_preset, PRESET_NAMES};
pub use run::{evaluate_point, run_sweep, run_sweep_sequential, RowResult};
#[cfg(feature = "parallel")]
pub use run::run_sweep_parallel;
