use crate::dirac::dirac_report_with;
use crate::error::{Error, Result};
use crate::hardcore::hardcore_report_with;
use crate::params::{FieldKind, SqueezingParam};
use crate::report::CorrelationReport;
use crate::scalar::scalar_report_with;

use super::config::SweepConfig;

/// Outcome at one grid point: the report, or the error with its `r`.
pub type RowResult = std::result::Result<CorrelationReport, (f64, Error)>;

pub fn evaluate_point(cfg: &SweepConfig, r: f64) -> Result<CorrelationReport> {
    let p = SqueezingParam::new(cfg.field, r)?;
    match cfg.field {
        FieldKind::Dirac => dirac_report_with(&p, cfg.oracle),
        FieldKind::Scalar => scalar_report_with(&p, &cfg.truncation, cfg.oracle),
        FieldKind::Hardcore => hardcore_report_with(&p, &cfg.hardcore, cfg.oracle),
    }
}

fn row(cfg: &SweepConfig, r: f64) -> RowResult {
    evaluate_point(cfg, r).map_err(|e| (r, e))
}

/// One row per grid point, in grid order. A failing point does not stop the
/// sweep.
pub fn run_sweep_sequential(cfg: &SweepConfig) -> Result<Vec<RowResult>> {
    cfg.validate()?;
    Ok(cfg.grid().into_iter().map(|r| row(cfg, r)).collect())
}

/// As [`run_sweep_sequential`], with points evaluated on the rayon pool.
#[cfg(feature = "parallel")]
pub fn run_sweep_parallel(cfg: &SweepConfig) -> Result<Vec<RowResult>> {
    use rayon::prelude::*;
    cfg.validate()?;
    Ok(cfg.grid().into_par_iter().map(|r| row(cfg, r)).collect())
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<RowResult>> {
    #[cfg(feature = "parallel")]
    {
        run_sweep_parallel(cfg)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_sweep_sequential(cfg)
    }
}
