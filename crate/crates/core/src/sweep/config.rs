use std::f64::consts::FRAC_PI_4;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::hardcore::HardcoreConfig;
use crate::params::FieldKind;
use crate::report::CorrelationReport;
use crate::scalar::TruncationConfig;

use super::check::CheckKind;

/// One CSV column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Column {
    R,
    IAr,
    IArbar,
    IRrbar,
    NAr,
    NArbar,
    NRrbar,
    LogNRrbar,
    TraceDeficit,
    OracleDiscrepancy,
}

impl Column {
    pub const ALL: [Column; 10] = [
        Column::R,
        Column::IAr,
        Column::IArbar,
        Column::IRrbar,
        Column::NAr,
        Column::NArbar,
        Column::NRrbar,
        Column::LogNRrbar,
        Column::TraceDeficit,
        Column::OracleDiscrepancy,
    ];

    pub fn header(self) -> &'static str {
        match self {
            Column::R => "r",
            Column::IAr => "I_AR",
            Column::IArbar => "I_ARbar",
            Column::IRrbar => "I_RRbar",
            Column::NAr => "N_AR",
            Column::NArbar => "N_ARbar",
            Column::NRrbar => "N_RRbar",
            Column::LogNRrbar => "logN_RRbar",
            Column::TraceDeficit => "trace_deficit",
            Column::OracleDiscrepancy => "oracle_discrepancy",
        }
    }

    pub fn from_header(h: &str) -> Option<Column> {
        Column::ALL.into_iter().find(|c| c.header() == h)
    }

    pub fn get(self, rep: &CorrelationReport) -> f64 {
        match self {
            Column::R => rep.r,
            Column::IAr => rep.i_ar,
            Column::IArbar => rep.i_arbar,
            Column::IRrbar => rep.i_rrbar,
            Column::NAr => rep.n_ar,
            Column::NArbar => rep.n_arbar,
            Column::NRrbar => rep.n_rrbar,
            Column::LogNRrbar => rep.log_n_rrbar,
            Column::TraceDeficit => rep.trace_deficit,
            Column::OracleDiscrepancy => rep.oracle_discrepancy,
        }
    }

    pub fn set(self, rep: &mut CorrelationReport, v: f64) {
        let slot = match self {
            Column::R => &mut rep.r,
            Column::IAr => &mut rep.i_ar,
            Column::IArbar => &mut rep.i_arbar,
            Column::IRrbar => &mut rep.i_rrbar,
            Column::NAr => &mut rep.n_ar,
            Column::NArbar => &mut rep.n_arbar,
            Column::NRrbar => &mut rep.n_rrbar,
            Column::LogNRrbar => &mut rep.log_n_rrbar,
            Column::TraceDeficit => &mut rep.trace_deficit,
            Column::OracleDiscrepancy => &mut rep.oracle_discrepancy,
        };
        *slot = v;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub field: FieldKind,
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
    pub hardcore: HardcoreConfig,
    pub truncation: TruncationConfig,
    /// Run the constructive cross-check at every point.
    pub oracle: bool,
    pub columns: Vec<Column>,
    pub checks: Vec<CheckKind>,
    /// `None` writes to stdout.
    pub out: Option<PathBuf>,
}

impl SweepConfig {
    /// Defaults for a field: Dirac over `[0, pi/4]` in 200 points, scalar
    /// over `[0, 1.5]` and hardcore (`N = 2`) over `[0, 3]` in 150.
    pub fn for_field(field: FieldKind) -> Self {
        let (r_max, steps) = match field {
            FieldKind::Dirac => (FRAC_PI_4, 200),
            FieldKind::Scalar => (1.5, 150),
            FieldKind::Hardcore => (3.0, 150),
        };
        Self {
            field,
            r_min: 0.0,
            r_max,
            steps,
            hardcore: HardcoreConfig::default(),
            truncation: TruncationConfig::default(),
            oracle: true,
            columns: Column::ALL.to_vec(),
            checks: Vec::new(),
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if !(self.r_min.is_finite() && self.r_min >= 0.0) {
            return bad(format!("r_min must be finite and >= 0, got {}", self.r_min));
        }
        if !(self.r_max.is_finite() && self.r_max >= self.r_min) {
            return bad(format!("r_max must be finite and >= r_min, got {}", self.r_max));
        }
        if self.steps < 2 {
            return bad(format!("steps must be at least 2, got {}", self.steps));
        }
        if self.field == FieldKind::Dirac && self.r_max > FRAC_PI_4 {
            return bad(format!("Dirac r_max must be <= pi/4, got {}", self.r_max));
        }
        if self.columns.is_empty() {
            return bad("no output columns".into());
        }
        self.hardcore.validate()?;
        self.truncation.validate()
    }

    /// Uniform grid from `r_min` to `r_max`, both included.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.r_max
                } else {
                    self.r_min + (self.r_max - self.r_min) * i as f64 / last as f64
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let cfg = SweepConfig::for_field(FieldKind::Dirac);
        let g = cfg.grid();
        assert_eq!(g.len(), 200);
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), FRAC_PI_4);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn validation() {
        let mut cfg = SweepConfig::for_field(FieldKind::Dirac);
        assert!(cfg.validate().is_ok());
        cfg.r_max = 1.0;
        assert!(cfg.validate().is_err());
        let mut cfg = SweepConfig::for_field(FieldKind::Scalar);
        cfg.steps = 1;
        assert!(cfg.validate().is_err());
        cfg.steps = 2;
        cfg.r_min = -0.1;
        assert!(cfg.validate().is_err());
        cfg.r_min = 2.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn headers_round_trip() {
        for c in Column::ALL {
            assert_eq!(Column::from_header(c.header()), Some(c));
        }
        assert_eq!(Column::from_header("nope"), None);
    }
}
