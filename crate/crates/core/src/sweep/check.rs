use std::fmt;

use crate::error::{Error, Result};
use crate::params::FieldKind;
use crate::report::CorrelationReport;

/// Laws and properties checked over a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    /// `I_AR + I_ARbar = 2`.
    IConservation,
    /// `N_AR + N_ARbar = 1/2` (Dirac).
    NConservation,
    /// `N_ARbar = 0` (bosons).
    NArbarZero,
    /// `oracle_discrepancy <= 1e-9` wherever the oracle ran.
    Oracle,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::IConservation => "I_conservation",
            CheckKind::NConservation => "N_conservation",
            CheckKind::NArbarZero => "N_ARbar_zero",
            CheckKind::Oracle => "oracle",
        }
    }

    /// Checks that hold for a field.
    pub fn defaults(field: FieldKind, oracle: bool) -> Vec<CheckKind> {
        let mut v = match field {
            FieldKind::Dirac => vec![CheckKind::IConservation, CheckKind::NConservation],
            FieldKind::Scalar => vec![CheckKind::IConservation, CheckKind::NArbarZero],
            FieldKind::Hardcore => vec![CheckKind::NArbarZero],
        };
        if oracle {
            v.push(CheckKind::Oracle);
        }
        v
    }

    fn tolerance(self, field: FieldKind) -> f64 {
        match (self, field) {
            (CheckKind::Oracle, _) => 1e-9,
            (_, FieldKind::Dirac) => 1e-10,
            _ => 1e-8,
        }
    }

    fn deviation(self, rep: &CorrelationReport) -> Option<f64> {
        match self {
            CheckKind::IConservation => Some((rep.i_ar + rep.i_arbar - 2.0).abs()),
            CheckKind::NConservation => Some((rep.n_ar + rep.n_arbar - 0.5).abs()),
            CheckKind::NArbarZero => Some(rep.n_arbar.abs()),
            CheckKind::Oracle => (!rep.oracle_discrepancy.is_nan()).then_some(rep.oracle_discrepancy),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckLine {
    pub kind: CheckKind,
    pub max_dev: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, verdict) = if self.pass { ("<", "PASS") } else { (">=", "FAIL") };
        write!(
            f,
            "{} max_dev {:.3e} {op} {:e} {verdict}",
            self.kind.name(),
            self.max_dev,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConservationSummary {
    pub lines: Vec<CheckLine>,
}

impl ConservationSummary {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

impl fmt::Display for ConservationSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Largest deviation of each check over the reports. A NaN deviation counts
/// as a failure.
pub fn check_report(
    reports: &[CorrelationReport],
    field: FieldKind,
    checks: &[CheckKind],
) -> Result<ConservationSummary> {
    if reports.is_empty() {
        return Err(Error::InvalidConfig("no reports to check".into()));
    }
    let lines = checks
        .iter()
        .map(|&kind| {
            let tolerance = kind.tolerance(field);
            let mut max_dev = 0.0f64;
            let mut nan = false;
            for rep in reports {
                match kind.deviation(rep) {
                    Some(d) if d.is_nan() => nan = true,
                    Some(d) => max_dev = max_dev.max(d),
                    None => {}
                }
            }
            if nan {
                max_dev = f64::NAN;
            }
            CheckLine {
                kind,
                max_dev,
                tolerance,
                pass: !nan && max_dev < tolerance,
            }
        })
        .collect();
    Ok(ConservationSummary { lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::dirac_report;
    use crate::params::SqueezingParam;

    fn dirac_reports() -> Vec<CorrelationReport> {
        (0..20)
            .map(|i| dirac_report(&SqueezingParam::dirac(0.04 * i as f64).unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn dirac_laws_pass() {
        let s = check_report(&dirac_reports(), FieldKind::Dirac, &CheckKind::defaults(FieldKind::Dirac, true)).unwrap();
        assert!(s.all_pass(), "{s}");
        let text = s.to_string();
        assert!(text.lines().next().unwrap().starts_with("I_conservation max_dev"));
        assert!(text.lines().all(|l| l.ends_with("PASS")));
    }

    #[test]
    fn corrupted_report_fails() {
        let mut reps = dirac_reports();
        reps[7].n_ar += 0.01;
        let s = check_report(&reps, FieldKind::Dirac, &[CheckKind::NConservation]).unwrap();
        assert!(!s.all_pass());
        assert!((s.lines[0].max_dev - 0.01).abs() < 1e-12);
        assert!(s.to_string().trim_end().ends_with("FAIL"));
    }

    #[test]
    fn skipped_oracle_is_ignored() {
        let mut reps = dirac_reports();
        for r in &mut reps {
            r.oracle_discrepancy = f64::NAN;
        }
        let s = check_report(&reps, FieldKind::Dirac, &[CheckKind::Oracle]).unwrap();
        assert!(s.all_pass());
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(check_report(&[], FieldKind::Scalar, &[CheckKind::IConservation]).is_err());
    }
}
