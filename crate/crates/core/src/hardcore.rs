//! Hardcore bosons: the scalar construction with the mode expansions cut at
//! a finite occupation `N`.
//!
//! The cap applies to the expansion index of both Minkowski states: the
//! vacuum keeps `(n, n)` and the one-particle state `(n+1, n)` for `n <= N`,
//! so Rob's space runs to `N + 1` and AntiRob's to `N`. Every matrix here is
//! small enough to handle densely.

use nalgebra::DMatrix;

use crate::algebra::{
    entropy_of_spectrum, negativity_of_spectrum, partial_transpose, BasisLabel, DensityMatrix,
    LabeledBasis, ProductBasis, StateVector, Subsystem,
};
use crate::error::{Error, Result};
use crate::params::SqueezingParam;
use crate::report::{Bipartition, CorrelationReport, MeasureSet};
use crate::scalar::{alice_tripartite, rindler_pair_state, Squeeze};

pub const ORACLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum HardcoreMode {
    /// Keep the capped coefficients as they are; the trace falls short of 1.
    #[default]
    TruncateOnly,
    /// Rescale the capped tripartite state to unit norm.
    Renormalized,
}

impl HardcoreMode {
    pub fn name(self) -> &'static str {
        match self {
            HardcoreMode::TruncateOnly => "truncate_only",
            HardcoreMode::Renormalized => "renormalized",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HardcoreConfig {
    pub cap: usize,
    pub mode: HardcoreMode,
}

impl Default for HardcoreConfig {
    fn default() -> Self {
        Self {
            cap: 2,
            mode: HardcoreMode::TruncateOnly,
        }
    }
}

impl HardcoreConfig {
    pub fn new(cap: usize, mode: HardcoreMode) -> Result<Self> {
        let cfg = Self { cap, mode };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cap < 1 {
            return Err(Error::InvalidConfig("hardcore cap must be at least 1".into()));
        }
        Ok(())
    }
}

/// Squared norm of the capped tripartite state.
fn capped_norm_sqr(sq: &Squeeze, cap: usize) -> f64 {
    (0..=cap)
        .map(|n| 0.5 * (sq.vac(n).powi(2) + sq.one(n).powi(2)))
        .sum()
}

/// Capped tripartite state over Alice x Rob x AntiRob.
pub fn hardcore_state(r: &SqueezingParam, hc: &HardcoreConfig) -> Result<StateVector> {
    hc.validate()?;
    let sq = Squeeze::new(r.r());
    let n = hc.cap;
    let vac = rindler_pair_state(n + 1, n, (0..=n).map(|k| (k, k, sq.vac(k))))?;
    let one = rindler_pair_state(n + 1, n, (0..=n).map(|k| (k + 1, k, sq.one(k))))?;
    let psi = alice_tripartite(&vac, &one)?;
    Ok(match hc.mode {
        HardcoreMode::TruncateOnly => psi,
        HardcoreMode::Renormalized => {
            let norm = psi.norm_sqr().sqrt();
            psi.scaled(1.0 / norm)
        }
    })
}

/// Probability mass dropped by the cap (before any renormalization).
pub fn hardcore_discarded_mass(r: &SqueezingParam, hc: &HardcoreConfig) -> f64 {
    (1.0 - capped_norm_sqr(&Squeeze::new(r.r()), hc.cap)).max(0.0)
}

pub fn hardcore_rho(
    r: &SqueezingParam,
    hc: &HardcoreConfig,
    bip: Bipartition,
) -> Result<DensityMatrix> {
    hardcore_state(r, hc)?.reduced_density(&bip.kept())
}

/// Alice-AntiRob partial transpose assembled from its blocks: the `2x2`
/// blocks on `{|0 n>, |1 n+1>}` for `n < N`, with entries
/// `t^(2n)/(2c^2) [[1, t sqrt(n+1)/c], [., (n+2) t^2/c^2]]`, and the
/// singletons `|1 0>` and `|0 N>`.
pub fn hardcore_arbar_pt_closed(r: &SqueezingParam, hc: &HardcoreConfig) -> Result<DensityMatrix> {
    hc.validate()?;
    let sq = Squeeze::new(r.r());
    let (t, c) = (sq.t, sq.c);
    let n_cap = hc.cap;
    let basis = ProductBasis::new(vec![
        LabeledBasis::fock(Subsystem::Alice, 1),
        LabeledBasis::fock(Subsystem::AntiRob, n_cap),
    ])?;
    let idx = |a: usize, n: usize| basis.join_index(&[a, n]);
    let d = basis.dim();
    let mut m = DMatrix::zeros(d, d);
    for n in 0..n_cap {
        let pref = sq.x().powi(n as i32) / (2.0 * c * c);
        let (i, j) = (idx(0, n), idx(1, n + 1));
        m[(i, i)] = pref;
        m[(i, j)] = pref * t / c * ((n + 1) as f64).sqrt();
        m[(j, i)] = m[(i, j)];
        m[(j, j)] = pref * t * t / (c * c) * (n + 2) as f64;
    }
    m[(idx(1, 0), idx(1, 0))] = 0.5 / c.powi(4);
    m[(idx(0, n_cap), idx(0, n_cap))] = 0.5 * sq.vac(n_cap).powi(2);
    if hc.mode == HardcoreMode::Renormalized {
        m /= capped_norm_sqr(&sq, n_cap);
    }
    DensityMatrix::new(basis, m, 0.0, false)
}

/// Every measure computed from the capped state.
pub fn hardcore_measures(r: &SqueezingParam, hc: &HardcoreConfig) -> Result<MeasureSet> {
    let psi = hardcore_state(r, hc)?;
    let ent = |keep: &[Subsystem]| -> Result<f64> {
        entropy_of_spectrum(&psi.reduced_density(keep)?.eigenvalues()?)
    };
    use Subsystem::{Alice, AntiRob, Rob};
    let (sa, sr, srbar) = (ent(&[Alice])?, ent(&[Rob])?, ent(&[AntiRob])?);
    let mut out = MeasureSet {
        i_ar: sa + sr - ent(&[Alice, Rob])?,
        i_arbar: sa + srbar - ent(&[Alice, AntiRob])?,
        i_rrbar: sr + srbar - ent(&[Rob, AntiRob])?,
        ..MeasureSet::default()
    };
    let mut neg = [0.0; 3];
    for (k, bip) in Bipartition::ALL.iter().enumerate() {
        let rho = psi.reduced_density(&bip.kept())?;
        let pt = partial_transpose(&rho, bip.transposed())?;
        neg[k] = negativity_of_spectrum(&pt.eigenvalues()?);
    }
    out.n_ar = neg[0];
    out.n_arbar = neg[1];
    out.n_rrbar = neg[2];
    Ok(out)
}

/// Largest entry difference between the block assembly of the Alice-AntiRob
/// partial transpose and the one taken from the state.
pub fn hardcore_oracle_discrepancy(r: &SqueezingParam, hc: &HardcoreConfig) -> Result<f64> {
    let rho = hardcore_rho(r, hc, Bipartition::AliceAntiRob)?;
    let built = partial_transpose(&rho, Subsystem::AntiRob)?;
    built.max_abs_diff(&hardcore_arbar_pt_closed(r, hc)?)
}

pub fn hardcore_report(r: &SqueezingParam, hc: &HardcoreConfig) -> Result<CorrelationReport> {
    hardcore_report_with(r, hc, true)
}

pub fn hardcore_report_with(
    r: &SqueezingParam,
    hc: &HardcoreConfig,
    oracle: bool,
) -> Result<CorrelationReport> {
    let m = hardcore_measures(r, hc)?;
    let discrepancy = if oracle {
        let d = hardcore_oracle_discrepancy(r, hc)?;
        if d > ORACLE_TOL {
            return Err(Error::OracleMismatch {
                discrepancy: d,
                tolerance: ORACLE_TOL,
            });
        }
        d
    } else {
        f64::NAN
    };
    Ok(CorrelationReport::from_measures(
        r.r(),
        &m,
        hardcore_discarded_mass(r, hc),
        discrepancy,
    ))
}

/// Labels `|a n>` of the Alice x AntiRob basis.
pub fn alice_antirob_label(a: usize, n: usize) -> [BasisLabel; 2] {
    [BasisLabel::Fock(a), BasisLabel::Fock(n)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: f64) -> SqueezingParam {
        SqueezingParam::hardcore(r).unwrap()
    }

    fn cfg(cap: usize, mode: HardcoreMode) -> HardcoreConfig {
        HardcoreConfig::new(cap, mode).unwrap()
    }

    #[test]
    fn rejects_zero_cap() {
        assert!(HardcoreConfig::new(0, HardcoreMode::TruncateOnly).is_err());
    }

    #[test]
    fn inertial_limit_is_bell() {
        for mode in [HardcoreMode::TruncateOnly, HardcoreMode::Renormalized] {
            let m = hardcore_measures(&p(0.0), &cfg(2, mode)).unwrap();
            assert!((m.i_ar - 2.0).abs() < 1e-12);
            assert!((m.n_ar - 0.5).abs() < 1e-14);
            assert_eq!(m.n_rrbar, 0.0);
            assert_eq!(hardcore_discarded_mass(&p(0.0), &cfg(2, mode)), 0.0);
        }
    }

    #[test]
    fn renormalized_state_has_unit_norm() {
        for r in [0.3, 1.0, 2.5] {
            let psi = hardcore_state(&p(r), &cfg(3, HardcoreMode::Renormalized)).unwrap();
            assert!((psi.norm_sqr() - 1.0).abs() < 1e-14);
            let raw = hardcore_state(&p(r), &cfg(3, HardcoreMode::TruncateOnly)).unwrap();
            let lost = hardcore_discarded_mass(&p(r), &cfg(3, HardcoreMode::TruncateOnly));
            assert!((raw.norm_sqr() + lost - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn cap_two_blocks() {
        let r = 0.9f64;
        let (t, c) = (r.tanh(), r.cosh());
        let rho = hardcore_rho(&p(r), &cfg(2, HardcoreMode::TruncateOnly), Bipartition::AliceAntiRob).unwrap();
        let pt = partial_transpose(&rho, Subsystem::AntiRob).unwrap();
        let b0 = pt.restricted(&[alice_antirob_label(0, 0).to_vec(), alice_antirob_label(1, 1).to_vec()]);
        let k = 1.0 / (2.0 * c * c);
        let want0 = [k, k * t / c, k * 2.0 * t * t / (c * c)];
        assert!((b0[(0, 0)] - want0[0]).abs() < 1e-15);
        assert!((b0[(0, 1)] - want0[1]).abs() < 1e-15);
        assert!((b0[(1, 1)] - want0[2]).abs() < 1e-15);
        let b1 = pt.restricted(&[alice_antirob_label(0, 1).to_vec(), alice_antirob_label(1, 2).to_vec()]);
        let k = t * t / (2.0 * c * c);
        assert!((b1[(0, 1)] - k * 2f64.sqrt() * t / c).abs() < 1e-15);
        assert!((b1[(1, 1)] - k * 3.0 * t * t / (c * c)).abs() < 1e-15);
    }

    #[test]
    fn closed_blocks_match_state() {
        for mode in [HardcoreMode::TruncateOnly, HardcoreMode::Renormalized] {
            for cap in [1, 2, 3, 5] {
                for r in [0.0, 0.4, 1.3, 3.0] {
                    assert!(hardcore_oracle_discrepancy(&p(r), &cfg(cap, mode)).unwrap() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn arbar_negativity_vanishes() {
        for mode in [HardcoreMode::TruncateOnly, HardcoreMode::Renormalized] {
            for cap in [1, 2, 3, 5] {
                for r in [0.2, 0.8, 1.5, 3.0] {
                    let m = hardcore_measures(&p(r), &cfg(cap, mode)).unwrap();
                    assert_eq!(m.n_arbar, 0.0, "cap={cap} r={r}");
                }
            }
        }
    }

    #[test]
    fn rrbar_negativity_rises_and_falls() {
        let hc = cfg(2, HardcoreMode::TruncateOnly);
        let at = |r: f64| hardcore_measures(&p(r), &hc).unwrap().n_rrbar;
        assert_eq!(at(0.0), 0.0);
        let peak = (1..=20).map(|i| at(0.1 * i as f64)).fold(0.0, f64::max);
        assert!(peak > 1e-4);
        assert!(at(8.0) < 1e-4);
    }

    #[test]
    fn report_carries_discarded_mass() {
        let rep = hardcore_report(&p(1.0), &HardcoreConfig::default()).unwrap();
        assert!(rep.trace_deficit > 0.0);
        assert!(rep.oracle_discrepancy < 1e-12);
        let fast = hardcore_report_with(&p(1.0), &HardcoreConfig::default(), false).unwrap();
        assert!(fast.oracle_discrepancy.is_nan());
    }
}
