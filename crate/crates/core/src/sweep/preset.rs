use crate::error::{Error, Result};
use crate::params::FieldKind;

use super::config::{Column, SweepConfig};

pub const PRESET_NAMES: [&str; 6] = ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7"];

/// Sweep whose columns are `r` plus exactly the curves of one figure.
pub fn figure_preset(name: &str) -> Result<SweepConfig> {
    use Column::*;
    let (field, curves): (FieldKind, &[Column]) = match name {
        "fig2" => (FieldKind::Dirac, &[IAr, IArbar, IRrbar]),
        "fig3" => (FieldKind::Dirac, &[NAr, NArbar, NRrbar]),
        "fig4" => (FieldKind::Scalar, &[IAr, IArbar]),
        "fig5" => (FieldKind::Scalar, &[NAr]),
        "fig6" => (FieldKind::Scalar, &[NRrbar]),
        "fig7" => (FieldKind::Scalar, &[IRrbar, LogNRrbar]),
        _ => {
            return Err(Error::UnknownPreset {
                name: name.to_string(),
                valid: PRESET_NAMES.join(", "),
            })
        }
    };
    let mut cfg = SweepConfig::for_field(field);
    cfg.columns = std::iter::once(R).chain(curves.iter().copied()).collect();
    Ok(cfg)
}
