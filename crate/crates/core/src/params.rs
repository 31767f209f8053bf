//! Squeezing parameters for the three field kinds.
//!
//! All fields are parameterized by `q = exp(-pi k0 c / a)`, which runs from 0
//! (inertial) to 1 (infinite acceleration). Bosons map it through `artanh`,
//! fermions through `arctan`.

use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Dirac,
    Scalar,
    Hardcore,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Dirac => "dirac",
            FieldKind::Scalar => "scalar",
            FieldKind::Hardcore => "hardcore",
        }
    }
}

/// Acceleration parameter `r` for a given field, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingParam {
    kind: FieldKind,
    r: f64,
}

impl SqueezingParam {
    pub fn new(kind: FieldKind, r: f64) -> Result<Self> {
        let ok = match kind {
            FieldKind::Dirac => (0.0..=FRAC_PI_4).contains(&r),
            FieldKind::Scalar | FieldKind::Hardcore => r.is_finite() && r >= 0.0,
        };
        if ok {
            Ok(Self { kind, r })
        } else {
            Err(Error::InvalidSqueezing { kind, r })
        }
    }

    pub fn dirac(r: f64) -> Result<Self> {
        Self::new(FieldKind::Dirac, r)
    }

    pub fn scalar(r: f64) -> Result<Self> {
        Self::new(FieldKind::Scalar, r)
    }

    pub fn hardcore(r: f64) -> Result<Self> {
        Self::new(FieldKind::Hardcore, r)
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// Dirac parameter `r_d = arctan(q)` for `q` in `[0, 1]`.
pub fn rapidity_dirac(q: f64) -> Result<SqueezingParam> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidRapidityInput(q));
    }
    // arctan(1) can round a hair above pi/4
    SqueezingParam::dirac(q.atan().min(FRAC_PI_4))
}

/// Scalar parameter `r_s = artanh(q)` for `q` in `[0, 1)`.
pub fn rapidity_scalar(q: f64) -> Result<SqueezingParam> {
    if !(0.0..1.0).contains(&q) {
        return Err(Error::InvalidRapidityInput(q));
    }
    SqueezingParam::scalar(q.atanh())
}
