//! Fermionic Fock algebra for one Dirac mode seen from Rindler regions I and IV.
//!
//! Four modes: particle spin up/down in region I and antiparticle spin
//! up/down in region IV. A basis state is an occupation bitmask and stands for
//! the normal-ordered creation string acting on the Rindler vacuum, with
//! region I operators to the left of region IV ones and up before down:
//!
//! ```text
//! |p>_I |s>_IV = b+_up b+_down c+_s |0>
//! ```
//!
//! Moving an operator into place past `k` occupied modes contributes
//! `(-1)^k`, so e.g. `c+_s |s'>_I |0>_IV = -|s'>_I |s>_IV`.

use crate::algebra::{
    BasisLabel, DiracPattern, LabeledBasis, ProductBasis, StateVector, Subsystem,
};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    I,
    IV,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn flip(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    pub fn pattern(self) -> DiracPattern {
        match self {
            Spin::Up => DiracPattern::Up,
            Spin::Down => DiracPattern::Down,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mode {
    pub region: Region,
    pub spin: Spin,
}

impl Mode {
    pub fn new(region: Region, spin: Spin) -> Self {
        Self { region, spin }
    }

    /// Position in the canonical operator ordering.
    pub fn slot(self) -> u32 {
        let r = match self.region {
            Region::I => 0,
            Region::IV => 2,
        };
        let s = match self.spin {
            Spin::Up => 0,
            Spin::Down => 1,
        };
        r + s
    }

    fn bit(self) -> u8 {
        1 << self.slot()
    }
}

fn pattern_bits(p: DiracPattern) -> u8 {
    match p {
        DiracPattern::Vac => 0b00,
        DiracPattern::Up => 0b01,
        DiracPattern::Down => 0b10,
        DiracPattern::Pair => 0b11,
    }
}

fn bits_pattern(b: u8) -> DiracPattern {
    match b & 0b11 {
        0b00 => DiracPattern::Vac,
        0b01 => DiracPattern::Up,
        0b10 => DiracPattern::Down,
        _ => DiracPattern::Pair,
    }
}

/// Occupation mask for a (region I, region IV) pattern pair.
pub fn occupation(rob: DiracPattern, antirob: DiracPattern) -> u8 {
    pattern_bits(rob) | (pattern_bits(antirob) << 2)
}

/// Number of occupied modes that precede `mode` in the canonical ordering.
fn parity_before(mask: u8, mode: Mode) -> u32 {
    (mask & (mode.bit() - 1)).count_ones()
}

/// Superposition over the 16 occupation states of the four Rindler modes.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionState {
    amps: [f64; 16],
}

impl FermionState {
    pub fn zero() -> Self {
        Self { amps: [0.0; 16] }
    }

    pub fn vacuum() -> Self {
        let mut s = Self::zero();
        s.amps[0] = 1.0;
        s
    }

    pub fn amplitude(&self, rob: DiracPattern, antirob: DiracPattern) -> f64 {
        self.amps[occupation(rob, antirob) as usize]
    }

    pub fn with_term(mut self, rob: DiracPattern, antirob: DiracPattern, amp: f64) -> Self {
        self.amps[occupation(rob, antirob) as usize] += amp;
        self
    }

    pub fn create(&self, mode: Mode) -> Self {
        let mut out = Self::zero();
        for (mask, &a) in self.amps.iter().enumerate() {
            let mask = mask as u8;
            if a == 0.0 || mask & mode.bit() != 0 {
                continue;
            }
            let sign = if parity_before(mask, mode) % 2 == 0 { 1.0 } else { -1.0 };
            out.amps[(mask | mode.bit()) as usize] += sign * a;
        }
        out
    }

    pub fn annihilate(&self, mode: Mode) -> Self {
        let mut out = Self::zero();
        for (mask, &a) in self.amps.iter().enumerate() {
            let mask = mask as u8;
            if a == 0.0 || mask & mode.bit() == 0 {
                continue;
            }
            let sign = if parity_before(mask, mode) % 2 == 0 { 1.0 } else { -1.0 };
            out.amps[(mask & !mode.bit()) as usize] += sign * a;
        }
        out
    }

    /// Apply a product of creation operators written left to right
    /// (`ops[0]` acts last).
    pub fn create_string(&self, ops: &[Mode]) -> Self {
        ops.iter().rev().fold(self.clone(), |s, &m| s.create(m))
    }

    pub fn combine(&self, a: f64, other: &FermionState, b: f64) -> Self {
        let mut out = Self::zero();
        for i in 0..16 {
            out.amps[i] = a * self.amps[i] + b * other.amps[i];
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.amps.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a * a).sum()
    }

    /// As a state over `Rob (region I) x AntiRob (region IV)`.
    pub fn to_state_vector(&self) -> Result<StateVector> {
        let basis = ProductBasis::new(vec![
            LabeledBasis::dirac(Subsystem::Rob),
            LabeledBasis::dirac(Subsystem::AntiRob),
        ])?;
        let mut psi = StateVector::zeros(basis);
        for (mask, &a) in self.amps.iter().enumerate() {
            if a != 0.0 {
                let mask = mask as u8;
                let labels = [
                    BasisLabel::Dirac(bits_pattern(mask)),
                    BasisLabel::Dirac(bits_pattern(mask >> 2)),
                ];
                psi.set(&labels, a)?;
            }
        }
        Ok(psi)
    }
}

/// Minkowski particle creation `b+_{M,s} = cos r b+_{I,s} - sin r c_{IV,-s}`.
pub fn minkowski_particle_creation(r: f64, spin: Spin, state: &FermionState) -> FermionState {
    let a = state.create(Mode::new(Region::I, spin));
    let b = state.annihilate(Mode::new(Region::IV, spin.flip()));
    a.combine(r.cos(), &b, -r.sin())
}

/// Minkowski particle annihilation `b_{M,s} = cos r b_{I,s} - sin r c+_{IV,-s}`.
pub fn minkowski_particle_annihilation(r: f64, spin: Spin, state: &FermionState) -> FermionState {
    let a = state.annihilate(Mode::new(Region::I, spin));
    let b = state.create(Mode::new(Region::IV, spin.flip()));
    a.combine(r.cos(), &b, -r.sin())
}

/// Minkowski antiparticle annihilation `c_{M,s} = cos r c_{IV,s} + sin r b+_{I,-s}`.
pub fn minkowski_antiparticle_annihilation(
    r: f64,
    spin: Spin,
    state: &FermionState,
) -> FermionState {
    let a = state.annihilate(Mode::new(Region::IV, spin));
    let b = state.create(Mode::new(Region::I, spin.flip()));
    a.combine(r.cos(), &b, r.sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use DiracPattern::*;

    const UP_I: Mode = Mode { region: Region::I, spin: Spin::Up };
    const DOWN_I: Mode = Mode { region: Region::I, spin: Spin::Down };
    const UP_IV: Mode = Mode { region: Region::IV, spin: Spin::Up };
    const DOWN_IV: Mode = Mode { region: Region::IV, spin: Spin::Down };

    #[test]
    fn pair_ordering_sign() {
        let vac = FermionState::vacuum();
        let ud = vac.create_string(&[UP_I, DOWN_I]);
        let du = vac.create_string(&[DOWN_I, UP_I]);
        assert_eq!(ud.amplitude(Pair, Vac), 1.0);
        assert_eq!(du.amplitude(Pair, Vac), -1.0);
        let ud4 = vac.create_string(&[UP_IV, DOWN_IV]);
        let du4 = vac.create_string(&[DOWN_IV, UP_IV]);
        assert_eq!(ud4.amplitude(Vac, Pair), 1.0);
        assert_eq!(du4.amplitude(Vac, Pair), -1.0);
    }

    #[test]
    fn cross_region_ordering() {
        let vac = FermionState::vacuum();
        for s in [Spin::Up, Spin::Down] {
            for t in [Spin::Up, Spin::Down] {
                let b = Mode::new(Region::I, s);
                let c = Mode::new(Region::IV, t);
                let bc = vac.create_string(&[b, c]);
                let cb = vac.create_string(&[c, b]);
                assert_eq!(bc.amplitude(s.pattern(), t.pattern()), 1.0);
                assert_eq!(cb.amplitude(s.pattern(), t.pattern()), -1.0);
                // c+ acting on |s>_I |0>_IV
                let one = vac.create(b);
                assert_eq!(one.create(c).amplitude(s.pattern(), t.pattern()), -1.0);
            }
        }
    }

    #[test]
    fn pauli_exclusion() {
        let vac = FermionState::vacuum();
        assert_eq!(vac.create_string(&[UP_I, UP_I]).max_abs(), 0.0);
        assert_eq!(vac.create_string(&[DOWN_IV, DOWN_IV]).max_abs(), 0.0);
    }

    #[test]
    fn anticommutation() {
        // {c_m, c+_n} = delta_mn on a generic state
        let modes = [UP_I, DOWN_I, UP_IV, DOWN_IV];
        let mut psi = FermionState::zero();
        for (i, a) in psi.amps.iter_mut().enumerate() {
            *a = (i as f64 * 0.37).sin();
        }
        for &m in &modes {
            for &n in &modes {
                let lhs = psi.create(n).annihilate(m).combine(1.0, &psi.annihilate(m).create(n), 1.0);
                let rhs = if m == n { psi.clone() } else { FermionState::zero() };
                assert!(lhs.combine(1.0, &rhs, -1.0).max_abs() < 1e-15);
            }
        }
    }

    #[test]
    fn state_vector_layout() {
        let s = FermionState::zero().with_term(Down, Up, 0.5).with_term(Pair, Pair, -0.25);
        let psi = s.to_state_vector().unwrap();
        assert_eq!(psi.amplitude(&[BasisLabel::Dirac(Down), BasisLabel::Dirac(Up)]), 0.5);
        assert_eq!(psi.amplitude(&[BasisLabel::Dirac(Pair), BasisLabel::Dirac(Pair)]), -0.25);
        assert!((psi.norm_sqr() - s.norm_sqr()).abs() < 1e-15);
    }
}
