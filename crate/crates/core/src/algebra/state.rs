use nalgebra::DMatrix;

use super::basis::{BasisLabel, LabeledBasis, ProductBasis, Subsystem};
use super::density::DensityMatrix;
use super::eigen::sym_eigenvalues;
use crate::error::{Error, Result};

/// Real amplitudes over a product basis. Fermionic signs are already folded
/// into the amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    basis: ProductBasis,
    amplitudes: Vec<f64>,
}

impl StateVector {
    pub fn new(basis: ProductBasis, amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                got: amplitudes.len(),
            });
        }
        Ok(Self { basis, amplitudes })
    }

    pub fn zeros(basis: ProductBasis) -> Self {
        let amplitudes = vec![0.0; basis.dim()];
        Self { basis, amplitudes }
    }

    /// Single-factor state.
    pub fn single(basis: LabeledBasis, amplitudes: Vec<f64>) -> Result<Self> {
        Self::new(ProductBasis::new(vec![basis])?, amplitudes)
    }

    /// Basis vector `|label>` of a single subsystem.
    pub fn basis_ket(basis: LabeledBasis, label: BasisLabel) -> Result<Self> {
        let i = basis
            .index_of(label)
            .ok_or(Error::NonCanonicalBasis(basis.subsystem()))?;
        let mut amps = vec![0.0; basis.dim()];
        amps[i] = 1.0;
        Self::single(basis, amps)
    }

    pub fn basis(&self) -> &ProductBasis {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, labels: &[BasisLabel]) -> f64 {
        self.basis
            .index_of(labels)
            .map_or(0.0, |i| self.amplitudes[i])
    }

    pub fn set(&mut self, labels: &[BasisLabel], value: f64) -> Result<()> {
        let i = self
            .basis
            .index_of(labels)
            .ok_or(Error::DimensionMismatch {
                expected: self.basis.len(),
                got: labels.len(),
            })?;
        self.amplitudes[i] = value;
        Ok(())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum()
    }

    pub fn scaled(mut self, k: f64) -> Self {
        self.amplitudes.iter_mut().for_each(|a| *a *= k);
        self
    }

    /// `self + k * other`; both must share a basis.
    pub fn add_scaled(mut self, k: f64, other: &StateVector) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::DimensionMismatch {
                expected: self.basis.dim(),
                got: other.basis.dim(),
            });
        }
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += k * b;
        }
        Ok(self)
    }

    /// `|psi><psi|` as a dense density matrix. The trace deficit is
    /// `1 - <psi|psi>` (clamped at zero).
    pub fn density(&self) -> DensityMatrix {
        let v = nalgebra::DVector::from_column_slice(&self.amplitudes);
        let m = &v * v.transpose();
        DensityMatrix::from_parts(self.basis.clone(), m, (1.0 - self.norm_sqr()).max(0.0), true)
    }

    /// Reduced density matrix over `keep`, computed straight from the
    /// amplitudes without forming the full projector. Equal to
    /// `partial_trace(self.density(), keep)`.
    pub fn reduced_density(&self, keep: &[Subsystem]) -> Result<DensityMatrix> {
        let (kept, map) = self.split(keep)?;
        let dk = kept.dim();
        let dt = self.basis.dim() / dk;
        // reshape to a dk x dt matrix and form M M^T
        let mut mat = DMatrix::<f64>::zeros(dk, dt);
        for (flat, &(k, t)) in map.iter().enumerate() {
            mat[(k, t)] = self.amplitudes[flat];
        }
        let rho = &mat * mat.transpose();
        Ok(DensityMatrix::from_parts(
            kept,
            rho,
            (1.0 - self.norm_sqr()).max(0.0),
            true,
        ))
    }

    /// Spectrum of the reduced state over `keep`, computed on whichever side
    /// of the cut is smaller (the nonzero spectra of complementary reductions
    /// of a pure state coincide). Padded with zeros to the kept dimension.
    pub fn reduced_spectrum(&self, keep: &[Subsystem]) -> Result<Vec<f64>> {
        let (kept, _) = self.split(keep)?;
        let dk = kept.dim();
        let dt = self.basis.dim() / dk;
        let mut spec = if dk <= dt {
            sym_eigenvalues(self.reduced_density(keep)?.entries())?
        } else {
            let rest: Vec<Subsystem> = self
                .basis
                .subsystems()
                .into_iter()
                .filter(|s| !keep.contains(s))
                .collect();
            sym_eigenvalues(self.reduced_density(&rest)?.entries())?
        };
        spec.resize(dk, 0.0);
        Ok(spec)
    }

    fn split(&self, keep: &[Subsystem]) -> Result<(ProductBasis, Vec<(usize, usize)>)> {
        let subs = self.basis.subsystems();
        if keep.is_empty() || keep.len() >= subs.len() || keep.iter().any(|s| !subs.contains(s))
        {
            return Err(Error::InvalidTraceSelection);
        }
        Ok((self.basis.restrict(keep)?, self.basis.bipartition_map(keep)))
    }
}

/// Tensor product of factor states over distinct subsystems, in the given
/// order.
pub fn tensor_state(factors: &[StateVector]) -> Result<StateVector> {
    let mut bases = Vec::new();
    for f in factors {
        bases.extend(f.basis.factors().iter().cloned());
    }
    let basis = ProductBasis::new(bases)?;
    let mut amps = vec![1.0];
    for f in factors {
        let mut next = Vec::with_capacity(amps.len() * f.amplitudes.len());
        for &a in &amps {
            next.extend(f.amplitudes.iter().map(|b| a * b));
        }
        amps = next;
    }
    StateVector::new(basis, amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::basis::BasisLabel::Fock;

    fn ket(s: Subsystem, n_max: usize, n: usize) -> StateVector {
        StateVector::basis_ket(LabeledBasis::fock(s, n_max), Fock(n)).unwrap()
    }

    #[test]
    fn product_of_vacua() {
        let psi = tensor_state(&[
            ket(Subsystem::Alice, 1, 0),
            ket(Subsystem::Rob, 2, 0),
            ket(Subsystem::AntiRob, 2, 0),
        ])
        .unwrap();
        assert_eq!(psi.amplitude(&[Fock(0), Fock(0), Fock(0)]), 1.0);
        assert_eq!(psi.norm_sqr(), 1.0);
        assert_eq!(psi.amplitudes().iter().filter(|a| **a != 0.0).count(), 1);
    }

    #[test]
    fn norm_is_multiplicative() {
        let a = StateVector::single(LabeledBasis::fock(Subsystem::Alice, 1), vec![0.6, 0.8]).unwrap();
        let b = StateVector::single(LabeledBasis::fock(Subsystem::Rob, 2), vec![0.0, 2.0, 1.0]).unwrap();
        let p = tensor_state(&[a.clone(), b.clone()]).unwrap();
        assert!((p.norm_sqr() - a.norm_sqr() * b.norm_sqr()).abs() < 1e-14);
    }

    #[test]
    fn duplicate_factor_rejected() {
        let r = tensor_state(&[ket(Subsystem::Rob, 1, 0), ket(Subsystem::Rob, 1, 1)]);
        assert_eq!(r.unwrap_err(), Error::DuplicateSubsystem(Subsystem::Rob));
    }

    #[test]
    fn reduced_route_matches_partial_trace() {
        let basis = ProductBasis::new(vec![
            LabeledBasis::fock(Subsystem::Alice, 1),
            LabeledBasis::fock(Subsystem::Rob, 2),
            LabeledBasis::fock(Subsystem::AntiRob, 1),
        ])
        .unwrap();
        let amps: Vec<f64> = (0..12).map(|i| ((i * 7 % 5) as f64 - 2.0) / 7.0).collect();
        let psi = StateVector::new(basis, amps).unwrap();
        let full = psi.density();
        for keep in [
            vec![Subsystem::Alice, Subsystem::Rob],
            vec![Subsystem::Alice, Subsystem::AntiRob],
            vec![Subsystem::Rob, Subsystem::AntiRob],
            vec![Subsystem::Rob],
        ] {
            let a = psi.reduced_density(&keep).unwrap();
            let b = crate::algebra::partial_trace(&full, &keep).unwrap();
            assert_eq!(a.basis(), b.basis());
            assert!((a.entries() - b.entries()).amax() < 1e-15);
        }
    }

    #[test]
    fn complementary_spectra() {
        let basis = ProductBasis::new(vec![
            LabeledBasis::fock(Subsystem::Alice, 1),
            LabeledBasis::fock(Subsystem::Rob, 3),
        ])
        .unwrap();
        let psi = StateVector::new(basis, vec![0.1, 0.5, -0.2, 0.3, 0.4, 0.0, 0.6, 0.25]).unwrap();
        let a = psi.reduced_spectrum(&[Subsystem::Alice]).unwrap();
        let r = psi.reduced_spectrum(&[Subsystem::Rob]).unwrap();
        assert_eq!(r.len(), 4);
        for (x, y) in a.iter().zip(&r) {
            assert!((x - y).abs() < 1e-14);
        }
        assert!(r[2].abs() < 1e-14 && r[3].abs() < 1e-14);
    }
}
