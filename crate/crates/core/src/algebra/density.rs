use nalgebra::DMatrix;

use super::basis::{BasisLabel, ProductBasis, Subsystem};
use super::eigen::sym_eigenvalues;
use crate::error::{Error, Result};

/// Entries of a density matrix must be symmetric to this absolute tolerance.
pub const ENTRY_SYMMETRY_TOL: f64 = 1e-14;
/// Minimum eigenvalue allowed for a matrix flagged as a state.
pub const STATE_EIGEN_TOL: f64 = 1e-12;

/// Real symmetric matrix over a product basis.
///
/// Partial transposes reuse this type with `is_state == false`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    basis: ProductBasis,
    entries: DMatrix<f64>,
    trace_deficit: f64,
    is_state: bool,
}

impl DensityMatrix {
    pub fn new(
        basis: ProductBasis,
        entries: DMatrix<f64>,
        trace_deficit: f64,
        is_state: bool,
    ) -> Result<Self> {
        let d = basis.dim();
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: entries.nrows(),
            });
        }
        let asym = (&entries - entries.transpose()).amax();
        if asym > ENTRY_SYMMETRY_TOL {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(Self::from_parts(basis, entries, trace_deficit, is_state))
    }

    pub(crate) fn from_parts(
        basis: ProductBasis,
        entries: DMatrix<f64>,
        trace_deficit: f64,
        is_state: bool,
    ) -> Self {
        Self {
            basis,
            entries,
            trace_deficit,
            is_state,
        }
    }

    pub fn basis(&self) -> &ProductBasis {
        &self.basis
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace()
    }

    pub fn trace_deficit(&self) -> f64 {
        self.trace_deficit
    }

    pub fn is_state(&self) -> bool {
        self.is_state
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// `<bra| rho |ket>` by labels; zero when either label is outside the basis.
    pub fn element(&self, bra: &[BasisLabel], ket: &[BasisLabel]) -> f64 {
        match (self.basis.index_of(bra), self.basis.index_of(ket)) {
            (Some(i), Some(j)) => self.entries[(i, j)],
            _ => 0.0,
        }
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        sym_eigenvalues(&self.entries)
    }

    /// Multiply every entry by `k` (the deficit is rescaled consistently).
    pub fn scaled(mut self, k: f64) -> Self {
        self.entries *= k;
        self.trace_deficit = (1.0 - self.entries.trace()).max(0.0);
        self
    }

    /// Submatrix over the listed product labels, in the given order.
    pub fn restricted(&self, labels: &[Vec<BasisLabel>]) -> DMatrix<f64> {
        let idx: Vec<Option<usize>> = labels.iter().map(|l| self.basis.index_of(l)).collect();
        DMatrix::from_fn(labels.len(), labels.len(), |i, j| match (idx[i], idx[j]) {
            (Some(a), Some(b)) => self.entries[(a, b)],
            _ => 0.0,
        })
    }

    /// Largest entrywise difference against a matrix over the same basis.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64> {
        if self.basis != other.basis {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok((&self.entries - &other.entries).amax())
    }
}

/// Trace out every subsystem not in `keep`. Kept subsystems stay in the
/// input's order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[Subsystem]) -> Result<DensityMatrix> {
    let subs = rho.basis.subsystems();
    if keep.is_empty() || keep.iter().any(|s| !subs.contains(s)) {
        return Err(Error::InvalidTraceSelection);
    }
    if keep.len() >= subs.len() {
        return Err(Error::InvalidTraceSelection);
    }
    let kept = rho.basis.restrict(keep)?;
    let map = rho.basis.bipartition_map(keep);
    let dk = kept.dim();
    let dt = rho.dim() / dk;

    // group full indices by their traced component
    let mut by_traced: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dt];
    for (flat, &(k, t)) in map.iter().enumerate() {
        by_traced[t].push((k, flat));
    }
    let mut out = DMatrix::<f64>::zeros(dk, dk);
    for group in &by_traced {
        for &(k1, f1) in group {
            for &(k2, f2) in group {
                out[(k1, k2)] += rho.entries[(f1, f2)];
            }
        }
    }
    Ok(DensityMatrix::from_parts(
        kept,
        out,
        rho.trace_deficit,
        rho.is_state,
    ))
}

/// Transpose the indices of one subsystem of a bipartite matrix.
pub fn partial_transpose(rho: &DensityMatrix, transposed: Subsystem) -> Result<DensityMatrix> {
    if rho.basis.len() != 2 {
        return Err(Error::NotBipartite(rho.basis.len()));
    }
    let pos = rho
        .basis
        .position(transposed)
        .ok_or(Error::UnknownSubsystem(transposed))?;
    let dims = rho.basis.dims();
    let (da, db) = (dims[0], dims[1]);
    let d = da * db;
    let mut out = DMatrix::<f64>::zeros(d, d);
    for ia in 0..da {
        for ib in 0..db {
            for ja in 0..da {
                for jb in 0..db {
                    let v = rho.entries[(ia * db + ib, ja * db + jb)];
                    let (r, c) = if pos == 0 {
                        (ja * db + ib, ia * db + jb)
                    } else {
                        (ia * db + jb, ja * db + ib)
                    };
                    out[(r, c)] = v;
                }
            }
        }
    }
    Ok(DensityMatrix::from_parts(
        rho.basis.clone(),
        out,
        rho.trace_deficit,
        false,
    ))
}
