//! Entropies and entanglement measures. Logarithms are base 2 throughout.

use super::basis::Subsystem;
use super::density::{partial_trace, partial_transpose, DensityMatrix};
use crate::error::{Error, Result};

/// Eigenvalues of a state below this are rejected by the entropy.
pub const ENTROPY_NEG_TOL: f64 = 1e-10;
/// Partial-transpose eigenvalues with magnitude below this count as zero.
pub const NEGATIVITY_ZERO_TOL: f64 = 1e-12;

/// `-x log2 x`, with `0 log 0 = 0`.
pub fn neg_xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// Shannon entropy (bits) of a spectrum. Errors on eigenvalues below
/// `-ENTROPY_NEG_TOL`.
pub fn entropy_of_spectrum(spectrum: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &l in spectrum {
        if l < -ENTROPY_NEG_TOL {
            return Err(Error::NotAState(l));
        }
        s += neg_xlog2x(l);
    }
    Ok(s.max(0.0))
}

pub fn negativity_of_spectrum(spectrum: &[f64]) -> f64 {
    -spectrum
        .iter()
        .filter(|&&s| s < -NEGATIVITY_ZERO_TOL)
        .sum::<f64>()
}

pub fn log_negativity_from(negativity: f64) -> f64 {
    (1.0 + 2.0 * negativity).log2()
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    entropy_of_spectrum(&rho.eigenvalues()?)
}

/// `S_A + S_B - S_AB` for a bipartite state.
pub fn mutual_information(rho_ab: &DensityMatrix) -> Result<f64> {
    let subs = rho_ab.basis().subsystems();
    if subs.len() != 2 {
        return Err(Error::NotBipartite(subs.len()));
    }
    let sa = von_neumann_entropy(&partial_trace(rho_ab, &[subs[0]])?)?;
    let sb = von_neumann_entropy(&partial_trace(rho_ab, &[subs[1]])?)?;
    let sab = von_neumann_entropy(rho_ab)?;
    Ok(sa + sb - sab)
}

/// Minus the sum of the negative eigenvalues of the partial transpose.
pub fn negativity(rho_ab: &DensityMatrix, transposed: Subsystem) -> Result<f64> {
    let pt = partial_transpose(rho_ab, transposed)?;
    Ok(negativity_of_spectrum(&pt.eigenvalues()?))
}

pub fn log_negativity(rho_ab: &DensityMatrix, transposed: Subsystem) -> Result<f64> {
    Ok(log_negativity_from(negativity(rho_ab, transposed)?))
}
