//! Dirac field: the tripartite Alice/Rob/AntiRob state and its closed-form
//! bipartite matrices, spectra, entropies and negativities, each paired with
//! a constructive evaluation from the state vector.

use nalgebra::DMatrix;

use crate::algebra::measures::neg_xlog2x;
use crate::algebra::{
    entropy_of_spectrum, negativity_of_spectrum, partial_trace, partial_transpose, BasisLabel,
    DensityMatrix, DiracPattern, LabeledBasis, ProductBasis, StateVector, Subsystem,
};
use crate::error::{Error, Result};
use crate::fermion::{minkowski_particle_creation, FermionState, Spin};
use crate::params::SqueezingParam;
use crate::report::{Bipartition, CorrelationReport, EntropySet, MeasureSet};

use DiracPattern::{Down, Pair, Up, Vac};

/// Closed forms and oracle must agree to this in every measure.
pub const ORACLE_TOL: f64 = 1e-10;

fn sc(r: &SqueezingParam) -> (f64, f64) {
    (r.r().sin(), r.r().cos())
}

/// Minkowski vacuum seen from Rindler regions I (Rob) and IV (AntiRob).
pub fn dirac_vacuum(r: &SqueezingParam) -> Result<StateVector> {
    vacuum_fermion(r).to_state_vector()
}

fn vacuum_fermion(r: &SqueezingParam) -> FermionState {
    let (s, c) = sc(r);
    FermionState::zero()
        .with_term(Vac, Vac, c * c)
        .with_term(Up, Down, s * c)
        .with_term(Down, Up, s * c)
        .with_term(Pair, Pair, s * s)
}

/// One Minkowski particle of the given spin, in the Rindler basis.
pub fn dirac_one_particle(r: &SqueezingParam, spin: Spin) -> Result<StateVector> {
    let (s, c) = sc(r);
    let state = match spin {
        Spin::Up => FermionState::zero()
            .with_term(Up, Vac, c)
            .with_term(Pair, Up, s),
        Spin::Down => FermionState::zero()
            .with_term(Down, Vac, c)
            .with_term(Pair, Down, -s),
    };
    state.to_state_vector()
}

/// The same one-particle state built by acting with the Bogoliubov-transformed
/// creation operator on the Rindler-basis vacuum. Independent of the
/// hand-written amplitudes in [`dirac_one_particle`].
pub fn dirac_one_particle_from_vacuum(r: &SqueezingParam, spin: Spin) -> Result<StateVector> {
    minkowski_particle_creation(r.r(), spin, &vacuum_fermion(r)).to_state_vector()
}

fn alice_basis(alice_spin: Spin) -> Result<LabeledBasis> {
    let mut labels = vec![BasisLabel::Dirac(Vac), BasisLabel::Dirac(alice_spin.pattern())];
    labels.sort();
    LabeledBasis::new(Subsystem::Alice, labels)
}

/// `(|0>_A |0>_M + |up>_A |down>_M) / sqrt 2` over Alice x Rob x AntiRob.
pub fn dirac_tripartite_state(r: &SqueezingParam) -> Result<StateVector> {
    dirac_tripartite_state_with_spins(r, Spin::Up)
}

/// Tripartite state with Alice carrying `alice_spin` and Rob the opposite spin.
pub fn dirac_tripartite_state_with_spins(
    r: &SqueezingParam,
    alice_spin: Spin,
) -> Result<StateVector> {
    let vac = dirac_vacuum(r)?;
    let one = dirac_one_particle(r, alice_spin.flip())?;
    let alice = alice_basis(alice_spin)?;
    let i0 = alice.index_of(BasisLabel::Dirac(Vac)).unwrap_or(0);
    let i1 = alice.index_of(BasisLabel::Dirac(alice_spin.pattern())).unwrap_or(1);
    let mut factors = vec![alice.clone()];
    factors.extend(vac.basis().factors().iter().cloned());
    let basis = ProductBasis::new(factors)?;

    let block = vac.amplitudes().len();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![0.0; basis.dim()];
    for k in 0..block {
        amps[i0 * block + k] = h * vac.amplitudes()[k];
        amps[i1 * block + k] = h * one.amplitudes()[k];
    }
    StateVector::new(basis, amps)
}

fn pair_basis(bip: Bipartition) -> Result<ProductBasis> {
    let alice = alice_basis(Spin::Up)?;
    let factors = match bip {
        Bipartition::AliceRob => vec![alice, LabeledBasis::dirac(Subsystem::Rob)],
        Bipartition::AliceAntiRob => vec![alice, LabeledBasis::dirac(Subsystem::AntiRob)],
        Bipartition::RobAntiRob => vec![
            LabeledBasis::dirac(Subsystem::Rob),
            LabeledBasis::dirac(Subsystem::AntiRob),
        ],
    };
    ProductBasis::new(factors)
}

/// Accumulates `1/2 * value` on `|a><b|` and `|b><a|`.
struct Builder {
    basis: ProductBasis,
    m: DMatrix<f64>,
}

impl Builder {
    fn new(basis: ProductBasis) -> Self {
        let d = basis.dim();
        Self {
            basis,
            m: DMatrix::zeros(d, d),
        }
    }

    fn idx(&self, p: (DiracPattern, DiracPattern)) -> usize {
        self.basis
            .index_of(&[BasisLabel::Dirac(p.0), BasisLabel::Dirac(p.1)])
            .expect("label in basis")
    }

    fn diag(&mut self, p: (DiracPattern, DiracPattern), v: f64) -> &mut Self {
        let i = self.idx(p);
        self.m[(i, i)] += 0.5 * v;
        self
    }

    fn pair(
        &mut self,
        a: (DiracPattern, DiracPattern),
        b: (DiracPattern, DiracPattern),
        v: f64,
    ) -> &mut Self {
        let (i, j) = (self.idx(a), self.idx(b));
        self.m[(i, j)] += 0.5 * v;
        self.m[(j, i)] += 0.5 * v;
        self
    }

    fn finish(self, is_state: bool) -> DensityMatrix {
        DensityMatrix::new(self.basis, self.m, 0.0, is_state).expect("symmetric by construction")
    }
}

/// Closed-form bipartite density matrix in the canonical basis.
pub fn dirac_closed_rho(r: &SqueezingParam, bip: Bipartition) -> Result<DensityMatrix> {
    let (s, c) = sc(r);
    let (s2, c2) = (s * s, c * c);
    let mut b = Builder::new(pair_basis(bip)?);
    match bip {
        Bipartition::AliceRob => {
            b.diag((Vac, Vac), c2 * c2)
                .diag((Vac, Up), s2 * c2)
                .diag((Vac, Down), s2 * c2)
                .diag((Vac, Pair), s2 * s2)
                .pair((Vac, Vac), (Up, Down), c2 * c)
                .pair((Vac, Up), (Up, Pair), -s2 * c)
                .diag((Up, Down), c2)
                .diag((Up, Pair), s2);
        }
        Bipartition::AliceAntiRob => {
            b.diag((Vac, Vac), c2 * c2)
                .diag((Vac, Down), s2 * c2)
                .diag((Vac, Up), s2 * c2)
                .diag((Vac, Pair), s2 * s2)
                .pair((Vac, Pair), (Up, Down), -s2 * s)
                .pair((Vac, Up), (Up, Vac), s * c2)
                .diag((Up, Vac), c2)
                .diag((Up, Down), s2);
        }
        Bipartition::RobAntiRob => {
            b.diag((Vac, Vac), c2 * c2)
                .pair((Vac, Vac), (Up, Down), s * c2 * c)
                .pair((Vac, Vac), (Down, Up), s * c2 * c)
                .pair((Vac, Vac), (Pair, Pair), s2 * c2)
                .diag((Up, Down), s2 * c2)
                .pair((Up, Down), (Down, Up), s2 * c2)
                .diag((Down, Up), s2 * c2)
                .pair((Up, Down), (Pair, Pair), s2 * s * c)
                .pair((Down, Up), (Pair, Pair), s2 * s * c)
                .diag((Down, Vac), c2)
                .diag((Pair, Down), s2)
                .pair((Down, Vac), (Pair, Down), -c * s)
                .diag((Pair, Pair), s2 * s2);
        }
    }
    Ok(b.finish(true))
}

/// Closed-form partial transpose (second subsystem transposed).
pub fn dirac_closed_pt(r: &SqueezingParam, bip: Bipartition) -> Result<DensityMatrix> {
    let (s, c) = sc(r);
    let (s2, c2) = (s * s, c * c);
    let mut b = Builder::new(pair_basis(bip)?);
    match bip {
        Bipartition::AliceRob => {
            b.diag((Vac, Vac), c2 * c2)
                .diag((Vac, Up), s2 * c2)
                .diag((Vac, Down), s2 * c2)
                .diag((Vac, Pair), s2 * s2)
                .pair((Vac, Down), (Up, Vac), c2 * c)
                .pair((Vac, Pair), (Up, Up), -s2 * c)
                .diag((Up, Down), c2)
                .diag((Up, Pair), s2);
        }
        Bipartition::AliceAntiRob => {
            b.diag((Vac, Vac), c2 * c2)
                .diag((Vac, Down), s2 * c2)
                .diag((Vac, Up), s2 * c2)
                .diag((Vac, Pair), s2 * s2)
                .pair((Vac, Down), (Up, Pair), -s2 * s)
                .pair((Vac, Vac), (Up, Up), s * c2)
                .diag((Up, Vac), c2)
                .diag((Up, Down), s2);
        }
        Bipartition::RobAntiRob => {
            b.diag((Vac, Vac), c2 * c2)
                .pair((Vac, Down), (Up, Vac), s * c2 * c)
                .pair((Vac, Up), (Down, Vac), s * c2 * c)
                .pair((Vac, Pair), (Pair, Vac), s2 * c2)
                .diag((Up, Down), s2 * c2)
                .pair((Up, Up), (Down, Down), s2 * c2)
                .diag((Down, Up), s2 * c2)
                .pair((Up, Pair), (Pair, Down), s2 * s * c)
                .pair((Down, Pair), (Pair, Up), s2 * s * c)
                .diag((Down, Vac), c2)
                .diag((Pair, Down), s2)
                .pair((Down, Down), (Pair, Vac), -c * s)
                .diag((Pair, Pair), s2 * s2);
        }
    }
    Ok(b.finish(false))
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Closed-form spectrum of a bipartite matrix, padded with zeros to its
/// dimension and sorted descending.
pub fn dirac_closed_spectrum(r: &SqueezingParam, bip: Bipartition) -> Vec<f64> {
    let (s, c) = sc(r);
    let (s2, c2) = (s * s, c * c);
    let mut v = match bip {
        Bipartition::AliceRob => vec![
            0.5 * s2 * c2,
            0.5 * s2 * s2,
            0.5 * c2 * (1.0 + c2),
            0.5 * s2 * (1.0 + c2),
        ],
        Bipartition::AliceAntiRob => vec![
            0.5 * s2 * c2,
            0.5 * c2 * c2,
            0.5 * s2 * (1.0 + s2),
            0.5 * c2 * (1.0 + s2),
        ],
        Bipartition::RobAntiRob => vec![0.5, 0.5],
    };
    let dim = if bip == Bipartition::RobAntiRob { 16 } else { 8 };
    v.resize(dim, 0.0);
    sorted_desc(v)
}

/// Closed-form spectrum of the partial transpose, sorted descending.
pub fn dirac_closed_pt_spectrum(r: &SqueezingParam, bip: Bipartition) -> Vec<f64> {
    let (s, c) = sc(r);
    let (s2, c2) = (s * s, c * c);
    let v = match bip {
        Bipartition::AliceRob => {
            let root = (s2 * s2 + 4.0 * c2).sqrt();
            vec![
                0.5 * c2 * c2,
                0.5 * c2 * s2,
                0.5 * s2,
                0.5 * c2,
                0.25 * (s2 * c2 + c2 * root),
                0.25 * (s2 * c2 - c2 * root),
                0.25 * (s2 * s2 + s2 * root),
                0.25 * (s2 * s2 - s2 * root),
            ]
        }
        Bipartition::AliceAntiRob => {
            let root = (c2 * c2 + 4.0 * s2).sqrt();
            vec![
                0.5 * s2 * s2,
                0.5 * s2 * c2,
                0.5 * c2,
                0.5 * s2,
                0.25 * (s2 * c2 + s2 * root),
                0.25 * (s2 * c2 - s2 * root),
                0.25 * (c2 * c2 + c2 * root),
                0.25 * (c2 * c2 - c2 * root),
            ]
        }
        Bipartition::RobAntiRob => {
            let sin2 = (2.0 * r.r()).sin();
            let root = (1.0 + sin2 * sin2).sqrt();
            let mut v = vec![
                0.5 * c2 * c2,
                0.5 * s2 * s2,
                0.5 * s2 * c2,
                0.5 * s2 * c2,
                0.5 * s * c2 * c,
                -0.5 * s * c2 * c,
                0.5 * c * s2 * s,
                -0.5 * c * s2 * s,
                0.25 * c2 * (1.0 + root),
                0.25 * c2 * (1.0 - root),
                0.25 * s2 * (1.0 + root),
                0.25 * s2 * (1.0 - root),
            ];
            for outer in [1.0, -1.0] {
                for inner in [1.0, -1.0] {
                    v.push(outer * sin2 / 8.0 * (1.0 + inner * root));
                }
            }
            v
        }
    };
    sorted_desc(v)
}

/// Closed-form single-party reduced states (diagonal).
pub fn dirac_closed_single(r: &SqueezingParam, who: Subsystem) -> Result<DensityMatrix> {
    let (s, c) = sc(r);
    let (s2, c2) = (s * s, c * c);
    let (basis, diag) = match who {
        Subsystem::Alice => (alice_basis(Spin::Up)?, vec![0.5, 0.5]),
        Subsystem::Rob => (
            LabeledBasis::dirac(Subsystem::Rob),
            vec![
                0.5 * c2 * c2,
                0.5 * s2 * c2,
                0.5 * c2 * (1.0 + s2),
                0.5 * s2 * (1.0 + s2),
            ],
        ),
        Subsystem::AntiRob => (
            LabeledBasis::dirac(Subsystem::AntiRob),
            vec![
                0.5 * c2 * (1.0 + c2),
                0.5 * s2 * c2,
                0.5 * s2 * (1.0 + c2),
                0.5 * s2 * s2,
            ],
        ),
    };
    let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag));
    DensityMatrix::new(ProductBasis::new(vec![basis])?, m, 0.0, true)
}

pub fn dirac_closed_entropies(r: &SqueezingParam) -> EntropySet {
    let (s, c) = sc(r);
    let (s2, c2) = (s * s, c * c);
    // -x log2 x terms; 0 log 0 = 0 at the endpoints
    let s_r = 1.0 + neg_xlog2x(s2) + 1.5 * neg_xlog2x(c2)
        - 0.5 * (1.0 + s2) * (1.0 + s2).log2();
    let s_rbar = 1.0 + neg_xlog2x(c2) + 1.5 * neg_xlog2x(s2)
        - 0.5 * (1.0 + c2) * (1.0 + c2).log2();
    EntropySet {
        s_a: 1.0,
        s_r,
        s_rbar,
        s_ar: s_rbar,
        s_arbar: s_r,
        s_rrbar: 1.0,
    }
}

pub fn dirac_closed_mutual_information(r: &SqueezingParam, bip: Bipartition) -> f64 {
    dirac_closed_entropies(r).mutual_information(bip)
}

/// Closed-form negativity. The Rob-AntiRob value is the sum of the negative
/// members of [`dirac_closed_pt_spectrum`]:
/// `(1/4)[sin 2r - 1 + (1 + sin 2r) sqrt(1 + sin^2 2r)]`.
pub fn dirac_closed_negativity(r: &SqueezingParam, bip: Bipartition) -> f64 {
    let (s, c) = sc(r);
    match bip {
        Bipartition::AliceRob => 0.5 * c * c,
        Bipartition::AliceAntiRob => 0.5 * s * s,
        Bipartition::RobAntiRob => {
            let x = (2.0 * r.r()).sin();
            0.25 * (x - 1.0 + (1.0 + x) * (1.0 + x * x).sqrt())
        }
    }
}

pub fn dirac_closed_measures(r: &SqueezingParam) -> MeasureSet {
    MeasureSet {
        i_ar: dirac_closed_mutual_information(r, Bipartition::AliceRob),
        i_arbar: dirac_closed_mutual_information(r, Bipartition::AliceAntiRob),
        i_rrbar: dirac_closed_mutual_information(r, Bipartition::RobAntiRob),
        n_ar: dirac_closed_negativity(r, Bipartition::AliceRob),
        n_arbar: dirac_closed_negativity(r, Bipartition::AliceAntiRob),
        n_rrbar: dirac_closed_negativity(r, Bipartition::RobAntiRob),
    }
}

/// Bipartite density matrix from the tripartite state by partial trace.
pub fn dirac_constructive_rho(r: &SqueezingParam, bip: Bipartition) -> Result<DensityMatrix> {
    let rho = dirac_tripartite_state(r)?.density();
    partial_trace(&rho, &bip.kept())
}

/// Every measure evaluated from the state vector by partial traces, partial
/// transposes and numerical spectra.
pub fn dirac_constructive_measures(psi: &StateVector) -> Result<MeasureSet> {
    let rho = psi.density();
    let single = |s: Subsystem| -> Result<f64> {
        entropy_of_spectrum(&partial_trace(&rho, &[s])?.eigenvalues()?)
    };
    let (sa, sr, srbar) = (
        single(Subsystem::Alice)?,
        single(Subsystem::Rob)?,
        single(Subsystem::AntiRob)?,
    );
    let mut pair_entropy = [0.0; 3];
    let mut neg = [0.0; 3];
    for (k, bip) in Bipartition::ALL.iter().enumerate() {
        let reduced = partial_trace(&rho, &bip.kept())?;
        pair_entropy[k] = entropy_of_spectrum(&reduced.eigenvalues()?)?;
        let pt = partial_transpose(&reduced, bip.transposed())?;
        neg[k] = negativity_of_spectrum(&pt.eigenvalues()?);
    }
    Ok(MeasureSet {
        i_ar: sa + sr - pair_entropy[0],
        i_arbar: sa + srbar - pair_entropy[1],
        i_rrbar: sr + srbar - pair_entropy[2],
        n_ar: neg[0],
        n_arbar: neg[1],
        n_rrbar: neg[2],
    })
}

/// Full report at `r`, with the constructive cross-check.
pub fn dirac_report(r: &SqueezingParam) -> Result<CorrelationReport> {
    dirac_report_with(r, true)
}

pub fn dirac_report_with(r: &SqueezingParam, oracle: bool) -> Result<CorrelationReport> {
    let closed = dirac_closed_measures(r);
    let discrepancy = if oracle {
        let constructive = dirac_constructive_measures(&dirac_tripartite_state(r)?)?;
        let d = closed.max_abs_diff(&constructive);
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
    Ok(CorrelationReport::from_measures(r.r(), &closed, 0.0, discrepancy))
}
