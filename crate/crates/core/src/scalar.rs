//! Scalar field: truncated two-mode squeezed states, the bipartite matrices
//! of the Alice/Rob/AntiRob system, their spectra and the three negativities.
//!
//! Conventions: `t = tanh r`, `c = cosh r`, `x = t^2`. A truncation `K`
//! keeps Fock levels `0..=K` in each Rindler region; a vacuum term `(n, n)`
//! survives when `n <= K` and a one-particle term `(n+1, n)` when `n+1 <= K`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::algebra::{
    entropy_of_spectrum, negativity_of_spectrum, partial_transpose, sym_eigenvalues,
    tridiagonal_eigenvalues, BasisLabel, DensityMatrix, LabeledBasis, ProductBasis, StateVector,
    Subsystem,
};
use crate::error::{Error, Result};
use crate::params::SqueezingParam;
use crate::report::{Bipartition, CorrelationReport, EntropySet, MeasureSet};

/// Largest Fock cutoff the adaptive truncation may reach.
pub const HARD_CAP: usize = 4096;
/// Largest dense Rob-AntiRob matrix (dimension) built on request.
pub const DENSE_RRBAR_LIMIT: usize = 4096;
/// PT eigenvalues below this flag a bug in the Alice-AntiRob PPT check.
pub const PPT_ERROR_TOL: f64 = 1e-10;
/// Rob-AntiRob blocks checked against the state in the oracle.
pub const ORACLE_MAX_BLOCK: usize = 24;
pub const ORACLE_TOL: f64 = 1e-9;
const QUIET_BLOCKS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationConfig {
    /// Starting Fock cutoff; grown until both tails fall below `tail_tol`.
    pub n_max: usize,
    pub tail_tol: f64,
    /// Largest Rob-AntiRob block dimension summed.
    pub d_max: usize,
    pub block_tol: f64,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self {
            n_max: 1,
            tail_tol: 1e-12,
            d_max: 1024,
            block_tol: 1e-14,
        }
    }
}

impl TruncationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 {
            return Err(Error::InvalidConfig("n_max must be at least 1".into()));
        }
        if self.d_max < 2 {
            return Err(Error::InvalidConfig("d_max must be at least 2".into()));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol.is_finite()) {
            return Err(Error::InvalidConfig("tail_tol must be positive".into()));
        }
        if !(self.block_tol > 0.0 && self.block_tol.is_finite()) {
            return Err(Error::InvalidConfig("block_tol must be positive".into()));
        }
        Ok(())
    }

    /// Smallest cutoff `K >= n_max` whose discarded vacuum mass `x^(K+1)` and
    /// one-particle mass `x^K [(K+1)(1-x) + x]` are both within `tail_tol`.
    pub fn resolve_n_max(&self, r: &SqueezingParam) -> Result<usize> {
        self.validate()?;
        let sq = Squeeze::new(r.r());
        let x = sq.x();
        let one_minus_x = 1.0 / (sq.c * sq.c);
        let mut k = self.n_max;
        loop {
            if k > HARD_CAP {
                return Err(Error::TruncationCap(HARD_CAP));
            }
            let xk = x.powi(k as i32);
            let vac_tail = xk * x;
            let one_tail = xk * ((k + 1) as f64 * one_minus_x + x);
            if vac_tail <= self.tail_tol && one_tail <= self.tail_tol {
                return Ok(k);
            }
            k += 1;
        }
    }
}

/// `tanh r` and `cosh r` with the single-mode amplitudes built from them.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Squeeze {
    pub t: f64,
    pub c: f64,
}

impl Squeeze {
    pub fn new(r: f64) -> Self {
        Self {
            t: r.tanh(),
            c: r.cosh(),
        }
    }

    pub fn x(&self) -> f64 {
        self.t * self.t
    }

    fn tpow(&self, n: usize) -> f64 {
        self.t.powi(n as i32)
    }

    /// Vacuum amplitude on `(n, n)`.
    pub fn vac(&self, n: usize) -> f64 {
        self.tpow(n) / self.c
    }

    /// One-particle amplitude on `(n+1, n)`.
    pub fn one(&self, n: usize) -> f64 {
        self.tpow(n) * ((n + 1) as f64).sqrt() / (self.c * self.c)
    }
}

fn fock(n: usize) -> BasisLabel {
    BasisLabel::Fock(n)
}

/// Pure state on `Rob (0..=rob_max) x AntiRob (0..=antirob_max)`.
pub(crate) fn rindler_pair_state(
    rob_max: usize,
    antirob_max: usize,
    terms: impl IntoIterator<Item = (usize, usize, f64)>,
) -> Result<StateVector> {
    let basis = ProductBasis::new(vec![
        LabeledBasis::fock(Subsystem::Rob, rob_max),
        LabeledBasis::fock(Subsystem::AntiRob, antirob_max),
    ])?;
    let mut psi = StateVector::zeros(basis);
    for (m, n, a) in terms {
        psi.set(&[fock(m), fock(n)], a)?;
    }
    Ok(psi)
}

/// `(|0>_A |vac> + |1>_A |one>) / sqrt 2`; both arguments share one basis.
pub(crate) fn alice_tripartite(vac: &StateVector, one: &StateVector) -> Result<StateVector> {
    if vac.basis() != one.basis() {
        return Err(Error::DimensionMismatch {
            expected: vac.basis().dim(),
            got: one.basis().dim(),
        });
    }
    let mut factors = vec![LabeledBasis::fock(Subsystem::Alice, 1)];
    factors.extend(vac.basis().factors().iter().cloned());
    let basis = ProductBasis::new(factors)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = vac
        .amplitudes()
        .iter()
        .chain(one.amplitudes())
        .map(|a| h * a)
        .collect();
    StateVector::new(basis, amps)
}

/// Truncated Minkowski vacuum over Rob x AntiRob.
pub fn scalar_vacuum(r: &SqueezingParam, cfg: &TruncationConfig) -> Result<StateVector> {
    let k = cfg.resolve_n_max(r)?;
    let sq = Squeeze::new(r.r());
    rindler_pair_state(k, k, (0..=k).map(|n| (n, n, sq.vac(n))))
}

/// Truncated Minkowski one-particle state over Rob x AntiRob.
pub fn scalar_one_particle(r: &SqueezingParam, cfg: &TruncationConfig) -> Result<StateVector> {
    let k = cfg.resolve_n_max(r)?;
    let sq = Squeeze::new(r.r());
    rindler_pair_state(k, k, (0..k).map(|n| (n + 1, n, sq.one(n))))
}

pub fn scalar_tripartite_state(r: &SqueezingParam, cfg: &TruncationConfig) -> Result<StateVector> {
    alice_tripartite(&scalar_vacuum(r, cfg)?, &scalar_one_particle(r, cfg)?)
}

/// Nonzero entries of a bipartite matrix, keyed by `((bra_a, bra_b), (ket_a, ket_b))`.
pub type SparseEntries = BTreeMap<((usize, usize), (usize, usize)), f64>;

fn add_sym(e: &mut SparseEntries, a: (usize, usize), b: (usize, usize), v: f64) {
    if v == 0.0 {
        return;
    }
    *e.entry((a, b)).or_insert(0.0) += v;
    if a != b {
        *e.entry((b, a)).or_insert(0.0) += v;
    }
}

/// Closed-form entries of a truncated bipartite matrix at cutoff `k`.
pub fn scalar_closed_entries(r: &SqueezingParam, k: usize, bip: Bipartition) -> SparseEntries {
    let sq = Squeeze::new(r.r());
    let (t, c) = (sq.t, sq.c);
    let mut e = SparseEntries::new();
    match bip {
        Bipartition::AliceRob => {
            for n in 0..=k {
                let pref = sq.x().powi(n as i32) / (2.0 * c * c);
                let s = ((n + 1) as f64).sqrt();
                add_sym(&mut e, (0, n), (0, n), pref);
                if n < k {
                    add_sym(&mut e, (0, n), (1, n + 1), pref * s / c);
                    add_sym(&mut e, (1, n + 1), (1, n + 1), pref * (n + 1) as f64 / (c * c));
                }
            }
        }
        Bipartition::AliceAntiRob => {
            for n in 0..=k {
                let pref = sq.x().powi(n as i32) / (2.0 * c * c);
                let s = ((n + 1) as f64).sqrt();
                add_sym(&mut e, (0, n), (0, n), pref);
                if n < k {
                    add_sym(&mut e, (0, n + 1), (1, n), pref * s / c * t);
                    add_sym(&mut e, (1, n), (1, n), pref * (n + 1) as f64 / (c * c));
                }
            }
        }
        Bipartition::RobAntiRob => {
            for n in 0..=k {
                for m in 0..=k {
                    let pref = t.powi((n + m) as i32) / (2.0 * c * c);
                    if pref == 0.0 {
                        continue;
                    }
                    *e.entry(((n, n), (m, m))).or_insert(0.0) += pref;
                    if n < k && m < k {
                        let w = ((n + 1) as f64).sqrt() * ((m + 1) as f64).sqrt() / (c * c);
                        *e.entry(((n + 1, n), (m + 1, m))).or_insert(0.0) += pref * w;
                    }
                }
            }
        }
    }
    e
}

fn pair_basis(bip: Bipartition, k: usize) -> Result<ProductBasis> {
    let [a, b] = bip.kept();
    let top_a = if a == Subsystem::Alice { 1 } else { k };
    ProductBasis::new(vec![LabeledBasis::fock(a, top_a), LabeledBasis::fock(b, k)])
}

fn dense_from_entries(basis: ProductBasis, e: &SparseEntries) -> Result<DensityMatrix> {
    let d = basis.dim();
    let mut m = DMatrix::zeros(d, d);
    for (&((a, b), (c, dd)), &v) in e {
        let i = basis.join_index(&[a, b]);
        let j = basis.join_index(&[c, dd]);
        m[(i, j)] = v;
    }
    let deficit = (1.0 - m.trace()).max(0.0);
    DensityMatrix::new(basis, m, deficit, true)
}

/// Closed-form truncated bipartite density matrix (dense). The Rob-AntiRob
/// matrix has dimension `(K+1)^2` and is refused above
/// [`DENSE_RRBAR_LIMIT`]; use [`scalar_closed_entries`] there.
pub fn scalar_closed_rho(
    r: &SqueezingParam,
    cfg: &TruncationConfig,
    bip: Bipartition,
) -> Result<DensityMatrix> {
    let k = cfg.resolve_n_max(r)?;
    let basis = pair_basis(bip, k)?;
    if basis.dim() > DENSE_RRBAR_LIMIT {
        return Err(Error::InvalidConfig(format!(
            "dense matrix of dimension {} exceeds {DENSE_RRBAR_LIMIT}",
            basis.dim()
        )));
    }
    dense_from_entries(basis, &scalar_closed_entries(r, k, bip))
}

/// Nonzero entries of a bipartite reduced matrix, computed from a
/// tripartite Fock state without forming a dense matrix.
pub fn reduced_entries_from_state(psi: &StateVector, bip: Bipartition) -> Result<SparseEntries> {
    let basis = psi.basis();
    let pos = |s: Subsystem| basis.position(s).ok_or(Error::UnknownSubsystem(s));
    let [ka, kb] = bip.kept();
    let (ia, ib, it) = (pos(ka)?, pos(kb)?, pos(bip.traced())?);
    let level = |l: BasisLabel| match l {
        BasisLabel::Fock(n) => Ok(n),
        BasisLabel::Dirac(_) => Err(Error::NonCanonicalBasis(basis.factors()[0].subsystem())),
    };
    // group nonzero amplitudes by the traced index
    let mut groups: BTreeMap<usize, Vec<((usize, usize), f64)>> = BTreeMap::new();
    for (flat, &a) in psi.amplitudes().iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let labels = basis.label_at(flat);
        let key = (level(labels[ia])?, level(labels[ib])?);
        groups.entry(level(labels[it])?).or_default().push((key, a));
    }
    let mut e = SparseEntries::new();
    for terms in groups.values() {
        for &(x, ax) in terms {
            for &(y, ay) in terms {
                *e.entry((x, y)).or_insert(0.0) += ax * ay;
            }
        }
    }
    Ok(e)
}

/// Largest absolute difference over the union of two supports.
pub fn max_entry_diff(a: &SparseEntries, b: &SparseEntries) -> f64 {
    let mut m = 0.0f64;
    for (key, va) in a {
        m = m.max((va - b.get(key).copied().unwrap_or(0.0)).abs());
    }
    for (key, vb) in b {
        if !a.contains_key(key) {
            m = m.max(vb.abs());
        }
    }
    m
}

fn vac_mass(sq: &Squeeze, n: usize, k: usize) -> f64 {
    if n <= k {
        sq.x().powi(n as i32) / (sq.c * sq.c)
    } else {
        0.0
    }
}

fn one_mass(sq: &Squeeze, n: usize, k: usize) -> f64 {
    if n < k {
        sq.x().powi(n as i32) * (n + 1) as f64 / sq.c.powi(4)
    } else {
        0.0
    }
}

/// Diagonal of Rob's reduced state:
/// `t^(2n)/(2c^2) + n t^(2n-2)/(2c^4)`.
pub fn scalar_rob_spectrum(r: &SqueezingParam, k: usize) -> Vec<f64> {
    let sq = Squeeze::new(r.r());
    (0..=k)
        .map(|n| {
            let one = if n == 0 { 0.0 } else { one_mass(&sq, n - 1, k) };
            0.5 * (vac_mass(&sq, n, k) + one)
        })
        .collect()
}

/// Diagonal of AntiRob's reduced state:
/// `t^(2n)/(2c^2) (1 + (n+1)/c^2)`.
pub fn scalar_antirob_spectrum(r: &SqueezingParam, k: usize) -> Vec<f64> {
    let sq = Squeeze::new(r.r());
    (0..=k)
        .map(|n| 0.5 * (vac_mass(&sq, n, k) + one_mass(&sq, n, k)))
        .collect()
}

/// Nonzero Alice-Rob eigenvalues, one per rank-one block
/// `{|0 n>, |1 n+1>}`.
pub fn scalar_ar_spectrum(r: &SqueezingParam, k: usize) -> Vec<f64> {
    let sq = Squeeze::new(r.r());
    (0..=k)
        .map(|n| {
            let pref = sq.x().powi(n as i32) / (2.0 * sq.c * sq.c);
            let tail = if n < k { (n + 1) as f64 / (sq.c * sq.c) } else { 0.0 };
            pref * (1.0 + tail)
        })
        .collect()
}

/// Nonzero Alice-AntiRob eigenvalues: `|00>` alone, then rank-one blocks
/// `{|0 n>, |1 n-1>}`.
pub fn scalar_arbar_spectrum(r: &SqueezingParam, k: usize) -> Vec<f64> {
    let sq = Squeeze::new(r.r());
    (0..=k)
        .map(|n| {
            let one = if n == 0 { 0.0 } else { one_mass(&sq, n - 1, k) };
            0.5 * (vac_mass(&sq, n, k) + one)
        })
        .collect()
}

/// Entropies from the closed spectra at the resolved cutoff.
pub fn scalar_entropies(r: &SqueezingParam, cfg: &TruncationConfig) -> Result<EntropySet> {
    let k = cfg.resolve_n_max(r)?;
    let sq = Squeeze::new(r.r());
    let vac_norm: f64 = (0..=k).map(|n| vac_mass(&sq, n, k)).sum();
    let one_norm: f64 = (0..k).map(|n| one_mass(&sq, n, k)).sum();
    let s_a = entropy_of_spectrum(&[0.5 * vac_norm, 0.5 * one_norm])?;
    Ok(EntropySet {
        s_a,
        s_r: entropy_of_spectrum(&scalar_rob_spectrum(r, k))?,
        s_rbar: entropy_of_spectrum(&scalar_antirob_spectrum(r, k))?,
        s_ar: entropy_of_spectrum(&scalar_ar_spectrum(r, k))?,
        s_arbar: entropy_of_spectrum(&scalar_arbar_spectrum(r, k))?,
        s_rrbar: s_a,
    })
}

/// Smaller eigenvalue of `[[p, q], [q, s]]` without cancellation.
fn lower_eigenvalue(p: f64, q: f64, s: f64) -> f64 {
    let upper = 0.5 * (p + s) + (0.25 * (p - s) * (p - s) + q * q).sqrt();
    if upper == 0.0 {
        0.0
    } else {
        (p * s - q * q) / upper
    }
}

/// Alice-Rob negativity: sum over the `2x2` PT blocks in
/// `{|0 n+1>, |1 n>}` of their negative eigenvalue, untruncated, stopped once
/// the bound on all remaining terms is below `tail_tol`.
pub fn scalar_negativity_ar(r: &SqueezingParam, cfg: &TruncationConfig) -> Result<f64> {
    cfg.validate()?;
    let sq = Squeeze::new(r.r());
    let (x, c) = (sq.x(), sq.c);
    let c2 = c * c;
    let mut sum = 0.0;
    for n in 0..=HARD_CAP {
        let xn = x.powi(n as i32);
        let p = xn * x / (2.0 * c2);
        let s = if n == 0 { 0.0 } else { n as f64 * x.powi(n as i32 - 1) / (2.0 * c2 * c2) };
        let q = xn * ((n + 1) as f64).sqrt() / (2.0 * c2 * c);
        let low = lower_eigenvalue(p, q, s);
        if low < 0.0 {
            sum -= low;
        }
        // every later term is at most its off-diagonal entry
        let k = (n + 1) as f64;
        let tail = x.powi(n as i32 + 1) * ((k + 1.0) * c2 + x * c2 * c2) / (2.0 * c2 * c);
        if tail < cfg.tail_tol {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNoConvergence {
        terms: HARD_CAP + 1,
        partial: sum,
    })
}

/// The `2x2` Alice-AntiRob PT blocks `(p, q, s)` in `{|0 n>, |1 n+1>}` for
/// `n = 0..n_blocks`.
pub fn scalar_arbar_pt_blocks(r: &SqueezingParam, n_blocks: usize) -> Vec<(f64, f64, f64)> {
    let sq = Squeeze::new(r.r());
    let (t, c) = (sq.t, sq.c);
    (0..n_blocks)
        .map(|n| {
            let pref = sq.x().powi(n as i32) / (2.0 * c * c);
            let off = pref * t / c * ((n + 1) as f64).sqrt();
            let corner = pref * t * t / (c * c) * (n + 2) as f64;
            (pref, off, corner)
        })
        .collect()
}

/// Outcome of the Alice-AntiRob positivity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptCheck {
    pub min_eigenvalue: f64,
    pub min_determinant: f64,
    pub blocks: usize,
}

/// Checks every Alice-AntiRob PT block up to the resolved cutoff, plus the
/// `|1 0>` singleton `1/(2c^4)`.
pub fn scalar_ppt_check_arbar(r: &SqueezingParam, cfg: &TruncationConfig) -> Result<PptCheck> {
    let k = cfg.resolve_n_max(r)?;
    let c = r.r().cosh();
    let blocks = scalar_arbar_pt_blocks(r, k);
    let mut min_eig = 0.5 / c.powi(4);
    let mut min_det = f64::INFINITY;
    for &(p, q, s) in &blocks {
        min_det = min_det.min(p * s - q * q);
        min_eig = min_eig.min(lower_eigenvalue(p, q, s));
    }
    if min_eig < -PPT_ERROR_TOL {
        return Err(Error::UnexpectedNegativity(min_eig));
    }
    Ok(PptCheck {
        min_eigenvalue: min_eig,
        min_determinant: min_det,
        blocks: blocks.len(),
    })
}

/// Alice-AntiRob negativity from the PT blocks; zero for every `r`.
pub fn scalar_negativity_arbar(r: &SqueezingParam, cfg: &TruncationConfig) -> Result<f64> {
    let k = cfg.resolve_n_max(r)?;
    scalar_ppt_check_arbar(r, cfg)?;
    let spec: Vec<f64> = scalar_arbar_pt_blocks(r, k)
        .into_iter()
        .map(|(p, q, s)| lower_eigenvalue(p, q, s))
        .collect();
    Ok(negativity_of_spectrum(&spec))
}

/// Rob-AntiRob PT block on `m + n = dim - 1`, as the diagonal and
/// off-diagonal of a tridiagonal matrix. The basis is ordered along the
/// chain `j = 0, D-1, 1, D-2, ...` of Rob occupations; odd links carry
/// `t^(D-1)/(2c^2)`, even links `sqrt(D-l) sqrt(l) t^(D-2)/(2c^4)`, and the
/// last diagonal entry is `a_D`.
pub fn rrbar_block_tridiagonal(r: &SqueezingParam, dim: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(dim >= 1, "block dimension must be positive");
    let sq = Squeeze::new(r.r());
    let c2 = sq.c * sq.c;
    let a = |n: usize| -> f64 {
        if n % 2 == 1 {
            sq.t.powi(dim as i32 - 1) / (2.0 * c2)
        } else {
            let l = (n / 2) as f64;
            (dim as f64 - l).sqrt() * l.sqrt() * sq.t.powi(dim as i32 - 2) / (2.0 * c2 * c2)
        }
    };
    let off: Vec<f64> = (1..dim).map(a).collect();
    let mut diag = vec![0.0; dim];
    diag[dim - 1] = a(dim);
    (diag, off)
}

/// [`rrbar_block_tridiagonal`] as a dense matrix.
pub fn rrbar_block(r: &SqueezingParam, dim: usize) -> DMatrix<f64> {
    let (diag, off) = rrbar_block_tridiagonal(r, dim);
    let mut m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag));
    for (i, &v) in off.iter().enumerate() {
        m[(i, i + 1)] = v;
        m[(i + 1, i)] = v;
    }
    m
}

fn rrbar_block_negativity(r: &SqueezingParam, dim: usize) -> Result<f64> {
    let (diag, off) = rrbar_block_tridiagonal(r, dim);
    let eig = tridiagonal_eigenvalues(&diag, &off)?;
    Ok(-eig.iter().filter(|&&e| e < 0.0).sum::<f64>())
}

/// Negativity contributed by each block `D = 1, 2, ...`, stopping after
/// three consecutive blocks below `block_tol`.
pub fn scalar_rrbar_block_contributions(
    r: &SqueezingParam,
    cfg: &TruncationConfig,
) -> Result<Vec<f64>> {
    cfg.validate()?;
    let mut out = Vec::new();
    let mut quiet = 0;
    for dim in 1..=cfg.d_max {
        let v = rrbar_block_negativity(r, dim)?;
        out.push(v);
        quiet = if v < cfg.block_tol { quiet + 1 } else { 0 };
        if quiet == QUIET_BLOCKS {
            return Ok(out);
        }
    }
    Err(Error::BlockSumNoConvergence {
        d_max: cfg.d_max,
        partial: out.iter().sum(),
    })
}

pub fn scalar_negativity_rrbar(r: &SqueezingParam, cfg: &TruncationConfig) -> Result<f64> {
    Ok(scalar_rrbar_block_contributions(r, cfg)?.iter().sum())
}

/// PT of the Rob-AntiRob reduced state of `psi` restricted to
/// `m + n = dim - 1`, in the basis `|j, dim-1-j>`, `j = 0..dim`.
pub fn rrbar_block_from_state(psi: &StateVector, dim: usize) -> Result<DMatrix<f64>> {
    let basis = psi.basis();
    let alice = basis
        .factor(Subsystem::Alice)
        .ok_or(Error::UnknownSubsystem(Subsystem::Alice))?
        .labels()
        .to_vec();
    for s in [Subsystem::Rob, Subsystem::AntiRob] {
        let top = basis.factor(s).ok_or(Error::UnknownSubsystem(s))?.dim();
        if dim > top {
            return Err(Error::InvalidConfig(format!(
                "block {dim} needs Fock level {} in {s:?}",
                dim - 1
            )));
        }
    }
    let rho = |a: (usize, usize), b: (usize, usize)| -> f64 {
        alice
            .iter()
            .map(|&al| {
                psi.amplitude(&[al, fock(a.0), fock(a.1)]) * psi.amplitude(&[al, fock(b.0), fock(b.1)])
            })
            .sum()
    };
    let mut m = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        for jp in 0..dim {
            let (k, kp) = (dim - 1 - j, dim - 1 - jp);
            // <j k| rho^T_B |j' k'> = <j k'| rho |j' k>
            m[(j, jp)] = rho((j, kp), (jp, k));
        }
    }
    Ok(m)
}

/// Every measure at `r` from the closed spectra, series and block sums.
pub fn scalar_closed_measures(r: &SqueezingParam, cfg: &TruncationConfig) -> Result<MeasureSet> {
    let e = scalar_entropies(r, cfg)?;
    Ok(MeasureSet {
        i_ar: e.mutual_information(Bipartition::AliceRob),
        i_arbar: e.mutual_information(Bipartition::AliceAntiRob),
        i_rrbar: e.mutual_information(Bipartition::RobAntiRob),
        n_ar: scalar_negativity_ar(r, cfg)?,
        n_arbar: scalar_negativity_arbar(r, cfg)?,
        n_rrbar: scalar_negativity_rrbar(r, cfg)?,
    })
}

/// Largest disagreement between the closed evaluation and one built from the
/// truncated tripartite state. Rob-AntiRob negativity is compared over the
/// blocks the truncated state represents exactly, up to [`ORACLE_MAX_BLOCK`].
pub fn scalar_oracle_discrepancy(
    r: &SqueezingParam,
    cfg: &TruncationConfig,
    closed: &MeasureSet,
) -> Result<f64> {
    let k = cfg.resolve_n_max(r)?;
    let psi = scalar_tripartite_state(r, cfg)?;
    let ent = |keep: &[Subsystem]| -> Result<f64> { entropy_of_spectrum(&psi.reduced_spectrum(keep)?) };
    use Subsystem::{Alice, AntiRob, Rob};
    let (sa, sr, srbar) = (ent(&[Alice])?, ent(&[Rob])?, ent(&[AntiRob])?);
    let (sar, sarbar) = (ent(&[Alice, Rob])?, ent(&[Alice, AntiRob])?);
    let neg = |bip: Bipartition| -> Result<f64> {
        let rho = psi.reduced_density(&bip.kept())?;
        let pt = partial_transpose(&rho, bip.transposed())?;
        Ok(negativity_of_spectrum(&pt.eigenvalues()?))
    };
    let mut d = [
        closed.i_ar - (sa + sr - sar),
        closed.i_arbar - (sa + srbar - sarbar),
        closed.i_rrbar - (sr + srbar - sa),
        closed.n_ar - neg(Bipartition::AliceRob)?,
        closed.n_arbar - neg(Bipartition::AliceAntiRob)?,
        0.0,
    ];
    let blocks = (k + 1).min(ORACLE_MAX_BLOCK);
    let mut built = 0.0;
    let mut formula = 0.0;
    for dim in 1..=blocks {
        built += negativity_of_spectrum(&sym_eigenvalues(&rrbar_block_from_state(&psi, dim)?)?);
        formula += negativity_of_spectrum(&sym_eigenvalues(&rrbar_block(r, dim))?);
    }
    d[5] = built - formula;
    Ok(d.iter().fold(0.0, |m, v| m.max(v.abs())))
}

/// Norm lost by the truncated tripartite state.
pub fn scalar_trace_deficit(r: &SqueezingParam, cfg: &TruncationConfig) -> Result<f64> {
    let k = cfg.resolve_n_max(r)?;
    let sq = Squeeze::new(r.r());
    let vac: f64 = (0..=k).map(|n| vac_mass(&sq, n, k)).sum();
    let one: f64 = (0..k).map(|n| one_mass(&sq, n, k)).sum();
    Ok((1.0 - 0.5 * (vac + one)).max(0.0))
}

pub fn scalar_report(r: &SqueezingParam, cfg: &TruncationConfig) -> Result<CorrelationReport> {
    scalar_report_with(r, cfg, true)
}

pub fn scalar_report_with(
    r: &SqueezingParam,
    cfg: &TruncationConfig,
    oracle: bool,
) -> Result<CorrelationReport> {
    let closed = scalar_closed_measures(r, cfg)?;
    let discrepancy = if oracle {
        let d = scalar_oracle_discrepancy(r, cfg, &closed)?;
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
        &closed,
        scalar_trace_deficit(r, cfg)?,
        discrepancy,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(r: f64) -> SqueezingParam {
        SqueezingParam::scalar(r).unwrap()
    }

    fn half() -> SqueezingParam {
        p(0.5f64.atanh())
    }

    fn cfg() -> TruncationConfig {
        TruncationConfig::default()
    }

    #[test]
    fn config_validation() {
        assert!(TruncationConfig { n_max: 0, ..cfg() }.validate().is_err());
        assert!(TruncationConfig { d_max: 1, ..cfg() }.validate().is_err());
        assert!(TruncationConfig { tail_tol: 0.0, ..cfg() }.validate().is_err());
        assert!(cfg().validate().is_ok());
    }

    #[test]
    fn cutoff_meets_both_tails() {
        for r in [0.1, 0.5, 1.0, 1.5] {
            let k = cfg().resolve_n_max(&p(r)).unwrap();
            let x = r.tanh().powi(2);
            assert!(x.powi(k as i32 + 1) <= 1e-12);
            assert!(x.powi(k as i32) * ((k + 1) as f64 * (1.0 - x) + x) <= 1e-12);
            // and the previous cutoff would not
            let j = k - 1;
            assert!(x.powi(j as i32) * ((j + 1) as f64 * (1.0 - x) + x) > 1e-12 || x.powi(j as i32 + 1) > 1e-12);
        }
        assert_eq!(cfg().resolve_n_max(&p(0.0)).unwrap(), 1);
    }

    #[test]
    fn cutoff_hits_hard_cap() {
        assert!(matches!(
            cfg().resolve_n_max(&p(8.0)),
            Err(Error::TruncationCap(HARD_CAP))
        ));
    }

    #[test]
    fn vacuum_amplitudes() {
        let v = scalar_vacuum(&p(0.0), &cfg()).unwrap();
        assert_eq!(v.amplitude(&[fock(0), fock(0)]), 1.0);
        assert_eq!(v.norm_sqr(), 1.0);

        let v = scalar_vacuum(&half(), &cfg()).unwrap();
        let c = (4.0f64 / 3.0).sqrt();
        for n in 0..6 {
            let want = 0.5f64.powi(n) / c;
            assert!((v.amplitude(&[fock(n as usize), fock(n as usize)]) - want).abs() < 1e-15);
        }
        assert!(1.0 - v.norm_sqr() <= 1e-12);
    }

    #[test]
    fn vacuum_geometric_ratio() {
        let r = p(0.9);
        let v = scalar_vacuum(&r, &cfg()).unwrap();
        for n in 0..10 {
            let a = v.amplitude(&[fock(n), fock(n)]);
            let b = v.amplitude(&[fock(n + 1), fock(n + 1)]);
            assert!((b / a - 0.9f64.tanh()).abs() < 1e-14);
        }
    }

    #[test]
    fn one_particle_amplitudes() {
        let o = scalar_one_particle(&p(0.0), &cfg()).unwrap();
        assert_eq!(o.amplitude(&[fock(1), fock(0)]), 1.0);
        let o = scalar_one_particle(&half(), &cfg()).unwrap();
        assert!((o.amplitude(&[fock(1), fock(0)]) - 0.75).abs() < 1e-15);
        for r in [0.3, 1.0, 1.5] {
            let o = scalar_one_particle(&p(r), &cfg()).unwrap();
            assert!((1.0 - o.norm_sqr()) <= 1e-12);
            assert!(1.0 - o.norm_sqr() >= 0.0);
        }
    }

    #[test]
    fn closed_ar_at_zero_is_bell() {
        let rho = scalar_closed_rho(&p(0.0), &cfg(), Bipartition::AliceRob).unwrap();
        let a = [fock(0), fock(0)];
        let b = [fock(1), fock(1)];
        for (x, y) in [(&a, &a), (&a, &b), (&b, &a), (&b, &b)] {
            assert_eq!(rho.element(x, y), 0.5);
        }
        assert_eq!(rho.trace(), 1.0);
    }

    #[test]
    fn closed_entries_match_state() {
        for r in [0.25, 0.5, 1.0, 1.5] {
            let k = cfg().resolve_n_max(&p(r)).unwrap();
            let psi = scalar_tripartite_state(&p(r), &cfg()).unwrap();
            for bip in Bipartition::ALL {
                let closed = scalar_closed_entries(&p(r), k, bip);
                let built = reduced_entries_from_state(&psi, bip).unwrap();
                assert!(max_entry_diff(&closed, &built) <= 1e-12, "r={r} {bip:?}");
            }
        }
    }

    #[test]
    fn closed_dense_matches_partial_trace() {
        let r = p(0.4);
        let psi = scalar_tripartite_state(&r, &cfg()).unwrap();
        for bip in Bipartition::ALL {
            let closed = scalar_closed_rho(&r, &cfg(), bip).unwrap();
            let built = psi.reduced_density(&bip.kept()).unwrap();
            assert!(closed.max_abs_diff(&built).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn ar_block_eigenvalues_match_closed_list() {
        let r = p(0.7);
        let k = cfg().resolve_n_max(&r).unwrap();
        let rho = scalar_closed_rho(&r, &cfg(), Bipartition::AliceRob).unwrap();
        let mut want = scalar_ar_spectrum(&r, k);
        want.resize(rho.dim(), 0.0);
        want.sort_by(|a, b| b.total_cmp(a));
        for (x, y) in rho.eigenvalues().unwrap().iter().zip(&want) {
            assert!((x - y).abs() < 1e-12);
        }
        // the untruncated series (t^2n / 2c^2)(1 + (n+1)/c^2) away from the cutoff
        let (t, c) = (0.7f64.tanh(), 0.7f64.cosh());
        let l = scalar_ar_spectrum(&r, k);
        for n in 0..5 {
            let f = t.powi(2 * n) / (2.0 * c * c) * (1.0 + (n + 1) as f64 / (c * c));
            assert!((l[n as usize] - f).abs() < 1e-15);
        }
    }

    #[test]
    fn rrbar_has_rank_two() {
        let r = p(0.6);
        let rho = scalar_closed_rho(&r, &cfg(), Bipartition::RobAntiRob).unwrap();
        let e = rho.eigenvalues().unwrap();
        assert!((e[0] - 0.5).abs() < 1e-11 && (e[1] - 0.5).abs() < 1e-11);
        assert!(e[2..].iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn entropies_inertial_limit() {
        let e = scalar_entropies(&p(0.0), &cfg()).unwrap();
        assert_eq!(e.s_r, 1.0);
        assert_eq!(e.s_rbar, 0.0);
        assert_eq!(e.s_a, 1.0);
        assert_eq!(e.s_rrbar, 1.0);
        let small = scalar_entropies(&p(1e-4), &cfg()).unwrap();
        assert!(small.s_rbar < 1e-5);
    }

    #[test]
    fn entropies_match_state_spectra() {
        let r = p(1.0);
        let e = scalar_entropies(&r, &cfg()).unwrap();
        let psi = scalar_tripartite_state(&r, &cfg()).unwrap();
        let s = |keep: &[Subsystem]| entropy_of_spectrum(&psi.reduced_spectrum(keep).unwrap()).unwrap();
        assert!((e.s_r - s(&[Subsystem::Rob])).abs() < 1e-8);
        assert!((e.s_rbar - s(&[Subsystem::AntiRob])).abs() < 1e-8);
        assert!((e.s_ar - e.s_rbar).abs() < 1e-12);
        assert!((e.s_arbar - e.s_r).abs() < 1e-12);
        assert!((e.s_rrbar - 1.0).abs() < 1e-10);
        // frozen from an independent series evaluation
        assert!((e.s_r - 3.01990).abs() < 1e-5);
        assert!((e.s_rbar - 2.79037).abs() < 1e-5);
    }

    #[test]
    fn rob_entropy_matches_series_form() {
        let r = 1.0f64;
        let (t, c) = (r.tanh(), r.cosh());
        let mut s = 0.0;
        for n in 0..400 {
            let v = t.powi(2 * (n - 1)) / (2.0 * c * c) * (t * t + n as f64 / (c * c));
            if v > 0.0 {
                s -= v * v.log2();
            }
        }
        let e = scalar_entropies(&p(r), &cfg()).unwrap();
        assert!((e.s_r - s).abs() < 1e-8);
    }

    #[test]
    fn negativity_ar_examples() {
        assert_eq!(scalar_negativity_ar(&p(0.0), &cfg()).unwrap(), 0.5);
        let mut prev = 0.5;
        for r in [0.5, 1.0, 2.0, 2.8] {
            let v = scalar_negativity_ar(&p(r), &cfg()).unwrap();
            assert!(v < prev);
            prev = v;
        }
        assert!(prev < 0.05, "{prev}");
    }

    #[test]
    fn negativity_ar_matches_series_form() {
        for r in [0.3f64, 0.8, 1.4] {
            let (t, c, sh) = (r.tanh(), r.cosh(), r.sinh());
            let mut sum = 0.0;
            for n in 0..600 {
                let a = n as f64 / (sh * sh) + t * t;
                sum += t.powi(2 * n) / (4.0 * c * c) * (a - (a * a + 4.0 / (c * c)).sqrt()).abs();
            }
            let v = scalar_negativity_ar(&p(r), &cfg()).unwrap();
            assert!((v - sum).abs() < 1e-10, "r={r}");
        }
    }

    #[test]
    fn negativity_ar_matches_brute_force() {
        let r = half();
        let rho = scalar_closed_rho(&r, &cfg(), Bipartition::AliceRob).unwrap();
        let pt = partial_transpose(&rho, Subsystem::Rob).unwrap();
        let brute = negativity_of_spectrum(&pt.eigenvalues().unwrap());
        assert!((scalar_negativity_ar(&r, &cfg()).unwrap() - brute).abs() < 1e-9);
    }

    #[test]
    fn arbar_is_ppt() {
        for r in [0.0, 1.0, 2.0] {
            assert_eq!(scalar_negativity_arbar(&p(r), &cfg()).unwrap(), 0.0);
            let chk = scalar_ppt_check_arbar(&p(r), &cfg()).unwrap();
            assert!(chk.min_eigenvalue >= -1e-12);
            assert!(chk.min_determinant >= 0.0);
        }
        let r = p(2.0);
        let rho = scalar_closed_rho(&r, &cfg(), Bipartition::AliceAntiRob).unwrap();
        let pt = partial_transpose(&rho, Subsystem::AntiRob).unwrap();
        assert!(*pt.eigenvalues().unwrap().last().unwrap() >= -1e-12);
    }

    #[test]
    fn arbar_blocks_match_numerical_pt() {
        let r = p(0.8);
        let k = cfg().resolve_n_max(&r).unwrap();
        let rho = scalar_closed_rho(&r, &cfg(), Bipartition::AliceAntiRob).unwrap();
        let pt = partial_transpose(&rho, Subsystem::AntiRob).unwrap();
        for (n, &(a, b, d)) in scalar_arbar_pt_blocks(&r, k).iter().enumerate() {
            let x = [fock(0), fock(n)];
            let y = [fock(1), fock(n + 1)];
            assert!((pt.element(&x, &x) - a).abs() < 1e-15);
            assert!((pt.element(&x, &y) - b).abs() < 1e-15);
            if n + 1 < k {
                assert!((pt.element(&y, &y) - d).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn rrbar_small_blocks() {
        let m = rrbar_block(&half(), 1);
        assert!((m[(0, 0)] - 0.375).abs() < 1e-15);
        let m = rrbar_block(&half(), 2);
        assert!((m[(0, 1)] - 3.0 / 16.0).abs() < 1e-15);
        assert!((m[(1, 1)] - 9.0 / 32.0).abs() < 1e-15);
        assert_eq!(m[(0, 0)], 0.0);
        let e = sym_eigenvalues(&m).unwrap();
        assert!((e[0] - 0.375).abs() < 1e-14);
        assert!((e[1] + 3.0 / 32.0).abs() < 1e-14);
        for dim in 3..8 {
            assert_eq!(rrbar_block(&p(0.0), dim).amax(), 0.0);
        }
    }

    #[test]
    fn rrbar_blocks_match_state() {
        let r = half();
        let psi = scalar_tripartite_state(&r, &cfg()).unwrap();
        for dim in 1..=20 {
            let a = sym_eigenvalues(&rrbar_block(&r, dim)).unwrap();
            let b = sym_eigenvalues(&rrbar_block_from_state(&psi, dim).unwrap()).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-10, "D={dim}");
            }
        }
    }

    #[test]
    fn rrbar_negativity_examples() {
        assert_eq!(scalar_negativity_rrbar(&p(0.0), &cfg()).unwrap(), 0.0);
        let contrib = scalar_rrbar_block_contributions(&half(), &cfg()).unwrap();
        assert!((contrib[1] - 3.0 / 32.0).abs() < 1e-14);
        let total: f64 = contrib.iter().sum();
        assert!(total > 3.0 / 32.0);
        let tail = &contrib[contrib.len() - 3..];
        assert!(tail.iter().all(|v| *v < 1e-14));
    }

    #[test]
    fn rrbar_negativity_reference_values() {
        // frozen from an independent dense-block evaluation
        for (r, want) in [(0.5, 0.73592), (1.0, 2.91010), (1.5, 8.86346)] {
            let v = scalar_negativity_rrbar(&p(r), &cfg()).unwrap();
            assert!((v - want).abs() < 1e-5, "r={r}: {v}");
        }
    }

    #[test]
    fn rrbar_negativity_reports_missing_convergence() {
        let tight = TruncationConfig { d_max: 10, ..cfg() };
        assert!(matches!(
            scalar_negativity_rrbar(&p(1.0), &tight),
            Err(Error::BlockSumNoConvergence { d_max: 10, .. })
        ));
    }

    #[test]
    fn report_inertial_limit() {
        let rep = scalar_report(&p(0.0), &cfg()).unwrap();
        assert!((rep.i_ar - 2.0).abs() < 1e-12);
        assert!(rep.i_arbar.abs() < 1e-12);
        assert_eq!(rep.n_ar, 0.5);
        assert_eq!(rep.n_rrbar, 0.0);
        assert!(rep.oracle_discrepancy <= 1e-9);
    }

    #[test]
    fn report_oracle_agrees() {
        for r in [0.25, 1.0] {
            let rep = scalar_report(&p(r), &cfg()).unwrap();
            assert!(rep.oracle_discrepancy <= 1e-9);
            assert!((rep.i_ar + rep.i_arbar - 2.0).abs() < 1e-8);
            assert!(rep.trace_deficit <= 1e-12);
        }
    }

    #[test]
    fn doubling_cutoff_is_harmless() {
        for r in [0.5, 1.5] {
            let base = cfg();
            let k = base.resolve_n_max(&p(r)).unwrap();
            let wide = TruncationConfig { n_max: 2 * k, ..base };
            let a = scalar_closed_measures(&p(r), &base).unwrap();
            let b = scalar_closed_measures(&p(r), &wide).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-8);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn arbar_blocks_have_nonnegative_determinant(r in 0.0f64..4.0) {
            for (a, b, d) in scalar_arbar_pt_blocks(&p(r), 60) {
                prop_assert!(a * d - b * b >= 0.0);
            }
        }

        #[test]
        fn spectra_are_distributions(r in 0.0f64..1.5) {
            let k = cfg().resolve_n_max(&p(r)).unwrap();
            for spec in [scalar_rob_spectrum(&p(r), k), scalar_antirob_spectrum(&p(r), k)] {
                let total: f64 = spec.iter().sum();
                prop_assert!(spec.iter().all(|v| *v >= 0.0));
                prop_assert!((total - 1.0).abs() <= 1e-12);
            }
        }

        #[test]
        fn conservation_of_mutual_information(r in 0.0f64..1.5) {
            let e = scalar_entropies(&p(r), &cfg()).unwrap();
            let sum = e.mutual_information(Bipartition::AliceRob)
                + e.mutual_information(Bipartition::AliceAntiRob);
            prop_assert!((sum - 2.0).abs() < 1e-8);
        }

        #[test]
        fn rrbar_block_eigen_paths_agree(r in 0.05f64..1.5, dim in 1usize..30) {
            let (diag, off) = rrbar_block_tridiagonal(&p(r), dim);
            let ql = tridiagonal_eigenvalues(&diag, &off).unwrap();
            let jac = sym_eigenvalues(&rrbar_block(&p(r), dim)).unwrap();
            for (x, y) in ql.iter().zip(&jac) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }
}
