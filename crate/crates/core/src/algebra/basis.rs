use std::fmt;

use crate::error::{Error, Result};

/// The three parties of the horizon problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subsystem {
    Alice,
    Rob,
    AntiRob,
}

/// Occupation pattern of a single Dirac mode (both spin components).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiracPattern {
    Vac,
    Up,
    Down,
    Pair,
}

impl DiracPattern {
    pub const ALL: [DiracPattern; 4] = [
        DiracPattern::Vac,
        DiracPattern::Up,
        DiracPattern::Down,
        DiracPattern::Pair,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for DiracPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DiracPattern::Vac => "0",
            DiracPattern::Up => "up",
            DiracPattern::Down => "down",
            DiracPattern::Pair => "pair",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    Fock(usize),
    Dirac(DiracPattern),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Fock(n) => write!(f, "{n}"),
            BasisLabel::Dirac(p) => write!(f, "{p}"),
        }
    }
}

/// Ordered basis of one subsystem. Labels are strictly increasing, which
/// fixes the canonical ordering (ascending `n`; vac, up, down, pair).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledBasis {
    subsystem: Subsystem,
    labels: Vec<BasisLabel>,
}

impl LabeledBasis {
    pub fn new(subsystem: Subsystem, labels: Vec<BasisLabel>) -> Result<Self> {
        if labels.is_empty() || labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NonCanonicalBasis(subsystem));
        }
        Ok(Self { subsystem, labels })
    }

    /// Fock states `0..=n_max`.
    pub fn fock(subsystem: Subsystem, n_max: usize) -> Self {
        Self {
            subsystem,
            labels: (0..=n_max).map(BasisLabel::Fock).collect(),
        }
    }

    /// The four Dirac patterns of one mode.
    pub fn dirac(subsystem: Subsystem) -> Self {
        Self {
            subsystem,
            labels: DiracPattern::ALL.iter().map(|&p| BasisLabel::Dirac(p)).collect(),
        }
    }

    pub fn subsystem(&self) -> Subsystem {
        self.subsystem
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: BasisLabel) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }
}

/// Ordered tensor product of subsystem bases (row-major: last factor fastest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductBasis {
    factors: Vec<LabeledBasis>,
}

impl ProductBasis {
    pub fn new(factors: Vec<LabeledBasis>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidTraceSelection);
        }
        for (i, f) in factors.iter().enumerate() {
            if factors[..i].iter().any(|g| g.subsystem == f.subsystem) {
                return Err(Error::DuplicateSubsystem(f.subsystem));
            }
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[LabeledBasis] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(LabeledBasis::dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(LabeledBasis::dim).product()
    }

    pub fn subsystems(&self) -> Vec<Subsystem> {
        self.factors.iter().map(|f| f.subsystem).collect()
    }

    pub fn position(&self, s: Subsystem) -> Option<usize> {
        self.factors.iter().position(|f| f.subsystem == s)
    }

    pub fn factor(&self, s: Subsystem) -> Option<&LabeledBasis> {
        self.factors.iter().find(|f| f.subsystem == s)
    }

    pub fn split_index(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = flat % f.dim();
            flat /= f.dim();
        }
        out
    }

    pub fn join_index(&self, parts: &[usize]) -> usize {
        parts
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&i, f)| acc * f.dim() + i)
    }

    /// Flat index of a product label, if every component exists.
    pub fn index_of(&self, labels: &[BasisLabel]) -> Option<usize> {
        if labels.len() != self.factors.len() {
            return None;
        }
        let parts: Option<Vec<usize>> = labels
            .iter()
            .zip(&self.factors)
            .map(|(&l, f)| f.index_of(l))
            .collect();
        parts.map(|p| self.join_index(&p))
    }

    pub fn label_at(&self, flat: usize) -> Vec<BasisLabel> {
        self.split_index(flat)
            .iter()
            .zip(&self.factors)
            .map(|(&i, f)| f.labels[i])
            .collect()
    }

    /// Sub-basis over `keep`, in this basis' factor order.
    pub fn restrict(&self, keep: &[Subsystem]) -> Result<ProductBasis> {
        for &s in keep {
            if self.position(s).is_none() {
                return Err(Error::UnknownSubsystem(s));
            }
        }
        let factors: Vec<LabeledBasis> = self
            .factors
            .iter()
            .filter(|f| keep.contains(&f.subsystem))
            .cloned()
            .collect();
        ProductBasis::new(factors)
    }

    /// For each flat index, its (kept, traced) flat indices.
    pub(crate) fn bipartition_map(&self, keep: &[Subsystem]) -> Vec<(usize, usize)> {
        let keep_mask: Vec<bool> = self
            .factors
            .iter()
            .map(|f| keep.contains(&f.subsystem))
            .collect();
        (0..self.dim())
            .map(|flat| {
                let parts = self.split_index(flat);
                let (mut k, mut t) = (0, 0);
                for ((&i, f), &kept) in parts.iter().zip(&self.factors).zip(&keep_mask) {
                    if kept {
                        k = k * f.dim() + i;
                    } else {
                        t = t * f.dim() + i;
                    }
                }
                (k, t)
            })
            .collect()
    }
}
