use crate::algebra::Subsystem;

/// The three two-party cuts of the Alice/Rob/AntiRob system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bipartition {
    AliceRob,
    AliceAntiRob,
    RobAntiRob,
}

impl Bipartition {
    pub const ALL: [Bipartition; 3] = [
        Bipartition::AliceRob,
        Bipartition::AliceAntiRob,
        Bipartition::RobAntiRob,
    ];

    pub fn kept(self) -> [Subsystem; 2] {
        match self {
            Bipartition::AliceRob => [Subsystem::Alice, Subsystem::Rob],
            Bipartition::AliceAntiRob => [Subsystem::Alice, Subsystem::AntiRob],
            Bipartition::RobAntiRob => [Subsystem::Rob, Subsystem::AntiRob],
        }
    }

    pub fn traced(self) -> Subsystem {
        match self {
            Bipartition::AliceRob => Subsystem::AntiRob,
            Bipartition::AliceAntiRob => Subsystem::Rob,
            Bipartition::RobAntiRob => Subsystem::Alice,
        }
    }

    /// The subsystem whose indices the partial transpose swaps (the second one).
    pub fn transposed(self) -> Subsystem {
        self.kept()[1]
    }
}

/// Mutual informations and negativities of the three bipartitions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MeasureSet {
    pub i_ar: f64,
    pub i_arbar: f64,
    pub i_rrbar: f64,
    pub n_ar: f64,
    pub n_arbar: f64,
    pub n_rrbar: f64,
}

impl MeasureSet {
    pub fn as_array(&self) -> [f64; 6] {
        [
            self.i_ar,
            self.i_arbar,
            self.i_rrbar,
            self.n_ar,
            self.n_arbar,
            self.n_rrbar,
        ]
    }

    pub fn max_abs_diff(&self, other: &MeasureSet) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Per-point record of every correlation measure.
///
/// `oracle_discrepancy` is the largest difference between the closed-form
/// and the constructive evaluation, or NaN when the oracle was skipped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub r: f64,
    pub i_ar: f64,
    pub i_arbar: f64,
    pub i_rrbar: f64,
    pub n_ar: f64,
    pub n_arbar: f64,
    pub n_rrbar: f64,
    pub log_n_rrbar: f64,
    pub trace_deficit: f64,
    pub oracle_discrepancy: f64,
}

impl CorrelationReport {
    pub fn from_measures(r: f64, m: &MeasureSet, trace_deficit: f64, oracle_discrepancy: f64) -> Self {
        Self {
            r,
            i_ar: m.i_ar,
            i_arbar: m.i_arbar,
            i_rrbar: m.i_rrbar,
            n_ar: m.n_ar,
            n_arbar: m.n_arbar,
            n_rrbar: m.n_rrbar,
            log_n_rrbar: crate::algebra::log_negativity_from(m.n_rrbar),
            trace_deficit,
            oracle_discrepancy,
        }
    }

    pub fn measures(&self) -> MeasureSet {
        MeasureSet {
            i_ar: self.i_ar,
            i_arbar: self.i_arbar,
            i_rrbar: self.i_rrbar,
            n_ar: self.n_ar,
            n_arbar: self.n_arbar,
            n_rrbar: self.n_rrbar,
        }
    }
}

/// Von Neumann entropies (bits) of every party and pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropySet {
    pub s_a: f64,
    pub s_r: f64,
    pub s_rbar: f64,
    pub s_ar: f64,
    pub s_arbar: f64,
    pub s_rrbar: f64,
}

impl EntropySet {
    pub fn mutual_information(&self, bip: Bipartition) -> f64 {
        match bip {
            Bipartition::AliceRob => self.s_a + self.s_r - self.s_ar,
            Bipartition::AliceAntiRob => self.s_a + self.s_rbar - self.s_arbar,
            Bipartition::RobAntiRob => self.s_r + self.s_rbar - self.s_rrbar,
        }
    }
}
