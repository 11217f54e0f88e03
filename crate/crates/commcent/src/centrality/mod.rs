//! Node centrality measures: five classical, five community-aware.

mod classical;
mod community_aware;

pub use classical::{
    betweenness_centrality, closeness_centrality, degree_centrality, katz_centrality,
    pagerank_centrality, spectral_radius,
};
pub use community_aware::{
    bridging_centrality, community_based_mediator, community_hub_bridge, nnc,
    participation_coefficient, CbmDensityMode, CommunityCentralityInputs,
};

use crate::Result;

/// Identifies one of the ten measures. Order within each group is the
/// row/column order of every exported matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Degree,
    Betweenness,
    Closeness,
    Katz,
    PageRank,
    Bridging,
    CommunityHubBridge,
    Participation,
    CommunityMediator,
    NeighboringCommunities,
}

impl Measure {
    pub const CLASSICAL: [Measure; 5] = [
        Measure::Degree,
        Measure::Betweenness,
        Measure::Closeness,
        Measure::Katz,
        Measure::PageRank,
    ];

    pub const COMMUNITY_AWARE: [Measure; 5] = [
        Measure::Bridging,
        Measure::CommunityHubBridge,
        Measure::Participation,
        Measure::CommunityMediator,
        Measure::NeighboringCommunities,
    ];

    pub const ALL: [Measure; 10] = [
        Measure::Degree,
        Measure::Betweenness,
        Measure::Closeness,
        Measure::Katz,
        Measure::PageRank,
        Measure::Bridging,
        Measure::CommunityHubBridge,
        Measure::Participation,
        Measure::CommunityMediator,
        Measure::NeighboringCommunities,
    ];

    /// Stable identifier used in CLI arguments, CSV, and JSON.
    pub fn id(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Betweenness => "betweenness",
            Measure::Closeness => "closeness",
            Measure::Katz => "katz",
            Measure::PageRank => "pagerank",
            Measure::Bridging => "bridging",
            Measure::CommunityHubBridge => "chb",
            Measure::Participation => "pc",
            Measure::CommunityMediator => "cbm",
            Measure::NeighboringCommunities => "nnc",
        }
    }

    /// Axis label used on heatmaps.
    pub fn axis_label(self) -> &'static str {
        match self {
            Measure::Degree => "α_d",
            Measure::Betweenness => "α_b",
            Measure::Closeness => "α_c",
            Measure::Katz => "α_k",
            Measure::PageRank => "α_p",
            Measure::Bridging => "β_BC",
            Measure::CommunityHubBridge => "β_CHB",
            Measure::Participation => "β_PC",
            Measure::CommunityMediator => "β_CBM",
            Measure::NeighboringCommunities => "β_NNC",
        }
    }

    pub fn is_community_aware(self) -> bool {
        !Measure::CLASSICAL.contains(&self)
    }

    pub fn parse(s: &str) -> Option<Measure> {
        Measure::ALL.iter().copied().find(|m| m.id() == s)
    }
}

/// One finite score per node, tagged with the measure and the parameters
/// that produced it.
#[derive(Debug, Clone)]
pub struct ScoreVector {
    pub measure: Measure,
    pub values: Vec<f64>,
    /// `(key, value)` pairs recording parameters, sorted by insertion.
    pub metadata: Vec<(String, String)>,
}

impl ScoreVector {
    pub fn new(measure: Measure, values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite()));
        ScoreVector { measure, values, metadata: Vec::new() }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// CSV rendering: metadata as `#` comment lines, then
    /// `node_label,value` rows with round-trip-safe decimals.
    pub fn to_csv(&self, labels: &[String]) -> String {
        assert_eq!(labels.len(), self.values.len());
        let mut out = String::new();
        out.push_str(&format!("# measure={}\n", self.measure.id()));
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str("node_label,value\n");
        for (label, value) in labels.iter().zip(&self.values) {
            out.push_str(label);
            out.push(',');
            out.push_str(&format!("{value:?}"));
            out.push('\n');
        }
        out
    }
}

/// Iteration parameters shared by the spectral measures.
#[derive(Debug, Clone, Copy)]
pub struct CentralityParams {
    /// Katz attenuation; `None` picks `0.9 / λ_max`.
    pub katz_attenuation: Option<f64>,
    pub pagerank_damping: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for CentralityParams {
    fn default() -> Self {
        CentralityParams {
            katz_attenuation: None,
            pagerank_damping: 0.85,
            tolerance: 1e-10,
            max_iterations: 10_000,
        }
    }
}

impl CentralityParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.pagerank_damping) {
            return Err(crate::Error::Parameter(format!(
                "pagerank damping {} outside [0, 1]",
                self.pagerank_damping
            )));
        }
        if let Some(s) = self.katz_attenuation {
            if !s.is_finite() || s < 0.0 {
                return Err(crate::Error::Parameter(format!(
                    "katz attenuation {s} must be finite and non-negative"
                )));
            }
        }
        if !(self.tolerance > 0.0) {
            return Err(crate::Error::Parameter("tolerance must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(crate::Error::Parameter("max iterations must be positive".into()));
        }
        Ok(())
    }
}
