//! The five community-aware measures, computed from a graph, a partition's
//! link decomposition, and (for bridging) a betweenness vector.

use super::{Measure, ScoreVector};
use crate::community::{link_decomposition, LinkDecomposition, Partition};
use crate::graph::{Graph, NodeId};
use crate::{Error, Result};

/// Everything the community-aware measures consume, assembled once per
/// `(graph, partition)` pair.
pub struct CommunityCentralityInputs<'a> {
    pub graph: &'a Graph,
    pub partition: &'a Partition,
    pub decomposition: LinkDecomposition,
    pub betweenness: ScoreVector,
}

impl<'a> CommunityCentralityInputs<'a> {
    pub fn new(graph: &'a Graph, partition: &'a Partition, betweenness: ScoreVector) -> Result<Self> {
        if partition.node_count() != graph.node_count() {
            return Err(Error::Precondition(format!(
                "partition covers {} nodes, graph has {}",
                partition.node_count(),
                graph.node_count()
            )));
        }
        if betweenness.measure != Measure::Betweenness || betweenness.len() != graph.node_count() {
            return Err(Error::Precondition(
                "bridging needs a betweenness vector over all nodes".into(),
            ));
        }
        Ok(CommunityCentralityInputs {
            graph,
            partition,
            decomposition: link_decomposition(graph, partition),
            betweenness,
        })
    }

    fn tag(&self, sv: ScoreVector) -> ScoreVector {
        sv.with_meta("partition_fingerprint", self.partition.fingerprint())
    }
}

/// Number of distinct external communities a node reaches in one hop.
pub fn nnc(inputs: &CommunityCentralityInputs) -> ScoreVector {
    let values = (0..inputs.graph.node_count() as NodeId)
        .map(|v| {
            let own = inputs.partition.community_of(v);
            inputs.decomposition.external_community_count(v, own) as f64
        })
        .collect();
    inputs.tag(ScoreVector::new(Measure::NeighboringCommunities, values))
}

/// Community size times intra degree, plus external-community count times
/// inter degree: hub strength weighted by community size, bridge strength
/// by distinct reachable communities.
pub fn community_hub_bridge(inputs: &CommunityCentralityInputs) -> ScoreVector {
    let d = &inputs.decomposition;
    let values = (0..inputs.graph.node_count() as NodeId)
        .map(|v| {
            let own = inputs.partition.community_of(v);
            let size = inputs.partition.size_of(own) as f64;
            let external = d.external_community_count(v, own) as f64;
            size * d.intra[v as usize] as f64 + external * d.inter[v as usize] as f64
        })
        .collect();
    inputs.tag(ScoreVector::new(Measure::CommunityHubBridge, values))
}

/// One minus the sum of squared per-community link fractions, own community
/// included. Zero when all links stay in one community.
pub fn participation_coefficient(inputs: &CommunityCentralityInputs) -> ScoreVector {
    let d = &inputs.decomposition;
    let values = (0..inputs.graph.node_count() as NodeId)
        .map(|v| {
            let k = d.total[v as usize] as f64;
            if k == 0.0 {
                return 0.0;
            }
            let squares: f64 = d.per_community[v as usize]
                .iter()
                .map(|&(_, kc)| {
                    let frac = kc as f64 / k;
                    frac * frac
                })
                .sum();
            1.0 - squares
        })
        .collect();
    inputs.tag(ScoreVector::new(Measure::Participation, values))
}

/// How the mediator entropy weights a node's links.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CbmDensityMode {
    /// Probabilities are per-community shares of the node's links.
    #[default]
    LinkFraction,
    /// Link shares reweighted by each target community's internal edge
    /// density before normalizing.
    CommunityDensity,
}

impl CbmDensityMode {
    pub fn id(self) -> &'static str {
        match self {
            CbmDensityMode::LinkFraction => "link_fraction",
            CbmDensityMode::CommunityDensity => "community_density",
        }
    }
}

/// Entropy of a node's link distribution over communities, scaled by its
/// share of total degree. Entropy in bits; `0·log 0 = 0`.
pub fn community_based_mediator(
    inputs: &CommunityCentralityInputs,
    mode: CbmDensityMode,
) -> ScoreVector {
    let g = inputs.graph;
    let d = &inputs.decomposition;
    let degree_sum = (2 * g.edge_count()) as f64;
    let density = match mode {
        CbmDensityMode::LinkFraction => None,
        CbmDensityMode::CommunityDensity => Some(community_densities(g, inputs.partition)),
    };
    let values = (0..g.node_count() as NodeId)
        .map(|v| {
            let k = d.total[v as usize] as f64;
            if k == 0.0 || degree_sum == 0.0 {
                return 0.0;
            }
            let row = &d.per_community[v as usize];
            let entropy = match &density {
                None => entropy_bits(row.iter().map(|&(_, kc)| kc as f64 / k)),
                Some(dens) => {
                    let weights: Vec<f64> = row
                        .iter()
                        .map(|&(c, kc)| kc as f64 * dens[c as usize])
                        .collect();
                    let total: f64 = weights.iter().sum();
                    if total <= 0.0 {
                        0.0
                    } else {
                        entropy_bits(weights.iter().map(|w| w / total))
                    }
                }
            };
            entropy * k / degree_sum
        })
        .collect();
    inputs
        .tag(ScoreVector::new(Measure::CommunityMediator, values))
        .with_meta("rho_mode", mode.id())
}

fn entropy_bits(probs: impl Iterator<Item = f64>) -> f64 {
    probs
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

fn community_densities(g: &Graph, p: &Partition) -> Vec<f64> {
    let k = p.community_count();
    let mut intra = vec![0u64; k];
    for (u, v) in g.edges() {
        if p.community_of(u) == p.community_of(v) {
            intra[p.community_of(u) as usize] += 1;
        }
    }
    (0..k)
        .map(|c| {
            let size = p.size_of(c as u32) as u64;
            if size < 2 {
                0.0
            } else {
                2.0 * intra[c] as f64 / (size * (size - 1)) as f64
            }
        })
        .collect()
}

/// Betweenness times the bridging coefficient
/// `B(i) = (1/k_i) / Σ_{j∈N(i)} 1/k_j`.
pub fn bridging_centrality(inputs: &CommunityCentralityInputs) -> ScoreVector {
    let g = inputs.graph;
    let values = (0..g.node_count() as NodeId)
        .map(|v| {
            let k = g.degree(v);
            if k == 0 {
                return 0.0;
            }
            let inv_sum: f64 = g
                .neighbors(v)
                .iter()
                .map(|&u| 1.0 / g.degree(u) as f64)
                .sum();
            let coefficient = (1.0 / k as f64) / inv_sum;
            inputs.betweenness.values[v as usize] * coefficient
        })
        .collect();
    inputs.tag(ScoreVector::new(Measure::Bridging, values))
}
