//! Whole-graph topological statistics: size, density, transitivity, degree
//! assortativity, and shortest-path summaries.
//!
//! Path statistics assume a connected graph (run on the largest component);
//! distance sums use integer accumulators so results do not depend on
//! traversal or thread order.

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{Graph, NodeId};
use crate::{mix_seed, Error, Result};

/// Summary statistics for one graph.
#[derive(Debug, Clone, Serialize)]
pub struct TopoStats {
    pub nodes: usize,
    pub edges: usize,
    pub average_degree: f64,
    pub density: f64,
    pub transitivity: f64,
    /// Degree assortativity; `None` when every node has the same degree.
    pub assortativity: Option<f64>,
    pub average_distance: f64,
    pub diameter: u32,
    /// Number of BFS sources the distance figures were computed from;
    /// equals `nodes` for exact results.
    pub distance_sources: usize,
    /// True when `average_distance` and `diameter` come from a sampled
    /// subset of sources rather than all of them.
    pub distances_approximate: bool,
}

/// How to compute shortest-path statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMode {
    /// BFS from every node.
    Exact,
    /// BFS from `sources` nodes sampled without replacement with the given
    /// seed. Results are flagged approximate.
    Sampled { sources: usize, seed: u64 },
}

/// Count of triangles (each counted once) and connected triples.
pub fn triangle_census(g: &Graph) -> (u64, u64) {
    // For each edge (u,v) with u < v, intersect the sorted neighbor lists.
    // Each triangle {a,b,c} is found once per edge, so three times total.
    let triangle_ends: u64 = (0..g.node_count() as NodeId)
        .into_par_iter()
        .map(|u| {
            let mut found = 0u64;
            for &v in g.neighbors(u) {
                if v <= u {
                    continue;
                }
                found += sorted_intersection_size(g.neighbors(u), g.neighbors(v));
            }
            found
        })
        .sum();
    let triples: u64 = (0..g.node_count() as NodeId)
        .map(|v| {
            let k = g.degree(v) as u64;
            k * (k.saturating_sub(1)) / 2
        })
        .sum();
    (triangle_ends / 3, triples)
}

fn sorted_intersection_size(a: &[NodeId], b: &[NodeId]) -> u64 {
    let (mut i, mut j, mut count) = (0, 0, 0u64);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Global transitivity: `3 * triangles / connected triples`, zero for
/// graphs with no triples.
pub fn transitivity(g: &Graph) -> f64 {
    let (triangles, triples) = triangle_census(g);
    if triples == 0 {
        0.0
    } else {
        3.0 * triangles as f64 / triples as f64
    }
}

/// Degree assortativity: Pearson correlation of endpoint degrees over all
/// edges, each edge contributing both orientations.
///
/// Returns `None` when the correlation is undefined, i.e. when all endpoint
/// degrees on either side are identical (regular graphs, stars' leaf side).
pub fn degree_assortativity(g: &Graph) -> Option<f64> {
    let m = g.edge_count();
    if m == 0 {
        return None;
    }
    // Both orientations make the two marginals identical, so the integer
    // moments S1, S2, S3 over directed endpoints suffice.
    let mut s_xy = 0u128;
    let mut s_x = 0u128;
    let mut s_x2 = 0u128;
    for (u, v) in g.edges() {
        let ku = g.degree(u) as u128;
        let kv = g.degree(v) as u128;
        s_xy += 2 * ku * kv;
        s_x += ku + kv;
        s_x2 += ku * ku + kv * kv;
    }
    let n = (2 * m) as f64;
    let mean = s_x as f64 / n;
    let var = s_x2 as f64 / n - mean * mean;
    if var <= f64::EPSILON * mean.max(1.0) * mean.max(1.0) {
        return None;
    }
    let cov = s_xy as f64 / n - mean * mean;
    Some(cov / var)
}

struct DistanceSummary {
    pair_sum: u128,
    eccentricity_max: u32,
    sources: usize,
}

fn distance_scan(g: &Graph, sources: &[NodeId]) -> Result<DistanceSummary> {
    let per_source: Vec<(u128, u32)> = sources
        .par_iter()
        .map(|&s| {
            let dist = g.bfs_distances(s);
            let mut sum = 0u128;
            let mut ecc = 0u32;
            for (v, &d) in dist.iter().enumerate() {
                if d < 0 {
                    return Err(Error::Precondition(format!(
                        "graph is disconnected: node {v} unreachable from node {s}"
                    )));
                }
                sum += d as u128;
                ecc = ecc.max(d as u32);
            }
            Ok((sum, ecc))
        })
        .collect::<Result<_>>()?;
    let mut pair_sum = 0u128;
    let mut eccentricity_max = 0u32;
    for (sum, ecc) in per_source {
        pair_sum += sum;
        eccentricity_max = eccentricity_max.max(ecc);
    }
    Ok(DistanceSummary {
        pair_sum,
        eccentricity_max,
        sources: sources.len(),
    })
}

/// Compute all topological statistics for a connected graph.
pub fn topo_stats(g: &Graph, mode: DistanceMode) -> Result<TopoStats> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::Precondition("empty graph".into()));
    }
    let m = g.edge_count();
    let average_degree = 2.0 * m as f64 / n as f64;
    let density = if n > 1 {
        2.0 * m as f64 / (n as f64 * (n - 1) as f64)
    } else {
        0.0
    };

    let (summary, approximate) = match mode {
        DistanceMode::Exact => {
            let sources: Vec<NodeId> = (0..n as NodeId).collect();
            (distance_scan(g, &sources)?, false)
        }
        DistanceMode::Sampled { sources, seed } => {
            if sources == 0 {
                return Err(Error::Parameter("distance sample size must be positive".into()));
            }
            if sources >= n {
                let all: Vec<NodeId> = (0..n as NodeId).collect();
                (distance_scan(g, &all)?, false)
            } else {
                let picked = sample_without_replacement(n, sources, seed);
                (distance_scan(g, &picked)?, true)
            }
        }
    };

    // Every unordered pair is seen twice in a full scan; a sampled scan
    // averages over source rows instead.
    let average_distance = if n > 1 {
        if approximate {
            summary.pair_sum as f64 / (summary.sources as f64 * (n - 1) as f64)
        } else {
            summary.pair_sum as f64 / (n as f64 * (n - 1) as f64)
        }
    } else {
        0.0
    };

    Ok(TopoStats {
        nodes: n,
        edges: m,
        average_degree,
        density,
        transitivity: transitivity(g),
        assortativity: degree_assortativity(g),
        average_distance,
        diameter: summary.eccentricity_max,
        distance_sources: summary.sources,
        distances_approximate: approximate,
    })
}

fn sample_without_replacement(n: usize, k: usize, seed: u64) -> Vec<NodeId> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(mix_seed(seed, 0x5a31));
    let mut ids: Vec<NodeId> = (0..n as NodeId).collect();
    ids.shuffle(&mut rng);
    ids.truncate(k);
    ids.sort_unstable();
    ids
}
