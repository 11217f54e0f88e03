//! Degree, betweenness, closeness, Katz, and PageRank.
//!
//! Betweenness sums shortest-path dependencies over unordered pairs with
//! endpoints excluded and no normalization. Sources are processed in 64
//! fixed contiguous slices whose partial sums are reduced in slice order,
//! so results are bit-identical regardless of thread scheduling.

use rayon::prelude::*;

use super::{CentralityParams, Measure, ScoreVector};
use crate::graph::{Graph, NodeId};
use crate::{Error, Result};

pub fn degree_centrality(g: &Graph) -> ScoreVector {
    let values = (0..g.node_count() as NodeId).map(|v| g.degree(v) as f64).collect();
    ScoreVector::new(Measure::Degree, values)
}

const BETWEENNESS_SLICES: usize = 64;

pub fn betweenness_centrality(g: &Graph) -> ScoreVector {
    let n = g.node_count();
    if n == 0 {
        return ScoreVector::new(Measure::Betweenness, Vec::new());
    }
    let slice_len = n.div_ceil(BETWEENNESS_SLICES);
    let partials: Vec<Vec<f64>> = (0..n)
        .step_by(slice_len.max(1))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|start| {
            let end = (start + slice_len).min(n);
            let mut acc = vec![0.0f64; n];
            let mut state = BrandesState::new(n);
            for s in start..end {
                state.accumulate(g, s as NodeId, &mut acc);
            }
            acc
        })
        .collect();
    let mut values = vec![0.0f64; n];
    for partial in partials {
        for (v, p) in values.iter_mut().zip(partial) {
            *v += p;
        }
    }
    // every unordered pair was counted from both endpoints
    for v in &mut values {
        *v /= 2.0;
    }
    ScoreVector::new(Measure::Betweenness, values)
}

struct BrandesState {
    dist: Vec<i32>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    order: Vec<NodeId>,
}

impl BrandesState {
    fn new(n: usize) -> Self {
        BrandesState {
            dist: vec![-1; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }

    /// One Brandes source: BFS counting shortest paths, then dependency
    /// accumulation in reverse visit order.
    fn accumulate(&mut self, g: &Graph, s: NodeId, acc: &mut [f64]) {
        let (dist, sigma, delta, order) =
            (&mut self.dist, &mut self.sigma, &mut self.delta, &mut self.order);
        for v in order.drain(..) {
            dist[v as usize] = -1;
            sigma[v as usize] = 0.0;
            delta[v as usize] = 0.0;
        }
        dist[s as usize] = 0;
        sigma[s as usize] = 1.0;
        order.push(s);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            let du = dist[u as usize];
            for &v in g.neighbors(u) {
                if dist[v as usize] < 0 {
                    dist[v as usize] = du + 1;
                    order.push(v);
                }
                if dist[v as usize] == du + 1 {
                    sigma[v as usize] += sigma[u as usize];
                }
            }
        }
        for &w in order.iter().rev() {
            let dw = dist[w as usize];
            let coeff = (1.0 + delta[w as usize]) / sigma[w as usize];
            for &v in g.neighbors(w) {
                if dist[v as usize] == dw - 1 {
                    delta[v as usize] += sigma[v as usize] * coeff;
                }
            }
            if w != s {
                acc[w as usize] += delta[w as usize];
            }
        }
    }
}

pub fn closeness_centrality(g: &Graph) -> Result<ScoreVector> {
    let n = g.node_count();
    if n == 1 {
        return Ok(ScoreVector::new(Measure::Closeness, vec![0.0]));
    }
    let values: Vec<f64> = (0..n as NodeId)
        .into_par_iter()
        .map(|v| {
            let mut sum = 0u64;
            for (u, &d) in g.bfs_distances(v).iter().enumerate() {
                if d < 0 {
                    return Err(Error::Precondition(format!(
                        "closeness needs a connected graph: node {u} unreachable from {v}"
                    )));
                }
                sum += d as u64;
            }
            Ok((n as f64 - 1.0) / sum as f64)
        })
        .collect::<Result<_>>()?;
    Ok(ScoreVector::new(Measure::Closeness, values))
}

/// Largest adjacency eigenvalue by power iteration on `A + I` (the shift
/// makes the dominant eigenvalue strictly dominant on bipartite graphs).
pub fn spectral_radius(g: &Graph, tolerance: f64, max_iterations: usize) -> Result<f64> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::Precondition("empty graph".into()));
    }
    if g.edge_count() == 0 {
        return Ok(0.0);
    }
    let mut x = vec![1.0f64; n];
    let mut lambda = 0.0f64;
    for _ in 0..max_iterations {
        let y: Vec<f64> = (0..n as NodeId)
            .into_par_iter()
            .map(|v| {
                let mut sum = x[v as usize];
                for &u in g.neighbors(v) {
                    sum += x[u as usize];
                }
                sum
            })
            .collect();
        let norm = y.iter().fold(0.0f64, |a, &b| a.max(b));
        let next = norm - 1.0;
        let done = (next - lambda).abs() <= tolerance * next.max(1.0);
        lambda = next;
        x = y;
        let inv = 1.0 / norm;
        for v in &mut x {
            *v *= inv;
        }
        if done {
            return Ok(lambda);
        }
    }
    Err(Error::Numeric(format!(
        "spectral radius estimate did not converge within {max_iterations} iterations"
    )))
}

/// Katz centrality: the attenuated path series, evaluated as the fixed
/// point of `x ← s (A x + A 1)`.
pub fn katz_centrality(g: &Graph, params: &CentralityParams) -> Result<ScoreVector> {
    params.validate()?;
    let n = g.node_count();
    let lambda = spectral_radius(g, 1e-8, params.max_iterations)?;
    let s = match params.katz_attenuation {
        Some(s) => s,
        None if lambda > 0.0 => 0.9 / lambda,
        None => 0.0,
    };
    if lambda > 0.0 && s >= 1.0 / lambda {
        return Err(Error::Numeric(format!(
            "katz series diverges: attenuation {s} is not below 1/λ_max = {}",
            1.0 / lambda
        )));
    }
    let meta = |sv: ScoreVector| {
        sv.with_meta("attenuation", format!("{s:?}"))
            .with_meta("lambda_max", format!("{lambda:?}"))
    };
    if s == 0.0 {
        return Ok(meta(ScoreVector::new(Measure::Katz, vec![0.0; n])));
    }
    let mut x = vec![0.0f64; n];
    for _ in 0..params.max_iterations {
        let next: Vec<f64> = (0..n as NodeId)
            .into_par_iter()
            .map(|v| {
                let mut sum = 0.0;
                for &u in g.neighbors(v) {
                    sum += x[u as usize] + 1.0;
                }
                s * sum
            })
            .collect();
        let diff = next
            .iter()
            .zip(&x)
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
        x = next;
        if diff <= params.tolerance {
            return Ok(meta(ScoreVector::new(Measure::Katz, x)));
        }
    }
    Err(Error::Numeric(format!(
        "katz iteration did not converge within {} iterations",
        params.max_iterations
    )))
}

/// PageRank with uniform teleport, `k_j` the full degree. Values sum to 1.
pub fn pagerank_centrality(g: &Graph, params: &CentralityParams) -> Result<ScoreVector> {
    params.validate()?;
    let n = g.node_count();
    if n == 0 {
        return Ok(ScoreVector::new(Measure::PageRank, Vec::new()));
    }
    let d = params.pagerank_damping;
    let base = (1.0 - d) / n as f64;
    let mut x = vec![1.0 / n as f64; n];
    for _ in 0..params.max_iterations {
        let next: Vec<f64> = (0..n as NodeId)
            .into_par_iter()
            .map(|v| {
                let mut sum = 0.0;
                for &u in g.neighbors(v) {
                    sum += x[u as usize] / g.degree(u) as f64;
                }
                base + d * sum
            })
            .collect();
        let diff: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if diff <= params.tolerance {
            return Ok(ScoreVector::new(Measure::PageRank, x).with_meta("damping", format!("{d:?}")));
        }
    }
    Err(Error::Numeric(format!(
        "pagerank did not converge within {} iterations",
        params.max_iterations
    )))
}
