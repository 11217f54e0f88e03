//! Two-level random-walk codelength and the greedy detector that minimizes
//! it.
//!
//! The walker's stationary probability at node `i` on a connected undirected
//! graph is `degree(i)/2m`; a partition is scored by the expected number of
//! bits per step of a two-level Huffman code: one index codebook entered at
//! rate `q` plus one codebook per community. All logarithms are base 2.
//!
//! The optimizer repeats Louvain-style rounds: greedy single-node moves to
//! a local optimum, aggregation of communities into supernodes, and a
//! node-level refinement pass over the coarse result, until no move helps.
//! `trials` independently shuffled restarts run in parallel and the best
//! codelength wins, ties broken by lexicographically smallest canonical
//! assignment.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;

use super::Partition;
use crate::graph::Graph;
use crate::{mix_seed, Error, Result};

fn plogp(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

/// Codelength in bits of the two-level code induced by `p`.
///
/// Expanded form over community exit rates `q_c` and community flows
/// `mf_c = Σ p_i`:
/// `L = plogp(q) - 2 Σ plogp(q_c) + Σ plogp(q_c + mf_c) - Σ plogp(p_i)`.
/// An edgeless graph codes nothing and scores 0. Partitions whose
/// communities have no exits (disconnected components detected separately)
/// are handled by `plogp(0) = 0`.
pub fn map_equation(g: &Graph, p: &Partition) -> f64 {
    assert_eq!(g.node_count(), p.node_count(), "partition does not match graph");
    let m = g.edge_count();
    if m == 0 {
        return 0.0;
    }
    let two_m = (2 * m) as f64;
    let k = p.community_count();
    let mut exit = vec![0.0f64; k];
    let mut module_flow = vec![0.0f64; k];
    let mut node_term = 0.0f64;
    for v in 0..g.node_count() as u32 {
        let pv = g.degree(v) as f64 / two_m;
        node_term += plogp(pv);
        module_flow[p.community_of(v) as usize] += pv;
    }
    for (u, v) in g.edges() {
        let (cu, cv) = (p.community_of(u), p.community_of(v));
        if cu != cv {
            exit[cu as usize] += 1.0 / two_m;
            exit[cv as usize] += 1.0 / two_m;
        }
    }
    let q: f64 = exit.iter().sum();
    let mut l = plogp(q) - node_term;
    for c in 0..k {
        l += plogp(exit[c] + module_flow[c]) - 2.0 * plogp(exit[c]);
    }
    if l.abs() < 1e-12 {
        0.0
    } else {
        l
    }
}

/// Flow-weighted graph the optimizer works on. At the leaf level every edge
/// carries `1/2m` per direction and `node_flow` is the stationary
/// distribution; aggregation sums member flows and drops intra-module edges
/// (a supernode's self-loop never crosses a boundary, so it only lives in
/// `node_flow`).
#[derive(Clone)]
struct WorkGraph {
    node_flow: Vec<f64>,
    out_flow: Vec<f64>,
    adj: Vec<Vec<(u32, f64)>>,
}

impl WorkGraph {
    fn from_graph(g: &Graph) -> WorkGraph {
        let n = g.node_count();
        let two_m = (2 * g.edge_count()) as f64;
        let mut node_flow = Vec::with_capacity(n);
        let mut adj = Vec::with_capacity(n);
        for v in 0..n as u32 {
            node_flow.push(g.degree(v) as f64 / two_m);
            adj.push(g.neighbors(v).iter().map(|&u| (u, 1.0 / two_m)).collect());
        }
        let out_flow = node_flow.clone();
        WorkGraph { node_flow, out_flow, adj }
    }

    fn len(&self) -> usize {
        self.node_flow.len()
    }

    fn aggregate(&self, assign: &[u32], k: usize) -> WorkGraph {
        let mut node_flow = vec![0.0f64; k];
        let mut maps: Vec<HashMap<u32, f64>> = vec![HashMap::new(); k];
        for (u, &c) in assign.iter().enumerate() {
            node_flow[c as usize] += self.node_flow[u];
            for &(v, f) in &self.adj[u] {
                let cv = assign[v as usize];
                if cv != c {
                    *maps[c as usize].entry(cv).or_insert(0.0) += f;
                }
            }
        }
        let mut adj = Vec::with_capacity(k);
        let mut out_flow = Vec::with_capacity(k);
        for map in maps {
            let mut row: Vec<(u32, f64)> = map.into_iter().collect();
            row.sort_unstable_by_key(|&(v, _)| v);
            out_flow.push(row.iter().map(|&(_, f)| f).sum());
            adj.push(row);
        }
        WorkGraph { node_flow, out_flow, adj }
    }
}

const MAX_PASSES: usize = 200;
const MIN_GAIN: f64 = 1e-10;

/// Greedy single-node moves until a full pass improves nothing. `assign`
/// must be dense on entry; it stays a valid (possibly sparse) labeling.
/// Returns whether any move was applied.
fn sweep(wg: &WorkGraph, assign: &mut [u32], rng: &mut ChaCha8Rng) -> bool {
    let n = wg.len();
    let cap = n + 1;
    let mut module_count = assign.iter().copied().max().map(|c| c as usize + 1).unwrap_or(0);
    let mut mf = vec![0.0f64; cap];
    let mut exit = vec![0.0f64; cap];
    let mut size = vec![0usize; cap];
    for i in 0..n {
        let c = assign[i] as usize;
        mf[c] += wg.node_flow[i];
        size[c] += 1;
    }
    for i in 0..n {
        let ci = assign[i];
        for &(v, f) in &wg.adj[i] {
            if assign[v as usize] != ci {
                exit[ci as usize] += f;
            }
        }
    }
    let mut q_total: f64 = exit[..module_count].iter().sum();
    let mut empties: Vec<u32> = (0..module_count as u32)
        .filter(|&c| size[c as usize] == 0)
        .collect();

    let mut to_flow = vec![0.0f64; cap];
    let mut touched: Vec<u32> = Vec::new();
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut any_move = false;

    for _ in 0..MAX_PASSES {
        order.shuffle(rng);
        let mut pass_moved = false;
        for &i in &order {
            let iu = i as usize;
            let a = assign[iu];
            for &(v, f) in &wg.adj[iu] {
                let c = assign[v as usize];
                if to_flow[c as usize] == 0.0 {
                    touched.push(c);
                }
                to_flow[c as usize] += f;
            }
            touched.sort_unstable();

            let p_i = wg.node_flow[iu];
            let w_i = wg.out_flow[iu];
            let f_ia = to_flow[a as usize];
            let q_a_removed = (exit[a as usize] - w_i + 2.0 * f_ia).max(0.0);
            let dq_remove = q_a_removed - exit[a as usize];
            let removal_terms = plogp(q_a_removed + mf[a as usize] - p_i)
                - plogp(exit[a as usize] + mf[a as usize])
                - 2.0 * (plogp(q_a_removed) - plogp(exit[a as usize]));

            let fresh = if size[a as usize] > 1 {
                Some(empties.last().copied().unwrap_or(module_count as u32))
            } else {
                None
            };
            let mut best_b = a;
            let mut best_delta = 0.0f64;
            let candidates = touched.iter().copied().filter(|&b| b != a).chain(fresh);
            for b in candidates {
                let bu = b as usize;
                let f_ib = to_flow[bu];
                let q_b_new = exit[bu] + w_i - 2.0 * f_ib;
                let q_new = (q_total + dq_remove + (q_b_new - exit[bu])).max(0.0);
                let delta = plogp(q_new) - plogp(q_total)
                    + removal_terms
                    - 2.0 * (plogp(q_b_new) - plogp(exit[bu]))
                    + plogp(q_b_new + mf[bu] + p_i)
                    - plogp(exit[bu] + mf[bu]);
                if delta < best_delta {
                    best_delta = delta;
                    best_b = b;
                }
            }

            if best_b != a && best_delta < -MIN_GAIN {
                let b = best_b;
                let bu = b as usize;
                let f_ib = to_flow[bu];
                let q_b_new = exit[bu] + w_i - 2.0 * f_ib;
                q_total = (q_total + dq_remove + (q_b_new - exit[bu])).max(0.0);
                exit[a as usize] = q_a_removed;
                exit[bu] = q_b_new;
                mf[a as usize] -= p_i;
                mf[bu] += p_i;
                size[a as usize] -= 1;
                size[bu] += 1;
                if empties.last() == Some(&b) {
                    empties.pop();
                } else if bu == module_count {
                    module_count += 1;
                }
                if size[a as usize] == 0 {
                    exit[a as usize] = 0.0;
                    mf[a as usize] = 0.0;
                    empties.push(a);
                }
                assign[iu] = b;
                pass_moved = true;
                any_move = true;
            }

            for &c in &touched {
                to_flow[c as usize] = 0.0;
            }
            touched.clear();
        }
        if !pass_moved {
            break;
        }
    }
    any_move
}

fn canonicalize(assign: &mut [u32]) -> usize {
    let mut remap: HashMap<u32, u32> = HashMap::new();
    for x in assign.iter_mut() {
        let next = remap.len() as u32;
        *x = *remap.entry(*x).or_insert(next);
    }
    remap.len()
}

/// One full optimization run from singletons: alternating coarse rounds and
/// node-level refinement until neither finds a move.
fn detect_trial(leaf: &WorkGraph, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = leaf.len();
    let mut leaf_assign: Vec<u32> = (0..n as u32).collect();
    // Each accepted move lowers the codelength by at least MIN_GAIN, so the
    // outer loop terminates; the cap is a backstop.
    for _ in 0..MAX_PASSES {
        loop {
            let k = canonicalize(&mut leaf_assign);
            let wg = leaf.aggregate(&leaf_assign, k);
            let mut module_assign: Vec<u32> = (0..k as u32).collect();
            if !sweep(&wg, &mut module_assign, &mut rng) {
                break;
            }
            for x in leaf_assign.iter_mut() {
                *x = module_assign[*x as usize];
            }
        }
        if !sweep(leaf, &mut leaf_assign, &mut rng) {
            break;
        }
    }
    canonicalize(&mut leaf_assign);
    leaf_assign
}

/// Find the partition minimizing the two-level codelength.
///
/// Runs `trials` independent restarts (in parallel) seeded from `seed` and
/// keeps the best result; fully deterministic given `(seed, trials)`. A
/// single-community or all-singletons answer is valid output. Edgeless
/// graphs return singletons.
pub fn detect_communities_infomap(g: &Graph, seed: u64, trials: usize) -> Result<Partition> {
    if trials == 0 {
        return Err(Error::Parameter("trials must be at least 1".into()));
    }
    let n = g.node_count();
    if n == 0 {
        return Err(Error::Precondition("empty graph".into()));
    }
    if g.edge_count() == 0 {
        return Ok(Partition::singletons(n));
    }
    let leaf = WorkGraph::from_graph(g);
    let mut results: Vec<(f64, Partition)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let assign = detect_trial(&leaf, mix_seed(seed, t as u64));
            let p = Partition::from_assignments(&assign);
            let l = map_equation(g, &p);
            (l, p)
        })
        .collect();
    // The trivial partitions compete as candidates outright: the move
    // ladder cannot always reach them through individually improving
    // merges.
    for p in [Partition::single(n), Partition::singletons(n)] {
        let l = map_equation(g, &p);
        results.push((l, p));
    }
    let mut best = 0usize;
    for i in 1..results.len() {
        let (li, pi) = &results[i];
        let (lb, pb) = &results[best];
        let better = *li < lb - MIN_GAIN
            || ((li - lb).abs() <= MIN_GAIN && pi.assignments() < pb.assignments());
        if better {
            best = i;
        }
    }
    Ok(results.into_iter().nth(best).map(|(_, p)| p).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::community::mixing_parameter;
    use approx::assert_abs_diff_eq;

    fn barbell() -> Graph {
        Graph::from_id_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])
    }

    fn clique_pair(k: u32) -> Graph {
        let mut edges = Vec::new();
        for block in 0..2u32 {
            let base = block * k;
            for i in 0..k {
                for j in (i + 1)..k {
                    edges.push((base + i, base + j));
                }
            }
        }
        edges.push((k - 1, k));
        Graph::from_id_edges(2 * k as usize, &edges)
    }

    /// All set partitions of n elements, as restricted growth strings.
    fn for_each_partition(n: usize, f: &mut impl FnMut(&[u32])) {
        fn rec(buf: &mut Vec<u32>, n: usize, max: u32, f: &mut impl FnMut(&[u32])) {
            if buf.len() == n {
                f(buf);
                return;
            }
            for c in 0..=max {
                buf.push(c);
                let next_max = max.max(c + 1);
                rec(buf, n, next_max, f);
                buf.pop();
            }
        }
        rec(&mut Vec::with_capacity(n), n, 1, f);
    }

    fn exhaustive_minimum(g: &Graph) -> f64 {
        let mut best = f64::INFINITY;
        for_each_partition(g.node_count(), &mut |assign| {
            let l = map_equation(g, &Partition::from_assignments(assign));
            if l < best {
                best = l;
            }
        });
        best
    }

    #[test]
    fn single_community_is_stationary_entropy() {
        let g = barbell();
        let entropy: f64 = (0..6u32)
            .map(|v| {
                let p = g.degree(v) as f64 / 14.0;
                -p * p.log2()
            })
            .sum();
        assert_abs_diff_eq!(map_equation(&g, &Partition::single(6)), entropy, epsilon = 1e-12);
    }

    #[test]
    fn disconnected_components_have_zero_exit() {
        let g = Graph::from_id_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]);
        let p = Partition::from_assignments(&[0, 0, 0, 1, 1, 1]);
        // each community holds half the flow, all nodes equal flow 1/6
        assert_abs_diff_eq!(map_equation(&g, &p), 3.0f64.log2(), epsilon = 1e-12);
    }

    #[test]
    fn planted_barbell_beats_singletons_and_single() {
        let g = barbell();
        let planted = map_equation(&g, &Partition::from_assignments(&[0, 0, 0, 1, 1, 1]));
        assert!(planted < map_equation(&g, &Partition::singletons(6)));
        assert!(planted < map_equation(&g, &Partition::single(6)));
    }

    #[test]
    fn codelength_invariant_under_node_relabeling() {
        let g = barbell();
        let p = Partition::from_assignments(&[0, 0, 0, 1, 1, 1]);
        let l = map_equation(&g, &p);
        // relabel nodes by the permutation v -> 5 - v
        let g2 = Graph::from_id_edges(6, &[(5, 4), (5, 3), (4, 3), (2, 1), (2, 0), (1, 0), (3, 2)]);
        let p2 = Partition::from_assignments(&[1, 1, 1, 0, 0, 0]);
        assert_abs_diff_eq!(map_equation(&g2, &p2), l, epsilon = 1e-12);
    }

    #[test]
    fn detector_splits_barbell_into_triangles() {
        let g = barbell();
        let p = detect_communities_infomap(&g, 42, 10).unwrap();
        assert_eq!(p.assignments(), &[0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn detector_keeps_k5_whole() {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            for j in (i + 1)..5 {
                edges.push((i, j));
            }
        }
        let g = Graph::from_id_edges(5, &edges);
        let p = detect_communities_infomap(&g, 7, 10).unwrap();
        assert_eq!(p.community_count(), 1);
    }

    #[test]
    fn detector_splits_clique_pair() {
        let g = clique_pair(10);
        let p = detect_communities_infomap(&g, 3, 10).unwrap();
        assert_eq!(p.community_count(), 2);
        assert_abs_diff_eq!(mixing_parameter(&g, &p), 1.0 / 91.0, epsilon = 1e-15);
        for v in 0..10u32 {
            assert_eq!(p.community_of(v), p.community_of(0));
        }
    }

    #[test]
    fn detector_deterministic_for_fixed_seed() {
        let g = clique_pair(6);
        let a = detect_communities_infomap(&g, 99, 8).unwrap();
        let b = detect_communities_infomap(&g, 99, 8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn detector_rejects_zero_trials() {
        let g = barbell();
        assert!(detect_communities_infomap(&g, 1, 0).is_err());
    }

    #[test]
    fn detector_matches_exhaustive_minimum_on_small_graphs() {
        let fixtures = vec![
            barbell(),
            Graph::from_id_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]),
            Graph::from_id_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
            clique_pair(3),
        ];
        for g in fixtures {
            let truth = exhaustive_minimum(&g);
            let found = map_equation(&g, &detect_communities_infomap(&g, 5, 30).unwrap());
            assert_abs_diff_eq!(found, truth, epsilon = 1e-9);
        }
    }
}
