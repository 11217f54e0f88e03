//! Asynchronous label propagation, the fast fallback detector.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Partition;
use crate::graph::Graph;

const MAX_ROUNDS: usize = 100;

/// Propagate labels until a fixpoint or the round cap.
///
/// Each round visits nodes in a freshly shuffled order; a node adopts its
/// neighbors' most frequent current label, smallest label on ties.
/// Deterministic given `seed`.
pub fn detect_communities_label_propagation(g: &Graph, seed: u64) -> Partition {
    let n = g.node_count();
    let mut labels: Vec<u32> = (0..n as u32).collect();
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: Vec<(u32, u32)> = Vec::new();

    for _ in 0..MAX_ROUNDS {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &v in &order {
            if g.degree(v) == 0 {
                continue;
            }
            counts.clear();
            for &u in g.neighbors(v) {
                let l = labels[u as usize];
                match counts.binary_search_by_key(&l, |&(ll, _)| ll) {
                    Ok(i) => counts[i].1 += 1,
                    Err(i) => counts.insert(i, (l, 1)),
                }
            }
            // counts is label-sorted, so max_by_key keeps the smallest label
            // among equally frequent ones via strict comparison
            let mut best = counts[0];
            for &(l, c) in &counts[1..] {
                if c > best.1 {
                    best = (l, c);
                }
            }
            if labels[v as usize] != best.0 {
                labels[v as usize] = best.0;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Partition::from_assignments(&labels)
}
