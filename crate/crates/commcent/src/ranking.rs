//! Rankings from score vectors and the two list-comparison statistics:
//! Kendall tau-b on raw scores and rank-biased overlap on ordered lists.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::ops::Range;

use crate::centrality::{Measure, ScoreVector};
use crate::graph::NodeId;
use crate::{Error, Result};

/// How tied nodes are ordered inside a rank list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TiePolicy {
    /// Ascending node id: reproducible and the default.
    IdOrder,
    /// Seeded shuffle within each tie group, for sensitivity checks.
    RandomSeeded(u64),
}

/// Nodes in descending score order plus the equal-score runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RankList {
    pub measure: Measure,
    pub order: Vec<NodeId>,
    /// Consecutive position ranges of equal (within epsilon) scores;
    /// they cover `0..order.len()`.
    pub tie_groups: Vec<Range<usize>>,
}

impl RankList {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Sort descending and fuse near-equal scores into tie groups.
///
/// Two consecutive sorted scores belong to one group when their difference
/// is at most `tie_epsilon * max(1, |score|)`; zero epsilon means exact
/// equality. Within a group nodes are ordered by `policy`.
pub fn to_rank_list(scores: &ScoreVector, tie_epsilon: f64, policy: TiePolicy) -> RankList {
    let n = scores.values.len();
    let mut order: Vec<NodeId> = (0..n as NodeId).collect();
    order.sort_by(|&a, &b| {
        let (sa, sb) = (scores.values[a as usize], scores.values[b as usize]);
        sb.partial_cmp(&sa).expect("finite scores").then(a.cmp(&b))
    });

    let mut tie_groups = Vec::new();
    let mut start = 0usize;
    for i in 1..n {
        let prev = scores.values[order[i - 1] as usize];
        let cur = scores.values[order[i] as usize];
        let scale = prev.abs().max(cur.abs()).max(1.0);
        let tied = if tie_epsilon == 0.0 {
            prev == cur
        } else {
            (prev - cur).abs() <= tie_epsilon * scale
        };
        if !tied {
            tie_groups.push(start..i);
            start = i;
        }
    }
    if n > 0 {
        tie_groups.push(start..n);
    }

    match policy {
        TiePolicy::IdOrder => {
            for group in &tie_groups {
                order[group.clone()].sort_unstable();
            }
        }
        TiePolicy::RandomSeeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for group in &tie_groups {
                order[group.clone()].shuffle(&mut rng);
            }
        }
    }

    RankList { measure: scores.measure, order, tie_groups }
}

/// Kendall tau-b of two score vectors; `None` when either vector is fully
/// tied (zero denominator). O(n log n) via merge-sort inversion counting.
pub fn kendall_tau_b(a: &ScoreVector, b: &ScoreVector) -> Result<Option<f64>> {
    let n = a.values.len();
    if n != b.values.len() {
        return Err(Error::Precondition(format!(
            "score vectors differ in length: {} vs {}",
            n,
            b.values.len()
        )));
    }
    if n < 2 {
        return Err(Error::Precondition("need at least two nodes to correlate".into()));
    }
    let mut idx: Vec<u32> = (0..n as u32).collect();
    idx.sort_by(|&i, &j| {
        let (ai, aj) = (a.values[i as usize], a.values[j as usize]);
        ai.partial_cmp(&aj)
            .expect("finite scores")
            .then_with(|| {
                b.values[i as usize]
                    .partial_cmp(&b.values[j as usize])
                    .expect("finite scores")
            })
    });

    let n0 = n as u64 * (n as u64 - 1) / 2;
    let pairs = |run: u64| run * (run - 1) / 2;

    // tie mass in a, and in (a,b) jointly, over the (a,b)-sorted order
    let mut t_x = 0u64;
    let mut t_xy = 0u64;
    let mut run_x = 1u64;
    let mut run_xy = 1u64;
    for w in 1..n {
        let (i, j) = (idx[w - 1] as usize, idx[w] as usize);
        if a.values[i] == a.values[j] {
            run_x += 1;
            if b.values[i] == b.values[j] {
                run_xy += 1;
            } else {
                t_xy += pairs(run_xy);
                run_xy = 1;
            }
        } else {
            t_x += pairs(run_x);
            run_x = 1;
            t_xy += pairs(run_xy);
            run_xy = 1;
        }
    }
    t_x += pairs(run_x);
    t_xy += pairs(run_xy);

    // tie mass in b, order-independent
    let mut b_sorted: Vec<f64> = b.values.clone();
    b_sorted.sort_by(|x, y| x.partial_cmp(y).expect("finite scores"));
    let mut t_y = 0u64;
    let mut run_y = 1u64;
    for w in 1..n {
        if b_sorted[w - 1] == b_sorted[w] {
            run_y += 1;
        } else {
            t_y += pairs(run_y);
            run_y = 1;
        }
    }
    t_y += pairs(run_y);

    let denom_x = n0 - t_x;
    let denom_y = n0 - t_y;
    if denom_x == 0 || denom_y == 0 {
        return Ok(None);
    }

    let seq: Vec<f64> = idx.iter().map(|&i| b.values[i as usize]).collect();
    let swaps = count_inversions(seq);

    let con_minus_dis = n0 as i128 - t_x as i128 - t_y as i128 + t_xy as i128
        - 2 * swaps as i128;
    // sqrt of the product, not a product of sqrts: keeps tau(a,b) and
    // tau(b,a) bit-identical.
    let tau = con_minus_dis as f64 / ((denom_x as f64) * (denom_y as f64)).sqrt();
    Ok(Some(tau.clamp(-1.0, 1.0)))
}

/// Strict inversions (`i < j` with `seq[i] > seq[j]`) by bottom-up merge
/// sort.
fn count_inversions(mut seq: Vec<f64>) -> u64 {
    let n = seq.len();
    let mut buf = vec![0.0f64; n];
    let mut count = 0u64;
    let mut width = 1;
    while width < n {
        let mut lo = 0;
        while lo + width < n {
            let mid = lo + width;
            let hi = (mid + width).min(n);
            let (mut i, mut j, mut k) = (lo, mid, lo);
            while i < mid && j < hi {
                if seq[j] < seq[i] {
                    count += (mid - i) as u64;
                    buf[k] = seq[j];
                    j += 1;
                } else {
                    buf[k] = seq[i];
                    i += 1;
                }
                k += 1;
            }
            while i < mid {
                buf[k] = seq[i];
                i += 1;
                k += 1;
            }
            while j < hi {
                buf[k] = seq[j];
                j += 1;
                k += 1;
            }
            seq[lo..hi].copy_from_slice(&buf[lo..hi]);
            lo = hi;
        }
        width *= 2;
    }
    count
}

/// Whether the agreement series is closed by extrapolation (self-similarity
/// exactly 1) or cut off at depth N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RboVariant {
    #[default]
    Extrapolated,
    Truncated,
}

impl RboVariant {
    pub fn id(self) -> &'static str {
        match self {
            RboVariant::Extrapolated => "extrapolated",
            RboVariant::Truncated => "truncated",
        }
    }
}

/// Rank-biased overlap of two rankings of the same node set.
pub fn rbo(a: &RankList, b: &RankList, p: f64, variant: RboVariant) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Parameter(format!("rbo persistence {p} outside (0, 1)")));
    }
    let n = a.len();
    if n != b.len() || n == 0 {
        return Err(Error::Precondition(format!(
            "rank lists must cover one non-empty node set (lengths {} and {})",
            n,
            b.len()
        )));
    }
    let max_id = a
        .order
        .iter()
        .chain(&b.order)
        .copied()
        .max()
        .map(|v| v as usize + 1)
        .unwrap_or(0);
    let mut in_a = vec![false; max_id];
    let mut in_b = vec![false; max_id];
    for &v in &a.order {
        if in_a[v as usize] {
            return Err(Error::Precondition(format!("node {v} ranked twice")));
        }
        in_a[v as usize] = true;
    }
    for &v in &b.order {
        if !in_a[v as usize] {
            return Err(Error::Precondition(format!(
                "rank lists cover different node sets (node {v})"
            )));
        }
        if in_b[v as usize] {
            return Err(Error::Precondition(format!("node {v} ranked twice")));
        }
        in_b[v as usize] = true;
    }

    if variant == RboVariant::Extrapolated && a.order == b.order {
        return Ok(1.0);
    }

    let mut seen_a = vec![false; max_id];
    let mut seen_b = vec![false; max_id];
    let mut overlap = 0u64;
    let mut sum = 0.0f64;
    let mut p_pow = 1.0f64;
    for d in 1..=n {
        let x = a.order[d - 1] as usize;
        let y = b.order[d - 1] as usize;
        if x == y {
            overlap += 1;
        } else {
            if seen_b[x] {
                overlap += 1;
            }
            if seen_a[y] {
                overlap += 1;
            }
        }
        seen_a[x] = true;
        seen_b[y] = true;
        sum += p_pow * overlap as f64 / d as f64;
        if d < n {
            p_pow *= p;
        }
    }
    let base = (1.0 - p) * sum;
    let value = match variant {
        RboVariant::Extrapolated => base + p_pow * p * (overlap as f64 / n as f64),
        RboVariant::Truncated => base,
    };
    Ok(value.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sv(values: Vec<f64>) -> ScoreVector {
        ScoreVector::new(Measure::Degree, values)
    }

    /// O(n²) pair classification, the reference the fast path must match.
    fn tau_oracle(a: &[f64], b: &[f64]) -> Option<f64> {
        let n = a.len();
        let (mut con, mut dis, mut t_a, mut t_b) = (0i64, 0i64, 0u64, 0u64);
        for i in 0..n {
            for j in (i + 1)..n {
                if a[i] == a[j] {
                    t_a += 1;
                }
                if b[i] == b[j] {
                    t_b += 1;
                }
                if a[i] != a[j] && b[i] != b[j] {
                    let same = (a[i] < a[j]) == (b[i] < b[j]);
                    if same {
                        con += 1;
                    } else {
                        dis += 1;
                    }
                }
            }
        }
        let n0 = (n * (n - 1) / 2) as u64;
        if n0 == t_a || n0 == t_b {
            return None;
        }
        let denom = ((n0 - t_a) as f64).sqrt() * ((n0 - t_b) as f64).sqrt();
        Some((con - dis) as f64 / denom)
    }

    #[test]
    fn rank_list_basics() {
        let list = to_rank_list(&sv(vec![3.0, 1.0, 2.0]), 0.0, TiePolicy::IdOrder);
        assert_eq!(list.order, vec![0, 2, 1]);
        assert_eq!(list.tie_groups.len(), 3);

        let list = to_rank_list(&sv(vec![2.0, 2.0, 1.0]), 0.0, TiePolicy::IdOrder);
        assert_eq!(list.order, vec![0, 1, 2]);
        assert_eq!(list.tie_groups, vec![0..2, 2..3]);

        let list = to_rank_list(&sv(vec![5.0; 4]), 0.0, TiePolicy::IdOrder);
        assert_eq!(list.tie_groups, vec![0..4]);
    }

    #[test]
    fn rank_list_epsilon_fuses_near_ties() {
        let scores = sv(vec![1.0, 1.0 + 1e-13, 2.0]);
        let exact = to_rank_list(&scores, 0.0, TiePolicy::IdOrder);
        assert_eq!(exact.tie_groups.len(), 3);
        let fused = to_rank_list(&scores, 1e-12, TiePolicy::IdOrder);
        assert_eq!(fused.tie_groups, vec![0..1, 1..3]);
        assert_eq!(fused.order, vec![2, 0, 1]);
    }

    #[test]
    fn rank_list_random_policy_is_seed_deterministic() {
        let scores = sv(vec![1.0; 6]);
        let a = to_rank_list(&scores, 0.0, TiePolicy::RandomSeeded(9));
        let b = to_rank_list(&scores, 0.0, TiePolicy::RandomSeeded(9));
        assert_eq!(a, b);
        let mut sorted = a.order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn tau_identity_and_reversal() {
        let a = sv(vec![1.0, 2.0, 3.0, 4.0]);
        let rev = sv(vec![4.0, 3.0, 2.0, 1.0]);
        assert_eq!(kendall_tau_b(&a, &a).unwrap(), Some(1.0));
        assert_eq!(kendall_tau_b(&a, &rev).unwrap(), Some(-1.0));
    }

    #[test]
    fn tau_fully_tied_is_undefined() {
        let a = sv(vec![1.0, 1.0, 1.0]);
        let b = sv(vec![1.0, 2.0, 3.0]);
        assert_eq!(kendall_tau_b(&a, &b).unwrap(), None);
        assert_eq!(kendall_tau_b(&b, &a).unwrap(), None);
    }

    #[test]
    fn tau_matches_oracle_on_tied_vectors() {
        // deterministic pseudo-random vectors with heavy ties
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for round in 0..200 {
            let n = 2 + (next() % 60) as usize;
            let a: Vec<f64> = (0..n).map(|_| (next() % 7) as f64).collect();
            let b: Vec<f64> = (0..n).map(|_| (next() % 5) as f64).collect();
            let fast = kendall_tau_b(&sv(a.clone()), &sv(b.clone())).unwrap();
            let slow = tau_oracle(&a, &b);
            match (fast, slow) {
                (None, None) => {}
                (Some(x), Some(y)) => assert_abs_diff_eq!(x, y, epsilon = 1e-12),
                other => panic!("round {round}: mismatch {other:?}"),
            }
        }
    }

    #[test]
    fn tau_symmetric_and_transform_invariant() {
        let a = sv(vec![0.3, 1.5, 0.9, 2.2, 0.1, 1.5]);
        let b = sv(vec![5.0, 4.0, 6.0, 1.0, 2.0, 2.0]);
        let ab = kendall_tau_b(&a, &b).unwrap().unwrap();
        let ba = kendall_tau_b(&b, &a).unwrap().unwrap();
        assert_abs_diff_eq!(ab, ba, epsilon = 1e-15);
        let cubed = sv(a.values.iter().map(|v| v.powi(3)).collect());
        let exped = sv(a.values.iter().map(|v| v.exp()).collect());
        assert_abs_diff_eq!(kendall_tau_b(&cubed, &b).unwrap().unwrap(), ab, epsilon = 1e-15);
        assert_abs_diff_eq!(kendall_tau_b(&exped, &b).unwrap().unwrap(), ab, epsilon = 1e-15);
    }

    #[test]
    fn tau_rejects_bad_inputs() {
        let a = sv(vec![1.0, 2.0]);
        let b = sv(vec![1.0, 2.0, 3.0]);
        assert!(kendall_tau_b(&a, &b).is_err());
        let single = sv(vec![1.0]);
        assert!(kendall_tau_b(&single, &single).is_err());
    }

    #[test]
    fn rbo_identical_lists_exactly_one() {
        let scores = sv(vec![0.5, 0.1, 0.9, 0.3]);
        let list = to_rank_list(&scores, 0.0, TiePolicy::IdOrder);
        assert_eq!(rbo(&list, &list, 0.9, RboVariant::Extrapolated).unwrap(), 1.0);
        let tied = to_rank_list(&sv(vec![1.0; 5]), 0.0, TiePolicy::IdOrder);
        assert_eq!(rbo(&tied, &tied, 0.9, RboVariant::Extrapolated).unwrap(), 1.0);
    }

    #[test]
    fn rbo_reversed_pair_hand_value() {
        let a = to_rank_list(&sv(vec![2.0, 1.0]), 0.0, TiePolicy::IdOrder);
        let b = to_rank_list(&sv(vec![1.0, 2.0]), 0.0, TiePolicy::IdOrder);
        // overlap_1 = 0, overlap_2 = 2: (1-p)(0 + 0.9·1) + p²·1 = 0.9
        let v = rbo(&a, &b, 0.9, RboVariant::Extrapolated).unwrap();
        assert_abs_diff_eq!(v, 0.9, epsilon = 1e-15);
    }

    #[test]
    fn rbo_matches_naive_oracle() {
        let naive = |a: &RankList, b: &RankList, p: f64| {
            let n = a.len();
            let mut sum = 0.0;
            let mut last_overlap = 0.0;
            for d in 1..=n {
                let top_a: std::collections::HashSet<_> = a.order[..d].iter().collect();
                let overlap = b.order[..d].iter().filter(|v| top_a.contains(v)).count();
                last_overlap = overlap as f64;
                sum += p.powi(d as i32 - 1) * overlap as f64 / d as f64;
            }
            (1.0 - p) * sum + p.powi(n as i32) * last_overlap / n as f64
        };
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..100 {
            let n = 2 + (next() % 40) as usize;
            let a: Vec<f64> = (0..n).map(|_| (next() % 1000) as f64).collect();
            let b: Vec<f64> = (0..n).map(|_| (next() % 10) as f64).collect();
            let la = to_rank_list(&sv(a), 0.0, TiePolicy::IdOrder);
            let lb = to_rank_list(&sv(b), 0.0, TiePolicy::IdOrder);
            let fast = rbo(&la, &lb, 0.9, RboVariant::Extrapolated).unwrap();
            assert_abs_diff_eq!(fast, naive(&la, &lb, 0.9), epsilon = 1e-12);
        }
    }

    #[test]
    fn rbo_symmetry_and_range() {
        let la = to_rank_list(&sv(vec![4.0, 2.0, 8.0, 1.0, 9.0]), 0.0, TiePolicy::IdOrder);
        let lb = to_rank_list(&sv(vec![1.0, 5.0, 2.0, 7.0, 3.0]), 0.0, TiePolicy::IdOrder);
        let ab = rbo(&la, &lb, 0.9, RboVariant::Extrapolated).unwrap();
        let ba = rbo(&lb, &la, 0.9, RboVariant::Extrapolated).unwrap();
        assert_abs_diff_eq!(ab, ba, epsilon = 1e-15);
        assert!((0.0..=1.0).contains(&ab));
    }

    #[test]
    fn rbo_truncated_differs_by_tail() {
        let la = to_rank_list(&sv(vec![3.0, 2.0, 1.0]), 0.0, TiePolicy::IdOrder);
        let ext = rbo(&la, &la, 0.9, RboVariant::Extrapolated).unwrap();
        let trunc = rbo(&la, &la, 0.9, RboVariant::Truncated).unwrap();
        assert_eq!(ext, 1.0);
        assert_abs_diff_eq!(trunc, 1.0 - 0.9f64.powi(3), epsilon = 1e-12);
    }

    #[test]
    fn rbo_rejects_bad_inputs() {
        let la = to_rank_list(&sv(vec![1.0, 2.0]), 0.0, TiePolicy::IdOrder);
        assert!(rbo(&la, &la, 1.0, RboVariant::Extrapolated).is_err());
        assert!(rbo(&la, &la, 0.0, RboVariant::Extrapolated).is_err());
        let shorter = to_rank_list(&sv(vec![1.0]), 0.0, TiePolicy::IdOrder);
        assert!(rbo(&la, &shorter, 0.9, RboVariant::Extrapolated).is_err());
    }

    #[test]
    fn tau_adjacent_swap_step_on_tie_free_input() {
        let n = 12;
        let a: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let base = sv(a.clone());
        let n0 = (n * (n - 1) / 2) as f64;
        let full = kendall_tau_b(&base, &base).unwrap().unwrap();
        for i in 0..n - 1 {
            let mut swapped = a.clone();
            swapped.swap(i, i + 1);
            let tau = kendall_tau_b(&base, &sv(swapped)).unwrap().unwrap();
            assert_abs_diff_eq!(full - tau, 2.0 / n0, epsilon = 1e-12);
        }
    }
}
