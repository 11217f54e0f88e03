//! Community structure: partitions, their import/export, detection, and
//! partition-dependent graph statistics.
//!
//! A [`Partition`] is canonical: community ids are dense `0..k-1`, numbered
//! by first occurrence when scanning nodes in ascending id order. Every
//! constructor re-canonicalizes, so two partitions with the same grouping
//! compare equal regardless of how their input labeled the communities.

mod label_propagation;
mod map_equation;

pub use label_propagation::detect_communities_label_propagation;
pub use map_equation::{detect_communities_infomap, map_equation};

use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use crate::graph::{Graph, IngestOptions, NodeId};
use crate::{stable_hash_hex, Error, Result};

/// Node-to-community assignment with dense, canonically numbered ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<u32>,
    members: Vec<Vec<NodeId>>,
}

impl Partition {
    /// Build from arbitrary (possibly sparse) community labels.
    pub fn from_assignments(raw: &[u32]) -> Self {
        let mut remap: HashMap<u32, u32> = HashMap::new();
        let mut assignment = Vec::with_capacity(raw.len());
        for &label in raw {
            let next = remap.len() as u32;
            let id = *remap.entry(label).or_insert(next);
            assignment.push(id);
        }
        let mut members = vec![Vec::new(); remap.len()];
        for (node, &c) in assignment.iter().enumerate() {
            members[c as usize].push(node as NodeId);
        }
        Partition { assignment, members }
    }

    /// Every node in its own community.
    pub fn singletons(n: usize) -> Self {
        let raw: Vec<u32> = (0..n as u32).collect();
        Partition::from_assignments(&raw)
    }

    /// All nodes in one community.
    pub fn single(n: usize) -> Self {
        Partition::from_assignments(&vec![0; n])
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn community_count(&self) -> usize {
        self.members.len()
    }

    pub fn community_of(&self, node: NodeId) -> u32 {
        self.assignment[node as usize]
    }

    pub fn members(&self, community: u32) -> &[NodeId] {
        &self.members[community as usize]
    }

    pub fn size_of(&self, community: u32) -> usize {
        self.members[community as usize].len()
    }

    pub fn assignments(&self) -> &[u32] {
        &self.assignment
    }

    /// Stable hex fingerprint of the assignment, for artifact metadata.
    pub fn fingerprint(&self) -> String {
        let mut bytes = Vec::with_capacity(self.assignment.len() * 4);
        for &c in &self.assignment {
            bytes.extend_from_slice(&c.to_le_bytes());
        }
        stable_hash_hex(&bytes)
    }
}

/// Per-node split of degree into links inside and outside the node's own
/// community, plus the per-community link counts.
#[derive(Debug, Clone)]
pub struct LinkDecomposition {
    pub intra: Vec<u32>,
    pub inter: Vec<u32>,
    pub total: Vec<u32>,
    /// For each node, `(community, links into it)` sorted by community id.
    /// Own community appears iff the node has intra links.
    pub per_community: Vec<Vec<(u32, u32)>>,
}

impl LinkDecomposition {
    /// Links from `node` into `community`, zero when absent.
    pub fn links_into(&self, node: NodeId, community: u32) -> u32 {
        let row = &self.per_community[node as usize];
        match row.binary_search_by_key(&community, |&(c, _)| c) {
            Ok(i) => row[i].1,
            Err(_) => 0,
        }
    }

    /// Number of distinct communities other than the node's own that it has
    /// at least one link into.
    pub fn external_community_count(&self, node: NodeId, own: u32) -> u32 {
        self.per_community[node as usize]
            .iter()
            .filter(|&&(c, _)| c != own)
            .count() as u32
    }
}

/// Split every node's degree by the community of the opposite endpoint.
pub fn link_decomposition(g: &Graph, p: &Partition) -> LinkDecomposition {
    assert_eq!(g.node_count(), p.node_count(), "partition does not match graph");
    let n = g.node_count();
    let mut intra = vec![0u32; n];
    let mut inter = vec![0u32; n];
    let mut total = vec![0u32; n];
    let mut per_community = Vec::with_capacity(n);
    for v in 0..n as NodeId {
        let own = p.community_of(v);
        let mut counts: Vec<(u32, u32)> = Vec::new();
        for &u in g.neighbors(v) {
            let c = p.community_of(u);
            match counts.binary_search_by_key(&c, |&(cc, _)| cc) {
                Ok(i) => counts[i].1 += 1,
                Err(i) => counts.insert(i, (c, 1)),
            }
            if c == own {
                intra[v as usize] += 1;
            } else {
                inter[v as usize] += 1;
            }
        }
        total[v as usize] = g.degree(v) as u32;
        per_community.push(counts);
    }
    LinkDecomposition { intra, inter, total, per_community }
}

/// Newman-Girvan modularity: sum over communities of intra-edge fraction
/// minus squared degree fraction. Zero for edgeless graphs.
pub fn modularity(g: &Graph, p: &Partition) -> f64 {
    assert_eq!(g.node_count(), p.node_count(), "partition does not match graph");
    let m = g.edge_count() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let k = p.community_count();
    let mut intra_edges = vec![0u64; k];
    let mut degree_sum = vec![0u64; k];
    for (u, v) in g.edges() {
        if p.community_of(u) == p.community_of(v) {
            intra_edges[p.community_of(u) as usize] += 1;
        }
    }
    for v in 0..g.node_count() as NodeId {
        degree_sum[p.community_of(v) as usize] += g.degree(v) as u64;
    }
    (0..k)
        .map(|c| {
            let e = intra_edges[c] as f64 / m;
            let d = degree_sum[c] as f64 / (2.0 * m);
            e - d * d
        })
        .sum()
}

/// Fraction of edges whose endpoints lie in different communities. Zero for
/// edgeless graphs.
pub fn mixing_parameter(g: &Graph, p: &Partition) -> f64 {
    assert_eq!(g.node_count(), p.node_count(), "partition does not match graph");
    let m = g.edge_count();
    if m == 0 {
        return 0.0;
    }
    let inter = g
        .edges()
        .filter(|&(u, v)| p.community_of(u) != p.community_of(v))
        .count();
    inter as f64 / m as f64
}

/// Parse a two-column `node_label community_label` file into a partition
/// over `g`'s nodes.
///
/// Delimiters and comments follow edge-list rules. Every node of `g` must
/// be assigned exactly once; unknown labels, repeats, and gaps are errors
/// naming the offending node.
pub fn load_partition<R: BufRead>(
    reader: R,
    source_name: &str,
    options: &IngestOptions,
    g: &Graph,
) -> Result<Partition> {
    let n = g.node_count();
    let mut raw: Vec<Option<u32>> = vec![None; n];
    let mut community_ids: HashMap<String, u32> = HashMap::new();
    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| Error::io(source_name, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || options.is_comment_line(trimmed) {
            continue;
        }
        let fields = options.split_fields(trimmed);
        if fields.len() != 2 {
            return Err(Error::MalformedLine {
                path: source_name.to_string(),
                line: lineno,
                message: format!("expected node and community, found {} tokens", fields.len()),
            });
        }
        let node = g.node_id(fields[0]).ok_or_else(|| Error::Partition(format!(
            "{source_name}:{lineno}: unknown node label {:?}",
            fields[0]
        )))?;
        if raw[node as usize].is_some() {
            return Err(Error::Partition(format!(
                "{source_name}:{lineno}: node {:?} assigned more than once",
                fields[0]
            )));
        }
        let next = community_ids.len() as u32;
        let c = *community_ids.entry(fields[1].to_string()).or_insert(next);
        raw[node as usize] = Some(c);
    }
    let mut assignment = Vec::with_capacity(n);
    for (v, slot) in raw.iter().enumerate() {
        match slot {
            Some(c) => assignment.push(*c),
            None => {
                return Err(Error::Partition(format!(
                    "{source_name}: node {:?} has no community assignment",
                    g.label(v as NodeId)
                )))
            }
        }
    }
    Ok(Partition::from_assignments(&assignment))
}

/// Load a partition from a file path.
pub fn load_partition_path(
    path: impl AsRef<Path>,
    options: &IngestOptions,
    g: &Graph,
) -> Result<Partition> {
    let path = path.as_ref();
    let name = path.display().to_string();
    let file = std::fs::File::open(path).map_err(|e| Error::io(&name, e))?;
    load_partition(std::io::BufReader::new(file), &name, options, g)
}

/// Render a partition as the two-column text format accepted by
/// [`load_partition`], one node per line in dense id order.
pub fn save_partition(p: &Partition, g: &Graph) -> String {
    assert_eq!(g.node_count(), p.node_count(), "partition does not match graph");
    let mut out = String::new();
    for v in 0..g.node_count() as NodeId {
        out.push_str(g.label(v));
        out.push(' ');
        out.push_str(&p.community_of(v).to_string());
        out.push('\n');
    }
    out
}

/// Write a partition to a file path.
pub fn save_partition_path(p: &Partition, g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, save_partition(p, g))
        .map_err(|e| Error::io(path.display().to_string(), e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::io::Cursor;

    fn barbell() -> (Graph, Partition) {
        // two triangles {0,1,2} and {3,4,5} joined by edge (2,3)
        let g = Graph::from_id_edges(
            6,
            &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)],
        );
        let p = Partition::from_assignments(&[0, 0, 0, 1, 1, 1]);
        (g, p)
    }

    #[test]
    fn canonicalization_densifies_by_first_occurrence() {
        let p = Partition::from_assignments(&[7, 7, 2, 9, 2]);
        assert_eq!(p.assignments(), &[0, 0, 1, 2, 1]);
        assert_eq!(p.community_count(), 3);
        assert_eq!(p.members(1), &[2, 4]);
        assert_eq!(p.size_of(2), 1);
    }

    #[test]
    fn equal_groupings_compare_equal() {
        let a = Partition::from_assignments(&[5, 5, 3, 3]);
        let b = Partition::from_assignments(&[0, 0, 1, 1]);
        assert_eq!(a, b);
        assert_eq!(a.fingerprint(), b.fingerprint());
    }

    #[test]
    fn decomposition_sum_rule_on_barbell() {
        let (g, p) = barbell();
        let d = link_decomposition(&g, &p);
        for v in 0..6u32 {
            assert_eq!(d.intra[v as usize] + d.inter[v as usize], g.degree(v) as u32);
            assert_eq!(d.total[v as usize], g.degree(v) as u32);
            let row_sum: u32 = d.per_community[v as usize].iter().map(|&(_, k)| k).sum();
            assert_eq!(row_sum, g.degree(v) as u32);
        }
        // bridge endpoints
        assert_eq!(d.intra[2], 2);
        assert_eq!(d.inter[2], 1);
        assert_eq!(d.links_into(2, 1), 1);
        assert_eq!(d.links_into(2, 0), 2);
        assert_eq!(d.external_community_count(2, 0), 1);
        assert_eq!(d.external_community_count(0, 0), 0);
    }

    #[test]
    fn decomposition_degenerate_partitions() {
        let (g, _) = barbell();
        let single = link_decomposition(&g, &Partition::single(6));
        assert!(single.inter.iter().all(|&x| x == 0));
        let singles = link_decomposition(&g, &Partition::singletons(6));
        assert!(singles.intra.iter().all(|&x| x == 0));
    }

    #[test]
    fn modularity_of_single_community_is_zero() {
        let (g, _) = barbell();
        assert_abs_diff_eq!(modularity(&g, &Partition::single(6)), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn modularity_of_two_disconnected_triangles() {
        let g = Graph::from_id_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]);
        let p = Partition::from_assignments(&[0, 0, 0, 1, 1, 1]);
        assert_abs_diff_eq!(modularity(&g, &p), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn mixing_parameter_cases() {
        let (g, p) = barbell();
        assert_abs_diff_eq!(mixing_parameter(&g, &p), 1.0 / 7.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mixing_parameter(&g, &Partition::single(6)), 0.0);
        assert_abs_diff_eq!(mixing_parameter(&g, &Partition::singletons(6)), 1.0);
    }

    #[test]
    fn partition_round_trip() {
        let (g, p) = barbell();
        let text = save_partition(&p, &g);
        let loaded =
            load_partition(Cursor::new(text), "<mem>", &IngestOptions::default(), &g).unwrap();
        assert_eq!(loaded, p);
    }

    #[test]
    fn load_all_same_community() {
        let (g, _) = barbell();
        let text = "0 0\n1 0\n2 0\n3 0\n4 0\n5 0\n";
        let p = load_partition(Cursor::new(text), "<mem>", &IngestOptions::default(), &g).unwrap();
        assert_eq!(p, Partition::single(6));
    }

    #[test]
    fn load_errors_name_the_node() {
        let (g, _) = barbell();
        let missing = "0 0\n1 0\n2 0\n3 1\n4 1\n";
        let err =
            load_partition(Cursor::new(missing), "<mem>", &IngestOptions::default(), &g)
                .unwrap_err();
        assert!(err.to_string().contains("\"5\""), "got: {err}");

        let unknown = "0 0\nnope 1\n";
        let err =
            load_partition(Cursor::new(unknown), "<mem>", &IngestOptions::default(), &g)
                .unwrap_err();
        assert!(err.to_string().contains("unknown node label"), "got: {err}");

        let dup = "0 0\n0 1\n";
        let err = load_partition(Cursor::new(dup), "<mem>", &IngestOptions::default(), &g)
            .unwrap_err();
        assert!(err.to_string().contains("more than once"), "got: {err}");
    }

    #[test]
    fn load_accepts_comments_and_commas() {
        let (g, _) = barbell();
        let text = "# partition\n0,0\n1,0\n2,0\n3,blue\n4,blue\n5,blue\n";
        let p = load_partition(Cursor::new(text), "<mem>", &IngestOptions::default(), &g).unwrap();
        assert_eq!(p.assignments(), &[0, 0, 0, 1, 1, 1]);
    }
}
