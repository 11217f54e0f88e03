//! Undirected simple graph: edge-list ingestion, connected components,
//! and adjacency access.
//!
//! Node labels from input files are remapped to dense ids `0..N-1` in
//! first-seen order; the original labels are kept so every exported artifact
//! can speak the input's id scheme. Graphs are immutable after construction
//! and safe to share across threads.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::io::BufRead;
use std::path::Path;

use crate::{Error, Result};

/// Dense node id, always in `0..graph.node_count()`.
pub type NodeId = u32;

/// Immutable undirected simple graph with sorted per-node neighbor lists.
#[derive(Debug, Clone)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    labels: Vec<String>,
    label_index: HashMap<String, NodeId>,
    edge_count: usize,
}

/// What ingestion kept and what it dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct IngestReport {
    pub data_lines: usize,
    pub nodes: usize,
    pub edges: usize,
    pub self_loops_dropped: usize,
    pub duplicate_edges_dropped: usize,
}

/// Parsing options for edge-list and partition files.
#[derive(Debug, Clone)]
pub struct IngestOptions {
    /// Forced field delimiter; `None` auto-detects (comma if the line
    /// contains one, otherwise any whitespace).
    pub delimiter: Option<char>,
    /// Lines starting with any of these (after trimming) are skipped.
    pub comment_prefixes: Vec<char>,
    /// Accept lines with more than two fields, using only the first two.
    /// Off by default: extra fields are a malformed line.
    pub allow_extra_columns: bool,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions {
            delimiter: None,
            comment_prefixes: vec!['#', '%'],
            allow_extra_columns: false,
        }
    }
}

impl IngestOptions {
    pub(crate) fn split_fields<'a>(&self, line: &'a str) -> Vec<&'a str> {
        match self.delimiter {
            Some(d) => line.split(d).map(str::trim).filter(|t| !t.is_empty()).collect(),
            None => {
                if line.contains(',') {
                    line.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
                } else {
                    line.split_whitespace().collect()
                }
            }
        }
    }

    pub(crate) fn is_comment_line(&self, line: &str) -> bool {
        line.chars()
            .next()
            .map(|c| self.comment_prefixes.contains(&c))
            .unwrap_or(false)
    }
}

impl Graph {
    /// Build a graph from dense-id edges and per-node labels.
    ///
    /// Self-loops and duplicate edges are rejected here (callers that need
    /// lenient handling go through [`ingest_edge_list`]); labels must be
    /// unique and cover `0..n`.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)], labels: Vec<String>) -> Result<Self> {
        if labels.len() != n {
            return Err(Error::Precondition(format!(
                "expected {n} labels, got {}",
                labels.len()
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Precondition(format!(
                    "edge ({u},{v}) out of range for {n} nodes"
                )));
            }
            if u == v {
                return Err(Error::Precondition(format!("self-loop at node {u}")));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            if list.len() != before {
                return Err(Error::Precondition("duplicate edge".into()));
            }
            edge_count += list.len();
        }
        let label_index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as NodeId))
            .collect::<HashMap<_, _>>();
        if label_index.len() != n {
            return Err(Error::Precondition("node labels are not unique".into()));
        }
        Ok(Graph {
            adjacency,
            labels,
            label_index,
            edge_count: edge_count / 2,
        })
    }

    /// Convenience constructor for tests and fixtures: dense-id edges with
    /// the ids themselves as labels.
    pub fn from_id_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Graph::from_edges(n, edges, labels).expect("valid fixture edges")
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node as usize].len()
    }

    /// Sorted neighbor list of `node`.
    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.adjacency[node as usize]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn label(&self, node: NodeId) -> &str {
        &self.labels[node as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_id(&self, label: &str) -> Option<NodeId> {
        self.label_index.get(label).copied()
    }

    /// All edges as `(u, v)` pairs with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = u as NodeId;
            nbrs.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    /// BFS distances from `source`; `-1` marks unreachable nodes.
    pub fn bfs_distances(&self, source: NodeId) -> Vec<i32> {
        let mut dist = vec![-1i32; self.node_count()];
        dist[source as usize] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &v in self.neighbors(u) {
                if dist[v as usize] < 0 {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Connected-component id per node, components numbered in order of
    /// their smallest member id.
    pub fn components(&self) -> Vec<u32> {
        let n = self.node_count();
        let mut comp = vec![u32::MAX; n];
        let mut next = 0u32;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if comp[start] != u32::MAX {
                continue;
            }
            comp[start] = next;
            queue.push_back(start as NodeId);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if comp[v as usize] == u32::MAX {
                        comp[v as usize] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n <= 1 {
            return true;
        }
        self.bfs_distances(0).iter().all(|&d| d >= 0)
    }

    /// Write the label map as two-column CSV: `original_label,dense_id`.
    pub fn label_map_csv(&self) -> String {
        let mut out = String::from("original_label,dense_id\n");
        for (i, label) in self.labels.iter().enumerate() {
            out.push_str(label);
            out.push(',');
            out.push_str(&i.to_string());
            out.push('\n');
        }
        out
    }
}

/// Parse an edge list from a reader.
///
/// Lines are whitespace- or comma-delimited; `#`- and `%`-prefixed lines are
/// comments. Node labels may be arbitrary strings and are remapped to dense
/// ids in first-seen order. Self-loops and duplicate edges are dropped and
/// counted in the report.
pub fn ingest_edge_list<R: BufRead>(
    reader: R,
    source_name: &str,
    options: &IngestOptions,
) -> Result<(Graph, IngestReport)> {
    let mut labels: Vec<String> = Vec::new();
    let mut label_index: HashMap<String, NodeId> = HashMap::new();
    let mut seen_edges: std::collections::HashSet<(NodeId, NodeId)> = Default::default();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut report = IngestReport::default();

    let intern = |label: &str, labels: &mut Vec<String>, index: &mut HashMap<String, NodeId>| {
        if let Some(&id) = index.get(label) {
            id
        } else {
            let id = labels.len() as NodeId;
            labels.push(label.to_string());
            index.insert(label.to_string(), id);
            id
        }
    };

    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| Error::io(source_name, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || options.is_comment_line(trimmed) {
            continue;
        }
        let fields = options.split_fields(trimmed);
        match fields.len() {
            2 => {}
            n if n > 2 && options.allow_extra_columns => {}
            1 => {
                return Err(Error::MalformedLine {
                    path: source_name.to_string(),
                    line: lineno,
                    message: "expected two node labels, found one token".into(),
                })
            }
            n => {
                return Err(Error::MalformedLine {
                    path: source_name.to_string(),
                    line: lineno,
                    message: format!("expected two node labels, found {n} tokens"),
                })
            }
        }
        report.data_lines += 1;
        let u = intern(fields[0], &mut labels, &mut label_index);
        let v = intern(fields[1], &mut labels, &mut label_index);
        if u == v {
            report.self_loops_dropped += 1;
            continue;
        }
        let key = (u.min(v), u.max(v));
        if !seen_edges.insert(key) {
            report.duplicate_edges_dropped += 1;
            continue;
        }
        edges.push(key);
    }

    if report.data_lines == 0 {
        return Err(Error::EmptyInput {
            path: source_name.to_string(),
        });
    }

    let n = labels.len();
    let graph = Graph::from_edges(n, &edges, labels)?;
    report.nodes = graph.node_count();
    report.edges = graph.edge_count();
    Ok((graph, report))
}

/// Ingest an edge list from a file path.
pub fn ingest_edge_list_path(
    path: impl AsRef<Path>,
    options: &IngestOptions,
) -> Result<(Graph, IngestReport)> {
    let path = path.as_ref();
    let name = path.display().to_string();
    let file = std::fs::File::open(path).map_err(|e| Error::io(&name, e))?;
    ingest_edge_list(std::io::BufReader::new(file), &name, options)
}

/// Extract the largest connected component.
///
/// Returns the induced subgraph (dense ids reassigned in ascending original
/// id order, labels carried over) and the remap table `new id -> old id`.
/// Ties on component size go to the component containing the smallest
/// original id.
pub fn largest_connected_component(g: &Graph) -> (Graph, Vec<NodeId>) {
    let comp = g.components();
    let num_components = comp.iter().copied().max().map(|c| c + 1).unwrap_or(0);
    if num_components <= 1 {
        let remap = (0..g.node_count() as NodeId).collect();
        return (g.clone(), remap);
    }
    let mut sizes = vec![0usize; num_components as usize];
    for &c in &comp {
        sizes[c as usize] += 1;
    }
    // Components are numbered by smallest member id, so the first maximal
    // one is the required tie-break winner.
    let best = sizes
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(c, _)| c as u32)
        .unwrap_or(0);

    let keep: Vec<NodeId> = (0..g.node_count() as NodeId)
        .filter(|&v| comp[v as usize] == best)
        .collect();
    let mut old_to_new = vec![u32::MAX; g.node_count()];
    for (new, &old) in keep.iter().enumerate() {
        old_to_new[old as usize] = new as u32;
    }
    let labels = keep.iter().map(|&old| g.label(old).to_string()).collect();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        if comp[u as usize] == best {
            edges.push((old_to_new[u as usize], old_to_new[v as usize]));
        }
    }
    let sub = Graph::from_edges(keep.len(), &edges, labels).expect("LCC induces a valid graph");
    (sub, keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn ingest_str(s: &str) -> Result<(Graph, IngestReport)> {
        ingest_edge_list(Cursor::new(s), "<test>", &IngestOptions::default())
    }

    #[test]
    fn triangle_from_text() {
        let (g, report) = ingest_str("1 2\n2 3\n1 3").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(report.self_loops_dropped, 0);
        assert_eq!(report.duplicate_edges_dropped, 0);
        // first-seen label order
        assert_eq!(g.label(0), "1");
        assert_eq!(g.label(2), "3");
    }

    #[test]
    fn duplicates_and_self_loops_dropped() {
        let (g, report) = ingest_str("a b\nb a\na a").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(report.duplicate_edges_dropped, 1);
        assert_eq!(report.self_loops_dropped, 1);
    }

    #[test]
    fn comma_delimited_and_comments() {
        let (g, _) = ingest_str("# comment\n% also comment\na,b\nb,c\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn malformed_line_reports_number() {
        let err = ingest_str("a b\nc\n").unwrap_err();
        match err {
            Error::MalformedLine { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn three_tokens_rejected_by_default() {
        let err = ingest_str("a b 1.5\n").unwrap_err();
        assert!(matches!(err, Error::MalformedLine { line: 1, .. }));
        let opts = IngestOptions {
            allow_extra_columns: true,
            ..Default::default()
        };
        let (g, _) = ingest_edge_list(Cursor::new("a b 1.5\n"), "<test>", &opts).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(ingest_str(""), Err(Error::EmptyInput { .. })));
        assert!(matches!(
            ingest_str("# only comments\n\n"),
            Err(Error::EmptyInput { .. })
        ));
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let (g, _) = ingest_str("a b\nb c\nc d\nd a\na c").unwrap();
        let sum: usize = (0..g.node_count() as NodeId).map(|v| g.degree(v)).sum();
        assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn lcc_of_connected_graph_is_identity() {
        let g = Graph::from_id_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let (lcc, remap) = largest_connected_component(&g);
        assert_eq!(lcc.node_count(), 3);
        assert_eq!(lcc.edge_count(), 3);
        assert_eq!(remap, vec![0, 1, 2]);
    }

    #[test]
    fn lcc_tie_goes_to_smallest_original_id() {
        // two disjoint triangles: {0,1,2} and {3,4,5}
        let g = Graph::from_id_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        let (lcc, remap) = largest_connected_component(&g);
        assert_eq!(lcc.node_count(), 3);
        assert_eq!(lcc.edge_count(), 3);
        assert_eq!(remap, vec![0, 1, 2]);
        assert_eq!(lcc.label(0), "0");
    }

    #[test]
    fn lcc_picks_strictly_larger_component() {
        // triangle {0,1,2} plus path {3,4}
        let g = Graph::from_id_edges(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]);
        let (lcc, remap) = largest_connected_component(&g);
        assert_eq!(lcc.node_count(), 3);
        assert_eq!(remap, vec![0, 1, 2]);
    }

    #[test]
    fn lcc_keeps_original_labels() {
        let (g, _) = ingest_str("x y\ny z\nx z\nq r").unwrap();
        let (lcc, _) = largest_connected_component(&g);
        assert_eq!(lcc.node_count(), 3);
        assert!(lcc.node_id("x").is_some());
        assert!(lcc.node_id("q").is_none());
    }

    #[test]
    fn bfs_distances_on_path() {
        let g = Graph::from_id_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.bfs_distances(0), vec![0, 1, 2, 3]);
        assert_eq!(g.bfs_distances(1), vec![1, 0, 1, 2]);
    }

    #[test]
    fn label_map_round_trip() {
        let (g, _) = ingest_str("alice bob\nbob carol").unwrap();
        let csv = g.label_map_csv();
        assert!(csv.starts_with("original_label,dense_id\n"));
        assert!(csv.contains("alice,0\n"));
        assert!(csv.contains("carol,2\n"));
    }
}
