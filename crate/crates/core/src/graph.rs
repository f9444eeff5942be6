//! Immutable undirected graphs with the set primitives used throughout the crate.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::VertexSet;

/// An undirected simple graph over dense vertex indices `0..n` with a label table.
#[derive(Clone, Debug)]
pub struct Graph {
    family: String,
    params: BTreeMap<String, u64>,
    labels: Vec<String>,
    adjacency: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
    vertex_transitive: bool,
}

/// On-disk interchange form: edges listed once, smaller index first, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub family: String,
    pub params: BTreeMap<String, u64>,
    pub labels: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges, repeated labels and
    /// out-of-range endpoints.
    pub fn from_edges(
        family: impl Into<String>,
        params: BTreeMap<String, u64>,
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(invalid(format!("duplicate vertex label {label:?}")));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(format!("duplicate edge at vertex {v}")));
            }
        }
        Ok(Graph { family: family.into(), params, labels, adjacency, index, vertex_transitive: false })
    }

    pub(crate) fn mark_vertex_transitive(mut self) -> Graph {
        self.vertex_transitive = true;
        self
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn params(&self) -> &BTreeMap<String, u64> {
        &self.params
    }

    /// True for graphs produced by the topology generators, all of which are
    /// vertex-transitive. Exhaustive searches use this to anchor vertex 0.
    pub fn is_vertex_transitive(&self) -> bool {
        self.vertex_transitive
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Each edge once as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.vertex_count())
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn set_of<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<VertexSet> {
        VertexSet::from_indices(self.vertex_count(), indices)
    }

    pub fn set_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        let mut set = self.empty_set();
        for l in labels {
            let v = self.vertex(l.as_ref()).ok_or_else(|| invalid(format!("unknown vertex label {:?}", l.as_ref())))?;
            set.insert(v);
        }
        Ok(set)
    }

    pub fn labels_of(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|v| self.labels[v].clone()).collect()
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.universe() != self.vertex_count() {
            return Err(invalid(format!(
                "vertex set over {} vertices used with a graph of {} vertices",
                set.universe(),
                self.vertex_count()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(invalid(format!("vertex {v} out of range for {} vertices", self.vertex_count())));
        }
        Ok(())
    }

    /// N(S): vertices outside `s` adjacent to some member of `s`.
    pub fn open_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        let mut out = self.empty_set();
        for v in s {
            for &w in &self.adjacency[v] {
                if !s.contains(w) {
                    out.insert(w);
                }
            }
        }
        Ok(out)
    }

    /// N(S) together with S.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        let mut out = self.open_neighborhood(s)?;
        out.union_with(s);
        Ok(out)
    }

    /// Connected components of `G - removed`, ordered by smallest member.
    pub fn components(&self, removed: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(removed)?;
        let n = self.vertex_count();
        let mut seen = removed.clone();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = self.empty_set();
            seen.insert(start);
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for &w in &self.adjacency[v] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components(&self.empty_set()).map(|c| c.len() == 1).unwrap_or(false)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adjacency.iter().all(|l| l.len() + 1 == n)
    }

    /// Shortest-path edge count, or `None` when `v` is unreachable from `u`.
    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(Some(0));
        }
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adjacency[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == v {
                        return Ok(Some(dist[y]));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(None)
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<VertexSet> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(invalid("common neighbors of a vertex with itself"));
        }
        let mut out = self.empty_set();
        let (a, b) = (&self.adjacency[u], &self.adjacency[v]);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.insert(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(out)
    }

    /// True iff `G - f` has at least two components.
    pub fn is_vertex_cut(&self, f: &VertexSet) -> Result<bool> {
        self.check_set(f)?;
        if f.len() == self.vertex_count() {
            return Err(invalid("removing every vertex leaves an empty survival graph"));
        }
        Ok(self.components(f)?.len() >= 2)
    }

    /// Number of edges with one end in `a` and the other in `b`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter().map(|u| self.adjacency[u].iter().filter(|&&w| b.contains(w)).count()).sum()
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            family: self.family.clone(),
            params: self.params.clone(),
            labels: self.labels.clone(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("graph documents always serialize")
    }

    /// Reads the interchange form. Documents tagged with a generator family are
    /// regenerated and compared, and only then treated as vertex-transitive.
    pub fn from_document(doc: GraphDocument) -> Result<Graph> {
        let mut sorted = doc.edges.clone();
        sorted.sort_unstable();
        if sorted != doc.edges || doc.edges.iter().any(|[u, v]| u >= v) {
            return Err(Error::Json("edges must be listed once, smaller index first, in sorted order".into()));
        }
        let graph = Graph::from_edges(
            doc.family.clone(),
            doc.params.clone(),
            doc.labels.clone(),
            doc.edges.iter().map(|&[u, v]| (u, v)),
        )?;
        if let Ok(spec) = crate::topology::TopologySpec::from_family_params(&doc.family, &doc.params) {
            if let Ok(reference) = spec.generate() {
                if reference.to_document() == doc {
                    return Ok(graph.mark_vertex_transitive());
                }
            }
        }
        Ok(graph)
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Graph::from_document(doc)
    }
}
