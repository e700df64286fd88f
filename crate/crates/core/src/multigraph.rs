//! Exact undirected multigraphs with loops and parallel edges.
//!
//! Vertices are string tokens and edges carry unique string labels (the
//! Schwinger variable names). Vertex and edge storage order is always the
//! sorted token/label order, so two structurally equal inputs have
//! identical internal layout. All operations are pure: they build new
//! graphs and never mutate the receiver.

use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("no such edge `{0}`")]
    NoSuchEdge(String),
    #[error("no such vertex `{0}`")]
    NoSuchVertex(String),
    #[error("duplicate edge label `{0}`")]
    DuplicateLabel(String),
    #[error("empty edge label")]
    EmptyLabel,
    #[error("deletion and contraction sets overlap on `{0}`")]
    OverlappingSets(String),
    #[error("graph must be connected")]
    Disconnected,
    #[error("connectivity search supports cut sizes 1..=4, got {0}")]
    CutSizeOutOfRange(usize),
}

/// A set of edge labels, all expected to live in some host graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Hash)]
pub struct EdgeSet(BTreeSet<String>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet::default()
    }

    pub fn from_labels<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        EdgeSet(labels.into_iter().map(Into::into).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.contains(label)
    }

    pub fn insert(&mut self, label: impl Into<String>) {
        self.0.insert(label.into());
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|s| s.as_str())
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl<S: Into<String>> FromIterator<S> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        EdgeSet::from_labels(iter)
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// One connected component of `g - cut` together with the cut vertices and
/// every edge incident to the component or joining two cut vertices.
#[derive(Debug, Clone)]
pub struct FullComponent {
    pub cut: Vec<String>,
    /// Vertices of the component proper (cut vertices excluded).
    pub interior: Vec<String>,
    pub graph: Multigraph,
}

impl FullComponent {
    pub fn edge_labels(&self) -> EdgeSet {
        self.graph.edge_labels()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Edge {
    label: String,
    /// Endpoint indices into `vertices`, with `u <= v`; a loop has `u == v`.
    u: usize,
    v: usize,
}

/// Undirected multigraph with sorted, deterministic internal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Multigraph {
    /// Build a graph from explicit vertices plus edges. Endpoints not
    /// listed among the vertices are added automatically.
    pub fn new<V, E, S1, S2, S3>(vertices: V, edges: E) -> Result<Multigraph, GraphError>
    where
        V: IntoIterator<Item = S1>,
        E: IntoIterator<Item = (S2, S3, S3)>,
        S1: Into<String>,
        S2: Into<String>,
        S3: Into<String>,
    {
        let mut vset: BTreeSet<String> = vertices.into_iter().map(Into::into).collect();
        let raw: Vec<(String, String, String)> = edges
            .into_iter()
            .map(|(l, a, b)| (l.into(), a.into(), b.into()))
            .collect();
        for (_, a, b) in &raw {
            vset.insert(a.clone());
            vset.insert(b.clone());
        }
        let vertices: Vec<String> = vset.into_iter().collect();
        let index: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_str(), i))
            .collect();
        let mut labels = BTreeSet::new();
        let mut edges = Vec::with_capacity(raw.len());
        for (label, a, b) in raw {
            if label.is_empty() {
                return Err(GraphError::EmptyLabel);
            }
            if !labels.insert(label.clone()) {
                return Err(GraphError::DuplicateLabel(label));
            }
            let mut u = index[a.as_str()];
            let mut v = index[b.as_str()];
            if u > v {
                std::mem::swap(&mut u, &mut v);
            }
            edges.push(Edge { label, u, v });
        }
        edges.sort_by(|a, b| a.label.cmp(&b.label));
        Ok(Multigraph { vertices, edges })
    }

    pub fn from_edges<E, S2, S3>(edges: E) -> Result<Multigraph, GraphError>
    where
        E: IntoIterator<Item = (S2, S3, S3)>,
        S2: Into<String>,
        S3: Into<String>,
    {
        Multigraph::new(Vec::<String>::new(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex tokens in sorted order.
    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(|s| s.as_str())
    }

    /// Edge labels in sorted order.
    pub fn edge_label_iter(&self) -> impl Iterator<Item = &str> {
        self.edges.iter().map(|e| e.label.as_str())
    }

    pub fn edge_labels(&self) -> EdgeSet {
        EdgeSet::from_labels(self.edge_label_iter())
    }

    pub fn has_edge(&self, label: &str) -> bool {
        self.edge_index(label).is_some()
    }

    pub fn has_vertex(&self, token: &str) -> bool {
        self.vertices.binary_search_by(|t| t.as_str().cmp(token)).is_ok()
    }

    fn edge_index(&self, label: &str) -> Option<usize> {
        self.edges
            .binary_search_by(|e| e.label.as_str().cmp(label))
            .ok()
    }

    fn vertex_index(&self, token: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|t| t.as_str().cmp(token))
            .ok()
    }

    /// Endpoint tokens of an edge, in sorted order. Loops return the same
    /// token twice.
    pub fn endpoints(&self, label: &str) -> Result<(&str, &str), GraphError> {
        let i = self
            .edge_index(label)
            .ok_or_else(|| GraphError::NoSuchEdge(label.to_string()))?;
        let e = &self.edges[i];
        Ok((self.vertices[e.u].as_str(), self.vertices[e.v].as_str()))
    }

    pub fn is_loop(&self, label: &str) -> Result<bool, GraphError> {
        let (a, b) = self.endpoints(label)?;
        Ok(a == b)
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, token: &str) -> Result<usize, GraphError> {
        let i = self
            .vertex_index(token)
            .ok_or_else(|| GraphError::NoSuchVertex(token.to_string()))?;
        Ok(self
            .edges
            .iter()
            .map(|e| (e.u == i) as usize + (e.v == i) as usize)
            .sum())
    }

    /// Labels of the edges incident to a vertex (loops included once).
    pub fn incident_edges(&self, token: &str) -> Result<Vec<&str>, GraphError> {
        let i = self
            .vertex_index(token)
            .ok_or_else(|| GraphError::NoSuchVertex(token.to_string()))?;
        Ok(self
            .edges
            .iter()
            .filter(|e| e.u == i || e.v == i)
            .map(|e| e.label.as_str())
            .collect())
    }

    /// Distinct neighbor tokens of a vertex (the vertex itself never
    /// appears, even with a loop present).
    pub fn neighbors(&self, token: &str) -> Result<Vec<&str>, GraphError> {
        let i = self
            .vertex_index(token)
            .ok_or_else(|| GraphError::NoSuchVertex(token.to_string()))?;
        let mut out = BTreeSet::new();
        for e in &self.edges {
            if e.u == i && e.v != i {
                out.insert(self.vertices[e.v].as_str());
            } else if e.v == i && e.u != i {
                out.insert(self.vertices[e.u].as_str());
            }
        }
        Ok(out.into_iter().collect())
    }

    pub fn delete_edge(&self, label: &str) -> Result<Multigraph, GraphError> {
        let i = self
            .edge_index(label)
            .ok_or_else(|| GraphError::NoSuchEdge(label.to_string()))?;
        let mut edges = self.edges.clone();
        edges.remove(i);
        Ok(Multigraph {
            vertices: self.vertices.clone(),
            edges,
        })
    }

    /// Contract an edge: the endpoints are identified and keep the
    /// lexicographically smaller token. Parallel edges and loops created
    /// by the merge are retained. Contracting a loop is the same as
    /// deleting it.
    pub fn contract_edge(&self, label: &str) -> Result<Multigraph, GraphError> {
        let i = self
            .edge_index(label)
            .ok_or_else(|| GraphError::NoSuchEdge(label.to_string()))?;
        let e = self.edges[i].clone();
        if e.u == e.v {
            return self.delete_edge(label);
        }
        // Vertices are sorted, so e.u holds the smaller token; e.v merges
        // into it and disappears.
        let keep = e.u;
        let gone = e.v;
        let vertices: Vec<String> = self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != gone)
            .map(|(_, t)| t.clone())
            .collect();
        let remap = |k: usize| -> usize {
            let k = if k == gone { keep } else { k };
            if k > gone {
                k - 1
            } else {
                k
            }
        };
        let edges = self
            .edges
            .iter()
            .filter(|f| f.label != e.label)
            .map(|f| {
                let mut u = remap(f.u);
                let mut v = remap(f.v);
                if u > v {
                    std::mem::swap(&mut u, &mut v);
                }
                Edge {
                    label: f.label.clone(),
                    u,
                    v,
                }
            })
            .collect();
        Ok(Multigraph { vertices, edges })
    }

    /// Apply all deletions, then all contractions. The result does not
    /// depend on the order within each set.
    pub fn take_minor(&self, del: &EdgeSet, con: &EdgeSet) -> Result<Multigraph, GraphError> {
        if let Some(shared) = del.iter().find(|l| con.contains(l)) {
            return Err(GraphError::OverlappingSets(shared.to_string()));
        }
        for l in del.iter().chain(con.iter()) {
            if !self.has_edge(l) {
                return Err(GraphError::NoSuchEdge(l.to_string()));
            }
        }
        let mut g = self.clone();
        for l in del.iter() {
            g = g.delete_edge(l)?;
        }
        for l in con.iter() {
            g = g.contract_edge(l)?;
        }
        Ok(g)
    }

    /// Connected components as sorted vertex-token sets, ordered by their
    /// smallest member.
    pub fn connected_components(&self) -> Vec<Vec<String>> {
        let mut dsu = Dsu::new(self.vertex_count());
        for e in &self.edges {
            dsu.union(e.u, e.v);
        }
        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (i, t) in self.vertices.iter().enumerate() {
            groups.entry(dsu.find(i)).or_default().push(t.clone());
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.connected_components().len() == 1
    }

    /// First Betti number `|E| - |V| + k`.
    pub fn loop_number(&self) -> usize {
        self.edge_count() + self.connected_components().len().max(1) - self.vertex_count()
    }

    /// Search for a vertex separator of size at most `max_size` (1..=4).
    /// Removal must disconnect the graph or leave at most one vertex. The
    /// smallest separator is returned, ties broken lexicographically.
    pub fn vertex_connectivity_le(&self, max_size: usize) -> Result<Option<Vec<String>>, GraphError> {
        if !(1..=4).contains(&max_size) {
            return Err(GraphError::CutSizeOutOfRange(max_size));
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let n = self.vertex_count();
        for size in 1..=max_size.min(n) {
            for cut in (0..n).combinations(size) {
                if self.removal_disconnects(&cut) || n - size <= 1 {
                    return Ok(Some(cut.into_iter().map(|i| self.vertices[i].clone()).collect()));
                }
            }
        }
        Ok(None)
    }

    fn removal_disconnects(&self, cut: &[usize]) -> bool {
        let n = self.vertex_count();
        let keep: Vec<usize> = (0..n).filter(|i| !cut.contains(i)).collect();
        if keep.len() <= 1 {
            return false;
        }
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut dsu = Dsu::new(keep.len());
        for e in &self.edges {
            if let (Some(&a), Some(&b)) = (pos.get(&e.u), pos.get(&e.v)) {
                dsu.union(a, b);
            }
        }
        let root = dsu.find(0);
        (1..keep.len()).any(|i| dsu.find(i) != root)
    }

    /// All vertex cuts of exactly `size` whose removal leaves two or more
    /// components, as sorted token lists.
    pub fn proper_vertex_cuts(&self, size: usize) -> Vec<Vec<String>> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        if size >= n {
            return out;
        }
        for cut in (0..n).combinations(size) {
            if self.removal_disconnects(&cut) {
                out.push(cut.into_iter().map(|i| self.vertices[i].clone()).collect());
            }
        }
        out
    }

    /// Full components of a vertex cut: one per connected component of
    /// `g - cut`, each containing the cut vertices, the component, and all
    /// incident edges. An edge joining two cut vertices appears in every
    /// full component.
    pub fn full_components(&self, cut: &[String]) -> Result<Vec<FullComponent>, GraphError> {
        let mut cut_idx = Vec::with_capacity(cut.len());
        for t in cut {
            cut_idx.push(
                self.vertex_index(t)
                    .ok_or_else(|| GraphError::NoSuchVertex(t.clone()))?,
            );
        }
        let n = self.vertex_count();
        let keep: Vec<usize> = (0..n).filter(|i| !cut_idx.contains(i)).collect();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut dsu = Dsu::new(keep.len());
        for e in &self.edges {
            if let (Some(&a), Some(&b)) = (pos.get(&e.u), pos.get(&e.v)) {
                dsu.union(a, b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (p, &i) in keep.iter().enumerate() {
            groups.entry(dsu.find(p)).or_default().push(i);
        }
        let mut sorted_cut: Vec<String> = cut.to_vec();
        sorted_cut.sort();
        let mut out = Vec::new();
        for group in groups.into_values() {
            let inside: BTreeSet<usize> = group.iter().copied().collect();
            let mut vset: BTreeSet<usize> = inside.clone();
            vset.extend(cut_idx.iter().copied());
            let edges: Vec<(String, String, String)> = self
                .edges
                .iter()
                .filter(|e| {
                    let u_in = inside.contains(&e.u);
                    let v_in = inside.contains(&e.v);
                    let u_cut = cut_idx.contains(&e.u);
                    let v_cut = cut_idx.contains(&e.v);
                    (u_in || v_in || (u_cut && v_cut)) && (u_in || u_cut) && (v_in || v_cut)
                })
                .map(|e| {
                    (
                        e.label.clone(),
                        self.vertices[e.u].clone(),
                        self.vertices[e.v].clone(),
                    )
                })
                .collect();
            let tokens: Vec<String> = vset.into_iter().map(|i| self.vertices[i].clone()).collect();
            let graph = Multigraph::new(tokens, edges)?;
            out.push(FullComponent {
                cut: sorted_cut.clone(),
                interior: group.into_iter().map(|i| self.vertices[i].clone()).collect(),
                graph,
            });
        }
        Ok(out)
    }

    /// Enumerate the spanning trees as edge-label sets, in deterministic
    /// order. A tree yields its single spanning tree, a disconnected graph
    /// yields none.
    pub fn spanning_trees(&self) -> Vec<EdgeSet> {
        let n = self.vertex_count();
        if n == 0 {
            return Vec::new();
        }
        let want = n - 1;
        if self.edge_count() < want || !self.is_connected() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for combo in (0..self.edge_count()).combinations(want) {
            if self.is_tree_indices(&combo) {
                out.push(EdgeSet::from_labels(
                    combo.iter().map(|&i| self.edges[i].label.clone()),
                ));
            }
        }
        out
    }

    fn is_tree_indices(&self, edge_indices: &[usize]) -> bool {
        let n = self.vertex_count();
        if edge_indices.len() != n.saturating_sub(1) {
            return false;
        }
        let mut dsu = Dsu::new(n);
        for &i in edge_indices {
            let e = &self.edges[i];
            if !dsu.union(e.u, e.v) {
                return false;
            }
        }
        true
    }

    pub fn is_spanning_tree(&self, t: &EdgeSet) -> bool {
        let mut indices = Vec::with_capacity(t.len());
        for l in t.iter() {
            match self.edge_index(l) {
                Some(i) => indices.push(i),
                None => return false,
            }
        }
        self.is_tree_indices(&indices)
    }

    /// True when the edge set is acyclic (union-find check; loops are
    /// cycles).
    pub fn is_forest(&self, t: &EdgeSet) -> bool {
        let mut dsu = Dsu::new(self.vertex_count());
        for l in t.iter() {
            match self.edge_index(l) {
                Some(i) => {
                    let e = &self.edges[i];
                    if !dsu.union(e.u, e.v) {
                        return false;
                    }
                }
                None => return false,
            }
        }
        true
    }

    /// Induced subgraph on a vertex subset: all edges with both endpoints
    /// inside.
    pub fn induced_subgraph(&self, tokens: &[String]) -> Result<Multigraph, GraphError> {
        let mut idx = BTreeSet::new();
        for t in tokens {
            idx.insert(
                self.vertex_index(t)
                    .ok_or_else(|| GraphError::NoSuchVertex(t.clone()))?,
            );
        }
        let edges: Vec<(String, String, String)> = self
            .edges
            .iter()
            .filter(|e| idx.contains(&e.u) && idx.contains(&e.v))
            .map(|e| {
                (
                    e.label.clone(),
                    self.vertices[e.u].clone(),
                    self.vertices[e.v].clone(),
                )
            })
            .collect();
        Multigraph::new(tokens.to_vec(), edges)
    }

    /// Subgraph spanned by an edge subset; vertices are the endpoints only.
    pub fn edge_subgraph(&self, labels: &EdgeSet) -> Result<Multigraph, GraphError> {
        let mut edges = Vec::new();
        for l in labels.iter() {
            let (a, b) = self.endpoints(l)?;
            edges.push((l.to_string(), a.to_string(), b.to_string()));
        }
        Multigraph::from_edges(edges)
    }

    /// Relabel vertices through a token map; unmapped tokens stay.
    pub fn rename_vertices(&self, map: &BTreeMap<String, String>) -> Result<Multigraph, GraphError> {
        let trans = |t: &String| map.get(t).cloned().unwrap_or_else(|| t.clone());
        Multigraph::new(
            self.vertices.iter().map(&trans),
            self.edges.iter().map(|e| {
                (
                    e.label.clone(),
                    trans(&self.vertices[e.u]),
                    trans(&self.vertices[e.v]),
                )
            }),
        )
    }

    /// Relabel edges through a label map; unmapped labels stay.
    pub fn rename_edges(&self, map: &BTreeMap<String, String>) -> Result<Multigraph, GraphError> {
        Multigraph::new(
            self.vertices.clone(),
            self.edges.iter().map(|e| {
                (
                    map.get(&e.label).cloned().unwrap_or_else(|| e.label.clone()),
                    self.vertices[e.u].clone(),
                    self.vertices[e.v].clone(),
                )
            }),
        )
    }

    // ----- canonical form and isomorphism -----

    /// Parallel-collapsed view: multiplicity per unordered vertex-index
    /// pair and loop count per vertex.
    fn collapsed(&self) -> (BTreeMap<(usize, usize), u32>, Vec<u32>) {
        let mut mult: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        let mut loops = vec![0u32; self.vertex_count()];
        for e in &self.edges {
            if e.u == e.v {
                loops[e.u] += 1;
            } else {
                *mult.entry((e.u, e.v)).or_insert(0) += 1;
            }
        }
        (mult, loops)
    }

    /// Canonical byte string: invariant under vertex renaming and edge
    /// relabeling, sensitive to parallel multiplicities and loops.
    pub fn canonical_form(&self) -> Vec<u8> {
        let n = self.vertex_count();
        let (mult, loops) = self.collapsed();
        let mut adj = vec![vec![0u32; n]; n];
        for (&(u, v), &m) in &mult {
            adj[u][v] = m;
            adj[v][u] = m;
        }
        // Iterated refinement: color by (loop count, multiset of
        // (multiplicity, neighbor color)).
        let mut colors: Vec<u64> = (0..n).map(|i| loops[i] as u64).collect();
        loop {
            let mut sigs: Vec<(u64, u32, Vec<(u32, u64)>)> = (0..n)
                .map(|i| {
                    let mut neigh: Vec<(u32, u64)> = (0..n)
                        .filter(|&j| adj[i][j] > 0)
                        .map(|j| (adj[i][j], colors[j]))
                        .collect();
                    neigh.sort();
                    (colors[i], loops[i], neigh)
                })
                .collect();
            let mut distinct: Vec<(u64, u32, Vec<(u32, u64)>)> = sigs.clone();
            distinct.sort();
            distinct.dedup();
            let new_colors: Vec<u64> = sigs
                .drain(..)
                .map(|s| distinct.binary_search(&s).unwrap() as u64)
                .collect();
            if new_colors == colors {
                break;
            }
            colors = new_colors;
        }
        let mut best: Option<Vec<u8>> = None;
        let mut perm: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        canonical_search(n, &adj, &loops, &colors, &mut perm, &mut used, &mut best);
        let mut out = Vec::new();
        out.extend((n as u32).to_be_bytes());
        out.extend((self.edge_count() as u32).to_be_bytes());
        out.extend(best.unwrap_or_default());
        out
    }

    pub fn is_isomorphic(&self, other: &Multigraph) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.edge_count() == other.edge_count()
            && self.canonical_form() == other.canonical_form()
    }

    /// All vertex permutations preserving adjacency multiplicities and
    /// loop counts, as index maps.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let (mult, loops) = self.collapsed();
        let mut adj = vec![vec![0u32; n]; n];
        for (&(u, v), &m) in &mult {
            adj[u][v] = m;
            adj[v][u] = m;
        }
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        automorphism_search(n, &adj, &loops, 0, &mut perm, &mut used, &mut out);
        out
    }

    /// Orbit signature of an edge subset under the automorphism group:
    /// the sorted list of (endpoint pair, count) images, minimized over
    /// all automorphisms. Two subsets are related by an automorphism
    /// exactly when their signatures match; parallel edges contribute by
    /// count, not identity.
    pub fn edge_set_orbit_signature(&self, set: &EdgeSet) -> Vec<(usize, usize, usize)> {
        let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for l in set.iter() {
            let i = self.edge_index(l).expect("edge set must live in host");
            let e = &self.edges[i];
            *pairs.entry((e.u, e.v)).or_insert(0) += 1;
        }
        let mut best: Option<Vec<(usize, usize, usize)>> = None;
        for auto in self.automorphisms() {
            let mut image: Vec<(usize, usize, usize)> = pairs
                .iter()
                .map(|(&(u, v), &c)| {
                    let (mut a, mut b) = (auto[u], auto[v]);
                    if a > b {
                        std::mem::swap(&mut a, &mut b);
                    }
                    (a, b, c)
                })
                .collect();
            image.sort();
            if best.as_ref().is_none_or(|b| &image < b) {
                best = Some(image);
            }
        }
        best.unwrap_or_default()
    }

    /// Degree sequence (loops counted twice), descending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.vertex_count()];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// A fresh vertex token with the given prefix.
    pub fn fresh_vertex_token(&self, prefix: &str) -> String {
        (0..)
            .map(|k| format!("{prefix}{k}"))
            .find(|t| !self.has_vertex(t))
            .unwrap()
    }

    /// A batch of fresh edge labels with the given prefix.
    pub fn fresh_edge_labels(&self, prefix: &str, count: usize) -> Vec<String> {
        let mut out = Vec::with_capacity(count);
        let mut k = 0usize;
        while out.len() < count {
            let l = format!("{prefix}{k}");
            if !self.has_edge(&l) {
                out.push(l);
            }
            k += 1;
        }
        out
    }
}

fn canonical_search(
    n: usize,
    adj: &[Vec<u32>],
    loops: &[u32],
    colors: &[u64],
    perm: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<Vec<u8>>,
) {
    let depth = perm.len();
    if depth == n {
        let enc = encode_ordered(n, adj, loops, perm);
        if best.as_ref().is_none_or(|b| &enc < b) {
            *best = Some(enc);
        }
        return;
    }
    // Only vertices from the minimal remaining color class are candidates
    // at this depth; the refinement is isomorphism-invariant so this keeps
    // canonical forms comparable across relabelings.
    let min_color = (0..n)
        .filter(|&i| !used[i])
        .map(|i| colors[i])
        .min()
        .unwrap();
    for i in 0..n {
        if used[i] || colors[i] != min_color {
            continue;
        }
        perm.push(i);
        used[i] = true;
        // Prune: compare the encoding prefix against the current best.
        let partial = encode_ordered_prefix(adj, loops, perm);
        let keep = match best {
            Some(b) => partial.as_slice() <= &b[..partial.len().min(b.len())],
            None => true,
        };
        if keep {
            canonical_search(n, adj, loops, colors, perm, used, best);
        }
        used[i] = false;
        perm.pop();
    }
}

fn encode_ordered(n: usize, adj: &[Vec<u32>], loops: &[u32], perm: &[usize]) -> Vec<u8> {
    debug_assert_eq!(perm.len(), n);
    encode_ordered_prefix(adj, loops, perm)
}

fn encode_ordered_prefix(adj: &[Vec<u32>], loops: &[u32], perm: &[usize]) -> Vec<u8> {
    // Row-by-row: loops[p(i)] then adj[p(i)][p(j)] for j < i.
    let mut out = Vec::new();
    for (i, &pi) in perm.iter().enumerate() {
        out.push(loops[pi].min(255) as u8);
        for &pj in perm.iter().take(i) {
            out.push(adj[pi][pj].min(255) as u8);
        }
    }
    out
}

fn automorphism_search(
    n: usize,
    adj: &[Vec<u32>],
    loops: &[u32],
    depth: usize,
    perm: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    if depth == n {
        out.push(perm.clone());
        return;
    }
    for img in 0..n {
        if used[img] || loops[img] != loops[depth] {
            continue;
        }
        let ok = (0..depth).all(|j| adj[depth][j] == adj[perm[j]][img]);
        if !ok {
            continue;
        }
        perm.push(img);
        used[img] = true;
        automorphism_search(n, adj, loops, depth + 1, perm, used, out);
        used[img] = false;
        perm.pop();
    }
}

/// Plain union-find.
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when both were already in the same set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
