//! Combinatorial planar embeddings, their faces, and planar duals.
//!
//! An embedding is stored as a rotation system: for every vertex, a cyclic
//! order of incident edge-ends (loops contribute two ends). Faces are the
//! orbits of the next-dart walk, and every produced embedding is validated
//! by the Euler count `|V| - |E| + |F| = 2`.
//!
//! Embeddings are found block by block with the classic
//! Demoucron-Malgrange-Pertuiset insertion scheme: start from a cycle,
//! repeatedly place a fragment path into a face whose boundary contains
//! the fragment's attachment vertices, and declare the graph nonplanar as
//! soon as some fragment has no admissible face.

use crate::multigraph::{GraphError, Multigraph};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("graph must be connected")]
    Disconnected,
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One end of an edge. For a non-loop edge, end 0 sits at the smaller
/// endpoint and end 1 at the larger; a loop owns both ends at its vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: String,
    pub end: u8,
}

impl Dart {
    fn new(edge: &str, end: u8) -> Dart {
        Dart {
            edge: edge.to_string(),
            end,
        }
    }

    fn flip(&self) -> Dart {
        Dart {
            edge: self.edge.clone(),
            end: 1 - self.end,
        }
    }
}

/// Cyclic order of incident edge-ends around each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    rotations: BTreeMap<String, Vec<Dart>>,
}

impl RotationSystem {
    pub fn rotation(&self, vertex: &str) -> Option<&[Dart]> {
        self.rotations.get(vertex).map(|v| v.as_slice())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.rotations.keys().map(|s| s.as_str())
    }
}

fn dart_vertex(g: &Multigraph, d: &Dart) -> Result<String, GraphError> {
    let (a, b) = g.endpoints(&d.edge)?;
    Ok(if d.end == 0 { a.to_string() } else { b.to_string() })
}

/// Structural consistency of a rotation system against its graph: every
/// dart appears exactly once, at the right vertex.
fn validate_rotation(g: &Multigraph, rs: &RotationSystem) -> Result<(), PlanarError> {
    let mut seen: BTreeSet<Dart> = BTreeSet::new();
    for (v, rot) in &rs.rotations {
        if !g.has_vertex(v) {
            return Err(PlanarError::InvalidRotation(format!("unknown vertex `{v}`")));
        }
        for d in rot {
            let home = dart_vertex(g, d).map_err(PlanarError::Graph)?;
            if home != *v {
                return Err(PlanarError::InvalidRotation(format!(
                    "dart of `{}` listed at `{v}`, belongs at `{home}`",
                    d.edge
                )));
            }
            if !seen.insert(d.clone()) {
                return Err(PlanarError::InvalidRotation(format!(
                    "dart of `{}` listed twice",
                    d.edge
                )));
            }
        }
    }
    if seen.len() != 2 * g.edge_count() {
        return Err(PlanarError::InvalidRotation(format!(
            "{} darts listed, expected {}",
            seen.len(),
            2 * g.edge_count()
        )));
    }
    Ok(())
}

/// Trace the faces of an embedding: orbits of `d -> successor of flip(d)`
/// in the rotation at the flip's vertex. Each face is a dart cycle;
/// discovery order is deterministic.
pub fn trace_faces(g: &Multigraph, rs: &RotationSystem) -> Result<Vec<Vec<Dart>>, PlanarError> {
    validate_rotation(g, rs)?;
    let succ = |d: &Dart| -> Result<Dart, PlanarError> {
        let twin = d.flip();
        let v = dart_vertex(g, &twin)?;
        let rot = rs
            .rotations
            .get(&v)
            .ok_or_else(|| PlanarError::InvalidRotation(format!("no rotation at `{v}`")))?;
        let i = rot
            .iter()
            .position(|x| *x == twin)
            .ok_or_else(|| PlanarError::InvalidRotation(format!("missing dart at `{v}`")))?;
        Ok(rot[(i + 1) % rot.len()].clone())
    };
    let mut all: BTreeSet<Dart> = BTreeSet::new();
    for l in g.edge_label_iter() {
        all.insert(Dart::new(l, 0));
        all.insert(Dart::new(l, 1));
    }
    let mut faces = Vec::new();
    let mut used: BTreeSet<Dart> = BTreeSet::new();
    for start in &all {
        if used.contains(start) {
            continue;
        }
        let mut face = Vec::new();
        let mut cur = start.clone();
        loop {
            if !used.insert(cur.clone()) {
                return Err(PlanarError::InvalidRotation(
                    "face walk revisited a dart".to_string(),
                ));
            }
            face.push(cur.clone());
            cur = succ(&cur)?;
            if cur == *start {
                break;
            }
        }
        faces.push(face);
    }
    if g.edge_count() == 0 {
        // A single vertex bounds one face.
        faces.push(Vec::new());
    }
    Ok(faces)
}

/// Euler validation: `|V| - |E| + |F| = 2` for a connected planar
/// embedding.
pub fn euler_check(g: &Multigraph, rs: &RotationSystem) -> Result<bool, PlanarError> {
    let faces = trace_faces(g, rs)?;
    Ok(g.vertex_count() + faces.len() == g.edge_count() + 2)
}

/// Planar dual of an embedded graph: one vertex per face (tokens `f0`,
/// `f1`, ... in face discovery order), and for each edge `e` a dual edge
/// with the same label joining the faces on its two sides. A bridge gives
/// a dual loop.
pub fn planar_dual(g: &Multigraph, rs: &RotationSystem) -> Result<Multigraph, PlanarError> {
    if !g.is_connected() {
        return Err(PlanarError::Disconnected);
    }
    let faces = trace_faces(g, rs)?;
    if g.vertex_count() + faces.len() != g.edge_count() + 2 {
        return Err(PlanarError::InvalidRotation(format!(
            "Euler check failed: V={} E={} F={}",
            g.vertex_count(),
            g.edge_count(),
            faces.len()
        )));
    }
    let mut face_of: BTreeMap<Dart, usize> = BTreeMap::new();
    for (i, face) in faces.iter().enumerate() {
        for d in face {
            face_of.insert(d.clone(), i);
        }
    }
    let edges: Vec<(String, String, String)> = g
        .edge_label_iter()
        .map(|l| {
            let a = face_of[&Dart::new(l, 0)];
            let b = face_of[&Dart::new(l, 1)];
            (l.to_string(), format!("f{a}"), format!("f{b}"))
        })
        .collect();
    let vertices: Vec<String> = (0..faces.len()).map(|i| format!("f{i}")).collect();
    Multigraph::new(vertices, edges).map_err(PlanarError::Graph)
}

/// Remove an edge from a rotation system (the embedding of `g \ e`
/// inherited from the embedding of `g`).
pub fn rotation_delete_edge(rs: &RotationSystem, edge: &str) -> RotationSystem {
    RotationSystem {
        rotations: rs
            .rotations
            .iter()
            .map(|(v, rot)| {
                (
                    v.clone(),
                    rot.iter().filter(|d| d.edge != edge).cloned().collect(),
                )
            })
            .collect(),
    }
}

/// Contract a non-loop edge inside an embedding: splice the rotation of
/// the larger endpoint into the smaller one at the contracted edge's
/// position. Returns the contracted graph and its inherited embedding.
/// Contracting a loop deletes it.
pub fn rotation_contract_edge(
    g: &Multigraph,
    rs: &RotationSystem,
    edge: &str,
) -> Result<(Multigraph, RotationSystem), PlanarError> {
    let (a, b) = g.endpoints(edge)?;
    let (a, b) = (a.to_string(), b.to_string());
    let contracted = g.contract_edge(edge)?;
    if a == b {
        return Ok((contracted, rotation_delete_edge(rs, edge)));
    }
    // Rebuild darts against the new graph where `b` has merged into `a`:
    // a dart keeps its tail vertex (b becomes a).
    let recoded = |d: &Dart, old_tail: &str| -> Result<Dart, PlanarError> {
        let tail = if old_tail == b { a.as_str() } else { old_tail };
        let (x, y) = contracted.endpoints(&d.edge).map_err(PlanarError::Graph)?;
        if x == y {
            // Became a loop at `a`: end 0 for the dart that already lived
            // at the kept vertex, end 1 for the merged one.
            Ok(Dart::new(&d.edge, if old_tail == b { 1 } else { 0 }))
        } else if x == tail {
            Ok(Dart::new(&d.edge, 0))
        } else {
            Ok(Dart::new(&d.edge, 1))
        }
    };
    let rot_a = rs
        .rotations
        .get(&a)
        .ok_or_else(|| PlanarError::InvalidRotation(format!("no rotation at `{a}`")))?;
    let rot_b = rs
        .rotations
        .get(&b)
        .ok_or_else(|| PlanarError::InvalidRotation(format!("no rotation at `{b}`")))?;
    let pos_a = rot_a
        .iter()
        .position(|d| d.edge == edge)
        .ok_or_else(|| PlanarError::InvalidRotation("edge missing in rotation".to_string()))?;
    let pos_b = rot_b
        .iter()
        .position(|d| d.edge == edge)
        .ok_or_else(|| PlanarError::InvalidRotation("edge missing in rotation".to_string()))?;
    let mut merged: Vec<Dart> = Vec::new();
    for i in 1..rot_a.len() {
        merged.push(recoded(&rot_a[(pos_a + i) % rot_a.len()], &a)?);
    }
    for i in 1..rot_b.len() {
        merged.push(recoded(&rot_b[(pos_b + i) % rot_b.len()], &b)?);
    }
    let mut rotations: BTreeMap<String, Vec<Dart>> = BTreeMap::new();
    rotations.insert(a.clone(), merged);
    for (v, rot) in &rs.rotations {
        if *v == a || *v == b {
            continue;
        }
        rotations.insert(
            v.clone(),
            rot.iter().map(|d| recoded(d, v)).collect::<Result<_, _>>()?,
        );
    }
    Ok((contracted, RotationSystem { rotations }))
}

/// Directed dart along a walk: an edge with an explicit tail and head.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Step {
    edge: String,
    tail: String,
    head: String,
}

impl Step {
    fn as_dart(&self, g: &Multigraph) -> Dart {
        let (a, _) = g.endpoints(&self.edge).expect("own edge");
        Dart::new(&self.edge, if self.tail == a { 0 } else { 1 })
    }

    fn reversed(&self) -> Step {
        Step {
            edge: self.edge.clone(),
            tail: self.head.clone(),
            head: self.tail.clone(),
        }
    }
}

/// Planarity test with an embedding on success.
pub fn is_planar(g: &Multigraph) -> Result<Option<RotationSystem>, PlanarError> {
    if !g.is_connected() {
        return Err(PlanarError::Disconnected);
    }
    // Loops never affect planarity; reinsert them afterwards as
    // consecutive edge-ends (each closes a face of its own).
    let loops: Vec<(String, String)> = g
        .edge_label_iter()
        .filter_map(|l| {
            let (a, b) = g.endpoints(l).expect("own edge");
            (a == b).then(|| (l.to_string(), a.to_string()))
        })
        .collect();
    let mut core = g.clone();
    for (l, _) in &loops {
        core = core.delete_edge(l)?;
    }
    let mut rotations: BTreeMap<String, Vec<Dart>> = BTreeMap::new();
    for v in g.vertices() {
        rotations.insert(v.to_string(), Vec::new());
    }
    for block in blocks(&core) {
        let block_rot = match embed_block(&core, &block) {
            Some(r) => r,
            None => return Ok(None),
        };
        for (v, rot) in block_rot {
            rotations.get_mut(&v).expect("block vertex").extend(rot);
        }
    }
    for (l, v) in &loops {
        let rot = rotations.get_mut(v).expect("loop vertex");
        rot.push(Dart::new(l, 0));
        rot.push(Dart::new(l, 1));
    }
    let rs = RotationSystem { rotations };
    match euler_check(g, &rs) {
        Ok(true) => Ok(Some(rs)),
        Ok(false) => Err(PlanarError::InvalidRotation(
            "embedding failed Euler validation".to_string(),
        )),
        Err(e) => Err(e),
    }
}

/// Biconnected components of a loopless multigraph, as sorted edge-label
/// groups in deterministic order.
fn blocks(g: &Multigraph) -> Vec<Vec<String>> {
    let vertices: Vec<String> = g.vertices().map(|s| s.to_string()).collect();
    let vidx: BTreeMap<&str, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let labels: Vec<String> = g.edge_label_iter().map(|s| s.to_string()).collect();
    let n = vertices.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (ei, l) in labels.iter().enumerate() {
        let (a, b) = g.endpoints(l).expect("own edge");
        adj[vidx[a]].push((vidx[b], ei));
        adj[vidx[b]].push((vidx[a], ei));
    }
    struct Ctx<'a> {
        adj: &'a [Vec<(usize, usize)>],
        labels: &'a [String],
        disc: Vec<usize>,
        low: Vec<usize>,
        timer: usize,
        stack: Vec<usize>,
        out: Vec<Vec<String>>,
    }
    fn dfs(ctx: &mut Ctx, v: usize, parent_edge: Option<usize>) {
        ctx.disc[v] = ctx.timer;
        ctx.low[v] = ctx.timer;
        ctx.timer += 1;
        let neighbors: Vec<(usize, usize)> = ctx.adj[v].clone();
        for (w, ei) in neighbors {
            if Some(ei) == parent_edge {
                continue;
            }
            if ctx.disc[w] == usize::MAX {
                ctx.stack.push(ei);
                dfs(ctx, w, Some(ei));
                ctx.low[v] = ctx.low[v].min(ctx.low[w]);
                if ctx.low[w] >= ctx.disc[v] {
                    let mut block = Vec::new();
                    loop {
                        let top = ctx.stack.pop().expect("block edge on stack");
                        block.push(ctx.labels[top].clone());
                        if top == ei {
                            break;
                        }
                    }
                    block.sort();
                    ctx.out.push(block);
                }
            } else if ctx.disc[w] < ctx.disc[v] {
                ctx.stack.push(ei);
                ctx.low[v] = ctx.low[v].min(ctx.disc[w]);
            }
        }
    }
    let mut ctx = Ctx {
        adj: &adj,
        labels: &labels,
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        timer: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for root in 0..n {
        if ctx.disc[root] == usize::MAX {
            dfs(&mut ctx, root, None);
        }
    }
    ctx.out.sort();
    ctx.out
}

/// Embed one 2-connected block (or bridge); per-vertex rotations, or
/// `None` when the block is nonplanar.
fn embed_block(g: &Multigraph, block: &[String]) -> Option<BTreeMap<String, Vec<Dart>>> {
    if block.len() == 1 {
        let l = &block[0];
        let (a, b) = g.endpoints(l).expect("own edge");
        let mut out = BTreeMap::new();
        out.insert(a.to_string(), vec![Dart::new(l, 0)]);
        out.insert(b.to_string(), vec![Dart::new(l, 1)]);
        return Some(out);
    }
    let block_labels: BTreeSet<String> = block.iter().cloned().collect();
    let mut verts: BTreeSet<String> = BTreeSet::new();
    for l in block {
        let (a, b) = g.endpoints(l).expect("own edge");
        verts.insert(a.to_string());
        verts.insert(b.to_string());
    }
    let adj: BTreeMap<String, Vec<(String, String)>> = verts
        .iter()
        .map(|v| {
            let mut nb = Vec::new();
            for l in block {
                let (a, b) = g.endpoints(l).expect("own edge");
                if a == v {
                    nb.push((b.to_string(), l.clone()));
                } else if b == v {
                    nb.push((a.to_string(), l.clone()));
                }
            }
            (v.clone(), nb)
        })
        .collect();

    let cycle = find_cycle(&adj).expect("2-connected block contains a cycle");
    let mut embedded: BTreeSet<String> = cycle.iter().map(|s| s.edge.clone()).collect();
    let mut h_verts: BTreeSet<String> = cycle.iter().map(|s| s.tail.clone()).collect();
    let forward: Vec<Step> = cycle.clone();
    let backward: Vec<Step> = cycle.iter().rev().map(Step::reversed).collect();
    let mut faces: Vec<Vec<Step>> = vec![forward, backward];

    while embedded.len() < block.len() {
        let fragments = find_fragments(g, &block_labels, &embedded, &h_verts, &adj);
        debug_assert!(!fragments.is_empty());
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, face)| {
                    let onface: BTreeSet<&str> = face.iter().map(|s| s.tail.as_str()).collect();
                    frag.attachments.iter().all(|a| onface.contains(a.as_str()))
                })
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("nonempty fragments");
        let frag = &fragments[fi];
        let path = fragment_path(g, frag, &h_verts).expect("fragment path exists");
        let a = path.first().unwrap().tail.clone();
        let b = path.last().unwrap().head.clone();
        let face = faces.swap_remove(face_idx);
        let ia = face
            .iter()
            .position(|s| s.tail == a)
            .expect("attachment on face");
        let ib = face
            .iter()
            .position(|s| s.tail == b)
            .expect("attachment on face");
        let take = |from: usize, to: usize| -> Vec<Step> {
            let mut out = Vec::new();
            let mut i = from;
            while i != to {
                out.push(face[i].clone());
                i = (i + 1) % face.len();
            }
            out
        };
        let mut f1: Vec<Step> = path.clone();
        f1.extend(take(ib, ia));
        let mut f2: Vec<Step> = path.iter().rev().map(Step::reversed).collect();
        f2.extend(take(ia, ib));
        faces.push(f1);
        faces.push(f2);
        for s in &path {
            embedded.insert(s.edge.clone());
            h_verts.insert(s.tail.clone());
            h_verts.insert(s.head.clone());
        }
    }

    // Recover rotations from the faces: the dart following flip(d) in
    // flip(d)'s face is the rotation successor of d.
    let mut succ: BTreeMap<Dart, Dart> = BTreeMap::new();
    for face in &faces {
        for (i, s) in face.iter().enumerate() {
            let next = &face[(i + 1) % face.len()];
            succ.insert(s.as_dart(g).flip(), next.as_dart(g));
        }
    }
    let mut out: BTreeMap<String, Vec<Dart>> = BTreeMap::new();
    for v in &verts {
        let mut mine: Vec<Dart> = Vec::new();
        for (_, l) in &adj[v] {
            let (a, _) = g.endpoints(l).expect("own edge");
            mine.push(Dart::new(l, if a == v { 0 } else { 1 }));
        }
        mine.sort();
        mine.dedup();
        let start = mine.first().expect("vertex in block has edges").clone();
        let mut rot = Vec::with_capacity(mine.len());
        let mut cur = start.clone();
        loop {
            rot.push(cur.clone());
            cur = succ.get(&cur).expect("every dart has a successor").clone();
            if cur == start {
                break;
            }
            assert!(
                rot.len() <= mine.len(),
                "rotation walk at {v} failed to close"
            );
        }
        assert_eq!(rot.len(), mine.len(), "rotation at {v} incomplete");
        out.insert(v.clone(), rot);
    }
    Some(out)
}

/// Find any cycle in the block by recursive DFS; in an undirected graph
/// every non-tree edge closes a cycle with the current path.
fn find_cycle(adj: &BTreeMap<String, Vec<(String, String)>>) -> Option<Vec<Step>> {
    fn dfs(
        v: &str,
        parent_edge: Option<&str>,
        adj: &BTreeMap<String, Vec<(String, String)>>,
        seen: &mut BTreeSet<String>,
        path: &mut Vec<Step>,
    ) -> Option<Vec<Step>> {
        seen.insert(v.to_string());
        for (w, l) in &adj[v] {
            if Some(l.as_str()) == parent_edge {
                continue;
            }
            if seen.contains(w) {
                if let Some(pos) = path.iter().position(|s| s.tail == *w) {
                    let mut cycle = path[pos..].to_vec();
                    cycle.push(Step {
                        edge: l.clone(),
                        tail: v.to_string(),
                        head: w.clone(),
                    });
                    return Some(cycle);
                }
                continue;
            }
            path.push(Step {
                edge: l.clone(),
                tail: v.to_string(),
                head: w.clone(),
            });
            if let Some(c) = dfs(w, Some(l), adj, seen, path) {
                return Some(c);
            }
            path.pop();
        }
        None
    }
    let start = adj.keys().next()?.clone();
    let mut seen = BTreeSet::new();
    let mut path = Vec::new();
    dfs(&start, None, adj, &mut seen, &mut path)
}

struct Fragment {
    /// Interior vertices (empty for a chord).
    interior: BTreeSet<String>,
    edges: BTreeSet<String>,
    attachments: BTreeSet<String>,
}

fn find_fragments(
    g: &Multigraph,
    block_labels: &BTreeSet<String>,
    embedded: &BTreeSet<String>,
    h_verts: &BTreeSet<String>,
    adj: &BTreeMap<String, Vec<(String, String)>>,
) -> Vec<Fragment> {
    let mut fragments = Vec::new();
    // Chords: unembedded block edges with both ends on H.
    for l in block_labels {
        if embedded.contains(l) {
            continue;
        }
        let (a, b) = g.endpoints(l).expect("own edge");
        if h_verts.contains(a) && h_verts.contains(b) {
            fragments.push(Fragment {
                interior: BTreeSet::new(),
                edges: [l.clone()].into_iter().collect(),
                attachments: [a.to_string(), b.to_string()].into_iter().collect(),
            });
        }
    }
    // Components of (block vertices) - H with their attachment edges.
    let mut unseen: BTreeSet<String> = adj
        .keys()
        .filter(|v| !h_verts.contains(*v))
        .cloned()
        .collect();
    while let Some(seed) = unseen.iter().next().cloned() {
        let mut comp: BTreeSet<String> = BTreeSet::new();
        let mut queue = VecDeque::from([seed.clone()]);
        unseen.remove(&seed);
        comp.insert(seed);
        while let Some(v) = queue.pop_front() {
            for (w, _) in &adj[&v] {
                if !h_verts.contains(w) && !comp.contains(w) {
                    comp.insert(w.clone());
                    unseen.remove(w);
                    queue.push_back(w.clone());
                }
            }
        }
        let mut edges = BTreeSet::new();
        let mut attachments = BTreeSet::new();
        for v in &comp {
            for (w, l) in &adj[v] {
                edges.insert(l.clone());
                if h_verts.contains(w) {
                    attachments.insert(w.clone());
                }
            }
        }
        fragments.push(Fragment {
            interior: comp,
            edges,
            attachments,
        });
    }
    fragments.sort_by(|a, b| a.edges.cmp(&b.edges));
    fragments
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(g: &Multigraph, frag: &Fragment, h_verts: &BTreeSet<String>) -> Option<Vec<Step>> {
    let a = frag.attachments.iter().next()?.clone();
    if frag.interior.is_empty() {
        let l = frag.edges.iter().next()?.clone();
        let (x, y) = g.endpoints(&l).ok()?;
        let b = if x == a { y } else { x };
        return Some(vec![Step {
            edge: l.clone(),
            tail: a,
            head: b.to_string(),
        }]);
    }
    // BFS from `a` through interior vertices to any other attachment.
    let mut parent: BTreeMap<String, Step> = BTreeMap::new();
    let mut queue = VecDeque::from([a.clone()]);
    let mut seen: BTreeSet<String> = [a.clone()].into_iter().collect();
    while let Some(v) = queue.pop_front() {
        for l in frag.edges.iter() {
            let (x, y) = g.endpoints(l).ok()?;
            let w = if x == v {
                y
            } else if y == v {
                x
            } else {
                continue;
            };
            if seen.contains(w) {
                continue;
            }
            let step = Step {
                edge: l.clone(),
                tail: v.clone(),
                head: w.to_string(),
            };
            if h_verts.contains(w) && w != a {
                let mut path = vec![step];
                let mut cur = v.clone();
                while cur != a {
                    let s = parent[&cur].clone();
                    cur = s.tail.clone();
                    path.push(s);
                }
                path.reverse();
                return Some(path);
            }
            if !h_verts.contains(w) {
                seen.insert(w.to_string());
                parent.insert(w.to_string(), step);
                queue.push_back(w.to_string());
            }
        }
    }
    None
}
