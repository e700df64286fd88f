//! Delta-wye transformations and the families they generate.
//!
//! A triangle site is an induced K3: three vertices carrying exactly one
//! edge per pair and nothing else among them. A star site is a loop-free
//! vertex with exactly three incident edges to three distinct neighbors.
//! Either exchange preserves the edge count, so a family is an
//! equivalence class of multigraphs with fixed `|E|`.

use crate::multigraph::{GraphError, Multigraph};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeltaYError {
    #[error("invalid triangle site: {0}")]
    BadTriangle(String),
    #[error("invalid star site: {0}")]
    BadStar(String),
    #[error("family closure exceeded cap of {cap} (found at least {found})")]
    CapExceeded { cap: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A site where a delta-wye move applies.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum DeltaYSite {
    /// Three edges forming an induced K3, identified by their labels.
    Triangle([String; 3]),
    /// A degree-three vertex with three distinct neighbors.
    Star(String),
}

/// Fresh tokens introduced by transformations carry this prefix so family
/// closure never collides with host labels.
const FRESH_PREFIX: &str = "dy";

fn triangle_vertices(g: &Multigraph, edges: &[String; 3]) -> Result<[String; 3], DeltaYError> {
    let mut verts: BTreeSet<String> = BTreeSet::new();
    for l in edges {
        let (a, b) = g
            .endpoints(l)
            .map_err(|_| DeltaYError::BadTriangle(format!("unknown edge `{l}`")))?;
        if a == b {
            return Err(DeltaYError::BadTriangle(format!("`{l}` is a loop")));
        }
        verts.insert(a.to_string());
        verts.insert(b.to_string());
    }
    if verts.len() != 3 {
        return Err(DeltaYError::BadTriangle(
            "edges do not span three vertices".to_string(),
        ));
    }
    let vlist: Vec<String> = verts.into_iter().collect();
    // One site edge per vertex pair; parallel copies outside the site are
    // allowed and stay behind.
    let mut pairs = BTreeSet::new();
    for l in edges {
        let (a, b) = g.endpoints(l).expect("validated");
        if !pairs.insert((a.to_string(), b.to_string())) {
            return Err(DeltaYError::BadTriangle("parallel site edges".to_string()));
        }
    }
    Ok([vlist[0].clone(), vlist[1].clone(), vlist[2].clone()])
}

fn star_neighbors(g: &Multigraph, center: &str) -> Result<[String; 3], DeltaYError> {
    let incident = g
        .incident_edges(center)
        .map_err(|_| DeltaYError::BadStar(format!("unknown vertex `{center}`")))?;
    if incident.len() != 3 {
        return Err(DeltaYError::BadStar(format!(
            "`{center}` has {} incident edges, need 3",
            incident.len()
        )));
    }
    let mut neighbors = Vec::new();
    for l in &incident {
        let (a, b) = g.endpoints(l).expect("incident edge");
        if a == b {
            return Err(DeltaYError::BadStar(format!("loop at `{center}`")));
        }
        neighbors.push(if a == center { b.to_string() } else { a.to_string() });
    }
    neighbors.sort();
    neighbors.dedup();
    if neighbors.len() != 3 {
        return Err(DeltaYError::BadStar(
            "incident edges are parallel".to_string(),
        ));
    }
    Ok([
        neighbors[0].clone(),
        neighbors[1].clone(),
        neighbors[2].clone(),
    ])
}

/// Replace an induced triangle by a fresh degree-three vertex joined to
/// the triangle's corners. Labels outside the site are preserved.
pub fn delta_to_y(g: &Multigraph, triangle: &[String; 3]) -> Result<Multigraph, DeltaYError> {
    let corners = triangle_vertices(g, triangle)?;
    let center = g.fresh_vertex_token(FRESH_PREFIX);
    let labels = g.fresh_edge_labels(FRESH_PREFIX, 3);
    let mut h = g.clone();
    for l in triangle {
        h = h.delete_edge(l)?;
    }
    let mut edges: Vec<(String, String, String)> = h
        .edge_label_iter()
        .map(|l| {
            let (a, b) = h.endpoints(l).expect("own edge");
            (l.to_string(), a.to_string(), b.to_string())
        })
        .collect();
    for (l, corner) in labels.iter().zip(corners.iter()) {
        edges.push((l.clone(), center.clone(), corner.clone()));
    }
    let mut vertices: Vec<String> = h.vertices().map(|s| s.to_string()).collect();
    vertices.push(center);
    Multigraph::new(vertices, edges).map_err(DeltaYError::Graph)
}

/// Replace a degree-three vertex by a triangle on its neighbors, possibly
/// creating parallel edges, which are retained.
pub fn y_to_delta(g: &Multigraph, center: &str) -> Result<Multigraph, DeltaYError> {
    let nb = star_neighbors(g, center)?;
    let labels = g.fresh_edge_labels(FRESH_PREFIX, 3);
    let mut edges: Vec<(String, String, String)> = Vec::new();
    for l in g.edge_label_iter() {
        let (a, b) = g.endpoints(l).expect("own edge");
        if a == center || b == center {
            continue;
        }
        edges.push((l.to_string(), a.to_string(), b.to_string()));
    }
    edges.push((labels[0].clone(), nb[0].clone(), nb[1].clone()));
    edges.push((labels[1].clone(), nb[0].clone(), nb[2].clone()));
    edges.push((labels[2].clone(), nb[1].clone(), nb[2].clone()));
    let vertices: Vec<String> = g
        .vertices()
        .filter(|v| *v != center)
        .map(|s| s.to_string())
        .collect();
    Multigraph::new(vertices, edges).map_err(DeltaYError::Graph)
}

/// All valid sites in a graph, in deterministic order. For a vertex pair
/// carrying parallel edges only the smallest label participates in
/// triangle sites: the alternatives give isomorphic exchanges.
pub fn sites(g: &Multigraph) -> Vec<DeltaYSite> {
    let mut out = Vec::new();
    let mut rep: BTreeMap<(String, String), String> = BTreeMap::new();
    for l in g.edge_label_iter() {
        let (a, b) = g.endpoints(l).expect("own edge");
        if a != b {
            rep.entry((a.to_string(), b.to_string()))
                .or_insert_with(|| l.to_string());
        }
    }
    let verts: Vec<String> = g.vertices().map(|s| s.to_string()).collect();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            for k in j + 1..verts.len() {
                let e1 = rep.get(&(verts[i].clone(), verts[j].clone()));
                let e2 = rep.get(&(verts[i].clone(), verts[k].clone()));
                let e3 = rep.get(&(verts[j].clone(), verts[k].clone()));
                if let (Some(e1), Some(e2), Some(e3)) = (e1, e2, e3) {
                    let mut site = [e1.clone(), e2.clone(), e3.clone()];
                    site.sort();
                    if triangle_vertices(g, &site).is_ok() {
                        out.push(DeltaYSite::Triangle(site));
                    }
                }
            }
        }
    }
    for v in &verts {
        if star_neighbors(g, v).is_ok() {
            out.push(DeltaYSite::Star(v.clone()));
        }
    }
    out
}

pub fn apply_site(g: &Multigraph, site: &DeltaYSite) -> Result<Multigraph, DeltaYError> {
    match site {
        DeltaYSite::Triangle(edges) => delta_to_y(g, edges),
        DeltaYSite::Star(center) => y_to_delta(g, center),
    }
}

/// Closure of a graph under delta-wye moves in both directions,
/// deduplicated by canonical form. Members are returned sorted by
/// canonical form; the cap bounds the closure size as a safety net and
/// exceeding it is an error carrying the partial set.
pub fn delta_y_family(g: &Multigraph, cap: usize) -> Result<Vec<Multigraph>, DeltaYError> {
    match family_closure(g, cap) {
        (members, false) => Ok(members),
        (members, true) => Err(DeltaYError::CapExceeded {
            cap,
            found: members.len(),
        }),
    }
}

fn family_closure(g: &Multigraph, cap: usize) -> (Vec<Multigraph>, bool) {
    let mut seen: BTreeMap<Vec<u8>, Multigraph> = BTreeMap::new();
    let mut queue = VecDeque::from([g.clone()]);
    seen.insert(g.canonical_form(), g.clone());
    let mut exceeded = false;
    while let Some(cur) = queue.pop_front() {
        for site in sites(&cur) {
            let next = match apply_site(&cur, &site) {
                Ok(n) => n,
                Err(_) => continue,
            };
            let key = next.canonical_form();
            if seen.contains_key(&key) {
                continue;
            }
            if seen.len() >= cap {
                exceeded = true;
                continue;
            }
            seen.insert(key, next.clone());
            queue.push_back(next);
        }
        if exceeded {
            break;
        }
    }
    (seen.into_values().collect(), exceeded)
}
