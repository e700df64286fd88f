//! Deterministic constructions of the named graphs.

use crate::multigraph::Multigraph;
use crate::structure::deltay::{delta_to_y, sites, DeltaYSite};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuiltinError {
    #[error("unknown builtin graph `{0}`")]
    Unknown(String),
    #[error("builtin `{0}` needs a parameter `n`")]
    MissingParameter(String),
    #[error("square of an odd cycle needs k >= 2")]
    BadParameter,
}

fn complete(tokens: &[&str]) -> Multigraph {
    let mut edges = Vec::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    for i in 0..tokens.len() {
        for j in i + 1..tokens.len() {
            pairs.push((tokens[i].to_string(), tokens[j].to_string()));
        }
    }
    pairs.sort();
    for (k, (a, b)) in pairs.into_iter().enumerate() {
        edges.push((format!("e{:02}", k + 1), a, b));
    }
    Multigraph::from_edges(edges).expect("fresh labels")
}

pub fn k4() -> Multigraph {
    complete(&["v1", "v2", "v3", "v4"])
}

pub fn k5() -> Multigraph {
    complete(&["v1", "v2", "v3", "v4", "v5"])
}

pub fn k33() -> Multigraph {
    let mut pairs = Vec::new();
    for a in ["a1", "a2", "a3"] {
        for b in ["b1", "b2", "b3"] {
            pairs.push((a.to_string(), b.to_string()));
        }
    }
    pairs.sort();
    let edges: Vec<(String, String, String)> = pairs
        .into_iter()
        .enumerate()
        .map(|(k, (a, b))| (format!("e{:02}", k + 1), a, b))
        .collect();
    Multigraph::from_edges(edges).expect("fresh labels")
}

/// The octahedron: the complete tripartite graph on parts of size two.
pub fn octahedron() -> Multigraph {
    let parts = [["a1", "a2"], ["b1", "b2"], ["c1", "c2"]];
    let mut pairs = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            for x in parts[i] {
                for y in parts[j] {
                    pairs.push((x.to_string(), y.to_string()));
                }
            }
        }
    }
    pairs.sort();
    let edges: Vec<(String, String, String)> = pairs
        .into_iter()
        .enumerate()
        .map(|(k, (a, b))| (format!("e{:02}", k + 1), a, b))
        .collect();
    Multigraph::from_edges(edges).expect("fresh labels")
}

/// The 3-cube: vertices are binary triples, edges join triples at Hamming
/// distance one.
pub fn cube() -> Multigraph {
    let mut pairs = Vec::new();
    for u in 0u8..8 {
        for bit in 0..3 {
            let w = u ^ (1 << bit);
            if u < w {
                pairs.push((format!("c{u:03b}"), format!("c{w:03b}")));
            }
        }
    }
    pairs.sort();
    let edges: Vec<(String, String, String)> = pairs
        .into_iter()
        .enumerate()
        .map(|(k, (a, b))| (format!("e{:02}", k + 1), a, b))
        .collect();
    Multigraph::from_edges(edges).expect("fresh labels")
}

/// The graph between the octahedron and the cube: one wye exchange applied
/// at an octahedron face. All faces are equivalent under the octahedron's
/// symmetries, so the first triangle site is taken.
pub fn intermediate_h() -> Multigraph {
    let o = octahedron();
    let site = sites(&o)
        .into_iter()
        .find_map(|s| match s {
            DeltaYSite::Triangle(t) => Some(t),
            DeltaYSite::Star(_) => None,
        })
        .expect("octahedron has triangles");
    delta_to_y(&o, &site).expect("valid site")
}

/// The member of the octahedron family that has, up to isomorphism,
/// exactly one non-splitting 5-configuration. Pinned by exhaustive search
/// within the 15-member family; the identification is re-verified in the
/// test suite.
pub fn q_graph() -> Multigraph {
    // Two wye exchanges applied to the octahedron at disjoint faces: take
    // the first triangle site, then the first triangle site disjoint from
    // the new vertex's edges.
    let h = intermediate_h();
    let site = sites(&h)
        .into_iter()
        .find_map(|s| match s {
            DeltaYSite::Triangle(t) => Some(t),
            DeltaYSite::Star(_) => None,
        })
        .expect("H has triangles");
    delta_to_y(&h, &site).expect("valid site")
}

/// Zigzag graph with `n` degree-four vertices: the square of a path on
/// `n + 4` vertices plus the edge closing the two path ends.
pub fn zigzag(n: usize) -> Multigraph {
    let m = n + 4;
    let token = |i: usize| format!("z{i:02}");
    let mut pairs = Vec::new();
    for i in 1..m {
        pairs.push((token(i), token(i + 1)));
    }
    for i in 1..m.saturating_sub(1) {
        pairs.push((token(i), token(i + 2)));
    }
    pairs.push((token(1), token(m)));
    pairs.sort();
    pairs.dedup();
    let edges: Vec<(String, String, String)> = pairs
        .into_iter()
        .enumerate()
        .map(|(k, (a, b))| (format!("e{:02}", k + 1), a, b))
        .collect();
    Multigraph::from_edges(edges).expect("fresh labels")
}

/// The square of the odd cycle on `2k + 1` vertices, `k >= 2`.
pub fn sq_odd_cycle(k: usize) -> Result<Multigraph, BuiltinError> {
    if k < 2 {
        return Err(BuiltinError::BadParameter);
    }
    let m = 2 * k + 1;
    let token = |i: usize| format!("w{i:02}");
    let mut pairs = std::collections::BTreeSet::new();
    for i in 0..m {
        for step in [1usize, 2] {
            let j = (i + step) % m;
            let (a, b) = (token(i + 1), token(j + 1));
            let pair = if a < b { (a, b) } else { (b, a) };
            pairs.insert(pair);
        }
    }
    let edges: Vec<(String, String, String)> = pairs
        .into_iter()
        .enumerate()
        .map(|(kk, (a, b))| (format!("e{:02}", kk + 1), a, b))
        .collect();
    Ok(Multigraph::from_edges(edges).expect("fresh labels"))
}

/// The four-cycle with a chord: the five-edge workhorse example. Labeled
/// so that `e5` is the chord and spanning trees through the chord pick one
/// edge from `{e1, e2}` and one from `{e3, e4}`.
pub fn c4_chord() -> Multigraph {
    Multigraph::from_edges([
        ("e1", "v1", "v2"),
        ("e2", "v1", "v3"),
        ("e3", "v2", "v4"),
        ("e4", "v3", "v4"),
        ("e5", "v2", "v3"),
    ])
    .expect("fresh labels")
}

pub fn triangle() -> Multigraph {
    Multigraph::from_edges([("e1", "v1", "v2"), ("e2", "v1", "v3"), ("e3", "v2", "v3")])
        .expect("fresh labels")
}

/// Resolve a builtin name, with `zigzag` and `sq_odd_cycle` taking the
/// parameter.
pub fn builtin(name: &str, n: Option<usize>) -> Result<Multigraph, BuiltinError> {
    match name {
        "K4" => Ok(k4()),
        "K5" => Ok(k5()),
        "K33" => Ok(k33()),
        "O" => Ok(octahedron()),
        "C" => Ok(cube()),
        "H" => Ok(intermediate_h()),
        "Q" => Ok(q_graph()),
        "c4chord" => Ok(c4_chord()),
        "triangle" => Ok(triangle()),
        "zigzag" => match n {
            Some(n) => Ok(zigzag(n)),
            None => Err(BuiltinError::MissingParameter(name.to_string())),
        },
        "sq_odd_cycle" => match n {
            Some(k) => sq_odd_cycle(k),
            None => Err(BuiltinError::MissingParameter(name.to_string())),
        },
        other => Err(BuiltinError::Unknown(other.to_string())),
    }
}

/// Parse a `builtin:NAME` or `builtin:NAME(K)` pseudo-file reference.
pub fn parse_builtin_ref(spec: &str) -> Result<Multigraph, BuiltinError> {
    let name = spec
        .strip_prefix("builtin:")
        .ok_or_else(|| BuiltinError::Unknown(spec.to_string()))?;
    if let Some((base, rest)) = name.split_once('(') {
        let digits = rest
            .strip_suffix(')')
            .ok_or_else(|| BuiltinError::Unknown(spec.to_string()))?;
        let n: usize = digits
            .parse()
            .map_err(|_| BuiltinError::Unknown(spec.to_string()))?;
        builtin(base, Some(n))
    } else {
        builtin(name, None)
    }
}
