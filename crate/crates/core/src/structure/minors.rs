//! Minor containment by delete/contract search, and the scan against the
//! five forbidden targets.

use crate::multigraph::{EdgeSet, Multigraph};
use crate::structure::builders;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinorStep {
    Delete(String),
    Contract(String),
}

impl fmt::Display for MinorStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinorStep::Delete(l) => write!(f, "delete {l}"),
            MinorStep::Contract(l) => write!(f, "contract {l}"),
        }
    }
}

/// Apply a certificate with plain minor operations.
pub fn apply_steps(g: &Multigraph, steps: &[MinorStep]) -> Option<Multigraph> {
    let mut cur = g.clone();
    for s in steps {
        cur = match s {
            MinorStep::Delete(l) => cur.delete_edge(l).ok()?,
            MinorStep::Contract(l) => cur.contract_edge(l).ok()?,
        };
    }
    Some(cur)
}

/// Does `g` contain a minor isomorphic to `h`? Both graphs must be
/// connected. Returns a delete/contract certificate on success,
/// re-verifiable by applying the steps and checking isomorphism.
pub fn has_minor_certificate(g: &Multigraph, h: &Multigraph) -> Option<Vec<MinorStep>> {
    let h_canon = h.canonical_form();
    let mut failed: BTreeSet<Vec<u8>> = BTreeSet::new();
    search(g, h, &h_canon, &mut failed)
}

pub fn has_minor(g: &Multigraph, h: &Multigraph) -> bool {
    has_minor_certificate(g, h).is_some()
}

fn search(
    g: &Multigraph,
    h: &Multigraph,
    h_canon: &[u8],
    failed: &mut BTreeSet<Vec<u8>>,
) -> Option<Vec<MinorStep>> {
    let ge = g.edge_count();
    let he = h.edge_count();
    let gv = g.vertex_count();
    let hv = h.vertex_count();
    if ge < he || gv < hv {
        return None;
    }
    // Each operation removes one edge; reaching the target vertex count
    // needs gv - hv contractions among the ge - he operations.
    if gv - hv > ge - he {
        return None;
    }
    if ge == he {
        return if gv == hv && g.canonical_form() == *h_canon {
            Some(Vec::new())
        } else {
            None
        };
    }
    let key = g.canonical_form();
    if key == *h_canon && gv == hv {
        return Some(Vec::new());
    }
    if failed.contains(&key) {
        return None;
    }
    // Children deduplicated by canonical form within this node: symmetric
    // edges produce identical minors.
    let mut tried: BTreeSet<Vec<u8>> = BTreeSet::new();
    let labels: Vec<String> = g.edge_label_iter().map(|s| s.to_string()).collect();
    for l in &labels {
        for (is_delete, child) in [(true, g.delete_edge(l)), (false, g.contract_edge(l))] {
            let Ok(child) = child else { continue };
            // Connected targets never need a branch that strands a vertex.
            if child.vertices().any(|v| child.degree(v) == Ok(0)) && child.vertex_count() > 1 {
                continue;
            }
            if !tried.insert(child.canonical_form()) {
                continue;
            }
            if let Some(mut steps) = search(&child, h, h_canon, failed) {
                let step = if is_delete {
                    MinorStep::Delete(l.clone())
                } else {
                    MinorStep::Contract(l.clone())
                };
                steps.insert(0, step);
                return Some(steps);
            }
        }
    }
    failed.insert(key);
    None
}

/// Tags for the five forbidden minors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ForbiddenMinor {
    K5,
    K33,
    Octahedron,
    IntermediateH,
    Cube,
}

impl fmt::Display for ForbiddenMinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ForbiddenMinor::K5 => "K5",
            ForbiddenMinor::K33 => "K33",
            ForbiddenMinor::Octahedron => "O",
            ForbiddenMinor::IntermediateH => "H",
            ForbiddenMinor::Cube => "C",
        };
        write!(f, "{s}")
    }
}

/// Scan a graph against the five forbidden minors.
pub fn forbidden_minor_scan(g: &Multigraph) -> BTreeSet<ForbiddenMinor> {
    let targets = [
        (ForbiddenMinor::K5, builders::k5()),
        (ForbiddenMinor::K33, builders::k33()),
        (ForbiddenMinor::Octahedron, builders::octahedron()),
        (ForbiddenMinor::IntermediateH, builders::intermediate_h()),
        (ForbiddenMinor::Cube, builders::cube()),
    ];
    targets
        .into_iter()
        .filter(|(_, h)| has_minor(g, h))
        .map(|(tag, _)| tag)
        .collect()
}

/// Verify a certificate: apply the steps and compare canonically.
pub fn verify_certificate(g: &Multigraph, h: &Multigraph, steps: &[MinorStep]) -> bool {
    let del: EdgeSet = steps
        .iter()
        .filter_map(|s| match s {
            MinorStep::Delete(l) => Some(l.clone()),
            MinorStep::Contract(_) => None,
        })
        .collect();
    let con: EdgeSet = steps
        .iter()
        .filter_map(|s| match s {
            MinorStep::Contract(l) => Some(l.clone()),
            MinorStep::Delete(_) => None,
        })
        .collect();
    match g.take_minor(&del, &con) {
        Ok(m) => m.is_isomorphic(h),
        Err(_) => false,
    }
}
