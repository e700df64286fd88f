//! Primitive divergence: the edge count must be exactly twice the loop
//! number, and every connected vertex-induced proper subgraph with an
//! edge must stay strictly below the same density.

use crate::multigraph::Multigraph;
use itertools::Itertools;

#[derive(Debug, Clone)]
pub enum DivergenceReport {
    PrimitiveDivergent,
    /// `|E|` is not twice the loop number.
    EdgeCountMismatch {
        edges: usize,
        twice_loop_number: usize,
    },
    /// A connected induced proper subgraph with `|E| >= 2|V| - 2`.
    ViolatingSubgraph(Multigraph),
}

impl DivergenceReport {
    pub fn is_primitive_divergent(&self) -> bool {
        matches!(self, DivergenceReport::PrimitiveDivergent)
    }
}

/// Decide primitive divergence. The subgraph sweep may restrict itself to
/// connected vertex-induced subgraphs: induced subgraphs maximize edges
/// over a vertex set, and a disconnected violator contains a connected
/// component violator.
pub fn primitive_divergent(g: &Multigraph) -> DivergenceReport {
    let twice = 2 * g.loop_number();
    if g.edge_count() != twice {
        return DivergenceReport::EdgeCountMismatch {
            edges: g.edge_count(),
            twice_loop_number: twice,
        };
    }
    let verts: Vec<String> = g.vertices().map(|s| s.to_string()).collect();
    let n = verts.len();
    for size in 1..n {
        for subset in (0..n).combinations(size) {
            let tokens: Vec<String> = subset.iter().map(|&i| verts[i].clone()).collect();
            let sub = match g.induced_subgraph(&tokens) {
                Ok(s) => s,
                Err(_) => continue,
            };
            if sub.edge_count() == 0 || !sub.is_connected() {
                continue;
            }
            if sub.edge_count() + 2 >= 2 * sub.vertex_count() {
                return DivergenceReport::ViolatingSubgraph(sub);
            }
        }
    }
    DivergenceReport::PrimitiveDivergent
}
