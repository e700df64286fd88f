//! Sign-fixed incidence machinery: Kirchhoff polynomials, Dodgson
//! polynomials by two independent methods, five-invariants, and the
//! denominator-reduction iteration.
//!
//! Dodgson polynomials are only defined up to a sign that depends on the
//! edge orientation, the vertex/edge orderings, and the deleted incidence
//! column. [`IncidenceFixture`] pins all of these deterministically for a
//! graph, so every Dodgson computed through one fixture carries a
//! reproducible sign and the four Dodgsons inside a five-invariant are
//! mutually consistent.

use crate::multigraph::{EdgeSet, GraphError, Multigraph};
use crate::polynomial::{Monomial, PolyError, Polynomial};
use num_bigint::BigInt;
use num_traits::Signed;
use std::collections::BTreeMap;
use thiserror::Error;

/// Matrix-method oracles refuse graphs with more edges than this.
pub const ORACLE_MAX_EDGES: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KirchhoffError {
    #[error("oracle scale only: graph has {edges} edges, cap is {cap}")]
    OracleScale { edges: usize, cap: usize },
    #[error("invalid Dodgson spec: {0}")]
    InvalidSpec(String),
    #[error("five-invariant needs 5 distinct edges")]
    DuplicateEdges,
    #[error("5-configuration must have exactly 5 edges, got {0}")]
    NotFiveEdges(usize),
    #[error("denominator reduction needs at least 6 edges, got {0}")]
    TooFewEdges(usize),
    #[error("edge order must cover every edge exactly once (problem near `{0}`)")]
    BadOrder(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Deterministic orientation data for one graph: vertices and edges in
/// sorted order, each non-loop edge directed from its smaller endpoint to
/// its larger one, and the last vertex's incidence column deleted. The
/// reduced matrix has one row per edge and entries in `{-1, 0, 1}`; loops
/// give all-zero rows.
#[derive(Debug, Clone)]
pub struct IncidenceFixture {
    edge_labels: Vec<String>,
    vertex_tokens: Vec<String>,
    /// `|E| x (|V|-1)` signed incidence entries.
    rows: Vec<Vec<i64>>,
}

impl IncidenceFixture {
    pub fn new(g: &Multigraph) -> IncidenceFixture {
        let vertex_tokens: Vec<String> = g.vertices().map(|s| s.to_string()).collect();
        let edge_labels: Vec<String> = g.edge_label_iter().map(|s| s.to_string()).collect();
        let cols = vertex_tokens.len().saturating_sub(1);
        let col_of: BTreeMap<&str, usize> = vertex_tokens
            .iter()
            .take(cols)
            .enumerate()
            .map(|(i, t)| (t.as_str(), i))
            .collect();
        let rows = edge_labels
            .iter()
            .map(|l| {
                let (a, b) = g.endpoints(l).expect("own labels");
                let mut row = vec![0i64; cols];
                if a != b {
                    // a < b by construction: source +1, target -1.
                    if let Some(&c) = col_of.get(a) {
                        row[c] = 1;
                    }
                    if let Some(&c) = col_of.get(b) {
                        row[c] = -1;
                    }
                }
                row
            })
            .collect();
        IncidenceFixture {
            edge_labels,
            vertex_tokens,
            rows,
        }
    }

    pub fn edge_order(&self) -> &[String] {
        &self.edge_labels
    }

    pub fn vertex_order(&self) -> &[String] {
        &self.vertex_tokens
    }

    pub fn deleted_vertex(&self) -> Option<&str> {
        self.vertex_tokens.last().map(|s| s.as_str())
    }

    /// Determinant of the square submatrix formed by the given edge rows
    /// (taken in fixture order).
    fn det_of_rows(&self, rows: &[usize]) -> i64 {
        let cols = self.vertex_tokens.len().saturating_sub(1);
        if rows.len() != cols {
            return 0;
        }
        let m: Vec<Vec<i128>> = rows
            .iter()
            .map(|&r| self.rows[r].iter().map(|&x| x as i128).collect())
            .collect();
        int_det(m) as i64
    }
}

/// The index triple `(I, J, K)` of a Dodgson polynomial, with `|I| = |J|`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DodgsonSpec {
    pub i: EdgeSet,
    pub j: EdgeSet,
    pub k: EdgeSet,
}

impl DodgsonSpec {
    pub fn new(i: EdgeSet, j: EdgeSet, k: EdgeSet) -> DodgsonSpec {
        DodgsonSpec { i, j, k }
    }

    pub fn validate(&self, g: &Multigraph) -> Result<(), KirchhoffError> {
        if self.i.len() != self.j.len() {
            return Err(KirchhoffError::InvalidSpec(format!(
                "|I| = {} but |J| = {}",
                self.i.len(),
                self.j.len()
            )));
        }
        for l in self.i.iter().chain(self.j.iter()).chain(self.k.iter()) {
            if !g.has_edge(l) {
                return Err(KirchhoffError::InvalidSpec(format!("unknown edge `{l}`")));
            }
        }
        Ok(())
    }

    /// Edges contracted in the first minor: `(J - (I ∩ J)) ∪ (K - (I ∩ K))`.
    pub fn contract_first(&self) -> EdgeSet {
        self.j.union(&self.k).difference(&self.i)
    }

    /// Edges contracted in the second minor: `(I - (J ∩ I)) ∪ (K - (J ∩ K))`.
    pub fn contract_second(&self) -> EdgeSet {
        self.i.union(&self.k).difference(&self.j)
    }

    pub fn union(&self) -> EdgeSet {
        self.i.union(&self.j).union(&self.k)
    }
}

impl std::fmt::Display for DodgsonSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let part = |s: &EdgeSet| s.iter().collect::<Vec<_>>().join("");
        if self.k.is_empty() {
            write!(f, "Psi^{{{},{}}}", part(&self.i), part(&self.j))
        } else {
            write!(
                f,
                "Psi^{{{},{}}}_{{{}}}",
                part(&self.i),
                part(&self.j),
                part(&self.k)
            )
        }
    }
}

/// Kirchhoff polynomial: sum over spanning trees of the product of edge
/// variables *not* in the tree. A tree gives 1, a disconnected graph 0.
pub fn kirchhoff_poly(g: &Multigraph) -> Polynomial {
    let all = g.edge_labels();
    let mut out = Polynomial::zero();
    for t in g.spanning_trees() {
        let complement = all.difference(&t);
        let m = Monomial::from_powers(complement.iter().map(|l| (l.to_string(), 1)));
        out = out.add(&Polynomial::from_term(BigInt::from(1), m));
    }
    out
}

/// Symbolic determinant of the full graph matrix; must equal
/// [`kirchhoff_poly`] exactly. Oracle scale only.
pub fn kirchhoff_det_oracle(g: &Multigraph) -> Result<Polynomial, KirchhoffError> {
    let fixture = IncidenceFixture::new(g);
    dodgson_matrix_oracle(
        g,
        &fixture,
        &DodgsonSpec::new(EdgeSet::new(), EdgeSet::new(), EdgeSet::new()),
    )
}

struct SpecLayout {
    /// Edges carrying a live variable: `E - (I ∪ J ∪ K)`, fixture order.
    live: Vec<usize>,
    /// Row position (1-based, within `E - I`) of each live edge.
    row_pos: Vec<usize>,
    /// Column position (1-based, within `E - J`) of each live edge.
    col_pos: Vec<usize>,
    /// Fixture indices of rows kept besides the tree part.
    extra_rows: Vec<usize>,
    /// Fixture indices of columns kept besides the tree part.
    extra_cols: Vec<usize>,
}

fn spec_layout(fixture: &IncidenceFixture, spec: &DodgsonSpec) -> SpecLayout {
    let n = fixture.edge_labels.len();
    let in_i: Vec<bool> = fixture
        .edge_labels
        .iter()
        .map(|l| spec.i.contains(l))
        .collect();
    let in_j: Vec<bool> = fixture
        .edge_labels
        .iter()
        .map(|l| spec.j.contains(l))
        .collect();
    let in_k: Vec<bool> = fixture
        .edge_labels
        .iter()
        .map(|l| spec.k.contains(l))
        .collect();
    let mut live = Vec::new();
    let mut row_pos = Vec::new();
    let mut col_pos = Vec::new();
    let (mut r, mut c) = (0usize, 0usize);
    for e in 0..n {
        if !in_i[e] {
            r += 1;
        }
        if !in_j[e] {
            c += 1;
        }
        if !in_i[e] && !in_j[e] && !in_k[e] {
            live.push(e);
            row_pos.push(r);
            col_pos.push(c);
        }
    }
    let f_rows = spec.contract_first();
    let f_cols = spec.contract_second();
    let extra_rows = (0..n)
        .filter(|&e| f_rows.contains(&fixture.edge_labels[e]))
        .collect();
    let extra_cols = (0..n)
        .filter(|&e| f_cols.contains(&fixture.edge_labels[e]))
        .collect();
    SpecLayout {
        live,
        row_pos,
        col_pos,
        extra_rows,
        extra_cols,
    }
}

/// Dodgson polynomial by the common-spanning-tree method, with signs that
/// agree exactly with [`dodgson_matrix_oracle`]. A term is contributed by
/// every edge set `U` (disjoint from `I ∪ J ∪ K`) that induces spanning
/// trees of both graph minors; its coefficient is the product of two
/// incidence determinants and a position sign, always `+1` or `-1`.
pub fn dodgson(
    g: &Multigraph,
    fixture: &IncidenceFixture,
    spec: &DodgsonSpec,
) -> Result<Polynomial, KirchhoffError> {
    spec.validate(g)?;
    let layout = spec_layout(fixture, spec);
    let f_rows = spec.contract_first();
    let f_cols = spec.contract_second();
    debug_assert_eq!(layout.extra_rows.len(), layout.extra_cols.len());

    // A cycle inside either contracted set makes the determinant vanish.
    if !g.is_forest(&f_rows) || !g.is_forest(&f_cols) {
        return Ok(Polynomial::zero());
    }
    let tree_size = g.vertex_count().saturating_sub(1);
    if layout.extra_rows.len() > tree_size {
        return Ok(Polynomial::zero());
    }
    let take = tree_size - layout.extra_rows.len();
    if take > layout.live.len() {
        return Ok(Polynomial::zero());
    }

    // Global position sign: parity of the sum of row and column positions
    // over all live variable entries.
    let base_parity: usize = layout
        .row_pos
        .iter()
        .chain(layout.col_pos.iter())
        .sum::<usize>();
    let mut out = Polynomial::zero();
    let live_count = layout.live.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(take);
    enumerate_trees(
        g,
        fixture,
        &layout,
        &f_rows,
        &f_cols,
        take,
        0,
        &mut chosen,
        base_parity,
        live_count,
        &mut out,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_trees(
    g: &Multigraph,
    fixture: &IncidenceFixture,
    layout: &SpecLayout,
    f_rows: &EdgeSet,
    f_cols: &EdgeSet,
    take: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    base_parity: usize,
    live_count: usize,
    out: &mut Polynomial,
) -> Result<(), KirchhoffError> {
    if chosen.len() == take {
        let u_labels: EdgeSet = chosen
            .iter()
            .map(|&k| fixture.edge_labels[layout.live[k]].clone())
            .collect();
        if !g.is_spanning_tree(&u_labels.union(f_rows)) {
            return Ok(());
        }
        if !g.is_spanning_tree(&u_labels.union(f_cols)) {
            return Ok(());
        }
        let mut rows: Vec<usize> = chosen.iter().map(|&k| layout.live[k]).collect();
        rows.extend(&layout.extra_rows);
        rows.sort_unstable();
        let mut cols: Vec<usize> = chosen.iter().map(|&k| layout.live[k]).collect();
        cols.extend(&layout.extra_cols);
        cols.sort_unstable();
        let d1 = fixture.det_of_rows(&rows);
        let d2 = fixture.det_of_rows(&cols);
        debug_assert!(d1.abs() == 1 && d2.abs() == 1);
        let u_parity: usize = chosen
            .iter()
            .map(|&k| layout.row_pos[k] + layout.col_pos[k])
            .sum();
        let sign = if (base_parity + u_parity) % 2 == 0 {
            1i64
        } else {
            -1i64
        };
        let monomial = Monomial::from_powers(
            (0..live_count)
                .filter(|k| !chosen.contains(k))
                .map(|k| (fixture.edge_labels[layout.live[k]].clone(), 1u32)),
        );
        *out = out.add(&Polynomial::from_term(
            BigInt::from(sign * d1 * d2),
            monomial,
        ));
        return Ok(());
    }
    let remaining = take - chosen.len();
    for k in start..live_count {
        if live_count - k < remaining {
            break;
        }
        chosen.push(k);
        enumerate_trees(
            g, fixture, layout, f_rows, f_cols, take, k + 1, chosen, base_parity, live_count, out,
        )?;
        chosen.pop();
    }
    Ok(())
}

/// Dodgson polynomial straight from the matrix definition: delete the rows
/// of `I` and columns of `J` from the full graph matrix, zero the
/// variables in `K`, and expand the determinant symbolically. Exact,
/// including the fixture-determined overall sign. Oracle scale only.
pub fn dodgson_matrix_oracle(
    g: &Multigraph,
    fixture: &IncidenceFixture,
    spec: &DodgsonSpec,
) -> Result<Polynomial, KirchhoffError> {
    if g.edge_count() > ORACLE_MAX_EDGES {
        return Err(KirchhoffError::OracleScale {
            edges: g.edge_count(),
            cap: ORACLE_MAX_EDGES,
        });
    }
    spec.validate(g)?;
    let n = fixture.edge_labels.len();
    let m = fixture.vertex_tokens.len().saturating_sub(1);
    let kept_rows: Vec<usize> = (0..n)
        .filter(|&e| !spec.i.contains(&fixture.edge_labels[e]))
        .collect();
    let kept_cols: Vec<usize> = (0..n)
        .filter(|&e| !spec.j.contains(&fixture.edge_labels[e]))
        .collect();
    let dim = kept_rows.len() + m;
    debug_assert_eq!(dim, kept_cols.len() + m);

    // Integer part of the matrix (all variables set to zero).
    let mut base = vec![vec![0i128; dim]; dim];
    for (ri, &e) in kept_rows.iter().enumerate() {
        for c in 0..m {
            base[ri][kept_cols.len() + c] = fixture.rows[e][c] as i128;
        }
    }
    for r in 0..m {
        for (ci, &e) in kept_cols.iter().enumerate() {
            base[kept_rows.len() + r][ci] = -(fixture.rows[e][r] as i128);
        }
    }

    // Live variable entries sit at (row of e, column of e).
    let layout = spec_layout(fixture, spec);
    let live = &layout.live;
    let mut out = Polynomial::zero();
    for mask in 0u32..(1u32 << live.len()) {
        // Subset of variables taken from their diagonal entries; the
        // complementary minor is a pure integer determinant.
        let mut del_rows = Vec::new();
        let mut del_cols = Vec::new();
        let mut parity = 0usize;
        let mut powers: Vec<(String, u32)> = Vec::new();
        for (k, &e) in live.iter().enumerate() {
            if mask & (1 << k) != 0 {
                del_rows.push(layout.row_pos[k] - 1);
                del_cols.push(layout.col_pos[k] - 1);
                parity += layout.row_pos[k] + layout.col_pos[k];
                powers.push((fixture.edge_labels[e].clone(), 1));
            }
        }
        let minor = delete_rows_cols(&base, &del_rows, &del_cols);
        let det = int_det(minor);
        if det == 0 {
            continue;
        }
        let sign = if parity % 2 == 0 { 1 } else { -1 };
        out = out.add(&Polynomial::from_term(
            BigInt::from(det * sign),
            Monomial::from_powers(powers),
        ));
    }
    Ok(out)
}

fn delete_rows_cols(base: &[Vec<i128>], del_rows: &[usize], del_cols: &[usize]) -> Vec<Vec<i128>> {
    base.iter()
        .enumerate()
        .filter(|(r, _)| !del_rows.contains(r))
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(c, _)| !del_cols.contains(c))
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// Exact integer determinant, fraction-free Bareiss elimination.
fn int_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| m[r][k] != 0);
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// The thirty generically distinct Dodgson specs attached to a
/// 5-configuration: fifteen of shape `Psi^{ab,cd}_e` and fifteen of shape
/// `Psi^{abe,cde}`, deduplicated under `I <-> J` symmetry, in a fixed
/// deterministic order.
pub fn enumerate_dodgson_specs(s: &EdgeSet) -> Result<Vec<DodgsonSpec>, KirchhoffError> {
    if s.len() != 5 {
        return Err(KirchhoffError::NotFiveEdges(s.len()));
    }
    let labels: Vec<String> = s.iter().map(|l| l.to_string()).collect();
    let mut out = Vec::with_capacity(30);
    // Shape Psi^{ab,cd}_e: pick K = {e}, then pair the rest; the pair
    // containing the smallest remaining label is I.
    for k in 0..5 {
        let rest: Vec<&String> = labels.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, l)| l).collect();
        for (b, c, d) in [(1, 2, 3), (2, 1, 3), (3, 1, 2)] {
            out.push(DodgsonSpec::new(
                EdgeSet::from_labels([rest[0].clone(), rest[b].clone()]),
                EdgeSet::from_labels([rest[c].clone(), rest[d].clone()]),
                EdgeSet::from_labels([labels[k].clone()]),
            ));
        }
    }
    // Shape Psi^{abx,cdx}: pick the shared edge x, pair the rest.
    for x in 0..5 {
        let rest: Vec<&String> = labels.iter().enumerate().filter(|&(i, _)| i != x).map(|(_, l)| l).collect();
        for (b, c, d) in [(1, 2, 3), (2, 1, 3), (3, 1, 2)] {
            out.push(DodgsonSpec::new(
                EdgeSet::from_labels([rest[0].clone(), rest[b].clone(), labels[x].clone()]),
                EdgeSet::from_labels([rest[c].clone(), rest[d].clone(), labels[x].clone()]),
                EdgeSet::new(),
            ));
        }
    }
    Ok(out)
}

/// The four Dodgson specs that appear in the five-invariant of an ordered
/// edge tuple, in the order `(first product, second product)`.
pub fn five_invariant_specs(e: &[String; 5]) -> [DodgsonSpec; 4] {
    let set = |ls: &[&String]| EdgeSet::from_labels(ls.iter().map(|l| l.to_string()));
    [
        DodgsonSpec::new(set(&[&e[0], &e[1]]), set(&[&e[2], &e[3]]), set(&[&e[4]])),
        DodgsonSpec::new(
            set(&[&e[0], &e[2], &e[4]]),
            set(&[&e[1], &e[3], &e[4]]),
            EdgeSet::new(),
        ),
        DodgsonSpec::new(set(&[&e[0], &e[2]]), set(&[&e[1], &e[3]]), set(&[&e[4]])),
        DodgsonSpec::new(
            set(&[&e[0], &e[1], &e[4]]),
            set(&[&e[2], &e[3], &e[4]]),
            EdgeSet::new(),
        ),
    ]
}

/// Five-invariant of an ordered 5-tuple of distinct edges:
/// `±(Psi^{e1e2,e3e4}_{e5} * Psi^{e1e3e5,e2e4e5} - Psi^{e1e3,e2e4}_{e5} *
/// Psi^{e1e2e5,e3e4e5})`, all four Dodgsons taken through one shared
/// fixture. The overall sign is normalized so the leading canonical term
/// is positive.
pub fn five_invariant(g: &Multigraph, edges: &[String; 5]) -> Result<Polynomial, KirchhoffError> {
    for (a, b) in edges.iter().enumerate().flat_map(|(i, x)| {
        edges[i + 1..].iter().map(move |y| (x, y))
    }) {
        if a == b {
            return Err(KirchhoffError::DuplicateEdges);
        }
    }
    let fixture = IncidenceFixture::new(g);
    let specs = five_invariant_specs(edges);
    let d: Vec<Polynomial> = specs
        .iter()
        .map(|s| dodgson(g, &fixture, s))
        .collect::<Result<_, _>>()?;
    let p = d[0].mul(&d[1]).sub(&d[2].mul(&d[3]));
    Ok(normalize_sign(p))
}

/// Flip the overall sign when the leading canonical coefficient is
/// negative.
pub fn normalize_sign(p: Polynomial) -> Polynomial {
    match p.leading_term() {
        Some((_, c)) if c.is_negative() => p.negate(),
        _ => p,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceAction {
    /// The starting five-invariant of the first five edges in the order.
    FiveInvariant,
    /// One discriminant-and-square-root reduction step.
    Reduced,
    /// The polynomial does not involve this variable; the step is skipped
    /// rather than silently squared.
    VariableAbsent,
}

#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub step: usize,
    pub variable: Option<String>,
    pub action: TraceAction,
    pub poly: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReduceStatus {
    ReducedToZero { step: usize },
    ReducedToConstant { step: usize },
    NonSquareDiscriminant { step: usize, variable: String },
    NotQuadratic { step: usize, variable: String },
    Exhausted,
}

impl std::fmt::Display for ReduceStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReduceStatus::ReducedToZero { step } => write!(f, "reduced to zero at step {step}"),
            ReduceStatus::ReducedToConstant { step } => {
                write!(f, "reduced to constant at step {step}")
            }
            ReduceStatus::NonSquareDiscriminant { step, variable } => {
                write!(f, "non-square discriminant at step {step} (variable {variable})")
            }
            ReduceStatus::NotQuadratic { step, variable } => {
                write!(f, "not quadratic at step {step} (variable {variable})")
            }
            ReduceStatus::Exhausted => write!(f, "edge order exhausted"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub entries: Vec<TraceEntry>,
    pub status: ReduceStatus,
}

impl ReductionTrace {
    pub fn final_poly(&self) -> &Polynomial {
        &self.entries.last().expect("trace has a start entry").poly
    }
}

/// One reduction step: split `p = A v^2 + B v + C` and return the perfect
/// square root of the discriminant `B^2 - 4AC`, or the obstruction.
pub fn reduce_step(p: &Polynomial, variable: &str) -> Result<Option<Polynomial>, PolyError> {
    let (a, b, c) = p.coefficient_slices(variable)?;
    let disc = b.mul(&b).sub(&a.mul(&c).mul_scalar(&BigInt::from(4)));
    Ok(disc.perfect_square_root())
}

/// Denominator reduction along a full edge order: the five-invariant of
/// the first five edges, then one discriminant square-root step per
/// remaining edge. Obstructions terminate the trace with a status rather
/// than an error.
pub fn denominator_reduce(
    g: &Multigraph,
    order: &[String],
) -> Result<ReductionTrace, KirchhoffError> {
    if g.edge_count() < 6 {
        return Err(KirchhoffError::TooFewEdges(g.edge_count()));
    }
    let mut seen = EdgeSet::new();
    for l in order {
        if !g.has_edge(l) || seen.contains(l) {
            return Err(KirchhoffError::BadOrder(l.clone()));
        }
        seen.insert(l.clone());
    }
    if seen.len() != g.edge_count() {
        return Err(KirchhoffError::BadOrder("incomplete order".to_string()));
    }
    let first: [String; 5] = order[..5].to_vec().try_into().unwrap();
    let mut current = five_invariant(g, &first)?;
    let mut entries = vec![TraceEntry {
        step: 5,
        variable: None,
        action: TraceAction::FiveInvariant,
        poly: current.clone(),
    }];
    if current.is_zero() {
        return Ok(ReductionTrace {
            entries,
            status: ReduceStatus::ReducedToZero { step: 5 },
        });
    }
    for (idx, variable) in order.iter().enumerate().skip(5) {
        let step = idx + 1;
        if current.variables().is_empty() {
            return Ok(ReductionTrace {
                entries,
                status: ReduceStatus::ReducedToConstant { step: step - 1 },
            });
        }
        if current.degree_in(variable) == 0 {
            entries.push(TraceEntry {
                step,
                variable: Some(variable.clone()),
                action: TraceAction::VariableAbsent,
                poly: current.clone(),
            });
            continue;
        }
        match current.coefficient_slices(variable) {
            Err(PolyError::NotQuadratic { .. }) => {
                return Ok(ReductionTrace {
                    entries,
                    status: ReduceStatus::NotQuadratic {
                        step,
                        variable: variable.clone(),
                    },
                });
            }
            Err(e) => return Err(e.into()),
            Ok((a, b, c)) => {
                let disc = b.mul(&b).sub(&a.mul(&c).mul_scalar(&BigInt::from(4)));
                match disc.perfect_square_root() {
                    None => {
                        return Ok(ReductionTrace {
                            entries,
                            status: ReduceStatus::NonSquareDiscriminant {
                                step,
                                variable: variable.clone(),
                            },
                        });
                    }
                    Some(root) => {
                        current = root;
                        entries.push(TraceEntry {
                            step,
                            variable: Some(variable.clone()),
                            action: TraceAction::Reduced,
                            poly: current.clone(),
                        });
                        if current.is_zero() {
                            return Ok(ReductionTrace {
                                entries,
                                status: ReduceStatus::ReducedToZero { step },
                            });
                        }
                    }
                }
            }
        }
    }
    let status = if current.variables().is_empty() {
        ReduceStatus::ReducedToConstant {
            step: order.len(),
        }
    } else {
        ReduceStatus::Exhausted
    };
    Ok(ReductionTrace { entries, status })
}
