//! Batch command-line front end: graph files, subcommands, and
//! deterministic reports.
//!
//! Graph files are line-based: `#` starts a comment, an optional
//! `vertices:` header declares isolated vertices, and every other line is
//! `<label> <u> <v>` (a loop when `u = v`). Wherever a FILE argument
//! appears, a `builtin:NAME` pseudo-file is accepted too.
//!
//! Exit codes: 0 success, 1 parse/precondition errors, 2 oracle-scale cap
//! errors.

use crate::kirchhoff::{
    self, denominator_reduce, dodgson_matrix_oracle, five_invariant, kirchhoff_det_oracle,
    kirchhoff_poly, DodgsonSpec, IncidenceFixture, KirchhoffError, TraceAction,
};
use crate::multigraph::{EdgeSet, Multigraph};
use crate::splitting::{
    config_splits, is_minor_minimal_nonsplitting, sweep_configs, MinimalityConclusion,
};
use crate::structure::{
    self, delta_y_family, forbidden_minor_scan, is_planar, planar_dual, primitive_divergent,
    three_cut_edge_ordering, DivergenceReport, OrderingResult,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::fs;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "dodgson",
    about = "Kirchhoff/Dodgson polynomials, five-invariants, splitting, and forbidden minors",
    disable_help_subcommand = true
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker parallelism for sweeps; defaults to available parallelism.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kirchhoff polynomial of a graph.
    Psi {
        file: String,
        /// `tree` sums spanning trees; `matrix` uses the determinant
        /// oracle (small graphs only).
        #[arg(long, default_value = "tree")]
        method: Method,
    },
    /// One Dodgson polynomial.
    Dodgson {
        file: String,
        #[arg(long = "I", value_delimiter = ',')]
        i: Vec<String>,
        #[arg(long = "J", value_delimiter = ',')]
        j: Vec<String>,
        #[arg(long = "K", value_delimiter = ',', default_value = "")]
        k: Vec<String>,
        #[arg(long, default_value = "tree")]
        method: Method,
    },
    /// Five-invariant of an ordered edge tuple.
    FiveInv {
        file: String,
        edges: Vec<String>,
    },
    /// Splitting verdicts: whole graph, or one configuration.
    Split {
        file: String,
        /// Five comma-separated edge labels.
        #[arg(long, value_delimiter = ',')]
        config: Option<Vec<String>>,
        /// Re-verify shortcut-tagged verdicts against the full Dodgson
        /// scan.
        #[arg(long)]
        check: bool,
    },
    /// List the non-splitting 5-configurations.
    NonsplitConfigs { file: String },
    /// Verify minor-minimality of a non-splitting graph.
    MinorMinimal { file: String },
    /// Scan for the five forbidden minors.
    ScanMinors { file: String },
    /// Delta-wye family closure.
    DyFamily {
        file: String,
        #[arg(long, default_value_t = 1000)]
        cap: usize,
    },
    /// Planar dual.
    Dual { file: String },
    /// Primitive-divergence check.
    Primdiv { file: String },
    /// Denominator reduction along an edge order.
    Denred {
        file: String,
        #[arg(long, value_delimiter = ',')]
        order: Vec<String>,
    },
    /// Print a builtin graph as a graph file.
    Builtin {
        name: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Nested three-cut edge ordering for a splitting graph.
    Ordering { file: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Tree,
    Matrix,
}

/// Deterministic key-value report.
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    fn new() -> Report {
        Report {
            entries: vec![("format-version".to_string(), json!(FORMAT_VERSION))],
        }
    }

    fn push(&mut self, key: &str, value: Value) {
        self.entries.push((key.to_string(), value));
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                for (k, v) in &self.entries {
                    match v {
                        Value::Array(items) => {
                            let _ = writeln!(out, "{k}:");
                            for item in items {
                                let _ = writeln!(out, "  {}", flat(item));
                            }
                        }
                        other => {
                            let _ = writeln!(out, "{k}: {}", flat(other));
                        }
                    }
                }
                out
            }
            Format::Json => {
                let map: serde_json::Map<String, Value> = self
                    .entries
                    .iter()
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect();
                let mut out = serde_json::to_string_pretty(&Value::Object(map)).unwrap();
                out.push('\n');
                out
            }
        }
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Debug)]
struct CmdError {
    code: i32,
    message: String,
}

impl CmdError {
    fn parse(message: impl Into<String>) -> CmdError {
        CmdError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<KirchhoffError> for CmdError {
    fn from(e: KirchhoffError) -> CmdError {
        let code = match e {
            KirchhoffError::OracleScale { .. } => 2,
            _ => 1,
        };
        CmdError {
            code,
            message: e.to_string(),
        }
    }
}

macro_rules! impl_cmd_error {
    ($($t:ty),+) => {$(
        impl From<$t> for CmdError {
            fn from(e: $t) -> CmdError {
                CmdError { code: 1, message: e.to_string() }
            }
        }
    )+}
}
impl_cmd_error!(
    crate::multigraph::GraphError,
    crate::splitting::SplitError,
    crate::polynomial::PolyError,
    structure::BuiltinError,
    structure::DeltaYError,
    structure::GadgetError,
    structure::PlanarError
);

/// Parse the graph-file text format.
pub fn parse_graph_file(text: &str) -> Result<Multigraph, String> {
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            vertices.extend(rest.split_whitespace().map(|t| t.to_string()));
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(format!(
                "line {}: expected `<label> <u> <v>`, got `{line}`",
                lineno + 1
            ));
        }
        edges.push((
            tokens[0].to_string(),
            tokens[1].to_string(),
            tokens[2].to_string(),
        ));
    }
    Multigraph::new(vertices, edges).map_err(|e| e.to_string())
}

/// Print a graph in the graph-file format; `parse(print(g)) == g`.
pub fn print_graph_file(g: &Multigraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "vertices: {}",
        g.vertices().collect::<Vec<_>>().join(" ")
    );
    for l in g.edge_label_iter() {
        let (a, b) = g.endpoints(l).expect("own edge");
        let _ = writeln!(out, "{l} {a} {b}");
    }
    out
}

fn load_graph(file: &str) -> Result<Multigraph, CmdError> {
    if file.starts_with("builtin:") {
        return structure::parse_builtin_ref(file).map_err(CmdError::from);
    }
    let text = fs::read_to_string(file)
        .map_err(|e| CmdError::parse(format!("cannot read `{file}`: {e}")))?;
    parse_graph_file(&text).map_err(CmdError::parse)
}

fn fixture_lines(report: &mut Report, fixture: &IncidenceFixture) {
    report.push(
        "vertex-order",
        json!(fixture.vertex_order().join(" ")),
    );
    report.push(
        "deleted-vertex",
        json!(fixture.deleted_vertex().unwrap_or("-")),
    );
    report.push("edge-order", json!(fixture.edge_order().join(" ")));
    report.push("orientation", json!("small-to-large endpoint"));
}

/// Run the CLI on the given arguments (without the binary name) and
/// return the exit code together with the rendered report.
pub fn run(argv: &[String]) -> (i32, String) {
    let mut full = vec!["dodgson".to_string()];
    full.extend(argv.iter().cloned());
    let cli = match Cli::try_parse_from(&full) {
        Ok(c) => c,
        Err(e) => {
            let msg = e.to_string();
            let code = if e.use_stderr() { 1 } else { 0 };
            return (code, msg);
        }
    };
    let format = cli.format;
    let jobs = cli.jobs;
    let body = move || match execute(cli.command) {
        Ok(report) => (0, report.render(format)),
        Err(e) => (e.code, format!("error: {}\n", e.message)),
    };
    match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build();
            match pool {
                Ok(pool) => pool.install(body),
                Err(e) => (1, format!("error: {e}\n")),
            }
        }
        None => body(),
    }
}

fn execute(command: Command) -> Result<Report, CmdError> {
    let mut report = Report::new();
    match command {
        Command::Psi { file, method } => {
            let g = load_graph(&file)?;
            let fixture = IncidenceFixture::new(&g);
            let poly = match method {
                Method::Tree => kirchhoff_poly(&g),
                Method::Matrix => kirchhoff_det_oracle(&g)?,
            };
            report.push("command", json!("psi"));
            fixture_lines(&mut report, &fixture);
            report.push("psi", json!(poly.to_string()));
        }
        Command::Dodgson {
            file,
            i,
            j,
            k,
            method,
        } => {
            let g = load_graph(&file)?;
            let fixture = IncidenceFixture::new(&g);
            let spec = DodgsonSpec::new(
                EdgeSet::from_labels(i.into_iter().filter(|s| !s.is_empty())),
                EdgeSet::from_labels(j.into_iter().filter(|s| !s.is_empty())),
                EdgeSet::from_labels(k.into_iter().filter(|s| !s.is_empty())),
            );
            let poly = match method {
                Method::Tree => kirchhoff::dodgson(&g, &fixture, &spec)?,
                Method::Matrix => dodgson_matrix_oracle(&g, &fixture, &spec)?,
            };
            report.push("command", json!("dodgson"));
            fixture_lines(&mut report, &fixture);
            report.push("spec", json!(spec.to_string()));
            report.push("dodgson", json!(poly.to_string()));
        }
        Command::FiveInv { file, edges } => {
            let g = load_graph(&file)?;
            if edges.len() != 5 {
                return Err(CmdError::parse(format!(
                    "five-inv needs exactly 5 edges, got {}",
                    edges.len()
                )));
            }
            let tuple: [String; 5] = edges.clone().try_into().unwrap();
            let fixture = IncidenceFixture::new(&g);
            let poly = five_invariant(&g, &tuple)?;
            report.push("command", json!("five-inv"));
            fixture_lines(&mut report, &fixture);
            report.push("edges", json!(edges.join(" ")));
            report.push("five-invariant", json!(poly.to_string()));
        }
        Command::Split {
            file,
            config,
            check,
        } => {
            let g = load_graph(&file)?;
            report.push("command", json!("split"));
            match config {
                Some(labels) => {
                    if labels.len() != 5 {
                        return Err(CmdError::parse(format!(
                            "--config needs exactly 5 edges, got {}",
                            labels.len()
                        )));
                    }
                    let s = EdgeSet::from_labels(labels);
                    let r = config_splits(&g, &s)?;
                    report.push("config", json!(r.config.to_string()));
                    report.push(
                        "verdict",
                        json!(if r.splits { "splits" } else { "non-splitting" }),
                    );
                    report.push(
                        "witness",
                        json!(r
                            .witness
                            .as_ref()
                            .map(|w| w.to_string())
                            .unwrap_or_else(|| "-".to_string())),
                    );
                    report.push(
                        "shortcut",
                        json!(r
                            .shortcut
                            .map(|t| t.to_string())
                            .unwrap_or_else(|| "none".to_string())),
                    );
                    if check {
                        let slow = config_splits_no_shortcut(&g, &s)?;
                        report.push(
                            "check",
                            json!(if slow == r.splits {
                                "consistent"
                            } else {
                                "MISMATCH"
                            }),
                        );
                    }
                }
                None => {
                    let reports = sweep_configs(&g, true)?;
                    let total = reports.len();
                    let splitting = reports.iter().filter(|r| r.splits).count();
                    let nonsplitting = total - splitting;
                    report.push(
                        "summary",
                        json!(format!(
                            "{nonsplitting} non-splitting / {splitting} splitting of {total}"
                        )),
                    );
                    report.push(
                        "graph-verdict",
                        json!(if nonsplitting == 0 {
                            "splits"
                        } else {
                            "non-splitting"
                        }),
                    );
                    if check {
                        let slow = sweep_configs(&g, false)?;
                        let consistent = slow
                            .iter()
                            .zip(reports.iter())
                            .all(|(a, b)| a.splits == b.splits);
                        report.push(
                            "check",
                            json!(if consistent { "consistent" } else { "MISMATCH" }),
                        );
                    }
                }
            }
        }
        Command::NonsplitConfigs { file } => {
            let g = load_graph(&file)?;
            let configs = crate::splitting::nonsplitting_configs(&g)?;
            report.push("command", json!("nonsplit-configs"));
            report.push("count", json!(configs.len()));
            report.push(
                "configs",
                Value::Array(configs.iter().map(|c| json!(c.to_string())).collect()),
            );
        }
        Command::MinorMinimal { file } => {
            let g = load_graph(&file)?;
            let r = is_minor_minimal_nonsplitting(&g)?;
            report.push("command", json!("minor-minimal"));
            report.push("nonsplitting-count", json!(r.nonsplitting.len()));
            report.push(
                "per-edge",
                Value::Array(
                    r.per_edge
                        .iter()
                        .map(|c| {
                            json!(format!(
                                "{}: delete {} / contract {}",
                                c.edge,
                                if c.delete_splits { "splits" } else { "non-splitting" },
                                if c.contract_splits { "splits" } else { "non-splitting" },
                            ))
                        })
                        .collect(),
                ),
            );
            report.push(
                "conclusion",
                json!(match &r.conclusion {
                    MinimalityConclusion::MinorMinimal => "minor-minimal".to_string(),
                    MinimalityConclusion::ReducibleVia { edge, op } =>
                        format!("reducible-via {op} {edge}"),
                }),
            );
        }
        Command::ScanMinors { file } => {
            let g = load_graph(&file)?;
            let tags = forbidden_minor_scan(&g);
            report.push("command", json!("scan-minors"));
            report.push(
                "minors",
                json!(if tags.is_empty() {
                    "none".to_string()
                } else {
                    tags.iter()
                        .map(|t| t.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                }),
            );
        }
        Command::DyFamily { file, cap } => {
            let g = load_graph(&file)?;
            let family = delta_y_family(&g, cap)?;
            report.push("command", json!("dy-family"));
            report.push("size", json!(family.len()));
            report.push(
                "members",
                Value::Array(
                    family
                        .iter()
                        .map(|m| {
                            json!(format!(
                                "V={} E={} key={}",
                                m.vertex_count(),
                                m.edge_count(),
                                hex(&m.canonical_form())
                            ))
                        })
                        .collect(),
                ),
            );
        }
        Command::Dual { file } => {
            let g = load_graph(&file)?;
            let rs = is_planar(&g)?;
            match rs {
                None => return Err(CmdError::parse("graph is not planar")),
                Some(rs) => {
                    let dual = planar_dual(&g, &rs)?;
                    report.push("command", json!("dual"));
                    report.push("faces", json!(dual.vertex_count()));
                    report.push("dual", json!(print_graph_file(&dual)));
                }
            }
        }
        Command::Primdiv { file } => {
            let g = load_graph(&file)?;
            report.push("command", json!("primdiv"));
            match primitive_divergent(&g) {
                DivergenceReport::PrimitiveDivergent => {
                    report.push("verdict", json!("primitive-divergent"));
                }
                DivergenceReport::EdgeCountMismatch {
                    edges,
                    twice_loop_number,
                } => {
                    report.push("verdict", json!("not-primitive-divergent"));
                    report.push(
                        "reason",
                        json!(format!(
                            "|E| = {edges} but twice the loop number is {twice_loop_number}"
                        )),
                    );
                }
                DivergenceReport::ViolatingSubgraph(sub) => {
                    report.push("verdict", json!("not-primitive-divergent"));
                    report.push(
                        "violating-subgraph-edges",
                        json!(sub.edge_labels().to_string()),
                    );
                }
            }
        }
        Command::Denred { file, order } => {
            let g = load_graph(&file)?;
            let fixture = IncidenceFixture::new(&g);
            let trace = denominator_reduce(&g, &order)?;
            report.push("command", json!("denred"));
            fixture_lines(&mut report, &fixture);
            report.push(
                "trace",
                Value::Array(
                    trace
                        .entries
                        .iter()
                        .map(|e| {
                            let what = match e.action {
                                TraceAction::FiveInvariant => "five-invariant",
                                TraceAction::Reduced => "reduced",
                                TraceAction::VariableAbsent => "variable-absent",
                            };
                            json!(format!(
                                "step {} [{}{}] {}",
                                e.step,
                                what,
                                e.variable
                                    .as_ref()
                                    .map(|v| format!(" {v}"))
                                    .unwrap_or_default(),
                                e.poly
                            ))
                        })
                        .collect(),
                ),
            );
            report.push("status", json!(trace.status.to_string()));
        }
        Command::Builtin { name, n } => {
            let g = structure::builtin(&name, n)?;
            report.push("command", json!("builtin"));
            report.push("name", json!(name));
            report.push("graph", json!(print_graph_file(&g)));
        }
        Command::Ordering { file } => {
            let g = load_graph(&file)?;
            report.push("command", json!("ordering"));
            match three_cut_edge_ordering(&g)? {
                OrderingResult::Ordered(order) => {
                    report.push("ordering", json!(order.join(" ")));
                    report.push("verified", json!(true));
                }
                OrderingResult::NoQualifyingCut(reason) => {
                    report.push("ordering", json!("none"));
                    report.push("diagnostics", json!(reason));
                }
            }
        }
    }
    Ok(report)
}

fn config_splits_no_shortcut(g: &Multigraph, s: &EdgeSet) -> Result<bool, CmdError> {
    let ctx = crate::splitting::SplitContext::new(g);
    let r = crate::splitting::config_splits_with(g, &ctx, s, false)?;
    Ok(r.splits)
}

fn hex(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        let _ = write!(out, "{b:02x}");
    }
    out
}
