//! `tangles`: command-line checks over connectivity systems, matroids and
//! graphs.

mod report;

use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use tangles_core::branch::{branch_width, search_conforming};
use tangles_core::catalog::{Instance, InstanceSpec};
use tangles_core::tangle::{enumerate_tangles, is_k_entangled, max_tangle_order};
use tangles_core::verify::{self, Scope, Suite};
use tangles_core::{GroundSet, SimpleGraph, SubsetMask};

use report::{Report, Status};

/// Largest graph sweep `verify` runs without --force.
const VERIFY_CAP_VERTICES: usize = 5;

#[derive(Parser)]
#[command(
    name = "tangles",
    version,
    about = "Tangles, removals and branch-width of small connectivity systems"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for random instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run past the size caps (prints a warning).
    #[arg(long, global = true)]
    force: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Target {
    /// Instance: uniform:r,n | fano | gf2-random:rows,cols | graphic:<graph> |
    /// graph:<graph> | graph-random:n,p | file:<path> | <graph name>.
    #[arg(long, required_unless_present = "graph", conflicts_with = "graph")]
    instance: Option<String>,
    /// Graph instance (a graph name, graph-random:n,p or file:<path>).
    #[arg(long)]
    graph: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// List all tangles of a given order.
    Tangles {
        #[command(flatten)]
        target: Target,
        #[arg(short = 'k', long = "order")]
        k: u32,
    },
    /// Which removals of an element (or vertex) adhere and which are split-free.
    SafeRemove {
        #[command(flatten)]
        target: Target,
        /// Element label or index (matroids, systems) or vertex (graphs).
        #[arg(long, visible_alias = "vertex")]
        element: String,
        /// Edge incident to the vertex, as `u,v` (graphs only).
        #[arg(long)]
        edge: Option<String>,
    },
    /// Run a property sweep over the catalog.
    Verify {
        /// Suite name; `list` prints the available suites.
        suite: String,
        /// Largest matroid in the sweep.
        #[arg(long)]
        max_n: Option<usize>,
        /// Largest graph (vertices) in the sweep.
        #[arg(long)]
        max_v: Option<usize>,
        /// Largest order for suites that sweep orders.
        #[arg(short = 'k', long = "order")]
        k: Option<u32>,
    },
    /// Whether there is at most one tangle of each order up to k.
    Entangled {
        #[command(flatten)]
        target: Target,
        #[arg(short = 'k', long = "order")]
        k: u32,
    },
    /// Branch-width with an optimal decomposition.
    BranchWidth {
        #[command(flatten)]
        target: Target,
    },
    /// Pivot a graph on the edge uv.
    Pivot {
        #[arg(long)]
        graph: String,
        u: String,
        v: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Tangles { .. } => "tangles",
            Command::SafeRemove { .. } => "safe-remove",
            Command::Verify { .. } => "verify",
            Command::Entangled { .. } => "entangled",
            Command::BranchWidth { .. } => "branch-width",
            Command::Pivot { .. } => "pivot",
        }
    }
}

struct Loaded {
    instance: Instance,
    descriptor: Value,
}

fn load(spec: &str, graph_only: bool, seed: u64) -> Result<Loaded> {
    let parsed = InstanceSpec::parse(spec).or_else(|e| {
        if graph_only {
            InstanceSpec::parse(&format!("graph:{spec}"))
        } else {
            Err(e)
        }
    })?;
    let instance = parsed.build(seed, |path| {
        std::fs::read_to_string(path)
            .map_err(|e| tangles_core::Error::Domain(format!("cannot read {path}: {e}")))
    })?;
    if graph_only && !matches!(instance, Instance::Graph(_)) {
        bail!("{spec} is not a graph");
    }
    let hash = hex::encode(Sha256::digest(instance.canonical_text().as_bytes()));
    let descriptor = json!({
        "spec": spec,
        "kind": instance.kind(),
        "size": instance.len(),
        "seed": seed,
        "sha256": hash,
    });
    Ok(Loaded {
        instance,
        descriptor,
    })
}

fn load_target(target: &Target, seed: u64) -> Result<Loaded> {
    match (&target.instance, &target.graph) {
        (Some(spec), _) => load(spec, false, seed),
        (None, Some(spec)) => load(spec, true, seed),
        (None, None) => bail!("pass --instance or --graph"),
    }
}

fn check_cap(instance: &Instance, force: bool) -> Result<()> {
    let cap = instance.tangle_cap();
    if instance.len() > cap {
        if !force {
            bail!(
                "the {} has {} elements, above the cap of {cap}; pass --force to run anyway",
                instance.kind(),
                instance.len()
            );
        }
        eprintln!(
            "warning: {} elements exceeds the cap of {cap}; this may be slow",
            instance.len()
        );
    }
    Ok(())
}

/// Resolves a label first, then a numeric index.
fn resolve(ground: &GroundSet, name: &str) -> Result<usize> {
    if let Some(i) = ground.index_of(name.trim()) {
        return Ok(i);
    }
    match name.trim().parse::<usize>() {
        Ok(i) if i < ground.len() => Ok(i),
        _ => bail!("no element or vertex {name:?}"),
    }
}

fn pair_label(ground: &GroundSet, u: usize, v: usize) -> String {
    let (a, b) = (ground.label(u), ground.label(v));
    if a.len() == 1 && b.len() == 1 {
        format!("{a}{b}")
    } else {
        format!("{a}-{b}")
    }
}

fn cmd_tangles(target: &Target, k: u32, cli: &Cli) -> Result<Report> {
    let loaded = load_target(target, cli.seed)?;
    check_cap(&loaded.instance, cli.force)?;
    let system = loaded.instance.system();
    let tangles = enumerate_tangles(&system, k);
    let mut report = Report::new("tangles", Some(loaded.descriptor));
    report.result = json!({
        "order": k,
        "count": tangles.len(),
        "tangles": tangles.iter().map(|t| t.to_json(system.len())).collect::<Vec<_>>(),
    });
    report.line(format!("{} tangle(s) of order {k}", tangles.len()));
    for t in &tangles {
        let members: Vec<String> = t
            .members()
            .iter()
            .map(|&x| system.ground().format_mask(x))
            .collect();
        report.line(format!("  {}", members.join(" ")));
    }
    Ok(report)
}

fn cmd_safe_remove(
    target: &Target,
    element: &str,
    edge: Option<&str>,
    cli: &Cli,
) -> Result<Report> {
    let loaded = load_target(target, cli.seed)?;
    check_cap(&loaded.instance, cli.force)?;
    let mut report = Report::new("safe-remove", Some(loaded.descriptor));
    match &loaded.instance {
        Instance::Matroid(m) => {
            if edge.is_some() {
                bail!("--edge applies to graphs only");
            }
            let e = resolve(m.ground(), element)?;
            let adherence = m.safe_removal(e)?;
            let split_free = m.split_free_removal(e)?;
            let verdicts = json!({
                "element": m.ground().label(e),
                "adherence": adherence.to_string(),
                "split_free": split_free.to_string(),
            });
            report.line(format!("element {}", m.ground().label(e)));
            report.line(format!("adherence: {adherence}"));
            report.line(format!("split-free: {split_free}"));
            if adherence.is_empty() && split_free.is_empty() {
                report.fail(verdicts.clone());
            }
            report.result = verdicts;
        }
        Instance::Graph(g) => {
            let v = resolve(g.vertices(), element)?;
            let edge =
                edge.ok_or_else(|| anyhow!("graphs need --edge u,v incident to the vertex"))?;
            let (a, b) = edge
                .split_once([',', '-'])
                .ok_or_else(|| anyhow!("edge {edge:?} should look like u,v"))?;
            let (a, b) = (resolve(g.vertices(), a)?, resolve(g.vertices(), b)?);
            let u = match (a == v, b == v) {
                (true, false) => b,
                (false, true) => a,
                _ => bail!("edge {edge} is not incident to vertex {element}"),
            };
            let adherence = g.safe_vertex_removal_pm(v, u)?;
            let free = g.safe_vertex_removal_mm(v, u)?;
            let pm_holds = free.delete || free.pivot_delete;
            let mm_holds = free.split_free_count() >= 2;
            let verdicts = json!({
                "vertex": g.vertices().label(v),
                "edge": pair_label(g.vertices(), u.min(v), u.max(v)),
                "adherence": adherence.to_string(),
                "split_free": {
                    "delete": free.delete,
                    "pivot_delete": free.pivot_delete,
                    "local_delete": free.local_delete,
                },
                "split_free_count": free.split_free_count(),
            });
            report.line(format!(
                "vertex {} edge {}",
                g.vertices().label(v),
                pair_label(g.vertices(), u.min(v), u.max(v))
            ));
            report.line(format!("adherence: {adherence}"));
            report.line(format!(
                "split-free: delete={} pivot-delete={} local-delete={} ({} of 3)",
                free.delete,
                free.pivot_delete,
                free.local_delete,
                free.split_free_count()
            ));
            if adherence.is_empty() && !(pm_holds && mm_holds) {
                report.fail(verdicts.clone());
            }
            report.result = verdicts;
        }
        Instance::Synthetic(_) => bail!("safe-remove needs a matroid or a graph"),
    }
    Ok(report)
}

fn cmd_verify(
    suite: &str,
    max_n: Option<usize>,
    max_v: Option<usize>,
    k: Option<u32>,
    cli: &Cli,
) -> Result<Report> {
    if suite == "list" {
        let mut report = Report::new("verify", None);
        report.result = Suite::ALL
            .iter()
            .map(|s| (s.name().to_string(), json!(s.description())))
            .collect::<serde_json::Map<_, _>>()
            .into();
        for s in Suite::ALL {
            report.line(format!("{s:18} {}", s.description()));
        }
        return Ok(report);
    }
    let suite: Suite = suite.parse()?;
    let defaults = suite.default_scope();
    let scope = Scope {
        max_n: max_n.unwrap_or(defaults.max_n),
        max_v: max_v.unwrap_or(defaults.max_v),
        max_k: k.unwrap_or(defaults.max_k),
    };
    if scope.max_v > VERIFY_CAP_VERTICES {
        if !cli.force {
            bail!(
                "--max-v {} is above the cap of {VERIFY_CAP_VERTICES}; pass --force to run anyway",
                scope.max_v
            );
        }
        eprintln!(
            "warning: sweeping every graph on up to {} vertices may take a long time",
            scope.max_v
        );
    }
    let outcome = verify::run_checked(suite, scope)?;
    let mut report = Report::new("verify", None);
    report.result = json!({
        "suite": suite.name(),
        "description": suite.description(),
        "scope": { "max_n": scope.max_n, "max_v": scope.max_v, "max_k": scope.max_k },
        "instances": outcome.instances,
        "checked": outcome.checked,
        "violations": outcome.violation_count,
    });
    report.line(format!("suite {suite}: {}", suite.description()));
    report.line(format!(
        "scope max-n={} max-v={} max-k={}",
        scope.max_n, scope.max_v, scope.max_k
    ));
    report.line(format!(
        "{} cases over {} instances, {} violations",
        outcome.checked, outcome.instances, outcome.violation_count
    ));
    for v in &outcome.violations {
        report.fail(json!({ "instance": v.instance, "detail": v.detail }));
        report.line(format!("  {v}"));
    }
    Ok(report)
}

fn cmd_entangled(target: &Target, k: u32, cli: &Cli) -> Result<Report> {
    let loaded = load_target(target, cli.seed)?;
    check_cap(&loaded.instance, cli.force)?;
    let system = loaded.instance.system();
    let entangled = is_k_entangled(&system, k);
    let top = max_tangle_order(&system);
    let mut report = Report::new("entangled", Some(loaded.descriptor));
    report.result = json!({ "order": k, "entangled": entangled, "max_tangle_order": top });
    report.line(format!("{k}-entangled: {entangled}"));
    report.line(format!("largest tangle order: {top}"));
    Ok(report)
}

fn cmd_branch_width(target: &Target, cli: &Cli) -> Result<Report> {
    let loaded = load_target(target, cli.seed)?;
    check_cap(&loaded.instance, cli.force)?;
    let system = loaded.instance.system();
    if system.is_empty() {
        bail!("branch-width needs at least one element");
    }
    let bw = branch_width(&system);
    let singletons: Vec<SubsetMask> = (0..system.len()).map(SubsetMask::singleton).collect();
    let d = search_conforming(&system, &singletons, bw)?
        .ok_or_else(|| anyhow!("no decomposition at the computed branch-width"))?;
    let mut report = Report::new("branch-width", Some(loaded.descriptor));
    report.result = json!({ "branch_width": bw, "decomposition": d.to_json(&system) });
    report.line(format!("branch-width: {bw}"));
    report.line(format!("tree edges: {:?}", d.tree().edges()));
    Ok(report)
}

fn cmd_pivot(graph: &str, u: &str, v: &str, cli: &Cli) -> Result<Report> {
    let loaded = load(graph, true, cli.seed)?;
    let Instance::Graph(g) = &loaded.instance else {
        unreachable!("load checks the kind")
    };
    let (u, v) = (resolve(g.vertices(), u)?, resolve(g.vertices(), v)?);
    let p: SimpleGraph = g.pivot(u, v)?;
    let edges: Vec<String> = p
        .edges()
        .into_iter()
        .map(|(a, b)| pair_label(p.vertices(), a, b))
        .collect();
    let mut report = Report::new("pivot", Some(loaded.descriptor));
    report.result = json!({
        "pivot": pair_label(g.vertices(), u, v),
        "edges": edges,
        "graph": p.to_text(),
    });
    report.line(format!("pivot on {}", pair_label(g.vertices(), u, v)));
    report.line(format!("edges: {}", edges.join(" ")));
    Ok(report)
}

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Tangles { target, k } => cmd_tangles(target, *k, cli),
        Command::SafeRemove {
            target,
            element,
            edge,
        } => cmd_safe_remove(target, element, edge.as_deref(), cli),
        Command::Verify {
            suite,
            max_n,
            max_v,
            k,
        } => cmd_verify(suite, *max_n, *max_v, *k, cli),
        Command::Entangled { target, k } => cmd_entangled(target, *k, cli),
        Command::BranchWidth { target } => cmd_branch_width(target, cli),
        Command::Pivot { graph, u, v } => cmd_pivot(graph, u, v, cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let report = dispatch(&cli)
        .with_context(|| format!("{} failed", cli.command.name()))
        .unwrap_or_else(|e| {
            eprintln!("error: {:#}", e);
            Report::error(cli.command.name(), &format!("{:#}", e))
        });
    let elapsed = cli.timing.then(|| start.elapsed());
    let out = match cli.format {
        Format::Json => report.to_json(elapsed),
        Format::Text if report.status == Status::Error => String::new(),
        Format::Text => report.to_text(elapsed),
    };
    print!("{out}");
    ExitCode::from(report.status.exit_code() as u8)
}
