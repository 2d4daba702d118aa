//! Small named and seeded random instances for the property sweeps.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::graph::SimpleGraph;
use crate::matroid::Matroid;
use crate::subset::{GroundSet, SubsetMask};
use crate::synthetic::SyntheticSystem;
use crate::system::ConnectivitySystem;

/// Largest matroid the tangle commands accept without `--force`.
pub const TANGLE_CAP_ELEMENTS: usize = 10;
/// Largest graph the tangle commands accept without `--force`.
pub const TANGLE_CAP_VERTICES: usize = 6;

/// SplitMix64 (Steele, Lea and Flood), with its published constants.
/// Output depends only on the seed.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
    Matroid::uniform(r, n)
}

/// Column matroid of a matrix given as rows of '0'/'1' characters.
pub fn from_gf2(rows: &[&str]) -> Result<Matroid> {
    let parsed: Vec<Vec<bool>> = rows
        .iter()
        .map(|r| {
            r.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::Domain(format!("bad matrix entry {c:?}"))),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Matroid::from_gf2_rows(&parsed)
}

/// The Fano plane: columns are the seven nonzero vectors of GF(2)^3.
pub fn fano() -> Matroid {
    Matroid::from_gf2_columns(3, (1..8).collect()).expect("fixed matrix")
}

/// Cycle matroid of a graph; element labels are `u-v` from the vertex labels.
pub fn graphic(g: &SimpleGraph) -> Result<Matroid> {
    let edges = g.edges();
    if edges.is_empty() {
        return domain("graph has no edges");
    }
    let labels = GroundSet::new(
        edges
            .iter()
            .map(|&(u, v)| format!("{}-{}", g.vertices().label(u), g.vertices().label(v))),
    )?;
    Matroid::graphic(g.len(), edges, labels)
}

pub fn path(n: usize) -> Result<SimpleGraph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    SimpleGraph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<SimpleGraph> {
    if n < 3 {
        return domain("a cycle needs at least three vertices");
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    SimpleGraph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<SimpleGraph> {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    SimpleGraph::from_edges(n, &edges)
}

/// Triangular prism: triangles 0-1-2 and 3-4-5 joined by 0-3, 1-4, 2-5.
pub fn prism() -> SimpleGraph {
    SimpleGraph::from_edges(
        6,
        &[
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 4),
            (4, 5),
            (3, 5),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .expect("fixed graph")
}

/// Two vertex-disjoint triangles.
pub fn two_triangles() -> SimpleGraph {
    SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        .expect("fixed graph")
}

pub fn random_gf2(rows: usize, cols: usize, seed: u64) -> Result<Matroid> {
    if rows == 0 || rows > 64 {
        return domain("random GF(2) matrices need 1 to 64 rows");
    }
    let mut rng = SplitMix64::new(seed);
    let mask = if rows == 64 {
        u64::MAX
    } else {
        (1u64 << rows) - 1
    };
    let columns = (0..cols).map(|_| rng.next_u64() & mask).collect();
    Matroid::from_gf2_columns(rows, columns)
}

/// G(n, p): each pair (u, v), u < v in lexicographic order, is an edge
/// when the next draw is below `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<SimpleGraph> {
    if !(0.0..=1.0).contains(&p) {
        return domain("edge probability must lie in [0, 1]");
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < p {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::from_edges(n, &edges)
}

/// Every labelled simple graph on `n` vertices: one per subset of the
/// n(n−1)/2 vertex pairs, in increasing order of that subset.
pub fn all_graphs(n: usize) -> impl Iterator<Item = SimpleGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |bits| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| bits >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        SimpleGraph::from_edges(n, &edges).expect("pairs are distinct")
    })
}

/// The default matroid sweep set.
pub fn sweep_matroids() -> Vec<(String, Matroid)> {
    let tri = cycle(3).expect("triangle");
    vec![
        ("U(1,3)".into(), uniform(1, 3).unwrap()),
        ("U(2,4)".into(), uniform(2, 4).unwrap()),
        ("U(2,5)".into(), uniform(2, 5).unwrap()),
        ("U(3,6)".into(), uniform(3, 6).unwrap()),
        ("Fano".into(), fano()),
        ("M(triangle)".into(), graphic(&tri).unwrap()),
        ("M(K4)".into(), graphic(&complete(4).unwrap()).unwrap()),
        ("M(2 triangles)".into(), graphic(&two_triangles()).unwrap()),
    ]
}

/// Named graph: `pathN`/`pN`, `cycleN`/`cN`, `kN`, `triangle`, `prism`,
/// `two-triangles`.
pub fn named_graph(name: &str) -> Result<SimpleGraph> {
    let lower = name.to_ascii_lowercase();
    let numbered = |prefix: &str| -> Option<usize> { lower.strip_prefix(prefix)?.parse().ok() };
    match lower.as_str() {
        "triangle" => return cycle(3),
        "prism" => return Ok(prism()),
        "two-triangles" | "2triangles" => return Ok(two_triangles()),
        _ => {}
    }
    if let Some(n) = numbered("path").or_else(|| numbered("p")) {
        return path(n);
    }
    if let Some(n) = numbered("cycle").or_else(|| numbered("c")) {
        return cycle(n);
    }
    if let Some(n) = numbered("k") {
        return complete(n);
    }
    domain(format!("unknown graph {name:?}"))
}

/// A parsed instance descriptor, as written on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSpec {
    Uniform { rank: usize, n: usize },
    Fano,
    RandomGf2 { rows: usize, cols: usize },
    Graphic(String),
    Graph(String),
    RandomGraph { n: usize, p: f64 },
    File(String),
}

impl InstanceSpec {
    /// Accepted forms: `uniform:r,n`, `fano`, `gf2-random:rows,cols`,
    /// `graphic:<graph>`, `graph:<graph>`, `graph-random:n,p`, `file:path`,
    /// or a bare graph name.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, args) = s.split_once(':').unwrap_or((s, ""));
        let nums = |args: &str| -> Result<Vec<f64>> {
            args.split(',')
                .map(|a| {
                    a.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Domain(format!("bad number {a:?} in {s:?}")))
                })
                .collect()
        };
        let whole = |x: f64| -> Result<usize> {
            if x >= 0.0 && x.fract() == 0.0 {
                Ok(x as usize)
            } else {
                domain(format!("expected a whole number in {s:?}"))
            }
        };
        match kind {
            "uniform" => match nums(args)?[..] {
                [r, n] => Ok(InstanceSpec::Uniform {
                    rank: whole(r)?,
                    n: whole(n)?,
                }),
                _ => domain("expected uniform:<r>,<n>"),
            },
            "fano" => Ok(InstanceSpec::Fano),
            "gf2-random" => match nums(args)?[..] {
                [r, c] => Ok(InstanceSpec::RandomGf2 {
                    rows: whole(r)?,
                    cols: whole(c)?,
                }),
                _ => domain("expected gf2-random:<rows>,<cols>"),
            },
            "graphic" if !args.is_empty() => Ok(InstanceSpec::Graphic(args.into())),
            "graph" if !args.is_empty() => Ok(InstanceSpec::Graph(args.into())),
            "graph-random" => match nums(args)?[..] {
                [n, p] => Ok(InstanceSpec::RandomGraph { n: whole(n)?, p }),
                _ => domain("expected graph-random:<n>,<p>"),
            },
            "file" if !args.is_empty() => Ok(InstanceSpec::File(args.into())),
            _ if args.is_empty() && named_graph(kind).is_ok() => {
                Ok(InstanceSpec::Graph(kind.into()))
            }
            _ => domain(format!("unrecognised instance {s:?}")),
        }
    }

    /// Builds the instance. `read` loads file contents for `file:` specs.
    pub fn build(&self, seed: u64, read: impl Fn(&str) -> Result<String>) -> Result<Instance> {
        Ok(match self {
            InstanceSpec::Uniform { rank, n } => Instance::Matroid(uniform(*rank, *n)?),
            InstanceSpec::Fano => Instance::Matroid(fano()),
            InstanceSpec::RandomGf2 { rows, cols } => {
                Instance::Matroid(random_gf2(*rows, *cols, seed)?)
            }
            InstanceSpec::Graphic(name) => Instance::Matroid(graphic(&named_graph(name)?)?),
            InstanceSpec::Graph(name) => Instance::Graph(named_graph(name)?),
            InstanceSpec::RandomGraph { n, p } => Instance::Graph(random_graph(*n, *p, seed)?),
            InstanceSpec::File(path) => Instance::parse(&read(path)?)?,
        })
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceSpec::Uniform { rank, n } => write!(f, "uniform:{rank},{n}"),
            InstanceSpec::Fano => write!(f, "fano"),
            InstanceSpec::RandomGf2 { rows, cols } => write!(f, "gf2-random:{rows},{cols}"),
            InstanceSpec::Graphic(g) => write!(f, "graphic:{g}"),
            InstanceSpec::Graph(g) => write!(f, "graph:{g}"),
            InstanceSpec::RandomGraph { n, p } => write!(f, "graph-random:{n},{p}"),
            InstanceSpec::File(p) => write!(f, "file:{p}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Instance {
    Matroid(Matroid),
    Graph(SimpleGraph),
    Synthetic(SyntheticSystem),
}

impl Instance {
    /// Dispatches on the header word of a matroid, graph or system file.
    pub fn parse(text: &str) -> Result<Self> {
        let header = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .and_then(|l| l.split_whitespace().next())
            .unwrap_or("");
        match header {
            "graph" => Ok(Instance::Graph(SimpleGraph::parse(text)?)),
            "system" => Ok(Instance::Synthetic(SyntheticSystem::parse(text)?)),
            _ => Ok(Instance::Matroid(Matroid::parse(text)?)),
        }
    }

    pub fn system(&self) -> ConnectivitySystem {
        match self {
            Instance::Matroid(m) => m.system(),
            Instance::Graph(g) => g.system(),
            Instance::Synthetic(s) => s.system(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Instance::Matroid(m) => m.len(),
            Instance::Graph(g) => g.len(),
            Instance::Synthetic(s) => s.ground().len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Matroid(_) => "matroid",
            Instance::Graph(_) => "graph",
            Instance::Synthetic(_) => "system",
        }
    }

    /// Size cap for tangle work.
    pub fn tangle_cap(&self) -> usize {
        match self {
            Instance::Graph(_) => TANGLE_CAP_VERTICES,
            _ => TANGLE_CAP_ELEMENTS,
        }
    }

    /// Canonical text in the instance's file format. Duals have no file
    /// form and fall back to the rank table.
    pub fn canonical_text(&self) -> String {
        match self {
            Instance::Matroid(m) => m.to_text().unwrap_or_else(|| {
                let ranks: Vec<String> = SubsetMask::all(m.len())
                    .map(|x| m.rank(x).expect("in range").to_string())
                    .collect();
                format!("rank-table {}\n{}\n", m.len(), ranks.join(" "))
            }),
            Instance::Graph(g) => g.to_text(),
            Instance::Synthetic(s) => s.to_text(),
        }
    }
}
