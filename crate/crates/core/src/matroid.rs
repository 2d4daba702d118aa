//! Matroids given by rank oracles, their minors and duals, and the
//! connectivity system λ_M(X) = r(X) + r(E∖X) − r(M) + 1.

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, parse_err, Error, Result};
use crate::gf2;
use crate::subset::{GroundSet, SubsetMask};
use crate::system::ConnectivitySystem;
use crate::tangle;

/// Most rows a GF(2) representation may have.
pub const MAX_GF2_ROWS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backing {
    /// Column matroid of a binary matrix; `columns[i]` holds column `i`
    /// with row `j` in bit `j`.
    Gf2 {
        rows: usize,
        columns: Vec<u64>,
    },
    Uniform {
        rank: usize,
    },
    /// Cycle matroid of a multigraph; element `i` is `edges[i]`.
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    Dual(Box<Matroid>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    ground: GroundSet,
    backing: Backing,
    full_rank: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MinorKind {
    Delete,
    Contract,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MinorOp {
    pub kind: MinorKind,
    pub element: usize,
}

impl Matroid {
    fn build(ground: GroundSet, backing: Backing) -> Result<Self> {
        if ground.is_empty() {
            return domain("a matroid needs at least one element");
        }
        let mut m = Matroid {
            ground,
            backing,
            full_rank: 0,
        };
        m.full_rank = m.rank_of(m.ground.full());
        Ok(m)
    }

    pub fn uniform(rank: usize, n: usize) -> Result<Self> {
        if rank > n {
            return domain(format!("uniform matroid needs r ≤ n, got r={rank}, n={n}"));
        }
        Matroid::build(GroundSet::indexed(n)?, Backing::Uniform { rank })
    }

    /// Column matroid of a binary matrix given row by row.
    pub fn from_gf2_rows<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return domain("ragged GF(2) matrix");
        }
        if rows.len() > MAX_GF2_ROWS {
            return domain(format!("at most {MAX_GF2_ROWS} rows are supported"));
        }
        let mut columns = vec![0u64; cols];
        for (j, row) in rows.iter().enumerate() {
            for (i, &b) in row.as_ref().iter().enumerate() {
                if b {
                    columns[i] |= 1 << j;
                }
            }
        }
        Matroid::from_gf2_columns(rows.len(), columns)
    }

    pub fn from_gf2_columns(rows: usize, columns: Vec<u64>) -> Result<Self> {
        if rows > MAX_GF2_ROWS {
            return domain(format!("at most {MAX_GF2_ROWS} rows are supported"));
        }
        if rows < 64 && columns.iter().any(|&c| c >> rows != 0) {
            return domain("column has bits beyond the row count");
        }
        Matroid::build(
            GroundSet::indexed(columns.len())?,
            Backing::Gf2 { rows, columns },
        )
    }

    /// Cycle matroid with elements labelled by `labels`.
    pub fn graphic(vertices: usize, edges: Vec<(usize, usize)>, labels: GroundSet) -> Result<Self> {
        if labels.len() != edges.len() {
            return domain("one label per edge is required");
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return domain(format!("edge {u}-{v} uses a vertex outside 0..{vertices}"));
        }
        Matroid::build(labels, Backing::Graphic { vertices, edges })
    }

    pub fn with_labels(mut self, ground: GroundSet) -> Result<Self> {
        if ground.len() != self.ground.len() {
            return domain("relabelling must keep the ground set size");
        }
        self.ground = ground;
        Ok(self)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    /// r(M), computed once at construction.
    pub fn full_rank(&self) -> u32 {
        self.full_rank
    }

    pub fn rank(&self, x: SubsetMask) -> Result<u32> {
        self.ground.check_mask(x)?;
        Ok(self.rank_of(x))
    }

    pub(crate) fn rank_of(&self, x: SubsetMask) -> u32 {
        match &self.backing {
            Backing::Gf2 { columns, .. } => gf2::rank(x.elements().map(|i| columns[i])),
            Backing::Uniform { rank } => x.len().min(*rank) as u32,
            Backing::Graphic { vertices, edges } => {
                let mut uf = UnionFind::new(*vertices);
                x.elements()
                    .filter(|&i| uf.union(edges[i].0, edges[i].1))
                    .count() as u32
            }
            Backing::Dual(inner) => {
                let n = self.len();
                x.len() as u32 + inner.rank_of(x.complement(n)) - inner.full_rank
            }
        }
    }

    /// λ_M(X) = r(X) + r(E∖X) − r(M) + 1.
    pub fn connectivity(&self, x: SubsetMask) -> Result<u32> {
        self.ground.check_mask(x)?;
        Ok(self.connectivity_of(x))
    }

    fn connectivity_of(&self, x: SubsetMask) -> u32 {
        self.rank_of(x) + self.rank_of(x.complement(self.len())) + 1 - self.full_rank
    }

    /// M∖e. Surviving elements keep their labels.
    pub fn delete(&self, e: usize) -> Result<Self> {
        self.ground.check_index(e)?;
        if self.len() == 1 {
            return domain("cannot remove the last element of a matroid");
        }
        let ground = self.ground.without(e);
        let backing = match &self.backing {
            Backing::Gf2 { rows, columns } => {
                let mut columns = columns.clone();
                columns.remove(e);
                Backing::Gf2 {
                    rows: *rows,
                    columns,
                }
            }
            Backing::Uniform { rank } => Backing::Uniform {
                rank: (*rank).min(self.len() - 1),
            },
            Backing::Graphic { vertices, edges } => {
                let mut edges = edges.clone();
                edges.remove(e);
                Backing::Graphic {
                    vertices: *vertices,
                    edges,
                }
            }
            Backing::Dual(inner) => Backing::Dual(Box::new(inner.contract(e)?)),
        };
        Matroid::build(ground, backing)
    }

    /// M/e. Contracting a loop is the same as deleting it.
    pub fn contract(&self, e: usize) -> Result<Self> {
        self.ground.check_index(e)?;
        if self.len() == 1 {
            return domain("cannot remove the last element of a matroid");
        }
        let ground = self.ground.without(e);
        let backing = match &self.backing {
            Backing::Gf2 { rows, columns } => {
                let pivot = columns[e];
                if pivot == 0 {
                    return self.delete(e);
                }
                let p = pivot.trailing_zeros();
                let columns = columns
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != e)
                    .map(|(_, &c)| {
                        let c = if c >> p & 1 == 1 { c ^ pivot } else { c };
                        // drop row p
                        let low = c & ((1u64 << p) - 1);
                        let high = (c >> (p + 1)) << p;
                        low | high
                    })
                    .collect();
                Backing::Gf2 {
                    rows: rows - 1,
                    columns,
                }
            }
            Backing::Uniform { rank } => Backing::Uniform {
                rank: rank.saturating_sub(1),
            },
            Backing::Graphic { vertices, edges } => {
                let (a, b) = edges[e];
                if a == b {
                    return self.delete(e);
                }
                let edges = edges
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != e)
                    .map(|(_, &(u, v))| (if u == b { a } else { u }, if v == b { a } else { v }))
                    .collect();
                Backing::Graphic {
                    vertices: *vertices,
                    edges,
                }
            }
            Backing::Dual(inner) => Backing::Dual(Box::new(inner.delete(e)?)),
        };
        Matroid::build(ground, backing)
    }

    pub fn apply(&self, op: MinorOp) -> Result<Self> {
        match op.kind {
            MinorKind::Delete => self.delete(op.element),
            MinorKind::Contract => self.contract(op.element),
        }
    }

    /// The dual matroid, r*(X) = |X| − r(M) + r(E∖X).
    pub fn dual(&self) -> Matroid {
        if let Backing::Dual(inner) = &self.backing {
            let mut m = (**inner).clone();
            m.ground = self.ground.clone();
            return m;
        }
        let n = self.len();
        let full_rank = n as u32 - self.full_rank;
        Matroid {
            ground: self.ground.clone(),
            backing: Backing::Dual(Box::new(self.clone())),
            full_rank,
        }
    }

    /// True when both matroids have the same labels and the same rank on
    /// every subset.
    pub fn rank_equal(&self, other: &Matroid) -> bool {
        self.ground == other.ground
            && SubsetMask::all(self.len()).all(|x| self.rank_of(x) == other.rank_of(x))
    }

    /// The connectivity system K(M).
    pub fn system(&self) -> ConnectivitySystem {
        let m = Arc::new(self.clone());
        ConnectivitySystem::from_fn(self.ground.clone(), move |x| m.connectivity_of(x))
    }

    /// Checks the inequality
    /// λ_{M∖e}(A) + λ_{M/e}(B) ≥ λ_M(A∩B) + λ_M(A∪B∪{e}) − 1
    /// for sets `a`, `b` avoiding `e`.
    pub fn check_bc_inequality(&self, a: SubsetMask, b: SubsetMask, e: usize) -> Result<bool> {
        self.ground.check_index(e)?;
        self.ground.check_mask(a)?;
        self.ground.check_mask(b)?;
        if a.contains(e) || b.contains(e) {
            return domain(format!("element {e} must avoid both sets"));
        }
        let deleted = self.delete(e)?;
        let contracted = self.contract(e)?;
        Ok(bc_holds(self, &deleted, &contracted, a, b, e))
    }

    /// Which of K(M∖e) and K(M/e) adhere to K(M).
    pub fn safe_removal(&self, e: usize) -> Result<RemovalOptions> {
        self.ground.check_index(e)?;
        let host = self.system();
        Ok(RemovalOptions {
            delete: self.delete(e)?.system().adheres_to(&host).holds(),
            contract: self.contract(e)?.system().adheres_to(&host).holds(),
        })
    }

    /// Which of M∖e and M/e split no tangle of M, by direct tangle
    /// enumeration rather than adherence.
    pub fn split_free_removal(&self, e: usize) -> Result<RemovalOptions> {
        self.ground.check_index(e)?;
        let host = self.system();
        Ok(RemovalOptions {
            delete: tangle::split_free(&host, &self.delete(e)?.system())?,
            contract: tangle::split_free(&host, &self.contract(e)?.system())?,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let Some((hl, header)) = lines.next() else {
            return parse_err(1, "empty input");
        };
        let words: Vec<&str> = header.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>()
                .or_else(|_| parse_err(hl, format!("expected a number, got {s:?}")))
        };
        let wrap = |e: Error, line: usize| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                line,
                message: other.to_string(),
            },
        };
        match words.as_slice() {
            ["uniform", r, n] => {
                if let Some((l, _)) = lines.next() {
                    return parse_err(l, "unexpected content after uniform header");
                }
                Matroid::uniform(num(r)?, num(n)?).map_err(|e| wrap(e, hl))
            }
            ["gf2", rows, cols] => {
                let (rows, cols) = (num(rows)?, num(cols)?);
                let mut matrix = Vec::with_capacity(rows);
                for (l, line) in lines.by_ref() {
                    let bits: String = line.chars().filter(|c| !c.is_whitespace()).collect();
                    if bits.len() != cols || !bits.chars().all(|c| c == '0' || c == '1') {
                        return parse_err(l, format!("expected {cols} bits"));
                    }
                    matrix.push(bits.chars().map(|c| c == '1').collect::<Vec<_>>());
                    if matrix.len() == rows {
                        break;
                    }
                }
                if matrix.len() != rows {
                    return parse_err(hl, format!("expected {rows} matrix rows"));
                }
                if let Some((l, _)) = lines.next() {
                    return parse_err(l, "unexpected content after matrix");
                }
                let columns = (0..cols)
                    .map(|i| {
                        matrix
                            .iter()
                            .enumerate()
                            .filter(|(_, r)| r[i])
                            .fold(0u64, |acc, (j, _)| acc | 1 << j)
                    })
                    .collect();
                Matroid::from_gf2_columns(rows, columns).map_err(|e| wrap(e, hl))
            }
            ["graphic", nv] => {
                let nv = num(nv)?;
                let mut edges = Vec::new();
                for (l, line) in lines {
                    let ends: Vec<&str> = line.split_whitespace().collect();
                    let [u, v] = ends[..] else {
                        return parse_err(l, "expected `u v`");
                    };
                    let parse_v = |s: &str| {
                        s.parse::<usize>()
                            .ok()
                            .filter(|&x| x < nv)
                            .ok_or_else(|| Error::Parse {
                                line: l,
                                message: format!("bad vertex {s:?}"),
                            })
                    };
                    edges.push((parse_v(u)?, parse_v(v)?));
                }
                let labels = GroundSet::indexed(edges.len()).map_err(|e| wrap(e, hl))?;
                Matroid::graphic(nv, edges, labels).map_err(|e| wrap(e, hl))
            }
            _ => parse_err(
                hl,
                "expected `uniform <r> <n>`, `gf2 <rows> <cols>` or `graphic <nv>`",
            ),
        }
    }

    /// Serialises GF(2), uniform and graphic matroids in the file format.
    /// Duals have no file representation and yield `None`.
    pub fn to_text(&self) -> Option<String> {
        match &self.backing {
            Backing::Uniform { rank } => Some(format!("uniform {rank} {}\n", self.len())),
            Backing::Gf2 { rows, columns } => {
                let mut out = format!("gf2 {rows} {}\n", columns.len());
                for j in 0..*rows {
                    out.extend(
                        columns
                            .iter()
                            .map(|c| if c >> j & 1 == 1 { '1' } else { '0' }),
                    );
                    out.push('\n');
                }
                Some(out)
            }
            Backing::Graphic { vertices, edges } => {
                let mut out = format!("graphic {vertices}\n");
                for (u, v) in edges {
                    out.push_str(&format!("{u} {v}\n"));
                }
                Some(out)
            }
            Backing::Dual(_) => None,
        }
    }
}

pub(crate) fn bc_holds(
    m: &Matroid,
    deleted: &Matroid,
    contracted: &Matroid,
    a: SubsetMask,
    b: SubsetMask,
    e: usize,
) -> bool {
    let lhs =
        deleted.connectivity_of(a.remove_index(e)) + contracted.connectivity_of(b.remove_index(e));
    let rhs = m.connectivity_of(a & b) + m.connectivity_of((a | b).with(e));
    lhs + 1 >= rhs
}

/// Which removals of an element (or vertex) keep a guarantee.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RemovalOptions {
    pub delete: bool,
    pub contract: bool,
}

impl RemovalOptions {
    pub fn is_empty(self) -> bool {
        !self.delete && !self.contract
    }
}

impl fmt::Display for RemovalOptions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match (self.delete, self.contract) {
            (true, true) => "Both",
            (true, false) => "DeleteOnly",
            (false, true) => "ContractOnly",
            (false, false) => "None",
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already one.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
