//! Simple graphs with GF(2) adjacency, cut-rank, local complementation
//! and pivoting.

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, parse_err, Error, Result};
use crate::gf2;
use crate::subset::{GroundSet, SubsetMask};
use crate::system::ConnectivitySystem;
use crate::tangle;

/// A simple graph. Row `v` of the adjacency matrix is `adj[v]`, a bit
/// vector over the vertices. Equality is label-sensitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    vertices: GroundSet,
    adj: Vec<u32>,
}

impl SimpleGraph {
    pub fn empty(vertices: GroundSet) -> Result<Self> {
        if vertices.is_empty() {
            return domain("a graph needs at least one vertex");
        }
        let n = vertices.len();
        Ok(SimpleGraph {
            vertices,
            adj: vec![0; n],
        })
    }

    /// Builds a graph on vertices labelled `0..n`. Rejects loops and
    /// repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        SimpleGraph::from_labelled_edges(GroundSet::indexed(n)?, edges)
    }

    pub fn from_labelled_edges(vertices: GroundSet, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::empty(vertices)?;
        for &(u, v) in edges {
            g.vertices.check_index(u)?;
            g.vertices.check_index(v)?;
            if u == v {
                return domain(format!("self-loop at vertex {u}"));
            }
            if g.has_edge(u, v) {
                return domain(format!("duplicate edge {u}-{v}"));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn vertices(&self) -> &GroundSet {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.len() && v < self.len() && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbours(&self, v: usize) -> SubsetMask {
        SubsetMask::from_bits(self.adj[v])
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|u| {
                SubsetMask::from_bits(self.adj[u] & !((2u32 << u) - 1))
                    .elements()
                    .map(move |v| (u, v))
            })
            .collect()
    }

    /// ρ_G(X): GF(2) rank of the adjacency block between X and V∖X.
    pub fn cut_rank(&self, x: SubsetMask) -> Result<u32> {
        self.vertices.check_mask(x)?;
        Ok(self.cut_rank_of(x))
    }

    fn cut_rank_of(&self, x: SubsetMask) -> u32 {
        let outside = x.complement(self.len()).bits();
        gf2::rank(x.elements().map(|v| u64::from(self.adj[v] & outside)))
    }

    /// G*v: complements the subgraph induced on the neighbourhood of `v`.
    pub fn local_complement(&self, v: usize) -> Result<Self> {
        self.vertices.check_index(v)?;
        let mut g = self.clone();
        let nbhd = self.adj[v];
        for u in SubsetMask::from_bits(nbhd).elements() {
            g.adj[u] ^= nbhd & !(1 << u);
        }
        Ok(g)
    }

    /// G×uv = ((G*u)*v)*u, for an edge uv.
    pub fn pivot(&self, u: usize, v: usize) -> Result<Self> {
        self.require_edge(u, v)?;
        self.local_complement(u)?
            .local_complement(v)?
            .local_complement(u)
    }

    /// G−v. Surviving vertices keep their labels.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        self.vertices.check_index(v)?;
        if self.len() == 1 {
            return domain("cannot delete the last vertex");
        }
        let adj = self
            .adj
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != v)
            .map(|(_, &row)| SubsetMask::from_bits(row).remove_index(v).bits())
            .collect();
        Ok(SimpleGraph {
            vertices: self.vertices.without(v),
            adj,
        })
    }

    /// The cut-rank connectivity system CR(G).
    pub fn system(&self) -> ConnectivitySystem {
        let g = Arc::new(self.clone());
        ConnectivitySystem::from_fn(self.vertices.clone(), move |x| g.cut_rank_of(x))
    }

    fn require_edge(&self, u: usize, v: usize) -> Result<()> {
        self.vertices.check_index(u)?;
        self.vertices.check_index(v)?;
        if !self.has_edge(u, v) {
            return domain(format!(
                "{}-{} is not an edge",
                self.vertices.label(u),
                self.vertices.label(v)
            ));
        }
        Ok(())
    }

    /// Checks
    /// ρ_{G−v}(A) + ρ_{(G×uv)−v}(B) ≥ ρ_G(A∩B) + ρ_G(A∪B∪{v}) − 1
    /// for vertex sets `a`, `b` avoiding `v`, where uv is an edge.
    pub fn check_pm_inequality(
        &self,
        a: SubsetMask,
        b: SubsetMask,
        v: usize,
        u: usize,
    ) -> Result<bool> {
        self.require_edge(u, v)?;
        self.vertices.check_mask(a)?;
        self.vertices.check_mask(b)?;
        if a.contains(v) || b.contains(v) {
            return domain(format!("vertex {v} must avoid both sets"));
        }
        let deleted = self.delete_vertex(v)?;
        let pivoted = self.pivot(u, v)?.delete_vertex(v)?;
        Ok(pm_holds(self, &deleted, &pivoted, a, b, v))
    }

    /// Which of CR(G−v) and CR((G×uv)−v) adhere to CR(G).
    pub fn safe_vertex_removal_pm(&self, v: usize, u: usize) -> Result<PivotRemoval> {
        self.require_edge(u, v)?;
        let host = self.system();
        let [deleted, pivoted, _] = self.removal_candidates(v, u)?;
        Ok(PivotRemoval {
            delete: deleted.system().adheres_to(&host).holds(),
            pivot_delete: pivoted.system().adheres_to(&host).holds(),
        })
    }

    /// For each of G−v, (G×uv)−v and (G*v)−v, whether no tangle of CR(G)
    /// splits in its cut-rank system. Decided by tangle enumeration.
    pub fn safe_vertex_removal_mm(&self, v: usize, u: usize) -> Result<VertexMinorRemoval> {
        self.require_edge(u, v)?;
        let host = self.system();
        let [deleted, pivoted, local] = self.removal_candidates(v, u)?;
        Ok(VertexMinorRemoval {
            delete: tangle::split_free(&host, &deleted.system())?,
            pivot_delete: tangle::split_free(&host, &pivoted.system())?,
            local_delete: tangle::split_free(&host, &local.system())?,
        })
    }

    /// `[G−v, (G×uv)−v, (G*v)−v]`.
    pub fn removal_candidates(&self, v: usize, u: usize) -> Result<[SimpleGraph; 3]> {
        self.require_edge(u, v)?;
        Ok([
            self.delete_vertex(v)?,
            self.pivot(u, v)?.delete_vertex(v)?,
            self.local_complement(v)?.delete_vertex(v)?,
        ])
    }

    /// Parses `graph <n>` followed by one `u v` line per edge.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let Some((hl, header)) = lines.next() else {
            return parse_err(1, "empty input");
        };
        let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["graph", n] => n
                .parse::<usize>()
                .or_else(|_| parse_err(hl, format!("bad vertex count {n:?}")))?,
            _ => return parse_err(hl, "expected `graph <n>`"),
        };
        let vertices = GroundSet::indexed(n).map_err(|e| Error::Parse {
            line: hl,
            message: e.to_string(),
        })?;
        let mut g = SimpleGraph::empty(vertices).map_err(|e| Error::Parse {
            line: hl,
            message: e.to_string(),
        })?;
        for (l, line) in lines {
            let ends: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = ends[..] else {
                return parse_err(l, "expected `u v`");
            };
            let vertex = |s: &str| {
                s.parse::<usize>()
                    .ok()
                    .filter(|&x| x < n)
                    .ok_or_else(|| Error::Parse {
                        line: l,
                        message: format!("bad vertex {s:?}"),
                    })
            };
            let (u, v) = (vertex(u)?, vertex(v)?);
            if u == v {
                return parse_err(l, format!("self-loop at {u}"));
            }
            if g.has_edge(u, v) {
                return parse_err(l, format!("duplicate edge {u} {v}"));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("graph {}\n", self.len());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

pub(crate) fn pm_holds(
    g: &SimpleGraph,
    deleted: &SimpleGraph,
    pivoted: &SimpleGraph,
    a: SubsetMask,
    b: SubsetMask,
    v: usize,
) -> bool {
    let lhs = deleted.cut_rank_of(a.remove_index(v)) + pivoted.cut_rank_of(b.remove_index(v));
    let rhs = g.cut_rank_of(a & b) + g.cut_rank_of((a | b).with(v));
    lhs + 1 >= rhs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PivotRemoval {
    pub delete: bool,
    pub pivot_delete: bool,
}

impl PivotRemoval {
    pub fn is_empty(self) -> bool {
        !self.delete && !self.pivot_delete
    }
}

impl fmt::Display for PivotRemoval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match (self.delete, self.pivot_delete) {
            (true, true) => "Both",
            (true, false) => "DeleteOnly",
            (false, true) => "PivotDelete",
            (false, false) => "None",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexMinorRemoval {
    pub delete: bool,
    pub pivot_delete: bool,
    pub local_delete: bool,
}

impl VertexMinorRemoval {
    pub fn split_free_count(self) -> usize {
        [self.delete, self.pivot_delete, self.local_delete]
            .iter()
            .filter(|&&b| b)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn m(bits: u32) -> SubsetMask {
        SubsetMask::from_bits(bits)
    }

    fn path3() -> SimpleGraph {
        catalog::path(3).unwrap()
    }

    #[test]
    fn cut_rank_examples() {
        let c4 = catalog::cycle(4).unwrap();
        assert_eq!(c4.cut_rank(m(0)), Ok(0));
        assert_eq!(c4.cut_rank(m(0b0011)), Ok(2));
        assert_eq!(c4.cut_rank(m(0b0101)), Ok(1));
        assert!(c4.cut_rank(m(0b10000)).is_err());
    }

    #[test]
    fn local_complement_examples() {
        let p = path3();
        assert_eq!(p.local_complement(0).unwrap(), p);
        let tri = p.local_complement(1).unwrap();
        assert_eq!(tri.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(p.local_complement(3).is_err());
    }

    #[test]
    fn pivot_examples() {
        let p = path3();
        assert_eq!(p.pivot(0, 1).unwrap().edges(), vec![(0, 1), (0, 2)]);
        let k2 = SimpleGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.pivot(0, 1).unwrap(), k2);
        assert!(p.pivot(0, 2).is_err());
    }

    #[test]
    fn delete_vertex_examples() {
        let c4 = catalog::cycle(4).unwrap();
        let d = c4.delete_vertex(0).unwrap();
        assert_eq!(d.vertices().labels(), ["1", "2", "3"]);
        // path 1-2-3, re-based to indices 0-1-2
        assert_eq!(d.edges(), vec![(0, 1), (1, 2)]);
        let k4 = catalog::complete(4).unwrap();
        assert_eq!(
            k4.delete_vertex(2).unwrap().edges(),
            vec![(0, 1), (0, 2), (1, 2)]
        );
        let k1 = SimpleGraph::from_edges(1, &[]).unwrap();
        assert!(k1.delete_vertex(0).is_err());
    }

    #[test]
    fn graph_identities_on_small_graphs() {
        for n in 1..=5 {
            for g in catalog::all_graphs(n) {
                let k = g.system();
                for v in 0..n {
                    let lc = g.local_complement(v).unwrap();
                    assert_eq!(lc.local_complement(v).unwrap(), g);
                    assert_eq!(lc.system().table(), k.table());
                }
                for (u, v) in g.edges() {
                    let p1 = g.pivot(u, v).unwrap();
                    let p2 = g
                        .local_complement(v)
                        .unwrap()
                        .local_complement(u)
                        .unwrap()
                        .local_complement(v)
                        .unwrap();
                    assert_eq!(p1, p2);
                    assert_eq!(p1.system().table(), k.table());
                }
            }
        }
    }

    #[test]
    fn systems_pass_axioms() {
        for g in [catalog::cycle(4), catalog::cycle(5), catalog::complete(4)] {
            assert!(g.unwrap().system().verify_axioms().is_empty());
        }
    }

    #[test]
    fn pm_inequality_examples() {
        let c4 = catalog::cycle(4).unwrap();
        assert_eq!(c4.check_pm_inequality(m(0b0100), m(0b1100), 0, 1), Ok(true));
        assert_eq!(c4.check_pm_inequality(m(0), m(0), 0, 1), Ok(true));
        assert!(c4.check_pm_inequality(m(0b1), m(0), 0, 1).is_err());
        assert!(c4.check_pm_inequality(m(0), m(0), 0, 2).is_err());
    }

    #[test]
    fn safe_removal_examples() {
        let c4 = catalog::cycle(4).unwrap();
        assert!(!c4.safe_vertex_removal_pm(0, 1).unwrap().is_empty());
        let c5 = catalog::cycle(5).unwrap();
        for v in 0..5 {
            for u in [(v + 1) % 5, (v + 4) % 5] {
                assert!(!c5.safe_vertex_removal_pm(v, u).unwrap().is_empty());
                assert!(c5.safe_vertex_removal_mm(v, u).unwrap().split_free_count() >= 2);
            }
        }
        let k4 = catalog::complete(4).unwrap();
        for (u, v) in k4.edges() {
            assert!(k4.safe_vertex_removal_mm(v, u).unwrap().split_free_count() >= 2);
            assert!(k4.safe_vertex_removal_mm(u, v).unwrap().split_free_count() >= 2);
        }
    }

    #[test]
    fn parse_graph_files() {
        let g = SimpleGraph::parse("graph 3\n0 1\n1 2\n").unwrap();
        assert_eq!(g, path3());
        assert_eq!(SimpleGraph::parse(&g.to_text()).unwrap(), g);
        for bad in [
            "graph 3\n0 0\n",
            "graph 3\n0 1\n1 0\n",
            "graph 2\n0 2\n",
            "graph\n",
            "graph 0\n",
            "g 2",
        ] {
            assert!(
                matches!(SimpleGraph::parse(bad), Err(Error::Parse { .. })),
                "{bad:?}"
            );
        }
    }
}
