//! Partial branch-decompositions: cubic trees whose leaves carry (possibly
//! empty) blocks of elements, their widths, and an exact subset dynamic
//! program that searches for decompositions conforming to a family of sets.

use std::collections::{BTreeMap, VecDeque};

use serde_json::{json, Value};

use crate::error::{domain, Error, Result};
use crate::subset::{covered_by, SubsetMask};
use crate::system::ConnectivitySystem;
use crate::tangle::{self, Tangle};

/// An unrooted tree in which every vertex has degree 1 or 3. The lone
/// vertex and the single edge are allowed as degenerate trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicTree {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl CubicTree {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return domain("a tree needs at least one vertex");
        }
        if edges.len() + 1 != vertex_count {
            return domain(format!(
                "a tree on {vertex_count} vertices has {} edges, got {}",
                vertex_count - 1,
                edges.len()
            ));
        }
        let tree = CubicTree {
            vertex_count,
            edges,
        };
        let mut degree = vec![0usize; vertex_count];
        for &(u, v) in &tree.edges {
            if u >= vertex_count || v >= vertex_count || u == v {
                return domain(format!("bad tree edge {u}-{v}"));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        if vertex_count > 1 {
            if let Some(v) = degree.iter().position(|&d| d != 1 && d != 3) {
                return domain(format!("vertex {v} has degree {}", degree[v]));
            }
        }
        if tree.component(0, usize::MAX).iter().any(|&seen| !seen) {
            return domain("tree is not connected");
        }
        Ok(tree)
    }

    pub fn single_vertex() -> Self {
        CubicTree {
            vertex_count: 1,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v < self.vertex_count && self.degree(v) <= 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.vertex_count)
            .filter(|&v| self.is_leaf(v))
            .collect()
    }

    /// Vertices reachable from `start` without using edge `skip`.
    fn component(&self, start: usize, skip: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for (i, &(a, b)) in self.edges.iter().enumerate() {
                if i == skip {
                    continue;
                }
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

/// A cubic tree plus a map from ground-set elements to its leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialBranchDecomposition {
    tree: CubicTree,
    assign: Vec<usize>,
}

impl PartialBranchDecomposition {
    /// `assign[e]` is the leaf holding element `e`.
    pub fn new(tree: CubicTree, assign: Vec<usize>) -> Result<Self> {
        if let Some((e, &v)) = assign.iter().enumerate().find(|(_, &v)| !tree.is_leaf(v)) {
            return domain(format!("element {e} is mapped to non-leaf vertex {v}"));
        }
        Ok(PartialBranchDecomposition { tree, assign })
    }

    /// Every element on the single vertex.
    pub fn trivial(n: usize) -> Self {
        PartialBranchDecomposition {
            tree: CubicTree::single_vertex(),
            assign: vec![0; n],
        }
    }

    pub fn tree(&self) -> &CubicTree {
        &self.tree
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assign
    }

    pub fn element_count(&self) -> usize {
        self.assign.len()
    }

    /// The set of elements mapped to `leaf`.
    pub fn displayed(&self, leaf: usize) -> Result<SubsetMask> {
        if !self.tree.is_leaf(leaf) {
            return domain(format!("vertex {leaf} is not a leaf"));
        }
        Ok(self.displayed_at(leaf))
    }

    fn displayed_at(&self, v: usize) -> SubsetMask {
        SubsetMask::from_elements(
            self.assign
                .iter()
                .enumerate()
                .filter(|&(_, &l)| l == v)
                .map(|(e, _)| e),
        )
    }

    /// For each tree edge (u, v), the elements on u's side of T − e.
    pub fn edge_sides(&self) -> Vec<SubsetMask> {
        (0..self.tree.edges.len())
            .map(|i| {
                let side = self.tree.component(self.tree.edges[i].0, i);
                SubsetMask::from_elements(
                    self.assign
                        .iter()
                        .enumerate()
                        .filter(|&(_, &l)| side[l])
                        .map(|(e, _)| e),
                )
            })
            .collect()
    }

    pub fn to_json(&self, system: &ConnectivitySystem) -> Value {
        let widths = width(system, self);
        let ground = system.ground();
        let assign: serde_json::Map<String, Value> = self
            .assign
            .iter()
            .enumerate()
            .map(|(e, &leaf)| (ground.label(e).to_string(), json!(leaf)))
            .collect();
        let edge_widths: serde_json::Map<String, Value> = self
            .tree
            .edges
            .iter()
            .zip(&widths.edges)
            .map(|(&(u, v), &w)| (format!("{u}-{v}"), json!(w)))
            .collect();
        json!({
            "tree": self.tree.edges.iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
            "assign": assign,
            "widths": edge_widths,
        })
    }
}

/// Edge widths of a decomposition and their maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Width {
    pub max: u32,
    /// Width of each tree edge, in the tree's edge order.
    pub edges: Vec<u32>,
}

/// Width of every edge; an edgeless tree has width λ(∅).
pub fn width(system: &ConnectivitySystem, d: &PartialBranchDecomposition) -> Width {
    let edges: Vec<u32> = d.edge_sides().into_iter().map(|a| system.at(a)).collect();
    let max = edges
        .iter()
        .copied()
        .max()
        .unwrap_or_else(|| system.at(SubsetMask::EMPTY));
    Width { max, edges }
}

/// Every leaf displays a subset of some member of `family`.
pub fn conforms(d: &PartialBranchDecomposition, family: &[SubsetMask]) -> bool {
    d.tree.leaves().into_iter().all(|l| {
        let shown = d.displayed_at(l);
        shown.is_empty() || family.iter().any(|s| shown.is_subset(*s))
    })
}

/// How subset DP entries were built.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Entry {
    Unbuildable,
    Leaf,
    Split(SubsetMask),
}

/// buildable(X): X is a leaf block, or X splits into two buildable parts
/// of connectivity at most `bound`. O(3^n).
fn build_table(
    system: &ConnectivitySystem,
    bound: u32,
    is_block: impl Fn(SubsetMask) -> bool,
) -> Vec<Entry> {
    let n = system.len();
    let mut table = vec![Entry::Unbuildable; 1 << n];
    table[0] = Entry::Leaf;
    for x in SubsetMask::all(n).skip(1) {
        if is_block(x) {
            table[x.bits() as usize] = Entry::Leaf;
            continue;
        }
        for x1 in x.submasks() {
            if x1.is_empty() || x1 == x {
                continue;
            }
            let x2 = x.difference(x1);
            if table[x1.bits() as usize] != Entry::Unbuildable
                && table[x2.bits() as usize] != Entry::Unbuildable
                && system.at(x1) <= bound
                && system.at(x2) <= bound
            {
                table[x.bits() as usize] = Entry::Split(x1);
                break;
            }
        }
    }
    table
}

/// Turns the DP table into a tree, pairing memo entries into cherries.
fn materialize(n: usize, table: &[Entry]) -> Option<PartialBranchDecomposition> {
    fn grow(
        x: SubsetMask,
        table: &[Entry],
        edges: &mut Vec<(usize, usize)>,
        assign: &mut [usize],
        count: &mut usize,
    ) -> usize {
        let v = *count;
        *count += 1;
        match table[x.bits() as usize] {
            Entry::Leaf => {
                for e in x.elements() {
                    assign[e] = v;
                }
            }
            Entry::Split(x1) => {
                for part in [x1, x.difference(x1)] {
                    let c = grow(part, table, edges, assign, count);
                    edges.push((v, c));
                }
            }
            Entry::Unbuildable => unreachable!("only buildable sets are grown"),
        }
        v
    }

    let full = SubsetMask::full(n);
    let mut edges = Vec::new();
    let mut assign = vec![0; n];
    let mut count = 0;
    match table[full.bits() as usize] {
        Entry::Unbuildable => return None,
        Entry::Leaf => {
            grow(full, table, &mut edges, &mut assign, &mut count);
        }
        // the root would have degree 2, so join its two children directly
        Entry::Split(x1) => {
            let a = grow(x1, table, &mut edges, &mut assign, &mut count);
            let b = grow(
                full.difference(x1),
                table,
                &mut edges,
                &mut assign,
                &mut count,
            );
            edges.push((a, b));
        }
    }
    let tree = CubicTree::new(count, edges).expect("DP output is a cubic tree");
    Some(PartialBranchDecomposition::new(tree, assign).expect("elements sit on leaves"))
}

/// A decomposition of width at most `bound` conforming to `family`, if
/// one exists. When E itself is inside a member the single-vertex
/// decomposition is returned whatever the bound.
pub fn search_conforming(
    system: &ConnectivitySystem,
    family: &[SubsetMask],
    bound: u32,
) -> Result<Option<PartialBranchDecomposition>> {
    let mut union = SubsetMask::EMPTY;
    for &s in family {
        system.ground().check_mask(s)?;
        union = union | s;
    }
    if union != system.full() {
        return domain("the family does not cover the ground set");
    }
    let inside = covered_by(family, system.len());
    let table = build_table(system, bound, |x| inside[x.bits() as usize]);
    Ok(materialize(system.len(), &table))
}

/// Least b ≥ λ(∅) admitting a decomposition of width b with one element
/// per leaf.
pub fn branch_width(system: &ConnectivitySystem) -> u32 {
    let low = system.at(SubsetMask::EMPTY);
    (low..=system.max_value().max(low))
        .find(|&b| {
            let table = build_table(system, b, |x| x.len() <= 1);
            table[system.full().bits() as usize] != Entry::Unbuildable
        })
        .expect("the bound max λ always succeeds")
}

/// Checks the duality between tangles and conforming decompositions for
/// one family: exactly one of "𝒮 extends to an order-k tangle" and "a
/// decomposition of width ≤ k−1 conforms to 𝒮" must hold.
pub fn duality_check(system: &ConnectivitySystem, family: &[SubsetMask], k: u32) -> Result<bool> {
    if k == 0 {
        return domain("order must be at least 1");
    }
    let extends = tangle::extends_to_tangle(system, family, k)?;
    let decomposes = search_conforming(system, family, k - 1)?.is_some();
    Ok(extends != decomposes)
}

/// The unique leaf whose displayed set is not in `tangle`, for a
/// decomposition of width below the tangle's order.
pub fn tangle_leaf(
    system: &ConnectivitySystem,
    tangle: &Tangle,
    d: &PartialBranchDecomposition,
) -> Result<usize> {
    if d.element_count() != system.len() {
        return domain("decomposition is over a different ground set");
    }
    let w = width(system, d).max;
    if w + 1 > tangle.order() {
        return domain(format!(
            "decomposition width {w} is not below the tangle order {}",
            tangle.order()
        ));
    }
    let outside: Vec<usize> = d
        .tree
        .leaves()
        .into_iter()
        .filter(|&l| !tangle.contains(d.displayed_at(l)))
        .collect();
    match outside[..] {
        [leaf] => Ok(leaf),
        _ => Err(Error::Consistency(format!(
            "{} leaves display sets outside the tangle, expected exactly one",
            outside.len()
        ))),
    }
}

/// λ(X) ≤ k and some decomposition of width ≤ k has every leaf displaying
/// a subset of E∖X or a singleton.
pub fn is_weakly_branched(system: &ConnectivitySystem, x: SubsetMask, k: u32) -> bool {
    if system.at(x) > k {
        return false;
    }
    let n = system.len();
    let mut family = vec![x.complement(n)];
    family.extend(x.elements().map(SubsetMask::singleton));
    search_conforming(system, &family, k)
        .expect("family covers E")
        .is_some()
}

/// Some decomposition of width ≤ k displays E∖X at one leaf and at most
/// one element of X at every other leaf.
pub fn is_branched(system: &ConnectivitySystem, x: SubsetMask, k: u32) -> bool {
    // every such decomposition has an edge (or the lone vertex) of width λ(X)
    if system.at(x) > k {
        return false;
    }
    let rest = x.complement(system.len());
    let table = build_table(system, k, |b| b == rest || (b.len() == 1 && b.is_subset(x)));
    table[system.full().bits() as usize] != Entry::Unbuildable
}

/// Keeps the leaves of the elements in `x` and moves every other element
/// to leaf `r`. When λ(X) = κ(X, Y), with Y the set displayed by `r`, no
/// edge width may increase; a violation is reported as a consistency error.
pub fn remap_to_leaf(
    system: &ConnectivitySystem,
    d: &PartialBranchDecomposition,
    r: usize,
    x: SubsetMask,
) -> Result<PartialBranchDecomposition> {
    system.ground().check_mask(x)?;
    let y = d.displayed(r)?;
    if !x.is_disjoint(y) {
        return domain("X must avoid the set displayed by r");
    }
    let assign = d
        .assign
        .iter()
        .enumerate()
        .map(|(e, &leaf)| if x.contains(e) { leaf } else { r })
        .collect();
    let remapped = PartialBranchDecomposition {
        tree: d.tree.clone(),
        assign,
    };
    if system.at(x) == system.kappa(x, y)?.value {
        let before = width(system, d).edges;
        let after = width(system, &remapped).edges;
        if let Some(i) = (0..before.len()).find(|&i| after[i] > before[i]) {
            return Err(Error::Consistency(format!(
                "edge {:?} grew from {} to {} under a linked remap",
                d.tree.edges[i], before[i], after[i]
            )));
        }
    }
    Ok(remapped)
}

/// The unique order-k tangle of a k-entangled system.
fn entangled_tangle(system: &ConnectivitySystem, k: u32) -> Result<Tangle> {
    if !tangle::is_k_entangled(system, k) {
        return domain(format!("system is not {k}-entangled"));
    }
    match tangle::find_extension(system, &[], k) {
        Some(t) => Ok(t),
        None => domain(format!("system has no tangle of order {k}")),
    }
}

/// For a k-entangled system with an order-k tangle 𝒯: every X ∈ 𝒮_k is
/// weakly λ(X)-branched exactly when X ∈ 𝒯. Returns the first
/// counterexample, if any.
pub fn weakly_branched_membership_counterexample(
    system: &ConnectivitySystem,
    k: u32,
) -> Result<Option<SubsetMask>> {
    let t = entangled_tangle(system, k)?;
    Ok(system
        .low_sets(k)
        .into_iter()
        .find(|&x| t.contains(x) != is_weakly_branched(system, x, system.at(x))))
}

pub fn check_weakly_branched_membership(system: &ConnectivitySystem, k: u32) -> Result<bool> {
    Ok(weakly_branched_membership_counterexample(system, k)?.is_none())
}

/// X ∈ 𝒯 is 𝒯-linked when no Y ∈ 𝒯 contains X with λ(Y) < λ(X).
pub fn is_linked(system: &ConnectivitySystem, tangle: &Tangle, x: SubsetMask) -> bool {
    tangle.contains(x)
        && !tangle
            .members()
            .iter()
            .any(|&y| x.is_subset(y) && system.at(y) < system.at(x))
}

/// Every 𝒯-linked member X of the unique order-k tangle is λ(X)-branched.
pub fn linked_members_branched_counterexample(
    system: &ConnectivitySystem,
    k: u32,
) -> Result<Option<SubsetMask>> {
    let t = entangled_tangle(system, k)?;
    Ok(t.members()
        .iter()
        .copied()
        .filter(|&x| is_linked(system, &t, x))
        .find(|&x| !is_branched(system, x, system.at(x))))
}

pub fn check_linked_members_branched(system: &ConnectivitySystem, k: u32) -> Result<bool> {
    Ok(linked_members_branched_counterexample(system, k)?.is_none())
}

/// Every weakly (k−1)-branched set lies in every tangle of order k.
/// Holds for any system, entangled or not.
pub fn branched_outside_tangle_counterexample(
    system: &ConnectivitySystem,
    k: u32,
) -> Option<(Tangle, SubsetMask)> {
    if k == 0 {
        return None;
    }
    let branched: Vec<SubsetMask> = system
        .low_sets(k)
        .into_iter()
        .filter(|&x| is_weakly_branched(system, x, k - 1))
        .collect();
    tangle::enumerate_tangles(system, k)
        .into_iter()
        .find_map(|t| {
            branched
                .iter()
                .copied()
                .find(|&x| !t.contains(x))
                .map(|x| (t.clone(), x))
        })
}

/// All unrooted cubic trees whose leaves are the vertices `0..leaves`,
/// built by inserting leaf i on every edge of each tree with i leaves.
/// Internal vertices are numbered from `leaves` upward.
pub fn cubic_trees(leaves: usize) -> Vec<CubicTree> {
    match leaves {
        0 => return Vec::new(),
        1 => return vec![CubicTree::single_vertex()],
        _ => {}
    }
    let mut trees: Vec<Vec<(usize, usize)>> = vec![vec![(0, 1)]];
    for leaf in 2..leaves {
        let internal = leaves + leaf - 2;
        let mut next = Vec::with_capacity(trees.len() * (2 * leaf - 3));
        for edges in &trees {
            for i in 0..edges.len() {
                let (a, b) = edges[i];
                let mut e = edges.clone();
                e[i] = (a, internal);
                e.push((internal, b));
                e.push((internal, leaf));
                next.push(e);
            }
        }
        trees = next;
    }
    trees
        .into_iter()
        .map(|edges| CubicTree::new(edges.len() + 1, edges).expect("insertion keeps trees cubic"))
        .collect()
}

/// Every decomposition of an n-element ground set obtained by splitting E
/// into nonempty blocks, placing the blocks on the leaves of every cubic
/// tree with that many leaves, and optionally adding one empty leaf.
/// Duplicates up to symmetry are kept. Intended for n ≤ 6.
pub fn enumerate_decompositions(n: usize) -> Vec<PartialBranchDecomposition> {
    let mut out = Vec::new();
    let mut trees_by_leaves: BTreeMap<usize, Vec<(CubicTree, Vec<usize>)>> = BTreeMap::new();
    for blocks in set_partitions(n) {
        let l = blocks.len().max(1);
        for extra in [0, 1] {
            let trees = trees_by_leaves.entry(l + extra).or_insert_with(|| {
                cubic_trees(l + extra)
                    .into_iter()
                    .map(|t| {
                        let leaves = t.leaves();
                        (t, leaves)
                    })
                    .collect()
            });
            for (tree, leaves) in trees.iter() {
                let mut assign = vec![0; n];
                for (i, block) in blocks.iter().enumerate() {
                    for e in block.elements() {
                        assign[e] = leaves[i];
                    }
                }
                out.push(PartialBranchDecomposition {
                    tree: tree.clone(),
                    assign,
                });
            }
        }
    }
    out
}

/// All set partitions of `0..n` into nonempty blocks (restricted growth
/// strings). The empty set has one partition, with no blocks.
pub fn set_partitions(n: usize) -> Vec<Vec<SubsetMask>> {
    fn rec(i: usize, n: usize, blocks: &mut Vec<SubsetMask>, out: &mut Vec<Vec<SubsetMask>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] = blocks[b].with(i);
            rec(i + 1, n, blocks, out);
            blocks[b] = blocks[b].without(i);
        }
        blocks.push(SubsetMask::singleton(i));
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}
