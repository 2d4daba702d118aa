//! Exhaustive property sweeps over the catalog. Each suite walks a family
//! of small instances, counts the cases it checked and collects
//! counterexamples.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::branch::{self, PartialBranchDecomposition};
use crate::catalog;
use crate::error::{Error, Result};
use crate::graph::{self, SimpleGraph};
use crate::matroid::{self, Matroid};
use crate::subset::SubsetMask;
use crate::system::ConnectivitySystem;
use crate::tangle::{self, Tangle};

/// Counterexamples kept per suite; the total is still counted.
pub const MAX_RECORDED: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Axioms,
    BcIneq,
    PmIneq,
    PivotInvariance,
    AdheringRemoval,
    AdherenceSplitFree,
    SplitFreeRemoval,
    EntangledRemoval,
    Duality,
    BranchWidth,
    TangleLeaf,
    LinkedRemap,
    WeaklyBranched,
    LinkedBranched,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::Axioms,
        Suite::BcIneq,
        Suite::PmIneq,
        Suite::PivotInvariance,
        Suite::AdheringRemoval,
        Suite::AdherenceSplitFree,
        Suite::SplitFreeRemoval,
        Suite::EntangledRemoval,
        Suite::Duality,
        Suite::BranchWidth,
        Suite::TangleLeaf,
        Suite::LinkedRemap,
        Suite::WeaklyBranched,
        Suite::LinkedBranched,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::BcIneq => "bc-ineq",
            Suite::PmIneq => "pm-ineq",
            Suite::PivotInvariance => "pivot-invariance",
            Suite::AdheringRemoval => "adhering-removal",
            Suite::AdherenceSplitFree => "adherence-split-free",
            Suite::SplitFreeRemoval => "split-free-removal",
            Suite::EntangledRemoval => "entangled-removal",
            Suite::Duality => "duality",
            Suite::BranchWidth => "branch-width",
            Suite::TangleLeaf => "tangle-leaf",
            Suite::LinkedRemap => "linked-remap",
            Suite::WeaklyBranched => "weakly-branched",
            Suite::LinkedBranched => "linked-branched",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Axioms => "connectivity functions are symmetric and submodular",
            Suite::BcIneq => "deletion/contraction connectivity inequality",
            Suite::PmIneq => "deletion/pivot-deletion cut-rank inequality",
            Suite::PivotInvariance => "pivoting preserves cut-rank and is well defined",
            Suite::AdheringRemoval => "some removal always adheres",
            Suite::AdherenceSplitFree => "adherence implies no tangle splits",
            Suite::SplitFreeRemoval => "some removal is split-free",
            Suite::EntangledRemoval => "some removal keeps a matroid k-entangled",
            Suite::Duality => "tangle extension versus conforming decompositions",
            Suite::BranchWidth => "branch-width at least k iff an order-k tangle exists",
            Suite::TangleLeaf => "low-width decompositions have one leaf outside each tangle",
            Suite::LinkedRemap => "linked remaps never widen an edge",
            Suite::WeaklyBranched => "weakly branched sets are exactly the tangle members",
            Suite::LinkedBranched => "linked tangle members are branched",
        }
    }

    /// The scope used by the acceptance suite.
    pub fn default_scope(self) -> Scope {
        let (max_n, max_v) = match self {
            Suite::Axioms => (8, 5),
            Suite::BcIneq => (6, 0),
            Suite::PmIneq | Suite::PivotInvariance => (0, 5),
            Suite::AdheringRemoval | Suite::AdherenceSplitFree => (6, 5),
            Suite::SplitFreeRemoval => (7, 5),
            Suite::EntangledRemoval => (7, 0),
            Suite::Duality => (5, 5),
            Suite::BranchWidth => (6, 5),
            Suite::TangleLeaf
            | Suite::LinkedRemap
            | Suite::WeaklyBranched
            | Suite::LinkedBranched => (5, 5),
        };
        Scope {
            max_n,
            max_v,
            max_k: 4,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::Domain(format!(
                    "unknown suite {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Instance bounds: matroids with at most `max_n` elements, graphs with
/// at most `max_v` vertices, orders up to `max_k` where a suite sweeps k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scope {
    pub max_n: usize,
    pub max_v: usize,
    pub max_k: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub instance: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.instance, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub suite: Suite,
    pub scope: Scope,
    pub instances: usize,
    pub checked: u64,
    pub violation_count: u64,
    /// The first [`MAX_RECORDED`] violations in instance order.
    pub violations: Vec<Violation>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    violations: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(detail());
        }
    }
}

/// A named system of the sweep: a matroid or a graph.
#[derive(Clone)]
enum Subject {
    Matroid(String, Matroid),
    Graph(SimpleGraph),
}

impl Subject {
    fn name(&self) -> String {
        match self {
            Subject::Matroid(name, _) => name.clone(),
            Subject::Graph(g) => describe_graph(g),
        }
    }

    fn system(&self) -> ConnectivitySystem {
        match self {
            Subject::Matroid(_, m) => m.system(),
            Subject::Graph(g) => g.system(),
        }
    }
}

/// `graphN:` followed by the edge list, e.g. `graph3:01,12`.
pub fn describe_graph(g: &SimpleGraph) -> String {
    let edges: Vec<String> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (g.vertices().label(u), g.vertices().label(v));
            if a.len() == 1 && b.len() == 1 {
                format!("{a}{b}")
            } else {
                format!("{a}-{b}")
            }
        })
        .collect();
    format!("graph{}:{}", g.len(), edges.join(","))
}

fn matroids(max_n: usize) -> Vec<Subject> {
    catalog::sweep_matroids()
        .into_iter()
        .filter(|(_, m)| m.len() <= max_n)
        .map(|(name, m)| Subject::Matroid(name, m))
        .collect()
}

fn graphs(max_v: usize) -> Vec<Subject> {
    (1..=max_v.min(8))
        .flat_map(catalog::all_graphs)
        .map(Subject::Graph)
        .collect()
}

fn run_each(
    subjects: &[Subject],
    check: impl Fn(&Subject, &mut Tally) + Sync,
) -> Vec<(String, Tally)> {
    subjects
        .par_iter()
        .map(|s| {
            let mut tally = Tally::default();
            check(s, &mut tally);
            (s.name(), tally)
        })
        .collect()
}

/// Runs one suite over its scope.
pub fn run(suite: Suite, scope: Scope) -> Outcome {
    let mut subjects = Vec::new();
    let per_instance = match suite {
        Suite::Axioms => {
            subjects.extend(matroids(scope.max_n));
            subjects.extend(graphs(scope.max_v));
            run_each(&subjects, axioms)
        }
        Suite::BcIneq => {
            subjects.extend(matroids(scope.max_n));
            run_each(&subjects, bc_inequality)
        }
        Suite::PmIneq => {
            subjects.extend(graphs(scope.max_v));
            run_each(&subjects, pm_inequality)
        }
        Suite::PivotInvariance => {
            subjects.extend(graphs(scope.max_v));
            run_each(&subjects, pivot_invariance)
        }
        Suite::AdheringRemoval => {
            subjects.extend(matroids(scope.max_n));
            subjects.extend(graphs(scope.max_v));
            run_each(&subjects, adhering_removal)
        }
        Suite::AdherenceSplitFree => {
            subjects.extend(matroids(scope.max_n));
            subjects.extend(graphs(scope.max_v));
            run_each(&subjects, adherence_split_free)
        }
        Suite::SplitFreeRemoval => {
            subjects.extend(matroids(scope.max_n));
            subjects.extend(graphs(scope.max_v));
            run_each(&subjects, split_free_removals)
        }
        Suite::EntangledRemoval => {
            subjects.extend(matroids(scope.max_n));
            run_each(&subjects, entangled_removal)
        }
        Suite::Duality => {
            subjects.extend(matroids(scope.max_n));
            subjects.extend(graphs(scope.max_v));
            let cache = ReferenceCache::default();
            run_each(&subjects, |s, t| duality(s, t, scope.max_k, &cache))
        }
        Suite::BranchWidth => {
            subjects.extend(matroids(scope.max_n));
            subjects.extend(graphs(scope.max_v));
            run_each(&subjects, branch_width_duality)
        }
        Suite::TangleLeaf => {
            subjects.extend(matroids(scope.max_n));
            subjects.extend(graphs(scope.max_v));
            let decompositions = DecompositionCache::default();
            run_each(&subjects, |s, t| tangle_leaf(s, t, &decompositions))
        }
        Suite::LinkedRemap => {
            subjects.extend(matroids(scope.max_n));
            subjects.extend(graphs(scope.max_v));
            let decompositions = DecompositionCache::default();
            run_each(&subjects, |s, t| linked_remap(s, t, &decompositions))
        }
        Suite::WeaklyBranched => {
            subjects.extend(matroids(scope.max_n));
            subjects.extend(graphs(scope.max_v));
            run_each(&subjects, weakly_branched)
        }
        Suite::LinkedBranched => {
            subjects.extend(matroids(scope.max_n));
            subjects.extend(graphs(scope.max_v));
            run_each(&subjects, linked_branched)
        }
    };
    let mut outcome = Outcome {
        suite,
        scope,
        instances: per_instance.len(),
        checked: 0,
        violation_count: 0,
        violations: Vec::new(),
    };
    for (instance, tally) in per_instance {
        outcome.checked += tally.checked;
        outcome.violation_count += tally.violations.len() as u64;
        for detail in tally.violations {
            if outcome.violations.len() < MAX_RECORDED {
                outcome.violations.push(Violation {
                    instance: instance.clone(),
                    detail,
                });
            }
        }
    }
    outcome
}

fn axioms(s: &Subject, t: &mut Tally) {
    let violations = s.system().verify_axioms();
    t.check(violations.is_empty(), || violations[0].to_string());
}

fn bc_inequality(s: &Subject, t: &mut Tally) {
    let Subject::Matroid(_, m) = s else { return };
    let n = m.len();
    for e in 0..n {
        let deleted = m.delete(e).expect("element in range");
        let contracted = m.contract(e).expect("element in range");
        let rest = SubsetMask::full(n).without(e);
        for a in rest.submasks() {
            for b in rest.submasks() {
                t.check(matroid::bc_holds(m, &deleted, &contracted, a, b, e), || {
                    format!(
                        "A={} B={} e={}",
                        m.ground().format_mask(a),
                        m.ground().format_mask(b),
                        m.ground().label(e)
                    )
                });
            }
        }
    }
}

fn pm_inequality(s: &Subject, t: &mut Tally) {
    let Subject::Graph(g) = s else { return };
    let n = g.len();
    for v in 0..n {
        for u in g.neighbours(v).elements() {
            let [deleted, pivoted, _] = g.removal_candidates(v, u).expect("uv is an edge");
            let rest = SubsetMask::full(n).without(v);
            for a in rest.submasks() {
                for b in rest.submasks() {
                    t.check(graph::pm_holds(g, &deleted, &pivoted, a, b, v), || {
                        format!(
                            "A={} B={} v={v} u={u}",
                            g.vertices().format_mask(a),
                            g.vertices().format_mask(b)
                        )
                    });
                }
            }
        }
    }
}

fn pivot_invariance(s: &Subject, t: &mut Tally) {
    let Subject::Graph(g) = s else { return };
    let table = g.system().table().to_vec();
    for (u, v) in g.edges() {
        let p = g.pivot(u, v).expect("uv is an edge");
        t.check(p.system().table() == table.as_slice(), || {
            format!("cut-rank changes under pivot {u}{v}")
        });
        let lc = |g: &SimpleGraph, w: usize| g.local_complement(w).expect("vertex in range");
        let other = lc(&lc(&lc(g, v), u), v);
        t.check(p == other, || {
            format!("pivot on {u}{v} depends on the endpoint order")
        });
    }
}

fn adhering_removal(s: &Subject, t: &mut Tally) {
    match s {
        Subject::Matroid(_, m) => {
            for e in 0..m.len() {
                let options = m.safe_removal(e).expect("element in range");
                t.check(!options.is_empty(), || {
                    format!("e={}: neither removal adheres", m.ground().label(e))
                });
            }
        }
        Subject::Graph(g) => {
            for v in 0..g.len() {
                for u in g.neighbours(v).elements() {
                    let options = g.safe_vertex_removal_pm(v, u).expect("uv is an edge");
                    t.check(!options.is_empty(), || {
                        format!("v={v} u={u}: neither removal adheres")
                    });
                }
            }
        }
    }
}

/// The (label, minor) pairs produced by removing one element or vertex.
fn single_removals(s: &Subject) -> Vec<(String, ConnectivitySystem)> {
    let mut out = Vec::new();
    match s {
        Subject::Matroid(_, m) => {
            if m.len() < 2 {
                return out;
            }
            for e in 0..m.len() {
                let label = m.ground().label(e);
                out.push((
                    format!("M\\{label}"),
                    m.delete(e).expect("in range").system(),
                ));
                out.push((
                    format!("M/{label}"),
                    m.contract(e).expect("in range").system(),
                ));
            }
        }
        Subject::Graph(g) => {
            if g.len() < 2 {
                return out;
            }
            for v in 0..g.len() {
                out.push((
                    format!("G-{v}"),
                    g.delete_vertex(v).expect("in range").system(),
                ));
                let lc = g
                    .local_complement(v)
                    .expect("in range")
                    .delete_vertex(v)
                    .expect("in range");
                out.push((format!("G*{v}-{v}"), lc.system()));
                for u in g.neighbours(v).elements() {
                    let p = g
                        .pivot(u, v)
                        .expect("edge")
                        .delete_vertex(v)
                        .expect("in range");
                    out.push((format!("Gx{u}{v}-{v}"), p.system()));
                }
            }
        }
    }
    out
}

fn adherence_split_free(s: &Subject, t: &mut Tally) {
    let host = s.system();
    for (label, minor) in single_removals(s) {
        if minor.adheres_to(&host).holds() {
            let free = tangle::split_free(&host, &minor).expect("host dominates minor");
            t.check(free, || format!("{label} adheres but a tangle splits"));
        }
    }
}

fn split_free_removals(s: &Subject, t: &mut Tally) {
    match s {
        Subject::Matroid(_, m) => {
            if m.len() < 2 {
                return;
            }
            for e in 0..m.len() {
                let options = m.split_free_removal(e).expect("element in range");
                t.check(!options.is_empty(), || {
                    format!("e={}: both removals split a tangle", m.ground().label(e))
                });
            }
        }
        Subject::Graph(g) => {
            for v in 0..g.len() {
                for u in g.neighbours(v).elements() {
                    let r = g.safe_vertex_removal_mm(v, u).expect("uv is an edge");
                    t.check(r.delete || r.pivot_delete, || {
                        format!("v={v} u={u}: both G-v and (G x uv)-v split a tangle")
                    });
                    t.check(r.split_free_count() >= 2, || {
                        format!(
                            "v={v} u={u}: only {} of 3 vertex-minor removals split-free",
                            r.split_free_count()
                        )
                    });
                }
            }
        }
    }
}

fn entangled_removal(s: &Subject, t: &mut Tally) {
    let Subject::Matroid(_, m) = s else { return };
    if m.len() < 2 {
        return;
    }
    let system = m.system();
    let minors: Vec<[ConnectivitySystem; 2]> = (0..m.len())
        .map(|e| {
            [
                m.delete(e).expect("in range").system(),
                m.contract(e).expect("in range").system(),
            ]
        })
        .collect();
    for k in 1..=system.max_value() + 1 {
        if !tangle::is_k_entangled(&system, k) {
            continue;
        }
        for (e, [d, c]) in minors.iter().enumerate() {
            let ok = tangle::is_k_entangled(d, k) || tangle::is_k_entangled(c, k);
            t.check(ok, || {
                format!(
                    "k={k} e={}: both removals break entanglement",
                    m.ground().label(e)
                )
            });
        }
    }
}

/// Reference tangles keyed by the ground size and 𝒮_k, which determine
/// the tangles completely.
type ReferenceKey = (usize, Vec<SubsetMask>);

#[derive(Default)]
struct ReferenceCache(Mutex<HashMap<ReferenceKey, Arc<Result<Vec<Tangle>>>>>);

impl ReferenceCache {
    fn get(&self, system: &ConnectivitySystem, k: u32) -> Arc<Result<Vec<Tangle>>> {
        let key = (system.len(), system.low_sets(k));
        if let Some(hit) = self.0.lock().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let value = Arc::new(tangle::enumerate_tangles_unpruned(system, k));
        self.0
            .lock()
            .expect("cache lock")
            .insert(key, value.clone());
        value
    }
}

fn duality(s: &Subject, t: &mut Tally, max_k: u32, cache: &ReferenceCache) {
    let system = s.system();
    let n = system.len();
    let partitions = branch::set_partitions(n);
    for k in 1..=max_k {
        let low: Vec<bool> = system.table().iter().map(|&v| v < k).collect();
        let reference = cache.get(&system, k);
        let reference = match reference.as_ref() {
            Ok(tangles) => tangles,
            Err(e) => {
                t.check(false, || {
                    format!("k={k}: reference enumerator unavailable: {e}")
                });
                continue;
            }
        };
        for family in partitions
            .iter()
            .filter(|p| p.iter().all(|b| low[b.bits() as usize]))
        {
            let extends =
                tangle::extends_to_tangle(&system, family, k).expect("family is low and covers E");
            let by_reference = reference
                .iter()
                .any(|tg| family.iter().all(|&b| tg.contains(b)));
            let decomposes = branch::search_conforming(&system, family, k - 1)
                .expect("family covers E")
                .is_some();
            let shown = || {
                let blocks: Vec<String> = family
                    .iter()
                    .map(|&b| system.ground().format_mask(b))
                    .collect();
                blocks.join(" ")
            };
            t.check(extends == by_reference, || {
                format!(
                    "k={k} S={}: pruned says {extends}, reference says {by_reference}",
                    shown()
                )
            });
            t.check(extends != decomposes, || {
                format!(
                    "k={k} S={}: extends={extends} but decomposes={decomposes}",
                    shown()
                )
            });
        }
    }
}

fn branch_width_duality(s: &Subject, t: &mut Tally) {
    let system = s.system();
    let bw = branch::branch_width(&system);
    for k in 1..=system.max_value() + 1 {
        let exists = !tangle::enumerate_tangles(&system, k).is_empty();
        t.check((bw >= k) == exists, || {
            format!("branch-width {bw} but an order-{k} tangle exists: {exists}")
        });
    }
}

/// Every partial branch-decomposition of an n-element set, built once.
#[derive(Default)]
struct DecompositionCache(Mutex<HashMap<usize, Arc<Vec<PartialBranchDecomposition>>>>);

impl DecompositionCache {
    fn get(&self, n: usize) -> Arc<Vec<PartialBranchDecomposition>> {
        self.0
            .lock()
            .expect("cache lock")
            .entry(n)
            .or_insert_with(|| Arc::new(branch::enumerate_decompositions(n)))
            .clone()
    }
}

fn tangle_leaf(s: &Subject, t: &mut Tally, cache: &DecompositionCache) {
    let system = s.system();
    let decompositions = cache.get(system.len());
    let widths: Vec<u32> = decompositions
        .iter()
        .map(|d| branch::width(&system, d).max)
        .collect();
    for k in 1..=system.max_value() + 1 {
        for tg in tangle::enumerate_tangles(&system, k) {
            for (d, &w) in decompositions.iter().zip(&widths) {
                if w + 1 > k {
                    continue;
                }
                let leaf = branch::tangle_leaf(&system, &tg, d);
                t.check(leaf.is_ok(), || {
                    format!("k={k} tree {:?}: {}", d.tree().edges(), leaf.unwrap_err())
                });
            }
        }
    }
}

fn linked_remap(s: &Subject, t: &mut Tally, cache: &DecompositionCache) {
    let system = s.system();
    let n = system.len();
    let decompositions = cache.get(n);
    // κ(X, Y) for disjoint X, Y, indexed by X * 2^n + Y
    let mut kappa = HashMap::new();
    for d in decompositions.iter() {
        for leaf in d.tree().leaves() {
            let y = d.displayed(leaf).expect("leaf");
            for x in y.complement(n).submasks() {
                let value = *kappa
                    .entry((x, y))
                    .or_insert_with(|| system.kappa(x, y).expect("in range").value);
                if value != system.at(x) {
                    continue;
                }
                let remapped = branch::remap_to_leaf(&system, d, leaf, x);
                t.check(remapped.is_ok(), || {
                    format!(
                        "tree {:?} r={leaf} X={}: {}",
                        d.tree().edges(),
                        system.ground().format_mask(x),
                        remapped.unwrap_err()
                    )
                });
            }
        }
    }
}

/// Orders k at which the system is k-entangled and has an order-k tangle.
fn entangled_orders(system: &ConnectivitySystem) -> Vec<u32> {
    (1..=system.max_value() + 1)
        .take_while(|&k| tangle::is_k_entangled(system, k))
        .filter(|&k| !tangle::enumerate_tangles(system, k).is_empty())
        .collect()
}

fn weakly_branched(s: &Subject, t: &mut Tally) {
    let system = s.system();
    for k in entangled_orders(&system) {
        let found = branch::weakly_branched_membership_counterexample(&system, k)
            .expect("applicable order");
        t.check(found.is_none(), || {
            let x = found.unwrap();
            format!(
                "k={k} X={}: membership and weak branching disagree",
                system.ground().format_mask(x)
            )
        });
    }
    for k in 1..=system.max_value() + 1 {
        let found = branch::branched_outside_tangle_counterexample(&system, k);
        t.check(found.is_none(), || {
            let (_, x) = found.unwrap();
            format!(
                "k={k} X={}: weakly branched but outside a tangle",
                system.ground().format_mask(x)
            )
        });
    }
}

fn linked_branched(s: &Subject, t: &mut Tally) {
    let system = s.system();
    for k in entangled_orders(&system) {
        let found =
            branch::linked_members_branched_counterexample(&system, k).expect("applicable order");
        t.check(found.is_none(), || {
            let x = found.unwrap();
            format!(
                "k={k} X={}: linked but not branched",
                system.ground().format_mask(x)
            )
        });
    }
}

/// Runs a suite, rejecting scopes that exceed the element limit.
pub fn run_checked(suite: Suite, scope: Scope) -> Result<Outcome> {
    if scope.max_n > crate::subset::MAX_ELEMENTS || scope.max_v > 8 {
        return Err(Error::TooLarge(scope.max_n.max(scope.max_v)));
    }
    Ok(run(suite, scope))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(max_n: usize, max_v: usize) -> Scope {
        Scope {
            max_n,
            max_v,
            max_k: 3,
        }
    }

    #[test]
    fn names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_scopes_pass() {
        for suite in Suite::ALL {
            let outcome = run(suite, small(4, 3));
            assert!(outcome.passed(), "{suite}: {:?}", outcome.violations);
            assert!(outcome.checked > 0, "{suite} checked nothing");
        }
    }

    #[test]
    fn graph_descriptor() {
        let g = catalog::path(3).unwrap();
        assert_eq!(describe_graph(&g), "graph3:01,12");
    }

    #[test]
    fn empty_scope_checks_nothing() {
        let outcome = run(Suite::BcIneq, small(0, 0));
        assert_eq!((outcome.instances, outcome.checked), (0, 0));
        assert!(outcome.passed());
    }
}
