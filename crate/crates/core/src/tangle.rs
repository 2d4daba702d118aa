//! Tangles of connectivity systems: axiom checking, exhaustive
//! enumeration, induced tangles and split detection.
//!
//! A tangle of order k is a set 𝒯 ⊆ 𝒮_k that contains exactly one of A and
//! E∖A for every A ∈ 𝒮_k, has no three members (repetition allowed) whose
//! union is E, and has no member of size |E|−1.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::subset::{covered_by, SubsetMask};
use crate::system::{ConnectivitySystem, Embedding};

/// Most complementary pairs the unpruned reference enumerator will visit
/// (2^pairs orientations).
pub const MAX_REFERENCE_PAIRS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tangle {
    order: u32,
    members: Vec<SubsetMask>,
}

impl Tangle {
    pub(crate) fn from_unsorted(order: u32, mut members: Vec<SubsetMask>) -> Self {
        members.sort_unstable();
        members.dedup();
        Tangle { order, members }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Members sorted by mask value.
    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn contains(&self, x: SubsetMask) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// 𝒯 ∩ 𝒮_t for t ≤ order.
    pub fn restrict(&self, system: &ConnectivitySystem, t: u32) -> Tangle {
        Tangle {
            order: t.min(self.order),
            members: self
                .members
                .iter()
                .copied()
                .filter(|&x| system.at(x) < t)
                .collect(),
        }
    }

    pub fn to_json(&self, n: usize) -> TangleJson {
        TangleJson {
            order: self.order,
            members: self
                .members
                .iter()
                .map(|m| m.to_binary_lsb_left(n))
                .collect(),
        }
    }
}

/// Serialised tangle: masks as binary strings with element 0 leftmost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangleJson {
    pub order: u32,
    pub members: Vec<String>,
}

impl TangleJson {
    pub fn to_tangle(&self) -> Result<Tangle> {
        let members = self
            .members
            .iter()
            .map(|s| {
                SubsetMask::from_binary_lsb_left(s)
                    .ok_or_else(|| Error::Domain(format!("bad mask string {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Tangle::from_unsorted(self.order, members))
    }
}

/// The first tangle axiom a candidate violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TangleViolation {
    /// A member has connectivity at least the order (or lies outside E).
    NotLow(SubsetMask),
    /// For this A ∈ 𝒮_k, either both or neither of A and E∖A are members.
    Orientation(SubsetMask),
    /// Three members (possibly repeated) cover E.
    TripleCover([SubsetMask; 3]),
    /// A member of size |E|−1.
    CoSingleton(SubsetMask),
}

impl fmt::Display for TangleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleViolation::NotLow(x) => write!(f, "member {x:?} is not in 𝒮_k"),
            TangleViolation::Orientation(x) => {
                write!(f, "{x:?} and its complement are not oriented exactly once")
            }
            TangleViolation::TripleCover([a, b, c]) => {
                write!(f, "members {a:?}, {b:?}, {c:?} cover the ground set")
            }
            TangleViolation::CoSingleton(x) => write!(f, "member {x:?} has size |E|-1"),
        }
    }
}

/// Checks the tangle axioms in order and reports the first violation.
pub fn check_tangle(
    system: &ConnectivitySystem,
    members: &[SubsetMask],
    k: u32,
) -> Result<(), TangleViolation> {
    let n = system.len();
    let mut is_member = vec![false; 1 << n];
    for &x in members {
        if !x.fits(n) || system.at(x) >= k {
            return Err(TangleViolation::NotLow(x));
        }
        is_member[x.bits() as usize] = true;
    }
    for a in SubsetMask::all(n) {
        if system.at(a) < k
            && is_member[a.bits() as usize] == is_member[a.complement(n).bits() as usize]
        {
            return Err(TangleViolation::Orientation(a));
        }
    }
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(cover) = triple_cover(&sorted, n) {
        return Err(TangleViolation::TripleCover(cover));
    }
    if let Some(&x) = sorted.iter().find(|x| n > 0 && x.len() == n - 1) {
        return Err(TangleViolation::CoSingleton(x));
    }
    Ok(())
}

pub fn is_tangle(system: &ConnectivitySystem, members: &[SubsetMask], k: u32) -> bool {
    check_tangle(system, members, k).is_ok()
}

/// Three members (with repetition) whose union is the ground set, if any.
fn triple_cover(members: &[SubsetMask], n: usize) -> Option<[SubsetMask; 3]> {
    let full = SubsetMask::full(n);
    let up = covered_by(members, n);
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i..] {
            let need = full.difference(a | b);
            if up[need.bits() as usize] {
                let c = *members.iter().find(|c| need.is_subset(**c))?;
                return Some([a, b, c]);
            }
        }
    }
    None
}

/// Depth-first orientation search over the complementary pairs of 𝒮_k.
struct Search<'a> {
    system: &'a ConnectivitySystem,
    n: usize,
    full: SubsetMask,
    order: u32,
    /// One representative per complementary pair (the smaller mask).
    pairs: Vec<SubsetMask>,
    state: Vec<Side>,
    trail: Vec<SubsetMask>,
    members: Vec<SubsetMask>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Open,
    In,
    Out,
}

impl<'a> Search<'a> {
    fn new(system: &'a ConnectivitySystem, order: u32) -> Self {
        let n = system.len();
        let full = system.full();
        let pairs = SubsetMask::all(n)
            .filter(|&x| system.at(x) < order && x <= x.complement(n))
            .collect();
        Search {
            system,
            n,
            full,
            order,
            pairs,
            state: vec![Side::Open; 1 << n],
            trail: Vec::new(),
            members: Vec::new(),
        }
    }

    fn low(&self, x: SubsetMask) -> bool {
        self.system.at(x) < self.order
    }

    fn side(&self, x: SubsetMask) -> Side {
        self.state[x.bits() as usize]
    }

    /// Makes `x` a member and propagates downward closure. Returns false on
    /// conflict; partial assignments stay on the trail for `undo`.
    fn choose(&mut self, x: SubsetMask) -> bool {
        let mut queue = vec![x];
        while let Some(a) = queue.pop() {
            match self.side(a) {
                Side::In => continue,
                Side::Out => return false,
                Side::Open => {}
            }
            if a == self.full || (self.n > 0 && a.len() == self.n - 1) {
                return false;
            }
            if self.members.iter().any(|&m| (m | a) == self.full) {
                return false;
            }
            let c = a.complement(self.n);
            self.state[a.bits() as usize] = Side::In;
            self.state[c.bits() as usize] = Side::Out;
            self.trail.push(a);
            self.members.push(a);
            // a member forces every low subset of it
            for b in a.submasks() {
                if b != a && self.low(b) && self.side(b) != Side::In {
                    queue.push(b);
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().unwrap();
            self.state[a.bits() as usize] = Side::Open;
            self.state[a.complement(self.n).bits() as usize] = Side::Open;
            self.members.pop();
        }
    }

    /// Pre-orients the pairs where one side can never be a member.
    fn force_obvious(&mut self) -> bool {
        for i in 0..self.pairs.len() {
            let a = self.pairs[i];
            let c = a.complement(self.n);
            let bad = |x: SubsetMask| x == self.full || (self.n > 0 && x.len() == self.n - 1);
            let pick = match (bad(a), bad(c)) {
                (true, true) => return false,
                (true, false) => c,
                (false, true) => a,
                (false, false) => continue,
            };
            if !self.choose(pick) {
                return false;
            }
        }
        true
    }

    /// Calls `visit` on every completed tangle; stops when it returns false.
    fn run(&mut self, visit: &mut dyn FnMut(Tangle) -> bool) -> bool {
        let Some(next) = self
            .pairs
            .iter()
            .copied()
            .find(|&p| self.side(p) == Side::Open)
        else {
            if triple_cover(&sorted(&self.members), self.n).is_none() {
                return visit(Tangle::from_unsorted(self.order, self.members.clone()));
            }
            return true;
        };
        for pick in [next, next.complement(self.n)] {
            let mark = self.trail.len();
            if self.choose(pick) && !self.run(visit) {
                return false;
            }
            self.undo(mark);
        }
        true
    }
}

fn sorted(members: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut v = members.to_vec();
    v.sort_unstable();
    v
}

fn search_tangles(
    system: &ConnectivitySystem,
    k: u32,
    forced: &[SubsetMask],
    visit: &mut dyn FnMut(Tangle) -> bool,
) {
    let mut search = Search::new(system, k);
    if !search.force_obvious() {
        return;
    }
    for &s in forced {
        if !search.choose(s) {
            return;
        }
    }
    search.run(visit);
}

/// Every tangle of order `k`, in canonical order.
///
/// When 𝒮_k is empty the result is the single empty tangle.
pub fn enumerate_tangles(system: &ConnectivitySystem, k: u32) -> Vec<Tangle> {
    let mut out = Vec::new();
    search_tangles(system, k, &[], &mut |t| {
        out.push(t);
        true
    });
    out.sort();
    out
}

/// Reference enumerator: tries all 2^p orientations of the p complementary
/// pairs of 𝒮_k without any propagation and keeps those passing
/// [`check_tangle`]. Only for small systems.
pub fn enumerate_tangles_unpruned(system: &ConnectivitySystem, k: u32) -> Result<Vec<Tangle>> {
    let n = system.len();
    let pairs: Vec<SubsetMask> = system
        .low_sets(k)
        .into_iter()
        .filter(|&x| x <= x.complement(n))
        .collect();
    if pairs.len() > MAX_REFERENCE_PAIRS {
        return domain(format!(
            "{} complementary pairs is beyond the reference enumerator's limit of {MAX_REFERENCE_PAIRS}",
            pairs.len()
        ));
    }
    let full = SubsetMask::full(n);
    let mut out = Vec::new();
    let mut members = Vec::with_capacity(pairs.len());
    for orientation in 0u32..(1 << pairs.len()) {
        members.clear();
        members.extend(pairs.iter().enumerate().map(|(i, &a)| {
            if orientation >> i & 1 == 0 {
                a
            } else {
                a.complement(n)
            }
        }));
        // cheap rejections before the full check
        if members
            .iter()
            .any(|&m| m == full || (n > 0 && m.len() == n - 1))
        {
            continue;
        }
        if check_tangle(system, &members, k).is_ok() {
            out.push(Tangle::from_unsorted(k, members.clone()));
        }
    }
    out.sort();
    Ok(out)
}

/// Whether some tangle of order `k` contains every set in `family`.
pub fn extends_to_tangle(
    system: &ConnectivitySystem,
    family: &[SubsetMask],
    k: u32,
) -> Result<bool> {
    check_low_cover(system, family, k)?;
    Ok(find_extension(system, family, k).is_some())
}

/// A tangle of order `k` containing `family`, if one exists.
pub fn find_extension(
    system: &ConnectivitySystem,
    family: &[SubsetMask],
    k: u32,
) -> Option<Tangle> {
    let mut found = None;
    search_tangles(system, k, family, &mut |t| {
        found = Some(t);
        false
    });
    found
}

pub(crate) fn check_low_cover(
    system: &ConnectivitySystem,
    family: &[SubsetMask],
    k: u32,
) -> Result<()> {
    let mut union = SubsetMask::EMPTY;
    for &s in family {
        system.ground().check_mask(s)?;
        if system.at(s) >= k {
            return domain(format!(
                "{} has connectivity {} ≥ {k}",
                system.ground().format_mask(s),
                system.at(s)
            ));
        }
        union = union | s;
    }
    if union != system.full() {
        return domain("the family does not cover the ground set");
    }
    Ok(())
}

/// The tangle of `host` induced by a tangle of a dominated `minor`:
/// { X ∈ 𝒮_k(host) : X ∩ E0 ∈ T0 }.
pub fn induced_tangle(
    host: &ConnectivitySystem,
    minor: &ConnectivitySystem,
    tangle: &Tangle,
) -> Result<Tangle> {
    let emb = require_domination(host, minor)?;
    induce(host, minor, &emb, tangle)
}

fn require_domination(host: &ConnectivitySystem, minor: &ConnectivitySystem) -> Result<Embedding> {
    if !host.dominates(minor) {
        return domain("the host system does not dominate the minor");
    }
    Ok(Embedding::new(host.ground(), minor.ground()).expect("dominance implies embedding"))
}

fn induce(
    host: &ConnectivitySystem,
    minor: &ConnectivitySystem,
    emb: &Embedding,
    tangle: &Tangle,
) -> Result<Tangle> {
    let k = tangle.order();
    let members: Vec<SubsetMask> = host
        .low_sets(k)
        .into_iter()
        .filter(|&x| tangle.contains(emb.restrict(x)))
        .collect();
    if let Err(v) = check_tangle(host, &members, k) {
        return Err(Error::Consistency(format!(
            "induced family is not a tangle of order {k} ({v}); minor has {} elements",
            minor.len()
        )));
    }
    Ok(Tangle { order: k, members })
}

/// Groups the order-`k` tangles of `minor` by the tangle of `host` they
/// induce. Every order-`k` tangle of `host` is a key, possibly with an
/// empty list; a host tangle splits when its list has two or more entries.
pub fn find_splits(
    host: &ConnectivitySystem,
    minor: &ConnectivitySystem,
    k: u32,
) -> Result<BTreeMap<Tangle, Vec<Tangle>>> {
    let emb = require_domination(host, minor)?;
    let mut groups: BTreeMap<Tangle, Vec<Tangle>> = enumerate_tangles(host, k)
        .into_iter()
        .map(|t| (t, Vec::new()))
        .collect();
    for t0 in enumerate_tangles(minor, k) {
        let t = induce(host, minor, &emb, &t0)?;
        groups.entry(t).or_default().push(t0);
    }
    Ok(groups)
}

/// Two distinct tangles of the minor inducing the same host tangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub induced: Tangle,
    pub first: Tangle,
    pub second: Tangle,
}

/// The first split found, scanning orders upward from 1.
///
/// Stops at the first order where the minor has no tangle: a tangle of
/// order k restricts to a tangle of every smaller order, so none exist
/// beyond that point.
pub fn find_split(host: &ConnectivitySystem, minor: &ConnectivitySystem) -> Result<Option<Split>> {
    let emb = require_domination(host, minor)?;
    for k in 1..=minor.max_value() + 1 {
        let tangles = enumerate_tangles(minor, k);
        if tangles.is_empty() {
            break;
        }
        let mut seen: BTreeMap<Tangle, Tangle> = BTreeMap::new();
        for t0 in tangles {
            let t = induce(host, minor, &emb, &t0)?;
            if let Some(first) = seen.get(&t) {
                return Ok(Some(Split {
                    induced: t,
                    first: first.clone(),
                    second: t0,
                }));
            }
            seen.insert(t, t0);
        }
    }
    Ok(None)
}

/// True when no tangle of `host` splits in `minor`.
pub fn split_free(host: &ConnectivitySystem, minor: &ConnectivitySystem) -> Result<bool> {
    Ok(find_split(host, minor)?.is_none())
}

/// At most one tangle of each order t ≤ k.
pub fn is_k_entangled(system: &ConnectivitySystem, k: u32) -> bool {
    for t in 1..=k {
        let mut count = 0;
        search_tangles(system, t, &[], &mut |_| {
            count += 1;
            count < 2
        });
        match count {
            0 => return true,
            1 => {}
            _ => return false,
        }
    }
    true
}

/// Largest order at which the system has a tangle (0 if it has none).
pub fn max_tangle_order(system: &ConnectivitySystem) -> u32 {
    let mut best = 0;
    for k in 1..=system.max_value() + 1 {
        if find_extension(system, &[], k).is_none() {
            break;
        }
        best = k;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::subset::GroundSet;
    use crate::synthetic::SyntheticSystem;

    fn m(bits: u32) -> SubsetMask {
        SubsetMask::from_bits(bits)
    }

    fn singletons(n: usize) -> Vec<SubsetMask> {
        (0..n).map(SubsetMask::singleton).collect()
    }

    fn u24() -> ConnectivitySystem {
        catalog::uniform(2, 4).unwrap().system()
    }

    #[test]
    fn axiom_check_examples() {
        let k = u24();
        let mut good = vec![m(0)];
        good.extend(singletons(4));
        assert_eq!(check_tangle(&k, &good, 3), Ok(()));

        let cosingleton = vec![m(0), m(0b0001), m(0b0010), m(0b0100), m(0b0111)];
        assert_eq!(
            check_tangle(&k, &cosingleton, 3),
            Err(TangleViolation::CoSingleton(m(0b0111)))
        );

        let both = vec![m(0), m(0b0001), m(0b1110), m(0b0010), m(0b0100), m(0b1000)];
        assert_eq!(
            check_tangle(&k, &both, 3),
            Err(TangleViolation::Orientation(m(0b0001)))
        );
        assert_eq!(
            check_tangle(&k, &[m(0b0011)], 3),
            Err(TangleViolation::NotLow(m(0b0011)))
        );
    }

    #[test]
    fn u24_tangle_counts() {
        let k = u24();
        let t1 = enumerate_tangles(&k, 1);
        assert_eq!(t1.len(), 1);
        assert!(t1[0].members().is_empty());
        assert_eq!(enumerate_tangles(&k, 2).len(), 1);
        let t3 = enumerate_tangles(&k, 3);
        assert_eq!(t3.len(), 1);
        assert_eq!(t3[0].members(), &[m(0), m(1), m(2), m(4), m(8)]);
        assert!(enumerate_tangles(&k, 4).is_empty());
    }

    #[test]
    fn two_triangles_have_two_order_two_tangles() {
        let k = catalog::graphic(&catalog::two_triangles())
            .unwrap()
            .system();
        assert_eq!(enumerate_tangles(&k, 2).len(), 2);
        assert!(!is_k_entangled(&k, 2));
        assert!(is_k_entangled(&k, 1));
    }

    #[test]
    fn pruned_matches_unpruned_on_small_systems() {
        let mut systems: Vec<ConnectivitySystem> = catalog::sweep_matroids()
            .into_iter()
            .filter(|(_, m)| m.len() <= 5)
            .map(|(_, m)| m.system())
            .collect();
        systems.extend(catalog::all_graphs(4).map(|g| g.system()));
        for k in &systems {
            for order in 1..=k.max_value() + 1 {
                let fast = enumerate_tangles(k, order);
                assert_eq!(fast, enumerate_tangles_unpruned(k, order).unwrap());
                for t in &fast {
                    assert!(is_tangle(k, t.members(), order));
                }
            }
        }
    }

    #[test]
    fn empty_ground_set() {
        let s = SyntheticSystem::new(GroundSet::indexed(0).unwrap(), vec![0])
            .unwrap()
            .system();
        // 𝒮_1 = {∅} and ∅ = E cannot be a member
        assert!(enumerate_tangles(&s, 1).is_empty());
        assert_eq!(enumerate_tangles_unpruned(&s, 1).unwrap(), vec![]);
    }

    #[test]
    fn induced_examples() {
        let mat = catalog::uniform(2, 4).unwrap();
        let k = mat.system();
        for t in enumerate_tangles(&k, 3) {
            assert_eq!(induced_tangle(&k, &k, &t).unwrap(), t);
        }
        let minor = mat.delete(3).unwrap().system();
        // U_{2,3} has a unique order-2 tangle and none of order 3
        assert!(enumerate_tangles(&minor, 3).is_empty());
        let t0 = enumerate_tangles(&minor, 2).remove(0);
        assert_eq!(
            induced_tangle(&k, &minor, &t0).unwrap(),
            enumerate_tangles(&k, 2).remove(0)
        );
        assert!(induced_tangle(&minor, &k, &t0).is_err());
    }

    #[test]
    fn splits_examples() {
        let mat = catalog::uniform(2, 4).unwrap();
        let k = mat.system();
        for order in 1..=3 {
            let groups = find_splits(&k, &k, order).unwrap();
            assert!(groups.values().all(|l| l.len() == 1));
        }
        let contracted = mat.contract(0).unwrap().system();
        let groups = find_splits(&k, &contracted, 3).unwrap();
        assert!(groups.values().all(|l| l.len() < 2));
        assert!(split_free(&k, &k).unwrap());
    }

    #[test]
    fn two_triangles_edge_removal() {
        let mat = catalog::graphic(&catalog::two_triangles()).unwrap();
        let k = mat.system();
        let del = mat.delete(0).unwrap().system();
        let groups = find_splits(&k, &del, 2).unwrap();
        // the tangle on the damaged triangle loses its preimage, the other
        // keeps exactly one
        assert_eq!(groups.len(), 2);
        let sizes: Vec<usize> = groups.values().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 0]);
        assert!(
            mat.split_free_removal(0).unwrap().delete
                || mat.split_free_removal(0).unwrap().contract
        );
    }

    #[test]
    fn extension_examples() {
        let k = u24();
        let t = enumerate_tangles(&k, 3).remove(0);
        assert_eq!(extends_to_tangle(&k, t.members(), 3), Ok(true));
        assert_eq!(extends_to_tangle(&k, &singletons(4), 4), Ok(false));
        let mut s = vec![m(0)];
        s.extend(singletons(4));
        assert_eq!(extends_to_tangle(&k, &s, 3), Ok(true));
        assert!(extends_to_tangle(&k, &[m(0b0011)], 3).is_err());
        assert!(extends_to_tangle(&k, &[m(0b0001)], 3).is_err());
    }

    #[test]
    fn entanglement() {
        let k = u24();
        for order in 0..8 {
            assert!(is_k_entangled(&k, order));
        }
        assert_eq!(max_tangle_order(&k), 3);
    }

    #[test]
    fn restriction_and_downward_closure() {
        for (_, mat) in catalog::sweep_matroids() {
            let k = mat.system();
            let n = k.len();
            for order in 1..=k.max_value() + 1 {
                for t in enumerate_tangles(&k, order) {
                    for sub in 1..order {
                        assert!(is_tangle(&k, t.restrict(&k, sub).members(), sub));
                    }
                    for &a in t.members() {
                        for b in a.submasks() {
                            if k.at(b) < order {
                                assert!(t.contains(b));
                            }
                        }
                    }
                    let _ = n;
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let t = enumerate_tangles(&u24(), 3).remove(0);
        let json = t.to_json(4);
        assert_eq!(json.members[1], "1000");
        let text = serde_json::to_string(&json).unwrap();
        assert_eq!(
            text,
            r#"{"order":3,"members":["0000","1000","0100","0010","0001"]}"#
        );
        let back: TangleJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_tangle().unwrap(), t);
    }
}
