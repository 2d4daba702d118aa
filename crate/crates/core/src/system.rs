//! Connectivity systems: a ground set with a symmetric submodular
//! integer function λ on its subsets.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{domain, Result};
use crate::subset::{GroundSet, SubsetMask};

type Eval = Arc<dyn Fn(SubsetMask) -> u32 + Send + Sync>;

/// A ground set together with its connectivity function.
///
/// The function is evaluated on every subset the first time any value is
/// requested and the table is kept for the lifetime of the system. Systems
/// are immutable, so the table never goes stale.
#[derive(Clone)]
pub struct ConnectivitySystem {
    ground: GroundSet,
    eval: Eval,
    table: OnceLock<Arc<[u32]>>,
}

impl fmt::Debug for ConnectivitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConnectivitySystem")
            .field("ground", &self.ground)
            .finish_non_exhaustive()
    }
}

impl ConnectivitySystem {
    pub fn from_fn<F>(ground: GroundSet, f: F) -> Self
    where
        F: Fn(SubsetMask) -> u32 + Send + Sync + 'static,
    {
        ConnectivitySystem {
            ground,
            eval: Arc::new(f),
            table: OnceLock::new(),
        }
    }

    /// Wraps an explicit table indexed by mask. The table is not validated;
    /// use [`SyntheticSystem`](crate::synthetic::SyntheticSystem) for that.
    pub fn from_table(ground: GroundSet, table: Vec<u32>) -> Result<Self> {
        if table.len() != 1usize << ground.len() {
            return domain(format!(
                "table has {} entries, expected {}",
                table.len(),
                1usize << ground.len()
            ));
        }
        let table: Arc<[u32]> = table.into();
        let lookup = table.clone();
        let sys = ConnectivitySystem::from_fn(ground, move |x| lookup[x.bits() as usize]);
        let _ = sys.table.set(table);
        Ok(sys)
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

    pub fn full(&self) -> SubsetMask {
        self.ground.full()
    }

    /// The full value table, indexed by mask bits.
    pub fn table(&self) -> &[u32] {
        self.table.get_or_init(|| {
            SubsetMask::all(self.len())
                .map(|x| (self.eval)(x))
                .collect::<Vec<_>>()
                .into()
        })
    }

    /// λ(X), checked against the ground set.
    pub fn lambda(&self, x: SubsetMask) -> Result<u32> {
        self.ground.check_mask(x)?;
        Ok(self.at(x))
    }

    /// λ(X) for a mask the caller knows lies inside the ground set.
    ///
    /// Panics if `x` has bits outside the ground set.
    #[inline]
    pub fn at(&self, x: SubsetMask) -> u32 {
        self.table()[x.bits() as usize]
    }

    pub fn max_value(&self) -> u32 {
        self.table().iter().copied().max().unwrap_or(0)
    }

    /// Exhaustively checks symmetry over all subsets and submodularity over
    /// all pairs of subsets. This is O(4^n).
    pub fn verify_axioms(&self) -> Vec<AxiomViolation> {
        let n = self.len();
        let table = self.table();
        let mut out = Vec::new();
        for x in SubsetMask::all(n) {
            let c = x.complement(n);
            if x < c && table[x.bits() as usize] != table[c.bits() as usize] {
                out.push(AxiomViolation::Symmetry {
                    set: x,
                    value: table[x.bits() as usize],
                    complement_value: table[c.bits() as usize],
                });
            }
        }
        for x in SubsetMask::all(n) {
            let lx = table[x.bits() as usize];
            for y in SubsetMask::all(n).skip(x.bits() as usize + 1) {
                // comparable pairs satisfy the inequality with equality
                if x.is_subset(y) || y.is_subset(x) {
                    continue;
                }
                let lhs = table[(x & y).bits() as usize] + table[(x | y).bits() as usize];
                let rhs = lx + table[y.bits() as usize];
                if lhs > rhs {
                    out.push(AxiomViolation::Submodularity { x, y, lhs, rhs });
                }
            }
        }
        out
    }

    /// 𝒮_k: every subset of connectivity less than `k`, sorted by mask.
    pub fn low_sets(&self, k: u32) -> Vec<SubsetMask> {
        SubsetMask::all(self.len())
            .filter(|&x| self.at(x) < k)
            .collect()
    }

    /// κ(X, Y): the minimum of λ(Z) over X ⊆ Z ⊆ E∖Y, with the first
    /// minimiser in increasing mask order as witness.
    pub fn kappa(&self, x: SubsetMask, y: SubsetMask) -> Result<Kappa> {
        self.ground.check_mask(x)?;
        self.ground.check_mask(y)?;
        if !x.is_disjoint(y) {
            return domain(format!(
                "kappa needs disjoint sets, got {} and {}",
                self.ground.format_mask(x),
                self.ground.format_mask(y)
            ));
        }
        let free = self.full().difference(x | y);
        let mut best = Kappa {
            value: u32::MAX,
            witness: x,
        };
        for s in free.submasks() {
            let z = x | s;
            let v = self.at(z);
            if v < best.value {
                best = Kappa {
                    value: v,
                    witness: z,
                };
            }
        }
        Ok(best)
    }

    /// Whether `self` dominates `minor`: the minor's ground set is a subset
    /// of ours (matched by label) and its λ is pointwise no larger.
    pub fn dominates(&self, minor: &ConnectivitySystem) -> bool {
        let Some(emb) = Embedding::new(self.ground(), minor.ground()) else {
            return false;
        };
        SubsetMask::all(minor.len()).all(|x| minor.at(x) <= self.at(emb.lift(x)))
    }

    /// Whether `self` adheres to `host`.
    ///
    /// For every bipartition (A, B) of our ground set, searches for a
    /// partition of A, then of B, into two parts (one may be empty) each of
    /// host connectivity at most λ(A). The first failing A in mask order is
    /// returned as the witness.
    pub fn adheres_to(&self, host: &ConnectivitySystem) -> Adherence {
        if !host.dominates(self) {
            return Adherence::NotDominated;
        }
        let emb =
            Embedding::new(host.ground(), self.ground()).expect("dominance implies embedding");
        let n0 = self.len();
        let lifted: Vec<u32> = SubsetMask::all(n0).map(|x| host.at(emb.lift(x))).collect();
        let splittable = |side: SubsetMask, bound: u32| {
            side.submasks().any(|x1| {
                lifted[x1.bits() as usize] <= bound
                    && lifted[side.difference(x1).bits() as usize] <= bound
            })
        };
        for a in SubsetMask::all(n0) {
            let b = a.complement(n0);
            let bound = self.at(a);
            if !splittable(a, bound) && !splittable(b, bound) {
                return Adherence::Fails { a, b };
            }
        }
        Adherence::Adheres
    }
}

/// Result of [`ConnectivitySystem::kappa`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Kappa {
    pub value: u32,
    pub witness: SubsetMask,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    Symmetry {
        set: SubsetMask,
        value: u32,
        complement_value: u32,
    },
    Submodularity {
        x: SubsetMask,
        y: SubsetMask,
        lhs: u32,
        rhs: u32,
    },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Symmetry {
                set,
                value,
                complement_value,
            } => write!(
                f,
                "symmetry: λ({set:?}) = {value} but its complement has {complement_value}"
            ),
            AxiomViolation::Submodularity { x, y, lhs, rhs } => write!(
                f,
                "submodularity: X={x:?}, Y={y:?}: λ(X∩Y)+λ(X∪Y) = {lhs} > {rhs} = λ(X)+λ(Y)"
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adherence {
    Adheres,
    /// The host does not dominate the candidate.
    NotDominated,
    /// No admissible split of either side of this bipartition exists.
    Fails {
        a: SubsetMask,
        b: SubsetMask,
    },
}

impl Adherence {
    pub fn holds(self) -> bool {
        self == Adherence::Adheres
    }
}

/// Label-based inclusion of a smaller ground set into a larger one.
#[derive(Clone, Debug)]
pub struct Embedding {
    map: Vec<usize>,
}

impl Embedding {
    /// `None` unless every label of `sub` occurs in `host`.
    pub fn new(host: &GroundSet, sub: &GroundSet) -> Option<Self> {
        let map = sub
            .labels()
            .iter()
            .map(|l| host.index_of(l))
            .collect::<Option<Vec<_>>>()?;
        Some(Embedding { map })
    }

    /// Host index of sub-element `i`.
    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn lift(&self, x: SubsetMask) -> SubsetMask {
        SubsetMask::from_elements(x.elements().map(|i| self.map[i]))
    }

    /// X ∩ E0, expressed over the smaller ground set.
    pub fn restrict(&self, x: SubsetMask) -> SubsetMask {
        SubsetMask::from_elements(
            self.map
                .iter()
                .enumerate()
                .filter(|&(_, &h)| x.contains(h))
                .map(|(i, _)| i),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::synthetic::SyntheticSystem;

    fn m(bits: u32) -> SubsetMask {
        SubsetMask::from_bits(bits)
    }

    #[test]
    fn lambda_on_u24_and_c4() {
        let k = catalog::uniform(2, 4).unwrap().system();
        assert_eq!(k.lambda(SubsetMask::EMPTY), Ok(1));
        assert_eq!(k.lambda(m(0b0011)), Ok(3));
        assert!(k.lambda(m(0b10000)).is_err());

        let c4 = catalog::cycle(4).unwrap().system();
        assert_eq!(c4.lambda(m(0b0011)), Ok(2));
    }

    #[test]
    fn low_sets_of_u24() {
        let k = catalog::uniform(2, 4).unwrap().system();
        assert!(k.low_sets(1).is_empty());
        assert_eq!(k.low_sets(2), vec![m(0), m(0b1111)]);
        let s3: Vec<u32> = k.low_sets(3).iter().map(|x| x.bits()).collect();
        assert_eq!(s3, vec![0, 1, 2, 4, 7, 8, 11, 13, 14, 15]);
    }

    #[test]
    fn kappa_examples() {
        let k = catalog::uniform(2, 4).unwrap().system();
        let x = m(0b0001);
        assert_eq!(k.kappa(x, x.complement(4)).unwrap().value, k.at(x));
        // candidates {0},{0,2},{0,3},{0,2,3} have λ = 2,3,3,2
        let kap = k.kappa(m(0b0001), m(0b0010)).unwrap();
        assert_eq!(kap.value, 2);
        assert_eq!(kap.witness, m(0b0001));
        assert_eq!(
            k.kappa(m(0), m(0)).unwrap(),
            Kappa {
                value: 1,
                witness: m(0)
            }
        );
        assert!(k.kappa(m(0b11), m(0b10)).is_err());
    }

    #[test]
    fn perturbed_table_is_reported() {
        let k = catalog::uniform(2, 4).unwrap().system();
        let mut table = k.table().to_vec();
        table[0b0001] += 1;
        let bad = ConnectivitySystem::from_table(k.ground().clone(), table).unwrap();
        let v = bad.verify_axioms();
        assert!(v.contains(&AxiomViolation::Symmetry {
            set: m(0b0001),
            value: 3,
            complement_value: 2
        }));
    }

    #[test]
    fn domination_examples() {
        let u24 = catalog::uniform(2, 4).unwrap();
        let k = u24.system();
        assert!(k.dominates(&k));
        assert!(k.dominates(&u24.delete(2).unwrap().system()));

        let c4 = catalog::cycle(4).unwrap();
        let cr = c4.system();
        assert!(cr.dominates(&c4.delete_vertex(0).unwrap().system()));
        // different labels: no embedding
        let other = ConnectivitySystem::from_fn(GroundSet::new(["x"]).unwrap(), |_| 0);
        assert!(!cr.dominates(&other));
    }

    #[test]
    fn adherence_examples() {
        let u24 = catalog::uniform(2, 4).unwrap().system();
        assert_eq!(u24.adheres_to(&u24), Adherence::Adheres);
        let u23 = catalog::uniform(2, 3).unwrap().system();
        assert_eq!(u23.adheres_to(&u24), Adherence::Adheres);

        let host = SyntheticSystem::new(
            GroundSet::new(["a", "b", "c"]).unwrap(),
            vec![0, 2, 2, 2, 2, 2, 2, 0],
        )
        .unwrap()
        .system();
        let minor = SyntheticSystem::new(GroundSet::new(["a", "b"]).unwrap(), vec![0, 1, 1, 0])
            .unwrap()
            .system();
        assert!(host.dominates(&minor));
        assert_eq!(
            minor.adheres_to(&host),
            Adherence::Fails {
                a: m(0b01),
                b: m(0b10)
            }
        );
        assert_eq!(host.adheres_to(&minor), Adherence::NotDominated);
    }

    #[test]
    fn embedding_restrict_and_lift() {
        let host = GroundSet::new(["a", "b", "c", "d"]).unwrap();
        let sub = GroundSet::new(["b", "d"]).unwrap();
        let emb = Embedding::new(&host, &sub).unwrap();
        assert_eq!(emb.lift(m(0b11)), m(0b1010));
        assert_eq!(emb.restrict(m(0b1110)), m(0b11));
        assert_eq!(emb.restrict(m(0b0101)), m(0));
    }
}
