//! Equivalence relations on element indices and left-congruence closure.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{input, invariant, Result};
use crate::semigroup::FiniteInverseSemigroup;

/// Union-find with path halving and union by rank. Mutable while a relation
/// is being built; `freeze` produces the canonical `EqRelation`.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns false if already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (hi, lo) = if self.rank[ra] < self.rank[rb] {
            (rb, ra)
        } else {
            (ra, rb)
        };
        self.parent[lo] = hi as u32;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        true
    }

    pub fn freeze(mut self) -> EqRelation {
        let n = self.len();
        let roots: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        EqRelation::from_labels(&roots)
    }
}

/// An equivalence relation on `0..n` in canonical form: `block[i]` is the
/// number of the class of `i`, with classes numbered in order of their least
/// element. Two relations are equal iff their canonical forms are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EqRelation {
    block: Vec<u32>,
}

impl EqRelation {
    pub fn identity(n: usize) -> Self {
        EqRelation {
            block: (0..n as u32).collect(),
        }
    }

    pub fn universal(n: usize) -> Self {
        EqRelation { block: vec![0; n] }
    }

    /// Canonicalizes arbitrary class labels.
    pub fn from_labels<T: Eq + std::hash::Hash + Copy>(labels: &[T]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let block = labels
            .iter()
            .map(|l| {
                let next = seen.len() as u32;
                *seen.entry(*l).or_insert(next)
            })
            .collect();
        EqRelation { block }
    }

    /// Builds a relation from a list of blocks. Elements not mentioned are
    /// singletons; an element listed twice is an error.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut label: Vec<usize> = (0..n).map(|i| n + i).collect();
        let mut seen = vec![false; n];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= n {
                    return input(format!("element {x} out of range 0..{n}"));
                }
                if seen[x] {
                    return input(format!("element {x} appears in two blocks"));
                }
                seen[x] = true;
                label[x] = b;
            }
        }
        Ok(Self::from_labels(&label))
    }

    /// Equivalence relation generated by `pairs`.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut uf = UnionFind::new(n);
        for (a, b) in pairs {
            uf.union(a, b);
        }
        uf.freeze()
    }

    /// Builds the relation `{(a,b) : pred(a,b)}` and checks that it really is
    /// an equivalence relation.
    pub fn from_predicate(n: usize, pred: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut uf = UnionFind::new(n);
        for a in 0..n {
            if !pred(a, a) {
                return invariant(format!("relation is not reflexive at {a}"));
            }
            for b in (a + 1)..n {
                if pred(a, b) {
                    uf.union(a, b);
                }
            }
        }
        let rel = uf.freeze();
        for a in 0..n {
            for b in 0..n {
                if rel.related(a, b) != pred(a, b) {
                    return invariant(format!("relation is not an equivalence (fails at {a}, {b})"));
                }
            }
        }
        Ok(rel)
    }

    pub fn size(&self) -> usize {
        self.block.len()
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block[a] == self.block[b]
    }

    #[inline]
    pub fn class_of(&self, a: usize) -> usize {
        self.block[a] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.block
    }

    pub fn num_classes(&self) -> usize {
        self.block.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    /// Classes in canonical order (by least element), each sorted.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (i, &b) in self.block.iter().enumerate() {
            out[b as usize].push(i);
        }
        out
    }

    pub fn class_members(&self, a: usize) -> Vec<usize> {
        let b = self.block[a];
        (0..self.size()).filter(|&i| self.block[i] == b).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.num_classes() == self.size()
    }

    pub fn is_universal(&self) -> bool {
        self.num_classes() <= 1
    }

    /// Number of related ordered pairs.
    pub fn pair_count(&self) -> usize {
        self.classes().iter().map(|c| c.len() * c.len()).sum()
    }

    pub fn is_subset(&self, other: &EqRelation) -> bool {
        debug_assert_eq!(self.size(), other.size());
        // Every class of self must map into a single class of other.
        let mut image = vec![u32::MAX; self.num_classes()];
        for (i, &b) in self.block.iter().enumerate() {
            let slot = &mut image[b as usize];
            if *slot == u32::MAX {
                *slot = other.block[i];
            } else if *slot != other.block[i] {
                return false;
            }
        }
        true
    }

    pub fn meet(&self, other: &EqRelation) -> EqRelation {
        debug_assert_eq!(self.size(), other.size());
        let pairs: Vec<(u32, u32)> = self.block.iter().zip(&other.block).map(|(&a, &b)| (a, b)).collect();
        Self::from_labels(&pairs)
    }

    /// Transitive closure of the union.
    pub fn join(&self, other: &EqRelation) -> EqRelation {
        debug_assert_eq!(self.size(), other.size());
        let mut uf = UnionFind::new(self.size());
        for rel in [self, other] {
            let mut first = vec![usize::MAX; rel.num_classes()];
            for (i, &b) in rel.block.iter().enumerate() {
                let f = &mut first[b as usize];
                if *f == usize::MAX {
                    *f = i;
                } else {
                    uf.union(*f, i);
                }
            }
        }
        uf.freeze()
    }

    /// `ρ ∩ (subset × subset)`, reindexed by position in `subset`. The second
    /// component maps new indices back to old ones.
    pub fn restrict(&self, subset: &[usize]) -> (EqRelation, Vec<usize>) {
        let labels: Vec<u32> = subset.iter().map(|&i| self.block[i]).collect();
        (Self::from_labels(&labels), subset.to_vec())
    }

    /// Related pairs `(a,b)` with `a < b` that generate the relation: each
    /// element paired with the least member of its class.
    pub fn spanning_pairs(&self) -> Vec<(usize, usize)> {
        let mut first = vec![usize::MAX; self.num_classes()];
        let mut out = Vec::new();
        for (i, &b) in self.block.iter().enumerate() {
            let f = &mut first[b as usize];
            if *f == usize::MAX {
                *f = i;
            } else {
                out.push((*f, i));
            }
        }
        out
    }

    pub fn is_left_compatible(&self, s: &FiniteInverseSemigroup) -> bool {
        self.first_left_violation(s).is_none()
    }

    /// A witness `(c, a, b)` with `a ρ b` but not `ca ρ cb`.
    pub fn first_left_violation(&self, s: &FiniteInverseSemigroup) -> Option<(usize, usize, usize)> {
        for (a, b) in self.spanning_pairs() {
            for c in 0..s.size() {
                if !self.related(s.mul(c, a), s.mul(c, b)) {
                    return Some((c, a, b));
                }
            }
        }
        None
    }

    pub fn is_right_compatible(&self, s: &FiniteInverseSemigroup) -> bool {
        self.spanning_pairs()
            .into_iter()
            .all(|(a, b)| (0..s.size()).all(|c| self.related(s.mul(a, c), s.mul(b, c))))
    }

    /// `ρ_{-1} = {(a^{-1}, b^{-1}) : a ρ b}`; swaps left and right congruences.
    pub fn reverse_inverse(&self, s: &FiniteInverseSemigroup) -> EqRelation {
        let labels: Vec<u32> = (0..s.size()).map(|a| self.block[s.inv(a)]).collect();
        Self::from_labels(&labels)
    }
}

impl fmt::Debug for EqRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.classes().iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            let items: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", items.join(","))?;
        }
        write!(f, "}}")
    }
}

pub fn eq_meet(a: &EqRelation, b: &EqRelation) -> EqRelation {
    a.meet(b)
}

/// Transitive closure of `a ∪ b`. For left congruences this is their join in
/// the lattice of left congruences.
pub fn eq_join_transitive(a: &EqRelation, b: &EqRelation) -> EqRelation {
    a.join(b)
}

/// A symmetric set of generating pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenPairSet {
    pairs: BTreeSet<(usize, usize)>,
}

impl GenPairSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.pairs.insert((a, b));
        self.pairs.insert((b, a));
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out = Self::new();
        for (a, b) in pairs {
            out.insert(a, b);
        }
        out
    }

    /// All related pairs of `rel`, as a generating set.
    pub fn from_relation(rel: &EqRelation) -> Self {
        Self::from_pairs(rel.spanning_pairs())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Least equivalence on `0..n` containing `pairs` and closed under
/// `(a,b) ↦ (mul(c,a), mul(c,b))` for every `c` in `multipliers`.
pub(crate) fn closure_under(
    n: usize,
    pairs: impl IntoIterator<Item = (usize, usize)>,
    multipliers: &[usize],
    mul: impl Fn(usize, usize) -> usize,
) -> EqRelation {
    let mut uf = UnionFind::new(n);
    let mut work: VecDeque<(usize, usize)> = pairs.into_iter().collect();
    while let Some((a, b)) = work.pop_front() {
        if uf.union(a, b) {
            for &c in multipliers {
                work.push_back((mul(c, a), mul(c, b)));
            }
        }
    }
    uf.freeze()
}

/// The least left congruence containing `pairs`.
///
/// Whenever two classes are merged through a pair `(a,b)`, every left
/// multiple `(ca, cb)` is queued. The identity multiplier needs no entry
/// because `(a,b)` itself was just merged.
pub fn left_congruence_closure(s: &FiniteInverseSemigroup, pairs: &GenPairSet) -> EqRelation {
    let all: Vec<usize> = (0..s.size()).collect();
    closure_under(s.size(), pairs.iter(), &all, |c, a| s.mul(c, a))
}

/// Congruence on the semilattice `E(S)` (indexed by idempotent position)
/// generated by `pairs` of positions.
pub fn semilattice_closure(s: &FiniteInverseSemigroup, pairs: impl IntoIterator<Item = (usize, usize)>) -> EqRelation {
    let idem = s.idempotents();
    let k = idem.len();
    let positions: Vec<usize> = (0..k).collect();
    let mul = |g: usize, e: usize| s.idem_pos(s.mul(idem[g], idem[e])).expect("E(S) is closed");
    closure_under(k, pairs, &positions, mul)
}

/// Above this many idempotents, `semilattice_congruences` switches from
/// filtering set partitions to joining principal congruences.
pub const PARTITION_THRESHOLD: usize = 12;

/// Every congruence on `E(S)`, as relations on idempotent positions, in
/// canonical order.
pub fn semilattice_congruences(s: &FiniteInverseSemigroup) -> Vec<EqRelation> {
    semilattice_congruences_with(s, PARTITION_THRESHOLD)
}

pub fn semilattice_congruences_with(s: &FiniteInverseSemigroup, threshold: usize) -> Vec<EqRelation> {
    let idem = s.idempotents();
    let k = idem.len();
    let pos_mul = |g: usize, e: usize| s.idem_pos(s.mul(idem[g], idem[e])).expect("E(S) is closed");
    let compatible = |rel: &EqRelation| {
        rel.spanning_pairs()
            .into_iter()
            .all(|(e, f)| (0..k).all(|g| rel.related(pos_mul(g, e), pos_mul(g, f))))
    };
    let mut out = if k <= threshold {
        let mut found = Vec::new();
        for_each_partition(k, |labels| {
            let rel = EqRelation { block: labels.to_vec() };
            if compatible(&rel) {
                found.push(rel);
            }
        });
        found
    } else {
        let principals: Vec<EqRelation> = (0..k)
            .flat_map(|e| ((e + 1)..k).map(move |f| (e, f)))
            .map(|p| semilattice_closure(s, [p]))
            .collect();
        join_closure(EqRelation::identity(k), &principals)
    };
    out.sort();
    out
}

/// All joins of subsets of `generators`, starting from `bottom`.
pub(crate) fn join_closure(bottom: EqRelation, generators: &[EqRelation]) -> Vec<EqRelation> {
    let mut seen: BTreeSet<EqRelation> = BTreeSet::new();
    let mut gens: Vec<EqRelation> = generators.to_vec();
    gens.sort();
    gens.dedup();
    seen.insert(bottom.clone());
    let mut stack = vec![bottom];
    while let Some(r) = stack.pop() {
        for g in &gens {
            if g.is_subset(&r) {
                continue;
            }
            let j = r.join(g);
            if !seen.contains(&j) {
                seen.insert(j.clone());
                stack.push(j);
            }
        }
    }
    seen.into_iter().collect()
}

/// Calls `f` with every set partition of `0..n` as a restricted growth
/// string (class numbers in order of first appearance).
pub fn for_each_partition(n: usize, mut f: impl FnMut(&[u32])) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut rgs = vec![0u32; n];
    let mut maxes = vec![0u32; n];
    loop {
        f(&rgs);
        // advance: rightmost position that can be incremented
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if rgs[i] <= maxes[i - 1] {
                rgs[i] += 1;
                break;
            }
            i -= 1;
        }
        maxes[i] = maxes[i - 1].max(rgs[i]);
        for j in (i + 1)..n {
            rgs[j] = 0;
            maxes[j] = maxes[i];
        }
    }
}
