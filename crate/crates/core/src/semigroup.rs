//! Finite inverse semigroups given by a Cayley table.
//!
//! Elements are indices `0..m`. A semigroup is either generated by partial
//! permutations (`closure`) or supplied as an abstract multiplication table
//! (`from_table`); both routes end in the same validated structure.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::elemset::ElemSet;
use crate::error::{input, invariant, Error, Result};
use crate::perm::PartialPerm;

pub const DEFAULT_CAP: usize = 5000;
/// Tables at or above this size get a random associativity spot-check
/// instead of the exhaustive one.
pub const ASSOC_EXHAUSTIVE_LIMIT: usize = 200;
pub const ASSOC_SPOT_CHECKS: usize = 100_000;

#[derive(Clone, Debug)]
pub struct FiniteInverseSemigroup {
    labels: Vec<String>,
    perms: Option<Vec<PartialPerm>>,
    cayley: Vec<u32>,
    inv: Vec<u32>,
    idempotents: Vec<usize>,
    idem_pos: Vec<Option<usize>>,
    leq: Vec<bool>,
}

impl FiniteInverseSemigroup {
    /// The inverse subsemigroup of the symmetric inverse monoid generated by
    /// `generators` and their inverses, in canonical element order.
    pub fn closure(generators: &[PartialPerm], cap: usize) -> Result<Self> {
        let Some(first) = generators.first() else {
            return input("generator list is empty");
        };
        let degree = first.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return input(format!("generators have mixed degrees {} and {}", degree, g.degree()));
        }

        let mut gens: Vec<PartialPerm> = Vec::new();
        for g in generators {
            for h in [g.clone(), g.invert()] {
                if !gens.contains(&h) {
                    gens.push(h);
                }
            }
        }

        // Breadth-first search of the right Cayley graph. Every element is a
        // word in `gens`, so right multiplication by generators reaches all.
        let mut index: HashMap<PartialPerm, usize> = HashMap::new();
        let mut elems: Vec<PartialPerm> = Vec::new();
        let mut queue = VecDeque::new();
        for g in &gens {
            if !index.contains_key(g) {
                index.insert(g.clone(), elems.len());
                elems.push(g.clone());
                queue.push_back(elems.len() - 1);
            }
        }
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = elems[x].compose(g)?;
                if !index.contains_key(&y) {
                    if elems.len() >= cap {
                        return Err(Error::Resource {
                            what: "semigroup elements",
                            count: elems.len() + 1,
                            cap,
                        });
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                    queue.push_back(elems.len() - 1);
                }
            }
        }

        elems.sort_by(|a, b| a.canonical_cmp(b));
        let index: HashMap<&PartialPerm, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let m = elems.len();
        let mut cayley = vec![0u32; m * m];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let c = a.compose(b)?;
                let k = *index
                    .get(&c)
                    .ok_or_else(|| Error::Invariant(format!("product {c} escaped the closure")))?;
                cayley[i * m + j] = k as u32;
            }
        }
        let inv: Vec<u32> = elems.iter().map(|p| index[&p.invert()] as u32).collect();
        let labels = elems.iter().map(|p| p.to_string()).collect();
        let s = Self::assemble(labels, Some(elems), cayley, inv);
        s.verify_associativity()?;
        Ok(s)
    }

    /// Builds a semigroup from an abstract multiplication table, checking that
    /// it is associative, that every element has a unique inverse, and that
    /// idempotents commute.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = table.len();
        if m == 0 {
            return input("multiplication table is empty");
        }
        if labels.len() != m {
            return input(format!("{} labels for {} elements", labels.len(), m));
        }
        let mut cayley = vec![0u32; m * m];
        for (i, row) in table.iter().enumerate() {
            if row.len() != m {
                return input(format!("row {i} has length {}, expected {m}", row.len()));
            }
            for (j, &k) in row.iter().enumerate() {
                if k >= m {
                    return input(format!("entry ({i},{j}) = {k} out of range"));
                }
                cayley[i * m + j] = k as u32;
            }
        }
        let mul = |a: usize, b: usize| cayley[a * m + b] as usize;
        let mut inv = vec![0u32; m];
        for a in 0..m {
            let cands: Vec<usize> = (0..m)
                .filter(|&b| mul(mul(a, b), a) == a && mul(mul(b, a), b) == b)
                .collect();
            match cands.as_slice() {
                [b] => inv[a] = *b as u32,
                [] => return input(format!("element {} has no inverse", labels[a])),
                _ => return input(format!("element {} has several inverses", labels[a])),
            }
        }
        let s = Self::assemble(labels, None, cayley, inv);
        s.verify_associativity()?;
        for &e in &s.idempotents {
            for &f in &s.idempotents {
                if s.mul(e, f) != s.mul(f, e) {
                    return input("idempotents do not commute");
                }
            }
        }
        Ok(s)
    }

    fn assemble(labels: Vec<String>, perms: Option<Vec<PartialPerm>>, cayley: Vec<u32>, inv: Vec<u32>) -> Self {
        let m = inv.len();
        let idempotents: Vec<usize> = (0..m).filter(|&a| cayley[a * m + a] as usize == a).collect();
        let mut idem_pos = vec![None; m];
        for (p, &e) in idempotents.iter().enumerate() {
            idem_pos[e] = Some(p);
        }
        let mut leq = vec![false; m * m];
        for a in 0..m {
            let left = cayley[a * m + inv[a] as usize] as usize;
            for b in 0..m {
                leq[a * m + b] = cayley[left * m + b] as usize == a;
            }
        }
        FiniteInverseSemigroup {
            labels,
            perms,
            cayley,
            inv,
            idempotents,
            idem_pos,
            leq,
        }
    }

    fn verify_associativity(&self) -> Result<()> {
        let m = self.size();
        let check = |a, b, c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if m < ASSOC_EXHAUSTIVE_LIMIT {
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        if !check(a, b, c) {
                            return input(format!("table is not associative at ({a},{b},{c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x1c1);
            for _ in 0..ASSOC_SPOT_CHECKS {
                let (a, b, c) = (rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m));
                if !check(a, b, c) {
                    return input(format!("table is not associative at ({a},{b},{c})"));
                }
            }
        }
        Ok(())
    }

    /// Chain semilattice `e0 > e1 > ... > e(n-1)`.
    pub fn chain(n: usize) -> Result<Self> {
        if n == 0 {
            return input("chain length must be positive");
        }
        let labels = (0..n).map(|i| format!("e{i}")).collect();
        let table = (0..n).map(|i| (0..n).map(|j| i.max(j)).collect()).collect();
        Self::from_table(labels, table)
    }

    /// Aperiodic Brandt semigroup `B_n`: matrix units `(i,j)` plus a zero.
    pub fn brandt(n: usize) -> Result<Self> {
        if n == 0 {
            return input("Brandt index must be positive");
        }
        let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let zero = units.len();
        let mut labels: Vec<String> = units.iter().map(|(i, j)| format!("({},{})", i + 1, j + 1)).collect();
        labels.push("0".to_string());
        let pos = |i: usize, j: usize| i * n + j;
        let mut table = vec![vec![zero; zero + 1]; zero + 1];
        for (x, &(i, j)) in units.iter().enumerate() {
            for (y, &(k, l)) in units.iter().enumerate() {
                if j == k {
                    table[x][y] = pos(i, l);
                }
            }
        }
        Self::from_table(labels, table)
    }

    pub fn size(&self) -> usize {
        self.inv.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.size() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `a a^{-1}`, the idempotent with `(a a^{-1}) a = a`.
    #[inline]
    pub fn left_unit(&self, a: usize) -> usize {
        self.mul(a, self.inv(a))
    }

    /// `a^{-1} a`, the idempotent with `a (a^{-1} a) = a`.
    #[inline]
    pub fn right_unit(&self, a: usize) -> usize {
        self.mul(self.inv(a), a)
    }

    /// `a e a^{-1}`.
    #[inline]
    pub fn conj(&self, a: usize, e: usize) -> usize {
        self.mul(self.mul(a, e), self.inv(a))
    }

    pub fn mul3(&self, a: usize, b: usize, c: usize) -> usize {
        self.mul(self.mul(a, b), c)
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.idem_pos[a].is_some()
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// Position of an idempotent within `idempotents()`.
    pub fn idem_pos(&self, e: usize) -> Option<usize> {
        self.idem_pos[e]
    }

    pub fn idempotent_set(&self) -> ElemSet {
        ElemSet::from_indices(self.size(), self.idempotents.iter().copied())
    }

    pub fn natural_leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size() + b]
    }

    pub fn green_r(&self, a: usize, b: usize) -> bool {
        self.left_unit(a) == self.left_unit(b)
    }

    pub fn green_l(&self, a: usize, b: usize) -> bool {
        self.right_unit(a) == self.right_unit(b)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn perms(&self) -> Option<&[PartialPerm]> {
        self.perms.as_deref()
    }

    pub fn find_perm(&self, p: &PartialPerm) -> Option<usize> {
        self.perms.as_ref()?.iter().position(|q| q == p)
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Smallest subset containing `seed` closed under product and inverse.
    pub fn inverse_closure(&self, seed: &ElemSet) -> ElemSet {
        let mut set = seed.clone();
        let mut queue: Vec<usize> = seed.iter().collect();
        for a in seed.iter() {
            if set.insert(self.inv(a)) {
                queue.push(self.inv(a));
            }
        }
        let mut members: Vec<usize> = set.iter().collect();
        while let Some(x) = queue.pop() {
            let mut fresh = Vec::new();
            for &y in &members {
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if set.insert(z) {
                        fresh.push(z);
                    }
                    let zi = self.inv(z);
                    if set.insert(zi) {
                        fresh.push(zi);
                    }
                }
            }
            members.extend(fresh.iter().copied());
            queue.extend(fresh);
        }
        set
    }

    /// Smallest subset containing `seed` closed under product (no inverses).
    pub fn product_closure(&self, seed: &ElemSet) -> ElemSet {
        let mut set = seed.clone();
        loop {
            let members: Vec<usize> = set.iter().collect();
            let mut grew = false;
            for &x in &members {
                for &y in &members {
                    grew |= set.insert(self.mul(x, y));
                }
            }
            if !grew {
                return set;
            }
        }
    }

    pub fn is_inverse_subsemigroup(&self, set: &ElemSet) -> bool {
        let members: Vec<usize> = set.iter().collect();
        members.iter().all(|&a| set.contains(self.inv(a)))
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| set.contains(self.mul(a, b))))
    }

    /// Every full inverse subsemigroup, sorted by membership bitmask.
    ///
    /// Found by closing `T ∪ {x}` for each found `T` and each `x ∉ T`,
    /// starting from `E(S)`; each full inverse subsemigroup is reached this
    /// way by adding its elements one at a time.
    pub fn full_inverse_subsemigroups(&self, cap: usize) -> Result<Vec<FullInverseSub>> {
        let base = self.idempotent_set();
        let mut seen: HashSet<ElemSet> = HashSet::new();
        seen.insert(base.clone());
        let mut stack = vec![base];
        while let Some(t) = stack.pop() {
            for x in 0..self.size() {
                if t.contains(x) {
                    continue;
                }
                let mut seed = t.clone();
                seed.insert(x);
                let closed = self.inverse_closure(&seed);
                if seen.insert(closed.clone()) {
                    if seen.len() > cap {
                        return Err(Error::Resource {
                            what: "full inverse subsemigroups",
                            count: seen.len(),
                            cap,
                        });
                    }
                    stack.push(closed);
                }
            }
        }
        let mut out: Vec<FullInverseSub> = seen.into_iter().map(|members| FullInverseSub { members }).collect();
        out.sort();
        Ok(out)
    }

    /// The subsemigroup on `members` as a semigroup in its own right, with the
    /// map from its indices back to ours.
    pub fn subsemigroup(&self, members: &ElemSet) -> Result<(FiniteInverseSemigroup, Vec<usize>)> {
        if !self.is_inverse_subsemigroup(members) || members.is_empty() {
            return input("subset is not an inverse subsemigroup");
        }
        let back: Vec<usize> = members.iter().collect();
        let mut fwd = vec![usize::MAX; self.size()];
        for (i, &a) in back.iter().enumerate() {
            fwd[a] = i;
        }
        let table = back
            .iter()
            .map(|&a| back.iter().map(|&b| fwd[self.mul(a, b)]).collect())
            .collect();
        let labels = back.iter().map(|&a| self.labels[a].clone()).collect();
        let sub = Self::from_table(labels, table)?;
        Ok((sub, back))
    }

    /// Checks the structural invariants of the table. Used by tests and by
    /// the oracle report.
    pub fn check_invariants(&self) -> Result<()> {
        let m = self.size();
        for a in 0..m {
            let ai = self.inv(a);
            if self.mul3(a, ai, a) != a || self.mul3(ai, a, ai) != ai {
                return invariant(format!("inverse law fails at {}", self.label(a)));
            }
        }
        for &e in &self.idempotents {
            for &f in &self.idempotents {
                if self.mul(e, f) != self.mul(f, e) {
                    return invariant("idempotents do not commute");
                }
            }
        }
        Ok(())
    }
}

/// A full inverse subsemigroup: contains every idempotent, closed under
/// product and inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FullInverseSub {
    members: ElemSet,
}

impl FullInverseSub {
    pub fn new(s: &FiniteInverseSemigroup, members: ElemSet) -> Result<Self> {
        if members.universe() != s.size() {
            return input("subset universe does not match the semigroup");
        }
        if let Some(&e) = s.idempotents().iter().find(|&&e| !members.contains(e)) {
            return input(format!("subset is not full: missing idempotent {}", s.label(e)));
        }
        if !s.is_inverse_subsemigroup(&members) {
            return input("subset is not closed under product and inverse");
        }
        Ok(FullInverseSub { members })
    }

    /// `|X ∪ E(S)|`, the full inverse subsemigroup generated by `extra`.
    pub fn generated(s: &FiniteInverseSemigroup, extra: impl IntoIterator<Item = usize>) -> Self {
        let mut seed = s.idempotent_set();
        for x in extra {
            seed.insert(x);
        }
        FullInverseSub {
            members: s.inverse_closure(&seed),
        }
    }

    pub fn semilattice(s: &FiniteInverseSemigroup) -> Self {
        FullInverseSub {
            members: s.idempotent_set(),
        }
    }

    pub fn whole(s: &FiniteInverseSemigroup) -> Self {
        FullInverseSub {
            members: ElemSet::full(s.size()),
        }
    }

    pub(crate) fn new_unchecked(members: ElemSet) -> Self {
        FullInverseSub { members }
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &FullInverseSub) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &FullInverseSub) -> FullInverseSub {
        FullInverseSub {
            members: self.members.intersection(&other.members),
        }
    }

    /// Join in the lattice of full inverse subsemigroups.
    pub fn join(&self, s: &FiniteInverseSemigroup, other: &FullInverseSub) -> FullInverseSub {
        FullInverseSub {
            members: s.inverse_closure(&self.members.union(&other.members)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i2() -> FiniteInverseSemigroup {
        let alpha = PartialPerm::from_pairs(2, &[(1, 2), (2, 1)]).unwrap();
        let beta = PartialPerm::from_pairs(2, &[(1, 2)]).unwrap();
        FiniteInverseSemigroup::closure(&[alpha, beta], DEFAULT_CAP).unwrap()
    }

    fn el(s: &FiniteInverseSemigroup, pairs: &[(usize, usize)]) -> usize {
        s.find_perm(&PartialPerm::from_pairs(2, pairs).unwrap()).unwrap()
    }

    #[test]
    fn i2_has_seven_elements() {
        let s = i2();
        assert_eq!(s.size(), 7);
        assert_eq!(s.idempotents().len(), 4);
        s.check_invariants().unwrap();
    }

    #[test]
    fn closure_small_cases() {
        let id = FiniteInverseSemigroup::closure(&[PartialPerm::identity(3)], 10).unwrap();
        assert_eq!(id.size(), 1);
        let beta = PartialPerm::from_pairs(2, &[(1, 2)]).unwrap();
        let b = FiniteInverseSemigroup::closure(&[beta], 10).unwrap();
        assert_eq!(b.size(), 5);
    }

    #[test]
    fn closure_rejects_bad_input() {
        assert!(matches!(FiniteInverseSemigroup::closure(&[], 10), Err(Error::Input(_))));
        let mixed = [PartialPerm::identity(2), PartialPerm::identity(3)];
        assert!(matches!(
            FiniteInverseSemigroup::closure(&mixed, 10),
            Err(Error::Input(_))
        ));
        let alpha = PartialPerm::from_pairs(2, &[(1, 2), (2, 1)]).unwrap();
        let beta = PartialPerm::from_pairs(2, &[(1, 2)]).unwrap();
        assert!(matches!(
            FiniteInverseSemigroup::closure(&[alpha, beta], 6),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn canonical_order_puts_identity_first_and_empty_last() {
        let s = i2();
        assert_eq!(s.label(0), "[1,2]");
        assert_eq!(s.label(6), "[-,-]");
    }

    #[test]
    fn natural_order_examples() {
        let s = i2();
        let (top, zero) = (el(&s, &[(1, 1), (2, 2)]), el(&s, &[]));
        let (i1, beta) = (el(&s, &[(1, 1)]), el(&s, &[(1, 2)]));
        assert!(s.natural_leq(zero, top));
        assert!(s.natural_leq(beta, beta));
        assert!(!s.natural_leq(i1, beta));
    }

    #[test]
    fn green_r_examples() {
        let s = i2();
        let beta = el(&s, &[(1, 2)]);
        let i1 = el(&s, &[(1, 1)]);
        let i2e = el(&s, &[(2, 2)]);
        let alpha = el(&s, &[(1, 2), (2, 1)]);
        let top = el(&s, &[(1, 1), (2, 2)]);
        assert!(s.green_r(beta, i1));
        assert!(!s.green_r(i1, i2e));
        assert!(s.green_r(alpha, top));
    }

    #[test]
    fn full_inverse_subsemigroups_of_i2() {
        let s = i2();
        let subs = s.full_inverse_subsemigroups(DEFAULT_CAP).unwrap();
        assert_eq!(subs.len(), 3);
        let sizes: HashSet<usize> = subs.iter().map(|t| t.len()).collect();
        assert_eq!(sizes, HashSet::from([4, 6, 7]));
    }

    #[test]
    fn semilattice_has_only_itself() {
        let c = FiniteInverseSemigroup::chain(4).unwrap();
        let subs = c.full_inverse_subsemigroups(DEFAULT_CAP).unwrap();
        assert_eq!(subs, vec![FullInverseSub::semilattice(&c)]);
    }

    #[test]
    fn brandt_b2_matches_generated_beta() {
        let b2 = FiniteInverseSemigroup::brandt(2).unwrap();
        assert_eq!(b2.size(), 5);
        assert_eq!(b2.idempotents().len(), 3);
        b2.check_invariants().unwrap();
    }

    #[test]
    fn from_table_rejects_non_inverse() {
        // left-zero band on two elements: every element is an inverse of every other
        let t = vec![vec![0, 0], vec![1, 1]];
        assert!(FiniteInverseSemigroup::from_table(vec!["a".into(), "b".into()], t).is_err());
    }

    #[test]
    fn full_inverse_sub_validation() {
        let s = i2();
        let beta = el(&s, &[(1, 2)]);
        let not_full = ElemSet::from_indices(7, [beta]);
        assert!(FullInverseSub::new(&s, not_full).is_err());
        let mut not_inverse = s.idempotent_set();
        not_inverse.insert(beta);
        assert!(FullInverseSub::new(&s, not_inverse).is_err());
        let t = FullInverseSub::generated(&s, [beta]);
        assert_eq!(t.len(), 6);
    }
}
