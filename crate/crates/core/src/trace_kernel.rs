//! Trace, kernel, inverse kernel, normalizers, centralizer and the closed
//! forms of the extreme left congruences with a given trace or inverse kernel.

use std::fmt;

use crate::elemset::ElemSet;
use crate::error::{input, Result};
use crate::relation::{semilattice_closure, EqRelation, UnionFind};
use crate::semigroup::{FiniteInverseSemigroup, FullInverseSub};

/// A congruence on `E(S)`, stored over idempotent positions together with
/// the class of every idempotent element index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceCongruence {
    rel: EqRelation,
    lift: Vec<u32>,
}

const NOT_IDEMPOTENT: u32 = u32::MAX;

impl TraceCongruence {
    /// Wraps a relation on idempotent positions, checking compatibility with
    /// multiplication in `E(S)`.
    pub fn new(s: &FiniteInverseSemigroup, rel: EqRelation) -> Result<Self> {
        let idem = s.idempotents();
        if rel.size() != idem.len() {
            return input(format!(
                "trace has {} points but the semigroup has {} idempotents",
                rel.size(),
                idem.len()
            ));
        }
        for (e, f) in rel.spanning_pairs() {
            for &g in idem {
                let ge = s.mul(g, idem[e]);
                let gf = s.mul(g, idem[f]);
                if !rel.related(s.idem_pos(ge).unwrap(), s.idem_pos(gf).unwrap()) {
                    return input(format!(
                        "not a semilattice congruence: {} ~ {} but not {} ~ {}",
                        s.label(idem[e]),
                        s.label(idem[f]),
                        s.label(ge),
                        s.label(gf)
                    ));
                }
            }
        }
        Ok(Self::wrap(s, rel))
    }

    pub(crate) fn wrap(s: &FiniteInverseSemigroup, rel: EqRelation) -> Self {
        let mut lift = vec![NOT_IDEMPOTENT; s.size()];
        for (p, &e) in s.idempotents().iter().enumerate() {
            lift[e] = rel.class_of(p) as u32;
        }
        TraceCongruence { rel, lift }
    }

    pub fn identity(s: &FiniteInverseSemigroup) -> Self {
        Self::wrap(s, EqRelation::identity(s.idempotents().len()))
    }

    pub fn universal(s: &FiniteInverseSemigroup) -> Self {
        Self::wrap(s, EqRelation::universal(s.idempotents().len()))
    }

    /// Builds a trace from blocks of idempotent element indices. Idempotents
    /// left out are singletons.
    pub fn from_element_blocks(s: &FiniteInverseSemigroup, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut pos_blocks = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut pb = Vec::with_capacity(block.len());
            for &e in block {
                match (e < s.size()).then(|| s.idem_pos(e)).flatten() {
                    Some(p) => pb.push(p),
                    None => return input(format!("element {e} is not an idempotent")),
                }
            }
            pos_blocks.push(pb);
        }
        let rel = EqRelation::from_blocks(s.idempotents().len(), &pos_blocks)?;
        Self::new(s, rel)
    }

    /// The semilattice congruence generated by pairs of idempotent elements.
    pub fn generated(s: &FiniteInverseSemigroup, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let pos: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(e, f)| (s.idem_pos(e).expect("idempotent"), s.idem_pos(f).expect("idempotent")))
            .collect();
        Self::wrap(s, semilattice_closure(s, pos))
    }

    /// The relation on idempotent positions.
    pub fn relation(&self) -> &EqRelation {
        &self.rel
    }

    /// Whether idempotents `e` and `f` (element indices) are related.
    #[inline]
    pub fn related(&self, e: usize, f: usize) -> bool {
        let (x, y) = (self.lift[e], self.lift[f]);
        debug_assert!(x != NOT_IDEMPOTENT && y != NOT_IDEMPOTENT);
        x == y
    }

    /// Classes as lists of idempotent element indices.
    pub fn element_classes(&self, s: &FiniteInverseSemigroup) -> Vec<Vec<usize>> {
        let idem = s.idempotents();
        self.rel
            .classes()
            .into_iter()
            .map(|c| c.into_iter().map(|p| idem[p]).collect())
            .collect()
    }

    /// Idempotents in the class of `e`.
    pub fn class_of(&self, s: &FiniteInverseSemigroup, e: usize) -> Vec<usize> {
        let c = self.lift[e];
        s.idempotents().iter().copied().filter(|&f| self.lift[f] == c).collect()
    }

    /// Least element of the class of `e`, the product of its members.
    pub fn class_min(&self, s: &FiniteInverseSemigroup, e: usize) -> usize {
        self.class_of(s, e).into_iter().fold(e, |acc, f| s.mul(acc, f))
    }

    /// Related pairs of idempotent element indices spanning the relation.
    pub fn spanning_pairs(&self, s: &FiniteInverseSemigroup) -> Vec<(usize, usize)> {
        let idem = s.idempotents();
        self.rel
            .spanning_pairs()
            .into_iter()
            .map(|(p, q)| (idem[p], idem[q]))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rel.is_identity()
    }

    pub fn is_universal(&self) -> bool {
        self.rel.is_universal()
    }

    pub fn is_subset(&self, other: &TraceCongruence) -> bool {
        self.rel.is_subset(&other.rel)
    }

    pub fn meet(&self, s: &FiniteInverseSemigroup, other: &TraceCongruence) -> TraceCongruence {
        Self::wrap(s, self.rel.meet(&other.rel))
    }

    pub fn join(&self, s: &FiniteInverseSemigroup, other: &TraceCongruence) -> TraceCongruence {
        Self::wrap(s, self.rel.join(&other.rel))
    }

    /// Blocks rendered with element labels, e.g. `{[1,2]}{[1,-],[-,-]}`.
    pub fn describe(&self, s: &FiniteInverseSemigroup) -> String {
        self.element_classes(s)
            .iter()
            .map(|c| {
                let items: Vec<&str> = c.iter().map(|&e| s.label(e)).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect()
    }
}

impl fmt::Debug for TraceCongruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Trace{:?}", self.rel)
    }
}

/// A full subsemigroup (contains `E(S)`, closed under products, not
/// necessarily under inverses).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct KernelSub {
    members: ElemSet,
}

impl KernelSub {
    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn is_subset(&self, other: &KernelSub) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn trace(s: &FiniteInverseSemigroup, rho: &EqRelation) -> TraceCongruence {
    let (rel, _) = rho.restrict(s.idempotents());
    TraceCongruence::wrap(s, rel)
}

/// Union of the classes that contain an idempotent.
pub fn kernel(s: &FiniteInverseSemigroup, rho: &EqRelation) -> KernelSub {
    let mut idem_class = vec![false; rho.num_classes()];
    for &e in s.idempotents() {
        idem_class[rho.class_of(e)] = true;
    }
    let members = ElemSet::from_indices(s.size(), (0..s.size()).filter(|&a| idem_class[rho.class_of(a)]));
    KernelSub { members }
}

/// `{a : a ρ aa⁻¹}`.
pub fn inverse_kernel(s: &FiniteInverseSemigroup, rho: &EqRelation) -> FullInverseSub {
    let members = ElemSet::from_indices(s.size(), (0..s.size()).filter(|&a| rho.related(a, s.left_unit(a))));
    FullInverseSub::new_unchecked(members)
}

/// `{a : a ρ a⁻¹a}`, the inverse kernel of a right congruence.
pub fn right_inverse_kernel(s: &FiniteInverseSemigroup, rho: &EqRelation) -> FullInverseSub {
    let members = ElemSet::from_indices(s.size(), (0..s.size()).filter(|&a| rho.related(a, s.right_unit(a))));
    FullInverseSub::new_unchecked(members)
}

/// The left normalizer, right normalizer and normalizer of a trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalizers {
    pub left: ElemSet,
    pub right: ElemSet,
    pub both: FullInverseSub,
}

fn preserves(s: &FiniteInverseSemigroup, tau: &TraceCongruence, pairs: &[(usize, usize)], a: usize) -> bool {
    pairs.iter().all(|&(e, f)| tau.related(s.conj(a, e), s.conj(a, f)))
}

pub fn normalizers(s: &FiniteInverseSemigroup, tau: &TraceCongruence) -> Normalizers {
    let pairs = tau.spanning_pairs(s);
    let right = ElemSet::from_indices(s.size(), (0..s.size()).filter(|&a| preserves(s, tau, &pairs, a)));
    let left = ElemSet::from_indices(s.size(), (0..s.size()).filter(|&a| right.contains(s.inv(a))));
    let both = FullInverseSub::new_unchecked(left.intersection(&right));
    Normalizers { left, right, both }
}

/// `N_L(τ) = {a : e τ f ⇒ a⁻¹ea τ a⁻¹fa}`.
pub fn left_normalizer(s: &FiniteInverseSemigroup, tau: &TraceCongruence) -> ElemSet {
    normalizers(s, tau).left
}

/// `N(τ) = N_L(τ) ∩ N_R(τ)`.
pub fn normalizer(s: &FiniteInverseSemigroup, tau: &TraceCongruence) -> FullInverseSub {
    normalizers(s, tau).both
}

/// `C(τ) = {a ∈ N(τ) : ae = e for some e τ a⁻¹a}`.
pub fn centralizer(s: &FiniteInverseSemigroup, tau: &TraceCongruence) -> FullInverseSub {
    let n = normalizer(s, tau);
    let members = ElemSet::from_indices(
        s.size(),
        n.members()
            .iter()
            .filter(|&a| tau.class_of(s, s.right_unit(a)).into_iter().any(|e| s.mul(a, e) == e)),
    );
    FullInverseSub::new_unchecked(members)
}

/// Builds a relation from a predicate already known to be an equivalence,
/// only testing pairs whose `key` agrees.
fn relation_by_key(n: usize, key: impl Fn(usize) -> usize, pred: impl Fn(usize, usize) -> bool) -> EqRelation {
    let mut uf = UnionFind::new(n);
    let mut buckets: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for a in 0..n {
        buckets.entry(key(a)).or_default().push(a);
    }
    for bucket in buckets.values() {
        for (i, &a) in bucket.iter().enumerate() {
            for &b in &bucket[i + 1..] {
                if uf.find(a) != uf.find(b) && pred(a, b) {
                    uf.union(a, b);
                }
            }
        }
    }
    uf.freeze()
}

fn trace_key<'a>(s: &'a FiniteInverseSemigroup, tau: &'a TraceCongruence) -> impl Fn(usize) -> usize + 'a {
    move |a| tau.relation().class_of(s.idem_pos(s.right_unit(a)).unwrap())
}

/// The least left congruence with trace `τ`:
/// `a ν b ⇔ a⁻¹a τ b⁻¹b` and `ae = be` for some `e τ a⁻¹a`.
pub fn nu(s: &FiniteInverseSemigroup, tau: &TraceCongruence) -> EqRelation {
    relation_by_key(s.size(), trace_key(s, tau), |a, b| {
        tau.class_of(s, s.right_unit(a))
            .into_iter()
            .any(|e| s.mul(a, e) == s.mul(b, e))
    })
}

/// The greatest left congruence with trace `τ`:
/// `a⁻¹bb⁻¹a τ a⁻¹a`, `b⁻¹aa⁻¹b τ b⁻¹b` and `a⁻¹b, b⁻¹a ∈ N_L(τ)`.
pub fn mu(s: &FiniteInverseSemigroup, tau: &TraceCongruence) -> EqRelation {
    let nl = left_normalizer(s, tau);
    let mut uf = UnionFind::new(s.size());
    for a in 0..s.size() {
        for b in (a + 1)..s.size() {
            let ab = s.mul(s.inv(a), b);
            let ba = s.mul(s.inv(b), a);
            if nl.contains(ab)
                && nl.contains(ba)
                && tau.related(s.left_unit(ab), s.right_unit(a))
                && tau.related(s.left_unit(ba), s.right_unit(b))
            {
                uf.union(a, b);
            }
        }
    }
    uf.freeze()
}

/// `ρ_(τ,T)`: `x⁻¹y ∈ T`, `x⁻¹yy⁻¹x τ x⁻¹x` and `y⁻¹xx⁻¹y τ y⁻¹y`.
///
/// A left congruence exactly when `(τ, T)` is an inverse congruence pair;
/// otherwise the result is only the equivalence generated by these pairs.
pub fn rho_relation(s: &FiniteInverseSemigroup, tau: &TraceCongruence, t: &FullInverseSub) -> EqRelation {
    relation_by_key(
        s.size(),
        |_| 0,
        |x, y| {
            let xy = s.mul(s.inv(x), y);
            let yx = s.inv(xy);
            t.contains(xy)
                && tau.related(s.left_unit(xy), s.right_unit(x))
                && tau.related(s.left_unit(yx), s.right_unit(y))
        },
    )
}

/// The idempotent separating left congruence with inverse kernel `T`.
pub fn chi(s: &FiniteInverseSemigroup, t: &FullInverseSub) -> EqRelation {
    rho_relation(s, &TraceCongruence::identity(s), t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, i2_element as el};

    fn names(s: &FiniteInverseSemigroup, set: &ElemSet) -> Vec<&'static str> {
        let mut v: Vec<&str> = set.iter().map(|a| corpus::i2_name(s, a)).collect();
        v.sort();
        v
    }

    #[test]
    fn trace_of_extremes() {
        let s = corpus::i2();
        assert!(trace(&s, &EqRelation::identity(7)).is_identity());
        assert!(trace(&s, &EqRelation::universal(7)).is_universal());
        assert_eq!(kernel(&s, &EqRelation::identity(7)).members(), &s.idempotent_set());
        assert_eq!(kernel(&s, &EqRelation::universal(7)).len(), 7);
        assert_eq!(
            inverse_kernel(&s, &EqRelation::identity(7)),
            FullInverseSub::semilattice(&s)
        );
        assert_eq!(inverse_kernel(&s, &EqRelation::universal(7)), FullInverseSub::whole(&s));
    }

    #[test]
    fn trace_constructor_rejects_non_congruence() {
        let s = corpus::i2();
        let bad = TraceCongruence::from_element_blocks(&s, &[vec![el(&s, "I1"), el(&s, "I2")]]);
        assert!(bad.is_err());
        assert!(TraceCongruence::from_element_blocks(&s, &[vec![el(&s, "b")]]).is_err());
    }

    #[test]
    fn normalizer_of_merged_atoms() {
        let s = corpus::i2();
        let tau = TraceCongruence::from_element_blocks(&s, &[vec![el(&s, "I1"), el(&s, "I2"), el(&s, "I0")]]).unwrap();
        let n = normalizer(&s, &tau);
        assert_eq!(n.len(), 7);
        assert!(n.contains(el(&s, "b")));
    }

    #[test]
    fn normalizer_of_single_atom_merge_is_e() {
        let s = corpus::i2();
        let tau = TraceCongruence::from_element_blocks(&s, &[vec![el(&s, "I1"), el(&s, "I0")]]).unwrap();
        assert_eq!(names(&s, normalizer(&s, &tau).members()), vec!["I0", "I1", "I12", "I2"]);
    }

    #[test]
    fn normalizer_of_identity_in_group_is_whole() {
        let g = corpus::clifford6();
        let sub = FullInverseSub::whole(&g);
        assert_eq!(normalizer(&g, &TraceCongruence::identity(&g)), sub);
    }

    #[test]
    fn centralizer_of_identity_is_e() {
        let s = corpus::i2();
        assert_eq!(
            centralizer(&s, &TraceCongruence::identity(&s)),
            FullInverseSub::semilattice(&s)
        );
    }

    #[test]
    fn centralizer_of_universal_is_inverse_kernel_of_nu() {
        let s = corpus::i2();
        let w = TraceCongruence::universal(&s);
        assert_eq!(centralizer(&s, &w), inverse_kernel(&s, &nu(&s, &w)));
    }

    #[test]
    fn nu_of_identity_is_identity() {
        let s = corpus::i2();
        assert!(nu(&s, &TraceCongruence::identity(&s)).is_identity());
    }

    #[test]
    fn mu_of_identity_is_green_r() {
        for (_, s) in corpus::corpus() {
            let r = EqRelation::from_predicate(s.size(), |a, b| s.green_r(a, b)).unwrap();
            assert_eq!(mu(&s, &TraceCongruence::identity(&s)), r);
        }
    }

    #[test]
    fn chi_extremes() {
        let s = corpus::i2();
        assert!(chi(&s, &FullInverseSub::semilattice(&s)).is_identity());
        let r = EqRelation::from_predicate(7, |a, b| s.green_r(a, b)).unwrap();
        assert_eq!(chi(&s, &FullInverseSub::whole(&s)), r);
    }

    #[test]
    fn chi_of_t_has_trivial_trace_and_kernel_t() {
        let s = corpus::i2();
        for t in s.full_inverse_subsemigroups(usize::MAX).unwrap() {
            let c = chi(&s, &t);
            assert!(trace(&s, &c).is_identity());
            assert_eq!(inverse_kernel(&s, &c), t);
            assert_eq!(kernel(&s, &c).members(), t.members());
        }
    }

    #[test]
    fn closed_forms_are_equivalences() {
        for (name, s) in corpus::corpus() {
            let n = s.size();
            for rel in crate::relation::semilattice_congruences(&s) {
                let tau = TraceCongruence::wrap(&s, rel);
                for r in [nu(&s, &tau), mu(&s, &tau)] {
                    let checked = EqRelation::from_predicate(n, |a, b| r.related(a, b)).unwrap();
                    assert_eq!(checked, r, "{name}");
                    assert!(r.is_left_compatible(&s), "{name}");
                    assert_eq!(trace(&s, &r), tau, "{name}");
                }
            }
        }
    }

    #[test]
    fn nu_equals_generated_closure() {
        use crate::relation::{left_congruence_closure, GenPairSet};
        for (name, s) in corpus::corpus() {
            for rel in crate::relation::semilattice_congruences(&s) {
                let tau = TraceCongruence::wrap(&s, rel);
                let gens = GenPairSet::from_pairs(tau.spanning_pairs(&s));
                assert_eq!(nu(&s, &tau), left_congruence_closure(&s, &gens), "{name}");
            }
        }
    }

    #[test]
    fn normalizer_is_inverse_closed_part_of_left_normalizer() {
        for (name, s) in corpus::corpus() {
            for rel in crate::relation::semilattice_congruences(&s) {
                let tau = TraceCongruence::wrap(&s, rel);
                let ns = normalizers(&s, &tau);
                let expected = ElemSet::from_indices(s.size(), ns.left.iter().filter(|&a| ns.left.contains(s.inv(a))));
                assert_eq!(ns.both.members(), &expected, "{name}");
                FullInverseSub::new(&s, ns.both.members().clone()).unwrap();
            }
        }
    }

    #[test]
    fn centralizer_is_self_conjugate_in_normalizer() {
        for (name, s) in corpus::corpus() {
            for rel in crate::relation::semilattice_congruences(&s) {
                let tau = TraceCongruence::wrap(&s, rel);
                let n = normalizer(&s, &tau);
                let c = centralizer(&s, &tau);
                FullInverseSub::new(&s, c.members().clone()).unwrap();
                for a in c.members().iter() {
                    for b in n.members().iter() {
                        assert!(c.contains(s.conj(b, a)), "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn normalizer_of_meet_and_join_contains_intersection() {
        for (name, s) in corpus::corpus() {
            let traces: Vec<TraceCongruence> = crate::relation::semilattice_congruences(&s)
                .into_iter()
                .map(|r| TraceCongruence::wrap(&s, r))
                .collect();
            for t1 in &traces {
                for t2 in &traces {
                    let both = normalizer(&s, t1).intersection(&normalizer(&s, t2));
                    assert!(both.is_subset(&normalizer(&s, &t1.meet(&s, t2))), "{name}");
                    assert!(both.is_subset(&normalizer(&s, &t1.join(&s, t2))), "{name}");
                }
            }
        }
    }
}
