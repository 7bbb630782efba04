//! Inverse congruence pairs `(τ, T)` and the lattice of left congruences.

use std::collections::BTreeSet;

use crate::elemset::ElemSet;
use crate::error::{input, invariant, Error, Result};
use crate::relation::{semilattice_closure, semilattice_congruences, EqRelation};
use crate::semigroup::{FiniteInverseSemigroup, FullInverseSub};
use crate::trace_kernel::{centralizer, chi, inverse_kernel, normalizer, nu, rho_relation, trace, TraceCongruence};

/// A congruence on the idempotents together with a full inverse
/// subsemigroup. Validity is a predicate, not a construction guarantee.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IKPair {
    pub tau: TraceCongruence,
    pub t: FullInverseSub,
}

impl IKPair {
    pub fn new(tau: TraceCongruence, t: FullInverseSub) -> Self {
        IKPair { tau, t }
    }

    /// `(ι, E)`.
    pub fn bottom(s: &FiniteInverseSemigroup) -> Self {
        IKPair::new(TraceCongruence::identity(s), FullInverseSub::semilattice(s))
    }

    /// `(ω_E, S)`.
    pub fn top(s: &FiniteInverseSemigroup) -> Self {
        IKPair::new(TraceCongruence::universal(s), FullInverseSub::whole(s))
    }

    /// Componentwise containment.
    pub fn leq(&self, other: &IKPair) -> bool {
        self.tau.is_subset(&other.tau) && self.t.is_subset(&other.t)
    }
}

fn check_well_formed(s: &FiniteInverseSemigroup, pair: &IKPair) -> Result<()> {
    if pair.tau.relation().size() != s.idempotents().len() {
        return input("trace does not belong to this semigroup");
    }
    TraceCongruence::new(s, pair.tau.relation().clone())?;
    if pair.t.members().universe() != s.size() {
        return input("subsemigroup does not belong to this semigroup");
    }
    FullInverseSub::new(s, pair.t.members().clone())?;
    Ok(())
}

/// Every pair in `𝔠(E) × 𝔙(S)`, in canonical order.
pub fn candidate_pairs(s: &FiniteInverseSemigroup, cap: usize) -> Result<Vec<IKPair>> {
    let traces = semilattice_congruences(s);
    let subs = s.full_inverse_subsemigroups(cap)?;
    let count = traces.len() * subs.len();
    if count > cap {
        return Err(Error::Resource {
            what: "candidate pairs",
            count,
            cap,
        });
    }
    let mut out = Vec::with_capacity(count);
    for rel in traces {
        let tau = TraceCongruence::wrap(s, rel);
        for t in &subs {
            out.push(IKPair::new(tau.clone(), t.clone()));
        }
    }
    Ok(out)
}

/// A witness against the closure condition: `x ∉ T`, `e τ x⁻¹x` with
/// `xe ∈ T` and `f τ xx⁻¹` with `fx ∈ T`.
pub fn closure_violation(s: &FiniteInverseSemigroup, pair: &IKPair) -> Option<(usize, usize, usize)> {
    let (tau, t) = (&pair.tau, &pair.t);
    for x in (0..s.size()).filter(|&x| !t.contains(x)) {
        let e = tau
            .class_of(s, s.right_unit(x))
            .into_iter()
            .find(|&e| t.contains(s.mul(x, e)));
        let f = tau
            .class_of(s, s.left_unit(x))
            .into_iter()
            .find(|&f| t.contains(s.mul(f, x)));
        if let (Some(e), Some(f)) = (e, f) {
            return Some((x, e, f));
        }
    }
    None
}

/// `T ⊆ N(τ)` and no element outside `T` is pulled into `T` from both sides
/// by idempotents related to its domain and range.
pub fn is_inverse_congruence_pair(s: &FiniteInverseSemigroup, pair: &IKPair) -> Result<bool> {
    check_well_formed(s, pair)?;
    if !pair.t.is_subset(&normalizer(s, &pair.tau)) {
        return Ok(false);
    }
    Ok(closure_violation(s, pair).is_none())
}

/// The same predicate through the fixed-kernel form: `T ⊆ N(τ)`, and for
/// `a ∉ T` and `e τ a⁻¹a` with `ae ∈ T`, `aa⁻¹` is not related to `aea⁻¹`.
pub fn is_icp_fixed_kernel(s: &FiniteInverseSemigroup, pair: &IKPair) -> Result<bool> {
    check_well_formed(s, pair)?;
    let (tau, t) = (&pair.tau, &pair.t);
    if !t.is_subset(&normalizer(s, tau)) {
        return Ok(false);
    }
    for a in (0..s.size()).filter(|&a| !t.contains(a)) {
        for e in tau.class_of(s, s.right_unit(a)) {
            if t.contains(s.mul(a, e)) && tau.related(s.left_unit(a), s.conj(a, e)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Test through minimal elements: `a ∉ T` is minimal when `ae ∈ T ∪ {a}`
/// for all idempotents `e`; the pair is valid iff each minimal `a` has
/// `aa⁻¹` or `a⁻¹a` at the bottom of its class.
pub fn is_icp_via_minimals(s: &FiniteInverseSemigroup, pair: &IKPair) -> Result<bool> {
    check_well_formed(s, pair)?;
    let (tau, t) = (&pair.tau, &pair.t);
    if !t.is_subset(&normalizer(s, tau)) {
        return input("T is not contained in the normalizer of the trace");
    }
    for a in minimal_elements(s, t) {
        let (l, r) = (s.left_unit(a), s.right_unit(a));
        if tau.class_min(s, l) != l && tau.class_min(s, r) != r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Elements `a ∉ T` with `aE ⊆ T ∪ {a}`.
pub fn minimal_elements(s: &FiniteInverseSemigroup, t: &FullInverseSub) -> Vec<usize> {
    (0..s.size())
        .filter(|&a| !t.contains(a))
        .filter(|&a| {
            s.idempotents().iter().all(|&e| {
                let ae = s.mul(a, e);
                ae == a || t.contains(ae)
            })
        })
        .collect()
}

/// `ρ_(τ,T)` for a valid pair.
pub fn rho_from_pair(s: &FiniteInverseSemigroup, pair: &IKPair) -> Result<EqRelation> {
    if !is_inverse_congruence_pair(s, pair)? {
        return input("not an inverse congruence pair");
    }
    Ok(rho_relation(s, &pair.tau, &pair.t))
}

/// `(trace ρ, inverse kernel ρ)` for a left congruence `ρ`.
pub fn pair_from_congruence(s: &FiniteInverseSemigroup, rho: &EqRelation) -> Result<IKPair> {
    if rho.size() != s.size() {
        return input("relation size does not match the semigroup");
    }
    if let Some((c, a, b)) = rho.first_left_violation(s) {
        return input(format!(
            "not a left congruence: {} ~ {} but not {} ~ {}",
            s.label(a),
            s.label(b),
            s.label(s.mul(c, a)),
            s.label(s.mul(c, b))
        ));
    }
    Ok(phi(s, rho))
}

pub fn phi(s: &FiniteInverseSemigroup, rho: &EqRelation) -> IKPair {
    IKPair::new(trace(s, rho), inverse_kernel(s, rho))
}

/// `ν_τ ∨ χ_T`; defined for every pair, valid or not.
pub fn theta(s: &FiniteInverseSemigroup, pair: &IKPair) -> EqRelation {
    nu(s, &pair.tau).join(&chi(s, &pair.t))
}

/// Witness for `a` in the kernel: `e` the idempotent in the class of `a`
/// used, and `f = e·a·a⁻¹`, with `f χ fa` and `fa ν a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelWitness {
    pub a: usize,
    pub e: usize,
    pub f: usize,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub nu: EqRelation,
    pub chi: EqRelation,
    pub witnesses: Vec<KernelWitness>,
}

/// Splits a left congruence into its least part with the same trace and its
/// idempotent separating part `ρ ∩ R`.
pub fn decompose(s: &FiniteInverseSemigroup, rho: &EqRelation) -> Decomposition {
    let tau = trace(s, rho);
    let nu_part = nu(s, &tau);
    let r = EqRelation::from_labels(&(0..s.size()).map(|a| s.left_unit(a)).collect::<Vec<_>>());
    let chi_part = rho.meet(&r);
    let mut witnesses = Vec::new();
    for a in 0..s.size() {
        if let Some(&e) = s.idempotents().iter().find(|&&e| rho.related(a, e)) {
            witnesses.push(KernelWitness {
                a,
                e,
                f: s.mul(e, s.left_unit(a)),
            });
        }
    }
    Decomposition {
        nu: nu_part,
        chi: chi_part,
        witnesses,
    }
}

fn require_valid(s: &FiniteInverseSemigroup, pair: &IKPair, which: &str) -> Result<()> {
    if is_inverse_congruence_pair(s, pair)? {
        Ok(())
    } else {
        input(format!("{which} is not an inverse congruence pair"))
    }
}

pub fn meet_pairs(s: &FiniteInverseSemigroup, p1: &IKPair, p2: &IKPair) -> Result<IKPair> {
    require_valid(s, p1, "first pair")?;
    require_valid(s, p2, "second pair")?;
    Ok(IKPair::new(p1.tau.meet(s, &p2.tau), p1.t.intersection(&p2.t)))
}

pub fn join_pairs(s: &FiniteInverseSemigroup, p1: &IKPair, p2: &IKPair) -> Result<IKPair> {
    require_valid(s, p1, "first pair")?;
    require_valid(s, p2, "second pair")?;
    let t_star = p1.t.join(s, &p2.t);
    let members: Vec<usize> = t_star.members().iter().collect();

    // Least trace containing both traces whose normalizer contains T*.
    let mut xi = p1.tau.join(s, &p2.tau);
    loop {
        let n = normalizer(s, &xi);
        if t_star.is_subset(&n) {
            break;
        }
        let mut extra = xi.relation().spanning_pairs();
        for &a in &members {
            for (e, f) in xi.spanning_pairs(s) {
                let (x, y) = (s.conj(a, e), s.conj(a, f));
                extra.push((s.idem_pos(x).unwrap(), s.idem_pos(y).unwrap()));
            }
        }
        let next = TraceCongruence::wrap(s, semilattice_closure(s, extra));
        if next == xi {
            return invariant("join trace stopped growing before T* was normalized");
        }
        xi = next;
    }

    let n = normalizer(s, &xi);
    let psi = nu(s, &xi);
    let v = ElemSet::from_indices(
        s.size(),
        n.members()
            .iter()
            .filter(|&b| members.iter().any(|&t| psi.related(b, t))),
    );
    let v = FullInverseSub::new(s, v)?;
    Ok(IKPair::new(xi, v))
}

/// The valid pairs with a fixed trace, together with the quotient of the
/// normalizer they correspond to.
#[derive(Clone, Debug)]
pub struct TraceClass {
    pub tau: TraceCongruence,
    pub pairs: Vec<IKPair>,
    pub quotient: FiniteInverseSemigroup,
    pub centralizer: FullInverseSub,
    pub normalizer: FullInverseSub,
}

impl TraceClass {
    pub fn min(&self, s: &FiniteInverseSemigroup) -> EqRelation {
        rho_relation(s, &self.tau, &self.centralizer)
    }

    pub fn max(&self, s: &FiniteInverseSemigroup) -> EqRelation {
        rho_relation(s, &self.tau, &self.normalizer)
    }
}

/// The quotient of `N(τ)` by `ν_τ` restricted to it, with a map from
/// elements of `N(τ)` to quotient indices (`None` outside `N(τ)`).
pub fn normalizer_quotient(
    s: &FiniteInverseSemigroup,
    tau: &TraceCongruence,
) -> Result<(FiniteInverseSemigroup, Vec<Option<usize>>)> {
    let n = normalizer(s, tau);
    let psi = nu(s, tau);
    let members: Vec<usize> = n.members().iter().collect();
    let (restricted, back) = psi.restrict(&members);
    let k = restricted.num_classes();
    let mut class_of = vec![None; s.size()];
    for (i, &a) in back.iter().enumerate() {
        class_of[a] = Some(restricted.class_of(i));
    }
    let reps: Vec<usize> = restricted.classes().iter().map(|c| back[c[0]]).collect();
    let mut table = vec![vec![0usize; k]; k];
    for (ca, &a) in reps.iter().enumerate() {
        for (cb, &b) in reps.iter().enumerate() {
            table[ca][cb] = class_of[s.mul(a, b)]
                .ok_or_else(|| Error::Invariant("normalizer is not closed under products".into()))?;
        }
    }
    // Well-definedness: every product must land in the representative class.
    for &a in &members {
        for &b in &members {
            let (ca, cb) = (class_of[a].unwrap(), class_of[b].unwrap());
            if class_of[s.mul(a, b)] != Some(table[ca][cb]) {
                return invariant(format!(
                    "product on N/ψ is not well defined at {} · {}",
                    s.label(a),
                    s.label(b)
                ));
            }
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", s.label(r))).collect();
    let q = FiniteInverseSemigroup::from_table(labels, table)?;
    Ok((q, class_of))
}

/// All valid pairs with trace `τ`, obtained from the full inverse
/// subsemigroups of `N(τ)/ψ` and cross-checked against a direct filter.
pub fn trace_class(s: &FiniteInverseSemigroup, tau: &TraceCongruence) -> Result<TraceClass> {
    let (q, class_of) = normalizer_quotient(s, tau)?;
    let mut pairs = Vec::new();
    for sub in q.full_inverse_subsemigroups(usize::MAX)? {
        let pre = ElemSet::from_indices(
            s.size(),
            (0..s.size()).filter(|&a| class_of[a].is_some_and(|c| sub.contains(c))),
        );
        pairs.push(IKPair::new(tau.clone(), FullInverseSub::new(s, pre)?));
    }
    pairs.sort();

    let mut direct = Vec::new();
    for t in s.full_inverse_subsemigroups(usize::MAX)? {
        let p = IKPair::new(tau.clone(), t);
        if is_inverse_congruence_pair(s, &p)? {
            direct.push(p);
        }
    }
    direct.sort();
    if pairs != direct {
        return invariant(format!(
            "trace class has {} pairs but N/ψ has {} full inverse subsemigroups",
            direct.len(),
            pairs.len()
        ));
    }
    Ok(TraceClass {
        tau: tau.clone(),
        pairs,
        quotient: q,
        centralizer: centralizer(s, tau),
        normalizer: normalizer(s, tau),
    })
}

/// All valid pairs with second component `T`, in canonical order; the first
/// is always `(ι, T)`.
pub fn ik_class(s: &FiniteInverseSemigroup, t: &FullInverseSub) -> Result<Vec<IKPair>> {
    let mut out = Vec::new();
    for rel in semilattice_congruences(s) {
        let p = IKPair::new(TraceCongruence::wrap(s, rel), t.clone());
        if is_inverse_congruence_pair(s, &p)? {
            out.push(p);
        }
    }
    out.sort_by(|a, b| (!a.tau.is_identity(), &a.tau).cmp(&(!b.tau.is_identity(), &b.tau)));
    Ok(out)
}

/// Maximal elements of a set of pairs under componentwise order.
pub fn maximal_pairs(pairs: &[IKPair]) -> Vec<IKPair> {
    pairs
        .iter()
        .filter(|p| !pairs.iter().any(|q| q != *p && p.leq(q)))
        .cloned()
        .collect()
}

/// `T` is self-conjugate, `N(τ) = S`, `xe ∈ T` with `e τ x⁻¹x` forces
/// `x ∈ T`, and `x ∈ T` forces `xx⁻¹ τ x⁻¹x`.
pub fn is_congruence_pair(s: &FiniteInverseSemigroup, pair: &IKPair) -> Result<bool> {
    check_well_formed(s, pair)?;
    let (tau, t) = (&pair.tau, &pair.t);
    let self_conjugate = (0..s.size()).all(|a| t.members().iter().all(|x| t.contains(s.conj(a, x))));
    if !self_conjugate || normalizer(s, tau).len() != s.size() {
        return Ok(false);
    }
    for x in 0..s.size() {
        if t.contains(x) {
            if !tau.related(s.left_unit(x), s.right_unit(x)) {
                return Ok(false);
            }
        } else if tau
            .class_of(s, s.right_unit(x))
            .into_iter()
            .any(|e| t.contains(s.mul(x, e)))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `P_(τ,T) = {(a,b) : a⁻¹a τ b⁻¹b, ab⁻¹ ∈ T}` for a congruence pair.
pub fn p_from_pair(s: &FiniteInverseSemigroup, pair: &IKPair) -> Result<EqRelation> {
    if !is_congruence_pair(s, pair)? {
        return input("not a congruence pair");
    }
    EqRelation::from_predicate(s.size(), |a, b| {
        pair.tau.related(s.right_unit(a), s.right_unit(b)) && pair.t.contains(s.mul(a, s.inv(b)))
    })
}

/// The left and right congruences with the data of a valid pair.
pub fn left_and_right(s: &FiniteInverseSemigroup, pair: &IKPair) -> Result<(EqRelation, EqRelation)> {
    let left = rho_from_pair(s, pair)?;
    let right = left.reverse_inverse(s);
    Ok((left, right))
}

pub fn is_two_sided(s: &FiniteInverseSemigroup, rho: &EqRelation) -> bool {
    rho.is_left_compatible(s) && rho.is_right_compatible(s)
}

/// Default bound on `|𝔠(E)| · |𝔙(S)|` for lattice assembly.
pub const LATTICE_CAP: usize = 200_000;

#[derive(Clone, Debug)]
pub struct LatticeNode {
    pub pair: IKPair,
    pub rho: EqRelation,
}

/// Every left congruence of a finite inverse semigroup with its pair, the
/// inclusion order and the covering relation.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    pub nodes: Vec<LatticeNode>,
    pub leq: Vec<Vec<bool>>,
    pub hasse: Vec<(usize, usize)>,
}

impl CongruenceLattice {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, rho: &EqRelation) -> Option<usize> {
        self.nodes.iter().position(|n| &n.rho == rho)
    }

    pub fn index_of_pair(&self, pair: &IKPair) -> Option<usize> {
        self.nodes.iter().position(|n| &n.pair == pair)
    }

    /// Index of the least element, if the order has one.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq[i][j]))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq[j][i]))
    }

    pub fn relations(&self) -> BTreeSet<EqRelation> {
        self.nodes.iter().map(|n| n.rho.clone()).collect()
    }
}

pub fn build_lattice(s: &FiniteInverseSemigroup) -> Result<CongruenceLattice> {
    build_lattice_with(s, LATTICE_CAP)
}

pub fn build_lattice_with(s: &FiniteInverseSemigroup, cap: usize) -> Result<CongruenceLattice> {
    let mut nodes = Vec::new();
    for pair in candidate_pairs(s, cap)? {
        if is_inverse_congruence_pair(s, &pair)? {
            let rho = rho_relation(s, &pair.tau, &pair.t);
            nodes.push(LatticeNode { pair, rho });
        }
    }
    let n = nodes.len();
    let leq: Vec<Vec<bool>> = nodes
        .iter()
        .map(|a| nodes.iter().map(|b| a.rho.is_subset(&b.rho)).collect())
        .collect();
    let mut hasse = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] && !(0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j]) {
                hasse.push((i, j));
            }
        }
    }
    Ok(CongruenceLattice { nodes, leq, hasse })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, i2_element as el};
    use crate::trace_kernel::kernel;

    fn merged_atoms(s: &FiniteInverseSemigroup) -> TraceCongruence {
        TraceCongruence::from_element_blocks(s, &[vec![el(s, "I1"), el(s, "I2"), el(s, "I0")]]).unwrap()
    }

    fn beta_sub(s: &FiniteInverseSemigroup) -> FullInverseSub {
        FullInverseSub::generated(s, [el(s, "b")])
    }

    #[test]
    fn identity_pair_is_valid() {
        for (_, s) in corpus::corpus() {
            assert!(is_inverse_congruence_pair(&s, &IKPair::bottom(&s)).unwrap());
            assert!(is_inverse_congruence_pair(&s, &IKPair::top(&s)).unwrap());
        }
    }

    #[test]
    fn i2_merged_atoms_example() {
        let s = corpus::i2();
        let tau = merged_atoms(&s);
        let with_e = IKPair::new(tau.clone(), FullInverseSub::semilattice(&s));
        assert!(!is_inverse_congruence_pair(&s, &with_e).unwrap());
        let (x, _, _) = closure_violation(&s, &with_e).unwrap();
        assert!(["b", "b'"].contains(&corpus::i2_name(&s, x)));
        let with_beta = IKPair::new(tau, beta_sub(&s));
        assert!(is_inverse_congruence_pair(&s, &with_beta).unwrap());
        assert!(!is_icp_via_minimals(&s, &with_e).unwrap());
    }

    #[test]
    fn ten_of_twenty_one_pairs_on_i2() {
        let s = corpus::i2();
        let all = candidate_pairs(&s, LATTICE_CAP).unwrap();
        assert_eq!(all.len(), 21);
        let valid = all
            .iter()
            .filter(|p| is_inverse_congruence_pair(&s, p).unwrap())
            .count();
        assert_eq!(valid, 10);
    }

    #[test]
    fn malformed_sub_is_input_error() {
        let s = corpus::i2();
        let bad = FullInverseSub::new_unchecked(ElemSet::from_indices(7, [el(&s, "I12")]));
        let pair = IKPair::new(TraceCongruence::identity(&s), bad);
        assert!(matches!(is_inverse_congruence_pair(&s, &pair), Err(Error::Input(_))));
    }

    #[test]
    fn rho_from_pair_extremes() {
        let s = corpus::i2();
        assert!(rho_from_pair(&s, &IKPair::bottom(&s)).unwrap().is_identity());
        assert!(rho_from_pair(&s, &IKPair::top(&s)).unwrap().is_universal());
        let invalid = IKPair::new(merged_atoms(&s), FullInverseSub::semilattice(&s));
        assert!(rho_from_pair(&s, &invalid).is_err());
    }

    #[test]
    fn pair_from_green_r() {
        let s = corpus::i2();
        let r = EqRelation::from_predicate(7, |a, b| s.green_r(a, b)).unwrap();
        let p = pair_from_congruence(&s, &r).unwrap();
        assert!(p.tau.is_identity());
        assert_eq!(p.t, FullInverseSub::whole(&s));
        assert_eq!(
            pair_from_congruence(&s, &EqRelation::universal(7)).unwrap(),
            IKPair::top(&s)
        );
        let not_left = EqRelation::from_pairs(7, [(el(&s, "I1"), el(&s, "I2"))]);
        assert!(pair_from_congruence(&s, &not_left).is_err());
    }

    #[test]
    fn decompose_universal() {
        let s = corpus::i2();
        let w = EqRelation::universal(7);
        let d = decompose(&s, &w);
        let r = EqRelation::from_predicate(7, |a, b| s.green_r(a, b)).unwrap();
        assert_eq!(d.chi, r);
        assert_eq!(d.nu, nu(&s, &TraceCongruence::universal(&s)));
        assert!(d.nu.join(&d.chi).is_universal());
        let b = el(&s, "b");
        let wb = d.witnesses.iter().find(|w| w.a == b).unwrap();
        assert_eq!(wb.f, s.mul(wb.e, s.left_unit(b)));
    }

    #[test]
    fn decomposition_witnesses_hold_on_corpus() {
        for (name, s) in corpus::corpus() {
            for node in build_lattice(&s).unwrap().nodes {
                let d = decompose(&s, &node.rho);
                assert_eq!(d.nu.join(&d.chi), node.rho, "{name}");
                assert_eq!(d.witnesses.len(), kernel(&s, &node.rho).len(), "{name}");
                for w in d.witnesses {
                    let fa = s.mul(w.f, w.a);
                    assert!(d.chi.related(w.f, fa), "{name}");
                    assert!(d.nu.related(fa, w.a), "{name}");
                }
            }
        }
    }

    #[test]
    fn meet_with_top_and_componentwise() {
        let s = corpus::i2();
        let top = IKPair::top(&s);
        for p in build_lattice(&s).unwrap().nodes {
            assert_eq!(meet_pairs(&s, &p.pair, &top).unwrap(), p.pair);
            assert_eq!(join_pairs(&s, &p.pair, &IKPair::bottom(&s)).unwrap(), p.pair);
        }
        let a = IKPair::new(TraceCongruence::identity(&s), FullInverseSub::whole(&s));
        let b = IKPair::new(TraceCongruence::universal(&s), FullInverseSub::semilattice(&s));
        assert!(meet_pairs(&s, &a, &b).is_err());
        for q in ik_class(&s, &FullInverseSub::semilattice(&s)).unwrap() {
            assert_eq!(meet_pairs(&s, &a, &q).unwrap(), IKPair::bottom(&s));
        }
    }

    fn incomparable_traces(s: &FiniteInverseSemigroup) -> (TraceCongruence, TraceCongruence) {
        let a =
            TraceCongruence::from_element_blocks(s, &[vec![el(s, "I12"), el(s, "I1")], vec![el(s, "I2"), el(s, "I0")]])
                .unwrap();
        let b =
            TraceCongruence::from_element_blocks(s, &[vec![el(s, "I12"), el(s, "I2")], vec![el(s, "I1"), el(s, "I0")]])
                .unwrap();
        (a, b)
    }

    #[test]
    fn join_of_two_kernel_e_congruences_is_universal() {
        let s = corpus::i2();
        let (ta, tb) = incomparable_traces(&s);
        let e = FullInverseSub::semilattice(&s);
        assert_eq!(normalizer(&s, &ta), e);
        assert_eq!(normalizer(&s, &tb), e);
        let (na, nb) = (nu(&s, &ta), nu(&s, &tb));
        assert_eq!(inverse_kernel(&s, &na), e);
        assert_eq!(inverse_kernel(&s, &nb), e);
        assert!(na.join(&nb).is_universal());
        let j = join_pairs(&s, &phi(&s, &na), &phi(&s, &nb)).unwrap();
        assert_eq!(j, IKPair::top(&s));
    }

    #[test]
    fn phi_is_not_a_join_homomorphism() {
        let s = corpus::i2();
        let (ta, tb) = incomparable_traces(&s);
        let (na, nb) = (nu(&s, &ta), nu(&s, &tb));
        let (pa, pb) = (phi(&s, &na), phi(&s, &nb));
        let componentwise = IKPair::new(pa.tau.join(&s, &pb.tau), pa.t.join(&s, &pb.t));
        assert_ne!(phi(&s, &na.join(&nb)), componentwise);
    }

    #[test]
    fn theta_is_not_a_meet_homomorphism() {
        let s = corpus::i2();
        let (ta, tb) = incomparable_traces(&s);
        let whole = FullInverseSub::whole(&s);
        let pa = IKPair::new(ta, whole.clone());
        let pb = IKPair::new(tb, whole.clone());
        let lhs = theta(&s, &pa).meet(&theta(&s, &pb));
        let rhs = theta(&s, &IKPair::new(pa.tau.meet(&s, &pb.tau), whole.clone()));
        assert_eq!(rhs, chi(&s, &whole));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn theta_of_bottom_and_phi_theta_round_trip() {
        let s = corpus::i2();
        assert!(theta(&s, &IKPair::bottom(&s)).is_identity());
        for pair in candidate_pairs(&s, LATTICE_CAP).unwrap() {
            let valid = is_inverse_congruence_pair(&s, &pair).unwrap();
            let back = phi(&s, &theta(&s, &pair));
            if valid {
                assert_eq!(back, pair);
            }
        }
    }

    #[test]
    fn trace_class_sizes_on_i2() {
        let s = corpus::i2();
        let id = trace_class(&s, &TraceCongruence::identity(&s)).unwrap();
        assert_eq!(id.pairs.len(), 3);
        let top = trace_class(&s, &TraceCongruence::universal(&s)).unwrap();
        assert_eq!(top.pairs.len(), 1);
        assert_eq!(top.pairs[0].t, FullInverseSub::whole(&s));
    }

    #[test]
    fn ik_class_of_whole_and_e() {
        let s = corpus::i2();
        let whole = ik_class(&s, &FullInverseSub::whole(&s)).unwrap();
        assert!(whole[0].tau.is_identity());
        assert!(whole.iter().any(|p| p.tau.is_universal()));
        let e = ik_class(&s, &FullInverseSub::semilattice(&s)).unwrap();
        assert!(e[0].tau.is_identity());
        let maxima = maximal_pairs(&e);
        assert!(maxima.len() >= 2);
    }

    #[test]
    fn two_sided_on_i2() {
        let s = corpus::i2();
        assert!(is_two_sided(&s, &EqRelation::identity(7)));
        assert!(is_congruence_pair(&s, &IKPair::bottom(&s)).unwrap());
        assert!(p_from_pair(&s, &IKPair::bottom(&s)).unwrap().is_identity());
        let r = EqRelation::from_predicate(7, |a, b| s.green_r(a, b)).unwrap();
        assert!(!is_two_sided(&s, &r));
        let p = phi(&s, &r);
        assert!(!is_congruence_pair(&s, &p).unwrap());
        let (left, right) = left_and_right(&s, &p).unwrap();
        assert_ne!(left, right);
    }

    #[test]
    fn lattice_of_i2() {
        let s = corpus::i2();
        let l = build_lattice(&s).unwrap();
        assert_eq!(l.len(), 10);
        assert_eq!(l.nodes[l.bottom().unwrap()].pair, IKPair::bottom(&s));
        assert_eq!(l.nodes[l.top().unwrap()].pair, IKPair::top(&s));
        for i in 0..l.len() {
            for j in 0..l.len() {
                assert_eq!(l.leq[i][j], l.nodes[i].pair.leq(&l.nodes[j].pair));
            }
        }
    }

    #[test]
    fn lattice_of_semilattice_is_congruence_lattice() {
        for n in 2..=5 {
            let s = corpus::chain(n);
            assert_eq!(build_lattice(&s).unwrap().len(), semilattice_congruences(&s).len());
        }
    }

    #[test]
    fn lattice_cap_is_resource_error() {
        let s = corpus::i2();
        assert!(matches!(build_lattice_with(&s, 5), Err(Error::Resource { .. })));
    }
}
