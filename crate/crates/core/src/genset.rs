//! Generating sets of left congruences: normalization, traces of joins,
//! trivial classes and finite generation of the universal congruence.

use crate::elemset::ElemSet;
use crate::relation::{left_congruence_closure, semilattice_closure, EqRelation, GenPairSet};
use crate::semigroup::{FiniteInverseSemigroup, FullInverseSub};
use crate::trace_kernel::{chi, nu, trace, TraceCongruence};

/// A generating set in which every pair is either two idempotents or an
/// element together with its range idempotent `(a, aa⁻¹)`. Both lists are
/// symmetric.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalizedGenSet {
    pub idempotent_pairs: Vec<(usize, usize)>,
    pub r_pairs: Vec<(usize, usize)>,
}

impl NormalizedGenSet {
    pub fn pairs(&self) -> GenPairSet {
        GenPairSet::from_pairs(self.idempotent_pairs.iter().chain(&self.r_pairs).copied())
    }

    pub fn len(&self) -> usize {
        self.idempotent_pairs.len() + self.r_pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Replaces each `(a,b)` by `(a⁻¹b, a⁻¹bb⁻¹a)`, `(a⁻¹a, a⁻¹bb⁻¹a)` and
/// `(b⁻¹aa⁻¹b, b⁻¹b)`. The generated left congruence is unchanged.
pub fn normalize_generating_set(s: &FiniteInverseSemigroup, h: &GenPairSet) -> NormalizedGenSet {
    let mut idem = std::collections::BTreeSet::new();
    let mut rp = std::collections::BTreeSet::new();
    for (a, b) in h.iter() {
        let ab = s.mul(s.inv(a), b);
        let ba = s.inv(ab);
        let candidates = [
            (ab, s.left_unit(ab)),
            (s.right_unit(a), s.left_unit(ab)),
            (s.left_unit(ba), s.right_unit(b)),
        ];
        for (x, y) in candidates {
            if x == y {
                continue;
            }
            if s.is_idempotent(x) && s.is_idempotent(y) {
                idem.insert((x, y));
                idem.insert((y, x));
            } else {
                rp.insert((x, y));
                rp.insert((y, x));
            }
        }
    }
    NormalizedGenSet {
        idempotent_pairs: idem.into_iter().collect(),
        r_pairs: rp.into_iter().collect(),
    }
}

/// The congruence on `E` generated by `τ` and its conjugates
/// `(aea⁻¹, afa⁻¹)` for `a ∈ |Y ∪ E|`: the trace of `χ_{|Y ∪ E|} ∨ ν_τ`.
pub fn trace_of_join_generators(s: &FiniteInverseSemigroup, tau: &TraceCongruence, y: &[usize]) -> TraceCongruence {
    let pos = |e: usize| s.idem_pos(e).expect("idempotent");
    let t = FullInverseSub::generated(s, y.iter().copied());
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (e, f) in tau.spanning_pairs(s) {
        pairs.push((pos(e), pos(f)));
        for a in t.members().iter() {
            pairs.push((pos(s.conj(a, e)), pos(s.conj(a, f))));
        }
    }
    TraceCongruence::new(s, semilattice_closure(s, pairs)).expect("closure is a congruence")
}

/// `trace(χ_{|Y ∪ E|} ∨ ν_τ)` computed directly.
pub fn trace_of_join(s: &FiniteInverseSemigroup, tau: &TraceCongruence, y: &[usize]) -> TraceCongruence {
    let t = FullInverseSub::generated(s, y.iter().copied());
    trace(s, &chi(s, &t).join(&nu(s, tau)))
}

pub fn has_trivial_class(rho: &EqRelation, a: usize) -> bool {
    rho.class_members(a).len() == 1
}

/// Triviality of the class of an idempotent read off the two parts of the
/// decomposition: trivial in `ρ` iff trivial in both `ν_{trace ρ}` and
/// `ρ ∩ R`.
pub fn trivial_via_components(s: &FiniteInverseSemigroup, rho: &EqRelation, e: usize) -> bool {
    let nu_part = nu(s, &trace(s, rho));
    let r = EqRelation::from_labels(&(0..s.size()).map(|a| s.left_unit(a)).collect::<Vec<_>>());
    let chi_part = rho.meet(&r);
    has_trivial_class(&nu_part, e) && has_trivial_class(&chi_part, e)
}

/// A small set `X ⊆ T ∖ E` with `T = |X ∪ E|`, chosen greedily.
pub fn generating_elements(s: &FiniteInverseSemigroup, t: &FullInverseSub) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut current = FullInverseSub::semilattice(s);
    for a in t.members().iter() {
        if !current.contains(a) {
            chosen.push(a);
            current = FullInverseSub::generated(s, chosen.iter().copied());
        }
    }
    chosen
}

/// `χ_T` recovered from the pairs `(x, xx⁻¹)` for a generating set of `T`.
#[derive(Clone, Debug)]
pub struct AlmostFinitelyGenerated {
    pub t: FullInverseSub,
    pub generators: Vec<usize>,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct OmegaFgReport {
    pub maximal_idempotents: Vec<usize>,
    pub covering_layer: Vec<usize>,
    pub all_below_maximal: bool,
    /// `X ⊆ E` and `Y ⊆ S` with `ω = χ_{|Y ∪ E|} ∨ ν_{⟨X × X⟩}`.
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub found_in_search: bool,
    pub almost_fg: Vec<AlmostFinitelyGenerated>,
}

/// Bounds on the witness search.
#[derive(Clone, Copy, Debug)]
pub struct OmegaFgBounds {
    /// Largest pool of idempotents from which `X` is drawn.
    pub x_pool: usize,
    /// Largest `|Y|`.
    pub y_size: usize,
    /// Largest pool of non-idempotents from which `Y` is drawn.
    pub y_pool: usize,
}

impl Default for OmegaFgBounds {
    fn default() -> Self {
        OmegaFgBounds {
            x_pool: 10,
            y_size: 3,
            y_pool: 16,
        }
    }
}

fn subsets_up_to(pool: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![(Vec::new(), 0usize)];
    for _ in 0..max {
        let mut next = Vec::new();
        for (set, from) in frontier {
            for (i, &x) in pool.iter().enumerate().skip(from) {
                let mut s: Vec<usize> = set.clone();
                s.push(x);
                out.push(s.clone());
                next.push((s, i + 1));
            }
        }
        frontier = next;
    }
    out
}

fn omega_from(s: &FiniteInverseSemigroup, x: &[usize], y: &[usize]) -> bool {
    let pos = |e: usize| s.idem_pos(e).expect("idempotent");
    let pairs: Vec<(usize, usize)> = x
        .iter()
        .flat_map(|&e| x.iter().map(move |&f| (pos(e), pos(f))))
        .collect();
    let tau = TraceCongruence::new(s, semilattice_closure(s, pairs)).expect("closure is a congruence");
    let t = FullInverseSub::generated(s, y.iter().copied());
    chi(s, &t).join(&nu(s, &tau)).is_universal()
}

pub fn omega_fg_analysis(s: &FiniteInverseSemigroup) -> OmegaFgReport {
    omega_fg_analysis_with(s, OmegaFgBounds::default())
}

pub fn omega_fg_analysis_with(s: &FiniteInverseSemigroup, bounds: OmegaFgBounds) -> OmegaFgReport {
    let idem = s.idempotents();
    let maximal: Vec<usize> = idem
        .iter()
        .copied()
        .filter(|&e| !idem.iter().any(|&f| f != e && s.natural_leq(e, f)))
        .collect();
    let below_some_max = |e: usize| maximal.iter().any(|&m| s.natural_leq(e, m));
    let all_below_maximal = idem.iter().all(|&e| below_some_max(e));
    let covering_layer: Vec<usize> = idem
        .iter()
        .copied()
        .filter(|&e| !maximal.contains(&e))
        .filter(|&e| {
            maximal.iter().any(|&m| {
                s.natural_leq(e, m)
                    && !idem
                        .iter()
                        .any(|&g| g != e && g != m && s.natural_leq(e, g) && s.natural_leq(g, m))
            })
        })
        .collect();

    let mut x_pool: Vec<usize> = maximal.iter().chain(&covering_layer).copied().collect();
    x_pool.truncate(bounds.x_pool);
    let y_pool: Vec<usize> = (0..s.size())
        .filter(|&a| !s.is_idempotent(a))
        .take(bounds.y_pool)
        .collect();

    let mut xs = subsets_up_to(&x_pool, x_pool.len());
    xs.push(idem.to_vec());
    let ys = subsets_up_to(&y_pool, bounds.y_size);
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    'search: for total in 0..=(idem.len() + bounds.y_size) {
        for x in &xs {
            if x.len() > total {
                continue;
            }
            for y in ys.iter().filter(|y| y.len() == total - x.len()) {
                if omega_from(s, x, y) {
                    best = Some((x.clone(), y.clone()));
                    break 'search;
                }
            }
        }
    }
    let found_in_search = best.is_some();
    let (x, y) = best.unwrap_or_else(|| {
        let y: Vec<usize> = (0..s.size()).filter(|&a| !s.is_idempotent(a)).collect();
        (idem.to_vec(), y)
    });

    let almost_fg = s
        .full_inverse_subsemigroups(usize::MAX)
        .unwrap_or_default()
        .into_iter()
        .map(|t| {
            let generators = generating_elements(s, &t);
            let gens = GenPairSet::from_pairs(generators.iter().map(|&a| (a, s.left_unit(a))));
            let holds = left_congruence_closure(s, &gens) == chi(s, &t);
            AlmostFinitelyGenerated { t, generators, holds }
        })
        .collect();

    OmegaFgReport {
        maximal_idempotents: maximal,
        covering_layer,
        all_below_maximal,
        x,
        y,
        found_in_search,
        almost_fg,
    }
}

/// Finite generating pairs for a left congruence: the trace pairs for its
/// least part with the same trace, and `(x, xx⁻¹)` over its inverse kernel.
pub fn finite_generators(s: &FiniteInverseSemigroup, rho: &EqRelation) -> (GenPairSet, GenPairSet) {
    let tau = trace(s, rho);
    let nu_gens = GenPairSet::from_pairs(tau.spanning_pairs(s));
    let ink = crate::trace_kernel::inverse_kernel(s, rho);
    let chi_gens = GenPairSet::from_pairs(generating_elements(s, &ink).into_iter().map(|a| (a, s.left_unit(a))));
    (nu_gens, chi_gens)
}

/// Elements of `S` as a set, for callers building `Y`.
pub fn element_set(s: &FiniteInverseSemigroup, items: &[usize]) -> ElemSet {
    ElemSet::from_indices(s.size(), items.iter().copied())
}
