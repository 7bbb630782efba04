//! Small reference semigroups used by the oracle, the tests and the CLI.

use crate::perm::PartialPerm;
use crate::semigroup::{FiniteInverseSemigroup, DEFAULT_CAP};

fn pp(degree: usize, pairs: &[(usize, usize)]) -> PartialPerm {
    PartialPerm::from_pairs(degree, pairs).expect("corpus maps are injective")
}

fn close(gens: &[PartialPerm]) -> FiniteInverseSemigroup {
    FiniteInverseSemigroup::closure(gens, DEFAULT_CAP).expect("corpus members are small")
}

/// The swap `(1 2)` on two points.
pub fn alpha() -> PartialPerm {
    pp(2, &[(1, 2), (2, 1)])
}

/// The partial map `1 ↦ 2` on two points.
pub fn beta() -> PartialPerm {
    pp(2, &[(1, 2)])
}

/// The symmetric inverse monoid on two points.
pub fn i2() -> FiniteInverseSemigroup {
    close(&[alpha(), beta()])
}

/// The semilattice of partial identities on two points.
pub fn e_i2() -> FiniteInverseSemigroup {
    close(&[
        PartialPerm::identity(2),
        PartialPerm::partial_identity(2, &[0]),
        PartialPerm::partial_identity(2, &[1]),
    ])
}

/// The inverse subsemigroup of `I_2` generated by `1 ↦ 2`.
pub fn beta_monogenic() -> FiniteInverseSemigroup {
    close(&[beta()])
}

pub fn brandt2() -> FiniteInverseSemigroup {
    FiniteInverseSemigroup::brandt(2).expect("B_2 is valid")
}

/// Chain semilattice with `n` elements.
pub fn chain(n: usize) -> FiniteInverseSemigroup {
    FiniteInverseSemigroup::chain(n).expect("chain length is positive")
}

/// Two copies of the cyclic group of order 3 over a 2-element chain,
/// realized on six points.
pub fn clifford6() -> FiniteInverseSemigroup {
    let g = pp(6, &[(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)]);
    let e = PartialPerm::partial_identity(6, &[0, 1, 2]);
    close(&[g, e])
}

/// Every corpus member with a short name.
pub fn corpus() -> Vec<(&'static str, FiniteInverseSemigroup)> {
    vec![
        ("chain2", chain(2)),
        ("chain3", chain(3)),
        ("chain4", chain(4)),
        ("chain5", chain(5)),
        ("E(I2)", e_i2()),
        ("I2", i2()),
        ("<b>", beta_monogenic()),
        ("B2", brandt2()),
        ("clifford6", clifford6()),
    ]
}

/// Looks up a corpus member by its short name.
pub fn by_name(name: &str) -> Option<FiniteInverseSemigroup> {
    corpus().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s)
}

const I2_NAMES: [(&str, &[(usize, usize)]); 7] = [
    ("I12", &[(1, 1), (2, 2)]),
    ("I1", &[(1, 1)]),
    ("I2", &[(2, 2)]),
    ("I0", &[]),
    ("a", &[(1, 2), (2, 1)]),
    ("b", &[(1, 2)]),
    ("b'", &[(2, 1)]),
];

/// Index of a named element of `I_2` (or of a subsemigroup of it):
/// `I12`, `I1`, `I2`, `I0` for the partial identities, `a` for the swap,
/// `b` for `1 ↦ 2` and `b'` for its inverse.
pub fn i2_element(s: &FiniteInverseSemigroup, name: &str) -> usize {
    let (_, pairs) = I2_NAMES
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("unknown I_2 element {name}"));
    s.find_perm(&pp(2, pairs))
        .unwrap_or_else(|| panic!("{name} is not in this semigroup"))
}

/// Inverse of `i2_element`.
pub fn i2_name(s: &FiniteInverseSemigroup, a: usize) -> &'static str {
    let p = &s.perms().expect("permutation semigroup")[a];
    I2_NAMES
        .iter()
        .find(|(_, pairs)| pp(2, pairs) == *p)
        .map(|(n, _)| *n)
        .expect("element of I_2")
}
