//! Brute-force enumeration of left congruences and a certification ledger
//! that compares every structural identity against it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{input, Error, Result};
use crate::pairs::{
    build_lattice, candidate_pairs, decompose, is_congruence_pair, is_icp_fixed_kernel, is_icp_via_minimals,
    is_inverse_congruence_pair, is_two_sided, join_pairs, meet_pairs, p_from_pair, pair_from_congruence, rho_from_pair,
    trace_class, LATTICE_CAP,
};
use crate::relation::{
    for_each_partition, join_closure, left_congruence_closure, semilattice_congruences, EqRelation, GenPairSet,
};
use crate::semigroup::FiniteInverseSemigroup;
use crate::trace_kernel::{
    inverse_kernel, kernel, left_normalizer, mu, normalizer, nu, right_inverse_kernel, trace, TraceCongruence,
};

/// Largest semigroup the partition strategy accepts.
pub const PARTITION_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Filter every set partition of `S` for left compatibility.
    Partitions,
    /// Join principal left congruences until stable.
    PrincipalJoins,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "partitions" => Ok(Strategy::Partitions),
            "principal-joins" => Ok(Strategy::PrincipalJoins),
            other => input(format!("unknown strategy {other:?}")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Partitions => "partitions",
            Strategy::PrincipalJoins => "principal-joins",
        })
    }
}

/// Every left congruence on `s`, sorted canonically.
pub fn brute_force_left_congruences(s: &FiniteInverseSemigroup, strategy: Strategy) -> Result<Vec<EqRelation>> {
    let n = s.size();
    let mut out = match strategy {
        Strategy::Partitions => {
            if n > PARTITION_LIMIT {
                return Err(Error::Resource {
                    what: "elements for the partition strategy",
                    count: n,
                    cap: PARTITION_LIMIT,
                });
            }
            let mut found = Vec::new();
            for_each_partition(n, |labels| {
                let rel = EqRelation::from_labels(labels);
                if rel.is_left_compatible(s) {
                    found.push(rel);
                }
            });
            found
        }
        Strategy::PrincipalJoins => {
            let principals: Vec<EqRelation> = (0..n)
                .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
                .map(|(a, b)| left_congruence_closure(s, &GenPairSet::from_pairs([(a, b)])))
                .collect();
            join_closure(EqRelation::identity(n), &principals)
        }
    };
    out.sort();
    Ok(out)
}

/// One line of the certification ledger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub semigroup: String,
    pub size: usize,
    pub count: usize,
    pub relations: Vec<EqRelation>,
    pub valid_pairs: usize,
    pub candidate_pairs: usize,
    pub checks: Vec<Check>,
}

impl OracleReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }
}

#[derive(Default)]
struct Ledger {
    checks: Vec<Check>,
}

impl Ledger {
    fn run(&mut self, name: &'static str, items: impl IntoIterator<Item = std::result::Result<(), String>>) {
        let mut checked = 0;
        let mut counterexample = None;
        for item in items {
            checked += 1;
            if let Err(e) = item {
                counterexample = Some(e);
                break;
            }
        }
        self.checks.push(Check {
            name,
            checked,
            counterexample,
        });
    }

    fn fail(&mut self, name: &'static str, err: Error) {
        self.checks.push(Check {
            name,
            checked: 0,
            counterexample: Some(err.to_string()),
        });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clifford(s: &FiniteInverseSemigroup) -> bool {
    s.idempotents()
        .iter()
        .all(|&e| (0..s.size()).all(|a| s.mul(e, a) == s.mul(a, e)))
}

/// Runs the whole ledger on `s`. Failures are recorded, never raised.
pub fn certify(s: &FiniteInverseSemigroup, name: &str) -> OracleReport {
    let mut ledger = Ledger::default();
    let n = s.size();

    let primary = if n <= PARTITION_LIMIT {
        Strategy::Partitions
    } else {
        Strategy::PrincipalJoins
    };
    let relations = match brute_force_left_congruences(s, primary) {
        Ok(r) => r,
        Err(e) => {
            ledger.fail("brute force enumeration", e);
            Vec::new()
        }
    };
    if n <= PARTITION_LIMIT {
        let other = brute_force_left_congruences(s, Strategy::PrincipalJoins);
        ledger.run(
            "strategies agree",
            [ensure(other.as_ref().ok() == Some(&relations), || {
                "partition and principal-join enumerations differ".to_string()
            })],
        );
    }

    let lattice = match build_lattice(s) {
        Ok(l) => l,
        Err(e) => {
            ledger.fail("lattice assembly", e);
            return OracleReport {
                semigroup: name.to_string(),
                size: n,
                count: relations.len(),
                relations,
                valid_pairs: 0,
                candidate_pairs: 0,
                checks: ledger.checks,
            };
        }
    };
    let candidates = candidate_pairs(s, LATTICE_CAP).unwrap_or_default();
    let brute: BTreeSet<EqRelation> = relations.iter().cloned().collect();

    ledger.run(
        "valid pairs biject with left congruences",
        [ensure(
            lattice.relations() == brute && lattice.len() == brute.len(),
            || {
                format!(
                    "{} reconstructed relations vs {} enumerated",
                    lattice.len(),
                    brute.len()
                )
            },
        )],
    );

    ledger.run(
        "pair -> relation -> pair",
        lattice.nodes.iter().map(|node| {
            let back = pair_from_congruence(s, &node.rho).map_err(|e| e.to_string())?;
            ensure(back == node.pair, || format!("{:?} came back as {:?}", node.pair, back))
        }),
    );
    ledger.run(
        "relation -> pair -> relation",
        relations.iter().map(|rho| {
            let pair = pair_from_congruence(s, rho).map_err(|e| e.to_string())?;
            let back = rho_from_pair(s, &pair).map_err(|e| e.to_string())?;
            ensure(&back == rho, || format!("{rho:?} came back as {back:?}"))
        }),
    );

    ledger.run(
        "order agrees with pair order",
        lattice.nodes.iter().flat_map(|a| {
            lattice.nodes.iter().map(move |b| {
                let by_pair = a.pair.leq(&b.pair);
                let by_data =
                    trace(s, &a.rho).is_subset(&trace(s, &b.rho)) && kernel(s, &a.rho).is_subset(&kernel(s, &b.rho));
                let by_rel = a.rho.is_subset(&b.rho);
                ensure(by_rel == by_pair && by_rel == by_data, || {
                    format!("{:?} vs {:?}", a.rho, b.rho)
                })
            })
        }),
    );

    ledger.run(
        "meet and join of pairs",
        lattice.nodes.iter().flat_map(|a| {
            lattice.nodes.iter().map(move |b| {
                let m = meet_pairs(s, &a.pair, &b.pair).map_err(|e| e.to_string())?;
                let j = join_pairs(s, &a.pair, &b.pair).map_err(|e| e.to_string())?;
                let rm = rho_from_pair(s, &m).map_err(|e| e.to_string())?;
                let rj = rho_from_pair(s, &j).map_err(|e| e.to_string())?;
                ensure(rm == a.rho.meet(&b.rho), || {
                    format!("meet of {:?} and {:?}", a.rho, b.rho)
                })?;
                ensure(rj == a.rho.join(&b.rho), || {
                    format!("join of {:?} and {:?}", a.rho, b.rho)
                })
            })
        }),
    );

    ledger.run(
        "decomposition into nu and chi",
        relations.iter().map(|rho| {
            let d = decompose(s, rho);
            ensure(&d.nu.join(&d.chi) == rho, || format!("{rho:?}"))?;
            for w in &d.witnesses {
                let fa = s.mul(w.f, w.a);
                ensure(d.chi.related(w.f, fa) && d.nu.related(fa, w.a), || {
                    format!("witness for {} in {rho:?}", s.label(w.a))
                })?;
            }
            Ok(())
        }),
    );

    ledger.run(
        "extremes with a given trace",
        relations.iter().map(|rho| {
            let tau = trace(s, rho);
            ensure(nu(s, &tau).is_subset(rho) && rho.is_subset(&mu(s, &tau)), || {
                format!("{rho:?}")
            })
        }),
    );

    ledger.run(
        "inverse kernel identities",
        relations.iter().map(|rho| {
            let tau = trace(s, rho);
            let k = kernel(s, rho);
            let ink = inverse_kernel(s, rho);
            let r = EqRelation::from_labels(&(0..n).map(|a| s.left_unit(a)).collect::<Vec<_>>());
            let sym: Vec<usize> = k.members().iter().filter(|&a| k.contains(s.inv(a))).collect();
            let n_tau = normalizer(s, &tau);
            let via_n: Vec<usize> = k.members().iter().filter(|&a| n_tau.contains(a)).collect();
            let ink_v = ink.members().to_vec();
            ensure(ink_v == sym && ink_v == via_n, || format!("{rho:?}"))?;
            ensure(kernel(s, &rho.meet(&r)).members() == ink.members(), || {
                format!("{rho:?}")
            })?;
            let nl = left_normalizer(s, &tau);
            ensure(k.members().is_subset(&nl), || format!("kernel outside N_L for {rho:?}"))?;
            ensure(inverse_kernel(s, &mu(s, &tau)) == n_tau, || {
                format!("ink(mu) for {rho:?}")
            })
        }),
    );

    ledger.run(
        "left-right duality",
        relations.iter().map(|rho| {
            let rev = rho.reverse_inverse(s);
            ensure(
                rev.is_right_compatible(s)
                    && trace(s, &rev) == trace(s, rho)
                    && right_inverse_kernel(s, &rev) == inverse_kernel(s, rho),
                || format!("{rho:?}"),
            )
        }),
    );

    ledger.run(
        "two-sided criterion",
        lattice.nodes.iter().map(|node| {
            let two = is_two_sided(s, &node.rho);
            let cp = is_congruence_pair(s, &node.pair).map_err(|e| e.to_string())?;
            let lr = node.rho == node.rho.reverse_inverse(s);
            ensure(two == cp && two == lr, || {
                format!("{:?}: two-sided {two}, pair {cp}, left=right {lr}", node.rho)
            })?;
            if two {
                let p = p_from_pair(s, &node.pair).map_err(|e| e.to_string())?;
                ensure(p == node.rho, || format!("P formula for {:?}", node.rho))?;
                ensure(kernel(s, &node.rho).members() == node.pair.t.members(), || {
                    format!("kernel of two-sided {:?}", node.rho)
                })?;
            }
            Ok(())
        }),
    );

    let traces: Vec<TraceCongruence> = semilattice_congruences(s)
        .into_iter()
        .map(|r| TraceCongruence::new(s, r).expect("enumerated traces are congruences"))
        .collect();
    ledger.run(
        "trace classes",
        traces.iter().map(|tau| {
            let class = trace_class(s, tau).map_err(|e| e.to_string())?;
            let members: Vec<&EqRelation> = relations.iter().filter(|r| &trace(s, r) == tau).collect();
            ensure(members.len() == class.pairs.len(), || format!("size for {tau:?}"))?;
            let (lo, hi) = (class.min(s), class.max(s));
            ensure(members.iter().all(|r| lo.is_subset(r) && r.is_subset(&hi)), || {
                format!("bounds for {tau:?}")
            })?;
            ensure(members.contains(&&lo) && members.contains(&&hi), || {
                format!("bounds for {tau:?} are not in the class")
            })
        }),
    );

    ledger.run(
        "pair predicates agree",
        candidates.iter().map(|p| {
            let direct = is_inverse_congruence_pair(s, p).map_err(|e| e.to_string())?;
            let fixed = is_icp_fixed_kernel(s, p).map_err(|e| e.to_string())?;
            ensure(direct == fixed, || format!("fixed-kernel form on {p:?}"))?;
            if p.t.is_subset(&normalizer(s, &p.tau)) {
                let minimal = is_icp_via_minimals(s, p).map_err(|e| e.to_string())?;
                ensure(direct == minimal, || format!("minimal-element form on {p:?}"))?;
            }
            Ok(())
        }),
    );

    if clifford(s) {
        ledger.run(
            "kernel equals inverse kernel",
            relations.iter().map(|rho| {
                ensure(kernel(s, rho).members() == inverse_kernel(s, rho).members(), || {
                    format!("{rho:?}")
                })
            }),
        );
    }

    if s.idempotents().len() == n {
        let semi = semilattice_congruences(s);
        ledger.run(
            "semilattice: left congruences are congruences on E",
            [ensure(semi == relations, || {
                format!("{} vs {}", semi.len(), relations.len())
            })],
        );
    }

    let valid_pairs = lattice.len();
    OracleReport {
        semigroup: name.to_string(),
        size: n,
        count: relations.len(),
        relations,
        valid_pairs,
        candidate_pairs: candidates.len(),
        checks: ledger.checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn chain2_has_two_left_congruences() {
        let s = corpus::chain(2);
        assert_eq!(brute_force_left_congruences(&s, Strategy::Partitions).unwrap().len(), 2);
    }

    #[test]
    fn i2_has_ten_left_congruences() {
        let s = corpus::i2();
        for st in [Strategy::Partitions, Strategy::PrincipalJoins] {
            assert_eq!(brute_force_left_congruences(&s, st).unwrap().len(), 10);
        }
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("partitions".parse::<Strategy>().unwrap(), Strategy::Partitions);
        assert_eq!("principal-joins".parse::<Strategy>().unwrap(), Strategy::PrincipalJoins);
        assert!("bogus".parse::<Strategy>().is_err());
    }

    #[test]
    fn partition_strategy_is_bounded() {
        let big = FiniteInverseSemigroup::chain(13).unwrap();
        assert!(matches!(
            brute_force_left_congruences(&big, Strategy::Partitions),
            Err(Error::Resource { .. })
        ));
        assert_eq!(
            brute_force_left_congruences(&big, Strategy::PrincipalJoins)
                .unwrap()
                .len(),
            1 << 12
        );
    }

    #[test]
    fn certify_corpus() {
        for (name, s) in corpus::corpus() {
            let report = certify(&s, name);
            assert!(report.all_passed(), "{name}: {:?}", report.failures());
            assert_eq!(report.count, report.valid_pairs, "{name}");
        }
    }

    #[test]
    fn certify_clifford_includes_kernel_check() {
        let report = certify(&corpus::clifford6(), "clifford6");
        assert!(report.checks.iter().any(|c| c.name == "kernel equals inverse kernel"));
    }

    #[test]
    fn brandt_kernel_need_not_be_inverse() {
        let s = corpus::beta_monogenic();
        let el = |n| corpus::i2_element(&s, n);
        let rho = EqRelation::from_blocks(5, &[vec![el("b'"), el("I1"), el("I0")]]).unwrap();
        assert!(rho.is_left_compatible(&s));
        let k = kernel(&s, &rho);
        assert!(k.contains(el("b'")) && !k.contains(el("b")));
        assert_ne!(k.members(), inverse_kernel(&s, &rho).members());
        let b2 = corpus::brandt2();
        let bad = brute_force_left_congruences(&b2, Strategy::Partitions)
            .unwrap()
            .into_iter()
            .filter(|r| kernel(&b2, r).members() != inverse_kernel(&b2, r).members())
            .count();
        assert!(bad > 0);
    }
}
