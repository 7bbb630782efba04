//! JSON and DOT output. Elements are reported by their 1-based number.

use std::collections::BTreeMap;
use std::fmt::Write;

use icl_core::oracle::OracleReport;
use icl_core::pairs::CongruenceLattice;
use icl_core::{EqRelation, FiniteInverseSemigroup, FullInverseSub, IKPair, TraceCongruence};
use serde::Serialize;

pub type Blocks = Vec<Vec<usize>>;

pub fn blocks(rel: &EqRelation) -> Blocks {
    rel.classes()
        .into_iter()
        .map(|c| c.into_iter().map(|a| a + 1).collect())
        .collect()
}

pub fn trace_blocks(s: &FiniteInverseSemigroup, tau: &TraceCongruence) -> Blocks {
    tau.element_classes(s)
        .into_iter()
        .map(|c| c.into_iter().map(|a| a + 1).collect())
        .collect()
}

pub fn sub_members(t: &FullInverseSub) -> Vec<usize> {
    t.members().iter().map(|a| a + 1).collect()
}

fn brace(items: &[usize]) -> String {
    let parts: Vec<String> = items.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn blocks_text(b: &Blocks) -> String {
    b.iter().map(|c| brace(c)).collect::<Vec<_>>().join("")
}

#[derive(Serialize)]
pub struct ElementJson {
    pub index: usize,
    pub map: BTreeMap<String, usize>,
    pub idempotent: bool,
    pub inverse: usize,
}

pub fn elements(s: &FiniteInverseSemigroup) -> Vec<ElementJson> {
    (0..s.size())
        .map(|a| ElementJson {
            index: a + 1,
            map: s
                .perms()
                .map(|p| {
                    p[a].images()
                        .iter()
                        .enumerate()
                        .filter_map(|(i, y)| y.map(|y| ((i + 1).to_string(), y as usize + 1)))
                        .collect()
                })
                .unwrap_or_default(),
            idempotent: s.is_idempotent(a),
            inverse: s.inv(a) + 1,
        })
        .collect()
}

#[derive(Serialize)]
pub struct PairJson {
    pub tau: Blocks,
    pub sub: Vec<usize>,
    pub text: String,
}

pub fn pair(s: &FiniteInverseSemigroup, p: &IKPair) -> PairJson {
    let tau = trace_blocks(s, &p.tau);
    let sub = sub_members(&p.t);
    let text = format!("τ:{} | T:{}", blocks_text(&tau), brace(&sub));
    PairJson { tau, sub, text }
}

#[derive(Serialize)]
pub struct NodeJson {
    pub id: usize,
    #[serde(flatten)]
    pub pair: PairJson,
    pub rho: Blocks,
}

#[derive(Serialize)]
pub struct LatticeJson {
    pub size: usize,
    pub elements: Vec<ElementJson>,
    pub nodes: Vec<NodeJson>,
    pub hasse: Vec<(usize, usize)>,
    pub bottom: Option<usize>,
    pub top: Option<usize>,
}

pub fn lattice_json(s: &FiniteInverseSemigroup, l: &CongruenceLattice) -> LatticeJson {
    LatticeJson {
        size: s.size(),
        elements: elements(s),
        nodes: l
            .nodes
            .iter()
            .enumerate()
            .map(|(id, n)| NodeJson {
                id,
                pair: pair(s, &n.pair),
                rho: blocks(&n.rho),
            })
            .collect(),
        hasse: l.hasse.clone(),
        bottom: l.bottom(),
        top: l.top(),
    }
}

pub fn lattice_dot(s: &FiniteInverseSemigroup, l: &CongruenceLattice) -> String {
    let mut out = String::from("digraph lattice {\n");
    for (i, n) in l.nodes.iter().enumerate() {
        let label = pair(s, &n.pair).text.replace('"', "\\\"");
        writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
    }
    for (a, b) in &l.hasse {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
pub struct CheckJson {
    pub name: String,
    pub checked: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Serialize)]
pub struct OracleJson {
    pub semigroup: String,
    pub size: usize,
    pub strategy: String,
    pub count: usize,
    pub relations: Vec<Blocks>,
    pub valid_pairs: usize,
    pub candidate_pairs: usize,
    pub failures: usize,
    pub checks: Vec<CheckJson>,
}

pub fn oracle_json(report: &OracleReport, strategy: String, relations: &[EqRelation]) -> OracleJson {
    OracleJson {
        semigroup: report.semigroup.clone(),
        size: report.size,
        strategy,
        count: relations.len(),
        relations: relations.iter().map(blocks).collect(),
        valid_pairs: report.valid_pairs,
        candidate_pairs: report.candidate_pairs,
        failures: report.failures().len(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckJson {
                name: c.name.to_string(),
                checked: c.checked,
                passed: c.passed(),
                counterexample: c.counterexample.clone(),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_text() {
        assert_eq!(blocks_text(&vec![vec![1, 2], vec![3]]), "{1,2}{3}");
        assert_eq!(blocks(&EqRelation::from_labels(&[0, 1, 0])), vec![vec![1, 3], vec![2]]);
    }
}
