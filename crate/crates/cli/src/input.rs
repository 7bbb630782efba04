//! Semigroup spec files and the textual syntax for partitions, element
//! lists and pairs. Points and element numbers are 1-based.

use std::collections::BTreeMap;
use std::path::Path;

use icl_core::{
    ElemSet, EqRelation, Error, FiniteInverseSemigroup, FullInverseSub, IKPair, PartialPerm, Result, TraceCongruence,
};
use serde::Deserialize;

pub const DEFAULT_MAX_ELEMENTS: usize = 5000;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupSpec {
    pub degree: usize,
    pub generators: Vec<BTreeMap<String, usize>>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

impl SemigroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| bad(format!("spec: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn generators(&self) -> Result<Vec<PartialPerm>> {
        if self.degree == 0 {
            return Err(bad("degree must be positive"));
        }
        self.generators
            .iter()
            .map(|g| {
                let pairs = g
                    .iter()
                    .map(|(k, &v)| {
                        k.trim()
                            .parse::<usize>()
                            .map(|x| (x, v))
                            .map_err(|_| bad(format!("point {k:?} is not a positive integer")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                PartialPerm::from_pairs(self.degree, &pairs)
            })
            .collect()
    }

    pub fn build(&self, cap: usize) -> Result<FiniteInverseSemigroup> {
        FiniteInverseSemigroup::closure(&self.generators()?, cap)
    }
}

pub fn max_elements() -> Result<usize> {
    match std::env::var("ICL_MAX_ELEMENTS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| bad(format!("ICL_MAX_ELEMENTS must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_ELEMENTS),
    }
}

pub fn load_semigroup(path: &Path) -> Result<FiniteInverseSemigroup> {
    SemigroupSpec::load(path)?.build(max_elements()?)
}

fn element(s: &FiniteInverseSemigroup, token: &str) -> Result<usize> {
    let n: usize = token
        .trim()
        .parse()
        .map_err(|_| bad(format!("element {token:?} is not a number")))?;
    if n == 0 || n > s.size() {
        return Err(bad(format!("element {n} outside 1..{}", s.size())));
    }
    Ok(n - 1)
}

/// `1,2|3,4`: blocks of 1-based element numbers. Unlisted elements are
/// singletons; `""` is the identity.
pub fn parse_blocks(s: &FiniteInverseSemigroup, text: &str) -> Result<Vec<Vec<usize>>> {
    text.split('|')
        .map(str::trim)
        .filter(|b| !b.is_empty())
        .map(|b| b.split(',').map(|t| element(s, t)).collect())
        .collect()
}

pub fn parse_relation(s: &FiniteInverseSemigroup, text: &str) -> Result<EqRelation> {
    EqRelation::from_blocks(s.size(), &parse_blocks(s, text)?)
}

/// A trace: blocks of idempotents, `iota` or `omega`.
pub fn parse_trace(s: &FiniteInverseSemigroup, text: &str) -> Result<TraceCongruence> {
    match text.trim() {
        "iota" => Ok(TraceCongruence::identity(s)),
        "omega" => Ok(TraceCongruence::universal(s)),
        t => TraceCongruence::from_element_blocks(s, &parse_blocks(s, t)?),
    }
}

/// `E`, `S`, or a list of elements; idempotents are always included.
pub fn parse_sub(s: &FiniteInverseSemigroup, text: &str) -> Result<FullInverseSub> {
    let mut members = s.idempotent_set();
    match text.trim() {
        "E" => {}
        "S" => members = ElemSet::full(s.size()),
        t => {
            for tok in t.split(',').filter(|x| !x.trim().is_empty()) {
                members.insert(element(s, tok)?);
            }
        }
    }
    FullInverseSub::new(s, members)
}

/// `<trace>;<sub>`, e.g. `1,2;E`.
pub fn parse_pair(s: &FiniteInverseSemigroup, text: &str) -> Result<IKPair> {
    let (tau, sub) = text
        .split_once(';')
        .ok_or_else(|| bad(format!("pair {text:?} must look like <trace>;<sub>")))?;
    Ok(IKPair::new(parse_trace(s, tau)?, parse_sub(s, sub)?))
}
