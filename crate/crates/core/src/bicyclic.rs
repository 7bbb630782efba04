//! Left congruences on the bicyclic monoid, handled symbolically.
//!
//! Idempotents of `B` are the pairs `(s,s)`, ordered as a chain with `(0,0)`
//! on top. A congruence on `E(B)` is a partition of `ℕ⁰` into intervals,
//! described here by a finite list of leading class sizes followed by either
//! one infinite class or a repeating pattern of class sizes.

use std::fmt;
use std::str::FromStr;

use crate::error::{input, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BicyclicElement {
    pub a: u64,
    pub b: u64,
}

impl BicyclicElement {
    pub const IDENTITY: BicyclicElement = BicyclicElement { a: 0, b: 0 };

    pub fn new(a: u64, b: u64) -> Self {
        BicyclicElement { a, b }
    }

    pub fn idempotent(s: u64) -> Self {
        BicyclicElement { a: s, b: s }
    }

    pub fn is_idempotent(self) -> bool {
        self.a == self.b
    }
}

impl fmt::Display for BicyclicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// `(a,b)(c,d) = (a−b+t, d−c+t)` with `t = max(b,c)`.
pub fn bmul(x: BicyclicElement, y: BicyclicElement) -> BicyclicElement {
    let t = x.b.max(y.a);
    BicyclicElement {
        a: x.a + (t - x.b),
        b: y.b + (t - y.a),
    }
}

pub fn binv(x: BicyclicElement) -> BicyclicElement {
    BicyclicElement { a: x.b, b: x.a }
}

/// The index of `x·(s,s)·x⁻¹`, without building the elements.
#[inline]
pub fn conj_index(x: BicyclicElement, s: u64) -> u64 {
    s.max(x.b) - x.b + x.a
}

/// A full inverse subsemigroup of `B`: either `E(B)` or
/// `T_{k,d} = E(B) ∪ {(x,y) : x,y ≥ k, d | x−y}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TkdSub {
    E,
    T { k: u64, d: u64 },
}

impl TkdSub {
    pub fn tkd(k: u64, d: u64) -> Result<Self> {
        if d == 0 {
            return input("period d must be positive");
        }
        Ok(TkdSub::T { k, d })
    }

    /// The whole monoid, `T_{0,1}`.
    pub fn whole() -> Self {
        TkdSub::T { k: 0, d: 1 }
    }
}

impl fmt::Display for TkdSub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TkdSub::E => f.write_str("E"),
            TkdSub::T { k, d } => write!(f, "k={k},d={d}"),
        }
    }
}

impl FromStr for TkdSub {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "E" {
            return Ok(TkdSub::E);
        }
        let (mut k, mut d) = (None, None);
        for part in text.split(',') {
            let Some((key, value)) = part.split_once('=') else {
                return input(format!("expected key=value in {part:?}"));
            };
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("not a non-negative integer: {value:?}")))?;
            match key.trim() {
                "k" => k = Some(value),
                "d" => d = Some(value),
                other => return input(format!("unknown key {other:?}")),
            }
        }
        match (k, d) {
            (Some(k), Some(d)) => TkdSub::tkd(k, d),
            _ => input("subsemigroup needs both k and d (or E)"),
        }
    }
}

pub fn tkd_contains(sub: TkdSub, x: BicyclicElement) -> bool {
    if x.is_idempotent() {
        return true;
    }
    match sub {
        TkdSub::E => false,
        TkdSub::T { k, d } => x.a >= k && x.b >= k && x.a.abs_diff(x.b).is_multiple_of(d),
    }
}

/// Containment: `E(B)` is below everything, `T_{k,d} ⊆ T_{j,c}` iff
/// `j ≤ k` and `c | d`.
pub fn tkd_leq(s1: TkdSub, s2: TkdSub) -> bool {
    match (s1, s2) {
        (TkdSub::E, _) => true,
        (TkdSub::T { .. }, TkdSub::E) => false,
        (TkdSub::T { k, d }, TkdSub::T { k: j, d: c }) => j <= k && d % c == 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    /// Everything from the end of the prefix on is one class.
    Infinite,
    /// The class sizes repeat this pattern forever.
    Periodic(Vec<u64>),
}

/// A congruence on `E(B)`: leading class sizes, then the tail.
///
/// Periodic tails are kept minimal: the pattern is primitive and the prefix
/// never ends with the pattern's last size (that class is folded into the
/// pattern by rotation).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BicyclicTrace {
    prefix: Vec<u64>,
    tail: Tail,
}

fn primitive_root(pattern: &[u64]) -> Vec<u64> {
    let n = pattern.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (p..n).all(|i| pattern[i] == pattern[i - p]) {
            return pattern[..p].to_vec();
        }
    }
    pattern.to_vec()
}

impl BicyclicTrace {
    pub fn new(prefix: Vec<u64>, tail: Tail) -> Result<Self> {
        if prefix.contains(&0) {
            return input("class sizes must be positive");
        }
        let tail = match tail {
            Tail::Infinite => Tail::Infinite,
            Tail::Periodic(p) => {
                if p.is_empty() {
                    return input("periodic pattern must be nonempty");
                }
                if p.contains(&0) {
                    return input("class sizes must be positive");
                }
                Tail::Periodic(primitive_root(&p))
            }
        };
        let mut t = BicyclicTrace { prefix, tail };
        if let Tail::Periodic(p) = &mut t.tail {
            while t.prefix.last().is_some() && t.prefix.last() == p.last() {
                t.prefix.pop();
                p.rotate_right(1);
            }
        }
        Ok(t)
    }

    /// The identity congruence: every class a singleton.
    pub fn identity() -> Self {
        BicyclicTrace {
            prefix: Vec::new(),
            tail: Tail::Periodic(vec![1]),
        }
    }

    /// The universal congruence.
    pub fn universal() -> Self {
        BicyclicTrace {
            prefix: Vec::new(),
            tail: Tail::Infinite,
        }
    }

    /// Sizes of the leading classes.
    pub fn class_sizes(&self) -> &[u64] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// Largest member of each leading class: `c_u = −1 + Σ_{i≤u} m_i`.
    pub fn class_maxima(&self) -> Vec<u64> {
        self.prefix
            .iter()
            .scan(0u64, |acc, &m| {
                *acc += m;
                Some(*acc - 1)
            })
            .collect()
    }

    /// Where the tail begins: the start of the infinite class, or the point
    /// after which the trace is periodic.
    pub fn threshold(&self) -> u64 {
        self.prefix.iter().sum()
    }

    /// Sum of the periodic pattern; `None` for an infinite class.
    pub fn period(&self) -> Option<u64> {
        match &self.tail {
            Tail::Infinite => None,
            Tail::Periodic(p) => Some(p.iter().sum()),
        }
    }

    /// Class number of the idempotent `(x,x)`.
    pub fn class_index(&self, x: u64) -> u128 {
        let mut start = 0u64;
        for (i, &m) in self.prefix.iter().enumerate() {
            if x < start + m {
                return i as u128;
            }
            start += m;
        }
        let base = self.prefix.len() as u128;
        match &self.tail {
            Tail::Infinite => base,
            Tail::Periodic(p) => {
                let d: u64 = p.iter().sum();
                let off = x - start;
                let (cycle, mut r) = (off / d, off % d);
                let mut j = 0;
                while r >= p[j] {
                    r -= p[j];
                    j += 1;
                }
                base + cycle as u128 * p.len() as u128 + j as u128
            }
        }
    }

    /// Whether `(x,x)` and `(y,y)` are related.
    pub fn related(&self, x: u64, y: u64) -> bool {
        self.class_index(x) == self.class_index(y)
    }

    /// Whether `x` is the least member of its class.
    pub fn is_class_start(&self, x: u64) -> bool {
        x == 0 || !self.related(x - 1, x)
    }

    /// `l(τ) = c_{r−1} − min(m_{r−1}, m_{r+p−1}) + 1`, and 0 when the
    /// prefix is empty.
    pub fn l(&self) -> Result<u64> {
        let Tail::Periodic(p) = &self.tail else {
            return input("l is only defined for a periodic tail");
        };
        Ok(match self.prefix.last() {
            None => 0,
            Some(&last) => self.threshold() - last.min(*p.last().unwrap()),
        })
    }

    /// Reads back a trace from a relation on `ℕ⁰` known to be
    /// `d`-periodic after `k`: `related(x,y) ⇔ related(x+d,y+d)` for
    /// `x,y ≥ k`. Classes must be intervals.
    pub fn detect(related: impl Fn(u64, u64) -> bool, k: u64, d: u64) -> Result<Self> {
        if d == 0 {
            return input("period d must be positive");
        }
        let is_start = |x: u64| x == 0 || !related(x - 1, x);
        let sizes_between = |from: u64, to: u64| -> Vec<u64> {
            let mut starts: Vec<u64> = (from..to).filter(|&x| is_start(x)).collect();
            starts.push(to);
            starts.windows(2).map(|w| w[1] - w[0]).collect()
        };
        if !(k + 1..=k + d).any(is_start) {
            let last = (0..=k).rev().find(|&x| is_start(x)).unwrap();
            return BicyclicTrace::new(sizes_between(0, last), Tail::Infinite);
        }
        let j = (k..=k + d).find(|&x| is_start(x)).expect("a start exists in (k, k+d]");
        BicyclicTrace::new(sizes_between(0, j), Tail::Periodic(sizes_between(j, j + d)))
    }
}

impl fmt::Display for BicyclicTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "prefix=[{}];tail=", list(&self.prefix))?;
        match &self.tail {
            Tail::Infinite => f.write_str("inf"),
            Tail::Periodic(p) => write!(f, "per([{}])", list(p)),
        }
    }
}

fn parse_list(text: &str) -> Result<Vec<u64>> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Input(format!("expected [..] list, got {text:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| Error::Input(format!("not a non-negative integer: {v:?}")))
        })
        .collect()
}

impl FromStr for BicyclicTrace {
    type Err = Error;

    /// `prefix=[m1,m2,...];tail=inf` or `...;tail=per([p1,...])`. The prefix
    /// part may be omitted.
    fn from_str(text: &str) -> Result<Self> {
        let mut prefix = Vec::new();
        let mut tail = None;
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let Some((key, value)) = part.split_once('=') else {
                return input(format!("expected key=value in {part:?}"));
            };
            match key.trim() {
                "prefix" => prefix = parse_list(value)?,
                "tail" => {
                    let value = value.trim();
                    tail = Some(if value == "inf" {
                        Tail::Infinite
                    } else if let Some(inner) = value.strip_prefix("per(").and_then(|v| v.strip_suffix(')')) {
                        Tail::Periodic(parse_list(inner)?)
                    } else {
                        return input(format!("tail must be inf or per([..]), got {value:?}"));
                    });
                }
                other => return input(format!("unknown key {other:?}")),
            }
        }
        let tail = tail.ok_or_else(|| Error::Input("missing tail".into()))?;
        BicyclicTrace::new(prefix, tail)
    }
}

/// `T_{n,1}` for an infinite class starting at `n`, `T_{l,d}` for a
/// periodic tail.
pub fn normalizer_bicyclic(tau: &BicyclicTrace) -> TkdSub {
    match tau.tail() {
        Tail::Infinite => TkdSub::T {
            k: tau.threshold(),
            d: 1,
        },
        Tail::Periodic(_) => TkdSub::T {
            k: tau.l().expect("periodic"),
            d: tau.period().expect("periodic"),
        },
    }
}

/// Whether `(τ, T)` is an inverse congruence pair on `B`.
pub fn is_icp_bicyclic(tau: &BicyclicTrace, t: TkdSub) -> bool {
    let TkdSub::T { k: j, d: c } = t else {
        return true;
    };
    match tau.tail() {
        Tail::Infinite => j == tau.threshold(),
        Tail::Periodic(_) => {
            let d = tau.period().unwrap();
            let l = tau.l().unwrap();
            c % d == 0 && (j == l || (j >= tau.threshold() && tau.is_class_start(j)))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => input(format!("side must be left or right, got {other:?}")),
        }
    }
}

/// Membership in the least left (or right) congruence with trace `τ`.
pub fn nu_bicyclic_related(tau: &BicyclicTrace, x: BicyclicElement, y: BicyclicElement, side: Side) -> bool {
    let same_offset = x.b as i128 - x.a as i128 == y.b as i128 - y.a as i128;
    same_offset
        && match side {
            Side::Left => tau.related(x.b, y.b),
            Side::Right => tau.related(x.a, y.a),
        }
}

/// Whether `x` normalizes `τ`, checked from the definition on every pair of
/// consecutive idempotents up to `window`. Conjugation is monotone, so
/// consecutive pairs suffice, and past the threshold the picture repeats:
/// a window of `max(a,b) + threshold + 2·period + 2` decides membership.
pub fn normalizes_within(tau: &BicyclicTrace, x: BicyclicElement, window: u64) -> bool {
    let xi = binv(x);
    (0..window).all(|s| {
        if !tau.related(s, s + 1) {
            return true;
        }
        tau.related(conj_index(x, s), conj_index(x, s + 1)) && tau.related(conj_index(xi, s), conj_index(xi, s + 1))
    })
}

/// A window large enough for `normalizes_within` to be exact at `x`.
pub fn exact_window(tau: &BicyclicTrace, x: BicyclicElement) -> u64 {
    x.a.max(x.b) + tau.threshold() + 2 * tau.period().unwrap_or(1) + 2
}

/// Searches elements `(a,b)` with `a,b < window` for a failure of the pair
/// conditions: a member of `T` outside the normalizer, or an element outside
/// `T` that idempotents related to its domain and range both push into `T`.
pub fn pair_violation_within(tau: &BicyclicTrace, t: TkdSub, window: u64) -> Option<BicyclicElement> {
    let reach = window + tau.threshold() + 2 * tau.period().unwrap_or(1) + 2;
    let class_hits =
        |anchor: u64, hit: &dyn Fn(u64) -> bool| (0..reach + anchor).any(|s| tau.related(s, anchor) && hit(s));
    for a in 0..window {
        for b in 0..window {
            let x = BicyclicElement::new(a, b);
            if tkd_contains(t, x) {
                if !normalizes_within(tau, x, exact_window(tau, x)) {
                    return Some(x);
                }
                continue;
            }
            let right = class_hits(b, &|s| tkd_contains(t, bmul(x, BicyclicElement::idempotent(s))));
            let left = class_hits(a, &|u| tkd_contains(t, bmul(BicyclicElement::idempotent(u), x)));
            if right && left {
                return Some(x);
            }
        }
    }
    None
}
