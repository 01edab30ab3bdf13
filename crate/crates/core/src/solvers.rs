//! Exact desk-scale solvers for the convexity number `c(G)`, interval number
//! `i(G)` and hull number `h(G)`.
//!
//! Candidates are enumerated by size (increasing for `i`/`h`, decreasing for
//! `c`) and, within a size, in lexicographic order, so the first success is
//! both optimal and the lexicographically least optimal set.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::engine::{Engine, Strategy};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spec::ResolvedBounds;
use crate::vset::VertexSet;

pub const DEFAULT_SOLVER_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Invariant {
    ConvexityNumber,
    IntervalNumber,
    HullNumber,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::ConvexityNumber => "convexity number",
            Invariant::IntervalNumber => "interval number",
            Invariant::HullNumber => "hull number",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Largest graph the solvers accept.
    pub max_vertices: usize,
    /// Stop after examining this many candidates and report a bound.
    pub max_candidates: Option<u64>,
    pub strategy: Strategy,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_vertices: DEFAULT_SOLVER_CAP,
            max_candidates: None,
            strategy: Strategy::Auto,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverResult {
    pub invariant: Invariant,
    pub value: usize,
    pub optimal_set: VertexSet,
    /// Candidate sets examined.
    pub explored: u64,
    /// The candidate budget ran out; `value` is only a bound (a lower bound
    /// for `c`, an upper bound for `i` and `h`).
    pub capped: bool,
    /// `c(G)` on a single vertex: the only proper subset is the empty set.
    pub trivial: bool,
}

impl SolverResult {
    /// Decision version: `c(G) >= r`, `i(G) <= r` or `h(G) <= r`.
    pub fn decide(&self, r: usize) -> bool {
        match self.invariant {
            Invariant::ConvexityNumber => self.value >= r,
            Invariant::IntervalNumber | Invariant::HullNumber => self.value <= r,
        }
    }
}

/// Vertices `z` with `z` outside `I(V - z)`. They belong to every interval
/// set and every hull set, since `V - z` is then convex.
pub fn mandatory_vertices(g: &Graph, rb: &ResolvedBounds) -> Result<VertexSet> {
    mandatory_with(&Engine::new(g, rb)?)
}

fn mandatory_with(engine: &Engine<'_>) -> Result<VertexSet> {
    let g = engine.graph();
    let mut out = VertexSet::empty(g.n());
    for z in g.vertices() {
        let mut rest = VertexSet::full(g.n());
        rest.remove(z);
        if engine.first_addition(&rest)?.is_none() {
            out.insert(z);
        }
    }
    Ok(out)
}

pub fn convexity_number(g: &Graph, rb: &ResolvedBounds) -> Result<SolverResult> {
    convexity_number_with(g, rb, &SolverConfig::default())
}

pub fn interval_number(g: &Graph, rb: &ResolvedBounds) -> Result<SolverResult> {
    interval_number_with(g, rb, &SolverConfig::default())
}

pub fn hull_number(g: &Graph, rb: &ResolvedBounds) -> Result<SolverResult> {
    hull_number_with(g, rb, &SolverConfig::default())
}

fn check_cap(g: &Graph, cfg: &SolverConfig, invariant: Invariant) -> Result<()> {
    if g.n() > cfg.max_vertices {
        return Err(Error::SizeLimitExceeded {
            what: match invariant {
                Invariant::ConvexityNumber => "convexity number",
                Invariant::IntervalNumber => "interval number",
                Invariant::HullNumber => "hull number",
            },
            n: g.n(),
            cap: cfg.max_vertices,
        });
    }
    Ok(())
}

struct Budget {
    explored: u64,
    limit: Option<u64>,
}

impl Budget {
    /// Counts one candidate; false once the limit is exhausted.
    fn take(&mut self) -> bool {
        if self.limit.is_some_and(|l| self.explored >= l) {
            return false;
        }
        self.explored += 1;
        true
    }
}

/// Largest convex `S != V`.
pub fn convexity_number_with(
    g: &Graph,
    rb: &ResolvedBounds,
    cfg: &SolverConfig,
) -> Result<SolverResult> {
    check_cap(g, cfg, Invariant::ConvexityNumber)?;
    let engine = Engine::with_strategy(g, rb, cfg.strategy)?;
    let n = g.n();
    let mut budget = Budget {
        explored: 0,
        limit: cfg.max_candidates,
    };
    let result = |set: VertexSet, explored, capped| SolverResult {
        invariant: Invariant::ConvexityNumber,
        value: set.len(),
        optimal_set: set,
        explored,
        capped,
        trivial: n == 1,
    };
    for k in (0..n).rev() {
        for combo in (1..=n).combinations(k) {
            if !budget.take() {
                // Singletons are always convex.
                let fallback = VertexSet::from_vertices(n, (n > 1).then_some(1));
                return Ok(result(fallback, budget.explored, true));
            }
            let s = VertexSet::from_vertices(n, combo);
            if engine.is_convex(&s)? {
                return Ok(result(s, budget.explored, false));
            }
        }
    }
    unreachable!("the empty set is always convex")
}

/// Smallest `S` with `I(S) = V`.
pub fn interval_number_with(
    g: &Graph,
    rb: &ResolvedBounds,
    cfg: &SolverConfig,
) -> Result<SolverResult> {
    check_cap(g, cfg, Invariant::IntervalNumber)?;
    let engine = Engine::with_strategy(g, rb, cfg.strategy)?;
    minimize(&engine, cfg, Invariant::IntervalNumber, |s| engine.covers_all(s))
}

/// Smallest `S` with `H(S) = V`.
pub fn hull_number_with(
    g: &Graph,
    rb: &ResolvedBounds,
    cfg: &SolverConfig,
) -> Result<SolverResult> {
    check_cap(g, cfg, Invariant::HullNumber)?;
    let engine = Engine::with_strategy(g, rb, cfg.strategy)?;
    let mut memo: HashMap<VertexSet, VertexSet> = HashMap::new();
    minimize(&engine, cfg, Invariant::HullNumber, |s| {
        let mut current = s.clone();
        loop {
            let next = match memo.get(&current) {
                Some(next) => next.clone(),
                None => {
                    let next = engine.interval_members(&current)?;
                    memo.insert(current.clone(), next.clone());
                    next
                }
            };
            if next == current {
                return Ok(current.is_full());
            }
            current = next;
        }
    })
}

fn minimize(
    engine: &Engine<'_>,
    cfg: &SolverConfig,
    invariant: Invariant,
    mut accepts: impl FnMut(&VertexSet) -> Result<bool>,
) -> Result<SolverResult> {
    let n = engine.graph().n();
    let seed = mandatory_with(engine)?;
    let free: Vec<usize> = seed.complement().iter().collect();
    let mut budget = Budget {
        explored: 0,
        limit: cfg.max_candidates,
    };
    let result = |set: VertexSet, explored, capped| SolverResult {
        invariant,
        value: set.len(),
        optimal_set: set,
        explored,
        capped,
        trivial: false,
    };
    for extra in 0..=free.len() {
        for combo in free.iter().copied().combinations(extra) {
            if !budget.take() {
                return Ok(result(VertexSet::full(n), budget.explored, true));
            }
            let mut s = seed.clone();
            for v in combo {
                s.insert(v);
            }
            if accepts(&s)? {
                return Ok(result(s, budget.explored, false));
            }
        }
    }
    unreachable!("V itself is an interval set and a hull set")
}
