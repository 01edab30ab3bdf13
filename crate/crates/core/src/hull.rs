//! Convexity tests with certificates, and convex hulls by iterating the
//! interval function to a fixed point.

use crate::engine::{Engine, PathWitness};
use crate::error::Result;
use crate::graph::Graph;
use crate::spec::ResolvedBounds;
use crate::vset::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexityCertificate {
    Convex,
    /// `augmented` is `I(S)`, a proper superset of `S`; `witness` certifies
    /// its smallest new vertex.
    NotConvex {
        augmented: VertexSet,
        witness: PathWitness,
    },
}

impl ConvexityCertificate {
    pub fn is_convex(&self) -> bool {
        matches!(self, ConvexityCertificate::Convex)
    }
}

/// The chain `S = I^0(S), I^1(S), ...` up to the hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullTrace {
    /// Strictly increasing; the last stage is the hull.
    pub stages: Vec<VertexSet>,
}

impl HullTrace {
    pub fn hull(&self) -> &VertexSet {
        self.stages.last().expect("a trace has at least one stage")
    }

    /// Number of interval applications that added vertices.
    pub fn steps(&self) -> usize {
        self.stages.len() - 1
    }
}

impl Engine<'_> {
    pub fn convex_test(&self, s: &VertexSet) -> Result<ConvexityCertificate> {
        let r = self.interval(s)?;
        Ok(match r.witnesses.into_iter().next() {
            None => ConvexityCertificate::Convex,
            Some((_, witness)) => ConvexityCertificate::NotConvex {
                augmented: r.members,
                witness,
            },
        })
    }

    /// `I(S) = S`, without building a certificate.
    pub fn is_convex(&self, s: &VertexSet) -> Result<bool> {
        Ok(self.first_addition(s)?.is_none())
    }

    pub fn hull(&self, s: &VertexSet) -> Result<HullTrace> {
        let mut stages = vec![s.clone()];
        for stage in self.stages(s) {
            stages.push(stage?);
        }
        Ok(HullTrace { stages })
    }

    /// Whether `z` is in `H(S)`; stops at the first stage containing `z`.
    pub fn hull_contains(&self, s: &VertexSet, z: usize) -> Result<bool> {
        self.graph().check_vertex(z)?;
        self.graph().check_set(s)?;
        if s.contains(z) {
            return Ok(true);
        }
        for stage in self.stages(s) {
            if stage?.contains(z) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Lazily yields `I^1(S), I^2(S), ...` while each stage grows.
    pub fn stages<'e>(&'e self, s: &VertexSet) -> impl Iterator<Item = Result<VertexSet>> + 'e {
        let mut current = Some(s.clone());
        std::iter::from_fn(move || {
            let prev = current.take()?;
            match self.interval_members(&prev) {
                Err(e) => Some(Err(e)),
                Ok(next) if next == prev => None,
                Ok(next) => {
                    current = Some(next.clone());
                    Some(Ok(next))
                }
            }
        })
    }
}

pub fn convex_test(g: &Graph, rb: &ResolvedBounds, s: &VertexSet) -> Result<ConvexityCertificate> {
    Engine::new(g, rb)?.convex_test(s)
}

pub fn hull(g: &Graph, rb: &ResolvedBounds, s: &VertexSet) -> Result<HullTrace> {
    Engine::new(g, rb)?.hull(s)
}

pub fn hull_contains(g: &Graph, rb: &ResolvedBounds, s: &VertexSet, z: usize) -> Result<bool> {
    Engine::new(g, rb)?.hull_contains(s, z)
}
