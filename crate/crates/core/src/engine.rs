//! Qualifying-path enumeration and the interval function.
//!
//! `I(S)` is `S` plus every vertex lying on a qualifying `uv`-path for some
//! pair of distinct `u, v` in `S`. Paths are always reported oriented from the
//! smaller endpoint to the larger one, and the witness kept for a vertex is
//! the lexicographically least qualifying path through it, so results do not
//! depend on which strategy computed them.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{path_chords, Graph, Path};
use crate::spec::{PairBounds, ResolvedBounds};
use crate::vset::VertexSet;

/// Strategy selection for interval computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Use a closed form when the bounds have a recognized shape.
    #[default]
    Auto,
    /// Always enumerate paths.
    Generic,
}

/// The method an [`Engine`] actually runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Every pair admits exactly its shortest paths: `b = dist`, `a <= dist`.
    Geodesic,
    /// No pair admits paths longer than two edges.
    LengthTwo,
    /// Pruned depth-first enumeration.
    Enumeration,
}

/// A qualifying path certifying that a vertex lies in an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathWitness {
    pub endpoints: (usize, usize),
    pub path: Path,
    pub bounds: PairBounds,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalResult {
    pub members: VertexSet,
    /// One witness for every member outside the input set.
    pub witnesses: BTreeMap<usize, PathWitness>,
}

/// Answer to "does z belong to I(S)?".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    /// `z` is in `S` itself.
    InSet,
    OnPath(PathWitness),
    Outside,
}

impl Containment {
    pub fn is_member(&self) -> bool {
        !matches!(self, Containment::Outside)
    }

    pub fn witness(&self) -> Option<&PathWitness> {
        match self {
            Containment::OnPath(w) => Some(w),
            _ => None,
        }
    }
}

/// Interval computations for one graph under one set of resolved bounds.
#[derive(Clone, Copy, Debug)]
pub struct Engine<'a> {
    graph: &'a Graph,
    bounds: &'a ResolvedBounds,
    method: Method,
}

impl<'a> Engine<'a> {
    pub fn new(graph: &'a Graph, bounds: &'a ResolvedBounds) -> Result<Self> {
        Self::with_strategy(graph, bounds, Strategy::Auto)
    }

    pub fn with_strategy(
        graph: &'a Graph,
        bounds: &'a ResolvedBounds,
        strategy: Strategy,
    ) -> Result<Self> {
        if bounds.n() != graph.n() {
            return Err(Error::MatrixShapeMismatch {
                matrix: "resolved bounds".into(),
                detail: format!("sized for {} vertices, graph has {}", bounds.n(), graph.n()),
            });
        }
        let method = match strategy {
            Strategy::Generic => Method::Enumeration,
            Strategy::Auto => detect_method(graph, bounds),
        };
        Ok(Engine { graph, bounds, method })
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn bounds(&self) -> &'a ResolvedBounds {
        self.bounds
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Whether `p` meets the length and chord bounds of its endpoint pair.
    pub fn path_satisfies(&self, p: &Path) -> Result<bool> {
        let chords = path_chords(self.graph, p)?;
        let b = self.bounds.pair(p.first(), p.last());
        let len = p.len();
        Ok(b.min_length <= len
            && len <= b.max_length
            && chords.iter().all(|c| b.chord_allowed(c.length())))
    }

    /// Qualifying `u`-`v` paths in lexicographic order of vertex sequences.
    pub fn paths(&self, u: usize, v: usize) -> Result<QualifyingPaths<'a>> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        Ok(QualifyingPaths::new(self.graph, self.bounds.pair(u, v), u, v, None))
    }

    /// Qualifying `u`-`v` paths that pass through `z`, in lexicographic order.
    pub fn paths_through(&self, u: usize, v: usize, z: usize) -> Result<QualifyingPaths<'a>> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        self.graph.check_vertex(z)?;
        Ok(QualifyingPaths::new(self.graph, self.bounds.pair(u, v), u, v, Some(z)))
    }

    pub fn interval(&self, s: &VertexSet) -> Result<IntervalResult> {
        self.graph.check_set(s)?;
        let mut members = s.clone();
        let mut witnesses = BTreeMap::new();
        for z in self.graph.vertices().filter(|&z| !s.contains(z)) {
            if let Some(w) = self.witness_for(s, z) {
                members.insert(z);
                witnesses.insert(z, w);
            }
        }
        Ok(IntervalResult { members, witnesses })
    }

    /// `I(S)` without witness bookkeeping.
    pub fn interval_members(&self, s: &VertexSet) -> Result<VertexSet> {
        self.graph.check_set(s)?;
        let mut members = s.clone();
        for z in self.graph.vertices().filter(|&z| !s.contains(z)) {
            if self.reaches(s, z) {
                members.insert(z);
            }
        }
        Ok(members)
    }

    /// Smallest vertex of `I(S) \ S`, if any.
    pub fn first_addition(&self, s: &VertexSet) -> Result<Option<usize>> {
        self.graph.check_set(s)?;
        Ok(self
            .graph
            .vertices()
            .find(|&z| !s.contains(z) && self.reaches(s, z)))
    }

    /// Whether `I(S) = V`, stopping at the first vertex left out.
    pub fn covers_all(&self, s: &VertexSet) -> Result<bool> {
        self.graph.check_set(s)?;
        Ok(self
            .graph
            .vertices()
            .all(|z| s.contains(z) || self.reaches(s, z)))
    }

    pub fn interval_contains(&self, s: &VertexSet, z: usize) -> Result<Containment> {
        self.graph.check_set(s)?;
        self.graph.check_vertex(z)?;
        if s.contains(z) {
            return Ok(Containment::InSet);
        }
        Ok(match self.witness_for(s, z) {
            Some(w) => Containment::OnPath(w),
            None => Containment::Outside,
        })
    }

    fn pairs<'s>(&self, s: &'s VertexSet) -> impl Iterator<Item = (usize, usize)> + 's {
        s.iter()
            .flat_map(move |u| s.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    fn reaches(&self, s: &VertexSet, z: usize) -> bool {
        match self.method {
            Method::Geodesic => self.pairs(s).any(|(u, v)| self.on_geodesic(u, v, z)),
            Method::LengthTwo => self.pairs(s).any(|(u, v)| self.length_two_ok(u, v, z)),
            Method::Enumeration => self.pairs(s).any(|(u, v)| {
                QualifyingPaths::new(self.graph, self.bounds.pair(u, v), u, v, Some(z))
                    .next()
                    .is_some()
            }),
        }
    }

    /// Lexicographically least qualifying path through `z` over all pairs of `s`.
    fn witness_for(&self, s: &VertexSet, z: usize) -> Option<PathWitness> {
        let mut best: Option<PathWitness> = None;
        let mut current_u = 0;
        for (u, v) in self.pairs(s) {
            if u != current_u {
                // Paths from a smaller first vertex always sort first.
                if best.is_some() {
                    break;
                }
                current_u = u;
            }
            let found = match self.method {
                Method::Geodesic => self
                    .on_geodesic(u, v, z)
                    .then(|| self.least_geodesic_through(u, v, z)),
                Method::LengthTwo => self
                    .length_two_ok(u, v, z)
                    .then(|| Path::new(vec![u, z, v])),
                Method::Enumeration => {
                    QualifyingPaths::new(self.graph, self.bounds.pair(u, v), u, v, Some(z)).next()
                }
            };
            if let Some(path) = found {
                if best.as_ref().is_none_or(|b| path < b.path) {
                    best = Some(PathWitness {
                        endpoints: (u, v),
                        path,
                        bounds: self.bounds.pair(u, v),
                    });
                }
            }
        }
        best
    }

    fn on_geodesic(&self, u: usize, v: usize, z: usize) -> bool {
        let g = self.graph;
        g.dist(u, z) + g.dist(z, v) == g.dist(u, v)
    }

    /// Greedy construction: each step takes the smallest neighbor that keeps
    /// the prefix on a shortest `u`-`v` path through `z`.
    fn least_geodesic_through(&self, u: usize, v: usize, z: usize) -> Path {
        let g = self.graph;
        let mut path = vec![u];
        for goal in [z, v] {
            let mut x = *path.last().expect("nonempty");
            while x != goal {
                x = *g
                    .neighbors(x)
                    .iter()
                    .find(|&&y| g.dist(y, goal) + 1 == g.dist(x, goal))
                    .expect("a neighbor one step closer always exists");
                path.push(x);
            }
        }
        Path::new(path)
    }

    fn length_two_ok(&self, u: usize, v: usize, z: usize) -> bool {
        let g = self.graph;
        let b = self.bounds.pair(u, v);
        b.min_length <= 2
            && 2 <= b.max_length
            && g.adjacent(u, z)
            && g.adjacent(z, v)
            && (!g.adjacent(u, v) || b.chord_allowed(2))
    }
}

fn detect_method(g: &Graph, rb: &ResolvedBounds) -> Method {
    let pairs = || (1..=g.n()).flat_map(|i| (i + 1..=g.n()).map(move |j| (i, j)));
    if pairs().all(|(i, j)| {
        let b = rb.pair(i, j);
        b.max_length == g.dist(i, j) && b.min_length <= b.max_length
    }) {
        Method::Geodesic
    } else if pairs().all(|(i, j)| rb.pair(i, j).max_length <= 2) {
        Method::LengthTwo
    } else {
        Method::Enumeration
    }
}

/// Depth-first stream of qualifying paths between two fixed endpoints.
///
/// A prefix is abandoned once it cannot reach the target within the length
/// bound (using graph distance as a lower bound on the remaining length),
/// or once it contains a chord outside `[min_chord, max_chord]`; chords
/// inside a prefix never change length as the path grows.
pub struct QualifyingPaths<'a> {
    graph: &'a Graph,
    bounds: PairBounds,
    target: usize,
    through: Option<usize>,
    path: Vec<usize>,
    cursor: Vec<usize>,
    // position of each vertex on the current prefix, usize::MAX if absent
    pos: Vec<usize>,
}

impl<'a> QualifyingPaths<'a> {
    fn new(
        graph: &'a Graph,
        bounds: PairBounds,
        source: usize,
        target: usize,
        through: Option<usize>,
    ) -> Self {
        let through = through.filter(|&z| z != source && z != target);
        let mut it = QualifyingPaths {
            graph,
            bounds,
            target,
            through,
            path: Vec::new(),
            cursor: Vec::new(),
            pos: vec![usize::MAX; graph.n()],
        };
        if source != target {
            it.path.push(source);
            it.cursor.push(0);
            it.pos[source - 1] = 0;
        }
        it
    }

    fn admissible(&self, y: usize) -> bool {
        let g = self.graph;
        let k = self.path.len();
        let max = self.bounds.max_length;
        if y == self.target {
            if k > max {
                return false;
            }
            if let Some(z) = self.through {
                if self.pos[z - 1] == usize::MAX {
                    return false;
                }
            }
        } else {
            if k + g.dist(y, self.target) > max {
                return false;
            }
            if let Some(z) = self.through {
                if y != z
                    && self.pos[z - 1] == usize::MAX
                    && k + g.dist(y, z) + g.dist(z, self.target) > max
                {
                    return false;
                }
            }
        }
        g.neighbors(y).iter().all(|&w| {
            let p = self.pos[w - 1];
            p == usize::MAX || k - p < 2 || self.bounds.chord_allowed(k - p)
        })
    }
}

impl Iterator for QualifyingPaths<'_> {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        while let Some(&top) = self.path.last() {
            let depth = self.path.len() - 1;
            let nbrs = self.graph.neighbors(top);
            let c = self.cursor[depth];
            if c == nbrs.len() {
                self.pos[top - 1] = usize::MAX;
                self.path.pop();
                self.cursor.pop();
                continue;
            }
            self.cursor[depth] += 1;
            let y = nbrs[c];
            if self.pos[y - 1] != usize::MAX || !self.admissible(y) {
                continue;
            }
            if y == self.target {
                if self.path.len() >= self.bounds.min_length {
                    let mut p = self.path.clone();
                    p.push(y);
                    return Some(Path::new(p));
                }
                continue;
            }
            self.pos[y - 1] = self.path.len();
            self.path.push(y);
            self.cursor.push(0);
        }
        None
    }
}

pub fn path_satisfies(g: &Graph, rb: &ResolvedBounds, p: &Path) -> Result<bool> {
    Engine::new(g, rb)?.path_satisfies(p)
}

/// Qualifying `u`-`v` paths, pruned depth-first, in lexicographic order.
pub fn enumerate_paths<'a>(
    g: &'a Graph,
    rb: &'a ResolvedBounds,
    u: usize,
    v: usize,
) -> Result<QualifyingPaths<'a>> {
    Engine::with_strategy(g, rb, Strategy::Generic)?.paths(u, v)
}

pub fn interval(g: &Graph, rb: &ResolvedBounds, s: &VertexSet) -> Result<IntervalResult> {
    Engine::new(g, rb)?.interval(s)
}

pub fn interval_contains(
    g: &Graph,
    rb: &ResolvedBounds,
    s: &VertexSet,
    z: usize,
) -> Result<Containment> {
    Engine::new(g, rb)?.interval_contains(s, z)
}
