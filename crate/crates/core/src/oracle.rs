//! Brute-force reference implementations, the matrix-convex-set reduction
//! gadget, and graph generators for differential testing.
//!
//! Nothing here reuses the engine's search: paths are enumerated without any
//! pruning and filtered afterwards, chords are recomputed from scratch, and
//! closures come from explicit families of convex sets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};
use crate::spec::{ConvexitySpec, Length, LengthMatrix, MatrixBounds, PairBounds, ResolvedBounds};
use crate::vset::VertexSet;

/// Cap for the unpruned interval oracle.
pub const ORACLE_INTERVAL_CAP: usize = 10;
/// Cap for exhaustive convex-set enumeration.
pub const ORACLE_FAMILY_CAP: usize = 12;

fn check(g: &Graph, cap: usize, what: &'static str) -> Result<()> {
    if g.n() > cap {
        return Err(Error::SizeLimitExceeded { what, n: g.n(), cap });
    }
    Ok(())
}

/// Every simple path from `u` to `v`, as vertex sequences, unfiltered.
pub fn all_simple_paths(g: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
    fn walk(g: &Graph, v: usize, stack: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let x = *stack.last().unwrap();
        if x == v {
            out.push(stack.clone());
            return;
        }
        for &y in g.neighbors(x) {
            if !used[y] {
                used[y] = true;
                stack.push(y);
                walk(g, v, stack, used, out);
                stack.pop();
                used[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    if u == v {
        return out;
    }
    let mut used = vec![false; g.n() + 1];
    used[u] = true;
    walk(g, v, &mut vec![u], &mut used, &mut out);
    out
}

/// Direct reading of the four qualifying conditions.
pub fn qualifies(g: &Graph, b: &PairBounds, path: &[usize]) -> bool {
    let len = path.len() - 1;
    if len < b.min_length || len > b.max_length {
        return false;
    }
    for i in 0..path.len() {
        for j in i + 2..path.len() {
            if g.neighbors(path[i]).contains(&path[j]) && !(b.min_chord <= j - i && j - i <= b.max_chord) {
                return false;
            }
        }
    }
    true
}

/// Induced-subgraph test: a path is induced iff its vertices span exactly
/// `len` edges.
pub fn is_induced(g: &Graph, path: &[usize]) -> bool {
    let spanned = g
        .edges()
        .iter()
        .filter(|(a, b)| path.contains(a) && path.contains(b))
        .count();
    spanned == path.len() - 1
}

/// Exhaustive model of one (graph, bounds) pair: for each vertex pair, the
/// union of the vertex sets of its qualifying paths.
pub struct Oracle<'a> {
    graph: &'a Graph,
    cover: Vec<VertexSet>,
}

impl<'a> Oracle<'a> {
    pub fn new(g: &'a Graph, rb: &ResolvedBounds, cap: usize) -> Result<Self> {
        check(g, cap, "oracle")?;
        let n = g.n();
        let mut cover = vec![VertexSet::empty(n); n * n];
        for u in 1..=n {
            for v in u + 1..=n {
                let b = rb.pair(u, v);
                let mut c = VertexSet::empty(n);
                for p in all_simple_paths(g, u, v) {
                    if qualifies(g, &b, &p) {
                        for &x in &p {
                            c.insert(x);
                        }
                    }
                }
                cover[(u - 1) * n + (v - 1)] = c.clone();
                cover[(v - 1) * n + (u - 1)] = c;
            }
        }
        Ok(Oracle { graph: g, cover })
    }

    pub fn interval(&self, s: &VertexSet) -> VertexSet {
        let n = self.graph.n();
        let members: Vec<usize> = s.iter().collect();
        let mut out = s.clone();
        for (k, &u) in members.iter().enumerate() {
            for &v in &members[k + 1..] {
                out = out.union(&self.cover[(u - 1) * n + (v - 1)]);
            }
        }
        out
    }

    /// All fixed points of the interval function.
    pub fn convex_sets(&self) -> Vec<VertexSet> {
        let n = self.graph.n();
        subsets(n).filter(|s| &self.interval(s) == s).collect()
    }

    /// Intersection of every convex superset of `s`.
    pub fn hull(&self, s: &VertexSet, family: &[VertexSet]) -> VertexSet {
        family
            .iter()
            .filter(|c| s.is_subset(c))
            .fold(VertexSet::full(self.graph.n()), |acc, c| acc.intersection(c))
    }

    /// `(c, i, h)` by scanning every subset.
    pub fn invariants(&self) -> (usize, usize, usize) {
        let n = self.graph.n();
        let family = self.convex_sets();
        let c = family.iter().filter(|s| !s.is_full()).map(VertexSet::len).max().unwrap_or(0);
        let mut i = n;
        let mut h = n;
        for s in subsets(n) {
            if self.interval(&s).is_full() {
                i = i.min(s.len());
            }
            if self.hull(&s, &family).is_full() {
                h = h.min(s.len());
            }
        }
        (c, i, h)
    }
}

/// All subsets of `1..=n`.
pub fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    assert!(n < 32);
    (0u32..1 << n).map(move |mask| VertexSet::from_vertices(n, (1..=n).filter(|v| mask >> (v - 1) & 1 == 1)))
}

pub fn oracle_interval(g: &Graph, rb: &ResolvedBounds, s: &VertexSet) -> Result<VertexSet> {
    Ok(Oracle::new(g, rb, ORACLE_INTERVAL_CAP)?.interval(s))
}

pub fn enumerate_convex_sets(g: &Graph, rb: &ResolvedBounds) -> Result<Vec<VertexSet>> {
    Ok(Oracle::new(g, rb, ORACLE_FAMILY_CAP)?.convex_sets())
}

/// Whether some induced `i`-`j` path of `h` contains `z`.
pub fn chordless_path_through(h: &Graph, i: usize, j: usize, z: usize) -> Result<bool> {
    check(h, ORACLE_INTERVAL_CAP, "chordless path search")?;
    for v in [i, j, z] {
        h.check_vertex(v)?;
    }
    Ok(all_simple_paths(h, i, j)
        .iter()
        .any(|p| p.contains(&z) && is_induced(h, p)))
}

/// Instance of the matrix-convex-set reduction.
#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub spec: ConvexitySpec,
    pub set: VertexSet,
    /// `mapping[v - 1]` is the vertex of `graph` standing for `v` in `H`.
    pub mapping: Vec<usize>,
}

/// Subdivides every edge of `h` at `z` with `n - 1` new vertices
/// (`n = |V(h)|`) and pairs the result with chordless paths of length in
/// `[2n, 3n - 3]`. Then `{i, j}` is not convex iff `h` has an induced
/// `i`-`j` path through `z`.
pub fn build_mcs_gadget(h: &Graph, i: usize, j: usize, z: usize) -> Result<GadgetInstance> {
    for v in [i, j, z] {
        h.check_vertex(v)?;
    }
    if i == j || i == z || j == z {
        return Err(Error::InvalidPath(format!(
            "gadget needs three distinct vertices, got i={i} j={j} z={z}"
        )));
    }
    let n = h.n();
    let mut next = n;
    let mut edges = Vec::new();
    for &(a, b) in h.edges() {
        if a != z && b != z {
            edges.push((a, b));
            continue;
        }
        let s = if a == z { b } else { a };
        let mut prev = s;
        for _ in 0..n - 1 {
            next += 1;
            edges.push((prev, next));
            prev = next;
        }
        edges.push((prev, z));
    }
    let graph = build_graph(next, &edges)?;
    let big = graph.n();
    let spec = ConvexitySpec::matrices(MatrixBounds {
        min_length: LengthMatrix::constant(big, Length::Finite(2 * n)),
        max_length: LengthMatrix::constant(big, Length::Finite((3 * n).saturating_sub(3))),
        min_chord: LengthMatrix::constant(big, Length::Finite(1)),
        max_chord: LengthMatrix::constant(big, Length::Finite(1)),
    });
    let set = VertexSet::from_vertices(big, [i, j]);
    Ok(GadgetInstance {
        graph,
        spec,
        set,
        mapping: (1..=n).collect(),
    })
}

/// Random spanning tree plus each remaining pair independently with
/// probability `p`. Deterministic in `(n, p, seed)`.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> Graph {
    assert!(n >= 1 && (0.0..=1.0).contains(&p));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(&mut rng);
    let mut tree = vec![false; n * n];
    let mut edges = Vec::new();
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        let child = order[k];
        tree[(parent - 1) * n + (child - 1)] = true;
        tree[(child - 1) * n + (parent - 1)] = true;
        edges.push((parent, child));
    }
    for u in 1..=n {
        for v in u + 1..=n {
            if !tree[(u - 1) * n + (v - 1)] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build_graph(n, &edges).expect("spanning tree keeps the graph connected")
}

/// Every connected labeled graph on `n` vertices (`n <= 6`).
pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=6).contains(&n));
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    (0u32..1 << pairs.len())
        .filter_map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            build_graph(n, &edges).ok()
        })
        .collect()
}

type Named = (&'static str, usize, &'static [(usize, usize)]);

/// Small named graphs: paths, cycles, complete graphs, stars, plus a few
/// classics.
pub fn named_graphs() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push((format!("P{n}"), Graph::path(n)));
        out.push((format!("K{n}"), Graph::complete(n)));
    }
    for n in 3..=6 {
        out.push((format!("C{n}"), Graph::cycle(n)));
    }
    for l in 2..=5 {
        out.push((format!("K1,{l}"), Graph::star(l)));
    }
    let extra: [Named; 6] = [
        ("paw", 4, &[(1, 2), (2, 3), (3, 1), (3, 4)]),
        ("diamond", 4, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]),
        ("bull", 5, &[(1, 2), (2, 3), (3, 1), (2, 4), (3, 5)]),
        ("house", 5, &[(1, 2), (2, 3), (3, 4), (4, 1), (3, 5), (4, 5)]),
        ("gem", 5, &[(1, 2), (2, 3), (3, 4), (5, 1), (5, 2), (5, 3), (5, 4)]),
        ("K2,3", 5, &[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]),
    ];
    for (name, n, edges) in extra {
        out.push((name.to_string(), build_graph(n, edges).expect("named graph")));
    }
    out
}

/// A random constant tuple with `a in [1,4]`, `b in [a,8]`, `c in [1,3]`,
/// `d in [c,8]`.
pub fn random_tuple<R: Rng>(rng: &mut R) -> ConvexitySpec {
    let a = rng.gen_range(1..=4);
    let b = rng.gen_range(a..=8);
    let c = rng.gen_range(1..=3);
    let d = rng.gen_range(c..=8);
    ConvexitySpec::constant(a, b, c, d)
}

/// A uniformly random subset of `1..=n` with between 2 and `n` members.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> VertexSet {
    let k = rng.gen_range(2.min(n)..=n);
    let mut vs: Vec<usize> = (1..=n).collect();
    vs.shuffle(rng);
    VertexSet::from_vertices(n, vs.into_iter().take(k))
}

/// Outcome of [`self_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct SelfCheckReport {
    pub interval_instances: usize,
    pub interval_disagreements: usize,
    pub gadget_cases: usize,
    pub gadget_disagreements: usize,
    /// First few disagreements, human readable.
    pub failures: Vec<String>,
}

impl SelfCheckReport {
    pub fn ok(&self) -> bool {
        self.interval_disagreements == 0 && self.gadget_disagreements == 0
    }
}

/// Differential run of the engine against the oracle on random graphs with
/// `4 <= n <= max_n`, plus gadget equivalence on random graphs with at most
/// five vertices.
pub fn self_check(seed: u64, max_n: usize) -> Result<SelfCheckReport> {
    use crate::engine::{Engine, Strategy};
    use crate::spec::{parse_spec, resolve_bounds, LITERATURE_PRESETS};

    let max_n = max_n.clamp(4, ORACLE_INTERVAL_CAP);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SelfCheckReport::default();
    let note = |report: &mut SelfCheckReport, msg: String| {
        if report.failures.len() < 10 {
            report.failures.push(msg);
        }
    };
    for n in 4..=max_n {
        for p in [0.2, 0.5, 0.8] {
            let g = random_connected_graph(n, p, rng.gen());
            let mut specs: Vec<ConvexitySpec> = LITERATURE_PRESETS
                .iter()
                .map(|t| parse_spec(t).expect("preset parses"))
                .collect();
            specs.extend((0..5).map(|_| random_tuple(&mut rng)));
            for spec in &specs {
                let rb = resolve_bounds(spec, &g)?;
                let oracle = Oracle::new(&g, &rb, ORACLE_INTERVAL_CAP)?;
                let auto = Engine::new(&g, &rb)?;
                let generic = Engine::with_strategy(&g, &rb, Strategy::Generic)?;
                for _ in 0..3 {
                    let s = random_subset(&mut rng, n);
                    let expected = oracle.interval(&s);
                    report.interval_instances += 1;
                    for engine in [&auto, &generic] {
                        let got = engine.interval(&s)?.members;
                        if got != expected {
                            report.interval_disagreements += 1;
                            note(&mut report, format!(
                                "interval: graph {:?} spec {spec} S={s}: engine {got} oracle {expected}",
                                g.edges()
                            ));
                        }
                    }
                }
            }
        }
    }
    for _ in 0..12 {
        let n = rng.gen_range(3..=5);
        let h = random_connected_graph(n, rng.gen_range(0.2..0.8), rng.gen());
        for i in 1..=n {
            for j in 1..=n {
                for z in 1..=n {
                    if i == j || i == z || j == z {
                        continue;
                    }
                    let inst = build_mcs_gadget(&h, i, j, z)?;
                    let rb = resolve_bounds(&inst.spec, &inst.graph)?;
                    let not_convex = !Engine::new(&inst.graph, &rb)?.is_convex(&inst.set)?;
                    let expected = chordless_path_through(&h, i, j, z)?;
                    report.gadget_cases += 1;
                    if not_convex != expected {
                        report.gadget_disagreements += 1;
                        note(&mut report, format!(
                            "gadget: H {:?} (i,j,z)=({i},{j},{z}): not convex {not_convex}, chordless path {expected}",
                            h.edges()
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}
