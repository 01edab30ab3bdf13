//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::{BTreeSet, VecDeque};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pathconv::engine::{Engine, Strategy};
use pathconv::graph::Graph;
use pathconv::oracle::{
    all_connected_graphs, all_simple_paths, build_mcs_gadget, chordless_path_through,
    is_induced, named_graphs, random_connected_graph, random_subset, random_tuple, Oracle,
    ORACLE_INTERVAL_CAP,
};
use pathconv::solvers::{convexity_number, hull_number, interval_number};
use pathconv::spec::{parse_spec, resolve_bounds, ConvexitySpec, LITERATURE_PRESETS};
use pathconv::vset::VertexSet;

const MIN_ORACLE_INSTANCES: usize = 300;
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(5 * 60);
const RANDOM_TUPLES: usize = 20;
const SUBSETS_PER_SPEC: usize = 3;
const AXIOM_PAIRS: usize = 50;
const HULL_SUBSETS: usize = 5;
const HULL_MAX_N: usize = 8;
const SOLVER_MAX_N: usize = 8;
const GADGET_RANDOM_GRAPHS: usize = 100;
const GADGET_MAX_N: usize = 6;
const GADGET_TIME_LIMIT: Duration = Duration::from_secs(10 * 60);
const DETERMINISM_RUNS: usize = 3;

struct Instance {
    graph: Graph,
    specs: Vec<ConvexitySpec>,
}

fn corpus(seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let presets: Vec<ConvexitySpec> =
        LITERATURE_PRESETS.iter().map(|t| parse_spec(t).unwrap()).collect();
    let mut out = Vec::new();
    for n in 4..=9 {
        for p in [0.2, 0.5, 0.8] {
            let graph = random_connected_graph(n, p, rng.gen());
            let mut specs = presets.clone();
            specs.extend((0..RANDOM_TUPLES).map(|_| random_tuple(&mut rng)));
            out.push(Instance { graph, specs });
        }
    }
    out
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn bfs(g: &Graph, s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; g.n() + 1];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        for &y in g.neighbors(x) {
            if d[y] == usize::MAX {
                d[y] = d[x] + 1;
                q.push_back(y);
            }
        }
    }
    d
}

fn geodesic_reference(g: &Graph, s: &VertexSet) -> VertexSet {
    let dist: Vec<Vec<usize>> = (0..=g.n()).map(|v| if v == 0 { vec![] } else { bfs(g, v) }).collect();
    let mut out = s.clone();
    let members = s.to_vec();
    for z in 1..=g.n() {
        for &u in &members {
            for &v in &members {
                if u < v && dist[u][z] + dist[z][v] == dist[u][v] {
                    out.insert(z);
                }
            }
        }
    }
    out
}

/// `z` joins when it has two neighbours in `S` (non-adjacent ones if `star`).
fn length_two_reference(g: &Graph, s: &VertexSet, star: bool) -> VertexSet {
    let mut out = s.clone();
    for z in 1..=g.n() {
        let nb: Vec<usize> = g.neighbors(z).iter().copied().filter(|&x| s.contains(x)).collect();
        let hit = nb.iter().enumerate().any(|(k, &u)| {
            nb[k + 1..].iter().any(|&v| !star || !g.adjacent(u, v))
        });
        if hit {
            out.insert(z);
        }
    }
    out
}

fn criterion_1(corpus: &[Instance], seed: u64) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = 0;
    let mut bad = Vec::new();
    for inst in corpus {
        let g = &inst.graph;
        for spec in &inst.specs {
            let rb = resolve_bounds(spec, g).unwrap();
            let oracle = Oracle::new(g, &rb, ORACLE_INTERVAL_CAP).unwrap();
            let auto = Engine::new(g, &rb).unwrap();
            let generic = Engine::with_strategy(g, &rb, Strategy::Generic).unwrap();
            for _ in 0..SUBSETS_PER_SPEC {
                let s = random_subset(&mut rng, g.n());
                let want = oracle.interval(&s);
                instances += 1;
                for e in [&auto, &generic] {
                    let got = e.interval(&s).unwrap().members;
                    if got != want {
                        bad.push(format!("{spec} on {:?}, S={s}: {got} vs {want}", g.edges()));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        instances >= MIN_ORACLE_INSTANCES && bad.is_empty() && elapsed < ORACLE_TIME_LIMIT,
        format!(
            "{instances} instances, {} disagreements, {:.1}s{}",
            bad.len(),
            elapsed.as_secs_f64(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

fn criterion_2(corpus: &[Instance], seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let geodesic = parse_spec("abcd:sigma,sigma,1,1").unwrap();
    let induced = parse_spec("abcd:2,nminus,1,1").unwrap();
    let p3 = parse_spec("abcd:2,2,1,2").unwrap();
    let p3star = parse_spec("abcd:2,2,1,1").unwrap();
    let mut checks = 0;
    let mut bad = Vec::new();
    for inst in corpus {
        let g = &inst.graph;
        let n = g.n();
        let rb_geo = resolve_bounds(&geodesic, g).unwrap();
        let rb_ind = resolve_bounds(&induced, g).unwrap();
        let rb_p3 = resolve_bounds(&p3, g).unwrap();
        let rb_p3s = resolve_bounds(&p3star, g).unwrap();
        for strategy in [Strategy::Auto, Strategy::Generic] {
            let e_geo = Engine::with_strategy(g, &rb_geo, strategy).unwrap();
            let e_ind = Engine::with_strategy(g, &rb_ind, strategy).unwrap();
            let e_p3 = Engine::with_strategy(g, &rb_p3, strategy).unwrap();
            let e_p3s = Engine::with_strategy(g, &rb_p3s, strategy).unwrap();
            for _ in 0..inst.specs.len() * SUBSETS_PER_SPEC / 4 {
                let s = random_subset(&mut rng, n);
                for (name, got, want) in [
                    ("geodesic", e_geo.interval_members(&s).unwrap(), geodesic_reference(g, &s)),
                    ("p3", e_p3.interval_members(&s).unwrap(), length_two_reference(g, &s, false)),
                    ("p3*", e_p3s.interval_members(&s).unwrap(), length_two_reference(g, &s, true)),
                ] {
                    checks += 1;
                    if got != want {
                        bad.push(format!("{name} {strategy:?} on {:?}, S={s}: {got} vs {want}", g.edges()));
                    }
                }
            }
            for u in 1..=n {
                for v in u + 1..=n {
                    let got: BTreeSet<Vec<usize>> =
                        e_ind.paths(u, v).unwrap().map(|p| p.into_vertices()).collect();
                    let want: BTreeSet<Vec<usize>> = all_simple_paths(g, u, v)
                        .into_iter()
                        .filter(|p| p.len() >= 3 && is_induced(g, p))
                        .collect();
                    checks += 1;
                    if got != want {
                        bad.push(format!("induced family {strategy:?} on {:?}, {u}-{v}", g.edges()));
                    }
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{checks} checks, {} mismatches{}",
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

fn criterion_3(corpus: &[Instance], seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = 0;
    let mut bad = Vec::new();
    for inst in corpus {
        let g = &inst.graph;
        let n = g.n();
        for spec in &inst.specs {
            let rb = resolve_bounds(spec, g).unwrap();
            let e = Engine::new(g, &rb).unwrap();
            if !e.is_convex(&VertexSet::empty(n)).unwrap() {
                bad.push(format!("empty set not convex: {spec}"));
            }
            if !e.is_convex(&VertexSet::full(n)).unwrap() {
                bad.push(format!("V not convex: {spec}"));
            }
            for _ in 0..AXIOM_PAIRS {
                let a = e.hull(&random_subset(&mut rng, n)).unwrap().hull().clone();
                let b = e.hull(&random_subset(&mut rng, n)).unwrap().hull().clone();
                pairs += 1;
                let x = a.intersection(&b);
                if !e.is_convex(&x).unwrap() {
                    bad.push(format!("{spec} on {:?}: {a} & {b} = {x} not convex", g.edges()));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{pairs} intersections, {} violations{}",
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

fn criterion_4(corpus: &[Instance], seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    let mut bad = Vec::new();
    for inst in corpus.iter().filter(|i| i.graph.n() <= HULL_MAX_N) {
        let g = &inst.graph;
        let n = g.n();
        for spec in &inst.specs {
            let rb = resolve_bounds(spec, g).unwrap();
            let oracle = Oracle::new(g, &rb, ORACLE_INTERVAL_CAP).unwrap();
            let family = oracle.convex_sets();
            let e = Engine::new(g, &rb).unwrap();
            for _ in 0..HULL_SUBSETS {
                let s = random_subset(&mut rng, n);
                let trace = e.hull(&s).unwrap();
                let want = oracle.hull(&s, &family);
                checks += 1;
                if trace.hull() != &want || trace.steps() > n {
                    bad.push(format!(
                        "{spec} on {:?}, S={s}: {} in {} steps vs {want}",
                        g.edges(),
                        trace.hull(),
                        trace.steps()
                    ));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{checks} hulls, {} violations{}",
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

fn criterion_5(seed: u64) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hosts: Vec<(String, Graph)> = Vec::new();
    for n in 3..=5 {
        for (k, g) in all_connected_graphs(n).into_iter().enumerate() {
            hosts.push((format!("connected n={n} #{k}"), g));
        }
    }
    for k in 0..GADGET_RANDOM_GRAPHS {
        let n = rng.gen_range(3..=GADGET_MAX_N);
        let p = rng.gen_range(0.15..0.85);
        hosts.push((format!("random #{k}"), random_connected_graph(n, p, rng.gen())));
    }
    hosts.extend(named_graphs().into_iter().filter(|(_, g)| g.n() >= 3 && g.n() <= GADGET_MAX_N));
    let mut cases = 0;
    let mut positive = 0;
    let mut bad = Vec::new();
    for (name, h) in &hosts {
        let n = h.n();
        for i in 1..=n {
            for j in 1..=n {
                for z in 1..=n {
                    if i == j || i == z || j == z {
                        continue;
                    }
                    let inst = build_mcs_gadget(h, i, j, z).unwrap();
                    let rb = resolve_bounds(&inst.spec, &inst.graph).unwrap();
                    let not_convex = !Engine::new(&inst.graph, &rb).unwrap().is_convex(&inst.set).unwrap();
                    let want = chordless_path_through(h, i, j, z).unwrap();
                    cases += 1;
                    positive += usize::from(want);
                    if not_convex != want {
                        bad.push(format!("{name} {:?} ({i},{j},{z}): {not_convex} vs {want}", h.edges()));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < GADGET_TIME_LIMIT,
        format!(
            "{} hosts, {cases} triples ({positive} with a chordless path), {} disagreements, {:.1}s{}",
            hosts.len(),
            bad.len(),
            elapsed.as_secs_f64(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

fn criterion_6(corpus: &[Instance]) -> Outcome {
    let mut checks = 0;
    let mut bad = Vec::new();
    for inst in corpus.iter().filter(|i| i.graph.n() <= SOLVER_MAX_N) {
        let g = &inst.graph;
        for spec in &inst.specs {
            let rb = resolve_bounds(spec, g).unwrap();
            let (c, i, h) = Oracle::new(g, &rb, ORACLE_INTERVAL_CAP).unwrap().invariants();
            let got = (
                convexity_number(g, &rb).unwrap().value,
                interval_number(g, &rb).unwrap().value,
                hull_number(g, &rb).unwrap().value,
            );
            checks += 1;
            if got != (c, i, h) || got.2 > got.1 {
                bad.push(format!("{spec} on {:?}: {got:?} vs {:?}", g.edges(), (c, i, h)));
            }
        }
    }
    let geodesic = parse_spec("preset:geodesic").unwrap();
    let anchors = [
        ("K4", Graph::complete(4), (3, 4, 4)),
        ("P4", Graph::path(4), (3, 2, 2)),
        ("C4", Graph::cycle(4), (2, 2, 2)),
    ];
    for (name, g, (c, i, h)) in anchors {
        let rb = resolve_bounds(&geodesic, &g).unwrap();
        let got_c = convexity_number(&g, &rb).unwrap().value;
        let got_i = interval_number(&g, &rb).unwrap().value;
        let got_h = hull_number(&g, &rb).unwrap().value;
        checks += 1;
        if got_c != c || got_i != i || got_h != h {
            bad.push(format!("anchor {name}: c={got_c} i={got_i} h={got_h}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{checks} instances, {} mismatches{}",
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

fn criterion_7() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    std::fs::write(&graph, "6 8\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n1 4\n2 5\n").unwrap();
    let graph = graph.to_str().unwrap();
    let runs: [&[&str]; 6] = [
        &["interval", "-g", graph, "--spec", "preset:monophonic", "-S", "1,3", "--json", "--seed", "7"],
        &["convex", "-g", graph, "--spec", "abcd:2,4,1,3", "-S", "1,2", "--json", "--seed", "7"],
        &["hull", "-g", graph, "--spec", "preset:p3", "-S", "1,3", "--json", "--seed", "7"],
        &["hn", "-g", graph, "--spec", "preset:geodesic", "--json", "--seed", "7"],
        &["compare", "-g", graph, "--spec", "preset:geodesic", "--spec", "preset:total", "-S", "1,4", "--json"],
        &["selfcheck", "--cap", "5", "--json", "--seed", "7"],
    ];
    let mut bad = Vec::new();
    for args in runs {
        let outputs: Vec<Vec<u8>> = (0..DETERMINISM_RUNS)
            .map(|_| {
                Command::new(env!("CARGO_BIN_EXE_pathconv"))
                    .args(args)
                    .output()
                    .unwrap()
                    .stdout
            })
            .collect();
        if outputs[0].is_empty() || outputs.iter().any(|o| o != &outputs[0]) {
            bad.push(args[0].to_string());
        }
        if serde_json::from_slice::<serde_json::Value>(&outputs[0]).is_err() {
            bad.push(format!("{} (not JSON)", args[0]));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} commands x {DETERMINISM_RUNS} runs, differing: {bad:?}", runs.len()),
    )
}

type Criterion<'a> = (usize, &'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let seed = 0x5eed_2024;
    let corpus = corpus(seed);
    let criteria: Vec<Criterion> = vec![
        (1, "oracle equivalence", Box::new(|| criterion_1(&corpus, seed + 1))),
        (2, "preset semantics", Box::new(|| criterion_2(&corpus, seed + 2))),
        (3, "convexity-space axioms", Box::new(|| criterion_3(&corpus, seed + 3))),
        (4, "hull correctness", Box::new(|| criterion_4(&corpus, seed + 4))),
        (5, "gadget equivalence", Box::new(|| criterion_5(seed + 5))),
        (6, "solver cross-checks", Box::new(|| criterion_6(&corpus))),
        (7, "CLI determinism", Box::new(criterion_7)),
    ];
    let mut failed = 0;
    for (k, name, run) in &criteria {
        let start = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] criterion {k} ({name}): {} [{:.1}s]",
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
