//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exits nonzero on failure only when `DIGISURF_ACCEPTANCE_STRICT=1`.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use digisurf::cover::{generate_aligned_grid, grid_disk_nerve, verify_lcl, Axiom, Cover, CoverCell, GridSquare, PolygonWord, Pt};
use digisurf::cover::geometry::{q, rect};
use digisurf::manifold::{
    self, canonical_surface, compress, compress_with, contract_pair, find_simple_pairs, manifold_dimension, minimal_2_sphere,
    CompressionTrace, PairOrder, Surface,
};
use digisurf::{zero_sphere, Contractibility, DigitalGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn digisurf(args: &[&str], input: &str) -> Result<String, String> {
    let mut child = Command::new(env!("CARGO_BIN_EXE_digisurf"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    child.stdin.take().unwrap().write_all(input.as_bytes()).map_err(|e| e.to_string())?;
    let out = child.wait_with_output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("digisurf {} exited {:?}: {}", args.join(" "), out.status.code(), String::from_utf8_lossy(&out.stderr).trim()));
    }
    Ok(String::from_utf8(out.stdout).unwrap())
}

/// `gen | nerve | compress` through the binary.
fn pipeline(word: &str, rows: usize, cols: usize) -> Result<(DigitalGraph, DigitalGraph), String> {
    let (r, c) = (rows.to_string(), cols.to_string());
    let cover = digisurf(&["gen", "--word", word, "--rows", &r, "--cols", &c], "")?;
    let nerve = digisurf(&["nerve"], &cover)?;
    let compressed = digisurf(&["compress"], &nerve)?;
    let parse = |s: &str| DigitalGraph::from_json(s).map_err(|e| e.to_string());
    Ok((parse(&nerve)?, parse(&compressed)?))
}

fn pairwise_isomorphic(gs: &[DigitalGraph]) -> bool {
    gs.windows(2).all(|w| w[0].is_isomorphic(&w[1]))
}

fn every_edge_in_induced_square(m: &DigitalGraph) -> bool {
    m.edges().all(|(v, u)| {
        m.neighbors(v).unwrap().iter().any(|a| {
            a != u
                && !m.adjacent(a, u)
                && m.neighbors(u).unwrap().iter().any(|b| b != v && b != a && !m.adjacent(b, v) && m.adjacent(a, b))
        })
    })
}

/// Replays a compression, checking dimension, connectedness and χ after every step.
fn check_steps(initial: &DigitalGraph, trace: &CompressionTrace) -> Result<DigitalGraph, String> {
    let dim = manifold_dimension(initial).ok_or("input is not a digital manifold")?;
    let chi = initial.euler_characteristic().map_err(|e| e.to_string())?;
    let mut cur = initial.clone();
    for (k, s) in trace.steps.iter().enumerate() {
        cur = contract_pair(&cur, &s.x, &s.y, &s.z).map_err(|e| e.to_string())?;
        if manifold_dimension(&cur) != Some(dim) || !cur.is_connected() || cur.euler_characteristic().unwrap() != chi {
            return Err(format!("step {k} ({} {}) breaks an invariant", s.x, s.y));
        }
    }
    Ok(cur)
}

/// Compression inputs and outputs of criteria 1 to 4.
fn compression_runs() -> Result<Vec<(String, DigitalGraph, DigitalGraph)>, String> {
    let mut runs = Vec::new();
    let ico = canonical_surface(Surface::Icosahedron).map_err(|e| e.to_string())?;
    let (c, _) = compress(&ico).map_err(|e| e.to_string())?;
    runs.push(("icosahedron".to_string(), ico, c));
    for (word, sizes) in [
        ("torus", &[(4, 4), (4, 8), (6, 6), (8, 8)][..]),
        ("projective", &[(4, 4), (6, 6)][..]),
        ("klein", &[(4, 4)][..]),
    ] {
        for &(r, c) in sizes {
            let (nerve, compressed) = pipeline(word, r, c)?;
            runs.push((format!("{word} {r}x{c}"), nerve, compressed));
        }
    }
    Ok(runs)
}

fn criterion_1() -> Outcome {
    let (c, _) = compress(&canonical_surface(Surface::Icosahedron).unwrap()).map_err(|e| e.to_string())?;
    if c.order() == 6 && c.is_isomorphic(&minimal_2_sphere()) {
        Ok("icosahedron compresses to the 6-point octahedron".into())
    } else {
        Err(format!("compressed icosahedron has {} points", c.order()))
    }
}

fn weights(word: &str, sizes: &[(usize, usize)], expected: usize) -> Outcome {
    let mut out = Vec::new();
    let mut detail = Vec::new();
    for &(r, c) in sizes {
        let (_, g) = pipeline(word, r, c)?;
        detail.push(format!("{r}x{c}:{}", g.order()));
        out.push(g);
    }
    let detail = detail.join(" ");
    if out.iter().any(|g| g.order() != expected) {
        return Err(format!("weights {detail}, expected {expected} everywhere"));
    }
    if !pairwise_isomorphic(&out) {
        return Err(format!("weights {detail} but compressed graphs are not pairwise isomorphic"));
    }
    Ok(format!("weights {detail}, pairwise isomorphic"))
}

fn criterion_2() -> Outcome {
    weights("torus", &[(4, 4), (4, 8), (6, 6), (8, 8)], 16)
}

fn criterion_3() -> Outcome {
    weights("projective", &[(4, 4), (6, 6)], 11)
}

fn criterion_4() -> Outcome {
    let (_, g) = pipeline("klein", 4, 4)?;
    let pairs = find_simple_pairs(&g, 2).map_err(|e| e.to_string())?;
    let chi = g.euler_characteristic().map_err(|e| e.to_string())?;
    if manifold_dimension(&g) == Some(2) && pairs.is_empty() && chi == 0 {
        Ok(format!("compressed Klein bottle: {} points, χ=0, no simple pairs", g.order()))
    } else {
        Err(format!("{} points, χ={chi}, {} simple pairs left", g.order(), pairs.len()))
    }
}

fn criterion_5() -> Outcome {
    let mut classes: BTreeMap<_, DigitalGraph> = BTreeMap::new();
    for n in 1..=4usize {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let mut g = DigitalGraph::discrete(names.clone()).unwrap();
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g.insert_edge(&names[i], &names[j]).unwrap();
                }
            }
            if g.is_connected() {
                classes.entry(g.canonical_key()).or_insert(g);
            }
        }
    }
    let c4 = DigitalGraph::cycle(&["a", "b", "c", "d"]).unwrap();
    let engine = Contractibility::default();
    for g in classes.values() {
        let contractible = engine.is_contractible(g).map_err(|e| e.to_string())?;
        if contractible == g.is_isomorphic(&c4) {
            return Err(format!("wrong verdict on {}", g.to_json().trim()));
        }
    }
    Ok(format!("{} connected classes, only C4 non-contractible", classes.len()))
}

fn is_simply_connected(mask: &BTreeSet<GridSquare>) -> bool {
    let four = |(x, y): GridSquare| [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)];
    let component = |start: GridSquare, inside: &dyn Fn(GridSquare) -> bool| {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            for t in four(s) {
                if inside(t) && seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        seen.len()
    };
    let first = *mask.iter().next().unwrap();
    if component(first, &|s| mask.contains(&s)) != mask.len() {
        return false;
    }
    for &(x, y) in mask {
        for (dx, dy) in [(1, 1), (1, -1)] {
            let (a, b, c) = ((x + dx, y + dy), (x + dx, y), (x, y + dy));
            if mask.contains(&a) && !mask.contains(&b) && !mask.contains(&c) {
                return false;
            }
        }
    }
    let (x0, x1) = (mask.iter().map(|s| s.0).min().unwrap() - 1, mask.iter().map(|s| s.0).max().unwrap() + 1);
    let (y0, y1) = (mask.iter().map(|s| s.1).min().unwrap() - 1, mask.iter().map(|s| s.1).max().unwrap() + 1);
    let outside = |s: GridSquare| (x0..=x1).contains(&s.0) && (y0..=y1).contains(&s.1) && !mask.contains(&s);
    let total = ((x1 - x0 + 1) * (y1 - y0 + 1)) as usize - mask.len();
    component((x0, y0), &outside) == total
}

fn random_disk(rng: &mut ChaCha8Rng) -> BTreeSet<GridSquare> {
    let target = rng.gen_range(5..=40);
    let mut mask = BTreeSet::from([(0i64, 0i64)]);
    while mask.len() < target {
        let &(x, y) = mask.iter().nth(rng.gen_range(0..mask.len())).unwrap();
        let next = [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)][rng.gen_range(0..4)];
        if mask.contains(&next) {
            continue;
        }
        mask.insert(next);
        if !is_simply_connected(&mask) {
            mask.remove(&next);
        }
    }
    mask
}

fn criterion_6() -> Outcome {
    let engine = Contractibility::with_limit(64);
    let mut fig8 = BTreeSet::new();
    for (y, (lo, hi)) in [(1, 3), (0, 4), (0, 4), (0, 4), (1, 3)].into_iter().enumerate() {
        for x in lo..=hi {
            fig8.insert((x as i64, y as i64));
        }
    }
    assert_eq!(fig8.len(), 21);
    let mut masks = vec![fig8];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    masks.extend((0..50).map(|_| random_disk(&mut rng)));
    for (k, mask) in masks.iter().enumerate() {
        if !is_simply_connected(mask) {
            return Err(format!("mask {k} is not a disk"));
        }
        let g = grid_disk_nerve(mask).map_err(|e| e.to_string())?;
        if !engine.is_contractible(&g).map_err(|e| e.to_string())? {
            return Err(format!("nerve of mask {k} ({} squares) is not contractible", mask.len()));
        }
    }
    Ok(format!("{} disk nerves contractible", masks.len()))
}

fn criterion_7() -> Outcome {
    let engine = Contractibility::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let err = |e: digisurf::HomotopyError| e.to_string();
    let mut contractible_seen = 0;
    for case in 0..500 {
        let n = rng.gen_range(1..=7);
        let p: f64 = rng.gen_range(0.2..0.9);
        let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let mut g = DigitalGraph::discrete(names.clone()).unwrap();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    g.insert_edge(&names[i], &names[j]).unwrap();
                }
            }
        }
        let cone = DigitalGraph::complete(&["k0"]).unwrap().join(&g).unwrap();
        if !engine.is_contractible(&cone).map_err(err)? {
            return Err(format!("case {case}: K1 join not contractible"));
        }
        let k = rng.gen_range(1..=3);
        let clique: Vec<String> = (0..k).map(|i| format!("k{i}")).collect();
        if !engine.is_contractible(&DigitalGraph::complete(&clique).unwrap().join(&g).unwrap()).map_err(err)? {
            return Err(format!("case {case}: K{k} join not contractible"));
        }
        if engine.is_contractible(&g).map_err(err)? {
            contractible_seen += 1;
            let suspension = zero_sphere("s0", "s1").unwrap().join(&g).unwrap();
            if !engine.is_contractible(&suspension).map_err(err)? {
                return Err(format!("case {case}: suspension of a contractible graph not contractible"));
            }
            if n > 1 && engine.simple_points(&g).map_err(err)?.len() < 2 {
                return Err(format!("case {case}: contractible graph with fewer than 2 simple points"));
            }
        }
    }
    Ok(format!("500 graphs, {contractible_seen} contractible, no violations"))
}

fn criterion_8(runs: &[(String, DigitalGraph, DigitalGraph)]) -> Outcome {
    for (name, initial, _) in runs {
        let (_, trace) = compress(initial).map_err(|e| e.to_string())?;
        let last = check_steps(initial, &trace).map_err(|e| format!("{name}: {e}"))?;
        let chi = last.euler_characteristic().unwrap();
        let want = match name.split(' ').next().unwrap() {
            "torus" | "klein" => 0,
            "projective" => 1,
            _ => 2,
        };
        if chi != want {
            return Err(format!("{name}: compressed χ={chi}, expected {want}"));
        }
    }
    if minimal_2_sphere().euler_characteristic().unwrap() != 2 {
        return Err("minimal sphere χ != 2".into());
    }
    Ok(format!("{} compression runs, every step invariant", runs.len()))
}

fn criterion_9(runs: &[(String, DigitalGraph, DigitalGraph)]) -> Outcome {
    for (name, _, c) in runs {
        if !every_edge_in_induced_square(c) {
            return Err(format!("{name}: an edge lies in no induced 4-cycle"));
        }
    }
    Ok(format!("{} compressed manifolds checked", runs.len()))
}

fn criterion_10() -> Outcome {
    let (nerve, _) = pipeline("torus", 4, 8)?;
    let mut results = Vec::new();
    for seed in 0..20u64 {
        let (c, _) = compress_with(&nerve, PairOrder::Seeded(seed)).map_err(|e| e.to_string())?;
        results.push(c);
    }
    let orders: Vec<usize> = results.iter().map(DigitalGraph::order).collect();
    if orders.iter().any(|&o| o != 16) {
        return Err(format!("research finding: seeded orders stop at {orders:?}"));
    }
    if !pairwise_isomorphic(&results) {
        return Err("research finding: 16-point results are not pairwise isomorphic".into());
    }
    Ok("20 seeds, all 16 points, pairwise isomorphic".into())
}

fn criterion_11() -> Outcome {
    let mut found: BTreeMap<usize, BTreeSet<_>> = BTreeMap::new();
    for n in 1..=6usize {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let mut g = DigitalGraph::discrete(names.clone()).unwrap();
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g.insert_edge(&names[i], &names[j]).unwrap();
                }
            }
            if manifold::manifold_dimension(&g) == Some(2) {
                found.entry(n).or_default().insert(g.canonical_key());
            }
        }
    }
    let small: usize = (1..=5).map(|n| found.get(&n).map_or(0, BTreeSet::len)).sum();
    let six = found.get(&6).cloned().unwrap_or_default();
    if small == 0 && six.len() == 1 && six.contains(&minimal_2_sphere().canonical_key()) {
        Ok("none on 5 or fewer points, only the octahedron on 6".into())
    } else {
        Err(format!("{small} on 5 or fewer points, {} on 6", six.len()))
    }
}

fn criterion_12() -> Outcome {
    let grid = verify_lcl(&generate_aligned_grid(PolygonWord::Torus, 4, 4).map_err(|e| e.to_string())?);
    if grid.count(Axiom::LlA) == 0 {
        return Err("aligned grid passes LL-a".into());
    }
    let r = |x0, y0, x1, y1| rect(&q(x0), &q(y0), &q(x1), &q(y1));
    let l_shape = [(1, 2), (2, 2), (2, 3), (3, 3), (3, 4), (1, 4)].iter().map(|&(x, y)| Pt::int(x, y)).collect();
    let ring = Cover::new(
        PolygonWord::Torus,
        5,
        5,
        vec![
            CoverCell::new("a", vec![r(1, 1, 4, 2)]),
            CoverCell::new("b", vec![r(3, 2, 4, 4)]),
            CoverCell::new("c", vec![l_shape]),
        ],
    )
    .map_err(|e| e.to_string())?;
    let helly = verify_lcl(&ring);
    if helly.count(Axiom::Lc) == 0 {
        return Err("ring of three passes LC".into());
    }
    Ok(format!(
        "aligned grid: {} LL-a violations; ring of three: {} LC violation(s)",
        grid.count(Axiom::LlA),
        helly.count(Axiom::Lc)
    ))
}

fn main() {
    let shared = compression_runs();
    let runs = |f: fn(&[(String, DigitalGraph, DigitalGraph)]) -> Outcome| match &shared {
        Ok(r) => f(r),
        Err(e) => Err(e.clone()),
    };
    let criteria: Vec<Criterion> = vec![
        ("sphere weight", Duration::from_secs(1), Box::new(criterion_1)),
        ("torus weight", Duration::from_secs(30), Box::new(criterion_2)),
        ("projective plane weight", Duration::from_secs(30), Box::new(criterion_3)),
        ("Klein bottle compression", Duration::from_secs(30), Box::new(criterion_4)),
        ("contractibility on 4 or fewer points", Duration::from_secs(1), Box::new(criterion_5)),
        ("disk nerves contractible", Duration::from_secs(60), Box::new(criterion_6)),
        ("join and simple point properties", Duration::from_secs(120), Box::new(criterion_7)),
        ("compression invariants", Duration::from_secs(60), Box::new(move || runs(criterion_8))),
        ("compressed edges in induced 4-cycles", Duration::from_secs(60), Box::new(move || runs(criterion_9))),
        ("order independence", Duration::from_secs(60), Box::new(criterion_10)),
        ("minimality sweep", Duration::from_secs(300), Box::new(criterion_11)),
        ("negative LCL covers", Duration::from_secs(10), Box::new(criterion_12)),
    ];
    let mut failed = 0;
    for (k, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = f();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > *budget {
            outcome = Err(format!("took {elapsed:.2?}, budget {budget:?}"));
        }
        match outcome {
            Ok(msg) => println!("PASS  {:>2}. {name}: {msg} ({elapsed:.2?})", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {msg} ({elapsed:.2?})", k + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 && std::env::var("DIGISURF_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
