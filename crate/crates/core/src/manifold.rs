//! Digital 1- and 2-manifolds, simple pairs and compression.
//!
//! A connected graph is a digital 1-manifold when every rim is a digital
//! 0-sphere (two non-adjacent points) and a digital 2-manifold when every rim
//! is a digital 1-sphere. Finite digital 1-spheres are exactly the chordless
//! cycles on four or more points; both characterisations are implemented and
//! checked against each other.
//!
//! Compression repeatedly contracts simple pairs `{x, y}` (adjacent points
//! whose joint ball minus the pair is a sphere one dimension lower) into a
//! fresh point adjacent to everything `x` or `y` was adjacent to. The number
//! of points left is the digital weight.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ManifoldError;
use crate::graph::{zero_sphere, DigitalGraph};

/// How a point's rim looks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RimKind {
    ZeroSphere,
    OneSphere,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SphereVerdict {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RimWitness {
    pub point: String,
    pub rim: RimKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldReport {
    /// 0 for `S⁰` itself, 1 or 2 for digital manifolds, `None` otherwise.
    pub dimension: Option<u8>,
    /// Filled whenever `dimension` is.
    pub is_sphere: Option<SphereVerdict>,
    /// Point count after compression, for 1- and 2-manifolds.
    pub compressed_order: Option<usize>,
    pub witnesses: Vec<RimWitness>,
}

/// One contraction: `x` and `y` replaced by `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contraction {
    pub x: String,
    pub y: String,
    pub z: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressionTrace {
    pub initial: usize,
    #[serde(rename = "final")]
    pub final_: usize,
    pub steps: Vec<Contraction>,
}

impl CompressionTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serializes")
    }

    /// Re-applies every contraction to `m`, checking each pair is simple.
    pub fn replay(&self, m: &DigitalGraph) -> Result<DigitalGraph, ManifoldError> {
        let mut cur = m.clone();
        for step in &self.steps {
            cur = contract_pair(&cur, &step.x, &step.y, &step.z)?;
        }
        Ok(cur)
    }
}

/// Order in which simple pairs are contracted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairOrder {
    /// Lexicographically smallest simple pair at every step.
    #[default]
    Lexicographic,
    /// Uniformly random simple pair, from a seeded generator.
    Seeded(u64),
}

/// `S⁰`: exactly two points and no edge.
pub fn is_digital_0_sphere(g: &DigitalGraph) -> bool {
    g.order() == 2 && g.size() == 0
}

/// Rim-based test: connected, every rim is `S⁰`.
fn every_rim_is_zero_sphere(g: &DigitalGraph) -> bool {
    !g.is_empty() && g.is_connected() && g.points().all(|v| is_digital_0_sphere(&g.rim(v).expect("own point")))
}

/// Connected, 2-regular and at least four points.
pub fn is_chordless_cycle(g: &DigitalGraph) -> bool {
    g.order() >= 4 && g.is_connected() && g.points().all(|v| g.degree(v) == Ok(2))
}

/// Digital 1-sphere test. Finite digital 1-manifolds are 1-spheres, so this
/// is the rim definition; the chordless-cycle form must agree.
pub fn is_digital_1_sphere(g: &DigitalGraph) -> bool {
    let by_rims = every_rim_is_zero_sphere(g);
    debug_assert_eq!(by_rims, is_chordless_cycle(g), "1-sphere characterisations disagree");
    by_rims
}

pub fn rim_kind(g: &DigitalGraph, v: &str) -> Result<RimKind, ManifoldError> {
    let rim = g.rim(v)?;
    Ok(if is_digital_0_sphere(&rim) {
        RimKind::ZeroSphere
    } else if is_digital_1_sphere(&rim) {
        RimKind::OneSphere
    } else {
        RimKind::Other
    })
}

/// Dimension of `g` as a digital manifold, without the sphere analysis.
pub fn manifold_dimension(g: &DigitalGraph) -> Option<u8> {
    if is_digital_0_sphere(g) {
        return Some(0);
    }
    if g.is_empty() || !g.is_connected() {
        return None;
    }
    let kinds: BTreeSet<RimKind> = g.points().map(|v| rim_kind(g, v).expect("own point")).collect();
    match kinds.iter().collect::<Vec<_>>().as_slice() {
        [RimKind::ZeroSphere] => Some(1),
        [RimKind::OneSphere] => Some(2),
        _ => None,
    }
}

impl PartialOrd for RimKind {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RimKind {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (*self as u8).cmp(&(*other as u8))
    }
}

/// Full classification: dimension, per-point rim verdicts and, for
/// manifolds, whether the graph is a digital sphere.
///
/// A 2-manifold is a sphere when it compresses to the octahedron; when it
/// compresses to anything else with Euler characteristic other than 2 it is
/// not; the remaining case is reported as unknown.
pub fn classify_manifold(g: &DigitalGraph) -> ManifoldReport {
    let witnesses = g
        .points()
        .map(|v| RimWitness {
            point: v.to_string(),
            rim: rim_kind(g, v).expect("own point"),
        })
        .collect();
    let dimension = manifold_dimension(g);
    let (is_sphere, compressed_order) = match dimension {
        Some(0) => (Some(SphereVerdict::Yes), None),
        Some(1) => {
            let (c, _) = compress(g).expect("1-manifold");
            (Some(SphereVerdict::Yes), Some(c.order()))
        }
        Some(2) => {
            let (c, _) = compress(g).expect("2-manifold");
            let verdict = if c.is_isomorphic(&minimal_2_sphere()) {
                SphereVerdict::Yes
            } else {
                match c.euler_characteristic() {
                    Ok(2) | Err(_) => SphereVerdict::Unknown,
                    Ok(_) => SphereVerdict::No,
                }
            };
            (Some(verdict), Some(c.order()))
        }
        _ => (None, None),
    };
    ManifoldReport {
        dimension,
        is_sphere,
        compressed_order,
        witnesses,
    }
}

fn require_dimension(m: &DigitalGraph, n: u8) -> Result<(), ManifoldError> {
    if manifold_dimension(m) == Some(n) {
        Ok(())
    } else {
        Err(ManifoldError::NotManifold(n))
    }
}

fn surface_or_curve(m: &DigitalGraph) -> Result<u8, ManifoldError> {
    match manifold_dimension(m) {
        Some(d @ (1 | 2)) => Ok(d),
        _ => Err(ManifoldError::NotSurfaceOrCurve),
    }
}

/// All simple pairs of the digital `n`-manifold `m`, as sorted `(x, y)` with
/// `x < y`, in sorted order.
pub fn find_simple_pairs(m: &DigitalGraph, n: u8) -> Result<Vec<(String, String)>, ManifoldError> {
    require_dimension(m, n)?;
    let work = Work::new(m);
    let mut out = Vec::new();
    for (x, y) in m.edges() {
        if work.is_simple_pair(work.index[x], work.index[y], n) {
            out.push((x.to_string(), y.to_string()));
        }
    }
    Ok(out)
}

/// Contracts the simple pair `{x, y}` of `m` into the new point `z`.
pub fn contract_pair(m: &DigitalGraph, x: &str, y: &str, z: &str) -> Result<DigitalGraph, ManifoldError> {
    let dim = surface_or_curve(m)?;
    if !m.contains(x) || !m.contains(y) {
        let missing = if m.contains(x) { y } else { x };
        return Err(crate::error::GraphError::UnknownPoint(missing.to_string()).into());
    }
    if m.contains(z) && z != x && z != y {
        return Err(crate::error::GraphError::DuplicatePoint(z.to_string()).into());
    }
    let work = Work::new(m);
    if x == y || !m.adjacent(x, y) || !work.is_simple_pair(work.index[x], work.index[y], dim) {
        return Err(ManifoldError::NotSimplePair(x.to_string(), y.to_string()));
    }
    let nbrs: BTreeSet<&str> = m
        .neighbors(x)?
        .iter()
        .chain(m.neighbors(y)?)
        .map(String::as_str)
        .filter(|&p| p != x && p != y)
        .collect();
    let mut out = m.delete_points([x, y])?;
    out.insert_point(z)?;
    for p in nbrs {
        out.insert_edge(z, p)?;
    }
    Ok(out)
}

/// Compresses with the default (lexicographic) pair order.
pub fn compress(m: &DigitalGraph) -> Result<(DigitalGraph, CompressionTrace), ManifoldError> {
    compress_with(m, PairOrder::Lexicographic)
}

/// Contracts simple pairs until none is left. New points are named `z<k>`,
/// `k` being the step index, suffixed when that name is taken.
pub fn compress_with(m: &DigitalGraph, order: PairOrder) -> Result<(DigitalGraph, CompressionTrace), ManifoldError> {
    let dim = surface_or_curve(m)?;
    let mut work = Work::new(m);
    let mut rng = match order {
        PairOrder::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        PairOrder::Lexicographic => None,
    };
    let mut pairs: BTreeSet<(String, String)> = BTreeSet::new();
    for x in work.alive() {
        for &y in &work.adj[x] {
            if work.names[x] < work.names[y] && work.is_simple_pair(x, y, dim) {
                pairs.insert((work.names[x].clone(), work.names[y].clone()));
            }
        }
    }
    let mut steps = Vec::new();
    while !pairs.is_empty() {
        let pick = match rng.as_mut() {
            None => pairs.iter().next().cloned(),
            Some(r) => pairs.iter().nth(r.gen_range(0..pairs.len())).cloned(),
        }
        .expect("non-empty");
        let (xn, yn) = pick;
        let (x, y) = (work.index[&xn], work.index[&yn]);
        let zname = work.fresh(&format!("z{}", steps.len()));
        pairs.retain(|(a, b)| a != &xn && a != &yn && b != &xn && b != &yn);
        let z = work.contract(x, y, zname.clone());
        // Pairs whose status can change have an endpoint in the closed
        // neighbourhood of z.
        let mut touched: Vec<usize> = work.adj[z].iter().copied().collect();
        touched.push(z);
        for &a in &touched {
            for &b in &work.adj[a] {
                let (na, nb) = (&work.names[a], &work.names[b]);
                let key = if na < nb { (na.clone(), nb.clone()) } else { (nb.clone(), na.clone()) };
                if work.is_simple_pair(a, b, dim) {
                    pairs.insert(key);
                } else {
                    pairs.remove(&key);
                }
            }
        }
        steps.push(Contraction { x: xn, y: yn, z: zname });
    }
    let out = work.into_graph();
    let trace = CompressionTrace {
        initial: m.order(),
        final_: out.order(),
        steps,
    };
    Ok((out, trace))
}

/// Number of points of the compressed form.
pub fn digital_weight(m: &DigitalGraph) -> Result<usize, ManifoldError> {
    Ok(compress(m)?.0.order())
}

/// True iff both 2-manifolds compress to isomorphic graphs.
pub fn same_compressed_class(m: &DigitalGraph, n: &DigitalGraph) -> Result<bool, ManifoldError> {
    require_dimension(m, 2)?;
    require_dimension(n, 2)?;
    Ok(compress(m)?.0.is_isomorphic(&compress(n)?.0))
}

/// Index-based mutable graph used while compressing.
struct Work {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
    live: Vec<bool>,
}

impl Work {
    fn new(g: &DigitalGraph) -> Self {
        let (names, lists) = g.indexed();
        let names: Vec<String> = names.into_iter().map(str::to_string).collect();
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let adj = lists.into_iter().map(|l| l.into_iter().collect()).collect();
        let live = vec![true; names.len()];
        Work { names, index, adj, live }
    }

    fn alive(&self) -> Vec<usize> {
        (0..self.names.len()).filter(|&i| self.live[i]).collect()
    }

    fn fresh(&self, base: &str) -> String {
        if !self.index.contains_key(base) {
            return base.to_string();
        }
        (1..).map(|i| format!("{base}_{i}")).find(|c| !self.index.contains_key(c)).expect("unbounded")
    }

    /// `(U(x) ∪ U(y)) − {x, y}` is a digital `(n−1)`-sphere.
    fn is_simple_pair(&self, x: usize, y: usize, n: u8) -> bool {
        let s: BTreeSet<usize> = self.adj[x].union(&self.adj[y]).copied().filter(|&p| p != x && p != y).collect();
        match n {
            1 => {
                let v: Vec<usize> = s.into_iter().collect();
                v.len() == 2 && !self.adj[v[0]].contains(&v[1])
            }
            2 => {
                if s.len() < 4 {
                    return false;
                }
                if s.iter().any(|p| self.adj[*p].iter().filter(|q| s.contains(q)).count() != 2) {
                    return false;
                }
                let start = *s.iter().next().expect("non-empty");
                let mut seen = BTreeSet::from([start]);
                let mut queue = VecDeque::from([start]);
                while let Some(p) = queue.pop_front() {
                    for q in self.adj[p].iter().filter(|q| s.contains(q)) {
                        if seen.insert(*q) {
                            queue.push_back(*q);
                        }
                    }
                }
                seen.len() == s.len()
            }
            _ => false,
        }
    }

    fn contract(&mut self, x: usize, y: usize, name: String) -> usize {
        let z = self.names.len();
        let nbrs: BTreeSet<usize> = self.adj[x].union(&self.adj[y]).copied().filter(|&p| p != x && p != y).collect();
        for &p in &nbrs {
            self.adj[p].remove(&x);
            self.adj[p].remove(&y);
            self.adj[p].insert(z);
        }
        for gone in [x, y] {
            self.adj[gone].clear();
            self.live[gone] = false;
            self.index.remove(&self.names[gone]);
        }
        self.names.push(name.clone());
        self.index.insert(name, z);
        self.adj.push(nbrs);
        self.live.push(true);
        z
    }

    fn into_graph(self) -> DigitalGraph {
        let mut g = DigitalGraph::new();
        for i in self.alive() {
            g.insert_point(self.names[i].clone()).expect("unique names");
        }
        for i in self.alive() {
            for &j in &self.adj[i] {
                if self.names[i] < self.names[j] {
                    g.insert_edge(&self.names[i], &self.names[j]).expect("valid edge");
                }
            }
        }
        g
    }
}

/// Named graphs used as references and test inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    /// `S⁰ ⊕ S⁰`, the 4-cycle.
    Minimal1Sphere,
    /// `S⁰ ⊕ S⁰ ⊕ S⁰`, the octahedron.
    Minimal2Sphere,
    /// Icosahedron: 12 points, every rim a 5-cycle.
    Icosahedron,
    /// `Z_rows × Z_cols` with the eight king-move neighbours.
    KingTorus { rows: usize, cols: usize },
    /// `Z_rows × Z_cols` with the six triangular-lattice neighbours
    /// E, W, N, S, NE, SW.
    HexTorus { rows: usize, cols: usize },
}

impl std::str::FromStr for Surface {
    type Err = String;

    /// Parses `minimal-1-sphere`, `minimal-2-sphere`, `icosahedron`,
    /// `king-torus:RxC` and `hex-torus:RxC`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let torus = |size: &str| -> Result<(usize, usize), String> {
            let (r, c) = size.split_once('x').ok_or_else(|| format!("expected RxC, got `{size}`"))?;
            let parse = |t: &str| t.parse::<usize>().map_err(|e| format!("bad size `{t}`: {e}"));
            Ok((parse(r)?, parse(c)?))
        };
        match s.split_once(':') {
            None => match s {
                "minimal-1-sphere" => Ok(Surface::Minimal1Sphere),
                "minimal-2-sphere" => Ok(Surface::Minimal2Sphere),
                "icosahedron" => Ok(Surface::Icosahedron),
                other => Err(format!("unknown surface `{other}`")),
            },
            Some(("king-torus", size)) => torus(size).map(|(rows, cols)| Surface::KingTorus { rows, cols }),
            Some(("hex-torus", size)) => torus(size).map(|(rows, cols)| Surface::HexTorus { rows, cols }),
            Some((other, _)) => Err(format!("unknown surface `{other}`")),
        }
    }
}

pub fn minimal_1_sphere() -> DigitalGraph {
    zero_sphere("a", "b").and_then(|g| g.join(&zero_sphere("c", "d")?)).expect("disjoint names")
}

pub fn minimal_2_sphere() -> DigitalGraph {
    minimal_1_sphere().join(&zero_sphere("e", "f").expect("two points")).expect("disjoint names")
}

pub fn canonical_surface(surface: Surface) -> Result<DigitalGraph, ManifoldError> {
    match surface {
        Surface::Minimal1Sphere => Ok(minimal_1_sphere()),
        Surface::Minimal2Sphere => Ok(minimal_2_sphere()),
        Surface::Icosahedron => Ok(icosahedron()),
        Surface::KingTorus { rows, cols } => {
            torus(rows, cols, &[(0, 1), (1, 0), (1, 1), (1, -1)])
        }
        Surface::HexTorus { rows, cols } => torus(rows, cols, &[(0, 1), (1, 0), (1, 1)]),
    }
}

fn icosahedron() -> DigitalGraph {
    let mut g = DigitalGraph::new();
    let upper: Vec<String> = (0..5).map(|k| format!("u{k}")).collect();
    let lower: Vec<String> = (0..5).map(|k| format!("l{k}")).collect();
    for p in ["n", "s"].iter().map(|s| s.to_string()).chain(upper.clone()).chain(lower.clone()) {
        g.insert_point(p).expect("distinct");
    }
    for k in 0..5 {
        let next = (k + 1) % 5;
        for (u, v) in [
            ("n", upper[k].as_str()),
            ("s", lower[k].as_str()),
            (upper[k].as_str(), upper[next].as_str()),
            (lower[k].as_str(), lower[next].as_str()),
            (upper[k].as_str(), lower[k].as_str()),
            (upper[k].as_str(), lower[next].as_str()),
        ] {
            g.insert_edge(u, v).expect("fresh edge");
        }
    }
    g
}

/// Torus on `Z_rows × Z_cols`; each offset `(di, dj)` adds edges to
/// `(i + di, j + dj)` (and implicitly the opposite direction).
fn torus(rows: usize, cols: usize, offsets: &[(i64, i64)]) -> Result<DigitalGraph, ManifoldError> {
    if rows < 4 || cols < 4 {
        return Err(ManifoldError::TorusTooSmall { rows, cols });
    }
    let name = |i: usize, j: usize| format!("p{i}_{j}");
    let mut g = DigitalGraph::new();
    for i in 0..rows {
        for j in 0..cols {
            g.insert_point(name(i, j)).expect("distinct");
        }
    }
    for i in 0..rows {
        for j in 0..cols {
            for &(di, dj) in offsets {
                let ti = (i as i64 + di).rem_euclid(rows as i64) as usize;
                let tj = (j as i64 + dj).rem_euclid(cols as i64) as usize;
                g.insert_edge(&name(i, j), &name(ti, tj)).expect("fresh edge");
            }
        }
    }
    Ok(g)
}
