//! Contractible graphs and contractible transformations.
//!
//! A graph is contractible when some sequence of simple-point deletions takes
//! it down to a single point, where a point is simple when its rim is itself
//! contractible. The recursion bottoms out because rims are strictly smaller.
//!
//! The search works on bit masks over the points of the input graph: every
//! graph visited, including every rim, is an induced subgraph of the input,
//! so one memo table keyed by mask covers the whole search. Two cheap
//! necessary conditions prune it: a contractible graph is connected and has
//! Euler characteristic 1.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::canon::CanonicalKey;
use crate::clique::euler_characteristic_mask;
use crate::error::{GraphError, HomotopyError};
use crate::graph::{DigitalGraph, EdgeEdit};

/// Default bound on the number of points handed to the exhaustive search.
pub const DEFAULT_POINT_LIMIT: usize = 20;
/// Largest bound the mask representation supports.
pub const MAX_POINT_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Contractible,
    NotContractible,
}

/// One deletion in a [`ReductionTrace`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ReductionStep {
    Point { id: String },
    Edge { ids: [String; 2] },
}

/// Witness of contractibility: simple deletions ending at a single point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub verdict: Verdict,
    pub steps: Vec<ReductionStep>,
    #[serde(skip)]
    pub start: Option<CanonicalKey>,
}

impl ReductionTrace {
    /// Replays the steps on `g`, checking each deletion is simple at its
    /// turn, and returns the final graph.
    pub fn replay(&self, engine: &Contractibility, g: &DigitalGraph) -> Result<DigitalGraph, HomotopyError> {
        let mut cur = g.clone();
        for step in &self.steps {
            cur = match step {
                ReductionStep::Point { id } => engine.delete_simple_point(&cur, id)?,
                ReductionStep::Edge { ids: [u, v] } => engine.delete_simple_edge(&cur, u, v)?,
            };
        }
        Ok(cur)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serializes")
    }
}

/// Contractibility search with a point limit and a shared result cache.
///
/// Cloning shares the cache. Lookups and inserts are internally locked, so
/// one engine can serve many threads.
#[derive(Clone, Debug)]
pub struct Contractibility {
    limit: usize,
    cache: Arc<RwLock<HashMap<CanonicalKey, bool>>>,
}

impl Default for Contractibility {
    fn default() -> Self {
        Self::with_limit(DEFAULT_POINT_LIMIT)
    }
}

impl Contractibility {
    /// Engine whose search accepts graphs of up to `limit` points.
    ///
    /// # Panics
    /// If `limit` exceeds [`MAX_POINT_LIMIT`].
    pub fn with_limit(limit: usize) -> Self {
        assert!(limit <= MAX_POINT_LIMIT, "point limit {limit} above {MAX_POINT_LIMIT}");
        Contractibility {
            limit,
            cache: Arc::default(),
        }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn cached_results(&self) -> usize {
        self.cache.read().len()
    }

    /// True iff `g` reduces to a single point by simple-point deletions.
    /// The empty graph is not contractible.
    pub fn is_contractible(&self, g: &DigitalGraph) -> Result<bool, HomotopyError> {
        match g.order() {
            0 => return Ok(false),
            1 => return Ok(true),
            n if n > self.limit => return Err(HomotopyError::ResourceLimit { points: n, limit: self.limit }),
            _ => {}
        }
        if !g.is_connected() {
            return Ok(false);
        }
        let key = g.canonical_key();
        if let Some(&hit) = self.cache.read().get(&key) {
            return Ok(hit);
        }
        let masks = Masks::new(g);
        let answer = Solver::new(&masks.adj).contractible(masks.full());
        self.cache.write().insert(key, answer);
        Ok(answer)
    }

    /// A replayable witness of contractibility, or a negative verdict with
    /// no steps. Ties are broken by lowest degree, then by point name.
    pub fn reduction_trace(&self, g: &DigitalGraph) -> Result<ReductionTrace, HomotopyError> {
        let n = g.order();
        if n > self.limit {
            return Err(HomotopyError::ResourceLimit { points: n, limit: self.limit });
        }
        let start = Some(g.canonical_key());
        let negative = ReductionTrace {
            verdict: Verdict::NotContractible,
            steps: Vec::new(),
            start: start.clone(),
        };
        if n == 0 {
            return Ok(negative);
        }
        let masks = Masks::new(g);
        let mut solver = Solver::new(&masks.adj);
        let mut s = masks.full();
        if !solver.contractible(s) {
            return Ok(negative);
        }
        let mut steps = Vec::new();
        while s.count_ones() > 1 {
            let v = solver.memo[&s].expect("contractible states record a deletion") as usize;
            steps.push(ReductionStep::Point { id: masks.names[v].to_string() });
            s &= !(1 << v);
        }
        Ok(ReductionTrace {
            verdict: Verdict::Contractible,
            steps,
            start,
        })
    }

    /// A point is simple when its rim is contractible.
    pub fn is_simple_point(&self, g: &DigitalGraph, v: &str) -> Result<bool, HomotopyError> {
        self.is_contractible(&g.rim(v)?)
    }

    /// An edge is simple when the joint rim of its endpoints is contractible.
    pub fn is_simple_edge(&self, g: &DigitalGraph, u: &str, v: &str) -> Result<bool, HomotopyError> {
        require_edge(g, u, v)?;
        self.is_contractible(&g.joint_rim(u, v)?)
    }

    /// Adds a new point adjacent exactly to `rim_set`, which must induce a
    /// contractible subgraph.
    pub fn attach_simple_point<'a, I>(&self, g: &DigitalGraph, name: &str, rim_set: I) -> Result<DigitalGraph, HomotopyError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        if g.contains(name) {
            return Err(GraphError::DuplicatePoint(name.to_string()).into());
        }
        let rim_set: Vec<&str> = rim_set.into_iter().collect();
        let rim = g.induced_subgraph(rim_set.iter().copied())?;
        if !self.is_contractible(&rim)? {
            return Err(HomotopyError::RimNotContractible(rim.points().map(str::to_string).collect()));
        }
        let mut out = g.clone();
        out.insert_point(name)?;
        for p in rim.points() {
            out.insert_edge(name, p)?;
        }
        Ok(out)
    }

    /// Adds the edge `{u, v}` between non-adjacent points whose joint rim is
    /// contractible.
    pub fn attach_simple_edge(&self, g: &DigitalGraph, u: &str, v: &str) -> Result<DigitalGraph, HomotopyError> {
        let added = g.edit_edge(u, v, EdgeEdit::Add)?;
        if !self.is_contractible(&g.joint_rim(u, v)?)? {
            return Err(HomotopyError::JointRimNotContractible(u.to_string(), v.to_string()));
        }
        Ok(added)
    }

    pub fn delete_simple_point(&self, g: &DigitalGraph, v: &str) -> Result<DigitalGraph, HomotopyError> {
        if !self.is_simple_point(g, v)? {
            return Err(HomotopyError::NotSimplePoint(v.to_string()));
        }
        Ok(g.delete_points([v])?)
    }

    pub fn delete_simple_edge(&self, g: &DigitalGraph, u: &str, v: &str) -> Result<DigitalGraph, HomotopyError> {
        if !self.is_simple_edge(g, u, v)? {
            return Err(HomotopyError::NotSimpleEdge(u.to_string(), v.to_string()));
        }
        Ok(g.edit_edge(u, v, EdgeEdit::Remove)?)
    }

    /// Simple points of `g` in sorted order.
    pub fn simple_points(&self, g: &DigitalGraph) -> Result<Vec<String>, HomotopyError> {
        let mut out = Vec::new();
        for v in g.points() {
            if self.is_simple_point(g, v)? {
                out.push(v.to_string());
            }
        }
        Ok(out)
    }
}

fn require_edge(g: &DigitalGraph, u: &str, v: &str) -> Result<(), GraphError> {
    g.neighbors(u)?;
    g.neighbors(v)?;
    if g.adjacent(u, v) {
        Ok(())
    } else {
        Err(GraphError::EdgeMissing(u.to_string(), v.to_string()))
    }
}

fn default_engine() -> &'static Contractibility {
    static ENGINE: OnceLock<Contractibility> = OnceLock::new();
    ENGINE.get_or_init(Contractibility::default)
}

/// [`Contractibility::is_contractible`] on the process-wide default engine.
pub fn is_contractible(g: &DigitalGraph) -> Result<bool, HomotopyError> {
    default_engine().is_contractible(g)
}

pub fn is_simple_point(g: &DigitalGraph, v: &str) -> Result<bool, HomotopyError> {
    default_engine().is_simple_point(g, v)
}

pub fn is_simple_edge(g: &DigitalGraph, u: &str, v: &str) -> Result<bool, HomotopyError> {
    default_engine().is_simple_edge(g, u, v)
}

pub fn reduction_trace(g: &DigitalGraph) -> Result<ReductionTrace, HomotopyError> {
    default_engine().reduction_trace(g)
}

pub fn attach_simple_point<'a, I>(g: &DigitalGraph, name: &str, rim_set: I) -> Result<DigitalGraph, HomotopyError>
where
    I: IntoIterator<Item = &'a str>,
{
    default_engine().attach_simple_point(g, name, rim_set)
}

pub fn attach_simple_edge(g: &DigitalGraph, u: &str, v: &str) -> Result<DigitalGraph, HomotopyError> {
    default_engine().attach_simple_edge(g, u, v)
}

/// Adjacency masks over a graph of at most 64 points.
struct Masks<'g> {
    names: Vec<&'g str>,
    adj: Vec<u64>,
}

impl<'g> Masks<'g> {
    fn new(g: &'g DigitalGraph) -> Self {
        let (names, lists) = g.indexed();
        debug_assert!(names.len() <= MAX_POINT_LIMIT);
        let adj = lists.iter().map(|l| l.iter().fold(0u64, |m, &w| m | (1 << w))).collect();
        Masks { names, adj }
    }

    fn full(&self) -> u64 {
        match self.names.len() {
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }
}

struct Solver<'a> {
    adj: &'a [u64],
    /// `Some(v)`: contractible, and deleting `v` keeps it so (for a single
    /// point, `v` is that point). `None`: not contractible.
    memo: HashMap<u64, Option<u8>>,
}

impl<'a> Solver<'a> {
    fn new(adj: &'a [u64]) -> Self {
        Solver { adj, memo: HashMap::new() }
    }

    fn contractible(&mut self, s: u64) -> bool {
        match s.count_ones() {
            0 => return false,
            1 => return true,
            _ => {}
        }
        if let Some(hit) = self.memo.get(&s) {
            return hit.is_some();
        }
        let answer = self.search(s);
        self.memo.insert(s, answer);
        answer.is_some()
    }

    fn search(&mut self, s: u64) -> Option<u8> {
        if !self.connected(s) || euler_characteristic_mask(self.adj, s) != 1 {
            return None;
        }
        let mut order: Vec<(u32, usize)> = bits(s).map(|v| ((self.adj[v] & s).count_ones(), v)).collect();
        order.sort_unstable();
        for (_, v) in order {
            let rim = self.adj[v] & s;
            if self.contractible(rim) && self.contractible(s & !(1 << v)) {
                return Some(v as u8);
            }
        }
        None
    }

    fn connected(&self, s: u64) -> bool {
        let start = s & s.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & s & !seen;
            seen |= frontier;
        }
        seen == s
    }
}

fn bits(mut s: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (s != 0).then(|| {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            v
        })
    })
}
