//! Finite simple undirected graphs with named points.
//!
//! Every graph in this crate is a [`DigitalGraph`]. Point identifiers are
//! opaque strings and all set-valued outputs come back in sorted order, so
//! two runs over the same input produce byte-identical results.
//!
//! "Subgraph" always means induced subgraph. The empty graph is a valid
//! value; the operations below say what they do with it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Deserialize;

use crate::canon::{self, CanonicalKey};
use crate::clique;
use crate::error::GraphError;

/// A finite simple undirected graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DigitalGraph {
    adj: BTreeMap<String, BTreeSet<String>>,
}

/// Whether [`DigitalGraph::edit_edge`] adds or removes the edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeEdit {
    Add,
    Remove,
}

impl DigitalGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from a point list and an edge list.
    pub fn from_parts<P, E, S>(points: P, edges: E) -> Result<Self, GraphError>
    where
        P: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let mut g = Self::new();
        for p in points {
            g.insert_point(p)?;
        }
        for (u, v) in edges {
            g.insert_edge(&u.into(), &v.into())?;
        }
        Ok(g)
    }

    /// Graph on the given points with no edges.
    pub fn discrete<S: Into<String>>(points: impl IntoIterator<Item = S>) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for p in points {
            g.insert_point(p)?;
        }
        Ok(g)
    }

    /// Complete graph on the given points.
    pub fn complete<S: AsRef<str>>(points: &[S]) -> Result<Self, GraphError> {
        let mut g = Self::discrete(points.iter().map(|p| p.as_ref().to_string()))?;
        for (i, u) in points.iter().enumerate() {
            for v in &points[i + 1..] {
                g.insert_edge(u.as_ref(), v.as_ref())?;
            }
        }
        Ok(g)
    }

    /// Path through the points in the given order.
    pub fn path<S: AsRef<str>>(points: &[S]) -> Result<Self, GraphError> {
        let mut g = Self::discrete(points.iter().map(|p| p.as_ref().to_string()))?;
        for w in points.windows(2) {
            g.insert_edge(w[0].as_ref(), w[1].as_ref())?;
        }
        Ok(g)
    }

    /// Cycle through the points in the given order (needs at least 3 points).
    pub fn cycle<S: AsRef<str>>(points: &[S]) -> Result<Self, GraphError> {
        let mut g = Self::path(points)?;
        if points.len() >= 3 {
            g.insert_edge(points[points.len() - 1].as_ref(), points[0].as_ref())?;
        }
        Ok(g)
    }

    /// Adds an isolated point.
    pub fn insert_point(&mut self, p: impl Into<String>) -> Result<(), GraphError> {
        let p = p.into();
        if self.adj.contains_key(&p) {
            return Err(GraphError::DuplicatePoint(p));
        }
        self.adj.insert(p, BTreeSet::new());
        Ok(())
    }

    /// Adds the edge `{u, v}`; both points must exist.
    pub fn insert_edge(&mut self, u: &str, v: &str) -> Result<(), GraphError> {
        self.require(u)?;
        self.require(v)?;
        if u == v {
            return Err(GraphError::SamePoint(u.to_string()));
        }
        if self.adjacent(u, v) {
            return Err(GraphError::EdgeExists(u.to_string(), v.to_string()));
        }
        self.link(u, v);
        Ok(())
    }

    fn link(&mut self, u: &str, v: &str) {
        self.adj.get_mut(u).expect("point exists").insert(v.to_string());
        self.adj.get_mut(v).expect("point exists").insert(u.to_string());
    }

    fn require(&self, p: &str) -> Result<(), GraphError> {
        if self.adj.contains_key(p) {
            Ok(())
        } else {
            Err(GraphError::UnknownPoint(p.to_string()))
        }
    }

    /// Number of points, `|G|`.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains(&self, p: &str) -> bool {
        self.adj.contains_key(p)
    }

    /// Points in sorted order.
    pub fn points(&self) -> impl Iterator<Item = &str> + '_ {
        self.adj.keys().map(String::as_str)
    }

    /// Edges as `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.adj.iter().flat_map(|(u, nbrs)| {
            nbrs.range::<String, _>((std::ops::Bound::Excluded(u), std::ops::Bound::Unbounded))
                .map(move |v| (u.as_str(), v.as_str()))
        })
    }

    pub fn neighbors(&self, p: &str) -> Result<&BTreeSet<String>, GraphError> {
        self.adj.get(p).ok_or_else(|| GraphError::UnknownPoint(p.to_string()))
    }

    pub fn degree(&self, p: &str) -> Result<usize, GraphError> {
        self.neighbors(p).map(BTreeSet::len)
    }

    pub fn adjacent(&self, u: &str, v: &str) -> bool {
        self.adj.get(u).is_some_and(|n| n.contains(v))
    }

    /// Rim `O(v)`: the subgraph on the neighbours of `v`, without `v`.
    pub fn rim(&self, v: &str) -> Result<DigitalGraph, GraphError> {
        let nbrs = self.neighbors(v)?;
        Ok(self.induced_unchecked(nbrs.iter().map(String::as_str)))
    }

    /// Ball `U(v) = v ⊕ O(v)`.
    pub fn ball(&self, v: &str) -> Result<DigitalGraph, GraphError> {
        let nbrs = self.neighbors(v)?;
        Ok(self.induced_unchecked(nbrs.iter().map(String::as_str).chain(std::iter::once(v))))
    }

    /// Joint rim `O(u) ∩ O(v)` as a subgraph.
    pub fn joint_rim(&self, u: &str, v: &str) -> Result<DigitalGraph, GraphError> {
        if u == v {
            return Err(GraphError::SamePoint(u.to_string()));
        }
        let nu = self.neighbors(u)?;
        let nv = self.neighbors(v)?;
        Ok(self.induced_unchecked(nu.intersection(nv).map(String::as_str)))
    }

    /// Join `G ⊕ H`: disjoint union plus every cross edge.
    pub fn join(&self, other: &DigitalGraph) -> Result<DigitalGraph, GraphError> {
        let clash: Vec<String> = self.points().filter(|p| other.contains(p)).map(str::to_string).collect();
        if !clash.is_empty() {
            return Err(GraphError::IdentifierCollision(clash));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.clone());
        let mut g = DigitalGraph { adj };
        for u in self.points() {
            for v in other.points() {
                g.link(u, v);
            }
        }
        Ok(g)
    }

    /// Subgraph induced by `set`, which must be a subset of the points.
    pub fn induced_subgraph<'a, I>(&self, set: I) -> Result<DigitalGraph, GraphError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let set: BTreeSet<&str> = set.into_iter().collect();
        for p in &set {
            self.require(p)?;
        }
        Ok(self.induced_unchecked(set))
    }

    pub(crate) fn induced_unchecked<'a, I>(&self, set: I) -> DigitalGraph
    where
        I: IntoIterator<Item = &'a str>,
    {
        let keep: BTreeSet<&str> = set.into_iter().collect();
        let adj = keep
            .iter()
            .map(|&p| {
                let nbrs = self.adj[p].iter().filter(|q| keep.contains(q.as_str())).cloned().collect();
                (p.to_string(), nbrs)
            })
            .collect();
        DigitalGraph { adj }
    }

    /// `G − S`: deletes every point of `set`.
    pub fn delete_points<'a, I>(&self, set: I) -> Result<DigitalGraph, GraphError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let drop: BTreeSet<&str> = set.into_iter().collect();
        for p in &drop {
            self.require(p)?;
        }
        Ok(self.induced_unchecked(self.points().filter(|p| !drop.contains(p))))
    }

    /// Returns a copy with the edge `{u, v}` added or removed.
    pub fn edit_edge(&self, u: &str, v: &str, mode: EdgeEdit) -> Result<DigitalGraph, GraphError> {
        self.require(u)?;
        self.require(v)?;
        if u == v {
            return Err(GraphError::SamePoint(u.to_string()));
        }
        let mut g = self.clone();
        match mode {
            EdgeEdit::Add => {
                if self.adjacent(u, v) {
                    return Err(GraphError::EdgeExists(u.to_string(), v.to_string()));
                }
                g.link(u, v);
            }
            EdgeEdit::Remove => {
                if !self.adjacent(u, v) {
                    return Err(GraphError::EdgeMissing(u.to_string(), v.to_string()));
                }
                g.adj.get_mut(u).expect("checked").remove(v);
                g.adj.get_mut(v).expect("checked").remove(u);
            }
        }
        Ok(g)
    }

    /// True iff every pair of points is joined by a path. The empty graph
    /// counts as connected.
    pub fn is_connected(&self) -> bool {
        let Some(start) = self.adj.keys().next() else {
            return true;
        };
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut queue = VecDeque::from([start.as_str()]);
        seen.insert(start);
        while let Some(u) = queue.pop_front() {
            for v in &self.adj[u] {
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        seen.len() == self.adj.len()
    }

    /// Euler characteristic as the alternating count of cliques:
    /// `χ = Σ_{k≥1} (−1)^{k+1} · #(k-cliques)`. Empty graph gives 0.
    ///
    /// Fails only if the clique count passes [`clique::DEFAULT_CLIQUE_BUDGET`].
    pub fn euler_characteristic(&self) -> Result<i64, GraphError> {
        let (_, lists) = self.indexed();
        clique::euler_characteristic(&lists, clique::DEFAULT_CLIQUE_BUDGET)
    }

    /// Clique counts by size: entry `k` is the number of `(k+1)`-cliques.
    pub fn clique_counts(&self) -> Result<Vec<u64>, GraphError> {
        let (_, lists) = self.indexed();
        clique::clique_counts(&lists, clique::DEFAULT_CLIQUE_BUDGET)
    }

    /// Exact canonical form: equal keys iff the graphs are isomorphic.
    pub fn canonical_key(&self) -> CanonicalKey {
        let (_, lists) = self.indexed();
        canon::canonical_key(&lists)
    }

    pub fn is_isomorphic(&self, other: &DigitalGraph) -> bool {
        self.order() == other.order() && self.size() == other.size() && self.canonical_key() == other.canonical_key()
    }

    /// Renames points through `f`; fails if two points map to one name.
    pub fn relabel(&self, mut f: impl FnMut(&str) -> String) -> Result<DigitalGraph, GraphError> {
        let map: BTreeMap<&str, String> = self.points().map(|p| (p, f(p))).collect();
        let mut g = DigitalGraph::new();
        for name in map.values() {
            g.insert_point(name.clone())?;
        }
        for (u, v) in self.edges() {
            g.link(&map[u], &map[v]);
        }
        Ok(g)
    }

    /// Sorted point names and neighbour index lists, in the same order.
    pub(crate) fn indexed(&self) -> (Vec<&str>, Vec<Vec<usize>>) {
        let names: Vec<&str> = self.points().collect();
        let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let lists = names
            .iter()
            .map(|p| self.adj[*p].iter().map(|q| index[q.as_str()]).collect())
            .collect();
        (names, lists)
    }

    /// Serializes to the graph JSON format: points sorted, each edge sorted,
    /// edge list sorted, followed by a newline.
    pub fn to_json(&self) -> String {
        let quote = |s: &str| serde_json::to_string(s).expect("strings always serialize");
        let points: Vec<String> = self.points().map(quote).collect();
        let edges: Vec<String> = self.edges().map(|(u, v)| format!("[{},{}]", quote(u), quote(v))).collect();
        format!("{{\"points\": [{}], \"edges\": [{}]}}\n", points.join(","), edges.join(","))
    }

    /// Parses the graph JSON format. Order of points and edges in the input
    /// does not matter; duplicates, loops and dangling endpoints are errors.
    pub fn from_json(text: &str) -> Result<DigitalGraph, GraphError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Doc {
            points: Vec<String>,
            edges: Vec<(String, String)>,
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        DigitalGraph::from_parts(doc.points, doc.edges)
    }

    /// Undirected DOT text with quoted node names and no attributes.
    pub fn to_dot(&self) -> String {
        let quote = |s: &str| serde_json::to_string(s).expect("strings always serialize");
        let mut out = String::from("graph {\n");
        for p in self.points() {
            let _ = writeln!(out, "  {};", quote(p));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", quote(u), quote(v));
        }
        out.push_str("}\n");
        out
    }
}

/// The digital 0-sphere `S⁰(a, b)`: two non-adjacent points.
pub fn zero_sphere(a: &str, b: &str) -> Result<DigitalGraph, GraphError> {
    DigitalGraph::discrete([a, b])
}

/// A fresh name derived from `base` that is not a point of `g`.
pub fn fresh_name(g: &DigitalGraph, base: &str) -> String {
    if !g.contains(base) {
        return base.to_string();
    }
    (1..).map(|i| format!("{base}_{i}")).find(|c| !g.contains(c)).expect("unbounded")
}
