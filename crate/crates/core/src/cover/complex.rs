//! Boundary complex of a cover in the quotient surface.
//!
//! Every piece edge is split at every cover vertex lying on it, after adding
//! the glued images of boundary vertices so that both copies of a glued side
//! are split alike. Vertices are then keyed by their quotient class and edges
//! by the smaller of their two copies, which makes intersections of cells
//! plain set intersections.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::geometry::{bbox, on_segment, param, Pt};
use super::quotient::{QuotientPoint, Side, Square};
use super::Cover;

type EdgeKey = (Pt, Pt);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    /// A simple path.
    Arc,
    /// A simple closed curve.
    Loop,
    /// Anything else: a vertex of degree three or more.
    Branched,
}

/// A connected component of the edge part of an intersection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Curve {
    pub kind: CurveKind,
    /// Path order for arcs, cyclic order for loops, sorted otherwise.
    pub vertices: Vec<QuotientPoint>,
}

impl Curve {
    pub fn endpoints(&self) -> Option<(&QuotientPoint, &QuotientPoint)> {
        match self.kind {
            CurveKind::Arc => Some((self.vertices.first()?, self.vertices.last()?)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum IntersectionFeature {
    Empty,
    Points { points: Vec<QuotientPoint> },
    Segments { curves: Vec<Curve>, points: Vec<QuotientPoint> },
}

impl IntersectionFeature {
    pub fn is_empty(&self) -> bool {
        matches!(self, IntersectionFeature::Empty)
    }

    /// The single arc, if the feature is exactly one arc and nothing else.
    pub fn as_single_arc(&self) -> Option<&Curve> {
        match self {
            IntersectionFeature::Segments { curves, points } if curves.len() == 1 && points.is_empty() => {
                Some(&curves[0]).filter(|c| c.kind == CurveKind::Arc)
            }
            _ => None,
        }
    }

    /// The single point, if the feature is exactly one point.
    pub fn as_single_point(&self) -> Option<&QuotientPoint> {
        match self {
            IntersectionFeature::Points { points } if points.len() == 1 => Some(&points[0]),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default)]
struct CellBoundary {
    vertices: BTreeSet<Pt>,
    /// Edge key with the number of piece edges using it.
    edges: BTreeMap<EdgeKey, usize>,
    pieces: usize,
}

/// Boundary complex of every cell of a cover.
#[derive(Clone, Debug)]
pub struct CoverComplex {
    cells: Vec<CellBoundary>,
    ends: BTreeMap<EdgeKey, (Pt, Pt)>,
}

impl CoverComplex {
    pub fn new(cover: &Cover) -> Self {
        let square = &cover.square;
        let mut classes: BTreeMap<Pt, Pt> = BTreeMap::new();
        let mut class = |p: &Pt| -> Pt {
            classes
                .entry(p.clone())
                .or_insert_with(|| square.class_unchecked(p).representative)
                .clone()
        };

        let mut all: BTreeSet<Pt> = BTreeSet::new();
        for cell in &cover.cells {
            for piece in &cell.pieces {
                for v in piece {
                    if square.on_boundary(v) {
                        all.extend(square.orbit(v));
                    } else {
                        all.insert(v.clone());
                    }
                }
            }
        }
        let all: Vec<Pt> = all.into_iter().collect();

        let mut ends = BTreeMap::new();
        let mut cells = Vec::with_capacity(cover.cells.len());
        for cell in &cover.cells {
            let mut boundary = CellBoundary {
                pieces: cell.pieces.len(),
                ..Default::default()
            };
            for piece in &cell.pieces {
                for i in 0..piece.len() {
                    let (a, b) = (&piece[i], &piece[(i + 1) % piece.len()]);
                    for (u, v) in split(a, b, &all) {
                        let key = edge_key(square, &u, &v);
                        let (cu, cv) = (class(&u), class(&v));
                        boundary.vertices.insert(cu.clone());
                        boundary.vertices.insert(cv.clone());
                        *boundary.edges.entry(key.clone()).or_insert(0) += 1;
                        ends.entry(key).or_insert((cu, cv));
                    }
                }
            }
            cells.push(boundary);
        }
        CoverComplex { cells, ends }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// The closed cells share at least one point.
    pub fn meets(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.cells[i].vertices, &self.cells[j].vertices);
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        small.iter().any(|v| large.contains(v))
    }

    /// Intersection of the boundaries of the given cells.
    pub fn intersection(&self, cells: &[usize]) -> IntersectionFeature {
        let Some((&first, rest)) = cells.split_first() else {
            return IntersectionFeature::Empty;
        };
        let mut vertices = self.cells[first].vertices.clone();
        let mut edges: BTreeSet<&EdgeKey> = self.cells[first].edges.keys().collect();
        for &c in rest {
            vertices.retain(|v| self.cells[c].vertices.contains(v));
            edges.retain(|e| self.cells[c].edges.contains_key(*e));
        }
        self.feature(&vertices, &edges)
    }

    fn feature(&self, vertices: &BTreeSet<Pt>, edges: &BTreeSet<&EdgeKey>) -> IntersectionFeature {
        if vertices.is_empty() {
            return IntersectionFeature::Empty;
        }
        let qp = |p: &Pt| QuotientPoint {
            representative: p.clone(),
        };
        let mut adj: BTreeMap<&Pt, Vec<&Pt>> = BTreeMap::new();
        for key in edges {
            let (a, b) = &self.ends[*key];
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let points: Vec<QuotientPoint> = vertices.iter().filter(|v| !adj.contains_key(v)).map(qp).collect();
        if edges.is_empty() {
            return IntersectionFeature::Points { points };
        }
        let mut seen: BTreeSet<&Pt> = BTreeSet::new();
        let mut curves = Vec::new();
        for &start in adj.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start);
            let mut queue = VecDeque::from([start]);
            while let Some(p) = queue.pop_front() {
                for &q in &adj[p] {
                    if seen.insert(q) {
                        comp.push(q);
                        queue.push_back(q);
                    }
                }
            }
            let degree_sum: usize = comp.iter().map(|p| adj[p].len()).sum();
            let edge_count = degree_sum / 2;
            let max_degree = comp.iter().map(|p| adj[p].len()).max().unwrap_or(0);
            let kind = if max_degree <= 2 && edge_count + 1 == comp.len() {
                CurveKind::Arc
            } else if max_degree == 2 && comp.iter().all(|p| adj[p].len() == 2) && edge_count == comp.len() {
                CurveKind::Loop
            } else {
                CurveKind::Branched
            };
            let order: Vec<&Pt> = match kind {
                CurveKind::Arc => {
                    let head = *comp.iter().filter(|p| adj[**p].len() == 1).min().unwrap_or(&start);
                    walk(&adj, head)
                }
                CurveKind::Loop => walk(&adj, comp.iter().copied().min().expect("non-empty")),
                CurveKind::Branched => {
                    comp.sort();
                    comp
                }
            };
            curves.push(Curve {
                kind,
                vertices: order.into_iter().map(qp).collect(),
            });
        }
        IntersectionFeature::Segments { curves, points }
    }

    /// Checks that the cell is a closed disk in the quotient: every edge is
    /// used at most twice, the once-used edges form a single cycle through
    /// vertices of degree two, and V − E + F = 1.
    pub fn disk_defect(&self, i: usize) -> Option<String> {
        let cell = &self.cells[i];
        if let Some((key, count)) = cell.edges.iter().find(|(_, &c)| c > 2) {
            return Some(format!("edge {} - {} used {count} times", key.0, key.1));
        }
        let euler = cell.vertices.len() as i64 - cell.edges.len() as i64 + cell.pieces as i64;
        if euler != 1 {
            return Some(format!("V - E + F = {euler}, not 1"));
        }
        let mut degree: BTreeMap<&Pt, usize> = BTreeMap::new();
        let mut adj: BTreeMap<&Pt, Vec<&Pt>> = BTreeMap::new();
        for (key, _) in cell.edges.iter().filter(|(_, &c)| c == 1) {
            let (a, b) = &self.ends[key];
            *degree.entry(a).or_insert(0) += 1;
            *degree.entry(b).or_insert(0) += 1;
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        if let Some((v, d)) = degree.iter().find(|(_, &d)| d != 2) {
            return Some(format!("boundary meets itself at {v} (degree {d})"));
        }
        let Some(&start) = adj.keys().next() else {
            return Some("empty boundary".into());
        };
        if walk(&adj, start).len() != adj.len() {
            return Some("boundary is not a single cycle".into());
        }
        None
    }
}

/// Walks a path or cycle from `start`, returning the visited vertices.
fn walk<'a>(adj: &BTreeMap<&'a Pt, Vec<&'a Pt>>, start: &'a Pt) -> Vec<&'a Pt> {
    let mut order = vec![start];
    let mut seen = BTreeSet::from([start]);
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|p| !seen.contains(**p)) {
        seen.insert(next);
        order.push(next);
        cur = next;
    }
    order
}

/// Splits segment `ab` at every point of `all` lying strictly inside it.
fn split(a: &Pt, b: &Pt, all: &[Pt]) -> Vec<(Pt, Pt)> {
    let (lo, hi) = bbox(&[a.clone(), b.clone()]);
    let mut inner: Vec<(super::Q, &Pt)> = all
        .iter()
        .filter(|p| p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y)
        .filter(|p| *p != a && *p != b && on_segment(p, a, b))
        .map(|p| (param(p, a, b), p))
        .collect();
    inner.sort();
    let mut stops = vec![a];
    stops.extend(inner.into_iter().map(|(_, p)| p));
    stops.push(b);
    stops.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
}

/// Smaller of the edge and its glued copy, endpoints sorted.
fn edge_key(square: &Square, u: &Pt, v: &Pt) -> EdgeKey {
    let sorted = |a: Pt, b: Pt| if a <= b { (a, b) } else { (b, a) };
    let mut key = sorted(u.clone(), v.clone());
    for side in Side::ALL {
        if square.on_side(side, u) && square.on_side(side, v) {
            let image = sorted(square.glue(side, u), square.glue(side, v));
            if image < key {
                key = image;
            }
        }
    }
    key
}
