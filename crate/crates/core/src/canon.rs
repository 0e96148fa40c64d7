//! Exact canonical labelling of small graphs.
//!
//! Individualisation-refinement: the partition of the points is refined to an
//! equitable one by neighbour counts, then a point of the first smallest
//! non-trivial cell is individualised and the process recurses. Each leaf of
//! the search tree is a discrete partition, i.e. an ordering of the points;
//! the key is the smallest adjacency bit string over all leaves. Leaves with
//! equal bit strings yield automorphisms, which prune sibling branches lying in
//! the same orbit.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

/// Canonical byte string of a graph: equal keys iff isomorphic graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Number of points of the graph the key was computed from.
    pub fn order(&self) -> usize {
        u32::from_le_bytes(self.0[..4].try_into().expect("key has a length prefix")) as usize
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

type Cells = Vec<Vec<usize>>;

/// Canonical key of the graph given by neighbour lists.
pub(crate) fn canonical_key(lists: &[Vec<usize>]) -> CanonicalKey {
    canonical_labelling(lists).1
}

/// Canonical ordering (position → point) together with its key.
pub(crate) fn canonical_labelling(lists: &[Vec<usize>]) -> (Vec<usize>, CanonicalKey) {
    let n = lists.len();
    let mut search = Search::new(lists);
    if n > 0 {
        let mut cells: Cells = vec![(0..n).collect()];
        search.refine(&mut cells, VecDeque::from([(0..n).collect::<Vec<_>>()]));
        search.visit(cells, &mut Vec::new());
    }
    let (cert, order) = search.best.unwrap_or_default();
    let mut bytes = (n as u32).to_le_bytes().to_vec();
    bytes.extend(cert);
    (order, CanonicalKey(bytes))
}

struct Search<'a> {
    lists: &'a [Vec<usize>],
    rows: Vec<Vec<u64>>,
    count: Vec<u32>,
    first: Option<(Vec<u8>, Vec<usize>)>,
    best: Option<(Vec<u8>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(lists: &'a [Vec<usize>]) -> Self {
        let n = lists.len();
        let words = n.div_ceil(64);
        let rows = lists
            .iter()
            .map(|nbrs| {
                let mut row = vec![0u64; words];
                for &w in nbrs {
                    row[w / 64] |= 1 << (w % 64);
                }
                row
            })
            .collect();
        Search {
            lists,
            rows,
            count: vec![0; n],
            first: None,
            best: None,
            automorphisms: Vec::new(),
        }
    }

    fn refine(&mut self, cells: &mut Cells, mut queue: VecDeque<Vec<usize>>) {
        let n = self.lists.len();
        while let Some(splitter) = queue.pop_front() {
            if cells.len() == n {
                break;
            }
            for &x in &splitter {
                for &y in &self.lists[x] {
                    self.count[y] += 1;
                }
            }
            let mut i = 0;
            while i < cells.len() {
                let cell = &cells[i];
                let c0 = self.count[cell[0]];
                if cell.len() > 1 && cell.iter().any(|&v| self.count[v] != c0) {
                    let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
                    for &v in cell {
                        groups.entry(self.count[v]).or_default().push(v);
                    }
                    let parts: Vec<Vec<usize>> = groups.into_values().collect();
                    let k = parts.len();
                    queue.extend(parts.iter().cloned());
                    cells.splice(i..=i, parts);
                    i += k;
                } else {
                    i += 1;
                }
            }
            for &x in &splitter {
                for &y in &self.lists[x] {
                    self.count[y] = 0;
                }
            }
        }
    }

    fn certificate(&self, order: &[usize]) -> Vec<u8> {
        let n = order.len();
        let mut bytes = Vec::with_capacity(n * n.saturating_sub(1) / 16 + 1);
        let mut acc = 0u8;
        let mut bits = 0;
        for i in 0..n {
            let row = &self.rows[order[i]];
            for &w in &order[i + 1..] {
                acc = (acc << 1) | ((row[w / 64] >> (w % 64)) & 1) as u8;
                bits += 1;
                if bits == 8 {
                    bytes.push(acc);
                    acc = 0;
                    bits = 0;
                }
            }
        }
        if bits > 0 {
            bytes.push(acc << (8 - bits));
        }
        bytes
    }

    fn visit(&mut self, cells: Cells, prefix: &mut Vec<usize>) {
        let Some(target) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
        else {
            self.leaf(cells.iter().map(|c| c[0]).collect());
            return;
        };
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for v in candidates {
            if !explored.is_empty() && self.same_orbit(prefix, &explored, v) {
                continue;
            }
            explored.push(v);
            let mut next = cells.clone();
            let rest: Vec<usize> = next[target].iter().copied().filter(|&w| w != v).collect();
            next.splice(target..=target, [vec![v], rest]);
            self.refine(&mut next, VecDeque::from([vec![v]]));
            prefix.push(v);
            self.visit(next, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let cert = self.certificate(&order);
        let Some((first_cert, first_order)) = &self.first else {
            self.first = Some((cert.clone(), order.clone()));
            self.best = Some((cert, order));
            return;
        };
        if &cert == first_cert {
            let gamma = mapping(first_order, &order);
            self.automorphisms.push(gamma);
        }
        let (best_cert, best_order) = self.best.as_ref().expect("set with first");
        if &cert == best_cert {
            if best_order != self.first.as_ref().map(|f| &f.1).expect("set") {
                let gamma = mapping(best_order, &order);
                self.automorphisms.push(gamma);
            }
        } else if &cert < best_cert {
            self.best = Some((cert, order));
        }
    }

    /// Is `v` in the orbit of an explored sibling, under the automorphisms
    /// found so far that fix every point of `prefix`?
    fn same_orbit(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.lists.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if prefix.iter().all(|&p| gamma[p] == p) {
                any = true;
                for (x, &gx) in gamma.iter().enumerate().take(n) {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, gx));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }
}

/// Permutation sending `from[i]` to `to[i]`.
fn mapping(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}
