//! Nerves of unit-square discretisations of a disk.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::CoverError;
use crate::graph::DigitalGraph;

/// Unit square `[x, x+1] × [y, y+1]`, keyed by its lower-left corner.
pub type Square = (i64, i64);

pub fn square_name((x, y): Square) -> String {
    format!("q{x}_{y}")
}

/// Squares are adjacent when they share a boundary point (king moves).
pub fn grid_disk_nerve(mask: &BTreeSet<Square>) -> Result<DigitalGraph, CoverError> {
    if mask.is_empty() {
        return Err(CoverError::EmptyMask);
    }
    let king = |(x, y): Square| {
        (-1..=1)
            .flat_map(move |dx| (-1..=1).map(move |dy| (x + dx, y + dy)))
            .filter(move |&s| s != (x, y))
    };
    let start = *mask.iter().next().expect("non-empty");
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for t in king(s).filter(|t| mask.contains(t)) {
            if seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
    if seen.len() != mask.len() {
        return Err(CoverError::DisconnectedMask);
    }
    let names: BTreeMap<Square, String> = mask.iter().map(|&s| (s, square_name(s))).collect();
    let mut g = DigitalGraph::new();
    for name in names.values() {
        g.insert_point(name.clone())?;
    }
    for &s in mask {
        for t in king(s).filter(|t| mask.contains(t) && *t > s) {
            g.insert_edge(&names[&s], &names[&t])?;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::is_contractible;

    #[test]
    fn single_square_is_k1() {
        let g = grid_disk_nerve(&BTreeSet::from([(0, 0)])).unwrap();
        assert_eq!(g.order(), 1);
        assert!(is_contractible(&g).unwrap());
    }

    #[test]
    fn block_is_contractible() {
        let block: BTreeSet<Square> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        let g = grid_disk_nerve(&block).unwrap();
        assert_eq!((g.order(), g.size()), (9, 20));
        assert!(is_contractible(&g).unwrap());
    }

    #[test]
    fn ring_is_not_contractible() {
        let ring: BTreeSet<Square> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).filter(|&s| s != (1, 1)).collect();
        let ring = ring.into_iter().chain((3..5).flat_map(|x| (0..3).map(move |y| (x, y)))).collect::<BTreeSet<_>>();
        let g = grid_disk_nerve(&ring).unwrap();
        assert!(!is_contractible(&g).unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(grid_disk_nerve(&BTreeSet::new()).unwrap_err(), CoverError::EmptyMask);
        assert_eq!(grid_disk_nerve(&BTreeSet::from([(0, 0), (2, 0)])).unwrap_err(), CoverError::DisconnectedMask);
        assert!(grid_disk_nerve(&BTreeSet::from([(0, 0), (1, 1)])).is_ok());
    }
}
