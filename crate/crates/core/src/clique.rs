//! Clique enumeration and the clique-sum Euler characteristic.

use crate::error::GraphError;

/// Upper bound on the number of cliques visited before giving up.
///
/// Digital 2-manifolds have no cliques above size 4, so realistic inputs stay
/// far below this; dense inputs (large complete graphs) hit it quickly.
pub const DEFAULT_CLIQUE_BUDGET: usize = 20_000_000;

/// Counts cliques by size over neighbour lists. Entry `k` of the result is
/// the number of cliques with `k + 1` points.
pub fn clique_counts(lists: &[Vec<usize>], budget: usize) -> Result<Vec<u64>, GraphError> {
    let higher: Vec<Vec<usize>> = lists
        .iter()
        .enumerate()
        .map(|(v, n)| {
            let mut h: Vec<usize> = n.iter().copied().filter(|&w| w > v).collect();
            h.sort_unstable();
            h
        })
        .collect();
    let mut counts = Vec::new();
    let mut visited = 0usize;
    for v in 0..lists.len() {
        extend(&higher, 1, &higher[v], &mut counts, &mut visited, budget)?;
    }
    Ok(counts)
}

fn extend(
    higher: &[Vec<usize>],
    size: usize,
    candidates: &[usize],
    counts: &mut Vec<u64>,
    visited: &mut usize,
    budget: usize,
) -> Result<(), GraphError> {
    *visited += 1;
    if *visited > budget {
        return Err(GraphError::CliqueBudget { limit: budget });
    }
    if counts.len() < size {
        counts.resize(size, 0);
    }
    counts[size - 1] += 1;
    for (i, &w) in candidates.iter().enumerate() {
        let next: Vec<usize> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|x| higher[w].binary_search(x).is_ok())
            .collect();
        extend(higher, size + 1, &next, counts, visited, budget)?;
    }
    Ok(())
}

/// `Σ_{k≥1} (−1)^{k+1} · #(k-cliques)`.
pub fn euler_characteristic(lists: &[Vec<usize>], budget: usize) -> Result<i64, GraphError> {
    Ok(alternating_sum(&clique_counts(lists, budget)?))
}

pub(crate) fn alternating_sum(counts: &[u64]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Euler characteristic of the subgraph induced by `set` in a graph of at
/// most 64 points given as adjacency masks.
pub(crate) fn euler_characteristic_mask(adj: &[u64], set: u64) -> i64 {
    fn walk(adj: &[u64], candidates: u64, sign: i64) -> i64 {
        let mut total = 0;
        let mut rest = candidates;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += sign + walk(adj, rest & adj[v], -sign);
        }
        total
    }
    walk(adj, set, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|v| (0..n).filter(|&w| w != v).collect()).collect()
    }

    #[test]
    fn complete_graphs_have_euler_one() {
        for n in 1..9 {
            assert_eq!(euler_characteristic(&complete(n), DEFAULT_CLIQUE_BUDGET).unwrap(), 1);
        }
    }

    #[test]
    fn counts_match_binomials() {
        assert_eq!(clique_counts(&complete(5), 1000).unwrap(), vec![5, 10, 10, 5, 1]);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            clique_counts(&complete(12), 100),
            Err(GraphError::CliqueBudget { limit: 100 })
        ));
    }

    #[test]
    fn mask_version_agrees() {
        // 4-cycle 0-1-2-3 plus isolated 4.
        let adj = [0b1010u64, 0b0101, 0b1010, 0b0101, 0];
        assert_eq!(euler_characteristic_mask(&adj, 0b01111), 0);
        assert_eq!(euler_characteristic_mask(&adj, 0b11111), 1);
        assert_eq!(euler_characteristic_mask(&adj, 0b00111), 1);
        assert_eq!(euler_characteristic_mask(&adj, 0), 0);
    }
}
