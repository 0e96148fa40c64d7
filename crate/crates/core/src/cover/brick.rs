//! Running-bond brick covers and the aligned grid.
//!
//! The square is `[0, cols] × [0, rows]`. Even rows hold `cols` unit bricks;
//! odd rows are shifted by half a brick, leaving a half brick at each end.
//! Half bricks are glued to whatever lies across the vertical side: on the
//! torus the two halves of a row form one cell, on the Klein bottle and the
//! projective plane each half joins the end brick of the mirrored even row.

use std::collections::BTreeMap;

use super::geometry::{q, ratio, rect, Pt};
use super::lcl::{verify_lcl, LclVerdict};
use super::{Cover, CoverCell, CoverError, PolygonWord};

/// Brick layout without LCL verification.
pub fn generate_brick_pieces(word: PolygonWord, rows: usize, cols: usize) -> Result<Cover, CoverError> {
    if rows < 4 || !rows.is_multiple_of(2) {
        return Err(CoverError::Layout(format!(
            "rows must be even and at least 4 so the half-brick offset closes up, got {rows}"
        )));
    }
    if cols < 2 {
        return Err(CoverError::Layout(format!("cols must be at least 2, got {cols}")));
    }
    let (n, m) = (cols as i64, rows as i64);
    let half = ratio(1, 2);
    let mut pieces: Vec<(String, Vec<Pt>)> = Vec::new();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for r in 0..rows {
        let (y0, y1) = (q(r as i64), q(r as i64 + 1));
        let mut push = |k: usize, x0, x1| {
            index.insert((r, k), pieces.len());
            pieces.push((format!("r{r}c{k}"), rect(&x0, &y0, &x1, &y1)));
        };
        if r % 2 == 0 {
            for k in 0..cols {
                push(k, q(k as i64), q(k as i64 + 1));
            }
        } else {
            push(0, q(0), half.clone());
            for k in 1..cols {
                push(k, q(k as i64) - &half, q(k as i64) + &half);
            }
            push(cols, q(n) - &half, q(n));
        }
    }

    let mut parent: Vec<usize> = (0..pieces.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut union = |a: usize, b: usize| {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    for r in (1..rows).step_by(2) {
        let (left, right) = (index[&(r, 0)], index[&(r, cols)]);
        match word {
            PolygonWord::Torus => union(left, right),
            PolygonWord::Klein | PolygonWord::Projective => {
                let mirror = rows - 1 - r;
                union(left, index[&(mirror, cols - 1)]);
                union(right, index[&(mirror, 0)]);
            }
            PolygonWord::Sphere => {}
        }
    }

    let mut cells: Vec<CoverCell> = Vec::new();
    let mut cell_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, (id, poly)) in pieces.into_iter().enumerate() {
        let root = find(&mut parent, i);
        match cell_of_root.get(&root) {
            Some(&c) => cells[c].pieces.push(poly),
            None => {
                cell_of_root.insert(root, cells.len());
                cells.push(CoverCell::new(id, vec![poly]));
            }
        }
    }
    Cover::new(word, n, m, cells)
}

/// Brick layout, rejected unless it tiles the square and passes the LCL
/// checks.
pub fn generate_brick_cover(word: PolygonWord, rows: usize, cols: usize) -> Result<Cover, CoverError> {
    let cover = generate_brick_pieces(word, rows, cols)?;
    cover.check_tiling()?;
    let report = verify_lcl(&cover);
    if report.verdict == LclVerdict::Fail {
        return Err(CoverError::Lcl(Box::new(report)));
    }
    Ok(cover)
}

/// `rows × cols` unit squares with aligned corners. Four squares meet at
/// every grid vertex, so this is never an LCL cover.
pub fn generate_aligned_grid(word: PolygonWord, rows: usize, cols: usize) -> Result<Cover, CoverError> {
    if rows < 2 || cols < 2 {
        return Err(CoverError::Layout(format!("grid needs at least 2x2 squares, got {rows}x{cols}")));
    }
    let mut cells = Vec::new();
    for r in 0..rows {
        for k in 0..cols {
            let (x0, y0) = (q(k as i64), q(r as i64));
            let (x1, y1) = (q(k as i64 + 1), q(r as i64 + 1));
            cells.push(CoverCell::new(format!("r{r}c{k}"), vec![rect(&x0, &y0, &x1, &y1)]));
        }
    }
    Cover::new(word, cols as i64, rows as i64, cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_constraints() {
        assert!(matches!(generate_brick_pieces(PolygonWord::Torus, 3, 4), Err(CoverError::Layout(_))));
        assert!(matches!(generate_brick_pieces(PolygonWord::Torus, 2, 4), Err(CoverError::Layout(_))));
        assert!(matches!(generate_brick_pieces(PolygonWord::Torus, 4, 1), Err(CoverError::Layout(_))));
    }

    #[test]
    fn cell_counts() {
        let t = generate_brick_pieces(PolygonWord::Torus, 4, 4).unwrap();
        assert_eq!(t.len(), 16);
        t.check_tiling().unwrap();
        let p = generate_brick_pieces(PolygonWord::Projective, 4, 4).unwrap();
        assert_eq!(p.len(), 14);
        p.check_tiling().unwrap();
        let k = generate_brick_pieces(PolygonWord::Klein, 6, 6).unwrap();
        assert_eq!(k.len(), 3 * 6 + 3 * 5);
        k.check_tiling().unwrap();
    }

    #[test]
    fn torus_halves_merge_within_a_row() {
        let t = generate_brick_pieces(PolygonWord::Torus, 4, 4).unwrap();
        let c = t.cells.iter().find(|c| c.id == "r1c0").unwrap();
        assert_eq!(c.pieces.len(), 2);
        assert_eq!(c.area(), q(1));
        assert!(t.cells.iter().all(|c| c.area() == q(1)));
    }

    #[test]
    fn projective_halves_join_mirrored_end_bricks() {
        let p = generate_brick_pieces(PolygonWord::Projective, 4, 4).unwrap();
        // Row 1 mirrors row 2: its right half r1c4 absorbs r2c0.
        let r1c4 = p.cells.iter().find(|c| c.id == "r1c4").unwrap();
        assert_eq!(r1c4.pieces.len(), 2);
        assert_eq!(r1c4.area(), ratio(3, 2));
        assert!(p.cells.iter().all(|c| c.id != "r2c0"));
        let r0c3 = p.cells.iter().find(|c| c.id == "r0c3").unwrap();
        assert_eq!(r0c3.pieces.len(), 2);
    }

    #[test]
    fn aligned_grid_is_a_tiling() {
        let g = generate_aligned_grid(PolygonWord::Torus, 4, 4).unwrap();
        assert_eq!(g.len(), 16);
        g.check_tiling().unwrap();
    }
}
