//! LCL covers of closed surfaces and their nerves.
//!
//! A surface is a square `[0,n] × [0,m]` glued by a [`PolygonWord`]. A cover
//! is a list of cells; each cell is one or more simple counterclockwise
//! polygons ("pieces") whose union, after gluing, is the cell. Several pieces
//! are needed when a cell straddles a glued side.
//!
//! All geometry is exact rational arithmetic.

mod brick;
mod circle;
mod complex;
mod disk;
pub mod geometry;
mod lcl;
mod quotient;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use brick::{generate_aligned_grid, generate_brick_cover, generate_brick_pieces};
pub use circle::{circle_cover, nerve_1d, verify_lcl_1d, Arc, CircleReport, CircleViolation, Cover1D};
pub use complex::{Curve, CurveKind, CoverComplex, IntersectionFeature};
pub use disk::{grid_disk_nerve, square_name, Square as GridSquare};
pub use geometry::{Pt, Q};
pub use lcl::{boundary_isomorphism_check, nerve, pairwise_feature, triple_feature, verify_lcl, Axiom, LclReport, LclVerdict, Violation};
pub use quotient::{quotient_class, PolygonWord, QuotientPoint, Side, Square};

use crate::error::GraphError;
use geometry::{bbox, boxes_overlap, is_simple_polygon, signed_area, triangle_interiors_overlap, triangulate};

type TriangulatedPiece<'a> = (&'a str, (Pt, Pt), Vec<[Pt; 3]>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("unknown polygon word `{0}` (expected sphere, torus, klein or projective)")]
    UnknownWord(String),
    #[error("point {0} lies outside the fundamental square")]
    OutsideSquare(String),
    #[error("invalid layout: {0}")]
    Layout(String),
    #[error("cell `{id}`: {reason}")]
    InvalidCell { id: String, reason: String },
    #[error("duplicate cell id `{0}`")]
    DuplicateCell(String),
    #[error("cells do not tile the square: {0}")]
    NotATiling(String),
    #[error("cover fails LCL verification ({} violations)", .0.violations.len())]
    Lcl(Box<LclReport>),
    #[error("circle cover fails LCL verification ({} violations)", .0.violations.len())]
    CircleLcl(Box<circle::CircleReport>),
    #[error("cell index {0} out of range or repeated")]
    InvalidIndex(usize),
    #[error("mask is empty")]
    EmptyMask,
    #[error("mask is not connected")]
    DisconnectedMask,
    #[error("malformed cover JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCell {
    pub id: String,
    pub pieces: Vec<Vec<Pt>>,
}

impl CoverCell {
    pub fn new(id: impl Into<String>, pieces: Vec<Vec<Pt>>) -> Self {
        CoverCell { id: id.into(), pieces }
    }

    pub fn area(&self) -> Q {
        self.pieces.iter().map(|p| signed_area(p)).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub square: Square,
    pub cells: Vec<CoverCell>,
}

impl Cover {
    /// Validates every piece (simple, counterclockwise, inside the square)
    /// and id uniqueness. Tiling is checked separately.
    pub fn new(word: PolygonWord, n: i64, m: i64, cells: Vec<CoverCell>) -> Result<Self, CoverError> {
        if n <= 0 || m <= 0 {
            return Err(CoverError::Layout(format!("square sides must be positive, got {n}x{m}")));
        }
        let square = Square::new(word, geometry::q(n), geometry::q(m));
        let mut ids = std::collections::BTreeSet::new();
        for cell in &cells {
            if !ids.insert(cell.id.as_str()) {
                return Err(CoverError::DuplicateCell(cell.id.clone()));
            }
            let invalid = |reason: String| CoverError::InvalidCell {
                id: cell.id.clone(),
                reason,
            };
            if cell.pieces.is_empty() {
                return Err(invalid("no pieces".into()));
            }
            for piece in &cell.pieces {
                if let Some(p) = piece.iter().find(|p| !square.contains(p)) {
                    return Err(CoverError::OutsideSquare(p.to_string()));
                }
                if !is_simple_polygon(piece) {
                    return Err(invalid("piece is not a simple polygon".into()));
                }
                if !signed_area(piece).is_positive() {
                    return Err(invalid("piece is not counterclockwise".into()));
                }
            }
        }
        Ok(Cover { square, cells })
    }

    pub fn word(&self) -> PolygonWord {
        self.square.word
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn ids(&self) -> Vec<&str> {
        self.cells.iter().map(|c| c.id.as_str()).collect()
    }

    /// Sub-collection with the given cell indices, in that order.
    pub fn subcover(&self, indices: &[usize]) -> Result<Cover, CoverError> {
        let cells = indices
            .iter()
            .map(|&i| self.cells.get(i).cloned().ok_or(CoverError::InvalidIndex(i)))
            .collect::<Result<_, _>>()?;
        Ok(Cover {
            square: self.square.clone(),
            cells,
        })
    }

    /// Areas sum to `n·m` and piece interiors are pairwise disjoint.
    pub fn check_tiling(&self) -> Result<(), CoverError> {
        let total: Q = self.cells.iter().map(CoverCell::area).sum();
        let expected = &self.square.n * &self.square.m;
        if total != expected {
            return Err(CoverError::NotATiling(format!("cell areas sum to {total}, square has area {expected}")));
        }
        let pieces: Vec<TriangulatedPiece> = self
            .cells
            .iter()
            .flat_map(|c| c.pieces.iter().map(move |p| (c.id.as_str(), bbox(p), triangulate(p))))
            .collect();
        for (i, (id_a, box_a, tris_a)) in pieces.iter().enumerate() {
            for (id_b, box_b, tris_b) in &pieces[i + 1..] {
                if !boxes_overlap(box_a, box_b) {
                    continue;
                }
                if tris_a.iter().any(|s| tris_b.iter().any(|t| triangle_interiors_overlap(s, t))) {
                    return Err(CoverError::NotATiling(format!("pieces of `{id_a}` and `{id_b}` overlap")));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let wire = WireCover {
            word: self.square.word,
            n: self.square.n.to_integer().to_string().parse().expect("integer side"),
            m: self.square.m.to_integer().to_string().parse().expect("integer side"),
            cells: self
                .cells
                .iter()
                .map(|c| WireCell {
                    id: c.id.clone(),
                    pieces: c
                        .pieces
                        .iter()
                        .map(|p| p.iter().map(|v| [v.x.to_string(), v.y.to_string()]).collect())
                        .collect(),
                })
                .collect(),
        };
        let mut s = serde_json::to_string(&wire).expect("cover serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Cover, CoverError> {
        let wire: WireCover = serde_json::from_str(text).map_err(|e| CoverError::Json(e.to_string()))?;
        let cells = wire
            .cells
            .into_iter()
            .map(|c| {
                let pieces = c
                    .pieces
                    .iter()
                    .map(|p| {
                        p.iter()
                            .map(|[x, y]| Ok(Pt::new(parse_rational(x)?, parse_rational(y)?)))
                            .collect::<Result<Vec<_>, CoverError>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(CoverCell::new(c.id, pieces))
            })
            .collect::<Result<Vec<_>, CoverError>>()?;
        Cover::new(wire.word, wire.n, wire.m, cells)
    }
}

/// Parses `"p"` or `"p/q"` with `q ≠ 0`.
pub fn parse_rational(s: &str) -> Result<Q, CoverError> {
    let bad = || CoverError::Json(format!("bad rational `{s}`"));
    let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        None => Ok(Q::from_integer(int(s)?)),
        Some((p, q)) => {
            let den = int(q)?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(int(p)?, den))
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireCover {
    word: PolygonWord,
    n: i64,
    m: i64,
    cells: Vec<WireCell>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireCell {
    id: String,
    pieces: Vec<Vec<[String; 2]>>,
}
