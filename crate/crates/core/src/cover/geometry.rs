//! Exact planar predicates over rational points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pt {
    pub x: Q,
    pub y: Q,
}

impl Pt {
    pub fn new(x: Q, y: Q) -> Self {
        Pt { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Pt::new(q(x), q(y))
    }
}

impl std::fmt::Display for Pt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Twice the signed area of triangle `abc`; positive when counterclockwise.
pub fn cross(a: &Pt, b: &Pt, c: &Pt) -> Q {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// Signed area of a polygon (shoelace).
pub fn signed_area(poly: &[Pt]) -> Q {
    let n = poly.len();
    let mut twice = Q::zero();
    for i in 0..n {
        let (a, b) = (&poly[i], &poly[(i + 1) % n]);
        twice += &a.x * &b.y - &b.x * &a.y;
    }
    twice / q(2)
}

/// `p` lies on the closed segment `ab`.
pub fn on_segment(p: &Pt, a: &Pt, b: &Pt) -> bool {
    cross(a, b, p).is_zero()
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Parameter of `p` along `ab` (assumes `p` on the line, `a != b`).
pub fn param(p: &Pt, a: &Pt, b: &Pt) -> Q {
    if a.x != b.x {
        (&p.x - &a.x) / (&b.x - &a.x)
    } else {
        (&p.y - &a.y) / (&b.y - &a.y)
    }
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_meet(a: &Pt, b: &Pt, c: &Pt, d: &Pt) -> bool {
    let d1 = cross(c, d, a).signum();
    let d2 = cross(c, d, b).signum();
    let d3 = cross(a, b, c).signum();
    let d4 = cross(a, b, d).signum();
    if d1 != d2 && d3 != d4 && !d1.is_zero() && !d2.is_zero() && !d3.is_zero() && !d4.is_zero() {
        return true;
    }
    on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) || on_segment(d, a, b)
}

/// No two non-adjacent edges meet, adjacent edges meet only at their shared
/// vertex, and no vertex repeats.
pub fn is_simple_polygon(poly: &[Pt]) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            if poly[i] == poly[j] {
                return false;
            }
        }
    }
    for i in 0..n {
        let (a, b) = (&poly[i], &poly[(i + 1) % n]);
        for j in i + 1..n {
            let (c, d) = (&poly[j], &poly[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Edges sharing a vertex overlap only when they fold back.
                let (p, shared, r) = if j == i + 1 { (a, b, d) } else { (b, a, c) };
                if on_segment(r, p, shared) || on_segment(p, shared, r) {
                    return false;
                }
            } else if segments_meet(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// Triangulation of a simple counterclockwise polygon by ear clipping.
pub fn triangulate(poly: &[Pt]) -> Vec<[Pt; 3]> {
    let mut v: Vec<Pt> = poly.to_vec();
    let mut out = Vec::new();
    while v.len() > 3 {
        let n = v.len();
        let mut clipped = false;
        for i in 0..n {
            let (a, b, c) = (&v[(i + n - 1) % n], &v[i], &v[(i + 1) % n]);
            let turn = cross(a, b, c);
            if turn.is_zero() {
                v.remove(i);
                clipped = true;
                break;
            }
            if turn.is_negative() {
                continue;
            }
            let blocked = v
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i && *k != (i + n - 1) % n && *k != (i + 1) % n)
                .any(|(_, p)| in_closed_triangle(p, a, b, c));
            if !blocked {
                out.push([a.clone(), b.clone(), c.clone()]);
                v.remove(i);
                clipped = true;
                break;
            }
        }
        assert!(clipped, "polygon is not simple and counterclockwise");
    }
    if v.len() == 3 && cross(&v[0], &v[1], &v[2]).is_positive() {
        out.push([v[0].clone(), v[1].clone(), v[2].clone()]);
    }
    out
}

fn in_closed_triangle(p: &Pt, a: &Pt, b: &Pt, c: &Pt) -> bool {
    !cross(a, b, p).is_negative() && !cross(b, c, p).is_negative() && !cross(c, a, p).is_negative()
}

/// Interiors of two counterclockwise triangles overlap (separating axis test).
pub fn triangle_interiors_overlap(s: &[Pt; 3], t: &[Pt; 3]) -> bool {
    for (tri, other) in [(s, t), (t, s)] {
        for i in 0..3 {
            let (a, b) = (&tri[i], &tri[(i + 1) % 3]);
            // `other` lies entirely on the closed outer side of edge ab.
            if other.iter().all(|p| !cross(a, b, p).is_positive()) {
                return false;
            }
        }
    }
    true
}

/// Axis-aligned bounding box `(min, max)`.
pub fn bbox(poly: &[Pt]) -> (Pt, Pt) {
    let mut lo = poly[0].clone();
    let mut hi = poly[0].clone();
    for p in &poly[1..] {
        if p.x < lo.x {
            lo.x = p.x.clone();
        }
        if p.y < lo.y {
            lo.y = p.y.clone();
        }
        if p.x > hi.x {
            hi.x = p.x.clone();
        }
        if p.y > hi.y {
            hi.y = p.y.clone();
        }
    }
    (lo, hi)
}

/// Two bounding boxes overlap with positive area.
pub fn boxes_overlap(a: &(Pt, Pt), b: &(Pt, Pt)) -> bool {
    a.0.x < b.1.x && b.0.x < a.1.x && a.0.y < b.1.y && b.0.y < a.1.y
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`, counterclockwise.
pub fn rect(x0: &Q, y0: &Q, x1: &Q, y1: &Q) -> Vec<Pt> {
    vec![
        Pt::new(x0.clone(), y0.clone()),
        Pt::new(x1.clone(), y0.clone()),
        Pt::new(x1.clone(), y1.clone()),
        Pt::new(x0.clone(), y1.clone()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(pts: &[(i64, i64)]) -> Vec<Pt> {
        pts.iter().map(|&(x, y)| Pt::int(x, y)).collect()
    }

    #[test]
    fn areas_and_orientation() {
        let sq = poly(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        assert_eq!(signed_area(&sq), q(4));
        let rev: Vec<Pt> = sq.iter().rev().cloned().collect();
        assert_eq!(signed_area(&rev), q(-4));
    }

    #[test]
    fn simplicity() {
        assert!(is_simple_polygon(&poly(&[(0, 0), (2, 0), (2, 2), (0, 2)])));
        assert!(!is_simple_polygon(&poly(&[(0, 0), (2, 2), (2, 0), (0, 2)])));
        assert!(!is_simple_polygon(&poly(&[(0, 0), (2, 0), (1, 0)])));
        assert!(is_simple_polygon(&poly(&[(0, 0), (1, 0), (2, 0), (2, 1), (0, 1)])));
    }

    #[test]
    fn ear_clipping_preserves_area() {
        let l = poly(&[(0, 0), (3, 0), (3, 1), (1, 1), (1, 3), (0, 3)]);
        let tris = triangulate(&l);
        let total: Q = tris.iter().map(|t| signed_area(t)).sum();
        assert_eq!(total, signed_area(&l));
        assert_eq!(tris.len(), 4);
    }

    #[test]
    fn triangle_overlap() {
        let a = [Pt::int(0, 0), Pt::int(2, 0), Pt::int(0, 2)];
        let b = [Pt::int(2, 0), Pt::int(2, 2), Pt::int(0, 2)];
        let c = [Pt::int(1, 0), Pt::int(3, 0), Pt::int(1, 2)];
        assert!(!triangle_interiors_overlap(&a, &b));
        assert!(triangle_interiors_overlap(&a, &c));
        assert!(triangle_interiors_overlap(&a, &a));
    }

    #[test]
    fn segment_meeting() {
        let (a, b) = (Pt::int(0, 0), Pt::int(2, 2));
        assert!(segments_meet(&a, &b, &Pt::int(0, 2), &Pt::int(2, 0)));
        assert!(segments_meet(&a, &b, &Pt::int(2, 2), &Pt::int(3, 0)));
        assert!(!segments_meet(&a, &b, &Pt::int(1, 0), &Pt::int(2, 0)));
        assert!(on_segment(&Pt::new(ratio(1, 2), ratio(1, 2)), &a, &b));
    }
}
