//! Closed surfaces as glued squares `[0,n] × [0,m]`.
//!
//! Gluing rules, reading sides bottom (y = 0), right (x = n), top (y = m),
//! left (x = 0):
//!
//! | word       | bottom/top          | left/right           |
//! |------------|---------------------|----------------------|
//! | torus      | (x,0) ~ (x,m)       | (0,y) ~ (n,y)        |
//! | klein      | (x,0) ~ (x,m)       | (0,y) ~ (n,m−y)      |
//! | projective | (x,0) ~ (n−x,m)     | (0,y) ~ (n,m−y)      |
//!
//! The sphere folds adjacent sides instead: (x,0) ~ (0, x·m/n) and
//! (n,y) ~ (y·n/m, m).
//!
//! The class of a point is the orbit under these maps, closed under
//! composition (corners lie on two sides). Its canonical representative is
//! the lexicographically smallest point of the orbit.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::geometry::{Pt, Q};
use super::CoverError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonWord {
    Sphere,
    Torus,
    Klein,
    Projective,
}

impl PolygonWord {
    pub const ALL: [PolygonWord; 4] = [PolygonWord::Sphere, PolygonWord::Torus, PolygonWord::Klein, PolygonWord::Projective];

    pub fn name(self) -> &'static str {
        match self {
            PolygonWord::Sphere => "sphere",
            PolygonWord::Torus => "torus",
            PolygonWord::Klein => "klein",
            PolygonWord::Projective => "projective",
        }
    }

    /// The edge word read along bottom, right, top, left.
    pub fn letters(self) -> &'static str {
        match self {
            PolygonWord::Sphere => "ABB⁻¹A⁻¹",
            PolygonWord::Torus => "ABA⁻¹B⁻¹",
            PolygonWord::Klein => "ABAB⁻¹",
            PolygonWord::Projective => "ABAB",
        }
    }
}

impl fmt::Display for PolygonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolygonWord {
    type Err = CoverError;

    /// Accepts the surface name or its edge word (`⁻¹` or `^-1`, spaces ignored).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace("^-1", "⁻¹");
        PolygonWord::ALL
            .into_iter()
            .find(|w| w.name() == compact.to_lowercase() || w.letters() == compact)
            .ok_or_else(|| CoverError::UnknownWord(s.to_string()))
    }
}

/// Side of the square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Bottom, Side::Right, Side::Top, Side::Left];
}

/// A fundamental square with its gluing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub word: PolygonWord,
    pub n: Q,
    pub m: Q,
}

/// A point of the quotient surface.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuotientPoint {
    /// Lexicographically smallest point of the class.
    pub representative: Pt,
}

impl QuotientPoint {
    pub fn class_id(&self) -> String {
        format!("{},{}", self.representative.x, self.representative.y)
    }
}

impl Serialize for QuotientPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.representative.x.to_string(), self.representative.y.to_string()].serialize(s)
    }
}

impl Square {
    pub fn new(word: PolygonWord, n: Q, m: Q) -> Self {
        Square { word, n, m }
    }

    pub fn contains(&self, p: &Pt) -> bool {
        p.x >= Q::zero() && p.x <= self.n && p.y >= Q::zero() && p.y <= self.m
    }

    pub fn on_side(&self, side: Side, p: &Pt) -> bool {
        self.contains(p)
            && match side {
                Side::Bottom => p.y.is_zero(),
                Side::Right => p.x == self.n,
                Side::Top => p.y == self.m,
                Side::Left => p.x.is_zero(),
            }
    }

    pub fn on_boundary(&self, p: &Pt) -> bool {
        Side::ALL.iter().any(|&s| self.on_side(s, p))
    }

    /// Image of a point of `side` on the side it is glued to.
    pub fn glue(&self, side: Side, p: &Pt) -> Pt {
        let (n, m) = (&self.n, &self.m);
        let (x, y) = (p.x.clone(), p.y.clone());
        match (self.word, side) {
            (PolygonWord::Torus | PolygonWord::Klein, Side::Bottom) => Pt::new(x, m.clone()),
            (PolygonWord::Torus | PolygonWord::Klein, Side::Top) => Pt::new(x, Q::zero()),
            (PolygonWord::Torus, Side::Left) => Pt::new(n.clone(), y),
            (PolygonWord::Torus, Side::Right) => Pt::new(Q::zero(), y),
            (PolygonWord::Klein | PolygonWord::Projective, Side::Left) => Pt::new(n.clone(), m - y),
            (PolygonWord::Klein | PolygonWord::Projective, Side::Right) => Pt::new(Q::zero(), m - y),
            (PolygonWord::Projective, Side::Bottom) => Pt::new(n - x, m.clone()),
            (PolygonWord::Projective, Side::Top) => Pt::new(n - x, Q::zero()),
            (PolygonWord::Sphere, Side::Bottom) => Pt::new(Q::zero(), x * m / n),
            (PolygonWord::Sphere, Side::Left) => Pt::new(y * n / m, Q::zero()),
            (PolygonWord::Sphere, Side::Right) => Pt::new(y * n / m, m.clone()),
            (PolygonWord::Sphere, Side::Top) => Pt::new(n.clone(), x * m / n),
        }
    }

    /// Every point identified with `p`, including `p`.
    pub fn orbit(&self, p: &Pt) -> BTreeSet<Pt> {
        let mut seen = BTreeSet::from([p.clone()]);
        let mut stack = vec![p.clone()];
        while let Some(cur) = stack.pop() {
            for side in Side::ALL {
                if self.on_side(side, &cur) {
                    let img = self.glue(side, &cur);
                    if seen.insert(img.clone()) {
                        stack.push(img);
                    }
                }
            }
        }
        seen
    }

    pub fn class_of(&self, p: &Pt) -> Result<QuotientPoint, CoverError> {
        if !self.contains(p) {
            return Err(CoverError::OutsideSquare(p.to_string()));
        }
        Ok(self.class_unchecked(p))
    }

    pub(crate) fn class_unchecked(&self, p: &Pt) -> QuotientPoint {
        let representative = if self.on_boundary(p) {
            self.orbit(p).into_iter().next().expect("orbit contains p")
        } else {
            p.clone()
        };
        QuotientPoint { representative }
    }
}

/// Class of `p` in the square `[0,n] × [0,m]` glued by `word`.
pub fn quotient_class(word: PolygonWord, p: &Pt, n: i64, m: i64) -> Result<QuotientPoint, CoverError> {
    Square::new(word, super::geometry::q(n), super::geometry::q(m)).class_of(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::geometry::{q, ratio};

    fn sq(word: PolygonWord) -> Square {
        Square::new(word, q(4), q(6))
    }

    #[test]
    fn torus_sides() {
        let s = sq(PolygonWord::Torus);
        assert_eq!(s.class_of(&Pt::int(0, 1)).unwrap(), s.class_of(&Pt::int(4, 1)).unwrap());
        assert_eq!(s.class_of(&Pt::int(3, 0)).unwrap(), s.class_of(&Pt::int(3, 6)).unwrap());
        assert_ne!(s.class_of(&Pt::int(1, 0)).unwrap(), s.class_of(&Pt::int(3, 6)).unwrap());
    }

    #[test]
    fn torus_corners_form_one_class() {
        let s = sq(PolygonWord::Torus);
        let corners = [(0, 0), (4, 0), (0, 6), (4, 6)].map(|(x, y)| s.class_of(&Pt::int(x, y)).unwrap());
        assert!(corners.iter().all(|c| c == &corners[0]));
        assert_eq!(s.orbit(&Pt::int(0, 0)).len(), 4);
    }

    #[test]
    fn projective_antipodal() {
        let s = sq(PolygonWord::Projective);
        assert_eq!(s.class_of(&Pt::int(1, 0)).unwrap(), s.class_of(&Pt::int(3, 6)).unwrap());
        assert_eq!(s.class_of(&Pt::int(0, 1)).unwrap(), s.class_of(&Pt::int(4, 5)).unwrap());
        // Corners split into two classes of two.
        assert_eq!(s.orbit(&Pt::int(0, 0)), BTreeSet::from([Pt::int(0, 0), Pt::int(4, 6)]));
        assert_eq!(s.orbit(&Pt::int(4, 0)), BTreeSet::from([Pt::int(4, 0), Pt::int(0, 6)]));
    }

    #[test]
    fn klein_rules() {
        let s = sq(PolygonWord::Klein);
        assert_eq!(s.class_of(&Pt::int(1, 0)).unwrap(), s.class_of(&Pt::int(1, 6)).unwrap());
        assert_eq!(s.class_of(&Pt::int(0, 1)).unwrap(), s.class_of(&Pt::int(4, 5)).unwrap());
        assert_eq!(s.orbit(&Pt::int(0, 0)).len(), 4);
    }

    #[test]
    fn sphere_fold() {
        let s = sq(PolygonWord::Sphere);
        assert_eq!(s.class_of(&Pt::int(2, 0)).unwrap(), s.class_of(&Pt::int(0, 3)).unwrap());
        assert_eq!(
            s.class_of(&Pt::int(4, 3)).unwrap(),
            s.class_of(&Pt::new(q(2), q(6))).unwrap()
        );
        assert_eq!(s.orbit(&Pt::int(4, 0)), BTreeSet::from([Pt::int(4, 0), Pt::int(0, 6)]));
        assert_eq!(s.orbit(&Pt::int(0, 0)).len(), 1);
        assert_eq!(s.glue(Side::Bottom, &Pt::new(ratio(1, 3), q(0))), Pt::new(q(0), ratio(1, 2)));
    }

    #[test]
    fn interior_points_are_alone() {
        for w in PolygonWord::ALL {
            let p = Pt::new(ratio(3, 2), ratio(5, 2));
            assert_eq!(sq(w).class_of(&p).unwrap().representative, p);
        }
    }

    #[test]
    fn outside_rejected() {
        assert!(matches!(
            quotient_class(PolygonWord::Torus, &Pt::int(5, 0), 4, 4),
            Err(CoverError::OutsideSquare(_))
        ));
    }

    #[test]
    fn word_parsing() {
        assert_eq!("torus".parse::<PolygonWord>().unwrap(), PolygonWord::Torus);
        assert_eq!("A B A^-1 B^-1".parse::<PolygonWord>().unwrap(), PolygonWord::Torus);
        assert_eq!("ABAB".parse::<PolygonWord>().unwrap(), PolygonWord::Projective);
        assert!("AABBCC".parse::<PolygonWord>().is_err());
    }
}
