//! Covers of the circle by arcs.

use std::collections::BTreeSet;

use serde::Serialize;

use super::lcl::{Axiom, LclVerdict};
use super::CoverError;
use crate::graph::DigitalGraph;

/// Arc `[start, start + length]` on a circle of integer circumference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub id: String,
    pub start: i64,
    pub length: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cover1D {
    pub circumference: i64,
    pub arcs: Vec<Arc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircleViolation {
    pub axiom: Axiom,
    pub arcs: Vec<usize>,
    pub shared_points: Vec<i64>,
    pub shared_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircleReport {
    pub verdict: LclVerdict,
    pub violations: Vec<CircleViolation>,
}

impl Cover1D {
    fn points(&self, a: &Arc) -> BTreeSet<i64> {
        (0..=a.length).map(|t| (a.start + t).rem_euclid(self.circumference)).collect()
    }

    fn unit_segments(&self, a: &Arc) -> BTreeSet<i64> {
        (0..a.length).map(|t| (a.start + t).rem_euclid(self.circumference)).collect()
    }

    fn endpoints(&self, a: &Arc) -> [i64; 2] {
        [a.start.rem_euclid(self.circumference), (a.start + a.length).rem_euclid(self.circumference)]
    }
}

/// The circle of circumference `n` cut into `n` unit arcs `a0 … a{n-1}`.
/// Fails unless the arcs form an LCL cover, which needs `n ≥ 4`.
pub fn circle_cover(n: usize) -> Result<Cover1D, CoverError> {
    if n == 0 {
        return Err(CoverError::Layout("a circle cover needs at least one arc".into()));
    }
    let cover = Cover1D {
        circumference: n as i64,
        arcs: (0..n)
            .map(|k| Arc {
                id: format!("a{k}"),
                start: k as i64,
                length: 1,
            })
            .collect(),
    };
    let report = verify_lcl_1d(&cover);
    if report.verdict == LclVerdict::Fail {
        return Err(CoverError::CircleLcl(Box::new(report)));
    }
    Ok(cover)
}

/// LCL for arcs: every arc is embedded, distinct arcs meet in at most one
/// point which is an endpoint of both, no three arcs meet, and arcs that
/// meet pairwise in threes violate LC.
pub fn verify_lcl_1d(cover: &Cover1D) -> CircleReport {
    let c = cover.circumference;
    let mut violations = Vec::new();
    let pts: Vec<BTreeSet<i64>> = cover.arcs.iter().map(|a| cover.points(a)).collect();
    let segs: Vec<BTreeSet<i64>> = cover.arcs.iter().map(|a| cover.unit_segments(a)).collect();
    for (i, a) in cover.arcs.iter().enumerate() {
        if a.length <= 0 || a.length >= c {
            violations.push(CircleViolation {
                axiom: Axiom::LlA,
                arcs: vec![i, i],
                shared_points: cover.endpoints(a).to_vec(),
                shared_length: segs[i].len(),
            });
        }
    }
    let n = cover.arcs.len();
    let meet = |i: usize, j: usize| pts[i].intersection(&pts[j]).next().is_some();
    for i in 0..n {
        for j in i + 1..n {
            let shared: Vec<i64> = pts[i].intersection(&pts[j]).copied().collect();
            if shared.is_empty() {
                continue;
            }
            let shared_length = segs[i].intersection(&segs[j]).count();
            let at_ends = shared.len() == 1
                && cover.endpoints(&cover.arcs[i]).contains(&shared[0])
                && cover.endpoints(&cover.arcs[j]).contains(&shared[0]);
            if shared_length > 0 || !at_ends {
                violations.push(CircleViolation {
                    axiom: Axiom::LlA,
                    arcs: vec![i, j],
                    shared_points: shared,
                    shared_length,
                });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !(meet(i, j) && meet(i, k) && meet(j, k)) {
                    continue;
                }
                let common: Vec<i64> = pts[i].iter().filter(|p| pts[j].contains(p) && pts[k].contains(p)).copied().collect();
                let axiom = if common.is_empty() { Axiom::Lc } else { Axiom::LlB };
                violations.push(CircleViolation {
                    axiom,
                    arcs: vec![i, j, k],
                    shared_points: common,
                    shared_length: 0,
                });
            }
        }
    }
    let verdict = if violations.is_empty() { LclVerdict::Pass } else { LclVerdict::Fail };
    CircleReport { verdict, violations }
}

/// Intersection graph of an LCL arc cover.
pub fn nerve_1d(cover: &Cover1D) -> Result<DigitalGraph, CoverError> {
    let report = verify_lcl_1d(cover);
    if report.verdict == LclVerdict::Fail {
        return Err(CoverError::CircleLcl(Box::new(report)));
    }
    let mut g = DigitalGraph::new();
    for a in &cover.arcs {
        g.insert_point(a.id.clone())?;
    }
    for (i, a) in cover.arcs.iter().enumerate() {
        for b in &cover.arcs[i + 1..] {
            if cover.points(a).intersection(&cover.points(b)).next().is_some() {
                g.insert_edge(&a.id, &b.id)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{is_digital_1_sphere, minimal_1_sphere};

    #[test]
    fn nerves_are_cycles() {
        let c4 = nerve_1d(&circle_cover(4).unwrap()).unwrap();
        assert!(c4.is_isomorphic(&minimal_1_sphere()));
        for n in 4..10 {
            let g = nerve_1d(&circle_cover(n).unwrap()).unwrap();
            assert_eq!(g.order(), n);
            assert!(is_digital_1_sphere(&g));
        }
    }

    #[test]
    fn small_circles_fail() {
        for n in 1..4 {
            assert!(matches!(circle_cover(n), Err(CoverError::CircleLcl(_))), "n = {n}");
        }
        let Err(CoverError::CircleLcl(report)) = circle_cover(3) else { unreachable!() };
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].axiom, Axiom::Lc);
        let Err(CoverError::CircleLcl(report)) = circle_cover(2) else { unreachable!() };
        assert_eq!(report.violations[0].axiom, Axiom::LlA);
    }

    #[test]
    fn overlapping_arcs_fail() {
        let cover = Cover1D {
            circumference: 6,
            arcs: vec![
                Arc { id: "a".into(), start: 0, length: 3 },
                Arc { id: "b".into(), start: 2, length: 2 },
                Arc { id: "c".into(), start: 4, length: 2 },
            ],
        };
        let report = verify_lcl_1d(&cover);
        assert_eq!(report.violations[0].axiom, Axiom::LlA);
        assert_eq!(report.violations[0].shared_length, 1);
    }
}
