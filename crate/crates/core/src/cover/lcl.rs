//! LCL verification and the nerve of a cover.

use serde::Serialize;

use super::complex::{CoverComplex, IntersectionFeature};
use super::{Cover, CoverError};
use crate::graph::DigitalGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    #[serde(rename = "LC")]
    Lc,
    #[serde(rename = "LL-a")]
    LlA,
    #[serde(rename = "LL-b")]
    LlB,
    #[serde(rename = "LL-c")]
    LlC,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axiom::Lc => "LC",
            Axiom::LlA => "LL-a",
            Axiom::LlB => "LL-b",
            Axiom::LlC => "LL-c",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// Offending cell indices; `[i, i]` flags cell `i` meeting itself.
    pub cells: Vec<usize>,
    pub feature: IntersectionFeature,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LclVerdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LclReport {
    pub verdict: LclVerdict,
    pub violations: Vec<Violation>,
}

impl LclReport {
    pub fn passed(&self) -> bool {
        self.verdict == LclVerdict::Pass
    }

    pub fn count(&self, axiom: Axiom) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Checks the locally-centred lump axioms on the cells as given. Tiling is
/// not required, so sub-collections can be checked too.
///
/// * LL-a: each cell is a closed disk in the quotient, and every nonempty
///   pairwise intersection is a single arc.
/// * LL-b: every nonempty triple intersection is one point, an endpoint of
///   each of the three pairwise arcs.
/// * LL-c: every quadruple intersection is empty.
/// * LC: pairwise-meeting triples meet; pairwise-meeting quadruples cannot
///   satisfy LL-c and LC together and are reported as LC violations.
pub fn verify_lcl(cover: &Cover) -> LclReport {
    let cx = CoverComplex::new(cover);
    let n = cover.len();
    let mut violations = Vec::new();

    for i in 0..n {
        if let Some(detail) = cx.disk_defect(i) {
            violations.push(Violation {
                axiom: Axiom::LlA,
                cells: vec![i, i],
                feature: cx.intersection(&[i]),
                detail: format!("cell `{}` is not a disk: {detail}", cover.cells[i].id),
            });
        }
    }

    let nbrs: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| j != i && cx.meets(i, j)).collect()).collect();
    let meets = |i: usize, j: usize| nbrs[i].binary_search(&j).is_ok();
    let mut arcs = std::collections::BTreeMap::new();
    for (i, row) in nbrs.iter().enumerate() {
        for &j in row.iter().filter(|&&j| j > i) {
            let f = cx.intersection(&[i, j]);
            if f.as_single_arc().is_none() {
                violations.push(Violation {
                    axiom: Axiom::LlA,
                    cells: vec![i, j],
                    detail: format!("`{}` ∩ `{}` is not a 1-cell", cover.cells[i].id, cover.cells[j].id),
                    feature: f.clone(),
                });
            }
            arcs.insert((i, j), f);
        }
    }

    for i in 0..n {
        for &j in nbrs[i].iter().filter(|&&j| j > i) {
            for &k in nbrs[j].iter().filter(|&&k| k > j && meets(i, k)) {
                let f = cx.intersection(&[i, j, k]);
                let names = format!("`{}`, `{}`, `{}`", cover.cells[i].id, cover.cells[j].id, cover.cells[k].id);
                if f.is_empty() {
                    violations.push(Violation {
                        axiom: Axiom::Lc,
                        cells: vec![i, j, k],
                        feature: f,
                        detail: format!("{names} meet pairwise but have no common point"),
                    });
                    continue;
                }
                let endpoint_of_all = f.as_single_point().is_some_and(|p| {
                    [(i, j), (i, k), (j, k)].iter().all(|pair| {
                        arcs[pair]
                            .as_single_arc()
                            .and_then(|a| a.endpoints())
                            .is_some_and(|(a, b)| a == p || b == p)
                    })
                });
                if !endpoint_of_all {
                    violations.push(Violation {
                        axiom: Axiom::LlB,
                        cells: vec![i, j, k],
                        feature: f,
                        detail: format!("{names} do not meet in one common endpoint"),
                    });
                }
                for &l in nbrs[k].iter().filter(|&&l| l > k && meets(i, l) && meets(j, l)) {
                    let quad = [i, j, k, l];
                    let names = format!("{names}, `{}`", cover.cells[l].id);
                    let f4 = cx.intersection(&quad);
                    if !f4.is_empty() {
                        violations.push(Violation {
                            axiom: Axiom::LlC,
                            cells: quad.to_vec(),
                            feature: f4.clone(),
                            detail: format!("{names} share a point"),
                        });
                    }
                    violations.push(Violation {
                        axiom: Axiom::Lc,
                        cells: quad.to_vec(),
                        feature: f4,
                        detail: format!("{names} meet pairwise"),
                    });
                }
            }
        }
    }

    let verdict = if violations.is_empty() { LclVerdict::Pass } else { LclVerdict::Fail };
    LclReport { verdict, violations }
}

fn check_index(cover: &Cover, i: usize) -> Result<(), CoverError> {
    if i < cover.len() {
        Ok(())
    } else {
        Err(CoverError::InvalidIndex(i))
    }
}

fn check_distinct(cover: &Cover, cells: &[usize]) -> Result<(), CoverError> {
    for (a, &i) in cells.iter().enumerate() {
        check_index(cover, i)?;
        if cells[..a].contains(&i) {
            return Err(CoverError::InvalidIndex(i));
        }
    }
    Ok(())
}

/// Intersection of two distinct cells in the quotient.
pub fn pairwise_feature(cover: &Cover, i: usize, j: usize) -> Result<IntersectionFeature, CoverError> {
    check_distinct(cover, &[i, j])?;
    Ok(CoverComplex::new(cover).intersection(&[i, j]))
}

/// Intersection of three distinct cells in the quotient.
pub fn triple_feature(cover: &Cover, i: usize, j: usize, k: usize) -> Result<IntersectionFeature, CoverError> {
    check_distinct(cover, &[i, j, k])?;
    Ok(CoverComplex::new(cover).intersection(&[i, j, k]))
}

/// Intersection graph: one point per cell (named by its id), an edge for
/// every pair of cells that meet. The cover must tile and pass LCL.
pub fn nerve(cover: &Cover) -> Result<DigitalGraph, CoverError> {
    cover.check_tiling()?;
    let report = verify_lcl(cover);
    if !report.passed() {
        return Err(CoverError::Lcl(Box::new(report)));
    }
    let cx = CoverComplex::new(cover);
    let mut g = DigitalGraph::new();
    for c in &cover.cells {
        g.insert_point(c.id.clone())?;
    }
    for i in 0..cover.len() {
        for j in i + 1..cover.len() {
            if cx.meets(i, j) {
                g.insert_edge(&cover.cells[i].id, &cover.cells[j].id)?;
            }
        }
    }
    Ok(g)
}

/// Compares, for the neighbours `D_i` of cell `D_0`, which sub-families of
/// `{D_i}` meet with which sub-families of the boundary arcs
/// `C_i = D_0 ∩ D_i` meet. True iff the two patterns agree.
pub fn boundary_isomorphism_check(cover: &Cover, cell: usize) -> Result<bool, CoverError> {
    check_index(cover, cell)?;
    let report = verify_lcl(cover);
    if !report.passed() {
        return Err(CoverError::Lcl(Box::new(report)));
    }
    let cx = CoverComplex::new(cover);
    let nbrs: Vec<usize> = (0..cover.len()).filter(|&j| j != cell && cx.meets(cell, j)).collect();
    if nbrs.len() > 20 {
        return Err(CoverError::Layout(format!("cell {cell} has {} neighbours, too many to enumerate", nbrs.len())));
    }
    for subset in 1u32..(1 << nbrs.len()) {
        if subset.count_ones() < 2 {
            continue;
        }
        let family: Vec<usize> = (0..nbrs.len()).filter(|b| subset >> b & 1 == 1).map(|b| nbrs[b]).collect();
        let with_center: Vec<usize> = std::iter::once(cell).chain(family.iter().copied()).collect();
        let cells_meet = !cx.intersection(&family).is_empty();
        let arcs_meet = !cx.intersection(&with_center).is_empty();
        if cells_meet != arcs_meet {
            return Ok(false);
        }
    }
    Ok(true)
}
