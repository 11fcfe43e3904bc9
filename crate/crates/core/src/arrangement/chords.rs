//! Faces of a convex polygon cut by full chords, from the planar graph of
//! chord pieces and boundary pieces and the Euler relation.

use std::collections::{HashMap, HashSet};

use crate::exact::matrix::dot;
use crate::exact::FieldElement;
use crate::scheme::polytope::normalize;
use crate::scheme::{Point, Polytope};

use super::{check_cap, AffineHyperplane, ArrangementError};

fn meet(a: &[FieldElement], b: &FieldElement, c: &[FieldElement], d: &FieldElement) -> Option<Point> {
    let det = &a[0] * &c[1] - &a[1] * &c[0];
    if det.is_zero() {
        return None;
    }
    let inv = det.inv().ok()?;
    let x0 = (b * &c[1] - &a[1] * d) * inv.clone();
    let x1 = (&a[0] * d - b * &c[0]) * inv;
    Some(vec![x0, x1])
}

/// Sorts points along a direction and counts the pieces between consecutive distinct ones.
fn pieces(points: &mut Vec<Point>, dir: &[FieldElement]) -> usize {
    let field = dir[0].field().clone();
    points.sort_by(|p, q| dot(dir, p, &field).cmp_exact(&dot(dir, q, &field)));
    points.dedup();
    points.len().saturating_sub(1)
}

/// Number of bounded faces of `window` minus the given lines, counting only
/// lines that meet the interior. Every such line is a full chord.
pub fn count_faces_chords(window: &Polytope, lines: &[AffineHyperplane]) -> Result<u64, ArrangementError> {
    if window.dim != 2 {
        return Err(ArrangementError::UnsupportedDimension(window.dim));
    }
    let mut seen = HashSet::new();
    let kept: Vec<&AffineHyperplane> = lines
        .iter()
        .filter(|h| {
            let (lo, hi) = window.extent(&h.normal);
            (&h.offset - &lo).sign() > 0 && (&hi - &h.offset).sign() > 0
        })
        .filter(|h| seen.insert(normalize(&[h.normal[0].clone(), h.normal[1].clone(), h.offset.clone()])))
        .collect();
    check_cap(kept.len() * kept.len())?;
    let mut vertices: HashSet<Point> = window.vertices.iter().cloned().collect();
    let mut edges = 0usize;
    let mut on_facet: Vec<Vec<Point>> =
        window.facets.iter().map(|f| f.vertices.iter().map(|&v| window.vertices[v].clone()).collect()).collect();
    for (i, h) in kept.iter().enumerate() {
        let mut pts: Vec<Point> = Vec::new();
        for (fi, f) in window.facets.iter().enumerate() {
            if let Some(x) = meet(&h.normal, &h.offset, &f.normal, &f.offset) {
                if window.contains_closed(&x) {
                    on_facet[fi].push(x.clone());
                    pts.push(x);
                }
            }
        }
        for (j, g) in kept.iter().enumerate() {
            if i != j {
                if let Some(x) = meet(&h.normal, &h.offset, &g.normal, &g.offset) {
                    if window.contains_strict(&x) {
                        pts.push(x);
                    }
                }
            }
        }
        let dir = [-&h.normal[1], h.normal[0].clone()];
        edges += pieces(&mut pts, &dir);
        vertices.extend(pts);
    }
    for (fi, f) in window.facets.iter().enumerate() {
        let dir = [-&f.normal[1], f.normal[0].clone()];
        edges += pieces(&mut on_facet[fi], &dir);
    }
    // Connected graph: V − E + F = 2 with one unbounded face.
    Ok((edges + 1 - vertices.len()) as u64)
}

/// Multiplicity profile of interior crossing points, for diagnostics.
pub fn crossing_profile(window: &Polytope, lines: &[AffineHyperplane]) -> HashMap<usize, usize> {
    let mut through: HashMap<Point, HashSet<usize>> = HashMap::new();
    for (i, h) in lines.iter().enumerate() {
        for (j, g) in lines.iter().enumerate().skip(i + 1) {
            if let Some(x) = meet(&h.normal, &h.offset, &g.normal, &g.offset) {
                if window.contains_strict(&x) {
                    let e = through.entry(x).or_default();
                    e.insert(i);
                    e.insert(j);
                }
            }
        }
    }
    let mut hist = HashMap::new();
    for s in through.values() {
        *hist.entry(s.len()).or_insert(0) += 1;
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::count_components_hyperplane_cut;
    use crate::exact::FieldContext;

    fn line(f: &FieldContext, a: i64, b: i64, o: &str) -> AffineHyperplane {
        AffineHyperplane { normal: vec![f.from_int(a), f.from_int(b)], offset: f.element_from_strs(&[o]).unwrap() }
    }

    #[test]
    fn grid_and_pencil() {
        let f = FieldContext::rationals();
        let sq = Polytope::cube(&f.zero(), &f.one(), 2).unwrap();
        let grid = vec![line(&f, 1, 0, "1/3"), line(&f, 1, 0, "2/3"), line(&f, 0, 1, "1/3"), line(&f, 0, 1, "2/3")];
        assert_eq!(count_faces_chords(&sq, &grid).unwrap(), 9);
        let pencil = vec![line(&f, 1, 0, "1/2"), line(&f, 0, 1, "1/2"), line(&f, 1, 1, "1"), line(&f, 1, -1, "0")];
        assert_eq!(count_faces_chords(&sq, &pencil).unwrap(), 8);
        assert_eq!(count_components_hyperplane_cut(&sq, &pencil).unwrap(), 8);
        assert_eq!(crossing_profile(&sq, &pencil).get(&4), Some(&1));
    }

    #[test]
    fn lines_missing_the_interior_are_ignored() {
        let f = FieldContext::rationals();
        let sq = Polytope::cube(&f.zero(), &f.one(), 2).unwrap();
        let lines = vec![line(&f, 1, 0, "0"), line(&f, 1, 1, "2"), line(&f, 1, 0, "1/2"), line(&f, 2, 0, "1")];
        assert_eq!(count_faces_chords(&sq, &lines).unwrap(), 2);
    }
}

#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;
    use crate::arrangement::count_components_hyperplane_cut;
    use crate::exact::FieldContext;

    /// Lines a·x + b·y = o/8 with small integer data.
    fn lines() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
        prop::collection::vec((-3i64..=3, -3i64..=3, -24i64..=24), 0..9)
    }

    fn build(f: &FieldContext, raw: &[(i64, i64, i64)]) -> Vec<AffineHyperplane> {
        raw.iter()
            .filter(|(a, b, _)| (*a, *b) != (0, 0))
            .map(|&(a, b, o)| AffineHyperplane {
                normal: vec![f.from_int(a), f.from_int(b)],
                offset: f.element_from_strs(&[format!("{o}/8")]).unwrap(),
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn cut_count_matches_planar_count(raw in lines()) {
            let f = FieldContext::rationals();
            let sq = Polytope::cube(&f.zero(), &f.one(), 2).unwrap();
            let ls = build(&f, &raw);
            prop_assert_eq!(count_components_hyperplane_cut(&sq, &ls).unwrap(), count_faces_chords(&sq, &ls).unwrap());
        }

        #[test]
        fn cut_count_ignores_insertion_order(raw in lines(), rot in 0usize..8) {
            let f = FieldContext::rationals();
            let sq = Polytope::cube(&f.zero(), &f.one(), 2).unwrap();
            let mut ls = build(&f, &raw);
            let before = count_components_hyperplane_cut(&sq, &ls).unwrap();
            if !ls.is_empty() {
                let k = rot % ls.len();
                ls.rotate_left(k);
                ls.reverse();
            }
            prop_assert_eq!(count_components_hyperplane_cut(&sq, &ls).unwrap(), before);
        }
    }
}
