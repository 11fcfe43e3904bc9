//! Components of an open polytope minus affine hyperplanes, by inserting
//! hyperplanes one at a time and recursing into each new hyperplane.

use std::collections::HashSet;

use crate::exact::FieldElement;
use crate::scheme::Polytope;

use super::{AffineHyperplane, ArrangementError};

/// Strict inequality `a · x < b`.
type Ineq = (Vec<FieldElement>, FieldElement);

fn lead_inv(v: &[FieldElement]) -> Option<FieldElement> {
    v.iter().find(|x| !x.is_zero()).map(|x| x.abs().inv().unwrap())
}

/// Positive rescaling with leading coefficient ±1.
fn scaled_key(a: &[FieldElement], b: &FieldElement) -> Option<Vec<FieldElement>> {
    let s = lead_inv(a)?;
    let mut k: Vec<FieldElement> = a.iter().map(|x| x * &s).collect();
    k.push(b * &s);
    Some(k)
}

/// Is `{x : a_i · x < b_i}` nonempty? Fourier-Motzkin on strict inequalities.
fn feasible(dim: usize, ineqs: &[Ineq]) -> bool {
    let mut cur: Vec<Ineq> = dedup_ineqs(ineqs.to_vec());
    for k in (0..dim).rev() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for (a, b) in cur {
            match a[k].sign() {
                1 => pos.push((a, b)),
                -1 => neg.push((a, b)),
                _ => rest.push((a, b)),
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                // ap·x < bp with ap_k > 0 and an·x < bn with an_k < 0.
                let wp = -&an[k];
                let wn = ap[k].clone();
                let a: Vec<FieldElement> = ap.iter().zip(an).map(|(x, y)| x * &wp + y * &wn).collect();
                rest.push((a, bp * &wp + bn * &wn));
            }
        }
        cur = dedup_ineqs(rest);
    }
    cur.iter().all(|(_, b)| b.sign() > 0)
}

fn dedup_ineqs(v: Vec<Ineq>) -> Vec<Ineq> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (a, b) in v {
        match scaled_key(&a, &b) {
            Some(k) => {
                if seen.insert(k) {
                    out.push((a, b));
                }
            }
            None => out.push((a, b)),
        }
    }
    out
}

/// Substitutes the hyperplane `n · x = o` by eliminating its pivot coordinate.
fn restrict(v: &[FieldElement], rhs: &FieldElement, n: &[FieldElement], o: &FieldElement) -> (Vec<FieldElement>, FieldElement) {
    let p = n.iter().position(|x| !x.is_zero()).unwrap();
    let f = &v[p] * &n[p].inv().unwrap();
    let a: Vec<FieldElement> = (0..v.len()).filter(|&k| k != p).map(|k| &v[k] - &(&f * &n[k])).collect();
    (a, rhs - &(&f * o))
}

fn count(dim: usize, ineqs: &[Ineq], cuts: &[AffineHyperplane]) -> u64 {
    let mut seen = HashSet::new();
    let mut kept: Vec<&AffineHyperplane> = Vec::new();
    for h in cuts {
        let Some(key) = scaled_key(&h.normal, &h.offset) else { continue };
        // Both orientations describe the same hyperplane.
        let neg: Vec<FieldElement> = key.iter().map(|x| -x).collect();
        if seen.contains(&neg) || !seen.insert(key) {
            continue;
        }
        let sub: Vec<Ineq> = ineqs.iter().map(|(a, b)| restrict(a, b, &h.normal, &h.offset)).collect();
        if feasible(dim - 1, &sub) {
            kept.push(h);
        }
    }
    if dim == 1 {
        return kept.len() as u64 + 1;
    }
    let mut total = 1;
    for (i, h) in kept.iter().enumerate() {
        let sub: Vec<Ineq> = ineqs.iter().map(|(a, b)| restrict(a, b, &h.normal, &h.offset)).collect();
        let earlier: Vec<AffineHyperplane> = kept[..i]
            .iter()
            .map(|g| {
                let (normal, offset) = restrict(&g.normal, &g.offset, &h.normal, &h.offset);
                AffineHyperplane { normal, offset }
            })
            .collect();
        total += count(dim - 1, &sub, &earlier);
    }
    total
}

/// Number of connected components of int(window) minus the cuts.
pub fn count_components_hyperplane_cut(window: &Polytope, cuts: &[AffineHyperplane]) -> Result<u64, ArrangementError> {
    if window.dim == 0 || window.dim > 3 {
        return Err(ArrangementError::UnsupportedDimension(window.dim));
    }
    let ineqs: Vec<Ineq> = window.facets.iter().map(|f| (f.normal.clone(), f.offset.clone())).collect();
    Ok(count(window.dim, &ineqs, cuts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::FieldContext;

    fn line(f: &FieldContext, a: i64, b: i64, o: &str) -> AffineHyperplane {
        AffineHyperplane {
            normal: vec![f.from_int(a), f.from_int(b)],
            offset: f.element_from_strs(&[o]).unwrap(),
        }
    }

    #[test]
    fn grid_and_pencil() {
        let f = FieldContext::rationals();
        let sq = Polytope::cube(&f.zero(), &f.one(), 2).unwrap();
        assert_eq!(count_components_hyperplane_cut(&sq, &[]).unwrap(), 1);
        let grid = vec![
            line(&f, 1, 0, "1/3"),
            line(&f, 1, 0, "2/3"),
            line(&f, 0, 1, "1/4"),
            line(&f, 0, 1, "1/2"),
            line(&f, 0, 2, "3/2"),
            line(&f, 0, -1, "-1/4"),
            line(&f, 1, 0, "5"),
        ];
        assert_eq!(count_components_hyperplane_cut(&sq, &grid).unwrap(), 12);
        let pencil = vec![line(&f, 1, 0, "1/2"), line(&f, 0, 1, "1/2"), line(&f, 1, 1, "1")];
        assert_eq!(count_components_hyperplane_cut(&sq, &pencil).unwrap(), 6);
    }

    #[test]
    fn cube_cut_by_planes() {
        let f = FieldContext::rationals();
        let c = Polytope::cube(&f.zero(), &f.one(), 3).unwrap();
        let plane = |a: [i64; 3], o: &str| AffineHyperplane {
            normal: a.iter().map(|&x| f.from_int(x)).collect(),
            offset: f.element_from_strs(&[o]).unwrap(),
        };
        let cuts = vec![plane([1, 0, 0], "1/2"), plane([0, 1, 0], "1/2"), plane([0, 0, 1], "1/2")];
        assert_eq!(count_components_hyperplane_cut(&c, &cuts).unwrap(), 8);
        let diag = vec![plane([1, 1, 1], "3/2"), plane([1, 0, 0], "1/2")];
        assert_eq!(count_components_hyperplane_cut(&c, &diag).unwrap(), 4);
    }
}
