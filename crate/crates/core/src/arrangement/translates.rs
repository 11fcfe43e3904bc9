//! Translates of the singular hyperplanes through lattice images of window
//! vertices.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::exact::fast::{common_denominator, numerator};
use crate::exact::matrix::dot;
use crate::exact::{cmp_num, AffineForm, FieldElement, IntVec};
use crate::scheme::{l1_ball, Scheme};
use crate::singular::SingularStructure;

use super::AffineHyperplane;

/// Values of one singular direction φ at translated points, as numerators
/// over a shared denominator.
#[derive(Clone, Debug)]
pub struct DirectionForm {
    pub normal: Vec<FieldElement>,
    /// z ↦ φ(π_F(z)) (no base).
    pub form: AffineForm,
    /// φ at each window vertex.
    pub vertex_values: Vec<IntVec>,
    /// Extent of φ over the window.
    pub lo: IntVec,
    pub hi: IntVec,
}

impl DirectionForm {
    pub fn new(s: &Scheme, normal: &[FieldElement]) -> Self {
        let field = &s.field;
        let weights: Vec<FieldElement> = s.f_images.iter().map(|f| dot(normal, f, field)).collect();
        let vals: Vec<FieldElement> = s.window.vertices.iter().map(|v| dot(normal, v, field)).collect();
        let den: BigInt = common_denominator(weights.iter().chain(&vals)).lcm(&BigInt::one());
        let form = AffineForm::with_denominator(&field.zero(), &weights, den.clone());
        let vertex_values: Vec<IntVec> = vals.iter().map(|v| numerator(v, &den)).collect();
        let lo = vertex_values.iter().min_by(|a, b| cmp_num(a, b, field)).unwrap().clone();
        let hi = vertex_values.iter().max_by(|a, b| cmp_num(a, b, field)).unwrap().clone();
        DirectionForm {
            normal: normal.to_vec(),
            form,
            vertex_values,
            lo,
            hi,
        }
    }

    pub fn strictly_inside(&self, c: &IntVec) -> bool {
        let field = self.form.field();
        cmp_num(&self.lo, c, field).is_lt() && cmp_num(c, &self.hi, field).is_lt()
    }

    pub fn value(&self, c: &IntVec) -> FieldElement {
        self.form.to_element(c)
    }
}

#[derive(Clone, Debug)]
pub struct TranslateFamily {
    /// Per singular direction, the distinct translates meeting int K.
    pub per_direction: Vec<Vec<AffineHyperplane>>,
    pub beta: Vec<usize>,
}

/// Distinct hyperplanes H_i + v + π_F(z), v ∈ V_i, ‖z‖₁ ≤ n, meeting int K.
pub fn enumerate_singular_translates(s: &Scheme, ss: &SingularStructure, n: usize) -> TranslateFamily {
    let ball = l1_ball(s.n, n);
    let mut per_direction = Vec::new();
    for h in &ss.hyperplanes {
        let dir = DirectionForm::new(s, &h.normal);
        let mut seen: HashSet<IntVec> = HashSet::new();
        let mut offsets: Vec<IntVec> = Vec::new();
        for z in &ball {
            let lin = dir.form.linear(z);
            for &v in &h.vertex_set {
                let c = dir.vertex_values[v].add(&lin);
                if dir.strictly_inside(&c) && seen.insert(c.clone()) {
                    offsets.push(c);
                }
            }
        }
        offsets.sort_by(|a, b| cmp_num(a, b, &s.field));
        per_direction.push(
            offsets
                .iter()
                .map(|c| AffineHyperplane {
                    normal: h.normal.clone(),
                    offset: dir.value(c),
                })
                .collect::<Vec<_>>(),
        );
    }
    let beta = per_direction.iter().map(Vec::len).collect();
    TranslateFamily { per_direction, beta }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::load_scheme;
    use crate::singular::analyze;

    #[test]
    fn octagonal_directions_symmetric() {
        let s = load_scheme("octagonal").unwrap();
        let ss = analyze(&s).unwrap();
        let t1 = enumerate_singular_translates(&s, &ss, 1);
        assert!(t1.beta.iter().all(|&b| b == t1.beta[0]), "{:?}", t1.beta);
        let t0 = enumerate_singular_translates(&s, &ss, 0);
        assert!(t0.beta.iter().all(|&b| b == 0));
        let t2 = enumerate_singular_translates(&s, &ss, 2);
        assert!(t1.beta.iter().zip(&t2.beta).all(|(a, b)| a <= b));
    }

    #[test]
    fn golden_points_grow() {
        let s = load_scheme("golden_sturmian").unwrap();
        let ss = analyze(&s).unwrap();
        let b: Vec<usize> = (0..6).map(|n| enumerate_singular_translates(&s, &ss, n).beta[0]).collect();
        assert_eq!(b[0], 0);
        assert!(b.windows(2).all(|w| w[0] <= w[1]));
        assert!(b[5] > b[1]);
    }
}
