//! Lattice sums in a window: #{m ∈ {1..n}^q : Σ m_i γ_i ∈ U}.

use crate::exact::matrix::dot;
use crate::exact::{AffineForm, FieldElement, IntVec};
use crate::scheme::{Point, Polytope};

/// Exact count by enumeration; membership in the closed polytope `u`.
pub fn lemma1_count(gammas: &[Point], n: usize, u: &Polytope) -> u64 {
    let q = gammas.len();
    if n == 0 || q == 0 {
        return 0;
    }
    let field = u.field().clone();
    // Slack of facet f at Σ m_i γ_i, affine in m.
    let forms: Vec<AffineForm> = u
        .facets
        .iter()
        .map(|f| {
            let w: Vec<FieldElement> = gammas.iter().map(|g| dot(&f.normal, g, &field)).collect();
            AffineForm::new(&-&f.offset, &w)
        })
        .collect();
    let mut m = vec![1i64; q];
    let mut vals: Vec<IntVec> = forms.iter().map(|f| f.numerator_at(&m)).collect();
    let mut count = 0u64;
    loop {
        if vals.iter().all(|v| v.sign(&field) <= 0) {
            count += 1;
        }
        // Odometer step with incremental updates.
        let mut k = 0;
        loop {
            if k == q {
                return count;
            }
            let step: i64 = if m[k] < n as i64 { 1 } else { 1 - n as i64 };
            m[k] += step;
            let mut e = vec![0i64; q];
            e[k] = step;
            for (v, f) in vals.iter_mut().zip(&forms) {
                *v = v.add(&f.linear(&e));
            }
            if step == 1 {
                break;
            }
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::FieldContext;

    #[test]
    fn trivial_windows() {
        let f = FieldContext::from_parts(&[-1, -1, 1], "1", "2").unwrap();
        let gam = vec![vec![f.one()], vec![f.theta() - f.one()]];
        let all = Polytope::cube(&f.from_int(-100), &f.from_int(100), 1).unwrap();
        assert_eq!(lemma1_count(&gam, 7, &all), 49);
        let none = Polytope::cube(&f.from_int(-5), &f.from_int(-1), 1).unwrap();
        assert_eq!(lemma1_count(&gam, 7, &none), 0);
    }

    #[test]
    fn positive_generators_miss_small_window() {
        let f = FieldContext::from_parts(&[-1, -1, 1], "1", "2").unwrap();
        let gam = vec![vec![f.one()], vec![f.theta() - f.one()]];
        let u = Polytope::cube(&f.zero(), &f.element_from_strs(&["1/10"]).unwrap(), 1).unwrap();
        assert_eq!(lemma1_count(&gam, 10, &u), 0);
    }
}
