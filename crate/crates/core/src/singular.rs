//! Singular hyperplanes of the window, their stabilizer ranks, the complexity
//! exponent and the finite-generation verdict for the first cohomology.

use serde::Serialize;
use thiserror::Error;

use crate::exact::matrix::{dot, field_rank, q_decompose};
use crate::exact::{ser_elems, FieldElement};
use crate::scheme::polytope::normalize;
use crate::scheme::Scheme;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SingularError {
    #[error("no transverse family of singular hyperplanes exists")]
    NoTransverseSubset,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularHyperplane {
    /// Linear functional on F (F-coordinates) whose kernel is the hyperplane.
    #[serde(serialize_with = "ser_elems")]
    pub normal: Vec<FieldElement>,
    /// Window vertices on a facet parallel to the hyperplane.
    pub vertex_set: Vec<usize>,
    /// Rank of the stabilizer of the hyperplane in Γ.
    pub stab_rank: usize,
    pub alpha_i: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularStructure {
    pub hyperplanes: Vec<SingularHyperplane>,
    pub chosen: Vec<usize>,
    pub alpha: i64,
    pub gamma_rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyVerdict {
    pub alpha: i64,
    pub alpha_min: i64,
    pub finitely_generated: bool,
    pub audit_consistent: bool,
}

/// One hyperplane per facet direction of the window, parallel ones merged.
pub fn singular_hyperplanes(s: &Scheme) -> SingularStructure {
    let field = &s.field;
    let mut hyperplanes: Vec<SingularHyperplane> = Vec::new();
    if s.internal_dim() == 1 {
        hyperplanes.push(SingularHyperplane {
            normal: vec![field.one()],
            vertex_set: (0..s.window.vertices.len()).collect(),
            stab_rank: 0,
            alpha_i: 0,
        });
    } else {
        for facet in &s.window.facets {
            let normal = normalize(&facet.normal);
            match hyperplanes.iter_mut().find(|h| h.normal == normal) {
                Some(h) => {
                    for &v in &facet.vertices {
                        if !h.vertex_set.contains(&v) {
                            h.vertex_set.push(v);
                        }
                    }
                    h.vertex_set.sort_unstable();
                }
                None => {
                    let mut vs = facet.vertices.clone();
                    vs.sort_unstable();
                    hyperplanes.push(SingularHyperplane {
                        normal,
                        vertex_set: vs,
                        stab_rank: 0,
                        alpha_i: 0,
                    });
                }
            }
        }
    }
    SingularStructure {
        hyperplanes,
        chosen: Vec::new(),
        alpha: 0,
        gamma_rank: s.gamma_rank(),
    }
}

/// Rank of the stabilizer in Γ of the intersection of the hyperplanes in `set`.
pub fn stab_rank_of(s: &Scheme, ss: &SingularStructure, set: &[usize]) -> usize {
    if set.is_empty() {
        return ss.gamma_rank;
    }
    let rows: Vec<Vec<FieldElement>> = set
        .iter()
        .map(|&i| {
            s.f_images
                .iter()
                .map(|f| dot(&ss.hyperplanes[i].normal, f, &s.field))
                .collect()
        })
        .collect();
    let rank = q_decompose(&rows).expect("single field").rank();
    s.n - rank - (s.n - ss.gamma_rank)
}

pub fn stabilizer_ranks(s: &Scheme, ss: &mut SingularStructure) {
    for i in 0..ss.hyperplanes.len() {
        let a = stab_rank_of(s, ss, &[i]);
        ss.hyperplanes[i].stab_rank = a;
        ss.hyperplanes[i].alpha_i = ss.gamma_rank as i64 - a as i64 - 1;
    }
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

pub fn is_transverse(ss: &SingularStructure, set: &[usize]) -> bool {
    let normals: Vec<Vec<FieldElement>> = set.iter().map(|&i| ss.hyperplanes[i].normal.clone()).collect();
    field_rank(&normals) == set.len()
}

/// Maximizes Σ α_i over transverse families of size dim F.
pub fn exponent_alpha(s: &Scheme, ss: &mut SingularStructure) -> Result<(), SingularError> {
    let k = s.internal_dim();
    let mut best: Option<(i64, Vec<usize>)> = None;
    for set in combinations(ss.hyperplanes.len(), k) {
        if !is_transverse(ss, &set) {
            continue;
        }
        let total: i64 = set.iter().map(|&i| ss.hyperplanes[i].alpha_i).sum();
        if best.as_ref().is_none_or(|(b, _)| total > *b) {
            best = Some((total, set));
        }
    }
    let (alpha, chosen) = best.ok_or(SingularError::NoTransverseSubset)?;
    ss.alpha = alpha;
    ss.chosen = chosen;
    Ok(())
}

/// Full analysis: hyperplanes, stabilizer ranks and exponent.
pub fn analyze(s: &Scheme) -> Result<SingularStructure, SingularError> {
    let mut ss = singular_hyperplanes(s);
    stabilizer_ranks(s, &mut ss);
    exponent_alpha(s, &mut ss)?;
    Ok(ss)
}

/// Checks a_{J'} + a_j = a_J + rk Γ for every transverse J = J' ∪ {j} with
/// |J| ≤ dim F.
pub fn rank_equality_audit(s: &Scheme, ss: &SingularStructure) -> bool {
    let m = ss.hyperplanes.len();
    let rk = ss.gamma_rank;
    for size in 1..=s.internal_dim().min(m) {
        for set in combinations(m, size) {
            if !is_transverse(ss, &set) {
                continue;
            }
            let a_j = stab_rank_of(s, ss, &set);
            for (pos, &j) in set.iter().enumerate() {
                let mut rest = set.clone();
                rest.remove(pos);
                let lhs = stab_rank_of(s, ss, &rest) + ss.hyperplanes[j].stab_rank;
                if lhs != a_j + rk {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks a_{J1} + a_{J2} − a_{J1∪J2} ≤ rk Γ over all pairs of index sets.
pub fn subadditivity_holds(s: &Scheme, ss: &SingularStructure) -> bool {
    let m = ss.hyperplanes.len();
    let full = 1usize << m;
    let set_of = |mask: usize| -> Vec<usize> { (0..m).filter(|i| mask >> i & 1 == 1).collect() };
    let ranks: Vec<usize> = (0..full).map(|mask| stab_rank_of(s, ss, &set_of(mask))).collect();
    (0..full).all(|a| (0..full).all(|b| ranks[a] + ranks[b] <= ranks[a | b] + ss.gamma_rank))
}

pub fn cohomology_verdict(s: &Scheme, ss: &SingularStructure) -> CohomologyVerdict {
    let alpha_min = s.d as i64 - (s.n as i64 - ss.gamma_rank as i64);
    let finitely_generated = ss.alpha == alpha_min;
    CohomologyVerdict {
        alpha: ss.alpha,
        alpha_min,
        finitely_generated,
        audit_consistent: rank_equality_audit(s, ss) == finitely_generated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::load_scheme;

    fn run(name: &str) -> (Scheme, SingularStructure) {
        let s = load_scheme(name).unwrap();
        let ss = analyze(&s).unwrap();
        (s, ss)
    }

    #[test]
    fn octagonal() {
        let (s, ss) = run("octagonal");
        assert_eq!(ss.hyperplanes.len(), 4);
        assert!(ss.hyperplanes.iter().all(|h| h.stab_rank == 2 && h.alpha_i == 1));
        // Each hyperplane is the line through some f_k.
        for h in &ss.hyperplanes {
            assert!(s.f_images.iter().any(|f| dot(&h.normal, f, &s.field).is_zero()));
        }
        assert_eq!(ss.alpha, 2);
        let v = cohomology_verdict(&s, &ss);
        assert_eq!((v.alpha_min, v.finitely_generated, v.audit_consistent), (2, true, true));
        assert!(rank_equality_audit(&s, &ss));
        assert!(subadditivity_holds(&s, &ss));
    }

    #[test]
    fn golden() {
        let (s, ss) = run("golden_sturmian");
        assert_eq!(ss.hyperplanes.len(), 1);
        assert_eq!((ss.hyperplanes[0].stab_rank, ss.hyperplanes[0].alpha_i), (0, 1));
        let v = cohomology_verdict(&s, &ss);
        assert_eq!((v.alpha, v.alpha_min, v.finitely_generated, v.audit_consistent), (1, 1, true, true));
    }

    #[test]
    fn billiard() {
        let (s, ss) = run("billiard3");
        assert_eq!(ss.hyperplanes.len(), 3);
        assert!(ss.hyperplanes.iter().all(|h| h.stab_rank == 1 && h.alpha_i == 1));
        for (i, h) in ss.hyperplanes.iter().enumerate() {
            let zeros = s.f_images.iter().filter(|f| dot(&h.normal, f, &s.field).is_zero()).count();
            assert_eq!(zeros, 1, "hyperplane {i}");
        }
        let v = cohomology_verdict(&s, &ss);
        assert_eq!((v.alpha, v.alpha_min, v.finitely_generated, v.audit_consistent), (2, 1, false, true));
    }

    #[test]
    fn generic() {
        let (s, ss) = run("generic42");
        assert!(ss.hyperplanes.iter().all(|h| h.stab_rank == 1));
        let v = cohomology_verdict(&s, &ss);
        assert_eq!((v.alpha, v.alpha_min, v.finitely_generated, v.audit_consistent), (4, 2, false, true));
        assert!(!rank_equality_audit(&s, &ss));
        assert!(subadditivity_holds(&s, &ss));
    }
}
