//! Cut-and-project schemes: the splitting R^N = E ⊕ F, the projections, the
//! window, and the validation of the standing density and injectivity
//! assumptions.

pub mod config;
pub mod polytope;

use serde::Serialize;
use thiserror::Error;

use crate::exact::matrix::{
    field_inverse, field_kernel, field_mat_mul, field_rank, irrational_rows, q_decompose,
};
use crate::exact::{ExactError, FieldContext, FieldElement};

pub use config::{SchemeConfig, WindowConfig};
pub use polytope::{Facet, Point, Polytope};

#[derive(Debug, Error)]
pub enum SchemeError {
    #[error("E and F do not span R^N")]
    DegenerateBasis,
    #[error("bad window: {0}")]
    BadWindow(String),
    #[error("window dimension {0} is not supported (at most 3)")]
    UnsupportedDimension(usize),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("identity check `{0}` failed")]
    BadIdentity(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Debug)]
pub struct Scheme {
    pub name: String,
    pub field: FieldContext,
    pub n: usize,
    pub d: usize,
    /// N×d, columns span E.
    pub basis_e: Vec<Vec<FieldElement>>,
    /// N×(N−d), columns span F.
    pub basis_f: Vec<Vec<FieldElement>>,
    /// Inverse of the block basis [E | F]: row k gives the k-th coordinate.
    pub coords: Vec<Vec<FieldElement>>,
    pub proj_e: Vec<Vec<FieldElement>>,
    pub proj_f: Vec<Vec<FieldElement>>,
    /// π_F(e_k) in F-coordinates.
    pub f_images: Vec<Point>,
    /// π(e_k) in E-coordinates.
    pub e_images: Vec<Point>,
    pub window: Polytope,
    pub canonical: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlmostCanonical {
    VerifiedCanonical,
    VerifiedDenseStabilizer,
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub injective: bool,
    pub dense: bool,
    pub gamma_rank: usize,
    pub period_rank: usize,
    pub almost_canonical: AlmostCanonical,
    pub messages: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.injective && self.dense
    }
}

fn parse_matrix(
    rows: &[Vec<config::ElemLit>],
    n: usize,
    cols: usize,
    field: &FieldContext,
    what: &str,
) -> Result<Vec<Vec<FieldElement>>, SchemeError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != cols) {
        return Err(SchemeError::Config(format!("{what} must be {n}×{cols}")));
    }
    rows.iter()
        .map(|r| r.iter().map(|e| e.to_element(field)).collect())
        .collect()
}

/// Builds and checks a scheme from its configuration.
pub fn build_scheme(cfg: &SchemeConfig) -> Result<Scheme, SchemeError> {
    let field = cfg.field.build()?;
    let (n, d) = (cfg.n, cfg.d);
    if d == 0 || d >= n {
        return Err(SchemeError::Config(format!("need 1 <= d <= N-1, got N={n}, d={d}")));
    }
    if n - d > 3 {
        return Err(SchemeError::UnsupportedDimension(n - d));
    }
    for id in &cfg.identities {
        let v = id.value.to_element(&field)?;
        let sq = field.from_rational(crate::exact::parse_rational(&id.square.as_string())?);
        if &v * &v != sq || v.sign() <= 0 {
            return Err(SchemeError::BadIdentity(id.label.clone()));
        }
    }
    let basis_e = parse_matrix(&cfg.basis_e, n, d, &field, "basis_E")?;
    let basis_f = match &cfg.basis_f {
        Some(rows) => parse_matrix(rows, n, n - d, &field, "basis_F")?,
        None => {
            // Orthogonal complement: kernel of basis_Eᵀ.
            let et: Vec<Vec<FieldElement>> = (0..d).map(|j| (0..n).map(|k| basis_e[k][j].clone()).collect()).collect();
            let ker = field_kernel(&et, n, &field);
            if ker.len() != n - d {
                return Err(SchemeError::DegenerateBasis);
            }
            (0..n).map(|k| ker.iter().map(|v| v[k].clone()).collect()).collect()
        }
    };
    let block: Vec<Vec<FieldElement>> = (0..n)
        .map(|k| basis_e[k].iter().chain(&basis_f[k]).cloned().collect())
        .collect();
    let coords = field_inverse(&block, &field).ok_or(SchemeError::DegenerateBasis)?;
    let e_part: Vec<Vec<FieldElement>> = coords[..d].to_vec();
    let f_part: Vec<Vec<FieldElement>> = coords[d..].to_vec();
    let proj_e = field_mat_mul(&basis_e, &e_part, &field);
    let proj_f = field_mat_mul(&basis_f, &f_part, &field);
    let f_images: Vec<Point> = (0..n).map(|k| f_part.iter().map(|r| r[k].clone()).collect()).collect();
    let e_images: Vec<Point> = (0..n).map(|k| e_part.iter().map(|r| r[k].clone()).collect()).collect();
    let (window, canonical) = match &cfg.window {
        WindowConfig::Keyword(k) if k == "canonical" => (cube_projection(&f_images, &field)?, true),
        WindowConfig::Keyword(k) => return Err(SchemeError::Config(format!("unknown window keyword `{k}`"))),
        WindowConfig::Vertices { vertices } => {
            let pts: Vec<Point> = vertices
                .iter()
                .map(|v| v.iter().map(|e| e.to_element(&field)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<_, _>>()?;
            if pts.iter().any(|p| p.len() != n - d) {
                return Err(SchemeError::BadWindow(format!("vertices must have {} coordinates", n - d)));
            }
            (Polytope::from_vertices(&pts, &field)?, false)
        }
    };
    Ok(Scheme {
        name: cfg.name.clone(),
        field,
        n,
        d,
        basis_e,
        basis_f,
        coords,
        proj_e,
        proj_f,
        f_images,
        e_images,
        window,
        canonical,
    })
}

/// Loads a scheme from a path, falling back to the built-in files by name.
pub fn load_scheme(path: &str) -> Result<Scheme, SchemeError> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => match config::builtin(path) {
            Some(t) => t.to_string(),
            None => return Err(SchemeError::Io { path: path.to_string(), source: e }),
        },
    };
    build_scheme(&SchemeConfig::from_toml(&text)?)
}

fn cube_projection(f_images: &[Point], field: &FieldContext) -> Result<Polytope, SchemeError> {
    let n = f_images.len();
    let dim = f_images[0].len();
    if dim > 3 {
        return Err(SchemeError::UnsupportedDimension(dim));
    }
    let pts: Vec<Point> = (0..1usize << n)
        .map(|mask| {
            (0..dim)
                .map(|c| {
                    (0..n)
                        .filter(|k| mask >> k & 1 == 1)
                        .fold(field.zero(), |acc, k| acc + &f_images[k][c])
                })
                .collect()
        })
        .collect();
    Polytope::hull(&pts, field)
}

/// Canonical window of a scheme: the projection of the unit cube.
pub fn canonical_window(s: &Scheme) -> Result<Polytope, SchemeError> {
    cube_projection(&s.f_images, &s.field)
}

impl Scheme {
    pub fn internal_dim(&self) -> usize {
        self.n - self.d
    }

    /// π_F(z) in F-coordinates.
    pub fn internal(&self, z: &[i64]) -> Point {
        combine(&self.f_images, z, &self.field)
    }

    /// π(z) in E-coordinates.
    pub fn physical(&self, z: &[i64]) -> Point {
        combine(&self.e_images, z, &self.field)
    }

    /// dim_Q of {q ∈ Q^N : the given coordinate rows vanish on q}.
    fn rational_solutions(&self, rows: &[Vec<FieldElement>]) -> usize {
        let m = q_decompose(rows).expect("single field");
        self.n - m.rank()
    }

    /// Rank of Z^N ∩ E.
    pub fn period_rank(&self) -> usize {
        self.rational_solutions(&self.coords[self.d..])
    }

    pub fn gamma_rank(&self) -> usize {
        self.n - self.period_rank()
    }
}

pub(crate) fn combine(images: &[Point], z: &[i64], field: &FieldContext) -> Point {
    let dim = images[0].len();
    (0..dim)
        .map(|c| {
            images
                .iter()
                .zip(z)
                .filter(|(_, &k)| k != 0)
                .fold(field.zero(), |acc, (v, &k)| acc + &v[c] * &field.from_int(k))
        })
        .collect()
}

/// All z ∈ Z^dim with ‖z‖₁ ≤ radius, ordered by norm.
pub fn l1_ball(dim: usize, radius: usize) -> Vec<Vec<i64>> {
    fn rec(k: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in -left..=left {
            cur[k] = v;
            rec(k + 1, left - v.abs(), cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    rec(0, radius as i64, &mut vec![0; dim], &mut out);
    out.sort_by_key(|z| z.iter().map(|x| x.abs()).sum::<i64>());
    out
}

/// Kronecker test: is the subgroup generated by `gens` dense in a real
/// subspace of dimension `dim` that they span?
pub fn kronecker_dense(gens: &[Point], dim: usize, field: &FieldContext) -> bool {
    if dim == 0 {
        return true;
    }
    // Basis drawn from the generators.
    let mut basis: Vec<usize> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        let mut trial: Vec<Point> = basis.iter().map(|&b| gens[b].clone()).collect();
        trial.push(g.clone());
        if field_rank(&trial) > basis.len() {
            basis.push(j);
        }
        if basis.len() == dim {
            break;
        }
    }
    if basis.len() < dim || gens.iter().any(|g| {
        let mut trial: Vec<Point> = basis.iter().map(|&b| gens[b].clone()).collect();
        trial.push(g.clone());
        field_rank(&trial) > dim
    }) {
        return false;
    }
    // Pick `dim` ambient coordinates on which the basis is invertible.
    let ambient = gens[0].len();
    let cols: Vec<Vec<FieldElement>> = (0..ambient)
        .map(|r| basis.iter().map(|&b| gens[b][r].clone()).collect())
        .collect();
    let mut rows_sel: Vec<usize> = Vec::new();
    for r in 0..ambient {
        let mut trial: Vec<Vec<FieldElement>> = rows_sel.iter().map(|&i| cols[i].clone()).collect();
        trial.push(cols[r].clone());
        if field_rank(&trial) > rows_sel.len() {
            rows_sel.push(r);
        }
    }
    let square: Vec<Vec<FieldElement>> = rows_sel.iter().map(|&i| cols[i].clone()).collect();
    let inv = field_inverse(&square, field).expect("independent basis");
    let constraints: Vec<Vec<FieldElement>> = gens
        .iter()
        .map(|g| {
            let sub: Vec<FieldElement> = rows_sel.iter().map(|&i| g[i].clone()).collect();
            crate::exact::matrix::field_mat_vec(&inv, &sub, field)
        })
        .collect();
    let m = q_decompose(&constraints).expect("single field");
    let irr = irrational_rows(&m, field.degree());
    irr.kernel().is_empty()
}

/// Checks injectivity, density, ranks and the almost-canonical property.
pub fn validate(s: &Scheme) -> ValidationReport {
    let mut messages = Vec::new();
    // F ∩ Q^N: rational vectors with vanishing E-coordinates.
    let f_rational = s.rational_solutions(&s.coords[..s.d]);
    let injective = f_rational == 0;
    if !injective {
        messages.push(format!("F contains a rational subspace of dimension {f_rational}"));
    }
    let period_rank = s.period_rank();
    let gamma_rank = s.n - period_rank;
    let dense = kronecker_dense(&s.f_images, s.internal_dim(), &s.field);
    if !dense {
        messages.push("π_F(Z^N) is not dense in F".to_string());
    }
    let almost_canonical = if s.canonical {
        AlmostCanonical::VerifiedCanonical
    } else if facet_stabilizers_dense(s) {
        AlmostCanonical::VerifiedDenseStabilizer
    } else {
        messages.push("window not certified almost-canonical; results may not apply".to_string());
        AlmostCanonical::Unverified
    };
    ValidationReport {
        injective,
        dense,
        gamma_rank,
        period_rank,
        almost_canonical,
        messages,
    }
}

/// For every facet hyperplane H, is Γ ∩ H dense in H?
fn facet_stabilizers_dense(s: &Scheme) -> bool {
    let k = s.internal_dim();
    s.window.facets.iter().all(|facet| {
        let values: Vec<FieldElement> = s
            .f_images
            .iter()
            .map(|f| crate::exact::matrix::dot(&facet.normal, f, &s.field))
            .collect();
        let m = q_decompose(&[values]).expect("single field");
        let gens: Vec<Point> = m
            .kernel()
            .into_iter()
            .map(|q| {
                (0..k)
                    .map(|c| {
                        q.iter().zip(&s.f_images).fold(s.field.zero(), |acc, (qi, f)| {
                            acc + f[c].scale(qi)
                        })
                    })
                    .collect()
            })
            .collect();
        !gens.is_empty() && kronecker_dense(&gens, k - 1, &s.field)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_slope_is_not_dense() {
        let s = load_scheme(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/rational_slope.scheme")).unwrap();
        let r = validate(&s);
        assert!(!r.dense);
        assert!(!r.injective);
        assert_eq!(r.gamma_rank + r.period_rank, 2);
    }

    #[test]
    fn octagonal_projection_matrix() {
        let s = load_scheme("octagonal.scheme").unwrap();
        let f = &s.field;
        let h = f.element_from_strs(&["1/2"]).unwrap();
        let q = f.element_from_strs(&["0", "1/4"]).unwrap();
        let z = f.zero();
        let expect = [
            [h.clone(), q.clone(), z.clone(), -&q],
            [q.clone(), h.clone(), q.clone(), z.clone()],
            [z.clone(), q.clone(), h.clone(), q.clone()],
            [-&q, z.clone(), q.clone(), h.clone()],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(s.proj_f[i][j], expect[i][j], "entry {i},{j}");
            }
        }
        assert_eq!(s.window.vertices.len(), 8);
        let r = validate(&s);
        assert!(r.injective && r.dense);
        assert_eq!((r.gamma_rank, r.period_rank), (4, 0));
        assert_eq!(r.almost_canonical, AlmostCanonical::VerifiedCanonical);
    }

    #[test]
    fn builtin_windows() {
        let g = load_scheme("golden_sturmian").unwrap();
        assert_eq!(g.window.vertices.len(), 2);
        let b = load_scheme("billiard3").unwrap();
        assert_eq!(b.window.vertices.len(), 6);
        let gen = load_scheme("generic42").unwrap();
        assert_eq!(gen.window.vertices.len(), 8);
        for s in [&g, &b, &gen] {
            let r = validate(s);
            assert!(r.injective && r.dense, "{}", s.name);
            assert_eq!(r.gamma_rank, s.n, "{}", s.name);
        }
    }

    #[test]
    fn bad_identity_rejected() {
        let text = config::builtin("billiard3").unwrap().replace("square = \"3\"", "square = \"5\"");
        let cfg = SchemeConfig::from_toml(&text).unwrap();
        assert!(matches!(build_scheme(&cfg), Err(SchemeError::BadIdentity(_))));
    }

    #[test]
    fn explicit_window_checks_dimension() {
        let mut cfg = SchemeConfig::from_toml(config::builtin("golden_sturmian").unwrap()).unwrap();
        cfg.window = WindowConfig::Vertices {
            vertices: vec![vec![config::ElemLit::Scalar(config::RatLit::Str("0".into()))]; 2],
        };
        assert!(matches!(build_scheme(&cfg), Err(SchemeError::BadWindow(_))));
        cfg.window = WindowConfig::Vertices {
            vertices: vec![
                vec![config::ElemLit::Scalar(config::RatLit::Str("-1/2".into()))],
                vec![config::ElemLit::Scalar(config::RatLit::Str("1/3".into()))],
            ],
        };
        let s = build_scheme(&cfg).unwrap();
        assert_eq!(validate(&s).almost_canonical, AlmostCanonical::Unverified);
        let text = cfg.to_toml();
        assert_eq!(SchemeConfig::from_toml(&text).unwrap(), cfg);
    }
}
