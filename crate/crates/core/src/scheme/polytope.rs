//! Convex polytopes of dimension 1 to 3 with exact vertex and facet data.

use std::collections::HashMap;

use crate::exact::matrix::{dot, field_rank};
use crate::exact::{FieldContext, FieldElement};

use super::SchemeError;

pub type Point = Vec<FieldElement>;

/// Facet inequality `normal · x <= offset`, with the window vertices on it.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: Vec<FieldElement>,
    pub offset: FieldElement,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Polytope {
    pub dim: usize,
    pub vertices: Vec<Point>,
    pub facets: Vec<Facet>,
    /// Faces of dimension `dim - 2` (vertex index sets); empty when dim < 2.
    pub ridges: Vec<Vec<usize>>,
    /// A point strictly inside every facet.
    pub interior: Point,
}

fn orient2(a: &Point, b: &Point, c: &Point) -> i32 {
    let ux = &b[0] - &a[0];
    let uy = &b[1] - &a[1];
    let vx = &c[0] - &a[0];
    let vy = &c[1] - &a[1];
    (&ux * &vy - &uy * &vx).sign()
}

fn lex_cmp(a: &Point, b: &Point) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.cmp_exact(y);
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

fn cross3(u: &[FieldElement], v: &[FieldElement]) -> Vec<FieldElement> {
    vec![
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

fn sub(a: &Point, b: &Point) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Scales a nonzero vector so that its first nonzero entry is 1.
pub fn normalize(v: &[FieldElement]) -> Vec<FieldElement> {
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero vector").clone();
    let inv = lead.inv().expect("nonzero lead");
    v.iter().map(|x| x * &inv).collect()
}

impl Polytope {
    /// Convex hull of a finite point set; the result must be full-dimensional.
    pub fn hull(points: &[Point], field: &FieldContext) -> Result<Polytope, SchemeError> {
        let dim = points.first().map_or(0, |p| p.len());
        let mut pts: Vec<Point> = Vec::new();
        for p in points {
            if p.len() != dim {
                return Err(SchemeError::BadWindow("points of mixed dimension".into()));
            }
            if !pts.contains(p) {
                pts.push(p.clone());
            }
        }
        match dim {
            1 => Self::hull1(pts, field),
            2 => Self::hull2(pts, field),
            3 => Self::hull3(pts, field),
            0 => Err(SchemeError::BadWindow("empty window".into())),
            d => Err(SchemeError::UnsupportedDimension(d)),
        }
    }

    fn hull1(pts: Vec<Point>, field: &FieldContext) -> Result<Polytope, SchemeError> {
        let lo = pts.iter().min_by(|a, b| a[0].cmp_exact(&b[0])).unwrap().clone();
        let hi = pts.iter().max_by(|a, b| a[0].cmp_exact(&b[0])).unwrap().clone();
        if lo == hi {
            return Err(SchemeError::BadWindow("interval window has empty interior".into()));
        }
        let half = field.from_rational(num_rational::BigRational::new(1.into(), 2.into()));
        let interior = vec![(&lo[0] + &hi[0]) * &half];
        Ok(Polytope {
            dim: 1,
            facets: vec![
                Facet {
                    normal: vec![-field.one()],
                    offset: -&lo[0],
                    vertices: vec![0],
                },
                Facet {
                    normal: vec![field.one()],
                    offset: hi[0].clone(),
                    vertices: vec![1],
                },
            ],
            vertices: vec![lo, hi],
            ridges: Vec::new(),
            interior,
        })
    }

    fn hull2(mut pts: Vec<Point>, field: &FieldContext) -> Result<Polytope, SchemeError> {
        pts.sort_by(lex_cmp);
        if pts.len() < 3 {
            return Err(SchemeError::BadWindow("fewer than three distinct points".into()));
        }
        // Andrew's monotone chain, dropping collinear points.
        let mut lower: Vec<Point> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && orient2(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Point> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && orient2(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        let verts = lower;
        if verts.len() < 3 {
            return Err(SchemeError::BadWindow("window points are collinear".into()));
        }
        let n = verts.len();
        let facets = (0..n)
            .map(|i| {
                let a = &verts[i];
                let b = &verts[(i + 1) % n];
                // Counter-clockwise order: outward normal is (dy, -dx).
                let normal = vec![&b[1] - &a[1], &a[0] - &b[0]];
                let offset = dot(&normal, a, field);
                Facet {
                    normal,
                    offset,
                    vertices: vec![i, (i + 1) % n],
                }
            })
            .collect();
        let interior = centroid(&verts, field);
        Ok(Polytope {
            dim: 2,
            ridges: (0..n).map(|i| vec![i]).collect(),
            vertices: verts,
            facets,
            interior,
        })
    }

    fn hull3(pts: Vec<Point>, field: &FieldContext) -> Result<Polytope, SchemeError> {
        let m = pts.len();
        let mut planes: HashMap<Vec<FieldElement>, (Vec<FieldElement>, FieldElement)> = HashMap::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let nrm = cross3(&sub(&pts[j], &pts[i]), &sub(&pts[k], &pts[i]));
                    if nrm.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    let off = dot(&nrm, &pts[i], field);
                    let mut pos = false;
                    let mut neg = false;
                    for p in &pts {
                        match (dot(&nrm, p, field) - &off).sign() {
                            1 => pos = true,
                            -1 => neg = true,
                            _ => {}
                        }
                        if pos && neg {
                            break;
                        }
                    }
                    if pos && neg {
                        continue;
                    }
                    let (nrm, off) = if pos { (nrm.iter().map(|x| -x).collect(), -off) } else { (nrm, off) };
                    // Positive rescaling keeps the outward orientation, so
                    // parallel opposite facets get distinct keys.
                    let lead = nrm.iter().find(|x| !x.is_zero()).unwrap().abs().inv().unwrap();
                    let mut key: Vec<FieldElement> = nrm.iter().map(|x| x * &lead).collect();
                    key.push(&off * &lead);
                    planes.entry(key).or_insert((nrm, off));
                }
            }
        }
        if planes.len() < 4 {
            return Err(SchemeError::BadWindow("window is not full-dimensional".into()));
        }
        let mut plane_list: Vec<(Vec<FieldElement>, FieldElement)> = planes.into_values().collect();
        plane_list.sort_by(|a, b| lex_cmp(&a.0, &b.0).then_with(|| a.1.cmp_exact(&b.1)));
        // Extreme points lie on at least three planes with independent normals.
        let on: Vec<Vec<usize>> = pts
            .iter()
            .map(|p| {
                (0..plane_list.len())
                    .filter(|&f| (dot(&plane_list[f].0, p, field) - &plane_list[f].1).is_zero())
                    .collect()
            })
            .collect();
        let mut verts: Vec<Point> = Vec::new();
        let mut vert_planes: Vec<Vec<usize>> = Vec::new();
        for (p, fs) in pts.iter().zip(&on) {
            let normals: Vec<Vec<FieldElement>> = fs.iter().map(|&f| plane_list[f].0.clone()).collect();
            if field_rank(&normals) == 3 {
                verts.push(p.clone());
                vert_planes.push(fs.clone());
            }
        }
        let facets: Vec<Facet> = plane_list
            .iter()
            .enumerate()
            .map(|(f, (nrm, off))| Facet {
                normal: nrm.clone(),
                offset: off.clone(),
                vertices: (0..verts.len()).filter(|&v| vert_planes[v].contains(&f)).collect(),
            })
            .collect();
        let mut ridges = Vec::new();
        for a in 0..facets.len() {
            for b in a + 1..facets.len() {
                let common: Vec<usize> = facets[a]
                    .vertices
                    .iter()
                    .copied()
                    .filter(|v| facets[b].vertices.contains(v))
                    .collect();
                if common.len() >= 2 {
                    ridges.push(common);
                }
            }
        }
        let interior = centroid(&verts, field);
        Ok(Polytope {
            dim: 3,
            vertices: verts,
            facets,
            ridges,
            interior,
        })
    }

    /// Explicit windows: convexified and checked for full dimension.
    pub fn from_vertices(points: &[Point], field: &FieldContext) -> Result<Polytope, SchemeError> {
        let p = Self::hull(points, field)?;
        if !p.contains_strict(&p.interior) {
            return Err(SchemeError::BadWindow("window has empty interior".into()));
        }
        Ok(p)
    }

    pub fn field(&self) -> &FieldContext {
        self.interior[0].field()
    }

    /// Signed slack `normal·x - offset` for facet `f` (negative inside).
    pub fn slack(&self, f: usize, x: &[FieldElement]) -> FieldElement {
        let fc = &self.facets[f];
        dot(&fc.normal, x, self.field()) - &fc.offset
    }

    pub fn contains_strict(&self, x: &[FieldElement]) -> bool {
        (0..self.facets.len()).all(|f| self.slack(f, x).sign() < 0)
    }

    pub fn contains_closed(&self, x: &[FieldElement]) -> bool {
        (0..self.facets.len()).all(|f| self.slack(f, x).sign() <= 0)
    }

    pub fn on_boundary(&self, x: &[FieldElement]) -> bool {
        self.contains_closed(x) && !self.contains_strict(x)
    }

    /// Minimum and maximum of a linear functional over the polytope.
    pub fn extent(&self, functional: &[FieldElement]) -> (FieldElement, FieldElement) {
        let field = self.field();
        let vals: Vec<FieldElement> = self.vertices.iter().map(|v| dot(functional, v, field)).collect();
        let lo = vals.iter().min_by(|a, b| a.cmp_exact(b)).unwrap().clone();
        let hi = vals.iter().max_by(|a, b| a.cmp_exact(b)).unwrap().clone();
        (lo, hi)
    }

    /// Axis-aligned box `[lo, hi]^dim` as a polytope.
    pub fn cube(lo: &FieldElement, hi: &FieldElement, dim: usize) -> Result<Polytope, SchemeError> {
        let field = lo.field().clone();
        let pts: Vec<Point> = (0..1usize << dim)
            .map(|mask| (0..dim).map(|k| if mask >> k & 1 == 1 { hi.clone() } else { lo.clone() }).collect())
            .collect();
        Self::hull(&pts, &field)
    }
}

fn centroid(verts: &[Point], field: &FieldContext) -> Point {
    let dim = verts[0].len();
    let inv = field.from_int(verts.len() as i64).inv().unwrap();
    (0..dim)
        .map(|k| verts.iter().fold(field.zero(), |acc, v| acc + &v[k]) * &inv)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(f: &FieldContext, xs: &[i64]) -> Point {
        xs.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn square_hull_drops_interior_and_collinear() {
        let f = FieldContext::rationals();
        let pts = vec![
            pt(&f, &[0, 0]),
            pt(&f, &[2, 0]),
            pt(&f, &[1, 0]),
            pt(&f, &[2, 2]),
            pt(&f, &[0, 2]),
            pt(&f, &[1, 1]),
        ];
        let p = Polytope::hull(&pts, &f).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.facets.len(), 4);
        for v in &p.vertices {
            assert!(p.on_boundary(v));
        }
        assert!(p.contains_strict(&pt(&f, &[1, 1])));
    }

    #[test]
    fn cube_hull_3d() {
        let f = FieldContext::rationals();
        let c = Polytope::cube(&f.zero(), &f.one(), 3).unwrap();
        assert_eq!(c.vertices.len(), 8);
        assert_eq!(c.facets.len(), 6);
        assert_eq!(c.ridges.len(), 12);
        assert!(c.facets.iter().all(|fc| fc.vertices.len() == 4));
    }

    #[test]
    fn degenerate_windows_rejected() {
        let f = FieldContext::rationals();
        let line = vec![pt(&f, &[0, 0]), pt(&f, &[1, 1]), pt(&f, &[2, 2])];
        assert!(matches!(Polytope::hull(&line, &f), Err(SchemeError::BadWindow(_))));
        let point = vec![pt(&f, &[3]), pt(&f, &[3])];
        assert!(matches!(Polytope::hull(&point, &f), Err(SchemeError::BadWindow(_))));
    }
}
