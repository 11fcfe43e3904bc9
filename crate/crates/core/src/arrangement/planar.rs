//! Components of the regular set K ∩ Reg_n: the window minus its translated
//! boundary faces. Exact in dimensions 1 and 2; bounds in dimension 3.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::fast::{common_denominator, numerator};
use crate::exact::matrix::{dot, field_inverse};
use crate::exact::{cmp_num, FieldContext, FieldElement, IntMat, IntVec};
use crate::scheme::{combine, l1_ball, Point, Scheme};
use crate::singular::SingularStructure;

use super::cut::count_components_hyperplane_cut;
use super::translates::DirectionForm;
use super::{check_cap, AffineHyperplane, ArrangementError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellCount {
    Exact(u64),
    /// Lower and upper hyperplane-cut bounds (dimension 3).
    Bounds { lower: u64, upper: u64 },
}

impl CellCount {
    pub fn exact(self) -> Option<u64> {
        match self {
            CellCount::Exact(c) => Some(c),
            CellCount::Bounds { .. } => None,
        }
    }
}

/// Number of components of int K minus the n-singular set.
pub fn count_components_regn(s: &Scheme, ss: &SingularStructure, n: usize) -> Result<CellCount, ArrangementError> {
    match s.internal_dim() {
        1 => Ok(CellCount::Exact(count_dim1(s, n))),
        2 => Ok(CellCount::Exact(Subdivision::build(s, ss, n)?.faces())),
        3 => {
            let (lower, upper) = regn_bounds(s, n)?;
            Ok(CellCount::Bounds { lower, upper })
        }
        d => Err(ArrangementError::UnsupportedDimension(d)),
    }
}

fn count_dim1(s: &Scheme, n: usize) -> u64 {
    let dir = DirectionForm::new(s, &[s.field.one()]);
    let mut seen: HashSet<IntVec> = HashSet::new();
    for z in l1_ball(s.n, n) {
        let lin = dir.form.linear(&z);
        for v in &dir.vertex_values {
            let c = v.add(&lin);
            if dir.strictly_inside(&c) {
                seen.insert(c);
            }
        }
    }
    seen.len() as u64 + 1
}

/// A point's F-coordinates as numerators over the subdivision denominator.
pub type Key = [IntVec; 2];

/// Position of a point along a line, as the value of one direction form.
#[derive(Clone, Debug)]
enum Pos {
    Num(IntVec),
    Exact(FieldElement),
}

#[derive(Clone, Debug)]
struct End {
    pos: Vec<Pos>,
    key: Key,
}

#[derive(Debug)]
struct Line {
    dir: usize,
    c: IntVec,
    intervals: Vec<(End, End)>,
}

struct Frame<'a> {
    s: &'a Scheme,
    field: FieldContext,
    dirs: Vec<DirectionForm>,
    facet_dir: Vec<usize>,
    den: BigInt,
    vertex_keys: Vec<Key>,
    weight_keys: Vec<Key>,
    /// cross[i][j][t] = (A, B): key_t of the point on lines (i, c1), (j, c2) is A c1 + B c2.
    cross: Vec<Vec<Option<[(IntMat, IntMat); 2]>>>,
    /// Coordinate that varies along lines of each direction.
    along: Vec<usize>,
}

fn mul_matrix_den(e: &FieldElement, scale: &BigRational) -> BigInt {
    let field = e.field();
    let mut den = BigInt::one();
    let mut pow = field.one();
    for _ in 0..field.degree() {
        for c in (e * &pow).scale(scale).coeffs() {
            den = den.lcm(c.denom());
        }
        pow = &pow * &field.theta();
    }
    den
}

impl<'a> Frame<'a> {
    fn new(s: &'a Scheme, ss: &SingularStructure) -> Self {
        let field = s.field.clone();
        let dirs: Vec<DirectionForm> = ss.hyperplanes.iter().map(|h| DirectionForm::new(s, &h.normal)).collect();
        let facet_dir: Vec<usize> = s
            .window
            .facets
            .iter()
            .map(|f| {
                let nrm = crate::scheme::polytope::normalize(&f.normal);
                ss.hyperplanes.iter().position(|h| h.normal == nrm).expect("facet direction")
            })
            .collect();
        let m = dirs.len();
        let mut inverses = vec![vec![None; m]; m];
        let mut den = common_denominator(s.window.vertices.iter().flatten().chain(s.f_images.iter().flatten()));
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let mat = vec![dirs[i].normal.clone(), dirs[j].normal.clone()];
                let inv = field_inverse(&mat, &field).expect("independent directions");
                for row in &inv {
                    for (k, e) in row.iter().enumerate() {
                        let d = if k == 0 { dirs[i].form.denominator() } else { dirs[j].form.denominator() };
                        den = den.lcm(&mul_matrix_den(e, &BigRational::new(BigInt::one(), d.clone())));
                    }
                }
                inverses[i][j] = Some(inv);
            }
        }
        let cross = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        inverses[i][j].as_ref().map(|inv: &Vec<Vec<FieldElement>>| {
                            let build = |t: usize| {
                                let a = IntMat::multiplication(
                                    &inv[t][0],
                                    &BigRational::new(den.clone(), dirs[i].form.denominator().clone()),
                                )
                                .unwrap();
                                let b = IntMat::multiplication(
                                    &inv[t][1],
                                    &BigRational::new(den.clone(), dirs[j].form.denominator().clone()),
                                )
                                .unwrap();
                                (a, b)
                            };
                            [build(0), build(1)]
                        })
                    })
                    .collect()
            })
            .collect();
        let key_of = |p: &Point| -> Key { [numerator(&p[0], &den), numerator(&p[1], &den)] };
        let vertex_keys = s.window.vertices.iter().map(key_of).collect();
        let weight_keys = s.f_images.iter().map(key_of).collect();
        // Lines of direction i run along (−n_1, n_0).
        let along = dirs.iter().map(|d| if d.normal[1].is_zero() { 1 } else { 0 }).collect();
        Frame {
            s,
            field,
            dirs,
            facet_dir,
            den,
            vertex_keys,
            weight_keys,
            cross,
            along,
        }
    }

    fn cross_key(&self, i: usize, c1: &IntVec, j: usize, c2: &IntVec) -> Key {
        let m = self.cross[i][j].as_ref().expect("distinct directions");
        [m[0].0.apply(c1).add(&m[0].1.apply(c2)), m[1].0.apply(c1).add(&m[1].1.apply(c2))]
    }

    fn key_point(&self, k: &Key) -> Point {
        let deg = self.field.degree();
        k.iter()
            .map(|v| {
                self.field.element(v.to_big(deg).into_iter().map(|x| BigRational::new(x, self.den.clone())).collect())
            })
            .collect()
    }

    fn cmp_key(&self, a: &Key, b: &Key, t: usize) -> Ordering {
        cmp_num(&a[t], &b[t], &self.field)
    }

    fn cmp_pos(&self, a: &Pos, b: &Pos, j: usize) -> Ordering {
        match (a, b) {
            (Pos::Num(x), Pos::Num(y)) => cmp_num(x, y, &self.field),
            _ => self.pos_value(a, j).cmp_exact(&self.pos_value(b, j)),
        }
    }

    fn pos_value(&self, p: &Pos, j: usize) -> FieldElement {
        match p {
            Pos::Num(x) => self.dirs[j].value(x),
            Pos::Exact(e) => e.clone(),
        }
    }

    /// The end of the chord of line (i, c) on the facet line of facet g.
    fn chord_end(&self, i: usize, c: &IntVec, g: usize) -> Option<End> {
        let j = self.facet_dir[g];
        let gv = self.s.window.facets[g].vertices[0];
        let cg = &self.dirs[j].vertex_values[gv];
        let key = self.cross_key(i, c, j, cg);
        let p = self.key_point(&key);
        if !self.s.window.contains_closed(&p) {
            return None;
        }
        let pos = (0..self.dirs.len())
            .map(|k| {
                if k == i {
                    Pos::Num(c.clone())
                } else if k == j {
                    Pos::Num(cg.clone())
                } else {
                    Pos::Exact(dot(&self.dirs[k].normal, &p, &self.field))
                }
            })
            .collect();
        Some(End { pos, key })
    }

    fn collect_lines(&self, n: usize) -> Vec<Line> {
        let m = self.dirs.len();
        let mut raw: HashMap<(usize, IntVec), Vec<(End, End)>> = HashMap::new();
        let window = &self.s.window;
        for z in l1_ball(self.s.n, n) {
            let lin: Vec<IntVec> = self.dirs.iter().map(|d| d.form.linear(&z)).collect();
            let mut lkey: Option<Key> = None;
            for (g, facet) in window.facets.iter().enumerate() {
                let i = self.facet_dir[g];
                let (a, b) = (facet.vertices[0], facet.vertices[1]);
                let c = self.dirs[i].vertex_values[a].add(&lin[i]);
                let d = &self.dirs[i];
                if cmp_num(&c, &d.lo, &self.field).is_lt() || cmp_num(&c, &d.hi, &self.field).is_gt() {
                    continue;
                }
                let lk = lkey.get_or_insert_with(|| {
                    let mut acc = [IntVec::zero(), IntVec::zero()];
                    for (w, &k) in self.weight_keys.iter().zip(&z) {
                        if k != 0 {
                            acc = [acc[0].add(&w[0].scale(k)), acc[1].add(&w[1].scale(k))];
                        }
                    }
                    acc
                });
                let end = |v: usize| End {
                    pos: (0..m).map(|j| Pos::Num(self.dirs[j].vertex_values[v].add(&lin[j]))).collect(),
                    key: [self.vertex_keys[v][0].add(&lk[0]), self.vertex_keys[v][1].add(&lk[1])],
                };
                raw.entry((i, c)).or_default().push((end(a), end(b)));
            }
        }
        let mut entries: Vec<((usize, IntVec), Vec<(End, End)>)> = raw.into_iter().collect();
        entries.sort_by(|a, b| a.0 .0.cmp(&b.0 .0).then_with(|| cmp_num(&a.0 .1, &b.0 .1, &self.field)));
        entries
            .into_par_iter()
            .filter_map(|((i, c), segs)| self.merge_line(i, c, segs))
            .collect()
    }

    /// Union of the segments on one line, clipped to the window chord.
    fn merge_line(&self, i: usize, c: IntVec, segs: Vec<(End, End)>) -> Option<Line> {
        let t = self.along[i];
        let mut chord: Vec<End> = (0..self.s.window.facets.len())
            .filter(|&g| self.facet_dir[g] != i)
            .filter_map(|g| self.chord_end(i, &c, g))
            .collect();
        chord.sort_by(|a, b| self.cmp_key(&a.key, &b.key, t));
        let (clo, chi) = (chord.first()?.clone(), chord.last()?.clone());
        if self.cmp_key(&clo.key, &chi.key, t).is_ge() {
            return None;
        }
        let mut segs: Vec<(End, End)> = segs
            .into_iter()
            .map(|(a, b)| if self.cmp_key(&a.key, &b.key, t).is_gt() { (b, a) } else { (a, b) })
            .collect();
        segs.sort_by(|a, b| self.cmp_key(&a.0.key, &b.0.key, t));
        let mut merged: Vec<(End, End)> = Vec::new();
        for (a, b) in segs {
            match merged.last_mut() {
                Some(last) if self.cmp_key(&a.key, &last.1.key, t).is_le() => {
                    if self.cmp_key(&b.key, &last.1.key, t).is_gt() {
                        last.1 = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        let intervals: Vec<(End, End)> = merged
            .into_iter()
            .filter_map(|(a, b)| {
                let lo = if self.cmp_key(&a.key, &clo.key, t).is_lt() { clo.clone() } else { a };
                let hi = if self.cmp_key(&b.key, &chi.key, t).is_gt() { chi.clone() } else { b };
                self.cmp_key(&lo.key, &hi.key, t).is_lt().then_some((lo, hi))
            })
            .collect();
        (!intervals.is_empty()).then_some(Line { dir: i, c, intervals })
    }

    /// Interval of `line` containing the point whose direction-`j` value is `v`.
    fn locate(&self, line: &Line, j: usize, v: &IntVec) -> Option<usize> {
        let ivs = &line.intervals;
        let first = &ivs[0];
        let asc = self.cmp_pos(&first.0.pos[j], &first.1.pos[j], j).is_lt();
        let val = Pos::Num(v.clone());
        let n = ivs.len();
        let idx = |k: usize| if asc { k } else { n - 1 - k };
        let hi_of = |k: usize| if asc { &ivs[k].1.pos[j] } else { &ivs[k].0.pos[j] };
        let lo_of = |k: usize| if asc { &ivs[k].0.pos[j] } else { &ivs[k].1.pos[j] };
        let mut lo = 0;
        let mut hi = n;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.cmp_pos(hi_of(idx(mid)), &val, j).is_lt() {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        (lo < n && self.cmp_pos(lo_of(idx(lo)), &val, j).is_le()).then(|| idx(lo))
    }
}

/// Embedded planar graph of the n-singular segments inside the window.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub lines: usize,
    pub vertices: Vec<Key>,
    pub edges: Vec<(usize, usize)>,
    pub components: usize,
    den: BigInt,
    field: FieldContext,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Subdivision {
    pub fn build(s: &Scheme, ss: &SingularStructure, n: usize) -> Result<Subdivision, ArrangementError> {
        if s.internal_dim() != 2 {
            return Err(ArrangementError::UnsupportedDimension(s.internal_dim()));
        }
        let frame = Frame::new(s, ss);
        let lines = frame.collect_lines(n);
        check_cap(lines.iter().map(|l| l.intervals.len()).sum())?;
        let m = frame.dirs.len();
        let mut by_dir: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (k, l) in lines.iter().enumerate() {
            by_dir[l.dir].push(k);
        }
        // Crossings of interval pairs on lines of distinct directions.
        type Hit = (usize, usize, usize, usize, Key);
        let hits: Vec<Hit> = (0..lines.len())
            .into_par_iter()
            .flat_map_iter(|a| {
                let la = &lines[a];
                let i = la.dir;
                let mut out: Vec<Hit> = Vec::new();
                for j in i + 1..m {
                    let group = &by_dir[j];
                    for (ka, (lo, hi)) in la.intervals.iter().enumerate() {
                        let (p, q) = if frame.cmp_pos(&lo.pos[j], &hi.pos[j], j).is_le() {
                            (&lo.pos[j], &hi.pos[j])
                        } else {
                            (&hi.pos[j], &lo.pos[j])
                        };
                        let start = group.partition_point(|&b| frame.cmp_pos(&Pos::Num(lines[b].c.clone()), p, j).is_lt());
                        for &b in &group[start..] {
                            let lb = &lines[b];
                            if frame.cmp_pos(&Pos::Num(lb.c.clone()), q, j).is_gt() {
                                break;
                            }
                            if let Some(kb) = frame.locate(lb, i, &la.c) {
                                out.push((a, ka, b, kb, frame.cross_key(i, &la.c, j, &lb.c)));
                            }
                        }
                    }
                }
                out
            })
            .collect();
        check_cap(hits.len())?;
        let mut points: Vec<Vec<Vec<Key>>> = lines
            .iter()
            .map(|l| l.intervals.iter().map(|(a, b)| vec![a.key.clone(), b.key.clone()]).collect())
            .collect();
        for (a, ka, b, kb, key) in hits {
            points[a][ka].push(key.clone());
            points[b][kb].push(key);
        }
        let mut ids: HashMap<Key, usize> = HashMap::new();
        let mut vertices: Vec<Key> = Vec::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (l, per) in lines.iter().zip(points.iter_mut()) {
            let t = frame.along[l.dir];
            for pts in per.iter_mut() {
                pts.sort_by(|x, y| frame.cmp_key(x, y, t));
                pts.dedup();
                let mut prev: Option<usize> = None;
                for k in pts.drain(..) {
                    let next = vertices.len();
                    let id = *ids.entry(k.clone()).or_insert(next);
                    if id == next {
                        vertices.push(k);
                    }
                    if let Some(p) = prev {
                        edges.push((p, id));
                    }
                    prev = Some(id);
                }
            }
        }
        check_cap(vertices.len())?;
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        for &(u, v) in &edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
            }
        }
        let components = (0..vertices.len()).filter(|&v| find(&mut parent, v) == v).count();
        Ok(Subdivision {
            lines: lines.len(),
            vertices,
            edges,
            components,
            den: frame.den.clone(),
            field: frame.field.clone(),
        })
    }

    /// Bounded faces by the Euler relation.
    pub fn faces(&self) -> u64 {
        (self.edges.len() + self.components - self.vertices.len()) as u64
    }

    pub fn point(&self, v: usize) -> Point {
        let deg = self.field.degree();
        self.vertices[v]
            .iter()
            .map(|x| self.field.element(x.to_big(deg).into_iter().map(|c| BigRational::new(c, self.den.clone())).collect()))
            .collect()
    }

    /// Boundary cycles of the faces, traced with the face on the left; the
    /// second list holds the cycles with positive signed area.
    pub fn face_cycles(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let pts: Vec<Point> = (0..self.vertices.len()).map(|v| self.point(v)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); pts.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let dir = |u: usize, v: usize| -> (FieldElement, FieldElement) { (&pts[v][0] - &pts[u][0], &pts[v][1] - &pts[u][1]) };
        let half = |d: &(FieldElement, FieldElement)| {
            if d.1.sign() > 0 || (d.1.is_zero() && d.0.sign() > 0) {
                0
            } else {
                1
            }
        };
        for (u, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_by(|&a, &b| {
                let (da, db) = (dir(u, a), dir(u, b));
                half(&da).cmp(&half(&db)).then_with(|| (&db.0 * &da.1 - &da.0 * &db.1).sign().cmp(&0))
            });
        }
        let mut used: HashSet<(usize, usize)> = HashSet::new();
        let mut all = Vec::new();
        let mut positive = Vec::new();
        for u0 in 0..pts.len() {
            for &v0 in &adj[u0] {
                if used.contains(&(u0, v0)) {
                    continue;
                }
                let mut cycle = Vec::new();
                let (mut u, mut v) = (u0, v0);
                while used.insert((u, v)) {
                    cycle.push(u);
                    let k = adj[v].iter().position(|&w| w == u).unwrap();
                    let w = adj[v][(k + adj[v].len() - 1) % adj[v].len()];
                    u = v;
                    v = w;
                }
                let area = (0..cycle.len()).fold(self.field.zero(), |acc, k| {
                    let (a, b) = (&pts[cycle[k]], &pts[cycle[(k + 1) % cycle.len()]]);
                    acc + (&a[0] * &b[1] - &a[1] * &b[0])
                });
                if area.sign() > 0 {
                    positive.push(cycle.clone());
                }
                all.push(cycle);
            }
        }
        (all, positive)
    }

    /// Is the cycle convex (no right turns)?
    pub fn is_convex(&self, cycle: &[usize]) -> bool {
        let pts: Vec<Point> = cycle.iter().map(|&v| self.point(v)).collect();
        let n = pts.len();
        (0..n).all(|k| {
            let (a, b, c) = (&pts[k], &pts[(k + 1) % n], &pts[(k + 2) % n]);
            let o = (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0]);
            o.sign() >= 0
        })
    }
}

/// Section of the window by a hyperplane: intersections with window edges.
fn section_points(s: &Scheme, h: &AffineHyperplane) -> Vec<Point> {
    let field = &s.field;
    let w = &s.window;
    let edges: Vec<(usize, usize)> = match w.dim {
        2 => w.facets.iter().map(|f| (f.vertices[0], f.vertices[1])).collect(),
        _ => w.ridges.iter().filter(|r| r.len() == 2).map(|r| (r[0], r[1])).collect(),
    };
    let mut out: Vec<Point> = Vec::new();
    for (a, b) in edges {
        let (pa, pb) = (&w.vertices[a], &w.vertices[b]);
        let ga = dot(&h.normal, pa, field) - &h.offset;
        let gb = dot(&h.normal, pb, field) - &h.offset;
        if ga.sign() * gb.sign() > 0 || (ga.is_zero() && gb.is_zero()) {
            continue;
        }
        let t = &ga * &(&ga - &gb).inv().unwrap();
        let p: Point = pa.iter().zip(pb).map(|(x, y)| x + &(&t * &(y - x))).collect();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Translated facet hyperplanes meeting int K, and the subset whose
/// translated facet covers the whole section of K.
fn translated_facet_planes(s: &Scheme, n: usize) -> (Vec<AffineHyperplane>, Vec<AffineHyperplane>) {
    let field = &s.field;
    let mut seen: HashSet<Vec<FieldElement>> = HashSet::new();
    let mut all = Vec::new();
    let mut full = Vec::new();
    for z in l1_ball(s.n, n) {
        let shift = combine(&s.f_images, &z, field);
        for facet in &s.window.facets {
            let normal = crate::scheme::polytope::normalize(&facet.normal);
            let lead = facet.normal.iter().find(|x| !x.is_zero()).unwrap();
            let scale = lead.inv().unwrap();
            let offset = &facet.offset * &scale + dot(&normal, &shift, field);
            let (lo, hi) = s.window.extent(&normal);
            if offset.cmp_exact(&lo).is_le() || offset.cmp_exact(&hi).is_ge() {
                continue;
            }
            let mut key = normal.clone();
            key.push(offset.clone());
            if !seen.insert(key) {
                continue;
            }
            let h = AffineHyperplane { normal, offset };
            let covered = section_points(s, &h).iter().all(|p| {
                let back: Point = p.iter().zip(&shift).map(|(x, y)| x - y).collect();
                s.window.contains_closed(&back)
            });
            if covered {
                full.push(h.clone());
            }
            all.push(h);
        }
    }
    (all, full)
}

/// Lower and upper bounds for c(n) from full-section translates and from the
/// hyperplane extension of all translated facets.
pub fn regn_bounds(s: &Scheme, n: usize) -> Result<(u64, u64), ArrangementError> {
    let (all, full) = translated_facet_planes(s, n);
    check_cap(all.len())?;
    let lower = count_components_hyperplane_cut(&s.window, &full)?;
    let upper = count_components_hyperplane_cut(&s.window, &all)?;
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::load_scheme;
    use crate::singular::analyze;

    fn series(name: &str, n_max: usize) -> Vec<u64> {
        let s = load_scheme(name).unwrap();
        let ss = analyze(&s).unwrap();
        (0..=n_max).map(|n| count_components_regn(&s, &ss, n).unwrap().exact().unwrap()).collect()
    }

    #[test]
    fn golden_start() {
        let c = series("golden_sturmian", 6);
        assert_eq!(c[0], 1);
        assert!(c.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn planar_faces_convex_and_sandwiched() {
        for name in ["octagonal", "billiard3"] {
            let s = load_scheme(name).unwrap();
            let ss = analyze(&s).unwrap();
            let mut prev = 0;
            for n in 0..=2 {
                let sub = Subdivision::build(&s, &ss, n).unwrap();
                let c = sub.faces();
                assert!(c >= prev, "{name} n={n}");
                prev = c;
                let (_, pos) = sub.face_cycles();
                assert_eq!(sub.components, 1, "{name} n={n}");
                assert_eq!(pos.len() as u64, c, "{name} n={n}");
                for cyc in &pos {
                    assert!(sub.is_convex(cyc), "{name} n={n} face {cyc:?}");
                }
                let (lo, hi) = regn_bounds(&s, n).unwrap();
                assert!(lo <= c && c <= hi, "{name} n={n}: {lo} <= {c} <= {hi}");
            }
        }
    }
}
