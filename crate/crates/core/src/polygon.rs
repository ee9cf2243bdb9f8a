//! Point-line geometries, generalized polygons and the finite models they
//! are built from.
//!
//! A geometry is recognized as a weak generalized `n`-gon when its bipartite
//! incidence graph has girth `2n` and diameter `n`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use petgraph::algo::is_isomorphic_matching;
use petgraph::graph::UnGraph;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::Gf;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGeometry {
    points: usize,
    lines: usize,
    flags: Vec<(usize, usize)>,
}

impl IncidenceGeometry {
    pub fn new(points: usize, lines: usize, mut flags: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(p, l)) = flags.iter().find(|(p, l)| *p >= points || *l >= lines) {
            return Err(Error::InvalidArgument(format!("flag ({p}, {l}) out of range")));
        }
        flags.sort_unstable();
        flags.dedup();
        Ok(IncidenceGeometry {
            points,
            lines,
            flags,
        })
    }

    /// Rank-1 and rank-2 simplices of a complex on `{1, 2, 3}` as points and
    /// lines, with its edges as flags.
    pub fn from_flag_complex(c: &SimplicialComplex) -> Result<Self> {
        if c.ground() != 3 {
            return Err(Error::DimensionMismatch(format!("n = {} != 3", c.ground())));
        }
        let points = c.of_type(&[1]);
        let lines = c.of_type(&[2]);
        let flags = c
            .of_type(&[1, 2])
            .iter()
            .map(|f| {
                let s = f.stages();
                let p = points.iter().position(|x| x.stages()[0] == s[0]).unwrap();
                let l = lines.iter().position(|x| x.stages()[0] == s[1]).unwrap();
                (p, l)
            })
            .collect();
        Self::new(points.len(), lines.len(), flags)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn lines(&self) -> usize {
        self.lines
    }

    pub fn flags(&self) -> &[(usize, usize)] {
        &self.flags
    }

    pub fn lines_on(&self, p: usize) -> Vec<usize> {
        self.flags.iter().filter(|f| f.0 == p).map(|f| f.1).collect()
    }

    pub fn points_on(&self, l: usize) -> Vec<usize> {
        self.flags.iter().filter(|f| f.1 == l).map(|f| f.0).collect()
    }

    /// Adjacency of the incidence graph; lines come after points.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.points + self.lines];
        for &(p, l) in &self.flags {
            adj[p].push(self.points + l);
            adj[self.points + l].push(p);
        }
        adj
    }

    pub fn incidence_graph(&self) -> UnGraph<bool, ()> {
        let mut g = UnGraph::with_capacity(self.points + self.lines, self.flags.len());
        let nodes: Vec<_> = (0..self.points + self.lines)
            .map(|i| g.add_node(i < self.points))
            .collect();
        for &(p, l) in &self.flags {
            g.add_edge(nodes[p], nodes[self.points + l], ());
        }
        g
    }

    /// The point-line dual.
    pub fn dual(&self) -> IncidenceGeometry {
        let flags = self.flags.iter().map(|&(p, l)| (l, p)).collect();
        IncidenceGeometry::new(self.lines, self.points, flags).expect("flags in range")
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        if adj.is_empty() {
            return false;
        }
        bfs(&adj, 0).iter().all(|d| d.is_some())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "points": self.points,
            "lines": self.lines,
            "flags": self.flags.iter().map(|(p, l)| [p, l]).collect::<Vec<_>>(),
        })
    }
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Eccentricity of `s` and the length of the shortest cycle through the
/// BFS tree rooted at `s`.
fn eccentricity_and_cycle(adj: &[Vec<usize>], s: usize) -> (usize, Option<usize>) {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut parent = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    let mut ecc = 0;
    let mut cycle: Option<usize> = None;
    while let Some(u) = queue.pop_front() {
        ecc = ecc.max(dist[u]);
        for &v in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            } else if parent[u] != v {
                let len = dist[u] + dist[v] + 1;
                cycle = Some(cycle.map_or(len, |c| c.min(len)));
            }
        }
    }
    (ecc, cycle)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonCertificate {
    pub gonality: usize,
    pub girth: usize,
    pub diameter: usize,
    /// `(s, t)`: `s + 1` points per line and `t + 1` lines per point.
    pub order: Option<(usize, usize)>,
    pub point_degrees: (usize, usize),
    pub line_degrees: (usize, usize),
    pub thick: bool,
    /// Gonality in `{3, 4, 6, 8}`; reported for thick instances only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feit_higman: Option<bool>,
}

pub fn verify_polygon(g: &IncidenceGeometry) -> Result<PolygonCertificate> {
    if !g.is_connected() {
        return Err(Error::NotAPolygon {
            girth: None,
            diameter: None,
        });
    }
    let adj = g.adjacency();
    let (diameter, girth) = (0..adj.len())
        .into_par_iter()
        .map(|s| eccentricity_and_cycle(&adj, s))
        .reduce(
            || (0, None),
            |(e1, c1), (e2, c2)| {
                let c = match (c1, c2) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
                (e1.max(e2), c)
            },
        );
    let min_degree = adj.iter().map(Vec::len).min().unwrap_or(0);
    match girth {
        Some(gi) if gi == 2 * diameter && min_degree >= 2 => {}
        _ => {
            return Err(Error::NotAPolygon {
                girth,
                diameter: Some(diameter),
            })
        }
    }
    let girth = girth.unwrap();
    let range = |it: &[Vec<usize>]| {
        let lens = it.iter().map(Vec::len);
        (lens.clone().min().unwrap_or(0), lens.max().unwrap_or(0))
    };
    let point_degrees = range(&adj[..g.points]);
    let line_degrees = range(&adj[g.points..]);
    let order = (point_degrees.0 == point_degrees.1 && line_degrees.0 == line_degrees.1)
        .then(|| (line_degrees.0 - 1, point_degrees.0 - 1));
    let thick = point_degrees.0 >= 3 && line_degrees.0 >= 3;
    let gonality = girth / 2;
    Ok(PolygonCertificate {
        gonality,
        girth,
        diameter,
        order,
        point_degrees,
        line_degrees,
        thick,
        feit_higman: thick.then(|| [3, 4, 6, 8].contains(&gonality)),
    })
}

/// Whether any two elements lie in a common ordinary sub-`m`-gon, by listing
/// all `2m`-cycles of the incidence graph.
pub fn pairs_in_ordinary_subpolygons(g: &IncidenceGeometry, m: usize) -> Result<bool> {
    let adj = g.adjacency();
    let v = adj.len();
    if v > 64 {
        return Err(Error::SizeLimit(format!("{v} elements > 64")));
    }
    if v == 0 {
        return Ok(false);
    }
    fn walk(
        adj: &[Vec<usize>],
        start: usize,
        u: usize,
        len: usize,
        target: usize,
        mask: u64,
        out: &mut BTreeSet<u64>,
    ) {
        for &w in &adj[u] {
            if w == start && len == target {
                out.insert(mask);
            } else if w > start && mask & (1 << w) == 0 && len < target {
                walk(adj, start, w, len + 1, target, mask | 1 << w, out);
            }
        }
    }
    let mut cycles = BTreeSet::new();
    for s in 0..v {
        walk(&adj, s, s, 1, 2 * m, 1 << s, &mut cycles);
    }
    let mut covered = vec![0u64; v];
    for mask in &cycles {
        for (x, row) in covered.iter_mut().enumerate() {
            if mask & (1 << x) != 0 {
                *row |= mask;
            }
        }
    }
    let full = u64::MAX >> (64 - v);
    Ok(covered.iter().all(|row| *row == full))
}

/// Isomorphism of incidence graphs preserving the point/line sides.
pub fn isomorphic(a: &IncidenceGeometry, b: &IncidenceGeometry) -> bool {
    is_isomorphic_matching(
        &a.incidence_graph(),
        &b.incidence_graph(),
        |x, y| x == y,
        |_, _| true,
    )
}

pub fn ordinary_ngon(n: usize) -> Result<IncidenceGeometry> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("ordinary {n}-gon")));
    }
    let flags = (0..n).flat_map(|i| [(i, i), ((i + 1) % n, i)]).collect();
    IncidenceGeometry::new(n, n, flags)
}

pub fn complete_graph_geometry(m: usize) -> Result<IncidenceGeometry> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("K({m})")));
    }
    let mut flags = Vec::new();
    let mut l = 0;
    for i in 0..m {
        for j in i + 1..m {
            flags.push((i, l));
            flags.push((j, l));
            l += 1;
        }
    }
    IncidenceGeometry::new(m, l, flags)
}

/// Points are the old points and lines, lines are the old flags.
pub fn double(g: &IncidenceGeometry) -> IncidenceGeometry {
    let flags = g
        .flags
        .iter()
        .enumerate()
        .flat_map(|(k, &(p, l))| [(p, k), (g.points + l, k)])
        .collect();
    IncidenceGeometry::new(g.points + g.lines, g.flags.len(), flags).expect("flags in range")
}

/// A warning when the input has no order of the form `(s, s)`.
pub fn double_warning(g: &IncidenceGeometry) -> Option<String> {
    match verify_polygon(g) {
        Ok(PolygonCertificate {
            order: Some((s, t)),
            ..
        }) if s == t => None,
        Ok(c) => Some(format!("order {:?} is not of the form (s, s)", c.order)),
        Err(e) => Some(e.to_string()),
    }
}

fn normalize(gf: &Gf, v: &mut [u8]) {
    if let Some(&lead) = v.iter().find(|x| **x != 0) {
        let inv = gf.inv(lead);
        for x in v.iter_mut() {
            *x = gf.mul(*x, inv);
        }
    }
}

/// Normalized representatives of the points of `P^(len-1)(F_q)`.
fn projective_points(gf: &Gf, len: usize) -> Vec<Vec<u8>> {
    gf.subspaces(1, len).into_iter().map(|mut m| m.remove(0)).collect()
}

/// Projective points in the row space of `m`.
fn span_points(gf: &Gf, m: &[Vec<u8>], index: &HashMap<Vec<u8>, usize>) -> Vec<usize> {
    let n = m[0].len();
    let mut out: Vec<usize> = gf
        .vectors(m.len())
        .filter(|c| c.iter().any(|x| *x != 0))
        .map(|c| {
            let mut v = vec![0u8; n];
            for (row, coef) in m.iter().zip(&c) {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = gf.add(*x, gf.mul(*coef, *r));
                }
            }
            normalize(gf, &mut v);
            index[&v]
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `P^d(F_q)` with points as normalized vectors and higher subspaces as
/// sorted point-index lists.
#[derive(Clone, Debug)]
pub struct ProjectiveSpaceModel {
    q: u32,
    d: usize,
    gf: Gf,
    points: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    lines: Vec<Vec<usize>>,
    planes: Vec<Vec<usize>>,
}

impl ProjectiveSpaceModel {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn gf(&self) -> &Gf {
        &self.gf
    }

    pub fn points(&self) -> &[Vec<u8>] {
        &self.points
    }

    pub fn point_index(&self, v: &[u8]) -> Option<usize> {
        let mut v = v.to_vec();
        normalize(&self.gf, &mut v);
        self.index.get(&v).copied()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// Planes; for `d = 2` the whole space is the single plane.
    pub fn planes(&self) -> &[Vec<usize>] {
        &self.planes
    }

    pub fn line_through(&self, x: usize, y: usize) -> usize {
        self.lines
            .iter()
            .position(|l| l.binary_search(&x).is_ok() && l.binary_search(&y).is_ok())
            .expect("two distinct points span a line")
    }

    pub fn lines_on(&self, p: usize) -> Vec<usize> {
        (0..self.lines.len())
            .filter(|&l| self.lines[l].binary_search(&p).is_ok())
            .collect()
    }

    pub fn to_geometry(&self) -> IncidenceGeometry {
        let flags = self
            .lines
            .iter()
            .enumerate()
            .flat_map(|(l, pts)| pts.iter().map(move |&p| (p, l)))
            .collect();
        IncidenceGeometry::new(self.points.len(), self.lines.len(), flags).expect("flags in range")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "d": self.d,
            "points": self.points.len(),
            "lines": self.lines.len(),
            "planes": if self.d == 3 { self.planes.len() } else { 1 },
        })
    }
}

pub fn pg_model(q: u32, d: usize) -> Result<ProjectiveSpaceModel> {
    if !(2..=5).contains(&q) || !(2..=3).contains(&d) {
        return Err(Error::SizeLimit(format!("PG({d}, {q}); need q <= 5 and d in 2..=3")));
    }
    let gf = Gf::new(q)?;
    let points = projective_points(&gf, d + 1);
    let index: HashMap<Vec<u8>, usize> =
        points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let subspace_points = |r: usize| {
        let mut out: Vec<Vec<usize>> = gf
            .subspaces(r, d + 1)
            .iter()
            .map(|m| span_points(&gf, m, &index))
            .collect();
        out.sort();
        out
    };
    let lines = subspace_points(2);
    let planes = subspace_points(3);
    Ok(ProjectiveSpaceModel {
        q,
        d,
        gf,
        points,
        index,
        lines,
        planes,
    })
}

/// `{(1, t, t^2)} ∪ {(0, 0, 1)}` as point indices of `pg_model(q, 2)`.
pub fn conic_oval(plane: &ProjectiveSpaceModel) -> Result<Vec<usize>> {
    if plane.d != 2 {
        return Err(Error::DimensionMismatch(format!("d = {} != 2", plane.d)));
    }
    let gf = &plane.gf;
    let mut out: Vec<usize> = (0..gf.order() as u8)
        .map(|t| plane.point_index(&[1, t, gf.mul(t, t)]).unwrap())
        .chain(plane.point_index(&[0, 0, 1]))
        .collect();
    out.sort_unstable();
    Ok(out)
}

pub fn is_oval(plane: &ProjectiveSpaceModel, set: &[usize]) -> bool {
    let s: BTreeSet<usize> = set.iter().copied().collect();
    plane.d == 2
        && s.len() == set.len()
        && set.len() == plane.q as usize + 1
        && s.iter().all(|&p| p < plane.points.len())
        && plane
            .lines
            .iter()
            .all(|l| l.iter().filter(|p| s.contains(p)).count() <= 2)
}

/// The tangent line at each oval point, in the order of `oval`.
pub fn tangent_lines(plane: &ProjectiveSpaceModel, oval: &[usize]) -> Result<Vec<usize>> {
    if !is_oval(plane, oval) {
        return Err(Error::InvalidOval(format!("{oval:?}")));
    }
    oval.iter()
        .map(|&x| {
            let t: Vec<usize> = plane
                .lines_on(x)
                .into_iter()
                .filter(|&l| plane.lines[l].iter().filter(|p| oval.contains(p)).count() == 1)
                .collect();
            match t.as_slice() {
                [l] => Ok(*l),
                _ => Err(Error::InvalidOval(format!("{} tangents at point {x}", t.len()))),
            }
        })
        .collect()
}

/// `T_2(O)` for an oval of `P^2(q)` embedded as the hyperplane `x_3 = 0`
/// of `P^3(q)`.
pub fn t2_of_oval(q: u32, oval: &[usize]) -> Result<IncidenceGeometry> {
    if q > 4 {
        return Err(Error::SizeLimit(format!("T2(O) over F_{q}")));
    }
    let plane = pg_model(q, 2)?;
    tangent_lines(&plane, oval)?;
    let space = pg_model(q, 3)?;
    let embed = |p: usize| {
        let mut v = plane.points[p].clone();
        v.push(0);
        space.point_index(&v).unwrap()
    };
    let o: BTreeSet<usize> = oval.iter().map(|&p| embed(p)).collect();
    let in_h = |p: &usize| space.points[*p][3] == 0;
    let meets_h = |s: &[usize]| s.iter().filter(|p| in_h(p)).copied().collect::<Vec<_>>();

    let affine: Vec<usize> = (0..space.points.len()).filter(|p| !in_h(p)).collect();
    let tangent_planes: Vec<usize> = (0..space.planes.len())
        .filter(|&i| {
            let pl = &space.planes[i];
            let h = meets_h(pl);
            h.len() < pl.len() && h.iter().filter(|p| o.contains(p)).count() == 1
        })
        .collect();
    let oval_pts: Vec<usize> = o.iter().copied().collect();
    let secant_free: Vec<usize> = (0..space.lines.len())
        .filter(|&l| {
            let h = meets_h(&space.lines[l]);
            h.len() == 1 && o.contains(&h[0])
        })
        .collect();

    // points: ∞, affine points, tangent planes; lines: oval points, then lines
    let n_points = 1 + affine.len() + tangent_planes.len();
    let plane_base = 1 + affine.len();
    let line_base = oval_pts.len();
    let mut flags = Vec::new();
    for i in 0..oval_pts.len() {
        flags.push((0, i));
    }
    for (k, &l) in secant_free.iter().enumerate() {
        for &p in &space.lines[l] {
            if let Ok(i) = affine.binary_search(&p) {
                flags.push((1 + i, line_base + k));
            }
        }
    }
    for (j, &pl) in tangent_planes.iter().enumerate() {
        let pts = &space.planes[pl];
        for (i, x) in oval_pts.iter().enumerate() {
            if pts.binary_search(x).is_ok() {
                flags.push((plane_base + j, i));
            }
        }
        for (k, &l) in secant_free.iter().enumerate() {
            if space.lines[l].iter().all(|p| pts.binary_search(p).is_ok()) {
                flags.push((plane_base + j, line_base + k));
            }
        }
    }
    IncidenceGeometry::new(n_points, line_base + secant_free.len(), flags)
}

/// Points and lines of `X0 X1 + X2 X3 + X4^2 = 0` in `P^4(q)`.
pub fn q4q_quadric(q: u32) -> Result<IncidenceGeometry> {
    if !(2..=3).contains(&q) {
        return Err(Error::SizeLimit(format!("Q(4, {q}) needs q in 2..=3")));
    }
    let gf = Gf::new(q)?;
    let form = |v: &[u8]| {
        let a = gf.add(gf.mul(v[0], v[1]), gf.mul(v[2], v[3]));
        gf.add(a, gf.mul(v[4], v[4]))
    };
    let all = projective_points(&gf, 5);
    let index: HashMap<Vec<u8>, usize> = all.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let on: Vec<usize> = (0..all.len()).filter(|&i| form(&all[i]) == 0).collect();
    let mut lines = BTreeSet::new();
    for (i, &x) in on.iter().enumerate() {
        for &y in &on[i + 1..] {
            let l = span_points(&gf, &[all[x].clone(), all[y].clone()], &index);
            if l.iter().all(|p| form(&all[*p]) == 0) {
                lines.insert(l);
            }
        }
    }
    let flags = lines
        .iter()
        .enumerate()
        .flat_map(|(k, l)| {
            let on = &on;
            l.iter().map(move |p| (on.binary_search(p).unwrap(), k))
        })
        .collect();
    IncidenceGeometry::new(on.len(), lines.len(), flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band::Band;
    use crate::complex::build_delta;

    fn cert(g: &IncidenceGeometry) -> PolygonCertificate {
        verify_polygon(g).unwrap()
    }

    #[test]
    fn small_polygons() {
        let fano = pg_model(2, 2).unwrap().to_geometry();
        let c = cert(&fano);
        assert_eq!((c.gonality, c.order, c.thick), (3, Some((2, 2)), true));
        let k3 = cert(&complete_graph_geometry(3).unwrap());
        assert_eq!((k3.gonality, k3.order), (3, Some((1, 1))));
        let sq = cert(&ordinary_ngon(4).unwrap());
        assert_eq!((sq.gonality, sq.order, sq.thick), (4, Some((1, 1)), false));
        assert_eq!(cert(&ordinary_ngon(5).unwrap()).gonality, 5);
        assert!(isomorphic(&complete_graph_geometry(3).unwrap(), &ordinary_ngon(3).unwrap()));
    }

    #[test]
    fn non_polygons() {
        let k4 = complete_graph_geometry(4).unwrap();
        assert_eq!((k4.points(), k4.lines()), (4, 6));
        assert!((0..4).all(|p| k4.lines_on(p).len() == 3));
        assert!(matches!(verify_polygon(&k4), Err(Error::NotAPolygon { .. })));
        let two = IncidenceGeometry::new(2, 1, vec![(0, 0)]).unwrap();
        assert!(matches!(
            verify_polygon(&two),
            Err(Error::NotAPolygon { girth: None, diameter: None })
        ));
        assert!(ordinary_ngon(1).is_err());
        assert!(complete_graph_geometry(2).is_err());
    }

    #[test]
    fn doubling() {
        let tri = ordinary_ngon(3).unwrap();
        assert!(isomorphic(&double(&tri), &ordinary_ngon(6).unwrap()));
        for n in 3..7 {
            let d = double(&ordinary_ngon(n).unwrap());
            assert!(isomorphic(&d, &ordinary_ngon(2 * n).unwrap()));
        }
        let fano = pg_model(2, 2).unwrap().to_geometry();
        let d = double(&fano);
        let c = cert(&d);
        assert_eq!((d.points(), d.lines()), (14, 21));
        assert_eq!((c.gonality, c.order, c.thick), (6, Some((1, 2)), false));
        assert_eq!(double_warning(&fano), None);
        assert!(double_warning(&complete_graph_geometry(4).unwrap()).is_some());
    }

    #[test]
    fn projective_spaces() {
        for (q, d, p, l) in [(2, 2, 7, 7), (3, 2, 13, 13), (2, 3, 15, 35), (3, 3, 40, 130), (4, 2, 21, 21)] {
            let m = pg_model(q, d).unwrap();
            assert_eq!((m.points().len(), m.lines().len()), (p, l));
        }
        assert_eq!(pg_model(2, 3).unwrap().planes().len(), 15);
        assert!(pg_model(7, 2).is_err());
    }

    #[test]
    fn ovals() {
        let plane = pg_model(2, 2).unwrap();
        let conic = conic_oval(&plane).unwrap();
        assert_eq!(conic.len(), 3);
        assert!(is_oval(&plane, &conic));
        let line = plane.lines()[0].clone();
        assert!(!is_oval(&plane, &line));
        let l0 = &plane.lines()[0];
        let off = (0..7).find(|p| !l0.contains(p)).unwrap();
        assert!(is_oval(&plane, &[l0[0], l0[1], off]));
        for q in [3, 4, 5] {
            let plane = pg_model(q, 2).unwrap();
            let conic = conic_oval(&plane).unwrap();
            assert!(is_oval(&plane, &conic));
            assert_eq!(tangent_lines(&plane, &conic).unwrap().len(), q as usize + 1);
        }
    }

    #[test]
    fn generalized_quadrangles() {
        let plane = pg_model(2, 2).unwrap();
        let t2 = t2_of_oval(2, &conic_oval(&plane).unwrap()).unwrap();
        assert_eq!((t2.points(), t2.lines()), (15, 15));
        let c = cert(&t2);
        assert_eq!((c.gonality, c.order, c.feit_higman), (4, Some((2, 2)), Some(true)));
        let q4 = q4q_quadric(2).unwrap();
        assert_eq!((q4.points(), q4.lines()), (15, 15));
        assert!(isomorphic(&t2, &q4));
        let dc = cert(&double(&t2));
        assert_eq!((dc.gonality, dc.order), (8, Some((1, 2))));
        let q3 = cert(&q4q_quadric(3).unwrap());
        assert_eq!((q3.gonality, q3.order), (4, Some((3, 3))));
    }

    #[test]
    fn gq_of_order_four() {
        let plane = pg_model(4, 2).unwrap();
        let t2 = t2_of_oval(4, &conic_oval(&plane).unwrap()).unwrap();
        let c = cert(&t2);
        assert_eq!((c.gonality, c.order), (4, Some((4, 4))));
    }

    #[test]
    fn axiom_a_by_cycle_search() {
        let hex = double(&pg_model(2, 2).unwrap().to_geometry());
        assert!(pairs_in_ordinary_subpolygons(&hex, 6).unwrap());
        assert!(pairs_in_ordinary_subpolygons(&q4q_quadric(2).unwrap(), 4).unwrap());
        assert!(!pairs_in_ordinary_subpolygons(&complete_graph_geometry(4).unwrap(), 3).unwrap());
    }

    #[test]
    fn delta_is_the_flag_complex_of_the_fano_plane() {
        let delta = build_delta(&Band::field(2).unwrap(), 3).unwrap();
        let g = IncidenceGeometry::from_flag_complex(&delta).unwrap();
        assert!(isomorphic(&g, &pg_model(2, 2).unwrap().to_geometry()));
    }

    #[test]
    fn dual_and_json() {
        let fano = pg_model(2, 2).unwrap().to_geometry();
        assert!(isomorphic(&fano, &fano.dual()));
        let j = ordinary_ngon(3).unwrap().to_json();
        assert_eq!(j["points"], 3);
        assert_eq!(j["flags"].as_array().unwrap().len(), 6);
    }
}
