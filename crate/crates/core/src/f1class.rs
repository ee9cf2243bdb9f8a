//! F1-structures: epimorphisms from `P^2(q)` onto `K(3)` and from `P^3(q)`
//! onto `K(4)`, encoded as a partition of the points into classes together
//! with an edge label for every line.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polygon::ProjectiveSpaceModel;

/// Point classes of a structure on a projective space with `m` classes.
#[derive(Clone, Debug)]
pub struct F1Structure<'a> {
    space: &'a ProjectiveSpaceModel,
    m: u8,
    classes: Vec<u8>,
    line_labels: Option<Vec<[u8; 2]>>,
}

impl<'a> F1Structure<'a> {
    pub fn new(space: &'a ProjectiveSpaceModel, classes: Vec<u8>) -> Result<Self> {
        let m = space.dim() as u8 + 1;
        if classes.len() != space.points().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} classes for {} points",
                classes.len(),
                space.points().len()
            )));
        }
        if let Some(c) = classes.iter().find(|c| **c >= m) {
            return Err(Error::InvalidArgument(format!("class {c} >= {m}")));
        }
        Ok(F1Structure {
            space,
            m,
            classes,
            line_labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<[u8; 2]>) -> Result<Self> {
        if labels.len() != self.space.lines().len() {
            return Err(Error::DimensionMismatch(format!("{} line labels", labels.len())));
        }
        self.line_labels = Some(labels.into_iter().map(|[a, b]| [a.min(b), a.max(b)]).collect());
        Ok(self)
    }

    pub fn space(&self) -> &ProjectiveSpaceModel {
        self.space
    }

    pub fn targets(&self) -> u8 {
        self.m
    }

    pub fn classes(&self) -> &[u8] {
        &self.classes
    }

    pub fn class_of(&self, p: usize) -> u8 {
        self.classes[p]
    }

    /// Classes renumbered by first occurrence.
    pub fn canonical(&self) -> Vec<u8> {
        canonical(&self.classes)
    }

    pub fn relabeled(&self, perm: &[u8]) -> F1Structure<'a> {
        F1Structure {
            space: self.space,
            m: self.m,
            classes: self.classes.iter().map(|c| perm[*c as usize]).collect(),
            line_labels: self.line_labels.as_ref().map(|ls| {
                ls.iter()
                    .map(|[a, b]| {
                        let (x, y) = (perm[*a as usize], perm[*b as usize]);
                        [x.min(y), x.max(y)]
                    })
                    .collect()
            }),
        }
    }

    fn line_mask(&self, l: usize) -> u8 {
        mask_of(&self.classes, &self.space.lines()[l])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.space.q(),
            "d": self.space.dim(),
            "classes": class_string(&self.classes),
        })
    }
}

pub fn canonical(classes: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 8];
    let mut next = 0;
    classes
        .iter()
        .map(|&c| {
            if map[c as usize] == u8::MAX {
                map[c as usize] = next;
                next += 1;
            }
            map[c as usize]
        })
        .collect()
}

pub fn class_string(classes: &[u8]) -> String {
    classes.iter().map(|c| char::from(b'0' + c)).collect()
}

fn mask_of(classes: &[u8], pts: &[usize]) -> u8 {
    pts.iter().fold(0, |m, &p| m | 1 << classes[p])
}

fn pairs(m: u8) -> Vec<[u8; 2]> {
    (0..m).flat_map(|a| (a + 1..m).map(move |b| [a, b])).collect()
}

/// Checks the class conditions and returns a label for every line. A line
/// meeting one class `c` without a given label gets the least edge on `c`.
pub fn validate_structure(s: &F1Structure) -> Result<Vec<[u8; 2]>> {
    let present = s.classes.iter().fold(0u8, |m, c| m | 1 << c);
    if let Some(c) = (0..s.m).find(|c| present & 1 << c == 0) {
        return Err(Error::EmptyClass(c));
    }
    let masks: Vec<u8> = (0..s.space.lines().len()).map(|l| s.line_mask(l)).collect();
    if let Some(l) = masks.iter().position(|m| m.count_ones() > 2) {
        return Err(Error::LineMeetsThreeClasses(l));
    }
    let labels: Vec<[u8; 2]> = match &s.line_labels {
        Some(labels) => {
            for (l, (&m, &[a, b])) in masks.iter().zip(labels).enumerate() {
                if a == b || b >= s.m || m & !(1u8 << a | 1 << b) != 0 {
                    return Err(Error::InvalidStructure(format!("line {l} labelled {a}{b}")));
                }
            }
            labels.clone()
        }
        None => masks
            .iter()
            .map(|&m| {
                let a = m.trailing_zeros() as u8;
                let b = 7 - m.leading_zeros() as u8;
                match (a, b) {
                    (0, 0) => [0, 1],
                    (c, d) if c == d => [0, c],
                    (c, d) => [c, d],
                }
            })
            .collect(),
    };
    for e in pairs(s.m) {
        if !labels.contains(&e) {
            return Err(Error::EdgeUncovered(e[0], e[1]));
        }
    }
    Ok(labels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PlaneType {
    I,
    #[serde(rename = "I~")]
    ITilde,
    II,
    #[serde(rename = "II~")]
    IITilde,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneClassification {
    pub kind: PlaneType,
    pub base_line: usize,
    /// The line `V` of type I~.
    pub special_line: Option<usize>,
    /// The singleton class point of types II and II~.
    pub special_point: Option<usize>,
}

fn plane_lines(space: &ProjectiveSpaceModel, plane: &[usize]) -> Vec<usize> {
    (0..space.lines().len())
        .filter(|&l| space.lines()[l].iter().all(|p| plane.binary_search(p).is_ok()))
        .collect()
}

fn is_type_i(space: &ProjectiveSpaceModel, classes: &[u8], plane: &[usize], v: usize) -> bool {
    let line = &space.lines()[v];
    let on = mask_of(classes, line);
    let off: Vec<usize> = plane.iter().filter(|p| !line.contains(p)).copied().collect();
    let off_mask = mask_of(classes, &off);
    on.count_ones() == 2 && off_mask.count_ones() == 1 && on & off_mask == 0
}

/// Singleton class point `a` such that each line on `a` carries one class
/// besides `a`; returns `a` and the number of lines on each side.
fn star(
    space: &ProjectiveSpaceModel,
    classes: &[u8],
    plane: &[usize],
    lines: &[usize],
) -> Option<(usize, usize, usize)> {
    for &a in plane {
        if plane.iter().filter(|p| classes[**p] == classes[a]).count() != 1 {
            continue;
        }
        let mut sides: Vec<u8> = Vec::new();
        for &l in lines {
            let pts = &space.lines()[l];
            if !pts.contains(&a) {
                continue;
            }
            let rest: Vec<usize> = pts.iter().filter(|p| **p != a).copied().collect();
            let m = mask_of(classes, &rest);
            if m.count_ones() != 1 {
                sides.clear();
                break;
            }
            sides.push(m.trailing_zeros() as u8);
        }
        let kinds: BTreeSet<u8> = sides.iter().copied().collect();
        if kinds.len() == 2 {
            let first = *kinds.iter().next().unwrap();
            let b = sides.iter().filter(|s| **s == first).count();
            return Some((a, b, sides.len() - b));
        }
    }
    None
}

/// The type of a plane structure relative to the base line `u`.
pub fn classify_plane_type(
    space: &ProjectiveSpaceModel,
    classes: &[u8],
    plane: &[usize],
    u: usize,
) -> Result<Option<PlaneClassification>> {
    let lines = plane_lines(space, plane);
    if !lines.contains(&u) {
        return Err(Error::InvalidArgument(format!("line {u} is not in the plane")));
    }
    if mask_of(classes, plane).count_ones() != 3
        || lines.iter().any(|&l| mask_of(classes, &space.lines()[l]).count_ones() > 2)
    {
        return Err(Error::InvalidStructure("not a structure onto K(3)".into()));
    }
    let found = |kind, special_line, special_point| {
        Ok(Some(PlaneClassification {
            kind,
            base_line: u,
            special_line,
            special_point,
        }))
    };
    if is_type_i(space, classes, plane, u) {
        return found(PlaneType::I, None, None);
    }
    if let Some(&v) = lines
        .iter()
        .find(|&&v| v != u && is_type_i(space, classes, plane, v))
    {
        return found(PlaneType::ITilde, Some(v), None);
    }
    if let Some((a, b, c)) = star(space, classes, plane, &lines) {
        if b >= 2 && c >= 2 {
            let kind = if space.lines()[u].contains(&a) {
                PlaneType::II
            } else {
                PlaneType::IITilde
            };
            return found(kind, None, Some(a));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PlaneClassMatch {
    /// Line `L` of a class (a) structure.
    pub line_based: Option<usize>,
    /// Point of a class (b) structure.
    pub point_based: Option<usize>,
}

/// Matches a structure on a plane against the two classes of epimorphisms.
pub fn match_plane_class(space: &ProjectiveSpaceModel, classes: &[u8]) -> PlaneClassMatch {
    let all: Vec<usize> = (0..space.points().len()).collect();
    let lines: Vec<usize> = (0..space.lines().len()).collect();
    PlaneClassMatch {
        line_based: lines.iter().copied().find(|&l| is_type_i(space, classes, &all, l)),
        point_based: star(space, classes, &all, &lines).map(|s| s.0),
    }
}

struct SearchSpace<'a> {
    lines: &'a [Vec<usize>],
    order: Vec<usize>,
    lines_of: Vec<Vec<usize>>,
    m: u8,
}

impl<'a> SearchSpace<'a> {
    fn new(space: &'a ProjectiveSpaceModel) -> Self {
        let n = space.points().len();
        let lines = space.lines();
        let lines_of: Vec<Vec<usize>> = (0..n).map(|p| space.lines_on(p)).collect();
        // greedy order: each new point completes as many lines as possible
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let score = |p: usize| {
                let mut done = 0;
                let mut touched = 0;
                for &l in &lines_of[p] {
                    let k = lines[l].iter().filter(|x| placed[**x]).count();
                    done += (k + 1 == lines[l].len()) as usize;
                    touched += k;
                }
                (done, touched)
            };
            let p = (0..n)
                .filter(|p| !placed[*p])
                .max_by(|a, b| score(*a).cmp(&score(*b)).then(b.cmp(a)))
                .unwrap();
            placed[p] = true;
            order.push(p);
        }
        SearchSpace {
            lines,
            order,
            lines_of,
            m: space.dim() as u8 + 1,
        }
    }

    fn fits(&self, classes: &[u8], assigned: &[bool], p: usize, c: u8) -> bool {
        self.lines_of[p].iter().all(|&l| {
            let m = self.lines[l]
                .iter()
                .filter(|x| assigned[**x])
                .fold(1u8 << c, |m, x| m | 1 << classes[*x]);
            m.count_ones() <= 2
        })
    }

    /// Depth-first search with classes numbered by first occurrence along
    /// the search order.
    fn dfs(
        &self,
        depth: usize,
        used: u8,
        classes: &mut [u8],
        assigned: &mut [bool],
        stop: usize,
        out: &mut Vec<(Vec<u8>, u8)>,
    ) {
        if depth == stop {
            out.push((classes.to_vec(), used));
            return;
        }
        let p = self.order[depth];
        let remaining = self.order.len() - depth;
        for c in 0..(used + 1).min(self.m) {
            let used2 = used.max(c + 1);
            if (self.m - used2) as usize > remaining - 1 {
                continue;
            }
            if self.fits(classes, assigned, p, c) {
                classes[p] = c;
                assigned[p] = true;
                self.dfs(depth + 1, used2, classes, assigned, stop, out);
                assigned[p] = false;
            }
        }
    }
}

/// All class maps onto `d + 1` classes meeting every line in at most two
/// classes, each in canonical form, sorted.
pub fn search_class_maps(space: &ProjectiveSpaceModel) -> Vec<Vec<u8>> {
    let s = SearchSpace::new(space);
    let n = space.points().len();
    let shard_depth = n.min(6);
    let mut prefixes = Vec::new();
    s.dfs(0, 0, &mut vec![0; n], &mut vec![false; n], shard_depth, &mut prefixes);
    let mut found: Vec<Vec<u8>> = prefixes
        .into_par_iter()
        .flat_map_iter(|(mut classes, used)| {
            let mut assigned = vec![false; n];
            for &p in &s.order[..shard_depth] {
                assigned[p] = true;
            }
            let mut out = Vec::new();
            s.dfs(shard_depth, used, &mut classes, &mut assigned, n, &mut out);
            out.into_iter()
                .filter(|(_, used)| *used == s.m)
                .map(|(c, _)| canonical(&c))
        })
        .collect();
    found.sort();
    found
}

/// Every map of the points to `d + 1` classes, filtered by validation.
pub fn unpruned_structures(space: &ProjectiveSpaceModel) -> Result<Vec<Vec<u8>>> {
    let n = space.points().len();
    let m = space.dim() as u32 + 1;
    let total = (m as u64).checked_pow(n as u32).filter(|t| *t <= 1 << 24);
    let Some(total) = total else {
        return Err(Error::SizeLimit(format!("{m}^{n} maps")));
    };
    let mut out = BTreeSet::new();
    for code in 0..total {
        let mut x = code;
        let classes: Vec<u8> = (0..n)
            .map(|_| {
                let c = (x % m as u64) as u8;
                x /= m as u64;
                c
            })
            .collect();
        if validate_structure(&F1Structure::new(space, classes.clone())?).is_ok() {
            out.insert(canonical(&classes));
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneReport {
    pub q: u32,
    pub valid: usize,
    pub class_a: usize,
    pub class_b: usize,
    pub both: usize,
    pub unmatched: usize,
    pub witnesses: Vec<String>,
}

pub fn enumerate_plane_epis(plane: &ProjectiveSpaceModel) -> Result<PlaneReport> {
    if plane.dim() != 2 || plane.q() > 3 {
        return Err(Error::SizeLimit("plane epimorphisms need d = 2 and q <= 3".to_string()));
    }
    let maps = search_class_maps(plane);
    let mut rep = PlaneReport {
        q: plane.q(),
        valid: 0,
        class_a: 0,
        class_b: 0,
        both: 0,
        unmatched: 0,
        witnesses: Vec::new(),
    };
    for classes in &maps {
        if validate_structure(&F1Structure::new(plane, classes.clone())?).is_err() {
            continue;
        }
        rep.valid += 1;
        let m = match_plane_class(plane, classes);
        let (a, b) = (m.line_based.is_some(), m.point_based.is_some());
        rep.class_a += a as usize;
        rep.class_b += b as usize;
        rep.both += (a && b) as usize;
        if !a && !b {
            rep.unmatched += 1;
            rep.witnesses.push(class_string(classes));
        }
    }
    Ok(rep)
}

/// Case E: `U ⊆ A ∪ B` meeting both, one plane `Π_C` on `U` with a single
/// point outside `A ∪ B`, which lies in `C`, and all other planes on `U`
/// meeting the complement of `U` in `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseE {
    /// Class labels of `A, B, C, D`.
    pub labels: [u8; 4],
    pub u: usize,
    pub pi_c: usize,
    pub c_point: usize,
    pub u_in_a: usize,
    pub u_in_b: usize,
    /// Type of `Π_C` relative to `U`.
    pub pi_c_type: Option<PlaneType>,
}

/// Case F: a line `Û = C ∪ D` skew to `U`, with every other point inheriting
/// the class of the point where its transversal meets `U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseF {
    pub labels: [u8; 4],
    pub u: usize,
    pub u_hat: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CaseMatch {
    pub e: Option<CaseE>,
    pub f: Option<CaseF>,
}

impl CaseMatch {
    pub fn is_matched(&self) -> bool {
        self.e.is_some() || self.f.is_some()
    }

    pub fn kinds(&self) -> (bool, bool) {
        (self.e.is_some(), self.f.is_some())
    }
}

fn planes_on(space: &ProjectiveSpaceModel, line: &[usize]) -> Vec<usize> {
    (0..space.planes().len())
        .filter(|&i| line.iter().all(|p| space.planes()[i].binary_search(p).is_ok()))
        .collect()
}

pub fn match_case(s: &F1Structure) -> Result<CaseMatch> {
    let space = s.space;
    if space.dim() != 3 {
        return Err(Error::DimensionMismatch(format!("d = {} != 3", space.dim())));
    }
    let classes = &s.classes;
    let lines = space.lines();
    let mut out = CaseMatch::default();
    for (u, line) in lines.iter().enumerate() {
        let um = s.line_mask(u);
        if um.count_ones() != 2 {
            continue;
        }
        let a = um.trailing_zeros() as u8;
        let b = 7 - um.leading_zeros() as u8;
        let rest: Vec<u8> = (0..4).filter(|c| um & 1 << c == 0).collect();
        let count = |c: u8| line.iter().filter(|p| classes[**p] == c).count();
        if out.e.is_none() {
            let on_u = planes_on(space, line);
            for &pi in &on_u {
                let off: Vec<usize> = space.planes()[pi]
                    .iter()
                    .filter(|p| !line.contains(p) && um & 1 << classes[**p] == 0)
                    .copied()
                    .collect();
                let [c_point] = off[..] else { continue };
                let c = classes[c_point];
                let d = if rest[0] == c { rest[1] } else { rest[0] };
                let others_in_d = on_u.iter().filter(|&&o| o != pi).all(|&o| {
                    space.planes()[o]
                        .iter()
                        .all(|p| line.contains(p) || classes[*p] == d)
                });
                if others_in_d {
                    let pi_c_type = classify_plane_type(space, classes, &space.planes()[pi], u)?
                        .map(|t| t.kind);
                    out.e = Some(CaseE {
                        labels: [a, b, c, d],
                        u,
                        pi_c: pi,
                        c_point,
                        u_in_a: count(a),
                        u_in_b: count(b),
                        pi_c_type,
                    });
                    break;
                }
            }
        }
        if out.f.is_none() {
            let cd: Vec<usize> = (0..classes.len())
                .filter(|p| um & 1 << classes[*p] == 0)
                .collect();
            if cd.len() != space.q() as usize + 1 {
                continue;
            }
            let Some(u_hat) = lines.iter().position(|l| *l == cd) else {
                continue;
            };
            if s.line_mask(u_hat).count_ones() != 2 || line.iter().any(|p| cd.contains(p)) {
                continue;
            }
            let inherits = (0..classes.len())
                .filter(|p| !line.contains(p) && !cd.contains(p))
                .all(|p| {
                    let w: Vec<usize> = cd
                        .iter()
                        .map(|&h| space.line_through(p, h))
                        .filter(|&t| lines[t].iter().any(|x| line.contains(x)))
                        .collect();
                    match w[..] {
                        [t] => {
                            let x = *lines[t].iter().find(|x| line.contains(x)).unwrap();
                            classes[x] == classes[p]
                        }
                        _ => false,
                    }
                });
            if inherits {
                out.f = Some(CaseF {
                    labels: [a, b, rest[0], rest[1]],
                    u,
                    u_hat,
                });
            }
        }
        if out.e.is_some() && out.f.is_some() {
            break;
        }
    }
    Ok(out)
}

/// Every line meets at most two classes, every plane exactly three and the
/// space all `d + 1`.
pub fn dimension_check(s: &F1Structure) -> bool {
    let space = s.space;
    let all = s.classes.iter().fold(0u8, |m, c| m | 1 << c);
    all.count_ones() == space.dim() as u32 + 1
        && (0..space.lines().len()).all(|l| s.line_mask(l).count_ones() <= 2)
        && (space.dim() == 2
            || space
                .planes()
                .iter()
                .all(|pl| mask_of(&s.classes, pl).count_ones() == 3))
}

fn nonempty_splits(len: usize) -> impl Iterator<Item = Vec<u8>> {
    (1u32..(1 << len) - 1).map(move |m| (0..len).map(|i| ((m >> i) & 1) as u8).collect())
}

/// All case E structures, built directly from `U`, its split, `Π_C` and the
/// point of `C`.
pub fn case_e_templates(space: &ProjectiveSpaceModel) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    let n = space.points().len();
    for line in space.lines() {
        let planes = planes_on(space, line);
        for split in nonempty_splits(line.len()) {
            for &pi in &planes {
                let plane = &space.planes()[pi];
                for &c in plane.iter().filter(|p| !line.contains(p)) {
                    let mut classes = vec![3u8; n];
                    for (p, s) in line.iter().zip(&split) {
                        classes[*p] = *s;
                    }
                    classes[c] = 2;
                    for &x in plane.iter().filter(|p| !line.contains(p) && **p != c) {
                        let t = space.line_through(c, x);
                        let w = space.lines()[t].iter().position(|p| line.contains(p)).unwrap();
                        let w = space.lines()[t][w];
                        classes[x] = classes[w];
                    }
                    out.insert(canonical(&classes));
                }
            }
        }
    }
    out
}

/// All case F structures, built from `U`, a skew line `Û` and their splits.
pub fn case_f_templates(space: &ProjectiveSpaceModel) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    let n = space.points().len();
    let lines = space.lines();
    for u in lines {
        for u_hat in lines.iter().filter(|l| l.iter().all(|p| !u.contains(p))) {
            for split in nonempty_splits(u.len()) {
                for split_hat in nonempty_splits(u_hat.len()) {
                    let mut classes = vec![u8::MAX; n];
                    for (p, s) in u.iter().zip(&split) {
                        classes[*p] = *s;
                    }
                    for (p, s) in u_hat.iter().zip(&split_hat) {
                        classes[*p] = 2 + s;
                    }
                    for p in 0..n {
                        if classes[p] != u8::MAX {
                            continue;
                        }
                        let w = u_hat
                            .iter()
                            .map(|&h| &lines[space.line_through(p, h)])
                            .find_map(|t| t.iter().find(|x| u.contains(x)))
                            .unwrap();
                        classes[p] = classes[*w];
                    }
                    out.insert(canonical(&classes));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P3Report {
    pub q: u32,
    pub class_maps: usize,
    pub valid: usize,
    #[serde(rename = "case_E")]
    pub case_e: usize,
    #[serde(rename = "case_F")]
    pub case_f: usize,
    pub both: usize,
    pub unmatched: usize,
    /// Class maps meeting every line in at most two classes that admit no
    /// surjective line labelling.
    pub line_surjectivity_failures: usize,
    /// Case E witnesses with at least two points of `U` in each of `A`, `B`.
    #[serde(rename = "case_E_both_sides_ge2")]
    pub case_e_both_sides_ge2: usize,
    pub dimension_check: bool,
    pub templates_e: usize,
    pub templates_f: usize,
    pub templates_valid: bool,
    pub templates_equal_search: bool,
    pub witnesses: Vec<Value>,
}

pub fn enumerate_p3_epis(space: &ProjectiveSpaceModel) -> Result<P3Report> {
    if space.dim() != 3 || space.q() > 3 {
        return Err(Error::SizeLimit("P3 epimorphisms need d = 3 and q <= 3".into()));
    }
    let maps = search_class_maps(space);
    let results: Vec<(Vec<u8>, bool, CaseMatch, bool)> = maps
        .par_iter()
        .map(|classes| {
            let s = F1Structure::new(space, classes.clone())?;
            let valid = validate_structure(&s).is_ok();
            let m = if valid { match_case(&s)? } else { CaseMatch::default() };
            Ok((classes.clone(), valid, m, dimension_check(&s)))
        })
        .collect::<Result<_>>()?;
    let te = case_e_templates(space);
    let tf = case_f_templates(space);
    let found: BTreeSet<Vec<u8>> = results
        .iter()
        .filter(|r| r.1)
        .map(|r| r.0.clone())
        .collect();
    let templates: BTreeSet<Vec<u8>> = te.union(&tf).cloned().collect();
    let templates_valid = templates.iter().all(|t| {
        validate_structure(&F1Structure::new(space, t.clone()).expect("template size")).is_ok()
    });
    let mut rep = P3Report {
        q: space.q(),
        class_maps: maps.len(),
        valid: found.len(),
        case_e: 0,
        case_f: 0,
        both: 0,
        unmatched: 0,
        line_surjectivity_failures: results.iter().filter(|r| !r.1).count(),
        case_e_both_sides_ge2: 0,
        dimension_check: results.iter().filter(|r| r.1).all(|r| r.3),
        templates_e: te.len(),
        templates_f: tf.len(),
        templates_valid,
        templates_equal_search: templates == found,
        witnesses: Vec::new(),
    };
    let (mut shown_e, mut shown_f) = (false, false);
    for (classes, valid, m, _) in &results {
        if !valid {
            continue;
        }
        let (e, f) = m.kinds();
        rep.case_e += e as usize;
        rep.case_f += f as usize;
        rep.both += (e && f) as usize;
        if let Some(w) = &m.e {
            rep.case_e_both_sides_ge2 += (w.u_in_a >= 2 && w.u_in_b >= 2) as usize;
        }
        let show = !m.is_matched() || (e && !shown_e) || (f && !shown_f);
        if show {
            rep.witnesses.push(json!({
                "classes": class_string(classes),
                "E": m.e,
                "F": m.f,
            }));
            shown_e |= e;
            shown_f |= f;
        }
        rep.unmatched += !m.is_matched() as usize;
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crowd::permutations;
    use crate::polygon::pg_model;

    fn fano() -> ProjectiveSpaceModel {
        pg_model(2, 2).unwrap()
    }

    /// Type I: line `l` split by `on_a`, everything else in class 2.
    fn type_i(space: &ProjectiveSpaceModel, l: usize, on_a: usize) -> Vec<u8> {
        let line = &space.lines()[l];
        (0..space.points().len())
            .map(|p| match line.iter().position(|x| *x == p) {
                Some(i) if i < on_a => 0,
                Some(_) => 1,
                None => 2,
            })
            .collect()
    }

    #[test]
    fn validation_examples() {
        let plane = fano();
        let s = F1Structure::new(&plane, type_i(&plane, 0, 1)).unwrap();
        let labels = validate_structure(&s).unwrap();
        assert_eq!(labels.len(), 7);
        // three classes on one line
        let l = plane.lines()[0].clone();
        let mut classes = vec![0u8; 7];
        classes[l[1]] = 1;
        classes[l[2]] = 2;
        let bad = F1Structure::new(&plane, classes).unwrap();
        assert!(matches!(validate_structure(&bad), Err(Error::LineMeetsThreeClasses(_))));
        let empty = F1Structure::new(&plane, vec![0, 1, 0, 1, 0, 1, 0]).unwrap();
        assert_eq!(validate_structure(&empty), Err(Error::EmptyClass(2)));
        let wrong = s.clone().with_labels(vec![[0, 1]; 7]).unwrap();
        assert!(validate_structure(&wrong).is_err());
        let good = s.with_labels(labels).unwrap();
        assert!(validate_structure(&good).is_ok());
    }

    #[test]
    fn explicit_labels_must_cover_every_edge() {
        let space = pg_model(2, 3).unwrap();
        let classes = search_class_maps(&space).remove(0);
        let s = F1Structure::new(&space, classes).unwrap();
        let labels = validate_structure(&s).unwrap();
        for e in pairs(4) {
            assert!(labels.contains(&e));
        }
        // forcing all one-class lines onto one edge keeps coverage
        let forced: Vec<[u8; 2]> = (0..space.lines().len())
            .map(|l| match s.line_mask(l).count_ones() {
                1 => {
                    let c = s.line_mask(l).trailing_zeros() as u8;
                    if c == 3 { [2, 3] } else { [c, 3] }
                }
                _ => labels[l],
            })
            .collect();
        assert!(validate_structure(&s.clone().with_labels(forced).unwrap()).is_ok());
        let mut missing = labels.clone();
        for lab in missing.iter_mut() {
            if *lab == [0, 1] {
                *lab = [0, 2];
            }
        }
        assert!(validate_structure(&s.with_labels(missing).unwrap()).is_err());
    }

    #[test]
    fn plane_types() {
        let plane = pg_model(3, 2).unwrap();
        let all: Vec<usize> = (0..13).collect();
        let u = 0;
        let classes = type_i(&plane, u, 2);
        let t = classify_plane_type(&plane, &classes, &all, u).unwrap().unwrap();
        assert_eq!(t.kind, PlaneType::I);
        // a line through the point of U∩A when A∩U is a single point
        let classes = type_i(&plane, u, 1);
        let a = plane.lines()[u][0];
        let v = plane.lines_on(a).into_iter().find(|l| *l != u).unwrap();
        let t = classify_plane_type(&plane, &classes, &all, v).unwrap().unwrap();
        assert_eq!((t.kind, t.special_line), (PlaneType::ITilde, Some(u)));
        // point pencil split 2 + 2
        let p = 0;
        let pencil = plane.lines_on(p);
        let mut classes = vec![0u8; 13];
        for (i, &l) in pencil.iter().enumerate() {
            for &x in &plane.lines()[l] {
                if x != p {
                    classes[x] = if i < 2 { 1 } else { 2 };
                }
            }
        }
        let t = classify_plane_type(&plane, &classes, &all, pencil[0]).unwrap().unwrap();
        assert_eq!((t.kind, t.special_point), (PlaneType::II, Some(p)));
        let off = (0..plane.lines().len())
            .find(|l| !plane.lines()[*l].contains(&p))
            .unwrap();
        let t = classify_plane_type(&plane, &classes, &all, off).unwrap().unwrap();
        assert_eq!(t.kind, PlaneType::IITilde);
        let m = match_plane_class(&plane, &classes);
        assert_eq!((m.line_based, m.point_based), (None, Some(p)));
    }

    #[test]
    fn plane_classification() {
        let r2 = enumerate_plane_epis(&fano()).unwrap();
        assert_eq!((r2.valid, r2.class_a, r2.class_b, r2.unmatched), (21, 21, 21, 0));
        let r3 = enumerate_plane_epis(&pg_model(3, 2).unwrap()).unwrap();
        assert_eq!((r3.valid, r3.class_a, r3.class_b, r3.both), (130, 91, 91, 52));
        assert_eq!(r3.unmatched, 0);
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        let plane = fano();
        assert_eq!(search_class_maps(&plane), unpruned_structures(&plane).unwrap());
    }

    #[test]
    fn p3_classification() {
        let space = pg_model(2, 3).unwrap();
        let rep = enumerate_p3_epis(&space).unwrap();
        assert_eq!(rep.valid, 315);
        assert_eq!(rep.line_surjectivity_failures, 0);
        assert_eq!((rep.case_e, rep.case_f, rep.unmatched), (315, 315, 0));
        assert!(rep.dimension_check);
        assert!(rep.templates_valid);
        assert!(rep.templates_equal_search);
    }

    #[test]
    fn case_templates_are_recognized() {
        let space = pg_model(2, 3).unwrap();
        for t in case_e_templates(&space) {
            let s = F1Structure::new(&space, t).unwrap();
            assert!(match_case(&s).unwrap().e.is_some());
        }
        for t in case_f_templates(&space) {
            let s = F1Structure::new(&space, t).unwrap();
            assert!(match_case(&s).unwrap().f.is_some());
        }
    }

    #[test]
    fn extremal_template() {
        // |U ∩ A| = 1, rest of U in B, one plane on U to C, the others to D
        let space = pg_model(2, 3).unwrap();
        let u = &space.lines()[0];
        let planes = planes_on(&space, u);
        let mut classes = vec![3u8; 15];
        for &p in &space.planes()[planes[0]] {
            classes[p] = 2;
        }
        classes[u[0]] = 0;
        classes[u[1]] = 1;
        classes[u[2]] = 1;
        let s = F1Structure::new(&space, classes).unwrap();
        assert!(validate_structure(&s).is_ok());
        assert!(dimension_check(&s));
        let m = match_case(&s).unwrap();
        assert!(m.is_matched());
    }

    #[test]
    fn relabeling_preserves_validity_and_case() {
        let space = pg_model(2, 3).unwrap();
        let maps = search_class_maps(&space);
        for classes in maps.iter().step_by(7) {
            let s = F1Structure::new(&space, classes.clone()).unwrap();
            let kinds = match_case(&s).unwrap().kinds();
            for (perm, _) in permutations(4) {
                let perm: Vec<u8> = perm.iter().map(|x| *x as u8).collect();
                let r = s.relabeled(&perm);
                assert!(validate_structure(&r).is_ok());
                assert_eq!(match_case(&r).unwrap().kinds(), kinds);
                assert_eq!(r.canonical(), s.canonical());
            }
        }
    }

    #[test]
    fn planes_of_p3_structures_have_a_type() {
        let space = pg_model(2, 3).unwrap();
        for classes in search_class_maps(&space).iter().step_by(5) {
            for plane in space.planes() {
                let any = plane_lines(&space, plane).into_iter().any(|u| {
                    classify_plane_type(&space, classes, plane, u)
                        .unwrap()
                        .is_some()
                });
                assert!(any);
            }
        }
    }

    #[test]
    fn monochromatic_plane_fails_dimension_check() {
        let space = pg_model(2, 3).unwrap();
        let plane = &space.planes()[0];
        let mut classes = vec![0u8; 15];
        let outside: Vec<usize> = (0..15).filter(|p| !plane.contains(p)).collect();
        for (i, p) in outside.iter().enumerate() {
            classes[*p] = 1 + (i % 3) as u8;
        }
        let s = F1Structure::new(&space, classes).unwrap();
        assert!(!dimension_check(&s));
        assert!(validate_structure(&s).is_err());
    }
}
