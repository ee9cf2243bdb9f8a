//! Points of projective spaces, Grassmannians and flag varieties over a band.
//!
//! A Grassmannian point is a [`PluckerFamily`]: one coordinate per
//! `r`-subset of `{1..n}`, stored in colex order and kept in canonical form,
//! the lexicographically least representative over all unit scalings. A
//! point of `P^n` is a point of `Gr(1, n+1)`, and a flag is a sequence of
//! Grassmannian points of increasing rank. Points do not carry their band;
//! every operation takes it as an argument.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use crate::band::{Band, BandMorphism, Element, Units};
use crate::error::{Error, Result};
use crate::linalg::Gf;
use crate::subsets::{self, binomial, colex_rank, eps, k_subsets, Subset};

/// Enumerations refuse to scan more candidate vectors than this.
pub const ENUMERATION_LIMIT: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PluckerFamily {
    r: usize,
    n: usize,
    coords: Vec<Element>,
}

impl PluckerFamily {
    /// Builds a point from coordinates in colex order and canonicalizes it.
    pub fn new(band: &Band, r: usize, n: usize, coords: Vec<Element>) -> Result<Self> {
        if r == 0 || r > n || n > 16 {
            return Err(Error::DimensionMismatch(format!("Gr({r},{n})")));
        }
        if coords.len() != binomial(n, r) {
            return Err(Error::DimensionMismatch(format!(
                "Gr({r},{n}) needs {} coordinates, got {}",
                binomial(n, r),
                coords.len()
            )));
        }
        for x in &coords {
            if !band.contains(x) {
                return Err(Error::NotInBand {
                    element: x.to_string(),
                    band: band.to_string(),
                });
            }
        }
        if !coords.iter().any(|x| band.is_unit(x)) {
            return Err(Error::InvalidArgument(
                "a point needs a unit coordinate".into(),
            ));
        }
        Ok(PluckerFamily {
            r,
            n,
            coords: canonicalize(band, &coords),
        })
    }

    /// Builds a point from a subset-indexed map; every `r`-subset must appear.
    pub fn from_map(
        band: &Band,
        r: usize,
        n: usize,
        map: &BTreeMap<Subset, Element>,
    ) -> Result<Self> {
        let coords = k_subsets(n, r)
            .into_iter()
            .map(|s| {
                map.get(&s)
                    .copied()
                    .ok_or_else(|| Error::MissingCoordinate(subsets::format(s)))
            })
            .collect::<Result<Vec<_>>>()?;
        PluckerFamily::new(band, r, n, coords)
    }

    /// The point of `Gr(r, n)` spanned by the rows of `rows` over a field.
    pub fn from_rows(band: &Band, rows: &[Vec<Element>]) -> Result<Self> {
        let gf = Gf::from_band(band)?;
        let r = rows.len();
        let n = rows.first().map_or(0, |x| x.len());
        let m: Vec<Vec<u8>> = rows
            .iter()
            .map(|row| row.iter().map(|x| element_code(*x)).collect())
            .collect();
        PluckerFamily::new(band, r, n, field_minors(&gf, &m))
    }

    pub(crate) fn from_canonical(r: usize, n: usize, coords: Vec<Element>) -> Self {
        PluckerFamily { r, n, coords }
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn ground(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Element] {
        &self.coords
    }

    pub fn coord(&self, s: Subset) -> Element {
        self.coords[colex_rank(s)]
    }

    /// Subsets with a nonzero coordinate, in colex order.
    pub fn support(&self) -> Vec<Subset> {
        k_subsets(self.n, self.r)
            .into_iter()
            .zip(&self.coords)
            .filter(|(_, x)| !x.is_zero())
            .map(|(s, _)| s)
            .collect()
    }

    /// Compact form for small finite bands: coordinates concatenated, `-1`
    /// written as `-`.
    pub fn compact(&self) -> String {
        self.coords
            .iter()
            .map(|x| match x {
                Element::Int(-1) => "-".to_string(),
                x => x.to_string(),
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let coords: serde_json::Map<String, Value> = k_subsets(self.n, self.r)
            .into_iter()
            .zip(&self.coords)
            .map(|(s, x)| (subsets::format(s), Value::String(x.to_string())))
            .collect();
        json!({"r": self.r, "n": self.n, "coords": coords})
    }
}

impl fmt::Display for PluckerFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", items.join(","))
    }
}

/// A point of `P^(n-1)`, i.e. of `Gr(1, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(PluckerFamily);

impl ProjPoint {
    pub fn new(band: &Band, coords: Vec<Element>) -> Result<Self> {
        let n = coords.len();
        Ok(ProjPoint(PluckerFamily::new(band, 1, n, coords)?))
    }

    pub fn coords(&self) -> &[Element] {
        self.0.coords()
    }

    pub fn as_plucker(&self) -> &PluckerFamily {
        &self.0
    }

    pub fn into_plucker(self) -> PluckerFamily {
        self.0
    }
}

impl From<ProjPoint> for PluckerFamily {
    fn from(p: ProjPoint) -> Self {
        p.0
    }
}

/// A flag: one Grassmannian point per rank, ranks strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagPoint {
    stages: Vec<PluckerFamily>,
}

impl FlagPoint {
    pub fn new(stages: Vec<PluckerFamily>) -> Result<Self> {
        let Some(first) = stages.first() else {
            return Err(Error::InvalidArgument("a flag needs a stage".into()));
        };
        let n = first.n;
        for w in stages.windows(2) {
            if w[1].n != n {
                return Err(Error::DimensionMismatch("stages on different ground sets".into()));
            }
            if w[0].r >= w[1].r {
                return Err(Error::RankOrder(w[0].r, w[1].r));
            }
        }
        Ok(FlagPoint { stages })
    }

    pub fn single(x: PluckerFamily) -> Self {
        FlagPoint { stages: vec![x] }
    }

    pub fn stages(&self) -> &[PluckerFamily] {
        &self.stages
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.r).collect()
    }

    pub fn ground(&self) -> usize {
        self.stages[0].n
    }

    /// Simplex dimension: number of stages minus one.
    pub fn dim(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.stages.iter().map(|s| s.to_json()).collect())
    }
}

impl fmt::Display for FlagPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.stages.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", items.join(" < "))
    }
}

/// Which band scheme a point lives on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "functor", rename_all = "lowercase")]
pub enum Functor {
    /// `P^n`, with `n + 1` homogeneous coordinates.
    Proj { n: usize },
    Gr { r: usize, n: usize },
    Fl { ranks: Vec<usize>, n: usize },
}

impl Functor {
    pub fn ranks(&self) -> Vec<usize> {
        match self {
            Functor::Proj { .. } => vec![1],
            Functor::Gr { r, .. } => vec![*r],
            Functor::Fl { ranks, .. } => ranks.clone(),
        }
    }

    /// Size of the ground set `{1..n}` the Plücker coordinates are indexed by.
    pub fn ground(&self) -> usize {
        match self {
            Functor::Proj { n } => n + 1,
            Functor::Gr { n, .. } | Functor::Fl { n, .. } => *n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.ground();
        let ranks = self.ranks();
        if ranks.is_empty() || ranks[0] == 0 || *ranks.last().unwrap() > n || n > 8 {
            return Err(Error::DimensionMismatch(format!("{self}")));
        }
        for w in ranks.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::RankOrder(w[0], w[1]));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functor::Proj { n } => write!(f, "P{n}"),
            Functor::Gr { r, n } => write!(f, "Gr({r},{n})"),
            Functor::Fl { ranks, n } => {
                let rs: Vec<String> = ranks.iter().map(|r| r.to_string()).collect();
                write!(f, "Fl({};{n})", rs.join(","))
            }
        }
    }
}

fn element_code(x: Element) -> u8 {
    match x {
        Element::Int(v) => v as u8,
        Element::Rat(_) => unreachable!("rational entry in a field matrix"),
    }
}

/// Lexicographically least unit scaling. Over `T` the representative with
/// first nonzero coordinate 1 is used instead.
pub fn canonicalize(band: &Band, coords: &[Element]) -> Vec<Element> {
    match band.units() {
        Units::Finite(units) => units
            .iter()
            .map(|u| coords.iter().map(|x| band.times(*u, *x)).collect::<Vec<_>>())
            .min()
            .unwrap_or_else(|| coords.to_vec()),
        Units::PositiveRationals => {
            let lead = coords.iter().find(|x| !x.is_zero());
            match lead {
                Some(Element::Rat(l)) => {
                    let inv = Element::Rat(Ratio::new(*l.denom(), *l.numer()));
                    coords.iter().map(|x| band.times(inv, *x)).collect()
                }
                _ => coords.to_vec(),
            }
        }
    }
}

/// One term of a quadratic relation: `± big[left] * small[right]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub left: u16,
    pub right: u16,
    pub negative: bool,
}

/// The incidence relations between ranks `r <= r2` on `{1..n}`; for
/// `r == r2` these are the Plücker relations. For every `(r2+1)`-set `J`
/// and `(r-1)`-set `J'` the relation is
/// `Σ_k (-1)^(ε(j_k,J)+ε(j_k,J')) x_{r2, J - j_k} x_{r, J' + j_k}`,
/// where terms with `j_k ∈ J'` vanish.
pub fn relations(r: usize, r2: usize, n: usize) -> Arc<Vec<Vec<Term>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize, usize), Arc<Vec<Vec<Term>>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(r, r2, n)) {
        return hit.clone();
    }
    let mut rels = Vec::new();
    if r >= 1 && r <= r2 && r2 < n {
        for big in k_subsets(n, r2 + 1) {
            for small in k_subsets(n, r - 1) {
                let terms: Vec<Term> = subsets::elements(big)
                    .filter(|j| !subsets::contains(small, *j))
                    .map(|j| Term {
                        left: colex_rank(big & !(1 << j)) as u16,
                        right: colex_rank(small | 1 << j) as u16,
                        negative: (eps(j, big) + eps(j, small)) % 2 == 1,
                    })
                    .collect();
                if !terms.is_empty() {
                    rels.push(terms);
                }
            }
        }
    }
    let rels = Arc::new(rels);
    cache.lock().unwrap().insert((r, r2, n), rels.clone());
    rels
}

fn relations_hold(band: &Band, rels: &[Vec<Term>], big: &[Element], small: &[Element]) -> bool {
    rels.iter().all(|rel| {
        let mut acc = band.acc();
        for t in rel {
            let x = big[t.left as usize];
            let y = small[t.right as usize];
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let p = band.times(x, y);
            band.acc_add(&mut acc, if t.negative { band.negate(p) } else { p });
        }
        band.acc_is_null(&acc)
    })
}

pub fn satisfies_plucker(band: &Band, x: &PluckerFamily) -> bool {
    relations_hold(band, &relations(x.r, x.r, x.n), &x.coords, &x.coords)
}

/// Incidence relations between `x` of rank `r` and `y` of rank `r' >= r`.
pub fn satisfies_incidence(band: &Band, x: &PluckerFamily, y: &PluckerFamily) -> Result<bool> {
    if x.n != y.n {
        return Err(Error::GroundSetMismatch(x.n, y.n));
    }
    if x.r > y.r {
        return Err(Error::RankOrder(x.r, y.r));
    }
    Ok(relations_hold(
        band,
        &relations(x.r, y.r, x.n),
        &y.coords,
        &x.coords,
    ))
}

/// Plücker relations on every stage and incidence relations on every pair.
pub fn satisfies_flag(band: &Band, f: &FlagPoint) -> bool {
    f.stages.iter().enumerate().all(|(i, x)| {
        satisfies_plucker(band, x)
            && f.stages[..i]
                .iter()
                .all(|w| satisfies_incidence(band, w, x).unwrap_or(false))
    })
}

fn check_enumerable(band: &Band, len: usize) -> Result<usize> {
    let q = band.order().ok_or(Error::InfiniteBand(band.kind()))?;
    match q.checked_pow(len as u32) {
        Some(total) if total <= ENUMERATION_LIMIT => Ok(total),
        _ => Err(Error::SizeLimit(format!("{q}^{len} candidate vectors"))),
    }
}

/// All points of `Gr(r, n)(B)` in sorted canonical form.
pub fn enumerate_gr(band: &Band, r: usize, n: usize) -> Result<Vec<PluckerFamily>> {
    if r == 0 || r > n {
        return Err(Error::DimensionMismatch(format!("Gr({r},{n})")));
    }
    let len = binomial(n, r);
    check_enumerable(band, len)?;
    let elements = band.elements().unwrap();
    let rels = relations(r, r, n);
    let mut found = BTreeSet::new();
    let mut coords = vec![band.zero(); len];
    // leading coordinate: position `lead` is the first nonzero and equals 1
    for lead in 0..len {
        coords.iter_mut().for_each(|x| *x = band.zero());
        coords[lead] = band.one();
        let tail = len - lead - 1;
        let total = elements.len().pow(tail as u32);
        for mut idx in 0..total {
            for x in coords[lead + 1..].iter_mut().rev() {
                *x = elements[idx % elements.len()];
                idx /= elements.len();
            }
            if relations_hold(band, &rels, &coords, &coords) {
                found.insert(canonicalize(band, &coords));
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|c| PluckerFamily::from_canonical(r, n, c))
        .collect())
}

/// All flags of the given type, sorted.
pub fn enumerate_flags(band: &Band, ranks: &[usize], n: usize) -> Result<Vec<FlagPoint>> {
    Functor::Fl {
        ranks: ranks.to_vec(),
        n,
    }
    .validate()?;
    let layers = ranks
        .iter()
        .map(|r| enumerate_gr(band, *r, n))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    let mut stack: Vec<PluckerFamily> = Vec::new();
    extend_flags(band, &layers, &mut stack, &mut out);
    out.sort();
    Ok(out)
}

fn extend_flags(
    band: &Band,
    layers: &[Vec<PluckerFamily>],
    stack: &mut Vec<PluckerFamily>,
    out: &mut Vec<FlagPoint>,
) {
    let depth = stack.len();
    if depth == layers.len() {
        out.push(FlagPoint {
            stages: stack.clone(),
        });
        return;
    }
    for y in &layers[depth] {
        if stack
            .iter()
            .all(|x| satisfies_incidence(band, x, y).unwrap_or(false))
        {
            stack.push(y.clone());
            extend_flags(band, layers, stack, out);
            stack.pop();
        }
    }
}

/// All points of a functor as flags (a Grassmannian point is a one-stage flag).
pub fn enumerate_points(band: &Band, functor: &Functor) -> Result<Vec<FlagPoint>> {
    functor.validate()?;
    enumerate_flags(band, &functor.ranks(), functor.ground())
}

pub fn is_valid_point(band: &Band, functor: &Functor, x: &FlagPoint) -> bool {
    x.ranks() == functor.ranks() && x.ground() == functor.ground() && satisfies_flag(band, x)
}

/// Keeps only the stages whose ranks appear in `subtype`.
pub fn project_flag(f: &FlagPoint, subtype: &[usize]) -> Result<FlagPoint> {
    let ranks = f.ranks();
    let mut stages = Vec::new();
    let mut from = 0;
    for r in subtype {
        match ranks[from..].iter().position(|x| x == r) {
            Some(p) => {
                stages.push(f.stages[from + p].clone());
                from += p + 1;
            }
            None => {
                return Err(Error::NotSubtype {
                    sub: subtype.to_vec(),
                    full: ranks,
                })
            }
        }
    }
    FlagPoint::new(stages)
}

/// Image of a point under a band morphism, re-canonicalized over the target.
pub fn induced_map(f: &BandMorphism, x: &FlagPoint) -> Result<FlagPoint> {
    if !crate::band::check_morphism(f) {
        return Err(Error::InvalidMorphism(format!(
            "{} -> {}",
            f.source(),
            f.target()
        )));
    }
    Ok(induced_map_unchecked(f, x))
}

pub(crate) fn induced_map_unchecked(f: &BandMorphism, x: &FlagPoint) -> FlagPoint {
    FlagPoint {
        stages: x
            .stages
            .iter()
            .map(|s| {
                let coords: Vec<Element> = s.coords.iter().map(|c| f.apply(*c)).collect();
                PluckerFamily::from_canonical(s.r, s.n, canonicalize(f.target(), &coords))
            })
            .collect(),
    }
}

/// Plücker vector of the row space of a full-rank `r x n` matrix.
pub(crate) fn field_minors(gf: &Gf, m: &[Vec<u8>]) -> Vec<Element> {
    let n = m.first().map_or(0, |r| r.len());
    k_subsets(n, m.len())
        .into_iter()
        .map(|cols| {
            let sub: Vec<Vec<u8>> = m
                .iter()
                .map(|row| subsets::elements(cols).map(|j| row[j]).collect())
                .collect();
            Element::Int(gf.det(&sub) as i8)
        })
        .collect()
}

/// Plücker vectors of all `r`-dimensional subspaces of `F_q^n`, computed from
/// matrix minors rather than from the Plücker relations.
pub fn field_grassmannian_oracle(q: u32, r: usize, n: usize) -> Result<Vec<PluckerFamily>> {
    if q > 4 || n > 5 {
        return Err(Error::SizeLimit(format!("oracle needs q <= 4 and n <= 5, got q={q}, n={n}")));
    }
    if r == 0 || r > n {
        return Err(Error::DimensionMismatch(format!("Gr({r},{n})")));
    }
    let band = Band::field(q)?;
    let gf = Gf::from_band(&band)?;
    let found: BTreeSet<Vec<Element>> = gf
        .subspaces(r, n)
        .iter()
        .map(|m| canonicalize(&band, &field_minors(&gf, m)))
        .collect();
    Ok(found
        .into_iter()
        .map(|c| PluckerFamily::from_canonical(r, n, c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets::from_elements;

    fn k_point(r: usize, n: usize, support: &[&[usize]]) -> PluckerFamily {
        let k = Band::krasner();
        let mut map: BTreeMap<Subset, Element> =
            k_subsets(n, r).into_iter().map(|s| (s, Element::ZERO)).collect();
        for s in support {
            let zero_based: Vec<usize> = s.iter().map(|i| i - 1).collect();
            map.insert(from_elements(&zero_based), Element::ONE);
        }
        PluckerFamily::from_map(&k, r, n, &map).unwrap()
    }

    #[test]
    fn projective_counts() {
        let k = Band::krasner();
        assert_eq!(enumerate_points(&k, &Functor::Proj { n: 2 }).unwrap().len(), 7);
        let f = Band::fpm();
        let p1: Vec<String> = enumerate_points(&f, &Functor::Proj { n: 1 })
            .unwrap()
            .iter()
            .map(|p| p.stages()[0].compact())
            .collect();
        assert_eq!(p1, ["01", "10", "11", "1-"]);
        assert_eq!(enumerate_gr(&k, 2, 3).unwrap().len(), 7);
    }

    #[test]
    fn plucker_examples_over_k() {
        let k = Band::krasner();
        let bad = k_point(2, 4, &[&[1, 2], &[3, 4]]);
        assert!(!satisfies_plucker(&k, &bad));
        let uniform = k_point(2, 4, &[&[1, 2], &[1, 3], &[2, 3], &[1, 4], &[2, 4], &[3, 4]]);
        assert!(satisfies_plucker(&k, &uniform));
    }

    #[test]
    fn decomposable_vectors_satisfy_plucker() {
        for q in [2u32, 3] {
            let band = Band::field(q).unwrap();
            let gf = Gf::from_band(&band).unwrap();
            for m in gf.subspaces(2, 4) {
                let x = PluckerFamily::new(&band, 2, 4, field_minors(&gf, &m)).unwrap();
                assert!(satisfies_plucker(&band, &x));
            }
        }
    }

    #[test]
    fn incidence_examples_over_k() {
        let k = Band::krasner();
        let e1 = k_point(1, 3, &[&[1]]);
        let e3 = k_point(1, 3, &[&[3]]);
        let plane12 = k_point(2, 3, &[&[1, 2]]);
        assert_eq!(satisfies_incidence(&k, &e1, &plane12), Ok(true));
        assert_eq!(satisfies_incidence(&k, &e3, &plane12), Ok(false));
        assert_eq!(
            satisfies_incidence(&k, &plane12, &e1),
            Err(Error::RankOrder(2, 1))
        );
    }

    #[test]
    fn subspace_chains_satisfy_incidence() {
        let band = Band::field(2).unwrap();
        let gf = Gf::from_band(&band).unwrap();
        for big in gf.subspaces(2, 4) {
            let y = PluckerFamily::new(&band, 2, 4, field_minors(&gf, &big)).unwrap();
            for v in gf.vectors(2).filter(|v| v.iter().any(|c| *c != 0)) {
                let line: Vec<u8> = (0..4)
                    .map(|j| gf.add(gf.mul(v[0], big[0][j]), gf.mul(v[1], big[1][j])))
                    .collect();
                let x = PluckerFamily::new(&band, 1, 4, field_minors(&gf, &[line])).unwrap();
                assert_eq!(satisfies_incidence(&band, &x, &y), Ok(true));
            }
        }
    }

    #[test]
    fn oracle_counts() {
        assert_eq!(field_grassmannian_oracle(2, 1, 2).unwrap().len(), 3);
        assert_eq!(field_grassmannian_oracle(2, 2, 4).unwrap().len(), 35);
        assert_eq!(field_grassmannian_oracle(3, 1, 3).unwrap().len(), 13);
        assert!(matches!(
            field_grassmannian_oracle(5, 1, 3),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn oracle_matches_enumeration() {
        for q in [2u32, 3] {
            let band = Band::field(q).unwrap();
            for n in 1..=4 {
                for r in 1..=2.min(n) {
                    assert_eq!(
                        enumerate_gr(&band, r, n).unwrap(),
                        field_grassmannian_oracle(q, r, n).unwrap(),
                        "q={q} r={r} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn flag_projections() {
        let k = Band::krasner();
        let flags = enumerate_flags(&k, &[1, 2], 3).unwrap();
        assert_eq!(flags.len(), 22);
        let points = enumerate_gr(&k, 1, 3).unwrap();
        let lines = enumerate_gr(&k, 2, 3).unwrap();
        for f in &flags {
            let p = project_flag(f, &[1]).unwrap();
            let l = project_flag(f, &[2]).unwrap();
            assert!(points.contains(&p.stages()[0]));
            assert!(lines.contains(&l.stages()[0]));
            assert_eq!(&project_flag(f, &[1, 2]).unwrap(), f);
        }
        assert!(matches!(
            project_flag(&flags[0], &[2, 1]),
            Err(Error::NotSubtype { .. })
        ));
    }

    #[test]
    fn induced_maps_to_krasner() {
        let t3 = BandMorphism::to_krasner(&Band::field(3).unwrap()).unwrap();
        let k = Band::krasner();
        let src = enumerate_points(t3.source(), &Functor::Proj { n: 2 }).unwrap();
        assert_eq!(src.len(), 13);
        let image: BTreeSet<FlagPoint> =
            src.iter().map(|x| induced_map(&t3, x).unwrap()).collect();
        let target: BTreeSet<FlagPoint> =
            enumerate_points(&k, &Functor::Proj { n: 2 }).unwrap().into_iter().collect();
        assert_eq!(image, target);

        let f2 = Band::field(2).unwrap();
        let id = BandMorphism::identity(&f2).unwrap();
        for x in enumerate_points(&f2, &Functor::Gr { r: 2, n: 3 }).unwrap() {
            assert_eq!(induced_map(&id, &x).unwrap(), x);
        }
    }

    #[test]
    fn missing_coordinate_is_reported() {
        let k = Band::krasner();
        let map: BTreeMap<Subset, Element> = [(0b011, Element::ONE)].into_iter().collect();
        assert_eq!(
            PluckerFamily::from_map(&k, 2, 3, &map),
            Err(Error::MissingCoordinate("{1,3}".into()))
        );
    }

    #[test]
    fn tropical_points_are_membership_only() {
        let t = Band::tropical();
        assert!(matches!(
            enumerate_gr(&t, 1, 2),
            Err(Error::InfiniteBand(_))
        ));
        let x = PluckerFamily::new(
            &t,
            2,
            4,
            vec![Element::rational(2, 1); 6],
        )
        .unwrap();
        assert_eq!(x.coords()[0], Element::rational(1, 1));
        assert!(satisfies_plucker(&t, &x));
    }
}
