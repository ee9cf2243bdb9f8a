//! The simplicial complexes `Δ_n(B)` and `Γ_n(B)`.
//!
//! Simplices of type `(r_1 < ... < r_s)` with `0 < r_i < n` are the points of
//! `Fl(r_1, ..., r_s; n)(B)`; faces are projections to subtypes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::activity::{MinorSign, SlActivity};
use crate::band::{check_morphism, Band, BandMorphism, Element};
use crate::crowd::{is_special_linear, BandMatrix};
use crate::error::{Error, Result};
use crate::linalg::Gf;
use crate::points::{
    canonicalize, enumerate_flags, field_minors, induced_map_unchecked, project_flag, FlagPoint,
    PluckerFamily,
};
use crate::subsets::{self, k_subsets, Subset};

/// All nonempty increasing rank sequences in `1..n`, shortest first.
pub fn types(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..1 << (n - 1))
        .map(|mask| (1..n).filter(|r| mask & (1 << (r - 1)) != 0).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Nonempty proper subtypes of a type.
fn subtypes(ty: &[usize]) -> Vec<Vec<usize>> {
    let s = ty.len();
    (1u32..(1 << s) - 1)
        .map(|mask| (0..s).filter(|i| mask & (1 << i) != 0).map(|i| ty[i]).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    /// simplices by type, each list sorted
    simplices: BTreeMap<Vec<usize>, Vec<FlagPoint>>,
}

impl SimplicialComplex {
    fn from_types(n: usize, simplices: BTreeMap<Vec<usize>, Vec<FlagPoint>>) -> Self {
        let simplices = simplices
            .into_iter()
            .map(|(k, mut v)| {
                v.sort();
                v.dedup();
                (k, v)
            })
            .collect();
        SimplicialComplex { n, simplices }
    }

    pub fn ground(&self) -> usize {
        self.n
    }

    pub fn simplices(&self) -> &BTreeMap<Vec<usize>, Vec<FlagPoint>> {
        &self.simplices
    }

    pub fn of_type(&self, ty: &[usize]) -> &[FlagPoint] {
        self.simplices.get(ty).map_or(&[], |v| v.as_slice())
    }

    pub fn all(&self) -> impl Iterator<Item = &FlagPoint> {
        self.simplices.values().flatten()
    }

    pub fn contains(&self, x: &FlagPoint) -> bool {
        self.simplices
            .get(&x.ranks())
            .is_some_and(|v| v.binary_search(x).is_ok())
    }

    /// Vertices sorted by rank, then by point.
    pub fn vertices(&self) -> Vec<FlagPoint> {
        self.simplices
            .iter()
            .filter(|(k, _)| k.len() == 1)
            .flat_map(|(_, v)| v.iter().cloned())
            .collect()
    }

    pub fn edges(&self) -> Vec<FlagPoint> {
        self.simplices
            .iter()
            .filter(|(k, _)| k.len() == 2)
            .flat_map(|(_, v)| v.iter().cloned())
            .collect()
    }

    /// Number of simplices of each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for (k, v) in &self.simplices {
            if f.len() < k.len() {
                f.resize(k.len(), 0);
            }
            f[k.len() - 1] += v.len();
        }
        f
    }

    /// Proper faces of a simplex.
    pub fn faces(x: &FlagPoint) -> Vec<FlagPoint> {
        subtypes(&x.ranks())
            .iter()
            .map(|t| project_flag(x, t).expect("subtype"))
            .collect()
    }

    /// Every face of every simplex is a simplex.
    pub fn is_closed(&self) -> bool {
        self.all()
            .all(|x| Self::faces(x).iter().all(|f| self.contains(f)))
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.all().all(|x| other.contains(x))
    }

    /// Vertex pairs of the 1-skeleton, as indices into [`Self::vertices`].
    pub fn edge_indices(&self) -> Vec<(usize, usize)> {
        let vertices = self.vertices();
        let index: BTreeMap<&FlagPoint, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut out: Vec<(usize, usize)> = self
            .edges()
            .iter()
            .map(|e| {
                let s = e.stages();
                let a = FlagPoint::single(s[0].clone());
                let b = FlagPoint::single(s[1].clone());
                (index[&a], index[&b])
            })
            .collect();
        out.sort();
        out
    }

    pub fn to_json(&self) -> Value {
        let type_name = |k: &[usize]| {
            let items: Vec<String> = k.iter().map(|r| r.to_string()).collect();
            format!("({})", items.join(","))
        };
        let simplices: serde_json::Map<String, Value> = self
            .simplices
            .iter()
            .map(|(k, v)| {
                (
                    type_name(k),
                    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect()),
                )
            })
            .collect();
        let counts: serde_json::Map<String, Value> = self
            .f_vector()
            .iter()
            .enumerate()
            .map(|(d, c)| (format!("dim{d}"), json!(c)))
            .collect();
        json!({
            "n": self.n,
            "vertices": self.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "simplices": simplices,
            "counts": counts,
        })
    }

    /// The 1-skeleton in Graphviz format.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph complex {\n");
        for (i, v) in self.vertices().iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{}\"];", v.stages()[0].compact());
        }
        for (a, b) in self.edge_indices() {
            let _ = writeln!(out, "  v{a} -- v{b};");
        }
        out.push_str("}\n");
        out
    }
}

fn check_size(band: &Band, n: usize) -> Result<()> {
    if !band.is_finite() {
        return Err(Error::InfiniteBand(band.kind()));
    }
    if !(2..=4).contains(&n) {
        return Err(Error::SizeLimit(format!("complexes need 2 <= n <= 4, got {n}")));
    }
    Ok(())
}

/// `Δ_n(B)`.
pub fn build_delta(band: &Band, n: usize) -> Result<SimplicialComplex> {
    check_size(band, n)?;
    let simplices = types(n)
        .into_par_iter()
        .map(|t| enumerate_flags(band, &t, n).map(|v| (t, v)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(SimplicialComplex::from_types(n, simplices))
}

fn single_support(x: &FlagPoint) -> bool {
    x.stages().iter().all(|s| s.support().len() == 1)
}

/// `Γ_n(B)`: flags whose stages each have exactly one nonzero coordinate.
pub fn build_gamma(band: &Band, n: usize) -> Result<SimplicialComplex> {
    Ok(gamma_of(&build_delta(band, n)?))
}

pub fn gamma_of(delta: &SimplicialComplex) -> SimplicialComplex {
    let simplices = delta
        .simplices
        .iter()
        .map(|(k, v)| (k.clone(), v.iter().filter(|x| single_support(x)).cloned().collect()))
        .collect();
    SimplicialComplex::from_types(delta.n, simplices)
}

/// The Coxeter complex of `S_n`: chains of nonempty proper subsets of `{1..n}`,
/// each subset written as the single-support point it spans over `band`.
pub fn coxeter_complex(band: &Band, n: usize) -> Result<SimplicialComplex> {
    check_size(band, n)?;
    let point = |s: Subset| {
        let r = subsets::size(s);
        let coords = k_subsets(n, r)
            .into_iter()
            .map(|t| if t == s { band.one() } else { band.zero() })
            .collect();
        PluckerFamily::new(band, r, n, coords).expect("unit coordinate")
    };
    let mut simplices: BTreeMap<Vec<usize>, Vec<FlagPoint>> = BTreeMap::new();
    let full = (1u32 << n) - 1;
    fn chains(from: u32, full: u32, chain: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        for s in 1..full {
            if s & from == from && s != from {
                chain.push(s);
                out.push(chain.clone());
                chains(s, full, chain, out);
                chain.pop();
            }
        }
    }
    let mut all = Vec::new();
    chains(0, full, &mut Vec::new(), &mut all);
    for chain in all {
        let ty: Vec<usize> = chain.iter().map(|s| subsets::size(*s)).collect();
        let flag = FlagPoint::new(chain.iter().map(|s| point(*s)).collect())?;
        simplices.entry(ty).or_default().push(flag);
    }
    Ok(SimplicialComplex::from_types(n, simplices))
}

/// `f_*: Δ_n(B) → Δ_n(C)` for a band morphism `f`.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    pub image: BTreeMap<FlagPoint, FlagPoint>,
}

impl SimplicialMap {
    pub fn image_complex(&self) -> SimplicialComplex {
        let mut simplices: BTreeMap<Vec<usize>, Vec<FlagPoint>> = BTreeMap::new();
        for y in self.image.values() {
            simplices.entry(y.ranks()).or_default().push(y.clone());
        }
        SimplicialComplex::from_types(self.target.n, simplices)
    }

    /// Simplices of the target outside the image.
    pub fn missed(&self) -> Vec<FlagPoint> {
        let img = self.image_complex();
        self.target.all().filter(|x| !img.contains(x)).cloned().collect()
    }

    /// Images land in the target and commute with taking faces.
    pub fn preserves_faces(&self) -> bool {
        self.image.iter().all(|(x, y)| {
            self.target.contains(y)
                && subtypes(&x.ranks()).iter().all(|t| {
                    let fx = project_flag(x, t).expect("subtype");
                    self.image.get(&fx) == Some(&project_flag(y, t).expect("subtype"))
                })
        })
    }
}

pub fn induced_simplicial_map(f: &BandMorphism, n: usize) -> Result<SimplicialMap> {
    if !check_morphism(f) {
        return Err(Error::InvalidMorphism(format!("{} -> {}", f.source(), f.target())));
    }
    let source = build_delta(f.source(), n)?;
    let target = build_delta(f.target(), n)?;
    let image = source
        .all()
        .map(|x| (x.clone(), induced_map_unchecked(f, x)))
        .collect();
    let map = SimplicialMap {
        source,
        target,
        image,
    };
    if !map.preserves_faces() {
        return Err(Error::InvalidMorphism("induced map does not preserve faces".into()));
    }
    Ok(map)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SquareReport {
    pub q: u32,
    pub n: usize,
    pub chambers: usize,
    pub agree: bool,
}

/// Compares `t_*` with `μ_q` on all chambers of the building: flags of
/// subspaces are enumerated as nested row-reduced matrices, `μ_q` takes the
/// flag matroid via column ranks, and `t_*` takes supports of Plücker vectors.
pub fn commuting_square(q: u32, n: usize) -> Result<SquareReport> {
    let band = Band::field(q)?;
    let k = Band::krasner();
    let gf = Gf::from_band(&band)?;
    let t = BandMorphism::to_krasner(&band)?;
    if !(2..=4).contains(&n) {
        return Err(Error::SizeLimit(format!("n = {n}")));
    }
    let delta = build_delta(&band, n)?;
    let full: Vec<usize> = (1..n).collect();
    // chambers as chains of subspaces V_1 ⊂ ... ⊂ V_{n-1}
    let mut chains: Vec<Vec<Vec<Vec<u8>>>> = gf.subspaces(1, n).into_iter().map(|v| vec![v]).collect();
    for r in 2..n {
        let mut next = Vec::new();
        for chain in &chains {
            let last = chain.last().unwrap();
            for v in gf.subspaces(r, n) {
                let mut stacked = v.clone();
                stacked.extend(last.iter().cloned());
                if gf.rank(&stacked) == r {
                    let mut c = chain.clone();
                    c.push(v);
                    next.push(c);
                }
            }
        }
        chains = next;
    }
    let mut agree = chains.len() == delta.of_type(&full).len();
    for chain in &chains {
        let plucker = FlagPoint::new(
            chain
                .iter()
                .map(|m| {
                    let c = canonicalize(&band, &field_minors(&gf, m));
                    PluckerFamily::new(&band, m.len(), n, c)
                })
                .collect::<Result<Vec<_>>>()?,
        )?;
        agree &= delta.contains(&plucker);
        let pushed = induced_map_unchecked(&t, &plucker);
        let matroid = FlagPoint::new(
            chain
                .iter()
                .map(|m| {
                    let r = m.len();
                    let coords = k_subsets(n, r)
                        .into_iter()
                        .map(|cols| {
                            let sub: Vec<Vec<u8>> = m
                                .iter()
                                .map(|row| subsets::elements(cols).map(|j| row[j]).collect())
                                .collect();
                            if gf.rank(&sub) == r {
                                Element::ONE
                            } else {
                                Element::ZERO
                            }
                        })
                        .collect();
                    PluckerFamily::new(&k, r, n, coords)
                })
                .collect::<Result<Vec<_>>>()?,
        )?;
        agree &= pushed == matroid;
    }
    Ok(SquareReport {
        q,
        n,
        chambers: chains.len(),
        agree,
    })
}

/// Orbits `a.x` of every simplex, computed stage-wise within its type.
pub fn complex_activity(
    band: &Band,
    n: usize,
    a: &BandMatrix,
) -> Result<Vec<(FlagPoint, Vec<FlagPoint>)>> {
    if n > 3 {
        return Err(Error::SizeLimit(format!("n = {n} > 3")));
    }
    if a.n() != n || !is_special_linear(band, a) {
        return Err(Error::InvalidArgument(format!("{a} is not in SL_{n}")));
    }
    let delta = build_delta(band, n)?;
    let act = SlActivity::new(band, n, MinorSign::Plain)?;
    Ok(delta
        .simplices
        .values()
        .flat_map(|simplices| {
            simplices.iter().map(|x| {
                let orbit = act
                    .orbit_in(a, x, simplices)
                    .into_iter()
                    .map(|i| simplices[i].clone())
                    .collect();
                (x.clone(), orbit)
            })
        })
        .collect())
}

/// Simplices shared by two complexes and those only in one of them.
pub fn difference(a: &SimplicialComplex, b: &SimplicialComplex) -> (Vec<FlagPoint>, Vec<FlagPoint>) {
    let sa: BTreeSet<&FlagPoint> = a.all().collect();
    let sb: BTreeSet<&FlagPoint> = b.all().collect();
    (
        sa.difference(&sb).map(|x| (*x).clone()).collect(),
        sb.difference(&sa).map(|x| (*x).clone()).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crowd::permutations;

    #[test]
    fn delta_counts() {
        let k = build_delta(&Band::krasner(), 3).unwrap();
        assert_eq!(k.f_vector(), vec![14, 22]);
        assert!(k.is_closed());
        let f2 = build_delta(&Band::field(2).unwrap(), 3).unwrap();
        assert_eq!(f2.f_vector(), vec![14, 21]);
        let p1 = build_delta(&Band::field(2).unwrap(), 2).unwrap();
        assert_eq!(p1.f_vector(), vec![3]);
    }

    #[test]
    fn gamma_counts() {
        let k = Band::krasner();
        assert_eq!(build_gamma(&k, 3).unwrap().f_vector(), vec![6, 6]);
        assert_eq!(build_gamma(&Band::field(2).unwrap(), 3).unwrap().f_vector(), vec![6, 6]);
        let g4 = build_gamma(&k, 4).unwrap();
        assert_eq!(g4.f_vector(), vec![14, 36, 24]);
        assert!(g4.is_closed());
    }

    #[test]
    fn gamma_is_the_coxeter_complex() {
        let k = Band::krasner();
        for n in 2..=4 {
            assert_eq!(build_gamma(&k, n).unwrap(), coxeter_complex(&k, n).unwrap());
        }
    }

    #[test]
    fn t_star_misses_one_edge() {
        let f2 = Band::field(2).unwrap();
        let map = induced_simplicial_map(&BandMorphism::to_krasner(&f2).unwrap(), 3).unwrap();
        let missed = map.missed();
        assert_eq!(missed.len(), 1);
        let all_ones = |r| PluckerFamily::new(&Band::krasner(), r, 3, vec![Element::ONE; 3]).unwrap();
        assert_eq!(missed[0], FlagPoint::new(vec![all_ones(1), all_ones(2)]).unwrap());
    }

    #[test]
    fn identity_map_is_identity() {
        let k = Band::krasner();
        let map = induced_simplicial_map(&BandMorphism::identity(&k).unwrap(), 3).unwrap();
        assert!(map.image.iter().all(|(x, y)| x == y));
    }

    #[test]
    fn image_is_a_subcomplex() {
        for q in [2, 3] {
            let fq = Band::field(q).unwrap();
            let map = induced_simplicial_map(&BandMorphism::to_krasner(&fq).unwrap(), 3).unwrap();
            assert!(map.image_complex().is_subcomplex_of(&map.target));
            assert!(map.image_complex().is_closed());
        }
    }

    #[test]
    fn square_commutes() {
        let rep = commuting_square(2, 3).unwrap();
        assert_eq!(rep.chambers, 21);
        assert!(rep.agree);
        assert!(commuting_square(3, 3).unwrap().agree);
    }

    #[test]
    fn activity_on_the_complex() {
        let k = Band::krasner();
        let ones = BandMatrix::ones(&k, 3);
        for (x, orbit) in complex_activity(&k, 3, &ones).unwrap() {
            let all_ones = x.stages().iter().all(|s| s.support().len() == 3);
            if x.ranks().len() == 1 && all_ones {
                assert_eq!(orbit.len(), 7);
            }
            assert!(!orbit.is_empty());
        }
        for (x, orbit) in complex_activity(&k, 3, &BandMatrix::identity(&k, 3)).unwrap() {
            assert_eq!(orbit, vec![x]);
        }
        let gamma = build_gamma(&k, 3).unwrap();
        for (sigma, _) in permutations(3) {
            let a = BandMatrix::permutation(&k, &sigma);
            for (x, orbit) in complex_activity(&k, 3, &a).unwrap() {
                if gamma.contains(&x) {
                    assert_eq!(orbit.len(), 1);
                    assert!(gamma.contains(&orbit[0]));
                }
            }
        }
    }

    #[test]
    fn dot_export() {
        let dot = build_gamma(&Band::krasner(), 3).unwrap().to_dot();
        assert_eq!(dot.matches(" -- ").count(), 6);
    }
}
