//! Crowd activities: subsets `T ⊆ G × X × X`, with `a.x = {y : (a, x, y) ∈ T}`.
//!
//! `SL_n(B)` acts on `Gr(r, n)` through the minors of `a`: `(a, x, y) ∈ T`
//! iff `Σ_J a_{I,J} x_J - y_I ∈ N_B` for every `r`-subset `I`, for some unit
//! scaling of the representatives. Flags impose this on every stage.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::band::{Band, Element, FormalSum, NullAcc};
use crate::crowd::{
    det_formal_rows, group_from_crowd, inverse_set, is_special_linear, permutations, BandMatrix,
    Crowd, GroupTable, SlCrowd,
};
use crate::error::{Error, Result};
use crate::points::{enumerate_points, is_valid_point, FlagPoint, Functor, PluckerFamily};
use crate::subsets::{self, k_subsets, Subset};

/// Sign attached to the `(I, J)`-minor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MinorSign {
    /// `det a_{I,J}`, the coefficient of the classical action on Plücker
    /// coordinates.
    #[default]
    Plain,
    /// `(-1)^(ε(I) + ε(J)) det a_{I,J}` with `ε(I) = Σ_t (i_t - t)`.
    Parity,
}

/// `ε(I) = Σ_t (i_t - t)` for `I = {i_1 < ... < i_r}`.
pub fn epsilon(s: Subset) -> usize {
    subsets::elements(s).enumerate().map(|(t, i)| i - t).sum()
}

pub fn minor(band: &Band, a: &BandMatrix, rows: Subset, cols: Subset, sign: MinorSign) -> FormalSum {
    let r: Vec<usize> = subsets::elements(rows).collect();
    let c: Vec<usize> = subsets::elements(cols).collect();
    let det = det_formal_rows(band, &a.submatrix(&r, &c));
    match sign {
        MinorSign::Parity if (epsilon(rows) + epsilon(cols)) % 2 == 1 => {
            det.scaled(band, band.minus_one())
        }
        _ => det,
    }
}

/// The activity of `SL_n(B)` on points of a fixed ground set.
#[derive(Clone, Debug)]
pub struct SlActivity {
    band: Band,
    n: usize,
    sign: MinorSign,
    units: Vec<Element>,
}

/// Null-set summaries of `Σ_J a_{I,J} x_J`, one list per stage, indexed by `I`.
type StageSums = Vec<Vec<NullAcc>>;

impl SlActivity {
    pub fn new(band: &Band, n: usize, sign: MinorSign) -> Result<Self> {
        let units = band.finite_units().ok_or(Error::InfiniteBand(band.kind()))?;
        Ok(SlActivity {
            band: band.clone(),
            n,
            sign,
            units,
        })
    }

    /// Minor summaries `[I][J]` for rank `r`.
    fn minors(&self, a: &BandMatrix, r: usize) -> Vec<Vec<NullAcc>> {
        let subs = k_subsets(self.n, r);
        subs.iter()
            .map(|i| {
                subs.iter()
                    .map(|j| {
                        let mut acc = self.band.acc();
                        for t in minor(&self.band, a, *i, *j, self.sign).terms() {
                            self.band.acc_add(&mut acc, *t);
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    fn stage_sums(&self, minors: &BTreeMap<usize, Vec<Vec<NullAcc>>>, x: &FlagPoint) -> StageSums {
        x.stages()
            .iter()
            .map(|s| {
                let m = &minors[&s.rank()];
                m.iter()
                    .map(|row| {
                        row.iter()
                            .zip(s.coords())
                            .fold(self.band.acc(), |acc, (mij, xj)| {
                                self.band.acc_merge(acc, self.band.acc_scale(*mij, *xj))
                            })
                    })
                    .collect()
            })
            .collect()
    }

    fn stage_ok(&self, sums: &[NullAcc], y: &PluckerFamily) -> bool {
        self.units.iter().any(|c| {
            sums.iter().zip(y.coords()).all(|(acc, yi)| {
                let mut acc = *acc;
                let t = self.band.negate(self.band.times(*c, *yi));
                self.band.acc_add(&mut acc, t);
                self.band.acc_is_null(&acc)
            })
        })
    }

    fn matches(&self, sums: &StageSums, y: &FlagPoint) -> bool {
        sums.len() == y.stages().len()
            && sums.iter().zip(y.stages()).all(|(s, st)| self.stage_ok(s, st))
    }

    fn minors_for(&self, a: &BandMatrix, ranks: &[usize]) -> BTreeMap<usize, Vec<Vec<NullAcc>>> {
        ranks.iter().map(|r| (*r, self.minors(a, *r))).collect()
    }

    pub fn member(&self, a: &BandMatrix, x: &FlagPoint, y: &FlagPoint) -> bool {
        if x.ranks() != y.ranks() {
            return false;
        }
        let minors = self.minors_for(a, &x.ranks());
        self.matches(&self.stage_sums(&minors, x), y)
    }

    /// `a.x` restricted to `candidates`, as indices into `candidates`.
    pub fn orbit_in(&self, a: &BandMatrix, x: &FlagPoint, candidates: &[FlagPoint]) -> Vec<usize> {
        let minors = self.minors_for(a, &x.ranks());
        let sums = self.stage_sums(&minors, x);
        candidates
            .iter()
            .enumerate()
            .filter(|(_, y)| y.ranks() == x.ranks() && self.matches(&sums, y))
            .map(|(i, _)| i)
            .collect()
    }
}

fn check_input(band: &Band, a: &BandMatrix, functor: &Functor, points: &[&FlagPoint]) -> Result<()> {
    functor.validate()?;
    if a.n() != functor.ground() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix acting on {functor}",
            a.n(),
            a.n()
        )));
    }
    if !is_special_linear(band, a) {
        return Err(Error::InvalidArgument(format!("{a} is not in SL_{}", a.n())));
    }
    for p in points {
        if !is_valid_point(band, functor, p) {
            return Err(Error::DimensionMismatch(format!("{p} is not a point of {functor}")));
        }
    }
    Ok(())
}

/// `(a, x, y) ∈ T` with the default minor sign.
pub fn activity_member(
    band: &Band,
    a: &BandMatrix,
    x: &FlagPoint,
    y: &FlagPoint,
    functor: &Functor,
) -> Result<bool> {
    check_input(band, a, functor, &[x, y])?;
    Ok(SlActivity::new(band, a.n(), MinorSign::Plain)?.member(a, x, y))
}

/// `a.x`, sorted.
pub fn orbit(band: &Band, a: &BandMatrix, x: &FlagPoint, functor: &Functor) -> Result<Vec<FlagPoint>> {
    orbit_with(band, a, x, functor, MinorSign::Plain)
}

pub fn orbit_with(
    band: &Band,
    a: &BandMatrix,
    x: &FlagPoint,
    functor: &Functor,
    sign: MinorSign,
) -> Result<Vec<FlagPoint>> {
    check_input(band, a, functor, &[x])?;
    let act = SlActivity::new(band, a.n(), sign)?;
    let points = enumerate_points(band, functor)?;
    Ok(act
        .orbit_in(a, x, &points)
        .into_iter()
        .map(|i| points[i].clone())
        .collect())
}

/// A finite crowd activity as a table of orbits `a.x`.
#[derive(Clone, Debug)]
pub struct Activity {
    labels: Vec<String>,
    /// `orbits[a][x]`, sorted
    orbits: Vec<Vec<Vec<usize>>>,
}

impl Activity {
    /// `SL_n(B)` (or a subcrowd) acting on the given points.
    pub fn from_sl(g: &SlCrowd, points: &[FlagPoint], sign: MinorSign) -> Result<Self> {
        let act = SlActivity::new(g.band(), g.n(), sign)?;
        if points.iter().any(|p| p.ground() != g.n()) {
            return Err(Error::DimensionMismatch("points on a different ground set".into()));
        }
        let orbits = (0..g.size())
            .into_par_iter()
            .map(|a| {
                let m = g.matrix(a);
                points.iter().map(|x| act.orbit_in(&m, x, points)).collect()
            })
            .collect();
        Ok(Activity {
            labels: points.iter().map(|p| p.to_string()).collect(),
            orbits,
        })
    }

    /// Left multiplication: `a.b = {c : (a, b, d) ∈ R for some d ∈ c^-1}`.
    pub fn left_multiplication(g: &dyn Crowd) -> Self {
        let n = g.size();
        let inverses: Vec<Vec<usize>> = (0..n).map(|c| inverse_set(g, c)).collect();
        let orbits = (0..n)
            .into_par_iter()
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let ds = g.solve_last(a, b);
                        (0..n)
                            .filter(|c| inverses[*c].iter().any(|d| ds.binary_search(d).is_ok()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Activity {
            labels: (0..n).map(|i| g.label(i)).collect(),
            orbits,
        }
    }

    pub fn points(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn orbit(&self, a: usize, x: usize) -> &[usize] {
        &self.orbits[a][x]
    }

    /// `a.S`, sorted.
    pub fn act_set(&self, a: usize, s: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = s.iter().flat_map(|x| self.orbits[a][*x].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActivityReport {
    #[serde(rename = "A1")]
    pub a1: bool,
    #[serde(rename = "A2")]
    pub a2: bool,
    #[serde(rename = "A3")]
    pub a3: bool,
    pub counterexample: BTreeMap<String, Vec<String>>,
}

pub fn check_activity_properties(g: &dyn Crowd, act: &Activity) -> ActivityReport {
    let e = g.identity();
    let xs = act.points();
    let mut counterexample = BTreeMap::new();
    let pt = |x: usize| act.label(x).to_string();

    let w1 = (0..xs).find(|&x| act.orbit(e, x) != [x]);
    if let Some(x) = w1 {
        counterexample.insert("A1".to_string(), vec![g.label(e), pt(x)]);
    }

    let w2 = (0..g.size()).into_par_iter().find_map_first(|a| {
        for b in inverse_set(g, a) {
            for x in 0..xs {
                for y in 0..xs {
                    let fwd = act.orbit(a, x).binary_search(&y).is_ok();
                    let back = act.orbit(b, y).binary_search(&x).is_ok();
                    if fwd != back {
                        return Some(vec![g.label(a), g.label(b), pt(x), pt(y)]);
                    }
                }
            }
        }
        None
    });
    if let Some(w) = &w2 {
        counterexample.insert("A2".to_string(), w.clone());
    }

    let w3 = (0..g.size()).into_par_iter().find_map_first(|a| {
        for b in 0..g.size() {
            for c in g.solve_last(a, b) {
                for x in 0..xs {
                    let img = act.act_set(a, &act.act_set(b, act.orbit(c, x)));
                    if let Some(y) = act.orbit(e, x).iter().find(|y| img.binary_search(y).is_err()) {
                        return Some(vec![g.label(a), g.label(b), g.label(c), pt(x), pt(*y)]);
                    }
                }
            }
        }
        None
    });
    if let Some(w) = &w3 {
        counterexample.insert("A3".to_string(), w.clone());
    }

    ActivityReport {
        a1: w1.is_none(),
        a2: w2.is_none(),
        a3: w3.is_none(),
        counterexample,
    }
}

/// A1–A3 for `SL_n(B)` acting on the points of `functor`.
pub fn check_sl_activity(band: &Band, functor: &Functor, sign: MinorSign) -> Result<ActivityReport> {
    functor.validate()?;
    let n = functor.ground();
    if n > 3 {
        return Err(Error::SizeLimit(format!("activity checks need n <= 3, got {n}")));
    }
    let g = SlCrowd::build(band, n)?;
    let points = enumerate_points(band, functor)?;
    let act = Activity::from_sl(&g, &points, sign)?;
    Ok(check_activity_properties(&g, &act))
}

/// Image of `x` under a monomial matrix: each row of minors has one nonzero
/// term.
fn monomial_image(band: &Band, a: &BandMatrix, x: &FlagPoint, sign: MinorSign) -> Result<FlagPoint> {
    let n = a.n();
    let stages = x
        .stages()
        .iter()
        .map(|s| {
            let subs = k_subsets(n, s.rank());
            let coords = subs
                .iter()
                .map(|i| {
                    let terms: Vec<Element> = subs
                        .iter()
                        .zip(s.coords())
                        .flat_map(|(j, xj)| {
                            minor(band, a, *i, *j, sign)
                                .terms()
                                .iter()
                                .map(|m| band.times(*m, *xj))
                                .collect::<Vec<_>>()
                        })
                        .filter(|t| !t.is_zero())
                        .collect();
                    terms.first().copied().unwrap_or(band.zero())
                })
                .collect();
            PluckerFamily::new(band, s.rank(), n, coords)
        })
        .collect::<Result<Vec<_>>>()?;
    FlagPoint::new(stages)
}

/// Whether every permutation matrix `a_σ` in `SL_n(B)`, with
/// `a_{σ,i,j} = δ_{i,σ(j)}`, sends every point to exactly its permuted point.
pub fn permutation_orbits_singleton(band: &Band, functor: &Functor) -> Result<bool> {
    functor.validate()?;
    let n = functor.ground();
    if n > 3 {
        return Err(Error::SizeLimit(format!("n = {n} > 3")));
    }
    let act = SlActivity::new(band, n, MinorSign::Plain)?;
    let points = enumerate_points(band, functor)?;
    for (sigma, _) in permutations(n) {
        let a = BandMatrix::permutation(band, &sigma);
        if !is_special_linear(band, &a) {
            continue;
        }
        for x in &points {
            let image = monomial_image(band, &a, x, MinorSign::Plain)?;
            let orbit = act.orbit_in(&a, x, &points);
            if orbit.len() != 1 || points[orbit[0]] != image {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A group action recovered from a crowd activity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupAction {
    pub group: GroupTable,
    /// `theta[a][x]`
    pub theta: Vec<Vec<usize>>,
}

/// Checks that `G` is a group, that A1 and A3 hold and that all orbits are
/// singletons, then verifies `θ(ab, x) = θ(a, θ(b, x))`.
pub fn recognize_group_action(g: &dyn Crowd, act: &Activity) -> Result<GroupAction> {
    let fail = |reason: &str, witness: Vec<String>| Error::NotAGroupAction {
        reason: reason.to_string(),
        witness,
    };
    let group = group_from_crowd(g).map_err(|e| fail(&format!("crowd is not a group: {e}"), vec![]))?;
    for a in 0..g.size() {
        for x in 0..act.points() {
            if act.orbit(a, x).len() != 1 {
                return Err(fail(
                    "orbit is not a singleton",
                    vec![g.label(a), act.label(x).to_string()],
                ));
            }
        }
    }
    let report = check_activity_properties(g, act);
    for (name, ok) in [("A1", report.a1), ("A3", report.a3)] {
        if !ok {
            return Err(fail(
                &format!("{name} fails"),
                report.counterexample[name].clone(),
            ));
        }
    }
    let theta: Vec<Vec<usize>> = (0..g.size())
        .map(|a| (0..act.points()).map(|x| act.orbit(a, x)[0]).collect())
        .collect();
    for a in 0..g.size() {
        for b in 0..g.size() {
            for x in 0..act.points() {
                if theta[group.mul(a, b)][x] != theta[a][theta[b][x]] {
                    return Err(fail(
                        "theta(ab, x) != theta(a, theta(b, x))",
                        vec![g.label(a), g.label(b), act.label(x).to_string()],
                    ));
                }
            }
        }
    }
    Ok(GroupAction { group, theta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crowd::FreeCrowd;
    use crate::linalg::Gf;
    use crate::points::{canonicalize, field_minors, project_flag};

    fn proj(band: &Band, coords: &[i8]) -> FlagPoint {
        let c = coords.iter().map(|v| Element::Int(*v)).collect();
        FlagPoint::single(PluckerFamily::new(band, 1, coords.len(), c).unwrap())
    }

    fn mat(band: &Band, text: &str) -> BandMatrix {
        BandMatrix::parse(band, text, None).unwrap()
    }

    #[test]
    fn epsilon_of_initial_segment_is_zero() {
        for r in 1..=4 {
            assert_eq!(epsilon(subsets::from_elements(&(0..r).collect::<Vec<_>>())), 0);
        }
        assert_eq!(epsilon(subsets::from_elements(&[1, 2])), 2);
    }

    #[test]
    fn case_study_orbits() {
        let k = Band::krasner();
        let f = Functor::Proj { n: 2 };
        let a = mat(&k, "110;010;001");
        let o = orbit(&k, &a, &proj(&k, &[1, 0, 1]), &f).unwrap();
        assert_eq!(o, vec![proj(&k, &[1, 0, 1])]);
        let o = orbit(&k, &a, &proj(&k, &[1, 1, 1]), &f).unwrap();
        assert_eq!(o, vec![proj(&k, &[0, 1, 1]), proj(&k, &[1, 1, 1])]);
        assert!(!activity_member(&k, &a, &proj(&k, &[1, 1, 1]), &proj(&k, &[1, 0, 0]), &f).unwrap());

        let ones = BandMatrix::ones(&k, 3);
        assert_eq!(orbit(&k, &ones, &proj(&k, &[1, 1, 1]), &f).unwrap().len(), 7);
        let g = Functor::Gr { r: 2, n: 3 };
        let x = FlagPoint::single(PluckerFamily::new(&k, 2, 3, vec![Element::ONE; 3]).unwrap());
        assert_eq!(orbit(&k, &ones, &x, &g).unwrap().len(), 7);
    }

    #[test]
    fn identity_fixes_points() {
        let k = Band::krasner();
        let f = Functor::Fl { ranks: vec![1, 2], n: 3 };
        for x in enumerate_points(&k, &f).unwrap() {
            assert_eq!(orbit(&k, &BandMatrix::identity(&k, 3), &x, &f).unwrap(), vec![x]);
        }
    }

    #[test]
    fn activity_properties() {
        let rep = check_sl_activity(&Band::krasner(), &Functor::Proj { n: 2 }, MinorSign::Plain).unwrap();
        assert!(rep.a1);
        let rep = check_sl_activity(&Band::fpm(), &Functor::Proj { n: 1 }, MinorSign::Plain).unwrap();
        assert!(rep.a1);
        let rep = check_sl_activity(&Band::field(3).unwrap(), &Functor::Gr { r: 1, n: 2 }, MinorSign::Plain)
            .unwrap();
        assert!(rep.a1 && rep.a2 && rep.a3);
    }

    #[test]
    fn permutations_act_by_permuting() {
        let k = Band::krasner();
        assert!(permutation_orbits_singleton(&k, &Functor::Proj { n: 2 }).unwrap());
        assert!(permutation_orbits_singleton(&k, &Functor::Gr { r: 2, n: 3 }).unwrap());
        assert!(permutation_orbits_singleton(&Band::field(2).unwrap(), &Functor::Proj { n: 1 }).unwrap());
    }

    /// Over a field the activity is the classical action `x -> a x` on row spaces.
    fn field_compatibility(q: u32, n: usize, sign: MinorSign, stride: usize) -> bool {
        let band = Band::field(q).unwrap();
        let gf = Gf::new(q).unwrap();
        let g = SlCrowd::build(&band, n).unwrap();
        let act = SlActivity::new(&band, n, sign).unwrap();
        (1..n).all(|r| {
            let points = enumerate_points(&band, &Functor::Gr { r, n }).unwrap();
            let spaces = gf.subspaces(r, n);
            (0..g.size()).step_by(stride).all(|ai| {
                let a = g.matrix(ai);
                let codes: Vec<Vec<u8>> = a
                    .rows()
                    .iter()
                    .map(|row| row.iter().map(|x| match x { Element::Int(v) => *v as u8, _ => 0 }).collect())
                    .collect();
                let at: Vec<Vec<u8>> = (0..n).map(|j| (0..n).map(|i| codes[i][j]).collect()).collect();
                spaces.iter().all(|m| {
                    let x = canonicalize(&band, &field_minors(&gf, m));
                    let y = canonicalize(&band, &field_minors(&gf, &gf.mat_mul(m, &at)));
                    let xi = points.iter().position(|p| p.stages()[0].coords() == x.as_slice()).unwrap();
                    let orbit = act.orbit_in(&a, &points[xi], &points);
                    orbit.len() == 1 && points[orbit[0]].stages()[0].coords() == y.as_slice()
                })
            })
        })
    }

    #[test]
    fn field_compatibility_plain() {
        assert!(field_compatibility(2, 3, MinorSign::Plain, 1));
        assert!(field_compatibility(3, 2, MinorSign::Plain, 1));
        assert!(field_compatibility(3, 3, MinorSign::Plain, 13));
    }

    #[test]
    fn parity_sign_breaks_field_compatibility_over_f3() {
        assert!(field_compatibility(2, 3, MinorSign::Parity, 1));
        assert!(!field_compatibility(3, 3, MinorSign::Parity, 13));
    }

    #[test]
    fn cauchy_binet() {
        for q in [2, 3] {
            let band = Band::field(q).unwrap();
            let g = SlCrowd::build(&band, 3).unwrap();
            let gf = Gf::new(q).unwrap();
            let val = |s: &FormalSum| -> u8 {
                s.terms().iter().fold(0, |acc, x| match x {
                    Element::Int(v) => gf.add(acc, *v as u8),
                    _ => acc,
                })
            };
            for ai in (0..g.size()).step_by(11) {
                for bi in (0..g.size()).step_by(17) {
                    let (a, b) = (g.matrix(ai), g.matrix(bi));
                    let ab: Vec<Element> = (0..3)
                        .flat_map(|i| {
                            let (a, b, gf) = (&a, &b, &gf);
                            (0..3).map(move |j| {
                                let v = (0..3).fold(0, |acc, k| {
                                    let x = |e: Element| match e { Element::Int(v) => v as u8, _ => 0 };
                                    gf.add(acc, gf.mul(x(a.get(i, k)), x(b.get(k, j))))
                                });
                                Element::Int(v as i8)
                            })
                        })
                        .collect();
                    let ab = BandMatrix::new(&band, 3, ab).unwrap();
                    for r in 1..=2 {
                        let subs = k_subsets(3, r);
                        for i in &subs {
                            for j in &subs {
                                let lhs = val(&minor(&band, &ab, *i, *j, MinorSign::Plain));
                                let rhs = subs.iter().fold(0, |acc, k| {
                                    gf.add(
                                        acc,
                                        gf.mul(
                                            val(&minor(&band, &a, *i, *k, MinorSign::Plain)),
                                            val(&minor(&band, &b, *k, *j, MinorSign::Plain)),
                                        ),
                                    )
                                });
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn projection_equivariance_over_k() {
        let k = Band::krasner();
        let f = Functor::Fl { ranks: vec![1, 2], n: 3 };
        let flags = enumerate_points(&k, &f).unwrap();
        let g = SlCrowd::build(&k, 3).unwrap();
        let act = SlActivity::new(&k, 3, MinorSign::Plain).unwrap();
        for ai in 0..g.size() {
            let a = g.matrix(ai);
            for x in &flags {
                for yi in act.orbit_in(&a, x, &flags) {
                    for sub in [[1usize], [2]] {
                        let px = project_flag(x, &sub).unwrap();
                        let py = project_flag(&flags[yi], &sub).unwrap();
                        assert!(act.member(&a, &px, &py));
                    }
                }
            }
        }
    }

    #[test]
    fn orbits_nonempty_on_delta3_vertices() {
        let k = Band::krasner();
        let g = SlCrowd::build(&k, 3).unwrap();
        let mut points = enumerate_points(&k, &Functor::Gr { r: 1, n: 3 }).unwrap();
        points.extend(enumerate_points(&k, &Functor::Gr { r: 2, n: 3 }).unwrap());
        let act = Activity::from_sl(&g, &points, MinorSign::Plain).unwrap();
        for a in 0..g.size() {
            for x in 0..points.len() {
                assert!(!act.orbit(a, x).is_empty());
            }
        }
    }

    #[test]
    fn left_multiplication() {
        let f2 = SlCrowd::build(&Band::field(2).unwrap(), 2).unwrap();
        let table = group_from_crowd(&f2).unwrap();
        let act = Activity::left_multiplication(&f2);
        for a in 0..f2.size() {
            for b in 0..f2.size() {
                assert_eq!(act.orbit(a, b), [table.mul(a, b)]);
            }
        }
        let free = FreeCrowd { size: 2 };
        let act = Activity::left_multiplication(&free);
        assert!(act.orbit(0, 1).is_empty());
        assert!(!check_activity_properties(&free, &act).a1);
    }

    #[test]
    fn group_actions() {
        let f2 = Band::field(2).unwrap();
        let g = SlCrowd::build(&f2, 2).unwrap();
        let points = enumerate_points(&f2, &Functor::Proj { n: 1 }).unwrap();
        let act = Activity::from_sl(&g, &points, MinorSign::Plain).unwrap();
        assert_eq!(recognize_group_action(&g, &act).unwrap().theta.len(), 6);

        let k = Band::krasner();
        let mono = SlCrowd::monomial(&k, 3).unwrap();
        let mut vertices = enumerate_points(&k, &Functor::Gr { r: 1, n: 3 }).unwrap();
        vertices.extend(enumerate_points(&k, &Functor::Gr { r: 2, n: 3 }).unwrap());
        let act = Activity::from_sl(&mono, &vertices, MinorSign::Plain).unwrap();
        assert_eq!(recognize_group_action(&mono, &act).unwrap().group.order, 6);

        let g = SlCrowd::build(&k, 2).unwrap();
        let points = enumerate_points(&k, &Functor::Proj { n: 1 }).unwrap();
        let act = Activity::from_sl(&g, &points, MinorSign::Plain).unwrap();
        assert!(matches!(
            recognize_group_action(&g, &act),
            Err(Error::NotAGroupAction { .. })
        ));
    }
}
