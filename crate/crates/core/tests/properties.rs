use std::collections::BTreeSet;
use std::sync::OnceLock;

use funcrowd::activity::{MinorSign, SlActivity};
use funcrowd::crowd::{
    group_from_crowd, inverse_set, permutations, product_set, sl2_tropical_member, BandMatrix, Crowd, GroupTable,
    SlCrowd,
};
use funcrowd::f1class::{match_case, match_plane_class, search_class_maps, validate_structure, F1Structure};
use funcrowd::linalg::Gf;
use funcrowd::points::{canonicalize, enumerate_gr, satisfies_plucker};
use funcrowd::polygon::{isomorphic, pg_model, verify_polygon, IncidenceGeometry, ProjectiveSpaceModel};
use funcrowd::{Band, Element, FlagPoint, FormalSum, PluckerFamily};
use proptest::prelude::*;
use proptest::sample::Index;

fn finite_bands() -> &'static [Band] {
    static BANDS: OnceLock<Vec<Band>> = OnceLock::new();
    BANDS.get_or_init(|| {
        let mut v = vec![Band::krasner(), Band::fpm()];
        v.extend([2, 3, 4, 5, 7, 8, 9].map(|q| Band::field(q).unwrap()));
        v
    })
}

fn rational() -> impl Strategy<Value = Element> {
    (0u64..7, 1u64..5).prop_map(|(n, d)| Element::rational(n, d))
}

fn code(x: Element) -> u8 {
    match x {
        Element::Int(v) => v as u8,
        Element::Rat(_) => unreachable!(),
    }
}

fn codes(a: &BandMatrix) -> Vec<Vec<u8>> {
    a.rows().iter().map(|r| r.iter().map(|x| code(*x)).collect()).collect()
}

fn crowd(key: &str) -> &'static (SlCrowd, Option<GroupTable>) {
    static SL3F2: OnceLock<(SlCrowd, Option<GroupTable>)> = OnceLock::new();
    static SL3F3: OnceLock<(SlCrowd, Option<GroupTable>)> = OnceLock::new();
    static SL3FPM: OnceLock<(SlCrowd, Option<GroupTable>)> = OnceLock::new();
    let (cell, band) = match key {
        "F2" => (&SL3F2, Band::field(2).unwrap()),
        "F3" => (&SL3F3, Band::field(3).unwrap()),
        _ => (&SL3FPM, Band::fpm()),
    };
    cell.get_or_init(|| {
        let g = SlCrowd::build(&band, 3).unwrap();
        let t = (key == "F2").then(|| group_from_crowd(&g).unwrap());
        (g, t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn null_sets_are_ideals(
        s in prop::collection::vec(any::<Index>(), 0..6),
        balance in any::<bool>(),
        t in prop::collection::vec(any::<Index>(), 1..3),
        x in any::<Index>(),
    ) {
        for band in finite_bands() {
            let els = band.elements().unwrap();
            let pick = |i: &Index| *i.get(&els);
            let mut s: FormalSum = s.iter().map(pick).collect();
            if balance {
                s = s.union(&s.terms().iter().map(|y| band.negate(*y)).collect());
            }
            let t: FormalSum = t.iter().map(pick).flat_map(|y| [y, band.negate(y)]).collect();
            prop_assert!(band.is_null(&t).unwrap());
            if band.is_null(&s).unwrap() {
                prop_assert!(band.is_null(&s.union(&t)).unwrap());
                prop_assert!(band.is_null(&s.scaled(band, pick(&x))).unwrap());
            }
        }
    }

    #[test]
    fn tropical_null_sets_are_ideals(
        s in prop::collection::vec(rational(), 0..5),
        y in rational(),
        x in rational(),
    ) {
        let t = Band::tropical();
        let s: FormalSum = s.into_iter().chain(s_dup(&y)).collect();
        let pair: FormalSum = [y, t.negate(y)].into_iter().collect();
        prop_assert!(t.is_null(&pair).unwrap());
        if t.is_null(&s).unwrap() {
            prop_assert!(t.is_null(&s.union(&pair)).unwrap());
            prop_assert!(t.is_null(&s.scaled(&t, x)).unwrap());
        }
        prop_assert_eq!(t.negate(t.negate(x)), x);
    }

    #[test]
    fn tropical_sl2_closed_form(e in prop::collection::vec(rational(), 4)) {
        let a = BandMatrix::new(&Band::tropical(), 2, e).unwrap();
        let (member, branch) = sl2_tropical_member(&a).unwrap();
        prop_assert_eq!(member, branch.is_some());
    }
}

fn s_dup(y: &Element) -> Vec<Element> {
    if y.is_zero() {
        Vec::new()
    } else {
        vec![*y, *y]
    }
}

fn field_point() -> impl Strategy<Value = (u32, Vec<u8>)> {
    prop::sample::select(vec![3u32, 4, 5, 7]).prop_flat_map(|q| (Just(q), prop::collection::vec(0..q as u8, 6)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_form_is_idempotent_and_scaling_invariant((q, v) in field_point(), u in any::<Index>()) {
        prop_assume!(v.iter().any(|x| *x != 0));
        let band = Band::field(q).unwrap();
        let coords: Vec<Element> = v.iter().map(|x| Element::Int(*x as i8)).collect();
        let p = PluckerFamily::new(&band, 2, 4, coords.clone()).unwrap();
        prop_assert_eq!(canonicalize(&band, p.coords()), p.coords().to_vec());
        let unit = *u.get(&band.finite_units().unwrap());
        let scaled: Vec<Element> = coords.iter().map(|x| band.times(unit, *x)).collect();
        let p2 = PluckerFamily::new(&band, 2, 4, scaled).unwrap();
        prop_assert_eq!(satisfies_plucker(&band, &p2), satisfies_plucker(&band, &p));
        prop_assert_eq!(p2, p);
    }

    #[test]
    fn sl3_law_is_matrix_multiplication(key in prop::sample::select(vec!["F2", "F3"]), a in any::<Index>(), b in any::<Index>(), c in any::<Index>()) {
        let (g, table) = crowd(key);
        let gf = Gf::new(if key == "F2" { 2 } else { 3 }).unwrap();
        let (a, b, c) = (a.index(g.size()), b.index(g.size()), c.index(g.size()));
        let ab = gf.mat_mul(&codes(&g.matrix(a)), &codes(&g.matrix(b)));
        if let Some(table) = table {
            prop_assert_eq!(codes(&g.matrix(table.mul(a, b))), ab.clone());
        }
        let abc = gf.mat_mul(&ab, &codes(&g.matrix(c)));
        let identity = (0..3).map(|i| (0..3).map(|j| (i == j) as u8).collect::<Vec<u8>>()).collect::<Vec<_>>();
        prop_assert_eq!(g.law(a, b, c), abc == identity);
    }

    #[test]
    fn inverse_lemma(key in prop::sample::select(vec!["F3", "Fpm"]), a in any::<Index>(), b in any::<Index>()) {
        let (g, _) = crowd(key);
        let (a, b) = (a.index(g.size()), b.index(g.size()));
        let one = g.identity();
        prop_assert_eq!(product_set(g, a, b).contains(&one), inverse_set(g, a).contains(&b));
        prop_assert_eq!(inverse_set(g, a).contains(&one), a == one);
    }

    #[test]
    fn activity_over_f3_is_the_linear_action(a in any::<Index>(), x in any::<Index>()) {
        let band = Band::field(3).unwrap();
        let gf = Gf::new(3).unwrap();
        let (g, _) = crowd("F3");
        let points: Vec<FlagPoint> = enumerate_gr(&band, 1, 3).unwrap().into_iter().map(FlagPoint::single).collect();
        let act = SlActivity::new(&band, 3, MinorSign::Plain).unwrap();
        let a = g.matrix(a.index(g.size()));
        let x = x.get(&points);
        let v: Vec<Vec<u8>> = x.stages()[0].coords().iter().map(|c| vec![code(*c)]).collect();
        let image: Vec<Element> = gf.mat_mul(&codes(&a), &v).iter().map(|r| Element::Int(r[0] as i8)).collect();
        let want = FlagPoint::single(PluckerFamily::new(&band, 1, 3, image).unwrap());
        let orbit: Vec<&FlagPoint> = act.orbit_in(&a, x, &points).into_iter().map(|i| &points[i]).collect();
        prop_assert_eq!(orbit, vec![&want]);
    }
}

fn relabel(g: &IncidenceGeometry, pp: &[usize], lp: &[usize]) -> IncidenceGeometry {
    let flags = g.flags().iter().map(|&(p, l)| (pp[p], lp[l])).collect();
    IncidenceGeometry::new(g.points(), g.lines(), flags).unwrap()
}

fn plane_q3() -> &'static ProjectiveSpaceModel {
    static P: OnceLock<ProjectiveSpaceModel> = OnceLock::new();
    P.get_or_init(|| pg_model(3, 2).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_are_relabeling_invariant(
        pp in Just((0..13).collect::<Vec<usize>>()).prop_shuffle(),
        lp in Just((0..13).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let g = plane_q3().to_geometry();
        let h = relabel(&g, &pp, &lp);
        prop_assert!(isomorphic(&g, &h));
        prop_assert!(isomorphic(&g, &h.dual()));
        prop_assert_eq!(verify_polygon(&h).unwrap(), verify_polygon(&g).unwrap());
    }

    #[test]
    fn plane_classes_survive_relabeling(
        i in any::<Index>(),
        perm in Just(vec![0u8, 1, 2]).prop_shuffle(),
    ) {
        let plane = plane_q3();
        let maps = search_class_maps(plane);
        let s = F1Structure::new(plane, i.get(&maps).clone()).unwrap();
        let r = s.relabeled(&perm);
        prop_assert!(validate_structure(&r).is_ok());
        let (m, n) = (match_plane_class(plane, s.classes()), match_plane_class(plane, r.classes()));
        prop_assert_eq!(m.line_based.is_some(), n.line_based.is_some());
        prop_assert_eq!(m.point_based.is_some(), n.point_based.is_some());
    }
}

#[test]
fn p3_relabeling_preserves_validity_and_case() {
    let space = pg_model(2, 3).unwrap();
    let perms: Vec<Vec<u8>> = permutations(4)
        .into_iter()
        .map(|(p, _)| p.into_iter().map(|x| x as u8).collect())
        .collect();
    let mut seen = BTreeSet::new();
    for classes in search_class_maps(&space) {
        let s = F1Structure::new(&space, classes).unwrap();
        let kinds = match_case(&s).unwrap().kinds();
        for perm in &perms {
            let r = s.relabeled(perm);
            assert!(validate_structure(&r).is_ok());
            assert_eq!(match_case(&r).unwrap().kinds(), kinds);
            seen.insert(r.classes().to_vec());
        }
    }
    assert!(seen.len() >= 315);
}
