use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use funcrowd::activity::orbit;
use funcrowd::band::check_morphism;
use funcrowd::complex::{
    build_delta, build_gamma, commuting_square, complex_activity, coxeter_complex, induced_simplicial_map,
};
use funcrowd::crowd::{
    check_crowd_axioms, group_from_crowd, inverse_set, is_special_linear, product_set, sl2_tropical_member,
    AxiomOptions,
};
use funcrowd::f1class::{
    class_string, enumerate_p3_epis, enumerate_plane_epis, match_case, match_plane_class, validate_structure,
};
use funcrowd::matroid::{all_matroids, flag_quotient_check, grK_bijection_check, is_matroid};
use funcrowd::points::{enumerate_points, field_grassmannian_oracle};
use funcrowd::polygon::{
    complete_graph_geometry, conic_oval, double, double_warning, isomorphic, ordinary_ngon, pg_model, q4q_quadric,
    t2_of_oval, verify_polygon,
};
use funcrowd::subsets;
use funcrowd::suite::{corrupted_band, run_suite, SuiteOptions};
use funcrowd::{
    Band, BandKind, BandMatrix, BandMorphism, Crowd, Element, F1Structure, FlagPoint, FormalSum, Functor,
    IncidenceGeometry, PluckerFamily, SlCrowd,
};

/// What a subcommand produced: report fields, named assertions and an
/// optional plain-text view.
#[derive(Default)]
pub struct Outcome {
    pub body: Map<String, Value>,
    pub assertions: Vec<(String, bool)>,
    pub text: Option<String>,
}

impl Outcome {
    fn new(body: Value) -> Self {
        match body {
            Value::Object(body) => Outcome { body, ..Default::default() },
            other => panic!("report body must be an object, got {other}"),
        }
    }

    fn assert(mut self, name: &str, ok: bool) -> Self {
        self.assertions.push((name.to_string(), ok));
        self
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|(_, ok)| *ok)
    }
}

type Res = Result<Outcome, String>;

trait Flag<T> {
    fn flag(self, name: &str) -> Result<T, String>;
}

impl<T> Flag<T> for funcrowd::Result<T> {
    fn flag(self, name: &str) -> Result<T, String> {
        self.map_err(|e| format!("{name}: {e}"))
    }
}

fn fail(e: funcrowd::Error) -> String {
    e.to_string()
}

const BAND_HELP: &str = "fpm, krasner (k), tropical (t), ot, or a finite field f2, f3, f4, f5, f7, f8, f9";

fn parse_band(s: &str) -> Result<Band, String> {
    let kind: BandKind = s.parse().map_err(fail)?;
    Band::new(kind).map_err(fail)
}

fn parse_matrix(band: &Band, text: &str, n: usize, name: &str) -> Result<BandMatrix, String> {
    let a = BandMatrix::parse(band, text, Some(n)).flag(name)?;
    if a.n() != n {
        return Err(format!("{name}: expected a {n}x{n} matrix"));
    }
    Ok(a)
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

/// A one-stage flag prints as its Plücker vector.
fn point_string(p: &FlagPoint) -> String {
    match p.stages() {
        [x] => x.to_string(),
        _ => p.to_string(),
    }
}

fn point_strings<'a>(ps: impl IntoIterator<Item = &'a FlagPoint>) -> Vec<String> {
    ps.into_iter().map(point_string).collect()
}

fn parse_elements(band: &Band, text: &str) -> Result<Vec<Element>, String> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    let items: Vec<String> = if t.contains(',') {
        t.split(',').map(|s| s.trim().to_string()).collect()
    } else {
        t.chars().map(|c| if c == '-' { "-1".to_string() } else { c.to_string() }).collect()
    };
    items.iter().map(|s| band.parse_element(s).map_err(fail)).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctorKind {
    Proj,
    Gr,
    Fl,
}

#[derive(Args)]
pub struct FunctorArgs {
    #[arg(long, value_enum, default_value_t = FunctorKind::Proj)]
    functor: FunctorKind,
    /// Size of the ground set; `proj` means projective space of dimension n - 1.
    #[arg(long)]
    n: usize,
    /// Rank for `gr`.
    #[arg(long)]
    r: Option<usize>,
    /// Comma-separated ranks for `fl`.
    #[arg(long, value_delimiter = ',')]
    ranks: Vec<usize>,
}

impl FunctorArgs {
    fn functor(&self) -> Result<Functor, String> {
        let f = match self.functor {
            FunctorKind::Proj if self.n >= 1 => Functor::Proj { n: self.n - 1 },
            FunctorKind::Proj => return Err("--n: must be positive".into()),
            FunctorKind::Gr => Functor::Gr { r: self.r.ok_or("--r is required for --functor gr")?, n: self.n },
            FunctorKind::Fl => {
                if self.ranks.is_empty() {
                    return Err("--ranks is required for --functor fl".into());
                }
                Functor::Fl { ranks: self.ranks.clone(), n: self.n }
            }
        };
        f.validate().flag("--functor")?;
        Ok(f)
    }
}

fn parse_point(band: &Band, functor: &Functor, text: &str) -> Result<FlagPoint, String> {
    let ranks = functor.ranks();
    let parts: Vec<&str> = text.split('|').collect();
    if parts.len() != ranks.len() {
        return Err(format!("--x: expected {} stages separated by `|`", ranks.len()));
    }
    let stages = parts
        .iter()
        .zip(&ranks)
        .map(|(p, r)| PluckerFamily::new(band, *r, functor.ground(), parse_elements(band, p)?).flag("--x"))
        .collect::<Result<Vec<_>, _>>()?;
    FlagPoint::new(stages).flag("--x")
}

#[derive(Subcommand)]
pub enum BandCmd {
    /// Elements, units and the multiplication table of a finite band.
    Info {
        #[arg(long, value_parser = parse_band, help = BAND_HELP)]
        band: Band,
    },
    /// The product x·y.
    Mul {
        #[arg(long, value_parser = parse_band, help = BAND_HELP)]
        band: Band,
        x: String,
        y: String,
    },
    /// The additive inverse -x.
    Neg {
        #[arg(long, value_parser = parse_band, help = BAND_HELP)]
        band: Band,
        x: String,
    },
    /// Whether a formal sum lies in the null set.
    Null {
        #[arg(long, value_parser = parse_band, help = BAND_HELP)]
        band: Band,
        terms: Vec<String>,
    },
    /// Whether the map to K sending every nonzero element to 1 is a morphism.
    ToKrasner {
        #[arg(long, value_parser = parse_band, help = BAND_HELP)]
        band: Band,
    },
}

pub fn band(cmd: BandCmd) -> Res {
    match cmd {
        BandCmd::Info { band } => {
            let mut body = json!({
                "band": band.spec(),
                "name": band.to_string(),
                "finite": band.is_finite(),
                "field": band.is_field(),
                "order": band.order(),
            });
            if let Some(els) = band.elements() {
                let table: Vec<Vec<String>> =
                    els.iter().map(|x| strings(els.iter().map(|y| band.times(*x, *y)))).collect();
                body["elements"] = json!(strings(&els));
                body["units"] = json!(strings(band.finite_units().unwrap_or_default()));
                body["negation"] = json!(strings(els.iter().map(|x| band.negate(*x))));
                body["multiplication"] = json!(table);
            }
            Ok(Outcome::new(body))
        }
        BandCmd::Mul { band, x, y } => {
            let x = band.parse_element(&x).flag("x")?;
            let y = band.parse_element(&y).flag("y")?;
            Ok(Outcome::new(json!({ "band": band.spec(), "product": band.times(x, y).to_string() })))
        }
        BandCmd::Neg { band, x } => {
            let x = band.parse_element(&x).flag("x")?;
            Ok(Outcome::new(json!({ "band": band.spec(), "negation": band.negate(x).to_string() })))
        }
        BandCmd::Null { band, terms } => {
            let sum = terms
                .iter()
                .map(|t| band.parse_element(t).flag("terms"))
                .collect::<Result<FormalSum, _>>()?;
            let is_null = band.is_null(&sum).map_err(fail)?;
            Ok(Outcome::new(json!({ "band": band.spec(), "sum": sum, "null": is_null })))
        }
        BandCmd::ToKrasner { band } => {
            let f = BandMorphism::to_krasner(&band).flag("--band")?;
            let ok = check_morphism(&f);
            Ok(Outcome::new(json!({ "band": band.spec(), "morphism": ok })).assert("morphism", ok))
        }
    }
}

#[derive(Args)]
pub struct PointsArgs {
    #[arg(long, value_parser = parse_band, help = BAND_HELP)]
    band: Band,
    #[command(flatten)]
    functor: FunctorArgs,
    /// Print only the number of points.
    #[arg(long)]
    count: bool,
    /// Compare with the row-space enumeration over F_q.
    #[arg(long)]
    oracle: bool,
}

pub fn points(args: PointsArgs) -> Res {
    let functor = args.functor.functor()?;
    let pts = enumerate_points(&args.band, &functor).flag("--band")?;
    let mut out = if args.count {
        Outcome::new(json!({ "count": pts.len() }))
    } else {
        Outcome::new(json!({
            "band": args.band.spec(),
            "functor": functor.to_string(),
            "count": pts.len(),
            "points": point_strings(&pts),
        }))
    };
    if args.oracle {
        let BandKind::Fq(q) = args.band.kind() else {
            return Err("--oracle needs a finite field band".into());
        };
        let [r] = functor.ranks()[..] else {
            return Err("--oracle needs --functor proj or gr".into());
        };
        let oracle = field_grassmannian_oracle(q as u32, r, functor.ground()).flag("--oracle")?;
        let ours: std::collections::BTreeSet<String> = point_strings(&pts).into_iter().collect();
        let theirs: std::collections::BTreeSet<String> = strings(&oracle).into_iter().collect();
        out.body.insert("oracle_count".into(), json!(oracle.len()));
        out = out.assert("oracle", ours == theirs);
    }
    Ok(out)
}

#[derive(Subcommand)]
pub enum MatroidCmd {
    /// All matroids of rank r on n elements.
    List {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: bool,
    },
    /// Whether a family of bases satisfies basis exchange.
    Check {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        /// Bases such as `12 13 23` or `{1,2} {1,3}`.
        #[arg(long, num_args = 1.., required = true)]
        bases: Vec<String>,
    },
    /// Compare supports of Gr(r,n)(K) with the matroid list.
    Bijection {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
    /// Compare incidence of K-points with matroid quotients.
    Flags {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        r2: usize,
        #[arg(long)]
        n: usize,
    },
}

pub fn matroid(cmd: MatroidCmd) -> Res {
    match cmd {
        MatroidCmd::List { r, n, count } => {
            let ms = all_matroids(r, n).flag("--n")?;
            if count {
                return Ok(Outcome::new(json!({ "count": ms.len() })));
            }
            Ok(Outcome::new(json!({ "r": r, "n": n, "count": ms.len(), "matroids": ms })))
        }
        MatroidCmd::Check { r, n, bases } => {
            let parsed = bases.iter().map(|b| subsets::parse(b, n).flag("--bases")).collect::<Result<Vec<_>, _>>()?;
            if let Some(b) = parsed.iter().find(|b| subsets::size(**b) != r) {
                return Err(format!("--bases: {} does not have {r} elements", subsets::format(*b)));
            }
            let ok = is_matroid(n, r, &parsed).flag("--bases")?;
            Ok(Outcome::new(json!({ "r": r, "n": n, "bases": strings(parsed.iter().map(|b| subsets::format(*b))), "matroid": ok })))
        }
        MatroidCmd::Bijection { r, n } => {
            let rep = grK_bijection_check(r, n).flag("--n")?;
            let ok = rep.equal;
            Ok(Outcome::new(json!(rep)).assert("bijection", ok))
        }
        MatroidCmd::Flags { r, r2, n } => {
            let rep = flag_quotient_check(r, r2, n).flag("--r")?;
            let ok = rep.agree;
            Ok(Outcome::new(json!(rep)).assert("quotients", ok))
        }
    }
}

#[derive(Args)]
pub struct SlArgs {
    #[arg(long, value_parser = parse_band, help = BAND_HELP)]
    band: Band,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
pub enum CrowdCmd {
    /// Enumerate SL_n(B) over a finite band.
    Sl {
        #[command(flatten)]
        sl: SlArgs,
        /// Print only the number of elements.
        #[arg(long)]
        count: bool,
        /// Only the monomial matrices.
        #[arg(long)]
        monomial: bool,
        /// Check the crowd axioms C1-C3.
        #[arg(long)]
        axioms: bool,
        /// Also check the symmetric and the extra axioms.
        #[arg(long, requires = "axioms")]
        all_axioms: bool,
        /// Recover a group from the crowd.
        #[arg(long)]
        group: bool,
    },
    /// Whether a matrix lies in SL_n(B); works over the tropical bands.
    Member {
        #[command(flatten)]
        sl: SlArgs,
        #[arg(long)]
        a: String,
    },
    /// The inverse set of a matrix.
    Inverse {
        #[command(flatten)]
        sl: SlArgs,
        #[arg(long)]
        a: String,
    },
    /// The product set ab.
    Product {
        #[command(flatten)]
        sl: SlArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

fn element(g: &SlCrowd, band: &Band, text: &str, name: &str) -> Result<usize, String> {
    let a = parse_matrix(band, text, g.n(), name)?;
    g.index_of(&a).ok_or_else(|| format!("{name}: {a} is not in SL_{}({})", g.n(), band))
}

fn labels(g: &SlCrowd, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| g.label(i)).collect()
}

pub fn crowd(cmd: CrowdCmd) -> Res {
    match cmd {
        CrowdCmd::Sl { sl, count, monomial, axioms, all_axioms, group } => {
            let g = if monomial { SlCrowd::monomial(&sl.band, sl.n) } else { SlCrowd::build(&sl.band, sl.n) }
                .flag("--band")?;
            let mut out = if count {
                Outcome::new(json!({ "count": g.size() }))
            } else {
                Outcome::new(json!({
                    "band": sl.band.spec(),
                    "n": sl.n,
                    "monomial": monomial,
                    "count": g.size(),
                    "elements": labels(&g, &(0..g.size()).collect::<Vec<_>>()),
                }))
            };
            if axioms {
                let opts = AxiomOptions { symmetric: all_axioms, extra: all_axioms };
                let rep = check_crowd_axioms(&g, opts);
                let ok = rep.is_crowd();
                out.body.insert("axioms".into(), json!(rep));
                out = out.assert("crowd", ok);
            }
            if group {
                match group_from_crowd(&g) {
                    Ok(t) => {
                        out.body.insert("group".into(), json!({ "order": t.size(), "abelian": t.is_abelian() }));
                        out = out.assert("group", true);
                    }
                    Err(e) => {
                        out.body.insert("group".into(), json!({ "error": e.to_string() }));
                        out = out.assert("group", false);
                    }
                }
            }
            Ok(out)
        }
        CrowdCmd::Member { sl, a } => {
            let m = parse_matrix(&sl.band, &a, sl.n, "--a")?;
            let member = is_special_linear(&sl.band, &m);
            let mut out = Outcome::new(json!({ "band": sl.band.spec(), "a": m.to_string(), "member": member }));
            if sl.band.kind() == BandKind::Tropical && sl.n == 2 {
                let (_, branch) = sl2_tropical_member(&m).flag("--a")?;
                out.body.insert("branch".into(), json!(branch));
            }
            Ok(out)
        }
        CrowdCmd::Inverse { sl, a } => {
            let g = SlCrowd::build(&sl.band, sl.n).flag("--band")?;
            let i = element(&g, &sl.band, &a, "--a")?;
            let inv = inverse_set(&g, i);
            Ok(Outcome::new(json!({ "a": g.label(i), "inverse": labels(&g, &inv), "size": inv.len() })))
        }
        CrowdCmd::Product { sl, a, b } => {
            let g = SlCrowd::build(&sl.band, sl.n).flag("--band")?;
            let i = element(&g, &sl.band, &a, "--a")?;
            let j = element(&g, &sl.band, &b, "--b")?;
            let p = product_set(&g, i, j);
            Ok(Outcome::new(json!({ "a": g.label(i), "b": g.label(j), "product": labels(&g, &p), "size": p.len() })))
        }
    }
}

#[derive(Args)]
pub struct OrbitArgs {
    #[arg(long, value_parser = parse_band, help = BAND_HELP)]
    band: Band,
    #[command(flatten)]
    functor: FunctorArgs,
    /// A matrix, or `ones` / `identity`.
    #[arg(long)]
    a: String,
    /// Coordinates such as `111` or `1,0,1`; flag stages separated by `|`.
    #[arg(long)]
    x: String,
}

pub fn orbit_report(args: OrbitArgs) -> Res {
    let functor = args.functor.functor()?;
    let a = parse_matrix(&args.band, &args.a, functor.ground(), "--a")?;
    let x = parse_point(&args.band, &functor, &args.x)?;
    if !funcrowd::points::is_valid_point(&args.band, &functor, &x) {
        return Err(format!("--x: {} is not a point of {functor}", point_string(&x)));
    }
    let o = orbit(&args.band, &a, &x, &functor).flag("--a")?;
    Ok(Outcome::new(json!({
        "band": args.band.spec(),
        "functor": functor.to_string(),
        "a": a.to_string(),
        "x": point_string(&x),
        "orbit": point_strings(&o),
        "size": o.len(),
    })))
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComplexKind {
    Delta,
    Gamma,
    Coxeter,
}

#[derive(Subcommand)]
pub enum ComplexCmd {
    /// Build a flag complex; `--format text` prints Graphviz DOT.
    Build {
        #[arg(long, value_parser = parse_band, help = BAND_HELP)]
        band: Band,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ComplexKind::Delta)]
        kind: ComplexKind,
    },
    /// Simplices of Δ_n(K) missed by the image of Δ_n(F_q).
    Image {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
    },
    /// Check that the induced map agrees with taking supports on chambers.
    Square {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
    },
    /// Orbits a.x of every simplex of Δ_n(B).
    Activity {
        #[arg(long, value_parser = parse_band, help = BAND_HELP)]
        band: Band,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: String,
    },
}

pub fn complex(cmd: ComplexCmd) -> Res {
    match cmd {
        ComplexCmd::Build { band, n, kind } => {
            let c = match kind {
                ComplexKind::Delta => build_delta(&band, n),
                ComplexKind::Gamma => build_gamma(&band, n),
                ComplexKind::Coxeter => coxeter_complex(&band, n),
            }
            .flag("--n")?;
            let mut out = Outcome::new(json!({ "band": band.spec(), "complex": c.to_json(), "f_vector": c.f_vector() }));
            out.text = Some(c.to_dot());
            Ok(out.assert("closed", c.is_closed()))
        }
        ComplexCmd::Image { q, n } => {
            let band = Band::field(q).flag("--q")?;
            let f = BandMorphism::to_krasner(&band).flag("--q")?;
            let m = induced_simplicial_map(&f, n).flag("--n")?;
            let missed = m.missed();
            let ok = m.preserves_faces();
            Ok(Outcome::new(json!({
                "q": q,
                "n": n,
                "source": m.source.f_vector(),
                "target": m.target.f_vector(),
                "image": m.image_complex().f_vector(),
                "missed": point_strings(&missed),
            }))
            .assert("simplicial", ok))
        }
        ComplexCmd::Square { q, n } => {
            let rep = commuting_square(q, n).flag("--q")?;
            let ok = rep.agree;
            Ok(Outcome::new(json!(rep)).assert("commutes", ok))
        }
        ComplexCmd::Activity { band, n, a } => {
            let a = parse_matrix(&band, &a, n, "--a")?;
            let orbits = complex_activity(&band, n, &a).flag("--a")?;
            let table: Map<String, Value> =
                orbits.iter().map(|(x, o)| (point_string(x), json!(point_strings(o)))).collect();
            let nonempty = orbits.iter().all(|(_, o)| !o.is_empty());
            Ok(Outcome::new(json!({ "band": band.spec(), "a": a.to_string(), "orbits": table })).assert("nonempty", nonempty))
        }
    }
}

#[derive(Args)]
pub struct PolygonArgs {
    /// `ngon:N`, `complete:M`, `pg:Q`, `pg:Q:D`, `t2:Q`, `quadric:Q`, optionally
    /// prefixed by `double:`.
    geometry: String,
    /// Also compare the incidence graph with another geometry.
    #[arg(long, value_name = "GEOMETRY")]
    iso: Option<String>,
    /// Check that every two elements lie in an ordinary sub-m-gon.
    #[arg(long, value_name = "M")]
    subpolygons: Option<usize>,
    /// Include the flags.
    #[arg(long)]
    flags: bool,
}

fn geometry(spec: &str) -> Result<IncidenceGeometry, String> {
    if let Some(rest) = spec.strip_prefix("double:") {
        return Ok(double(&geometry(rest)?));
    }
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |i: usize| -> Result<usize, String> {
        parts.get(i).and_then(|s| s.parse().ok()).ok_or_else(|| format!("geometry `{spec}`: expected a number"))
    };
    let q = |i: usize| num(i).map(|v| v as u32);
    let g = match parts[0] {
        "ngon" => ordinary_ngon(num(1)?),
        "complete" => complete_graph_geometry(num(1)?),
        "pg" => pg_model(q(1)?, if parts.len() > 2 { num(2)? } else { 2 }).map(|m| m.to_geometry()),
        "t2" => {
            let q = q(1)?;
            let plane = pg_model(q, 2).map_err(fail)?;
            conic_oval(&plane).and_then(|o| t2_of_oval(q, &o))
        }
        "quadric" => q4q_quadric(q(1)?),
        other => return Err(format!("geometry: unknown construction `{other}`")),
    };
    g.map_err(|e| format!("geometry `{spec}`: {e}"))
}

pub fn polygon(args: PolygonArgs) -> Res {
    let g = geometry(&args.geometry)?;
    let mut out = Outcome::new(json!({ "geometry": args.geometry, "points": g.points(), "lines": g.lines() }));
    if let Some(inner) = args.geometry.strip_prefix("double:") {
        if let Some(w) = double_warning(&geometry(inner)?) {
            out.body.insert("warning".into(), json!(w));
        }
    }
    if args.flags {
        out.body.insert("incidence".into(), g.to_json());
    }
    match verify_polygon(&g) {
        Ok(c) => {
            out.body.insert("certificate".into(), json!(c));
            out = out.assert("polygon", true);
        }
        Err(e) => {
            out.body.insert("error".into(), json!(e.to_string()));
            out = out.assert("polygon", false);
        }
    }
    if let Some(other) = &args.iso {
        let h = geometry(other).map_err(|e| format!("--iso: {e}"))?;
        out = out.assert("isomorphic", isomorphic(&g, &h));
    }
    if let Some(m) = args.subpolygons {
        let ok = funcrowd::polygon::pairs_in_ordinary_subpolygons(&g, m).flag("--subpolygons")?;
        out = out.assert("subpolygons", ok);
    }
    Ok(out)
}

#[derive(Subcommand)]
pub enum ClassifyCmd {
    /// All F1-structures P²(F_q) -> K(3).
    Plane {
        #[arg(long)]
        q: u32,
    },
    /// All F1-structures P³(F_q) -> K(4).
    P3 {
        #[arg(long)]
        q: u32,
    },
    /// Validate and classify one class map, given as a digit per point.
    Structure {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long)]
        classes: String,
    },
}

pub fn classify(cmd: ClassifyCmd) -> Res {
    match cmd {
        ClassifyCmd::Plane { q } => {
            let rep = enumerate_plane_epis(&pg_model(q, 2).flag("--q")?).flag("--q")?;
            let ok = rep.unmatched == 0;
            Ok(Outcome::new(json!(rep)).assert("classified", ok))
        }
        ClassifyCmd::P3 { q } => {
            let rep = enumerate_p3_epis(&pg_model(q, 3).flag("--q")?).flag("--q")?;
            let ok = rep.unmatched == 0;
            let templates = rep.templates_equal_search;
            let dim = rep.dimension_check;
            Ok(Outcome::new(json!(rep))
                .assert("classified", ok)
                .assert("templates", templates)
                .assert("dimension", dim))
        }
        ClassifyCmd::Structure { q, d, classes } => {
            let space = pg_model(q, d).flag("--q")?;
            let cs = classes
                .chars()
                .filter(|c| !c.is_whitespace() && *c != ',')
                .map(|c| c.to_digit(10).map(|v| v as u8).ok_or(format!("--classes: bad digit `{c}`")))
                .collect::<Result<Vec<u8>, _>>()?;
            let s = F1Structure::new(&space, cs).flag("--classes")?;
            let mut out = Outcome::new(json!({ "q": q, "d": d, "classes": class_string(s.classes()) }));
            match validate_structure(&s) {
                Ok(labels) => {
                    out.body.insert("line_labels".into(), json!(labels));
                    if d == 3 {
                        let m = match_case(&s).flag("--classes")?;
                        out.body.insert("case".into(), json!(m));
                    } else {
                        out.body.insert("class".into(), json!(match_plane_class(&space, s.classes())));
                    }
                    out = out.assert("valid", true);
                }
                Err(e) => {
                    out.body.insert("error".into(), json!(e.to_string()));
                    out = out.assert("valid", false);
                }
            }
            Ok(out)
        }
    }
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Comma-separated criterion ids, names or groups.
    #[arg(long)]
    filter: Option<String>,
    /// Overwrite one product of a finite band, e.g. `krasner:1*1=0`.
    #[arg(long, value_name = "BAND:X*Y=Z")]
    corrupt: Vec<String>,
}

pub fn verify_all(args: VerifyArgs, jobs: Option<usize>) -> Res {
    let overrides = args.corrupt.iter().map(|c| corrupted_band(c).flag("--corrupt")).collect::<Result<Vec<_>, _>>()?;
    let opts = SuiteOptions { filter: args.filter, jobs, overrides };
    let rep = run_suite(&opts).flag("--filter")?;
    let mut out = Outcome::new(rep.to_json());
    out.text = Some(rep.to_text());
    for c in &rep.criteria {
        out = out.assert(&format!("{:02}-{}", c.id, c.name), c.passed);
    }
    Ok(out)
}
