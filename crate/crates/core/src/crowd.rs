//! Crowds: a set `G` with an identity and a ternary law `R ⊆ G³`.
//!
//! Finite crowds are handled through the [`Crowd`] trait, which works on
//! element indices. [`SlCrowd`] is `SL_n(B)` (or a subset of it with the
//! restricted law) over a finite band; its law is
//!
//! ```text
//! (a, b, c) ∈ R  iff  Σ_{k,l} x_ik y_kl z_lj - δ_ij ∈ N_B  for all i, j
//! ```
//!
//! for each cyclic rotation `(x, y, z)` of `(a, b, c)`. Over the tropical
//! bands only membership tests are available, see [`SpecialLinear`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::band::{Band, BandKind, Element, FormalSum};
use crate::error::{Error, Result};
use crate::points::ENUMERATION_LIMIT;

/// An `n x n` matrix over a band, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BandMatrix {
    n: usize,
    entries: Vec<Element>,
}

impl BandMatrix {
    pub fn new(band: &Band, n: usize, entries: Vec<Element>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        for x in &entries {
            if !band.contains(x) {
                return Err(Error::NotInBand {
                    element: x.to_string(),
                    band: band.to_string(),
                });
            }
        }
        Ok(BandMatrix { n, entries })
    }

    pub fn from_rows(band: &Band, rows: Vec<Vec<Element>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        BandMatrix::new(band, n, rows.concat())
    }

    pub fn identity(band: &Band, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { band.one() } else { band.zero() })
            .collect();
        BandMatrix { n, entries }
    }

    pub fn ones(band: &Band, n: usize) -> Self {
        BandMatrix {
            n,
            entries: vec![band.one(); n * n],
        }
    }

    /// The permutation matrix with `a_{i,j} = δ_{i,σ(j)}`.
    pub fn permutation(band: &Band, sigma: &[usize]) -> Self {
        let n = sigma.len();
        let mut entries = vec![band.zero(); n * n];
        for (j, i) in sigma.iter().enumerate() {
            entries[i * n + j] = band.one();
        }
        BandMatrix { n, entries }
    }

    /// Parses `[[1,1],[0,1]]`, `1 1; 0 1`, or the compact `11;01`, or one of
    /// the names `identity` and `ones` (with `n` given).
    pub fn parse(band: &Band, text: &str, n: Option<usize>) -> Result<Self> {
        let t = text.trim();
        match (t, n) {
            ("identity" | "id", Some(n)) => return Ok(BandMatrix::identity(band, n)),
            ("ones", Some(n)) => return Ok(BandMatrix::ones(band, n)),
            _ => {}
        }
        let rows: Vec<Vec<Element>> = if t.starts_with("[[") {
            let v: Vec<Vec<Value>> = serde_json::from_str(t)
                .map_err(|e| Error::InvalidArgument(format!("matrix `{t}`: {e}")))?;
            v.iter()
                .map(|row| {
                    row.iter()
                        .map(|x| match x {
                            Value::String(s) => band.parse_element(s),
                            other => band.parse_element(&other.to_string()),
                        })
                        .collect()
                })
                .collect::<Result<_>>()?
        } else {
            t.split(';')
                .map(|row| parse_row(band, row.trim()))
                .collect::<Result<_>>()?
        };
        BandMatrix::from_rows(band, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Element {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .chunks(self.n)
                .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
                .collect(),
        )
    }

    /// Submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Element>> {
        rows.iter()
            .map(|i| cols.iter().map(|j| self.get(*i, *j)).collect())
            .collect()
    }
}

fn parse_row(band: &Band, row: &str) -> Result<Vec<Element>> {
    if row.contains(' ') || row.contains(',') {
        row.split([' ', ','])
            .filter(|s| !s.is_empty())
            .map(|s| band.parse_element(s))
            .collect()
    } else {
        // compact: one character per entry, `-` for -1
        row.chars()
            .map(|c| match c {
                '-' => band.parse_element("-1"),
                c => band.parse_element(&c.to_string()),
            })
            .collect()
    }
}

impl fmt::Display for BandMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.n)
            .map(|r| {
                let items: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", items.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Permutations of `0..n` with their signs, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.into_iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            (p, inversions % 2 == 1)
        })
        .collect()
}

/// `det(a)` as a formal sum: one term `± ∏ a_{k,σ(k)}` per permutation,
/// negated for odd `σ`; zero monomials are dropped.
pub fn det_formal(band: &Band, a: &BandMatrix) -> FormalSum {
    det_formal_rows(band, &a.rows())
}

pub(crate) fn det_formal_rows(band: &Band, rows: &[Vec<Element>]) -> FormalSum {
    let n = rows.len();
    permutations(n)
        .into_iter()
        .map(|(p, odd)| {
            let m = (0..n).fold(band.one(), |acc, k| band.times(acc, rows[k][p[k]]));
            if odd {
                band.negate(m)
            } else {
                m
            }
        })
        .collect()
}

/// `det(a) - 1 ∈ N_B`.
pub fn is_special_linear(band: &Band, a: &BandMatrix) -> bool {
    let det = det_formal(band, a);
    band.is_null_unchecked(det.terms().iter().copied().chain([band.minus_one()]))
}

fn cond_elements(band: &Band, x: &BandMatrix, y: &BandMatrix, z: &BandMatrix) -> bool {
    let n = x.n;
    (0..n).all(|i| {
        (0..n).all(|j| {
            let mut acc = band.acc();
            for k in 0..n {
                for l in 0..n {
                    let t = band.times(band.times(x.get(i, k), y.get(k, l)), z.get(l, j));
                    band.acc_add(&mut acc, t);
                }
            }
            if i == j {
                band.acc_add(&mut acc, band.minus_one());
            }
            band.acc_is_null(&acc)
        })
    })
}

/// The `SL_n` law on explicit matrices, for any band.
pub fn sl_law(band: &Band, a: &BandMatrix, b: &BandMatrix, c: &BandMatrix) -> bool {
    cond_elements(band, a, b, c) && cond_elements(band, b, c, a) && cond_elements(band, c, a, b)
}

/// `SL_n(B)` as a membership-only crowd; works over every band.
#[derive(Clone, Debug)]
pub struct SpecialLinear {
    pub band: Band,
    pub n: usize,
}

impl SpecialLinear {
    pub fn new(band: Band, n: usize) -> Self {
        SpecialLinear { band, n }
    }

    pub fn contains(&self, a: &BandMatrix) -> bool {
        a.n == self.n && is_special_linear(&self.band, a)
    }

    pub fn law(&self, a: &BandMatrix, b: &BandMatrix, c: &BandMatrix) -> bool {
        [a, b, c].iter().all(|m| self.contains(m)) && sl_law(&self.band, a, b, c)
    }

    /// Enumerates the crowd; fails for the tropical bands.
    pub fn enumerate(&self) -> Result<SlCrowd> {
        SlCrowd::build(&self.band, self.n)
    }
}

/// Which branch of the closed form for `SL_2(T)` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TropicalBranch {
    /// `ad <= bc = 1`
    AdBelowBcOne,
    /// `bc <= ad = 1`
    BcBelowAdOne,
    /// `1 <= ad = bc`
    OneBelowAdBc,
}

/// Closed-form membership in `SL_2(T)`, together with the null-set answer.
pub fn sl2_tropical_member(a: &BandMatrix) -> Result<(bool, Option<TropicalBranch>)> {
    let t = Band::tropical();
    if a.n != 2 || !a.entries.iter().all(|x| t.contains(x)) {
        return Err(Error::InvalidArgument("expected a 2x2 tropical matrix".into()));
    }
    let ad = t.times(a.get(0, 0), a.get(1, 1));
    let bc = t.times(a.get(0, 1), a.get(1, 0));
    let one = t.one();
    let branch = if ad <= bc && bc == one {
        Some(TropicalBranch::AdBelowBcOne)
    } else if bc <= ad && ad == one {
        Some(TropicalBranch::BcBelowAdOne)
    } else if one <= ad && ad == bc {
        Some(TropicalBranch::OneBelowAdBc)
    } else {
        None
    };
    Ok((is_special_linear(&t, a), branch))
}

/// A finite crowd on the indices `0..size()`.
pub trait Crowd: Sync {
    fn size(&self) -> usize;

    fn identity(&self) -> usize;

    fn law(&self, a: usize, b: usize, c: usize) -> bool;

    /// `{x : (a, b, x) ∈ R}`, sorted.
    fn solve_last(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.law(a, b, x)).collect()
    }

    /// `{x : (x, b, c) ∈ R}`, sorted.
    fn solve_first(&self, b: usize, c: usize) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.law(x, b, c)).collect()
    }

    /// `{x : (a, x, c) ∈ R}`, sorted.
    fn solve_middle(&self, a: usize, c: usize) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.law(a, x, c)).collect()
    }

    fn label(&self, i: usize) -> String {
        i.to_string()
    }

    fn element_json(&self, i: usize) -> Value {
        Value::String(self.label(i))
    }
}

pub fn inverse_set(g: &dyn Crowd, a: usize) -> Vec<usize> {
    g.solve_middle(a, g.identity())
}

/// `ab = {c : (a, b, d) ∈ R and (d, c, 1) ∈ R for some d}`.
pub fn product_set(g: &dyn Crowd, a: usize, b: usize) -> Vec<usize> {
    let out: BTreeSet<usize> = g
        .solve_last(a, b)
        .into_iter()
        .flat_map(|d| inverse_set(g, d))
        .collect();
    out.into_iter().collect()
}

/// The free crowd on `size` elements: `R = {(1, 1, 1)}` with `1 = 0`.
#[derive(Clone, Copy, Debug)]
pub struct FreeCrowd {
    pub size: usize,
}

impl Crowd for FreeCrowd {
    fn size(&self) -> usize {
        self.size
    }

    fn identity(&self) -> usize {
        0
    }

    fn law(&self, a: usize, b: usize, c: usize) -> bool {
        a == 0 && b == 0 && c == 0
    }
}

/// A finite group given by its multiplication table, with `R = {abc = 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupTable {
    pub order: usize,
    pub identity: usize,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
}

impl GroupTable {
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul[a][b] == self.mul[b][a]))
    }
}

impl Crowd for GroupTable {
    fn size(&self) -> usize {
        self.order
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn law(&self, a: usize, b: usize, c: usize) -> bool {
        self.mul[self.mul[a][b]][c] == self.identity
    }

    fn solve_last(&self, a: usize, b: usize) -> Vec<usize> {
        vec![self.inv[self.mul[a][b]]]
    }

    fn solve_first(&self, b: usize, c: usize) -> Vec<usize> {
        vec![self.inv[self.mul[b][c]]]
    }

    fn solve_middle(&self, a: usize, c: usize) -> Vec<usize> {
        vec![self.mul[self.inv[a]][self.inv[c]]]
    }
}

/// Checks conditions (1) and (2) of the group recognition criterion and
/// returns the multiplication table. The table is checked against the group
/// axioms and its induced law is compared with `R`.
pub fn group_from_crowd(g: &dyn Crowd) -> Result<GroupTable> {
    let n = g.size();
    let fail = |reason: &str, witness: Vec<usize>| Error::ConditionsFail {
        reason: reason.to_string(),
        witness,
    };
    let mut inv = Vec::with_capacity(n);
    for a in 0..n {
        match inverse_set(g, a).as_slice() {
            [b] => inv.push(*b),
            _ => return Err(fail("inverse is not a singleton", vec![a])),
        }
    }
    let rows: Vec<std::result::Result<Vec<usize>, Error>> = (0..n)
        .into_par_iter()
        .map(|a| {
            (0..n)
                .map(|b| match product_set(g, a, b).as_slice() {
                    [c] => Ok(*c),
                    _ => Err(fail("product is not a singleton", vec![a, b])),
                })
                .collect()
        })
        .collect();
    let mul = rows.into_iter().collect::<Result<Vec<Vec<usize>>>>()?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul[a][mul[b][c]] != mul[mul[a][b]][c] {
                    return Err(fail("ad != ec for d in bc, e in ab", vec![a, b, c]));
                }
            }
        }
    }
    let e = g.identity();
    for a in 0..n {
        if mul[e][a] != a || mul[a][e] != a {
            return Err(fail("identity is not neutral", vec![a]));
        }
        if mul[a][inv[a]] != e || mul[inv[a]][a] != e {
            return Err(fail("inverse element fails", vec![a]));
        }
    }
    let table = GroupTable {
        order: n,
        identity: e,
        mul,
        inv,
    };
    let mismatch = (0..n).into_par_iter().find_first(|&a| {
        (0..n).any(|b| g.solve_last(a, b) != table.solve_last(a, b))
    });
    if let Some(a) = mismatch {
        let b = (0..n)
            .find(|&b| g.solve_last(a, b) != table.solve_last(a, b))
            .unwrap();
        return Err(fail("table does not induce the crowd law", vec![a, b]));
    }
    Ok(table)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AxiomOptions {
    /// Also check the symmetric axioms C1*–C3*.
    pub symmetric: bool,
    /// Also check C4, C5 and C6.
    pub extra: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub elements: usize,
    #[serde(rename = "C1")]
    pub c1: bool,
    #[serde(rename = "C2")]
    pub c2: bool,
    #[serde(rename = "C3")]
    pub c3: bool,
    #[serde(rename = "C1*", skip_serializing_if = "Option::is_none")]
    pub c1_star: Option<bool>,
    #[serde(rename = "C2*", skip_serializing_if = "Option::is_none")]
    pub c2_star: Option<bool>,
    #[serde(rename = "C3*", skip_serializing_if = "Option::is_none")]
    pub c3_star: Option<bool>,
    #[serde(rename = "C4", skip_serializing_if = "Option::is_none")]
    pub c4: Option<bool>,
    #[serde(rename = "C5", skip_serializing_if = "Option::is_none")]
    pub c5: Option<bool>,
    #[serde(rename = "C6", skip_serializing_if = "Option::is_none")]
    pub c6: Option<bool>,
    /// First witness for every failing axiom.
    pub counterexample: BTreeMap<String, Vec<String>>,
}

impl AxiomReport {
    pub fn is_crowd(&self) -> bool {
        self.c1 && self.c2 && self.c3
    }

    /// Whether C1–C3 and C1*–C3* agree, when the latter were checked.
    pub fn symmetric_agrees(&self) -> Option<bool> {
        let all = [self.c1_star?, self.c2_star?, self.c3_star?];
        Some(all.iter().all(|x| *x) == self.is_crowd())
    }
}

/// Runs `check` for every `a` and returns the first failing witness.
fn first_failure<F>(n: usize, check: F) -> Option<Vec<usize>>
where
    F: Fn(usize) -> Option<Vec<usize>> + Sync + Send,
{
    (0..n).into_par_iter().find_map_first(check)
}

pub fn check_crowd_axioms(g: &dyn Crowd, opts: AxiomOptions) -> AxiomReport {
    let n = g.size();
    let e = g.identity();
    let mut failures: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut record = |name: &str, w: Option<Vec<usize>>| -> bool {
        match w {
            Some(w) => {
                failures.insert(name.to_string(), w);
                false
            }
            None => true,
        }
    };

    let c1 = record(
        "C1",
        (0..n).find(|&a| g.law(a, e, e) != (a == e)).map(|a| vec![a, e, e]),
    );
    let c2 = record(
        "C2",
        first_failure(n, |a| {
            g.solve_middle(a, e)
                .into_iter()
                .find(|&b| !g.law(b, a, e))
                .map(|b| vec![a, b, e])
        }),
    );
    let c3 = record(
        "C3",
        first_failure(n, |a| {
            (0..n).find_map(|b| {
                g.solve_last(a, b)
                    .into_iter()
                    .find(|&c| !g.law(c, a, b))
                    .map(|c| vec![a, b, c])
            })
        }),
    );

    let (mut c1_star, mut c2_star, mut c3_star) = (None, None, None);
    if opts.symmetric {
        let sets = [g.solve_first(e, e), g.solve_middle(e, e), g.solve_last(e, e)];
        c1_star = Some(record(
            "C1*",
            sets.iter().find(|s| s.as_slice() != [e]).cloned(),
        ));
        c2_star = Some(record(
            "C2*",
            first_failure(n, |a| {
                let six = [
                    g.solve_middle(a, e),
                    g.solve_first(e, a),
                    g.solve_last(e, a),
                    g.solve_first(a, e),
                    g.solve_last(a, e),
                    g.solve_middle(e, a),
                ];
                six.iter().all(|s| *s == six[0]).then_some(()).map_or(Some(vec![a]), |_| None)
            }),
        ));
        c3_star = Some(record(
            "C3*",
            first_failure(n, |a| {
                (0..n).find_map(|b| {
                    let last = g.solve_last(a, b);
                    let ok = last == g.solve_first(a, b) && last == g.solve_middle(b, a);
                    (!ok).then(|| vec![a, b])
                })
            }),
        ));
    }

    let (mut c4, mut c5, mut c6) = (None, None, None);
    if opts.extra {
        let inverses: Vec<Vec<usize>> = (0..n).map(|a| g.solve_middle(a, e)).collect();
        c4 = Some(record(
            "C4",
            (0..n).find(|&a| inverses[a].is_empty()).map(|a| vec![a]),
        ));
        c5 = Some(record(
            "C5",
            first_failure(n, |a| {
                (0..n).find_map(|b| {
                    g.solve_last(a, b).into_iter().find_map(|c| {
                        for &ai in &inverses[a] {
                            for &bi in &inverses[b] {
                                for &ci in &inverses[c] {
                                    if !g.law(ci, bi, ai) {
                                        return Some(vec![a, b, c, ai, bi, ci]);
                                    }
                                }
                            }
                        }
                        None
                    })
                })
            }),
        ));
        c6 = Some(record(
            "C6",
            first_failure(n, |a| {
                (0..n).find_map(|b| {
                    g.solve_last(a, b)
                        .into_iter()
                        .find(|&c| !g.law(b, a, c))
                        .map(|c| vec![a, b, c])
                })
            }),
        ));
    }

    AxiomReport {
        elements: n,
        c1,
        c2,
        c3,
        c1_star,
        c2_star,
        c3_star,
        c4,
        c5,
        c6,
        counterexample: failures
            .into_iter()
            .map(|(k, w)| (k, w.into_iter().map(|i| g.label(i)).collect()))
            .collect(),
    }
}

const MAX_N: usize = 4;
type Mat = [u8; MAX_N * MAX_N];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum AccKind {
    Krasner,
    Signed,
    Field,
    /// `F_p` whose tables are the usual residue arithmetic
    Prime,
}

/// Table-driven arithmetic on element codes of a finite band, with null-set
/// summaries stored as `i32`.
#[derive(Clone, Debug)]
struct FiniteArith {
    kind: AccKind,
    size: usize,
    mul: Vec<u8>,
    neg: Vec<u8>,
    add: Vec<u8>,
    inv: Vec<u8>,
    /// integer value of each code, for `F±1`
    value: Vec<i32>,
    one: u8,
    minus_one: u8,
    /// tables satisfy the ring axioms, so `P x = 1` may be solved by linear algebra
    linear: bool,
}
fn code_of(x: Element) -> u8 {
    match x {
        Element::Int(v) if v < 0 => 2,
        Element::Int(v) => v as u8,
        Element::Rat(_) => unreachable!(),
    }
}

fn element_of(kind: BandKind, c: u8) -> Element {
    match (kind, c) {
        (BandKind::Fpm, 2) => Element::MINUS_ONE,
        _ => Element::Int(c as i8),
    }
}

impl FiniteArith {
    fn new(band: &Band) -> Result<Self> {
        let size = band.order().ok_or(Error::InfiniteBand(band.kind()))?;
        let kind = match band.kind() {
            BandKind::Krasner => AccKind::Krasner,
            BandKind::Fpm => AccKind::Signed,
            BandKind::Fq(_) => AccKind::Field,
            k => return Err(Error::InfiniteBand(k)),
        };
        let el = |c: usize| element_of(band.kind(), c as u8);
        let mut mul = vec![0; size * size];
        let mut add = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                mul[x * size + y] = code_of(band.times(el(x), el(y)));
                if let Some(s) = band.field_add(el(x), el(y)) {
                    add[x * size + y] = code_of(s);
                }
            }
        }
        let neg = (0..size).map(|x| code_of(band.negate(el(x)))).collect();
        let inv = (0..size)
            .map(|x| band.inverse(el(x)).map_or(0, code_of))
            .collect();
        let value = (0..size)
            .map(|c| match el(c) {
                Element::Int(v) => v as i32,
                _ => 0,
            })
            .collect();
        let mut arith = FiniteArith {
            kind,
            size,
            mul,
            neg,
            add,
            inv,
            value,
            one: 1,
            minus_one: code_of(band.minus_one()),
            linear: false,
        };
        arith.linear = arith.ring_axioms_hold();
        if arith.kind == AccKind::Field && arith.is_standard_prime_field() {
            arith.kind = AccKind::Prime;
        }
        Ok(arith)
    }

    fn is_standard_prime_field(&self) -> bool {
        let s = self.size;
        let prime = (2..s).all(|d| !s.is_multiple_of(d));
        prime
            && (0..s).all(|x| {
                (0..s).all(|y| {
                    self.mul[x * s + y] as usize == x * y % s && self.add[x * s + y] as usize == (x + y) % s
                })
            })
            && (0..s).all(|x| self.neg[x] as usize == (s - x) % s)
    }

    fn ring_axioms_hold(&self) -> bool {
        let s = self.size;
        let m = |x: usize, y: usize| self.mul[x * s + y] as usize;
        let a = |x: usize, y: usize| self.add[x * s + y] as usize;
        match self.kind {
            AccKind::Krasner => false,
            AccKind::Signed => (0..s).all(|x| {
                (0..s).all(|y| self.value[m(x, y)] == self.value[x] * self.value[y])
            }),
            AccKind::Field | AccKind::Prime => (1..s).all(|x| m(x, self.inv[x] as usize) == 1) && (0..s).all(|x| {
                (0..s).all(|y| {
                    (0..s).all(|z| m(x, a(y, z)) == a(m(x, y), m(x, z)) && m(x, m(y, z)) == m(m(x, y), z))
                })
            }),
        }
    }

    #[inline]
    fn mul(&self, x: u8, y: u8) -> u8 {
        self.mul[x as usize * self.size + y as usize]
    }

    fn term(&self, acc: i32, x: u8) -> i32 {
        match self.kind {
            AccKind::Krasner => KrasnerK::term(self, acc, x),
            AccKind::Signed => SignedK::term(self, acc, x),
            AccKind::Field => FieldK::term(self, acc, x),
            AccKind::Prime => acc + x as i32,
        }
    }

    fn null(&self, acc: i32) -> bool {
        match self.kind {
            AccKind::Krasner => KrasnerK::null(self, acc),
            AccKind::Signed => SignedK::null(self, acc),
            AccKind::Field => FieldK::null(self, acc),
            AccKind::Prime => acc % self.size as i32 == 0,
        }
    }
}

/// Null-set summaries for one kind of band, so the hot loops are
/// monomorphized.
trait Kernel {
    /// adds the term `x y`
    fn prod(ar: &FiniteArith, acc: i32, x: u8, y: u8) -> i32;
    fn term(ar: &FiniteArith, acc: i32, x: u8) -> i32;
    fn scale(ar: &FiniteArith, acc: i32, x: u8) -> i32;
    fn merge(ar: &FiniteArith, a: i32, b: i32) -> i32;
    fn null(ar: &FiniteArith, acc: i32) -> bool;
}

struct KrasnerK;
struct SignedK;
struct FieldK;
struct PrimeK<const P: i32>;

impl Kernel for KrasnerK {
    #[inline(always)]
    fn prod(ar: &FiniteArith, acc: i32, x: u8, y: u8) -> i32 {
        Self::term(ar, acc, ar.mul(x, y))
    }
    #[inline(always)]
    fn term(_: &FiniteArith, acc: i32, x: u8) -> i32 {
        (acc + (x != 0) as i32).min(2)
    }
    #[inline(always)]
    fn scale(_: &FiniteArith, acc: i32, x: u8) -> i32 {
        if x == 0 {
            0
        } else {
            acc
        }
    }
    #[inline(always)]
    fn merge(_: &FiniteArith, a: i32, b: i32) -> i32 {
        (a + b).min(2)
    }
    #[inline(always)]
    fn null(_: &FiniteArith, acc: i32) -> bool {
        acc != 1
    }
}

impl Kernel for SignedK {
    #[inline(always)]
    fn prod(ar: &FiniteArith, acc: i32, x: u8, y: u8) -> i32 {
        acc + ar.value[ar.mul(x, y) as usize]
    }
    #[inline(always)]
    fn term(ar: &FiniteArith, acc: i32, x: u8) -> i32 {
        acc + ar.value[x as usize]
    }
    #[inline(always)]
    fn scale(ar: &FiniteArith, acc: i32, x: u8) -> i32 {
        acc * ar.value[x as usize]
    }
    #[inline(always)]
    fn merge(_: &FiniteArith, a: i32, b: i32) -> i32 {
        a + b
    }
    #[inline(always)]
    fn null(_: &FiniteArith, acc: i32) -> bool {
        acc == 0
    }
}

impl Kernel for FieldK {
    #[inline(always)]
    fn prod(ar: &FiniteArith, acc: i32, x: u8, y: u8) -> i32 {
        Self::term(ar, acc, ar.mul(x, y))
    }
    #[inline(always)]
    fn term(ar: &FiniteArith, acc: i32, x: u8) -> i32 {
        ar.add[acc as usize * ar.size + x as usize] as i32
    }
    #[inline(always)]
    fn scale(ar: &FiniteArith, acc: i32, x: u8) -> i32 {
        ar.mul[acc as usize * ar.size + x as usize] as i32
    }
    #[inline(always)]
    fn merge(ar: &FiniteArith, a: i32, b: i32) -> i32 {
        ar.add[a as usize * ar.size + b as usize] as i32
    }
    #[inline(always)]
    fn null(_: &FiniteArith, acc: i32) -> bool {
        acc == 0
    }
}

/// Unreduced integer representatives; reduced only in the null test.
impl<const P: i32> Kernel for PrimeK<P> {
    #[inline(always)]
    fn prod(_: &FiniteArith, acc: i32, x: u8, y: u8) -> i32 {
        acc + x as i32 * y as i32
    }
    #[inline(always)]
    fn term(_: &FiniteArith, acc: i32, x: u8) -> i32 {
        acc + x as i32
    }
    #[inline(always)]
    fn scale(_: &FiniteArith, acc: i32, x: u8) -> i32 {
        acc * x as i32
    }
    #[inline(always)]
    fn merge(_: &FiniteArith, a: i32, b: i32) -> i32 {
        a + b
    }
    #[inline(always)]
    fn null(_: &FiniteArith, acc: i32) -> bool {
        acc % P == 0
    }
}

macro_rules! dispatch {
    ($self:ident, $f:ident($($arg:expr),*)) => {
        match $self.arith.kind {
            AccKind::Krasner => $self.$f::<KrasnerK>($($arg),*),
            AccKind::Signed => $self.$f::<SignedK>($($arg),*),
            AccKind::Field => $self.$f::<FieldK>($($arg),*),
            AccKind::Prime => match $self.arith.size {
                2 => $self.$f::<PrimeK<2>>($($arg),*),
                3 => $self.$f::<PrimeK<3>>($($arg),*),
                5 => $self.$f::<PrimeK<5>>($($arg),*),
                _ => $self.$f::<PrimeK<7>>($($arg),*),
            },
        }
    };
}

/// `SL_n(B)`, or a subset of it with the restricted law, over a finite band.
#[derive(Clone, Debug)]
pub struct SlCrowd {
    band: Band,
    n: usize,
    arith: FiniteArith,
    elements: Vec<Mat>,
    index: MatIndex,
    identity: usize,
    /// candidate column vectors for the column search
    columns: Vec<[u8; MAX_N]>,
    perms: Vec<(Vec<usize>, bool)>,
    minor_perms: Vec<(Vec<usize>, bool)>,
}

#[derive(Clone, Debug)]
enum MatIndex {
    Dense(Vec<u32>),
    Sparse(HashMap<Mat, u32>),
}

impl SlCrowd {
    /// Enumerates `SL_n(B)`.
    pub fn build(band: &Band, n: usize) -> Result<Self> {
        let arith = FiniteArith::new(band)?;
        check_dim(n)?;
        let total = arith
            .size
            .checked_pow((n * n) as u32)
            .filter(|t| *t <= ENUMERATION_LIMIT)
            .ok_or_else(|| Error::SizeLimit(format!("{}^{} matrices", arith.size, n * n)))?;
        let perms = permutations(n);
        let mut elements = Vec::new();
        for idx in 0..total {
            let m = decode(idx, arith.size, n);
            if det_null(&arith, &perms, &m, n) {
                elements.push(m);
            }
        }
        SlCrowd::assemble(band, n, arith, elements)
    }

    /// Monomial matrices of `SL_n(B)`: one unit per row and column.
    pub fn monomial(band: &Band, n: usize) -> Result<Self> {
        let arith = FiniteArith::new(band)?;
        check_dim(n)?;
        let units: Vec<u8> = band
            .finite_units()
            .ok_or(Error::InfiniteBand(band.kind()))?
            .into_iter()
            .map(code_of)
            .collect();
        let perms = permutations(n);
        let mut elements = Vec::new();
        for (sigma, _) in &perms {
            for k in 0..units.len().pow(n as u32) {
                let mut m = [0u8; MAX_N * MAX_N];
                let mut k = k;
                for (j, i) in sigma.iter().enumerate() {
                    m[i * n + j] = units[k % units.len()];
                    k /= units.len();
                }
                if det_null(&arith, &perms, &m, n) {
                    elements.push(m);
                }
            }
        }
        elements.sort();
        SlCrowd::assemble(band, n, arith, elements)
    }

    /// The given matrices of `SL_n(B)` with the restricted law.
    pub fn from_matrices(band: &Band, n: usize, mats: &[BandMatrix]) -> Result<Self> {
        let arith = FiniteArith::new(band)?;
        check_dim(n)?;
        let perms = permutations(n);
        let mut elements = Vec::new();
        for a in mats {
            if a.n != n {
                return Err(Error::DimensionMismatch(format!("{a} is not {n}x{n}")));
            }
            let mut m = [0u8; MAX_N * MAX_N];
            for (k, x) in a.entries.iter().enumerate() {
                m[k] = code_of(*x);
            }
            if !det_null(&arith, &perms, &m, n) {
                return Err(Error::InvalidArgument(format!("{a} is not in SL_{n}")));
            }
            elements.push(m);
        }
        SlCrowd::assemble(band, n, arith, elements)
    }

    fn assemble(band: &Band, n: usize, arith: FiniteArith, mut elements: Vec<Mat>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let dense_size = arith.size.pow((n * n) as u32);
        let index = if dense_size <= ENUMERATION_LIMIT {
            let mut table = vec![u32::MAX; dense_size];
            for (i, m) in elements.iter().enumerate() {
                table[encode(m, arith.size, n)] = i as u32;
            }
            MatIndex::Dense(table)
        } else {
            MatIndex::Sparse(elements.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect())
        };
        let mut id = [0u8; MAX_N * MAX_N];
        for i in 0..n {
            id[i * n + i] = arith.one;
        }
        let mut crowd = SlCrowd {
            band: band.clone(),
            n,
            columns: (0..arith.size.pow(n as u32))
                .map(|k| {
                    let mut v = [0u8; MAX_N];
                    let mut k = k;
                    for x in v[..n].iter_mut().rev() {
                        *x = (k % arith.size) as u8;
                        k /= arith.size;
                    }
                    v
                })
                .collect(),
            perms: permutations(n),
            minor_perms: permutations(n - 1),
            arith,
            elements,
            index,
            identity: 0,
        };
        crowd.identity = crowd
            .lookup(&id)
            .ok_or_else(|| Error::InvalidStructure("identity is not in the crowd".into()))?;
        Ok(crowd)
    }

    pub fn band(&self) -> &Band {
        &self.band
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self, i: usize) -> BandMatrix {
        let n = self.n;
        BandMatrix {
            n,
            entries: self.elements[i][..n * n]
                .iter()
                .map(|c| element_of(self.band.kind(), *c))
                .collect(),
        }
    }

    pub fn matrices(&self) -> Vec<BandMatrix> {
        (0..self.elements.len()).map(|i| self.matrix(i)).collect()
    }

    /// Index of a matrix, if it belongs to the crowd.
    pub fn index_of(&self, a: &BandMatrix) -> Option<usize> {
        if a.n != self.n || !a.entries.iter().all(|x| self.band.contains(x)) {
            return None;
        }
        let mut m = [0u8; MAX_N * MAX_N];
        for (k, x) in a.entries.iter().enumerate() {
            m[k] = code_of(*x);
        }
        self.lookup(&m)
    }

    fn lookup(&self, m: &Mat) -> Option<usize> {
        match &self.index {
            MatIndex::Dense(t) => {
                let i = t[encode(m, self.arith.size, self.n)];
                (i != u32::MAX).then_some(i as usize)
            }
            MatIndex::Sparse(h) => h.get(m).map(|i| *i as usize),
        }
    }

    /// `P_il = Σ_k x_ik y_kl` as null-set summaries.
    #[inline(always)]
    fn product<K: Kernel>(&self, x: &Mat, y: &Mat) -> [i32; MAX_N * MAX_N] {
        let n = self.n;
        let ar = &self.arith;
        let mut p = [0i32; MAX_N * MAX_N];
        for i in 0..n {
            for l in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = K::prod(ar, acc, x[i * n + k], y[k * n + l]);
                }
                p[i * n + l] = acc;
            }
        }
        p
    }

    /// Whether `Σ_l P_il z_lj - δ_ij` is null for all `i` and `j ∈ cols`.
    #[inline(always)]
    fn cond_product<K: Kernel>(
        &self,
        p: &[i32; MAX_N * MAX_N],
        z: impl Fn(usize, usize) -> u8,
        cols: std::ops::Range<usize>,
    ) -> bool {
        let n = self.n;
        let ar = &self.arith;
        for i in 0..n {
            for j in cols.clone() {
                let mut acc = 0;
                for l in 0..n {
                    acc = K::merge(ar, acc, K::scale(ar, p[i * n + l], z(l, j)));
                }
                if i == j {
                    acc = K::term(ar, acc, ar.minus_one);
                }
                if !K::null(ar, acc) {
                    return false;
                }
            }
        }
        true
    }

    #[inline(always)]
    fn cond<K: Kernel>(&self, x: &Mat, y: &Mat, z: &Mat) -> bool {
        let n = self.n;
        self.cond_product::<K>(&self.product::<K>(x, y), |l, j| z[l * n + j], 0..n)
    }

    #[inline(always)]
    fn law_k<K: Kernel>(&self, a: usize, b: usize, c: usize) -> bool {
        let (a, b, c) = (&self.elements[a], &self.elements[b], &self.elements[c]);
        self.cond::<K>(a, b, c) && self.cond::<K>(b, c, a) && self.cond::<K>(c, a, b)
    }

    /// All matrices `z` with `Σ_l P_il z_lj - δ_ij` null, searched column by column.
    fn column_search<K: Kernel>(&self, p: &[i32; MAX_N * MAX_N]) -> Vec<Mat> {
        let n = self.n;
        let mut per_column: Vec<Vec<&[u8; MAX_N]>> = Vec::with_capacity(n);
        for j in 0..n {
            let fits: Vec<&[u8; MAX_N]> = self
                .columns
                .iter()
                .filter(|v| self.cond_product::<K>(p, |l, _| v[l], j..j + 1))
                .collect();
            if fits.is_empty() {
                return Vec::new();
            }
            per_column.push(fits);
        }
        let mut out = Vec::new();
        let mut choice = vec![0usize; n];
        loop {
            let mut z = [0u8; MAX_N * MAX_N];
            for j in 0..n {
                let v = per_column[j][choice[j]];
                for l in 0..n {
                    z[l * n + j] = v[l];
                }
            }
            out.push(z);
            let mut j = 0;
            loop {
                if j == n {
                    return out;
                }
                choice[j] += 1;
                if choice[j] < per_column[j].len() {
                    break;
                }
                choice[j] = 0;
                j += 1;
            }
        }
    }

    /// Same as the column search for bands whose tables form a ring: the
    /// conditions say `P z = 1` over `Z` or `F_q`.
    fn solve_linear(&self, p: &[i32; MAX_N * MAX_N]) -> Option<Mat> {
        let n = self.n;
        let ar = &self.arith;
        let mut z = [0u8; MAX_N * MAX_N];
        match ar.kind {
            AccKind::Field | AccKind::Prime => {
                let q = ar.size as i32;
                let (det, adj) = adjugate(
                    n,
                    &self.perms,
                    &self.minor_perms,
                    |i, j| (p[i * n + j] % q) as u8,
                    0,
                    1,
                    |x: u8, y: u8| ar.add[x as usize * ar.size + y as usize],
                    |x, y| ar.mul(x, y),
                    |x| ar.neg[x as usize],
                );
                if det == 0 {
                    return None;
                }
                let dinv = ar.inv[det as usize];
                for k in 0..n * n {
                    z[k] = ar.mul(dinv, adj[k]);
                }
            }
            AccKind::Signed => {
                let (det, adj) = adjugate(
                    n,
                    &self.perms,
                    &self.minor_perms,
                    |i, j| p[i * n + j],
                    0,
                    1,
                    |x, y| x + y,
                    |x, y| x * y,
                    |x| -x,
                );
                if det != 1 && det != -1 {
                    return None;
                }
                for k in 0..n * n {
                    z[k] = match det * adj[k] {
                        0 => 0,
                        1 => 1,
                        -1 => 2,
                        _ => return None,
                    };
                }
            }
            AccKind::Krasner => unreachable!(),
        }
        Some(z)
    }

    #[inline(always)]
    fn cond_at<K: Kernel>(&self, x: usize, y: usize, z: usize) -> bool {
        self.cond::<K>(&self.elements[x], &self.elements[y], &self.elements[z])
    }

    /// Solutions of the conjunct with product `p`, filtered by the law. A
    /// linear solution satisfies that conjunct exactly, so `rest` checks
    /// only the other two.
    #[inline(always)]
    fn solve_k<K: Kernel>(
        &self,
        p: &[i32; MAX_N * MAX_N],
        rest: impl Fn(usize) -> bool,
        full: impl Fn(usize) -> bool,
    ) -> Vec<usize> {
        if self.arith.linear {
            return match self.solve_linear(p).and_then(|z| self.lookup(&z)) {
                Some(x) if rest(x) => vec![x],
                _ => Vec::new(),
            };
        }
        self.filtered(self.column_search::<K>(p), full)
    }

    fn solve_last_k<K: Kernel>(&self, a: usize, b: usize) -> Vec<usize> {
        let p = self.product::<K>(&self.elements[a], &self.elements[b]);
        self.solve_k::<K>(
            &p,
            |x| self.cond_at::<K>(b, x, a) && self.cond_at::<K>(x, a, b),
            |x| self.law_k::<K>(a, b, x),
        )
    }

    fn solve_first_k<K: Kernel>(&self, b: usize, c: usize) -> Vec<usize> {
        let p = self.product::<K>(&self.elements[b], &self.elements[c]);
        self.solve_k::<K>(
            &p,
            |x| self.cond_at::<K>(x, b, c) && self.cond_at::<K>(c, x, b),
            |x| self.law_k::<K>(x, b, c),
        )
    }

    fn solve_middle_k<K: Kernel>(&self, a: usize, c: usize) -> Vec<usize> {
        let p = self.product::<K>(&self.elements[c], &self.elements[a]);
        self.solve_k::<K>(
            &p,
            |x| self.cond_at::<K>(a, x, c) && self.cond_at::<K>(x, c, a),
            |x| self.law_k::<K>(a, x, c),
        )
    }

    fn filtered(&self, cands: Vec<Mat>, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        let mut out: Vec<usize> = cands
            .iter()
            .filter_map(|z| self.lookup(z))
            .filter(|&x| keep(x))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn search_last_k<K: Kernel>(&self, a: usize, b: usize) -> Vec<usize> {
        let p = self.product::<K>(&self.elements[a], &self.elements[b]);
        self.filtered(self.column_search::<K>(&p), |x| self.law_k::<K>(a, b, x))
    }

    #[doc(hidden)]
    pub fn solve_last_by_search(&self, a: usize, b: usize) -> Vec<usize> {
        dispatch!(self, search_last_k(a, b))
    }

    /// Whether the law is evaluated through linear algebra instead of search.
    pub fn uses_linear_solver(&self) -> bool {
        self.arith.linear
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::SizeLimit(format!("n = {n} outside 1..={MAX_N}")));
    }
    Ok(())
}

fn decode(mut idx: usize, size: usize, n: usize) -> Mat {
    let mut m = [0u8; MAX_N * MAX_N];
    for x in m[..n * n].iter_mut().rev() {
        *x = (idx % size) as u8;
        idx /= size;
    }
    m
}

fn encode(m: &Mat, size: usize, n: usize) -> usize {
    m[..n * n].iter().fold(0, |acc, x| acc * size + *x as usize)
}

fn det_null(ar: &FiniteArith, perms: &[(Vec<usize>, bool)], m: &Mat, n: usize) -> bool {
    let mut acc = 0;
    for (p, odd) in perms {
        let mut prod = ar.one;
        for k in 0..n {
            prod = ar.mul(prod, m[k * n + p[k]]);
        }
        if *odd {
            prod = ar.neg[prod as usize];
        }
        acc = ar.term(acc, prod);
    }
    ar.null(ar.term(acc, ar.minus_one))
}

/// Determinant and adjugate of the `n x n` matrix `m` over a commutative ring.
#[allow(clippy::too_many_arguments)]
#[inline]
fn adjugate<T: Copy + Default>(
    n: usize,
    perms: &[(Vec<usize>, bool)],
    minor_perms: &[(Vec<usize>, bool)],
    m: impl Fn(usize, usize) -> T,
    zero: T,
    one: T,
    add: impl Fn(T, T) -> T,
    mul: impl Fn(T, T) -> T,
    neg: impl Fn(T) -> T,
) -> (T, [T; MAX_N * MAX_N]) {
    let mut det = zero;
    for (p, odd) in perms {
        let mut t = one;
        for k in 0..n {
            t = mul(t, m(k, p[k]));
        }
        det = add(det, if *odd { neg(t) } else { t });
    }
    let mut adj = [T::default(); MAX_N * MAX_N];
    let mut rows = [0usize; MAX_N];
    let mut cols = [0usize; MAX_N];
    for i in 0..n {
        for j in 0..n {
            // adj_ij = (-1)^(i+j) det of m without row j and column i
            let mut r = 0;
            for k in (0..n).filter(|k| *k != j) {
                rows[r] = k;
                r += 1;
            }
            let mut c = 0;
            for k in (0..n).filter(|k| *k != i) {
                cols[c] = k;
                c += 1;
            }
            let mut d = zero;
            for (p, odd) in minor_perms {
                let mut t = one;
                for k in 0..n - 1 {
                    t = mul(t, m(rows[k], cols[p[k]]));
                }
                d = add(d, if *odd { neg(t) } else { t });
            }
            adj[i * n + j] = if (i + j) % 2 == 0 { d } else { neg(d) };
        }
    }
    (det, adj)
}

impl Crowd for SlCrowd {
    fn size(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn law(&self, a: usize, b: usize, c: usize) -> bool {
        dispatch!(self, law_k(a, b, c))
    }

    fn solve_last(&self, a: usize, b: usize) -> Vec<usize> {
        dispatch!(self, solve_last_k(a, b))
    }

    fn solve_first(&self, b: usize, c: usize) -> Vec<usize> {
        dispatch!(self, solve_first_k(b, c))
    }

    fn solve_middle(&self, a: usize, c: usize) -> Vec<usize> {
        dispatch!(self, solve_middle_k(a, c))
    }

    fn label(&self, i: usize) -> String {
        self.matrix(i).to_string()
    }

    fn element_json(&self, i: usize) -> Value {
        self.matrix(i).to_json()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Gf;

    fn m(band: &Band, text: &str) -> BandMatrix {
        BandMatrix::parse(band, text, None).unwrap()
    }

    #[test]
    fn det_formal_examples() {
        let k = Band::krasner();
        assert_eq!(
            det_formal(&k, &BandMatrix::identity(&k, 3)),
            [Element::ONE].into_iter().collect()
        );
        let f = Band::fpm();
        assert_eq!(
            det_formal(&f, &BandMatrix::ones(&f, 2)),
            [Element::ONE, Element::MINUS_ONE].into_iter().collect()
        );
        let t = Band::tropical();
        let four = Element::rational(4, 1);
        assert_eq!(
            det_formal(&t, &m(&t, "[[\"2\",\"2\"],[\"2\",\"2\"]]")),
            [four, four].into_iter().collect()
        );
    }

    #[test]
    fn sl_sizes() {
        for (band, n, size) in [
            (Band::fpm(), 2, 20),
            (Band::krasner(), 2, 7),
            (Band::krasner(), 3, 247),
            (Band::field(2).unwrap(), 2, 6),
            (Band::field(2).unwrap(), 3, 168),
            (Band::field(3).unwrap(), 2, 24),
        ] {
            assert_eq!(SlCrowd::build(&band, n).unwrap().size(), size, "{band} n={n}");
        }
    }

    #[test]
    fn tropical_bands_are_membership_only() {
        let t = SpecialLinear::new(Band::tropical(), 2);
        assert!(matches!(t.enumerate(), Err(Error::InfiniteBand(_))));
        let ot = Band::tropical_integers();
        let a = m(&ot, "[[\"1\",\"1/2\"],[\"1/2\",\"1\"]]");
        assert!(SpecialLinear::new(ot, 2).contains(&a));
    }

    #[test]
    fn tropical_closed_form() {
        let t = Band::tropical();
        let cases = [
            ("2 2;2 2", true),
            ("1 0;0 1", true),
            ("1/2 0;0 1/2", false),
        ];
        for (text, member) in cases {
            let (null, branch) = sl2_tropical_member(&m(&t, text)).unwrap();
            assert_eq!(null, member, "{text}");
            assert_eq!(branch.is_some(), member, "{text}");
        }
    }

    #[test]
    fn fpm_inverses_and_empty_product() {
        let f = Band::fpm();
        let g = SlCrowd::build(&f, 2).unwrap();
        for i in 0..g.size() {
            let a = g.matrix(i);
            let (p, q, r, s) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
            let expected = BandMatrix::from_rows(&f, vec![vec![s, f.negate(q)], vec![f.negate(r), p]])
                .unwrap();
            assert_eq!(inverse_set(&g, i), vec![g.index_of(&expected).unwrap()]);
        }
        let u = g.index_of(&m(&f, "11;01")).unwrap();
        assert!(product_set(&g, u, u).is_empty());
    }

    #[test]
    fn linear_solver_matches_column_search() {
        for band in [Band::fpm(), Band::field(3).unwrap(), Band::field(4).unwrap()] {
            let g = SlCrowd::build(&band, 2).unwrap();
            assert!(g.uses_linear_solver());
            for a in 0..g.size() {
                for b in 0..g.size() {
                    assert_eq!(g.solve_last(a, b), g.solve_last_by_search(a, b));
                }
            }
        }
        let g = SlCrowd::build(&Band::fpm(), 3).unwrap();
        for a in (0..g.size()).step_by(97) {
            for b in (0..g.size()).step_by(89) {
                assert_eq!(g.solve_last(a, b), g.solve_last_by_search(a, b));
            }
        }
    }

    #[test]
    fn solvers_match_brute_force_on_krasner() {
        let g = SlCrowd::build(&Band::krasner(), 2).unwrap();
        let n = g.size();
        for a in 0..n {
            for b in 0..n {
                let brute: Vec<usize> = (0..n).filter(|&x| g.law(a, b, x)).collect();
                assert_eq!(g.solve_last(a, b), brute);
                let brute: Vec<usize> = (0..n).filter(|&x| g.law(x, a, b)).collect();
                assert_eq!(g.solve_first(a, b), brute);
                let brute: Vec<usize> = (0..n).filter(|&x| g.law(a, x, b)).collect();
                assert_eq!(g.solve_middle(a, b), brute);
            }
        }
    }

    #[test]
    fn element_law_matches_table_law() {
        let band = Band::krasner();
        let g = SlCrowd::build(&band, 2).unwrap();
        let mats = g.matrices();
        for a in 0..g.size() {
            for b in 0..g.size() {
                for c in 0..g.size() {
                    assert_eq!(g.law(a, b, c), sl_law(&band, &mats[a], &mats[b], &mats[c]));
                }
            }
        }
    }

    #[test]
    fn axioms_of_small_crowds() {
        let opts = AxiomOptions {
            symmetric: true,
            extra: true,
        };
        let k2 = SlCrowd::build(&Band::krasner(), 2).unwrap();
        let rep = check_crowd_axioms(&k2, opts);
        assert!(rep.is_crowd());
        assert_eq!(rep.c4, Some(true));
        assert_eq!(rep.symmetric_agrees(), Some(true));

        let f3 = SlCrowd::build(&Band::field(3).unwrap(), 2).unwrap();
        let rep = check_crowd_axioms(&f3, opts);
        assert!(rep.is_crowd());
        assert_eq!(rep.c6, Some(false));
        assert!(rep.counterexample.contains_key("C6"));

        let free = FreeCrowd { size: 2 };
        let rep = check_crowd_axioms(&free, opts);
        assert!(rep.is_crowd());
        assert_eq!(rep.c4, Some(false));
    }

    #[test]
    fn lemma_on_inverses_and_products() {
        for band in [Band::krasner(), Band::fpm(), Band::field(2).unwrap()] {
            let g = SlCrowd::build(&band, 2).unwrap();
            let e = g.identity();
            assert_eq!(inverse_set(&g, e), vec![e]);
            for a in 0..g.size() {
                if a != e {
                    assert!(!inverse_set(&g, a).contains(&e));
                }
                for b in 0..g.size() {
                    assert_eq!(
                        product_set(&g, a, b).contains(&e),
                        inverse_set(&g, a).contains(&b)
                    );
                }
            }
        }
    }

    #[test]
    fn group_recognition() {
        let f3 = SlCrowd::build(&Band::field(3).unwrap(), 2).unwrap();
        let table = group_from_crowd(&f3).unwrap();
        assert_eq!(table.order, 24);
        assert!(!table.is_abelian());

        let k2 = SlCrowd::build(&Band::krasner(), 2).unwrap();
        assert!(matches!(
            group_from_crowd(&k2),
            Err(Error::ConditionsFail { .. })
        ));

        let mono = SlCrowd::monomial(&Band::krasner(), 3).unwrap();
        assert_eq!(group_from_crowd(&mono).unwrap().order, 6);
    }

    #[test]
    fn monomial_sizes() {
        assert_eq!(SlCrowd::monomial(&Band::krasner(), 3).unwrap().size(), 6);
        assert_eq!(SlCrowd::monomial(&Band::fpm(), 2).unwrap().size(), 4);
        // diag(a, a^-1) and antidiag(b, -b^-1) over F3
        assert_eq!(SlCrowd::monomial(&Band::field(3).unwrap(), 2).unwrap().size(), 4);
    }

    #[test]
    fn group_table_matches_matrix_multiplication() {
        let band = Band::field(3).unwrap();
        let gf = Gf::new(3).unwrap();
        let g = SlCrowd::build(&band, 2).unwrap();
        let table = group_from_crowd(&g).unwrap();
        let codes = |a: &BandMatrix| -> Vec<Vec<u8>> {
            a.rows()
                .iter()
                .map(|r| r.iter().map(|x| code_of(*x)).collect())
                .collect()
        };
        for a in 0..g.size() {
            for b in 0..g.size() {
                let prod = gf.mat_mul(&codes(&g.matrix(a)), &codes(&g.matrix(b)));
                assert_eq!(codes(&g.matrix(table.mul(a, b))), prod);
            }
        }
    }

    #[test]
    fn parse_forms_agree() {
        let f = Band::fpm();
        let a = m(&f, "[[\"1\",\"-1\"],[\"0\",\"1\"]]");
        assert_eq!(a, m(&f, "1 -1; 0 1"));
        assert_eq!(a, m(&f, "1-;01"));
        assert_eq!(a.to_string(), "[[1,-1],[0,1]]");
        assert_eq!(
            BandMatrix::parse(&f, "ones", Some(2)).unwrap(),
            BandMatrix::ones(&f, 2)
        );
    }
}
