//! Built-in bands: pointed monoids with a decidable null set on formal sums.
//!
//! Five kinds are supported: the regular partial field `F±1 = {0, 1, -1}`,
//! the Krasner hyperfield `K = {0, 1}`, finite fields `F_q` with `q <= 9`,
//! the tropical hyperfield `T` (nonnegative rationals) and the tropical
//! integers `O_T = T ∩ [0, 1]`.
//!
//! Null-set membership is decided through a [`NullAcc`], a small summary of a
//! formal sum that is enough to answer "is this sum null?" and that can be
//! scaled by a band element and merged with another summary. Every operation
//! that tests many sums (Plücker relations, matrix products) works on these
//! summaries instead of materializing the sums.
//!
//! Non-prime fields are built from fixed irreducible polynomials:
//! `GF(4) = F_2[x]/(x^2+x+1)`, `GF(8) = F_2[x]/(x^3+x+1)` and
//! `GF(9) = F_3[x]/(x^2+1)`. An element is printed as the integer
//! `c_0 + c_1 p + c_2 p^2` of its coefficient vector.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of one of the built-in bands.
///
/// Finite bands store small integers: `{0, 1}` for `K`, `{0, 1, -1}` for
/// `F±1` and the code `0..q` for `F_q`. The tropical bands store exact
/// nonnegative rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Int(i8),
    Rat(Ratio<u64>),
}

impl Element {
    pub const ZERO: Element = Element::Int(0);
    pub const ONE: Element = Element::Int(1);
    pub const MINUS_ONE: Element = Element::Int(-1);

    pub fn rational(numer: u64, denom: u64) -> Element {
        Element::Rat(Ratio::new(numer, denom))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Int(v) => *v == 0,
            Element::Rat(r) => r.is_zero(),
        }
    }

    fn order_key(&self) -> (u8, u8, Ratio<u64>) {
        match self {
            // 0 < 1 < 2 < ... < -1
            Element::Int(v) => (0, *v as u8, Ratio::zero()),
            Element::Rat(r) => (1, 0, *r),
        }
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(v) => write!(f, "{v}"),
            Element::Rat(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Element::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BandKind {
    /// The regular partial field `F±1`.
    Fpm,
    Krasner,
    /// The finite field with `q` elements.
    Fq(u8),
    Tropical,
    TropicalIntegers,
}

impl BandKind {
    pub fn name(&self) -> &'static str {
        match self {
            BandKind::Fpm => "fpm",
            BandKind::Krasner => "krasner",
            BandKind::Fq(_) => "fq",
            BandKind::Tropical => "tropical",
            BandKind::TropicalIntegers => "tropical_integers",
        }
    }
}

impl fmt::Display for BandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BandKind::Fpm => write!(f, "F±1"),
            BandKind::Krasner => write!(f, "K"),
            BandKind::Fq(q) => write!(f, "F{q}"),
            BandKind::Tropical => write!(f, "T"),
            BandKind::TropicalIntegers => write!(f, "O_T"),
        }
    }
}

impl FromStr for BandKind {
    type Err = Error;

    /// Accepts `fpm`, `krasner`, `tropical`, `tropical_integers` and `f<q>`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "fpm" | "f1" | "f±1" => Ok(BandKind::Fpm),
            "krasner" | "k" => Ok(BandKind::Krasner),
            "tropical" | "t" => Ok(BandKind::Tropical),
            "tropical_integers" | "tropical-integers" | "ot" | "o_t" => {
                Ok(BandKind::TropicalIntegers)
            }
            _ => {
                let digits = lower.strip_prefix('f').unwrap_or(&lower);
                let q: u32 = digits
                    .parse()
                    .map_err(|_| Error::UnknownBand(s.to_string()))?;
                if field_shape(q).is_none() {
                    return Err(Error::UnsupportedField(q));
                }
                Ok(BandKind::Fq(q as u8))
            }
        }
    }
}

/// JSON form of a band: `{"kind": "fq", "q": 4}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandSpec {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u32>,
}

/// `(p, k)` with `q = p^k` for the supported field sizes.
fn field_shape(q: u32) -> Option<(u8, u32)> {
    match q {
        2 | 3 | 5 | 7 => Some((q as u8, 1)),
        4 => Some((2, 2)),
        8 => Some((2, 3)),
        9 => Some((3, 2)),
        _ => None,
    }
}

/// Lower coefficients of the monic modulus, `x^k = -(c_0 + c_1 x + ...)`.
fn modulus(q: u32) -> &'static [u8] {
    match q {
        4 => &[1, 1],
        8 => &[1, 1, 0],
        9 => &[1, 0],
        _ => &[],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct FiniteTables {
    size: usize,
    mul: Vec<i8>,
    neg: Vec<i8>,
    /// Field addition; absent for `K` and `F±1`.
    add: Option<Vec<i8>>,
}

impl FiniteTables {
    fn krasner() -> Self {
        FiniteTables {
            size: 2,
            mul: vec![0, 0, 0, 1],
            neg: vec![0, 1],
            add: None,
        }
    }

    fn fpm() -> Self {
        // codes: 0 -> 0, 1 -> 1, 2 -> -1
        FiniteTables {
            size: 3,
            mul: vec![0, 0, 0, 0, 1, -1, 0, -1, 1],
            neg: vec![0, -1, 1],
            add: None,
        }
    }

    fn field(q: u32) -> Result<Self> {
        let (p, k) = field_shape(q).ok_or(Error::UnsupportedField(q))?;
        let size = q as usize;
        let p = p as usize;
        let digits = |mut c: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect()
        };
        let encode = |ds: &[usize]| ds.iter().rev().fold(0, |acc, d| acc * p + d);
        let modulus = modulus(q);
        let mut add = vec![0i8; size * size];
        let mut mul = vec![0i8; size * size];
        for x in 0..size {
            for y in 0..size {
                let (dx, dy) = (digits(x), digits(y));
                let sum: Vec<usize> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[x * size + y] = encode(&sum) as i8;

                let mut prod = vec![0usize; 2 * k as usize];
                for (i, a) in dx.iter().enumerate() {
                    for (j, b) in dy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                for deg in (k as usize..prod.len()).rev() {
                    let top = prod[deg];
                    if top == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, c) in modulus.iter().enumerate() {
                        let shift = deg - k as usize + i;
                        prod[shift] = (prod[shift] + p * p - top * (*c as usize) % p) % p;
                    }
                }
                mul[x * size + y] = encode(&prod[..k as usize]) as i8;
            }
        }
        let neg = (0..size)
            .map(|x| (0..size).find(|&y| add[x * size + y] == 0).unwrap() as i8)
            .collect();
        Ok(FiniteTables {
            size,
            mul,
            neg,
            add: Some(add),
        })
    }
}

/// Running summary of a formal sum, sufficient to decide null-set membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NullAcc {
    /// Number of nonzero terms, saturated at 2.
    Krasner(u8),
    /// `#(1) - #(-1)`.
    Signed(i64),
    /// Field sum, as an element code.
    Field(i8),
    /// Largest term and whether it occurs at least twice. `max = 0` means no
    /// positive term has been seen.
    Tropical { max: Ratio<u64>, repeated: bool },
}

/// Set of units of a band.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Units {
    Finite(Vec<Element>),
    /// All positive rationals (the unit group of `T`).
    PositiveRationals,
}

/// A built-in band.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Band {
    kind: BandKind,
    tables: Option<Arc<FiniteTables>>,
}

impl Band {
    pub fn new(kind: BandKind) -> Result<Self> {
        let tables = match kind {
            BandKind::Krasner => Some(FiniteTables::krasner()),
            BandKind::Fpm => Some(FiniteTables::fpm()),
            BandKind::Fq(q) => Some(FiniteTables::field(q as u32)?),
            BandKind::Tropical | BandKind::TropicalIntegers => None,
        };
        Ok(Band {
            kind,
            tables: tables.map(Arc::new),
        })
    }

    pub fn krasner() -> Self {
        Band::new(BandKind::Krasner).unwrap()
    }

    pub fn fpm() -> Self {
        Band::new(BandKind::Fpm).unwrap()
    }

    pub fn field(q: u32) -> Result<Self> {
        field_shape(q).ok_or(Error::UnsupportedField(q))?;
        Band::new(BandKind::Fq(q as u8))
    }

    pub fn tropical() -> Self {
        Band::new(BandKind::Tropical).unwrap()
    }

    pub fn tropical_integers() -> Self {
        Band::new(BandKind::TropicalIntegers).unwrap()
    }

    pub fn from_spec(spec: &BandSpec) -> Result<Self> {
        match spec.kind.as_str() {
            "fq" => {
                let q = spec
                    .q
                    .ok_or_else(|| Error::InvalidArgument("band kind fq needs q".into()))?;
                Band::field(q)
            }
            other => Band::new(other.parse()?),
        }
    }

    pub fn spec(&self) -> BandSpec {
        BandSpec {
            kind: self.kind.name().to_string(),
            q: match self.kind {
                BandKind::Fq(q) => Some(q as u32),
                _ => None,
            },
        }
    }

    pub fn kind(&self) -> BandKind {
        self.kind
    }

    pub fn is_finite(&self) -> bool {
        self.tables.is_some()
    }

    pub fn is_field(&self) -> bool {
        matches!(self.kind, BandKind::Fq(_))
    }

    /// Number of elements, for finite bands.
    pub fn order(&self) -> Option<usize> {
        self.tables.as_ref().map(|t| t.size)
    }

    pub fn zero(&self) -> Element {
        match self.kind {
            BandKind::Tropical | BandKind::TropicalIntegers => Element::Rat(Ratio::zero()),
            _ => Element::ZERO,
        }
    }

    pub fn one(&self) -> Element {
        match self.kind {
            BandKind::Tropical | BandKind::TropicalIntegers => Element::Rat(Ratio::one()),
            _ => Element::ONE,
        }
    }

    /// `-1`, the additive inverse of the unit.
    pub fn minus_one(&self) -> Element {
        self.negate(self.one())
    }

    /// All elements in the fixed element order, or `None` for the tropical bands.
    pub fn elements(&self) -> Option<Vec<Element>> {
        let tables = self.tables.as_ref()?;
        let mut out: Vec<Element> = (0..tables.size).map(|c| self.decode(c)).collect();
        out.sort();
        Some(out)
    }

    pub fn nonzero_elements(&self) -> Option<Vec<Element>> {
        self.elements()
            .map(|es| es.into_iter().filter(|e| !e.is_zero()).collect())
    }

    pub fn contains(&self, x: &Element) -> bool {
        match (self.kind, x) {
            (BandKind::Krasner, Element::Int(v)) => (0..=1).contains(v),
            (BandKind::Fpm, Element::Int(v)) => (-1..=1).contains(v),
            (BandKind::Fq(q), Element::Int(v)) => *v >= 0 && (*v as u8) < q,
            (BandKind::Tropical, Element::Rat(_)) => true,
            (BandKind::TropicalIntegers, Element::Rat(r)) => *r <= Ratio::one(),
            _ => false,
        }
    }

    fn check(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInBand {
                element: x.to_string(),
                band: self.kind.to_string(),
            })
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        let x = match self.kind {
            BandKind::Tropical | BandKind::TropicalIntegers => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let n: u64 = n.parse().map_err(|_| Error::ParseElement(s.into()))?;
                let d: u64 = d.parse().map_err(|_| Error::ParseElement(s.into()))?;
                if d == 0 {
                    return Err(Error::ParseElement(s.into()));
                }
                Element::Rat(Ratio::new(n, d))
            }
            _ => Element::Int(s.parse().map_err(|_| Error::ParseElement(s.into()))?),
        };
        self.check(&x)?;
        Ok(x)
    }

    #[inline]
    fn code(&self, x: Element) -> usize {
        match x {
            Element::Int(v) if v < 0 => 2,
            Element::Int(v) => v as usize,
            Element::Rat(_) => unreachable!("rational element in a finite band"),
        }
    }

    #[inline]
    fn decode(&self, code: usize) -> Element {
        match self.kind {
            BandKind::Fpm if code == 2 => Element::MINUS_ONE,
            _ => Element::Int(code as i8),
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.times(*x, *y))
    }

    /// Multiplication without membership checks.
    #[inline]
    pub fn times(&self, x: Element, y: Element) -> Element {
        match &self.tables {
            Some(t) => Element::Int(t.mul[self.code(x) * t.size + self.code(y)]),
            None => match (x, y) {
                (Element::Rat(a), Element::Rat(b)) => Element::Rat(a * b),
                _ => unreachable!("integer element in a tropical band"),
            },
        }
    }

    pub fn neg(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(self.negate(*x))
    }

    /// Additive inverse without membership checks.
    #[inline]
    pub fn negate(&self, x: Element) -> Element {
        match &self.tables {
            Some(t) => Element::Int(t.neg[self.code(x)]),
            // {a, a} is null in T, so -a = a.
            None => x,
        }
    }

    /// Field addition; `None` unless the band is a finite field.
    pub fn field_add(&self, x: Element, y: Element) -> Option<Element> {
        let t = self.tables.as_ref()?;
        let add = t.add.as_ref()?;
        Some(Element::Int(add[self.code(x) * t.size + self.code(y)]))
    }

    /// Multiplicative inverse, if `x` is a unit.
    pub fn inverse(&self, x: Element) -> Option<Element> {
        match (&self.tables, x) {
            (Some(_), _) => self
                .nonzero_elements()?
                .into_iter()
                .find(|y| self.times(x, *y) == self.one()),
            (None, Element::Rat(r)) if r.is_zero() => None,
            (None, Element::Rat(r)) => {
                let inv = r.recip();
                self.contains(&Element::Rat(inv)).then_some(Element::Rat(inv))
            }
            _ => None,
        }
    }

    pub fn units(&self) -> Units {
        match self.kind {
            BandKind::Tropical => Units::PositiveRationals,
            BandKind::TropicalIntegers => Units::Finite(vec![self.one()]),
            _ => Units::Finite(
                self.nonzero_elements()
                    .unwrap()
                    .into_iter()
                    .filter(|x| self.inverse(*x).is_some())
                    .collect(),
            ),
        }
    }

    /// Finite unit group; `None` for `T`.
    pub fn finite_units(&self) -> Option<Vec<Element>> {
        match self.units() {
            Units::Finite(us) => Some(us),
            Units::PositiveRationals => None,
        }
    }

    pub fn is_unit(&self, x: &Element) -> bool {
        match self.units() {
            Units::Finite(us) => us.contains(x),
            Units::PositiveRationals => !x.is_zero(),
        }
    }

    pub fn acc(&self) -> NullAcc {
        match self.kind {
            BandKind::Krasner => NullAcc::Krasner(0),
            BandKind::Fpm => NullAcc::Signed(0),
            BandKind::Fq(_) => NullAcc::Field(0),
            BandKind::Tropical | BandKind::TropicalIntegers => NullAcc::Tropical {
                max: Ratio::zero(),
                repeated: false,
            },
        }
    }

    /// Adds one term to a running summary.
    #[inline]
    pub fn acc_add(&self, acc: &mut NullAcc, x: Element) {
        match (acc, x) {
            (NullAcc::Krasner(c), Element::Int(v)) => {
                if v != 0 {
                    *c = (*c + 1).min(2)
                }
            }
            (NullAcc::Signed(s), Element::Int(v)) => *s += v as i64,
            (NullAcc::Field(s), Element::Int(v)) => {
                let t = self.tables.as_ref().unwrap();
                *s = t.add.as_ref().unwrap()[*s as usize * t.size + v as usize];
            }
            (NullAcc::Tropical { max, repeated }, Element::Rat(r)) => {
                if r.is_zero() {
                    return;
                }
                match r.cmp(max) {
                    Ordering::Greater => {
                        *max = r;
                        *repeated = false;
                    }
                    Ordering::Equal => *repeated = true,
                    Ordering::Less => {}
                }
            }
            _ => unreachable!("element does not match the band"),
        }
    }

    /// Summary of `{x * s : s in S}` given the summary of `S`.
    #[inline]
    pub fn acc_scale(&self, acc: NullAcc, x: Element) -> NullAcc {
        if x.is_zero() {
            return self.acc();
        }
        match (acc, x) {
            (NullAcc::Krasner(c), _) => NullAcc::Krasner(c),
            (NullAcc::Signed(s), Element::Int(v)) => NullAcc::Signed(s * v as i64),
            (NullAcc::Field(s), _) => NullAcc::Field(match self.times(Element::Int(s), x) {
                Element::Int(v) => v,
                _ => unreachable!(),
            }),
            (NullAcc::Tropical { max, repeated }, Element::Rat(r)) => NullAcc::Tropical {
                max: max * r,
                repeated,
            },
            _ => unreachable!("element does not match the band"),
        }
    }

    /// Summary of the disjoint union of two formal sums.
    #[inline]
    pub fn acc_merge(&self, a: NullAcc, b: NullAcc) -> NullAcc {
        match (a, b) {
            (NullAcc::Krasner(x), NullAcc::Krasner(y)) => NullAcc::Krasner((x + y).min(2)),
            (NullAcc::Signed(x), NullAcc::Signed(y)) => NullAcc::Signed(x + y),
            (NullAcc::Field(x), NullAcc::Field(y)) => {
                let mut acc = NullAcc::Field(x);
                self.acc_add(&mut acc, Element::Int(y));
                acc
            }
            (
                NullAcc::Tropical {
                    max: m1,
                    repeated: r1,
                },
                NullAcc::Tropical {
                    max: m2,
                    repeated: r2,
                },
            ) => match m1.cmp(&m2) {
                Ordering::Greater => a,
                Ordering::Less => b,
                Ordering::Equal => NullAcc::Tropical {
                    max: m1,
                    repeated: r1 || r2 || !m1.is_zero(),
                },
            },
            _ => unreachable!("summaries from different bands"),
        }
    }

    #[inline]
    pub fn acc_is_null(&self, acc: &NullAcc) -> bool {
        match acc {
            NullAcc::Krasner(c) => *c != 1,
            NullAcc::Signed(s) => *s == 0,
            NullAcc::Field(s) => *s == 0,
            NullAcc::Tropical { max, repeated } => max.is_zero() || *repeated,
        }
    }

    /// Decides `s ∈ N_B`.
    pub fn is_null(&self, s: &FormalSum) -> Result<bool> {
        for x in s.terms() {
            self.check(x)?;
        }
        Ok(self.is_null_unchecked(s.terms().iter().copied()))
    }

    pub fn is_null_unchecked(&self, terms: impl IntoIterator<Item = Element>) -> bool {
        let mut acc = self.acc();
        for x in terms {
            self.acc_add(&mut acc, x);
        }
        self.acc_is_null(&acc)
    }

    /// Overwrites one entry of the multiplication table. Only used to check
    /// that the verification suite notices a broken band.
    #[doc(hidden)]
    pub fn tampered(&self, x: Element, y: Element, product: Element) -> Band {
        let mut tables = (**self.tables.as_ref().expect("finite band")).clone();
        let (cx, cy) = (self.code(x), self.code(y));
        let v = match product {
            Element::Int(v) => v,
            Element::Rat(_) => panic!("rational product in a finite band"),
        };
        tables.mul[cx * tables.size + cy] = v;
        tables.mul[cy * tables.size + cx] = v;
        Band {
            kind: self.kind,
            tables: Some(Arc::new(tables)),
        }
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

/// A finite multiset of band elements; zero terms are dropped on insertion.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalSum {
    terms: Vec<Element>,
}

impl FormalSum {
    pub fn new() -> Self {
        FormalSum::default()
    }

    pub fn push(&mut self, x: Element) {
        if !x.is_zero() {
            let at = self.terms.partition_point(|t| t < &x);
            self.terms.insert(at, x);
        }
    }

    pub fn terms(&self) -> &[Element] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiset union.
    pub fn union(&self, other: &FormalSum) -> FormalSum {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        terms.sort();
        FormalSum { terms }
    }

    pub fn scaled(&self, band: &Band, x: Element) -> FormalSum {
        self.terms.iter().map(|t| band.times(x, *t)).collect()
    }
}

impl FromIterator<Element> for FormalSum {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        let mut terms: Vec<Element> = iter.into_iter().filter(|x| !x.is_zero()).collect();
        terms.sort();
        FormalSum { terms }
    }
}

impl Serialize for FormalSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.terms.serialize(s)
    }
}

/// A map between two bands, given on the elements of a finite source.
#[derive(Clone, Debug)]
pub struct BandMorphism {
    source: Band,
    target: Band,
    image: Vec<(Element, Element)>,
}

impl BandMorphism {
    pub fn new(source: Band, target: Band, image: Vec<(Element, Element)>) -> Result<Self> {
        let elements = source
            .elements()
            .ok_or(Error::InfiniteBand(source.kind()))?;
        for x in &elements {
            let y = image
                .iter()
                .find(|(a, _)| a == x)
                .map(|(_, b)| b)
                .ok_or_else(|| Error::InvalidMorphism(format!("no image for {x}")))?;
            target.check(y)?;
        }
        Ok(BandMorphism {
            source,
            target,
            image,
        })
    }

    pub fn identity(band: &Band) -> Result<Self> {
        let elements = band.elements().ok_or(Error::InfiniteBand(band.kind()))?;
        BandMorphism::new(
            band.clone(),
            band.clone(),
            elements.into_iter().map(|x| (x, x)).collect(),
        )
    }

    /// The map `t: B -> K` sending every nonzero element to 1.
    pub fn to_krasner(source: &Band) -> Result<Self> {
        let elements = source.elements().ok_or(Error::InfiniteBand(source.kind()))?;
        BandMorphism::new(
            source.clone(),
            Band::krasner(),
            elements
                .into_iter()
                .map(|x| (x, if x.is_zero() { Element::ZERO } else { Element::ONE }))
                .collect(),
        )
    }

    pub fn source(&self) -> &Band {
        &self.source
    }

    pub fn target(&self) -> &Band {
        &self.target
    }

    pub fn apply(&self, x: Element) -> Element {
        self.image
            .iter()
            .find(|(a, _)| *a == x)
            .map(|(_, b)| *b)
            .expect("element of the source band")
    }
}

/// Checks that `f` is a band morphism, testing null preservation on every
/// formal sum with at most `max_terms` nonzero terms.
pub fn check_morphism_bounded(f: &BandMorphism, max_terms: usize) -> bool {
    let (src, tgt) = (&f.source, &f.target);
    if f.apply(src.zero()) != tgt.zero() || f.apply(src.one()) != tgt.one() {
        return false;
    }
    let elements = src.elements().unwrap();
    for x in &elements {
        for y in &elements {
            if f.apply(src.times(*x, *y)) != tgt.times(f.apply(*x), f.apply(*y)) {
                return false;
            }
        }
    }
    let nonzero = src.nonzero_elements().unwrap();
    let mut ok = true;
    for_each_multiset(&nonzero, max_terms, &mut |terms| {
        if ok
            && src.is_null_unchecked(terms.iter().copied())
            && !tgt.is_null_unchecked(terms.iter().map(|x| f.apply(*x)))
        {
            ok = false;
        }
    });
    ok
}

/// [`check_morphism_bounded`] with the default bound of four terms.
pub fn check_morphism(f: &BandMorphism) -> bool {
    check_morphism_bounded(f, 4)
}

/// Calls `visit` on every multiset of size `0..=max_len` over `items`.
pub fn for_each_multiset<T: Copy>(items: &[T], max_len: usize, visit: &mut impl FnMut(&[T])) {
    fn rec<T: Copy>(
        items: &[T],
        start: usize,
        left: usize,
        cur: &mut Vec<T>,
        visit: &mut impl FnMut(&[T]),
    ) {
        visit(cur);
        if left == 0 {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, i, left - 1, cur, visit);
            cur.pop();
        }
    }
    rec(items, 0, max_len, &mut Vec::new(), visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(xs: &[Element]) -> FormalSum {
        xs.iter().copied().collect()
    }

    fn r(n: u64, d: u64) -> Element {
        Element::rational(n, d)
    }

    #[test]
    fn krasner_and_fpm_universes() {
        let k = Band::krasner();
        assert_eq!(k.elements().unwrap(), vec![Element::ZERO, Element::ONE]);
        assert_eq!(k.units(), Units::Finite(vec![Element::ONE]));
        let f = Band::fpm();
        assert_eq!(
            f.elements().unwrap(),
            vec![Element::ZERO, Element::ONE, Element::MINUS_ONE]
        );
        assert_eq!(
            f.units(),
            Units::Finite(vec![Element::ONE, Element::MINUS_ONE])
        );
    }

    #[test]
    fn gf4_table_from_x2_x_1() {
        let f4 = Band::field(4).unwrap();
        // x = code 2, x + 1 = code 3; x^2 = x + 1, x^3 = 1
        let x = Element::Int(2);
        assert_eq!(f4.times(x, x), Element::Int(3));
        assert_eq!(f4.times(x, Element::Int(3)), Element::ONE);
        assert!(f4.is_null_unchecked([x, Element::Int(3), Element::ONE]));
        assert_eq!(f4.negate(x), x);
        assert_eq!(f4.units(), Units::Finite((1..4).map(Element::Int).collect()));
    }

    #[test]
    fn gf8_and_gf9_are_fields() {
        for q in [8u32, 9] {
            let f = Band::field(q).unwrap();
            for x in f.nonzero_elements().unwrap() {
                assert!(f.inverse(x).is_some(), "F{q}: {x} has no inverse");
            }
        }
        // GF(9) = F3[x]/(x^2+1): x = code 3, x^2 = -1 = code 2.
        let f9 = Band::field(9).unwrap();
        assert_eq!(f9.times(Element::Int(3), Element::Int(3)), Element::Int(2));
    }

    #[test]
    fn unsupported_fields_are_rejected() {
        assert_eq!(Band::field(6), Err(Error::UnsupportedField(6)));
        assert_eq!(Band::field(11), Err(Error::UnsupportedField(11)));
        assert!(matches!("banana".parse::<BandKind>(), Err(Error::UnknownBand(_))));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(
            Band::krasner().mul(&Element::ONE, &Element::ONE),
            Ok(Element::ONE)
        );
        assert_eq!(
            Band::fpm().mul(&Element::MINUS_ONE, &Element::MINUS_ONE),
            Ok(Element::ONE)
        );
        assert_eq!(Band::tropical().mul(&r(2, 1), &r(3, 2)), Ok(r(3, 1)));
        assert!(matches!(
            Band::krasner().mul(&Element::Int(2), &Element::ONE),
            Err(Error::NotInBand { .. })
        ));
    }

    #[test]
    fn negation_examples() {
        assert_eq!(Band::fpm().neg(&Element::ONE), Ok(Element::MINUS_ONE));
        assert_eq!(Band::krasner().neg(&Element::ONE), Ok(Element::ONE));
        assert_eq!(Band::tropical().neg(&r(5, 1)), Ok(r(5, 1)));
    }

    #[test]
    fn null_set_examples() {
        let k = Band::krasner();
        assert_eq!(k.is_null(&sum(&[Element::ONE, Element::ONE])), Ok(true));
        assert_eq!(k.is_null(&sum(&[Element::ONE])), Ok(false));
        let f = Band::fpm();
        assert_eq!(f.is_null(&sum(&[Element::ONE, Element::MINUS_ONE])), Ok(true));
        assert_eq!(f.is_null(&sum(&[Element::ONE, Element::ONE])), Ok(false));
        let t = Band::tropical();
        assert_eq!(t.is_null(&sum(&[r(3, 1), r(3, 1), r(2, 1)])), Ok(true));
        assert_eq!(t.is_null(&sum(&[r(3, 1), r(2, 1)])), Ok(false));
        let f5 = Band::field(5).unwrap();
        assert_eq!(f5.is_null(&sum(&[Element::Int(2), Element::Int(3)])), Ok(true));
        for b in [k, f, t, f5] {
            assert_eq!(b.is_null(&FormalSum::new()), Ok(true));
        }
    }

    #[test]
    fn tropical_integers_bound_membership() {
        let ot = Band::tropical_integers();
        assert!(ot.contains(&r(1, 2)));
        assert!(!ot.contains(&r(3, 2)));
        assert!(ot.parse_element("3/2").is_err());
        assert_eq!(ot.units(), Units::Finite(vec![r(1, 1)]));
        assert_eq!(Band::tropical().units(), Units::PositiveRationals);
    }

    #[test]
    fn field_units() {
        let f7 = Band::field(7).unwrap();
        assert_eq!(f7.units(), Units::Finite((1..7).map(Element::Int).collect()));
    }

    #[test]
    fn formal_sums_are_multisets() {
        let a = sum(&[Element::ONE, Element::ZERO, Element::MINUS_ONE]);
        let b = sum(&[Element::MINUS_ONE, Element::ONE]);
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
        let mut c = FormalSum::new();
        c.push(Element::MINUS_ONE);
        c.push(Element::ZERO);
        c.push(Element::ONE);
        assert_eq!(c, b);
    }

    #[test]
    fn morphism_examples() {
        let f2 = Band::field(2).unwrap();
        assert!(check_morphism(&BandMorphism::to_krasner(&f2).unwrap()));
        let f3 = Band::field(3).unwrap();
        assert!(check_morphism(&BandMorphism::to_krasner(&f3).unwrap()));
        let g = BandMorphism::new(
            f3.clone(),
            Band::fpm(),
            vec![
                (Element::ZERO, Element::ZERO),
                (Element::ONE, Element::ONE),
                (Element::Int(2), Element::MINUS_ONE),
            ],
        )
        .unwrap();
        assert!(!check_morphism(&g));
        assert!(check_morphism(&BandMorphism::identity(&Band::fpm()).unwrap()));
        // F±1 -> K is the initial morphism composed with t
        assert!(check_morphism(&BandMorphism::to_krasner(&Band::fpm()).unwrap()));
    }

    #[test]
    fn unique_inverse_in_finite_bands() {
        for kind in ["krasner", "fpm", "f2", "f3", "f4", "f5", "f7", "f8", "f9"] {
            let b = Band::new(kind.parse().unwrap()).unwrap();
            let es = b.elements().unwrap();
            for a in &es {
                let inverses: Vec<_> = es
                    .iter()
                    .filter(|x| b.is_null_unchecked([*a, **x]))
                    .collect();
                assert_eq!(inverses, vec![&b.negate(*a)], "{kind}: inverse of {a}");
                assert_eq!(b.negate(b.negate(*a)), *a);
            }
        }
    }

    #[test]
    fn field_null_is_field_sum() {
        for p in [2i64, 3, 5] {
            let b = Band::field(p as u32).unwrap();
            let es = b.nonzero_elements().unwrap();
            for_each_multiset(&es, 4, &mut |terms| {
                let total: i64 = terms
                    .iter()
                    .map(|x| match x {
                        Element::Int(v) => *v as i64,
                        _ => unreachable!(),
                    })
                    .sum();
                assert_eq!(b.is_null_unchecked(terms.iter().copied()), total % p == 0);
            });
        }
    }
}
