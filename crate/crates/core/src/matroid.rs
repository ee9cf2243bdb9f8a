//! Matroids given by their bases, used as an independent check on
//! Grassmannians and flag varieties over `K`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::band::Band;
use crate::error::{Error, Result};
use crate::points::{enumerate_gr, satisfies_incidence};
use crate::subsets::{self, k_subsets, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatroidByBases {
    n: usize,
    r: usize,
    bases: Vec<Subset>,
}

impl MatroidByBases {
    /// Validates the basis-exchange axiom.
    pub fn new(n: usize, r: usize, bases: Vec<Subset>) -> Result<Self> {
        if !is_matroid(n, r, &bases)? {
            return Err(Error::InvalidStructure("basis exchange fails".into()));
        }
        Ok(Self::unchecked(n, r, bases))
    }

    pub(crate) fn unchecked(n: usize, r: usize, mut bases: Vec<Subset>) -> Self {
        bases.sort();
        bases.dedup();
        MatroidByBases { n, r, bases }
    }

    pub fn uniform(r: usize, n: usize) -> Self {
        Self::unchecked(n, r, k_subsets(n, r))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    /// `max |A ∩ B|` over bases `B`.
    pub fn rank_of(&self, a: Subset) -> usize {
        self.bases
            .iter()
            .map(|b| (a & b).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }
}

impl Serialize for MatroidByBases {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            r: usize,
            bases: Vec<String>,
        }
        Repr {
            n: self.n,
            r: self.r,
            bases: self.bases.iter().map(|b| subsets::format(*b)).collect(),
        }
        .serialize(s)
    }
}

pub fn is_matroid(n: usize, r: usize, bases: &[Subset]) -> Result<bool> {
    if bases.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let full = if n >= 32 { u32::MAX } else { (1u32 << n) - 1 };
    if bases
        .iter()
        .any(|b| subsets::size(*b) != r || b & !full != 0)
    {
        return Ok(false);
    }
    let set: BTreeSet<Subset> = bases.iter().copied().collect();
    for b1 in &set {
        for b2 in &set {
            for x in subsets::elements(b1 & !b2) {
                let ok = subsets::elements(b2 & !b1)
                    .any(|y| set.contains(&((b1 & !(1 << x)) | 1 << y)));
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn rank_function(m: &MatroidByBases, a: Subset) -> usize {
    m.rank_of(a)
}

/// Whether `m2` is a quotient of `m1`: `r1(B) - r1(A) >= r2(B) - r2(A)` for
/// all `A ⊆ B`.
pub fn is_quotient(m1: &MatroidByBases, m2: &MatroidByBases) -> Result<bool> {
    if m1.n != m2.n {
        return Err(Error::GroundSetMismatch(m1.n, m2.n));
    }
    let n = m1.n;
    if n > 16 {
        return Err(Error::SizeLimit(format!("quotient check on {n} elements")));
    }
    let r1: Vec<usize> = (0..1u32 << n).map(|s| m1.rank_of(s)).collect();
    let r2: Vec<usize> = (0..1u32 << n).map(|s| m2.rank_of(s)).collect();
    for b in 0..1u32 << n {
        // iterate the subsets A of B
        let mut a = b;
        loop {
            if r1[b as usize] + r2[a as usize] < r2[b as usize] + r1[a as usize] {
                return Ok(false);
            }
            if a == 0 {
                break;
            }
            a = (a - 1) & b;
        }
    }
    Ok(true)
}

/// All matroids of rank `r` on `n` elements, by brute force over basis families.
pub fn all_matroids(r: usize, n: usize) -> Result<Vec<MatroidByBases>> {
    let candidates = k_subsets(n, r);
    if candidates.len() > 20 {
        return Err(Error::SizeLimit(format!("2^{} basis families", candidates.len())));
    }
    let mut out = Vec::new();
    for family in 1u32..1 << candidates.len() {
        let bases: Vec<Subset> = subsets::elements(family).map(|i| candidates[i]).collect();
        if is_matroid(n, r, &bases)? {
            out.push(MatroidByBases::unchecked(n, r, bases));
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub r: usize,
    pub n: usize,
    pub grassmannian_points: usize,
    pub matroids: usize,
    pub equal: bool,
}

/// Compares supports of `Gr(r, n)(K)` with the brute-force matroid list.
#[allow(non_snake_case)]
pub fn grK_bijection_check(r: usize, n: usize) -> Result<BijectionReport> {
    if n > 5 {
        return Err(Error::SizeLimit(format!("n = {n} > 5")));
    }
    let points = enumerate_gr(&Band::krasner(), r, n)?;
    let supports: BTreeSet<MatroidByBases> = points
        .iter()
        .map(|p| MatroidByBases::unchecked(n, r, p.support()))
        .collect();
    let matroids: BTreeSet<MatroidByBases> = all_matroids(r, n)?.into_iter().collect();
    Ok(BijectionReport {
        r,
        n,
        grassmannian_points: points.len(),
        matroids: matroids.len(),
        equal: supports == matroids && supports.len() == points.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagBridgeReport {
    pub r: usize,
    pub r2: usize,
    pub n: usize,
    pub pairs: usize,
    pub incident: usize,
    pub agree: bool,
}

/// For all pairs of `K`-points of ranks `r <= r2`, compares the incidence
/// relations with the matroid quotient test.
pub fn flag_quotient_check(r: usize, r2: usize, n: usize) -> Result<FlagBridgeReport> {
    if r > r2 {
        return Err(Error::RankOrder(r, r2));
    }
    let k = Band::krasner();
    let xs = enumerate_gr(&k, r, n)?;
    let ys = enumerate_gr(&k, r2, n)?;
    let mut incident = 0;
    let mut agree = true;
    for x in &xs {
        let mx = MatroidByBases::unchecked(n, r, x.support());
        for y in &ys {
            let my = MatroidByBases::unchecked(n, r2, y.support());
            let inc = satisfies_incidence(&k, x, y)?;
            incident += inc as usize;
            agree &= inc == is_quotient(&my, &mx)?;
        }
    }
    Ok(FlagBridgeReport {
        r,
        r2,
        n,
        pairs: xs.len() * ys.len(),
        incident,
        agree,
    })
}
