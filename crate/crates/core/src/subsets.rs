//! Subsets of `{0, .., n-1}` as `u32` bitmasks.
//!
//! Ascending mask order restricted to `r`-subsets is colex order, and
//! [`colex_rank`] is the combinatorial number system index. Subsets are
//! printed 1-based, `{1,2}`.

use crate::error::{Error, Result};

pub type Subset = u32;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All `r`-subsets of `{0, .., n-1}` in colex order.
pub fn k_subsets(n: usize, r: usize) -> Vec<Subset> {
    let mut out = Vec::with_capacity(binomial(n, r));
    if r > n {
        return out;
    }
    if r == 0 {
        out.push(0);
        return out;
    }
    // Gosper's hack
    let mut s: u32 = (1 << r) - 1;
    let limit = 1u32 << n;
    while s < limit {
        out.push(s);
        let c = s & s.wrapping_neg();
        let t = s + c;
        s = (((t ^ s) >> 2) / c) | t;
    }
    out
}

/// Position of `s` among subsets of the same size in colex order.
pub fn colex_rank(s: Subset) -> usize {
    let mut rank = 0;
    for (k, e) in elements(s).enumerate() {
        rank += binomial(e, k + 1);
    }
    rank
}

pub fn elements(s: Subset) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| s >> i & 1 == 1)
}

pub fn from_elements(items: &[usize]) -> Subset {
    items.iter().fold(0, |acc, i| acc | 1 << i)
}

#[inline]
pub fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

#[inline]
pub fn contains(s: Subset, j: usize) -> bool {
    s >> j & 1 == 1
}

/// `ε(j, I) = #{i ∈ I : i < j}`.
#[inline]
pub fn eps(j: usize, s: Subset) -> usize {
    (s & ((1u32 << j) - 1)).count_ones() as usize
}

/// `{1,3}` style, 1-based.
pub fn format(s: Subset) -> String {
    let items: Vec<String> = elements(s).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Parses `{1,3}`, `1,3` or the compact `13` (single-digit elements).
pub fn parse(text: &str, n: usize) -> Result<Subset> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    let items: Vec<usize> = if inner.contains(',') {
        inner
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidArgument(format!("bad subset `{text}`")))?
    } else {
        inner
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidArgument(format!("bad subset `{text}`")))?
    };
    let mut s = 0;
    for i in items {
        if i == 0 || i > n {
            return Err(Error::InvalidArgument(format!(
                "subset element {i} outside 1..={n}"
            )));
        }
        s |= 1 << (i - 1);
    }
    Ok(s)
}
