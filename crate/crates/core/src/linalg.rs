//! Dense linear algebra over the small finite fields.
//!
//! Elements are the `u8` codes used by [`Band`]; tables are copied out of the
//! band once so the inner loops are plain lookups.

use crate::band::{Band, Element};
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<u8>>;

#[derive(Clone, Debug)]
pub struct Gf {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn code(x: Element) -> u8 {
    match x {
        Element::Int(v) => v as u8,
        Element::Rat(_) => unreachable!(),
    }
}

impl Gf {
    pub fn new(q: u32) -> Result<Self> {
        Gf::from_band(&Band::field(q)?)
    }

    pub fn from_band(band: &Band) -> Result<Self> {
        if !band.is_field() {
            return Err(Error::InvalidArgument(format!("{band} is not a field")));
        }
        let q = band.order().unwrap();
        let el = |c: usize| Element::Int(c as i8);
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for x in 0..q {
            for y in 0..q {
                add[x * q + y] = code(band.field_add(el(x), el(y)).unwrap());
                mul[x * q + y] = code(band.times(el(x), el(y)));
            }
        }
        let neg = (0..q).map(|x| code(band.negate(el(x)))).collect();
        let inv = (0..q)
            .map(|x| band.inverse(el(x)).map(code).unwrap_or(0))
            .collect();
        Ok(Gf {
            q,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, x: u8, y: u8) -> u8 {
        self.add[x as usize * self.q + y as usize]
    }

    #[inline]
    pub fn sub(&self, x: u8, y: u8) -> u8 {
        self.add(x, self.neg[y as usize])
    }

    #[inline]
    pub fn mul(&self, x: u8, y: u8) -> u8 {
        self.mul[x as usize * self.q + y as usize]
    }

    #[inline]
    pub fn neg(&self, x: u8) -> u8 {
        self.neg[x as usize]
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, x: u8) -> u8 {
        assert!(x != 0, "zero has no inverse");
        self.inv[x as usize]
    }

    pub fn dot(&self, a: &[u8], b: &[u8]) -> u8 {
        a.iter()
            .zip(b)
            .fold(0, |acc, (x, y)| self.add(acc, self.mul(*x, *y)))
    }

    pub fn mat_mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let cols = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| {
                        row.iter()
                            .enumerate()
                            .fold(0, |acc, (k, x)| self.add(acc, self.mul(*x, b[k][j])))
                    })
                    .collect()
            })
            .collect()
    }

    /// Reduced row echelon form, returning the pivot columns.
    pub fn rref(&self, m: &mut Matrix) -> Vec<usize> {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(p) = (row..rows).find(|&i| m[i][col] != 0) else {
                continue;
            };
            m.swap(row, p);
            let s = self.inv(m[row][col]);
            for x in m[row].iter_mut() {
                *x = self.mul(*x, s);
            }
            for i in 0..rows {
                if i != row && m[i][col] != 0 {
                    let f = m[i][col];
                    for j in 0..cols {
                        let v = self.mul(f, m[row][j]);
                        m[i][j] = self.sub(m[i][j], v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, m: &Matrix) -> usize {
        self.rref(&mut m.clone()).len()
    }

    /// Determinant by elimination.
    pub fn det(&self, m: &Matrix) -> u8 {
        let n = m.len();
        let mut a = m.clone();
        let mut det = 1u8;
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| a[i][col] != 0) else {
                return 0;
            };
            if p != col {
                a.swap(p, col);
                det = self.neg(det);
            }
            det = self.mul(det, a[col][col]);
            let s = self.inv(a[col][col]);
            for i in col + 1..n {
                if a[i][col] != 0 {
                    let f = self.mul(a[i][col], s);
                    for j in col..n {
                        let v = self.mul(f, a[col][j]);
                        a[i][j] = self.sub(a[i][j], v);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self, m: &Matrix) -> Option<Matrix> {
        let n = m.len();
        let mut aug: Matrix = m
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| (i == j) as u8));
                r
            })
            .collect();
        let pivots = self.rref(&mut aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// All vectors of length `len`, in lexicographic code order.
    pub fn vectors(&self, len: usize) -> impl Iterator<Item = Vec<u8>> + '_ {
        let total = self.q.pow(len as u32);
        (0..total).map(move |mut idx| {
            let mut v = vec![0u8; len];
            for x in v.iter_mut().rev() {
                *x = (idx % self.q) as u8;
                idx /= self.q;
            }
            v
        })
    }

    /// All `r`-dimensional subspaces of `F_q^n`, each as an `r x n` matrix in
    /// reduced row echelon form.
    pub fn subspaces(&self, r: usize, n: usize) -> Vec<Matrix> {
        let mut out = Vec::new();
        for pivots in crate::subsets::k_subsets(n, r) {
            let piv: Vec<usize> = crate::subsets::elements(pivots).collect();
            // free positions: (row i, column j) with j > piv[i], j not a pivot
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| {
                    let piv = &piv;
                    (piv[i] + 1..n)
                        .filter(move |j| !piv.contains(j))
                        .map(move |j| (i, j))
                })
                .collect();
            for values in self.vectors(free.len()) {
                let mut m = vec![vec![0u8; n]; r];
                for (i, p) in piv.iter().enumerate() {
                    m[i][*p] = 1;
                }
                for ((i, j), v) in free.iter().zip(&values) {
                    m[*i][*j] = *v;
                }
                out.push(m);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_binomial(q: usize, n: usize, k: usize) -> usize {
        let mut num = 1;
        let mut den = 1;
        for i in 0..k {
            num *= q.pow((n - i) as u32) - 1;
            den *= q.pow((i + 1) as u32) - 1;
        }
        num / den
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        for q in [2u32, 3, 4] {
            let f = Gf::new(q).unwrap();
            for n in 1..=4 {
                for r in 0..=n {
                    assert_eq!(
                        f.subspaces(r, n).len(),
                        gaussian_binomial(q as usize, n, r),
                        "q={q} n={n} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn det_is_multiplicative_and_inverse_works() {
        let f = Gf::new(3).unwrap();
        let mats: Vec<Matrix> = f
            .vectors(4)
            .map(|v| vec![v[..2].to_vec(), v[2..].to_vec()])
            .collect();
        let invertible = mats.iter().filter(|m| f.det(m) != 0).count();
        assert_eq!(invertible, 48);
        for a in &mats {
            for b in mats.iter().step_by(7) {
                assert_eq!(f.det(&f.mat_mul(a, b)), f.mul(f.det(a), f.det(b)));
            }
            if let Some(ai) = f.inverse(a) {
                assert_eq!(f.mat_mul(a, &ai), vec![vec![1, 0], vec![0, 1]]);
            } else {
                assert_eq!(f.det(a), 0);
            }
        }
    }

    #[test]
    fn rank_of_small_matrices() {
        let f = Gf::new(2).unwrap();
        assert_eq!(f.rank(&vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]), 2);
        assert_eq!(f.rank(&vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), 3);
    }
}
