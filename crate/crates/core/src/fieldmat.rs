//! Dense linear algebra over a prime field `F_p`.
//!
//! Entries are stored as canonical residues in `[0, p)` and every operation
//! reduces eagerly, so equality and serialization are structural. Elimination
//! is plain Gauss-Jordan with the first nonzero entry as pivot; over a field
//! there is nothing to gain from fraction-free variants.

use crate::error::{Error, Result};

/// Largest supported modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// Trial-division primality test, adequate for moduli below 2^31.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_modulus(p: u64) -> Result<u32> {
    if p >= MAX_MODULUS || !is_prime(p) {
        return Err(Error::NonPrimeModulus(p));
    }
    Ok(p as u32)
}

/// Reduce a signed integer into `[0, p)`.
#[inline]
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Multiplicative inverse of a nonzero residue (Fermat).
pub fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(a != 0);
    let mut base = a as u64;
    let mut e = p as u64 - 2;
    let m = p as u64;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}

/// `dst += factor * src`, entrywise mod p.
#[inline]
pub(crate) fn axpy(dst: &mut [u32], factor: u32, src: &[u32], p: u32) {
    if factor == 0 {
        return;
    }
    let m = p as u64;
    let f = factor as u64;
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = ((*d as u64 + f * s as u64) % m) as u32;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self> {
        let p = check_modulus(p)?;
        Ok(Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(p: u64, n: usize) -> Result<Self> {
        let mut m = Self::zeros(p, n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1 % m.p;
        }
        Ok(m)
    }

    /// Build from signed rows; entries are reduced into `[0, p)`.
    /// `cols` is needed so that a matrix with zero rows keeps its shape.
    pub fn from_rows(p: u64, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = Self::zeros(p, rows.len(), cols)?;
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            for (c, &x) in row.iter().enumerate() {
                m.data[r * cols + c] = reduce(x, m.p);
            }
        }
        Ok(m)
    }

    /// Build from rows that are already canonical residues.
    pub fn from_residue_rows(p: u64, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut m = Self::zeros(p, rows.len(), cols)?;
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            for (c, &x) in row.iter().enumerate() {
                m.data[r * cols + c] = x % m.p;
            }
        }
        Ok(m)
    }

    /// Columns of the result are the given vectors.
    pub fn from_columns(p: u64, rows: usize, columns: &[Vec<u32>]) -> Result<Self> {
        let mut m = Self::zeros(p, rows, columns.len())?;
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::LengthMismatch {
                    expected: rows,
                    got: col.len(),
                });
            }
            for (r, &x) in col.iter().enumerate() {
                m.data[r * m.cols + c] = x % m.p;
            }
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.data[r * self.cols + c] = reduce(value, self.p);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self {
            p: self.p,
            rows: self.cols,
            cols: self.rows,
            data: vec![0; self.data.len()],
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let m = self.p as u64;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % m)
                    as u32
            })
            .collect())
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            data: vec![0; self.rows * other.cols],
        };
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a != 0 {
                    let src = other.row(k).to_vec();
                    axpy(out.row_mut(r), a, &src, self.p);
                }
            }
        }
        Ok(out)
    }

    /// Reduce in place to reduced row-echelon form; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for k in 0..cols {
                    self.data.swap(piv * cols + k, r * cols + k);
                }
            }
            let scale = inv(self.data[r * cols + c], p);
            for x in self.row_mut(r) {
                *x = mul(*x, scale, p);
            }
            let pivot_row = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c];
                if f != 0 {
                    axpy(self.row_mut(i), neg(f, p), &pivot_row, p);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        // Eliminate on the shorter side; rank is transpose-invariant.
        if self.rows > self.cols {
            return self.transpose().rank();
        }
        let mut tracker = SpanTracker::new(self.p, self.cols);
        (0..self.rows).filter(|&r| tracker.insert(self.row(r))).count()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let (red, pivots) = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = neg(red.get(r, free), p);
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<FpMatrix> {
        if self.rows != self.cols {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        let mut aug = FpMatrix {
            p: self.p,
            rows: n,
            cols: 2 * n,
            data: vec![0; 2 * n * n],
        };
        for r in 0..n {
            aug.row_mut(r)[..n].copy_from_slice(self.row(r));
            aug.data[r * 2 * n + n + r] = 1 % self.p;
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut out = FpMatrix {
            p: self.p,
            rows: n,
            cols: n,
            data: vec![0; n * n],
        };
        for r in 0..n {
            out.row_mut(r).copy_from_slice(&aug.row(r)[n..]);
        }
        Ok(out)
    }
}

/// Incrementally maintained echelon basis of a subspace of `F_p^dim`.
///
/// Each stored row has a leading 1 at its pivot and zeros at the pivots of
/// all rows inserted before it, so a single forward sweep reduces a vector.
#[derive(Debug, Clone)]
pub struct SpanTracker {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl SpanTracker {
    pub fn new(p: u32, dim: usize) -> Self {
        Self {
            p,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Residual of `v` after eliminating against the stored basis.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut w: Vec<u32> = v.iter().map(|&x| x % self.p).collect();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = w[pc];
            if f != 0 {
                axpy(&mut w, neg(f, self.p), row, self.p);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Add `v` to the basis if it is independent; returns whether it was added.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(w[pc], self.p);
        for x in &mut w {
            *x = mul(*x, s, self.p);
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}

/// Whether `v` lies in the `F_p`-span of `set`.
pub fn in_span(v: &[u32], set: &[Vec<u32>], p: u32) -> bool {
    let mut tracker = SpanTracker::new(p, v.len());
    for s in set {
        tracker.insert(s);
    }
    tracker.contains(v)
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(vectors: &[Vec<u32>], p: u32) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut tracker = SpanTracker::new(p, first.len());
    vectors.iter().filter(|v| tracker.insert(v)).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, cols: usize, rows: &[&[i64]]) -> FpMatrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        FpMatrix::from_rows(p, cols, &rows).unwrap()
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(2_147_483_647));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(2_147_483_649));
        assert_eq!(FpMatrix::zeros(6, 1, 1), Err(Error::NonPrimeModulus(6)));
        assert!(FpMatrix::zeros(1 << 31, 1, 1).is_err());
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(FpMatrix::identity(3, 3).unwrap().rank(), 3);
        assert_eq!(FpMatrix::zeros(5, 4, 6).unwrap().rank(), 0);
    }

    #[test]
    fn rref_small_cases() {
        let (r, piv) = m(3, 1, &[&[2]]).rref();
        assert_eq!(r, m(3, 1, &[&[1]]));
        assert_eq!(piv, vec![0]);

        let (r, piv) = m(2, 2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r, m(2, 2, &[&[1, 1], &[0, 0]]));
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn negative_entries_are_reduced() {
        let a = m(5, 2, &[&[-1, -6]]);
        assert_eq!(a.row(0), &[4, 4]);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(FpMatrix::identity(3, 3).unwrap().kernel_basis().is_empty());
        let z = FpMatrix::zeros(3, 2, 4).unwrap();
        let k = z.kernel_basis();
        assert_eq!(k.len(), 4);
        assert_eq!(rank_of(&k, 3), 4);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(7, 4, &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1]]);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 4 - a.rank());
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(5, 3, &[&[1, 2, 0], &[0, 1, 4], &[3, 0, 2]]);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai).unwrap(), FpMatrix::identity(5, 3).unwrap());
        let s = m(5, 2, &[&[1, 2], &[2, 4]]);
        assert_eq!(s.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn span_membership() {
        assert!(in_span(&[0, 0], &[], 3));
        let v1 = vec![1, 0, 2];
        let v2 = vec![0, 1, 1];
        let sum: Vec<u32> = v1.iter().zip(&v2).map(|(a, b)| (a + b) % 3).collect();
        assert!(in_span(&sum, &[v1.clone(), v2.clone()], 3));
        assert!(!in_span(&[0, 0, 1], &[v1, v2], 3));
    }
}
