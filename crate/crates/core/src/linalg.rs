//! Dense exact linear algebra: integer matrices (rank over ℚ by Bareiss
//! elimination) and matrices / subspaces over a prime field 𝔽_p.

use alloc::vec;
use alloc::vec::Vec;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i128 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i128) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: i128) {
        self.data[r * self.cols + c] += v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        out.add_at(i, j, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn commutator(&self, other: &IntMatrix) -> IntMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, k: u32) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Rank over ℚ by fraction-free (Bareiss) elimination.
    pub fn rank_rational(&self) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = 1i128;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
                continue;
            };
            if piv != rank {
                for j in 0..cols {
                    a.swap(piv * cols + j, rank * cols + j);
                }
            }
            let pv = a[rank * cols + c];
            for r in rank + 1..rows {
                let f = a[r * cols + c];
                for j in 0..cols {
                    let num = pv
                        .checked_mul(a[r * cols + j])
                        .and_then(|x| x.checked_sub(f.checked_mul(a[rank * cols + j])?))
                        .expect("Bareiss elimination overflow");
                    a[r * cols + j] = num / prev;
                }
            }
            prev = pv;
            rank += 1;
        }
        rank
    }
}

#[inline]
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime: a^(p-2)
    let mut base = (a % p) as u128;
    let mut e = p - 2;
    let mut acc: u128 = 1;
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// Rank of a list of rows over 𝔽_q for any prime `q < 2^63`.
pub fn rank_mod(mut rows: Vec<Vec<u64>>, q: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let m = q as u128;
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(q)) else {
            continue;
        };
        rows.swap(piv, rank);
        let inv = inv_mod(rows[rank][c], q) as u128;
        for j in 0..cols {
            rows[rank][j] = (rows[rank][j] as u128 * inv % m) as u64;
        }
        for r in 0..rows.len() {
            if r == rank {
                continue;
            }
            let f = rows[r][c] % q;
            if f == 0 {
                continue;
            }
            for j in 0..cols {
                let sub = f as u128 * rows[rank][j] as u128 % m;
                rows[r][j] = ((rows[r][j] as u128 + m - sub) % m) as u64;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Dense matrix over 𝔽_p, row-major, entries in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = FpMatrix::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    #[inline]
    pub fn add_at(&mut self, r: usize, c: usize, v: u32) {
        let idx = r * self.cols + c;
        self.data[idx] = (self.data[idx] + v % self.p) % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        let p = self.p as u64;
        let mut acc = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let out = &mut acc[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in out.iter_mut().zip(orow) {
                    *o += a * b as u64;
                }
            }
            for o in &mut acc[i * other.cols..(i + 1) * other.cols] {
                *o %= p;
            }
        }
        FpMatrix { p: self.p, rows: self.rows, cols: other.cols, data: acc.into_iter().map(|x| x as u32).collect() }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        FpMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % p).collect(),
        }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let p = self.p as u64;
        let c = c as u64 % p;
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| (a as u64 * c % p) as u32).collect(),
        }
    }

    pub fn commutator(&self, other: &FpMatrix) -> FpMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, k: u32) -> FpMatrix {
        let mut acc = FpMatrix::identity(self.p, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut s = Subspace::new(self.p, self.cols);
        for r in 0..self.rows {
            s.insert(self.row(r).to_vec());
        }
        s.dim()
    }

    /// Basis of the right kernel `{v : self·v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut rows: Vec<Vec<u32>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let pivots = rref_in_place(&mut rows, self.cols, p);
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for &(r, c) in &pivots {
                v[c] = (p - rows[r][free]) % p;
            }
            basis.push(v);
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<FpMatrix> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut rows: Vec<Vec<u32>> = (0..n)
            .map(|r| {
                let mut v = self.row(r).to_vec();
                v.resize(2 * n, 0);
                v[n + r] = 1;
                v
            })
            .collect();
        let pivots = rref_in_place(&mut rows, n, self.p);
        if pivots.len() < n {
            return None;
        }
        let out: Vec<Vec<u32>> = rows.into_iter().map(|v| v[n..].to_vec()).collect();
        Some(FpMatrix::from_rows(self.p, &out))
    }
}

/// Reduced row echelon form; returns `(row, pivot column)` pairs.
fn rref_in_place(rows: &mut [Vec<u32>], cols: usize, p: u32) -> Vec<(usize, usize)> {
    let pp = p as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(piv, r);
        let inv = inv_mod(rows[r][c] as u64, pp);
        for x in rows[r].iter_mut() {
            *x = (*x as u64 * inv % pp) as u32;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let f = rows[i][c] as u64;
            let (src, dst) = if i < r {
                let (a, b) = rows.split_at_mut(r);
                (&b[0], &mut a[i])
            } else {
                let (a, b) = rows.split_at_mut(i);
                (&a[r], &mut b[0])
            };
            for (d, &s) in dst.iter_mut().zip(src.iter()) {
                *d = ((*d as u64 + pp - f * s as u64 % pp) % pp) as u32;
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// A subspace of 𝔽_p^n kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(p: u32, n: usize) -> Self {
        Subspace { p, n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` modulo the subspace; the result vanishes on every pivot column.
    pub fn reduce(&self, v: &mut [u32]) {
        let pp = self.p as u64;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c] as u64;
            if f == 0 {
                continue;
            }
            for (x, &s) in v.iter_mut().zip(row) {
                *x = ((*x as u64 + pp - f * s as u64 % pp) % pp) as u32;
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Insert a vector; returns the reduced new basis row if the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> Option<Vec<u32>> {
        debug_assert_eq!(v.len(), self.n);
        self.reduce(&mut v);
        let c = v.iter().position(|&x| x != 0)?;
        let pp = self.p as u64;
        let inv = inv_mod(v[c] as u64, pp);
        for x in v.iter_mut() {
            *x = (*x as u64 * inv % pp) as u32;
        }
        for row in self.rows.iter_mut() {
            let f = row[c] as u64;
            if f == 0 {
                continue;
            }
            for (x, &s) in row.iter_mut().zip(&v) {
                *x = ((*x as u64 + pp - f * s as u64 % pp) % pp) as u32;
            }
        }
        let pos = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, v.clone());
        Some(v)
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.n).filter(|c| self.pivots.binary_search(c).is_err()).collect()
    }

    /// Annihilator `{w : w·v = 0 for all v in self}` in the dual space.
    pub fn annihilator(&self) -> Subspace {
        let m = FpMatrix::from_rows(self.p, &self.rows);
        let mut out = Subspace::new(self.p, self.n);
        if self.rows.is_empty() {
            for i in 0..self.n {
                let mut e = vec![0; self.n];
                e[i] = 1;
                out.insert(e);
            }
            return out;
        }
        for v in m.kernel() {
            out.insert(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_rank_matches_known_cases() {
        let mut m = IntMatrix::zeros(3, 3);
        for (i, row) in [[1, 2, 3], [4, 5, 6], [7, 8, 9]].iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        assert_eq!(m.rank_rational(), 2);
        assert_eq!(IntMatrix::identity(4).rank_rational(), 4);
        assert_eq!(IntMatrix::zeros(2, 5).rank_rational(), 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = FpMatrix::from_rows(3, &[vec![1, 2, 0, 1], vec![0, 1, 1, 2]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn subspace_reduction_kills_pivots() {
        let mut s = Subspace::new(5, 3);
        assert!(s.insert(vec![1, 2, 3]).is_some());
        assert!(s.insert(vec![2, 4, 0]).is_some());
        assert!(s.insert(vec![3, 1, 4]).is_none());
        let mut v = vec![4, 4, 4];
        s.reduce(&mut v);
        for &c in s.pivots() {
            assert_eq!(v[c], 0);
        }
        let ann = s.annihilator();
        assert_eq!(ann.dim(), 1);
    }

    #[test]
    fn rank_mod_large_prime() {
        let q = (1u64 << 61) - 1;
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, q - 1]];
        assert_eq!(rank_mod(rows, q), 2);
    }
}
