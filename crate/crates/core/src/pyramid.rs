//! Pyramids and the Lie-theoretic data they determine for 𝔤 = gl_N.
//!
//! Boxes, rows and columns are numbered from 1, exactly as in the diagrams:
//! rows run top to bottom, boxes along rows starting from the top row.
//! All matrix-unit indices `e[i,j]` in this crate are box numbers.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Row lengths `p_1 ≤ p_2 ≤ … ≤ p_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly increasing")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of rows `n`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `N`, the number of boxes.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// All partitions of `total`, each with weakly increasing parts.
    pub fn all_of(total: usize) -> Vec<Partition> {
        fn rec(rem: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for part in min..=rem {
                cur.push(part);
                rec(rem - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if total > 0 {
            rec(total, 1, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Number of pyramids, `Π_{i<n} (p_{i+1} − p_i + 1)`.
    pub fn pyramid_count(&self) -> usize {
        self.parts.windows(2).map(|w| w[1] - w[0] + 1).product()
    }
}

/// A pyramid: a partition plus left indentations relative to the bottom row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PyramidSpec", into = "PyramidSpec")]
pub struct Pyramid {
    partition: Partition,
    offsets: Vec<usize>,
    box_row: Vec<usize>,
    box_col: Vec<usize>,
    rows: Vec<Vec<usize>>,
    columns: Vec<Vec<usize>>,
}

/// Serialized form `{partition: [..], offsets: [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PyramidSpec {
    pub partition: Vec<usize>,
    pub offsets: Vec<usize>,
}

impl TryFrom<PyramidSpec> for Pyramid {
    type Error = Error;
    fn try_from(s: PyramidSpec) -> Result<Self> {
        Pyramid::new(Partition::new(s.partition)?, s.offsets)
    }
}

impl From<Pyramid> for PyramidSpec {
    fn from(p: Pyramid) -> Self {
        PyramidSpec { partition: p.partition.parts, offsets: p.offsets }
    }
}

impl Pyramid {
    pub fn new(partition: Partition, offsets: Vec<usize>) -> Result<Self> {
        let n = partition.len();
        let p = partition.parts();
        if offsets.len() != n {
            return Err(Error::InvalidPyramid(format!("expected {n} offsets, got {}", offsets.len())));
        }
        if offsets[n - 1] != 0 {
            return Err(Error::InvalidPyramid("bottom row offset must be 0".into()));
        }
        for i in 0..n - 1 {
            if offsets[i] < offsets[i + 1] || offsets[i] + p[i] > offsets[i + 1] + p[i + 1] {
                return Err(Error::InvalidPyramid(format!("row {} does not sit on row {}", i + 1, i + 2)));
            }
        }
        let l = p[n - 1];
        let mut box_row = Vec::with_capacity(partition.total());
        let mut box_col = Vec::with_capacity(partition.total());
        let mut rows = Vec::with_capacity(n);
        let mut columns = vec![Vec::new(); l];
        let mut next = 1;
        for r in 0..n {
            let mut row = Vec::with_capacity(p[r]);
            for k in 0..p[r] {
                let c = offsets[r] + k + 1;
                box_row.push(r + 1);
                box_col.push(c);
                row.push(next);
                columns[c - 1].push(next);
                next += 1;
            }
            rows.push(row);
        }
        Ok(Pyramid { partition, offsets, box_row, box_col, rows, columns })
    }

    pub fn left_justified(partition: Partition) -> Self {
        let n = partition.len();
        Pyramid::new(partition, vec![0; n]).expect("left-justified pyramid is valid")
    }

    pub fn right_justified(partition: Partition) -> Self {
        let l = *partition.parts().last().unwrap();
        let offsets = partition.parts().iter().map(|&p| l - p).collect();
        Pyramid::new(partition, offsets).expect("right-justified pyramid is valid")
    }

    /// All pyramids of a partition, in lexicographic order of offset vectors.
    pub fn enumerate(partition: &Partition) -> Vec<Pyramid> {
        let p = partition.parts();
        let n = p.len();
        // offsets are built bottom-up; collect then sort lexicographically
        let mut acc: Vec<Vec<usize>> = vec![vec![0; n]];
        for i in (0..n - 1).rev() {
            let mut next = Vec::new();
            for o in &acc {
                for extra in 0..=p[i + 1] - p[i] {
                    let mut v = o.clone();
                    v[i] = o[i + 1] + extra;
                    next.push(v);
                }
            }
            acc = next;
        }
        acc.sort();
        acc.into_iter()
            .map(|o| Pyramid::new(partition.clone(), o).expect("enumerated offsets are valid"))
            .collect()
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn spec(&self) -> PyramidSpec {
        self.clone().into()
    }

    /// `N`.
    pub fn n_boxes(&self) -> usize {
        self.box_row.len()
    }

    /// `n`.
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// `l = p_n`.
    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    /// Row length `p_i` (1-based row).
    pub fn row_len(&self, row: usize) -> usize {
        self.partition.parts()[row - 1]
    }

    pub fn row(&self, b: usize) -> usize {
        self.box_row[b - 1]
    }

    pub fn col(&self, b: usize) -> usize {
        self.box_col[b - 1]
    }

    /// Boxes of a row, left to right.
    pub fn row_boxes(&self, row: usize) -> &[usize] {
        &self.rows[row - 1]
    }

    /// Boxes of a column, top to bottom.
    pub fn column_boxes(&self, col: usize) -> &[usize] {
        &self.columns[col - 1]
    }

    /// Column heights `q_1, …, q_l`.
    pub fn column_heights(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.len()).collect()
    }

    pub fn box_at(&self, row: usize, col: usize) -> Option<usize> {
        let r = self.rows.get(row.checked_sub(1)?)?;
        let o = self.offsets[row - 1];
        if col > o && col <= o + r.len() {
            Some(r[col - o - 1])
        } else {
            None
        }
    }

    /// Pairs `(upper, lower)` of vertically adjacent boxes.
    pub fn vertical_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for col in &self.columns {
            for w in col.windows(2) {
                out.push((w[0], w[1]));
            }
        }
        out
    }

    pub fn shift_matrix(&self) -> ShiftMatrix {
        let n = self.n_rows();
        let p = self.partition.parts();
        let o = &self.offsets;
        let mut s = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                s[j][i] = o[i] - o[j];
                s[i][j] = (o[j] + p[j]) - (o[i] + p[i]);
            }
        }
        ShiftMatrix { s }
    }
}

/// The shift matrix `σ = (s_{i,j})`, 1-based access.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftMatrix {
    s: Vec<Vec<usize>>,
}

impl ShiftMatrix {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.s[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.s
    }
}

/// The nilpotent `e`, the grading, the subalgebras 𝔭 ⊇ 𝔥 and 𝔪, and χ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieDatum {
    pyramid: Pyramid,
    e_support: Vec<(usize, usize)>,
}

impl LieDatum {
    pub fn new(pyramid: &Pyramid) -> Self {
        let mut e_support = Vec::new();
        for r in 1..=pyramid.n_rows() {
            for w in pyramid.row_boxes(r).windows(2) {
                e_support.push((w[0], w[1]));
            }
        }
        LieDatum { pyramid: pyramid.clone(), e_support }
    }

    pub fn pyramid(&self) -> &Pyramid {
        &self.pyramid
    }

    pub fn n(&self) -> usize {
        self.pyramid.n_boxes()
    }

    pub fn e_support(&self) -> &[(usize, usize)] {
        &self.e_support
    }

    /// Grading degree `col(j) − col(i)` of `e[i,j]`.
    pub fn deg(&self, i: usize, j: usize) -> i64 {
        self.pyramid.col(j) as i64 - self.pyramid.col(i) as i64
    }

    /// Kazhdan degree `col(j) − col(i) + 1`.
    pub fn kazhdan(&self, i: usize, j: usize) -> i64 {
        self.deg(i, j) + 1
    }

    pub fn in_p(&self, i: usize, j: usize) -> bool {
        self.deg(i, j) >= 0
    }

    pub fn in_h(&self, i: usize, j: usize) -> bool {
        self.deg(i, j) == 0
    }

    pub fn in_m(&self, i: usize, j: usize) -> bool {
        self.deg(i, j) < 0
    }

    /// `χ(e[i,j]) = (e, e[i,j])`, i.e. 1 when `e[j,i]` is a summand of `e`.
    pub fn chi(&self, i: usize, j: usize) -> u8 {
        u8::from(self.e_support.contains(&(j, i)))
    }

    /// `d_χ = dim 𝔪`.
    pub fn d_chi(&self) -> usize {
        let n = self.n();
        (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).filter(|&(i, j)| self.in_m(i, j)).count()
    }

    pub fn dim_g0(&self) -> usize {
        self.pyramid.column_heights().iter().map(|q| q * q).sum()
    }

    pub fn e_matrix(&self) -> IntMatrix {
        let n = self.n();
        let mut m = IntMatrix::zeros(n, n);
        for &(i, j) in &self.e_support {
            m.set(i - 1, j - 1, 1);
        }
        m
    }

    /// Jordan block sizes of `e` (ascending), from ranks of powers over ℚ.
    pub fn jordan_type(&self) -> Vec<usize> {
        let n = self.n();
        let e = self.e_matrix();
        let mut ranks = vec![n];
        let mut power = IntMatrix::identity(n);
        while *ranks.last().unwrap() > 0 {
            power = power.mul(&e);
            ranks.push(power.rank_rational());
        }
        // blocks of size ≥ k: ranks[k-1] − ranks[k]
        let mut sizes = Vec::new();
        for k in 1..ranks.len() {
            let at_least_k = ranks[k - 1] - ranks[k];
            let at_least_next = if k + 1 < ranks.len() { ranks[k] - ranks[k + 1] } else { 0 };
            for _ in 0..at_least_k - at_least_next {
                sizes.push(k);
            }
        }
        sizes.sort();
        sizes
    }
}

/// `c_{i,j}^{(r)}` as its set of matrix-unit summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerElement {
    pub i: usize,
    pub j: usize,
    pub r: usize,
    pub units: Vec<(usize, usize)>,
}

/// Summands of `c_{i,j}^{(r)}` for any `r ≥ 1` (empty when no pair qualifies).
pub fn centralizer_units(py: &Pyramid, i: usize, j: usize, r: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &h in py.row_boxes(i) {
        for &k in py.row_boxes(j) {
            if py.col(k) as i64 - py.col(h) as i64 + 1 == r as i64 {
                out.push((h, k));
            }
        }
    }
    out
}

pub fn units_matrix(n: usize, units: &[(usize, usize)]) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for &(h, k) in units {
        m.add_at(h - 1, k - 1, 1);
    }
    m
}

/// Basis `{c_{i,j}^{(r)} : s_{i,j} < r ≤ s_{i,j} + p_{min(i,j)}}` of 𝔤^e.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerBasis {
    pub elements: Vec<CentralizerElement>,
}

impl CentralizerBasis {
    pub fn new(py: &Pyramid) -> Self {
        let n = py.n_rows();
        let s = py.shift_matrix();
        let mut elements = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let lo = s.get(i, j);
                let hi = lo + py.row_len(i.min(j));
                for r in lo + 1..=hi {
                    elements.push(CentralizerElement { i, j, r, units: centralizer_units(py, i, j, r) });
                }
            }
        }
        CentralizerBasis { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Integer coordinates with respect to `ε_1, …, ε_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(n: usize) -> Self {
        WeightVector(vec![0; n])
    }

    pub fn coord(&self, b: usize) -> i64 {
        self.0[b - 1]
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Coordinates reduced into `[0, p)`.
    pub fn mod_p(&self, p: u64) -> Vec<u64> {
        self.0.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()
    }
}

/// The seven weights attached to a pyramid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weights {
    pub rho: WeightVector,
    pub rho_bar: WeightVector,
    pub gamma: WeightVector,
    pub eta: WeightVector,
    pub rho_h: WeightVector,
    pub beta: WeightVector,
    pub rho_tilde: WeightVector,
}

impl Weights {
    pub fn new(py: &Pyramid) -> Self {
        let n_boxes = py.n_boxes();
        let n = py.n_rows() as i64;
        let q: Vec<i64> = py.column_heights().iter().map(|&x| x as i64).collect();
        let left = |c: usize| q[..c - 1].iter().sum::<i64>();
        let right_incl = |c: usize| q[c - 1..].iter().sum::<i64>();
        let right_excl = |c: usize| q[c..].iter().sum::<i64>();

        let mut rho = Vec::with_capacity(n_boxes);
        let mut rho_bar = Vec::with_capacity(n_boxes);
        let mut eta = Vec::with_capacity(n_boxes);
        let mut rho_h = Vec::with_capacity(n_boxes);
        let mut beta = Vec::with_capacity(n_boxes);
        for b in 1..=n_boxes {
            let c = py.col(b);
            let row = py.row(b) as i64;
            rho.push(-(b as i64));
            rho_bar.push(-(left(c) + row - (n - q[c - 1])));
            eta.push(n - right_incl(c));
            rho_h.push(-row);
            beta.push(left(c) - right_excl(c));
        }
        let mut gamma = vec![0i64; n_boxes];
        for i in 1..=n_boxes {
            for j in 1..=n_boxes {
                if py.col(i) > py.col(j) && py.row(i) < py.row(j) {
                    gamma[i - 1] += 1;
                    gamma[j - 1] -= 1;
                }
            }
        }
        let rho_bar = WeightVector(rho_bar);
        let beta = WeightVector(beta);
        let rho_tilde = rho_bar.add(&beta);
        Weights {
            rho: WeightVector(rho),
            rho_bar,
            gamma: WeightVector(gamma),
            eta: WeightVector(eta),
            rho_h: WeightVector(rho_h),
            beta,
            rho_tilde,
        }
    }

    pub fn named(&self) -> [(&'static str, &WeightVector); 7] {
        [
            ("rho", &self.rho),
            ("rho_bar", &self.rho_bar),
            ("gamma", &self.gamma),
            ("eta", &self.eta),
            ("rho_h", &self.rho_h),
            ("beta", &self.beta),
            ("rho_tilde", &self.rho_tilde),
        ]
    }

    pub fn get(&self, name: &str) -> Option<&WeightVector> {
        self.named().into_iter().find(|(k, _)| *k == name).map(|(_, v)| v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![3, 2]).is_err());
        assert!(Partition::new(vec![0, 2]).is_err());
        assert_eq!(part(&[2, 5]).total(), 7);
        assert_eq!(Partition::all_of(4).len(), 5);
    }

    #[test]
    fn two_five_has_four_pyramids_with_expected_shifts() {
        let pys = Pyramid::enumerate(&part(&[2, 5]));
        assert_eq!(pys.len(), 4);
        let shifts: Vec<Vec<Vec<usize>>> = pys.iter().map(|p| p.shift_matrix().rows().to_vec()).collect();
        assert_eq!(shifts[0], vec![vec![0, 3], vec![0, 0]]);
        assert_eq!(shifts[1], vec![vec![0, 2], vec![1, 0]]);
        assert_eq!(shifts[2], vec![vec![0, 1], vec![2, 0]]);
        assert_eq!(shifts[3], vec![vec![0, 0], vec![3, 0]]);
    }

    #[test]
    fn equal_rows_force_zero_offsets() {
        let pys = Pyramid::enumerate(&part(&[3, 3]));
        assert_eq!(pys.len(), 1);
        assert_eq!(pys[0].offsets(), &[0, 0]);
    }

    #[test]
    fn single_row_shift_is_zero() {
        let py = Pyramid::left_justified(part(&[4]));
        assert_eq!(py.shift_matrix().rows(), &[vec![0]]);
    }

    #[test]
    fn invalid_offsets_rejected() {
        assert!(Pyramid::new(part(&[2, 5]), vec![4, 0]).is_err());
        assert!(Pyramid::new(part(&[2, 5]), vec![1, 1]).is_err());
        assert!(Pyramid::new(part(&[2, 5]), vec![0]).is_err());
    }

    #[test]
    fn e_for_two_five() {
        for py in Pyramid::enumerate(&part(&[2, 5])) {
            let ld = LieDatum::new(&py);
            assert_eq!(ld.e_support(), &[(1, 2), (3, 4), (4, 5), (5, 6), (6, 7)]);
            assert_eq!(ld.jordan_type(), vec![2, 5]);
        }
    }

    #[test]
    fn one_column_has_zero_e() {
        let ld = LieDatum::new(&Pyramid::left_justified(part(&[1, 1, 1])));
        assert!(ld.e_support().is_empty());
        assert_eq!(ld.d_chi(), 0);
    }

    #[test]
    fn single_row_d_chi() {
        for n in 1..6 {
            let ld = LieDatum::new(&Pyramid::left_justified(part(&[n])));
            assert_eq!(ld.d_chi(), n * (n - 1) / 2);
            // orbit of a regular nilpotent has dimension N² − N
            assert_eq!(2 * ld.d_chi(), n * n - n);
        }
    }

    #[test]
    fn centralizer_examples() {
        let b = CentralizerBasis::new(&Pyramid::left_justified(part(&[1])));
        assert_eq!(b.elements.len(), 1);
        assert_eq!(b.elements[0].units, vec![(1, 1)]);
        let py = Pyramid::left_justified(part(&[2, 5]));
        assert_eq!(centralizer_units(&py, 1, 1, 1), vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn rho_is_minus_index() {
        for py in Pyramid::enumerate(&part(&[1, 2, 4])) {
            let w = Weights::new(&py);
            assert!(w.rho.0.iter().enumerate().all(|(i, &x)| x == -(i as i64 + 1)));
        }
    }

    #[test]
    fn single_box_weights() {
        let w = Weights::new(&Pyramid::left_justified(part(&[1])));
        assert!(w.gamma.is_zero());
        assert!(w.beta.is_zero());
        assert_eq!(w.rho, w.rho_bar);
        assert_eq!(w.rho, w.rho_tilde);
    }

    #[test]
    fn rho_bar_plus_gamma_is_rho_left_justified() {
        let w = Weights::new(&Pyramid::left_justified(part(&[2, 5])));
        assert!(w.rho_bar.add(&w.gamma).sub(&w.rho).is_zero());
    }
}
