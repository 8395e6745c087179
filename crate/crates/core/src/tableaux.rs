//! π-tableaux, row equivalence and column connectedness.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pyramid::{Pyramid, WeightVector};

/// A filling of the boxes of a pyramid, indexed by box number.
///
/// Entries are integers; over 𝔽_p they are the lifts in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    pyramid: Pyramid,
    entries: Vec<i64>,
}

/// Serialized form of the entries only; the pyramid travels alongside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauEntries {
    pub entries: Vec<i64>,
}

impl Tableau {
    pub fn new(pyramid: &Pyramid, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != pyramid.n_boxes() {
            return Err(Error::InvalidTableau(format!(
                "expected {} entries, got {}",
                pyramid.n_boxes(),
                entries.len()
            )));
        }
        Ok(Tableau { pyramid: pyramid.clone(), entries })
    }

    /// Same as `new` but also checks every entry lies in `0..p`.
    pub fn over_fp(pyramid: &Pyramid, entries: Vec<i64>, p: u64) -> Result<Self> {
        if let Some(a) = entries.iter().find(|&&a| a < 0 || a as u64 >= p) {
            return Err(Error::InvalidTableau(format!("entry {a} is not a residue mod {p}")));
        }
        Tableau::new(pyramid, entries)
    }

    pub fn pyramid(&self) -> &Pyramid {
        &self.pyramid
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Entry of box `b` (1-based).
    pub fn entry(&self, b: usize) -> i64 {
        self.entries[b - 1]
    }

    /// Entries of a row, left to right.
    pub fn row_entries(&self, row: usize) -> Vec<i64> {
        self.pyramid.row_boxes(row).iter().map(|&b| self.entry(b)).collect()
    }

    pub fn to_entries(&self) -> TableauEntries {
        TableauEntries { entries: self.entries.clone() }
    }

    /// Reduce every entry into `0..p`.
    pub fn reduce_mod(&self, p: u64) -> Tableau {
        let entries = self.entries.iter().map(|a| a.rem_euclid(p as i64)).collect();
        Tableau { pyramid: self.pyramid.clone(), entries }
    }

    /// Add a constant to every entry.
    pub fn shifted(&self, c: i64) -> Tableau {
        Tableau { pyramid: self.pyramid.clone(), entries: self.entries.iter().map(|a| a + c).collect() }
    }

    /// `a_i = a_j + 1` whenever box `j` is directly below box `i`.
    pub fn is_column_connected(&self) -> bool {
        self.pyramid.vertical_pairs().iter().all(|&(i, j)| self.entry(i) == self.entry(j) + 1)
    }

    /// Column connectedness with entries read in 𝔽_p.
    pub fn is_column_connected_mod(&self, p: u64) -> bool {
        let p = p as i64;
        self.pyramid
            .vertical_pairs()
            .iter()
            .all(|&(i, j)| (self.entry(i) - self.entry(j) - 1).rem_euclid(p) == 0)
    }

    /// `λ_A = Σ a_i ε_i`.
    pub fn lambda_weight(&self) -> WeightVector {
        WeightVector(self.entries.clone())
    }

    pub fn row_canonical(&self) -> RowClass {
        let mut entries = self.entries.clone();
        for r in 1..=self.pyramid.n_rows() {
            let boxes = self.pyramid.row_boxes(r);
            let mut vals: Vec<i64> = boxes.iter().map(|&b| self.entry(b)).collect();
            vals.sort_unstable();
            for (&b, v) in boxes.iter().zip(vals) {
                entries[b - 1] = v;
            }
        }
        RowClass(Tableau { pyramid: self.pyramid.clone(), entries })
    }

    pub fn is_row_equivalent(&self, other: &Tableau) -> bool {
        self.pyramid == other.pyramid && self.row_canonical() == other.row_canonical()
    }
}

/// A row-equivalence class, represented by the tableau with every row sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowClass(Tableau);

impl PartialOrd for RowClass {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RowClass {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.0.entries.cmp(&other.0.entries)
    }
}

impl RowClass {
    pub fn representative(&self) -> &Tableau {
        &self.0
    }

    /// A column-connected member of the class, if any.
    ///
    /// Every non-bottom box sits on a box of the next row, so an arrangement
    /// of the bottom row determines all rows above it; we try each distinct
    /// arrangement of the bottom row and compare row multisets going up.
    /// With `p = Some(p)` the ladder condition is read modulo `p`.
    pub fn column_connected_member(&self, p: Option<u64>) -> Option<Tableau> {
        self.column_connected_search(p, true).pop()
    }

    /// Every column-connected member of the class, ordered by bottom row.
    pub fn column_connected_members(&self, p: Option<u64>) -> Vec<Tableau> {
        self.column_connected_search(p, false)
    }

    fn column_connected_search(&self, p: Option<u64>, first_only: bool) -> Vec<Tableau> {
        let mut found = Vec::new();
        let t = &self.0;
        let py = t.pyramid();
        let n = py.n_rows();
        let norm = |x: i64| match p {
            Some(p) => x.rem_euclid(p as i64),
            None => x,
        };
        let mut bottom = t.row_entries(n);
        bottom.sort_unstable();
        let wanted: Vec<Vec<i64>> = (1..=n)
            .map(|r| {
                let mut v: Vec<i64> = t.row_entries(r).into_iter().map(norm).collect();
                v.sort_unstable();
                v
            })
            .collect();
        loop {
            let mut entries = vec![0i64; py.n_boxes()];
            for (&b, &v) in py.row_boxes(n).iter().zip(&bottom) {
                entries[b - 1] = v;
            }
            let mut ok = true;
            for r in (1..n).rev() {
                let mut vals = Vec::with_capacity(py.row_len(r));
                for &b in py.row_boxes(r) {
                    let below = py.box_at(r + 1, py.col(b)).expect("box sits on a box");
                    let v = norm(entries[below - 1] + 1);
                    entries[b - 1] = v;
                    vals.push(v);
                }
                vals.sort_unstable();
                if vals != wanted[r - 1] {
                    ok = false;
                    break;
                }
            }
            if ok {
                found.push(Tableau { pyramid: py.clone(), entries });
                if first_only {
                    return found;
                }
            }
            if !next_permutation(&mut bottom) {
                return found;
            }
        }
    }

    pub fn contains_column_connected(&self, p: Option<u64>) -> bool {
        self.column_connected_member(p).is_some()
    }
}

/// Lexicographic successor; false once the sequence is non-increasing.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Exhaustive 𝔽_p enumeration is allowed while `p^N ≤ 2^24` (i.e. `N·log₂ p ≤ 24`).
pub const EXHAUSTIVE_LOG2_LIMIT: u32 = 24;

fn check_guard(py: &Pyramid, p: u64) -> Result<()> {
    let size = (p as u128).checked_pow(py.n_boxes() as u32);
    if size.is_none_or(|s| s > 1u128 << EXHAUSTIVE_LOG2_LIMIT) {
        return Err(Error::GuardExceeded(format!(
            "p^N = {p}^{} exceeds 2^{EXHAUSTIVE_LOG2_LIMIT}",
            py.n_boxes()
        )));
    }
    Ok(())
}

/// Every multiset of `len` residues mod `p`, as sorted vectors.
fn sorted_multisets(len: usize, p: u64) -> Vec<Vec<i64>> {
    fn rec(len: usize, min: i64, p: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in min..p {
            cur.push(v);
            rec(len, v, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, 0, p as i64, &mut Vec::new(), &mut out);
    out
}

/// All row classes of `Tab_{𝔽_p}(π)`, sorted.
pub fn enumerate_row_classes(py: &Pyramid, p: u64) -> Result<Vec<RowClass>> {
    check_guard(py, p)?;
    let per_row: Vec<Vec<Vec<i64>>> = (1..=py.n_rows()).map(|r| sorted_multisets(py.row_len(r), p)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; py.n_rows()];
    'outer: loop {
        let mut entries = vec![0i64; py.n_boxes()];
        for (r, &k) in idx.iter().enumerate() {
            for (&b, &v) in py.row_boxes(r + 1).iter().zip(&per_row[r][k]) {
                entries[b - 1] = v;
            }
        }
        out.push(RowClass(Tableau { pyramid: py.clone(), entries }));
        for r in (0..idx.len()).rev() {
            idx[r] += 1;
            if idx[r] < per_row[r].len() {
                continue 'outer;
            }
            idx[r] = 0;
        }
        break;
    }
    out.sort();
    Ok(out)
}

/// Row classes of `Tab_{𝔽_p}(π)` containing a column-connected tableau; `len()` is `c_π`.
pub fn enumerate_cc_classes(py: &Pyramid, p: u64) -> Result<Vec<RowClass>> {
    Ok(enumerate_row_classes(py, p)?
        .into_iter()
        .filter(|c| c.contains_column_connected(Some(p)))
        .collect())
}
