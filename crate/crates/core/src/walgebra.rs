//! Explicit generators `D`, `E`, `F` of `U(𝔤,e) ⊆ U(𝔭)` and checks of their
//! invariance, shifted-Yangian relations, leading terms and PBW independence.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::rank_mod;
use crate::pbw::{AlgebraContext, Element, Monomial, Parabolic};
use crate::pyramid::{centralizer_units, LieDatum, Pyramid, ShiftMatrix, Weights};
use crate::scalar::Ring;

/// Name of a table element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GenKey {
    D { i: usize, r: usize },
    E { i: usize, j: usize, r: usize },
    F { i: usize, j: usize, r: usize },
}

impl GenKey {
    pub fn superscript(&self) -> usize {
        match *self {
            GenKey::D { r, .. } | GenKey::E { r, .. } | GenKey::F { r, .. } => r,
        }
    }
}

impl fmt::Display for GenKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GenKey::D { i, r } => write!(f, "D_{i}^({r})"),
            GenKey::E { i, j, r } if j == i + 1 => write!(f, "E_{i}^({r})"),
            GenKey::F { i, j, r } if j == i + 1 => write!(f, "F_{i}^({r})"),
            GenKey::E { i, j, r } => write!(f, "E_{i},{j}^({r})"),
            GenKey::F { i, j, r } => write!(f, "F_{i},{j}^({r})"),
        }
    }
}

/// `T_{i,j;x}^{(r)}` of the invariant formula, as an element of `U(𝔭)`.
///
/// The sum over sequences `(i_1,j_1),…,(i_s,j_s)` factorizes over the steps:
/// the sign `(−1)^{r−s}` is `Π(−1)^{k_t−1}` with `k_t` the Kazhdan degree of
/// step `t`, and each interior step with `row(j_t) ≤ x` contributes `−1`.
/// Suffix sums starting at a given box with a given remaining degree are
/// shared across prefixes.
pub fn invariant_t(
    par: &mut Parabolic,
    eta: &Weights,
    i: usize,
    j: usize,
    x: usize,
    r: usize,
) -> Result<Element> {
    let lie = par.lie().clone();
    let py = lie.pyramid().clone();
    let n = py.n_rows();
    if i == 0 || j == 0 || i > n || j > n || x >= n || r == 0 {
        return Err(Error::IndexOutOfRange(format!("T_{{{i},{j};{x}}}^({r}) with n = {n}")));
    }
    let up = par.parabolic().clone();
    let mut memo: HashMap<(usize, usize), Element> = HashMap::new();
    let mut total = Element::zero(&up);
    for &b in py.row_boxes(i) {
        let g = suffix_sum(par, &py, eta, j, x, b, r, &mut memo)?;
        total = total.add(&g)?;
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn suffix_sum(
    par: &mut Parabolic,
    py: &Pyramid,
    w: &Weights,
    target_row: usize,
    x: usize,
    start: usize,
    rem: usize,
    memo: &mut HashMap<(usize, usize), Element>,
) -> Result<Element> {
    if let Some(e) = memo.get(&(start, rem)) {
        return Ok(e.clone());
    }
    let up = par.parabolic().clone();
    let mut out = Element::zero(&up);
    let c0 = py.col(start);
    for end in 1..=py.n_boxes() {
        let c1 = py.col(end);
        if c1 < c0 {
            continue;
        }
        let k = c1 - c0 + 1;
        if k > rem {
            continue;
        }
        let mut tail = Element::zero(&up);
        if k == rem {
            if py.row(end) == target_row {
                tail = Element::one(&up);
            }
        } else {
            let row = py.row(end);
            let mut inner = Element::zero(&up);
            for &next in py.row_boxes(row) {
                let ok = if row > x { c1 < py.col(next) } else { c1 >= py.col(next) };
                if ok {
                    let g = suffix_sum(par, py, w, target_row, x, next, rem - k, memo)?;
                    inner = inner.add(&g)?;
                }
            }
            tail = if row <= x { inner.neg() } else { inner };
        }
        if tail.is_zero() {
            continue;
        }
        let mut factor = Element::unit(&up, start, end)?;
        if start == end {
            factor = factor.add(&Element::scalar(&up, w.eta.coord(start) as i128))?;
        }
        let mut term = par.mul(&factor, &tail)?;
        if (k - 1) % 2 == 1 {
            term = term.neg();
        }
        out = out.add(&term)?;
    }
    memo.insert((start, rem), out.clone());
    Ok(out)
}

/// Limits on table construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableLimits {
    pub max_boxes: usize,
    pub max_bound: usize,
}

impl Default for TableLimits {
    fn default() -> Self {
        TableLimits { max_boxes: 8, max_bound: 12 }
    }
}

/// Default superscript bound: one past the largest PBW superscript, i.e. `l + 1`.
pub fn default_bound(py: &Pyramid) -> usize {
    let s = py.shift_matrix();
    let n = py.n_rows();
    let mut m = py.n_cols();
    for i in 1..=n {
        for j in i + 1..=n {
            m = m.max(s.get(i, j).max(s.get(j, i)) + py.row_len(i));
        }
    }
    m + 1
}

/// The elements `D_i^{(r)}`, `E_{i,j}^{(r)}`, `F_{i,j}^{(r)}` for superscripts up to a bound.
pub struct WGeneratorTable {
    py: Pyramid,
    shift: ShiftMatrix,
    weights: Weights,
    bound: usize,
    par: Parabolic,
    elements: BTreeMap<GenKey, Element>,
    dtilde: BTreeMap<(usize, usize), Element>,
}

impl WGeneratorTable {
    pub fn build(py: &Pyramid, ring: Ring, bound: usize) -> Result<Self> {
        Self::build_limited(py, ring, bound, TableLimits::default())
    }

    pub fn build_limited(py: &Pyramid, ring: Ring, bound: usize, limits: TableLimits) -> Result<Self> {
        if py.n_boxes() > limits.max_boxes {
            return Err(Error::GuardExceeded(format!("N = {} > {}", py.n_boxes(), limits.max_boxes)));
        }
        if bound > limits.max_bound {
            return Err(Error::GuardExceeded(format!("degree bound {bound} > {}", limits.max_bound)));
        }
        let lie = LieDatum::new(py);
        let par = Parabolic::new(&lie, ring);
        let mut t = WGeneratorTable {
            py: py.clone(),
            shift: py.shift_matrix(),
            weights: Weights::new(py),
            bound,
            par,
            elements: BTreeMap::new(),
            dtilde: BTreeMap::new(),
        };
        let n = py.n_rows();
        let w = t.weights.clone();
        for i in 1..=n {
            for r in 1..=bound {
                let d = invariant_t(&mut t.par, &w, i, i, i - 1, r)?;
                t.elements.insert(GenKey::D { i, r }, d);
            }
        }
        for i in 1..n {
            for r in t.shift.get(i, i + 1) + 1..=bound {
                let e = invariant_t(&mut t.par, &w, i, i + 1, i, r)?;
                t.elements.insert(GenKey::E { i, j: i + 1, r }, e);
            }
            for r in t.shift.get(i + 1, i) + 1..=bound {
                let f = invariant_t(&mut t.par, &w, i + 1, i, i, r)?;
                t.elements.insert(GenKey::F { i, j: i + 1, r }, f);
            }
        }
        for gap in 2..n {
            for i in 1..=n - gap {
                let j = i + gap;
                let sj = t.shift.get(j - 1, j);
                for r in t.shift.get(i, j) + 1..=bound {
                    let a = t.get(GenKey::E { i, j: j - 1, r: r - sj })?;
                    let b = t.get(GenKey::E { i: j - 1, j, r: sj + 1 })?;
                    let e = t.par.commutator(&a, &b)?;
                    t.elements.insert(GenKey::E { i, j, r }, e);
                }
                let sj = t.shift.get(j, j - 1);
                for r in t.shift.get(j, i) + 1..=bound {
                    let a = t.get(GenKey::F { i: j - 1, j, r: sj + 1 })?;
                    let b = t.get(GenKey::F { i, j: j - 1, r: r - sj })?;
                    let f = t.par.commutator(&a, &b)?;
                    t.elements.insert(GenKey::F { i, j, r }, f);
                }
            }
        }
        t.rebuild_dtilde()?;
        Ok(t)
    }

    fn rebuild_dtilde(&mut self) -> Result<()> {
        self.dtilde.clear();
        let up = self.par.parabolic().clone();
        for i in 1..=self.py.n_rows() {
            self.dtilde.insert((i, 0), Element::one(&up));
            for r in 1..=self.bound {
                let mut acc = Element::zero(&up);
                for t in 1..=r {
                    let d = self.get(GenKey::D { i, r: t })?;
                    let dt = self.dtilde[&(i, r - t)].clone();
                    acc = acc.add(&self.par.mul(&d, &dt)?)?;
                }
                self.dtilde.insert((i, r), acc.neg());
            }
        }
        Ok(())
    }

    /// Negative control: replace `D_1^{(1)}` by `D_1^{(1)} + e[1,1]`.
    pub fn corrupt(&mut self) -> Result<()> {
        self.corrupt_with(1, 1)
    }

    /// Replace `D_1^{(1)}` by `D_1^{(1)} + e[i,j]` for a unit of 𝔭.
    pub fn corrupt_with(&mut self, i: usize, j: usize) -> Result<()> {
        let up = self.par.parabolic().clone();
        let key = GenKey::D { i: 1, r: 1 };
        let d = self.get(key)?.add(&Element::unit(&up, i, j)?)?;
        self.elements.insert(key, d);
        self.rebuild_dtilde()
    }

    /// A unit whose addition to `D_1^{(1)}` breaks twisted invariance:
    /// `e[a,a]` for the first summand `e[a,b]` of `e`, since `[e[b,a], e[a,a]] = e[b,a]`
    /// and `χ(e[b,a]) = 1`. `None` when `e = 0`, where every element is invariant.
    pub fn invariance_control_unit(&self) -> Option<(usize, usize)> {
        self.par.lie().e_support().first().map(|&(a, _)| (a, a))
    }

    pub fn pyramid(&self) -> &Pyramid {
        &self.py
    }

    pub fn shift(&self) -> &ShiftMatrix {
        &self.shift
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn ring(&self) -> Ring {
        self.par.parabolic().ring()
    }

    pub fn parabolic(&mut self) -> &mut Parabolic {
        &mut self.par
    }

    pub fn elements(&self) -> &BTreeMap<GenKey, Element> {
        &self.elements
    }

    /// Table element, with `D^{(0)} = 1`.
    pub fn get(&self, key: GenKey) -> Result<Element> {
        if let GenKey::D { i, r: 0 } = key {
            if i >= 1 && i <= self.py.n_rows() {
                return Ok(Element::one(self.par.parabolic()));
            }
        }
        self.elements
            .get(&key)
            .cloned()
            .ok_or_else(|| Error::InsufficientBound(format!("{key} is not in the table (bound {})", self.bound)))
    }

    /// `D̃_i^{(r)}`.
    pub fn dtilde(&self, i: usize, r: usize) -> Result<Element> {
        self.dtilde
            .get(&(i, r))
            .cloned()
            .ok_or_else(|| Error::InsufficientBound(format!("D~_{i}^({r}) (bound {})", self.bound)))
    }

    fn d(&self, i: usize, r: usize) -> Result<Element> {
        self.get(GenKey::D { i, r })
    }

    fn e(&self, i: usize, r: usize) -> Result<Element> {
        self.get(GenKey::E { i, j: i + 1, r })
    }

    fn f(&self, i: usize, r: usize) -> Result<Element> {
        self.get(GenKey::F { i, j: i + 1, r })
    }

    fn mul(&mut self, a: &Element, b: &Element) -> Result<Element> {
        self.par.mul(a, b)
    }

    fn br(&mut self, a: &Element, b: &Element) -> Result<Element> {
        self.par.commutator(a, b)
    }

    /// Keys of the generators of the PBW theorem, in a fixed order.
    pub fn pbw_generators(&self) -> Vec<GenKey> {
        let n = self.py.n_rows();
        let s = &self.shift;
        let mut keys = Vec::new();
        for i in 1..=n {
            for r in 1..=self.py.row_len(i) {
                keys.push(GenKey::D { i, r });
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                for r in s.get(i, j) + 1..=s.get(i, j) + self.py.row_len(i) {
                    keys.push(GenKey::E { i, j, r });
                }
                for r in s.get(j, i) + 1..=s.get(j, i) + self.py.row_len(i) {
                    keys.push(GenKey::F { i, j, r });
                }
            }
        }
        keys
    }
}

/// Outcome of one check instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub instance: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A list of check records plus an instance count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checked: usize,
    pub records: Vec<CheckRecord>,
}

impl CheckReport {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.status == Status::Fail).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// Record an instance; passing instances are only counted unless `keep_passes`.
    fn record(&mut self, check_id: &str, instance: String, diff: &Element, keep_passes: bool) {
        self.checked += 1;
        if diff.is_zero() {
            if keep_passes {
                self.records.push(CheckRecord {
                    check_id: check_id.into(),
                    instance,
                    status: Status::Pass,
                    witness: None,
                });
            }
        } else {
            let mut w = diff.dump();
            if w.len() > 400 {
                let cut = (0..=400).rev().find(|&k| w.is_char_boundary(k)).unwrap_or(0);
                w.truncate(cut);
                w.push_str(" …");
            }
            self.records.push(CheckRecord {
                check_id: check_id.into(),
                instance,
                status: Status::Fail,
                witness: Some(w),
            });
        }
    }

    /// Count a passing instance.
    pub fn pass(&mut self) {
        self.checked += 1;
    }

    /// Record a failing instance with its witness.
    pub fn fail(&mut self, check_id: &str, instance: String, witness: String) {
        self.checked += 1;
        self.records.push(CheckRecord { check_id: check_id.into(), instance, status: Status::Fail, witness: Some(witness) });
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.records.extend(other.records);
        self.records.sort();
    }
}

/// Sample parameters for the twisted action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Samples {
    /// `s ∈ {1, …, k}`.
    UpTo(i128),
    /// Chosen from the elements: `2·(max degree) + 1` in characteristic 0,
    /// every `s ∈ 𝔽_p` when `p ≤ 5`, otherwise `{1, …, p − 1}` capped at 8.
    Auto,
}

fn sample_values(samples: &Samples, ring: Ring, degree: u32) -> Vec<i128> {
    match samples {
        Samples::UpTo(k) => (1..=*k).collect(),
        Samples::Auto => {
            let p = ring.characteristic() as i128;
            if p == 0 {
                // tw(s)x − x is a polynomial in s of degree ≤ 2·deg vanishing at 0
                (1..=2 * degree as i128 + 1).collect()
            } else if p <= 5 {
                (0..p).collect()
            } else {
                (1..p.min(9)).collect()
            }
        }
    }
}

/// Every table element is fixed by `tw(u_{i,j}(s))` for every 𝔪-root and sample `s`.
pub fn check_m_invariance(
    table: &mut WGeneratorTable,
    keys: Option<&[GenKey]>,
    samples: &Samples,
) -> Result<CheckReport> {
    let lie = table.par.lie().clone();
    let roots = AlgebraContext::m_units(&lie);
    let ring = table.ring();
    let keys: Vec<GenKey> = match keys {
        Some(k) => k.to_vec(),
        None => table.elements.keys().copied().collect(),
    };
    let mut rep = CheckReport::default();
    for key in keys {
        let x = table.get(key)?;
        let ss = sample_values(samples, ring, x.max_degree());
        for &(i, j) in &roots {
            for &s in &ss {
                let y = table.par.twisted_adjoint(i, j, s, &x)?;
                let diff = y.sub(&x)?;
                rep.record("invariance", format!("{key} u[{i},{j}]({s})"), &diff, false);
            }
        }
    }
    Ok(rep)
}

/// `D_1^{(r)} = 0` for `p_1 < r ≤ p_1 + n`, computing any not already in the table.
pub fn check_truncation(table: &mut WGeneratorTable) -> Result<CheckReport> {
    let p1 = table.py.row_len(1);
    let n = table.py.n_rows();
    let w = table.weights.clone();
    let mut rep = CheckReport::default();
    for r in p1 + 1..=p1 + n {
        let d = match table.elements.get(&GenKey::D { i: 1, r }) {
            Some(d) => d.clone(),
            None => invariant_t(&mut table.par, &w, 1, 1, 0, r)?,
        };
        rep.record("truncation", format!("D_1^({r})"), &d, false);
    }
    Ok(rep)
}

/// Every instance of the shifted-Yangian relations whose superscripts are all ≤ `bound`.
pub fn check_yangian_relations(table: &mut WGeneratorTable, bound: usize) -> Result<CheckReport> {
    if bound > table.bound {
        return Err(Error::InsufficientBound(format!("relations to {bound} need a table built to {bound}, have {}", table.bound)));
    }
    let n = table.py.n_rows();
    let s = table.shift.clone();
    let up = table.par.parabolic().clone();
    let mut rep = CheckReport::default();
    let b = bound;
    let e_lo = |i: usize| s.get(i, i + 1) + 1;
    let f_lo = |i: usize| s.get(i + 1, i) + 1;

    // r2
    for i in 1..=n {
        for j in i..=n {
            for r in 1..=b {
                for q in 1..=b {
                    if (i, r) >= (j, q) {
                        continue;
                    }
                    let (x, y) = (table.d(i, r)?, table.d(j, q)?);
                    let lhs = table.br(&x, &y)?;
                    rep.record("r2", format!("[D_{i}^({r}), D_{j}^({q})]"), &lhs, false);
                }
            }
        }
    }
    // r3
    for i in 1..n {
        for j in 1..n {
            for r in e_lo(i)..=b {
                for q in f_lo(j)..=b {
                    if i == j && r + q - 1 > b {
                        continue;
                    }
                    let (x, y) = (table.e(i, r)?, table.f(j, q)?);
                    let lhs = table.br(&x, &y)?;
                    let mut rhs = Element::zero(&up);
                    if i == j {
                        for t in 0..=r + q - 1 {
                            let a = table.d(i + 1, r + q - 1 - t)?;
                            let c = table.dtilde(i, t)?;
                            rhs = rhs.sub(&table.mul(&a, &c)?)?;
                        }
                    }
                    rep.record("r3", format!("[E_{i}^({r}), F_{j}^({q})]"), &lhs.sub(&rhs)?, false);
                }
            }
        }
    }
    // r4, r5
    for i in 1..=n {
        for j in 1..n {
            let coef = (i == j) as i128 - (i == j + 1) as i128;
            for r in 1..=b {
                for q in e_lo(j)..=b {
                    if coef != 0 && r + q - 1 > b {
                        continue;
                    }
                    let (x, y) = (table.d(i, r)?, table.e(j, q)?);
                    let lhs = table.br(&x, &y)?;
                    let mut rhs = Element::zero(&up);
                    if coef != 0 {
                        for t in 0..r {
                            let a = table.d(i, t)?;
                            let c = table.e(j, r + q - 1 - t)?;
                            rhs = rhs.add(&table.mul(&a, &c)?)?;
                        }
                        rhs = rhs.scale(coef);
                    }
                    rep.record("r4", format!("[D_{i}^({r}), E_{j}^({q})]"), &lhs.sub(&rhs)?, false);
                }
                for q in f_lo(j)..=b {
                    if coef != 0 && r + q - 1 > b {
                        continue;
                    }
                    let (x, y) = (table.d(i, r)?, table.f(j, q)?);
                    let lhs = table.br(&x, &y)?;
                    let mut rhs = Element::zero(&up);
                    if coef != 0 {
                        for t in 0..r {
                            let a = table.f(j, r + q - 1 - t)?;
                            let c = table.d(i, t)?;
                            rhs = rhs.add(&table.mul(&a, &c)?)?;
                        }
                        rhs = rhs.scale(-coef);
                    }
                    rep.record("r5", format!("[D_{i}^({r}), F_{j}^({q})]"), &lhs.sub(&rhs)?, false);
                }
            }
        }
    }
    // r6, r7
    for i in 1..n {
        for r in e_lo(i)..=b {
            for q in r + 1..=b {
                let (x, y) = (table.e(i, r)?, table.e(i, q)?);
                let lhs = table.br(&x, &y)?;
                let mut rhs = Element::zero(&up);
                for t in r..q {
                    let a = table.e(i, t)?;
                    let c = table.e(i, r + q - 1 - t)?;
                    rhs = rhs.add(&table.mul(&a, &c)?)?;
                }
                rep.record("r6", format!("[E_{i}^({r}), E_{i}^({q})]"), &lhs.sub(&rhs)?, false);
            }
        }
        for r in f_lo(i)..=b {
            for q in f_lo(i)..r {
                let (x, y) = (table.f(i, r)?, table.f(i, q)?);
                let lhs = table.br(&x, &y)?;
                let mut rhs = Element::zero(&up);
                for t in q..r {
                    let a = table.f(i, r + q - 1 - t)?;
                    let c = table.f(i, t)?;
                    rhs = rhs.add(&table.mul(&a, &c)?)?;
                }
                rep.record("r7", format!("[F_{i}^({r}), F_{i}^({q})]"), &lhs.sub(&rhs)?, false);
            }
        }
    }
    // r8, r9
    for i in 1..n.saturating_sub(1) {
        for r in e_lo(i)..b {
            for q in e_lo(i + 1)..b {
                let (a1, b1) = (table.e(i, r + 1)?, table.e(i + 1, q)?);
                let (a2, b2) = (table.e(i, r)?, table.e(i + 1, q + 1)?);
                let lhs = table.br(&a1, &b1)?.sub(&table.br(&a2, &b2)?)?;
                let rhs = table.mul(&a2, &b1)?;
                rep.record("r8", format!("E_{i}^({r}), E_{}^({q})", i + 1), &lhs.sub(&rhs)?, false);
            }
        }
        for r in f_lo(i)..b {
            for q in f_lo(i + 1)..b {
                let (a1, b1) = (table.f(i, r)?, table.f(i + 1, q + 1)?);
                let (a2, b2) = (table.f(i, r + 1)?, table.f(i + 1, q)?);
                let lhs = table.br(&a1, &b1)?.sub(&table.br(&a2, &b2)?)?;
                let fq = table.f(i + 1, q)?;
                let rhs = table.mul(&fq, &a1)?;
                rep.record("r9", format!("F_{i}^({r}), F_{}^({q})", i + 1), &lhs.sub(&rhs)?, false);
            }
        }
    }
    // r10, r11
    for i in 1..n {
        for j in i + 2..n {
            for r in e_lo(i)..=b {
                for q in e_lo(j)..=b {
                    let (x, y) = (table.e(i, r)?, table.e(j, q)?);
                    let lhs = table.br(&x, &y)?;
                    rep.record("r10", format!("[E_{i}^({r}), E_{j}^({q})]"), &lhs, false);
                }
            }
            for r in f_lo(i)..=b {
                for q in f_lo(j)..=b {
                    let (x, y) = (table.f(i, r)?, table.f(j, q)?);
                    let lhs = table.br(&x, &y)?;
                    rep.record("r11", format!("[F_{i}^({r}), F_{j}^({q})]"), &lhs, false);
                }
            }
        }
    }
    // r12, r13, r15, r16
    for i in 1..n {
        for j in [i.wrapping_sub(1), i + 1] {
            if j == 0 || j >= n {
                continue;
            }
            for t in e_lo(j)..=b {
                let z = table.e(j, t)?;
                let mut inner: BTreeMap<usize, Element> = BTreeMap::new();
                for r in e_lo(i)..=b {
                    let x = table.e(i, r)?;
                    inner.insert(r, table.br(&x, &z)?);
                }
                for r in e_lo(i)..=b {
                    for q in r..=b {
                        let (xr, xq) = (table.e(i, r)?, table.e(i, q)?);
                        if r == q {
                            let lhs = table.br(&xr, &inner[&r])?;
                            rep.record("r15", format!("E_{i}^({r}), E_{j}^({t})"), &lhs, false);
                        } else {
                            let lhs = table.br(&xr, &inner[&q])?.add(&table.br(&xq, &inner[&r])?)?;
                            rep.record("r12", format!("E_{i}^({r}), E_{i}^({q}), E_{j}^({t})"), &lhs, false);
                        }
                    }
                }
            }
            for t in f_lo(j)..=b {
                let z = table.f(j, t)?;
                let mut inner: BTreeMap<usize, Element> = BTreeMap::new();
                for r in f_lo(i)..=b {
                    let x = table.f(i, r)?;
                    inner.insert(r, table.br(&x, &z)?);
                }
                for r in f_lo(i)..=b {
                    for q in r..=b {
                        let (xr, xq) = (table.f(i, r)?, table.f(i, q)?);
                        if r == q {
                            let lhs = table.br(&xr, &inner[&r])?;
                            rep.record("r16", format!("F_{i}^({r}), F_{j}^({t})"), &lhs, false);
                        } else {
                            let lhs = table.br(&xr, &inner[&q])?.add(&table.br(&xq, &inner[&r])?)?;
                            rep.record("r13", format!("F_{i}^({r}), F_{i}^({q}), F_{j}^({t})"), &lhs, false);
                        }
                    }
                }
            }
        }
    }
    rep.records.sort();
    Ok(rep)
}

/// The centralizer element matching a PBW generator, as an element of `U(𝔭)`.
fn centralizer_of(table: &WGeneratorTable, key: GenKey) -> Result<Element> {
    let up = table.par.parabolic().clone();
    let (i, j, r) = match key {
        GenKey::D { i, r } => (i, i, r),
        GenKey::E { i, j, r } => (i, j, r),
        GenKey::F { i, j, r } => (j, i, r),
    };
    let mut out = Element::zero(&up);
    for (h, k) in centralizer_units(&table.py, i, j, r) {
        out = out.add(&Element::unit(&up, h, k)?)?;
    }
    Ok(out)
}

/// `X − (−1)^{r−1} c` has only monomials with `|a|_e = r, |a| > 1` or `|a|_e < r`.
pub fn check_leading_terms(table: &WGeneratorTable) -> Result<CheckReport> {
    let mut rep = CheckReport::default();
    let up = table.par.parabolic().clone();
    for key in table.pbw_generators() {
        let r = key.superscript() as i64;
        let x = table.get(key)?;
        let c = centralizer_of(table, key)?;
        let lead = if r % 2 == 1 { c } else { c.neg() };
        let diff = x.sub(&lead)?;
        let bad: Vec<(&Monomial, &i128)> = diff
            .terms()
            .iter()
            .filter(|(m, _)| {
                let k = m.kazhdan(&up);
                !(k < r || (k == r && m.degree() > 1))
            })
            .collect();
        if bad.is_empty() {
            rep.checked += 1;
        } else {
            let mut w = Element::zero(&up);
            for (m, &c) in bad {
                w.add_term(m.clone(), c);
            }
            rep.fail("leading-terms", key.to_string(), w.dump());
        }
    }
    Ok(rep)
}

/// Result of the bounded PBW independence check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub kazhdan_bound: usize,
    pub monomials: usize,
    pub predicted: usize,
    pub rank: usize,
}

impl RankReport {
    pub fn passed(&self) -> bool {
        self.rank == self.predicted && self.monomials == self.predicted
    }
}

/// Multisets of generator indices with total weight ≤ `bound` (weights are superscripts).
fn weighted_multisets(weights: &[usize], bound: usize) -> Vec<Vec<usize>> {
    fn rec(w: &[usize], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for k in start..w.len() {
            if w[k] <= left {
                cur.push(k);
                rec(w, k, left - w[k], cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, bound, &mut Vec::new(), &mut out);
    out
}

/// Count of monomials in the centralizer basis of Kazhdan degree ≤ `bound`
/// (`c_{i,j}^{(r)}` has Kazhdan degree `r`).
pub fn centralizer_monomial_count(py: &Pyramid, bound: usize) -> usize {
    let weights: Vec<usize> = crate::pyramid::CentralizerBasis::new(py).elements.iter().map(|c| c.r).collect();
    weighted_multisets(&weights, bound).len()
}

/// Ordered monomials in the PBW generators of Kazhdan degree ≤ `bound`, expanded
/// in `U(𝔭)`, are linearly independent.
///
/// Over ℤ the rank is taken modulo the prime `2^61 − 1`; full rank there
/// certifies full rank over ℚ.
pub fn check_pbw_independence(table: &mut WGeneratorTable, kazhdan_bound: usize) -> Result<RankReport> {
    let keys = table.pbw_generators();
    if let Some(k) = keys.iter().find(|k| k.superscript() > table.bound) {
        return Err(Error::InsufficientBound(format!("{k}")));
    }
    let weights: Vec<usize> = keys.iter().map(GenKey::superscript).collect();
    let monos = weighted_multisets(&weights, kazhdan_bound);
    let up = table.par.parabolic().clone();
    let ring = table.ring();
    let q: u64 = if ring.is_integral() { (1u64 << 61) - 1 } else { ring.characteristic() };
    let mut columns: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<Vec<(usize, u64)>> = Vec::with_capacity(monos.len());
    for word in &monos {
        let mut x = Element::one(&up);
        for &k in word {
            let g = table.get(keys[k])?;
            x = table.mul(&x, &g)?;
        }
        let mut row = Vec::with_capacity(x.len());
        for (m, &c) in x.terms() {
            let n = columns.len();
            let col = *columns.entry(m.clone()).or_insert(n);
            row.push((col, c.rem_euclid(q as i128) as u64));
        }
        rows.push(row);
    }
    let width = columns.len();
    let dense: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|r| {
            let mut v = vec![0u64; width];
            for (c, x) in r {
                v[c] = x;
            }
            v
        })
        .collect();
    let rank = rank_mod(dense, q);
    Ok(RankReport {
        kazhdan_bound,
        monomials: monos.len(),
        predicted: centralizer_monomial_count(&table.py, kazhdan_bound),
        rank,
    })
}
