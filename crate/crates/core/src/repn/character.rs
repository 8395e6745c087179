//! One-dimensional modules: characters of `U(𝔭)` attached to column-connected
//! tableaux, their values on W-algebra generators, and the 𝔽_p factoring test.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pbw::Element;
use crate::pyramid::{LieDatum, Pyramid, Weights};
use crate::scalar::{elementary_symmetric, is_prime, Ring};
use crate::tableaux::{enumerate_cc_classes, enumerate_row_classes, RowClass, Tableau};
use crate::walgebra::{default_bound, CheckReport, GenKey, WGeneratorTable};

/// Which ρ-shift defines the diagonal weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shift {
    /// `λ_A − ρ̃`, the module `k̃_A`.
    RhoTilde,
    /// `λ_A − ρ̄`, the module `k̄_A`.
    RhoBar,
}

/// A linear character of `𝔭`, zero off the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDimCharacter {
    tableau: Tableau,
    shift: Shift,
    ring: Ring,
    diagonal: Vec<i128>,
}

impl OneDimCharacter {
    /// Defined iff `A` is column connected (read in `ring`).
    pub fn new(a: &Tableau, shift: Shift, ring: Ring) -> Result<Self> {
        let cc = match ring.characteristic() {
            0 => a.is_column_connected(),
            p => a.is_column_connected_mod(p),
        };
        if !cc {
            return Err(Error::NotColumnConnected);
        }
        let w = Weights::new(a.pyramid());
        let rho = match shift {
            Shift::RhoTilde => &w.rho_tilde,
            Shift::RhoBar => &w.rho_bar,
        };
        let diagonal = (1..=a.pyramid().n_boxes())
            .map(|b| ring.reduce(a.entry(b) as i128 - rho.coord(b) as i128))
            .collect();
        Ok(OneDimCharacter { tableau: a.clone(), shift, ring, diagonal })
    }

    pub fn tableau(&self) -> &Tableau {
        &self.tableau
    }

    pub fn shift(&self) -> Shift {
        self.shift
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Value on `e[i,j]`.
    pub fn value(&self, i: usize, j: usize) -> i128 {
        if i == j {
            self.diagonal[i - 1]
        } else {
            0
        }
    }
}

/// Evaluate `x ∈ U(𝔭)` on the one-dimensional module of `c`.
pub fn one_dim_action(x: &Element, c: &OneDimCharacter) -> Result<i128> {
    let ctx = x.context();
    if ctx.ring() != c.ring || ctx.lie().pyramid() != c.tableau.pyramid() {
        return Err(Error::ContextMismatch);
    }
    let ring = c.ring;
    let mut total = 0i128;
    for (mono, &coeff) in x.terms() {
        let mut v = coeff;
        for &(g, e) in mono.pairs() {
            let (i, j) = ctx.unit(g);
            if !ctx.lie().in_p(i, j) {
                return Err(Error::NotInContext(i, j));
            }
            v = ring.mul(v, ring.pow(c.value(i, j), e));
            if ring.is_zero(v) {
                break;
            }
        }
        total = ring.add(total, v);
    }
    Ok(total)
}

/// `e_r(a_{i,1}+i, …, a_{i,p_i}+i)`.
pub fn expected_d_value(a: &Tableau, i: usize, r: usize, ring: Ring) -> i128 {
    let xs: Vec<i128> = a.row_entries(i).into_iter().map(|x| ring.reduce(x as i128 + i as i128)).collect();
    elementary_symmetric(ring, &xs, r)
}

/// Where tableau entries are drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryDomain {
    /// All of `𝔽_p`.
    Prime(u64),
    /// Integers `lo, …, lo + width − 1` in characteristic 0.
    Window { lo: i64, width: u64 },
}

impl EntryDomain {
    pub fn ring(self) -> Ring {
        match self {
            EntryDomain::Prime(p) => Ring::prime_field(p).unwrap_or(Ring::INTEGERS),
            EntryDomain::Window { .. } => Ring::INTEGERS,
        }
    }
}

/// A column-connected class and its `D_i^{(r)}` values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDimClass {
    pub class: RowClass,
    pub member: Tableau,
    pub values: Vec<(GenKey, i128)>,
}

/// Column-connected row classes of the domain.
pub fn cc_classes(py: &Pyramid, domain: EntryDomain) -> Result<Vec<RowClass>> {
    match domain {
        EntryDomain::Prime(p) => {
            if !is_prime(p) {
                return Err(Error::UnsupportedCharacteristic(p));
            }
            enumerate_cc_classes(py, p)
        }
        EntryDomain::Window { lo, width } => {
            let mut out: Vec<RowClass> = enumerate_row_classes(py, width)?
                .into_iter()
                .map(|c| c.representative().shifted(lo).row_canonical())
                .filter(|c| c.contains_column_connected(None))
                .collect();
            out.sort();
            Ok(out)
        }
    }
}

/// For every column-connected class, the `D_i^{(r)}` values (`1 ≤ r ≤ p_i`) on `k̃_A`.
pub fn classify_one_dim(py: &Pyramid, table: &WGeneratorTable, domain: EntryDomain) -> Result<Vec<OneDimClass>> {
    let ring = domain.ring();
    if table.ring() != ring || table.pyramid() != py {
        return Err(Error::ContextMismatch);
    }
    let p = match domain {
        EntryDomain::Prime(p) => Some(p),
        EntryDomain::Window { .. } => None,
    };
    let keys = super::induced::d_keys(py);
    let mut out = Vec::new();
    for class in cc_classes(py, domain)? {
        let member = class.column_connected_member(p).expect("class was filtered as column connected");
        let c = OneDimCharacter::new(&member, Shift::RhoTilde, ring)?;
        let values = keys
            .iter()
            .map(|&k| Ok((k, one_dim_action(&table.get(k)?, &c)?)))
            .collect::<Result<Vec<_>>>()?;
        out.push(OneDimClass { class, member, values });
    }
    Ok(out)
}

/// Every check on one-dimensional modules for one pyramid: the `D` values match
/// the elementary symmetric formula, every `E`/`F` acts by zero, the value
/// tuples separate classes, and in the 𝔽_p case their number is `c_π`.
pub fn check_one_dim(py: &Pyramid, domain: EntryDomain) -> Result<CheckReport> {
    let ring = domain.ring();
    let table = WGeneratorTable::build(py, ring, default_bound(py))?;
    let classes = classify_one_dim(py, &table, domain)?;
    let mut rep = CheckReport::default();
    let mut seen: BTreeMap<Vec<i128>, Vec<i64>> = BTreeMap::new();
    for cl in &classes {
        let name = format!("{:?}", cl.class.representative().entries());
        let c = OneDimCharacter::new(&cl.member, Shift::RhoTilde, ring)?;
        for &(k, v) in &cl.values {
            let GenKey::D { i, r } = k else { continue };
            let want = expected_d_value(&cl.member, i, r, ring);
            if v == want {
                rep.pass();
            } else {
                rep.fail("one-dim/d-value", format!("{name} {k}"), format!("got {v}, expected {want}"));
            }
        }
        for (k, x) in table.elements() {
            if matches!(k, GenKey::D { .. }) {
                continue;
            }
            let v = one_dim_action(x, &c)?;
            if ring.is_zero(v) {
                rep.pass();
            } else {
                rep.fail("one-dim/ef-zero", format!("{name} {k}"), v.to_string());
            }
        }
        let tuple: Vec<i128> = cl.values.iter().map(|&(_, v)| v).collect();
        let entries = cl.class.representative().entries().to_vec();
        match seen.insert(tuple, entries.clone()) {
            Some(prev) => {
                rep.fail("one-dim/separation", name, format!("same values as {prev:?}"));
            }
            None => rep.pass(),
        }
    }
    if let EntryDomain::Prime(p) = domain {
        let c_pi = enumerate_cc_classes(py, p)?.len();
        if classes.len() == c_pi && seen.len() == c_pi {
            rep.pass();
        } else {
            rep.fail("one-dim/count", format!("p = {p}"), format!("{} distinct characters, c_pi = {c_pi}", seen.len()));
        }
    }
    Ok(rep)
}

/// `𝔽_p[t]/(t² − c₁t − c₀)` for an irreducible quadratic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticExtension {
    p: u64,
    c0: u64,
    c1: u64,
}

/// `x + y·t` in a [`QuadraticExtension`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ext(pub u64, pub u64);

impl QuadraticExtension {
    pub fn new(p: u64) -> Option<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return None;
        }
        for c1 in 0..p {
            for c0 in 0..p {
                if (0..p).all(|x| !(x * x % p + p * p - c1 * x - c0).is_multiple_of(p)) {
                    return Some(QuadraticExtension { p, c0, c1 });
                }
            }
        }
        None
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn from_int(&self, a: i64) -> Ext {
        Ext(a.rem_euclid(self.p as i64) as u64, 0)
    }

    pub fn add(&self, a: Ext, b: Ext) -> Ext {
        Ext((a.0 + b.0) % self.p, (a.1 + b.1) % self.p)
    }

    pub fn sub(&self, a: Ext, b: Ext) -> Ext {
        Ext((a.0 + self.p - b.0) % self.p, (a.1 + self.p - b.1) % self.p)
    }

    pub fn mul(&self, a: Ext, b: Ext) -> Ext {
        let p = self.p;
        let t2 = a.1 * b.1 % p;
        Ext((a.0 * b.0 + t2 * self.c0) % p, (a.0 * b.1 + a.1 * b.0 + t2 * self.c1) % p)
    }

    pub fn pow(&self, mut a: Ext, mut e: u64) -> Ext {
        let mut out = Ext(1, 0);
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(out, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        out
    }

    /// `a^p − a`.
    pub fn artin_schreier(&self, a: Ext) -> Ext {
        self.sub(self.pow(a, self.p), a)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Ext {
        Ext(rng.gen_range(0..self.p), rng.gen_range(0..self.p))
    }
}

fn ext_column_connected(field: &QuadraticExtension, py: &Pyramid, entries: &[Ext]) -> bool {
    let one = Ext(1, 0);
    py.vertical_pairs().iter().all(|&(i, j)| entries[i - 1] == field.add(entries[j - 1], one))
}

/// Nilpotency of `e + diag(a_1^p − a_1, …, a_N^p − a_N)` over `𝔽_{p²}`.
///
/// `entries` must form a column-connected tableau.
pub fn fp_factoring_test(field: &QuadraticExtension, py: &Pyramid, entries: &[Ext]) -> Result<bool> {
    let n = py.n_boxes();
    if entries.len() != n {
        return Err(Error::InvalidTableau(format!("expected {n} entries, got {}", entries.len())));
    }
    if !ext_column_connected(field, py, entries) {
        return Err(Error::NotColumnConnected);
    }
    let lie = LieDatum::new(py);
    let mut m = vec![vec![Ext(0, 0); n]; n];
    for &(i, j) in lie.e_support() {
        m[i - 1][j - 1] = Ext(1, 0);
    }
    for (k, &a) in entries.iter().enumerate() {
        m[k][k] = field.artin_schreier(a);
    }
    let mul = |x: &Vec<Vec<Ext>>, y: &Vec<Vec<Ext>>| {
        let mut z = vec![vec![Ext(0, 0); n]; n];
        for r in 0..n {
            for k in 0..n {
                if x[r][k] == Ext(0, 0) {
                    continue;
                }
                for c in 0..n {
                    z[r][c] = field.add(z[r][c], field.mul(x[r][k], y[k][c]));
                }
            }
        }
        z
    };
    let mut power = m.clone();
    for _ in 1..n {
        power = mul(&power, &m);
    }
    Ok(power.iter().all(|row| row.iter().all(|&x| x == Ext(0, 0))))
}

/// Every entry lies in the prime field.
pub fn entrywise_fp_test(entries: &[Ext]) -> bool {
    entries.iter().all(|e| e.1 == 0)
}

/// A random column-connected filling: each column gets a random bottom entry,
/// drawn from `𝔽_p` with probability `prime_bias`, otherwise from `𝔽_{p²}`.
pub fn random_column_connected<R: Rng + ?Sized>(
    field: &QuadraticExtension,
    py: &Pyramid,
    prime_bias: f64,
    rng: &mut R,
) -> Vec<Ext> {
    let mut entries = vec![Ext(0, 0); py.n_boxes()];
    let all_prime = rng.gen_bool(prime_bias);
    for c in 1..=py.n_cols() {
        let base = if all_prime { Ext(rng.gen_range(0..field.p), 0) } else { field.random(rng) };
        let boxes = py.column_boxes(c);
        let bottom = boxes.iter().map(|&b| py.row(b)).max().unwrap_or(0);
        for &b in boxes {
            let up = (bottom - py.row(b)) as i64;
            entries[b - 1] = field.add(base, field.from_int(up));
        }
    }
    entries
}

/// Entries of an integer tableau as elements of the prime field.
pub fn embed_tableau(field: &QuadraticExtension, a: &Tableau) -> Vec<Ext> {
    a.entries().iter().map(|&x| field.from_int(x)).collect()
}

impl core::fmt::Display for Ext {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.1 == 0 {
            write!(f, "{}", self.0)
        } else {
            write!(f, "{}+{}t", self.0, self.1)
        }
    }
}
