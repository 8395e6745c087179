//! `N_χ(A)` and `Z_χ(A)` as matrix modules, the highest weight vector of
//! `N_χ(A)`, and the action of W-algebra elements on Whittaker vectors.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Subspace};
use crate::pbw::{AlgebraContext, Element, Monomial, Straightener};
use crate::pyramid::{LieDatum, Pyramid, Weights};
use crate::scalar::Ring;
use crate::tableaux::Tableau;
use crate::walgebra::{GenKey, WGeneratorTable};

use super::module::{MatrixModule, ModuleKind};

/// Default cap on the dimension of a constructed module.
pub const DEFAULT_MAX_DIM: usize = 1 << 12;

fn check_entries(py: &Pyramid, p: u64, a: &Tableau) -> Result<()> {
    if a.pyramid() != py {
        return Err(Error::InvalidTableau("tableau is on a different pyramid".into()));
    }
    if let Some(x) = a.entries().iter().find(|&&x| x < 0 || x as u64 >= p) {
        return Err(Error::InvalidTableau(format!("entry {x} is not a residue mod {p}")));
    }
    Ok(())
}

fn module_dim(p: u64, d: usize, max_dim: usize) -> Result<usize> {
    match (p as usize).checked_pow(d as u32) {
        Some(x) if x <= max_dim => Ok(x),
        _ => Err(Error::GuardExceeded(format!("module dimension {p}^{d} exceeds {max_dim}"))),
    }
}

/// `U_χ(𝔤) ⊗ k` for a subalgebra spanned by `tail`, with `k` given by `tail_values`.
///
/// The basis is the ordered monomials in `head` with exponents below `p`;
/// `e·(monomial)` is straightened with `head` leftmost and the tail evaluated.
fn induce(
    py: &Pyramid,
    p: u64,
    head: Vec<(usize, usize)>,
    tail: Vec<(usize, usize)>,
    tail_values: Vec<u32>,
    kind: ModuleKind,
    tableau: &Tableau,
    max_dim: usize,
) -> Result<MatrixModule> {
    let lie = LieDatum::new(py);
    let n = lie.n();
    let d = head.len();
    let dim = module_dim(p, d, max_dim)?;
    let mut gens = head;
    gens.extend(tail);
    let psi = gens.iter().map(|&(i, j)| lie.chi(i, j) as i128).collect();
    let ring = Ring::prime_field(p).ok_or(Error::UnsupportedCharacteristic(p))?;
    let ctx: Arc<AlgebraContext> = AlgebraContext::with_order(&lie, ring, gens, Some(psi))?;
    let mut st = Straightener::new(&ctx);

    let pu = p as usize;
    let labels: Vec<Vec<u32>> = (0..dim)
        .map(|mut idx| {
            let mut b = vec![0u32; d];
            for x in b.iter_mut().rev() {
                *x = (idx % pu) as u32;
                idx /= pu;
            }
            b
        })
        .collect();
    let index_of = |b: &[u32]| b.iter().fold(0usize, |acc, &x| acc * pu + x as usize);
    let basis: Vec<Element> = labels
        .iter()
        .map(|b| {
            let pairs = b.iter().enumerate().filter(|(_, &e)| e > 0).map(|(k, &e)| (k as u16, e)).collect();
            Element::monomial(&ctx, Monomial::from_pairs(pairs), 1)
        })
        .collect();

    let mut action = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let x = Element::unit(&ctx, i, j)?;
            let mut m = FpMatrix::zeros(p as u32, dim, dim);
            for (col, v) in basis.iter().enumerate() {
                let prod = st.mul(&x, v)?;
                for (mono, &c) in prod.terms() {
                    let mut b = vec![0u32; d];
                    let mut value = c as u64 % p;
                    for &(g, e) in mono.pairs() {
                        let g = g as usize;
                        if g < d {
                            b[g] = e;
                        } else {
                            let t = tail_values[g - d] as u64;
                            for _ in 0..e {
                                value = value * t % p;
                            }
                        }
                    }
                    if value != 0 {
                        m.add_at(index_of(&b), col, value as u32);
                    }
                }
            }
            action.push(m);
        }
    }
    MatrixModule::from_matrices(kind, p as u32, py, Some(tableau.entries().to_vec()), labels, action)
}

/// `N_χ(A) = U_χ(𝔤) ⊗_{U_0(𝔭)} k̄_A`: the 𝔭-character is `λ_A − ρ̄` on the
/// diagonal and zero elsewhere. Needs `A` column connected over 𝔽_p.
pub fn build_induced(py: &Pyramid, p: u64, a: &Tableau, max_dim: usize) -> Result<MatrixModule> {
    check_entries(py, p, a)?;
    if !a.is_column_connected_mod(p) {
        return Err(Error::NotColumnConnected);
    }
    let lie = LieDatum::new(py);
    let w = Weights::new(py);
    let head = AlgebraContext::m_units(&lie);
    let tail = AlgebraContext::p_units(&lie);
    let values = tail
        .iter()
        .map(|&(i, j)| if i == j { (a.entry(i) - w.rho_bar.coord(i)).rem_euclid(p as i64) as u32 } else { 0 })
        .collect();
    induce(py, p, head, tail, values, ModuleKind::Induced, a, max_dim)
}

/// Negative root units `e[i,j]`, `i > j`, in lexicographic order.
pub fn negative_units(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (1..i).map(move |j| (i, j))).collect()
}

/// `Z_χ(A) = U_χ(𝔤) ⊗_{U_0(𝔟)} k_A`, where `e[t,t]` acts by `a_t + t` (weight
/// `λ_A − ρ`) and the strictly upper triangular units by zero.
pub fn build_baby_verma(py: &Pyramid, p: u64, a: &Tableau, max_dim: usize) -> Result<MatrixModule> {
    check_entries(py, p, a)?;
    let n = py.n_boxes();
    let head = negative_units(n);
    let tail: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
    let values = tail
        .iter()
        .map(|&(i, j)| if i == j { (a.entry(i) + i as i64).rem_euclid(p as i64) as u32 } else { 0 })
        .collect();
    induce(py, p, head, tail, values, ModuleKind::BabyVerma, a, max_dim)
}

/// Pairs `(i, j)` with `col(i) > col(j)` and `row(i) < row(j)`.
pub fn hw_index_set(py: &Pyramid) -> Vec<(usize, usize)> {
    let n = py.n_boxes();
    let mut v = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if py.col(i) > py.col(j) && py.row(i) < py.row(j) {
                v.push((i, j));
            }
        }
    }
    v
}

/// `v = Π_{(i,j)∈I} e[i,j]^{p−1} · (1 ⊗ 1̄_A)` in `N_χ(A)`, after checking that it
/// is nonzero, killed by every `e[i,i+1]` and of weight `λ_A − ρ`.
pub fn highest_weight_check(m: &MatrixModule) -> Result<Vec<u32>> {
    if m.kind() != ModuleKind::Induced {
        return Err(Error::ModuleCheck("highest weight check expects N_χ(A)".into()));
    }
    let a = m.tableau().ok_or_else(|| Error::ModuleCheck("module has no tableau".into()))?.to_vec();
    let p = m.prime();
    let n = m.n();
    // the generator 1 ⊗ 1̄_A is the basis vector with all exponents zero
    let mut v = vec![0u32; m.dim()];
    v[0] = 1;
    for (i, j) in hw_index_set(m.pyramid()) {
        for _ in 0..p - 1 {
            v = m.action(i, j).mul_vec(&v);
        }
    }
    if v.iter().all(|&x| x == 0) {
        return Err(Error::ModuleCheck("highest weight vector vanishes".into()));
    }
    for i in 1..n {
        if m.action(i, i + 1).mul_vec(&v).iter().any(|&x| x != 0) {
            return Err(Error::ModuleCheck(format!("e[{},{}] does not kill v", i, i + 1)));
        }
    }
    for t in 1..=n {
        let c = (a[t - 1] + t as i64).rem_euclid(p as i64) as u64;
        let tv = m.action(t, t).mul_vec(&v);
        if tv.iter().zip(&v).any(|(&x, &y)| x as u64 != c * y as u64 % p as u64) {
            return Err(Error::ModuleCheck(format!("e[{t},{t}] does not act by a_{t} + {t}")));
        }
    }
    Ok(v)
}

/// Whittaker vectors as a subspace.
pub fn whittaker_subspace(m: &MatrixModule) -> Subspace {
    let mut s = Subspace::new(m.prime(), m.dim());
    for v in m.whittaker_vectors() {
        s.insert(v);
    }
    s
}

/// Matrices of table elements on the Whittaker vectors of `m`.
///
/// The table must be over `𝔽_p` for the module's `p`. Keys missing from the
/// table are an error.
pub fn whittaker_action(
    m: &MatrixModule,
    table: &WGeneratorTable,
    keys: &[GenKey],
) -> Result<BTreeMap<GenKey, FpMatrix>> {
    if table.ring().characteristic() != m.prime() as u64 || table.pyramid() != m.pyramid() {
        return Err(Error::ContextMismatch);
    }
    let s = whittaker_subspace(m);
    let mut out = BTreeMap::new();
    for &k in keys {
        out.insert(k, m.restricted_action(&table.get(k)?, &s)?);
    }
    Ok(out)
}

/// `D_i^{(r)}` keys for `1 ≤ r ≤ p_i`.
pub fn d_keys(py: &Pyramid) -> Vec<GenKey> {
    (1..=py.n_rows()).flat_map(|i| (1..=py.row_len(i)).map(move |r| GenKey::D { i, r })).collect()
}

/// Eigenvalues of every `D_i^{(r)}` on a one-dimensional Whittaker space.
pub fn whittaker_d_eigenvalues(m: &MatrixModule, table: &WGeneratorTable) -> Result<BTreeMap<GenKey, u32>> {
    let keys = d_keys(m.pyramid());
    let mats = whittaker_action(m, table, &keys)?;
    mats.into_iter()
        .map(|(k, x)| {
            if x.rows() != 1 {
                return Err(Error::ModuleCheck(format!("Whittaker space has dimension {}", x.rows())));
            }
            Ok((k, x.get(0, 0)))
        })
        .collect()
}
