//! Finite-dimensional `gl_N`-modules over 𝔽_p given by matrices, and the
//! submodule computations used on them.
//!
//! Simplicity, socles and heads are decided exactly. Every module here is a
//! `U_χ(𝔤)`-module with `χ(𝔫⁺) = 0`, so the strictly upper triangular units
//! act nilpotently and (Engel) every nonzero submodule contains a nonzero
//! vector killed by all of them. Enumerating that joint kernel projectively
//! therefore reaches every simple submodule.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Subspace};
use crate::pbw::Element;
use crate::pyramid::{LieDatum, Pyramid, PyramidSpec};

/// Largest number of projective points enumerated in one invariant space.
pub const MAX_POINTS: usize = 1 << 14;

/// Largest intertwiner solution space searched exhaustively for invertibles.
pub const EXHAUSTIVE_HOM_DIM: usize = 4;

/// Random intertwiner samples tried before giving up.
pub const HOM_SAMPLES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleKind {
    /// `N_χ(A)`, induced from `U_0(𝔭)`.
    Induced,
    /// `Z_χ(A)`, induced from `U_0(𝔟)`.
    BabyVerma,
    /// A quotient by a computed radical.
    Head,
    /// Contragredient of another module.
    Dual,
    Custom,
}

/// Matrices of every `e[i,j]` on a common basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixModule {
    kind: ModuleKind,
    p: u32,
    pyramid: Pyramid,
    tableau: Option<Vec<i64>>,
    labels: Vec<Vec<u32>>,
    /// Row-major over `(i, j)`.
    action: Vec<FpMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorExport {
    pub i: usize,
    pub j: usize,
    pub matrix: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleExport {
    pub kind: ModuleKind,
    pub p: u32,
    pub pyramid: PyramidSpec,
    pub tableau: Option<Vec<i64>>,
    pub dim: usize,
    pub generators: Vec<GeneratorExport>,
}

/// Outcome of an isomorphism test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    /// The intertwiner space was too large to search and no invertible was sampled.
    Undecided,
}

/// `M / rad M` together with how it was obtained.
#[derive(Clone, Debug)]
pub struct Head {
    pub module: MatrixModule,
    pub radical: Subspace,
    /// `M` has a unique maximal submodule, i.e. the head is simple.
    pub unique: bool,
}

impl MatrixModule {
    /// `matrices` lists `ρ(e[i,j])` row-major over `(i, j)`.
    pub fn from_matrices(
        kind: ModuleKind,
        p: u32,
        pyramid: &Pyramid,
        tableau: Option<Vec<i64>>,
        labels: Vec<Vec<u32>>,
        matrices: Vec<FpMatrix>,
    ) -> Result<Self> {
        let n = pyramid.n_boxes();
        if matrices.len() != n * n {
            return Err(Error::ModuleCheck(format!("expected {} matrices, got {}", n * n, matrices.len())));
        }
        let dim = matrices[0].rows();
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim || m.prime() != p) {
            return Err(Error::ModuleCheck("matrices differ in size or prime".into()));
        }
        if !labels.is_empty() && labels.len() != dim {
            return Err(Error::ModuleCheck("one label per basis vector".into()));
        }
        Ok(MatrixModule { kind, p, pyramid: pyramid.clone(), tableau, labels, action: matrices })
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn pyramid(&self) -> &Pyramid {
        &self.pyramid
    }

    pub fn tableau(&self) -> Option<&[i64]> {
        self.tableau.as_deref()
    }

    /// Exponent vectors of the PBW basis, when the module was induced.
    pub fn labels(&self) -> &[Vec<u32>] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.pyramid.n_boxes()
    }

    pub fn dim(&self) -> usize {
        self.action[0].rows()
    }

    /// `ρ(e[i,j])`.
    pub fn action(&self, i: usize, j: usize) -> &FpMatrix {
        let n = self.n();
        &self.action[(i - 1) * n + j - 1]
    }

    pub fn generators(&self) -> impl Iterator<Item = ((usize, usize), &FpMatrix)> + '_ {
        let n = self.n();
        self.action.iter().enumerate().map(move |(k, m)| ((k / n + 1, k % n + 1), m))
    }

    pub fn export(&self) -> ModuleExport {
        ModuleExport {
            kind: self.kind,
            p: self.p,
            pyramid: self.pyramid.spec(),
            tableau: self.tableau.clone(),
            dim: self.dim(),
            generators: self
                .generators()
                .map(|((i, j), m)| GeneratorExport { i, j, matrix: m.as_slice().to_vec() })
                .collect(),
        }
    }

    /// Representation axioms: brackets, and `ρ(x)^p − ρ(x^{[p]}) = χ(x)^p` for the
    /// Kazhdan character `χ` of the pyramid (negated on a dual). Returns the violations.
    pub fn axiom_violations(&self) -> Vec<String> {
        let n = self.n();
        let p = self.p;
        let lie = LieDatum::new(&self.pyramid);
        let dim = self.dim();
        let mut bad = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        let lhs = self.action(i, j).commutator(self.action(k, l));
                        let mut rhs = FpMatrix::zeros(p, dim, dim);
                        if j == k {
                            rhs = rhs.add(self.action(i, l));
                        }
                        if l == i {
                            rhs = rhs.sub(self.action(k, j));
                        }
                        if lhs != rhs {
                            bad.push(format!("bracket [e[{i},{j}], e[{k},{l}]]"));
                        }
                    }
                }
                let x = self.action(i, j);
                let mut lhs = x.pow(p);
                if i == j {
                    lhs = lhs.sub(x);
                }
                let c = lie.chi(i, j) as u32 % p;
                let c = if self.kind == ModuleKind::Dual { (p - c) % p } else { c };
                if lhs != FpMatrix::identity(p, dim).scale(c) {
                    bad.push(format!("p-power of e[{i},{j}]"));
                }
            }
        }
        bad
    }

    /// Contragredient module: `e[i,j] ↦ −ρ(e[i,j])ᵀ`.
    pub fn dual(&self) -> MatrixModule {
        let action = self.action.iter().map(|m| m.transpose().scale(self.p - 1)).collect();
        MatrixModule {
            kind: ModuleKind::Dual,
            p: self.p,
            pyramid: self.pyramid.clone(),
            tableau: self.tableau.clone(),
            labels: Vec::new(),
            action,
        }
    }

    /// Smallest submodule containing `seeds`.
    pub fn spin(&self, seeds: &[Vec<u32>]) -> Subspace {
        let mut s = Subspace::new(self.p, self.dim());
        let mut queue: Vec<Vec<u32>> = seeds.iter().filter_map(|v| s.insert(v.clone())).collect();
        while let Some(v) = queue.pop() {
            for m in &self.action {
                if let Some(w) = s.insert(m.mul_vec(&v)) {
                    queue.push(w);
                }
            }
        }
        s
    }

    /// Is `s` stable under every generator?
    pub fn is_submodule(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| self.action.iter().all(|m| s.contains(&m.mul_vec(v))))
    }

    /// Joint kernel of `ρ(e[i,j])` for `i < j`, after checking those act nilpotently.
    pub fn upper_invariants(&self) -> Result<Vec<Vec<u32>>> {
        let n = self.n();
        let dim = self.dim();
        let mut stacked: Vec<Vec<u32>> = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let m = self.action(i, j);
                let mut k = self.p;
                let mut power = m.pow(self.p);
                while (k as usize) < dim && !power.is_zero() {
                    power = power.pow(self.p);
                    k = k.saturating_mul(self.p);
                }
                if !power.is_zero() {
                    return Err(Error::ModuleCheck(format!("e[{i},{j}] does not act nilpotently")));
                }
                stacked.extend((0..dim).map(|r| m.row(r).to_vec()));
            }
        }
        if stacked.is_empty() {
            return Ok(identity_basis(dim));
        }
        Ok(FpMatrix::from_rows(self.p, &stacked).kernel())
    }

    /// A proper nonzero submodule, or `None` when the module is simple.
    pub fn proper_submodule(&self) -> Result<Option<Subspace>> {
        let dim = self.dim();
        if dim == 0 {
            return Err(Error::ModuleCheck("zero module".into()));
        }
        let inv = self.upper_invariants()?;
        for v in projective_points(self.p, &inv)? {
            let s = self.spin(&[v]);
            if s.dim() < dim {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    pub fn is_simple(&self) -> Result<bool> {
        Ok(self.proper_submodule()?.is_none())
    }

    /// Socle, and whether it is simple.
    pub fn socle(&self) -> Result<(Subspace, bool)> {
        let inv = self.upper_invariants()?;
        let points = projective_points(self.p, &inv)?;
        let spins: Vec<Subspace> = points.iter().map(|v| self.spin(core::slice::from_ref(v))).collect();
        let mut socle = Subspace::new(self.p, self.dim());
        let mut some_simple: Option<usize> = None;
        for s in &spins {
            // every point inside a simple module spins to all of it
            let simple = points.iter().zip(&spins).all(|(w, t)| !s.contains(w) || t.dim() == s.dim());
            if simple {
                some_simple.get_or_insert(s.dim());
                for v in s.basis() {
                    socle.insert(v.clone());
                }
            }
        }
        // two different simple submodules would make the socle larger than either
        let unique = some_simple == Some(socle.dim());
        Ok((socle, unique))
    }

    /// Radical as the annihilator of the socle of the dual.
    pub fn radical(&self) -> Result<(Subspace, bool)> {
        let (soc, unique) = self.dual().socle()?;
        Ok((soc.annihilator(), unique))
    }

    /// `M / K` on the basis of non-pivot coordinates of `K`.
    pub fn quotient(&self, k: &Subspace, kind: ModuleKind) -> Result<MatrixModule> {
        if !self.is_submodule(k) {
            return Err(Error::ModuleCheck("quotient by a non-submodule".into()));
        }
        let keep = k.non_pivots();
        let d = keep.len();
        if d == 0 {
            return Err(Error::ModuleCheck("quotient is zero".into()));
        }
        let mut action = Vec::with_capacity(self.action.len());
        for m in &self.action {
            let mut q = FpMatrix::zeros(self.p, d, d);
            for (c, &src) in keep.iter().enumerate() {
                let mut v = m.column(src);
                k.reduce(&mut v);
                for (r, &dst) in keep.iter().enumerate() {
                    q.set(r, c, v[dst]);
                }
            }
            action.push(q);
        }
        let labels = if self.labels.is_empty() { Vec::new() } else { keep.iter().map(|&c| self.labels[c].clone()).collect() };
        Ok(MatrixModule { kind, p: self.p, pyramid: self.pyramid.clone(), tableau: self.tableau.clone(), labels, action })
    }

    /// `M / rad M`.
    pub fn simple_head(&self) -> Result<Head> {
        let (radical, unique) = self.radical()?;
        let module = self.quotient(&radical, ModuleKind::Head)?;
        Ok(Head { module, radical, unique })
    }

    /// Joint kernel of `ρ(x) − χ(x)` over the matrix units of 𝔪.
    pub fn whittaker_vectors(&self) -> Vec<Vec<u32>> {
        let lie = LieDatum::new(&self.pyramid);
        let n = self.n();
        let dim = self.dim();
        let mut stacked: Vec<Vec<u32>> = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if !lie.in_m(i, j) {
                    continue;
                }
                let c = lie.chi(i, j) as u32 % self.p;
                let m = self.action(i, j).sub(&FpMatrix::identity(self.p, dim).scale(c));
                stacked.extend((0..dim).map(|r| m.row(r).to_vec()));
            }
        }
        if stacked.is_empty() {
            return identity_basis(dim);
        }
        FpMatrix::from_rows(self.p, &stacked).kernel()
    }

    /// `x·v` for `x` in an enveloping algebra over 𝔽_p or ℤ (reduced mod p).
    pub fn apply_element(&self, x: &Element, v: &[u32]) -> Vec<u32> {
        let p = self.p as i128;
        let ctx = x.context();
        let mut out = vec![0u32; self.dim()];
        for (mono, &c) in x.terms() {
            let c = c.rem_euclid(p) as u64;
            if c == 0 {
                continue;
            }
            let mut w = v.to_vec();
            for g in mono.factors().into_iter().rev() {
                let (i, j) = ctx.unit(g);
                w = self.action(i, j).mul_vec(&w);
            }
            for (o, &a) in out.iter_mut().zip(&w) {
                *o = ((*o as u64 + c * a as u64) % self.p as u64) as u32;
            }
        }
        out
    }

    /// Matrix of `x` on the subspace `s`, in the coordinates of its reduced basis.
    pub fn restricted_action(&self, x: &Element, s: &Subspace) -> Result<FpMatrix> {
        let k = s.dim();
        let mut m = FpMatrix::zeros(self.p, k, k);
        for (c, v) in s.basis().iter().enumerate() {
            let w = self.apply_element(x, v);
            if !s.contains(&w) {
                return Err(Error::ModuleCheck("element does not preserve the subspace".into()));
            }
            for (r, &piv) in s.pivots().iter().enumerate() {
                m.set(r, c, w[piv]);
            }
        }
        Ok(m)
    }
}

fn identity_basis(dim: usize) -> Vec<Vec<u32>> {
    (0..dim)
        .map(|i| {
            let mut e = vec![0; dim];
            e[i] = 1;
            e
        })
        .collect()
}

/// One nonzero vector per line of `span(basis)`.
pub fn projective_points(p: u32, basis: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
    let k = basis.len();
    let count = (0..k).try_fold(0usize, |acc, _| acc.checked_mul(p as usize)?.checked_add(1));
    match count {
        Some(c) if c <= MAX_POINTS => {}
        _ => return Err(Error::GuardExceeded(format!("{k}-dimensional invariant space over F_{p}"))),
    }
    let Some(n) = basis.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    // leading coefficient 1 at position `lead`, arbitrary after it
    for lead in 0..k {
        let rest = k - lead - 1;
        let total = (p as usize).pow(rest as u32);
        for code in 0..total {
            let mut v = basis[lead].clone();
            let mut c = code;
            for b in &basis[lead + 1..] {
                let a = (c % p as usize) as u64;
                c /= p as usize;
                if a != 0 {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = ((*x as u64 + a * y as u64) % p as u64) as u32;
                    }
                }
            }
            debug_assert_eq!(v.len(), n);
            out.push(v);
        }
    }
    Ok(out)
}

/// Generators of `gl_N` as a Lie algebra: `e[i,i+1]`, `e[i+1,i]` and `e[1,1]`.
fn lie_generators(n: usize) -> Vec<(usize, usize)> {
    let mut v = vec![(1, 1)];
    for i in 1..n {
        v.push((i, i + 1));
        v.push((i + 1, i));
    }
    v
}

/// Joint eigenspaces of the diagonal units as `(weight, basis)` pairs.
///
/// `e[t,t]^p = e[t,t]` on a module, so each acts semisimply with eigenvalues in
/// 𝔽_p and the spaces sum to the module. `None` if they do not (axioms fail).
fn weight_spaces(m: &MatrixModule) -> Option<WeightSpaces> {
    let (p, d) = (m.p, m.dim());
    let mut blocks: WeightSpaces =
        vec![(Vec::new(), FpMatrix::identity(p, d).as_slice().chunks(d.max(1)).map(<[u32]>::to_vec).collect())];
    for t in 1..=m.n() {
        let x = m.action(t, t);
        // projector onto the λ-eigenspace: Π_{μ≠λ} (x − μ)/(λ − μ)
        let projectors: Vec<FpMatrix> = (0..p)
            .map(|l| {
                let mut pr = FpMatrix::identity(p, d);
                for mu in (0..p).filter(|&mu| mu != l) {
                    let inv = crate::linalg::inv_mod(((l + p - mu) % p) as u64, p as u64) as u32;
                    let factor = x.sub(&FpMatrix::identity(p, d).scale(mu)).scale(inv);
                    pr = pr.mul(&factor);
                }
                pr
            })
            .collect();
        let mut next = Vec::new();
        for (w, basis) in &blocks {
            for (l, pr) in projectors.iter().enumerate() {
                let mut s = Subspace::new(p, d);
                for v in basis {
                    s.insert(pr.mul_vec(v));
                }
                if s.dim() > 0 {
                    let mut w = w.clone();
                    w.push(l as u32);
                    next.push((w, s.basis().to_vec()));
                }
            }
        }
        blocks = next;
    }
    (blocks.iter().map(|(_, b)| b.len()).sum::<usize>() == d).then_some(blocks)
}

type WeightSpaces = Vec<(Vec<u32>, Vec<Vec<u32>>)>;

/// Change of basis with weight basis vectors as columns, and each column's weight.
fn weight_basis(p: u32, w: &WeightSpaces) -> (FpMatrix, Vec<&[u32]>) {
    let cols: Vec<Vec<u32>> = w.iter().flat_map(|(_, basis)| basis.iter().cloned()).collect();
    let labels = w.iter().flat_map(|(wt, basis)| basis.iter().map(move |_| wt.as_slice())).collect();
    (FpMatrix::from_rows(p, &cols).transpose(), labels)
}

/// Basis of `Hom(a, b)` as `dim b × dim a` matrices.
///
/// Intertwiners preserve weight spaces, so the unknowns are the blocks
/// between equal weights, written in weight bases of `a` and `b`.
pub fn hom_space(a: &MatrixModule, b: &MatrixModule) -> Result<Vec<FpMatrix>> {
    if a.p != b.p || a.pyramid != b.pyramid {
        return Err(Error::ModuleCheck("modules over different algebras".into()));
    }
    let (Some(wa), Some(wb)) = (weight_spaces(a), weight_spaces(b)) else {
        return Err(Error::ModuleCheck("diagonal units do not act semisimply".into()));
    };
    let p = a.p;
    let pp = p as u64;
    let (da, db) = (a.dim(), b.dim());
    let (qa, la) = weight_basis(p, &wa);
    let (qb, lb) = weight_basis(p, &wb);
    let (Some(qa_inv), Some(qb_inv)) = (qa.inverse(), qb.inverse()) else {
        return Err(Error::ModuleCheck("weight bases are not bases".into()));
    };
    // unknown Y[r][c] exists iff rows r of b and column c of a share a weight
    let mut index = vec![usize::MAX; db * da];
    let mut unknowns = 0;
    for r in 0..db {
        for c in 0..da {
            if lb[r] == la[c] {
                index[r * da + c] = unknowns;
                unknowns += 1;
            }
        }
    }
    let mut eqs = Subspace::new(p, unknowns);
    for (i, j) in lie_generators(a.n()).into_iter().filter(|&(i, j)| i != j) {
        let ra = qa_inv.mul(a.action(i, j)).mul(&qa);
        let rb = qb_inv.mul(b.action(i, j)).mul(&qb);
        for r in 0..db {
            for c in 0..da {
                let mut eq = vec![0u32; unknowns];
                for k in 0..db {
                    let (x, u) = (rb.get(r, k) as u64, index[k * da + c]);
                    if x != 0 && u != usize::MAX {
                        eq[u] = ((eq[u] as u64 + x) % pp) as u32;
                    }
                }
                for k in 0..da {
                    let (x, u) = (ra.get(k, c) as u64, index[r * da + k]);
                    if x != 0 && u != usize::MAX {
                        eq[u] = ((eq[u] as u64 + pp - x) % pp) as u32;
                    }
                }
                if eq.iter().any(|&x| x != 0) {
                    eqs.insert(eq);
                }
            }
        }
    }
    let kernel = if eqs.dim() == 0 {
        identity_basis(unknowns)
    } else {
        FpMatrix::from_rows(p, eqs.basis()).kernel()
    };
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut y = FpMatrix::zeros(p, db, da);
            for (k, &u) in index.iter().enumerate() {
                if u != usize::MAX {
                    y.set(k / da, k % da, v[u]);
                }
            }
            qb.mul(&y).mul(&qa_inv)
        })
        .collect())
}

fn combination(p: u32, basis: &[FpMatrix], coeffs: &[u32]) -> FpMatrix {
    let mut m = FpMatrix::zeros(p, basis[0].rows(), basis[0].cols());
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            m = m.add(&b.scale(c));
        }
    }
    m
}

/// Traces of `ρ(e[i,j])` and of every product `ρ(e[i,j])ρ(e[k,l])`; equal on
/// isomorphic modules.
fn trace_signature(m: &MatrixModule) -> Vec<u32> {
    let p = m.p as u64;
    let d = m.dim();
    let mut out: Vec<u32> = m.action.iter().map(|x| ((0..d).map(|r| x.get(r, r) as u64).sum::<u64>() % p) as u32).collect();
    for x in &m.action {
        for y in &m.action {
            let mut t = 0u64;
            for r in 0..d {
                for (c, &v) in x.row(r).iter().enumerate() {
                    if v != 0 {
                        t = (t + v as u64 * y.get(c, r) as u64) % p;
                    }
                }
            }
            out.push(t as u32);
        }
    }
    out
}

/// Isomorphism test through the intertwiner space.
///
/// Modules with different trace signatures are not isomorphic. A nonzero map between simple modules is invertible. Otherwise the space is
/// searched exhaustively up to dimension [`EXHAUSTIVE_HOM_DIM`], then sampled.
pub fn are_isomorphic<R: Rng + ?Sized>(a: &MatrixModule, b: &MatrixModule, rng: &mut R) -> Result<IsoVerdict> {
    if a.dim() != b.dim() || (a.p == b.p && trace_signature(a) != trace_signature(b)) {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let hom = hom_space(a, b)?;
    if hom.is_empty() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if a.is_simple()? && b.is_simple()? {
        return Ok(IsoVerdict::Isomorphic);
    }
    let p = a.p;
    let d = a.dim();
    if hom.len() <= EXHAUSTIVE_HOM_DIM {
        let total = (p as usize).pow(hom.len() as u32);
        for code in 1..total {
            let mut c = code;
            let coeffs: Vec<u32> = (0..hom.len())
                .map(|_| {
                    let x = (c % p as usize) as u32;
                    c /= p as usize;
                    x
                })
                .collect();
            if combination(p, &hom, &coeffs).rank() == d {
                return Ok(IsoVerdict::Isomorphic);
            }
        }
        return Ok(IsoVerdict::NotIsomorphic);
    }
    for _ in 0..HOM_SAMPLES {
        let coeffs: Vec<u32> = (0..hom.len()).map(|_| rng.gen_range(0..p)).collect();
        if combination(p, &hom, &coeffs).rank() == d {
            return Ok(IsoVerdict::Isomorphic);
        }
    }
    Ok(IsoVerdict::Undecided)
}
