//! Whole-pyramid verification of the minimal-module statements.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pyramid::{LieDatum, Pyramid, PyramidSpec};
use crate::scalar::Ring;
use crate::tableaux::{enumerate_cc_classes, enumerate_row_classes, RowClass, Tableau};
use crate::walgebra::{default_bound, CheckReport, WGeneratorTable};

use super::character::expected_d_value;
use super::induced::{
    build_baby_verma, build_induced, highest_weight_check, whittaker_d_eigenvalues,
};
use super::module::{are_isomorphic, IsoVerdict};

/// Per-class result of the head computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassOutcome {
    /// Row-sorted representative.
    pub entries: Vec<i64>,
    pub column_connected: bool,
    pub head_dim: usize,
    /// The baby Verma module has a unique maximal submodule.
    pub head_unique: bool,
    /// Head compared with `N_χ(A)` for a column-connected member.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iso_to_induced: Option<IsoVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainTheoremReport {
    pub pyramid: PyramidSpec,
    pub p: u64,
    pub d_chi: usize,
    pub minimal_dim: usize,
    pub c_pi: usize,
    pub minimal_heads: usize,
    /// False when only column-connected classes were examined.
    pub exhaustive: bool,
    pub classes: Vec<ClassOutcome>,
    pub checks: CheckReport,
}

impl MainTheoremReport {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }
}

fn minimal_dim(py: &Pyramid, p: u64) -> Result<usize> {
    let d = LieDatum::new(py).d_chi();
    (p as usize).checked_pow(d as u32).ok_or_else(|| Error::GuardExceeded(format!("{p}^{d}")))
}

/// Can every baby Verma module of this pyramid be built within `max_dim`?
pub fn exhaustive_feasible(py: &Pyramid, p: u64, max_dim: usize) -> bool {
    let n = py.n_boxes();
    (p as usize).checked_pow((n * (n - 1) / 2) as u32).is_some_and(|d| d <= max_dim)
}

/// Head of `Z_χ(A)` for one class; with `exhaustive = false` only
/// column-connected classes are accepted and `N_χ(A)` stands in for the head.
pub fn class_outcome<R: Rng + ?Sized>(
    py: &Pyramid,
    p: u64,
    class: &RowClass,
    exhaustive: bool,
    max_dim: usize,
    rng: &mut R,
) -> Result<ClassOutcome> {
    let rep = class.representative();
    let member = class.column_connected_member(Some(p));
    let entries = rep.entries().to_vec();
    if !exhaustive {
        let a = member.ok_or(Error::NotColumnConnected)?;
        let n = build_induced(py, p, &a, max_dim)?;
        let simple = n.is_simple()?;
        return Ok(ClassOutcome {
            entries,
            column_connected: true,
            head_dim: n.dim(),
            head_unique: simple,
            iso_to_induced: None,
        });
    }
    let z = build_baby_verma(py, p, rep, max_dim)?;
    let head = z.simple_head()?;
    let iso_to_induced = match &member {
        Some(a) => {
            let n = build_induced(py, p, a, max_dim)?;
            Some(are_isomorphic(&head.module, &n, rng)?)
        }
        None => None,
    };
    Ok(ClassOutcome {
        entries,
        column_connected: member.is_some(),
        head_dim: head.module.dim(),
        head_unique: head.unique,
        iso_to_induced,
    })
}

/// Classes examined by [`verify_main_theorem`]: all of them, or the
/// column-connected ones when baby Verma modules exceed `max_dim`.
pub fn main_theorem_classes(py: &Pyramid, p: u64, max_dim: usize) -> Result<(Vec<RowClass>, bool)> {
    if exhaustive_feasible(py, p, max_dim) {
        Ok((enumerate_row_classes(py, p)?, true))
    } else {
        Ok((enumerate_cc_classes(py, p)?, false))
    }
}

/// Check the outcomes: minimal heads exactly on column-connected classes,
/// `c_π` of them, every head dimension divisible by `p^{d_χ}`, unique heads
/// and minimal heads isomorphic to `N_χ(A)`.
pub fn assemble_main_theorem(py: &Pyramid, p: u64, exhaustive: bool, classes: Vec<ClassOutcome>) -> Result<MainTheoremReport> {
    let d_chi = LieDatum::new(py).d_chi();
    let min = minimal_dim(py, p)?;
    let c_pi = enumerate_cc_classes(py, p)?.len();
    let mut checks = CheckReport::default();
    for c in &classes {
        let name = format!("{:?}", c.entries);
        let ok_dim = if c.column_connected { c.head_dim == min } else { c.head_dim > min };
        if ok_dim {
            checks.pass();
        } else {
            let want = if c.column_connected { "=" } else { ">" };
            checks.fail("main/head-dim", name.clone(), format!("head dim {} but expected {want} {min}", c.head_dim));
        }
        if c.head_dim % min == 0 {
            checks.pass();
        } else {
            checks.fail("main/divisibility", name.clone(), format!("{} not divisible by {min}", c.head_dim));
        }
        if c.head_unique {
            checks.pass();
        } else {
            checks.fail("main/unique-head", name.clone(), "more than one maximal submodule".to_string());
        }
        match c.iso_to_induced {
            None | Some(IsoVerdict::Isomorphic) => checks.pass(),
            Some(v) => checks.fail("main/iso-induced", name, format!("{v:?}")),
        }
    }
    let minimal_heads = classes.iter().filter(|c| c.head_dim == min).count();
    if minimal_heads == c_pi {
        checks.pass();
    } else {
        checks.fail("main/count", format!("p = {p}"), format!("{minimal_heads} minimal heads, c_pi = {c_pi}"));
    }
    Ok(MainTheoremReport {
        pyramid: py.spec(),
        p,
        d_chi,
        minimal_dim: min,
        c_pi,
        minimal_heads,
        exhaustive,
        classes,
        checks,
    })
}

/// Sequential driver over every class.
pub fn verify_main_theorem<R: Rng + ?Sized>(py: &Pyramid, p: u64, max_dim: usize, rng: &mut R) -> Result<MainTheoremReport> {
    let (classes, exhaustive) = main_theorem_classes(py, p, max_dim)?;
    let outcomes = classes
        .iter()
        .map(|c| class_outcome(py, p, c, exhaustive, max_dim, rng))
        .collect::<Result<Vec<_>>>()?;
    assemble_main_theorem(py, p, exhaustive, outcomes)
}

/// Checks on `N_χ(A)` for every column-connected tableau: dimension
/// `p^{d_χ}`, representation axioms, simplicity, the highest weight vector,
/// a one-dimensional Whittaker space with the expected `D` eigenvalues, and
/// isomorphism exactly between row-equivalent tableaux.
pub fn check_minimal_modules<R: Rng + ?Sized>(py: &Pyramid, p: u64, max_dim: usize, rng: &mut R) -> Result<CheckReport> {
    let ring = Ring::prime_field(p).ok_or(Error::UnsupportedCharacteristic(p))?;
    let min = minimal_dim(py, p)?;
    let table = WGeneratorTable::build(py, ring, default_bound(py))?;
    let mut rep = CheckReport::default();
    let mut by_class: BTreeMap<RowClass, Vec<(Tableau, super::module::MatrixModule)>> = BTreeMap::new();
    for class in enumerate_cc_classes(py, p)? {
        for a in class.column_connected_members(Some(p)) {
            let name = format!("{:?}", a.entries());
            let m = build_induced(py, p, &a, max_dim)?;
            let mut verdict = |id: &str, ok: bool, witness: alloc::string::String| {
                if ok {
                    rep.pass();
                } else {
                    rep.fail(id, name.clone(), witness);
                }
            };
            verdict("minimal/dim", m.dim() == min, format!("dim {} vs {min}", m.dim()));
            let bad = m.axiom_violations();
            verdict("minimal/axioms", bad.is_empty(), bad.join("; "));
            verdict("minimal/simple", m.is_simple()?, "proper submodule found".to_string());
            let hw = highest_weight_check(&m);
            verdict("minimal/highest-weight", hw.is_ok(), hw.err().map(|e| e.to_string()).unwrap_or_default());
            match whittaker_d_eigenvalues(&m, &table) {
                Ok(vals) => {
                    let wrong: Vec<_> = vals
                        .iter()
                        .filter(|(k, &v)| {
                            let crate::walgebra::GenKey::D { i, r } = **k else { return true };
                            expected_d_value(&a, i, r, ring) != v as i128
                        })
                        .map(|(k, v)| format!("{k} = {v}"))
                        .collect();
                    verdict("minimal/whittaker", wrong.is_empty(), wrong.join(", "));
                }
                Err(e) => verdict("minimal/whittaker", false, e.to_string()),
            }
            by_class.entry(class.clone()).or_default().push((a, m));
        }
    }
    let groups: Vec<_> = by_class.into_values().collect();
    for (gi, g) in groups.iter().enumerate() {
        for (hi, h) in groups.iter().enumerate().skip(gi) {
            for (x, (a, ma)) in g.iter().enumerate() {
                for (b, mb) in h.iter().skip(if gi == hi { x + 1 } else { 0 }) {
                    let want = if gi == hi { IsoVerdict::Isomorphic } else { IsoVerdict::NotIsomorphic };
                    let got = are_isomorphic(ma, mb, rng)?;
                    if got == want {
                        rep.pass();
                    } else {
                        rep.fail(
                            "minimal/isomorphism",
                            format!("{:?} vs {:?}", a.entries(), b.entries()),
                            format!("{got:?}, expected {want:?}"),
                        );
                    }
                }
            }
        }
    }
    Ok(rep)
}
