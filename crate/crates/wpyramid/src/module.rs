//! The `module` command: build one module, check it and export its matrices.

use serde::{Deserialize, Serialize};
use wpyramid_core::pyramid::{LieDatum, Pyramid, PyramidSpec};
use wpyramid_core::repn::{
    build_baby_verma, build_induced, highest_weight_check, whittaker_d_eigenvalues, MatrixModule, ModuleExport,
};
use wpyramid_core::repn::character::expected_d_value;
use wpyramid_core::tableaux::Tableau;
use wpyramid_core::walgebra::{default_bound, GenKey, WGeneratorTable};
use wpyramid_core::Ring;

use crate::diagram::draw_tableau;
use crate::report::{Record, Report};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BuildKind {
    /// `N_χ(A)`.
    Induced,
    /// `Z_χ(A)`.
    BabyVerma,
    /// The simple head of `Z_χ(A)`.
    Head,
}

impl std::str::FromStr for BuildKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "induced" => Ok(BuildKind::Induced),
            "baby-verma" => Ok(BuildKind::BabyVerma),
            "head" => Ok(BuildKind::Head),
            _ => Err(Error::Config(format!("unknown module kind `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleConfig {
    pub pyramid: PyramidSpec,
    pub p: u64,
    pub tableau: Vec<i64>,
    pub kind: BuildKind,
    pub guard_dim: usize,
    /// Echoed into the report; the command itself draws no random numbers.
    pub seed: u64,
    pub highest_weight: bool,
    pub whittaker: bool,
}

/// The built module, its checks and its export.
pub struct ModuleRun {
    pub text: String,
    pub report: Report,
    pub export: ModuleExport,
}

pub fn cmd_module(config: &ModuleConfig) -> Result<ModuleRun, Error> {
    let py = Pyramid::try_from(config.pyramid.clone())?;
    let p = config.p;
    let ring = Ring::prime_field(p).ok_or_else(|| Error::Config(format!("{p} is not a prime")))?;
    let a = Tableau::over_fp(&py, config.tableau.clone(), p)?;
    let name = format!("{:?}", a.entries());
    let mut records = Vec::new();
    let mut text = draw_tableau(&a);

    let (m, unique) = match config.kind {
        BuildKind::Induced => (build_induced(&py, p, &a, config.guard_dim)?, None),
        BuildKind::BabyVerma => (build_baby_verma(&py, p, &a, config.guard_dim)?, None),
        BuildKind::Head => {
            let h = build_baby_verma(&py, p, &a, config.guard_dim)?.simple_head()?;
            (h.module, Some(h.unique))
        }
    };
    let d_chi = LieDatum::new(&py).d_chi();
    text.push_str(&format!("{:?} module of dimension {} (p^d_chi = {})\n", config.kind, m.dim(), p.pow(d_chi as u32)));

    let bad = m.axiom_violations();
    records.push(Record::single("module/axioms", &name, bad.is_empty(), (!bad.is_empty()).then(|| bad.join("; "))));
    if config.kind != BuildKind::BabyVerma {
        let simple = m.is_simple()?;
        records.push(Record::single("module/simple", &name, simple, None));
    }
    if let Some(u) = unique {
        records.push(Record::single("module/unique-head", &name, u, None));
    }
    let mut data = Vec::new();
    if config.highest_weight {
        let hw = highest_weight_check(&m);
        records.push(Record::single(
            "module/highest-weight",
            &name,
            hw.is_ok(),
            hw.as_ref().err().map(ToString::to_string),
        ));
        if let Ok(v) = hw {
            data.push(("highest_weight_vector".to_string(), serde_json::json!(v)));
        }
    }
    if config.whittaker {
        whittaker_records(&m, &a, ring, &name, &mut records, &mut data)?;
    }
    let export = m.export();
    let mut report = Report::new("module", config.seed, config, records);
    report.data.insert("dim".into(), serde_json::json!(m.dim()));
    report.data.insert("d_chi".into(), serde_json::json!(d_chi));
    report.data.extend(data);
    Ok(ModuleRun { text, report, export })
}

fn whittaker_records(
    m: &MatrixModule,
    a: &Tableau,
    ring: Ring,
    name: &str,
    records: &mut Vec<Record>,
    data: &mut Vec<(String, serde_json::Value)>,
) -> Result<(), Error> {
    let dim = m.whittaker_vectors().len();
    data.push(("whittaker_dim".into(), serde_json::json!(dim)));
    if dim != 1 {
        return Ok(());
    }
    let py = m.pyramid();
    let table = WGeneratorTable::build(py, ring, default_bound(py))?;
    let vals = whittaker_d_eigenvalues(m, &table)?;
    let mut shown = serde_json::Map::new();
    for (k, v) in vals {
        if let GenKey::D { i, r } = k {
            let want = expected_d_value(a, i, r, ring);
            // only N_χ(A) has a prescribed eigenvalue; others are reported
            if m.kind() == wpyramid_core::repn::ModuleKind::Induced {
                records.push(Record::single(
                    "module/whittaker-d",
                    &format!("{name} {k}"),
                    want == v as i128,
                    (want != v as i128).then(|| format!("{v}, expected {want}")),
                ));
            }
        }
        shown.insert(k.to_string(), serde_json::json!(v));
    }
    data.push(("whittaker_d".into(), serde_json::Value::Object(shown)));
    Ok(())
}
