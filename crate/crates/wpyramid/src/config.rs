//! Run configuration shared by the CLI and the library entry points.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use wpyramid_core::pyramid::{Partition, Pyramid};
use wpyramid_core::repn::DEFAULT_MAX_DIM;

use crate::Error;

/// Which pyramids of a partition to use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PyramidSelector {
    Left,
    Right,
    All,
    Offsets(Vec<usize>),
}

impl PyramidSelector {
    pub fn select(&self, partition: &Partition) -> Result<Vec<Pyramid>, Error> {
        Ok(match self {
            PyramidSelector::Left => vec![Pyramid::left_justified(partition.clone())],
            PyramidSelector::Right => vec![Pyramid::right_justified(partition.clone())],
            PyramidSelector::All => Pyramid::enumerate(partition),
            PyramidSelector::Offsets(o) => vec![Pyramid::new(partition.clone(), o.clone())?],
        })
    }
}

impl FromStr for PyramidSelector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "left" => Ok(PyramidSelector::Left),
            "right" => Ok(PyramidSelector::Right),
            "all" => Ok(PyramidSelector::All),
            _ => parse_list(s).map(PyramidSelector::Offsets),
        }
    }
}

/// Check suites run by `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Relations,
    Invariance,
    LeadingTerms,
    PbwRank,
    OneDim,
    MinimalModules,
    MainTheorem,
    FpFactoring,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Relations,
        Suite::Invariance,
        Suite::LeadingTerms,
        Suite::PbwRank,
        Suite::OneDim,
        Suite::MinimalModules,
        Suite::MainTheorem,
        Suite::FpFactoring,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Invariance => "invariance",
            Suite::LeadingTerms => "leading-terms",
            Suite::PbwRank => "pbw-rank",
            Suite::OneDim => "one-dim",
            Suite::MinimalModules => "minimal-modules",
            Suite::MainTheorem => "main-theorem",
            Suite::FpFactoring => "fp-factoring",
        }
    }

    /// Suites that need a prime characteristic.
    pub fn needs_prime(self) -> bool {
        matches!(self, Suite::MinimalModules | Suite::MainTheorem | Suite::FpFactoring)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub partitions: Vec<Vec<usize>>,
    pub pyramid: PyramidSelector,
    /// 0 for the integers, otherwise a prime.
    pub characteristics: Vec<u64>,
    pub suites: Vec<Suite>,
    /// Superscript bound for the generator table; `None` uses the default per pyramid.
    pub degree_bound: Option<usize>,
    pub kazhdan_bound: usize,
    /// Largest module dimension built.
    pub guard_dim: usize,
    /// Largest pyramid (in boxes) for which generator tables are built.
    pub guard_boxes: usize,
    /// Integer window used by the one-dim suite in characteristic 0.
    pub window_lo: i64,
    pub window_width: u64,
    /// Random diagonals per pyramid for the fp-factoring suite.
    pub samples: usize,
    pub seed: u64,
    /// 0 uses every available core. Not echoed: results do not depend on it.
    #[serde(skip)]
    pub workers: usize,
    /// Negative control: perturb `D_1^{(1)}` before the table-based suites.
    pub corrupt: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            partitions: Vec::new(),
            pyramid: PyramidSelector::All,
            characteristics: vec![0],
            suites: Vec::new(),
            degree_bound: None,
            kazhdan_bound: 3,
            guard_dim: DEFAULT_MAX_DIM,
            guard_boxes: 8,
            window_lo: -1,
            window_width: 3,
            samples: 1000,
            seed: 0,
            workers: 0,
            corrupt: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.partitions.is_empty() {
            return Err(Error::Config("no partition given".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::Config("no suite given".into()));
        }
        if self.guard_dim == 0 || self.guard_boxes == 0 {
            return Err(Error::Config("guards must be positive".into()));
        }
        if self.window_width == 0 {
            return Err(Error::Config("window width must be positive".into()));
        }
        for &c in &self.characteristics {
            if wpyramid_core::Ring::new(c).is_none() {
                return Err(Error::Config(format!("characteristic {c} is neither 0 nor prime")));
            }
        }
        for p in &self.partitions {
            let part = Partition::new(p.clone())?;
            self.pyramid.select(&part)?;
        }
        Ok(())
    }

    /// Every pyramid selected by the configuration, partitions in the given order.
    pub fn pyramids(&self) -> Result<Vec<Pyramid>, Error> {
        let mut out = Vec::new();
        for p in &self.partitions {
            out.extend(self.pyramid.select(&Partition::new(p.clone())?)?);
        }
        Ok(out)
    }
}

/// Comma-separated unsigned integers.
pub fn parse_list(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Config(format!("`{x}` is not a nonnegative integer in `{s}`"))))
        .collect()
}

/// A partition written as comma-separated parts in any order.
pub fn parse_partition(s: &str) -> Result<Partition, Error> {
    let mut parts = parse_list(s)?;
    parts.sort_unstable();
    Ok(Partition::new(parts)?)
}

/// Comma-separated signed integers.
pub fn parse_entries(s: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Config(format!("`{x}` is not an integer in `{s}`"))))
        .collect()
}

/// All partitions of every `n ≤ max`.
pub fn partitions_up_to(max: usize) -> Vec<Vec<usize>> {
    (1..=max).flat_map(Partition::all_of).map(|p| p.parts().to_vec()).collect()
}
