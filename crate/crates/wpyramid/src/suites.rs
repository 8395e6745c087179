//! The `verify` command: independent jobs run in parallel, merged in job order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use wpyramid_core::pyramid::Pyramid;
use wpyramid_core::repn::character::random_column_connected;
use wpyramid_core::repn::{
    check_minimal_modules, check_one_dim, entrywise_fp_test, fp_factoring_test, verify_main_theorem, EntryDomain,
    QuadraticExtension,
};
use wpyramid_core::walgebra::{
    check_leading_terms, check_m_invariance, check_pbw_independence, check_truncation, check_yangian_relations,
    default_bound, CheckReport, Samples, TableLimits, WGeneratorTable,
};
use wpyramid_core::Ring;

use crate::config::{RunConfig, Suite};
use crate::report::{Record, Report};
use crate::Error;

/// One suite on one pyramid in one characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    pub suite: Suite,
    pub pyramid: Pyramid,
    pub characteristic: u64,
}

impl Job {
    pub fn instance(&self) -> String {
        format!("{} char {}", pyramid_name(&self.pyramid), self.characteristic)
    }
}

/// `(1,2)@[0,0]`: parts then offsets.
pub fn pyramid_name(py: &Pyramid) -> String {
    let parts: Vec<String> = py.partition().parts().iter().map(ToString::to_string).collect();
    let offs: Vec<String> = py.offsets().iter().map(ToString::to_string).collect();
    format!("({})@[{}]", parts.join(","), offs.join(","))
}

/// Jobs in report order: suites, then pyramids, then characteristics.
/// Suites that need a prime skip characteristic 0.
pub fn plan(config: &RunConfig) -> Result<Vec<Job>, Error> {
    let pyramids = config.pyramids()?;
    let mut jobs = Vec::new();
    for &suite in &config.suites {
        for py in &pyramids {
            for &c in &config.characteristics {
                if c == 0 && suite.needs_prime() {
                    continue;
                }
                jobs.push(Job { suite, pyramid: py.clone(), characteristic: c });
            }
        }
    }
    Ok(jobs)
}

/// Per-job generator: the run seed on a stream selected by the job index.
pub fn job_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn run_verify(config: &RunConfig) -> Result<Report, Error> {
    config.validate()?;
    if config.suites.iter().all(|s| s.needs_prime()) && config.characteristics.iter().all(|&c| c == 0) {
        return Err(Error::Config("the selected suites need a prime characteristic".into()));
    }
    let jobs = plan(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let results: Vec<JobOutput> =
        pool.install(|| jobs.par_iter().enumerate().map(|(k, job)| run_job(config, job, k)).collect());
    let mut records = Vec::new();
    let mut data = Vec::new();
    for (r, d) in results {
        records.extend(r);
        data.extend(d);
    }
    let mut report = Report::new("verify", config.seed, config, records);
    report.data.extend(data);
    Ok(report)
}

fn table(config: &RunConfig, job: &Job) -> wpyramid_core::Result<WGeneratorTable> {
    let ring = Ring::new(job.characteristic).expect("validated characteristic");
    let bound = config.degree_bound.unwrap_or_else(|| default_bound(&job.pyramid));
    let limits = TableLimits { max_boxes: config.guard_boxes, ..TableLimits::default() };
    WGeneratorTable::build_limited(&job.pyramid, ring, bound, limits)
}

type JobOutput = (Vec<Record>, Option<(String, serde_json::Value)>);

/// Run one job; a guard error becomes a skipped record and any other error a failure.
pub fn run_job(config: &RunConfig, job: &Job, index: usize) -> JobOutput {
    let id = job.suite.name();
    let instance = job.instance();
    match job_checks(config, job, index) {
        Ok((rep, data)) => (Record::expand(id, &instance, &rep), data.map(|d| (format!("{id} {instance}"), d))),
        Err(wpyramid_core::Error::GuardExceeded(why)) => (vec![Record::skipped(id, &instance, format!("guard: {why}"))], None),
        Err(e) => (vec![Record::single(id, &instance, false, Some(e.to_string()))], None),
    }
}

fn job_checks(config: &RunConfig, job: &Job, index: usize) -> wpyramid_core::Result<(CheckReport, Option<serde_json::Value>)> {
    let py = &job.pyramid;
    let c = job.characteristic;
    let mut rng = job_rng(config.seed, index);
    Ok(match job.suite {
        Suite::Relations => {
            let mut t = table(config, job)?;
            if config.corrupt {
                t.corrupt()?;
            }
            let bound = t.bound();
            (check_yangian_relations(&mut t, bound)?, None)
        }
        Suite::Invariance => {
            let mut t = table(config, job)?;
            if config.corrupt {
                let (i, j) = t.invariance_control_unit().unwrap_or((1, 1));
                t.corrupt_with(i, j)?;
            }
            let mut rep = check_m_invariance(&mut t, None, &Samples::Auto)?;
            rep.merge(check_truncation(&mut t)?);
            (rep, None)
        }
        Suite::LeadingTerms => {
            let mut t = table(config, job)?;
            if config.corrupt {
                t.corrupt()?;
            }
            (check_leading_terms(&t)?, None)
        }
        Suite::PbwRank => {
            let mut t = table(config, job)?;
            if config.corrupt {
                t.corrupt()?;
            }
            let r = check_pbw_independence(&mut t, config.kazhdan_bound)?;
            let mut rep = CheckReport::default();
            if r.passed() {
                rep.pass();
            } else {
                rep.fail(
                    "pbw-rank",
                    format!("kazhdan bound {}", r.kazhdan_bound),
                    format!("rank {} of {} monomials, predicted {}", r.rank, r.monomials, r.predicted),
                );
            }
            (rep, Some(json(&r)))
        }
        Suite::OneDim => {
            let domain = if c == 0 {
                EntryDomain::Window { lo: config.window_lo, width: config.window_width }
            } else {
                EntryDomain::Prime(c)
            };
            (check_one_dim(py, domain)?, None)
        }
        Suite::MinimalModules => (check_minimal_modules(py, c, config.guard_dim, &mut rng)?, None),
        Suite::MainTheorem => {
            let r = verify_main_theorem(py, c, config.guard_dim, &mut rng)?;
            let v = json(&r);
            (r.checks, Some(v))
        }
        Suite::FpFactoring => (fp_agreement(py, c, config.samples, &mut rng)?, None),
    })
}

fn json<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("result serializes")
}

/// The nilpotency criterion against the entrywise test on random column-connected
/// fillings over `𝔽_{p²}`; a third of the samples are drawn inside `𝔽_p`.
pub fn fp_agreement(py: &Pyramid, p: u64, samples: usize, rng: &mut ChaCha8Rng) -> wpyramid_core::Result<CheckReport> {
    let field = QuadraticExtension::new(p).ok_or(wpyramid_core::Error::UnsupportedCharacteristic(p))?;
    let mut rep = CheckReport::default();
    for _ in 0..samples {
        let a = random_column_connected(&field, py, 1.0 / 3.0, rng);
        let got = fp_factoring_test(&field, py, &a)?;
        let want = entrywise_fp_test(&a);
        if got == want {
            rep.pass();
        } else {
            let shown: Vec<String> = a.iter().map(ToString::to_string).collect();
            rep.fail("fp-factoring", format!("[{}]", shown.join(", ")), format!("nilpotency {got}, entrywise {want}"));
        }
    }
    Ok(rep)
}
