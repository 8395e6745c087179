use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wpyramid::config::{parse_entries, parse_list, parse_partition, partitions_up_to};
use wpyramid::module::{cmd_module, BuildKind, ModuleConfig};
use wpyramid::pyramids::cmd_pyramids;
use wpyramid::suites::run_verify;
use wpyramid::{write_file, Error, Outcome, PyramidSelector, RunConfig, Suite};

/// Exit status: 0 all checks pass, 1 a check failed, 2 invalid input, 3 no
/// failures but a size guard skipped some work.
#[derive(Parser)]
#[command(name = "wpyramid", version, about = "Pyramids, W-algebra generators and minimal modules for gl_N")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every pyramid of a partition with its shift matrix.
    Pyramids {
        /// Comma-separated parts, e.g. 2,5.
        partition: String,
        /// Also write the JSON report here.
        #[arg(long, env = "WPYRAMID_OUT")]
        out: Option<PathBuf>,
    },
    /// Run check suites and write a JSON report.
    Verify(VerifyArgs),
    /// Build one module, check it, and export its matrices as JSON.
    Module(ModuleArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Partition as comma-separated parts; repeat for several.
    #[arg(long, env = "WPYRAMID_PARTITION", value_delimiter = ';')]
    partition: Vec<String>,
    /// Every partition of every N up to this value, in addition to --partition.
    #[arg(long, env = "WPYRAMID_MAX_N")]
    max_n: Option<usize>,
    /// Pyramid selector: left, right, all, or comma-separated offsets.
    #[arg(long, alias = "offsets", env = "WPYRAMID_PYRAMID", default_value = "all")]
    pyramid: String,
    /// Characteristics, 0 or prime, comma-separated.
    #[arg(long = "char", alias = "p", env = "WPYRAMID_CHAR", default_value = "0")]
    characteristic: String,
    /// Suites, comma-separated: relations, invariance, leading-terms, pbw-rank,
    /// one-dim, minimal-modules, main-theorem, fp-factoring.
    #[arg(long, env = "WPYRAMID_SUITE", value_delimiter = ',', required = true)]
    suite: Vec<String>,
    /// Superscript bound of the generator table (default: one past the largest PBW superscript).
    #[arg(long, env = "WPYRAMID_DEGREE_BOUND")]
    degree_bound: Option<usize>,
    #[arg(long, env = "WPYRAMID_KAZHDAN_BOUND", default_value_t = 3)]
    kazhdan_bound: usize,
    /// Largest module dimension built.
    #[arg(long, env = "WPYRAMID_GUARD_DIM", default_value_t = wpyramid_core::repn::DEFAULT_MAX_DIM)]
    guard_dim: usize,
    /// Largest number of boxes for which generator tables are built.
    #[arg(long, env = "WPYRAMID_GUARD_BOXES", default_value_t = 8)]
    guard_boxes: usize,
    #[arg(long, env = "WPYRAMID_WINDOW_LO", default_value_t = -1, allow_hyphen_values = true)]
    window_lo: i64,
    #[arg(long, env = "WPYRAMID_WINDOW_WIDTH", default_value_t = 3)]
    window_width: u64,
    /// Random samples per pyramid for fp-factoring.
    #[arg(long, env = "WPYRAMID_SAMPLES", default_value_t = 1000)]
    samples: usize,
    #[arg(long, env = "WPYRAMID_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "WPYRAMID_OUT")]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, env = "WPYRAMID_WORKERS", default_value_t = 0)]
    workers: usize,
    /// Negative control: perturb D_1^(1) before the table-based suites.
    #[arg(long, env = "WPYRAMID_CORRUPT")]
    corrupt: bool,
}

#[derive(Args)]
struct ModuleArgs {
    #[arg(long, env = "WPYRAMID_PARTITION")]
    partition: String,
    /// Row offsets; defaults to the left-justified pyramid.
    #[arg(long, alias = "pyramid", env = "WPYRAMID_OFFSETS")]
    offsets: Option<String>,
    #[arg(long, alias = "char", env = "WPYRAMID_P")]
    p: u64,
    /// Entries in box order, each in 0..p.
    #[arg(long, env = "WPYRAMID_TABLEAU")]
    tableau: String,
    /// induced, baby-verma or head.
    #[arg(long, env = "WPYRAMID_KIND", default_value = "induced")]
    kind: String,
    #[arg(long, env = "WPYRAMID_GUARD_DIM", default_value_t = wpyramid_core::repn::DEFAULT_MAX_DIM)]
    guard_dim: usize,
    #[arg(long, env = "WPYRAMID_SEED", default_value_t = 0)]
    seed: u64,
    /// Include the highest weight vector check.
    #[arg(long)]
    highest_weight: bool,
    /// Include the Whittaker space and its D eigenvalues.
    #[arg(long)]
    whittaker: bool,
    /// JSON report path.
    #[arg(long, env = "WPYRAMID_OUT")]
    out: Option<PathBuf>,
    /// Module export path (matrices of every e[i,j]).
    #[arg(long, env = "WPYRAMID_EXPORT")]
    export: Option<PathBuf>,
}

fn verify_config(a: &VerifyArgs) -> Result<RunConfig, Error> {
    let mut partitions = a
        .partition
        .iter()
        .map(|s| parse_partition(s).map(|p| p.parts().to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(n) = a.max_n {
        partitions.extend(partitions_up_to(n));
    }
    Ok(RunConfig {
        partitions,
        pyramid: a.pyramid.parse()?,
        characteristics: parse_list(&a.characteristic)?.into_iter().map(|c| c as u64).collect(),
        suites: a.suite.iter().map(|s| s.parse::<Suite>()).collect::<Result<_, _>>()?,
        degree_bound: a.degree_bound,
        kazhdan_bound: a.kazhdan_bound,
        guard_dim: a.guard_dim,
        guard_boxes: a.guard_boxes,
        window_lo: a.window_lo,
        window_width: a.window_width,
        samples: a.samples,
        seed: a.seed,
        workers: a.workers,
        corrupt: a.corrupt,
    })
}

fn module_config(a: &ModuleArgs) -> Result<ModuleConfig, Error> {
    let partition = parse_partition(&a.partition)?;
    let selector = match &a.offsets {
        Some(s) => s.parse()?,
        None => PyramidSelector::Left,
    };
    let mut found = selector.select(&partition)?;
    if found.len() != 1 {
        return Err(Error::Config("`all` selects more than one pyramid; give offsets".into()));
    }
    let py = found.remove(0);
    Ok(ModuleConfig {
        pyramid: py.spec(),
        p: a.p,
        tableau: parse_entries(&a.tableau)?,
        kind: a.kind.parse::<BuildKind>()?,
        guard_dim: a.guard_dim,
        seed: a.seed,
        highest_weight: a.highest_weight,
        whittaker: a.whittaker,
    })
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Pyramids { partition, out } => {
            let (text, report) = cmd_pyramids(&parse_partition(&partition)?);
            print!("{text}");
            if let Some(path) = out {
                write_file(&path, &report.to_json())?;
            }
            Ok(report.outcome())
        }
        Command::Verify(args) => {
            let config = verify_config(&args)?;
            let report = match run_verify(&config) {
                Ok(r) => r,
                Err(Error::Core(wpyramid_core::Error::GuardExceeded(why))) => {
                    eprintln!("skipped(guard): {why}");
                    return Ok(Outcome::GuardSkip);
                }
                Err(e) => return Err(e),
            };
            for r in report.records.iter().filter(|r| r.checked.is_some() || r.status == wpyramid::Status::Skipped) {
                let status = format!("{:?}", r.status).to_lowercase();
                let detail = match (&r.checked, &r.witness) {
                    (_, Some(w)) => w.clone(),
                    (Some(n), None) => format!("{n} checks"),
                    (None, None) => String::new(),
                };
                println!("{:<16} {:<28} {:<8} {detail}", r.check_id, r.instance, status);
            }
            for (key, v) in report.data.iter().filter(|(k, _)| k.starts_with("main-theorem")) {
                println!("{key}: c_pi = {}, minimal heads = {}, exhaustive = {}", v["c_pi"], v["minimal_heads"], v["exhaustive"]);
            }
            let s = &report.summary;
            println!("{} jobs: {} passed, {} failed, {} skipped; {} checks", s.jobs, s.passed, s.failed, s.skipped, s.checks);
            if let Some(path) = args.out {
                write_file(&path, &report.to_json())?;
            }
            Ok(report.outcome())
        }
        Command::Module(args) => {
            let config = module_config(&args)?;
            let run = match cmd_module(&config) {
                Ok(r) => r,
                Err(Error::Core(wpyramid_core::Error::GuardExceeded(why))) => {
                    eprintln!("skipped(guard): {why}");
                    return Ok(Outcome::GuardSkip);
                }
                Err(e) => return Err(e),
            };
            print!("{}", run.text);
            for r in &run.report.records {
                let status = format!("{:?}", r.status).to_lowercase();
                println!("{:<24} {:<8} {}", r.check_id, status, r.witness.as_deref().unwrap_or(""));
            }
            if let Some(path) = args.out {
                write_file(&path, &run.report.to_json())?;
            }
            if let Some(path) = args.export {
                let mut s = serde_json::to_string_pretty(&run.export)?;
                s.push('\n');
                write_file(&path, &s)?;
            }
            Ok(run.report.outcome())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(o) => ExitCode::from(o.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
