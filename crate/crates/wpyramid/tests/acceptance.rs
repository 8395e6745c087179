//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use wpyramid::config::partitions_up_to;
use wpyramid::pyramids::cmd_pyramids;
use wpyramid::suites::run_verify;
use wpyramid::{Outcome, PyramidSelector, Report, RunConfig, Suite};
use wpyramid_core::linalg::IntMatrix;
use wpyramid_core::pyramid::{centralizer_units, units_matrix, CentralizerBasis, LieDatum, Partition, Pyramid};
use wpyramid_core::tableaux::enumerate_row_classes;

type Verdict = Result<String, String>;

fn config(partitions: Vec<Vec<usize>>, chars: &[u64], suites: &[Suite]) -> RunConfig {
    RunConfig {
        partitions,
        pyramid: PyramidSelector::All,
        characteristics: chars.to_vec(),
        suites: suites.to_vec(),
        seed: 20_240_601,
        ..RunConfig::default()
    }
}

fn passed(r: &Report) -> Verdict {
    let s = &r.summary;
    let msg = format!("{} jobs, {} checks", s.jobs, s.checks);
    if r.outcome() == Outcome::Pass {
        Ok(msg)
    } else {
        let first = r.records.iter().find(|x| x.status != wpyramid::Status::Pass);
        Err(format!("{msg}; {} failed, {} skipped; first: {first:?}", s.failed, s.skipped))
    }
}

fn verify(c: &RunConfig) -> Verdict {
    passed(&run_verify(c).map_err(|e| e.to_string())?)
}

fn pyramid_fixtures() -> Verdict {
    let (text, report) = cmd_pyramids(&Partition::new(vec![2, 5]).unwrap());
    let want_shifts = [[[0, 3], [0, 0]], [[0, 2], [1, 0]], [[0, 1], [2, 0]], [[0, 0], [3, 0]]];
    let want_diagrams = [
        "+---+---+\n| 1 | 2 |\n+---+---+---+---+---+\n| 3 | 4 | 5 | 6 | 7 |\n+---+---+---+---+---+\n",
        "    +---+---+\n    | 1 | 2 |\n+---+---+---+---+---+\n| 3 | 4 | 5 | 6 | 7 |\n+---+---+---+---+---+\n",
        "        +---+---+\n        | 1 | 2 |\n+---+---+---+---+---+\n| 3 | 4 | 5 | 6 | 7 |\n+---+---+---+---+---+\n",
        "            +---+---+\n            | 1 | 2 |\n+---+---+---+---+---+\n| 3 | 4 | 5 | 6 | 7 |\n+---+---+---+---+---+\n",
    ];
    let got = report.data["pyramids"].as_array().ok_or("no pyramid data")?;
    if got.len() != 4 {
        return Err(format!("{} pyramids", got.len()));
    }
    for (k, g) in got.iter().enumerate() {
        let s: Vec<Vec<usize>> = serde_json::from_value(g["shift_matrix"].clone()).map_err(|e| e.to_string())?;
        if s != want_shifts[k].map(|r| r.to_vec()).to_vec() {
            return Err(format!("pyramid {} has shift matrix {s:?}", k + 1));
        }
        if g["diagram"] != want_diagrams[k] || !text.contains(want_diagrams[k]) {
            return Err(format!("pyramid {} diagram differs", k + 1));
        }
    }
    Ok("4 diagrams, 4 shift matrices".into())
}

fn flat(m: &IntMatrix, n: usize) -> Vec<i128> {
    (0..n * n).map(|k| m.get(k / n, k % n)).collect()
}

fn centralizer_suite() -> Verdict {
    let mut pyramids = 0;
    let mut brackets = 0;
    for n in 1..=6 {
        for part in Partition::all_of(n) {
            for py in Pyramid::enumerate(&part) {
                pyramids += 1;
                let lie = LieDatum::new(&py);
                let basis = CentralizerBasis::new(&py);
                let g0 = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).filter(|&(i, j)| py.col(i) == py.col(j)).count();
                if basis.len() != g0 || basis.len() != lie.dim_g0() {
                    return Err(format!("{:?}: {} basis elements, dim g(0) = {g0}", py.spec(), basis.len()));
                }
                let e = lie.e_matrix();
                let mats: Vec<IntMatrix> = basis.elements.iter().map(|c| units_matrix(n, &c.units)).collect();
                let mut stacked = IntMatrix::zeros(mats.len(), n * n);
                for (k, m) in mats.iter().enumerate() {
                    if !e.commutator(m).is_zero() {
                        return Err(format!("{:?}: element {k} does not commute with e", py.spec()));
                    }
                    for (c, v) in flat(m, n).into_iter().enumerate() {
                        stacked.set(k, c, v);
                    }
                }
                if stacked.rank_rational() != mats.len() {
                    return Err(format!("{:?}: basis is dependent", py.spec()));
                }
                let c = |i: usize, j: usize, r: usize| units_matrix(n, &centralizer_units(&py, i, j, r));
                for (x, a) in basis.elements.iter().zip(&mats) {
                    for (y, b) in basis.elements.iter().zip(&mats) {
                        let r = x.r + y.r - 1;
                        let mut rhs = if x.j == y.i { c(x.i, y.j, r) } else { IntMatrix::zeros(n, n) };
                        if x.i == y.j {
                            rhs = rhs.sub(&c(y.i, x.j, r));
                        }
                        if a.commutator(b) != rhs {
                            return Err(format!("{:?}: bracket of {:?} and {:?}", py.spec(), (x.i, x.j, x.r), (y.i, y.j, y.r)));
                        }
                        brackets += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{pyramids} pyramids, {brackets} brackets"))
}

fn relations_suite() -> Verdict {
    let parts: Vec<Vec<usize>> = partitions_up_to(4).into_iter().filter(|p| p.len() <= 3).collect();
    let c = config(parts.clone(), &[0, 2, 3], &[Suite::Relations]);
    let ok = verify(&c)?;
    let control = RunConfig { corrupt: true, ..config(vec![vec![1, 2], vec![2, 2]], &[0, 2, 3], &[Suite::Relations]) };
    let r = run_verify(&control).map_err(|e| e.to_string())?;
    if r.summary.failed == 0 {
        return Err("negative control produced no failure".into());
    }
    Ok(format!("{ok}; control failed {} of {} jobs", r.summary.failed, r.summary.jobs))
}

fn invariance_suite() -> Verdict {
    let ok = verify(&config(partitions_up_to(5), &[0, 2, 3], &[Suite::Invariance]))?;
    let control = RunConfig { corrupt: true, ..config(vec![vec![1, 2], vec![2, 3]], &[0, 2, 3], &[Suite::Invariance]) };
    let r = run_verify(&control).map_err(|e| e.to_string())?;
    if r.summary.failed != r.summary.jobs {
        return Err(format!("negative control failed only {} of {} jobs", r.summary.failed, r.summary.jobs));
    }
    Ok(format!("{ok}; control failed {} of {} jobs", r.summary.failed, r.summary.jobs))
}

fn leading_terms_and_rank() -> Verdict {
    let a = verify(&config(partitions_up_to(5), &[0], &[Suite::LeadingTerms]))?;
    let b = verify(&config(partitions_up_to(5), &[0, 2, 3], &[Suite::PbwRank]))?;
    Ok(format!("leading terms {a}; rank {b}"))
}

fn one_dim_suite() -> Verdict {
    verify(&config(partitions_up_to(5), &[2, 3], &[Suite::OneDim]))
}

fn minimal_modules_suite() -> Verdict {
    let a = verify(&config(vec![vec![1, 1], vec![1, 2], vec![2, 2], vec![1, 1, 2]], &[2], &[Suite::MinimalModules]))?;
    let b = verify(&config(vec![vec![1, 1], vec![1, 2]], &[3], &[Suite::MinimalModules]))?;
    Ok(format!("p = 2: {a}; p = 3: {b}"))
}

fn main_theorem_suite() -> Verdict {
    let mut out = Vec::new();
    for p in [2u64, 3] {
        let r = run_verify(&config(vec![vec![1, 2]], &[p], &[Suite::MainTheorem])).map_err(|e| e.to_string())?;
        passed(&r)?;
        for (key, v) in &r.data {
            let offsets: Vec<usize> = serde_json::from_value(v["pyramid"]["offsets"].clone()).map_err(|e| e.to_string())?;
            let py = Pyramid::new(Partition::new(vec![1, 2]).unwrap(), offsets).unwrap();
            let classes = enumerate_row_classes(&py, p).unwrap().len();
            if v["exhaustive"] != true || v["classes"].as_array().map(Vec::len) != Some(classes) {
                return Err(format!("{key}: not every row class was examined"));
            }
            out.push(format!("p={p} {classes} classes, c_pi={}", v["c_pi"]));
        }
    }
    Ok(out.join("; "))
}

fn fp_factoring_suite() -> Verdict {
    let c = RunConfig { samples: 1000, ..config(partitions_up_to(5), &[2, 3, 5], &[Suite::FpFactoring]) };
    verify(&c)
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Verdict); 9] = [
        ("pyramid fixtures", Duration::from_secs(1), pyramid_fixtures),
        ("centralizer basis", Duration::from_secs(30), centralizer_suite),
        ("shifted Yangian relations", Duration::from_secs(600), relations_suite),
        ("invariance and truncation", Duration::from_secs(300), invariance_suite),
        ("leading terms and PBW rank", Duration::from_secs(300), leading_terms_and_rank),
        ("one-dimensional modules", Duration::from_secs(60), one_dim_suite),
        ("minimal modules", Duration::from_secs(600), minimal_modules_suite),
        ("main theorem, all row classes", Duration::from_secs(900), main_theorem_suite),
        ("F_p factoring criterion", Duration::from_secs(60), fp_factoring_suite),
    ];
    let mut failures = 0;
    for (k, (name, limit, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let verdict = run();
        let elapsed = t.elapsed();
        let verdict = match verdict {
            Ok(msg) if elapsed > limit => Err(format!("{msg}; took {elapsed:.1?}, limit {limit:?}")),
            v => v,
        };
        match verdict {
            Ok(msg) => println!("PASS {} {name}: {msg} ({elapsed:.2?})", k + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {} {name}: {msg}", k + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
