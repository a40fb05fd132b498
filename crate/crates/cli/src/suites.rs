//! Case grids for every suite.

use std::io::Write;

use ncbinom::binomial;
use ncbinom::error::Result;
use ncbinom::params;
use ncbinom::realize::{self, default_mu_candidates, third_order_explorer, ChangeOfVariables, VECTOR_ITEMS};
use ncbinom::report::{Clause, Params, VerificationReport};
use ncbinom::rewrite::{check_confluence, ConfluenceReport, PresetName, RelationPreset};
use ncbinom::scalars::CycloScalar;
use num_traits::Zero;
use rayon::prelude::*;

use crate::{output, with_jobs, CliResult, VerifyArgs};

/// Every suite `verify` accepts, in the order `all` runs them.
pub const SUITES: [&str; 22] = [
    "thm-nou",
    "rec-3",
    "thm-wrongsign",
    "rec-6",
    "thm-2nd",
    "rec-7",
    "cor-kernel",
    "cor-vw",
    "lemma-l2",
    "lemma-l3",
    "lemma-eq5",
    "final-remark",
    "homogeneity",
    "exp",
    "sin",
    "linear",
    "chvar-gauss",
    "chvar-log",
    "vector",
    "eq5-matrix",
    "third-order",
    "confluence",
];

const FIRST_ORDER: [&str; 5] = ["thm-nou", "rec-3", "thm-wrongsign", "rec-6", "cor-kernel"];

/// One unit of work; a job may yield several reports.
pub type Job = Box<dyn Fn() -> Vec<VerificationReport> + Send + Sync>;

/// Resolved grid parameters.
#[derive(Clone, Debug)]
pub struct Grid {
    pub n_max: usize,
    pub lambdas: Vec<CycloScalar>,
    pub mus: Option<Vec<CycloScalar>>,
    pub j: Option<usize>,
    pub dims: Vec<usize>,
    pub seeds: Option<Vec<u64>>,
    pub degree: usize,
}

pub fn default_lambdas() -> Vec<CycloScalar> {
    ["1", "2", "-3", "1/2", "i", "1+i", "0"].iter().map(|s| s.parse().expect("literal")).collect()
}

impl Grid {
    pub fn for_suite(suite: &str, args: &VerifyArgs) -> Self {
        let default_n = if FIRST_ORDER.contains(&suite) { 10 } else { 8 };
        Grid {
            n_max: args.n_max.unwrap_or(default_n),
            lambdas: args.lambda.clone().unwrap_or_else(default_lambdas),
            mus: args.mu.clone(),
            j: args.j,
            dims: args.m.map_or_else(|| vec![2, 3], |m| vec![m]),
            seeds: args.seed.map(|s| vec![s]),
            degree: args.degree,
        }
    }

    fn seeds_or(&self, default: &[u64]) -> Vec<u64> {
        self.seeds.clone().unwrap_or_else(|| default.to_vec())
    }
}

/// A failing report carrying the error text, so one bad case does not hide
/// the others.
fn error_report(suite: &str, mut params: Params, e: &ncbinom::error::Error) -> VerificationReport {
    params.insert("error".into(), e.to_string());
    VerificationReport::single(suite, params, Clause::new("error", "", "", e, false))
}

fn job(suite: &'static str, params: Params, f: impl Fn() -> Result<VerificationReport> + Send + Sync + 'static) -> Job {
    Box::new(move || vec![f().unwrap_or_else(|e| error_report(suite, params.clone(), &e))])
}

fn nonzero_job(
    suite: &'static str,
    params: Params,
    lambda: &CycloScalar,
    f: impl Fn() -> Result<VerificationReport> + Send + Sync + 'static,
) -> Job {
    if lambda.is_zero() {
        let p = params.clone();
        return Box::new(move || vec![VerificationReport::skipped(suite, p.clone(), "requires λ ≠ 0")]);
    }
    job(suite, params, f)
}

/// `j` values for an `n`: the fixed one if given, else `0..n`.
fn j_values(grid: &Grid, n: usize) -> Vec<usize> {
    grid.j.map_or_else(|| (0..n).collect(), |j| vec![j])
}

pub fn confluence_report(r: &ConfluenceReport, lambda: &CycloScalar) -> VerificationReport {
    let params =
        params! {"preset" => r.preset, "degree" => r.degree, "lambda" => lambda, "words_checked" => r.words_checked};
    let divergent: Vec<String> =
        r.divergent.iter().map(|d| format!("{} -> {{{}}}", d.word, d.forms.join(" | "))).collect();
    let residual = if divergent.is_empty() { "0".to_string() } else { divergent.join("; ") };
    VerificationReport::single(
        "confluence",
        params,
        Clause::new("", "all strategies", "leftmost normal form", residual, r.is_confluent()),
    )
}

/// Jobs for one suite, in deterministic order.
pub fn jobs(suite: &str, grid: &Grid) -> std::result::Result<Vec<Job>, String> {
    let suite: &'static str = SUITES.iter().find(|s| **s == suite).ok_or_else(|| unknown_suite(suite))?;
    let mut out: Vec<Job> = Vec::new();
    let n_max = grid.n_max;
    macro_rules! each_lambda {
        ($range:expr, |$n:ident, $l:ident| $body:expr) => {
            for $l in &grid.lambdas {
                for $n in $range {
                    let $l = $l.clone();
                    out.push($body);
                }
            }
        };
    }
    match suite {
        "thm-nou" => each_lambda!(0..=n_max, |n, l| job(suite, params! {"n" => n, "lambda" => l}, move || {
            binomial::verify_theorem1(n, &l)
        })),
        "rec-3" => each_lambda!(1..=n_max, |n, l| job(suite, params! {"n" => n, "lambda" => l}, move || {
            binomial::verify_recurrence3(n, &l)
        })),
        "thm-wrongsign" => each_lambda!(0..=n_max, |n, l| nonzero_job(
            suite,
            params! {"n" => n, "lambda" => l},
            &l.clone(),
            move || binomial::verify_theorem2(n, &l)
        )),
        "rec-6" => each_lambda!(2..=n_max, |n, l| job(suite, params! {"n" => n, "lambda" => l}, move || {
            binomial::verify_recurrence6(n, &l)
        })),
        "thm-2nd" => each_lambda!(0..=n_max, |n, l| job(suite, params! {"n" => n, "lambda" => l}, move || {
            binomial::verify_theorem3(n, &l)
        })),
        "rec-7" => {
            for n in 3..=n_max {
                out.push(job(suite, params! {"n" => n}, move || binomial::verify_recurrence7(n)));
            }
        }
        "cor-kernel" => {
            for l in &grid.lambdas {
                for n in 1..=n_max {
                    for j in j_values(grid, n) {
                        let l = l.clone();
                        out.push(job(suite, params! {"n" => n, "lambda" => l, "j" => j}, move || {
                            binomial::corollary_kernel_case(n, &l, j)
                        }));
                    }
                }
            }
        }
        "cor-vw" => {
            let mus = grid
                .mus
                .clone()
                .unwrap_or_else(|| ["1", "-2", "i"].iter().map(|s| s.parse().expect("literal")).collect());
            for l in &grid.lambdas {
                for mu in &mus {
                    for n in 0..=n_max {
                        let (l, mu) = (l.clone(), mu.clone());
                        out.push(job(suite, params! {"n" => n, "lambda" => l, "mu" => mu}, move || {
                            binomial::verify_corollary_vw(n, &l, &mu)
                        }));
                    }
                }
            }
            let seed = grid.seeds_or(&[1])[0];
            each_lambda!(0..=n_max, |n, l| job(
                "cor-vw-realized",
                params! {"n" => n, "lambda" => l, "seed" => seed},
                move || { realize::verify_vw_realization(n, &l, seed, 5) }
            ));
        }
        "lemma-l2" => each_lambda!(1..=n_max, |n, l| job(suite, params! {"n" => n, "lambda" => l}, move || {
            binomial::verify_lemma_l2(n, &l)
        })),
        "lemma-l3" => each_lambda!(0..=n_max, |n, l| job(suite, params! {"n" => n, "lambda" => l}, move || {
            binomial::verify_lemma_l3(n, &l)
        })),
        "lemma-eq5" => {
            for n in 0..=n_max {
                out.push(job(suite, params! {"n" => n}, move || binomial::verify_lemma_eq5(n)));
            }
        }
        "final-remark" => each_lambda!(0..=n_max, |n, l| job(suite, params! {"n" => n, "lambda" => l}, move || {
            binomial::verify_final_remark_form(n, &l)
        })),
        "homogeneity" => each_lambda!(0..=n_max, |n, l| nonzero_job(
            suite,
            params! {"n" => n, "lambda" => l},
            &l.clone(),
            move || binomial::verify_homogeneity(n, &l)
        )),
        "exp" => {
            for l in &grid.lambdas {
                for n in 1..=n_max {
                    for j in j_values(grid, n) {
                        let l = l.clone();
                        out.push(job(suite, params! {"n" => n, "lambda" => l, "j" => j}, move || {
                            realize::verify_newexp(n, &l, j)
                        }));
                    }
                }
            }
        }
        "sin" => each_lambda!(0..=n_max, |n, l| job(suite, params! {"n" => n, "lambda" => l}, move || {
            realize::verify_newsin(n, &l)
        })),
        "linear" => {
            for (a, b) in [(1, 0), (2, 5), (1, 1)] {
                for n in 0..=n_max {
                    out.push(job(suite, params! {"n" => n, "a" => a, "b" => b}, move || {
                        realize::verify_linear(n, &CycloScalar::from_int(a), &CycloScalar::from_int(b))
                    }));
                }
            }
        }
        "chvar-gauss" | "chvar-log" => {
            let variant = if suite == "chvar-gauss" { ChangeOfVariables::Gauss } else { ChangeOfVariables::Log };
            for l in &grid.lambdas {
                for n in 1..=n_max {
                    for j in j_values(grid, n) {
                        let l = l.clone();
                        out.push(job(suite, params! {"n" => n, "lambda" => l, "j" => j}, move || {
                            realize::verify_chvar(n, &l, j, variant)
                        }));
                    }
                }
            }
        }
        "vector" => {
            for seed in grid.seeds_or(&[42]) {
                for &m in &grid.dims {
                    for l in &grid.lambdas {
                        for item in 1..=VECTOR_ITEMS {
                            for n in 0..=n_max {
                                let l = l.clone();
                                let p = params! {"item" => item, "n" => n, "lambda" => l, "m" => m, "seed" => seed};
                                out.push(job(suite, p, move || realize::verify_vector(item, n, &l, m, seed)));
                            }
                        }
                    }
                }
            }
        }
        "eq5-matrix" => {
            for seed in grid.seeds_or(&[7, 42]) {
                for &dim in &grid.dims {
                    for n in 0..=n_max {
                        out.push(job(suite, params! {"n" => n, "dim" => dim, "seed" => seed}, move || {
                            realize::verify_eq5_matrix(n, dim, seed)
                        }));
                    }
                }
            }
        }
        "third-order" => {
            let odd: Vec<usize> = (1..=n_max).filter(|n| n % 2 == 1).collect();
            for l in &grid.lambdas {
                let l = l.clone();
                let params = params! {"lambda" => l};
                if l.is_zero() {
                    out.push(Box::new(move || {
                        vec![VerificationReport::skipped(suite, params.clone(), "requires λ ≠ 0")]
                    }));
                    continue;
                }
                let mus = grid.mus.clone().unwrap_or_else(|| default_mu_candidates(&l));
                let odd = odd.clone();
                out.push(Box::new(move || {
                    third_order_explorer(&odd, &l, &mus)
                        .unwrap_or_else(|e| vec![error_report(suite, params.clone(), &e)])
                }));
            }
        }
        "confluence" => {
            for l in &grid.lambdas {
                for name in PresetName::ALL {
                    let (l, degree) = (l.clone(), grid.degree);
                    let mu = CycloScalar::from_int(2);
                    let p = params! {"preset" => name, "degree" => degree, "lambda" => l};
                    out.push(job(suite, p, move || {
                        let preset = RelationPreset::build(name, &l, Some(&mu));
                        Ok(confluence_report(&check_confluence(&preset, degree)?, &l))
                    }));
                }
            }
        }
        _ => unreachable!("suite list and grid out of sync"),
    }
    Ok(out)
}

fn unknown_suite(name: &str) -> String {
    format!("unknown suite `{name}`; expected one of: {}, all", SUITES.join(", "))
}

/// Runs the jobs in parallel and returns the reports in job order.
pub fn run_jobs(jobs: &[Job]) -> Vec<VerificationReport> {
    jobs.par_iter().map(|j| j()).collect::<Vec<_>>().into_iter().flatten().collect()
}

pub fn run_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    let name = args.suite_name();
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name] };
    let mut all_jobs = Vec::new();
    for suite in names {
        all_jobs.extend(jobs(suite, &Grid::for_suite(suite, args))?);
    }
    if args.lambda.as_ref().is_some_and(Vec::is_empty) {
        return Err("--lambda needs at least one value".into());
    }
    let reports = with_jobs(args.jobs, || run_jobs(&all_jobs))?;
    Ok(output::emit(&reports, args.format, out)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n_max: usize) -> Grid {
        Grid {
            n_max,
            lambdas: vec![CycloScalar::from_int(1), CycloScalar::zero()],
            mus: None,
            j: None,
            dims: vec![2],
            seeds: None,
            degree: 3,
        }
    }

    #[test]
    fn every_suite_has_a_grid_that_passes() {
        for suite in SUITES {
            let reports = run_jobs(&jobs(suite, &grid(3)).unwrap());
            assert!(!reports.is_empty(), "{suite}");
            for r in reports {
                assert!(r.status != ncbinom::report::Status::Fail, "{suite}: {r:?}");
            }
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let err = jobs("thm-none", &grid(2)).err().unwrap();
        assert!(err.contains("thm-nou"));
    }

    #[test]
    fn zero_lambda_is_skipped_where_required() {
        let reports = run_jobs(&jobs("homogeneity", &grid(1)).unwrap());
        let skipped: Vec<_> = reports.iter().filter(|r| r.status == ncbinom::report::Status::Skipped).collect();
        assert_eq!(skipped.len(), 2);
        assert_eq!(skipped[0].params["skip_reason"], "requires λ ≠ 0");
    }
}
