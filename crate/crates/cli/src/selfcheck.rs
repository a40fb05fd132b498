use std::io::Write;

use ncbinom::params;
use ncbinom::realize::{self, rho::random_poly, PIPELINE_SUITES};
use ncbinom::report::{Clause, VerificationReport};
use ncbinom::rewrite::{check_confluence, PresetName, RelationPreset};
use ncbinom::scalars::CycloScalar;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::suites::{confluence_report, run_jobs, Job};
use crate::{output, with_jobs, CliResult, SelfcheckArgs};

/// Scalars the field axioms are sampled on.
fn field_samples() -> Vec<CycloScalar> {
    ["0", "1", "-3/2", "i", "w", "z", "1+i", "2 - 3*z + z^2 - 1/7*z^3"]
        .iter()
        .map(|s| s.parse().expect("literal"))
        .collect()
}

fn field_axioms() -> VerificationReport {
    let xs = field_samples();
    let mut bad = Vec::new();
    for a in &xs {
        if !a.is_zero() && a * &a.inv().expect("nonzero") != CycloScalar::one() {
            bad.push(format!("inverse of {a}"));
        }
        for b in &xs {
            if a * b != b * a || a + b != b + a {
                bad.push(format!("commutativity at {a}, {b}"));
            }
            for c in &xs {
                if &(a * b) * c != a * &(b * c) || a * &(b + c) != &(a * b) + &(a * c) {
                    bad.push(format!("associativity/distributivity at {a}, {b}, {c}"));
                }
            }
        }
    }
    let residual = if bad.is_empty() { "0".to_string() } else { bad.join("; ") };
    let samples = xs.len();
    VerificationReport::single(
        "field-axioms",
        params! {"samples" => samples},
        Clause::new("", "axioms on all sample triples", "hold", residual, bad.is_empty()),
    )
}

pub fn run(args: &SelfcheckArgs, out: &mut dyn Write) -> CliResult {
    let mut jobs: Vec<Job> = vec![Box::new(|| vec![field_axioms()])];
    let one = CycloScalar::one();
    let mut presets: Vec<RelationPreset> = PresetName::ALL
        .iter()
        .map(|&name| RelationPreset::build(name, &one, Some(&CycloScalar::from_int(2))))
        .collect();
    if args.include_broken_fixture {
        presets.push(RelationPreset::partial_vw_without_dv(&one));
    }
    for preset in presets {
        let degree = args.degree;
        jobs.push(Box::new(move || {
            vec![match check_confluence(&preset, degree) {
                Ok(r) => confluence_report(&r, preset.lambda()),
                Err(e) => VerificationReport::single(
                    "confluence",
                    params! {"preset" => preset.name(), "degree" => degree},
                    Clause::new("error", "", "", e, false),
                ),
            }]
        }));
    }
    for (k, preset) in
        [RelationPreset::first_order_plus(&one), RelationPreset::first_order_minus(&one)].into_iter().enumerate()
    {
        jobs.push(Box::new(move || {
            let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
            (0..50)
                .map(|_| {
                    let p = random_poly(&mut rng, &preset, 4, 6, 5).expect("preset has U and D");
                    realize::verify_rho_agreement(&p, &preset).expect("valid oracle input")
                })
                .collect()
        }));
    }
    for suite in PIPELINE_SUITES {
        for lambda in [one.clone(), CycloScalar::i()] {
            jobs.push(Box::new(move || {
                (0..=5).map(|n| realize::verify_pipeline(suite, n, &lambda).expect("known suite")).collect()
            }));
        }
    }
    let reports = with_jobs(args.jobs, || run_jobs(&jobs))?;
    Ok(output::emit(&reports, args.format, out)?)
}
