//! Agreement between the symbolic pipeline (normalize, restrict, evaluate on
//! a kernel) and the realization: for a faithful choice of operators, the
//! rewritten polynomial must act exactly as the original one.

use num_traits::Zero;

use super::func::{DerivKind, FuncExpr};
use super::operator::{apply_assigned, Operator, OperatorAssignment};
use crate::binomial::{build_b, BinomialSpec};
use crate::error::{Error, Result};
use crate::freealg::NcPoly;
use crate::params;
use crate::report::{Clause, VerificationReport};
use crate::rewrite::{kernel_eval, normalize, restrict_to_kernel, RelationPreset};
use crate::scalars::CycloScalar;

/// Suites with a realization on exponential-polynomial functions.
pub const PIPELINE_SUITES: [&str; 9] =
    ["thm-nou", "rec-3", "thm-wrongsign", "rec-6", "thm-2nd", "rec-7", "cor-kernel", "lemma-l3", "final-remark"];

fn scalar(x: i64) -> CycloScalar {
    CycloScalar::from_int(x)
}

/// Test functions the operators are applied to.
pub fn sample_functions() -> Vec<FuncExpr> {
    let x = FuncExpr::power(&scalar(1));
    vec![
        FuncExpr::one(),
        x.clone(),
        FuncExpr::exp(&scalar(1)),
        &(&(&x * &x) * &FuncExpr::exp(&scalar(-2))) + &FuncExpr::constant(scalar(3)),
        FuncExpr::exp(&CycloScalar::i()).scale(&CycloScalar::ratio(1, 2)),
    ]
}

/// `D = d/dx` plus multiplication operators for the other generators.
fn realization(mults: &[(&str, FuncExpr)]) -> Result<OperatorAssignment> {
    let mut asg = OperatorAssignment::new().assign("D", Operator::Derivation(DerivKind::Plain))?;
    for (name, f) in mults {
        asg = asg.assign(name, Operator::MultiplyBy(f.clone()))?;
    }
    Ok(asg)
}

/// A solution of `u'' = λ²u` with both exponentials present, or a linear
/// function at `λ = 0`; `C` is multiplication by `u'`.
fn second_order_realization(lambda: &CycloScalar) -> Result<OperatorAssignment> {
    let u = if lambda.is_zero() {
        FuncExpr::linear(&scalar(2), &scalar(3))
    } else {
        &FuncExpr::exp(lambda) + &FuncExpr::exp(&-lambda).scale(&scalar(2))
    };
    let du = u.differentiate(DerivKind::Plain);
    realization(&[("U", u), ("C", du)])
}

fn agree(label: String, p: &NcPoly, q: &NcPoly, asg: &OperatorAssignment, f: &FuncExpr) -> Result<Clause> {
    let lhs = apply_assigned(p, asg, f)?;
    let rhs = apply_assigned(q, asg, f)?;
    let residual = &lhs - &rhs;
    Ok(Clause::new(label, &lhs, &rhs, &residual, residual.is_zero()))
}

/// Checks `apply(B(n)) f = apply(normal form of B(n)) f` on the sample
/// functions, and the kernel-level forms on kernel elements, for the named
/// suite.
pub fn verify_pipeline(suite: &str, n: usize, lambda: &CycloScalar) -> Result<VerificationReport> {
    let exp_plus = FuncExpr::exp(lambda);
    let exp_minus = FuncExpr::exp(&-lambda);
    let (preset, asg) = match suite {
        "thm-nou" | "rec-3" | "cor-kernel" => {
            (RelationPreset::first_order_plus(lambda), realization(&[("U", exp_plus.clone())])?)
        }
        "thm-wrongsign" | "rec-6" => {
            (RelationPreset::first_order_minus(lambda), realization(&[("U", exp_minus.clone())])?)
        }
        "thm-2nd" => (RelationPreset::second_order(lambda), second_order_realization(lambda)?),
        "rec-7" => (RelationPreset::second_order_central(), second_order_realization(&CycloScalar::zero())?),
        "lemma-l3" => (
            RelationPreset::invertible_plus(lambda),
            realization(&[("U", exp_plus.clone()), ("Uinv", exp_minus.clone())])?,
        ),
        "final-remark" => (
            RelationPreset::invertible_minus(lambda),
            realization(&[("U", exp_minus.clone()), ("Uinv", exp_plus.clone())])?,
        ),
        other => return Err(Error::InvalidArgument(format!("no realization for suite `{other}`"))),
    };
    let lambda_used = if suite == "rec-7" { CycloScalar::zero() } else { lambda.clone() };
    let b = build_b(&BinomialSpec::new(n, &lambda_used, preset.alphabet())?);
    let mut clauses = Vec::new();
    match suite {
        "cor-kernel" => {
            for j in 0..n {
                let mu = -(lambda * &scalar(j as i64));
                let value = kernel_eval(&b, &preset, &mu)?;
                clauses.push(agree(format!("kernel j={j}"), &b, &value, &asg, &FuncExpr::exp(&mu))?);
            }
        }
        _ => {
            let normal = normalize(&b, &preset)?;
            for (k, f) in sample_functions().iter().enumerate() {
                clauses.push(agree(format!("f{k}"), &b, &normal, &asg, f)?);
            }
            if matches!(suite, "thm-wrongsign" | "thm-2nd" | "rec-7") {
                let restricted = restrict_to_kernel(&b, &preset)?;
                clauses.push(agree("kernel".into(), &b, &restricted, &asg, &FuncExpr::one())?);
            }
        }
    }
    let params = params! {"suite" => suite, "n" => n, "lambda" => lambda_used};
    if clauses.iter().all(Clause::holds) {
        let summary =
            Clause::new(format!("{} functions", clauses.len()), "apply(p) f", "apply(rewritten p) f", "0", true);
        return Ok(VerificationReport::single("pipeline", params, summary));
    }
    clauses.retain(|c| !c.holds());
    Ok(VerificationReport::from_clauses("pipeline", params, clauses))
}
