//! The third-order case: `u = e^{λx} + e^{ωλx} + e^{ω²λx}` solves
//! `u''' = λ³u` and no lower-order equation of that shape. The explorer
//! evaluates `B(n, μ, u, d/dx)·1` for odd `n` and several `μ`, expecting none
//! of them to vanish.

use super::func::{DerivKind, FuncExpr};
use super::operator::{apply_assigned, Operator, OperatorAssignment};
use crate::binomial::{build_b, BinomialSpec};
use crate::error::Result;
use crate::freealg::Alphabet;
use crate::params;
use crate::report::{Clause, VerificationReport};
use crate::scalars::CycloScalar;

/// `e^{λx} + e^{ωλx} + e^{ω²λx}`.
pub fn third_order_solution(lambda: &CycloScalar) -> FuncExpr {
    let w = CycloScalar::omega();
    let w2 = &w * &w;
    &(&FuncExpr::exp(lambda) + &FuncExpr::exp(&(&w * lambda))) + &FuncExpr::exp(&(&w2 * lambda))
}

/// `λ, ωλ, ω²λ, iλ`.
pub fn default_mu_candidates(lambda: &CycloScalar) -> Vec<CycloScalar> {
    let w = CycloScalar::omega();
    vec![lambda.clone(), &w * lambda, &(&w * &w) * lambda, &CycloScalar::i() * lambda]
}

/// `u''' = λ³u` holds while `u' = λu` and `u'' = λ²u` both fail.
pub fn verify_third_order_solution(lambda: &CycloScalar) -> Result<VerificationReport> {
    let u = third_order_solution(lambda);
    let mut clauses = Vec::new();
    let mut deriv = u.clone();
    for order in 1..=3 {
        deriv = deriv.differentiate(DerivKind::Plain);
        let rhs = u.scale(&lambda.pow(order)?);
        let residual = &deriv - &rhs;
        let clause = Clause::new(format!("D^{order}u = λ^{order}u"), &deriv, &rhs, &residual, residual.is_zero());
        clauses.push(if order < 3 { clause.expecting_nonzero() } else { clause });
    }
    Ok(VerificationReport::from_clauses("third-order", params! {"check" => "solution", "lambda" => lambda}, clauses))
}

/// One report per `(n, μ)`. Odd `n >= 3` expect a nonzero residual; `n = 1`
/// (where `B(1)·1 = u'·0 = 0` trivially) and even `n` are reported as skipped.
pub fn third_order_explorer(
    n_list: &[usize],
    lambda: &CycloScalar,
    mu_candidates: &[CycloScalar],
) -> Result<Vec<VerificationReport>> {
    let alphabet = Alphabet::new(&["U", "D"])?;
    let asg = OperatorAssignment::new()
        .assign("D", Operator::Derivation(DerivKind::Plain))?
        .assign("U", Operator::MultiplyBy(third_order_solution(lambda)))?;
    let mut out = vec![verify_third_order_solution(lambda)?];
    for &n in n_list {
        for mu in mu_candidates {
            let params = params! {"n" => n, "lambda" => lambda, "mu" => mu};
            if n % 2 == 0 {
                out.push(VerificationReport::skipped("third-order", params, "odd n only"));
                continue;
            }
            if n == 1 {
                out.push(VerificationReport::skipped("third-order", params, "n = 1 is degenerate: B(1)1 = 0"));
                continue;
            }
            let b = build_b(&BinomialSpec::new(n, mu, &alphabet)?);
            let value = apply_assigned(&b, &asg, &FuncExpr::one())?;
            let clause = Clause::new("B(n,μ)1 ≠ 0", &value, "0", &value, value.is_zero()).expecting_nonzero();
            out.push(VerificationReport::single("third-order", params, clause));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solution_is_genuinely_third_order() {
        for l in [1, 2, -3] {
            assert!(verify_third_order_solution(&CycloScalar::from_int(l)).unwrap().passed());
        }
    }

    #[test]
    fn no_candidate_vanishes() {
        let lambda = CycloScalar::from_int(1);
        let reports = third_order_explorer(&[1, 3, 5], &lambda, &default_mu_candidates(&lambda)).unwrap();
        assert_eq!(reports.len(), 1 + 12);
        assert!(reports[1..5].iter().all(|r| r.status == crate::report::Status::Skipped));
        assert!(reports.iter().all(|r| r.passed() || r.status == crate::report::Status::Skipped), "{reports:?}");
    }
}
