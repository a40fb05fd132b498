//! The binomial identities for concrete operators: exponentials, sines,
//! linear functions, changes of variables, vector-valued functions and
//! constant matrices. Every check is an exact comparison of function
//! expressions.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::func::{DerivKind, FuncExpr, FuncKey};
use super::matrix::{random_matrix, random_rational, random_vector, Matrix};
use super::operator::{
    apply_assigned, apply_assigned_vec, apply_binomial, MatFunc, Operator, OperatorAssignment, VecFunc,
};
use crate::binomial::{build_b, double_factorial, BinomialSpec};
use crate::error::{Error, Result};
use crate::freealg::{binomial_row, Alphabet, NcPoly};
use crate::params;
use crate::report::{Clause, VerificationReport};
use crate::scalars::CycloScalar;

fn scalar(x: i64) -> CycloScalar {
    CycloScalar::from_int(x)
}

fn ud() -> Arc<Alphabet> {
    Alphabet::new(&["U", "D"]).expect("valid alphabet")
}

/// Free expansion of `B(n, λ, U, D)` over `[U, D]`.
fn b_ud(n: usize, lambda: &CycloScalar) -> Result<NcPoly> {
    Ok(build_b(&BinomialSpec::new(n, lambda, &ud())?))
}

/// `D` a derivation, `U` the given operator.
fn assignment(kind: DerivKind, u: Operator) -> Result<OperatorAssignment> {
    OperatorAssignment::new().assign("D", Operator::Derivation(kind))?.assign("U", u)
}

fn func_clause(label: &str, lhs: &FuncExpr, rhs: &FuncExpr) -> Clause {
    let residual = lhs - rhs;
    Clause::new(label, lhs, rhs, &residual, residual.is_zero())
}

fn vec_clause(label: &str, lhs: &VecFunc, rhs: &VecFunc) -> Clause {
    let residual = lhs.sub(rhs);
    Clause::new(label, lhs, rhs, &residual, residual.is_zero())
}

/// `(n−1)!!` as a scalar.
fn df(n: usize) -> CycloScalar {
    CycloScalar::from_bigint(double_factorial(n as i64 - 1))
}

fn check_j(n: usize, j: usize) -> Result<()> {
    if j >= n {
        return Err(Error::InvalidArgument(format!("j = {j} outside 0..{n}")));
    }
    Ok(())
}

/// `(2·d/dx + s)f`.
fn annihilate(f: &FuncExpr, s: &CycloScalar) -> FuncExpr {
    &f.differentiate(DerivKind::Plain).scale(&scalar(2)) + &f.scale(s)
}

/// The exponential identities, with `D = d/dx`:
/// `B(n,λ,D,e^{λx})e^{−jλx} = 0`; with `U = e^{−λx}`, `B(n)1` vanishes for
/// odd `n`, equals `(n−1)!!(−2λ)^{n/2}e^{−nλx/2}` for even `n`, and is killed
/// by `2D + λn`.
pub fn verify_newexp(n: usize, lambda: &CycloScalar, j: usize) -> Result<VerificationReport> {
    check_j(n, j)?;
    let b = b_ud(n, lambda)?;
    let mut clauses = Vec::new();

    let up = assignment(DerivKind::Plain, Operator::MultiplyBy(FuncExpr::exp(lambda)))?;
    let target = FuncExpr::exp(&-(lambda * &scalar(j as i64)));
    clauses.push(func_clause("kernel", &apply_assigned(&b, &up, &target)?, &FuncExpr::zero()));

    let down = assignment(DerivKind::Plain, Operator::MultiplyBy(FuncExpr::exp(&-lambda)))?;
    let value = apply_assigned(&b, &down, &FuncExpr::one())?;
    if n % 2 == 1 {
        clauses.push(func_clause("odd", &value, &FuncExpr::zero()));
    } else {
        let half = (n / 2) as i64;
        let coeff = &df(n) * &(&scalar(-2) * lambda).pow(half)?;
        let expected = FuncExpr::exp(&(lambda * &CycloScalar::ratio(-(n as i64), 2))).scale(&coeff);
        clauses.push(func_clause("even", &value, &expected));
    }
    let killed = annihilate(&value, &(lambda * &scalar(n as i64)));
    clauses.push(func_clause("(2D+λn)B1", &killed, &FuncExpr::zero()));
    Ok(VerificationReport::from_clauses("exp", params! {"n" => n, "lambda" => lambda, "j" => j}, clauses))
}

/// The sine identities: `U = sin λx`, binomial parameter `iλ`, `D = d/dx`.
pub fn verify_newsin(n: usize, lambda: &CycloScalar) -> Result<VerificationReport> {
    let il = &CycloScalar::i() * lambda;
    let b = b_ud(n, &il)?;
    let asg = assignment(DerivKind::Plain, Operator::MultiplyBy(FuncExpr::sin(lambda)))?;
    let value = apply_assigned(&b, &asg, &FuncExpr::one())?;
    let mut clauses = Vec::new();
    if n % 2 == 1 {
        clauses.push(func_clause("odd", &value, &FuncExpr::zero()));
    } else {
        let coeff = &df(n) * &lambda.pow((n / 2) as i64)?;
        let expected = FuncExpr::exp(&(&il * &CycloScalar::ratio(-(n as i64), 2))).scale(&coeff);
        clauses.push(func_clause("even", &value, &expected));
    }
    let killed = annihilate(&value, &(&il * &scalar(n as i64)));
    clauses.push(func_clause("(2D+iλn)B1", &killed, &FuncExpr::zero()));
    Ok(VerificationReport::from_clauses("sin", params! {"n" => n, "lambda" => lambda}, clauses))
}

/// The linear-function identities: `U = ax + b`, `λ = 0`.
pub fn verify_linear(n: usize, a: &CycloScalar, b: &CycloScalar) -> Result<VerificationReport> {
    let poly = b_ud(n, &CycloScalar::zero())?;
    let asg = assignment(DerivKind::Plain, Operator::MultiplyBy(FuncExpr::linear(a, b)))?;
    let value = apply_assigned(&poly, &asg, &FuncExpr::one())?;
    let mut clauses = Vec::new();
    if n % 2 == 1 {
        clauses.push(func_clause("odd", &value, &FuncExpr::zero()));
    } else {
        let expected = FuncExpr::constant(&df(n) * &a.pow((n / 2) as i64)?);
        clauses.push(func_clause("even", &value, &expected));
    }
    clauses.push(func_clause("DB1", &value.differentiate(DerivKind::Plain), &FuncExpr::zero()));
    Ok(VerificationReport::from_clauses("linear", params! {"n" => n, "a" => a, "b" => b}, clauses))
}

/// Which change of variables to apply to the exponential kernel identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChangeOfVariables {
    /// `x → x²/2`: `D = x⁻¹·d/dx`, `U = e^{λx²/2}`, target `e^{−jλx²/2}`.
    Gauss,
    /// `x → ln x`: `D = x·d/dx`, `U = x^λ`, target `x^{−λj}`.
    Log,
}

impl ChangeOfVariables {
    pub fn suite(self) -> &'static str {
        match self {
            ChangeOfVariables::Gauss => "chvar-gauss",
            ChangeOfVariables::Log => "chvar-log",
        }
    }
}

pub fn verify_chvar(
    n: usize,
    lambda: &CycloScalar,
    j: usize,
    variant: ChangeOfVariables,
) -> Result<VerificationReport> {
    check_j(n, j)?;
    let b = b_ud(n, lambda)?;
    let jl = lambda * &scalar(j as i64);
    let half = CycloScalar::ratio(1, 2);
    let (asg, target) = match variant {
        ChangeOfVariables::Gauss => (
            assignment(DerivKind::InverseX, Operator::MultiplyBy(FuncExpr::exp_sq(&(lambda * &half))))?,
            FuncExpr::exp_sq(&-(&jl * &half)),
        ),
        ChangeOfVariables::Log => {
            (assignment(DerivKind::Euler, Operator::MultiplyBy(FuncExpr::power(lambda)))?, FuncExpr::power(&-jl))
        }
    };
    let value = apply_assigned(&b, &asg, &target)?;
    Ok(VerificationReport::single(
        variant.suite(),
        params! {"n" => n, "lambda" => lambda, "j" => j},
        func_clause("", &value, &FuncExpr::zero()),
    ))
}

/// Number of vector identities.
pub const VECTOR_ITEMS: usize = 8;

fn vector_of(c: &[CycloScalar]) -> VecFunc {
    VecFunc::constant(c, &FuncExpr::one())
}

/// `g · M c` as a vector function.
fn times_vector(g: &FuncExpr, m: &Matrix, c: &[CycloScalar]) -> VecFunc {
    VecFunc::constant(&m.mul_vec(c), g)
}

fn annihilate_vec(v: &VecFunc, s: &CycloScalar) -> VecFunc {
    VecFunc(v.0.iter().map(|f| annihilate(f, s)).collect())
}

/// Vector identity `item` (1 to 8) for a random `m × m` rational matrix `A`
/// and vector `c`, both determined by `seed`.
///
/// Items 2, 5 and the odd half of 8 concern odd `n`; items 3 and 6 concern
/// even `n > 0`. A case outside an item's range is reported as skipped.
/// Item 4 is checked with both signs of `2D ∓ λn`; the report passes iff the
/// `+` sign holds, and `plus_holds` / `minus_holds` record each outcome.
pub fn verify_vector(item: usize, n: usize, lambda: &CycloScalar, m: usize, seed: u64) -> Result<VerificationReport> {
    if m == 0 {
        return Err(Error::InvalidArgument("vector dimension must be at least 1".into()));
    }
    if !(1..=VECTOR_ITEMS).contains(&item) {
        return Err(Error::InvalidArgument(format!("vector item {item} outside 1..={VECTOR_ITEMS}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_matrix(&mut rng, m);
    let c = random_vector(&mut rng, m);
    let params = params! {"item" => item, "n" => n, "lambda" => lambda, "m" => m, "seed" => seed};
    let odd = n % 2 == 1;
    match item {
        1 => vector_kernel(n, lambda, &a, params),
        2 | 5 if !odd => Ok(VerificationReport::skipped("vector", params, "odd n only")),
        3 | 6 if odd || n == 0 => Ok(VerificationReport::skipped("vector", params, "even n > 0 only")),
        2..=4 => {
            let b = b_ud(n, lambda)?;
            let u = MatFunc::tensor(&a, &FuncExpr::exp(&-lambda));
            let asg = assignment(DerivKind::Plain, Operator::MultiplyByMatrix(u))?;
            let value = apply_assigned_vec(&b, &asg, &vector_of(&c))?;
            let zero = VecFunc::zeros(m);
            match item {
                2 => Ok(VerificationReport::single("vector", params, vec_clause("odd", &value, &zero))),
                3 => {
                    let coeff = &df(n) * &(&scalar(-2) * lambda).pow((n / 2) as i64)?;
                    let g = FuncExpr::exp(&(lambda * &CycloScalar::ratio(-(n as i64), 2))).scale(&coeff);
                    let expected = times_vector(&g, &a.pow(n / 2), &c);
                    Ok(VerificationReport::single("vector", params, vec_clause("even", &value, &expected)))
                }
                _ => {
                    let ln = lambda * &scalar(n as i64);
                    let plus = vec_clause("(2D+λn)Bc", &annihilate_vec(&value, &ln), &zero);
                    let minus = vec_clause("(2D-λn)Bc", &annihilate_vec(&value, &-&ln), &zero);
                    let mut params = params;
                    params.insert("plus_holds".into(), plus.holds().to_string());
                    params.insert("minus_holds".into(), minus.holds().to_string());
                    Ok(VerificationReport::single("vector", params, plus))
                }
            }
        }
        5..=7 => {
            let il = &CycloScalar::i() * lambda;
            let b = b_ud(n, &il)?;
            let u = MatFunc::tensor(&a, &FuncExpr::sin(lambda));
            let asg = assignment(DerivKind::Plain, Operator::MultiplyByMatrix(u))?;
            let value = apply_assigned_vec(&b, &asg, &vector_of(&c))?;
            let clause = match item {
                5 => vec_clause("odd", &value, &VecFunc::zeros(m)),
                6 => {
                    let coeff = &df(n) * &lambda.pow((n / 2) as i64)?;
                    let g = FuncExpr::exp(&(&il * &CycloScalar::ratio(-(n as i64), 2))).scale(&coeff);
                    vec_clause("even", &value, &times_vector(&g, &a.pow(n / 2), &c))
                }
                _ => vec_clause("(2D+iλn)Bc", &annihilate_vec(&value, &(&il * &scalar(n as i64))), &VecFunc::zeros(m)),
            };
            Ok(VerificationReport::single("vector", params, clause))
        }
        _ => {
            // A₂ as a polynomial in A₁, so the two commute by construction.
            let (k0, k1, k2) = (random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng));
            let a2 = &(&Matrix::identity(m).scale(&k0) + &a.scale(&k1)) + &a.pow(2).scale(&k2);
            let mut report = verify_vector_linear(n, &a, &a2, &c)?;
            report.params = params;
            Ok(report)
        }
    }
}

/// Item 1: `B(n,λ,D,e^{λx}A)` kills every column of `e^{−jλx}I`.
fn vector_kernel(
    n: usize,
    lambda: &CycloScalar,
    a: &Matrix,
    params: crate::report::Params,
) -> Result<VerificationReport> {
    if n == 0 {
        return Ok(VerificationReport::skipped("vector", params, "n > 0 only"));
    }
    let m = a.rows();
    let b = b_ud(n, lambda)?;
    let asg = assignment(DerivKind::Plain, Operator::MultiplyByMatrix(MatFunc::tensor(a, &FuncExpr::exp(lambda))))?;
    let mut clauses = Vec::new();
    for j in 0..n {
        let g = FuncExpr::exp(&-(lambda * &scalar(j as i64)));
        for k in 0..m {
            let column = Matrix::identity(m).column(k);
            let value = apply_assigned_vec(&b, &asg, &VecFunc::constant(&column, &g))?;
            clauses.push(vec_clause(&format!("j={j} col={k}"), &value, &VecFunc::zeros(m)));
        }
    }
    // Keep the report short: one clause when everything vanishes.
    if clauses.iter().all(Clause::holds) {
        let zero = VecFunc::zeros(m);
        return Ok(VerificationReport::single("vector", params, vec_clause("all j, columns", &zero, &zero)));
    }
    clauses.retain(|c| !c.holds());
    Ok(VerificationReport::from_clauses("vector", params, clauses))
}

/// Item 8: `U = A₁x + A₂` with `A₁A₂ = A₂A₁`, `λ = 0`, applied to `c`.
/// Non-commuting matrices are rejected.
pub fn verify_vector_linear(n: usize, a1: &Matrix, a2: &Matrix, c: &[CycloScalar]) -> Result<VerificationReport> {
    let m = a1.rows();
    if a2.rows() != m || c.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: if a2.rows() != m { a2.rows() } else { c.len() } });
    }
    if a1 * a2 != a2 * a1 {
        return Err(Error::InvalidArgument("A1 and A2 do not commute".into()));
    }
    let x = FuncExpr::power(&CycloScalar::one());
    let u = MatFunc::tensor(a1, &x).add(&MatFunc::tensor(a2, &FuncExpr::one()))?;
    let b = b_ud(n, &CycloScalar::zero())?;
    let asg = assignment(DerivKind::Plain, Operator::MultiplyByMatrix(u))?;
    let value = apply_assigned_vec(&b, &asg, &vector_of(c))?;
    let mut clauses = Vec::new();
    if n % 2 == 1 {
        clauses.push(vec_clause("odd", &value, &VecFunc::zeros(m)));
    } else {
        let expected = times_vector(&FuncExpr::constant(df(n)), &a1.pow(n / 2), c);
        clauses.push(vec_clause("even", &value, &expected));
    }
    let derivative = VecFunc(value.0.iter().map(|f| f.differentiate(DerivKind::Plain)).collect());
    clauses.push(vec_clause("DBc", &derivative, &VecFunc::zeros(m)));
    Ok(VerificationReport::from_clauses("vector", params! {"item" => 8, "n" => n, "m" => m}, clauses))
}

/// `Σ C(n,k)(A₁−I)^k(A₂+I)^{n−k} = Σ C(n,k)A₁^k A₂^{n−k}` for random
/// rational `dim × dim` matrices.
pub fn verify_eq5_matrix(n: usize, dim: usize, seed: u64) -> Result<VerificationReport> {
    if dim < 2 {
        return Err(Error::InvalidArgument("matrix dimension must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a1 = random_matrix(&mut rng, dim);
    let a2 = random_matrix(&mut rng, dim);
    let id = Matrix::identity(dim);
    let (m1, p2) = (&a1 - &id, &a2 + &id);
    let mut lhs = Matrix::zeros(dim, dim);
    let mut rhs = Matrix::zeros(dim, dim);
    for (k, c) in binomial_row(n).into_iter().enumerate() {
        let c = CycloScalar::from_bigint(c);
        lhs = &lhs + &(&m1.pow(k) * &p2.pow(n - k)).scale(&c);
        rhs = &rhs + &(&a1.pow(k) * &a2.pow(n - k)).scale(&c);
    }
    let residual = &lhs - &rhs;
    Ok(VerificationReport::single(
        "eq5-matrix",
        params! {"n" => n, "dim" => dim, "seed" => seed},
        Clause::new("", &lhs, &rhs, &residual, residual.is_zero()),
    ))
}

/// Pseudo-random exponential-polynomial with a few terms `q x^c e^{αx}`,
/// `c ∈ {0,1,2}`, small rational `q` and `α`.
pub fn random_func(rng: &mut ChaCha8Rng) -> FuncExpr {
    use rand::Rng;
    loop {
        let mut f = FuncExpr::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let key = FuncKey::new(scalar(rng.gen_range(0..=2)), random_rational(rng), CycloScalar::zero());
            f.add_term(key, random_rational(rng));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// `B(n,λ,V+W,D)g = B(n,λ,V,D)g` with `D = d/dx`, `W = e^{λx}` and `V`
/// multiplication by a pseudo-random exponential-polynomial, so that
/// `[D,V]` is unconstrained. Checked on `samples` random functions `g`.
pub fn verify_vw_realization(n: usize, lambda: &CycloScalar, seed: u64, samples: usize) -> Result<VerificationReport> {
    let a = Alphabet::new(&["V", "W", "D"])?;
    let (v, w, d) = (NcPoly::generator(&a, "V")?, NcPoly::generator(&a, "W")?, NcPoly::generator(&a, "D")?);
    let with_w = BinomialSpec::from_polys(n, lambda, &v + &w, d.clone())?;
    let without = BinomialSpec::from_polys(n, lambda, v, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vf = random_func(&mut rng);
    let asg = OperatorAssignment::new()
        .assign("D", Operator::Derivation(DerivKind::Plain))?
        .assign("V", Operator::MultiplyBy(vf.clone()))?
        .assign("W", Operator::MultiplyBy(FuncExpr::exp(lambda)))?;
    let mut clauses = Vec::new();
    for s in 0..samples {
        let g = random_func(&mut rng);
        let g = VecFunc::scalar(g);
        let lhs = apply_binomial(&with_w, &asg, &g)?;
        let rhs = apply_binomial(&without, &asg, &g)?;
        clauses.push(vec_clause(&format!("sample {s}"), &lhs, &rhs));
    }
    let failing: Vec<Clause> = clauses.iter().filter(|c| !c.holds()).cloned().collect();
    let params = params! {"n" => n, "lambda" => lambda, "seed" => seed, "samples" => samples, "v" => vf};
    if failing.is_empty() {
        let last = clauses.pop().ok_or_else(|| Error::InvalidArgument("need at least one sample".into()))?;
        return Ok(VerificationReport::single("cor-vw-realized", params, last));
    }
    Ok(VerificationReport::from_clauses("cor-vw-realized", params, failing))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(s: &str) -> CycloScalar {
        s.parse().unwrap()
    }

    #[test]
    fn exponential_closed_forms() {
        for n in 1..=6 {
            for j in 0..n {
                for l in ["1", "2", "-3", "1/2", "i", "1+i"] {
                    let r = verify_newexp(n, &lam(l), j).unwrap();
                    assert!(r.passed(), "{r:?}");
                }
            }
        }
        let r = verify_newexp(2, &lam("1"), 0).unwrap();
        assert!(r.lhs.contains("even: -2 * exp(-x)"), "{}", r.lhs);
        let r = verify_newexp(4, &lam("1"), 0).unwrap();
        assert!(r.lhs.contains("even: 12 * exp(-2*x)"), "{}", r.lhs);
        assert!(verify_newexp(3, &lam("1"), 3).is_err());
    }

    #[test]
    fn sine_and_linear() {
        for n in 0..=6 {
            for l in ["1", "2", "1/2"] {
                assert!(verify_newsin(n, &lam(l)).unwrap().passed());
            }
            for (a, b) in [("1", "0"), ("2", "5"), ("1", "1")] {
                assert!(verify_linear(n, &lam(a), &lam(b)).unwrap().passed());
            }
        }
        let r = verify_newsin(2, &lam("1")).unwrap();
        assert!(r.lhs.starts_with("even: exp((-z^3)*x)"), "{}", r.lhs);
        let r = verify_linear(4, &lam("1"), &lam("1")).unwrap();
        assert!(r.lhs.starts_with("even: 3;"), "{}", r.lhs);
    }

    #[test]
    fn changes_of_variables() {
        for n in 1..=4 {
            for j in 0..n {
                for l in ["1", "1/2", "-3"] {
                    assert!(verify_chvar(n, &lam(l), j, ChangeOfVariables::Gauss).unwrap().passed());
                    assert!(verify_chvar(n, &lam(l), j, ChangeOfVariables::Log).unwrap().passed());
                }
            }
        }
    }

    #[test]
    fn vector_items() {
        for item in 1..=VECTOR_ITEMS {
            for n in 0..=4 {
                let r = verify_vector(item, n, &lam("1"), 2, 42).unwrap();
                assert!(r.passed() || r.status == crate::report::Status::Skipped, "{r:?}");
            }
        }
        let r = verify_vector(4, 2, &lam("1"), 2, 7).unwrap();
        assert_eq!(r.params["plus_holds"], "true");
        assert_eq!(r.params["minus_holds"], "false");
        assert!(verify_vector(9, 2, &lam("1"), 2, 7).is_err());
        assert!(verify_vector(1, 2, &lam("1"), 0, 7).is_err());
    }

    #[test]
    fn item8_rejects_non_commuting() {
        let s = CycloScalar::from_int;
        let a1 = Matrix::from_rows(vec![vec![s(0), s(1)], vec![s(0), s(0)]]);
        let a2 = Matrix::from_rows(vec![vec![s(0), s(0)], vec![s(1), s(0)]]);
        assert!(verify_vector_linear(2, &a1, &a2, &[s(1), s(0)]).is_err());
        let a2 = &a1.pow(2) + &Matrix::identity(2);
        let r = verify_vector_linear(2, &a1, &a2, &[s(0), s(1)]).unwrap();
        assert!(r.passed());
        assert!(r.rhs.starts_with("even: [1, 0]"), "{}", r.rhs);
    }

    #[test]
    fn eq5_matrices() {
        for (dim, seed) in [(2, 7), (3, 42)] {
            for n in 0..=6 {
                assert!(verify_eq5_matrix(n, dim, seed).unwrap().passed());
            }
        }
        assert!(verify_eq5_matrix(2, 1, 7).is_err());
    }

    #[test]
    fn vw_realization() {
        for n in 0..=5 {
            let r = verify_vw_realization(n, &lam("1"), 3, 5).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
