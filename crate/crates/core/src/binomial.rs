//! The binomial-type combination
//!
//! ```text
//! B(n, λ, U, D) = Σ_{k=0}^{n} C(n,k) · (D−U)(D−U+λ)···(D−U+(k−1)λ) · U^{n−k}
//! ```
//!
//! (factors multiplied left to right in increasing `j`), its companion
//! expressions, and the relation-level verifiers. Every verifier compares
//! exact normal forms; there is no tolerance anywhere.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freealg::{binomial_row, substitute_generator, Alphabet, NcPoly};
use crate::params;
use crate::report::{Clause, VerificationReport};
use crate::rewrite::{kernel_eval_with, restrict_with, Normalizer, RelationPreset};
use crate::scalars::CycloScalar;

/// Arguments of `B(n, λ, U, D)`. `u` and `d` may be arbitrary polynomials
/// over one alphabet, e.g. `U := V + W`.
#[derive(Clone, Debug)]
pub struct BinomialSpec {
    pub n: usize,
    pub lambda: CycloScalar,
    pub u: NcPoly,
    pub d: NcPoly,
}

impl BinomialSpec {
    /// Roles `U` and `D` taken from the generators of those names.
    pub fn new(n: usize, lambda: &CycloScalar, alphabet: &Arc<Alphabet>) -> Result<Self> {
        Self::with_roles(n, lambda, alphabet, "U", "D")
    }

    pub fn with_roles(n: usize, lambda: &CycloScalar, alphabet: &Arc<Alphabet>, u: &str, d: &str) -> Result<Self> {
        Self::from_polys(n, lambda, NcPoly::generator(alphabet, u)?, NcPoly::generator(alphabet, d)?)
    }

    pub fn from_polys(n: usize, lambda: &CycloScalar, u: NcPoly, d: NcPoly) -> Result<Self> {
        u.try_add(&d)?;
        Ok(BinomialSpec { n, lambda: lambda.clone(), u, d })
    }

    fn alphabet(&self) -> &Arc<Alphabet> {
        self.u.alphabet()
    }

    fn constant(&self, c: CycloScalar) -> NcPoly {
        NcPoly::constant(self.alphabet(), c)
    }

    /// `D − U + jλI`.
    fn factor(&self, j: usize) -> NcPoly {
        &(&self.d - &self.u) + &self.constant(&self.lambda * &CycloScalar::from_int(j as i64))
    }

    /// `U^0, U^1, ..., U^max`.
    fn u_powers(&self, max: usize) -> Vec<NcPoly> {
        let mut pows = vec![NcPoly::one(self.alphabet())];
        for k in 1..=max {
            pows.push(&pows[k - 1] * &self.u);
        }
        pows
    }
}

/// Free expansion of `B(n, λ, U, D)`; no relations applied.
pub fn build_b(spec: &BinomialSpec) -> NcPoly {
    let n = spec.n;
    let coeffs = binomial_row(n);
    let u_pows = spec.u_powers(n);
    let mut prefix = NcPoly::one(spec.alphabet());
    let mut out = NcPoly::zero(spec.alphabet());
    for k in 0..=n {
        if k > 0 {
            prefix = &prefix * &spec.factor(k - 1);
        }
        let term = (&prefix * &u_pows[n - k]).scale(&CycloScalar::from_bigint(coeffs[k].clone()));
        out = &out + &term;
    }
    out
}

/// `B(n, λ, U, D)` as a list of `(C(n,k), [D−U, D−U+λ, ..., D−U+(k−1)λ, U^{n−k}])`,
/// for evaluating without expanding the products.
pub fn factored_b(spec: &BinomialSpec) -> Vec<(CycloScalar, Vec<NcPoly>)> {
    let n = spec.n;
    binomial_row(n)
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let mut factors: Vec<NcPoly> = (0..k).map(|j| spec.factor(j)).collect();
            factors.push(spec.u.pow(n - k));
            (CycloScalar::from_bigint(c), factors)
        })
        .collect()
}

/// The alternative expansion
/// `Σ_{k<n} C(n−1,k) (D−U)···(D−U+(k−1)λ) (D+kλ) U^{n−1−k}`, for `n > 0`.
pub fn build_b_alt(spec: &BinomialSpec) -> Result<NcPoly> {
    let n = spec.n;
    if n == 0 {
        return Err(Error::InvalidArgument("the alternative expansion needs n > 0".into()));
    }
    let coeffs = binomial_row(n - 1);
    let u_pows = spec.u_powers(n - 1);
    let mut prefix = NcPoly::one(spec.alphabet());
    let mut out = NcPoly::zero(spec.alphabet());
    for k in 0..n {
        if k > 0 {
            prefix = &prefix * &spec.factor(k - 1);
        }
        let shifted_d = &spec.d + &spec.constant(&spec.lambda * &CycloScalar::from_int(k as i64));
        let term = (&(&prefix * &shifted_d) * &u_pows[n - 1 - k]).scale(&CycloScalar::from_bigint(coeffs[k].clone()));
        out = &out + &term;
    }
    Ok(out)
}

/// `(D)(D+λ)···(D+(n−1)λ)`, left to right.
pub fn rising_product(d: &NcPoly, lambda: &CycloScalar, n: usize) -> NcPoly {
    let alphabet = d.alphabet();
    (0..n).fold(NcPoly::one(alphabet), |acc, j| {
        &acc * &(d + &NcPoly::constant(alphabet, lambda * &CycloScalar::from_int(j as i64)))
    })
}

/// `k!! = k(k−2)(k−4)···`, with `0!! = (−1)!! = 1`.
pub fn double_factorial(k: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut x = k;
    while x > 1 {
        acc *= x;
        x -= 2;
    }
    acc
}

/// Shape of a closed-form right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormTag {
    Zero,
    /// `(n−1)!! · X^{n/2}`.
    DoubleFactorialPower,
    /// `∏ (D + jλI)`.
    ProductForm,
}

#[derive(Clone, Debug)]
pub struct ExpectedForm {
    pub tag: FormTag,
    pub payload: NcPoly,
}

impl ExpectedForm {
    pub fn zero(alphabet: &Arc<Alphabet>) -> Self {
        ExpectedForm { tag: FormTag::Zero, payload: NcPoly::zero(alphabet) }
    }

    /// `(n−1)!! · base^{n/2}` for even `n > 0`.
    pub fn double_factorial_power(n: usize, base: &NcPoly) -> Self {
        let coeff = CycloScalar::from_bigint(double_factorial(n as i64 - 1));
        ExpectedForm { tag: FormTag::DoubleFactorialPower, payload: base.pow(n / 2).scale(&coeff) }
    }

    pub fn product_form(d: &NcPoly, lambda: &CycloScalar, n: usize) -> Self {
        ExpectedForm { tag: FormTag::ProductForm, payload: rising_product(d, lambda, n) }
    }
}

fn lam_param(lambda: &CycloScalar) -> String {
    lambda.to_string()
}

fn scalar(x: i64) -> CycloScalar {
    CycloScalar::from_int(x)
}

/// `[D,U] = λU` makes `B(n)` independent of `U`: it equals `∏(D + jλI)`.
pub fn verify_theorem1(n: usize, lambda: &CycloScalar) -> Result<VerificationReport> {
    let preset = RelationPreset::first_order_plus(lambda);
    let mut norm = Normalizer::new(&preset);
    let spec = BinomialSpec::new(n, lambda, preset.alphabet())?;
    let lhs = norm.normalize(&build_b(&spec))?;
    let rhs = norm.normalize(&ExpectedForm::product_form(&spec.d, lambda, n).payload)?;
    let u = preset.alphabet().index("U")?;
    let with_u = lhs.filter_terms(|w| w.contains(u));
    Ok(VerificationReport::from_clauses(
        "thm-nou",
        params! {"n" => n, "lambda" => lam_param(lambda)},
        vec![
            Clause::poly("product form", &lhs, &rhs),
            Clause::new("no U", &lhs, "no monomial with U", &with_u, with_u.is_zero()),
        ],
    ))
}

/// The two expansions agree in the free algebra.
pub fn verify_lemma_l2(n: usize, lambda: &CycloScalar) -> Result<VerificationReport> {
    let alphabet = Alphabet::new(&["U", "D"])?;
    let spec = BinomialSpec::new(n, lambda, &alphabet)?;
    let lhs = build_b(&spec);
    let rhs = build_b_alt(&spec)?;
    Ok(VerificationReport::single(
        "lemma-l2",
        params! {"n" => n, "lambda" => lam_param(lambda)},
        Clause::poly("", &lhs, &rhs),
    ))
}

/// `B(n) = B(n−1)(D + λ(n−1)I)` under `[D,U] = λU`, for `n >= 1`.
pub fn verify_recurrence3(n: usize, lambda: &CycloScalar) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("recurrence needs n >= 1".into()));
    }
    let preset = RelationPreset::first_order_plus(lambda);
    let mut norm = Normalizer::new(&preset);
    let a = preset.alphabet();
    let spec = BinomialSpec::new(n, lambda, a)?;
    let prev = build_b(&BinomialSpec { n: n - 1, ..spec.clone() });
    let shift = &spec.d + &NcPoly::constant(a, lambda * &scalar(n as i64 - 1));
    let lhs = norm.normalize(&build_b(&spec))?;
    let rhs = norm.normalize(&(&prev * &shift))?;
    Ok(VerificationReport::single(
        "rec-3",
        params! {"n" => n, "lambda" => lam_param(lambda)},
        Clause::poly("", &lhs, &rhs),
    ))
}

/// Under `[D,U] = −λU`, on the kernel of `D`: `B(n)` vanishes for odd `n`,
/// equals `(n−1)!!(−2λU)^{n/2}` for even `n > 0`, and `(2D + λn)B(n)`
/// vanishes for every `n`.
pub fn verify_theorem2(n: usize, lambda: &CycloScalar) -> Result<VerificationReport> {
    let preset = RelationPreset::first_order_minus(lambda);
    let mut norm = Normalizer::new(&preset);
    let a = preset.alphabet();
    let spec = BinomialSpec::new(n, lambda, a)?;
    let b = build_b(&spec);
    let restricted = restrict_with(&mut norm, &b)?;
    let mut clauses = Vec::new();
    if n % 2 == 1 {
        clauses.push(Clause::poly("odd", &restricted, &ExpectedForm::zero(a).payload));
    } else if n > 0 {
        let base = spec.u.scale(&(&scalar(-2) * lambda));
        clauses.push(Clause::poly("even", &restricted, &ExpectedForm::double_factorial_power(n, &base).payload));
    }
    let annihilator = &spec.d.scale(&scalar(2)) + &NcPoly::constant(a, lambda * &scalar(n as i64));
    let killed = restrict_with(&mut norm, &(&annihilator * &b))?;
    clauses.push(Clause::poly("(2D+λn)B", &killed, &NcPoly::zero(a)));
    Ok(VerificationReport::from_clauses("thm-wrongsign", params! {"n" => n, "lambda" => lam_param(lambda)}, clauses))
}

/// `B(n) = B(n−1)(D+λ(n−1)) − 2(n−1)λ U B(n−2) + 2(n−1)(n−2)λ² U B(n−3)`
/// under `[D,U] = −λU`, `n >= 2`; the last term is absent at `n = 2`.
pub fn verify_recurrence6(n: usize, lambda: &CycloScalar) -> Result<VerificationReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("recurrence needs n >= 2".into()));
    }
    let preset = RelationPreset::first_order_minus(lambda);
    let mut norm = Normalizer::new(&preset);
    let a = preset.alphabet();
    let spec = BinomialSpec::new(n, lambda, a)?;
    let b_at = |m: usize| build_b(&BinomialSpec { n: m, ..spec.clone() });
    let m = n as i64;
    let shift = &spec.d + &NcPoly::constant(a, lambda * &scalar(m - 1));
    let mut rhs = &b_at(n - 1) * &shift;
    rhs = &rhs - &(&spec.u * &b_at(n - 2)).scale(&(&scalar(2 * (m - 1)) * lambda));
    if n > 2 {
        let lam2 = lambda * lambda;
        rhs = &rhs + &(&spec.u * &b_at(n - 3)).scale(&(&scalar(2 * (m - 1) * (m - 2)) * &lam2));
    }
    let lhs = norm.normalize(&b_at(n))?;
    let rhs = norm.normalize(&rhs)?;
    Ok(VerificationReport::single(
        "rec-6",
        params! {"n" => n, "lambda" => lam_param(lambda)},
        Clause::poly("", &lhs, &rhs),
    ))
}

fn recurrence7_clause(norm: &mut Normalizer<'_>, n: usize) -> Result<Clause> {
    let zero = CycloScalar::zero();
    let a = norm_alphabet(norm);
    let b_at = |m: usize| -> Result<NcPoly> { Ok(build_b(&BinomialSpec::new(m, &zero, &a)?)) };
    let lhs = restrict_with(norm, &b_at(n)?)?;
    let lifted = restrict_with(norm, &b_at(n - 2)?)?;
    let c = NcPoly::generator(&a, "C")?;
    let rhs = restrict_with(norm, &(&c * &lifted).scale(&scalar(n as i64 - 1)))?;
    Ok(Clause::poly("B(n) = (n-1) C B(n-2)", &lhs, &rhs))
}

fn norm_alphabet(norm: &Normalizer<'_>) -> Arc<Alphabet> {
    norm.preset().alphabet().clone()
}

/// Under `[D,[D,U]] = λ²U`, `[U,[D,U]] = 0`, with `C` standing for `[D,U]`:
/// on the kernel of `D`, `B(n)` vanishes for odd `n`, equals
/// `(n−1)!!(C − λU)^{n/2}` for even `n > 0`, and `(2D + λn)B(n)` vanishes.
/// At `λ = 0` the recurrence `B(n) = (n−1) C B(n−2)` is checked as well.
pub fn verify_theorem3(n: usize, lambda: &CycloScalar) -> Result<VerificationReport> {
    let preset = RelationPreset::second_order(lambda);
    let mut norm = Normalizer::new(&preset);
    let a = preset.alphabet().clone();
    let spec = BinomialSpec::new(n, lambda, &a)?;
    let c = NcPoly::generator(&a, "C")?;
    let mut clauses = Vec::new();

    let comm = norm.normalize(&crate::freealg::commutator(&spec.d, &spec.u)?)?;
    clauses.push(Clause::poly("[D,U] = C", &comm, &c));

    let b = build_b(&spec);
    let restricted = restrict_with(&mut norm, &b)?;
    if n % 2 == 1 {
        clauses.push(Clause::poly("odd", &restricted, &NcPoly::zero(&a)));
    } else if n > 0 {
        let base = &c - &spec.u.scale(lambda);
        let expected = norm.normalize(&ExpectedForm::double_factorial_power(n, &base).payload)?;
        let expected = restrict_with(&mut norm, &expected)?;
        clauses.push(Clause::poly("even", &restricted, &expected));
    }
    let annihilator = &spec.d.scale(&scalar(2)) + &NcPoly::constant(&a, lambda * &scalar(n as i64));
    let killed = restrict_with(&mut norm, &(&annihilator * &b))?;
    clauses.push(Clause::poly("(2D+λn)B", &killed, &NcPoly::zero(&a)));
    if lambda.is_zero() && n >= 3 {
        clauses.push(recurrence7_clause(&mut norm, n)?);
    }
    Ok(VerificationReport::from_clauses("thm-2nd", params! {"n" => n, "lambda" => lam_param(lambda)}, clauses))
}

/// `B(n,0) = (n−1) C B(n−2,0)` on the kernel of `D`, `n >= 3`, under
/// `[D,U] = C` with `C` central in `{U, C, D}`.
pub fn verify_recurrence7(n: usize) -> Result<VerificationReport> {
    if n < 3 {
        return Err(Error::InvalidArgument("recurrence needs n >= 3".into()));
    }
    let preset = RelationPreset::second_order_central();
    let mut norm = Normalizer::new(&preset);
    let clause = recurrence7_clause(&mut norm, n)?;
    Ok(VerificationReport::single("rec-7", params! {"n" => n}, clause))
}

/// `B(n)v = 0` whenever `(D + jλ)v = 0`, `0 <= j <= n−1`.
pub fn verify_corollary_kernel(n: usize, lambda: &CycloScalar, j: usize) -> Result<VerificationReport> {
    if j >= n {
        return Err(Error::InvalidArgument(format!("j = {j} outside 0..{n}")));
    }
    corollary_kernel_case(n, lambda, j)
}

/// [`verify_corollary_kernel`] without the range check on `j`; out-of-range
/// `j` is the negative control and is expected to fail.
pub fn corollary_kernel_case(n: usize, lambda: &CycloScalar, j: usize) -> Result<VerificationReport> {
    let preset = RelationPreset::first_order_plus(lambda);
    let mut norm = Normalizer::new(&preset);
    let spec = BinomialSpec::new(n, lambda, preset.alphabet())?;
    let mu = -(lambda * &scalar(j as i64));
    let value = kernel_eval_with(&mut norm, &build_b(&spec), &mu)?;
    Ok(VerificationReport::single(
        "cor-kernel",
        params! {"n" => n, "lambda" => lam_param(lambda), "j" => j},
        Clause::poly("", &value, &NcPoly::zero(preset.alphabet())),
    ))
}

/// `B(n, λ, V+W, D) = B(n, λ, V, D)` under `[V,W] = 0`, `[D,W] = λW`,
/// `[D,V] = μV`.
pub fn verify_corollary_vw(n: usize, lambda: &CycloScalar, mu: &CycloScalar) -> Result<VerificationReport> {
    let preset = RelationPreset::partial_vw(lambda, mu);
    let mut norm = Normalizer::new(&preset);
    let a = preset.alphabet();
    let (v, w, d) = (NcPoly::generator(a, "V")?, NcPoly::generator(a, "W")?, NcPoly::generator(a, "D")?);
    let with_w = build_b(&BinomialSpec::from_polys(n, lambda, &v + &w, d.clone())?);
    let without = build_b(&BinomialSpec::from_polys(n, lambda, v, d)?);
    let lhs = norm.normalize(&with_w)?;
    let rhs = norm.normalize(&without)?;
    Ok(VerificationReport::single(
        "cor-vw",
        params! {"n" => n, "lambda" => lam_param(lambda), "mu" => mu},
        Clause::poly("", &lhs, &rhs),
    ))
}

/// Both sides of `Σ C(n,k)(A₁−I)^k(A₂+I)^{n−k} = Σ C(n,k)A₁^k A₂^{n−k}`,
/// over the free alphabet `[A1, A2]`.
pub fn eq5_sides(n: usize) -> Result<(NcPoly, NcPoly)> {
    let a = Alphabet::new(&["A1", "A2"])?;
    let (a1, a2) = (NcPoly::generator(&a, "A1")?, NcPoly::generator(&a, "A2")?);
    let one = NcPoly::one(&a);
    let coeffs = binomial_row(n);
    let (mut lhs, mut rhs) = (NcPoly::zero(&a), NcPoly::zero(&a));
    let (m1, p2) = (&a1 - &one, &a2 + &one);
    for (k, c) in coeffs.iter().enumerate() {
        let c = CycloScalar::from_bigint(c.clone());
        lhs = &lhs + &(&m1.pow(k) * &p2.pow(n - k)).scale(&c);
        rhs = &rhs + &(&a1.pow(k) * &a2.pow(n - k)).scale(&c);
    }
    Ok((lhs, rhs))
}

pub fn verify_lemma_eq5(n: usize) -> Result<VerificationReport> {
    let (lhs, rhs) = eq5_sides(n)?;
    Ok(VerificationReport::single("lemma-eq5", params! {"n" => n}, Clause::poly("", &lhs, &rhs)))
}

/// `B(n) = (D U⁻¹)^n U^n` under `[D,U] = λU` with `U` invertible.
pub fn verify_lemma_l3(n: usize, lambda: &CycloScalar) -> Result<VerificationReport> {
    let preset = RelationPreset::invertible_plus(lambda);
    let mut norm = Normalizer::new(&preset);
    let a = preset.alphabet();
    let spec = BinomialSpec::new(n, lambda, a)?;
    let uinv = NcPoly::generator(a, "Uinv")?;
    let rhs = &(&spec.d * &uinv).pow(n) * &spec.u.pow(n);
    let lhs = norm.normalize(&build_b(&spec))?;
    let rhs = norm.normalize(&rhs)?;
    Ok(VerificationReport::single(
        "lemma-l3",
        params! {"n" => n, "lambda" => lam_param(lambda)},
        Clause::poly("", &lhs, &rhs),
    ))
}

/// `B(n) = (Σ C(n,k)(DU − U²)^k U^{2(n−k)}) U^{−n}` under `[D,U] = −λU`
/// with `U` invertible.
pub fn verify_final_remark_form(n: usize, lambda: &CycloScalar) -> Result<VerificationReport> {
    let preset = RelationPreset::invertible_minus(lambda);
    let mut norm = Normalizer::new(&preset);
    let a = preset.alphabet();
    let spec = BinomialSpec::new(n, lambda, a)?;
    let uinv = NcPoly::generator(a, "Uinv")?;
    let u2 = &spec.u * &spec.u;
    let x = &(&spec.d * &spec.u) - &u2;
    let mut sum = NcPoly::zero(a);
    for (k, c) in binomial_row(n).into_iter().enumerate() {
        sum = &sum + &(&x.pow(k) * &u2.pow(n - k)).scale(&CycloScalar::from_bigint(c));
    }
    let lhs = norm.normalize(&build_b(&spec))?;
    let rhs = norm.normalize(&(&sum * &uinv.pow(n)))?;
    Ok(VerificationReport::single(
        "final-remark",
        params! {"n" => n, "lambda" => lam_param(lambda)},
        Clause::poly("", &lhs, &rhs),
    ))
}

/// `∏(D + jλ) = λⁿ · (D ↦ D/λ)(∏(D + j))` in the free algebra, `λ ≠ 0`.
pub fn verify_homogeneity(n: usize, lambda: &CycloScalar) -> Result<VerificationReport> {
    let inv = lambda.inv()?;
    let a = Alphabet::new(&["U", "D"])?;
    let d = NcPoly::generator(&a, "D")?;
    let lhs = rising_product(&d, lambda, n);
    let unit = rising_product(&d, &CycloScalar::one(), n);
    let rhs = substitute_generator(&unit, "D", &d.scale(&inv))?.scale(&lambda.pow(n as i64)?);
    Ok(VerificationReport::single(
        "homogeneity",
        params! {"n" => n, "lambda" => lam_param(lambda)},
        Clause::poly("", &lhs, &rhs),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{normalize, restrict_to_kernel};

    fn ud() -> Arc<Alphabet> {
        Alphabet::new(&["U", "D"]).unwrap()
    }

    fn w(a: &Arc<Alphabet>, names: &[&str]) -> NcPoly {
        NcPoly::word(a, names).unwrap()
    }

    fn lam_samples() -> Vec<CycloScalar> {
        ["0", "1", "2", "-3", "1/2", "i", "1+i"].iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn small_b_values() {
        let a = ud();
        let lam = CycloScalar::from_int(1);
        let b = |n| build_b(&BinomialSpec::new(n, &lam, &a).unwrap());
        assert_eq!(b(0), NcPoly::one(&a));
        assert_eq!(b(1), w(&a, &["D"]));
        // U² + 2(D−U)U + (D−U)(D−U+λ) = DD + DU − UD + λD − λU
        let expected =
            &(&(&(&w(&a, &["D", "D"]) + &w(&a, &["D", "U"])) - &w(&a, &["U", "D"])) + &w(&a, &["D"])) - &w(&a, &["U"]);
        assert_eq!(b(2), expected);
        let (u, d) = (w(&a, &["U"]), w(&a, &["D"]));
        let dm = &d - &u;
        let literal = &(&(&u * &u) + &(&dm * &u).scale(&CycloScalar::from_int(2))) + &(&dm * &(&dm + &NcPoly::one(&a)));
        assert_eq!(b(2), literal);
    }

    #[test]
    fn alt_expansion() {
        let a = ud();
        for lam in lam_samples() {
            for n in 1..=5 {
                let spec = BinomialSpec::new(n, &lam, &a).unwrap();
                assert_eq!(build_b(&spec), build_b_alt(&spec).unwrap(), "n={n} λ={lam}");
            }
        }
        assert_eq!(build_b_alt(&BinomialSpec::new(1, &CycloScalar::one(), &a).unwrap()).unwrap(), w(&a, &["D"]));
        assert!(build_b_alt(&BinomialSpec::new(0, &CycloScalar::one(), &a).unwrap()).is_err());
    }

    #[test]
    fn theorem1_small() {
        let lam = CycloScalar::one();
        let r = verify_theorem1(2, &lam).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.lhs.starts_with("product form: D D + D;"), "{}", r.lhs);
        assert!(verify_theorem1(0, &lam).unwrap().passed());
        assert!(verify_theorem1(7, &CycloScalar::ratio(1, 2)).unwrap().passed());
    }

    #[test]
    fn commuting_collapse() {
        let zero = CycloScalar::zero();
        let p = RelationPreset::first_order_plus(&zero);
        for n in 0..=6 {
            let spec = BinomialSpec::new(n, &zero, p.alphabet()).unwrap();
            assert_eq!(normalize(&build_b(&spec), &p).unwrap(), spec.d.pow(n));
        }
    }

    #[test]
    fn recurrences() {
        assert!(verify_recurrence3(1, &CycloScalar::one()).unwrap().passed());
        assert!(verify_recurrence3(8, &CycloScalar::i()).unwrap().passed());
        assert!(verify_recurrence3(0, &CycloScalar::one()).is_err());
        for (n, lam) in [(2, 1), (3, 1), (6, -3)] {
            let r = verify_recurrence6(n, &CycloScalar::from_int(lam)).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(verify_recurrence6(1, &CycloScalar::one()).is_err());
        for n in 3..=6 {
            assert!(verify_recurrence7(n).unwrap().passed());
        }
        assert!(verify_recurrence7(2).is_err());
    }

    #[test]
    fn theorem2_values() {
        let lam = CycloScalar::one();
        let p = RelationPreset::first_order_minus(&lam);
        let a = p.alphabet();
        let rb = |n| restrict_to_kernel(&build_b(&BinomialSpec::new(n, &lam, a).unwrap()), &p).unwrap();
        assert!(rb(1).is_zero());
        assert_eq!(rb(2), w(a, &["U"]).scale(&CycloScalar::from_int(-2)));
        assert_eq!(rb(4), w(a, &["U", "U"]).scale(&CycloScalar::from_int(12)));
        for n in 0..=8 {
            assert!(verify_theorem2(n, &CycloScalar::ratio(1, 2)).unwrap().passed(), "n={n}");
        }
    }

    #[test]
    fn theorem3_values() {
        let one = CycloScalar::one();
        let p = RelationPreset::second_order(&one);
        let a = p.alphabet();
        let b2 = restrict_to_kernel(&build_b(&BinomialSpec::new(2, &one, a).unwrap()), &p).unwrap();
        assert_eq!(b2, &w(a, &["C"]) - &w(a, &["U"]));
        let zero = CycloScalar::zero();
        let p0 = RelationPreset::second_order(&zero);
        let rb0 = |n| restrict_to_kernel(&build_b(&BinomialSpec::new(n, &zero, p0.alphabet()).unwrap()), &p0).unwrap();
        assert!(rb0(1).is_zero());
        assert_eq!(rb0(2), w(p0.alphabet(), &["C"]));
        assert_eq!(rb0(4), w(p0.alphabet(), &["C", "C"]).scale(&CycloScalar::from_int(3)));
        for n in 0..=6 {
            assert!(verify_theorem3(n, &one).unwrap().passed(), "n={n}");
            assert!(verify_theorem3(n, &zero).unwrap().passed(), "n={n}");
        }
    }

    #[test]
    fn corollary_kernel() {
        let one = CycloScalar::one();
        assert!(verify_corollary_kernel(1, &one, 0).unwrap().passed());
        assert!(verify_corollary_kernel(3, &one, 1).unwrap().passed());
        assert!(verify_corollary_kernel(3, &one, 3).is_err());
        let ctrl = corollary_kernel_case(3, &one, 3).unwrap();
        assert!(!ctrl.passed());
        // ∏_{j'<3}(−3 + j') = −6
        assert_eq!(ctrl.lhs, "-6 * I");
    }

    #[test]
    fn corollary_vw() {
        for (n, lam, mu) in [(1, 1, 0), (2, 1, 0), (5, 1, 2)] {
            let r = verify_corollary_vw(n, &CycloScalar::from_int(lam), &CycloScalar::from_int(mu)).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn eq5_small() {
        let (l1, r1) = eq5_sides(1).unwrap();
        let a = l1.alphabet().clone();
        assert_eq!(l1, &w(&a, &["A1"]) + &w(&a, &["A2"]));
        assert_eq!(l1, r1);
        let (l2, r2) = eq5_sides(2).unwrap();
        let expected =
            &(&w(&a, &["A2", "A2"]) + &w(&a, &["A1", "A2"]).scale(&CycloScalar::from_int(2))) + &w(&a, &["A1", "A1"]);
        assert_eq!(l2, expected);
        assert_eq!(r2, expected);
        assert!(verify_lemma_eq5(6).unwrap().passed());
        assert!(verify_lemma_eq5(0).unwrap().passed());
    }

    #[test]
    fn invertible_forms() {
        let one = CycloScalar::one();
        for n in 0..=4 {
            assert!(verify_lemma_l3(n, &one).unwrap().passed(), "n={n}");
        }
        for n in 0..=3 {
            assert!(verify_final_remark_form(n, &one).unwrap().passed(), "n={n}");
        }
    }

    #[test]
    fn homogeneity_and_double_factorial() {
        for n in 0..=5 {
            assert!(verify_homogeneity(n, &CycloScalar::ratio(-3, 2)).unwrap().passed());
        }
        assert!(verify_homogeneity(2, &CycloScalar::zero()).is_err());
        assert_eq!(double_factorial(-1), BigInt::one());
        assert_eq!(double_factorial(1), BigInt::one());
        assert_eq!(double_factorial(7), BigInt::from(105));
        for k in 1..20i64 {
            assert_eq!(double_factorial(k), double_factorial(k - 2) * k);
        }
    }
}
