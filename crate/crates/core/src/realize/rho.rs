//! Truncated shift representation of the first-order relations:
//! `U e_k = e_{k+1}`, `D e_k = ±kλ e_k` on `e_0, ..., e_N`.
//!
//! Columns `0..=N − deg_U(p)` never see the truncation, so there the matrix
//! of `p` depends only on the class of `p` modulo the relations.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use num_traits::Zero;

use super::matrix::{random_rational, Matrix};
use crate::error::{Error, Result};
use crate::freealg::{NcPoly, Word};
use crate::params;
use crate::report::{Clause, VerificationReport};
use crate::rewrite::{normalize, RelationPreset};
use crate::scalars::CycloScalar;

/// Sign of `λ` in `D e_k = ±kλ e_k`, from the preset name.
fn sign(preset: &RelationPreset) -> Result<i64> {
    match preset.name() {
        "first-order-plus" => Ok(1),
        "first-order-minus" => Ok(-1),
        other => Err(Error::InvalidArgument(format!("no truncated representation for preset `{other}`"))),
    }
}

/// Matrix of `p` on `e_0..e_N`. Needs `N >= deg_U(p) + 2`.
pub fn rho_truncated(p: &NcPoly, preset: &RelationPreset, n: usize) -> Result<Matrix> {
    let s = sign(preset)?;
    p.try_add(&NcPoly::zero(preset.alphabet()))?;
    let u = preset.alphabet().index("U")?;
    let deg = p.degree_in(u);
    if n < deg + 2 {
        return Err(Error::InvalidArgument(format!("N = {n} below U-degree {deg} + 2")));
    }
    let step = preset.lambda() * &CycloScalar::from_int(s);
    let dim = n + 1;
    let mut out = Matrix::zeros(dim, dim);
    for (w, c) in p.terms() {
        for col in 0..dim {
            if let Some((row, value)) = act(w, u, &step, col, n) {
                let entry = out.get(row, col) + &(c * &value);
                out.set(row, col, entry);
            }
        }
    }
    Ok(out)
}

/// Image of `e_col` under the word: a multiple of a single basis vector, or
/// nothing when it is shifted past `e_N`.
fn act(w: &Word, u: u8, step: &CycloScalar, col: usize, n: usize) -> Option<(usize, CycloScalar)> {
    let mut k = col;
    let mut value = CycloScalar::from_int(1);
    for &letter in w.letters().iter().rev() {
        if letter == u {
            k += 1;
            if k > n {
                return None;
            }
        } else {
            value = &value * &(step * &CycloScalar::from_int(k as i64));
            if value.is_zero() {
                return None;
            }
        }
    }
    Some((k, value))
}

/// Last column unaffected by truncation.
pub fn safe_columns(p: &NcPoly, preset: &RelationPreset, n: usize) -> Result<std::ops::RangeInclusive<usize>> {
    let u = preset.alphabet().index("U")?;
    Ok(0..=n.saturating_sub(p.degree_in(u)))
}

/// `ρ_N(p) = ρ_N(normalize(p))` on the safe columns, with `N = deg_U(p) + 2`.
pub fn verify_rho_agreement(p: &NcPoly, preset: &RelationPreset) -> Result<VerificationReport> {
    let u = preset.alphabet().index("U")?;
    let n = p.degree_in(u) + 2;
    let q = normalize(p, preset)?;
    let lhs = rho_truncated(p, preset, n)?;
    let rhs = rho_truncated(&q, preset, n)?;
    let cols = safe_columns(p, preset, n)?;
    let holds = lhs.columns_equal(&rhs, cols.clone());
    let residual = &lhs - &rhs;
    Ok(VerificationReport::single(
        "rho",
        params! {"preset" => preset.name(), "lambda" => preset.lambda(), "p" => p, "N" => n, "safe_columns" => format!("0..={}", cols.end())},
        Clause::new("", &lhs, &rhs, &residual, holds),
    ))
}

/// Random polynomial over `[U, D]` with up to `terms` monomials of length at
/// most `max_len` and total `U`-degree at most `max_u`.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    preset: &RelationPreset,
    terms: usize,
    max_len: usize,
    max_u: usize,
) -> Result<NcPoly> {
    let alphabet = preset.alphabet();
    let (u, d) = (alphabet.index("U")?, alphabet.index("D")?);
    let mut p = NcPoly::zero(alphabet);
    for _ in 0..terms {
        let len = rng.gen_range(0..=max_len);
        let mut letters = Vec::with_capacity(len);
        let mut u_count = 0;
        for _ in 0..len {
            if u_count < max_u && rng.gen_bool(0.5) {
                letters.push(u);
                u_count += 1;
            } else {
                letters.push(d);
            }
        }
        p.add_term(Word::new(letters), random_rational(rng));
    }
    Ok(p)
}
