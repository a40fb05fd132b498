//! Exponential-polynomial functions `Σ coeff · x^c · e^{αx + βx²}`.
//!
//! The span is closed under multiplication and under the three derivations
//! `d/dx`, `x·d/dx` and `x⁻¹·d/dx`, and contains every function the
//! elementary identities use: exponentials, sines through `e^{±iλx}`,
//! polynomials, `e^{λx²/2}` and `x^λ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeMap, SerializeSeq, Serializer};

use crate::scalars::CycloScalar;

/// `(c, α, β)` identifying the basis function `x^c · e^{αx + βx²}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuncKey {
    pub c: CycloScalar,
    pub alpha: CycloScalar,
    pub beta: CycloScalar,
}

impl FuncKey {
    pub fn new(c: CycloScalar, alpha: CycloScalar, beta: CycloScalar) -> Self {
        FuncKey { c, alpha, beta }
    }

    fn unit() -> Self {
        FuncKey::new(CycloScalar::zero(), CycloScalar::zero(), CycloScalar::zero())
    }

    fn shift_c(&self, by: i64) -> Self {
        FuncKey { c: &self.c + &CycloScalar::from_int(by), ..self.clone() }
    }
}

/// Which derivation an operator applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivKind {
    /// `d/dx`
    Plain,
    /// `x · d/dx`, the image of `d/dx` under `x → ln x`.
    Euler,
    /// `x⁻¹ · d/dx`, the image of `d/dx` under `x → x²/2`.
    InverseX,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FuncExpr {
    terms: BTreeMap<FuncKey, CycloScalar>,
}

impl FuncExpr {
    pub fn zero() -> Self {
        FuncExpr::default()
    }

    pub fn constant(c: CycloScalar) -> Self {
        Self::term(c, FuncKey::unit())
    }

    /// The function identically equal to 1.
    pub fn one() -> Self {
        Self::constant(CycloScalar::one())
    }

    pub fn term(coeff: CycloScalar, key: FuncKey) -> Self {
        let mut f = FuncExpr::zero();
        f.add_term(key, coeff);
        f
    }

    /// `e^{αx}`.
    pub fn exp(alpha: &CycloScalar) -> Self {
        Self::term(CycloScalar::one(), FuncKey::new(CycloScalar::zero(), alpha.clone(), CycloScalar::zero()))
    }

    /// `e^{βx²}`.
    pub fn exp_sq(beta: &CycloScalar) -> Self {
        Self::term(CycloScalar::one(), FuncKey::new(CycloScalar::zero(), CycloScalar::zero(), beta.clone()))
    }

    /// `x^c`.
    pub fn power(c: &CycloScalar) -> Self {
        Self::term(CycloScalar::one(), FuncKey::new(c.clone(), CycloScalar::zero(), CycloScalar::zero()))
    }

    /// `ax + b`.
    pub fn linear(a: &CycloScalar, b: &CycloScalar) -> Self {
        &Self::power(&CycloScalar::one()).scale(a) + &Self::constant(b.clone())
    }

    /// `sin λx = (e^{iλx} − e^{−iλx}) / 2i`.
    pub fn sin(lambda: &CycloScalar) -> Self {
        let il = &CycloScalar::i() * lambda;
        let half_over_i = (&CycloScalar::i() * &CycloScalar::from_int(2)).inv().expect("2i is invertible");
        (&Self::exp(&il) - &Self::exp(&-&il)).scale(&half_over_i)
    }

    /// `cos λx = (e^{iλx} + e^{−iλx}) / 2`.
    pub fn cos(lambda: &CycloScalar) -> Self {
        let il = &CycloScalar::i() * lambda;
        (&Self::exp(&il) + &Self::exp(&-&il)).scale(&CycloScalar::ratio(1, 2))
    }

    pub fn add_term(&mut self, key: FuncKey, coeff: CycloScalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FuncKey, &CycloScalar)> {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &CycloScalar) -> Self {
        if s.is_zero() {
            return FuncExpr::zero();
        }
        FuncExpr { terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect() }
    }

    /// Exact derivative of the requested kind.
    ///
    /// `d/dx (x^c e^{αx+βx²}) = c x^{c−1} e^… + α x^c e^… + 2β x^{c+1} e^…`;
    /// the other kinds shift every exponent of `x` by `+1` or `−1`.
    pub fn differentiate(&self, kind: DerivKind) -> Self {
        let shift = match kind {
            DerivKind::Plain => 0,
            DerivKind::Euler => 1,
            DerivKind::InverseX => -1,
        };
        let two = CycloScalar::from_int(2);
        let mut out = FuncExpr::zero();
        for (k, coeff) in &self.terms {
            out.add_term(k.shift_c(shift - 1), coeff * &k.c);
            out.add_term(k.shift_c(shift), coeff * &k.alpha);
            out.add_term(k.shift_c(shift + 1), &(coeff * &k.beta) * &two);
        }
        out
    }
}

/// Pointwise product; exponent keys add.
pub fn mul_func(f: &FuncExpr, g: &FuncExpr) -> FuncExpr {
    let mut out = FuncExpr::zero();
    for (k1, c1) in &f.terms {
        for (k2, c2) in &g.terms {
            let key = FuncKey::new(&k1.c + &k2.c, &k1.alpha + &k2.alpha, &k1.beta + &k2.beta);
            out.add_term(key, c1 * c2);
        }
    }
    out
}

pub fn differentiate(f: &FuncExpr, kind: DerivKind) -> FuncExpr {
    f.differentiate(kind)
}

impl Add for &FuncExpr {
    type Output = FuncExpr;
    fn add(self, rhs: &FuncExpr) -> FuncExpr {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &FuncExpr {
    type Output = FuncExpr;
    fn sub(self, rhs: &FuncExpr) -> FuncExpr {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl Mul for &FuncExpr {
    type Output = FuncExpr;
    fn mul(self, rhs: &FuncExpr) -> FuncExpr {
        mul_func(self, rhs)
    }
}

impl Neg for &FuncExpr {
    type Output = FuncExpr;
    fn neg(self) -> FuncExpr {
        self.scale(&-CycloScalar::one())
    }
}

/// Scalar as a factor: bare when a non-negative rational, else parenthesized.
fn factor(s: &CycloScalar) -> String {
    match s.as_rational() {
        Some(r) if !r.is_negative() => r.to_string(),
        _ => format!("({s})"),
    }
}

fn exponent(key: &FuncKey) -> Option<String> {
    let mut parts = Vec::new();
    for (s, unit) in [(&key.alpha, "x"), (&key.beta, "x^2")] {
        if s.is_zero() {
            continue;
        }
        let (neg, mag) = match s.as_rational() {
            Some(r) if r.is_negative() => (true, CycloScalar::from_rational(-r)),
            _ => (false, s.clone()),
        };
        let body = if mag.is_one() { unit.to_string() } else { format!("{}*{unit}", factor(&mag)) };
        parts.push((neg, body));
    }
    if parts.is_empty() {
        return None;
    }
    let mut out = String::new();
    for (k, (neg, body)) in parts.into_iter().enumerate() {
        match (k == 0, neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    Some(format!("exp({out})"))
}

impl fmt::Display for FuncExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (key, coeff)) in self.terms.iter().enumerate() {
            let (neg, mag) = match coeff.as_rational() {
                Some(r) if r.is_negative() => (true, CycloScalar::from_rational(-r)),
                _ => (false, coeff.clone()),
            };
            match (k == 0, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !mag.is_one() {
                factors.push(if mag.is_rational() { mag.to_string() } else { format!("({mag})") });
            }
            if !key.c.is_zero() {
                factors.push(if key.c.is_one() { "x".to_string() } else { format!("x^{}", factor(&key.c)) });
            }
            if let Some(e) = exponent(key) {
                factors.push(e);
            }
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            f.write_str(&factors.join(" * "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FuncExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FuncExpr({self})")
    }
}

struct JsonFuncTerm<'a>(&'a FuncKey, &'a CycloScalar);

impl Serialize for JsonFuncTerm<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("coeff", self.1)?;
        map.serialize_entry("c", &self.0.c)?;
        map.serialize_entry("alpha", &self.0.alpha)?;
        map.serialize_entry("beta", &self.0.beta)?;
        map.end()
    }
}

impl Serialize for FuncExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            seq.serialize_element(&JsonFuncTerm(k, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64) -> CycloScalar {
        CycloScalar::from_int(x)
    }

    fn key(c: i64, a: i64, b: i64) -> FuncKey {
        FuncKey::new(s(c), s(a), s(b))
    }

    #[test]
    fn derivative_examples() {
        let f = FuncExpr::term(s(1), key(2, 3, 0));
        let expected = &FuncExpr::term(s(2), key(1, 3, 0)) + &FuncExpr::term(s(3), key(2, 3, 0));
        assert_eq!(f.differentiate(DerivKind::Plain), expected);
        assert!(FuncExpr::one().differentiate(DerivKind::Plain).is_zero());
        let lam = CycloScalar::ratio(3, 5);
        let g = FuncExpr::exp_sq(&lam.scale(&crate::scalars::rational(1, 2)));
        assert_eq!(g.differentiate(DerivKind::InverseX), g.scale(&lam));
        let xl = FuncExpr::power(&lam);
        assert_eq!(xl.differentiate(DerivKind::Euler), xl.scale(&lam));
    }

    #[test]
    fn product_examples() {
        let lam = CycloScalar::ratio(7, 3);
        assert_eq!(&FuncExpr::exp(&lam) * &FuncExpr::exp(&-&lam), FuncExpr::one());
        for l in [s(1), CycloScalar::ratio(-1, 2), CycloScalar::i()] {
            let (sn, cs) = (FuncExpr::sin(&l), FuncExpr::cos(&l));
            assert_eq!(&(&sn * &sn) + &(&cs * &cs), FuncExpr::one());
        }
        assert_eq!(&FuncExpr::power(&s(1)) * &FuncExpr::power(&lam), FuncExpr::power(&(&s(1) + &lam)));
    }

    #[test]
    fn trig_derivatives() {
        let l = CycloScalar::ratio(5, 2);
        let d = |f: &FuncExpr| f.differentiate(DerivKind::Plain);
        assert_eq!(d(&FuncExpr::sin(&l)), FuncExpr::cos(&l).scale(&l));
        assert_eq!(d(&FuncExpr::cos(&l)), FuncExpr::sin(&l).scale(&-&l));
    }

    #[test]
    fn display_form() {
        let f = &FuncExpr::term(s(-2), key(0, -1, 0)) + &FuncExpr::term(s(3), key(2, 0, 1));
        assert_eq!(f.to_string(), "-2 * exp(-x) + 3 * x^2 * exp(x^2)");
        assert_eq!(FuncExpr::one().to_string(), "1");
        assert_eq!(FuncExpr::zero().to_string(), "0");
        let g = FuncExpr::exp(&CycloScalar::i());
        assert_eq!(g.to_string(), "exp((z^3)*x)");
    }
}
