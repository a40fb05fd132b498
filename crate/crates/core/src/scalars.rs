//! Exact arithmetic in the cyclotomic field `Q(ζ)`, `ζ` a primitive 12th root
//! of unity.
//!
//! Elements are stored in the power basis `{1, ζ, ζ², ζ³}` and reduced with
//! the minimal polynomial `ζ⁴ = ζ² − 1`. The field contains the imaginary unit
//! `i = ζ³` and the primitive cube root of unity `ω = ζ² − 1 = ζ⁴`, which is
//! everything the binomial identities need: `i` for the trigonometric family
//! and `ω` for the third-order exploration.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational. `num_rational` keeps it reduced with a
/// positive denominator.
pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics when `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Element `c0 + c1 ζ + c2 ζ² + c3 ζ³` of `Q(ζ₁₂)`.
///
/// The representation is unique, so the derived `Eq`/`Ord`/`Hash` are exact.
/// The ordering is lexicographic on coordinates; it has no algebraic meaning
/// and exists for canonical sorting of keys.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloScalar {
    coords: [Rational; 4],
}

impl CycloScalar {
    pub fn from_coords(coords: [Rational; 4]) -> Self {
        CycloScalar { coords }
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    pub fn from_rational(r: Rational) -> Self {
        CycloScalar { coords: [r, Rational::zero(), Rational::zero(), Rational::zero()] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(rational(num, den))
    }

    /// `ζ^k` for `0 <= k < 4`.
    fn basis(k: usize) -> Self {
        let mut c = Self::zero();
        c.coords[k] = Rational::one();
        c
    }

    /// The primitive 12th root of unity `ζ`.
    pub fn zeta() -> Self {
        Self::basis(1)
    }

    /// `i = ζ³`.
    pub fn i() -> Self {
        Self::basis(3)
    }

    /// `ω = ζ² − 1`, a primitive cube root of unity.
    pub fn omega() -> Self {
        let mut c = Self::basis(2);
        c.coords[0] = -Rational::one();
        c
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coords[0])
    }

    /// Multiplicative inverse, via the extended Euclidean algorithm on the
    /// polynomial representative and `ζ⁴ − ζ² + 1`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        let a = trim(self.coords.to_vec());
        let one = Rational::one();
        let modulus = vec![one.clone(), Rational::zero(), -one.clone(), Rational::zero(), one];
        // Invariant: s_k * a ≡ r_k (mod modulus).
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // The modulus is irreducible, so the gcd r0 is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let scale = r0[0].recip();
        let mut coords: [Rational; 4] = Default::default();
        for (k, c) in s0.into_iter().enumerate() {
            coords[k] = c * &scale;
        }
        Ok(CycloScalar { coords })
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Numeric value at `ζ = e^{2πi/12}`, as `(re, im)`. Only for cross-checks.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in self.coords.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let angle = std::f64::consts::PI * k as f64 / 6.0;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }
}

impl Zero for CycloScalar {
    fn zero() -> Self {
        CycloScalar { coords: Default::default() }
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl One for CycloScalar {
    fn one() -> Self {
        Self::basis(0)
    }
}

impl Default for CycloScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycloScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for CycloScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<BigInt> for CycloScalar {
    fn from(n: BigInt) -> Self {
        Self::from_bigint(n)
    }
}

impl<'a> Add<&'a CycloScalar> for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &'a CycloScalar) -> CycloScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl<'a> Sub<&'a CycloScalar> for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &'a CycloScalar) -> CycloScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, rhs: &CycloScalar) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl<'a> Mul<&'a CycloScalar> for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &'a CycloScalar) -> CycloScalar {
        // Rational operands are the common case; skip the 16-term product.
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        let mut prod: [Rational; 7] = Default::default();
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        // ζ^k = ζ^{k-2} − ζ^{k-4} for k >= 4.
        for k in (4..7).rev() {
            let top = std::mem::take(&mut prod[k]);
            if !top.is_zero() {
                prod[k - 2] += &top;
                prod[k - 4] -= &top;
            }
        }
        let [c0, c1, c2, c3, ..] = prod;
        CycloScalar { coords: [c0, c1, c2, c3] }
    }
}

impl MulAssign<&CycloScalar> for CycloScalar {
    fn mul_assign(&mut self, rhs: &CycloScalar) {
        *self = &*self * rhs;
    }
}

impl CycloScalar {
    /// Multiplication by a rational.
    pub fn scale(&self, r: &Rational) -> CycloScalar {
        if r.is_zero() {
            return CycloScalar::zero();
        }
        let mut out = self.clone();
        for c in out.coords.iter_mut() {
            if !c.is_zero() {
                *c *= r;
            }
        }
        out
    }
}

impl<'a> Div<&'a CycloScalar> for &CycloScalar {
    type Output = CycloScalar;
    /// Panics on a zero divisor, like the rational division it extends.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a CycloScalar) -> CycloScalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar { coords: self.coords.clone().map(|c| -c) }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar { coords: self.coords.map(|c| -c) }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: &'a CycloScalar) -> CycloScalar { (&self).$m(rhs) }
        }
        impl $tr<CycloScalar> for &CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

// Dense polynomial helpers over Q, lowest degree first, no trailing zeros.

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = num.to_vec();
    let lead = den.last().expect("nonzero divisor").clone();
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let factor = rem.last().unwrap() / &lead;
        for (k, d) in den.iter().enumerate() {
            rem[shift + k] -= &factor * d;
        }
        quot[shift] = factor;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

// Text form: "a0 + a1*z + a2*z^2 + a3*z^3", zero terms omitted.

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            let unit = match k {
                0 => None,
                1 => Some("z".to_string()),
                _ => Some(format!("z^{k}")),
            };
            match unit {
                None => write!(f, "{mag}")?,
                Some(u) if mag.is_one() => f.write_str(&u)?,
                Some(u) => write!(f, "{mag}*{u}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloScalar({self})")
    }
}

impl Serialize for CycloScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(4))?;
        for c in &self.coords {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

/// Canonical text form; same as `Display`.
pub fn format_scalar(x: &CycloScalar) -> String {
    x.to_string()
}

/// Parses a scalar literal.
///
/// Grammar: a signed sum of terms, `term := rational ['*'] [unit] | unit`,
/// `unit := 'i' | 'w' | 'z' ['^' digits]`, `rational := digits ['/' digits]`.
/// `i` is `ζ³`, `w` is `ω`, `z` is `ζ`. Whitespace is ignored. Accepts
/// everything [`format_scalar`] prints.
pub fn parse_scalar(text: &str) -> Result<CycloScalar> {
    ScalarParser { src: text.as_bytes(), pos: 0 }.parse()
}

impl std::str::FromStr for CycloScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

struct ScalarParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ScalarParser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("ascii digits parse"))
    }

    fn parse(mut self) -> Result<CycloScalar> {
        if self.peek().is_none() {
            return self.err("empty scalar literal");
        }
        let mut acc = CycloScalar::zero();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                None => break,
                Some(_) if first => false,
                Some(c) => return self.err(format!("expected '+' or '-', found '{}'", c as char)),
            };
            first = false;
            let term = self.term()?;
            if negative {
                acc -= &term;
            } else {
                acc += &term;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CycloScalar> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.digits()?;
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    d
                } else {
                    BigInt::one()
                };
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(b'i' | b'w' | b'z')) {
                        return self.err("expected 'i', 'w' or 'z' after '*'");
                    }
                }
                Some(Rational::new(num, den))
            }
            Some(b'i' | b'w' | b'z') => None,
            Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
            None => return self.err("expected a term"),
        };
        let unit = match self.peek() {
            Some(b'i') => {
                self.pos += 1;
                CycloScalar::i()
            }
            Some(b'w') => {
                self.pos += 1;
                CycloScalar::omega()
            }
            Some(b'z') => {
                self.pos += 1;
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.digits()?;
                    match i64::try_from(e) {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent too large"),
                    }
                } else {
                    1
                };
                CycloScalar::zeta().pow(exp)?
            }
            _ => CycloScalar::one(),
        };
        Ok(match coeff {
            Some(c) => unit.scale(&c),
            None => unit,
        })
    }
}
