//! Concrete operators for the abstract generators, and the representation map
//! sending a polynomial to the corresponding composition applied to a
//! function.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use super::func::{DerivKind, FuncExpr};
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::freealg::NcPoly;

/// Column vector of functions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VecFunc(pub Vec<FuncExpr>);

impl VecFunc {
    pub fn scalar(f: FuncExpr) -> Self {
        VecFunc(vec![f])
    }

    pub fn zeros(m: usize) -> Self {
        VecFunc(vec![FuncExpr::zero(); m])
    }

    /// Constant vector `c`, times the function `f`.
    pub fn constant(c: &[crate::scalars::CycloScalar], f: &FuncExpr) -> Self {
        VecFunc(c.iter().map(|x| f.scale(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FuncExpr::is_zero)
    }

    fn map(&self, f: impl Fn(&FuncExpr) -> FuncExpr) -> Self {
        VecFunc(self.0.iter().map(f).collect())
    }

    pub fn scale(&self, s: &crate::scalars::CycloScalar) -> Self {
        self.map(|f| f.scale(s))
    }

    pub fn sub(&self, other: &VecFunc) -> VecFunc {
        VecFunc(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn add_assign(&mut self, other: &VecFunc) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = &*a + b;
        }
    }
}

impl fmt::Display for VecFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        f.write_str("[")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// Square array of functions, acting by matrix-vector multiplication.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatFunc {
    dim: usize,
    entries: Vec<FuncExpr>,
}

impl MatFunc {
    /// `A ⊗ f`: every entry of the constant matrix times `f`.
    pub fn tensor(a: &Matrix, f: &FuncExpr) -> Self {
        assert_eq!(a.rows(), a.cols(), "square matrix expected");
        let dim = a.rows();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f.scale(a.get(r, c)));
            }
        }
        MatFunc { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add(&self, other: &MatFunc) -> Result<MatFunc> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(MatFunc { dim: self.dim, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() })
    }

    fn apply(&self, v: &VecFunc) -> VecFunc {
        VecFunc(
            (0..self.dim)
                .map(|r| {
                    (0..self.dim).fold(FuncExpr::zero(), |acc, c| &acc + &(&self.entries[r * self.dim + c] * &v.0[c]))
                })
                .collect(),
        )
    }
}

/// The operator a generator is realized as.
#[derive(Clone, Debug)]
pub enum Operator {
    Derivation(DerivKind),
    /// Multiplication by a scalar function, acting entrywise.
    MultiplyBy(FuncExpr),
    /// Multiplication by a matrix-valued function.
    MultiplyByMatrix(MatFunc),
}

impl Operator {
    fn dim(&self) -> Option<usize> {
        match self {
            Operator::MultiplyByMatrix(m) => Some(m.dim()),
            _ => None,
        }
    }

    pub fn apply(&self, v: &VecFunc) -> VecFunc {
        match self {
            Operator::Derivation(kind) => v.map(|f| f.differentiate(*kind)),
            Operator::MultiplyBy(g) => v.map(|f| g * f),
            Operator::MultiplyByMatrix(m) => m.apply(v),
        }
    }
}

/// Generator name → operator. Matrix operators must share one dimension.
#[derive(Clone, Debug, Default)]
pub struct OperatorAssignment {
    ops: BTreeMap<String, Operator>,
}

impl OperatorAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assigns `op` to `generator`; a generator is assigned at most once.
    pub fn assign(mut self, generator: &str, op: Operator) -> Result<Self> {
        if let Some(m) = op.dim() {
            if let Some(existing) = self.dim() {
                if existing != m {
                    return Err(Error::DimensionMismatch { expected: existing, found: m });
                }
            }
        }
        if self.ops.insert(generator.to_string(), op).is_some() {
            return Err(Error::InvalidArgument(format!("generator `{generator}` assigned twice")));
        }
        Ok(self)
    }

    /// Shared dimension of the matrix operators, if any.
    pub fn dim(&self) -> Option<usize> {
        self.ops.values().find_map(Operator::dim)
    }

    pub fn get(&self, generator: &str) -> Option<&Operator> {
        self.ops.get(generator)
    }
}

/// Applies the operator represented by `p` to `f`. Letters act right to left,
/// so the rightmost letter of a word acts first.
pub fn apply_assigned_vec(p: &NcPoly, asg: &OperatorAssignment, f: &VecFunc) -> Result<VecFunc> {
    if let Some(m) = asg.dim() {
        if m != f.dim() {
            return Err(Error::DimensionMismatch { expected: m, found: f.dim() });
        }
    }
    let alphabet = p.alphabet();
    let mut ops: Vec<Option<&Operator>> = Vec::with_capacity(alphabet.len());
    for name in alphabet.names() {
        ops.push(asg.get(name));
    }
    // Results of suffixes, shared between words.
    let mut memo: HashMap<Vec<u8>, VecFunc> = HashMap::new();
    let mut out = VecFunc::zeros(f.dim());
    for (w, c) in p.terms() {
        let letters = w.letters();
        let mut start = letters.len();
        while start > 0 && memo.contains_key(&letters[start - 1..]) {
            start -= 1;
        }
        let mut value = if start == letters.len() { f.clone() } else { memo[&letters[start..]].clone() };
        for k in (0..start).rev() {
            let op = ops[letters[k] as usize]
                .ok_or_else(|| Error::UnassignedGenerator(alphabet.name(letters[k]).to_string()))?;
            value = op.apply(&value);
            memo.insert(letters[k..].to_vec(), value.clone());
        }
        if !c.is_zero() {
            out.add_assign(&value.scale(c));
        }
    }
    Ok(out)
}

/// Scalar-function form of [`apply_assigned_vec`].
pub fn apply_assigned(p: &NcPoly, asg: &OperatorAssignment, f: &FuncExpr) -> Result<FuncExpr> {
    let v = apply_assigned_vec(p, asg, &VecFunc::scalar(f.clone()))?;
    Ok(v.0.into_iter().next().expect("one component"))
}

/// Applies `factors[0] · factors[1] ··· factors[k−1]` to `f`, rightmost
/// factor first, without expanding the product.
pub fn apply_product(factors: &[NcPoly], asg: &OperatorAssignment, f: &VecFunc) -> Result<VecFunc> {
    factors.iter().rev().try_fold(f.clone(), |acc, p| apply_assigned_vec(p, asg, &acc))
}

/// Applies `B(n, λ, U, D)` factor by factor; agrees with applying
/// [`crate::binomial::build_b`] but never expands the products.
pub fn apply_binomial(spec: &crate::binomial::BinomialSpec, asg: &OperatorAssignment, f: &VecFunc) -> Result<VecFunc> {
    let mut out = VecFunc::zeros(f.dim());
    for (c, factors) in crate::binomial::factored_b(spec) {
        out.add_assign(&apply_product(&factors, asg, f)?.scale(&c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{commutator, Alphabet};
    use crate::scalars::CycloScalar;

    fn standard(u: FuncExpr) -> OperatorAssignment {
        OperatorAssignment::new()
            .assign("D", Operator::Derivation(DerivKind::Plain))
            .unwrap()
            .assign("U", Operator::MultiplyBy(u))
            .unwrap()
    }

    #[test]
    fn application_examples() {
        let a = Alphabet::new(&["U", "D"]).unwrap();
        let lam = CycloScalar::ratio(-5, 2);
        let asg = standard(FuncExpr::exp(&lam));
        let d = NcPoly::generator(&a, "D").unwrap();
        let u = NcPoly::generator(&a, "U").unwrap();
        let e = FuncExpr::exp(&lam);
        assert_eq!(apply_assigned(&d, &asg, &e).unwrap(), e.scale(&lam));
        let f = &FuncExpr::power(&CycloScalar::from_int(3)) + &FuncExpr::exp(&CycloScalar::i());
        let comm = commutator(&d, &u).unwrap();
        assert_eq!(apply_assigned(&comm, &asg, &f).unwrap(), (&e * &f).scale(&lam));
    }

    #[test]
    fn word_order_is_composition() {
        let a = Alphabet::new(&["U", "D"]).unwrap();
        let asg = standard(FuncExpr::power(&CycloScalar::from_int(1)));
        // (D U) 1 = d/dx (x) = 1, while (U D) 1 = x · 0 = 0
        let du = NcPoly::word(&a, &["D", "U"]).unwrap();
        let ud = NcPoly::word(&a, &["U", "D"]).unwrap();
        assert_eq!(apply_assigned(&du, &asg, &FuncExpr::one()).unwrap(), FuncExpr::one());
        assert!(apply_assigned(&ud, &asg, &FuncExpr::one()).unwrap().is_zero());
    }

    #[test]
    fn factored_application_matches_expanded() {
        let a = Alphabet::new(&["U", "D"]).unwrap();
        let lam = CycloScalar::ratio(2, 3);
        let asg = standard(&FuncExpr::exp(&lam) + &FuncExpr::power(&CycloScalar::from_int(1)));
        let f = VecFunc::scalar(FuncExpr::exp(&CycloScalar::i()));
        for n in 0..=5 {
            let spec = crate::binomial::BinomialSpec::new(n, &lam, &a).unwrap();
            let expanded = apply_assigned_vec(&crate::binomial::build_b(&spec), &asg, &f).unwrap();
            assert_eq!(apply_binomial(&spec, &asg, &f).unwrap(), expanded);
        }
    }

    #[test]
    fn assignment_errors() {
        let a = Alphabet::new(&["U", "D"]).unwrap();
        let only_d = OperatorAssignment::new().assign("D", Operator::Derivation(DerivKind::Plain)).unwrap();
        let u = NcPoly::generator(&a, "U").unwrap();
        assert!(matches!(apply_assigned(&u, &only_d, &FuncExpr::one()), Err(Error::UnassignedGenerator(_))));
        assert!(only_d.clone().assign("D", Operator::Derivation(DerivKind::Plain)).is_err());
        let m2 = MatFunc::tensor(&Matrix::identity(2), &FuncExpr::one());
        let m3 = MatFunc::tensor(&Matrix::identity(3), &FuncExpr::one());
        let asg = only_d.assign("U", Operator::MultiplyByMatrix(m2)).unwrap();
        assert!(asg.clone().assign("V", Operator::MultiplyByMatrix(m3)).is_err());
        let err = apply_assigned_vec(&u, &asg, &VecFunc::zeros(3));
        assert_eq!(err, Err(Error::DimensionMismatch { expected: 2, found: 3 }));
    }
}
