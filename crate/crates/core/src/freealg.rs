//! The free associative algebra with unit over [`CycloScalar`] on a finite,
//! ordered alphabet.
//!
//! Words are sequences of generator indices; the empty word is the unit `I`.
//! Multiplication is concatenation extended bilinearly and never reorders
//! letters. Reordering is the job of [`crate::rewrite`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeMap, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::scalars::CycloScalar;

/// Ordered set of generator names. The position of a name is its order index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        let mut seen = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().to_string();
            if seen.contains(&n) {
                return Err(Error::DuplicateGenerator(n));
            }
            seen.push(n);
        }
        Ok(Arc::new(Alphabet { names: seen }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: u8) -> &str {
        &self.names[index as usize]
    }

    pub fn index(&self, name: &str) -> Result<u8> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as u8)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    fn describe(&self) -> String {
        format!("[{}]", self.names.join(", "))
    }
}

fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch { left: a.describe(), right: b.describe() })
    }
}

/// A monomial: generator indices, left to right.
///
/// Ordered by length first, then lexicographically by index, which is the
/// canonical term order of [`NcPoly`].
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn count(&self, letter: u8) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    pub fn contains(&self, letter: u8) -> bool {
        self.0.contains(&letter)
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

/// Finite linear combination of words with no zero coefficients.
#[derive(Clone)]
pub struct NcPoly {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Word, CycloScalar>,
}

impl PartialEq for NcPoly {
    fn eq(&self, other: &Self) -> bool {
        same_alphabet(&self.alphabet, &other.alphabet).is_ok() && self.terms == other.terms
    }
}

impl Eq for NcPoly {}

impl NcPoly {
    pub fn zero(alphabet: &Arc<Alphabet>) -> Self {
        NcPoly { alphabet: alphabet.clone(), terms: BTreeMap::new() }
    }

    /// The unit `I`.
    pub fn one(alphabet: &Arc<Alphabet>) -> Self {
        Self::constant(alphabet, CycloScalar::one())
    }

    /// `c·I`.
    pub fn constant(alphabet: &Arc<Alphabet>, c: CycloScalar) -> Self {
        Self::monomial(alphabet, Word::unit(), c)
    }

    pub fn monomial(alphabet: &Arc<Alphabet>, word: Word, c: CycloScalar) -> Self {
        let mut p = Self::zero(alphabet);
        p.add_term(word, c);
        p
    }

    pub fn generator(alphabet: &Arc<Alphabet>, name: &str) -> Result<Self> {
        let idx = alphabet.index(name)?;
        Ok(Self::monomial(alphabet, Word(vec![idx]), CycloScalar::one()))
    }

    /// Monomial from a list of generator names; an empty list gives `I`.
    pub fn word(alphabet: &Arc<Alphabet>, names: &[&str]) -> Result<Self> {
        let letters = names.iter().map(|n| alphabet.index(n)).collect::<Result<Vec<_>>>()?;
        Ok(Self::monomial(alphabet, Word(letters), CycloScalar::one()))
    }

    /// Builds a polynomial from `(word, coeff)` pairs, merging repeats.
    pub fn from_terms(alphabet: &Arc<Alphabet>, terms: impl IntoIterator<Item = (Word, CycloScalar)>) -> Self {
        let mut p = Self::zero(alphabet);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Word, &CycloScalar)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, CycloScalar)> {
        self.terms.into_iter()
    }

    /// Number of terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &Word) -> CycloScalar {
        self.terms.get(word).cloned().unwrap_or_else(CycloScalar::zero)
    }

    /// Longest word length, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// Largest number of occurrences of `letter` in any word.
    pub fn degree_in(&self, letter: u8) -> usize {
        self.terms.keys().map(|w| w.count(letter)).max().unwrap_or(0)
    }

    pub fn mentions(&self, name: &str) -> bool {
        match self.alphabet.index(name) {
            Ok(idx) => self.terms.keys().any(|w| w.contains(idx)),
            Err(_) => false,
        }
    }

    /// Adds `c·word` in place, pruning a resulting zero.
    pub fn add_term(&mut self, word: Word, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &NcPoly) -> Result<NcPoly> {
        same_alphabet(&self.alphabet, &other.alphabet)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &NcPoly) -> Result<NcPoly> {
        same_alphabet(&self.alphabet, &other.alphabet)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &NcPoly) -> Result<NcPoly> {
        same_alphabet(&self.alphabet, &other.alphabet)?;
        let mut out = NcPoly::zero(&self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloScalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero(&self.alphabet);
        }
        NcPoly { alphabet: self.alphabet.clone(), terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// `self^exp`, with `p^0 = I` for every `p` including zero.
    pub fn pow(&self, exp: usize) -> NcPoly {
        let mut acc = NcPoly::one(&self.alphabet);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Keeps the terms whose word satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Word) -> bool) -> NcPoly {
        NcPoly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Re-expresses the polynomial over a larger alphabet containing every
    /// generator name of the current one.
    pub fn embed(&self, target: &Arc<Alphabet>) -> Result<NcPoly> {
        let map = self.alphabet.names.iter().map(|n| target.index(n)).collect::<Result<Vec<_>>>()?;
        Ok(NcPoly::from_terms(
            target,
            self.terms.iter().map(|(w, c)| (Word(w.0.iter().map(|&l| map[l as usize]).collect()), c.clone())),
        ))
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;
    /// Panics on an alphabet mismatch; use [`poly_add`] to get an error instead.
    fn add(self, rhs: &NcPoly) -> NcPoly {
        self.try_add(rhs).expect("alphabet mismatch")
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        self.try_sub(rhs).expect("alphabet mismatch")
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;
    /// Panics on an alphabet mismatch; use [`poly_mul`] to get an error instead.
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.try_mul(rhs).expect("alphabet mismatch")
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&-CycloScalar::one())
    }
}

pub fn poly_add(p: &NcPoly, q: &NcPoly) -> Result<NcPoly> {
    p.try_add(q)
}

pub fn poly_mul(p: &NcPoly, q: &NcPoly) -> Result<NcPoly> {
    p.try_mul(q)
}

/// Left-to-right product of `factors`; the empty product is `I`.
pub fn ordered_product(alphabet: &Arc<Alphabet>, factors: &[NcPoly]) -> Result<NcPoly> {
    let mut acc = NcPoly::one(alphabet);
    for f in factors {
        acc = acc.try_mul(f)?;
    }
    Ok(acc)
}

/// `pq − qp`.
pub fn commutator(p: &NcPoly, q: &NcPoly) -> Result<NcPoly> {
    p.try_mul(q)?.try_sub(&q.try_mul(p)?)
}

/// Applies the algebra endomorphism sending generator `g` to `r` and fixing
/// every other generator.
pub fn substitute_generator(p: &NcPoly, g: &str, r: &NcPoly) -> Result<NcPoly> {
    same_alphabet(&p.alphabet, &r.alphabet)?;
    let target = p.alphabet.index(g)?;
    let mut out = NcPoly::zero(&p.alphabet);
    for (w, c) in &p.terms {
        let mut acc = NcPoly::constant(&p.alphabet, c.clone());
        for &l in w.letters() {
            acc = if l == target {
                &acc * r
            } else {
                &acc * &NcPoly::monomial(&p.alphabet, Word(vec![l]), CycloScalar::one())
            };
        }
        out = &out + &acc;
    }
    Ok(out)
}

/// Row `n` of Pascal's triangle, exact.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for pair in row.windows(2) {
            next.push(&pair[0] + &pair[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row
}

// Canonical text: highest degree first, lexicographic within a degree,
// each term "coeff * g1 g2 ... gk" with unit coefficients omitted.

fn write_word(f: &mut fmt::Formatter<'_>, alphabet: &Alphabet, w: &Word) -> fmt::Result {
    if w.is_empty() {
        return f.write_str("I");
    }
    for (k, &l) in w.letters().iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        f.write_str(alphabet.name(l))?;
    }
    Ok(())
}

impl NcPoly {
    /// Terms in display order: descending length, then lexicographic.
    pub fn display_order(&self) -> Vec<(&Word, &CycloScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0 .0.cmp(&b.0 .0)));
        v
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.display_order().into_iter().enumerate() {
            let (negative, mag) = match c.as_rational() {
                Some(r) if r.is_negative() => (true, CycloScalar::from_rational(-r)),
                _ => (false, c.clone()),
            };
            match (k == 0, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write_word(f, &self.alphabet, w)?;
                continue;
            }
            if mag.is_rational() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "({mag})")?;
            }
            f.write_str(" * ")?;
            write_word(f, &self.alphabet, w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NcPoly({self})")
    }
}

struct JsonTerm<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
    coeff: &'a CycloScalar,
}

impl Serialize for JsonTerm<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let names: Vec<&str> = self.word.letters().iter().map(|&l| self.alphabet.name(l)).collect();
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("word", &names)?;
        map.serialize_entry("coeff", self.coeff)?;
        map.end()
    }
}

/// JSON: a list of `{"word": [names], "coeff": scalar}` in canonical order.
impl Serialize for NcPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (word, coeff) in &self.terms {
            seq.serialize_element(&JsonTerm { alphabet: &self.alphabet, word, coeff })?;
        }
        seq.end()
    }
}
