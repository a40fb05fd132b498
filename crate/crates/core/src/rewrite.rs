//! Normal ordering under commutation relations.
//!
//! A [`RelationPreset`] is a string rewriting system whose left sides are
//! adjacent letter pairs. Normal form sorts letters ascending in alphabet
//! order, with `D` last, so that "acting on the kernel of `D`" is a syntactic
//! operation on normal forms: drop every monomial that still contains `D`.
//!
//! Termination: a rule either swaps a descending pair into ascending order
//! (the inversion count drops by one) or replaces the pair with a word of
//! length at most one (the length drops). `(length, inversions)` therefore
//! decreases lexicographically on every monomial a step produces.
//! [`RewriteRule::new`] rejects anything else.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, NcPoly, Word};
use crate::scalars::CycloScalar;

/// Default number of rule applications allowed per normalization.
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

/// `a b → right`, where `a b` is an adjacent pair of generators.
#[derive(Clone, Debug)]
pub struct RewriteRule {
    left: (u8, u8),
    right: Vec<(Word, CycloScalar)>,
}

impl RewriteRule {
    /// Validates the order-reducing shape: a descending pair may become the
    /// swapped pair, a single letter or `I`; any other pair (a cancellation)
    /// may only shrink.
    pub fn new(left: (u8, u8), right: &NcPoly) -> Result<Self> {
        let (a, b) = left;
        for (w, _) in right.terms() {
            let ok = match w.letters() {
                [] | [_] => true,
                [x, y] => a > b && *x == b && *y == a,
                _ => false,
            };
            if !ok {
                let alph = right.alphabet();
                return Err(Error::InvalidRule(format!(
                    "{} {} -> {} is not order-reducing",
                    alph.name(a),
                    alph.name(b),
                    right
                )));
            }
        }
        Ok(RewriteRule { left, right: right.terms().map(|(w, c)| (w.clone(), c.clone())).collect() })
    }

    /// Rule from generator names and a replacement polynomial.
    pub fn named(alphabet: &Arc<Alphabet>, a: &str, b: &str, right: &NcPoly) -> Result<Self> {
        Self::new((alphabet.index(a)?, alphabet.index(b)?), right)
    }

    pub fn left(&self) -> (u8, u8) {
        self.left
    }
}

/// The relation sets shipped with the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PresetName {
    /// `[D,U] = λU` over `[U, D]`.
    FirstOrderPlus,
    /// `[D,U] = −λU` over `[U, D]`.
    FirstOrderMinus,
    /// `[D,U] = C`, `[D,C] = λ²U`, `[U,C] = 0` over `[U, C, D]`.
    SecondOrder,
    /// `[D,U] = C`, `[D,C] = 0`, `[U,C] = 0` over `[U, C, D]`.
    SecondOrderCentral,
    /// `[D,U] = λU` with `U` invertible, over `[Uinv, U, D]`.
    InvertiblePlus,
    /// `[D,U] = −λU` with `U` invertible, over `[Uinv, U, D]`.
    InvertibleMinus,
    /// `[V,W] = 0`, `[D,V] = μV`, `[D,W] = λW` over `[V, W, D]`.
    PartialVW,
    /// No relations, over `[U, D]`.
    Free,
}

impl PresetName {
    pub const ALL: [PresetName; 8] = [
        PresetName::FirstOrderPlus,
        PresetName::FirstOrderMinus,
        PresetName::SecondOrder,
        PresetName::SecondOrderCentral,
        PresetName::InvertiblePlus,
        PresetName::InvertibleMinus,
        PresetName::PartialVW,
        PresetName::Free,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::FirstOrderPlus => "first-order-plus",
            PresetName::FirstOrderMinus => "first-order-minus",
            PresetName::SecondOrder => "second-order",
            PresetName::SecondOrderCentral => "second-order-central",
            PresetName::InvertiblePlus => "invertible-plus",
            PresetName::InvertibleMinus => "invertible-minus",
            PresetName::PartialVW => "partial-vw",
            PresetName::Free => "free",
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PresetName::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown preset `{s}`")))
    }
}

/// A named rewrite system over a fixed alphabet.
#[derive(Clone, Debug)]
pub struct RelationPreset {
    name: String,
    alphabet: Arc<Alphabet>,
    rules: Vec<RewriteRule>,
    // rule index by (left letter, right letter), row-major
    table: Vec<Option<usize>>,
    lambda: CycloScalar,
    mu: Option<CycloScalar>,
}

fn gen(a: &Arc<Alphabet>, name: &str) -> NcPoly {
    NcPoly::generator(a, name).expect("preset generator")
}

fn word(a: &Arc<Alphabet>, names: &[&str]) -> NcPoly {
    NcPoly::word(a, names).expect("preset generator")
}

impl RelationPreset {
    /// Assembles a preset from explicit rules. At most one rule per pair.
    pub fn custom(name: &str, alphabet: Arc<Alphabet>, rules: Vec<RewriteRule>) -> Result<Self> {
        let n = alphabet.len();
        let mut table = vec![None; n * n];
        for (k, r) in rules.iter().enumerate() {
            let (a, b) = r.left;
            if a as usize >= n || b as usize >= n {
                return Err(Error::InvalidRule("rule letter outside alphabet".into()));
            }
            let slot = &mut table[a as usize * n + b as usize];
            if slot.is_some() {
                return Err(Error::InvalidRule(format!("two rules for {} {}", alphabet.name(a), alphabet.name(b))));
            }
            *slot = Some(k);
        }
        Ok(RelationPreset { name: name.to_string(), alphabet, rules, table, lambda: CycloScalar::zero(), mu: None })
    }

    fn with_params(mut self, lambda: &CycloScalar, mu: Option<&CycloScalar>) -> Self {
        self.lambda = lambda.clone();
        self.mu = mu.cloned();
        self
    }

    fn first_order(name: PresetName, lambda: &CycloScalar, sign: i64) -> Self {
        let a = Alphabet::new(&["U", "D"]).unwrap();
        let s = CycloScalar::from_int(sign) * lambda;
        let du = &word(&a, &["U", "D"]) + &gen(&a, "U").scale(&s);
        let rules = vec![RewriteRule::named(&a, "D", "U", &du).unwrap()];
        Self::custom(name.as_str(), a, rules).unwrap().with_params(lambda, None)
    }

    /// `DU → UD + λU`.
    pub fn first_order_plus(lambda: &CycloScalar) -> Self {
        Self::first_order(PresetName::FirstOrderPlus, lambda, 1)
    }

    /// `DU → UD − λU`.
    pub fn first_order_minus(lambda: &CycloScalar) -> Self {
        Self::first_order(PresetName::FirstOrderMinus, lambda, -1)
    }

    fn second_order_inner(name: PresetName, lambda: &CycloScalar) -> Self {
        let a = Alphabet::new(&["U", "C", "D"]).unwrap();
        let lam2 = lambda * lambda;
        let rules = vec![
            RewriteRule::named(&a, "D", "U", &(&word(&a, &["U", "D"]) + &gen(&a, "C"))).unwrap(),
            RewriteRule::named(&a, "D", "C", &(&word(&a, &["C", "D"]) + &gen(&a, "U").scale(&lam2))).unwrap(),
            RewriteRule::named(&a, "C", "U", &word(&a, &["U", "C"])).unwrap(),
        ];
        Self::custom(name.as_str(), a, rules).unwrap().with_params(lambda, None)
    }

    /// `C` stands for `[D,U]`: `DU → UD + C`, `DC → CD + λ²U`, `CU → UC`.
    pub fn second_order(lambda: &CycloScalar) -> Self {
        Self::second_order_inner(PresetName::SecondOrder, lambda)
    }

    /// `DU → UD + C`, `DC → CD`, `CU → UC`.
    pub fn second_order_central() -> Self {
        Self::second_order_inner(PresetName::SecondOrderCentral, &CycloScalar::zero())
    }

    fn invertible(name: PresetName, lambda: &CycloScalar, sign: i64) -> Self {
        let a = Alphabet::new(&["Uinv", "U", "D"]).unwrap();
        let s = CycloScalar::from_int(sign) * lambda;
        let one = NcPoly::one(&a);
        let rules = vec![
            RewriteRule::named(&a, "U", "Uinv", &one).unwrap(),
            RewriteRule::named(&a, "Uinv", "U", &one).unwrap(),
            RewriteRule::named(&a, "D", "U", &(&word(&a, &["U", "D"]) + &gen(&a, "U").scale(&s))).unwrap(),
            RewriteRule::named(&a, "D", "Uinv", &(&word(&a, &["Uinv", "D"]) - &gen(&a, "Uinv").scale(&s))).unwrap(),
        ];
        Self::custom(name.as_str(), a, rules).unwrap().with_params(lambda, None)
    }

    /// `[D,U] = λU`, `[D,U⁻¹] = −λU⁻¹`, `U U⁻¹ = U⁻¹ U = I`.
    pub fn invertible_plus(lambda: &CycloScalar) -> Self {
        Self::invertible(PresetName::InvertiblePlus, lambda, 1)
    }

    /// `[D,U] = −λU`, `[D,U⁻¹] = λU⁻¹`, `U U⁻¹ = U⁻¹ U = I`.
    pub fn invertible_minus(lambda: &CycloScalar) -> Self {
        Self::invertible(PresetName::InvertibleMinus, lambda, -1)
    }

    /// `WV → VW`, `DV → VD + μV`, `DW → WD + λW`.
    pub fn partial_vw(lambda: &CycloScalar, mu: &CycloScalar) -> Self {
        let a = Alphabet::new(&["V", "W", "D"]).unwrap();
        let rules = vec![
            RewriteRule::named(&a, "W", "V", &word(&a, &["V", "W"])).unwrap(),
            RewriteRule::named(&a, "D", "V", &(&word(&a, &["V", "D"]) + &gen(&a, "V").scale(mu))).unwrap(),
            RewriteRule::named(&a, "D", "W", &(&word(&a, &["W", "D"]) + &gen(&a, "W").scale(lambda))).unwrap(),
        ];
        Self::custom(PresetName::PartialVW.as_str(), a, rules).unwrap().with_params(lambda, Some(mu))
    }

    /// `PartialVW` without the `D V` rule. Not confluent: `D W V` has two
    /// normal forms. Kept as a negative fixture for the confluence check.
    pub fn partial_vw_without_dv(lambda: &CycloScalar) -> Self {
        let a = Alphabet::new(&["V", "W", "D"]).unwrap();
        let rules = vec![
            RewriteRule::named(&a, "W", "V", &word(&a, &["V", "W"])).unwrap(),
            RewriteRule::named(&a, "D", "W", &(&word(&a, &["W", "D"]) + &gen(&a, "W").scale(lambda))).unwrap(),
        ];
        Self::custom("partial-vw-without-dv", a, rules).unwrap().with_params(lambda, None)
    }

    /// No rules over the given alphabet.
    pub fn free(alphabet: Arc<Alphabet>) -> Self {
        Self::custom(PresetName::Free.as_str(), alphabet, Vec::new()).unwrap()
    }

    /// Builds a shipped preset. `mu` is used by `PartialVW` only and
    /// defaults to zero; `lambda` is ignored by `SecondOrderCentral`.
    pub fn build(name: PresetName, lambda: &CycloScalar, mu: Option<&CycloScalar>) -> Self {
        match name {
            PresetName::FirstOrderPlus => Self::first_order_plus(lambda),
            PresetName::FirstOrderMinus => Self::first_order_minus(lambda),
            PresetName::SecondOrder => Self::second_order(lambda),
            PresetName::SecondOrderCentral => Self::second_order_central(),
            PresetName::InvertiblePlus => Self::invertible_plus(lambda),
            PresetName::InvertibleMinus => Self::invertible_minus(lambda),
            PresetName::PartialVW => Self::partial_vw(lambda, &mu.cloned().unwrap_or_else(CycloScalar::zero)),
            PresetName::Free => Self::free(Alphabet::new(&["U", "D"]).unwrap()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn lambda(&self) -> &CycloScalar {
        &self.lambda
    }

    pub fn mu(&self) -> Option<&CycloScalar> {
        self.mu.as_ref()
    }

    pub fn generator(&self, name: &str) -> Result<NcPoly> {
        NcPoly::generator(&self.alphabet, name)
    }

    fn rule_at(&self, a: u8, b: u8) -> Option<&RewriteRule> {
        let n = self.alphabet.len();
        self.table[a as usize * n + b as usize].map(|k| &self.rules[k])
    }

    fn redexes(&self, w: &Word) -> impl Iterator<Item = usize> + '_ {
        let letters = w.letters().to_vec();
        (0..letters.len().saturating_sub(1)).filter(move |&i| self.rule_at(letters[i], letters[i + 1]).is_some())
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.redexes(w).next().is_none()
    }

    /// Rewrites the redex at position `i` of `w`; returns the new monomials.
    fn step(&self, w: &Word, i: usize) -> Vec<(Word, CycloScalar)> {
        let l = w.letters();
        let rule = self.rule_at(l[i], l[i + 1]).expect("redex");
        rule.right
            .iter()
            .map(|(m, c)| {
                let mut v = Vec::with_capacity(l.len());
                v.extend_from_slice(&l[..i]);
                v.extend_from_slice(m.letters());
                v.extend_from_slice(&l[i + 2..]);
                (Word::new(v), c.clone())
            })
            .collect()
    }

    fn d_index(&self) -> Result<u8> {
        let d = self
            .alphabet
            .index("D")
            .map_err(|_| Error::KernelPrecondition(format!("preset `{}` has no generator D", self.name)))?;
        if d as usize + 1 != self.alphabet.len() {
            return Err(Error::KernelPrecondition(format!("D is not last in preset `{}`", self.name)));
        }
        Ok(d)
    }
}

type Expansion = Rc<Vec<(Word, CycloScalar)>>;

/// Memoizing leftmost normalizer. Reuse one across calls that share a preset.
pub struct Normalizer<'a> {
    preset: &'a RelationPreset,
    cache: HashMap<Word, Expansion>,
    steps: u64,
    budget: u64,
}

impl<'a> Normalizer<'a> {
    pub fn new(preset: &'a RelationPreset) -> Self {
        Self::with_budget(preset, DEFAULT_STEP_BUDGET)
    }

    /// `budget` bounds the rule applications across the normalizer's lifetime.
    pub fn with_budget(preset: &'a RelationPreset, budget: u64) -> Self {
        Normalizer { preset, cache: HashMap::new(), steps: 0, budget }
    }

    pub fn preset(&self) -> &'a RelationPreset {
        self.preset
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn normalize(&mut self, p: &NcPoly) -> Result<NcPoly> {
        if !Arc::ptr_eq(p.alphabet(), &self.preset.alphabet) && **p.alphabet() != *self.preset.alphabet {
            return Err(Error::AlphabetMismatch {
                left: format!("{:?}", p.alphabet().names()),
                right: format!("{:?}", self.preset.alphabet.names()),
            });
        }
        let mut acc: BTreeMap<Word, CycloScalar> = BTreeMap::new();
        for (w, c) in p.terms() {
            let nf = self.word_nf(w)?;
            for (m, d) in nf.iter() {
                let v = acc.entry(m.clone()).or_insert_with(CycloScalar::zero);
                *v += &(c * d);
            }
        }
        Ok(NcPoly::from_terms(&self.preset.alphabet, acc.into_iter().filter(|(_, c)| !c.is_zero())))
    }

    fn word_nf(&mut self, w: &Word) -> Result<Expansion> {
        if let Some(hit) = self.cache.get(w) {
            return Ok(hit.clone());
        }
        let result = match self.preset.redexes(w).next() {
            None => Rc::new(vec![(w.clone(), CycloScalar::one())]),
            Some(i) => {
                self.steps += 1;
                if self.steps > self.budget {
                    return Err(Error::StepBudgetExceeded { budget: self.budget });
                }
                let mut acc: BTreeMap<Word, CycloScalar> = BTreeMap::new();
                for (m, c) in self.preset.step(w, i) {
                    let sub = self.word_nf(&m)?;
                    for (x, d) in sub.iter() {
                        *acc.entry(x.clone()).or_insert_with(CycloScalar::zero) += &(&c * d);
                    }
                }
                Rc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            }
        };
        self.cache.insert(w.clone(), result.clone());
        Ok(result)
    }
}

/// Exhaustive rewriting to the unique normal form.
pub fn normalize(p: &NcPoly, preset: &RelationPreset) -> Result<NcPoly> {
    Normalizer::new(preset).normalize(p)
}

/// Normal form with every monomial containing `D` removed: the action of `p`
/// on elements annihilated by `D`.
pub fn restrict_to_kernel(p: &NcPoly, preset: &RelationPreset) -> Result<NcPoly> {
    restrict_with(&mut Normalizer::new(preset), p)
}

pub(crate) fn restrict_with(norm: &mut Normalizer<'_>, p: &NcPoly) -> Result<NcPoly> {
    let d = norm.preset.d_index()?;
    Ok(norm.normalize(p)?.filter_terms(|w| !w.contains(d)))
}

/// Action of `p` on an eigenvector `v` with `Dv = μv`: the normal form with
/// each trailing block `D^c` replaced by `μ^c`. The result is the polynomial
/// `q` with `p v = q v`.
pub fn kernel_eval(p: &NcPoly, preset: &RelationPreset, mu: &CycloScalar) -> Result<NcPoly> {
    kernel_eval_with(&mut Normalizer::new(preset), p, mu)
}

pub(crate) fn kernel_eval_with(norm: &mut Normalizer<'_>, p: &NcPoly, mu: &CycloScalar) -> Result<NcPoly> {
    let d = norm.preset.d_index()?;
    let nf = norm.normalize(p)?;
    let mut out = NcPoly::zero(nf.alphabet());
    for (w, c) in nf.terms() {
        let letters = w.letters();
        let head = letters.iter().rposition(|&l| l != d).map_or(0, |k| k + 1);
        if letters[..head].contains(&d) {
            return Err(Error::KernelPrecondition(format!(
                "normal-form monomial has a D outside its trailing block under `{}`",
                norm.preset.name
            )));
        }
        let scale = mu.pow((letters.len() - head) as i64)?;
        out.add_term(Word::new(letters[..head].to_vec()), c * &scale);
    }
    Ok(out)
}

/// Where to apply the next rewrite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    /// Random term and redex, from a seeded generator.
    Random(u64),
}

/// Rewrites one redex at a time, chosen by `strategy`, until no rule applies.
/// Unmemoized; used to cross-check the normalizer.
pub fn rewrite_with_strategy(p: &NcPoly, preset: &RelationPreset, strategy: Strategy, budget: u64) -> Result<NcPoly> {
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut current = p.clone();
    let mut steps = 0u64;
    loop {
        let reducible: Vec<(Word, Vec<usize>)> = current
            .terms()
            .filter_map(|(w, _)| {
                let r: Vec<usize> = preset.redexes(w).collect();
                (!r.is_empty()).then(|| (w.clone(), r))
            })
            .collect();
        if reducible.is_empty() {
            return Ok(current);
        }
        steps += 1;
        if steps > budget {
            return Err(Error::StepBudgetExceeded { budget });
        }
        let (w, pos) = match (&mut rng, strategy) {
            (Some(rng), _) => {
                let (w, r) = &reducible[rng.gen_range(0..reducible.len())];
                (w, r[rng.gen_range(0..r.len())])
            }
            (None, Strategy::Rightmost) => {
                let (w, r) = reducible.last().unwrap();
                (w, *r.last().unwrap())
            }
            (None, _) => {
                let (w, r) = &reducible[0];
                (w, r[0])
            }
        };
        let c = current.coeff(w);
        let mut next = current.filter_terms(|x| x != w);
        for (m, d) in preset.step(w, pos) {
            next.add_term(m, &c * &d);
        }
        current = next;
    }
}

/// A word whose strategies disagree.
#[derive(Clone, Debug)]
pub struct Divergence {
    pub word: String,
    pub forms: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub preset: String,
    pub degree: usize,
    pub words_checked: usize,
    pub divergent: Vec<Divergence>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.divergent.is_empty()
    }
}

/// Number of randomized strategies run per word.
pub const RANDOM_STRATEGIES: u64 = 3;

/// Rewrites every word of length `<= degree` with the memoized leftmost
/// normalizer, the rightmost strategy and [`RANDOM_STRATEGIES`] seeded random
/// strategies, and reports each word whose results differ.
pub fn check_confluence(preset: &RelationPreset, degree: usize) -> Result<ConfluenceReport> {
    if degree < 3 {
        return Err(Error::InvalidArgument(format!("confluence degree must be >= 3, got {degree}")));
    }
    let n = preset.alphabet.len() as u8;
    let mut norm = Normalizer::new(preset);
    let mut divergent = Vec::new();
    let mut words_checked = 0;
    let mut layer = vec![Word::unit()];
    for _ in 0..=degree {
        for w in &layer {
            words_checked += 1;
            let p = NcPoly::monomial(&preset.alphabet, w.clone(), CycloScalar::one());
            let mut forms = vec![norm.normalize(&p)?];
            forms.push(rewrite_with_strategy(&p, preset, Strategy::Rightmost, DEFAULT_STEP_BUDGET)?);
            for k in 0..RANDOM_STRATEGIES {
                let seed = (words_checked as u64) << 8 | k;
                forms.push(rewrite_with_strategy(&p, preset, Strategy::Random(seed), DEFAULT_STEP_BUDGET)?);
            }
            if forms.iter().any(|f| f != &forms[0]) {
                let mut texts: Vec<String> = forms.iter().map(ToString::to_string).collect();
                texts.dedup();
                texts.sort();
                texts.dedup();
                divergent.push(Divergence { word: p.to_string(), forms: texts });
            }
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..n).map(move |l| {
                    let mut v = w.letters().to_vec();
                    v.push(l);
                    Word::new(v)
                })
            })
            .collect();
    }
    Ok(ConfluenceReport { preset: preset.name.clone(), degree, words_checked, divergent })
}
