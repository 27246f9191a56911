use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tate::{Bidegree, IndexSequence};

/// An element `value·ε^eps` of `Z[ε]/(2ε)`.
///
/// For `eps ≥ 1` the value is reduced mod 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coefficient {
    pub value: i64,
    pub eps: u32,
}

impl Coefficient {
    pub const ONE: Coefficient = Coefficient { value: 1, eps: 0 };

    pub fn new(value: i64, eps: u32) -> Self {
        Self {
            value: reduce(value, eps),
            eps,
        }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn bidegree(self) -> Bidegree {
        Bidegree::new(self.eps as i64, self.eps as i64)
    }
}

impl std::ops::Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: Coefficient) -> Coefficient {
        Coefficient::new(self.value * rhs.value, self.eps + rhs.eps)
    }
}

pub(crate) fn reduce(value: i64, eps: u32) -> i64 {
    if eps > 0 {
        value.rem_euclid(2)
    } else {
        value
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingKind {
    /// `H^{*,*}(GL_n)`, generators `ρ_1, …, ρ_n`.
    GeneralLinear { n: u32 },
    /// `H^{*,*}(V(m,n))`, generators `α_{n-m+1}, …, α_n`.
    Stiefel { m: u32, n: u32 },
}

/// Presentation of one of the cohomology rings by generators and relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingPresentation {
    pub kind: RingKind,
}

impl RingPresentation {
    pub fn general_linear(n: u32) -> Self {
        Self {
            kind: RingKind::GeneralLinear { n },
        }
    }

    pub fn stiefel(m: u32, n: u32) -> Result<Self> {
        if m > n {
            return Err(Error::InvalidArgument(format!(
                "V(m,n) needs m ≤ n, got m={m}, n={n}"
            )));
        }
        Ok(Self {
            kind: RingKind::Stiefel { m, n },
        })
    }

    /// The ambient `n` governing the square relation.
    pub fn n(&self) -> u32 {
        match self.kind {
            RingKind::GeneralLinear { n } | RingKind::Stiefel { n, .. } => n,
        }
    }

    pub fn range(&self) -> RangeInclusive<u32> {
        match self.kind {
            RingKind::GeneralLinear { n } => 1..=n,
            RingKind::Stiefel { m, n } => (n - m + 1)..=n,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self.kind {
            RingKind::GeneralLinear { .. } => "ρ",
            RingKind::Stiefel { .. } => "α",
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            RingKind::GeneralLinear { n } => format!("GL({n})"),
            RingKind::Stiefel { m, n } => format!("V({m},{n})"),
        }
    }

    pub fn check(&self, i: u32) -> Result<()> {
        let r = self.range();
        if r.contains(&i) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                lo: *r.start(),
                hi: *r.end(),
                ring: self.name(),
            })
        }
    }

    /// Right-hand side of `x_i^2`: `Some(2i-1)` for `ε·x_{2i-1}`, `None` for zero.
    pub fn square(&self, i: u32) -> Option<u32> {
        let t = 2 * i - 1;
        (t <= self.n()).then_some(t)
    }

    /// All canonical basis sequences with word length at most `max_word`,
    /// in shortlex order.
    pub fn basis(&self, max_word: usize) -> Vec<IndexSequence> {
        let gens: Vec<u32> = self.range().collect();
        let mut out: Vec<IndexSequence> = Vec::new();
        for mask in 0u64..(1u64 << gens.len()) {
            if mask.count_ones() as usize > max_word {
                continue;
            }
            let seq = (0..gens.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| gens[b])
                .collect();
            out.push(IndexSequence::new(seq).expect("subset of an increasing range"));
        }
        out.sort();
        out
    }
}

/// Basis key of a ring element: `ε^eps · x_{gens}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonoKey {
    pub eps: u32,
    pub gens: IndexSequence,
}

impl MonoKey {
    pub fn new(eps: u32, gens: IndexSequence) -> Self {
        Self { eps, gens }
    }

    pub fn bidegree(&self) -> Bidegree {
        self.gens.bidegree() + Bidegree::new(self.eps as i64, self.eps as i64)
    }
}

/// A single term `coeff · x_{i_1} ⋯ x_{i_l}` with canonical indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub gens: IndexSequence,
    pub coeff: Coefficient,
}

impl Monomial {
    pub fn new(gens: IndexSequence, coeff: Coefficient) -> Self {
        Self { gens, coeff }
    }

    pub fn one() -> Self {
        Self::new(IndexSequence::empty(), Coefficient::ONE)
    }

    pub fn generator(i: u32) -> Self {
        Self::basis(IndexSequence::new(vec![i]).expect("one index is increasing"))
    }

    pub fn basis(gens: IndexSequence) -> Self {
        Self::new(gens, Coefficient::ONE)
    }

    pub fn bidegree(&self) -> Bidegree {
        self.gens.bidegree() + self.coeff.bidegree()
    }

    pub fn key(&self) -> MonoKey {
        MonoKey::new(self.coeff.eps, self.gens.clone())
    }
}

/// A formal `Z[ε]/(2ε)`-linear combination of canonical monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RingElement {
    terms: BTreeMap<MonoKey, i64>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(&Monomial::one())
    }

    pub fn from_monomial(x: &Monomial) -> Self {
        let mut out = Self::zero();
        out.add_term(x.key(), x.coeff.value);
        out
    }

    pub fn add_term(&mut self, key: MonoKey, c: i64) {
        let c = reduce(c, key.eps);
        if c == 0 {
            return;
        }
        let eps = key.eps;
        let slot = self.terms.entry(key.clone()).or_insert(0);
        *slot = reduce(*slot + c, eps);
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> RingElement {
        let mut out = RingElement::zero();
        for (k, &v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoKey, i64)> + '_ {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn coeff(&self, key: &MonoKey) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms
            .iter()
            .map(|(k, &c)| Monomial::new(k.gens.clone(), Coefficient::new(c, k.eps)))
    }

    pub fn mul(&self, other: &RingElement, ring: &RingPresentation) -> Result<RingElement> {
        let mut out = RingElement::zero();
        for x in self.monomials() {
            for y in other.monomials() {
                out = out.add(&multiply(&x, &y, ring)?);
            }
        }
        Ok(out)
    }

    pub fn render(&self, symbol: &str) -> String {
        render_sum(
            self.terms
                .iter()
                .map(|(k, &c)| (c, k.eps, render_gens(symbol, &k.gens))),
        )
    }
}

pub(crate) fn render_gens(symbol: &str, gens: &IndexSequence) -> String {
    if gens.is_empty() {
        return "1".to_string();
    }
    let inner: Vec<String> = gens.iter().map(|i| i.to_string()).collect();
    format!("{symbol}[{}]", inner.join(","))
}

/// Joins `(coeff, eps, body)` terms into `a + 2·b - ε·c`.
pub(crate) fn render_sum(terms: impl Iterator<Item = (i64, u32, String)>) -> String {
    let mut s = String::new();
    for (idx, (c, eps, body)) in terms.enumerate() {
        match (idx, c < 0) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let mut prefix = Vec::new();
        if c.abs() != 1 {
            prefix.push(c.abs().to_string());
        }
        match eps {
            0 => {}
            1 => prefix.push("ε".to_string()),
            k => prefix.push(format!("ε^{k}")),
        }
        if body == "1" && !prefix.is_empty() {
            s.push_str(&prefix.join("·"));
        } else {
            prefix.push(body);
            s.push_str(&prefix.join("·"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("ρ"))
    }
}

/// Rewrites the word `x_{w_1} ⋯ x_{w_k}` (any order, repeats allowed) into
/// canonical form.
///
/// Adjacent transpositions of distinct generators contribute a sign; the
/// smallest repeated index `i` is rewritten first via `x_i^2 = ε·x_{2i-1}` or
/// `x_i^2 = 0`. Returns the result and the number of square rewrites
/// performed, which is at most `k - 1`.
pub fn normal_form(
    ring: &RingPresentation,
    word: &[u32],
    coeff: Coefficient,
) -> Result<(RingElement, usize)> {
    for &i in word {
        ring.check(i)?;
    }
    let mut w = word.to_vec();
    let mut sign = 1i64;
    let mut eps = coeff.eps;
    let mut rewrites = 0usize;
    loop {
        for i in 1..w.len() {
            let mut j = i;
            while j > 0 && w[j - 1] > w[j] {
                w.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        let Some(k) = w.windows(2).position(|p| p[0] == p[1]) else {
            break;
        };
        match ring.square(w[k]) {
            None => return Ok((RingElement::zero(), rewrites + 1)),
            Some(t) => {
                w.splice(k..k + 2, [t]);
                eps += 1;
                rewrites += 1;
            }
        }
    }
    let gens = IndexSequence::new(w).expect("sorted without repeats");
    let mut out = RingElement::zero();
    out.add_term(MonoKey::new(eps, gens), sign * coeff.value);
    Ok((out, rewrites))
}

/// Product of two monomials in `ring`, in canonical form.
pub fn multiply(x: &Monomial, y: &Monomial, ring: &RingPresentation) -> Result<RingElement> {
    let word: Vec<u32> = x.gens.iter().chain(y.gens.iter()).collect();
    normal_form(ring, &word, x.coeff * y.coeff).map(|(e, _)| e)
}
