use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ring::{
    normal_form, reduce, render_gens, render_sum, Coefficient, Monomial, RingElement,
    RingPresentation,
};
use crate::error::{Error, Result};
use crate::tate::{Bidegree, IndexSequence};

/// Basis key `ε^eps · x_{I_1} ⊗ ⋯ ⊗ x_{I_k}`. Powers of `ε` are scalars and
/// are collected in front of the whole tensor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TensorKey {
    pub eps: u32,
    pub factors: Vec<IndexSequence>,
}

impl TensorKey {
    pub fn bidegree(&self) -> Bidegree {
        self.factors
            .iter()
            .fold(Bidegree::new(self.eps as i64, self.eps as i64), |acc, f| {
                acc + f.bidegree()
            })
    }
}

/// Linear combination of pure tensors in a `k`-fold tensor product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<TensorKey, i64>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::pure(vec![IndexSequence::empty(); arity], Coefficient::ONE)
    }

    pub fn pure(factors: Vec<IndexSequence>, coeff: Coefficient) -> Self {
        let mut out = Self::zero(factors.len());
        out.add_term(
            TensorKey {
                eps: coeff.eps,
                factors,
            },
            coeff.value,
        );
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, key: TensorKey, c: i64) {
        assert_eq!(key.factors.len(), self.arity, "tensor arity mismatch");
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

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: Coefficient) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        for (k, &v) in &self.terms {
            let eps = k.eps + c.eps;
            out.add_term(
                TensorKey {
                    eps,
                    factors: k.factors.clone(),
                },
                v * c.value,
            );
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

    pub fn terms(&self) -> impl Iterator<Item = (&TensorKey, i64)> + '_ {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn coeff(&self, key: &TensorKey) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn any_epsilon(&self) -> bool {
        self.terms.keys().any(|k| k.eps > 0)
    }

    /// Product in the graded tensor product of algebras:
    /// `(a_1⊗⋯⊗a_k)(b_1⊗⋯⊗b_k) = ± a_1b_1 ⊗ ⋯ ⊗ a_kb_k`, the sign coming from
    /// moving each `b_j` past `a_{j+1}, …, a_k`.
    pub fn mul(&self, other: &TensorElement, rings: &[RingPresentation]) -> Result<TensorElement> {
        if self.arity != other.arity || rings.len() != self.arity {
            return Err(Error::InvalidArgument(format!(
                "tensor arities differ: {} vs {} with {} rings",
                self.arity,
                other.arity,
                rings.len()
            )));
        }
        let mut out = TensorElement::zero(self.arity);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let mut swaps = 0usize;
                for j in 0..self.arity {
                    let tail: usize = a.factors[j + 1..].iter().map(|f| f.len()).sum();
                    swaps += b.factors[j].len() * tail;
                }
                let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
                // expand the factorwise products
                let mut partial: Vec<(Vec<IndexSequence>, u32, i64)> =
                    vec![(Vec::new(), a.eps + b.eps, sign * ca * cb)];
                for (j, ring) in rings.iter().enumerate().take(self.arity) {
                    let word: Vec<u32> = a.factors[j].iter().chain(b.factors[j].iter()).collect();
                    let (prod, _) = normal_form(ring, &word, Coefficient::ONE)?;
                    let mut next = Vec::new();
                    for (facs, eps, c) in &partial {
                        for (key, v) in prod.terms() {
                            let mut f = facs.clone();
                            f.push(key.gens.clone());
                            next.push((f, eps + key.eps, c * v));
                        }
                    }
                    partial = next;
                }
                for (factors, eps, c) in partial {
                    out.add_term(TensorKey { eps, factors }, c);
                }
            }
        }
        Ok(out)
    }

    /// Applies a degree-zero linear map to factor `k`; the map may raise the
    /// arity by returning a tensor of arity `m`, spliced in place of factor `k`.
    pub fn map_factor(
        &self,
        k: usize,
        f: impl Fn(&IndexSequence) -> Result<TensorElement>,
    ) -> Result<TensorElement> {
        let mut out: Option<TensorElement> = None;
        for (key, &c) in &self.terms {
            let image = f(&key.factors[k])?;
            let arity = self.arity - 1 + image.arity;
            let acc = out.get_or_insert_with(|| TensorElement::zero(arity));
            for (ik, ic) in image.terms() {
                let mut factors = key.factors[..k].to_vec();
                factors.extend(ik.factors.iter().cloned());
                factors.extend(key.factors[k + 1..].iter().cloned());
                acc.add_term(
                    TensorKey {
                        eps: key.eps + ik.eps,
                        factors,
                    },
                    c * ic,
                );
            }
        }
        Ok(out.unwrap_or_else(|| TensorElement::zero(self.arity)))
    }

    /// Swaps adjacent factors `k` and `k+1` with the Koszul sign.
    pub fn swap_adjacent(&self, k: usize) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        for (key, &c) in &self.terms {
            let sign = if key.factors[k].len() * key.factors[k + 1].len() % 2 == 0 {
                1
            } else {
                -1
            };
            let mut factors = key.factors.clone();
            factors.swap(k, k + 1);
            out.add_term(
                TensorKey {
                    eps: key.eps,
                    factors,
                },
                sign * c,
            );
        }
        out
    }

    /// Multiplies factor `k` into factor `k+1` (cup product of adjacent
    /// factors, i.e. pullback along a diagonal).
    pub fn multiply_adjacent(&self, k: usize, ring: &RingPresentation) -> Result<TensorElement> {
        let mut out = TensorElement::zero(self.arity - 1);
        for (key, &c) in &self.terms {
            let word: Vec<u32> = key.factors[k]
                .iter()
                .chain(key.factors[k + 1].iter())
                .collect();
            let (prod, _) = normal_form(ring, &word, Coefficient::ONE)?;
            for (pk, pv) in prod.terms() {
                let mut factors = key.factors[..k].to_vec();
                factors.push(pk.gens.clone());
                factors.extend(key.factors[k + 2..].iter().cloned());
                out.add_term(
                    TensorKey {
                        eps: key.eps + pk.eps,
                        factors,
                    },
                    c * pv,
                );
            }
        }
        Ok(out)
    }

    /// Every term has total bidegree `b`.
    pub fn is_homogeneous_of(&self, b: Bidegree) -> bool {
        self.terms.keys().all(|k| k.bidegree() == b)
    }

    /// Renders with one generator symbol per factor, e.g. `ρ[1]⊗1 + 1⊗α[2]`.
    pub fn render(&self, symbols: &[&str]) -> String {
        render_sum(self.terms.iter().map(|(k, &c)| {
            let body: Vec<String> = k
                .factors
                .iter()
                .enumerate()
                .map(|(j, f)| render_gens(symbols.get(j).copied().unwrap_or("ρ"), f))
                .collect();
            (c, k.eps, body.join("⊗"))
        }))
    }
}

fn primitive(i: u32) -> TensorElement {
    let g = IndexSequence::new(vec![i]).expect("single index");
    TensorElement::pure(vec![g.clone(), IndexSequence::empty()], Coefficient::ONE).add(
        &TensorElement::pure(vec![IndexSequence::empty(), g], Coefficient::ONE),
    )
}

/// Coproduct on `H^{*,*}(GL_n)`: the multiplicative extension of
/// `ρ_i ↦ ρ_i⊗1 + 1⊗ρ_i`.
pub fn comultiply(x: &Monomial, n: u32) -> Result<TensorElement> {
    let ring = RingPresentation::general_linear(n);
    let rings = [ring, ring];
    let mut out = TensorElement::one(2).scale(x.coeff);
    for i in x.gens.iter() {
        ring.check(i)?;
        out = out.mul(&primitive(i), &rings)?;
    }
    Ok(out)
}

/// Antipode (pullback along inversion): `ρ_i ↦ -ρ_i`, so a basis monomial
/// of word length `l` picks up `(-1)^l`.
pub fn antipode(x: &Monomial) -> Monomial {
    let sign = if x.gens.len().is_multiple_of(2) {
        1
    } else {
        -1
    };
    Monomial::new(
        x.gens.clone(),
        Coefficient::new(x.coeff.value * sign, x.coeff.eps),
    )
}

impl From<&RingElement> for TensorElement {
    fn from(e: &RingElement) -> Self {
        let mut out = TensorElement::zero(1);
        for (k, c) in e.terms() {
            out.add_term(
                TensorKey {
                    eps: k.eps,
                    factors: vec![k.gens.clone()],
                },
                c,
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u32]) -> IndexSequence {
        IndexSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn comultiply_examples() {
        let sym = ["ρ", "ρ"];
        assert_eq!(
            comultiply(&Monomial::generator(1), 1).unwrap().render(&sym),
            "1⊗ρ[1] + ρ[1]⊗1"
        );
        assert_eq!(comultiply(&Monomial::one(), 3).unwrap().render(&sym), "1⊗1");
        let d = comultiply(&Monomial::basis(seq(&[1, 2])), 2).unwrap();
        let key = |a: &[u32], b: &[u32]| TensorKey {
            eps: 0,
            factors: vec![seq(a), seq(b)],
        };
        assert_eq!(d.len(), 4);
        assert_eq!(d.coeff(&key(&[1, 2], &[])), 1);
        assert_eq!(d.coeff(&key(&[1], &[2])), 1);
        assert_eq!(d.coeff(&key(&[2], &[1])), -1);
        assert_eq!(d.coeff(&key(&[], &[1, 2])), 1);
    }

    #[test]
    fn comultiply_respects_the_square_relation() {
        // Δ(ρ_1)^2 = Δ(ρ_1^2) = ε Δ(ρ_1)
        let rings = [RingPresentation::general_linear(2); 2];
        let d1 = comultiply(&Monomial::generator(1), 2).unwrap();
        let sq = d1.mul(&d1, &rings).unwrap();
        assert_eq!(sq, d1.scale(Coefficient::new(1, 1)));
    }

    #[test]
    fn comultiply_rejects_out_of_range() {
        assert!(matches!(
            comultiply(&Monomial::generator(4), 3),
            Err(Error::IndexOutOfRange { index: 4, .. })
        ));
    }

    #[test]
    fn antipode_examples() {
        let a = antipode(&Monomial::generator(1));
        assert_eq!(a.coeff.value, -1);
        assert_eq!(antipode(&Monomial::one()), Monomial::one());
        assert_eq!(
            antipode(&Monomial::basis(seq(&[1, 2]))),
            Monomial::basis(seq(&[1, 2]))
        );
        let e = Monomial::new(seq(&[3]), Coefficient::new(1, 1));
        assert_eq!(antipode(&e), e);
    }

    #[test]
    fn swap_uses_koszul_sign() {
        let t = TensorElement::pure(vec![seq(&[]), seq(&[1]), seq(&[2])], Coefficient::ONE);
        let s = t.swap_adjacent(1);
        assert_eq!(s.render(&["ρ"; 3]), "-1⊗ρ[2]⊗ρ[1]");
    }
}
