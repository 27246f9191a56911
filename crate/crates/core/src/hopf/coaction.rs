use std::collections::BTreeMap;

use serde::Serialize;

use super::ring::{Coefficient, Monomial, RingPresentation};
use super::tensor::{antipode, comultiply, TensorElement, TensorKey};
use crate::error::{Error, Result};
use crate::tate::IndexSequence;

/// A coaction `H(Y) → H(G) ⊗ H(Y)` given on ring generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoactionFormula {
    pub source: RingPresentation,
    pub left: RingPresentation,
    pub right: RingPresentation,
    pub images: BTreeMap<u32, TensorElement>,
}

impl CoactionFormula {
    /// Extends the generator images multiplicatively to a monomial.
    pub fn apply(&self, x: &Monomial) -> Result<TensorElement> {
        let rings = [self.left, self.right];
        let mut out = TensorElement::one(2).scale(x.coeff);
        for i in x.gens.iter() {
            let image = self.images.get(&i).ok_or_else(|| Error::IndexOutOfRange {
                index: i,
                lo: *self.source.range().start(),
                hi: *self.source.range().end(),
                ring: self.source.name(),
            })?;
            out = out.mul(image, &rings)?;
        }
        Ok(out)
    }

    /// Whether every generator maps to `1 ⊗ x_i`.
    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|(&i, img)| *img == trivial_image(i))
    }

    /// Every image term has the bidegree of its generator.
    pub fn preserves_bidegree(&self) -> bool {
        self.images.iter().all(|(&i, img)| {
            img.is_homogeneous_of(IndexSequence::new(vec![i]).expect("single").bidegree())
        })
    }

    pub fn render_image(&self, i: u32) -> Option<String> {
        self.images
            .get(&i)
            .map(|img| img.render(&[self.left.symbol(), self.right.symbol()]))
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term<'a> {
            coeff: i64,
            eps: u32,
            factors: &'a [IndexSequence],
        }
        #[derive(Serialize)]
        struct Image<'a> {
            generator: u32,
            text: String,
            terms: Vec<Term<'a>>,
        }
        let images: Vec<Image> = self
            .images
            .iter()
            .map(|(&i, img)| Image {
                generator: i,
                text: self.render_image(i).unwrap_or_default(),
                terms: img
                    .terms()
                    .map(|(k, c)| Term {
                        coeff: c,
                        eps: k.eps,
                        factors: &k.factors,
                    })
                    .collect(),
            })
            .collect();
        serde_json::json!({
            "source": self.source.name(),
            "left": self.left.name(),
            "right": self.right.name(),
            "trivial": self.is_trivial(),
            "images": images,
        })
    }
}

fn trivial_image(i: u32) -> TensorElement {
    let g = IndexSequence::new(vec![i]).expect("single");
    TensorElement::pure(vec![IndexSequence::empty(), g], Coefficient::ONE)
}

/// Coaction of `GL_m` on `V'(m,n)`: `α_i ↦ ρ_i⊗1 + 1⊗α_i` for `i ≤ m`,
/// `α_i ↦ 1⊗α_i` otherwise.
pub fn stiefel_coaction(m: u32, n: u32) -> Result<CoactionFormula> {
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!(
            "stiefel coaction needs 0 < m ≤ n, got m={m}, n={n}"
        )));
    }
    let source = RingPresentation::stiefel(m, n)?;
    let mut images = BTreeMap::new();
    for i in source.range() {
        let mut img = trivial_image(i);
        if i <= m {
            let g = IndexSequence::new(vec![i]).expect("single");
            img = img.add(&TensorElement::pure(
                vec![g, IndexSequence::empty()],
                Coefficient::ONE,
            ));
        }
        images.insert(i, img);
    }
    Ok(CoactionFormula {
        source,
        left: RingPresentation::general_linear(m),
        right: source,
        images,
    })
}

/// One stage of a symbolic pullback.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTrace {
    pub name: &'static str,
    pub element: TensorElement,
}

/// Pulls `x ∈ H(GL_n)` back along the adjoint action `(h, g) ↦ h g h⁻¹`,
/// factored as
/// `(Δ×id)`, `(id×ι×id)`, `σ_23`, `(m×id)`, `m`.
///
/// Pullbacks apply in reverse order, so the trace starts with `m*` and ends
/// with `(Δ×id)*`, whose output is the coaction on `x`.
pub fn adjoint_pullback(n: u32, x: &Monomial) -> Result<Vec<StepTrace>> {
    let ring = RingPresentation::general_linear(n);
    let mut trace = Vec::with_capacity(5);

    let after_m = comultiply(x, n)?;
    trace.push(StepTrace {
        name: "m*",
        element: after_m.clone(),
    });

    let after_mxid = after_m.map_factor(0, |f| comultiply(&Monomial::basis(f.clone()), n))?;
    trace.push(StepTrace {
        name: "(m×id)*",
        element: after_mxid.clone(),
    });

    let after_swap = after_mxid.swap_adjacent(1);
    trace.push(StepTrace {
        name: "σ23*",
        element: after_swap.clone(),
    });

    let after_inv = after_swap.map_factor(1, |f| {
        let s = antipode(&Monomial::basis(f.clone()));
        let mut t = TensorElement::zero(1);
        t.add_term(
            TensorKey {
                eps: s.coeff.eps,
                factors: vec![s.gens],
            },
            s.coeff.value,
        );
        Ok(t)
    })?;
    trace.push(StepTrace {
        name: "(id×ι×id)*",
        element: after_inv.clone(),
    });

    let after_diag = after_inv.multiply_adjacent(0, &ring)?;
    trace.push(StepTrace {
        name: "(Δ×id)*",
        element: after_diag,
    });
    Ok(trace)
}

/// The adjoint coaction on each generator together with the intermediate
/// normal forms that produced it.
#[derive(Clone, Debug)]
pub struct AdjointDerivation {
    pub n: u32,
    pub formula: CoactionFormula,
    pub traces: BTreeMap<u32, Vec<StepTrace>>,
}

impl AdjointDerivation {
    /// Largest number of tensor terms seen at any non-final step.
    pub fn max_intermediate_terms(&self) -> usize {
        self.traces
            .values()
            .flat_map(|t| t[..t.len() - 1].iter().map(|s| s.element.len()))
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let symbols = ["ρ"; 3];
        let traces: BTreeMap<String, Vec<serde_json::Value>> = self
            .traces
            .iter()
            .map(|(i, steps)| {
                (
                    i.to_string(),
                    steps
                        .iter()
                        .map(|s| {
                            serde_json::json!({
                                "step": s.name,
                                "terms": s.element.len(),
                                "text": s.element.render(&symbols),
                            })
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "coaction": self.formula.to_json(),
            "traces": traces,
        })
    }
}

/// Derives the coaction induced by the adjoint action of `GL_n` on itself by
/// composing the pullbacks of [`adjoint_pullback`] on every generator.
pub fn derive_adjoint_coaction(n: u32) -> Result<AdjointDerivation> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "adjoint coaction needs n ≥ 1".into(),
        ));
    }
    let ring = RingPresentation::general_linear(n);
    let mut images = BTreeMap::new();
    let mut traces = BTreeMap::new();
    for i in 1..=n {
        let trace = adjoint_pullback(n, &Monomial::generator(i))?;
        images.insert(i, trace.last().expect("five steps").element.clone());
        traces.insert(i, trace);
    }
    Ok(AdjointDerivation {
        n,
        formula: CoactionFormula {
            source: ring,
            left: ring,
            right: ring,
            images,
        },
        traces,
    })
}
