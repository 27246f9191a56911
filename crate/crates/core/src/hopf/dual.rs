use std::collections::BTreeMap;

use serde::Serialize;

use super::ring::{MonoKey, Monomial, RingPresentation};
use super::tensor::comultiply;
use crate::error::{Error, Result};
use crate::tate::IndexSequence;

/// Structure constants of the dual of `H^{*,*}(GL_n)`, obtained by pairing
/// against the coproduct:
/// `⟨ρ̂_I·ρ̂_J, ρ_K⟩ = ⟨ρ̂_I ⊗ ρ̂_J, Δρ_K⟩`.
#[derive(Clone, Debug)]
pub struct DualAlgebra {
    pub n: u32,
    pub max_word: usize,
    pub basis: Vec<IndexSequence>,
    constants: BTreeMap<(IndexSequence, IndexSequence), BTreeMap<MonoKey, i64>>,
}

/// Outcome of the exterior-algebra checks on a [`DualAlgebra`].
#[derive(Clone, Debug, Serialize)]
pub struct ExteriorReport {
    pub n: u32,
    pub max_word: usize,
    pub squares_vanish: bool,
    pub anticommute: bool,
    pub unit: bool,
    pub disjoint_products_are_basis: bool,
    pub overlapping_products_vanish: bool,
    pub pass: bool,
    pub first_failure: Option<String>,
}

pub fn dual_algebra(n: u32, max_word: usize) -> Result<DualAlgebra> {
    if n == 0 {
        return Err(Error::InvalidArgument("dual algebra needs n ≥ 1".into()));
    }
    let ring = RingPresentation::general_linear(n);
    let basis = ring.basis(max_word);
    let mut constants: BTreeMap<(IndexSequence, IndexSequence), BTreeMap<MonoKey, i64>> =
        BTreeMap::new();
    for k in &basis {
        let delta = comultiply(&Monomial::basis(k.clone()), n)?;
        for (key, c) in delta.terms() {
            let slot = constants
                .entry((key.factors[0].clone(), key.factors[1].clone()))
                .or_default()
                .entry(MonoKey::new(key.eps, k.clone()))
                .or_insert(0);
            *slot += c;
        }
    }
    for row in constants.values_mut() {
        row.retain(|_, c| *c != 0);
    }
    constants.retain(|_, row| !row.is_empty());
    Ok(DualAlgebra {
        n,
        max_word,
        basis,
        constants,
    })
}

impl DualAlgebra {
    /// `ρ̂_I · ρ̂_J` as a combination of dual basis elements; empty means zero.
    pub fn product(&self, i: &IndexSequence, j: &IndexSequence) -> BTreeMap<MonoKey, i64> {
        self.constants
            .get(&(i.clone(), j.clone()))
            .cloned()
            .unwrap_or_default()
    }

    /// Number of nonzero structure constants.
    pub fn num_constants(&self) -> usize {
        self.constants.values().map(|r| r.len()).sum()
    }

    pub fn check_exterior(&self) -> ExteriorReport {
        let mut first_failure = None;
        let mut note = |ok: bool, msg: &dyn Fn() -> String| {
            if !ok && first_failure.is_none() {
                first_failure = Some(msg());
            }
            ok
        };
        let single = |i: u32| IndexSequence::new(vec![i]).expect("single");

        let mut squares_vanish = true;
        for i in 1..=self.n {
            let ok = self.product(&single(i), &single(i)).is_empty();
            squares_vanish &= note(ok, &|| format!("ρ̂_{i}² ≠ 0"));
        }

        let mut anticommute = true;
        for a in 1..=self.n {
            for b in (a + 1)..=self.n {
                if self.max_word < 2 {
                    continue;
                }
                let ab = self.product(&single(a), &single(b));
                let ba = self.product(&single(b), &single(a));
                let negated: BTreeMap<MonoKey, i64> =
                    ab.iter().map(|(k, c)| (k.clone(), -c)).collect();
                let ok = !ab.is_empty() && ba == negated;
                anticommute &= note(ok, &|| format!("ρ̂_{b}ρ̂_{a} ≠ -ρ̂_{a}ρ̂_{b}"));
            }
        }

        let empty = IndexSequence::empty();
        let mut unit = true;
        let mut disjoint_products_are_basis = true;
        let mut overlapping_products_vanish = true;
        for x in &self.basis {
            let left = self.product(&empty, x);
            let right = self.product(x, &empty);
            let expected: BTreeMap<MonoKey, i64> = [(MonoKey::new(0, x.clone()), 1)].into();
            unit &= note(left == expected && right == expected, &|| {
                format!("ρ̂_∅ is not a unit on {x}")
            });
            for y in &self.basis {
                if x.len() + y.len() > self.max_word {
                    continue;
                }
                let prod = self.product(x, y);
                if x.iter().any(|i| y.contains(i)) {
                    overlapping_products_vanish &=
                        note(prod.is_empty(), &|| format!("ρ̂_{x}·ρ̂_{y} should vanish"));
                } else {
                    let mut union: Vec<u32> = x.iter().chain(y.iter()).collect();
                    union.sort_unstable();
                    let target = MonoKey::new(0, IndexSequence::new(union).expect("disjoint"));
                    let ok =
                        prod.len() == 1 && prod.get(&target).map(|c| c.abs() == 1).unwrap_or(false);
                    disjoint_products_are_basis &=
                        note(ok, &|| format!("ρ̂_{x}·ρ̂_{y} is not ±ρ̂ of the union"));
                }
            }
        }

        let pass = squares_vanish
            && anticommute
            && unit
            && disjoint_products_are_basis
            && overlapping_products_vanish;
        ExteriorReport {
            n: self.n,
            max_word: self.max_word,
            squares_vanish,
            anticommute,
            unit,
            disjoint_products_are_basis,
            overlapping_products_vanish,
            pass,
            first_failure,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry<'a> {
            left: &'a IndexSequence,
            right: &'a IndexSequence,
            result: Vec<serde_json::Value>,
        }
        let entries: Vec<Entry> = self
            .constants
            .iter()
            .map(|((l, r), row)| Entry {
                left: l,
                right: r,
                result: row
                    .iter()
                    .map(|(k, c)| serde_json::json!({"dual_of": k.gens, "eps": k.eps, "coeff": c}))
                    .collect(),
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "max_word": self.max_word,
            "constants": entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u32]) -> IndexSequence {
        IndexSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dual_examples() {
        let d = dual_algebra(2, 2).unwrap();
        assert!(d.product(&seq(&[1]), &seq(&[1])).is_empty());
        assert!(d.product(&seq(&[2]), &seq(&[2])).is_empty());
        let k12 = MonoKey::new(0, seq(&[1, 2]));
        assert_eq!(d.product(&seq(&[1]), &seq(&[2])), [(k12.clone(), 1)].into());
        assert_eq!(d.product(&seq(&[2]), &seq(&[1])), [(k12, -1)].into());
        assert_eq!(
            d.product(&seq(&[]), &seq(&[2])),
            [(MonoKey::new(0, seq(&[2])), 1)].into()
        );
        assert!(d.check_exterior().pass);
    }

    #[test]
    fn truncation_drops_long_products() {
        let d = dual_algebra(3, 1).unwrap();
        assert!(d.product(&seq(&[1]), &seq(&[2])).is_empty());
        assert!(d.check_exterior().squares_vanish);
    }
}
