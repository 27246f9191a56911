use serde::{Deserialize, Serialize};

use super::page::{build_e2, BasisClass, E2Page, Variant};
use crate::catalog::{motive_a, motive_fl, motive_gr, Signature};
use crate::error::Result;
use crate::poly::Poly2;

/// Poincaré series, in the collapsed bidegree `(l + p, q)`, of the classes
/// without exterior factors: `P(β′) · ∏_i 1/(1 - t^{2i}u^i)`, truncated.
fn exterior_free_series(page: &E2Page) -> Poly2 {
    let w = page.max_weight() as i64;
    let mut series: Poly2 = page
        .module_generators()
        .iter()
        .map(|g| {
            let b = g.tridegree.collapse();
            Poly2::monomial(1, b.p, b.q)
        })
        .sum();
    series = series.truncate_weight(w);
    for g in page.polynomial_generators() {
        let b = g.tridegree.collapse();
        let geometric: Poly2 = (0..=w / b.q)
            .map(|k| Poly2::monomial(1, k * b.p, k * b.q))
            .sum();
        series = (&series * &geometric).truncate_weight(w);
    }
    series
}

/// The exterior-free series times `∏ (1 - t^{2i}u^i)` over the `α′_i`.
fn einfty_series(page: &E2Page) -> Poly2 {
    let relations: Poly2 = page
        .exterior_generators()
        .iter()
        .map(|g| {
            let i = g.tridegree.q;
            &Poly2::one() - &Poly2::monomial(1, 2 * i, i)
        })
        .product();
    (&exterior_free_series(page) * &relations).truncate_weight(page.max_weight() as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub signature: Signature,
    pub max_weight: u32,
    /// Rank count from the page, full variant.
    pub einfty: Poly2,
    /// `P(M(A(n_1, …, n_r)))`.
    pub motive: Poly2,
    /// `P(M(Gr(n_{r-1}, n_r))) · P(M(A(n_1, …, n_{r-1})))`.
    pub product: Poly2,
    /// `einfty - motive`.
    pub einfty_difference: Poly2,
    /// `product - motive`.
    pub product_difference: Poly2,
    /// Flag variant against `P(M(Fl(n_1, …, n_r)))`.
    pub flag_difference: Poly2,
    pub pass: bool,
}

impl RankReport {
    pub fn verdict(&self) -> String {
        if self.pass {
            format!(
                "PASS ({} bidegrees matched through weight {})",
                self.motive.num_terms(),
                self.max_weight
            )
        } else if !self.einfty_difference.is_zero() {
            format!("FAIL: E∞ minus motive = {}", self.einfty_difference)
        } else if !self.product_difference.is_zero() {
            format!("FAIL: product minus motive = {}", self.product_difference)
        } else {
            format!("FAIL: flag E∞ minus flag motive = {}", self.flag_difference)
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "E∞      {}\nmotive  {}\nproduct {}\n{}\n",
            self.einfty,
            self.motive,
            self.product,
            self.verdict()
        )
    }
}

/// Compares the `E_∞` rank count of the page for `sig` with the motive of
/// `A(sig)` and with the Grassmannian product, through weight `max_weight`.
pub fn einfty_rank_check(sig: &Signature, max_weight: u32) -> Result<RankReport> {
    let w = max_weight as i64;
    let full = build_e2(sig, Variant::Full, max_weight)?;
    let flag = build_e2(sig, Variant::Flag, max_weight)?;
    let prefix = sig.prefix().expect("build_e2 checked r ≥ 2");

    let einfty = einfty_series(&full);
    let motive = motive_a(sig)?.poincare().truncate_weight(w);
    let product = (&motive_gr(prefix.last(), sig.last())?.poincare()
        * &motive_a(&prefix)?.poincare())
        .truncate_weight(w);
    let flag_difference = &einfty_series(&flag) - &motive_fl(sig).poincare().truncate_weight(w);

    let einfty_difference = &einfty - &motive;
    let product_difference = &product - &motive;
    Ok(RankReport {
        signature: sig.clone(),
        max_weight,
        pass: einfty_difference.is_zero()
            && product_difference.is_zero()
            && flag_difference.is_zero(),
        einfty,
        motive,
        product,
        einfty_difference,
        product_difference,
        flag_difference,
    })
}

/// Projection of a full-page class onto the flag page: the class itself
/// when its module generator has Chow height 0, otherwise zero.
pub fn flag_projection(full: &E2Page, c: &BasisClass) -> Option<BasisClass> {
    let g = &full.module_generators()[c.module];
    (g.tch() == 0).then(|| c.clone())
}

/// Inclusion of a flag-page class into the full page.
///
/// Height-0 module generators come first on both pages, so indices agree.
pub fn flag_inclusion(flag: &E2Page, c: &BasisClass) -> BasisClass {
    debug_assert!(c.module < flag.module_generators().len());
    c.clone()
}
