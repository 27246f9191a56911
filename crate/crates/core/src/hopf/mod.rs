//! Monomial-basis algebra of `H^{*,*}(GL_n)` and `H^{*,*}(V(m,n))`.
//!
//! Coefficients live in the formal ring `Z[ε]/(2ε)`, where `ε` stands for
//! the class `{-1}` in bidegree `(1,1)`. The generators `ρ_i` (or `α_i` for a
//! Stiefel variety) sit in bidegree `(2i-1, i)`, anticommute, and square to
//! `ε·ρ_{2i-1}` when `2i-1 ≤ n` and to zero otherwise.
//!
//! On top of the ring structure this module provides the coproduct, the
//! antipode, coaction formulas for group actions, a symbolic derivation of the
//! adjoint coaction, and the structure constants of the dual algebra.

mod coaction;
mod dual;
mod ring;
mod tensor;

pub use coaction::{
    adjoint_pullback, derive_adjoint_coaction, stiefel_coaction, AdjointDerivation,
    CoactionFormula, StepTrace,
};
pub use dual::{dual_algebra, DualAlgebra, ExteriorReport};
pub use ring::{
    multiply, normal_form, Coefficient, MonoKey, Monomial, RingElement, RingKind, RingPresentation,
};
pub use tensor::{antipode, comultiply, TensorElement, TensorKey};
