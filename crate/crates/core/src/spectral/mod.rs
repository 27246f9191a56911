//! The trigraded `E_2`-page computing the motivic cohomology of
//! `A(n_1, …, n_r)` from that of `A(n_1, …, n_{r-1})`, with total Chow
//! height bookkeeping, candidate differential targets, rank counting and
//! chart output.
//!
//! The page is presented as `⊕_j Λ(α′) ⊗ ℤ[θ] · β′_j` with generators
//!
//! * `α′_i` at `(0, 2i-1, i)` for `n_r - n_{r-1} < i ≤ n_r`,
//! * `θ_i` at `(1, 2i-1, i)` for `1 ≤ i ≤ n_{r-1}`,
//! * `β′_j` at `(0, p_j, q_j)`, one per summand of `M(A(n_1, …, n_{r-1}))`.
//!
//! The presentation relies on the adjoint coaction being trivial, which is
//! checked separately by [`crate::hopf::derive_adjoint_coaction`].

mod chart;
mod differential;
mod page;
mod rank;

pub use chart::{chart_svg, write_chart};
pub use differential::{
    check_ss_description, differential_targets, BetaEntry, DifferentialShape, ExteriorEntry,
    SsReport,
};
pub use page::{build_e2, BasisClass, E2Page, Generator, GeneratorKind, Variant};
pub use rank::{einfty_rank_check, flag_inclusion, flag_projection, RankReport};
