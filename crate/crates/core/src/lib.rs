//! Bookkeeping for pure Tate motives.
//!
//! The crate models the motives of `GL_n`, Grassmannians, flag varieties and
//! the automorphism bundles `A(n_1, …, n_r)` as multisets of bidegrees, and
//! checks the identities relating them: the Tate sum splitting of `M(GL_n)`
//! by Chow height, the Hopf-algebra structure on `H^{*,*}(GL_n)`, the
//! trigraded `E_2`-page of the Rothenberg–Steenrod spectral sequence, and the
//! rank shadows of all of these under complex realization.
//!
//! Modules:
//!
//! - [`tate`]: bidegrees, index sequences, pure Tate motives.
//! - [`poly`]: two-variable Poincaré polynomials with integer coefficients.
//! - [`hopf`]: monomial bases, products, coproducts and coactions.
//! - [`catalog`]: constructors for every motive and the splitting verifier.
//! - [`spectral`]: `E_2`-pages, total Chow height, differential candidates, charts.
//! - [`realization`]: topological rank tables and Gaussian binomials.
//! - [`cli`]: the `tatecalc` command line front end.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod hopf;
pub mod poly;
pub mod realization;
pub mod spectral;
pub mod tate;

pub use error::{Error, Result};
