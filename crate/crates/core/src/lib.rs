//! Exact quasi depth of quotients of monomial ideals.
//!
//! The crate has two independent routes to `qdepth`:
//!
//! * [`oracle`] counts squarefree monomials of the polarized quotient and
//!   applies the β transform directly. It works for any pair of monomial
//!   ideals small enough to enumerate.
//! * [`power`] evaluates closed forms for `𝔪^t`, the powers of the maximal
//!   graded ideal, and scales to `n` in the hundreds.
//!
//! [`checks`], [`theorems`] and [`scan`] use the two routes to check the known
//! statements about `qdepth(𝔪^t)` and to sweep parameter grids for the open
//! case `qdepth(𝔪^t) = ⌈n/(t+1)⌉`.

pub mod checks;
mod decimal;
pub mod error;
pub mod exact;
pub mod exec;
pub mod feasibility;
pub mod format;
pub mod monomial;
pub mod oracle;
pub mod power;
pub mod scan;
pub mod theorems;

pub use error::{Error, Result};
pub use exact::{binom, ceil_div, ExactInt, ExactRatio};
pub use exec::Exec;
pub use feasibility::{QDepthResult, Witness};
pub use monomial::{
    maximal_power_ideal, polarize, squarefree_of_degree, Monomial, MonomialIdeal,
    PolarizationResult, Polarizer, QuotientPresentation,
};
pub use oracle::{
    alpha_enumerate, alpha_from_beta, beta_from_alpha, qdepth_general, qdepth_squarefree,
    AlphaVector, BetaTable,
};
pub use power::{qdepth_power_fast, PowerParams};
