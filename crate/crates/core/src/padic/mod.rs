//! Exact truncated p-adic arithmetic.
//!
//! Coefficients are residues modulo `p^M`; expansions are sparse maps from
//! exponent vectors of total degree at most `D` to such residues.

mod binomial;
mod modular;
mod series;

pub use binomial::{binomial_mod, BinomialVector};
pub use modular::{is_odd_prime, ResidueRing};
pub use series::{PrecisionContext, UExpansion, MAX_DEGREE, MAX_MODULUS};
