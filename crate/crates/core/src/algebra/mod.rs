//! Exact polynomial and rational-function arithmetic over big integers.

pub mod cyclotomic;
pub mod factor;
mod modmul;
pub mod mono;
pub mod partial;
pub mod ratfunc;
pub mod text;
pub mod poly;

pub use cyclotomic::{cyclotomic, cyclotomic_factor, euler_phi, CyclotomicFactorization};
pub use mono::{Exps, Mono, Var};
pub use poly::IntPoly;
pub use ratfunc::{Denom, RatFunc};
pub use factor::{factor_poly, Factor, Factored};
pub use text::rf;
pub use partial::{hadamard_apply, partial_fraction_t, PartialFractionForm, PoleTerm};
