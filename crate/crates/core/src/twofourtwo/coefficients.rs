//! Partial-fraction coefficients of the transition function `T(t/x, s)`.

use crate::algebra::{partial_fraction_t, Exps, PartialFractionForm, RatFunc, Var};
use crate::error::AlgebraError;

use super::t_hat;

/// Pole locations in `t`: `1`, `s`, `s*x` and, at `s = 1`, `x`.
pub const AT_ONE: Exps = [0, 0, 0, 0];
pub const AT_S: Exps = [0, 1, 0, 0];
pub const AT_SX: Exps = [0, 1, 1, 0];
pub const AT_X: Exps = [0, 0, 1, 0];

/// Coefficients `c_0..=c_8` with the decomposition they came from.
#[derive(Clone, Debug)]
pub struct Coefficients {
    pub c: Vec<RatFunc>,
    pub form: PartialFractionForm,
}

/// `T(t/x, s; x)` with all powers of `y` stripped.
pub fn transition() -> RatFunc {
    t_hat()
        .t
        .substitute(Var::T, &[1, 0, -1, 0])
        .expect("rescaling t cannot create poles")
}

fn collect(
    form: PartialFractionForm,
    unit_orders: u32,
    extra: &[Exps],
) -> Result<Coefficients, AlgebraError> {
    let expected = |alpha: &Exps, k: u32| {
        (*alpha == AT_ONE && k < unit_orders) || (extra.contains(alpha) && k == 0)
    };
    if let Some(bad) = form.terms.iter().find(|t| !expected(&t.alpha, t.k)) {
        return Err(AlgebraError::UnsupportedPoleShape(format!(
            "unexpected pole term alpha={:?} k={}",
            bad.alpha, bad.k
        )));
    }
    let mut c = vec![form.c0.clone()];
    for k in 0..unit_orders {
        c.push(form.coeff(&AT_ONE, k));
    }
    for alpha in extra {
        c.push(form.coeff(alpha, 0));
    }
    Ok(Coefficients { c, form })
}

/// `c_0..=c_8` for general `s`: `c_{k+1}` multiplies `k! t^k/(1-t)^(k+1)`
/// for `k = 0..=5`, `c_7` multiplies `1/(1-s t)` and `c_8` `1/(1-s x t)`.
pub fn coefficients_c() -> Result<Coefficients, AlgebraError> {
    collect(partial_fraction_t(&transition())?, 6, &[AT_S, AT_SX])
}

/// The coefficients at `s = 1`, where the poles at `t = 1` and `t = 1/s`
/// merge: `k = 0..=6` at `t = 1` and one term `1/(1 - x t)`.
pub fn coefficients_chat() -> Result<Coefficients, AlgebraError> {
    let g = transition().at_one(Var::S)?;
    collect(partial_fraction_t(&g)?, 7, &[AT_X])
}
