//! Partial fractions in `t` over the basis `1`, `k! t^k / (1 - a t)^(k+1)`,
//! and the Hadamard product of a series in `t` against such a form.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::factor::{Factor, Factored};
use super::mono::{exps_split, exps_scale, Exps, Mono, Var};
use super::poly::IntPoly;
use super::ratfunc::RatFunc;
use crate::error::AlgebraError;

/// Coefficient of `k! t^k / (1 - alpha t)^(k+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleTerm {
    /// Laurent monomial in the variables other than `t`.
    pub alpha: Exps,
    pub k: u32,
    pub coeff: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionForm {
    pub c0: RatFunc,
    /// Sorted by `(alpha, k)`; zero coefficients are omitted.
    pub terms: Vec<PoleTerm>,
}

fn monomial_ratfunc(e: &Exps) -> RatFunc {
    let (pos, neg) = exps_split(e);
    RatFunc::from_num_den(
        IntPoly::monomial(1, pos),
        Factored::monomial(super::mono::exps_of(neg)),
    )
}

/// `1 - alpha t` as a factor, with `Q` the monomial such that the factor's
/// polynomial is `Q (1 - alpha t)`.
fn pole_factor(alpha: &Exps) -> Factor {
    assert_eq!(alpha[Var::T.index()], 0, "pole location must not involve t");
    let mut base = *alpha;
    base[Var::T.index()] = 1;
    Factor::cyclo(1, base)
}

/// `k! t^k / (1 - alpha t)^(k+1)`.
pub fn basis_function(alpha: &Exps, k: u32) -> RatFunc {
    let (_, q) = exps_split(alpha);
    let mut fact = BigInt::one();
    for i in 2..=k {
        fact *= i;
    }
    let mut num = IntPoly::monomial(fact, Mono::var(Var::T, k));
    num = num.mul_mono(Mono::new(q.exps().map(|e| e * (k + 1))));
    RatFunc::from_num_den(num, Factored::factor(pole_factor(alpha), k + 1))
}

impl PartialFractionForm {
    pub fn coeff(&self, alpha: &Exps, k: u32) -> RatFunc {
        self.terms
            .iter()
            .find(|t| t.alpha == *alpha && t.k == k)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(RatFunc::zero)
    }

    pub fn reassemble(&self) -> RatFunc {
        let parts: Vec<RatFunc> = std::iter::once(self.c0.clone())
            .chain(
                self.terms
                    .iter()
                    .map(|t| t.coeff.mul(&basis_function(&t.alpha, t.k))),
            )
            .collect();
        RatFunc::sum(parts.iter())
    }
}

/// Decomposes `g`, whose `t`-dependent denominator factors must all be of the
/// form `1 - alpha t`, into the basis `1, k! t^k / (1 - alpha t)^(k+1)`.
/// The polynomial part must be a constant. Computed by expanding at each
/// pole; the result is checked to reassemble to `g`.
pub fn partial_fraction_t(g: &RatFunc) -> Result<PartialFractionForm, AlgebraError> {
    let t = Var::T;
    let mut poles: Vec<(Exps, u32)> = Vec::new();
    let mut den_t_degree = 0u32;
    for (f, &e) in g.den().factors() {
        if !f.depends_on(t) {
            continue;
        }
        match f {
            Factor::Cyclo { order: 1, base } if base[t.index()] == 1 => {
                let mut alpha = *base;
                alpha[t.index()] = 0;
                poles.push((alpha, e));
                den_t_degree += e;
            }
            other => {
                return Err(AlgebraError::UnsupportedPoleShape(format!(
                    "denominator factor {other}"
                )))
            }
        }
    }
    if g.num().degree(t).unwrap_or(0) > den_t_degree {
        return Err(AlgebraError::UnsupportedPoleShape(
            "polynomial part in t is not constant".into(),
        ));
    }
    let mut terms = Vec::new();
    for (alpha, m) in &poles {
        for (k, coeff) in pole_expansion(g, alpha, *m)?.into_iter().enumerate() {
            if !coeff.is_zero() {
                terms.push(PoleTerm {
                    alpha: *alpha,
                    k: k as u32,
                    coeff,
                });
            }
        }
    }
    terms.sort_by_key(|a| (a.alpha, a.k));
    let mut c0 = g.at_zero(t)?;
    for term in terms.iter().filter(|term| term.k == 0) {
        c0 = c0.sub(&term.coeff);
    }
    let form = PartialFractionForm { c0, terms };
    if form.reassemble() != *g {
        return Err(AlgebraError::UnsupportedPoleShape(
            "decomposition does not reassemble".into(),
        ));
    }
    Ok(form)
}

/// Coefficients on `k! t^k / (1 - alpha t)^(k+1)`, `k = 0..m`, for a pole of
/// order `m`.
fn pole_expansion(g: &RatFunc, alpha: &Exps, m: u32) -> Result<Vec<RatFunc>, AlgebraError> {
    let t = Var::T;
    // h = g * (1 - alpha t)^m has no pole at t = 1/alpha.
    let (_, q) = exps_split(alpha);
    let linear = RatFunc::from_num_den(
        pole_factor(alpha).poly(),
        Factored::monomial(super::mono::exps_of(q)),
    );
    let h = g.mul(&linear.pow(m));
    // In w = alpha t the pole sits at w = 1.
    let mut to_w = [[0; 4]; 4];
    for (i, row) in to_w.iter_mut().enumerate() {
        row[i] = 1;
    }
    to_w[t.index()] = exps_scale(alpha, -1);
    to_w[t.index()][t.index()] = 1;
    let hw = h.substitute_all(&to_w)?;
    let b = hw.taylor_at_one(t, m as usize - 1)?;
    // Singular part sum_j e_j u^{-j} with u = 1 - w.
    let mut resid: Vec<RatFunc> = vec![RatFunc::zero(); m as usize + 1];
    for j in 1..=m as usize {
        let i = m as usize - j;
        resid[j] = if i.is_multiple_of(2) { b[i].clone() } else { b[i].neg() };
    }
    // w^k / u^{k+1} = sum_i C(k,i) (-1)^i u^{i-k-1}; peel off from the top.
    let mut beta = vec![RatFunc::zero(); m as usize];
    for k in (0..m as usize).rev() {
        let bk = resid[k + 1].clone();
        if !bk.is_zero() {
            let mut binom = BigInt::one();
            for i in 0..=k {
                if i > 0 {
                    binom = binom * (k - i + 1) / i;
                }
                let c = if i % 2 == 0 { binom.clone() } else { -binom.clone() };
                resid[k + 1 - i] = resid[k + 1 - i].sub(&bk.scale(&c));
            }
        }
        beta[k] = bk;
    }
    debug_assert!(resid.iter().all(RatFunc::is_zero));
    // Back to t: w^k / (1-w)^{k+1} = alpha^k t^k / (1 - alpha t)^{k+1}.
    let mut fact = BigInt::one();
    let mut out = Vec::with_capacity(m as usize);
    for (k, bk) in beta.into_iter().enumerate() {
        if k > 0 {
            fact *= k;
        }
        let scaled = bk
            .mul(&monomial_ratfunc(&exps_scale(alpha, k as i32)))
            .mul(&RatFunc::ratio(1, fact.clone()));
        out.push(scaled);
    }
    Ok(out)
}

/// `sum_n [t^n] f * [t^n] g` for `g` given by `pf`, using
/// `f (.) 1/(1 - a t) = f(a)` and `f (.) k! t^k/(1 - a t)^(k+1) = f^(k)(a)`.
/// The constant term contributes `c0 * f(0)`.
pub fn hadamard_apply(f: &RatFunc, pf: &PartialFractionForm) -> Result<RatFunc, AlgebraError> {
    let t = Var::T;
    let mut parts: Vec<RatFunc> = Vec::new();
    if !pf.c0.is_zero() {
        let f0 = f
            .at_zero(t)
            .map_err(|e| AlgebraError::EvaluationAtPole(e.to_string()))?;
        parts.push(pf.c0.mul(&f0));
    }
    let mut alphas: Vec<Exps> = pf.terms.iter().map(|term| term.alpha).collect();
    alphas.dedup();
    for alpha in alphas {
        let group: Vec<&PoleTerm> = pf.terms.iter().filter(|term| term.alpha == alpha).collect();
        let kmax = group.iter().map(|term| term.k).max().unwrap_or(0);
        let values = derivatives_at(f, &alpha, kmax)?;
        for term in group {
            parts.push(term.coeff.mul(&values[term.k as usize]));
        }
    }
    Ok(RatFunc::sum(parts.iter()))
}

/// `f(alpha), f'(alpha), ..., f^(kmax)(alpha)` with derivatives in `t`.
fn derivatives_at(f: &RatFunc, alpha: &Exps, kmax: u32) -> Result<Vec<RatFunc>, AlgebraError> {
    let t = Var::T;
    let pole = |e: AlgebraError| AlgebraError::EvaluationAtPole(e.to_string());
    if kmax == 0 {
        return Ok(vec![f.substitute(t, alpha).map_err(pole)?]);
    }
    // d^k/dt^k f at alpha = alpha^{-k} d^k/dw^k f(alpha w) at w = 1.
    let mut image = *alpha;
    image[t.index()] = 1;
    let scaled = f.substitute(t, &image).map_err(pole)?;
    let derivs = scaled.derivatives_at_one(t, kmax as usize).map_err(pole)?;
    Ok(derivs
        .into_iter()
        .enumerate()
        .map(|(k, d)| d.mul(&monomial_ratfunc(&exps_scale(alpha, -(k as i32)))))
        .collect())
}

impl PoleTerm {
    pub fn is_unit_pole(&self) -> bool {
        self.alpha.iter().all(|e| e.is_zero())
    }
}
