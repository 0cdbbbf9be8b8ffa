//! The recurrence for `f_n(s;x)`, the generating function of 2-4-2 polygons
//! with `2(3n-2)` vertical bonds by bottom-row length `s` and half-horizontal
//! perimeter `x`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{cyclotomic_factor, Exps, Factor, IntPoly, Mono, RatFunc, Var};
use crate::error::AlgebraError;

use super::coefficients::{coefficients_c, coefficients_chat, Coefficients};

#[derive(Debug, Error)]
pub enum RecurrenceError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("n={n}: the two routes to f(1;x) disagree")]
    Inconsistent { n: u32 },
    #[error("n={n}: denominator factor {factor} is outside the allowed class")]
    DenominatorClass { n: u32, factor: String },
    #[error("n={n}: f has a nonzero constant term in s")]
    ConstantTerm { n: u32 },
}

/// Exponents of the denominator factors of `f_n(s;x)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DenominatorCertificate {
    /// `j -> b_j` for factors `(1 - s x^j)`.
    pub one_minus_sx: BTreeMap<u32, u32>,
    /// `k -> a_k` for factors `Psi_k(x)`.
    pub psi: BTreeMap<u32, u32>,
}

#[derive(Clone, Debug)]
pub struct RecurrenceState {
    pub n: u32,
    pub f_s: RatFunc,
    /// `f_n(1;x)`, from the `s = 1` recurrence for `n > 1`.
    pub f_1: RatFunc,
    pub certificate: DenominatorCertificate,
}

const X: Exps = [0, 0, 1, 0];

fn psi_x(k: u32) -> Factor {
    Factor::cyclo(k, X)
}

/// Exponent of `Psi_k(x)` in the denominator of a canonical `f`.
pub fn psi_multiplicity(f: &RatFunc, k: u32) -> u32 {
    f.den().exponent(&psi_x(k))
}

/// Checks that the denominator of `f_n(s;x)` is `(1 - s x^n)` (at most once)
/// times `Psi_k(x)` for `k < n` and `(1 - s x^j)` for `1 <= j < n`.
pub fn certify(n: u32, f_s: &RatFunc) -> Result<DenominatorCertificate, RecurrenceError> {
    let mut cert = DenominatorCertificate::default();
    for (factor, &e) in f_s.den().factors() {
        let bad = || RecurrenceError::DenominatorClass {
            n,
            factor: factor.to_string(),
        };
        match factor {
            Factor::Cyclo { order: 1, base } if base[0] == 0 && base[1] == 1 && base[3] == 0 => {
                let j = base[2] as u32;
                if j == 0 || j > n || (j == n && e > 1) {
                    return Err(bad());
                }
                cert.one_minus_sx.insert(j, e);
            }
            Factor::Cyclo { order, base } if *base == X && *order < n => {
                cert.psi.insert(*order, e);
            }
            _ => return Err(bad()),
        }
    }
    Ok(cert)
}

/// Holds the partial-fraction coefficients and steps the recurrence.
#[derive(Clone, Debug)]
pub struct Recurrence {
    pub c: Coefficients,
    pub chat: Coefficients,
}

impl Recurrence {
    pub fn new() -> Result<Recurrence, AlgebraError> {
        Ok(Recurrence {
            c: coefficients_c()?,
            chat: coefficients_chat()?,
        })
    }

    /// `f_1(s;x) = s x / (1 - s x)`.
    pub fn f1() -> RecurrenceState {
        let sx = Mono::new([0, 1, 1, 0]);
        let f_s = RatFunc::geometric(sx).sub(&RatFunc::one());
        let f_1 = f_s.at_one(Var::S).expect("no pole at s=1");
        let certificate = certify(1, &f_s).expect("base case is in class");
        RecurrenceState {
            n: 1,
            f_s,
            f_1,
            certificate,
        }
    }

    pub fn step(&self, state: &RecurrenceState) -> Result<RecurrenceState, RecurrenceError> {
        let n = state.n;
        let f = &state.f_s;
        if !f.at_zero(Var::S)?.is_zero() {
            return Err(RecurrenceError::ConstantTerm { n });
        }
        let derivs = f.derivatives_at_one(Var::S, 6)?;
        let c = &self.c.c;
        let mut general: Vec<RatFunc> = (0..6).map(|k| c[k + 1].mul(&derivs[k])).collect();
        general.push(c[7].mul(f));
        general.push(c[8].mul(&f.substitute(Var::S, &[0, 1, 1, 0])?));
        let f_s = RatFunc::sum(general.iter());

        let ch = &self.chat.c;
        let mut at_one: Vec<RatFunc> = (0..7).map(|k| ch[k + 1].mul(&derivs[k])).collect();
        at_one.push(ch[8].mul(&f.substitute(Var::S, &X)?));
        let f_1 = RatFunc::sum(at_one.iter());

        let next = n + 1;
        let certificate = certify(next, &f_s)?;
        let substituted = f_s
            .at_one(Var::S)
            .map_err(|_| RecurrenceError::DenominatorClass {
                n: next,
                factor: "1-s".into(),
            })?;
        if substituted != f_1 {
            return Err(RecurrenceError::Inconsistent { n: next });
        }
        Ok(RecurrenceState {
            n: next,
            f_s,
            f_1,
            certificate,
        })
    }

    /// `f_{n+1}(1;x)` alone, skipping the general-`s` route.
    pub fn step_at_one(&self, state: &RecurrenceState) -> Result<RatFunc, RecurrenceError> {
        let f = &state.f_s;
        let derivs = f.derivatives_at_one(Var::S, 6)?;
        let ch = &self.chat.c;
        let mut at_one: Vec<RatFunc> = (0..7).map(|k| ch[k + 1].mul(&derivs[k])).collect();
        at_one.push(ch[8].mul(&f.substitute(Var::S, &X)?));
        Ok(RatFunc::sum(at_one.iter()))
    }

    /// States for `n = 1..=n_max`.
    pub fn run(&self, n_max: u32) -> Result<Vec<RecurrenceState>, RecurrenceError> {
        let mut out = vec![Self::f1()];
        while (out.len() as u32) < n_max {
            let next = self.step(out.last().expect("nonempty"))?;
            out.push(next);
        }
        out.truncate(n_max as usize);
        Ok(out)
    }
}

/// `x^{2k+2} + x^{k+1} - x^k + 1`.
pub fn pk(k: u32) -> IntPoly {
    IntPoly::from_terms([
        (Mono::var(Var::X, 2 * k + 2), 1),
        (Mono::var(Var::X, k + 1), 1),
        (Mono::var(Var::X, k), -1),
        (Mono::ONE, 1),
    ])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PkReport {
    pub k: u32,
    pub at_one: i64,
    pub at_minus_one: i64,
    /// Order of the zero at `x = -1`, i.e. the exponent of `Psi_2 = 1 + x`.
    pub zero_order_at_minus_one: u32,
}

pub fn pk_check(k: u32) -> PkReport {
    let p = pk(k);
    let eval = |at: i64| {
        p.eval_univariate(Var::X, &BigInt::from(at))
            .and_then(|v| v.to_i64())
            .expect("small univariate value")
    };
    PkReport {
        k,
        at_one: eval(1),
        at_minus_one: eval(-1),
        zero_order_at_minus_one: cyclotomic_factor(&p).exponent(2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rf;

    #[test]
    fn second_term_has_no_psi2() {
        let r = Recurrence::new().unwrap();
        let states = r.run(4).unwrap();
        let verdicts: Vec<u32> = states.iter().map(|s| psi_multiplicity(&s.f_1, s.n)).collect();
        assert_eq!(verdicts, [1, 0, 1, 1]);
        assert_eq!(states[0].f_1, rf("x/(1-x)"));
    }

    #[test]
    fn certificate_shape() {
        let r = Recurrence::new().unwrap();
        let states = r.run(3).unwrap();
        let c3 = &states[2].certificate;
        assert_eq!(c3.one_minus_sx, BTreeMap::from([(1, 13), (2, 7), (3, 1)]));
        assert_eq!(c3.psi, BTreeMap::from([(1, 12), (2, 5)]));
    }

    #[test]
    fn rejects_foreign_denominator() {
        let err = certify(2, &rf("s/((1-s)*(1-s*x))")).unwrap_err();
        assert!(matches!(err, RecurrenceError::DenominatorClass { n: 2, .. }));
        assert!(certify(2, &rf("s/(1-s*x^2)^2")).is_err());
        assert!(certify(2, &rf("s/((1-s*x^2)*(1-x)^3*(1-s*x)^4)")).is_ok());
    }

    #[test]
    fn pk_values() {
        for k in 1..=10 {
            let r = pk_check(k);
            assert_eq!(r.at_one, 2);
            assert_eq!(r.at_minus_one == 0, k % 2 == 0);
            assert_eq!(r.zero_order_at_minus_one, if k % 2 == 0 { 1 } else { 0 });
        }
    }
}
