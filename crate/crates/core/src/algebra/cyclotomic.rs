//! Cyclotomic polynomials in the normalization `(1 - x^n) = prod_{k|n} Psi_k(x)`,
//! so `Psi_1 = 1 - x` and `Psi_k` for `k >= 2` is the usual monic one.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mono::Var;
use super::poly::IntPoly;

pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Dense univariate helpers on ascending coefficient vectors.
pub(crate) mod dense {
    use super::*;

    pub fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    #[cfg(test)]
    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    /// Exact division over the integers; `None` if `d` does not divide `a`.
    pub fn div_exact(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
        let d = trim(d.to_vec());
        let lead = d.last()?;
        let a = trim(a.to_vec());
        if a.is_empty() {
            return Some(Vec::new());
        }
        if a.len() < d.len() {
            return None;
        }
        let mut rem = a;
        let qlen = rem.len() - d.len() + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dj) in d.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(trim(q))
    }
}

fn cache() -> &'static Mutex<BTreeMap<u32, Vec<BigInt>>> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// Ascending coefficients of `Psi_k`, computed by exact division of
/// `1 - x^k` by `Psi_d` for every proper divisor `d` of `k`.
pub fn cyclotomic_coeffs(k: u32) -> Vec<BigInt> {
    assert!(k >= 1, "cyclotomic index must be positive");
    if let Some(c) = cache().lock().expect("cyclotomic cache").get(&k) {
        return c.clone();
    }
    let mut num = vec![BigInt::zero(); k as usize + 1];
    num[0] = BigInt::one();
    num[k as usize] = -BigInt::one();
    for d in divisors(k) {
        if d == k {
            continue;
        }
        let psi = cyclotomic_coeffs(d);
        num = dense::div_exact(&num, &psi).expect("cyclotomic divisor chain is exact");
    }
    cache()
        .lock()
        .expect("cyclotomic cache")
        .insert(k, num.clone());
    num
}

/// `Psi_k(x)` as a polynomial.
pub fn cyclotomic(k: u32) -> IntPoly {
    IntPoly::from_coeffs(Var::X, &cyclotomic_coeffs(k))
}

/// `Psi_k(1)`: zero for `k = 1`, `p` when `k` is a power of the prime `p`,
/// otherwise one.
pub fn cyclotomic_at_one(k: u32) -> BigInt {
    cyclotomic_coeffs(k).iter().sum()
}

/// Trial-divides a univariate coefficient vector by `Psi_k` for `k` up to
/// `max_k`, removing each factor as often as it divides.
pub(crate) fn strip_cyclotomic(
    coeffs: &[BigInt],
    max_k: u32,
) -> (BTreeMap<u32, u32>, Vec<BigInt>) {
    let mut rem = dense::trim(coeffs.to_vec());
    let mut exps = BTreeMap::new();
    for k in 1..=max_k {
        if rem.len() <= 1 {
            break;
        }
        let phi = euler_phi(k) as usize;
        if phi + 1 > rem.len() {
            continue;
        }
        let psi = cyclotomic_coeffs(k);
        let mut count = 0;
        while let Some(q) = dense::div_exact(&rem, &psi) {
            rem = q;
            count += 1;
            if rem.len() < psi.len() {
                break;
            }
        }
        if count > 0 {
            exps.insert(k, count);
        }
    }
    (exps, rem)
}

/// Largest index whose cyclotomic polynomial can have degree `<= deg`.
pub(crate) fn max_cyclotomic_index(deg: u32) -> u32 {
    (deg + 1).max(deg * deg).max(6)
}

/// A univariate polynomial written as `unit * remainder * prod Psi_k^{e_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub exponents: BTreeMap<u32, u32>,
    pub remainder: IntPoly,
    pub unit: i8,
}

impl CyclotomicFactorization {
    pub fn reassemble(&self) -> IntPoly {
        let mut p = self.remainder.scale(&BigInt::from(self.unit));
        for (&k, &e) in &self.exponents {
            p = p.mul(&cyclotomic(k).pow(e));
        }
        p
    }

    pub fn exponent(&self, k: u32) -> u32 {
        self.exponents.get(&k).copied().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        self.remainder.is_one()
    }

    /// Sum of `phi(k) * e_k`: the degree of the cyclotomic part.
    pub fn cyclotomic_degree(&self) -> u32 {
        self.exponents
            .iter()
            .map(|(&k, &e)| euler_phi(k) * e)
            .sum()
    }
}

/// Cyclotomic factorization of a nonzero polynomial in `x` by trial exact
/// division. Every `Psi_k` of degree at most `deg(p)` is tried; since
/// `phi(k) >= sqrt(k)` for `k > 6` that means `k <= max(6, deg^2, deg + 1)`. Anything that is not a
/// cyclotomic factor stays in `remainder`, normalized to a positive lowest
/// coefficient with the sign moved to `unit`.
pub fn cyclotomic_factor(p: &IntPoly) -> CyclotomicFactorization {
    let coeffs = p
        .univariate_coeffs(Var::X)
        .expect("cyclotomic_factor expects a polynomial in x");
    assert!(!coeffs.is_empty(), "cyclotomic_factor of zero");
    let max_k = max_cyclotomic_index(coeffs.len() as u32 - 1);
    let (exponents, rem) = strip_cyclotomic(&coeffs, max_k);
    let lowest = rem
        .iter()
        .find(|c| !c.is_zero())
        .expect("nonzero remainder");
    let unit: i8 = if lowest.is_negative() { -1 } else { 1 };
    let rem: Vec<BigInt> = rem.into_iter().map(|c| c * BigInt::from(unit)).collect();
    CyclotomicFactorization {
        exponents,
        remainder: IntPoly::from_coeffs(Var::X, &rem),
        unit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_coeffs(1), coeffs(&[1, -1]));
        assert_eq!(cyclotomic_coeffs(2), coeffs(&[1, 1]));
        assert_eq!(cyclotomic_coeffs(3), coeffs(&[1, 1, 1]));
        assert_eq!(cyclotomic_coeffs(4), coeffs(&[1, 0, 1]));
        assert_eq!(cyclotomic_coeffs(6), coeffs(&[1, -1, 1]));
    }

    #[test]
    fn psi_six_by_hand_division() {
        // (1 - x^6) / ((1 - x)(1 + x)(1 + x + x^2)) computed independently.
        let num = coeffs(&[1, 0, 0, 0, 0, 0, -1]);
        let den = dense::mul(
            &dense::mul(&coeffs(&[1, -1]), &coeffs(&[1, 1])),
            &coeffs(&[1, 1, 1]),
        );
        assert_eq!(dense::div_exact(&num, &den).unwrap(), coeffs(&[1, -1, 1]));
    }

    #[test]
    fn product_over_divisors_is_one_minus_x_n() {
        for n in 1..=30u32 {
            let mut prod = coeffs(&[1]);
            for d in divisors(n) {
                prod = dense::mul(&prod, &cyclotomic_coeffs(d));
            }
            let mut expect = vec![BigInt::zero(); n as usize + 1];
            expect[0] = BigInt::one();
            expect[n as usize] = -BigInt::one();
            assert_eq!(prod, expect, "n = {n}");
            assert_eq!(cyclotomic_coeffs(n).len() as u32, euler_phi(n) + 1);
        }
    }

    #[test]
    fn value_at_one() {
        assert_eq!(cyclotomic_at_one(1), BigInt::zero());
        assert_eq!(cyclotomic_at_one(8), BigInt::from(2));
        assert_eq!(cyclotomic_at_one(9), BigInt::from(3));
        assert_eq!(cyclotomic_at_one(6), BigInt::one());
    }

    #[test]
    fn factor_table_denominators() {
        let d2 = cyclotomic(1).pow(3);
        let f = cyclotomic_factor(&d2);
        assert_eq!(f.exponents, BTreeMap::from([(1, 3)]));
        assert!(f.remainder.is_one());

        let d5 = cyclotomic(1).pow(9).mul(&cyclotomic(2).pow(2));
        let f = cyclotomic_factor(&d5);
        assert_eq!(f.exponents, BTreeMap::from([(1, 9), (2, 2)]));
        assert_eq!(f.reassemble(), d5);

        let p = IntPoly::from_i64_coeffs(Var::X, &[1, 2]);
        let f = cyclotomic_factor(&p);
        assert!(f.exponents.is_empty());
        assert_eq!(f.remainder, p);
    }

    #[test]
    fn negative_unit_is_split_off() {
        // x - 1 = -(1 - x)
        let p = IntPoly::from_i64_coeffs(Var::X, &[-1, 1]);
        let f = cyclotomic_factor(&p);
        assert_eq!(f.exponents, BTreeMap::from([(1, 1)]));
        assert_eq!(f.unit, -1);
        assert_eq!(f.reassemble(), p);
        let q = IntPoly::from_i64_coeffs(Var::X, &[-3, 0, -3]);
        let f = cyclotomic_factor(&q);
        assert_eq!(f.unit, -1);
        assert_eq!(f.exponents, BTreeMap::from([(4, 1)]));
        assert_eq!(f.remainder, IntPoly::constant(3));
        assert_eq!(f.reassemble(), q);
    }
}
