use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::{factor_poly, Factor, Factored};
use super::mono::{exps_split, exps_var, Exps, Mono, Var};
use super::poly::{identity_images, IntPoly};
use crate::error::AlgebraError;

/// A denominator kept as `constant * prod factor^e` with `constant > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Denom {
    constant: BigInt,
    factors: BTreeMap<Factor, u32>,
}

impl Denom {
    pub fn one() -> Denom {
        Denom {
            constant: BigInt::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn factors(&self) -> &BTreeMap<Factor, u32> {
        &self.factors
    }

    pub fn exponent(&self, f: &Factor) -> u32 {
        self.factors.get(f).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.constant.is_one() && self.factors.is_empty()
    }

    pub fn expand(&self) -> IntPoly {
        let mut p = IntPoly::constant(self.constant.clone());
        for (f, &e) in &self.factors {
            p = mul_factor_power(&p, f, e);
        }
        p
    }

    fn lcm(&self, other: &Denom) -> Denom {
        let mut factors = self.factors.clone();
        for (f, &e) in &other.factors {
            let slot = factors.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        Denom {
            constant: self.constant.lcm(&other.constant),
            factors,
        }
    }

    /// `multiple / self` as a polynomial, for a multiple of `self`.
    fn cofactor(&self, multiple: &Denom) -> IntPoly {
        let mut p = IntPoly::constant(&multiple.constant / &self.constant);
        for (f, &e) in &multiple.factors {
            p = mul_factor_power(&p, f, e - self.exponent(f));
        }
        p
    }

    fn mul(&self, other: &Denom) -> Denom {
        let mut factors = self.factors.clone();
        for (f, &e) in &other.factors {
            *factors.entry(f.clone()).or_insert(0) += e;
        }
        Denom {
            constant: &self.constant * &other.constant,
            factors,
        }
    }

    fn to_factored(&self) -> Factored {
        let mut out = Factored::one();
        out.coeff = self.constant.clone();
        for (f, &e) in &self.factors {
            out.push(f.clone(), e);
        }
        out
    }
}

fn mul_factor_power(p: &IntPoly, f: &Factor, e: u32) -> IntPoly {
    if e == 0 {
        return p.clone();
    }
    match f {
        Factor::Var(v) => p.mul_mono(Mono::var(*v, e)),
        f => p.mul(&f.poly().pow(e)),
    }
}

/// Divides `num` by the factors of `den` as often as possible, lowering the
/// exponents in `den` to match.
fn reduce_against(mut num: IntPoly, den: &mut Denom) -> IntPoly {
    if num.is_zero() {
        return num;
    }
    for (f, e) in den.factors.iter_mut() {
        match f {
            Factor::Var(v) => {
                let k = num.min_degree(*v).unwrap_or(0).min(*e);
                if k > 0 {
                    num = num.div_mono(Mono::var(*v, k)).expect("monomial divides");
                    *e -= k;
                }
            }
            f => {
                if *e == 0 || !f.vars_within(&num) {
                    continue;
                }
                let fp = f.poly();
                while *e > 0 {
                    match num.div_exact(&fp) {
                        Some(q) => {
                            num = q;
                            *e -= 1;
                        }
                        None => break,
                    }
                }
            }
        }
    }
    den.factors.retain(|_, e| *e > 0);
    num
}

/// An exact rational function `num / den` in canonical form: no factor of
/// `den` divides `num`, the integer content of `num` is coprime to the
/// denominator constant, and zero is `0 / 1`.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: IntPoly,
    den: Denom,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        // Opaque factors may hide equal values behind different shapes.
        let has_opaque = |r: &RatFunc| r.den.factors.keys().any(|f| matches!(f, Factor::Other(_)));
        if !has_opaque(self) && !has_opaque(other) {
            return false;
        }
        self.num.mul(&other.den.expand()) == other.num.mul(&self.den.expand())
    }
}

impl Eq for RatFunc {}

impl From<IntPoly> for RatFunc {
    fn from(p: IntPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc::from_poly(IntPoly::zero())
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(IntPoly::one())
    }

    pub fn from_poly(p: IntPoly) -> RatFunc {
        RatFunc {
            num: p,
            den: Denom::one(),
        }
    }

    pub fn integer(c: impl Into<BigInt>) -> RatFunc {
        RatFunc::from_poly(IntPoly::constant(c))
    }

    /// The rational number `n / d`.
    pub fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> RatFunc {
        let d = d.into();
        assert!(!d.is_zero(), "zero denominator");
        RatFunc::from_num_den(IntPoly::constant(n), Factored {
            coeff: d,
            ..Factored::one()
        })
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from_poly(IntPoly::var(v))
    }

    /// `1 / (1 - m)` for a monomial `m` with coprime exponents.
    pub fn geometric(m: Mono) -> RatFunc {
        RatFunc::from_num_den(IntPoly::one(), Factored::factor(Factor::one_minus(m), 1))
    }

    /// Builds `num / den` from a factored denominator and canonicalizes.
    pub fn from_num_den(num: IntPoly, den: Factored) -> RatFunc {
        assert!(!den.coeff.is_zero(), "zero denominator");
        let (pos, neg) = exps_split(&den.mono);
        let mut num = num.mul_mono(neg);
        if den.coeff.is_negative() {
            num = num.neg();
        }
        let mut d = Denom {
            constant: den.coeff.abs(),
            factors: den.factors,
        };
        for v in Var::ALL {
            let e = pos.exp(v);
            if e > 0 {
                *d.factors.entry(Factor::Var(v)).or_insert(0) += e;
            }
        }
        Self::canonical(num, d)
    }

    fn canonical(num: IntPoly, mut den: Denom) -> RatFunc {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let num = reduce_against(num, &mut den);
        Self::reduce_content(num, den)
    }

    fn reduce_content(num: IntPoly, mut den: Denom) -> RatFunc {
        let g = num.content().gcd(&den.constant);
        if g.is_one() {
            return RatFunc { num, den };
        }
        den.constant /= &g;
        RatFunc {
            num: num.div_scalar(&g).expect("content divides"),
            den,
        }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &Denom {
        &self.den
    }

    pub fn den_poly(&self) -> IntPoly {
        self.den.expand()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The polynomial, when the denominator is 1.
    pub fn as_poly(&self) -> Option<&IntPoly> {
        self.den.is_one().then_some(&self.num)
    }

    /// `(numerator, denominator)` of a rational constant.
    pub fn as_rational(&self) -> Option<(BigInt, BigInt)> {
        if self.den.factors.is_empty() {
            self.num
                .as_constant()
                .map(|n| (n, self.den.constant.clone()))
        } else {
            None
        }
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.num.depends_on(v) || self.den.factors.keys().any(|f| f.depends_on(v))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::canonical(self.num.add(&other.num), self.den.clone());
        }
        let l = self.den.lcm(&other.den);
        let a = self.num.mul(&self.den.cofactor(&l));
        let b = other.num.mul(&other.den.cofactor(&l));
        Self::canonical(a.add(&b), l)
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    /// Sum of many terms over their joint common denominator.
    pub fn sum<'a>(terms: impl IntoIterator<Item = &'a RatFunc>) -> RatFunc {
        let terms: Vec<&RatFunc> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        let Some(first) = terms.first() else {
            return RatFunc::zero();
        };
        let l = terms
            .iter()
            .skip(1)
            .fold(first.den.clone(), |acc, t| acc.lcm(&t.den));
        let mut num = IntPoly::zero();
        for t in &terms {
            num = num.add(&t.num.mul(&t.den.cofactor(&l)));
        }
        Self::canonical(num, l)
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        let mut da = self.den.clone();
        let mut db = other.den.clone();
        let na = reduce_against(self.num.clone(), &mut db);
        let nb = reduce_against(other.num.clone(), &mut da);
        Self::reduce_content(na.mul(&nb), da.mul(&db))
    }

    pub fn scale(&self, c: &BigInt) -> RatFunc {
        self.mul(&RatFunc::integer(c.clone()))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        if e == 0 {
            return RatFunc::one();
        }
        RatFunc {
            num: self.num.pow(e),
            den: Denom {
                constant: num_traits::pow::pow(self.den.constant.clone(), e as usize),
                factors: self.den.factors.iter().map(|(f, &k)| (f.clone(), k * e)).collect(),
            },
        }
    }

    /// Reciprocal; `hints` are factors the numerator is likely to contain.
    pub fn inv_with_hints(&self, hints: &[Factor]) -> Result<RatFunc, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut all: Vec<Factor> = hints.to_vec();
        all.extend(self.den.factors.keys().cloned());
        let den = factor_poly(&self.num, &all);
        Ok(RatFunc::from_num_den(self.den.expand(), den))
    }

    pub fn inv(&self) -> Result<RatFunc, AlgebraError> {
        self.inv_with_hints(&[])
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, AlgebraError> {
        let hints: Vec<Factor> = self.den.factors.keys().cloned().collect();
        Ok(self.mul(&other.inv_with_hints(&hints)?))
    }

    /// k-th partial derivative in `v`.
    pub fn differentiate(&self, v: Var, order: u32) -> RatFunc {
        let mut f = self.clone();
        for _ in 0..order {
            f = f.derivative(v);
            if f.is_zero() {
                break;
            }
        }
        f
    }

    fn derivative(&self, v: Var) -> RatFunc {
        let dep: Vec<(Factor, u32)> = self
            .den
            .factors
            .iter()
            .filter(|(f, _)| f.depends_on(v))
            .map(|(f, &e)| (f.clone(), e))
            .collect();
        if dep.is_empty() {
            return Self::canonical(self.num.derivative(v), self.den.clone());
        }
        let polys: Vec<IntPoly> = dep.iter().map(|(f, _)| f.poly()).collect();
        let g = polys.iter().fold(IntPoly::one(), |acc, p| acc.mul(p));
        let mut num = self.num.derivative(v).mul(&g);
        for (i, (_, e)) in dep.iter().enumerate() {
            let others = polys
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(IntPoly::one(), |acc, (_, p)| acc.mul(p));
            let term = polys[i]
                .derivative(v)
                .mul(&others)
                .scale(&BigInt::from(*e));
            num = num.sub(&self.num.mul(&term));
        }
        let mut den = self.den.clone();
        for (f, _) in &dep {
            *den.factors.get_mut(f).expect("factor present") += 1;
        }
        Self::canonical(num, den)
    }

    /// Simultaneous monomial substitution: variable `i` becomes the Laurent
    /// monomial `images[i]`.
    pub fn substitute_all(&self, images: &[Exps; 4]) -> Result<RatFunc, AlgebraError> {
        let mut den = Factored::one();
        den.coeff = self.den.constant.clone();
        for (f, &e) in &self.den.factors {
            let img = f
                .substitute(images)
                .ok_or_else(|| AlgebraError::PoleAtSubstitution(format!("factor {f} vanishes")))?;
            den.mul_assign(&img.pow(e));
        }
        let (num, shift) = self.num.subst_all(images);
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        for (d, s) in den.mono.iter_mut().zip(shift) {
            *d -= s;
        }
        Ok(RatFunc::from_num_den(num, den))
    }

    /// `v := m` for a Laurent monomial `m` (all zeros means `v := 1`).
    pub fn substitute(&self, v: Var, m: &Exps) -> Result<RatFunc, AlgebraError> {
        let mut images = identity_images();
        images[v.index()] = *m;
        self.substitute_all(&images)
    }

    pub fn at_one(&self, v: Var) -> Result<RatFunc, AlgebraError> {
        self.substitute(v, &[0; 4])
    }

    /// Value at `v = 0`.
    pub fn at_zero(&self, v: Var) -> Result<RatFunc, AlgebraError> {
        let mut den = Factored::one();
        den.coeff = self.den.constant.clone();
        for (f, &e) in &self.den.factors {
            let img = f
                .at_zero(v)
                .ok_or_else(|| AlgebraError::PoleAtSubstitution(format!("factor {f} at {v}=0")))?;
            den.mul_assign(&img.pow(e));
        }
        Ok(RatFunc::from_num_den(self.num.at_zero(v), den))
    }

    /// Renames `from` to `to`; `to` must not occur.
    pub fn rename(&self, from: Var, to: Var) -> RatFunc {
        assert!(!self.depends_on(to), "renaming onto an occurring variable");
        self.substitute(from, &exps_var(to))
            .expect("renaming cannot create poles")
    }

    /// Swaps two variables.
    pub fn swap(&self, a: Var, b: Var) -> RatFunc {
        let mut images = identity_images();
        images[a.index()] = exps_var(b);
        images[b.index()] = exps_var(a);
        self.substitute_all(&images)
            .expect("swapping cannot create poles")
    }

    /// Coefficients `h_0..=h_order` of the expansion of `self` in powers of
    /// `(v - 1)`, so the k-th derivative at `v = 1` is `k! * h_k`.
    pub fn taylor_at_one(&self, v: Var, order: usize) -> Result<Vec<RatFunc>, AlgebraError> {
        let mut series = shift_series(&self.num, v, order);
        let mut rest = Denom {
            constant: self.den.constant.clone(),
            factors: BTreeMap::new(),
        };
        let mut at_one: Vec<(Factored, u32)> = Vec::new();
        let mut base_dens: Vec<IntPoly> = Vec::new();
        let mut images = identity_images();
        images[v.index()] = [0; 4];
        for (f, &e) in &self.den.factors {
            if !f.depends_on(v) {
                rest.factors.insert(f.clone(), e);
                continue;
            }
            let f0 = f.substitute(&images).ok_or_else(|| {
                AlgebraError::EvaluationAtPole(format!("factor {f} vanishes at {v}=1"))
            })?;
            let fs = shift_series(&f.poly(), v, order);
            let f0p = fs[0].clone();
            // 1/F(1+u) = sum p_i u^i / F0^{i+1}
            let mut inv = vec![IntPoly::one()];
            for i in 1..=order {
                let mut acc = IntPoly::zero();
                let mut f0pow = IntPoly::one();
                for j in 1..=i {
                    if !fs[j].is_zero() {
                        acc = acc.add(&fs[j].mul(&inv[i - j]).mul(&f0pow));
                    }
                    f0pow = f0pow.mul(&f0p);
                }
                inv.push(acc.neg());
            }
            // e-th power: numerators over F0^{i+e}
            let mut pw = vec![IntPoly::one()];
            pw.resize(order + 1, IntPoly::zero());
            for _ in 0..e {
                pw = truncated_product(&pw, &inv, order);
            }
            // Combine with the running series; the running series has
            // denominators prod(previous F0)^(i + ...), which commute with
            // this factor's powers.
            series = combine_series(&series, &base_dens, &pw, &f0p, order);
            base_dens.push(f0p);
            at_one.push((f0, e));
        }
        let mut out = Vec::with_capacity(order + 1);
        for (i, num) in series.into_iter().enumerate() {
            let mut den = rest.to_factored();
            for (f0, e) in &at_one {
                den.mul_assign(&f0.pow(i as u32 + e));
            }
            out.push(RatFunc::from_num_den(num, den));
        }
        Ok(out)
    }

    /// Derivatives `f, f', ..., f^(order)` at `v = 1`.
    pub fn derivatives_at_one(&self, v: Var, order: usize) -> Result<Vec<RatFunc>, AlgebraError> {
        let h = self.taylor_at_one(v, order)?;
        let mut fact = BigInt::one();
        Ok(h
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    fact *= k;
                }
                c.scale(&fact)
            })
            .collect())
    }

    /// First `n + 1` Taylor coefficients in `v` at the origin.
    pub fn series_expand(&self, v: Var, n: usize) -> Result<Vec<RatFunc>, AlgebraError> {
        let mut d0 = Factored::one();
        d0.coeff = self.den.constant.clone();
        for (f, &e) in &self.den.factors {
            let img = f
                .at_zero(v)
                .ok_or_else(|| AlgebraError::NotExpandable(format!("factor {f} at {v}=0")))?;
            d0.mul_assign(&img.pow(e));
        }
        let d = self.den.expand();
        let dc = pad(d.coeffs_in(v), n + 1);
        let nc = pad(self.num.coeffs_in(v), n + 1);
        let d0p = dc[0].clone();
        let mut p: Vec<IntPoly> = Vec::with_capacity(n + 1);
        let mut d0pow = IntPoly::one();
        for i in 0..=n {
            let mut acc = nc[i].mul(&d0pow);
            let mut inner = IntPoly::one();
            for j in 1..=i {
                if !dc[j].is_zero() {
                    acc = acc.sub(&dc[j].mul(&p[i - j]).mul(&inner));
                }
                inner = inner.mul(&d0p);
            }
            p.push(acc);
            d0pow = d0pow.mul(&d0p);
        }
        Ok(p
            .into_iter()
            .enumerate()
            .map(|(i, pi)| RatFunc::from_num_den(pi, d0.pow(i as u32 + 1)))
            .collect())
    }

    /// Integer Taylor coefficients of a function of `v` alone.
    pub fn series_integers(&self, v: Var, n: usize) -> Result<Vec<BigInt>, AlgebraError> {
        if Var::ALL.iter().any(|&w| w != v && self.depends_on(w)) {
            return Err(AlgebraError::NotExpandable(format!(
                "not a function of {v} alone"
            )));
        }
        let d = self.den.expand();
        let dc = d.univariate_coeffs(v).expect("univariate");
        let nc = self.num.univariate_coeffs(v).expect("univariate");
        let d0 = dc.first().cloned().unwrap_or_default();
        if d0.is_zero() {
            return Err(AlgebraError::NotExpandable(format!("pole at {v}=0")));
        }
        let mut a: Vec<BigInt> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = nc.get(i).cloned().unwrap_or_default();
            for j in 1..dc.len().min(i + 1) {
                if !dc[j].is_zero() {
                    acc -= &dc[j] * &a[i - j];
                }
            }
            let (q, r) = acc.div_rem(&d0);
            if !r.is_zero() {
                return Err(AlgebraError::NotExpandable("non-integral coefficient".into()));
            }
            a.push(q);
        }
        Ok(a)
    }

    /// Multivariate Taylor expansion truncated to exponents `<= bounds`.
    /// The denominator must have constant term +-1.
    pub fn taylor_box(&self, bounds: &[u32; 4]) -> Result<IntPoly, AlgebraError> {
        let d = self.den.expand();
        let d0 = d.constant_term();
        if !(d0.is_one() || (-&d0).is_one()) {
            return Err(AlgebraError::NotExpandable(format!(
                "denominator constant term {d0}"
            )));
        }
        let rest = d.sub(&IntPoly::constant(d0.clone())).scale(&-&d0).truncate(bounds);
        let mut inv = IntPoly::constant(d0.clone());
        let mut term = inv.clone();
        loop {
            term = term.mul_truncated(&rest, bounds);
            if term.is_zero() {
                break;
            }
            inv = inv.add(&term);
        }
        Ok(self.num.truncate(bounds).mul_truncated(&inv, bounds))
    }
}

fn pad(mut v: Vec<IntPoly>, len: usize) -> Vec<IntPoly> {
    if v.len() < len {
        v.resize(len, IntPoly::zero());
    }
    v
}

/// Coefficients of `p(v = 1 + u)` in `u`, up to `u^order`.
fn shift_series(p: &IntPoly, v: Var, order: usize) -> Vec<IntPoly> {
    let coeffs = p.coeffs_in(v);
    let mut out = vec![IntPoly::zero(); order + 1];
    for (j, cj) in coeffs.iter().enumerate() {
        if cj.is_zero() {
            continue;
        }
        let mut binom = BigInt::one();
        for (i, slot) in out.iter_mut().enumerate().take(order.min(j) + 1) {
            if i > 0 {
                binom = binom * (j - i + 1) / i;
            }
            *slot = slot.add(&cj.scale(&binom));
        }
    }
    out
}

fn truncated_product(a: &[IntPoly], b: &[IntPoly], order: usize) -> Vec<IntPoly> {
    let mut out = vec![IntPoly::zero(); order + 1];
    for i in 0..=order {
        for j in 0..=i {
            if !a[j].is_zero() && !b[i - j].is_zero() {
                out[i] = out[i].add(&a[j].mul(&b[i - j]));
            }
        }
    }
    out
}

/// Multiplies the running series `A_i / (prod_k B_k^{i + a_k})` by
/// `C_i / F^{i + c}`. The result has denominators `prod_k B_k^{i + a_k} *
/// F^{i + c}`: term `A_j C_{i-j}` needs `F^{j}` and `prod_k B_k^{i-j}`.
fn combine_series(
    a: &[IntPoly],
    bases: &[IntPoly],
    c: &[IntPoly],
    f: &IntPoly,
    order: usize,
) -> Vec<IntPoly> {
    let b_prod = bases.iter().fold(IntPoly::one(), |acc, b| acc.mul(b));
    let mut f_pows = vec![IntPoly::one()];
    let mut b_pows = vec![IntPoly::one()];
    for k in 1..=order {
        f_pows.push(f_pows[k - 1].mul(f));
        b_pows.push(b_pows[k - 1].mul(&b_prod));
    }
    let mut out = vec![IntPoly::zero(); order + 1];
    for i in 0..=order {
        for j in 0..=i {
            if a[j].is_zero() || c[i - j].is_zero() {
                continue;
            }
            let t = a[j].mul(&c[i - j]).mul(&f_pows[j]).mul(&b_pows[i - j]);
            out[i] = out[i].add(&t);
        }
    }
    out
}
