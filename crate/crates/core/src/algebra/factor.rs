//! Irreducible factors used in factored denominators, and a recognizer that
//! splits a polynomial into such factors where it cheaply can.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclotomic::{
    cyclotomic_coeffs, dense, divisors, euler_phi, max_cyclotomic_index, strip_cyclotomic,
};
use super::mono::{exps_add, exps_is_zero, exps_of, exps_scale, exps_split, Exps, Mono, Var};
use super::poly::IntPoly;

/// An irreducible polynomial factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    /// A single variable.
    Var(Var),
    /// `Q^phi(order) * Psi_order(P/Q)`, where `P/Q` is the Laurent monomial
    /// `base` with coprime exponents and its first nonzero exponent positive.
    /// With `base = s*x` and order 1 this is `1 - s*x`.
    Cyclo { order: u32, base: Exps },
    /// Any other factor, kept primitive with a positive lowest graded term.
    /// Not guaranteed irreducible.
    Other(IntPoly),
}

impl Factor {
    pub fn cyclo(order: u32, base: Exps) -> Factor {
        debug_assert!(is_canonical_base(&base));
        Factor::Cyclo { order, base }
    }

    /// `1 - m` for a monomial `m` with coprime exponents.
    pub fn one_minus(m: Mono) -> Factor {
        Factor::cyclo(1, exps_of(m))
    }

    pub fn poly(&self) -> IntPoly {
        match self {
            Factor::Var(v) => IntPoly::var(*v),
            Factor::Cyclo { order, base } => homogenize(&cyclotomic_coeffs(*order), base),
            Factor::Other(p) => p.clone(),
        }
    }

    pub fn depends_on(&self, v: Var) -> bool {
        match self {
            Factor::Var(w) => *w == v,
            Factor::Cyclo { base, .. } => base[v.index()] != 0,
            Factor::Other(p) => p.depends_on(v),
        }
    }

    /// Whether every variable of the factor occurs in `p`; a necessary
    /// condition for the factor to divide `p`.
    pub(crate) fn vars_within(&self, p: &IntPoly) -> bool {
        let present = p.vars();
        Var::ALL
            .iter()
            .all(|v| !self.depends_on(*v) || present.contains(v))
    }

    /// Image under the simultaneous monomial substitution `images`, or `None`
    /// when the factor vanishes identically.
    pub fn substitute(&self, images: &[Exps; 4]) -> Option<Factored> {
        match self {
            Factor::Var(v) => Some(Factored::monomial(images[v.index()])),
            Factor::Cyclo { order, base } => {
                let (_, q) = exps_split(base);
                let mut out = Factored::monomial(exps_scale(
                    &apply_images(&exps_of(q), images),
                    euler_phi(*order) as i32,
                ));
                out.mul_assign(&cyclotomic_at_monomial(*order, &apply_images(base, images))?);
                Some(out)
            }
            Factor::Other(p) => {
                let (img, shift) = p.subst_all(images);
                if img.is_zero() {
                    return None;
                }
                let mut out = factor_poly(&img, &[]);
                out.mono = exps_add(&out.mono, &shift);
                Some(out)
            }
        }
    }

    /// Image under `v := 0`, or `None` when the factor vanishes there.
    pub fn at_zero(&self, v: Var) -> Option<Factored> {
        match self {
            Factor::Var(w) if *w == v => None,
            Factor::Cyclo { order, base } if base[v.index()] != 0 => {
                let (p, q) = exps_split(base);
                let phi = euler_phi(*order) as i32;
                if base[v.index()] > 0 {
                    // P vanishes, leaving Q^phi * Psi(0) = Q^phi.
                    Some(Factored::monomial(exps_scale(&exps_of(q), phi)))
                } else {
                    // Q vanishes, leaving the top coefficient times P^phi.
                    let lead = cyclotomic_coeffs(*order).last().cloned().expect("nonempty");
                    let mut f = Factored::monomial(exps_scale(&exps_of(p), phi));
                    f.coeff = lead;
                    Some(f)
                }
            }
            Factor::Other(p) if p.depends_on(v) => {
                let z = p.at_zero(v);
                if z.is_zero() {
                    None
                } else {
                    Some(factor_poly(&z, &[]))
                }
            }
            other => Some(Factored::factor(other.clone(), 1)),
        }
    }

    /// Ordering key for printing: factors touching earlier variables first.
    pub(crate) fn print_key(&self) -> (u8, [i64; 4], u32, IntPoly) {
        match self {
            Factor::Var(v) => (0, [0; 4], v.index() as u32, IntPoly::zero()),
            Factor::Cyclo { order, base } => {
                let key = [0, 1, 2, 3].map(|i| -(base[i].abs() as i64));
                (1, key, *order, IntPoly::zero())
            }
            Factor::Other(p) => (2, [0; 4], 0, p.clone()),
        }
    }
}

impl fmt::Display for Factor {
    /// Prints the factor with terms in increasing graded order, e.g. `1-s*x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly();
        let mut terms = p.graded_terms();
        terms.reverse();
        let mut s = String::new();
        IntPoly::fmt_terms(&terms, &mut s)?;
        f.write_str(&s)
    }
}

/// A product `coeff * X^mono * prod factors^e` with a Laurent monomial part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub coeff: BigInt,
    pub mono: Exps,
    pub factors: BTreeMap<Factor, u32>,
}

impl Factored {
    pub fn one() -> Factored {
        Factored {
            coeff: BigInt::one(),
            mono: [0; 4],
            factors: BTreeMap::new(),
        }
    }

    pub fn monomial(mono: Exps) -> Factored {
        Factored {
            mono,
            ..Factored::one()
        }
    }

    pub fn factor(f: Factor, e: u32) -> Factored {
        let mut out = Factored::one();
        out.push(f, e);
        out
    }

    pub fn push(&mut self, f: Factor, e: u32) {
        if e == 0 {
            return;
        }
        match f {
            Factor::Var(v) => self.mono[v.index()] += e as i32,
            f => *self.factors.entry(f).or_insert(0) += e,
        }
    }

    pub fn mul_assign(&mut self, other: &Factored) {
        self.coeff *= &other.coeff;
        self.mono = exps_add(&self.mono, &other.mono);
        for (f, &e) in &other.factors {
            self.push(f.clone(), e);
        }
    }

    pub fn pow(&self, e: u32) -> Factored {
        Factored {
            coeff: num_traits::pow::pow(self.coeff.clone(), e as usize),
            mono: exps_scale(&self.mono, e as i32),
            factors: self.factors.iter().map(|(f, &k)| (f.clone(), k * e)).collect(),
        }
    }

    /// Expands the product; the monomial part must be a true monomial.
    pub fn expand(&self) -> IntPoly {
        let (pos, neg) = exps_split(&self.mono);
        assert!(neg.is_one(), "expanding a Laurent product");
        let mut p = IntPoly::monomial(self.coeff.clone(), pos);
        for (f, &e) in &self.factors {
            p = p.mul(&f.poly().pow(e));
        }
        p
    }
}

fn is_canonical_base(base: &Exps) -> bool {
    base.iter().find(|&&e| e != 0).is_some_and(|&e| e > 0)
        && base.iter().fold(0i32, |g, &e| g.gcd(&e)) == 1
}

fn apply_images(e: &Exps, images: &[Exps; 4]) -> Exps {
    let mut out = [0; 4];
    for (v, img) in images.iter().enumerate() {
        out = exps_add(&out, &exps_scale(img, e[v]));
    }
    out
}

fn mono_pow(m: Mono, k: u32) -> Mono {
    let e = m.exps();
    Mono::new(e.map(|x| x * k))
}

/// `Q^n * w(P/Q)` for a univariate `w` of degree `n` and `P/Q = X^base`.
fn homogenize(coeffs: &[BigInt], base: &Exps) -> IntPoly {
    let (p, q) = exps_split(base);
    let n = coeffs.len().saturating_sub(1) as u32;
    IntPoly::from_terms(
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (mono_pow(p, i as u32).mul(mono_pow(q, n - i as u32)), c.clone())),
    )
}

/// Splits `base` into `(g, z)` with `base = g * z`, `z` canonical.
fn orient(base: &Exps) -> (i32, Exps) {
    let g = base.iter().fold(0i32, |g, &e| g.gcd(&e));
    let mut z = base.map(|e| e / g);
    let mut g = g;
    if z.iter().find(|&&e| e != 0).is_some_and(|&e| e < 0) {
        z = z.map(|e| -e);
        g = -g;
    }
    (g, z)
}

/// `Psi_d(X^m)` as a factored product, or `None` if it is zero (`d = 1`,
/// `m = 0`).
fn cyclotomic_at_monomial(d: u32, m: &Exps) -> Option<Factored> {
    if exps_is_zero(m) {
        let v = super::cyclotomic::cyclotomic_at_one(d);
        if v.is_zero() {
            return None;
        }
        let mut f = Factored::one();
        f.coeff = v;
        return Some(f);
    }
    let (g, z) = orient(m);
    let k = g.unsigned_abs();
    let mut out = Factored::one();
    let phi = euler_phi(d);
    if g < 0 {
        // Psi_d(1/w) = w^{-phi} Psi_d(w), with an extra sign for d = 1.
        out.mono = exps_scale(&z, -((phi * k) as i32));
        if d == 1 {
            out.coeff = -out.coeff;
        }
    }
    let base = cyclotomic_coeffs(d);
    let mut spread = vec![BigInt::zero(); (phi * k) as usize + 1];
    for (i, c) in base.iter().enumerate() {
        spread[i * k as usize] = c.clone();
    }
    let (_, q) = exps_split(&z);
    for e in divisors(d * k) {
        let psi = cyclotomic_coeffs(e);
        if let Some(rest) = dense::div_exact(&spread, &psi) {
            spread = rest;
            out.push(Factor::cyclo(e, z), 1);
            out.mono = exps_add(&out.mono, &exps_scale(&exps_of(q), -(euler_phi(e) as i32)));
        }
    }
    assert_eq!(spread.len(), 1, "cyclotomic substitution left a cofactor");
    out.coeff *= &spread[0];
    Some(out)
}

/// Writes `q` (no monomial content) as `X^shift * u(X^z)` with `z` canonical
/// and `u` having nonzero constant term. `None` if `q` is not a polynomial
/// in a single monomial.
fn collinear(q: &IntPoly) -> Option<(Exps, Vec<BigInt>)> {
    let terms = q.terms();
    let e0 = exps_of(terms[0].0);
    let mut dir: Option<Exps> = None;
    let mut ks = Vec::with_capacity(terms.len());
    for (m, _) in terms {
        let d = exps_add(&exps_of(*m), &exps_scale(&e0, -1));
        if exps_is_zero(&d) {
            ks.push(0i64);
            continue;
        }
        let z = *dir.get_or_insert_with(|| orient(&d).1);
        let i = z.iter().position(|&x| x != 0).expect("nonzero direction");
        if d[i] % z[i] != 0 {
            return None;
        }
        let k = d[i] / z[i];
        if exps_scale(&z, k) != d {
            return None;
        }
        ks.push(k as i64);
    }
    let z = dir?;
    let kmin = *ks.iter().min().expect("terms");
    let kmax = *ks.iter().max().expect("terms");
    let mut u = vec![BigInt::zero(); (kmax - kmin) as usize + 1];
    for ((_, c), k) in terms.iter().zip(ks) {
        u[(k - kmin) as usize] = c.clone();
    }
    Some((z, u))
}

/// Coefficient bound for the rational-root search.
const ROOT_SEARCH_LIMIT: u64 = 1 << 20;

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > ROOT_SEARCH_LIMIT {
        return None;
    }
    Some((1..=n).filter(|d| n % d == 0).collect())
}

/// Splits off linear factors `b*z - a` with rational roots `a/b`.
fn strip_linear(mut u: Vec<BigInt>) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut found = Vec::new();
    loop {
        if u.len() < 2 {
            return (found, u);
        }
        let (Some(num), Some(den)) = (small_divisors(&u[0]), small_divisors(u.last().unwrap()))
        else {
            return (found, u);
        };
        let mut hit = None;
        'search: for &b in &den {
            for &a in &num {
                if a.gcd(&b) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let lin = vec![BigInt::from(-(a as i64) * sign), BigInt::from(b)];
                    if let Some(rest) = dense::div_exact(&u, &lin) {
                        hit = Some((lin, rest));
                        break 'search;
                    }
                }
            }
        }
        match hit {
            Some((lin, rest)) => {
                found.push(lin);
                u = rest;
            }
            None => return (found, u),
        }
    }
}

/// Factors a primitive polynomial without monomial content that is a
/// polynomial in one monomial.
fn factor_collinear(z: &Exps, u: &[BigInt]) -> Vec<(Factor, u32)> {
    let deg = u.len() as u32 - 1;
    let (cyc, rest) = strip_cyclotomic(u, max_cyclotomic_index(deg));
    let mut out: Vec<(Factor, u32)> = cyc
        .into_iter()
        .map(|(k, e)| (Factor::cyclo(k, *z), e))
        .collect();
    let (lins, rest) = strip_linear(rest);
    let mut lin_counts: BTreeMap<IntPoly, u32> = BTreeMap::new();
    for lin in lins.iter().chain(std::iter::once(&rest)) {
        if lin.len() < 2 {
            continue;
        }
        let (_, p) = homogenize(lin, z).primitive();
        *lin_counts.entry(p).or_insert(0) += 1;
    }
    out.extend(lin_counts.into_iter().map(|(p, e)| (Factor::Other(p), e)));
    out
}

/// Splits a nonzero polynomial into its integer content, monomial content and
/// recognized factors. Polynomials in a single monomial are factored into
/// cyclotomic and rational-linear pieces; otherwise the `hints` are divided
/// out and what remains becomes one opaque factor.
pub fn factor_poly(p: &IntPoly, hints: &[Factor]) -> Factored {
    assert!(!p.is_zero(), "factoring the zero polynomial");
    let m = p.monomial_content();
    let q = p.div_mono(m).expect("monomial content divides");
    let mut out = Factored::monomial(exps_of(m));
    let mut pieces: Vec<(Factor, u32)> = Vec::new();
    let mut rest = q.clone();
    for h in hints {
        if matches!(h, Factor::Var(_)) || rest.num_terms() < 2 {
            continue;
        }
        let hp = h.poly();
        let mut count = 0;
        while let Some(r) = rest.div_exact(&hp) {
            rest = r;
            count += 1;
        }
        if count > 0 {
            pieces.push((h.clone(), count));
        }
    }
    if rest.num_terms() >= 2 {
        let (_, prim) = rest.primitive();
        match collinear(&prim) {
            Some((z, u)) => pieces.extend(factor_collinear(&z, &u)),
            None => pieces.push((Factor::Other(prim), 1)),
        }
    }
    // Leading terms multiply, which pins down the integer cofactor.
    let mut lead = BigInt::one();
    for (f, e) in &pieces {
        let fp = f.poly();
        let c = &fp.leading().expect("nonzero factor").1;
        lead *= num_traits::pow::pow(c.clone(), *e as usize);
    }
    let (qc, rem) = q.leading().expect("nonzero").1.div_rem(&lead);
    debug_assert!(rem.is_zero());
    out.coeff = qc;
    for (f, e) in pieces {
        out.push(f, e);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclotomic::cyclotomic;

    fn sx() -> Exps {
        [0, 1, 1, 0]
    }

    fn x() -> IntPoly {
        IntPoly::var(Var::X)
    }

    fn s() -> IntPoly {
        IntPoly::var(Var::S)
    }

    #[test]
    fn cyclo_factor_polys() {
        assert_eq!(Factor::cyclo(1, sx()).poly(), IntPoly::one().sub(&s().mul(&x())));
        // base t/s gives s - t
        let f = Factor::cyclo(1, [1, -1, 0, 0]);
        assert_eq!(f.poly(), s().sub(&IntPoly::var(Var::T)));
        assert_eq!(f.to_string(), "s-t");
        assert_eq!(Factor::cyclo(1, sx()).to_string(), "1-s*x");
        assert_eq!(Factor::cyclo(2, [0, 0, 1, 0]).to_string(), "1+x");
    }

    #[test]
    fn recognizes_products() {
        let p = cyclotomic(1)
            .pow(3)
            .mul(&cyclotomic(2))
            .mul(&x().pow(2))
            .scale(&BigInt::from(-6));
        let f = factor_poly(&p, &[]);
        assert_eq!(f.coeff, BigInt::from(-6));
        assert_eq!(f.mono, [0, 0, 2, 0]);
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn recognizes_multivariate_binomials() {
        let one_minus_sx = IntPoly::one().sub(&s().mul(&x()));
        let p = one_minus_sx.pow(4).mul(&s());
        let f = factor_poly(&p, &[]);
        assert_eq!(f.factors, BTreeMap::from([(Factor::cyclo(1, sx()), 4)]));
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn hints_and_opaque_rest() {
        let a = IntPoly::one().sub(&s().mul(&x()));
        let b = IntPoly::one().sub(&x());
        let other = s().add(&x()).add(&IntPoly::one());
        let p = a.mul(&b).mul(&other);
        let f = factor_poly(&p, &[Factor::cyclo(1, sx())]);
        assert_eq!(f.factors.get(&Factor::cyclo(1, sx())), Some(&1));
        // without a hint for 1 - x the rest stays one opaque factor
        let (_, rest) = b.mul(&other).primitive();
        assert_eq!(f.factors.get(&Factor::Other(rest)), Some(&1));
        assert_eq!(f.expand(), p);
        let g = factor_poly(&p, &[]);
        assert_eq!(g.factors.len(), 1);
        assert_eq!(g.expand(), p);
    }

    #[test]
    fn rational_linear_roots() {
        let p = IntPoly::from_i64_coeffs(Var::X, &[1, -2]).pow(2);
        let f = factor_poly(&p, &[]);
        assert_eq!(
            f.factors,
            BTreeMap::from([(Factor::Other(IntPoly::from_i64_coeffs(Var::X, &[1, -2])), 2)])
        );
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn substitution_images() {
        let xi = [0, 0, 1, 0];
        let mut images = crate::algebra::poly::identity_images();
        // 1 - s*x at s := 1 is 1 - x
        images[1] = [0; 4];
        let f = Factor::cyclo(1, sx()).substitute(&images).unwrap();
        assert_eq!(f.factors, BTreeMap::from([(Factor::cyclo(1, xi), 1)]));
        assert_eq!(f.expand(), cyclotomic(1));
        // 1 - x at x := 1 vanishes; 1 + x at x := 1 is 2
        let mut at_one = crate::algebra::poly::identity_images();
        at_one[2] = [0; 4];
        assert!(Factor::cyclo(1, xi).substitute(&at_one).is_none());
        assert_eq!(
            Factor::cyclo(2, xi).substitute(&at_one).unwrap().coeff,
            BigInt::from(2)
        );
        // 1 - x at x := x^2 is (1 - x)(1 + x)
        let mut sq = crate::algebra::poly::identity_images();
        sq[2] = [0, 0, 2, 0];
        let f = Factor::cyclo(1, xi).substitute(&sq).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(), IntPoly::from_i64_coeffs(Var::X, &[1, 0, -1]));
        // 1 - t at t := t/x is (x - t)/x
        let mut tx = crate::algebra::poly::identity_images();
        tx[0] = [1, 0, -1, 0];
        let f = Factor::cyclo(1, [1, 0, 0, 0]).substitute(&tx).unwrap();
        assert_eq!(f.mono, [0, 0, -1, 0]);
        let mut g = f.clone();
        g.mono = [0; 4];
        assert_eq!(g.expand(), x().sub(&IntPoly::var(Var::T)));
    }

    #[test]
    fn at_zero_images() {
        let f = Factor::cyclo(1, [1, -1, 0, 0]); // s - t
        assert_eq!(f.at_zero(Var::T).unwrap().expand(), s());
        assert_eq!(f.at_zero(Var::S).unwrap().expand(), IntPoly::var(Var::T).neg());
        assert!(Factor::Var(Var::T).at_zero(Var::T).is_none());
    }
}
