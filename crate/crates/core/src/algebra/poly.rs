use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mono::{fmt_mono, Exps, Mono, Var};

/// Sparse polynomial over the integers in the variables t, s, x, y.
///
/// Terms are kept sorted by decreasing monomial (lexicographic, t > s > x > y)
/// with no zero coefficients, so the zero polynomial has no terms and
/// structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IntPoly {
    terms: Vec<(Mono, BigInt)>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, Mono::ONE)
    }

    pub fn monomial(c: impl Into<BigInt>, m: Mono) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            IntPoly {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(1, Mono::var(v, 1))
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Mono, C)>,
        C: Into<BigInt>,
    {
        let mut acc: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c.into();
        }
        Self::from_sorted_map(acc)
    }

    fn from_sorted_map(acc: BTreeMap<Mono, BigInt>) -> Self {
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        IntPoly { terms }
    }

    /// Wraps terms already in descending monomial order with nonzero
    /// coefficients and no repeats.
    pub(crate) fn from_sorted_terms(terms: Vec<(Mono, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        IntPoly { terms }
    }

    fn from_hash_map(acc: HashMap<Mono, BigInt>) -> Self {
        let mut terms: Vec<(Mono, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        IntPoly { terms }
    }

    /// Univariate polynomial in `v` from ascending coefficients.
    pub fn from_coeffs(v: Var, coeffs: &[BigInt]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Mono::var(v, i as u32), c.clone())),
        )
    }

    pub fn from_i64_coeffs(v: Var, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (Mono::var(v, i as u32), c)),
        )
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant value, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, BigInt)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: Mono) -> BigInt {
        self.terms
            .binary_search_by(|(tm, _)| m.cmp(tm))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(Mono::ONE)
    }

    /// Degree in `v`; `None` for the zero polynomial.
    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).max()
    }

    pub fn min_degree(&self, v: Var) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.depends_on(v))
            .collect()
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.iter().map(|(m, _)| *m);
        match it.next() {
            None => Mono::ONE,
            Some(first) => it.fold(first, |a, b| a.gcd(b)),
        }
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((*mb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        IntPoly { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: Mono) -> Self {
        IntPoly {
            terms: self.terms.iter().map(|(tm, c)| (tm.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = &small.terms[0];
            return IntPoly {
                terms: big.terms.iter().map(|(bm, bc)| (bm.mul(*m), bc * c)).collect(),
            };
        }
        if let Some(p) = super::modmul::mul_multimodular(small, big) {
            return p;
        }
        let mut acc: HashMap<Mono, BigInt> =
            HashMap::with_capacity(big.terms.len() + small.terms.len() * 4);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let prod = ca * cb;
                acc.entry(ma.mul(*mb))
                    .and_modify(|e| *e += &prod)
                    .or_insert(prod);
            }
        }
        Self::from_hash_map(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Divides every coefficient by `c`; `None` unless all are divisible.
    pub fn div_scalar(&self, c: &BigInt) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, a) in &self.terms {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.push((*m, q));
        }
        Some(IntPoly { terms })
    }

    /// Divides every term by the monomial `m`; `None` unless it divides all.
    pub fn div_mono(&self, m: Mono) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (tm, c) in &self.terms {
            terms.push((m.div_into(*tm)?, c.clone()));
        }
        Some(IntPoly { terms })
    }

    /// Exact multivariate division. Returns the quotient when `divisor`
    /// divides `self` over the integers, otherwise `None`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading()?.clone();
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.terms.len() == 1 {
            return self.div_mono(lm)?.div_scalar(&lc);
        }
        // Cheap necessary conditions before running the full division.
        for v in Var::ALL {
            if divisor.degree(v) > self.degree(v) {
                return None;
            }
        }
        let mut rem: BTreeMap<Mono, BigInt> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Mono, BigInt)> = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = lm.div_into(m)?;
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (dm, dc) in divisor.terms.iter().skip(1) {
                let key = dm.mul(qm);
                let delta = &qc * dc;
                match rem.get_mut(&key) {
                    Some(e) => {
                        *e -= &delta;
                        if e.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(IntPoly { terms: quot })
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                terms.push((m.with_exp(v, e - 1), c * BigInt::from(e)));
            }
        }
        Self::from_terms(terms)
    }

    /// Coefficients with respect to `v`, in ascending powers; each entry is a
    /// polynomial free of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<IntPoly> {
        let deg = match self.degree(v) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut buckets: Vec<Vec<(Mono, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.with_exp(v, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(IntPoly::from_terms)
            .collect()
    }

    /// Substitutes `v := 0`.
    pub fn at_zero(&self, v: Var) -> Self {
        IntPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == 0)
                .cloned()
                .collect(),
        }
    }

    /// Substitutes `v := M` for a Laurent monomial `M`. The result is
    /// `(p, shift)` with the true value `p * X^shift`, where `shift` has no
    /// positive entries and `p` is an ordinary polynomial.
    pub fn subst_mono(&self, v: Var, m: &Exps) -> (IntPoly, Exps) {
        let mut images = identity_images();
        images[v.index()] = *m;
        self.subst_all(&images)
    }

    /// Simultaneous monomial substitution: variable `i` becomes the Laurent
    /// monomial `images[i]`. Same `(p, shift)` convention as [`subst_mono`].
    ///
    /// [`subst_mono`]: IntPoly::subst_mono
    pub fn subst_all(&self, images: &[Exps; 4]) -> (IntPoly, Exps) {
        let mut raw: Vec<(Exps, BigInt)> = Vec::with_capacity(self.terms.len());
        let mut low: Exps = [0; 4];
        for (tm, c) in &self.terms {
            let e = tm.exps();
            let mut ne: Exps = [0; 4];
            for (v, img) in images.iter().enumerate() {
                let k = e[v] as i32;
                if k == 0 {
                    continue;
                }
                for i in 0..4 {
                    ne[i] += k * img[i];
                }
            }
            for i in 0..4 {
                low[i] = low[i].min(ne[i]);
            }
            raw.push((ne, c.clone()));
        }
        let poly = IntPoly::from_terms(raw.into_iter().map(|(e, c)| {
            let shifted = [
                (e[0] - low[0]) as u32,
                (e[1] - low[1]) as u32,
                (e[2] - low[2]) as u32,
                (e[3] - low[3]) as u32,
            ];
            (Mono::new(shifted), c)
        }));
        (poly, low)
    }

    /// Evaluates a polynomial in `v` alone at an integer point.
    pub fn eval_univariate(&self, v: Var, at: &BigInt) -> Option<BigInt> {
        if self
            .terms
            .iter()
            .any(|(m, _)| m.exps().iter().sum::<u32>() != m.exp(v))
        {
            return None;
        }
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            acc += c * num_traits::pow::pow(at.clone(), m.exp(v) as usize);
        }
        Some(acc)
    }

    /// Ascending coefficient vector of a polynomial in `v` alone.
    pub fn univariate_coeffs(&self, v: Var) -> Option<Vec<BigInt>> {
        let deg = self.degree(v).unwrap_or(0) as usize;
        let mut out = vec![BigInt::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            if m.total_degree() != m.exp(v) {
                return None;
            }
            out[m.exp(v) as usize] = c.clone();
        }
        Some(out)
    }

    /// Drops terms whose exponent in any variable exceeds `bounds`.
    pub fn truncate(&self, bounds: &[u32; 4]) -> Self {
        IntPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| {
                    let e = m.exps();
                    (0..4).all(|i| e[i] <= bounds[i])
                })
                .cloned()
                .collect(),
        }
    }

    /// Product truncated to the box `bounds`, without forming the full product.
    pub fn mul_truncated(&self, other: &Self, bounds: &[u32; 4]) -> Self {
        let mut acc: HashMap<Mono, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            let ea = ma.exps();
            for (mb, cb) in &other.terms {
                let eb = mb.exps();
                if (0..4).any(|i| ea[i] + eb[i] > bounds[i]) {
                    continue;
                }
                let prod = ca * cb;
                acc.entry(ma.mul(*mb))
                    .and_modify(|e| *e += &prod)
                    .or_insert(prod);
            }
        }
        Self::from_hash_map(acc)
    }

    /// Sign-normalized primitive part: content removed and the term that comes
    /// first in graded order (lowest total degree) made positive.
    pub fn primitive(&self) -> (BigInt, IntPoly) {
        if self.is_zero() {
            return (BigInt::zero(), Self::zero());
        }
        let mut g = self.content();
        if self.lowest_graded().1.is_negative() {
            g = -g;
        }
        (g.clone(), self.div_scalar(&g).expect("content divides"))
    }

    /// The term with the smallest graded key.
    pub fn lowest_graded(&self) -> &(Mono, BigInt) {
        self.terms
            .iter()
            .min_by_key(|(m, _)| m.graded_key())
            .expect("nonzero polynomial")
    }

    /// Terms ordered by decreasing graded key (total degree, then lex).
    pub fn graded_terms(&self) -> Vec<(Mono, BigInt)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| b.0.graded_key().cmp(&a.0.graded_key()));
        t
    }

    pub(crate) fn fmt_terms(
        terms: &[(Mono, BigInt)],
        f: &mut impl fmt::Write,
    ) -> fmt::Result {
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_char('-')?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                fmt_mono(*m, f)?;
            }
        }
        Ok(())
    }
}

/// The substitution that leaves every variable alone.
pub fn identity_images() -> [Exps; 4] {
    let mut m = [[0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

impl fmt::Display for IntPoly {
    /// Graded order, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        IntPoly::fmt_terms(&self.graded_terms(), f)
    }
}
