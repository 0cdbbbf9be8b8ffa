//! Multi-modular dense multiplication for large sparse products.
//!
//! Both factors are laid out in the box of exponents their product can
//! reach, the product is accumulated modulo several 31-bit primes, and the
//! integer coefficients are rebuilt by Garner's mixed-radix CRT.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::mono::{Mono, Var};
use super::poly::IntPoly;

const MAX_CELLS: usize = 1 << 20;
const MIN_WORK: usize = 1 << 14;
const PRIME_COUNT: usize = 64;

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let is_prime = |n: u64| (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        ((1u64 << 30)..(1u64 << 31))
            .rev()
            .filter(|&n| n % 2 == 1 && is_prime(n))
            .take(PRIME_COUNT)
            .collect()
    })
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn residue(c: &BigInt, p: u64) -> u64 {
    let r = c
        .magnitude()
        .to_u32_digits()
        .iter()
        .rev()
        .fold(0u64, |r, &d| ((r << 32) | d as u64) % p);
    if c.is_negative() && r != 0 {
        p - r
    } else {
        r
    }
}

/// `a * b` when the product box is small enough and the work large enough
/// to be worth it; `None` sends the caller to the sparse path.
pub(crate) fn mul_multimodular(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let (ta, tb) = (a.terms(), b.terms());
    if ta.len().saturating_mul(tb.len()) < MIN_WORK {
        return None;
    }
    let mut dims = [0usize; 4];
    for (i, d) in dims.iter_mut().enumerate() {
        let v = Var::ALL[i];
        *d = (a.degree(v)? + b.degree(v)? + 1) as usize;
    }
    let cells = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d))?;
    if cells > MAX_CELLS {
        return None;
    }
    let strides = [dims[1] * dims[2] * dims[3], dims[2] * dims[3], dims[3], 1];
    let index = |m: &Mono| -> usize {
        m.exps()
            .iter()
            .zip(strides)
            .map(|(&e, s)| e as usize * s)
            .sum()
    };

    let max_bits = |t: &[(Mono, BigInt)]| t.iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
    let count_bits = u64::BITS - (ta.len().min(tb.len()) as u64).leading_zeros();
    // |coefficient| < 2^(bits_a + bits_b + count_bits); one more bit for sign.
    let needed = max_bits(ta) + max_bits(tb) + count_bits as u64 + 1;
    let k = needed.div_ceil(30) as usize;
    if k > PRIME_COUNT {
        return None;
    }
    let ps = &primes()[..k];

    let ia: Vec<usize> = ta.iter().map(|(m, _)| index(m)).collect();
    let ib: Vec<usize> = tb.iter().map(|(m, _)| index(m)).collect();
    let mut residues = vec![0u32; cells * k];
    let mut acc = vec![0u128; cells];
    for (j, &p) in ps.iter().enumerate() {
        let ra: Vec<u64> = ta.iter().map(|(_, c)| residue(c, p)).collect();
        let rb: Vec<u64> = tb.iter().map(|(_, c)| residue(c, p)).collect();
        acc.iter_mut().for_each(|c| *c = 0);
        for (&xa, &ca) in ia.iter().zip(&ra) {
            for (&xb, &cb) in ib.iter().zip(&rb) {
                acc[xa + xb] += (ca * cb) as u128;
            }
        }
        for (cell, &v) in acc.iter().enumerate() {
            residues[cell * k + j] = (v % p as u128) as u32;
        }
    }

    // inverse[i][j] = p_j^{-1} mod p_i for j < i.
    let inverse: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..i).map(|j| pow_mod(ps[j], ps[i] - 2, ps[i])).collect())
        .collect();
    let modulus: BigInt = ps.iter().fold(BigInt::from(1), |m, &p| m * p);
    let half = &modulus >> 1;

    let mut terms = Vec::new();
    let mut digits = vec![0u64; k];
    for cell in (0..cells).rev() {
        let r = &residues[cell * k..(cell + 1) * k];
        if r.iter().all(|&x| x == 0) {
            continue;
        }
        for i in 0..k {
            let p = ps[i];
            let mut v = r[i] as u64;
            for j in 0..i {
                v = (v + p - digits[j] % p) % p * inverse[i][j] % p;
            }
            digits[i] = v;
        }
        let mut value = BigInt::from(digits[k - 1]);
        for i in (0..k - 1).rev() {
            value = value * ps[i] + digits[i];
        }
        if value > half {
            value -= &modulus;
        }
        if value.is_zero() {
            continue;
        }
        let mut exps = [0u32; 4];
        let mut rest = cell;
        for (e, s) in exps.iter_mut().zip(strides) {
            *e = (rest / s) as u32;
            rest %= s;
        }
        terms.push((Mono::new(exps), value));
    }
    Some(IntPoly::from_sorted_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn naive(a: &IntPoly, b: &IntPoly) -> IntPoly {
        let mut acc: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                *acc.entry(ma.mul(*mb)).or_default() += ca * cb;
            }
        }
        IntPoly::from_terms(acc)
    }

    fn sample(seed: u64, n: usize, big: bool) -> IntPoly {
        let mut state = seed;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        IntPoly::from_terms((0..n).map(|_| {
            let m = Mono::new([0, (next() % 20) as u32, (next() % 60) as u32, 0]);
            let mut c = BigInt::from(next() as i64 - (1 << 30));
            if big {
                c = c.pow(5) - BigInt::from(next());
            }
            (m, c)
        }))
    }

    #[test]
    fn matches_naive_product() {
        for (seed, big) in [(1, false), (2, true), (3, true)] {
            let a = sample(seed, 300, big);
            let b = sample(seed + 10, 200, big);
            let fast = mul_multimodular(&a, &b).expect("box is small");
            assert_eq!(fast, naive(&a, &b));
        }
    }

    #[test]
    fn cancellation_to_zero() {
        let a = sample(5, 300, true);
        let b = sample(6, 100, true);
        let prod = mul_multimodular(&a, &b).unwrap();
        let neg = mul_multimodular(&a.neg(), &b).unwrap();
        assert!(prod.add(&neg).is_zero());
    }
}
