//! Anisotropic polygon counts `a(m, n)` (`m` = horizontal half-perimeter,
//! `n` = vertical half-perimeter) from a transfer matrix, and rational
//! reconstruction of the rows `H_n(x)`.

mod transfer;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{cyclotomic, factor_poly, IntPoly, RatFunc, Var};
use crate::polygon::RowProfile;

pub const GENERATOR_VERSION: &str = "transfer-1";
pub const DEFAULT_GUARD: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("a count overflowed 128 bits")]
    Overflow,
    #[error("a({m},{n}) is outside the computed window")]
    Incomplete { m: u32, n: u32 },
    #[error("reconstruction needs {need} series terms, got {have}")]
    InsufficientTerms { need: usize, have: usize },
    #[error("series disagrees with the rational fit at degree {degree}")]
    GuardMismatch { degree: usize },
    #[error("malformed table: {0}")]
    Format(String),
}

#[derive(Clone, Debug)]
pub struct Budget {
    pub deadline: Option<Instant>,
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            deadline: None,
            max_states: 5_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationParams {
    pub n_max: u32,
    pub m_max: u32,
    /// Keep only polygons with exactly this row profile (top row first).
    pub profile: Option<RowProfile>,
}

impl EnumerationParams {
    /// File-name-safe cache key.
    pub fn key(&self) -> String {
        let filter = match &self.profile {
            None => "all".to_string(),
            Some(p) => p.0.iter().map(u32::to_string).collect::<Vec<_>>().join("-"),
        };
        format!("n{}_m{}_{}", self.n_max, self.m_max, filter)
    }
}

/// Counts `a(m, n)` with per-row completeness: every `m <= max_m[n]` is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTable {
    counts: BTreeMap<(u32, u32), u128>,
    max_m: BTreeMap<u32, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub generator: String,
    pub params: EnumerationParams,
    /// `n -> largest m` known exactly.
    pub complete_to: BTreeMap<u32, u32>,
}

impl SeriesTable {
    /// `Some(count)` inside the complete window, `None` when unknown.
    pub fn get(&self, m: u32, n: u32) -> Option<u128> {
        if n == 0 || m == 0 {
            return Some(0);
        }
        match self.max_m.get(&n) {
            Some(&top) if m <= top => Some(self.counts.get(&(m, n)).copied().unwrap_or(0)),
            _ => None,
        }
    }

    pub fn complete_to(&self) -> &BTreeMap<u32, u32> {
        &self.max_m
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (u32, u32, u128)> + '_ {
        self.counts.iter().map(|(&(m, n), &c)| (m, n, c))
    }

    pub fn manifest(&self, params: &EnumerationParams) -> Manifest {
        Manifest {
            generator: GENERATOR_VERSION.into(),
            params: params.clone(),
            complete_to: self.max_m.clone(),
        }
    }

    /// `m,n,count` rows for every cell of the complete window, zeros included.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,n,count\n");
        for (&n, &top) in &self.max_m {
            for m in 1..=top {
                let c = self.counts.get(&(m, n)).copied().unwrap_or(0);
                writeln!(out, "{m},{n},{c}").expect("string write");
            }
        }
        out
    }

    pub fn from_csv(text: &str, manifest: &Manifest) -> Result<SeriesTable, EnumError> {
        let bad = |msg: String| EnumError::Format(msg);
        let mut counts = BTreeMap::new();
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some("m,n,count") {
            return Err(bad("missing header m,n,count".into()));
        }
        for (i, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let parts: Vec<&str> = line.trim().split(',').collect();
            let [m, n, c] = parts[..] else {
                return Err(bad(format!("line {}: expected three fields", i + 2)));
            };
            let parse = |s: &str| s.parse::<u128>().map_err(|e| bad(format!("line {}: {e}", i + 2)));
            let (m, n, c) = (parse(m)? as u32, parse(n)? as u32, parse(c)?);
            if c != 0 {
                counts.insert((m, n), c);
            }
        }
        Ok(SeriesTable {
            counts,
            max_m: manifest.complete_to.clone(),
        })
    }
}

/// Exact counts for `n <= n_max`, `m <= m_max`. A polygon with `2n`
/// vertical bonds spans at most `n` rows, so a strip of height `n_max`
/// holds all of them; with a profile the strip height is the profile length.
pub fn enumerate(params: &EnumerationParams, budget: &Budget) -> Result<SeriesTable, EnumError> {
    let (rows, n_max) = match &params.profile {
        Some(p) => (p.rows(), params.n_max.min(p.total() / 2)),
        None => (params.n_max as usize, params.n_max),
    };
    let mut strip = transfer::Strip::new(rows, params.profile.as_ref());
    let dims = transfer::Weights {
        v_dim: 2 * n_max as usize + 1,
        m_dim: params.m_max as usize + 1,
    };
    let totals = if rows == 0 {
        dims_zero(&dims)
    } else {
        transfer::run(&mut strip, &dims, budget)?
    };
    let mut counts = BTreeMap::new();
    for v in (0..dims.v_dim).step_by(2) {
        for m in 0..dims.m_dim {
            let c = totals[v * dims.m_dim + m];
            if c != 0 {
                counts.insert((m as u32, v as u32 / 2), c);
            }
        }
    }
    let max_m = (1..=params.n_max).map(|n| (n, params.m_max)).collect();
    Ok(SeriesTable { counts, max_m })
}

fn dims_zero(dims: &transfer::Weights) -> Vec<u128> {
    vec![0; dims.v_dim * dims.m_dim]
}

/// `[x^0 .. x^degree] H_n(x)`.
pub fn h_series(table: &SeriesTable, n: u32, degree: u32) -> Result<Vec<BigInt>, EnumError> {
    (0..=degree)
        .map(|m| {
            table
                .get(m, n)
                .map(BigInt::from)
                .ok_or(EnumError::Incomplete { m, n })
        })
        .collect()
}

/// `prod_{k=1}^{ceil(n/3)} Psi_k(x)^{2n-6k+5}`.
pub fn bound_bn(n: u32) -> IntPoly {
    assert!(n >= 1, "n must be positive");
    (1..=n.div_ceil(3)).fold(IntPoly::one(), |acc, k| {
        acc.mul(&cyclotomic(k).pow(2 * n + 5 - 6 * k))
    })
}

/// Fits `N / B` with `deg N <= deg B` to the series and checks the fit on
/// every further coefficient up to degree `2 deg B + guard`.
pub fn reconstruct(series: &[BigInt], bound: &IntPoly, guard: usize) -> Result<RatFunc, EnumError> {
    let b = bound
        .univariate_coeffs(Var::X)
        .expect("bound is a polynomial in x");
    let d = b.len() - 1;
    let need = 2 * d + guard + 1;
    if series.len() < need {
        return Err(EnumError::InsufficientTerms { need, have: series.len() });
    }
    let product: Vec<BigInt> = (0..need)
        .map(|i| {
            (0..=i.min(d))
                .map(|j| &b[j] * &series[i - j])
                .fold(BigInt::zero(), |acc, t| acc + t)
        })
        .collect();
    if let Some(degree) = (d + 1..need).find(|&i| !product[i].is_zero()) {
        return Err(EnumError::GuardMismatch { degree });
    }
    let numerator = IntPoly::from_coeffs(Var::X, &product[..=d]);
    Ok(RatFunc::from_num_den(numerator, factor_poly(bound, &[])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rf;

    #[test]
    fn small_counts() {
        let params = EnumerationParams { n_max: 4, m_max: 4, profile: None };
        let t = enumerate(&params, &Budget::default()).unwrap();
        assert_eq!(t.get(1, 1), Some(1));
        assert_eq!(t.get(2, 2), Some(5));
        let by_perimeter = |s: u32| (1..s).map(|m| t.get(m, s - m).unwrap()).sum::<u128>();
        assert_eq!(by_perimeter(4), 7);
        assert_eq!(by_perimeter(5), 28);
        assert_eq!(t.get(5, 1), None);
        for m in 1..=4 {
            for n in 1..=4 {
                assert_eq!(t.get(m, n), t.get(n, m));
            }
        }
    }

    #[test]
    fn first_rows() {
        let params = EnumerationParams { n_max: 2, m_max: 8, profile: None };
        let t = enumerate(&params, &Budget::default()).unwrap();
        let ones: Vec<BigInt> = (0..=8).map(|m| BigInt::from((m > 0) as u8)).collect();
        assert_eq!(h_series(&t, 1, 8).unwrap(), ones);
        assert_eq!(h_series(&t, 2, 2).unwrap(), vec![0.into(), 1.into(), 5.into()]);
        assert!(h_series(&t, 0, 8).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn bounds() {
        assert_eq!(bound_bn(1), cyclotomic(1));
        assert_eq!(bound_bn(2), cyclotomic(1).pow(3));
        assert_eq!(bound_bn(5), cyclotomic(1).pow(9).mul(&cyclotomic(2).pow(3)));
    }

    #[test]
    fn reconstruct_simple() {
        let series: Vec<BigInt> = (0..=12).map(|m| BigInt::from((m > 0) as u8)).collect();
        assert_eq!(reconstruct(&series, &bound_bn(1), 10).unwrap(), rf("x/(1-x)"));
        let zero = vec![BigInt::zero(); 20];
        assert!(reconstruct(&zero, &bound_bn(2), 10).unwrap().is_zero());
        let mut off = series.clone();
        off[11] += 1;
        assert_eq!(
            reconstruct(&off, &bound_bn(1), 10),
            Err(EnumError::GuardMismatch { degree: 11 })
        );
        assert!(matches!(
            reconstruct(&series[..5], &bound_bn(1), 10),
            Err(EnumError::InsufficientTerms { .. })
        ));
    }

    #[test]
    fn csv_round_trip() {
        let params = EnumerationParams { n_max: 3, m_max: 5, profile: None };
        let t = enumerate(&params, &Budget::default()).unwrap();
        let back = SeriesTable::from_csv(&t.to_csv(), &t.manifest(&params)).unwrap();
        assert_eq!(back, t);
    }
}
