//! Bookkeeping of the denominators `D_n` across `n`: divisibility against
//! the bound `B_n`, first appearances of each `Psi_k`, and the solvability
//! report built from them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{cyclotomic_factor, euler_phi, IntPoly};

const PUBLISHED: &str = include_str!("../../tests/fixtures/published_denominators.json");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LedgerError {
    #[error("D_{n} is not a product of cyclotomic polynomials")]
    NotCyclotomic { n: u32 },
    #[error("D_{n} has Psi_{k}^{exponent}, exceeding the bound exponent {bound}")]
    ExceedsBound { n: u32, k: u32, exponent: u32, bound: u32 },
    #[error("ledger has no record for n = {n}")]
    Gap { n: u32 },
    #[error("malformed denominator table: {0}")]
    Format(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Rebuilt from enumerated series against the bound.
    Reconstructed,
    /// Taken from the published table.
    Published,
}

/// `k -> exponent of Psi_k`.
pub type Exponents = BTreeMap<u32, u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerRecord {
    pub n: u32,
    pub source: Source,
    pub denominator: Exponents,
    pub bound: Exponents,
    /// `B_n / D_n`.
    pub slack: Exponents,
}

/// Exponents of `B_n = prod_{k=1}^{ceil(n/3)} Psi_k^{2n-6k+5}`.
pub fn bound_exponents(n: u32) -> Exponents {
    (1..=n.div_ceil(3)).map(|k| (k, 2 * n + 5 - 6 * k)).collect()
}

pub fn degree(e: &Exponents) -> u32 {
    e.iter().map(|(&k, &a)| euler_phi(k) * a).sum()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorLedger {
    records: BTreeMap<u32, LedgerRecord>,
}

impl FactorLedger {
    pub fn new() -> FactorLedger {
        FactorLedger::default()
    }

    /// Records `D_n`, replacing any earlier record for `n`.
    pub fn add(&mut self, n: u32, d_n: &IntPoly, source: Source) -> Result<&LedgerRecord, LedgerError> {
        let f = cyclotomic_factor(d_n);
        if !f.is_pure() {
            return Err(LedgerError::NotCyclotomic { n });
        }
        let bound = bound_exponents(n);
        let mut slack = Exponents::new();
        for (&k, &e) in &f.exponents {
            let b = bound.get(&k).copied().unwrap_or(0);
            if e > b {
                return Err(LedgerError::ExceedsBound { n, k, exponent: e, bound: b });
            }
        }
        for (&k, &b) in &bound {
            let e = f.exponent(k);
            if b > e {
                slack.insert(k, b - e);
            }
        }
        let record = LedgerRecord {
            n,
            source,
            denominator: f.exponents,
            bound,
            slack,
        };
        self.records.insert(n, record);
        Ok(&self.records[&n])
    }

    pub fn get(&self, n: u32) -> Option<&LedgerRecord> {
        self.records.get(&n)
    }

    pub fn records(&self) -> impl Iterator<Item = &LedgerRecord> {
        self.records.values()
    }

    /// `k -> smallest recorded n with Psi_k | D_n`.
    pub fn first_appearance(&self) -> BTreeMap<u32, u32> {
        let mut out = BTreeMap::new();
        for r in self.records.values() {
            for &k in r.denominator.keys() {
                out.entry(k).or_insert(r.n);
            }
        }
        out
    }
}

/// The published `D_1 .. D_10` as polynomials.
pub fn published_denominators() -> Result<BTreeMap<u32, IntPoly>, LedgerError> {
    #[derive(Deserialize)]
    struct Table {
        denominators: BTreeMap<String, String>,
    }
    let bad = |e: String| LedgerError::Format(e);
    let table: Table = serde_json::from_str(PUBLISHED).map_err(|e| bad(e.to_string()))?;
    table
        .denominators
        .iter()
        .map(|(n, d)| {
            let n: u32 = n.parse().map_err(|_| bad(format!("bad index {n}")))?;
            let d: IntPoly = d.parse().map_err(|e| bad(format!("D_{n}: {e}")))?;
            Ok((n, d))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub records: Vec<LedgerRecord>,
    /// `n -> number of distinct Psi_k dividing D_n`.
    pub distinct_factor_counts: BTreeMap<u32, usize>,
    pub bound_degrees: BTreeMap<u32, u32>,
    pub first_appearance: BTreeMap<u32, u32>,
    /// `Psi_k` at `n = 3k - 2` for `k != 2`, `Psi_2` at `n = 5`, for the
    /// `k` whose predicted first `n` lies in the ledger range.
    pub predicted_first_appearance: BTreeMap<u32, u32>,
    pub first_appearance_as_predicted: bool,
    pub verdict: String,
}

fn predicted_first(k: u32) -> u32 {
    if k == 2 {
        5
    } else {
        3 * k - 2
    }
}

/// Summarizes a ledger covering `n = 1..=N` without gaps.
pub fn solvability_report(ledger: &FactorLedger) -> Result<Report, LedgerError> {
    let top = ledger.records.keys().max().copied().ok_or(LedgerError::Gap { n: 1 })?;
    if let Some(n) = (1..=top).find(|n| !ledger.records.contains_key(n)) {
        return Err(LedgerError::Gap { n });
    }
    let first_appearance = ledger.first_appearance();
    let predicted: BTreeMap<u32, u32> = (1..=top)
        .map(|k| (k, predicted_first(k)))
        .filter(|&(_, n)| n <= top)
        .collect();
    let as_predicted = predicted == first_appearance;
    let distinct: BTreeMap<u32, usize> = ledger
        .records
        .values()
        .map(|r| (r.n, r.denominator.len()))
        .collect();
    let bound_degrees = (1..=top).map(|n| (n, degree(&bound_exponents(n)))).collect();
    let last = distinct[&top];
    let verdict = if as_predicted && last > 1 {
        format!(
            "distinct denominator factors rise from {} at n=1 to {} at n={}; each new Psi_k enters at \
             n=3k-2 (Psi_2 at n=5), so the poles of H_n on the unit circle keep accumulating as n grows. \
             A D-finite series has only finitely many accumulation points of such poles, so this growth \
             is the signature of a non-D-finite generating function.",
            distinct[&1], last, top
        )
    } else if as_predicted {
        format!(
            "all D_n for n<={top} are powers of a single factor; the range is too short to show growth \
             in the number of distinct factors."
        )
    } else {
        "first appearances differ from the n=3k-2 pattern; see first_appearance.".to_string()
    };
    Ok(Report {
        records: ledger.records.values().cloned().collect(),
        distinct_factor_counts: distinct,
        bound_degrees,
        first_appearance,
        predicted_first_appearance: predicted,
        first_appearance_as_predicted: as_predicted,
        verdict,
    })
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_stable_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("value prints");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclotomic;

    fn psi(k: u32, e: u32) -> IntPoly {
        cyclotomic(k).pow(e)
    }

    #[test]
    fn slack_and_violation() {
        let mut l = FactorLedger::new();
        let r = l.add(5, &psi(1, 9).mul(&psi(2, 2)), Source::Published).unwrap();
        assert_eq!(r.slack, BTreeMap::from([(2, 1)]));
        assert!(l.add(1, &psi(1, 1), Source::Published).unwrap().slack.is_empty());
        assert_eq!(
            l.add(2, &psi(1, 4), Source::Published),
            Err(LedgerError::ExceedsBound { n: 2, k: 1, exponent: 4, bound: 3 })
        );
        let not_cyclo = IntPoly::from_i64_coeffs(crate::algebra::Var::X, &[1, 2]);
        assert_eq!(l.add(3, &not_cyclo, Source::Published), Err(LedgerError::NotCyclotomic { n: 3 }));
    }

    #[test]
    fn published_ledger_report() {
        let table = published_denominators().unwrap();
        let mut l = FactorLedger::new();
        for (&n, d) in table.range(..=7) {
            l.add(n, d, Source::Published).unwrap();
        }
        assert_eq!(l.first_appearance(), BTreeMap::from([(1, 1), (2, 5), (3, 7)]));
        let report = solvability_report(&l).unwrap();
        assert!(report.first_appearance_as_predicted);
        assert_eq!(to_stable_json(&report), to_stable_json(&solvability_report(&l).unwrap()));

        let mut short = FactorLedger::new();
        for (&n, d) in table.range(..=4) {
            short.add(n, d, Source::Published).unwrap();
        }
        let r = solvability_report(&short).unwrap();
        assert_eq!(r.distinct_factor_counts.values().copied().collect::<Vec<_>>(), [1, 1, 1, 1]);
        assert_eq!(solvability_report(&FactorLedger::new()), Err(LedgerError::Gap { n: 1 }));
    }
}
