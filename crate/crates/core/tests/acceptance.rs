//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero on any unexpected outcome. Pass `--stretch` to also
//! reconstruct `D_7`.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use haruspex_core::algebra::{cyclotomic, rf, IntPoly, RatFunc, Var};
use haruspex_core::diagnostics::{published_denominators, FactorLedger, Source};
use haruspex_core::enumerator::{
    bound_bn, enumerate, h_series, reconstruct, Budget, EnumerationParams, DEFAULT_GUARD,
};
use haruspex_core::haruspicy::{decompose, duplicates, reduce_minimal, reduction_outcomes, PageDecomposition};
use haruspex_core::polygon::{generate_all, Orientation, Polygon, RowProfile};
use haruspex_core::twofourtwo::blocks::{brute_blocks, census_poly};
use haruspex_core::twofourtwo::coefficients::{coefficients_c, coefficients_chat};
use haruspex_core::twofourtwo::recurrence::{pk_check, psi_multiplicity, Recurrence};
use haruspex_core::twofourtwo::t_hat;

/// Outcome of one criterion: a verdict line, plus whether the outcome is
/// the expected one (a known, documented discrepancy still counts).
struct Outcome {
    pass: bool,
    expected: bool,
    detail: String,
}

impl Outcome {
    fn of(pass: bool, detail: String) -> Outcome {
        Outcome { pass, expected: pass, detail }
    }
}

fn psi_product(exps: &[(u32, u32)]) -> IntPoly {
    exps.iter()
        .fold(IntPoly::one(), |acc, &(k, e)| acc.mul(&cyclotomic(k).pow(e)))
}

fn reconstruct_hn(max_n: u32) -> BTreeMap<u32, RatFunc> {
    let m_max = 2 * bound_bn(max_n).degree(Var::X).unwrap() + DEFAULT_GUARD as u32;
    let params = EnumerationParams { n_max: max_n, m_max, profile: None };
    let table = enumerate(&params, &Budget { max_states: 50_000_000, ..Budget::default() })
        .expect("enumeration within budget");
    (1..=max_n)
        .map(|n| {
            let bound = bound_bn(n);
            let need = 2 * bound.degree(Var::X).unwrap() + DEFAULT_GUARD as u32;
            let series = h_series(&table, n, need).expect("series long enough");
            (n, reconstruct(&series, &bound, DEFAULT_GUARD).expect("rational fit"))
        })
        .collect()
}

fn criterion_1(h: &BTreeMap<u32, RatFunc>) -> Outcome {
    let table = [
        vec![(1, 1)],
        vec![(1, 3)],
        vec![(1, 5)],
        vec![(1, 7)],
        vec![(1, 9), (2, 2)],
        vec![(1, 11), (2, 4)],
        vec![(1, 13), (2, 6), (3, 1)],
    ];
    let mut wrong = Vec::new();
    for (&n, hn) in h {
        if hn.den_poly() != psi_product(&table[n as usize - 1]) {
            wrong.push(n);
        }
    }
    Outcome::of(wrong.is_empty(), format!("D_1..D_{} reproduced; mismatches at {wrong:?}", h.len()))
}

fn criterion_2(h: &BTreeMap<u32, RatFunc>) -> Outcome {
    let mut ledger = FactorLedger::new();
    let mut ok = true;
    let mut slacks = Vec::new();
    for (&n, hn) in h {
        match ledger.add(n, &hn.den_poly(), Source::Reconstructed) {
            Ok(r) => {
                if (n == 5 || n == 6) && r.slack != BTreeMap::from([(2, 1)]) {
                    ok = false;
                }
                slacks.push(format!("n={n}:{:?}", r.slack));
            }
            Err(e) => {
                ok = false;
                slacks.push(format!("n={n}: {e}"));
            }
        }
    }
    Outcome::of(ok, format!("D_n | B_n; slack {}", slacks.join(" ")))
}

fn divides(den: &RatFunc, target: &RatFunc) -> bool {
    target.div(den).map(|q| q.den().factors().is_empty()).unwrap_or(false)
}

fn criterion_3() -> Outcome {
    let chat = coefficients_chat().expect("decomposition at s = 1").c;
    let expected_chat = [
        "-2*x^3*(1+x)*(2*x^2+1)/(1-x)^6",
        "4*(1+x)*(x^2+1)*x^3/(1-x)^6",
        "2*x^2*(1+x)*(2*x^2+x+1)/(1-x)^5",
        "x^2*(1+x)*(2*x+1)/(1-x)^4",
        "(1+x)*(x^2+x+1)/(3*(1-x)^3)",
        "(x^2+2*x+3)/(12*(1-x)^2)",
        "(x+3)/(60*(1-x))",
        "1/360",
        "-2*x^3*(1+x)/(1-x)^6",
    ];
    let chat_ok = chat.iter().zip(expected_chat).all(|(c, e)| *c == rf(e));

    let c = coefficients_c().expect("decomposition in t").c;
    let c8_ok = c[8] == rf("-2*s*x^2*(s^2*x^2+s*x-s+1)/((1-s*x)^4*(1-x)^2)");
    let d = [
        "(1-x)^3*(1-s*x)^6*(1-s)^6",
        "(1-x)^3*(1-s*x)^5*(1-s)^5",
        "(1-x)^3*(1-s*x)^3*(1-s)^4",
        "(1-x)^3*(1-s*x)^3*(1-s)^3",
        "(1-x)^2*(1-s*x)*(1-s)^2",
        "(1-x)*(1-s*x)*(1-s)",
        "1-s",
        "(1-s*x)^6*(1-s)^6",
    ];
    let den = |i: usize| RatFunc::from_poly(c[i].den_poly());
    let failing: Vec<usize> = (0..8).filter(|&i| !divides(&den(i), &rf(d[i]))).collect();
    // The displayed d_1..d_5 are each one power of (1-s) short.
    let shape = failing == [1, 2, 3, 4, 5]
        && failing
            .iter()
            .all(|&i| divides(&den(i), &rf(d[i]).mul(&rf("1-s"))));
    let pass = chat_ok && c8_ok && failing.is_empty();
    Outcome {
        pass,
        expected: chat_ok && c8_ok && (failing.is_empty() || shape),
        detail: format!(
            "c-hat_0..8 exact: {chat_ok}; c_8 exact: {c8_ok}; den(c_i) does not divide d_i for i in {failing:?} (each off by one factor 1-s: {shape})"
        ),
    }
}

fn criterion_4(rec: &Recurrence) -> Outcome {
    let states = rec.run(3).expect("recurrence to n = 3");
    let mut report = Vec::new();
    let mut ok = true;
    for (state, degree) in states.iter().zip([30u32, 30, 20]) {
        let n = state.n;
        let v = 3 * n - 2;
        let params = EnumerationParams {
            n_max: v,
            m_max: degree,
            profile: Some(RowProfile::alternating_242(2 * n as usize - 1)),
        };
        let table = enumerate(&params, &Budget::default()).expect("profiled enumeration");
        let counts = h_series(&table, v, degree).expect("complete window");
        let series = state.f_1.series_integers(Var::X, degree as usize).expect("power series");
        let same = counts == series;
        ok &= same;
        report.push(format!("n={n} to x^{degree}: {same}"));
    }
    Outcome::of(ok, report.join(", "))
}

fn criterion_5(rec: &Recurrence) -> Outcome {
    let states = rec.run(7).expect("recurrence to n = 7");
    let mut mult: Vec<u32> = states.iter().map(|s| psi_multiplicity(&s.f_1, s.n)).collect();
    let f8 = rec.step_at_one(states.last().unwrap()).expect("f_8(1;x)");
    mult.push(psi_multiplicity(&f8, 8));

    let mut ledger = FactorLedger::new();
    for (n, d) in published_denominators().expect("published table") {
        if n <= 7 {
            ledger.add(n, &d, Source::Published).expect("published D_n within bound");
        }
    }
    let first = ledger.first_appearance();
    let want_first = BTreeMap::from([(1, 1), (2, 5), (3, 7)]);
    let ok = mult == [1, 0, 1, 1, 1, 1, 1, 1] && first == want_first;
    Outcome::of(ok, format!("multiplicities n=1..8 {mult:?}; first appearance {first:?}"))
}

fn vertical_bonds_left_right(p: &Polygon, left_col: i32, right_col: i32) -> (u32, u32) {
    let xs = p.bonds().iter().filter(|b| b.orientation == Orientation::Vertical).map(|b| b.x);
    xs.fold((0, 0), |(l, r), x| {
        (l + (x <= left_col) as u32, r + (x > right_col) as u32)
    })
}

/// Violated invariants of one polygon, as short labels.
fn haruspicy_violations(p: &Polygon, d: &PageDecomposition) -> Vec<&'static str> {
    let mut bad = Vec::new();
    let two_v = 2 * p.vhp();
    for &k in d.sigma.keys() {
        if two_v + 4 < 6 * k {
            bad.push("k-section below 6k-4 vertical bonds");
        }
        let cols = d.sections.iter().filter(|s| s.k == k).map(|s| s.column);
        let (lo, hi) = (cols.clone().min().unwrap(), cols.max().unwrap());
        let (left, right) = vertical_bonds_left_right(p, lo, hi);
        if left + 2 < 3 * k || right + 2 < 3 * k {
            bad.push("flanking bound");
        }
    }
    if duplicates(p, d).is_empty() {
        if d.sections.len() as u32 + 1 > two_v {
            bad.push("more than 2V-1 sections");
        }
        if d.pages.len() as i32 + 1 > 2 * p.height() {
            bad.push("more than 2R-1 pages");
        }
        for k in 1.. {
            if 6 * k > two_v + 4 {
                break;
            }
            let m = (two_v + 4 - 6 * k) / 2;
            let big: u32 = d.sigma.range(k..).map(|(_, &c)| c).sum();
            if big > 2 * m + 1 {
                bad.push("more than 2M+1 sections with j >= k");
            }
        }
    }
    bad
}

fn criterion_6() -> Outcome {
    let polygons = generate_all(8);
    let mut violations = 0;
    let mut minimal = 0;
    let mut confluence_checked = 0;
    for p in &polygons {
        let d = decompose(p);
        let bad = haruspicy_violations(p, &d);
        if !bad.is_empty() {
            eprintln!("{}: {bad:?}", p.to_json());
            violations += bad.len();
        }
        let m = reduce_minimal(p);
        if !haruspicy_violations(&m, &decompose(&m)).is_empty() || m.vhp() != p.vhp() {
            violations += 1;
        }
        if duplicates(p, &d).is_empty() {
            minimal += 1;
        }
        if p.hhp() + p.vhp() <= 6 {
            confluence_checked += 1;
            match reduction_outcomes(p) {
                Ok(outs) if outs.len() == 1 && outs.contains(&m) => {}
                _ => violations += 1,
            }
        }
    }
    Outcome::of(
        violations == 0,
        format!(
            "{} polygons ({minimal} section-minimal), {confluence_checked} checked for confluence, {violations} violations",
            polygons.len()
        ),
    )
}

fn criterion_7() -> Outcome {
    let census = brute_blocks(6, 12);
    let formula = t_hat().t.taylor_box(&[6, 6, 12, 0]).expect("taylor box");
    let ok = formula == census_poly(&census);
    let total: u64 = census.values().sum();
    Outcome::of(ok, format!("{total} blocks in {} classes, formula agrees: {ok}", census.len()))
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    for k in 1..=10 {
        let r = pk_check(k);
        let zero_ok = if k % 2 == 0 {
            r.at_minus_one == 0 && r.zero_order_at_minus_one == 1
        } else {
            r.at_minus_one != 0
        };
        if r.at_one != 2 || !zero_ok {
            bad.push(k);
        }
    }
    Outcome::of(bad.is_empty(), format!("p_k(1) = 2 and parity of the zero at -1 for k=1..10; bad k {bad:?}"))
}

fn main() -> ExitCode {
    let stretch = std::env::args().any(|a| a == "--stretch" || a == "--include-ignored" || a == "--ignored");
    let rec = Recurrence::new().expect("coefficients");
    let start = Instant::now();
    let h = reconstruct_hn(if stretch { 7 } else { 6 });
    let mut unexpected = 0;
    let mut report = |n: u32, o: Outcome| {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let note = if o.expected { "" } else { " [UNEXPECTED]" };
        println!("criterion {n}: {verdict}{note} - {} ({:.1?})", o.detail, start.elapsed());
        if !o.expected {
            unexpected += 1;
        }
    };
    report(1, criterion_1(&h));
    report(2, criterion_2(&h));
    report(3, criterion_3());
    report(4, criterion_4(&rec));
    report(5, criterion_5(&rec));
    report(6, criterion_6());
    report(7, criterion_7());
    report(8, criterion_8());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
