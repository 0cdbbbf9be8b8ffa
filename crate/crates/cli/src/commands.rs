use std::collections::BTreeMap;
use std::fmt::Write;
use std::fs;
use std::path::Path;

use haruspex_core::algebra::{RatFunc, Var};
use haruspex_core::diagnostics::{
    published_denominators, solvability_report, to_stable_json, FactorLedger, LedgerError, LedgerRecord, Source,
};
use haruspex_core::enumerator::{
    bound_bn, enumerate, h_series, reconstruct, Budget, EnumError, EnumerationParams, SeriesTable,
};
use haruspex_core::haruspicy::{decompose, duplicates, reduce_minimal, sigma};
use haruspex_core::polygon::{read_polygons, RowProfile};
use haruspex_core::twofourtwo::blocks::{brute_blocks, census_poly};
use haruspex_core::twofourtwo::recurrence::{psi_multiplicity, Recurrence, RecurrenceError};
use haruspex_core::twofourtwo::t_hat;
use serde_json::{json, Value};

use crate::{CliError, Command, Context, Format};

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::Budget(_) => CliError::Budget(e.to_string()),
            EnumError::Format(_) => CliError::Input(e.to_string()),
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<LedgerError> for CliError {
    fn from(e: LedgerError) -> Self {
        CliError::Invariant(e.to_string())
    }
}

impl From<RecurrenceError> for CliError {
    fn from(e: RecurrenceError) -> Self {
        CliError::Invariant(e.to_string())
    }
}

pub fn run(cmd: &Command, ctx: &Context) -> Result<String, CliError> {
    if ctx.format == Format::Csv && !matches!(cmd, Command::Enumerate { .. }) {
        return Err(CliError::Input("csv output is only available for enumerate".into()));
    }
    match cmd {
        Command::Enumerate { n_max, m_max, profile } => {
            let params = EnumerationParams {
                n_max: *n_max,
                m_max: *m_max,
                profile: profile.clone().map(RowProfile),
            };
            let table = series(ctx, &params)?;
            Ok(match ctx.format {
                Format::Csv => table.to_csv(),
                Format::Text => {
                    let mut out = String::new();
                    for (m, n, c) in table.nonzero() {
                        writeln!(out, "a({m},{n}) = {c}").unwrap();
                    }
                    out
                }
                Format::Json => {
                    let counts: Vec<Value> = table
                        .nonzero()
                        .map(|(m, n, c)| json!({"m": m, "n": n, "count": c.to_string()}))
                        .collect();
                    pretty(&json!({"manifest": table.manifest(&params), "counts": counts}))
                }
            })
        }
        Command::Hn { n, guard } => {
            if *n == 0 {
                return Err(CliError::Input("n must be positive".into()));
            }
            let mut ledger = FactorLedger::new();
            let (h, record) = hn(ctx, &mut ledger, *n, *guard)?;
            let value = hn_json(*n, &h, &record);
            if let Some(cache) = &ctx.cache {
                cache.store_hn(*n, &pretty(&value))?;
            }
            Ok(match ctx.format {
                Format::Text => format!(
                    "H_{n}(x) = {h}\nD_{n} = {}\nB_{n}/D_{n} = {}\n",
                    psi_text(&record.denominator),
                    psi_text(&record.slack)
                ),
                _ => pretty(&value),
            })
        }
        Command::Reduce { file } => reduce(file, ctx.format),
        Command::Blocks { max_row_length, max_hhp } => {
            let census = brute_blocks(*max_row_length, *max_hhp);
            let formula = t_hat()
                .t
                .taylor_box(&[*max_row_length, *max_row_length, *max_hhp, 0])
                .map_err(|e| CliError::Invariant(e.to_string()))?;
            let brute = census_poly(&census);
            let differing = formula.sub(&brute).num_terms();
            if differing != 0 {
                return Err(CliError::Invariant(format!(
                    "building-block series and census differ in {differing} coefficients"
                )));
            }
            let total: u64 = census.values().sum();
            Ok(match ctx.format {
                Format::Text => format!("{} block classes, {total} blocks, formula matches\n", census.len()),
                _ => pretty(&json!({
                    "max_row_length": max_row_length,
                    "max_hhp": max_hhp,
                    "classes": census.len(),
                    "blocks": total,
                    "matches": true,
                })),
            })
        }
        Command::Recurrence { n_max } => recurrence(*n_max, ctx.format),
        Command::Diagnose { n_max, published } => {
            let mut ledger = FactorLedger::new();
            for n in 1..=*n_max {
                hn(ctx, &mut ledger, n, haruspex_core::enumerator::DEFAULT_GUARD)?;
            }
            if *published {
                for (n, d) in published_denominators()? {
                    if n > *n_max {
                        ledger.add(n, &d, Source::Published)?;
                    }
                }
            }
            let report = solvability_report(&ledger)?;
            Ok(match ctx.format {
                Format::Text => {
                    let mut out = String::new();
                    for r in &report.records {
                        let src = match r.source {
                            Source::Reconstructed => "reconstructed",
                            Source::Published => "published",
                        };
                        writeln!(out, "D_{} = {} ({src})", r.n, psi_text(&r.denominator)).unwrap();
                    }
                    writeln!(out, "{}", report.verdict).unwrap();
                    out
                }
                _ => to_stable_json(&report),
            })
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}

fn psi_text(e: &BTreeMap<u32, u32>) -> String {
    if e.is_empty() {
        return "1".into();
    }
    e.iter()
        .map(|(k, a)| format!("Psi_{k}^{a}"))
        .collect::<Vec<_>>()
        .join("*")
}

fn series(ctx: &Context, params: &EnumerationParams) -> Result<SeriesTable, CliError> {
    if let Some(cache) = &ctx.cache {
        if let Some(t) = cache.load_series(params)? {
            return Ok(t);
        }
    }
    let budget = Budget {
        deadline: ctx.deadline,
        ..Budget::default()
    };
    let table = enumerate(params, &budget)?;
    if let Some(cache) = &ctx.cache {
        cache.store_series(params, &table)?;
    }
    Ok(table)
}

fn hn(ctx: &Context, ledger: &mut FactorLedger, n: u32, guard: usize) -> Result<(RatFunc, LedgerRecord), CliError> {
    let bound = bound_bn(n);
    let m_max = 2 * bound.degree(Var::X).unwrap_or(0) + guard as u32;
    let params = EnumerationParams { n_max: n, m_max, profile: None };
    let table = series(ctx, &params)?;
    let s = h_series(&table, n, m_max)?;
    let h = reconstruct(&s, &bound, guard)?;
    let record = ledger.add(n, &h.den_poly(), Source::Reconstructed)?.clone();
    Ok((h, record))
}

fn hn_json(n: u32, h: &RatFunc, r: &LedgerRecord) -> Value {
    json!({
        "n": n,
        "h": h.to_string(),
        "numerator": h.num().to_string(),
        "denominator": h.den_poly().to_string(),
        "denominator_psi": r.denominator,
        "bound_psi": r.bound,
        "slack_psi": r.slack,
    })
}

fn reduce(file: &Path, format: Format) -> Result<String, CliError> {
    let text = fs::read_to_string(file)?;
    let polygons = read_polygons(&text).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let mut items = Vec::new();
    let mut out = String::new();
    for p in &polygons {
        let d = decompose(p);
        let min = reduce_minimal(p);
        let min_sigma = sigma(&min);
        if min_sigma != d.sigma {
            return Err(CliError::Invariant("reduction changed sigma".into()));
        }
        let identity = min == *p;
        if format == Format::Text {
            writeln!(out, "{}sigma {:?}, {} pages, minimal: {identity}", p.render(), d.sigma, d.pages.len()).unwrap();
            out.push_str(&min.render());
            out.push('\n');
        }
        items.push(json!({
            "polygon": p.segments(),
            "duplicates": duplicates(p, &d),
            "decomposition": d,
            "minimal": min.segments(),
            "already_minimal": identity,
        }));
    }
    Ok(match format {
        Format::Text => out,
        _ => pretty(&Value::Array(items)),
    })
}

fn recurrence(n_max: u32, format: Format) -> Result<String, CliError> {
    if n_max == 0 {
        return Err(CliError::Input("n-max must be positive".into()));
    }
    let rec = Recurrence::new().map_err(|e| CliError::Invariant(e.to_string()))?;
    let mut out = String::new();
    let mut items = Vec::new();
    for state in rec.run(n_max)? {
        let n = state.n;
        let mult = psi_multiplicity(&state.f_1, n);
        let den: BTreeMap<String, u32> = state
            .f_1
            .den()
            .factors()
            .iter()
            .map(|(f, &e)| (f.to_string(), e))
            .collect();
        if format == Format::Text {
            writeln!(out, "n={n}: f(1;x) = {}", state.f_1).unwrap();
            writeln!(out, "  multiplicity of Psi_{n}: {mult}").unwrap();
        }
        items.push(json!({
            "n": n,
            "f_at_one": state.f_1.to_string(),
            "certificate": {
                "one_minus_sx": state.certificate.one_minus_sx,
                "psi": state.certificate.psi,
            },
            "denominator_factors": den,
            "psi_multiplicity": mult,
        }));
    }
    Ok(match format {
        Format::Text => out,
        _ => pretty(&Value::Array(items)),
    })
}

