use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fmhs_core::exact::{Render, TPoly};
use fmhs_core::genfun::closed::{eval_constant_index, g_sum_kl, xi_ones_coeff};
use fmhs_core::genfun::u_poly;
use fmhs_core::indices::{HeightProfile, MultiIndex};
use fmhs_core::qseries::{parse_q, z_t_float, Evaluator, LVariant, SeriesParams};
use fmhs_core::suite::{run_suite, SuiteConfig};
use fmhs_core::Error;

#[derive(Parser)]
#[command(name = "fmhs", version, about = "Exact finite multiple harmonic q-series at roots of unity")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Zbar,
    ZbarStar,
    ZbarT,
    ZT,
    GSum,
    #[value(name = "L")]
    L,
    EvalConst,
    UPoly,
    XiCoeff,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Plain,
    Star,
    Interp,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Gsum,
    Eval,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one quantity exactly.
    Compute {
        kind: Kind,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value = "zeta")]
        q: String,
        /// Comma-separated positive parts, e.g. `2,1`.
        #[arg(long)]
        index: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
        /// Heights `h_1,…,h_r` for `g-sum`.
        #[arg(long)]
        h: Option<String>,
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        j: i32,
        #[arg(long, value_enum, default_value = "plain")]
        variant: Variant,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run identity checks over parameter grids.
    Verify {
        /// Identity id, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        l: Option<u32>,
        /// Comma-separated q samples.
        #[arg(long)]
        q: Option<String>,
        #[arg(long, visible_alias = "cap")]
        max_cap: Option<i32>,
        #[arg(long)]
        allow_large_cap: bool,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Writes every report here; stdout gets the summary and failures.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate values at `q = ζ_n`.
    Table {
        kind: TableKind,
        #[arg(long, default_value = "2..5")]
        n: String,
        #[arg(long, default_value = "1..3")]
        k: String,
        /// Depths for `eval`; `gsum` uses `0..k`.
        #[arg(long, default_value = "0..3")]
        l: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Floating-point approach of `z^t_n({1}^l)` to its limit.
    XiConvergence {
        #[arg(long, default_value = "1,2,3")]
        l: String,
        #[arg(long, default_value = "0,0.5,1")]
        t: String,
        #[arg(long, default_value = "50,400")]
        n: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure with its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::UnknownIdentity(_) => 2,
            _ => 3,
        };
        Fail(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(2, msg.into())
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, Fail> {
    let num = |x: &str| x.trim().parse::<u32>().map_err(|_| usage(format!("bad range '{s}'")));
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, Fail> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| usage(format!("bad list '{s}'")))).collect()
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Fail> {
    v.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Fail> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Fail(3, format!("{}: {e}", p.display()))),
        None => {
            let mut o = io::stdout().lock();
            let _ = o.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> Result<String, Fail> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Fail(3, e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Fail(3, e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn t_cells(p: &TPoly, width: usize) -> Vec<String> {
    (0..width).map(|i| p.coeff(i).to_string()).collect()
}

fn evaluator(n: Option<u32>, q: &str) -> Result<Evaluator, Fail> {
    let n = need(n, "n")?;
    Ok(Evaluator::new(SeriesParams::new(n, parse_q(q, n)?)?))
}

fn index(s: Option<String>) -> Result<MultiIndex, Fail> {
    let s = need(s, "index")?;
    Ok(s.parse::<MultiIndex>()?)
}

#[allow(clippy::too_many_arguments)]
fn compute(
    kind: Kind,
    n: Option<u32>,
    q: &str,
    idx: Option<String>,
    k: Option<u32>,
    l: Option<u32>,
    h: Option<String>,
    j: i32,
    variant: Variant,
) -> Result<Value, Fail> {
    Ok(match kind {
        Kind::Zbar => evaluator(n, q)?.zbar(&index(idx)?)?.to_json(),
        Kind::ZbarStar => evaluator(n, q)?.zbar_star(&index(idx)?)?.to_json(),
        Kind::ZbarT => evaluator(n, q)?.zbar_t(&index(idx)?)?.to_json(),
        Kind::ZT => evaluator(n, q)?.z_t(&index(idx)?)?.to_json(),
        Kind::GSum => {
            let heights: Vec<u32> = parse_list(&need(h, "h")?)?;
            let p = HeightProfile::new(need(k, "k")?, need(l, "l")?, heights, j)?;
            evaluator(n, q)?.g_sum(&p)?.to_json()
        }
        Kind::L => {
            let v = match variant {
                Variant::Plain => LVariant::Plain,
                Variant::Star => LVariant::Star,
                Variant::Interp => LVariant::Interp,
            };
            evaluator(n, q)?.l_poly(&index(idx)?, v).to_json()
        }
        Kind::EvalConst => eval_constant_index(need(k, "k")?, need(l, "l")?, need(n, "n")?)?.to_json(),
        Kind::UPoly => {
            let n = need(n, "n")?;
            if n == 0 {
                return Err(Fail(3, "n must be positive".into()));
            }
            u_poly(n).to_json()
        }
        Kind::XiCoeff => xi_ones_coeff(need(l, "l")?).to_json(),
    })
}

fn render_value(v: &Value, format: Format) -> Result<String, Fail> {
    match format {
        Format::Json => Ok(format!("{v}\n")),
        Format::Csv => match v {
            Value::Object(m) => {
                let header: Vec<String> = m.keys().cloned().collect();
                let row: Vec<String> =
                    m.values().map(|x| x.as_str().map_or_else(|| x.to_string(), String::from)).collect();
                csv_text(&header, &[row])
            }
            Value::String(s) => csv_text(&["value".into()], &[vec![s.clone()]]),
            other => csv_text(&["value".into()], &[vec![other.to_string()]]),
        },
    }
}

fn table(kind: TableKind, n: &str, k: &str, l: &str) -> Result<(Vec<String>, Vec<Vec<String>>), Fail> {
    let (ns, ks, ls) = (parse_range(n)?, parse_range(k)?, parse_range(l)?);
    let mut rows = Vec::new();
    let width = match kind {
        TableKind::Gsum => ks.clone().last().map_or(0, |m| m as usize + 1),
        TableKind::Eval => ls.clone().last().map_or(0, |m| m as usize + 1),
    };
    for n in ns {
        let ev = Evaluator::new(SeriesParams::zeta(n)?);
        for k in ks.clone() {
            let depths = match kind {
                TableKind::Gsum => 0..=k,
                TableKind::Eval => ls.clone(),
            };
            for l in depths {
                let value = match kind {
                    TableKind::Gsum => g_sum_kl(&ev, k, l)?,
                    TableKind::Eval => ev.zbar_t(&MultiIndex::new(vec![k; l as usize])?)?,
                };
                let mut row = vec![n.to_string(), k.to_string(), l.to_string()];
                row.extend(t_cells(&value, width));
                rows.push(row);
            }
        }
    }
    let mut header: Vec<String> = ["n", "k", "l"].iter().map(|s| s.to_string()).collect();
    if !rows.is_empty() {
        header.extend((0..width).map(|i| format!("t^{i}")));
    }
    Ok((header, rows))
}

fn table_json(header: &[String], rows: &[Vec<String>]) -> String {
    let items: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut m = serde_json::Map::new();
            for (h, c) in header.iter().zip(r) {
                let v = match h.as_str() {
                    "n" | "k" | "l" => json!(c.parse::<u32>().expect("integer cell")),
                    _ => json!(c),
                };
                m.insert(h.clone(), v);
            }
            Value::Object(m)
        })
        .collect();
    format!("{}\n", Value::Array(items))
}

fn xi_convergence(l: &str, t: &str, n: &str) -> Result<Value, Fail> {
    let ls: Vec<u32> = parse_list(l)?;
    let ts: Vec<f64> = parse_list(t)?;
    let ns: Vec<u32> = parse_list(n)?;
    let mut rows = Vec::new();
    for &l in &ls {
        let coeff = xi_ones_coeff(l);
        for &t in &ts {
            let c: f64 =
                coeff.coeffs().iter().rev().fold(0.0, |acc, a| acc * t + a.is_rational().map_or(f64::NAN, num_to_f64));
            let target = num_complex::Complex64::new(0.0, -2.0 * std::f64::consts::PI).powu(l) * c;
            for &n in &ns {
                if n < 2 {
                    return Err(Fail(3, "n must be at least 2".into()));
                }
                let v = z_t_float(&MultiIndex::new(vec![1; l as usize])?, n, t);
                let err = (v - target).norm();
                rows.push(json!({
                    "l": l, "t": t, "n": n,
                    "value": [v.re, v.im],
                    "target": [target.re, target.im],
                    "abs_error": err,
                    "rel_error": err / target.norm().max(1.0),
                }));
            }
        }
    }
    Ok(Value::Array(rows))
}

fn num_to_f64(r: &fmhs_core::exact::Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn run(cli: Cli) -> Result<u8, Fail> {
    match cli.cmd {
        Cmd::Compute { kind, n, q, index, k, l, h, j, variant, format, out } => {
            let v = compute(kind, n, &q, index, k, l, h, j, variant)?;
            emit(&out, &render_value(&v, format)?)?;
            Ok(0)
        }
        Cmd::Verify { suite, n, r, k, l, q, max_cap, allow_large_cap, jobs, format, out } => {
            let cfg = SuiteConfig {
                ids: suite.split(',').map(|s| s.trim().to_string()).collect(),
                n: n.as_deref().map(parse_range).transpose()?,
                r: r.as_deref().map(parse_list).transpose()?,
                k: k.as_deref().map(parse_range).transpose()?,
                l,
                q: q.as_deref().map(|s| s.split(',').map(|x| x.trim().to_string()).collect()),
                max_cap,
                jobs,
                allow_large_cap,
            };
            let summary = run_suite(&cfg).map_err(|e| match e {
                Error::InvalidParams(m) => usage(m),
                e => e.into(),
            })?;
            let mut text = String::new();
            for r in summary.reports.iter().filter(|r| r.status == fmhs_core::genfun::identity::Status::Fail) {
                text.push_str(&r.to_json().to_string());
                text.push('\n');
            }
            text.push_str(&summary.line());
            text.push('\n');
            print!("{text}");
            if out.is_some() {
                let body = match format {
                    Format::Json => format!("{}\n", summary.to_json()),
                    Format::Csv => {
                        let rows: Vec<Vec<String>> = summary
                            .reports
                            .iter()
                            .map(|r| {
                                let status = serde_json::to_value(r.status).expect("status");
                                vec![
                                    r.identity.clone(),
                                    r.params.to_string(),
                                    status.as_str().unwrap_or_default().to_string(),
                                    r.mismatch.as_ref().map_or_else(String::new, Value::to_string),
                                ]
                            })
                            .collect();
                        let header = ["identity", "params", "status", "mismatch"].map(String::from);
                        csv_text(&header, &rows)?
                    }
                };
                emit(&out, &body)?;
            }
            Ok(if summary.ok() { 0 } else { 1 })
        }
        Cmd::Table { kind, n, k, l, format, out } => {
            let (header, rows) = table(kind, &n, &k, &l)?;
            let text = match format {
                Format::Json => table_json(&header, &rows),
                Format::Csv => csv_text(&header, &rows)?,
            };
            emit(&out, &text)?;
            Ok(0)
        }
        Cmd::XiConvergence { l, t, n, out } => {
            let v = xi_convergence(&l, &t, &n)?;
            emit(&out, &format!("{v}\n"))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
