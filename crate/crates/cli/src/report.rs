use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use pyramids::lego::{count_flat_rows, report_section5, McConfig};
use pyramids::series::{
    b_asymptotic_report, c_asymptotic_report, series_a_closed, series_b_bivariate, series_b_closed, series_c_from_b,
    width_ratio_table,
};
use pyramids::transfer::{audit, compute_a_r};

use crate::output::{self, parse_range, Format, Range, SCHEMA_VERSION};
use crate::{emit, piece_length, CliError, CliResult};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    /// A_m, B_m and C_m.
    Series,
    /// B_{m,n} by left width n.
    Bivariate,
    /// Exact average width against its square-root asymptote.
    Widths,
    /// ln B_m and ln C_m against their asymptotes.
    Asymptotics,
    /// a_r from the transfer matrices (json adds the matrices themselves).
    Transfer,
    /// Exact flat-structure counts L^a_m.
    Flat,
    /// Growth bounds, conjecture and Monte Carlo estimates for flat structures.
    Lego,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long, value_enum)]
    kind: ReportKind,
    /// Piece lengths (default 2..5; 3..8 for transfer, 2..8 for lego).
    #[arg(long, value_parser = parse_range)]
    a: Option<Range>,
    /// Sizes; the table covers every m in the range (r for transfer).
    /// Defaults: 1..20, widths 1..2000, asymptotics 10000, transfer 1..12,
    /// flat 1..8.
    #[arg(long, value_parser = parse_range)]
    m: Option<Range>,
    /// csv (default), json, bfile (`m value` of the main column; one a only)
    /// or text (same as csv).
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write `x,y` plot data of the main column here.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Monte Carlo samples per estimate for the lego report (0 skips).
    #[arg(long, default_value_t = 0)]
    samples: usize,
    /// Size used for the Monte Carlo estimates in the lego report.
    #[arg(long, default_value_t = 10)]
    mc_m: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    /// (x, y) column indices for plot data and b-files
    main: (usize, usize),
    extra: Map<String, Value>,
}

impl Table {
    fn new(columns: &[&'static str], main: (usize, usize)) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
            main,
            extra: Map::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    fn plot(&self) -> String {
        let (x, y) = self.main;
        let mut s = String::from("x,y\n");
        for r in &self.rows {
            s.push_str(&format!("{},{}\n", r[x], r[y]));
        }
        s
    }

    fn json(&self, kind: ReportKind) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.to_string(), cell(v)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
        doc.insert("kind".into(), json!(kind));
        doc.insert("columns".into(), json!(self.columns));
        doc.insert("rows".into(), Value::Array(rows));
        doc.extend(self.extra.clone());
        output::json(&Value::Object(doc))
    }
}

/// Small integers and floats become JSON numbers; big integers stay strings.
fn cell(v: &str) -> Value {
    if let Ok(n) = v.parse::<i64>() {
        return json!(n);
    }
    if v.chars().all(|c| c.is_ascii_digit()) {
        return json!(v);
    }
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => json!(x),
        _ if v.is_empty() => Value::Null,
        _ => json!(v),
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn build(args: &ReportArgs) -> CliResult<Table> {
    let default_a = match args.kind {
        ReportKind::Transfer => Range { lo: 3, hi: 8 },
        ReportKind::Lego => Range { lo: 2, hi: 8 },
        _ => Range { lo: 2, hi: 5 },
    };
    let default_m = match args.kind {
        ReportKind::Widths => Range { lo: 1, hi: 2000 },
        ReportKind::Asymptotics => Range { lo: 10000, hi: 10000 },
        ReportKind::Transfer => Range { lo: 1, hi: 12 },
        ReportKind::Flat => Range { lo: 1, hi: 8 },
        _ => Range { lo: 1, hi: 20 },
    };
    let a_range = args.a.unwrap_or(default_a);
    let m_range = args.m.unwrap_or(default_m);
    let ms: Vec<usize> = m_range.iter().map(|m| m as usize).collect();
    let order = ms.iter().copied().max().unwrap_or(0);
    let mut avs = Vec::new();
    for av in a_range.iter() {
        avs.push((av as u32, piece_length(av as u32)?));
    }

    let mut t;
    match args.kind {
        ReportKind::Series => {
            t = Table::new(&["a", "m", "A", "B", "C"], (1, 3));
            for &(av, a) in &avs {
                let sa = series_a_closed(a, order);
                let sb = series_b_closed(a, order);
                let sc = series_c_from_b(&sb);
                for &m in ms.iter().filter(|&&m| m >= 1) {
                    t.push(vec![
                        av.to_string(),
                        m.to_string(),
                        sa.coeffs[m].to_string(),
                        sb.coeffs[m].to_string(),
                        sc.coeffs[m].to_string(),
                    ]);
                }
            }
        }
        ReportKind::Bivariate => {
            t = Table::new(&["a", "m", "n", "B_mn"], (2, 3));
            for &(av, a) in &avs {
                let table = series_b_bivariate(a, order);
                for &m in ms.iter().filter(|&&m| m >= 1) {
                    for (n, v) in table.rows[m].iter().enumerate() {
                        t.push(vec![av.to_string(), m.to_string(), n.to_string(), v.to_string()]);
                    }
                }
            }
        }
        ReportKind::Widths => {
            t = Table::new(&["a", "m", "exact", "asymptote", "ratio"], (1, 4));
            for &(av, a) in &avs {
                for (m, exact, asym, ratio) in width_ratio_table(a, order) {
                    if ms.contains(&m) {
                        t.push(vec![
                            av.to_string(),
                            m.to_string(),
                            exact.to_string(),
                            asym.to_string(),
                            ratio.to_string(),
                        ]);
                    }
                }
            }
        }
        ReportKind::Asymptotics => {
            t = Table::new(
                &[
                    "a",
                    "m",
                    "ln_B",
                    "ln_B_asymptote",
                    "B_ratio",
                    "ln_C",
                    "ln_C_asymptote",
                    "C_ratio",
                ],
                (1, 4),
            );
            let jobs: Vec<(u32, usize)> = avs
                .iter()
                .flat_map(|&(av, _)| ms.iter().filter(|&&m| m >= 1).map(move |&m| (av, m)))
                .collect();
            let rows: Vec<CliResult<Vec<String>>> = jobs
                .par_iter()
                .map(|&(av, m)| {
                    let a = piece_length(av)?;
                    let b = b_asymptotic_report(a, m);
                    let c = if m >= 2 { Some(c_asymptotic_report(a, m)?) } else { None };
                    Ok(vec![
                        av.to_string(),
                        m.to_string(),
                        b.exact_ln.to_string(),
                        b.asymptote_ln.to_string(),
                        b.ratio.to_string(),
                        opt(c.as_ref().map(|c| c.exact_ln)),
                        opt(c.as_ref().map(|c| c.asymptote_ln)),
                        opt(c.as_ref().map(|c| c.ratio)),
                    ])
                })
                .collect();
            for r in rows {
                t.push(r?);
            }
        }
        ReportKind::Transfer => {
            t = Table::new(&["a", "r", "a_r"], (1, 2));
            let mut audits = Vec::new();
            for &(av, a) in &avs {
                for &r in ms.iter().filter(|&&r| r >= 1) {
                    t.push(vec![av.to_string(), r.to_string(), compute_a_r(a, r)?.to_string()]);
                }
                if args.format == Format::Json {
                    let mut v = serde_json::to_value(audit(a)?).expect("audits serialize");
                    v["a"] = json!(av);
                    audits.push(v);
                }
            }
            if args.format == Format::Json {
                t.extra.insert("matrices".into(), Value::Array(audits));
            }
        }
        ReportKind::Flat => {
            t = Table::new(&["a", "m", "L"], (1, 2));
            for &(av, a) in &avs {
                for &m in ms.iter().filter(|&&m| m >= 1) {
                    t.push(vec![av.to_string(), m.to_string(), count_flat_rows(a, m)?.to_string()]);
                }
            }
        }
        ReportKind::Lego => {
            t = Table::new(
                &[
                    "a",
                    "lower_bound",
                    "klarner_depth1_root",
                    "conjecture",
                    "mc_growth",
                    "k_a",
                ],
                (0, 3),
            );
            let mc = (args.samples > 0).then_some(McConfig {
                m: args.mc_m,
                samples: args.samples,
                seed: args.seed,
            });
            let report = report_section5(a_range.lo as u32..=a_range.hi as u32, mc.as_ref())?;
            for r in &report.rows {
                t.push(vec![
                    r.a.to_string(),
                    r.lower_bound.to_string(),
                    opt(r.klarner_depth1_root),
                    r.conjecture.to_string(),
                    opt(r.mc_growth),
                    opt(r.k_a),
                ]);
            }
            t.extra.insert("context".into(), json!(report.context));
            if mc.is_some() {
                let est: Vec<_> = report
                    .rows
                    .iter()
                    .map(|r| json!({"a": r.a, "estimates": r.mc}))
                    .collect();
                t.extra.insert("mc".into(), Value::Array(est));
            }
        }
    }
    Ok(t)
}

pub fn run(args: &ReportArgs) -> CliResult<()> {
    let t = build(args)?;
    let text = match args.format {
        Format::Json => t.json(args.kind),
        Format::Bfile => {
            let distinct_a = t.rows.iter().map(|r| &r[0]).collect::<std::collections::BTreeSet<_>>();
            if distinct_a.len() > 1 || args.kind == ReportKind::Lego {
                return Err(CliError::Usage(
                    "bfile output needs a single a and a size-indexed table".into(),
                ));
            }
            let (x, y) = t.main;
            t.rows.iter().map(|r| format!("{} {}\n", r[x], r[y])).collect()
        }
        Format::Csv | Format::Text => t.csv(),
    };
    if let Some(path) = &args.plot {
        emit(&t.plot(), Some(path))?;
    }
    emit(&text, args.out.as_ref())
}
