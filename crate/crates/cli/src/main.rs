//! `futaki`: compute, evaluate and explore the obstruction polynomial `F`.

use std::fs;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use futaki_core::arith::{format_rational, parse_rational, to_f64};
use futaki_core::character::{mu_omega, Dims, KahlerClass};
use futaki_core::explorer::{
    default_width, in_kahler_triangle, scan_range, vertex_c, Explorer, FacePoint, Region, ScanOptions, Sign,
};
use futaki_core::report::{csv_record, json_document, text_table, to_value, Meta, CSV_HEADER};
use futaki_core::{verify, Rational};

#[derive(Parser, Debug)]
#[command(name = "futaki", version, about = "Exact computations for the obstruction polynomial F(x, y, z)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// Add floating-point approximations beside exact values
    #[arg(long, global = true)]
    approx: bool,
    /// Omit the run metadata header
    #[arg(long, global = true)]
    no_meta: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone, Copy)]
struct DimArgs {
    #[arg(short = 'm', long = "m")]
    m: u32,
    #[arg(short = 'n', long = "n")]
    n: u32,
}

impl DimArgs {
    fn dims(self) -> futaki_core::Result<Dims> {
        Dims::new(self.m, self.n)
    }
}

#[derive(Subcommand, Debug)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Print g, h and F for the given dimensions
    Character {
        #[command(flatten)]
        dims: DimArgs,
    },
    /// Evaluate F and the slope at a class
    Evaluate {
        #[command(flatten)]
        dims: DimArgs,
        /// Class as x,y,z (integers, p/q or decimals)
        #[arg(long, allow_hyphen_values = true)]
        class: ClassArg,
    },
    /// Limits, Kähler-Einstein check and sign-change witness for a range of (m, n)
    Scan {
        /// Range of m, as a..b (inclusive) or a single value
        #[arg(short = 'm', long = "m")]
        m: RangeArg,
        /// Range of n, as a..b (inclusive) or a single value
        #[arg(short = 'n', long = "n")]
        n: RangeArg,
        /// Also scan pairs with m >= n
        #[arg(long)]
        all_pairs: bool,
        /// Isolation width on the witness segment
        #[arg(long)]
        width: Option<RationalArg>,
    },
    /// Isolate the zeros of F on the segment from one class to another
    Locate {
        #[command(flatten)]
        dims: DimArgs,
        #[arg(long, allow_hyphen_values = true)]
        from: ClassArg,
        #[arg(long, allow_hyphen_values = true)]
        to: ClassArg,
        /// Isolation width on the segment parameter (default 2^-20)
        #[arg(long)]
        width: Option<RationalArg>,
    },
    /// Run the self-check battery
    Verify {
        /// Include the cyclotomic congruence checks
        #[arg(long)]
        deep: bool,
    },
    /// Sign of F on the interior lattice points of the face x+y+z=1
    SampleFace {
        #[command(flatten)]
        dims: DimArgs,
        #[arg(long, default_value_t = 12)]
        resolution: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Character { .. } => "character",
            Command::Evaluate { .. } => "evaluate",
            Command::Scan { .. } => "scan",
            Command::Locate { .. } => "locate",
            Command::Verify { .. } => "verify",
            Command::SampleFace { .. } => "sample-face",
        }
    }
}

#[derive(Debug, Clone)]
struct ClassArg(KahlerClass);

impl FromStr for ClassArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [x, y, z] = parts.as_slice() else {
            return Err(format!("expected x,y,z, got {s:?}"));
        };
        let p = |v: &str| parse_rational(v).map_err(|e| e.to_string());
        Ok(ClassArg(KahlerClass::new(p(x)?, p(y)?, p(z)?)))
    }
}

#[derive(Debug, Clone)]
struct RationalArg(Rational);

impl FromStr for RationalArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(RationalArg).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone)]
struct RangeArg(RangeInclusive<u32>);

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |v: &str| v.trim().parse::<u32>().map_err(|e| format!("{v:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => (num(s)?, num(s)?),
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(RangeArg(lo..=hi))
    }
}

/// A finished report: the JSON payload plus its tabular renderings.
struct Report {
    json: Value,
    csv: Option<(Vec<String>, Vec<Vec<String>>)>,
    text: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let invariant = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<futaki_core::Error>(), Some(futaki_core::Error::Invariant(_))));
            ExitCode::from(if invariant { 3 } else { 2 })
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.common.jobs)
        .build()
        .context("building worker pool")?;
    let jobs = pool.current_num_threads();
    let command = cli.command.name();
    let common = &cli.common;

    let (report, extra, code) = pool.install(|| dispatch(&cli.command, common))?;

    let meta = (!common.no_meta).then(|| Meta {
        tool: "futaki".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        jobs,
        elapsed_ms: started.elapsed().as_millis(),
        extra,
    });
    let rendered = render(&report, common.format, meta.as_ref())?;
    match &common.out {
        Some(path) => fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(rendered.as_bytes())?,
    }
    Ok(code)
}

fn render(report: &Report, format: Format, meta: Option<&Meta>) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json => json_document(meta, report.json.clone())?,
        Format::Text => {
            let mut out = meta.map(|m| m.comment_line() + "\n").unwrap_or_default();
            out.push_str(&report.text);
            out
        }
        Format::Csv => {
            let (header, rows) = report
                .csv
                .as_ref()
                .ok_or_else(|| futaki_core::Error::usage("this command has no CSV form"))?;
            let mut out = meta.map(|m| m.comment_line() + "\n").unwrap_or_default();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header)?;
            for r in rows {
                w.write_record(r)?;
            }
            out.push_str(std::str::from_utf8(&w.into_inner()?)?);
            out
        }
    })
}

fn approx(r: &Rational) -> Value {
    json!(to_f64(r))
}

fn dispatch(command: &Command, common: &Common) -> anyhow::Result<(Report, Map<String, Value>, ExitCode)> {
    let ok = ExitCode::SUCCESS;
    let none = Map::new();
    Ok(match command {
        Command::Character { dims } => (character(dims.dims()?)?, none, ok),
        Command::Evaluate { dims, class } => (evaluate(dims.dims()?, &class.0, common.approx)?, none, ok),
        Command::Scan { m, n, all_pairs, width } => {
            let opts = ScanOptions {
                all_pairs: *all_pairs,
                width: width.clone().map_or_else(default_width, |w| w.0),
            };
            (scan(&m.0, &n.0, &opts, common.approx)?, none, ok)
        }
        Command::Locate { dims, from, to, width } => {
            let width = width.clone().map_or_else(default_width, |w| w.0);
            (locate(dims.dims()?, &from.0, &to.0, &width, common.approx)?, none, ok)
        }
        Command::Verify { deep } => {
            let results = verify::run(*deep);
            let all_pass = results.iter().all(|r| r.pass);
            let timings: Map<String, Value> = results
                .iter()
                .map(|r| (format!("check_{}_ms", r.id), json!(r.elapsed_ms)))
                .collect();
            let text: String = results.iter().map(|r| r.line() + "\n").collect();
            for r in results.iter().filter(|r| !r.pass) {
                eprintln!("verification failed: check {} ({}): {}", r.id, r.name, r.detail);
            }
            let report = Report {
                json: json!({ "deep": deep, "pass": all_pass, "checks": to_value(&results)? }),
                csv: Some((
                    ["id", "name", "pass", "detail"].map(String::from).to_vec(),
                    results
                        .iter()
                        .map(|r| vec![r.id.to_string(), r.name.into(), r.pass.to_string(), r.detail.clone()])
                        .collect(),
                )),
                text,
            };
            (report, timings, if all_pass { ok } else { ExitCode::from(4) })
        }
        Command::SampleFace { dims, resolution } => (sample_face(dims.dims()?, *resolution, common.approx)?, none, ok),
    })
}

fn character(d: Dims) -> anyhow::Result<Report> {
    let polys = Explorer::new(d)?.polys().clone();
    let mut rows = Vec::new();
    for (name, p) in [("g", &polys.g), ("h", &polys.h), ("F", &polys.f)] {
        for (mon, c) in p.terms() {
            let [x, y, z] = mon.0;
            rows.push(vec![name.into(), x.to_string(), y.to_string(), z.to_string(), format_rational(c)]);
        }
    }
    Ok(Report {
        json: to_value(&polys.to_json())?,
        csv: Some((["poly", "x", "y", "z", "coefficient"].map(String::from).to_vec(), rows)),
        text: format!(
            "g(x,y,z) = {}\nh(x,y,z) = {}\nF(x,y,z) = {}\n",
            polys.g, polys.h, polys.f
        ),
    })
}

fn evaluate(d: Dims, class: &KahlerClass, with_approx: bool) -> anyhow::Result<Report> {
    let ex = Explorer::new(d)?;
    let value = ex.eval(class);
    let mu = match mu_omega(d, class) {
        Ok(mu) => Some(mu),
        Err(futaki_core::Error::Domain(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let region = in_kahler_triangle(d, class);
    let sign = Sign::of(&value);
    let certified = region == Region::Inside || FacePoint::normalize(class) == Some(vertex_c(d));
    // F != 0 rules out cscK in any Kähler class; F = 0 only counts where the class is certified
    let csck = match (sign, certified) {
        (Sign::Zero, true) => Some(true),
        (Sign::Zero, false) => None,
        _ => Some(false),
    };
    let mut json = json!({
        "m": d.m,
        "n": d.n,
        "class": [class.x.to_string(), class.y.to_string(), class.z.to_string()],
        "F": format_rational(&value),
        "mu": mu.as_ref().map(format_rational),
        "sign": sign,
        "cscK_in_class": csck,
        "region": region,
        "kahler_certified": certified,
    });
    if with_approx {
        json["F_approx"] = approx(&value);
        json["mu_approx"] = mu.as_ref().map_or(Value::Null, approx);
    }
    let mu_text = mu.as_ref().map_or_else(|| "undefined".to_string(), format_rational);
    let fields: Vec<(&str, String)> = vec![
        ("F", format_rational(&value)),
        ("mu", mu_text),
        ("sign", sign.as_str().into()),
        ("cscK_in_class", csck.map_or_else(|| "unknown".to_string(), |b| b.to_string())),
        ("region", region.as_str().into()),
        ("kahler_certified", json["kahler_certified"].to_string()),
    ];
    let text = fields.iter().map(|(k, v)| format!("{k}: {v}\n")).collect();
    Ok(Report {
        csv: Some((
            fields.iter().map(|(k, _)| k.to_string()).collect(),
            vec![fields.into_iter().map(|(_, v)| v).collect()],
        )),
        json,
        text,
    })
}

fn scan(m: &RangeInclusive<u32>, n: &RangeInclusive<u32>, opts: &ScanOptions, with_approx: bool) -> anyhow::Result<Report> {
    let rows = scan_range(*m.start(), *m.end(), *n.start(), *n.end(), opts)?;
    let mut json_rows = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut v = to_value(row)?;
        if with_approx {
            v["limit_l1_approx"] = approx(&row.limit_l1);
            v["limit_l2_approx"] = approx(&row.limit_l2);
            v["F_at_c1_approx"] = approx(&row.f_at_c1);
        }
        json_rows.push(v);
    }
    let mut header: Vec<String> = CSV_HEADER.map(String::from).to_vec();
    if with_approx {
        header.extend(["limit_l1_approx", "limit_l2_approx", "F_at_c1_approx"].map(String::from));
    }
    let records = rows
        .iter()
        .map(|row| {
            let mut r = csv_record(row).to_vec();
            if with_approx {
                for x in [&row.limit_l1, &row.limit_l2, &row.f_at_c1] {
                    r.push(to_f64(x).to_string());
                }
            }
            r
        })
        .collect();
    Ok(Report {
        json: json!({ "rows": json_rows }),
        csv: Some((header, records)),
        text: text_table(&rows),
    })
}

fn locate(d: Dims, from: &KahlerClass, to: &KahlerClass, width: &Rational, with_approx: bool) -> anyhow::Result<Report> {
    let ex = Explorer::new(d)?;
    let seg = ex.isolate_on_segment(from, to, width)?;
    let mut json = json!({ "m": d.m, "n": d.n, "segment": to_value(&seg)? });
    if with_approx {
        json["segment"]["roots_approx"] = seg.roots.iter().map(|r| approx(&r.interval.midpoint())).collect();
    }
    let rows: Vec<Vec<String>> = seg
        .roots
        .iter()
        .map(|r| {
            let mut v = vec![
                format_rational(&r.interval.lo),
                format_rational(&r.interval.hi),
                r.interval.simple.to_string(),
            ];
            v.extend(r.midpoint_class.0.iter().cloned());
            v.push(r.certified_kahler.to_string());
            v
        })
        .collect();
    let mut text = format!(
        "F on segment: {}\nsign at from: {}\nsign at to: {}\n",
        seg.line,
        seg.sign_from.as_str(),
        seg.sign_to.as_str()
    );
    if seg.identically_zero {
        text.push_str("F vanishes identically on this segment\n");
    } else {
        text.push_str(&format!("roots in (0, 1]: {}\n", seg.roots.len()));
        for r in &rows {
            text.push_str(&format!(
                "  t in ({}, {}] simple={} midpoint=({}, {}, {}) certified_kahler={}\n",
                r[0], r[1], r[2], r[3], r[4], r[5], r[6]
            ));
        }
    }
    Ok(Report {
        json,
        csv: Some((
            ["t_lo", "t_hi", "simple", "mid_x", "mid_y", "mid_z", "certified_kahler"]
                .map(String::from)
                .to_vec(),
            rows,
        )),
        text,
    })
}

fn sample_face(d: Dims, resolution: u32, with_approx: bool) -> anyhow::Result<Report> {
    let samples = Explorer::new(d)?.sample_face(resolution)?;
    let rows: Vec<Vec<String>> = samples
        .iter()
        .map(|s| {
            let mut r = vec![
                format_rational(&s.point.x),
                format_rational(&s.point.y),
                format_rational(&s.point.z),
                s.sign.as_str().into(),
                s.region.as_str().into(),
                format_rational(&s.value),
            ];
            if with_approx {
                r.extend([to_f64(&s.point.x), to_f64(&s.point.y), to_f64(&s.value)].map(|v| v.to_string()));
            }
            r
        })
        .collect();
    let mut header: Vec<String> = ["x", "y", "z", "sign", "region", "F"].map(String::from).to_vec();
    if with_approx {
        header.extend(["x_approx", "y_approx", "F_approx"].map(String::from));
    }
    let mut json_samples = to_value(&samples)?;
    if with_approx {
        if let Value::Array(items) = &mut json_samples {
            for (item, s) in items.iter_mut().zip(&samples) {
                item["F_approx"] = approx(&s.value);
            }
        }
    }
    let text = rows.iter().map(|r| r[..5].join(" ") + "\n").collect();
    Ok(Report {
        json: json!({ "m": d.m, "n": d.n, "resolution": resolution, "samples": json_samples }),
        csv: Some((header, rows)),
        text,
    })
}
