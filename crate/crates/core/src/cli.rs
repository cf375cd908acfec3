//! Command-line front end.
//!
//! Every reply carries the same JSON envelope
//! `{command, inputs, value, status, source, seed, field}`. Scans also carry
//! a table, which `--format csv` prints. Exit codes: 0 success, 1 bad input,
//! 2 internal invariant violation or a failed verification suite.

use std::io::{IsTerminal, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cache::{self, Cache};
use crate::closed_forms::{self, ClosedFormResult, ConfigClass};
use crate::combinatorics;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hilbert;
use crate::linsys::{self, LinearSystemSpec};
use crate::oracle::{self, AlphaOutcome};
use crate::splines;
use crate::verify::{self, VerifyOptions};
use crate::wlp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "fatpoints", version, about = "Exact computations for fat points and powers of linear forms")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; defaults to pretty on a terminal and JSON otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Base seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// `rational` or `prime:<p>`.
    #[arg(long, global = true, default_value_t = Field::default())]
    field: Field,

    /// JSON-lines result cache (default: the FATPOINTS_CACHE variable).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Worker threads for scans and verification suites.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Args, Clone, Serialize)]
struct ClassArgs {
    /// hyperplane, n1, n2 or n3.
    #[arg(long)]
    class: String,
    #[arg(long)]
    n: u32,
    /// Dependency index, only for class n2.
    #[arg(long)]
    dept: Option<u32>,
}

impl ClassArgs {
    fn class(&self) -> Result<ConfigClass> {
        ConfigClass::from_parts(&self.class, self.n, self.dept)
    }
}

#[derive(Debug, Subcommand, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Eulerian number A(i, j).
    Eulerian { i: i64, j: i64 },
    /// Shape scan of consecutive Eulerian differences, or of the leading coefficient sums.
    EulerScan {
        #[arg(long, default_value_t = 30)]
        nmax: i64,
        #[arg(long)]
        leading: bool,
    },
    /// Hilbert function of K[x_1..x_v]/(x_1^a_1, ..).
    Hilbert {
        #[arg(long)]
        vars: usize,
        /// Comma separated, `3^4` repeats.
        #[arg(long)]
        exps: String,
        #[arg(long, default_value_t = 0)]
        diff: u32,
        #[arg(long)]
        jmax: Option<i64>,
    },
    /// Reduce L_n(deg; mults) to a base case and print the trace.
    Linsys {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        deg: i64,
        #[arg(long, default_value = "")]
        mults: String,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Initial degree of the k-th symbolic power.
    Alpha {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        k: i64,
        /// Also recompute with the rank oracle.
        #[arg(long)]
        check: bool,
    },
    /// Regularity of the ideal of d-th powers of the dual linear forms.
    Reg {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        check: bool,
    },
    Waldschmidt {
        #[command(flatten)]
        class: ClassArgs,
    },
    Chudnovsky {
        #[command(flatten)]
        class: ClassArgs,
    },
    Demailly {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 1)]
        k: i64,
    },
    Resurgence {
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Level-j Verlinde number; j may be a half integer such as 1/2.
    Verlinde {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        j: String,
    },
    /// Weak Lefschetz failure witness for one cell, or a scan table.
    Wlp {
        #[arg(long, required_unless_present = "scan")]
        n: Option<i64>,
        #[arg(long, required_unless_present = "scan")]
        d: Option<i64>,
        #[arg(long, conflicts_with_all = ["n", "d"])]
        scan: bool,
        #[arg(long, default_value_t = 8)]
        nmin: i64,
        #[arg(long, default_value_t = 20)]
        nmax: i64,
        #[arg(long, default_value_t = 400)]
        dmax: i64,
    },
    /// Uniform B-spline B_i.
    Spline {
        #[arg(long)]
        i: usize,
        /// Exact value at x (integer or p/q).
        #[arg(long, group = "mode")]
        eval: Option<String>,
        #[arg(long, group = "mode")]
        lemma65: bool,
        /// Sign of B_{2m}(m) − 2B_{2m}(m−1) + B_{2m}(m−2).
        #[arg(long, group = "mode")]
        sign: Option<usize>,
        /// Compare the k-th derivative with the Gaussian on [−3, 3].
        #[arg(long, group = "mode")]
        gaussian: Option<usize>,
    },
    /// Oracle cross-validation suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        seeds: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eulerian { .. } => "eulerian",
            Command::EulerScan { .. } => "euler-scan",
            Command::Hilbert { .. } => "hilbert",
            Command::Linsys { .. } => "linsys",
            Command::Alpha { .. } => "alpha",
            Command::Reg { .. } => "reg",
            Command::Waldschmidt { .. } => "waldschmidt",
            Command::Chudnovsky { .. } => "chudnovsky",
            Command::Demailly { .. } => "demailly",
            Command::Resurgence { .. } => "resurgence",
            Command::Verlinde { .. } => "verlinde",
            Command::Wlp { .. } => "wlp",
            Command::Spline { .. } => "spline",
            Command::Verify { .. } => "verify",
        }
    }

    /// Arguments as a JSON object, minus the tag.
    fn inputs(&self) -> Value {
        match serde_json::to_value(self).expect("plain data") {
            Value::Object(mut m) => m.remove(self.name()).unwrap_or(Value::Null),
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// A command result in every output form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reply {
    pub payload: Value,
    pub table: Option<Table>,
    pub pretty: String,
    /// Set when a verification suite found problems.
    pub failed: bool,
}

struct Body {
    value: Value,
    status: Option<String>,
    source: Option<String>,
    table: Option<Table>,
    pretty: String,
    failed: bool,
}

impl Body {
    fn new(value: Value, pretty: impl Into<String>) -> Self {
        Self { value, status: Some("exact".into()), source: None, table: None, pretty: pretty.into(), failed: false }
    }

    fn closed(r: &ClosedFormResult, extra: Option<(i64, String)>) -> Self {
        let mut value = json_rational(&r.value);
        let mut pretty = format!("{} ({}, {})", r.value, tag(&r.status), r.source);
        if let Some((oracle_value, label)) = extra {
            value = json!({"closed_form": value, "oracle": oracle_value});
            pretty.push_str(&format!("\noracle: {label}"));
        }
        Self {
            value,
            status: Some(tag(&r.status)),
            source: Some(r.source.to_string()),
            table: None,
            pretty,
            failed: false,
        }
    }
}

fn tag<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn json_int(v: &BigInt) -> Value {
    v.to_i64().map(Value::from).unwrap_or_else(|| Value::from(v.to_string()))
}

fn json_rational(v: &BigRational) -> Value {
    if v.is_integer() {
        json_int(&v.to_integer())
    } else {
        Value::from(v.to_string())
    }
}

fn parse_rational(op: &'static str, s: &str) -> Result<BigRational> {
    s.trim().parse::<BigRational>().map_err(|_| Error::domain(op, format!("`{s}` is not an integer or p/q")))
}

fn parse_exps(s: &str) -> Result<Vec<u64>> {
    Ok(linsys::parse_mults(s)?.into_iter().map(u64::from).collect())
}

fn alpha_oracle_value(class: &ConfigClass, k: i64, cap: i64, seed: u64, field: Field) -> Result<(i64, String)> {
    let n = class.n() as usize;
    let s = class.num_points().unwrap_or(n + 1);
    let cfg = oracle::random_config(n, s, Some(*class), seed, field)?;
    match oracle::alpha_oracle(&cfg, k as u32, cap)? {
        AlphaOutcome::Found(j) => Ok((j, format!("{j} (seed {seed}, {field})"))),
        AlphaOutcome::ExceededCap(c) => Ok((-1, format!("no form up to degree {c} (seed {seed}, {field})"))),
    }
}

fn table_pretty(t: &Table) -> String {
    let widths: Vec<usize> = (0..t.headers.len())
        .map(|c| t.rows.iter().map(|r| r[c].len()).chain([t.headers[c].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
    };
    let mut out = line(&t.headers);
    for r in &t.rows {
        out.push('\n');
        out.push_str(&line(r));
    }
    out
}

fn execute(cmd: &Command, seed: u64, field: Field) -> Result<Body> {
    match cmd {
        Command::Eulerian { i, j } => {
            let v = combinatorics::eulerian(*i, *j)?;
            Ok(Body::new(json_int(&v), v.to_string()))
        }
        Command::EulerScan { nmax, leading } => {
            if *leading {
                let scan = combinatorics::scan_leading_coeff(*nmax)?;
                let table = Table {
                    headers: vec!["m".into(), "value".into()],
                    rows: scan.rows.iter().map(|r| vec![r.m.to_string(), r.value.to_string()]).collect(),
                };
                let summary = json!({
                    "all_negative": scan.all_negative,
                    "strictly_decreasing": scan.strictly_decreasing,
                    "all_nonzero": scan.all_nonzero,
                });
                let pretty = format!("{}\n{summary}", table_pretty(&table));
                let mut body = Body::new(summary, pretty);
                body.status = Some("scan".into());
                body.table = Some(table);
                return Ok(body);
            }
            let rows = combinatorics::scan_conjecture_71(*nmax)?;
            let violations: Vec<i64> = rows.iter().filter(|r| !r.conforms).map(|r| r.n).collect();
            let table = Table {
                headers: vec!["n".into(), "shape".into(), "expected".into(), "conforms".into(), "diffs".into()],
                rows: rows
                    .iter()
                    .map(|r| {
                        let diffs: Vec<String> = r.diffs.iter().map(ToString::to_string).collect();
                        vec![r.n.to_string(), tag(&r.shape), tag(&r.expected), r.conforms.to_string(), diffs.join(";")]
                    })
                    .collect(),
            };
            let pretty = format!("{}\nviolations: {violations:?}", table_pretty(&table));
            let mut body = Body::new(json!({ "violations": violations }), pretty);
            body.status = Some("scan".into());
            body.table = Some(table);
            Ok(body)
        }
        Command::Hilbert { vars, exps, diff, jmax } => {
            let exps = parse_exps(exps)?;
            let base = match jmax {
                Some(j) => hilbert::ci_hilbert_window(*vars, &exps, *j)?,
                None => hilbert::ci_hilbert(*vars, &exps)?,
            };
            let t = if *diff == 0 { base } else { hilbert::diff(&base, *diff)? };
            let table = Table {
                headers: vec!["j".into(), "value".into()],
                rows: t.values.iter().enumerate().map(|(j, v)| vec![j.to_string(), v.to_string()]).collect(),
            };
            let values: Vec<Value> = t.values.iter().map(json_int).collect();
            let mut body = Body::new(Value::from(values), table_pretty(&table));
            body.table = Some(table);
            Ok(body)
        }
        Command::Linsys { n, deg, mults, max_steps } => {
            let spec = LinearSystemSpec::new(*n, *deg, linsys::parse_mults(mults)?)?;
            let trace = linsys::reduce(&spec, max_steps.unwrap_or_else(|| linsys::default_max_steps(&spec)))?;
            trace.replay()?;
            let steps: Vec<String> = trace.steps.iter().map(ToString::to_string).collect();
            let value = trace.dimension().map(json_int).unwrap_or(Value::Null);
            let mut body = Body::new(json!({ "dimension": value, "trace": steps, "outcome": trace.outcome }), trace.render().trim_end());
            body.status = serde_json::to_value(&trace.outcome).ok().and_then(|o| o["kind"].as_str().map(str::to_string));
            Ok(body)
        }
        Command::Alpha { class, k, check } => {
            let c = class.class()?;
            let r = closed_forms::alpha_symbolic(&c, *k)?;
            let extra = if *check { Some(alpha_oracle_value(&c, *k, r.as_int() + 2, seed, field)?) } else { None };
            Ok(Body::closed(&r, extra))
        }
        Command::Reg { class, d, check } => {
            let c = class.class()?;
            let r = closed_forms::regularity_powers(&c, *d)?;
            let extra = if *check {
                let n = c.n() as usize;
                let cfg = oracle::random_config(n, c.num_points().unwrap_or(n + 1), Some(c), seed, field)?;
                let v = oracle::regularity_oracle(&cfg, *d as u32)?;
                Some((v, format!("{v} (seed {seed}, {field})")))
            } else {
                None
            };
            Ok(Body::closed(&r, extra))
        }
        Command::Waldschmidt { class } => {
            let v = closed_forms::waldschmidt(&class.class()?)?;
            Ok(Body::new(json_rational(&v), v.to_string()))
        }
        Command::Chudnovsky { class } => {
            let holds = closed_forms::chudnovsky_check(&class.class()?)?;
            Ok(Body::new(Value::from(holds), if holds { "holds" } else { "fails" }))
        }
        Command::Demailly { class, k } => {
            let d = closed_forms::demailly_check(&class.class()?, *k)?;
            let t = tag(&d);
            let mut body = Body::new(Value::from(t.clone()), t);
            body.status = Some(if d == closed_forms::Decision::Undecided { "undecided" } else { "exact" }.into());
            Ok(body)
        }
        Command::Resurgence { class } => {
            let v = closed_forms::resurgence(&class.class()?)?;
            Ok(Body::new(json_rational(&v), v.to_string()))
        }
        Command::Verlinde { n, j } => {
            let doubled = parse_rational("verlinde", j)? * BigRational::from_integer(2.into());
            let two_j = Some(doubled)
                .filter(|r| r.is_integer())
                .and_then(|r| r.to_integer().to_u32())
                .ok_or_else(|| Error::domain("verlinde", format!("j = {j} must be a non-negative half integer")))?;
            let v = closed_forms::verlinde(*n, two_j)?;
            let mut body = Body::new(
                json!({ "rounded": v.rounded, "raw": v.raw, "near_integer": v.near_integer }),
                format!("{} (raw {:.12})", v.rounded, v.raw),
            );
            body.status = Some(if v.near_integer { "exact" } else { "not-integral" }.into());
            Ok(body)
        }
        Command::Wlp { n, d, scan, nmin, nmax, dmax } => {
            if *scan {
                let rep = wlp::scan_failure(*nmin..=*nmax, 2..=*dmax)?;
                let headers = ["n", "d", "m", "q", "t", "witness", "applicable", "verdict", "clause"];
                let table = Table {
                    headers: headers.iter().map(|s| s.to_string()).collect(),
                    rows: rep
                        .rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.n.to_string(),
                                r.d.to_string(),
                                r.m.to_string(),
                                r.q.to_string(),
                                r.t.to_string(),
                                r.witness.to_string(),
                                r.applicable.to_string(),
                                tag(&r.verdict),
                                r.clause.as_str().to_string(),
                            ]
                        })
                        .collect(),
                };
                let th: Vec<String> = rep
                    .thresholds
                    .iter()
                    .map(|t| format!("n={}: d0={}", t.n, t.d0.map_or("none".into(), |d| d.to_string())))
                    .collect();
                let mut body = Body::new(json!({ "thresholds": rep.thresholds }), th.join("\n"));
                body.status = Some("scan".into());
                body.table = Some(table);
                return Ok(body);
            }
            let (n, d) = (n.expect("required by clap"), d.expect("required by clap"));
            if n % 2 == 0 && n >= 8 && d >= 2 {
                let v = wlp::wlp_failure_witness(n, d)?;
                let pretty = format!(
                    "n={n} d={d}: {} (witness Δh(r) = P_{{{},{}}}({}) = {}, clause {})",
                    tag(&v.verdict),
                    v.m,
                    v.q,
                    v.t,
                    v.witness,
                    v.clause.as_str()
                );
                let mut body = Body::new(serde_json::to_value(&v).expect("plain data"), pretty);
                body.status = Some(tag(&v.verdict));
                body.source = Some(v.clause.as_str().into());
                Ok(body)
            } else {
                let v = wlp::literature_verdict(n, d)?;
                let word = match v.has_wlp {
                    Some(true) => "has-wlp",
                    Some(false) => "fails",
                    None => "unknown",
                };
                let mut body = Body::new(serde_json::to_value(&v).expect("plain data"), format!("n={n} d={d}: {word} ({})", v.note));
                body.status = Some(word.into());
                body.source = Some("literature".into());
                Ok(body)
            }
        }
        Command::Spline { i, eval, lemma65, sign, gaussian } => {
            if let Some(x) = eval {
                let x = parse_rational("spline", x)?;
                let v = splines::bspline(*i)?.eval(&x);
                return Ok(Body::new(json_rational(&v), v.to_string()));
            }
            if *lemma65 {
                let rep = splines::lemma65_check(*i)?;
                let table = Table {
                    headers: vec!["j".into(), "scaled_spline".into(), "eulerian".into()],
                    rows: rep
                        .rows
                        .iter()
                        .map(|r| vec![r.j.to_string(), r.scaled_spline.to_string(), r.eulerian.to_string()])
                        .collect(),
                };
                let pretty = format!("{}\nholds: {}", table_pretty(&table), rep.holds);
                let mut body = Body::new(json!({ "holds": rep.holds }), pretty);
                body.table = Some(table);
                body.failed = !rep.holds;
                return Ok(body);
            }
            if let Some(m) = sign {
                let v = splines::second_diff_value(*m)?;
                let s = splines::second_diff_sign(*m)?;
                return Ok(Body::new(json!({ "sign": s, "value": json_rational(&v) }), format!("{s:+} ({v})")));
            }
            if let Some(k) = gaussian {
                let samples: Vec<f64> = (-12..=12).map(|t| t as f64 / 4.0).collect();
                let rep = splines::gaussian_compare(*i, *k, &samples)?;
                let pretty = format!(
                    "max deviation {:.3e} at x = {} (bound {})",
                    rep.max_deviation,
                    rep.worst_x,
                    rep.bound.map_or("none".into(), |b| format!("{b:.3e}"))
                );
                let mut body = Body::new(serde_json::to_value(&rep).expect("plain data"), pretty);
                body.status = Some("approximate".into());
                return Ok(body);
            }
            let b = splines::bspline(*i)?;
            let pieces: Vec<Vec<String>> =
                b.pieces.iter().map(|p| p.iter().map(ToString::to_string).collect()).collect();
            let pretty = pieces
                .iter()
                .enumerate()
                .map(|(j, p)| format!("[{j}, {}): coefficients of u^0.. = {}", j + 1, p.join(", ")))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Body::new(json!({ "support_end": b.support_end(), "degree": b.degree(), "pieces": pieces }), pretty))
        }
        Command::Verify { suite, seeds } => {
            let opts = VerifyOptions { seeds: *seeds, base_seed: seed, field };
            let reports = verify::run(suite, &opts)?;
            let failed = reports.iter().any(|r| !r.ok());
            let mut pretty = String::new();
            for r in &reports {
                let mark = if r.ok() { "ok  " } else { "FAIL" };
                pretty.push_str(&format!(
                    "{mark} {:<14} {:>6} cases  {:>4} mismatches  {:>4} flagged  {:>7} ms\n",
                    r.suite,
                    r.cases,
                    r.mismatches.len(),
                    r.flagged.len(),
                    r.elapsed_ms
                ));
                for p in r.mismatches.iter().chain(&r.flagged) {
                    pretty.push_str(&format!("  reproduce: {} :: {}\n", p.case, p.detail));
                }
            }
            let table = Table {
                headers: vec!["suite".into(), "cases".into(), "mismatches".into(), "flagged".into(), "elapsed_ms".into()],
                rows: reports
                    .iter()
                    .map(|r| {
                        vec![
                            r.suite.clone(),
                            r.cases.to_string(),
                            r.mismatches.len().to_string(),
                            r.flagged.len().to_string(),
                            r.elapsed_ms.to_string(),
                        ]
                    })
                    .collect(),
            };
            let mut body = Body::new(serde_json::to_value(&reports).expect("plain data"), pretty.trim_end().to_string());
            body.status = Some(if failed { "failed" } else { "passed" }.into());
            body.table = Some(table);
            body.failed = failed;
            Ok(body)
        }
    }
}

/// Runs one command, consulting and filling the cache when one is given.
pub fn compute(cli: &Cli, cache: Option<&mut Cache>) -> Result<Reply> {
    let cmd = &cli.command;
    let inputs = cmd.inputs();
    let hash = cache::request_hash(cmd.name(), &inputs, cli.seed, cli.field);
    let cacheable = !matches!(cmd, Command::Verify { .. });
    if let (true, Some(c)) = (cacheable, cache.as_deref()) {
        if let Some(rec) = c.lookup(&hash) {
            if let Ok(reply) = serde_json::from_value::<Reply>(rec.payload.clone()) {
                log::debug!("cache hit {hash}");
                return Ok(reply);
            }
        }
    }
    let body = execute(cmd, cli.seed, cli.field)?;
    let payload = json!({
        "command": cmd.name(),
        "inputs": inputs,
        "value": body.value,
        "status": body.status,
        "source": body.source,
        "seed": cli.seed,
        "field": cli.field.to_string(),
    });
    let reply = Reply { payload, table: body.table, pretty: body.pretty, failed: body.failed };
    if let (true, Some(c)) = (cacheable, cache) {
        c.store(hash, cmd.name(), serde_json::to_value(&reply).expect("plain data"))?;
    }
    Ok(reply)
}

fn render(reply: &Reply, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&reply.payload)?),
        Format::Pretty => writeln!(out, "{}", reply.pretty),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            match &reply.table {
                Some(t) => {
                    w.write_record(&t.headers)?;
                    for r in &t.rows {
                        w.write_record(r)?;
                    }
                }
                None => {
                    let p = &reply.payload;
                    let cell = |k: &str| match &p[k] {
                        Value::String(s) => s.clone(),
                        Value::Null => String::new(),
                        v => v.to_string(),
                    };
                    w.write_record(["command", "value", "status", "source", "seed", "field"])?;
                    w.write_record(["command", "value", "status", "source", "seed", "field"].map(cell))?;
                }
            }
            w.flush()
        }
    }
}

/// Parses `args` (program name first) and runs the command. `tty` selects
/// the default format.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, tty: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            log::debug!("worker pool already configured: {e}");
        }
    }
    let format = cli.format.unwrap_or(if tty { Format::Pretty } else { Format::Json });
    let cache_path = cli.cache.clone().or_else(|| std::env::var_os(cache::CACHE_ENV).map(PathBuf::from));
    let result = cache_path
        .map(Cache::open)
        .transpose()
        .and_then(|mut cache| compute(&cli, cache.as_mut()));
    match result {
        Ok(reply) => {
            if let Err(e) = render(&reply, format, out) {
                let _ = writeln!(err, "error: writing output: {e}");
                return 1;
            }
            if reply.failed {
                2
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let tty = std::io::stdout().is_terminal();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(std::env::args_os(), &mut out, &mut err, tty)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("fatpoints").chain(args.iter().copied()), &mut out, &mut err, false);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn alpha_json_envelope() {
        let (code, out, _) = call(&["alpha", "--class", "n2", "--n", "3", "--dept", "1", "--k", "5"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], 7);
        assert_eq!(v["status"], "exact");
        for key in ["command", "inputs", "value", "status", "source", "seed", "field"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }

    #[test]
    fn user_errors_exit_one() {
        assert_eq!(call(&["alpha", "--class", "n9", "--n", "3", "--k", "1"]).0, 1);
        assert_eq!(call(&["nonsense"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }
}
