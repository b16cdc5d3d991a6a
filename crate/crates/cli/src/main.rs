use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::{Float, Rational};
use serde::Serialize;

use zeta3::analysis::{
    column_label, error_sequence, fit_exponential, format_sci, irrationality_certificate, Certificate, TABLE_COLUMNS,
};
use zeta3::contfrac::{apery_cf, nesterenko_cf, rho_cf, ContFrac};
use zeta3::suite::{self, Check, Scope};
use zeta3::zoo::SeriesId;

#[derive(Parser)]
#[command(name = "zeta3", version, about = "Rational approximations and series for ζ(3)")]
struct Cli {
    #[command(flatten)]
    out: OutputOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputOpts {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 1024)]
    prec_bits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Significant figures for floating output.
    #[arg(long, global = true, default_value_t = 3)]
    sig_figs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Apery,
    Nesterenko,
    Rho,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact-identity suites.
    Verify {
        #[arg(long, default_value = "all")]
        scope: Scope,
        #[arg(long, default_value_t = 30)]
        n_max: u32,
        #[arg(long, default_value_t = 6)]
        rho_max: u32,
    },
    /// Absolute errors |ζₙ − ζ(3)| per series.
    Table(SeriesRange),
    /// Exponential fit ln εₙ = ln q + β·i per series.
    Fit {
        #[command(flatten)]
        range: SeriesRange,
        /// Bases b for the rates r(b) = −β/ln b.
        #[arg(long, value_delimiter = ',', default_value = "2,10")]
        bases: Vec<u32>,
    },
    /// Coefficients and exact convergents of a continued fraction.
    Cf {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        rho: u32,
    },
    /// Integrality and growth evidence along the ρ-family.
    Certify {
        #[arg(long, default_value_t = 1)]
        rho: u32,
        #[arg(long = "n", default_value_t = 40)]
        n: u32,
    },
}

#[derive(Args)]
struct SeriesRange {
    /// Comma-separated series ids; defaults to the eight table columns.
    #[arg(long, value_delimiter = ',')]
    series: Option<Vec<String>>,
    #[arg(long, default_value_t = 51)]
    n_lo: u32,
    #[arg(long, default_value_t = 70)]
    n_hi: u32,
}

/// Bad input detected after parsing; exits with status 2 like a clap error.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// A command ran but some check failed; exit status 1.
const FAILED: u8 = 1;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(FAILED),
        Err(e) if closed_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if is_usage(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(FAILED)
            }
        }
    }
}

fn closed_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        let io = c.downcast_ref::<io::Error>().or_else(|| {
            c.downcast_ref::<csv::Error>().and_then(|e| match e.kind() {
                csv::ErrorKind::Io(io) => Some(io),
                _ => None,
            })
        });
        let json = c.downcast_ref::<serde_json::Error>().and_then(serde_json::Error::io_error_kind);
        io.map(io::Error::kind).or(json) == Some(io::ErrorKind::BrokenPipe)
    })
}

fn is_usage(e: &anyhow::Error) -> bool {
    e.downcast_ref::<UsageError>().is_some()
        || matches!(e.downcast_ref::<zeta3::Error>(), Some(zeta3::Error::InvalidArgument(_)))
}

fn run(cli: &Cli) -> Result<bool> {
    let o = &cli.out;
    if o.prec_bits < zeta3::bigmath::MIN_PREC {
        return Err(usage(format!("--prec-bits must be at least {}", zeta3::bigmath::MIN_PREC)));
    }
    if o.sig_figs == 0 {
        return Err(usage("--sig-figs must be at least 1"));
    }
    let mut sink: Box<dyn Write> = match &o.out {
        Some(path) => Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let ok = match &cli.command {
        Command::Verify { scope, n_max, rho_max } => verify(o, &mut sink, *scope, *n_max, *rho_max)?,
        Command::Table(range) => table(o, &mut sink, range)?,
        Command::Fit { range, bases } => fit(o, &mut sink, range, bases)?,
        Command::Cf { family, depth, rho } => cf(o, &mut sink, *family, *depth, *rho)?,
        Command::Certify { rho, n } => certify(o, &mut sink, *rho, *n)?,
    };
    sink.flush()?;
    Ok(ok)
}

fn write_json(sink: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *sink, value)?;
    writeln!(sink)?;
    Ok(())
}

fn csv_writer(sink: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::Writer::from_writer(sink)
}

fn verify(o: &OutputOpts, sink: &mut dyn Write, scope: Scope, n_max: u32, rho_max: u32) -> Result<bool> {
    let checks = suite::run(scope, n_max, rho_max)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    match o.format {
        Format::Csv => {
            let mut w = csv_writer(sink);
            w.write_record(["check", "status", "detail"])?;
            for Check { name, passed, detail } in &checks {
                w.write_record([name.as_str(), status(*passed), detail.as_str()])?;
            }
            w.flush()?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                check: &'a str,
                passed: bool,
                detail: &'a str,
            }
            let rows: Vec<Row> =
                checks.iter().map(|c| Row { check: &c.name, passed: c.passed, detail: &c.detail }).collect();
            write_json(sink, &rows)?;
        }
    }
    eprintln!("{scope}: {} of {} checks passed", checks.len() - failed, checks.len());
    Ok(failed == 0)
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn parse_series(list: &Option<Vec<String>>) -> Result<Vec<SeriesId>> {
    let Some(list) = list else {
        return Ok(TABLE_COLUMNS.iter().map(|c| c.series).collect());
    };
    let ids: Vec<SeriesId> =
        list.iter().filter(|s| !s.trim().is_empty()).map(|s| s.parse()).collect::<zeta3::Result<_>>()?;
    if ids.is_empty() {
        return Err(usage("--series is empty"));
    }
    Ok(ids)
}

fn check_range(r: &SeriesRange) -> Result<()> {
    if r.n_lo > r.n_hi {
        return Err(usage(format!("--n-lo {} exceeds --n-hi {}", r.n_lo, r.n_hi)));
    }
    Ok(())
}

fn table(o: &OutputOpts, sink: &mut dyn Write, range: &SeriesRange) -> Result<bool> {
    check_range(range)?;
    let ids = parse_series(&range.series)?;
    let mut columns = Vec::with_capacity(ids.len());
    for &id in &ids {
        let errs = error_sequence(id, range.n_lo, range.n_hi, o.prec_bits).with_context(|| format!("series {id}"))?;
        columns.push(errs.eps.iter().map(|e| format_sci(e, o.sig_figs)).collect::<Vec<_>>());
    }
    let names: Vec<String> = ids.iter().map(ToString::to_string).collect();
    let rows = (range.n_lo..=range.n_hi)
        .enumerate()
        .map(|(i, n)| (n, columns.iter().map(|c| c[i].clone()).collect::<Vec<_>>()));
    match o.format {
        Format::Csv => {
            let mut w = csv_writer(sink);
            w.write_record(std::iter::once("n".to_string()).chain(names))?;
            for (n, cells) in rows {
                w.write_record(std::iter::once(n.to_string()).chain(cells))?;
            }
            w.flush()?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                n: u32,
                errors: Vec<String>,
            }
            #[derive(Serialize)]
            struct Table {
                series: Vec<String>,
                labels: Vec<String>,
                rows: Vec<Row>,
            }
            let t = Table {
                labels: ids.iter().map(|&id| column_label(id)).collect(),
                series: names,
                rows: rows.map(|(n, errors)| Row { n, errors }).collect(),
            };
            write_json(sink, &t)?;
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct FitRow {
    series: String,
    label: String,
    n_lo: u32,
    n_hi: u32,
    ln_q: String,
    beta: String,
    q: String,
    rates: Vec<(u32, String)>,
    max_residual: String,
}

fn fit(o: &OutputOpts, sink: &mut dyn Write, range: &SeriesRange, bases: &[u32]) -> Result<bool> {
    check_range(range)?;
    let ids = parse_series(&range.series)?;
    if let Some(b) = bases.iter().find(|&&b| b < 2) {
        return Err(usage(format!("rate base must be >= 2, got {b}")));
    }
    let sig = o.sig_figs;
    let mut rows = Vec::with_capacity(ids.len());
    for &id in &ids {
        let errs = error_sequence(id, range.n_lo, range.n_hi, o.prec_bits).with_context(|| format!("series {id}"))?;
        let f = fit_exponential(&errs)?;
        let prec = f.beta.prec();
        let rates = bases
            .iter()
            .map(|&b| {
                let r = Float::with_val(prec, -&f.beta) / Float::with_val(prec, b).ln();
                (b, format_sci(&r, sig))
            })
            .collect();
        rows.push(FitRow {
            series: id.to_string(),
            label: column_label(id),
            n_lo: range.n_lo,
            n_hi: range.n_hi,
            ln_q: format_sci(&f.ln_q, sig),
            beta: format_sci(&f.beta, sig),
            q: format_sci(&f.q, sig),
            rates,
            max_residual: format_sci(&f.max_residual, sig),
        });
    }
    match o.format {
        Format::Csv => {
            let mut w = csv_writer(sink);
            let mut header: Vec<String> =
                ["series", "label", "n_lo", "n_hi", "ln_q", "beta", "q"].map(String::from).to_vec();
            header.extend(bases.iter().map(|b| format!("r_b{b}")));
            header.push("max_residual".into());
            w.write_record(&header)?;
            for r in rows {
                let mut rec = vec![r.series, r.label, r.n_lo.to_string(), r.n_hi.to_string(), r.ln_q, r.beta, r.q];
                rec.extend(r.rates.into_iter().map(|(_, v)| v));
                rec.push(r.max_residual);
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
        Format::Json => write_json(sink, &rows)?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct Convergent {
    n: usize,
    p: String,
    q: String,
    value: String,
}

#[derive(Serialize)]
struct CfOut {
    family: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<u32>,
    depth: usize,
    a0: String,
    a: Vec<String>,
    b: Vec<String>,
    convergents: Vec<Convergent>,
}

fn rat(x: &Rational) -> String {
    x.to_string()
}

fn cf(o: &OutputOpts, sink: &mut dyn Write, family: Family, depth: usize, rho: u32) -> Result<bool> {
    if depth == 0 {
        return Err(usage("--depth must be at least 1"));
    }
    let (name, frac, rho): (_, ContFrac, _) = match family {
        Family::Apery => ("apery", apery_cf(depth), None),
        Family::Nesterenko => ("nesterenko", nesterenko_cf(depth), None),
        Family::Rho => ("rho", rho_cf(depth, rho)?, Some(rho)),
    };
    let pair = frac.convergents(depth)?;
    let convergents = (0..=depth)
        .map(|n| {
            let value = if pair.q[n] == 0 {
                "inf".to_string()
            } else {
                format_sci(&Float::with_val(o.prec_bits, pair.ratio(n)), o.sig_figs)
            };
            Convergent { n, p: rat(&pair.p[n]), q: rat(&pair.q[n]), value }
        })
        .collect();
    let out = CfOut {
        family: name,
        rho,
        depth,
        a0: rat(&frac.a0),
        a: frac.a.iter().map(rat).collect(),
        b: frac.b.iter().map(rat).collect(),
        convergents,
    };
    match o.format {
        Format::Json => write_json(sink, &out)?,
        Format::Csv => {
            let mut w = csv_writer(sink);
            w.write_record(["n", "a", "b", "p", "q", "value"])?;
            for c in &out.convergents {
                let (a, b) = match c.n {
                    0 => (out.a0.as_str(), ""),
                    n => (out.a[n - 1].as_str(), out.b[n - 1].as_str()),
                };
                w.write_record([&c.n.to_string(), a, b, &c.p, &c.q, &c.value])?;
            }
            w.flush()?;
        }
    }
    Ok(true)
}

fn certify(o: &OutputOpts, sink: &mut dyn Write, rho: u32, n: u32) -> Result<bool> {
    if n < 10 {
        return Err(usage(format!("certify needs --n >= 10, got {n}")));
    }
    if rho == 0 {
        return Err(usage("--rho must be at least 1"));
    }
    let cert = irrationality_certificate(rho, n, o.prec_bits)?;
    let passed = cert.passed();
    let checks = certificate_checks(&cert);
    match o.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                rho: u32,
                n_max: u32,
                delta: String,
                e3w4: String,
                integrality_checked: usize,
                checks: Vec<CertCheck>,
                passed: bool,
            }
            let out = Out {
                rho: cert.rho,
                n_max: cert.n_max,
                delta: format_sci(&cert.delta, o.sig_figs),
                e3w4: format_sci(&cert.e3w4, o.sig_figs),
                integrality_checked: cert.integrality_checks.len(),
                checks,
                passed,
            };
            write_json(sink, &out)?;
        }
        Format::Csv => {
            let mut w = csv_writer(sink);
            w.write_record(["check", "status"])?;
            for c in &checks {
                w.write_record([c.name.as_str(), status(c.passed)])?;
            }
            w.write_record(["delta", &format_sci(&cert.delta, o.sig_figs)])?;
            w.write_record(["e3w4", &format_sci(&cert.e3w4, o.sig_figs)])?;
            w.flush()?;
        }
    }
    if !passed {
        eprintln!("certificate failed for rho = {rho}, N = {n}");
    }
    Ok(passed)
}

#[derive(Serialize)]
struct CertCheck {
    name: String,
    passed: bool,
}

fn certificate_checks(cert: &Certificate) -> Vec<CertCheck> {
    let integral = cert.integrality_checks.iter().all(|c| c.nq && c.scaled_p);
    let mut checks = vec![CertCheck { name: format!("integrality n <= {}", cert.n_max), passed: integral }];
    checks.extend(cert.growth_checks.iter().map(|(name, ok)| CertCheck { name: name.clone(), passed: *ok }));
    checks.push(CertCheck { name: "delta > 0".into(), passed: cert.delta > 0 });
    checks
}
