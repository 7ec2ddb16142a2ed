//! Command-line front end for `ballspec`.
//!
//! [`run`] takes the full argument vector and two sinks and returns the exit
//! status: 0 on success, 1 for usage errors, 2 for numerical failures.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use ballspec::courant::{self, SharpnessVerdict};
use ballspec::pleijel::{self, PleijelRow, QuotientPlot};
use ballspec::spectrum::SpectrumTable;
use ballspec::zeros::{self, RootKind, RootRequest};
use ballspec::{BoundaryCondition, Error, Order};
use clap::Parser;
use serde::Serialize;

pub mod args;
pub mod selfcheck;

pub use args::Cli;
use args::{
    CertifyArgs, Command, CourantArgs, Format, JsonOrTable, Kind, PleijelArgs, SpectrumArgs,
    ZerosArgs,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

/// Environment variable capping the worker threads (0 = one per core).
pub const THREADS_ENV: &str = "BALLSPEC_THREADS";

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numerical(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Parse an argument vector (including the program name).
pub fn parse_command<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match parse_command(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    if cli.verbose {
        let _ = writeln!(err, "ballspec {}", env!("CARGO_PKG_VERSION"));
    }
    let threads = match thread_count() {
        Ok(n) => n,
        Err(f) => return report(f, err),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => return report(Failure::Usage(format!("thread pool: {e}")), err),
    };
    let (mut buf_out, mut buf_err) = (Vec::new(), Vec::new());
    let result = pool.install(|| dispatch(cli.command, &mut buf_out, &mut buf_err));
    let _ = out.write_all(&buf_out);
    let _ = err.write_all(&buf_err);
    match result {
        Ok(code) => code,
        Err(f) => report(f, err),
    }
}

fn report(f: Failure, err: &mut dyn Write) -> i32 {
    let kind = match f {
        Failure::Usage(_) => "error",
        Failure::Numerical(_) => "numerical failure",
    };
    let _ = writeln!(err, "ballspec: {kind}: {}", f.message());
    f.exit_code()
}

fn thread_count() -> Result<usize, Failure> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{THREADS_ENV} must be a non-negative integer, got {s:?}"))),
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Spectrum(a) => spectrum(a, out).map(|_| EXIT_OK),
        Command::Zeros(a) => zeros_cmd(a, out).map(|_| EXIT_OK),
        Command::Courant(a) => courant_cmd(a, out).map(|_| EXIT_OK),
        Command::Pleijel(a) => pleijel_cmd(a, out).map(|_| EXIT_OK),
        Command::Certify(a) => certify(a, out).map(|_| EXIT_OK),
        Command::Selfcheck(a) => {
            let code = selfcheck::run(a.fast, &selfcheck::default_kernel, out);
            if code != EXIT_OK {
                let _ = writeln!(err, "ballspec: selfcheck failed");
            }
            Ok(code)
        }
    }
}

fn emit(text: &str, path: Option<&std::path::Path>, out: &mut dyn Write) -> CmdResult {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write output: {e}"))),
    }
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

fn spectrum(a: SpectrumArgs, out: &mut dyn Write) -> CmdResult {
    let table = SpectrumTable::enumerate(a.d, a.bc.into(), a.lambda_max)?;
    let text = match a.format {
        Format::Json => json(&table),
        Format::Csv => table.to_csv(),
        Format::Table => spectrum_table_text(&table),
    };
    emit(&text, a.out.output.as_deref(), out)
}

fn spectrum_table_text(t: &SpectrumTable) -> String {
    let mut s = format!("# d = {}, {}, lambda <= {}\n", t.d, t.bc, t.lambda_max);
    let _ = writeln!(
        s,
        "{:>6} {:>6} {:>4} {:>4} {:>14} {:>16} {:>6}",
        "first", "last", "l", "m", "zero", "lambda", "mult"
    );
    for r in &t.records {
        let _ = writeln!(
            s,
            "{:>6} {:>6} {:>4} {:>4} {:>14.6} {:>16.6} {:>6}",
            r.label_first, r.label_last, r.l, r.m, r.zero, r.lambda, r.multiplicity
        );
    }
    s
}

#[derive(Serialize)]
struct ZerosReport {
    kind: &'static str,
    nu: String,
    l: Option<u32>,
    d: Option<u32>,
    tol: f64,
    zeros: Vec<f64>,
}

fn zeros_cmd(a: ZerosArgs, out: &mut dyn Write) -> CmdResult {
    if !(a.tol > 0.0 && a.tol < 1e-3) {
        return Err(Failure::Usage(format!("--tol must be in (0, 1e-3), got {}", a.tol)));
    }
    let (kind, nu, l, d) = match a.kind {
        Kind::Bessel => {
            if a.l.is_some() || a.d.is_some() {
                return Err(Failure::Usage("--kind bessel takes --nu, not --l/--d".into()));
            }
            let nu = a.nu.ok_or_else(|| Failure::Usage("--kind bessel requires --nu".into()))?;
            (RootKind::BesselJ, nu, None, None)
        }
        Kind::Dirichlet | Kind::Neumann => {
            if a.nu.is_some() {
                return Err(Failure::Usage("--nu is only valid with --kind bessel".into()));
            }
            let (Some(l), Some(d)) = (a.l, a.d) else {
                return Err(Failure::Usage("--kind dirichlet/neumann requires --l and --d".into()));
            };
            let kind = if a.kind == Kind::Dirichlet {
                RootKind::DirichletXi
            } else {
                RootKind::NeumannXiPrime
            };
            (kind, Order::for_ball(l, d)?, Some(l), Some(d))
        }
    };
    let values = (1..=a.count)
        .map(|m| match kind {
            RootKind::BesselJ => zeros::bessel_zero(nu, m, a.tol),
            _ => RootRequest::new(kind, l.unwrap(), d.unwrap(), m).with_tol(a.tol).solve(),
        })
        .collect::<Result<Vec<f64>, Error>>()?;
    let report = ZerosReport {
        kind: match a.kind {
            Kind::Bessel => "bessel",
            Kind::Dirichlet => "dirichlet",
            Kind::Neumann => "neumann",
        },
        nu: nu.to_string(),
        l,
        d,
        tol: a.tol,
        zeros: values,
    };
    let text = match a.format {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("m,zero\n");
            for (i, z) in report.zeros.iter().enumerate() {
                let _ = writeln!(s, "{},{}", i + 1, z);
            }
            s
        }
        Format::Table => {
            let mut s = format!("# {} zeros, nu = {}\n", report.kind, report.nu);
            for (i, z) in report.zeros.iter().enumerate() {
                let _ = writeln!(s, "{:>4} {:>22.15}", i + 1, z);
            }
            s
        }
    };
    emit(&text, a.out.output.as_deref(), out)
}

fn courant_cmd(a: CourantArgs, out: &mut dyn Write) -> CmdResult {
    let bc: BoundaryCondition = a.bc.into();
    let verdicts = courant::courant_sharp_ball(a.d, bc, a.lmax, a.mmax)?;
    let text = match a.format {
        JsonOrTable::Json => {
            let mut s = courant::report_json(&verdicts);
            s.push('\n');
            s
        }
        JsonOrTable::Table => courant_table_text(a.d, bc, &verdicts),
    };
    emit(&text, a.out.output.as_deref(), out)
}

fn courant_table_text(d: u32, bc: BoundaryCondition, v: &[SharpnessVerdict]) -> String {
    let mut s = format!("# d = {d}, {bc}\n");
    let _ = writeln!(s, "{:>6} {:>4} {:>4} {:>6}  status", "label", "l", "m", "mu");
    for v in v {
        let mu = v.mu.map_or_else(|| "-".to_string(), |m| m.to_string());
        let _ = writeln!(
            s,
            "{:>6} {:>4} {:>4} {:>6}  {:?}",
            v.record.label_first, v.record.l, v.record.m, mu, v.status
        );
    }
    let sharp = courant::sharp_labels(v);
    let _ = writeln!(s, "# sharp labels: {sharp:?}");
    s
}

fn range_pair(v: &[u32]) -> Result<(u32, u32), Failure> {
    match v {
        [a, b] if a <= b => Ok((*a, *b)),
        _ => Err(Failure::Usage(format!("expected D_MIN <= D_MAX, got {v:?}"))),
    }
}

fn pleijel_cmd(a: PleijelArgs, out: &mut dyn Write) -> CmdResult {
    let text = if let Some(r) = &a.table {
        let (lo, hi) = range_pair(r)?;
        let rows = pleijel::gamma_table(lo, hi)?;
        match a.format {
            Format::Json => json(&rows),
            Format::Csv => pleijel::table_csv(&rows),
            Format::Table => pleijel_table_text(&rows)?,
        }
    } else if let Some(r) = &a.quotient {
        let (lo, hi) = range_pair(r)?;
        let curve = pleijel::quotient_curve(lo, hi)?;
        match a.format {
            Format::Json => json(&QuotientPlot::new(&curve)),
            Format::Csv => {
                let mut s = String::from("d,quotient\n");
                for (d, q) in &curve {
                    let _ = writeln!(s, "{d},{q}");
                }
                s
            }
            Format::Table => {
                let mut s = String::from("     d  gamma(d+1)/gamma(d)\n");
                for (d, q) in &curve {
                    let _ = writeln!(s, "{d:>6}  {}", pleijel::round6(*q)?);
                }
                s
            }
        }
    } else {
        let d = a.bound.expect("clap enforces one of the group");
        let b = pleijel::neumann_pleijel_bound(d)?;
        match a.format {
            Format::Json => json(&serde_json::json!({ "d": d, "bound": b })),
            Format::Csv => format!("d,bound\n{d},{b}\n"),
            Format::Table => format!("{d:>6}  {}\n", pleijel::round6(b)?),
        }
    };
    emit(&text, a.out.output.as_deref(), out)
}

fn pleijel_table_text(rows: &[PleijelRow]) -> Result<String, Failure> {
    let mut s = String::from("     d     gamma(d)\n");
    for r in rows {
        let _ = writeln!(s, "{:>6}     {}", r.d, pleijel::round6(r.gamma)?);
    }
    Ok(s)
}

fn certify(a: CertifyArgs, out: &mut dyn Write) -> CmdResult {
    if a.d_min > a.d_max {
        return Err(Failure::Usage(format!("--d-min {} exceeds --d-max {}", a.d_min, a.d_max)));
    }
    let certs = pleijel::certify_range(a.d_min, a.d_max)?;
    let text = match a.format {
        JsonOrTable::Json => json(&certs),
        JsonOrTable::Table => {
            let mut s = String::from("     d  checks  analytic bound vs 1  smallest relative margin\n");
            for c in &certs {
                let (name, margin) = c
                    .checks
                    .iter()
                    .map(|e| (e.name.as_str(), e.margin() / e.rhs.abs().max(1e-300)))
                    .fold(("", f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
                let _ = writeln!(
                    s,
                    "{:>6} {:>7}  {:<19}  {margin:.3e} ({name})",
                    c.d,
                    c.checks.len(),
                    format!("{:?}", c.analytic_final_vs_one)
                );
            }
            s
        }
    };
    emit(&text, a.out.output.as_deref(), out)
}
