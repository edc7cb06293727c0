//! CSV and JSON emission of run reports and related tables.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interferometer::FringeScan;
use crate::metrics::DualityTriple;
use crate::pipeline::{RunReport, SpherePoint};

/// Column order of the experiment CSV.
pub const CSV_COLUMNS: [&str; 11] = [
    "name",
    "V_analytic",
    "D_analytic",
    "C_analytic",
    "V_est",
    "D_est",
    "C_est",
    "residual_analytic",
    "residual_est",
    "fidelity",
    "seed",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

/// Where output goes: a file path or standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Destination {
    Stdout,
    File(PathBuf),
}

impl Destination {
    pub fn open(&self) -> Result<Box<dyn Write>> {
        Ok(match self {
            Destination::Stdout => Box::new(io::stdout().lock()),
            Destination::File(p) => Box::new(BufWriter::new(
                File::create(p).map_err(|e| Error::file(p, e))?,
            )),
        })
    }
}

impl From<Option<&Path>> for Destination {
    fn from(p: Option<&Path>) -> Self {
        p.map_or(Destination::Stdout, |p| Destination::File(p.to_path_buf()))
    }
}

/// Formats a float with 12 significant digits in the style of C's `%.12g`.
pub fn format_sig12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row(out: &mut dyn Write, name: &str, values: &[f64], tail: &[String]) -> io::Result<()> {
    let mut fields = vec![csv_field(name)];
    fields.extend(values.iter().map(|&v| format_sig12(v)));
    fields.extend(tail.iter().cloned());
    writeln!(out, "{}", fields.join(","))
}

pub fn write_csv(reports: &[RunReport], out: &mut dyn Write) -> Result<()> {
    writeln!(out, "{}", CSV_COLUMNS.join(","))?;
    for r in reports {
        let (a, e) = (&r.analytic, &r.estimated);
        csv_row(
            out,
            &r.name,
            &[
                a.v,
                a.d,
                a.c,
                e.v,
                e.d,
                e.c,
                a.residual,
                e.residual,
                r.diagnostics.fidelity,
            ],
            &[r.seed.to_string()],
        )?;
    }
    Ok(())
}

fn write_json<T: Serialize + ?Sized>(value: &T, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| {
        if e.is_io() {
            Error::Io(e.into())
        } else {
            Error::Serialize(e.to_string())
        }
    })?;
    writeln!(out)?;
    Ok(())
}

/// Writes run reports as CSV (fixed columns, see [`CSV_COLUMNS`]) or as a
/// JSON array of [`RunReport`] objects.
pub fn emit_report(reports: &[RunReport], format: ReportFormat, dest: &Destination) -> Result<()> {
    if reports.is_empty() {
        return Err(Error::validation("", "reports", "nothing to emit"));
    }
    let mut out = dest.open()?;
    write_reports(reports, format, &mut *out)?;
    out.flush()?;
    Ok(())
}

pub fn write_reports(
    reports: &[RunReport],
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        ReportFormat::Csv => write_csv(reports, out),
        ReportFormat::Json => write_json(reports, out),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyticRow {
    pub name: String,
    #[serde(flatten)]
    pub triple: DualityTriple,
}

pub fn write_analytic(
    rows: &[AnalyticRow],
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        ReportFormat::Json => write_json(rows, out),
        ReportFormat::Csv => {
            writeln!(out, "name,V,D,C,gamma_re,gamma_im,residual")?;
            for r in rows {
                let t = &r.triple;
                let g = t.gamma.unwrap_or_default();
                csv_row(out, &r.name, &[t.v, t.d, t.c, g.re, g.im, t.residual], &[])?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FringeTable {
    pub name: String,
    pub exact: FringeScan,
    pub measured: FringeScan,
}

pub fn write_fringes(
    tables: &[FringeTable],
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        ReportFormat::Json => write_json(tables, out),
        ReportFormat::Csv => {
            writeln!(out, "name,phi,p_exact,p_measured,shots")?;
            for t in tables {
                for (e, m) in t.exact.points().iter().zip(t.measured.points()) {
                    csv_row(
                        out,
                        &t.name,
                        &[e.phi.0, e.p, m.p],
                        &[t.measured.shots_per_point().to_string()],
                    )?;
                }
            }
            Ok(())
        }
    }
}

pub fn write_sphere(
    points: &[SpherePoint],
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        ReportFormat::Json => write_json(points, out),
        ReportFormat::Csv => {
            writeln!(out, "name,x,y,z,x_analytic,y_analytic,z_analytic")?;
            for p in points {
                let values = [p.estimated, p.analytic].concat();
                csv_row(out, &p.name, &values, &[])?;
            }
            Ok(())
        }
    }
}
