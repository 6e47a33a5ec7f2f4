//! Report serialization. All floats are written with 17 significant digits
//! (`{:.16e}`), enough to reproduce every f64 bit-exactly on re-parse, so
//! reports from identical seeds are byte-identical files.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};

use crate::error::{Error, Result};
use crate::verify::{DeltaReport, GrowthTable};

struct SigDigits(CompactFormatter);

impl Formatter for SigDigits {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:e}")
    }
}

/// Serialize to JSON with 17-significant-digit floats.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, SigDigits(CompactFormatter));
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?;
    String::from_utf8(out).map_err(|e| Error::Internal(format!("non-UTF8 serialization: {e}")))
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// Sweep samples as CSV with columns `xi_0..xi_{n-1},delta,err`.
pub fn delta_report_csv(report: &DeltaReport) -> String {
    let n = report.samples.first().map_or(0, |s| s.xi.len());
    let mut out = String::new();
    for i in 0..n {
        out.push_str(&format!("xi_{i},"));
    }
    out.push_str("delta,err\n");
    for s in &report.samples {
        for v in &s.xi {
            out.push_str(&fmt(*v));
            out.push(',');
        }
        out.push_str(&fmt(s.delta));
        out.push(',');
        out.push_str(&fmt(s.quad_error));
        out.push('\n');
    }
    out
}

/// Growth table as CSV with columns `R,mass`.
pub fn growth_table_csv(table: &GrowthTable) -> String {
    let mut out = String::from("R,mass\n");
    for (r, m) in table.radii.iter().zip(&table.masses) {
        out.push_str(&fmt(*r));
        out.push(',');
        out.push_str(&fmt(*m));
        out.push('\n');
    }
    out
}

/// Lie convergence table as CSV with columns `m,error`.
pub fn lie_table_csv(table: &[(u32, f64)]) -> String {
    let mut out = String::from("m,error\n");
    for (m, e) in table {
        out.push_str(&format!("{m},"));
        out.push_str(&fmt(*e));
        out.push('\n');
    }
    out
}
