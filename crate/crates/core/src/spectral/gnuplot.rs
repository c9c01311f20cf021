use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rug::Float;

use super::SampleSeries;
use crate::error::Result;
use crate::scalar::format_real;

/// Writes `x value` lines with x = k·step, under a `#` header. Integral
/// abscissae print as plain integers; values are the real parts printed
/// with `digits` significant digits.
pub fn gp_1d_print(s: &SampleSeries, path: impl AsRef<Path>, digits: usize) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "# x value")?;
    let prec = s.step.prec();
    for (k, z) in s.samples.iter().enumerate() {
        let x = Float::with_val(prec, &s.step * k as u64);
        writeln!(
            out,
            "{} {}",
            abscissa(&x, digits),
            format_real(&z.re, digits)
        )?;
    }
    out.flush()?;
    Ok(())
}

fn abscissa(x: &Float, digits: usize) -> String {
    if x.is_integer() {
        if let Some(i) = x.to_integer() {
            return i.to_string();
        }
    }
    format_real(x, digits)
}
