//! Two-variable linear system that needs more than double precision.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use mpcm::linalg::{inv_with, solve_gauss_with, PivotPolicy};
use mpcm::matrix::Matrix;
use mpcm::scalar::{format_complex, parse_complex_with_prec};
use mpcm::MpComplex;

pub const EXACT_X: u64 = 205_117_922;
pub const EXACT_Y: u64 = 83_739_041;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Inverse,
    Gauss,
}

impl Method {
    fn file_name(self) -> &'static str {
        match self {
            Method::Inverse => "classic_inv.dat",
            Method::Gauss => "classic_gauss.dat",
        }
    }
}

fn system(prec: u32) -> Result<(Matrix, Matrix)> {
    let entries = ["64919121", "-159018721", "41869520.5", "-102558961"];
    let mut a = Matrix::zeros(2, 2, prec);
    for (k, s) in entries.iter().enumerate() {
        a[(k / 2, k % 2)] = parse_complex_with_prec(s, prec)?;
    }
    let b = Matrix::column_vector(vec![MpComplex::one(prec), MpComplex::zero(prec)]);
    Ok((a, b))
}

/// Returns (x, y) computed at `prec` bits. Only exactly-zero pivots are
/// rejected, so starved precisions give the wrong answers they produce.
pub fn solve(prec: u32, method: Method) -> Result<(MpComplex, MpComplex)> {
    let (a, b) = system(prec)?;
    let x = match method {
        Method::Inverse => inv_with(&a, PivotPolicy::ExactZero)?.mul(&b)?,
        Method::Gauss => solve_gauss_with(&a, &b, PivotPolicy::ExactZero)?,
    };
    Ok((x[(0, 0)].clone(), x[(1, 0)].clone()))
}

/// Sweeps `prec_min..=prec_max` and writes one `# prec x y` file per method.
pub fn run(
    prec_min: u32,
    prec_max: u32,
    out_dir: &std::path::Path,
    digits: usize,
) -> Result<Vec<PathBuf>> {
    if prec_min < 2 || prec_min > prec_max {
        bail!("need 2 <= prec_min <= prec_max, got {prec_min}..{prec_max}");
    }
    let mut paths = Vec::new();
    for method in [Method::Inverse, Method::Gauss] {
        let path = out_dir.join(method.file_name());
        let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        let mut out = BufWriter::new(file);
        writeln!(out, "# prec x y")?;
        for prec in prec_min..=prec_max {
            let line = match solve(prec, method) {
                Ok((x, y)) => format!(
                    "{prec} {} {}",
                    format_complex(&x, digits),
                    format_complex(&y, digits)
                ),
                Err(e) => format!("# {prec} {e}"),
            };
            writeln!(out, "{line}")?;
        }
        out.flush()?;
        paths.push(path);
    }
    Ok(paths)
}
