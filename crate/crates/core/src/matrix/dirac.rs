use rug::ops::Pow;
use rug::Float;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{format_complex, visible_parts};

/// Writes an operator on qubits as `c|b><b'|` terms in row-major order.
///
/// Labels are binary of width log2(dim). Terms with |c| below
/// 10^-(digits+2) are omitted and an all-zero operator prints as `0`.
/// Coefficients with both parts visible are parenthesised.
pub fn str_dirac(rho: &Matrix, digits: usize) -> Result<String> {
    let n = rho.rows();
    if !rho.is_square() || !n.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "Dirac form needs a square power-of-two dimension, got {}",
            rho.shape()
        )));
    }
    let width = n.trailing_zeros() as usize;
    let floor = Float::with_val(64, 10).pow(-(digits as i32 + 2));
    let floor2 = Float::with_val(64, &floor * &floor);
    let mut terms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = &rho[(i, j)];
            if c.norm_sqr() < floor2 {
                continue;
            }
            let mut coef = format_complex(c, digits);
            if visible_parts(c, digits) == (true, true) {
                coef = format!("({coef})");
            }
            terms.push(format!("{coef}|{i:0width$b}><{j:0width$b}|"));
        }
    }
    if terms.is_empty() {
        return Ok("0".into());
    }
    Ok(terms.join("+"))
}
