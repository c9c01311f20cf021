use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{check_precision, default_precision, parse_complex_with_prec};

/// Reads `[a, b; c, d]`: rows split by `;`, entries by `,`, each entry a
/// complex literal. All rows must have the same length.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    parse_matrix_with_prec(text, default_precision())
}

pub fn parse_matrix_with_prec(text: &str, prec: u32) -> Result<Matrix> {
    check_precision(prec)?;
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    let open = text
        .find(|c: char| !c.is_ascii_whitespace())
        .filter(|&i| text.as_bytes()[i] == b'[')
        .ok_or_else(|| err(leading_ws(text), "expected '['"))?;
    let close = text
        .rfind(|c: char| !c.is_ascii_whitespace())
        .filter(|&i| i > open && text.as_bytes()[i] == b']')
        .ok_or_else(|| err(text.len(), "expected closing ']'"))?;
    let body = &text[open + 1..close];
    if let Some(i) = body.find(['[', ']']) {
        return Err(err(open + 1 + i, "unexpected bracket"));
    }

    let mut data = Vec::new();
    let mut cols = None;
    let mut rows = 0;
    let mut row_start = open + 1;
    for row in body.split(';') {
        let mut n = 0;
        let mut entry_start = row_start;
        for entry in row.split(',') {
            let z = parse_complex_with_prec(entry, prec).map_err(|e| match e {
                Error::Parse { position, message } => Error::Parse {
                    position: entry_start + position,
                    message,
                },
                other => other,
            })?;
            data.push(z);
            n += 1;
            entry_start += entry.len() + 1;
        }
        match cols {
            None => cols = Some(n),
            Some(c) if c != n => {
                return Err(err(
                    row_start,
                    &format!("row {rows} has {n} entries, expected {c}"),
                ))
            }
            _ => {}
        }
        rows += 1;
        row_start += row.len() + 1;
    }
    Matrix::from_vec(rows, cols.unwrap_or(0), data)
}

fn leading_ws(text: &str) -> usize {
    text.len() - text.trim_start().len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::MpComplex;

    #[test]
    fn pauli_x() {
        let x = parse_matrix_with_prec("[0, 1; 1, 0]", 64).unwrap();
        assert_eq!(x, Matrix::from_reals(2, 2, &[0., 1., 1., 0.], 64).unwrap());
    }

    #[test]
    fn hadamard_from_literal() {
        let h = parse_matrix_with_prec("[1, 1; 1, -1]", 128).unwrap();
        let s = MpComplex::from_f64(0.5, 128).sqrt();
        let h = h.scalar_mul(&s);
        let hh = h.mul(&h).unwrap();
        let dev = hh.sub(&Matrix::identity(2, 128)).unwrap().frobenius_norm();
        assert!(dev < 1e-35);
    }

    #[test]
    fn scalar_matrix_and_complex_entries() {
        let a = parse_matrix_with_prec("  [5] ", 64).unwrap();
        assert_eq!((a.rows(), a.cols()), (1, 1));
        assert_eq!(a[(0, 0)], MpComplex::from_f64(5.0, 64));
        let b = parse_matrix_with_prec("[1+2i, -j; 3e1, 0.5*I]", 64).unwrap();
        assert_eq!(b[(0, 1)], MpComplex::from_f64_parts(0.0, -1.0, 64));
        assert_eq!(b[(1, 0)], MpComplex::from_f64(30.0, 64));
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match parse_matrix_with_prec(s, 64) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("{s:?}: {other:?}"),
        };
        assert_eq!(pos("[1, 2; 3]"), 6);
        assert_eq!(pos("[1, x]"), 4);
        assert_eq!(pos("1, 2]"), 0);
        assert_eq!(pos("[1, 2"), 5);
        assert_eq!(pos("[1, [2]]"), 4);
        assert_eq!(pos("[]"), 1);
    }
}
