use super::Matrix;
use crate::error::{Error, Result, Shape};
use crate::scalar::MpComplex;

/// Kronecker product: block (i, j) of the result is `a[i, j] * b`.
pub fn tensorprod(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut data = Vec::with_capacity(ra * ca * rb * cb);
    for i in 0..ra {
        for k in 0..rb {
            for j in 0..ca {
                let aij = &a[(i, j)];
                for l in 0..cb {
                    data.push(aij * &b[(k, l)]);
                }
            }
        }
    }
    Matrix::from_vec(ra * rb, ca * cb, data).expect("sizes agree")
}

/// Partial trace over subsystem `which` of a composite whose factor
/// dimensions are listed left to right in tensor-product order.
pub fn trace_out(rho: &Matrix, dims: &[usize], which: usize) -> Result<Matrix> {
    if !rho.is_square() {
        return Err(Error::Shape {
            op: "trace_out",
            left: rho.shape(),
            right: Shape(rho.cols(), rho.rows()),
        });
    }
    if which >= dims.len() {
        return Err(Error::IndexOutOfRange {
            index: which,
            limit: dims.len(),
        });
    }
    let total: usize = dims.iter().product();
    if total != rho.rows() || dims.contains(&0) {
        return Err(Error::InvalidArgument(format!(
            "subsystem dimensions {dims:?} do not factor {}",
            rho.shape()
        )));
    }
    let left: usize = dims[..which].iter().product();
    let mid = dims[which];
    let right: usize = dims[which + 1..].iter().product();
    let n = left * right;
    let prec = rho.prec();
    let mut out = Matrix::zeros(n, n, prec);
    let full = |l: usize, m: usize, r: usize| (l * mid + m) * right + r;
    for l in 0..left {
        for r in 0..right {
            for l2 in 0..left {
                for r2 in 0..right {
                    let mut acc = MpComplex::zero(prec);
                    for m in 0..mid {
                        acc += &rho[(full(l, m, r), full(l2, m, r2))];
                    }
                    out[(l * right + r, l2 * right + r2)] = acc;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::parse_matrix_with_prec;

    fn lit(s: &str) -> Matrix {
        parse_matrix_with_prec(s, 128).unwrap()
    }

    #[test]
    fn identities_compose() {
        let i2 = Matrix::identity(2, 64);
        assert_eq!(tensorprod(&i2, &i2), Matrix::identity(4, 64));
    }

    #[test]
    fn bit_flip_on_left_qubit() {
        let x1 = tensorprod(&lit("[0, 1; 1, 0]"), &Matrix::identity(2, 128));
        let expect = lit("[0, 0, 1, 0; 0, 0, 0, 1; 1, 0, 0, 0; 0, 1, 0, 0]");
        assert_eq!(x1, expect);
    }

    #[test]
    fn pure_product_state() {
        let rho = lit("[1, 0, 0, 0; 0, 0, 0, 0; 0, 0, 0, 0; 0, 0, 0, 0]");
        assert_eq!(trace_out(&rho, &[2, 2], 1).unwrap(), lit("[1, 0; 0, 0]"));
        assert_eq!(trace_out(&rho, &[2, 2], 0).unwrap(), lit("[1, 0; 0, 0]"));
    }

    #[test]
    fn bell_state_is_maximally_mixed() {
        let rho = lit("[0.5, 0, 0, 0.5; 0, 0, 0, 0; 0, 0, 0, 0; 0.5, 0, 0, 0.5]");
        assert_eq!(
            trace_out(&rho, &[2, 2], 1).unwrap(),
            lit("[0.5, 0; 0, 0.5]")
        );
    }

    #[test]
    fn middle_factor_of_three() {
        let a = lit("[1, 2; 3, 4]");
        let b = lit("[0.5, 1i; -1i, 0.5]");
        let c = lit("[2, 0, 1; 0, 1, 0; 1, 0, 3]");
        let rho = tensorprod(&tensorprod(&a, &b), &c);
        let out = trace_out(&rho, &[2, 2, 3], 1).unwrap();
        assert_eq!(out, tensorprod(&a, &c));
    }

    #[test]
    fn dimension_errors() {
        let rho = Matrix::identity(4, 64);
        assert!(trace_out(&rho, &[2, 3], 0).is_err());
        assert!(trace_out(&rho, &[2, 2], 2).is_err());
        assert!(trace_out(&Matrix::zeros(2, 4, 64), &[2], 0).is_err());
    }
}
