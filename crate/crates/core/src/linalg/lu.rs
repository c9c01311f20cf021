use rug::Float;

use crate::error::{Error, Result, Shape};
use crate::matrix::Matrix;
use crate::scalar::MpComplex;

/// When a pivot counts as zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotPolicy {
    /// Reject pivots with modulus below 2^-(prec-4)·‖A‖_F.
    #[default]
    Relative,
    /// Reject only pivots that are exactly zero, so ill-conditioned systems
    /// still produce (possibly meaningless) numbers.
    ExactZero,
}

/// `P·A = L·U` with unit lower `L` and upper `U` packed into one matrix.
#[derive(Clone, Debug)]
pub struct LuDecomposition {
    /// Row `i` of `P·A` is row `perm[i]` of `A`.
    pub perm: Vec<usize>,
    pub lu: Matrix,
    pub parity: i8,
}

pub fn lu_decompose(a: &Matrix) -> Result<LuDecomposition> {
    lu_decompose_with(a, PivotPolicy::Relative)
}

/// Partial pivoting on the largest modulus in each column, lowest row
/// winning ties.
pub fn lu_decompose_with(a: &Matrix, policy: PivotPolicy) -> Result<LuDecomposition> {
    if !a.is_square() {
        return Err(Error::Shape {
            op: "lu_decompose",
            left: a.shape(),
            right: Shape(a.cols(), a.rows()),
        });
    }
    let prec = a.prec();
    let floor2 = match policy {
        PivotPolicy::Relative => {
            let f = a.frobenius_norm() >> (prec as i32 - 4);
            Float::with_val(prec, f.square_ref())
        }
        PivotPolicy::ExactZero => Float::new(prec),
    };
    factor(a.clone().with_prec(prec), &floor2, None)
}

/// LU that never fails: pivots with modulus below `floor` are replaced by
/// `floor` itself. Used for shifted systems that are singular by design.
pub(crate) fn lu_with_pivot_floor(a: Matrix, floor: &Float) -> LuDecomposition {
    let floor2 = Float::with_val(floor.prec(), floor.square_ref());
    factor(a, &floor2, Some(floor)).expect("floored pivots never vanish")
}

fn factor(mut lu: Matrix, floor2: &Float, replace: Option<&Float>) -> Result<LuDecomposition> {
    let n = lu.rows();
    let prec = lu.prec();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut parity = 1i8;
    for k in 0..n {
        let mut best = k;
        let mut best_mod = lu[(k, k)].norm_sqr();
        for i in k + 1..n {
            let m = lu[(i, k)].norm_sqr();
            if m > best_mod {
                best = i;
                best_mod = m;
            }
        }
        if best_mod.is_zero() || best_mod < *floor2 {
            match replace {
                Some(f) => {
                    best = k;
                    lu[(k, k)] = MpComplex::from_real(Float::with_val(prec, f));
                }
                None => return Err(Error::Singular { column: k }),
            }
        }
        if best != k {
            swap_rows(&mut lu, k, best);
            perm.swap(k, best);
            parity = -parity;
        }
        let pivot_inv = lu[(k, k)].recip()?;
        for i in k + 1..n {
            let l = &lu[(i, k)] * &pivot_inv;
            if !l.is_zero() {
                let (row_k, row_i) = two_rows(&mut lu, k, i);
                for j in k + 1..n {
                    row_i[j].sub_mul(&l, &row_k[j]);
                }
            }
            lu[(i, k)] = l;
        }
    }
    Ok(LuDecomposition { perm, lu, parity })
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    let cols = m.cols();
    let data = m.as_mut_slice();
    for j in 0..cols {
        data.swap(a * cols + j, b * cols + j);
    }
}

/// Borrow row `k` immutably and row `i > k` mutably.
fn two_rows(m: &mut Matrix, k: usize, i: usize) -> (&[MpComplex], &mut [MpComplex]) {
    let cols = m.cols();
    let (head, tail) = m.as_mut_slice().split_at_mut(i * cols);
    (&head[k * cols..(k + 1) * cols], &mut tail[..cols])
}

impl LuDecomposition {
    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    /// Unit lower factor.
    pub fn l(&self) -> Matrix {
        let n = self.dim();
        let mut l = Matrix::identity(n, self.lu.prec());
        for i in 0..n {
            for j in 0..i {
                l[(i, j)] = self.lu[(i, j)].clone();
            }
        }
        l
    }

    pub fn u(&self) -> Matrix {
        let n = self.dim();
        let mut u = Matrix::zeros(n, n, self.lu.prec());
        for i in 0..n {
            for j in i..n {
                u[(i, j)] = self.lu[(i, j)].clone();
            }
        }
        u
    }

    /// The row-permuted input `P·A`.
    pub fn permute(&self, a: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(a.rows(), a.cols(), a.prec());
        for (i, &src) in self.perm.iter().enumerate() {
            for j in 0..a.cols() {
                out[(i, j)] = a[(src, j)].clone();
            }
        }
        out
    }

    /// parity · ∏ U_ii.
    pub fn det(&self) -> MpComplex {
        let mut d = MpComplex::from_i64(self.parity.into(), self.lu.prec());
        for i in 0..self.dim() {
            d = &d * &self.lu[(i, i)];
        }
        d
    }

    /// Solves `A·X = B` column by column.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        let n = self.dim();
        if b.rows() != n {
            return Err(Error::Shape {
                op: "solve",
                left: self.lu.shape(),
                right: b.shape(),
            });
        }
        let prec = self.lu.prec().max(b.prec());
        let mut x = self.permute(b).with_prec(prec);
        for c in 0..b.cols() {
            for i in 0..n {
                let mut acc = x[(i, c)].clone();
                for k in 0..i {
                    acc.sub_mul(&self.lu[(i, k)], &x[(k, c)]);
                }
                x[(i, c)] = acc;
            }
            for i in (0..n).rev() {
                let mut acc = x[(i, c)].clone();
                for k in i + 1..n {
                    acc.sub_mul(&self.lu[(i, k)], &x[(k, c)]);
                }
                x[(i, c)] = acc.div(&self.lu[(i, i)])?;
            }
        }
        Ok(x)
    }
}

/// Gaussian elimination with partial pivoting: returns `X` with `A·X = B`.
pub fn solve_gauss(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    solve_gauss_with(a, b, PivotPolicy::Relative)
}

pub fn solve_gauss_with(a: &Matrix, b: &Matrix, policy: PivotPolicy) -> Result<Matrix> {
    if b.rows() != a.rows() {
        return Err(Error::Shape {
            op: "solve_gauss",
            left: a.shape(),
            right: b.shape(),
        });
    }
    lu_decompose_with(a, policy)?.solve(b)
}

pub fn inv(a: &Matrix) -> Result<Matrix> {
    inv_with(a, PivotPolicy::Relative)
}

pub fn inv_with(a: &Matrix, policy: PivotPolicy) -> Result<Matrix> {
    solve_gauss_with(a, &Matrix::identity(a.rows(), a.prec()), policy)
}

pub fn det(a: &Matrix) -> Result<MpComplex> {
    match lu_decompose_with(a, PivotPolicy::ExactZero) {
        Ok(lu) => Ok(lu.det()),
        Err(Error::Singular { .. }) => Ok(MpComplex::zero(a.prec())),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::parse_matrix_with_prec;
    use crate::scalar::random_complex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(n: usize, prec: u32, seed: u64) -> Matrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = (0..n * n).map(|_| random_complex(&mut rng, prec)).collect();
        Matrix::from_vec(n, n, data).unwrap()
    }

    fn bound(prec: u32, scale: &Float, k: i32) -> Float {
        Float::with_val(prec, scale) >> (prec as i32 - k)
    }

    #[test]
    fn identity_factors_trivially() {
        let lu = lu_decompose(&Matrix::identity(3, 64)).unwrap();
        assert_eq!(lu.perm, vec![0, 1, 2]);
        assert_eq!(lu.l(), Matrix::identity(3, 64));
        assert_eq!(lu.u(), Matrix::identity(3, 64));
    }

    #[test]
    fn reconstruction_of_random_matrix() {
        let p = 256;
        let a = random_matrix(8, p, 1);
        let lu = lu_decompose(&a).unwrap();
        let r = lu.permute(&a).sub(&lu.l().mul(&lu.u()).unwrap()).unwrap();
        assert!(r.frobenius_norm() <= bound(p, &a.frobenius_norm(), 12));
    }

    #[test]
    fn zero_matrix_is_singular_at_first_column() {
        assert!(matches!(
            lu_decompose(&Matrix::zeros(3, 3, 64)),
            Err(Error::Singular { column: 0 })
        ));
        let a = parse_matrix_with_prec("[1, 2; 2, 4]", 64).unwrap();
        assert!(matches!(
            lu_decompose(&a),
            Err(Error::Singular { column: 1 })
        ));
    }

    #[test]
    fn ties_pick_the_lowest_row() {
        let a = parse_matrix_with_prec("[1, 0; -1, 1]", 64).unwrap();
        assert_eq!(lu_decompose(&a).unwrap().perm, vec![0, 1]);
        let a = parse_matrix_with_prec("[1, 0; 1i, 1]", 64).unwrap();
        assert_eq!(lu_decompose(&a).unwrap().perm, vec![0, 1]);
    }

    #[test]
    fn inverse_of_diagonal() {
        let a = parse_matrix_with_prec("[2, 0; 0, 4]", 64).unwrap();
        assert_eq!(
            inv(&a).unwrap(),
            parse_matrix_with_prec("[0.5, 0; 0, 0.25]", 64).unwrap()
        );
        assert_eq!(
            inv(&Matrix::identity(4, 64)).unwrap(),
            Matrix::identity(4, 64)
        );
    }

    #[test]
    fn solve_identity_is_exact() {
        let b = parse_matrix_with_prec("[1+1i; -2; 3.25]", 64).unwrap();
        assert_eq!(solve_gauss(&Matrix::identity(3, 64), &b).unwrap(), b);
    }

    #[test]
    fn inverse_times_matrix() {
        let p = 192;
        let a = random_matrix(6, p, 3);
        let ai = inv(&a).unwrap();
        let r = a.mul(&ai).unwrap().sub(&Matrix::identity(6, p)).unwrap();
        assert!(r.frobenius_norm() <= bound(p, &Float::with_val(p, 6), 12));
    }

    #[test]
    fn determinant_of_permuted_triangular() {
        let a = parse_matrix_with_prec("[0, 2; 3, 1]", 64).unwrap();
        assert_eq!(det(&a).unwrap(), MpComplex::from_f64(-6.0, 64));
        assert!(det(&Matrix::zeros(2, 2, 64)).unwrap().is_zero());
    }

    #[test]
    fn shape_errors() {
        assert!(lu_decompose(&Matrix::zeros(2, 3, 64)).is_err());
        assert!(solve_gauss(&Matrix::identity(2, 64), &Matrix::zeros(3, 1, 64)).is_err());
    }
}
