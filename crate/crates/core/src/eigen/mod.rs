//! Hermitian eigensolver, Hermitian matrix exponentials, and SVD.

mod inverse;
mod svd;
mod tridiag;

pub use svd::{svd, Svd};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Float;

use crate::error::{Error, Result, Shape};
use crate::matrix::Matrix;
use crate::scalar::{MpComplex, MpReal};
use inverse::{inverse_iteration, Tolerances};
use tridiag::tridiagonal_eigenvalues;

/// Extra bits used inside `diag_h` beyond the input precision.
const GUARD_BITS: u32 = 32;

/// Eigenvalues sorted from larger to smaller; column `i` of `vectors` is the
/// unit eigenvector belonging to `eigenvalues[i]`.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub eigenvalues: Vec<MpReal>,
    pub vectors: Matrix,
}

#[derive(Clone, Debug, Default)]
pub struct DiagOptions {
    /// Seed for random restart vectors.
    pub seed: u64,
    /// When set, only eigenpairs with eigenvalue strictly above this are
    /// returned.
    pub floor: Option<MpReal>,
    /// When set, at most this many of the largest eigenpairs are returned.
    pub max_count: Option<usize>,
}

/// Fails unless ‖A − A†‖_F / 2 ≤ 2^-(prec-8)·‖A‖_F.
pub fn check_hermitian(a: &Matrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Shape {
            op: "hermitian",
            left: a.shape(),
            right: Shape(a.cols(), a.rows()),
        });
    }
    let prec = a.prec();
    let anti = a.sub(&a.adjoint())?.frobenius_norm() / 2u32;
    let norm = a.frobenius_norm();
    let limit = Float::with_val(prec, &norm >> (prec as i32 - 8));
    if anti > limit {
        let deviation = if norm.is_zero() {
            f64::INFINITY
        } else {
            Float::with_val(64, &anti / &norm).to_f64()
        };
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// (A + A†) / 2 at `prec` bits.
fn hermitian_part(a: &Matrix, prec: u32) -> Matrix {
    let n = a.rows();
    let mut h = Matrix::zeros(n, n, prec);
    for i in 0..n {
        for j in 0..n {
            let mut z = MpComplex::zero(prec);
            z += &a[(i, j)];
            z += &a[(j, i)].conj();
            z.re /= 2u32;
            z.im /= 2u32;
            h[(i, j)] = z;
        }
    }
    h
}

pub fn diag_h(a: &Matrix) -> Result<EigenSystem> {
    diag_h_with(a, &DiagOptions::default())
}

/// Full eigendecomposition: Householder tridiagonalisation and shifted QR
/// give starting eigenvalues, then inverse iteration with deflation yields
/// each eigenvector and a Rayleigh-refined eigenvalue.
pub fn diag_h_with(a: &Matrix, opts: &DiagOptions) -> Result<EigenSystem> {
    let prec = a.prec();
    let (values, vectors) = eigh(a, prec, opts)?;
    Ok(EigenSystem {
        eigenvalues: values
            .into_iter()
            .map(|x| Float::with_val(prec, x))
            .collect(),
        vectors: vectors.with_prec(prec),
    })
}

/// Eigenpairs accurate to `prec` bits, returned at `prec + GUARD_BITS`.
pub(crate) fn eigh(a: &Matrix, prec: u32, opts: &DiagOptions) -> Result<(Vec<Float>, Matrix)> {
    check_hermitian(a)?;
    let wp = prec + GUARD_BITS;
    let n = a.rows();
    let h = hermitian_part(a, wp);
    let norm = h.frobenius_norm();
    if n == 0 || norm.is_zero() {
        let keep = match &opts.floor {
            Some(f) if !f.is_sign_negative() => 0,
            _ => n,
        };
        let keep = opts.max_count.map_or(keep, |cap| keep.min(cap));
        let mut v = Matrix::zeros(n, keep, wp);
        for i in 0..keep {
            v[(i, i)] = MpComplex::one(wp);
        }
        return Ok((vec![Float::new(wp); keep], v));
    }
    let approx = tridiagonal_eigenvalues(&h, wp)?;
    let count = match &opts.floor {
        Some(f) => approx.iter().take_while(|x| *x > f).count(),
        None => n,
    };
    let count = opts.max_count.map_or(count, |cap| count.min(cap));
    let tol = Tolerances {
        residual: Float::with_val(wp, &norm >> (prec as i32 + 8)),
        overlap: Float::with_val(wp, Float::u_exp(1, -(prec as i32 / 2))),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (values, vecs) = inverse_iteration(&h, &approx, count, &tol, &mut rng)?;
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).expect("finite"));
    let mut v = Matrix::zeros(n, order.len(), wp);
    let mut sorted = Vec::with_capacity(order.len());
    for (col, &k) in order.iter().enumerate() {
        v.set_column(col, &vecs[k]);
        sorted.push(values[k].clone());
    }
    if let Some(f) = &opts.floor {
        while sorted.last().is_some_and(|x| x <= f) {
            sorted.pop();
        }
        if sorted.len() < v.cols() {
            let mut trimmed = Matrix::zeros(n, sorted.len(), wp);
            for c in 0..sorted.len() {
                trimmed.set_column(c, &v.column(c));
            }
            v = trimmed;
        }
    }
    Ok((sorted, v))
}

/// Eigenvalues only, from the tridiagonal QR stage at the input precision.
pub fn eigenvalues_h(a: &Matrix) -> Result<Vec<MpReal>> {
    check_hermitian(a)?;
    let prec = a.prec();
    tridiagonal_eigenvalues(&hermitian_part(a, prec), prec)
}

/// V·diag(f(λ))·V† at `wp` bits, rounded to the input precision.
fn spectral_map(a: &Matrix, f: impl Fn(&Float) -> MpComplex) -> Result<Matrix> {
    let prec = a.prec();
    let wp = prec + GUARD_BITS;
    let (values, v) = eigh(a, prec, &DiagOptions::default())?;
    let n = a.rows();
    let fl: Vec<MpComplex> = values.iter().map(f).collect();
    let mut out = Matrix::zeros(n, n, wp);
    for i in 0..n {
        for j in 0..n {
            let mut acc = MpComplex::zero(wp);
            for (k, fk) in fl.iter().enumerate() {
                let t = &v[(i, k)] * fk;
                acc.add_mul_conj(&t, &v[(j, k)]);
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out.with_prec(prec))
}

/// exp(A) for Hermitian A.
pub fn exp_h(a: &Matrix) -> Result<Matrix> {
    spectral_map(a, |x| MpComplex::from_real(x.clone().exp()))
}

/// exp(i·t·A) for Hermitian A and real t; the result is unitary.
pub fn exp_i_h(a: &Matrix, t: &MpReal) -> Result<Matrix> {
    spectral_map(a, |x| {
        let (s, c) = Float::with_val(x.prec(), x * t).sin_cos(Float::new(x.prec()));
        MpComplex::from_parts(c, s)
    })
}
