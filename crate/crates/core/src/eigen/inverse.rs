use rand::RngCore;
use rug::Float;

use crate::error::{Error, Result};
use crate::linalg::lu_with_pivot_floor;
use crate::matrix::Matrix;
use crate::scalar::{random_complex, MpComplex};

/// Solves per shift before the shift is refreshed.
const SOLVES_PER_ATTEMPT: usize = 3;
const WARM_RESTARTS: usize = 4;
const RANDOM_RESTARTS: usize = 4;

pub(crate) struct Tolerances {
    /// Accept when ‖A x − λ x‖ is at most this.
    pub residual: Float,
    /// Re-orthogonalise when an overlap with an earlier vector exceeds this.
    pub overlap: Float,
}

/// Eigenpairs for the first `count` entries of `approx` (descending), by
/// shifted inverse iteration on `A + c Σ v v†` with `c = 2‖A‖_F`.
pub(crate) fn inverse_iteration(
    a: &Matrix,
    approx: &[Float],
    count: usize,
    tol: &Tolerances,
    rng: &mut dyn RngCore,
) -> Result<(Vec<Float>, Vec<Vec<MpComplex>>)> {
    let n = a.rows();
    let prec = a.prec();
    let norm = a.frobenius_norm();
    let c = Float::with_val(prec, &norm * 2u32);
    let floor = Float::with_val(prec, &norm >> prec as i32);
    let mut w = a.clone();
    let mut values = Vec::with_capacity(count);
    let mut vectors: Vec<Vec<MpComplex>> = Vec::with_capacity(count);

    for (index, target) in approx.iter().take(count).enumerate() {
        if let Some(prev) = vectors.last() {
            let cv: Vec<MpComplex> = prev.iter().map(|z| z.scale(&c)).collect();
            for i in 0..n {
                for j in 0..n {
                    w[(i, j)].add_mul_conj(&cv[i], &prev[j]);
                }
            }
        }
        let mut shift = target.clone();
        let mut x = normalized(random_vector(n, prec, rng));
        let mut found = None;
        for attempt in 0..=WARM_RESTARTS + RANDOM_RESTARTS {
            if attempt > WARM_RESTARTS {
                x = normalized(random_vector(n, prec, rng));
            }
            let mut shifted = w.clone();
            for i in 0..n {
                shifted[(i, i)].re -= &shift;
            }
            let lu = lu_with_pivot_floor(shifted, &floor);
            let mut lambda = shift.clone();
            for _ in 0..SOLVES_PER_ATTEMPT {
                let y = lu.solve(&Matrix::column_vector(x.clone()))?.into_vec();
                x = normalized(y);
                orthogonalize(&mut x, &vectors, &tol.overlap);
                let (l, residual) = rayleigh(a, &x);
                lambda = l;
                if residual <= tol.residual {
                    found = Some(lambda.clone());
                    break;
                }
            }
            if found.is_some() {
                break;
            }
            shift = lambda;
        }
        match found {
            Some(l) => {
                values.push(l);
                vectors.push(x);
            }
            None => return Err(Error::ConvergenceFailure { index }),
        }
    }
    Ok((values, vectors))
}

fn random_vector(n: usize, prec: u32, rng: &mut dyn RngCore) -> Vec<MpComplex> {
    (0..n).map(|_| random_complex(rng, prec)).collect()
}

pub(crate) fn norm2(x: &[MpComplex]) -> Float {
    let prec = x.iter().map(MpComplex::prec).max().unwrap_or(2);
    x.iter().fold(Float::new(prec), |acc, z| acc + z.norm_sqr())
}

fn normalized(x: Vec<MpComplex>) -> Vec<MpComplex> {
    let inv = norm2(&x).sqrt().recip();
    x.iter().map(|z| z.scale(&inv)).collect()
}

/// <u, x> = Σ conj(u_i) x_i.
pub(crate) fn inner(u: &[MpComplex], x: &[MpComplex]) -> MpComplex {
    let prec = x.iter().chain(u).map(MpComplex::prec).max().unwrap_or(2);
    let mut acc = MpComplex::zero(prec);
    for (ui, xi) in u.iter().zip(x) {
        acc.add_mul_conj(xi, ui);
    }
    acc
}

/// Projects out earlier vectors when any overlap exceeds `limit`.
fn orthogonalize(x: &mut Vec<MpComplex>, basis: &[Vec<MpComplex>], limit: &Float) {
    let needs = basis.iter().any(|u| inner(u, x).abs() > *limit);
    if !needs {
        return;
    }
    for _ in 0..2 {
        for u in basis {
            let k = inner(u, x);
            for (xi, ui) in x.iter_mut().zip(u) {
                xi.sub_mul(&k, ui);
            }
        }
    }
    *x = normalized(std::mem::take(x));
}

/// Rayleigh quotient x†Ax for unit x, and the residual norm ‖Ax − λx‖.
fn rayleigh(a: &Matrix, x: &[MpComplex]) -> (Float, Float) {
    let n = x.len();
    let prec = a.prec();
    let mut ax = vec![MpComplex::zero(prec); n];
    for (i, axi) in ax.iter_mut().enumerate() {
        for (aij, xj) in a.row(i).iter().zip(x) {
            axi.add_mul(aij, xj);
        }
    }
    let lambda = inner(x, &ax).re;
    let mut r = Float::new(prec);
    for (axi, xi) in ax.iter().zip(x) {
        let mut d = axi.clone();
        d.sub_mul(&MpComplex::from_real(lambda.clone()), xi);
        r += d.norm_sqr();
    }
    (lambda, r.sqrt())
}
