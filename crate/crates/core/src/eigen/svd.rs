use rug::Float;

use super::inverse::{inner, norm2};
use super::{eigh, DiagOptions, GUARD_BITS};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::{MpComplex, MpReal};

/// Thin singular value decomposition `A = U·diag(S)·V†`.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: Matrix,
    pub s: Vec<MpReal>,
    pub v: Matrix,
}

/// SVD from the Hermitian eigenproblem of `A†A` (or of `AA†` when `A` is
/// wide), with `U = A·V·diag(1/S)` for the non-negligible singular values
/// and Gram-Schmidt completion for the rest.
pub fn svd(a: &Matrix) -> Result<Svd> {
    if a.rows() < a.cols() {
        let t = svd(&a.adjoint())?;
        return Ok(Svd {
            u: t.v,
            s: t.s,
            v: t.u,
        });
    }
    let prec = a.prec();
    let wp = prec + GUARD_BITS;
    let (m, n) = (a.rows(), a.cols());
    let aw = a.clone().with_prec(wp);
    let gram = aw.adjoint().mul(&aw)?;
    let (lambda, v) = eigh(&gram, prec, &DiagOptions::default())?;
    let s: Vec<Float> = lambda
        .iter()
        .map(|l| {
            if l.is_sign_negative() {
                Float::new(wp)
            } else {
                l.clone().sqrt()
            }
        })
        .collect();
    let smax = s.first().cloned().unwrap_or_else(|| Float::new(wp));
    let cutoff = Float::with_val(wp, &smax >> (prec as i32 / 2));

    let av = aw.mul(&v)?;
    let mut cols: Vec<Vec<MpComplex>> = Vec::with_capacity(n);
    let mut pending = Vec::new();
    for (k, sk) in s.iter().enumerate() {
        if sk > &cutoff && !sk.is_zero() {
            let inv = sk.clone().recip();
            cols.push(av.column(k).iter().map(|z| z.scale(&inv)).collect());
        } else {
            cols.push(Vec::new());
            pending.push(k);
        }
    }
    let mut candidate = 0;
    for k in pending {
        loop {
            let mut e = vec![MpComplex::zero(wp); m];
            e[candidate] = MpComplex::one(wp);
            candidate += 1;
            for _ in 0..2 {
                for c in cols.iter().filter(|c| !c.is_empty()) {
                    let proj = inner(c, &e);
                    for (ei, ci) in e.iter_mut().zip(c) {
                        ei.sub_mul(&proj, ci);
                    }
                }
            }
            let len = norm2(&e).sqrt();
            if len > 0.5 {
                let inv = len.recip();
                cols[k] = e.iter().map(|z| z.scale(&inv)).collect();
                break;
            }
        }
    }
    let mut u = Matrix::zeros(m, n, wp);
    for (k, c) in cols.iter().enumerate() {
        u.set_column(k, c);
    }
    Ok(Svd {
        u: u.with_prec(prec),
        s: s.into_iter().map(|x| Float::with_val(prec, x)).collect(),
        v: v.with_prec(prec),
    })
}
