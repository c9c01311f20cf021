use rug::float::Constant;
use rug::Float;

use super::SampleSeries;
use crate::eigen::{check_hermitian, exp_i_h};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{MpComplex, MpReal};

/// s_k = Re Tr(ρ_k · obs) for k = 0..n, where ρ_k = U^k ρ U^k† and
/// U = exp(-2πi·H·dt). `H` is in frequency units.
pub fn rec_evol(
    rho: &Matrix,
    h: &Matrix,
    obs: &Matrix,
    dt: &MpReal,
    n: usize,
) -> Result<SampleSeries> {
    let dim = rho.rows();
    for m in [rho, h, obs] {
        if !m.is_square() || m.rows() != dim {
            return Err(Error::Shape {
                op: "rec_evol",
                left: rho.shape(),
                right: m.shape(),
            });
        }
        check_hermitian(m)?;
    }
    let prec = rho.prec().max(h.prec()).max(obs.prec()).max(dt.prec());
    let mut t = Float::with_val(prec, Constant::Pi);
    t *= -2i32;
    t *= dt;
    let u = exp_i_h(&h.clone().with_prec(prec), &t)?;
    let ud = u.adjoint();
    let mut state = rho.clone().with_prec(prec);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            state = u.mul(&state)?.mul(&ud)?;
        }
        let v = trace_of_product(&state, obs);
        debug_assert!(
            v.im.clone().abs() <= Float::with_val(prec, Float::u_exp(1, 16 - prec as i32)),
            "imaginary residue {} at step {k}",
            v.im
        );
        out.push(MpComplex::from_real(v.re));
    }
    SampleSeries::new(out, dt.clone())
}

/// Tr(A·B) without forming the product.
fn trace_of_product(a: &Matrix, b: &Matrix) -> MpComplex {
    let n = a.rows();
    let mut acc = MpComplex::zero(a.prec().max(b.prec()));
    for i in 0..n {
        for j in 0..n {
            acc.add_mul(&a[(i, j)], &b[(j, i)]);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::parse_matrix_with_prec;

    fn lit(s: &str) -> Matrix {
        parse_matrix_with_prec(s, 128).unwrap()
    }

    #[test]
    fn static_hamiltonian_gives_constant_series() {
        let rho = lit("[0.75, 0.25; 0.25, 0.25]");
        let obs = lit("[0, 1; 1, 0]");
        let s = rec_evol(
            &rho,
            &Matrix::zeros(2, 2, 128),
            &obs,
            &Float::with_val(128, 0.1),
            5,
        )
        .unwrap();
        assert!(s
            .samples
            .iter()
            .all(|z| Float::with_val(128, &z.re - 0.5f64).abs() < 1e-35));
    }

    #[test]
    fn identity_observable_tracks_trace() {
        let rho = lit("[0.5, 0.5i; -0.5i, 0.5]");
        let h = lit("[1, 0.3; 0.3, -1]");
        let s = rec_evol(
            &rho,
            &h,
            &Matrix::identity(2, 128),
            &Float::with_val(128, 0.05),
            20,
        )
        .unwrap();
        assert!(s
            .samples
            .iter()
            .all(|z| Float::with_val(128, &z.re - 1u32).abs() < 1e-33));
    }

    #[test]
    fn larmor_precession() {
        let p = 128;
        let w = 3.0;
        let dt = Float::with_val(p, 0.01);
        let rho = lit("[0.5, 0.5; 0.5, 0.5]");
        let h = lit("[1.5, 0; 0, -1.5]");
        let obs = lit("[0, 1; 1, 0]");
        let s = rec_evol(&rho, &h, &obs, &dt, 40).unwrap();
        for (k, z) in s.samples.iter().enumerate() {
            let mut arg = Float::with_val(p, Constant::Pi);
            arg *= 2.0 * w * k as f64;
            arg *= &dt;
            let expect = arg.cos();
            assert!(Float::with_val(p, &z.re - &expect).abs() < 1e-32, "k = {k}");
        }
    }

    #[test]
    fn mismatched_dimensions() {
        let rho = Matrix::identity(2, 64);
        let h = Matrix::zeros(4, 4, 64);
        assert!(rec_evol(&rho, &h, &rho, &Float::with_val(64, 1), 2).is_err());
    }
}
