//! Free-induction-decay spectrum of a J-coupled proton/carbon pair, from the
//! full thermal state at temperature T.

use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use mpcm::eigen::exp_h;
use mpcm::matrix::{tensorprod, Matrix};
use mpcm::mps::gates;
use mpcm::scalar::parse_real_with_prec;
use mpcm::spectral::{dft, gp_1d_print, rec_evol, unp2, zero_padding, SampleSeries};
use mpcm::{MpComplex, MpReal};
use rug::Float;

pub const W1: &str = "4e8";
pub const W2: &str = "1.25e8";
pub const J12: &str = "1.4e5";
pub const BOLTZMANN: &str = "1.3806504e-23";
pub const PLANCK: &str = "6.62606896e-34";
pub const SAMPLING_FACTOR: &str = "0.43";

#[derive(Clone, Debug)]
pub struct NmrReport {
    /// Number of recorded samples before padding.
    pub samples: usize,
    pub dt: MpReal,
    /// |DFT| of the padded record, spaced by df = 1/(2N·dt).
    pub spectrum: SampleSeries,
    pub path: Option<PathBuf>,
}

fn constant(s: &str, prec: u32) -> Result<MpReal> {
    Ok(parse_real_with_prec(s, prec)?)
}

/// w1·(Z/2 ⊗ I) + w2·(I ⊗ Z/2) + J12·(Z/2 ⊗ Z/2), in Hz.
pub fn hamiltonian(prec: u32) -> Result<Matrix> {
    let half = Float::with_val(prec, 0.5);
    let z2 = gates::pauli_z(prec).scale_real(&half);
    let id = gates::identity(1, prec);
    let h = tensorprod(&z2, &id)
        .scale_real(&constant(W1, prec)?)
        .add(&tensorprod(&id, &z2).scale_real(&constant(W2, prec)?))?
        .add(&tensorprod(&z2, &z2).scale_real(&constant(J12, prec)?))?;
    Ok(h)
}

/// exp(−(h/k_B T)·H) / Tr, then an ideal Y90 pulse on the proton.
pub fn initial_state(temperature: &MpReal, prec: u32) -> Result<Matrix> {
    let h = hamiltonian(prec)?;
    let beta =
        Float::with_val(prec, constant(PLANCK, prec)? / constant(BOLTZMANN, prec)?) / temperature;
    let thermal = exp_h(&h.scale_real(&-beta))?;
    let rho = thermal.scalar_div(&thermal.trace()?)?;
    let r = MpComplex::from_f64(0.5, prec).sqrt();
    let y90 = Matrix::from_vec(2, 2, vec![r.clone(), r.clone(), -r.clone(), r])?;
    let pulse = tensorprod(&y90, &gates::identity(1, prec));
    Ok(pulse.mul(&rho)?.mul(&pulse.adjoint())?)
}

/// Runs the simulation; writes `example_zp.fid` into `out_dir` when given.
pub fn run(
    temperature: f64,
    prec: u32,
    out_dir: Option<&Path>,
    digits: usize,
) -> Result<NmrReport> {
    if temperature.is_nan() || temperature <= 0.0 {
        bail!("temperature must be positive, got {temperature}");
    }
    let temp = Float::with_val(prec, temperature);
    let rho = initial_state(&temp, prec)?;
    let h = hamiltonian(prec)?;
    let x1 = tensorprod(&gates::pauli_x(prec), &gates::identity(1, prec));
    let dt = Float::with_val(prec, constant(SAMPLING_FACTOR, prec)? / constant(W1, prec)?);
    let count = Float::with_val(
        prec,
        8u32 / Float::with_val(prec, &dt * constant(J12, prec)?),
    );
    let n = unp2(&count)? as usize;
    let record = rec_evol(&rho, &h, &x1, &dt, n)?;
    let padded = zero_padding(&record, 2 * n)?;
    let mut spectrum = dft(&padded);
    for z in &mut spectrum.samples {
        *z = MpComplex::from_real(z.abs());
    }
    let path = match out_dir {
        Some(dir) => {
            let p = dir.join("example_zp.fid");
            gp_1d_print(&spectrum, &p, digits)?;
            Some(p)
        }
        None => None,
    };
    Ok(NmrReport {
        samples: n,
        dt,
        spectrum,
        path,
    })
}
