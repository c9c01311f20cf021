//! Fourier transforms, sampled time series and gnuplot output.

mod dft;
mod evol;
mod gnuplot;

pub use dft::{dft, dft_direct, fft, unp2, zero_padding};
pub use evol::rec_evol;
pub use gnuplot::gp_1d_print;

use crate::error::{Error, Result};
use crate::scalar::{MpComplex, MpReal};

/// Samples on a uniform grid with spacing `step`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSeries {
    pub samples: Vec<MpComplex>,
    pub step: MpReal,
}

impl SampleSeries {
    pub fn new(samples: Vec<MpComplex>, step: MpReal) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least one sample".into(),
            ));
        }
        if step.is_sign_negative() || step.is_zero() || !step.is_finite() {
            return Err(Error::InvalidArgument(
                "sample step must be positive".into(),
            ));
        }
        Ok(Self { samples, step })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn prec(&self) -> u32 {
        self.samples.iter().map(MpComplex::prec).max().unwrap_or(2)
    }
}
