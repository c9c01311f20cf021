use std::sync::atomic::{AtomicU32, Ordering};

use crate::error::{Error, Result};

/// Smallest significand length accepted anywhere in the crate.
pub const MIN_PRECISION: u32 = 2;

static DEFAULT_PRECISION: AtomicU32 = AtomicU32::new(256);

/// Sets the process-wide precision picked up by constructors that are not
/// given one explicitly.
pub fn set_default_precision(bits: u32) -> Result<()> {
    check_precision(bits)?;
    DEFAULT_PRECISION.store(bits, Ordering::Relaxed);
    Ok(())
}

pub fn default_precision() -> u32 {
    DEFAULT_PRECISION.load(Ordering::Relaxed)
}

pub(crate) fn check_precision(bits: u32) -> Result<()> {
    if bits < MIN_PRECISION || bits > rug::float::prec_max() {
        return Err(Error::InvalidPrecision(bits));
    }
    Ok(())
}
