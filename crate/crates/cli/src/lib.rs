//! Experiments behind the `mpcm` binary, returning their numbers as values.

pub mod classic;
pub mod dj;
pub mod grover;
pub mod nmr;
pub mod simple;

use std::path::PathBuf;

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct DemoConfig {
    pub prec: u32,
    pub out_dir: PathBuf,
    /// Overrides each experiment's own output digit count when set.
    pub digits: Option<usize>,
    pub seed: u64,
}

impl Default for DemoConfig {
    fn default() -> Self {
        Self {
            prec: 256,
            out_dir: PathBuf::from("."),
            digits: None,
            seed: 0,
        }
    }
}

impl DemoConfig {
    pub fn digits_or(&self, fallback: usize) -> usize {
        self.digits.unwrap_or(fallback)
    }
}
