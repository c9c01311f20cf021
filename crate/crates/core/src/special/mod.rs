//! Gamma function and the Bernoulli numbers behind its Stirling series.

mod bernoulli;
mod gamma;

pub use bernoulli::{bernoulli, bernoulli_akiyama_tanigawa, binomial};
pub use gamma::gamma;
