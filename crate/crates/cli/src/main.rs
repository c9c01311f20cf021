use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use mpcm::scalar::{format_complex, format_real, parse_complex_with_prec};
use mpcm::special::gamma;
use mpcm_cli::{classic, dj, grover, nmr, simple, DemoConfig};

#[derive(Parser)]
#[command(
    name = "mpcm",
    version,
    about = "Multiprecision matrix and MPS experiments"
)]
struct Cli {
    /// Significand length in bits.
    #[arg(long, global = true, default_value_t = 256)]
    prec: u32,
    /// Directory for data files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Significant digits in printed numbers (each command has its own default).
    #[arg(long, global = true)]
    digits: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the ill-conditioned 2×2 system over a precision sweep.
    Classic {
        #[arg(long, default_value_t = 32)]
        prec_min: u32,
        #[arg(long, default_value_t = 256)]
        prec_max: u32,
    },
    /// Simulated NMR spectrum of a two-spin system.
    Nmr {
        /// Temperature in kelvin.
        #[arg(long, default_value_t = 300.0)]
        temperature: f64,
    },
    /// Deutsch-Jozsa circuit on N_g four-bit bundles.
    Dj {
        #[arg(long, default_value_t = 7)]
        n_g: usize,
        /// Schmidt rank cap, 0 for none.
        #[arg(long, default_value_t = 0)]
        m_trunc: usize,
    },
    /// Grover search for 01 among two bits.
    Grover {
        #[arg(long, default_value_t = 8)]
        iterations: usize,
    },
    /// H and CNOT on three qubits, printed in Dirac notation.
    Simple,
    /// Evaluate Γ(z) for a complex literal such as 3+4*I.
    Gamma { z: String },
}

fn run(cli: Cli) -> Result<()> {
    let cfg = DemoConfig {
        prec: cli.prec,
        out_dir: cli.out,
        digits: cli.digits,
        seed: cli.seed,
    };
    match cli.command {
        Command::Classic { prec_min, prec_max } => {
            for p in classic::run(prec_min, prec_max, &cfg.out_dir, cfg.digits_or(10))? {
                println!("wrote {}", p.display());
            }
        }
        Command::Nmr { temperature } => {
            let r = nmr::run(temperature, cfg.prec, Some(&cfg.out_dir), cfg.digits_or(8))?;
            println!("N = {} samples, dt = {}", r.samples, format_real(&r.dt, 8));
            if let Some(p) = r.path {
                println!("wrote {}", p.display());
            }
        }
        Command::Dj { n_g, m_trunc } => {
            let r = dj::run(n_g, cfg.prec, m_trunc, cfg.seed)?;
            let d = cfg.digits_or(8);
            println!("qubits = {}, m_maxmax = {}", r.qubits, r.m_maxmax);
            for (i, p) in r.probs.iter().enumerate() {
                println!("bundle {i}: Prob(0000) = {}", format_real(p, d));
            }
            println!("max error = {}", format_real(&r.max_error(), d));
        }
        Command::Grover { iterations } => {
            for line in grover::transcript(iterations, cfg.prec, cfg.digits_or(10))? {
                println!("{line}");
            }
        }
        Command::Simple => {
            for line in simple::transcript(cfg.prec, cfg.digits_or(8))? {
                println!("{line}");
            }
        }
        Command::Gamma { z } => {
            let z = parse_complex_with_prec(&z, cfg.prec)?;
            println!(
                "{}",
                format_complex(&gamma(&z, cfg.prec)?, cfg.digits_or(10))
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mpcm: {e:#}");
            ExitCode::FAILURE
        }
    }
}
