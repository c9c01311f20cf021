//! Two-bit Grover search with one oracle qubit, driven by 8×8 gates.

use anyhow::{bail, Result};
use mpcm::matrix::{tensorprod, Matrix};
use mpcm::mps::{gates, MpsState};
use mpcm::scalar::format_complex;
use mpcm::MpReal;

/// Identity on three qubits with the basis rows `a` and `b` exchanged.
fn row_swap(a: usize, b: usize, prec: u32) -> Matrix {
    let mut m = Matrix::identity(8, prec);
    m[(a, a)] = mpcm::MpComplex::zero(prec);
    m[(b, b)] = mpcm::MpComplex::zero(prec);
    m[(a, b)] = mpcm::MpComplex::one(prec);
    m[(b, a)] = mpcm::MpComplex::one(prec);
    m
}

/// Oracle flipping the ancilla when the data register holds `marked`.
pub fn oracle(marked: usize, prec: u32) -> Matrix {
    row_swap(2 * marked, 2 * marked + 1, prec)
}

/// Inversion about the average on the data register.
pub fn diffusion(prec: u32) -> Result<Matrix> {
    let h = gates::hadamard(prec);
    let hh = tensorprod(&tensorprod(&h, &h), &gates::identity(1, prec));
    Ok(hh.mul(&row_swap(0, 1, prec))?.mul(&hh)?)
}

/// Probability of `marked` before and after each iteration.
pub fn probabilities(marked: usize, iterations: usize, prec: u32) -> Result<Vec<MpReal>> {
    if marked > 3 {
        bail!("marked state must be a two-bit value, got {marked}");
    }
    let mut m = MpsState::with_prec(3, prec)?;
    let h = gates::hadamard(prec);
    m.apply_u2(&h, 0)?;
    m.apply_u2(&h, 1)?;
    m.apply_u2(&gates::pauli_x(prec), 2)?;
    m.apply_u2(&h, 2)?;
    let uf = oracle(marked, prec);
    let us = diffusion(prec)?;
    let mut probs = vec![m.rdo_block(0, 1)?[(marked, marked)].re.clone()];
    for _ in 0..iterations {
        m.apply_u8(&uf, 0, 1, 2)?;
        m.apply_u8(&us, 0, 1, 2)?;
        probs.push(m.rdo_block(0, 1)?[(marked, marked)].re.clone());
    }
    Ok(probs)
}

pub fn transcript(iterations: usize, prec: u32, digits: usize) -> Result<Vec<String>> {
    if iterations == 0 {
        bail!("need at least one iteration");
    }
    let probs = probabilities(1, iterations, prec)?;
    let show = |p: &MpReal| format_complex(&mpcm::MpComplex::from_real(p.clone()), digits);
    let mut lines = vec![
        format!("Initially, Prob(01)={}", show(&probs[0])),
        "Go into Grover's iteration...".to_string(),
    ];
    for (i, p) in probs.iter().enumerate().skip(1) {
        lines.push(format!("After {i} times iteration, Prob(01)={}", show(p)));
    }
    Ok(lines)
}
