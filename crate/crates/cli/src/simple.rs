//! Three-qubit walkthrough: H, a distant CNOT, and a reduced density matrix.

use anyhow::Result;
use mpcm::matrix::str_dirac;
use mpcm::mps::{gates, MpsState};

pub fn transcript(prec: u32, digits: usize) -> Result<Vec<String>> {
    let mut m = MpsState::with_prec(3, prec)?;
    let mut lines = vec!["The initial state is".to_string()];
    lines.push(str_dirac(&m.rdo_block(0, 2)?, digits)?);
    lines.push("Now we apply H to the 0th qubit.".into());
    m.apply_u2(&gates::hadamard(prec), 0)?;
    lines.push("Now we apply CNOT to the qubits 0 and 2.".into());
    m.apply_u4(&gates::cnot(prec), 0, 2)?;
    lines.push("At this point, the reduced density matrix of the qubits 0 and 2 is".into());
    lines.push(str_dirac(&m.rdo(&[0, 2])?, digits)?);
    Ok(lines)
}
