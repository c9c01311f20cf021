//! Deutsch-Jozsa circuit over bundles of four-bit inputs, each evaluated by
//! g(x) = (x0∧x1) ∨ (x1∧x2) ∨ (x2∧x3) on its own five ancillas.
//!
//! Qubits are block-major: block i owns data 9i..9i+3 and ancillas
//! 9i+4..9i+8, the last of which carries g. The parity accumulator sits at
//! 9·N_g and the oracle qubit at 9·N_g + 1.

use anyhow::{bail, Result};
use mpcm::mps::{gates, MpsState};
use mpcm::MpReal;

#[derive(Clone, Debug)]
pub struct DjReport {
    pub n_g: usize,
    pub qubits: usize,
    pub m_maxmax: usize,
    /// Prob(0000) on the data qubits of each bundle.
    pub probs: Vec<MpReal>,
}

impl DjReport {
    /// Largest |Prob − 0| over the bundles.
    pub fn max_error(&self) -> MpReal {
        self.probs.iter().map(|p| p.clone().abs()).fold(
            MpReal::new(self.probs[0].prec()),
            |a, b| if b > a { b } else { a },
        )
    }
}

enum Step {
    X(usize),
    Toffoli(usize, usize, usize),
}

fn g_steps(base: usize) -> Vec<Step> {
    let d = |k| base + k;
    let a = |k| base + 4 + k;
    use Step::*;
    vec![
        Toffoli(d(0), d(1), a(0)),
        Toffoli(d(1), d(2), a(1)),
        Toffoli(d(2), d(3), a(2)),
        // a3 = a0 ∨ a1
        X(a(0)),
        X(a(1)),
        Toffoli(a(0), a(1), a(3)),
        X(a(3)),
        X(a(0)),
        X(a(1)),
        // a4 = a3 ∨ a2
        X(a(3)),
        X(a(2)),
        Toffoli(a(3), a(2), a(4)),
        X(a(4)),
        X(a(3)),
        X(a(2)),
    ]
}

fn apply(m: &mut MpsState, steps: impl Iterator<Item = Step>) -> Result<()> {
    let x = gates::pauli_x(m.prec());
    for s in steps {
        match s {
            Step::X(q) => m.apply_u2(&x, q)?,
            Step::Toffoli(a, b, t) => m.ccnot(a, b, t)?,
        }
    }
    Ok(())
}

pub fn run(n_g: usize, prec: u32, m_trunc: usize, seed: u64) -> Result<DjReport> {
    if n_g == 0 {
        bail!("need at least one bundle");
    }
    let n = 9 * n_g + 2;
    let (acc, orc) = (9 * n_g, 9 * n_g + 1);
    let mut m = MpsState::with_prec(n, prec)?;
    m.set_m_trunc(m_trunc);
    m.set_seed(seed);
    let h = gates::hadamard(prec);
    let data = || (0..n_g).flat_map(|i| (0..4).map(move |k| 9 * i + k));
    for q in data() {
        m.apply_u2(&h, q)?;
    }
    m.apply_u2(&gates::pauli_x(prec), orc)?;
    m.apply_u2(&h, orc)?;
    for i in 0..n_g {
        apply(&mut m, g_steps(9 * i).into_iter())?;
    }
    for i in 0..n_g {
        m.cnot(9 * i + 8, acc)?;
    }
    m.cnot(acc, orc)?;
    for i in (0..n_g).rev() {
        m.cnot(9 * i + 8, acc)?;
    }
    for i in (0..n_g).rev() {
        apply(&mut m, g_steps(9 * i).into_iter().rev())?;
    }
    for q in data() {
        m.apply_u2(&h, q)?;
    }
    let mut probs = Vec::with_capacity(n_g);
    for i in 0..n_g {
        probs.push(m.rdo_block(9 * i, 9 * i + 3)?[(0, 0)].re.clone());
    }
    Ok(DjReport {
        n_g,
        qubits: n,
        m_maxmax: m.get_m_maxmax(),
        probs,
    })
}
