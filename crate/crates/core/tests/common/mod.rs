//! Brute-force state-vector simulator used as an oracle for the MPS code.
#![allow(dead_code)]

use mpcm::matrix::Matrix;
use mpcm::mps::{gates, MpsState};
use mpcm::MpComplex;
use rand::Rng;
use rug::Float;

/// Dense amplitudes of `n` qubits, qubit 0 most significant.
pub struct Dense {
    pub n: usize,
    pub amps: Vec<MpComplex>,
}

impl Dense {
    pub fn new(n: usize, prec: u32) -> Self {
        let mut amps = vec![MpComplex::zero(prec); 1 << n];
        amps[0] = MpComplex::one(prec);
        Self { n, amps }
    }

    /// Applies `u` to the listed qubits, the first listed being the most
    /// significant operand.
    pub fn apply(&mut self, u: &Matrix, qubits: &[usize]) {
        let k = qubits.len();
        let prec = self.amps[0].prec();
        let bit = |q: usize| 1usize << (self.n - 1 - q);
        let mask: usize = qubits.iter().map(|&q| bit(q)).sum();
        let spread = |local: usize| -> usize {
            (0..k)
                .filter(|&r| (local >> (k - 1 - r)) & 1 == 1)
                .map(|r| bit(qubits[r]))
                .sum()
        };
        let offsets: Vec<usize> = (0..1 << k).map(spread).collect();
        let mut out = vec![MpComplex::zero(prec); self.amps.len()];
        for base in (0..self.amps.len()).filter(|b| b & mask == 0) {
            for (r, &or) in offsets.iter().enumerate() {
                let acc = &mut out[base + or];
                for (c, &oc) in offsets.iter().enumerate() {
                    acc.add_mul(&u[(r, c)], &self.amps[base + oc]);
                }
            }
        }
        self.amps = out;
    }
}

/// Largest amplitude difference after rotating `b` onto the phase of `a`
/// at the index where `a` is largest.
pub fn phase_aligned_deviation(a: &[MpComplex], b: &[MpComplex]) -> Float {
    let prec = a[0].prec();
    let k = (0..a.len())
        .max_by(|&i, &j| a[i].norm_sqr().partial_cmp(&a[j].norm_sqr()).unwrap())
        .unwrap();
    let mut phase = if b[k].is_zero() {
        MpComplex::one(prec)
    } else {
        a[k].div(&b[k]).unwrap()
    };
    let mag = phase.abs();
    if !mag.is_zero() {
        phase = phase.unscale(&mag).unwrap();
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - &(y * &phase)).abs())
        .fold(Float::new(prec), |m, d| if d > m { d } else { m })
}

#[derive(Clone, Debug)]
pub struct Op {
    pub u: Matrix,
    pub qubits: Vec<usize>,
}

/// Random circuit drawing from U(2), U(4), U(8), SWAP, CCNOT and CSWAP.
pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, len: usize, prec: u32) -> Vec<Op> {
    let mut ops = Vec::with_capacity(len);
    while ops.len() < len {
        let kind = rng.gen_range(0..6);
        let arity = [1, 2, 3, 2, 3, 3][kind];
        if arity > n {
            continue;
        }
        let mut qubits = Vec::with_capacity(arity);
        while qubits.len() < arity {
            let q = rng.gen_range(0..n);
            if !qubits.contains(&q) {
                qubits.push(q);
            }
        }
        let u = match kind {
            0..=2 => gates::random_unitary(arity, rng, prec),
            3 => gates::swap(prec),
            4 => gates::ccnot(prec),
            _ => gates::cswap(prec),
        };
        ops.push(Op { u, qubits });
    }
    ops
}

/// Runs `ops` through both simulators and returns the phase-aligned
/// deviation between their state vectors.
pub fn compare(n: usize, ops: &[Op], prec: u32) -> Float {
    let mut mps = MpsState::with_prec(n, prec).unwrap();
    let mut dense = Dense::new(n, prec);
    for op in ops {
        mps.apply(&op.u, &op.qubits).unwrap();
        dense.apply(&op.u, &op.qubits);
    }
    phase_aligned_deviation(&dense.amps, &mps.state_vector().unwrap())
}
