//! Fixed gate matrices. Multi-qubit gates index their operands
//! most-significant first.

use rand::RngCore;

use crate::matrix::Matrix;
use crate::scalar::MpComplex;

/// Permutation matrix sending basis state `k` to `image[k]`.
fn permutation(image: &[usize], prec: u32) -> Matrix {
    let n = image.len();
    let mut m = Matrix::zeros(n, n, prec);
    for (k, &to) in image.iter().enumerate() {
        m[(to, k)] = MpComplex::one(prec);
    }
    m
}

pub fn identity(qubits: usize, prec: u32) -> Matrix {
    Matrix::identity(1 << qubits, prec)
}

pub fn hadamard(prec: u32) -> Matrix {
    let r = MpComplex::from_f64(0.5, prec).sqrt();
    let mut h = Matrix::zeros(2, 2, prec);
    h[(0, 0)] = r.clone();
    h[(0, 1)] = r.clone();
    h[(1, 0)] = r.clone();
    h[(1, 1)] = -r;
    h
}

pub fn pauli_x(prec: u32) -> Matrix {
    permutation(&[1, 0], prec)
}

pub fn pauli_y(prec: u32) -> Matrix {
    let mut y = Matrix::zeros(2, 2, prec);
    y[(0, 1)] = -MpComplex::i(prec);
    y[(1, 0)] = MpComplex::i(prec);
    y
}

pub fn pauli_z(prec: u32) -> Matrix {
    let mut z = Matrix::identity(2, prec);
    z[(1, 1)] = MpComplex::from_f64(-1.0, prec);
    z
}

/// Control is the first operand.
pub fn cnot(prec: u32) -> Matrix {
    permutation(&[0, 1, 3, 2], prec)
}

pub fn swap(prec: u32) -> Matrix {
    permutation(&[0, 2, 1, 3], prec)
}

/// Toffoli: flips the third operand when the first two are set.
pub fn ccnot(prec: u32) -> Matrix {
    permutation(&[0, 1, 2, 3, 4, 5, 7, 6], prec)
}

/// Fredkin: exchanges the last two operands when the first is set.
pub fn cswap(prec: u32) -> Matrix {
    permutation(&[0, 1, 2, 3, 4, 6, 5, 7], prec)
}

/// Random unitary on `qubits` qubits; see [`Matrix::random_unitary`].
pub fn random_unitary<R: RngCore + ?Sized>(qubits: usize, rng: &mut R, prec: u32) -> Matrix {
    Matrix::random_unitary(1 << qubits, rng, prec)
}
