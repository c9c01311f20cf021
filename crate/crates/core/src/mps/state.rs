use rand::Rng;
use rug::Float;

use super::gates;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{check_precision, default_precision, MpComplex, MpReal};

/// Widest register [`MpsState::state_vector`] will expand.
pub const STATE_VECTOR_LIMIT: usize = 20;

/// Site tensor Γ_s indexed (i, left bond, right bond).
#[derive(Clone, Debug)]
pub(crate) struct Site {
    pub(crate) left: usize,
    pub(crate) right: usize,
    pub(crate) data: Vec<MpComplex>,
}

impl Site {
    pub(crate) fn zeros(left: usize, right: usize, prec: u32) -> Self {
        Self {
            left,
            right,
            data: vec![MpComplex::zero(prec); 2 * left * right],
        }
    }

    #[inline]
    pub(crate) fn idx(&self, i: usize, a: usize, b: usize) -> usize {
        (i * self.left + a) * self.right + b
    }

    pub(crate) fn at(&self, i: usize, a: usize, b: usize) -> &MpComplex {
        &self.data[self.idx(i, a, b)]
    }
}

/// Outcome of a projective measurement.
#[derive(Clone, Debug)]
pub struct Measurement {
    pub outcome: u8,
    /// Probability of the observed outcome before the collapse.
    pub probability: MpReal,
}

#[derive(Clone, Debug)]
pub struct MpsState {
    pub(crate) prec: u32,
    pub(crate) sites: Vec<Site>,
    pub(crate) bonds: Vec<Vec<MpReal>>,
    pub(crate) m_trunc: usize,
    pub(crate) trunc_eps: MpReal,
    pub(crate) m_maxmax: usize,
    pub(crate) seed: u64,
}

impl MpsState {
    /// |0…0⟩ on `n` qubits at the default precision.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_prec(n, default_precision())
    }

    pub fn with_prec(n: usize, prec: u32) -> Result<Self> {
        check_precision(prec)?;
        if n == 0 {
            return Err(Error::InvalidArgument(
                "an MPS needs at least one qubit".into(),
            ));
        }
        if prec <= 20 {
            return Err(Error::InvalidPrecision(prec));
        }
        let mut site = Site::zeros(1, 1, prec);
        site.data[0] = MpComplex::one(prec);
        Ok(Self {
            prec,
            sites: vec![site; n],
            bonds: vec![vec![Float::with_val(prec, 1)]; n - 1],
            m_trunc: 0,
            trunc_eps: Float::with_val(prec, Float::u_exp(1, 20 - prec as i32)),
            m_maxmax: 1,
            seed: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.sites.len()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Bond dimension between sites `s` and `s + 1`.
    pub fn get_m(&self, s: usize) -> Result<usize> {
        self.check_bond(s)?;
        Ok(self.bonds[s].len())
    }

    /// Largest bond dimension in the current state.
    pub fn get_m_max(&self) -> usize {
        self.bonds.iter().map(Vec::len).max().unwrap_or(1)
    }

    /// Largest bond dimension seen since construction, including the
    /// transient states produced while routing operands with swaps.
    pub fn get_m_maxmax(&self) -> usize {
        self.m_maxmax
    }

    /// Schmidt coefficient `i` of bond `s`.
    pub fn coeff(&self, s: usize, i: usize) -> Result<&MpReal> {
        self.check_bond(s)?;
        self.bonds[s].get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            limit: self.bonds[s].len(),
        })
    }

    /// Keeps at most `cap` Schmidt coefficients per bond from the next
    /// update on; 0 removes the cap.
    pub fn set_m_trunc(&mut self, cap: usize) {
        self.m_trunc = cap;
    }

    pub fn m_trunc(&self) -> usize {
        self.m_trunc
    }

    /// Absolute floor below which reduced-density eigenvalues are dropped.
    pub fn set_trunc_eps(&mut self, eps: MpReal) {
        self.trunc_eps = eps;
    }

    pub fn trunc_eps(&self) -> &MpReal {
        &self.trunc_eps
    }

    /// Seed for the random restarts inside the eigensolver.
    pub fn set_seed(&mut self, seed: u64) {
        self.seed = seed;
    }

    fn check_bond(&self, s: usize) -> Result<()> {
        if s >= self.bonds.len() {
            return Err(Error::IndexOutOfRange {
                index: s,
                limit: self.bonds.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: q,
                limit: self.n(),
            });
        }
        Ok(())
    }

    pub(crate) fn note_ranks(&mut self) {
        self.m_maxmax = self.m_maxmax.max(self.get_m_max());
    }

    /// λ_{s-1} as seen from site `s`, unity at the left edge.
    pub(crate) fn left_weights(&self, s: usize) -> Vec<MpReal> {
        if s == 0 {
            vec![Float::with_val(self.prec, 1)]
        } else {
            self.bonds[s - 1].clone()
        }
    }

    /// λ_s as seen from site `s`, unity at the right edge.
    pub(crate) fn right_weights(&self, s: usize) -> Vec<MpReal> {
        if s + 1 == self.n() {
            vec![Float::with_val(self.prec, 1)]
        } else {
            self.bonds[s].clone()
        }
    }

    /// Applies a gate to the listed qubits; `u` has dimension 2^k for k
    /// operands, with the first operand as the most significant bit.
    pub fn apply(&mut self, u: &Matrix, qubits: &[usize]) -> Result<()> {
        let k = qubits.len();
        if !(1..=3).contains(&k) {
            return Err(Error::InvalidArgument(format!(
                "gates act on 1 to 3 qubits, got {k}"
            )));
        }
        if u.rows() != 1 << k || !u.is_square() {
            return Err(Error::Shape {
                op: "apply",
                left: u.shape(),
                right: crate::error::Shape(1 << k, 1 << k),
            });
        }
        for (j, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..j].contains(&q) {
                return Err(Error::InvalidArgument(format!("qubit {q} listed twice")));
            }
        }
        check_unitary(u)?;
        self.route_and_apply(u, qubits)
    }

    pub fn apply_u2(&mut self, u: &Matrix, q: usize) -> Result<()> {
        self.apply(u, &[q])
    }

    pub fn apply_u4(&mut self, u: &Matrix, a: usize, b: usize) -> Result<()> {
        self.apply(u, &[a, b])
    }

    pub fn apply_u8(&mut self, u: &Matrix, a: usize, b: usize, c: usize) -> Result<()> {
        self.apply(u, &[a, b, c])
    }

    pub fn swap(&mut self, a: usize, b: usize) -> Result<()> {
        self.apply(&gates::swap(self.prec), &[a, b])
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.apply(&gates::cnot(self.prec), &[control, target])
    }

    pub fn ccnot(&mut self, a: usize, b: usize, target: usize) -> Result<()> {
        self.apply(&gates::ccnot(self.prec), &[a, b, target])
    }

    pub fn cswap(&mut self, control: usize, p: usize, q: usize) -> Result<()> {
        self.apply(&gates::cswap(self.prec), &[control, p, q])
    }

    /// Moves every operand except the highest up until they sit in a block
    /// ending at the highest, applies the gate there with its operands
    /// reordered to match, and moves them back.
    fn route_and_apply(&mut self, u: &Matrix, qubits: &[usize]) -> Result<()> {
        let k = qubits.len();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&j| qubits[j]);
        let pos: Vec<usize> = order.iter().map(|&j| qubits[j]).collect();
        let hi = pos[k - 1];
        let mut swaps = Vec::new();
        for j in (0..k - 1).rev() {
            let target = hi - (k - 1 - j);
            for s in pos[j]..target {
                self.swap_adjacent(s)?;
                swaps.push(s);
            }
        }
        let lo = hi + 1 - k;
        let g = reorder_operands(u, &order);
        match k {
            1 => self.apply_site(&g, lo),
            2 => self.two_site(&g, lo)?,
            _ => self.three_site(&g, lo)?,
        }
        for &s in swaps.iter().rev() {
            self.swap_adjacent(s)?;
        }
        Ok(())
    }

    pub(crate) fn swap_adjacent(&mut self, s: usize) -> Result<()> {
        let g = gates::swap(self.prec);
        self.two_site(&g, s)
    }

    /// Γ_q(i,·,·) ← Σ_k u_ik Γ_q(k,·,·).
    fn apply_site(&mut self, u: &Matrix, q: usize) {
        let site = &self.sites[q];
        let block = site.left * site.right;
        let mut out = Site::zeros(site.left, site.right, self.prec);
        for i in 0..2 {
            for k in 0..2 {
                let uik = &u[(i, k)];
                if uik.is_zero() {
                    continue;
                }
                for t in 0..block {
                    out.data[i * block + t].add_mul(uik, &site.data[k * block + t]);
                }
            }
        }
        self.sites[q] = out;
    }

    /// Reduced density operator of the consecutive qubits `a..=b`,
    /// contracted from the edge bonds without expanding the full state.
    pub fn rdo_block(&self, a: usize, b: usize) -> Result<Matrix> {
        self.check_qubit(b)?;
        if a > b {
            return Err(Error::InvalidArgument(format!(
                "block start {a} exceeds end {b}"
            )));
        }
        let p = self.prec;
        let wl = self.left_weights(a);
        let wr = self.right_weights(b);
        // block[string] is a (left × right) matrix, row-major
        let first = &self.sites[a];
        let mut rows = first.left;
        let mut cols = first.right;
        let mut block: Vec<Vec<MpComplex>> = (0..2)
            .map(|i| first.data[i * rows * cols..(i + 1) * rows * cols].to_vec())
            .collect();
        for s in a + 1..=b {
            let site = &self.sites[s];
            let lam = &self.bonds[s - 1];
            let mut next = Vec::with_capacity(block.len() * 2);
            for m in &block {
                for i in 0..2 {
                    let mut out = vec![MpComplex::zero(p); rows * site.right];
                    for r in 0..rows {
                        for c in 0..cols {
                            let x = m[r * cols + c].scale(&lam[c]);
                            if x.is_zero() {
                                continue;
                            }
                            for d in 0..site.right {
                                out[r * site.right + d].add_mul(&x, site.at(i, c, d));
                            }
                        }
                    }
                    next.push(out);
                }
            }
            block = next;
            cols = site.right;
        }
        rows = wl.len();
        let wl2: Vec<MpReal> = wl.iter().map(|x| x.clone().square()).collect();
        let wr2: Vec<MpReal> = wr.iter().map(|x| x.clone().square()).collect();
        let dim = block.len();
        let mut rho = Matrix::zeros(dim, dim, p);
        for x in 0..dim {
            for y in x..dim {
                let mut acc = MpComplex::zero(p);
                for r in 0..rows {
                    for c in 0..cols {
                        let w = Float::with_val(p, &wl2[r] * &wr2[c]);
                        let t = block[x][r * cols + c].scale(&w);
                        acc.add_mul_conj(&t, &block[y][r * cols + c]);
                    }
                }
                if x != y {
                    rho[(y, x)] = acc.conj();
                } else {
                    acc.im = Float::new(p);
                }
                rho[(x, y)] = acc;
            }
        }
        Ok(rho)
    }

    /// Reduced density operator of the listed qubits, in listed order.
    /// Operands are gathered by swaps, which are undone afterwards.
    pub fn rdo(&mut self, qubits: &[usize]) -> Result<Matrix> {
        if qubits.is_empty() {
            return Err(Error::InvalidArgument("no qubits listed".into()));
        }
        for (j, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..j].contains(&q) {
                return Err(Error::InvalidArgument(format!("qubit {q} listed twice")));
            }
        }
        let start = *qubits.iter().min().expect("nonempty");
        let mut content: Vec<usize> = (0..self.n()).collect();
        let mut swaps = Vec::new();
        for (j, &q) in qubits.iter().enumerate() {
            let mut at = content.iter().position(|&c| c == q).expect("present");
            while at > start + j {
                self.swap_adjacent(at - 1)?;
                content.swap(at - 1, at);
                swaps.push(at - 1);
                at -= 1;
            }
        }
        let rho = self.rdo_block(start, start + qubits.len() - 1);
        for &s in swaps.iter().rev() {
            self.swap_adjacent(s)?;
        }
        rho
    }

    /// Projective measurement of qubit `q` in the computational basis.
    pub fn measure<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> Result<Measurement> {
        self.check_qubit(q)?;
        let p = self.prec;
        let rho = self.rdo_block(q, q)?;
        let p0 = rho[(0, 0)].re.clone().clamp(&0, &1);
        let draw = Float::with_val(p, rng.gen::<f64>());
        let outcome: u8 = if draw < p0 { 0 } else { 1 };
        let probability = if outcome == 0 {
            p0
        } else {
            Float::with_val(p, 1u32 - &p0)
        };
        if probability.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "outcome {outcome} has zero probability"
            )));
        }
        let site = &mut self.sites[q];
        let block = site.left * site.right;
        let off = usize::from(1 - outcome) * block;
        for z in &mut site.data[off..off + block] {
            *z = MpComplex::zero(p);
        }
        if self.n() == 1 {
            let inv = Float::with_val(p, probability.sqrt_ref()).recip();
            for z in &mut self.sites[0].data {
                *z = z.scale(&inv);
            }
        } else {
            let id = gates::identity(2, p);
            let last = self.n() - 2;
            for l in (0..=q.min(last)).rev() {
                self.two_site(&id, l)?;
            }
            for l in q..=last {
                self.two_site(&id, l)?;
            }
        }
        Ok(Measurement {
            outcome,
            probability,
        })
    }

    /// Full amplitude vector, qubit 0 most significant.
    pub fn state_vector(&self) -> Result<Vec<MpComplex>> {
        let n = self.n();
        if n > STATE_VECTOR_LIMIT {
            return Err(Error::Capacity {
                qubits: n,
                limit: STATE_VECTOR_LIMIT,
            });
        }
        let p = self.prec;
        // amps[prefix][bond]
        let first = &self.sites[0];
        let mut amps: Vec<Vec<MpComplex>> = (0..2)
            .map(|i| {
                (0..first.right)
                    .map(|b| first.at(i, 0, b).clone())
                    .collect()
            })
            .collect();
        for s in 1..n {
            let site = &self.sites[s];
            let lam = &self.bonds[s - 1];
            let mut next = Vec::with_capacity(amps.len() * 2);
            for v in &amps {
                let scaled: Vec<MpComplex> = v.iter().zip(lam).map(|(z, l)| z.scale(l)).collect();
                for i in 0..2 {
                    let mut out = vec![MpComplex::zero(p); site.right];
                    for (a, x) in scaled.iter().enumerate() {
                        for (d, o) in out.iter_mut().enumerate() {
                            o.add_mul(x, site.at(i, a, d));
                        }
                    }
                    next.push(out);
                }
            }
            amps = next;
        }
        Ok(amps.into_iter().map(|mut v| v.swap_remove(0)).collect())
    }
}

/// Gate acting on sites in ascending order, given that site r of the block
/// carries operand `order[r]` of `u`.
fn reorder_operands(u: &Matrix, order: &[usize]) -> Matrix {
    let k = order.len();
    if order.iter().enumerate().all(|(r, &j)| r == j) {
        return u.clone();
    }
    let dim = 1 << k;
    let map = |c: usize| -> usize {
        let mut b = 0;
        for (r, &j) in order.iter().enumerate() {
            let bit = (c >> (k - 1 - r)) & 1;
            b |= bit << (k - 1 - j);
        }
        b
    };
    let mut g = Matrix::zeros(dim, dim, u.prec());
    for c in 0..dim {
        for c2 in 0..dim {
            g[(c, c2)] = u[(map(c), map(c2))].clone();
        }
    }
    g
}

/// Fails unless ‖u†u − I‖_F ≤ 2^-(prec-16)·dim.
fn check_unitary(u: &Matrix) -> Result<()> {
    let prec = u.prec();
    let n = u.rows();
    let dev = u
        .adjoint()
        .mul(u)?
        .sub(&Matrix::identity(n, prec))?
        .frobenius_norm();
    let limit = Float::with_val(prec, Float::u_exp(n as u32, 16 - prec as i32));
    if dev > limit {
        return Err(Error::NotUnitary {
            deviation: dev.to_f64(),
        });
    }
    Ok(())
}
