//! Dense complex matrices.

mod dirac;
mod parse;
mod structure;

pub use dirac::str_dirac;
pub use parse::{parse_matrix, parse_matrix_with_prec};
pub use structure::{tensorprod, trace_out};

use std::cmp::max;
use std::fmt;
use std::ops::{Index, IndexMut};

use rand::RngCore;
use rug::Float;

use crate::error::{Error, Result, Shape};
use crate::scalar::{default_precision, random_complex, MpComplex, MpReal, DEFAULT_OUTPUT_DIGITS};

/// Row-major dense matrix. Elements may carry different precisions.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<MpComplex>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, prec: u32) -> Self {
        Self {
            rows,
            cols,
            data: vec![MpComplex::zero(prec); rows * cols],
        }
    }

    /// Zero matrix at the default precision.
    pub fn new(rows: usize, cols: usize) -> Self {
        Self::zeros(rows, cols, default_precision())
    }

    /// Random `n`×`n` unitary: random complex entries orthonormalized by
    /// modified Gram-Schmidt, applied twice.
    pub fn random_unitary<R: RngCore + ?Sized>(n: usize, rng: &mut R, prec: u32) -> Self {
        let mut cols: Vec<Vec<MpComplex>> = (0..n)
            .map(|_| (0..n).map(|_| random_complex(rng, prec)).collect())
            .collect();
        for j in 0..n {
            let (done, rest) = cols.split_at_mut(j);
            let col = &mut rest[0];
            for _ in 0..2 {
                for prev in done.iter() {
                    let mut dot = MpComplex::zero(prec);
                    for (x, y) in col.iter().zip(prev) {
                        dot.add_mul_conj(x, y);
                    }
                    for (x, y) in col.iter_mut().zip(prev) {
                        x.sub_mul(&dot, y);
                    }
                }
            }
            let norm = col
                .iter()
                .fold(Float::new(prec), |acc, z| acc + z.norm_sqr())
                .sqrt();
            for z in col.iter_mut() {
                *z = z.unscale(&norm).expect("random columns are independent");
            }
        }
        let mut u = Self::zeros(n, n, prec);
        for (j, c) in cols.iter().enumerate() {
            u.set_column(j, c);
        }
        u
    }

    pub fn identity(n: usize, prec: u32) -> Self {
        let mut m = Self::zeros(n, n, prec);
        for i in 0..n {
            m[(i, i)] = MpComplex::one(prec);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<MpComplex>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} elements cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Real entries given row by row.
    pub fn from_reals(rows: usize, cols: usize, values: &[f64], prec: u32) -> Result<Self> {
        Self::from_vec(
            rows,
            cols,
            values
                .iter()
                .map(|&x| MpComplex::from_f64(x, prec))
                .collect(),
        )
    }

    /// Square diagonal matrix.
    pub fn diag(values: &[MpComplex]) -> Self {
        let n = values.len();
        let prec = values
            .iter()
            .map(MpComplex::prec)
            .max()
            .unwrap_or(default_precision());
        let mut m = Self::zeros(n, n, prec);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    /// Column vector.
    pub fn column_vector(values: Vec<MpComplex>) -> Self {
        let n = values.len();
        Self {
            rows: n,
            cols: 1,
            data: values,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> Shape {
        Shape(self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Result<&MpComplex> {
        self.check_index(i, j)?;
        Ok(&self.data[i * self.cols + j])
    }

    pub fn set(&mut self, i: usize, j: usize, z: MpComplex) -> Result<()> {
        self.check_index(i, j)?;
        self.data[i * self.cols + j] = z;
        Ok(())
    }

    fn check_index(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.rows {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: self.rows,
            });
        }
        if j >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: j,
                limit: self.cols,
            });
        }
        Ok(())
    }

    pub fn as_slice(&self) -> &[MpComplex] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [MpComplex] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<MpComplex> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[MpComplex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<MpComplex> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, values: &[MpComplex]) {
        for (i, v) in values.iter().enumerate() {
            self[(i, j)] = v.clone();
        }
    }

    /// Largest precision among the elements.
    pub fn prec(&self) -> u32 {
        self.data
            .iter()
            .map(MpComplex::prec)
            .max()
            .unwrap_or(default_precision())
    }

    /// Rounds (or widens) every element to `prec`.
    pub fn with_prec(mut self, prec: u32) -> Self {
        for z in &mut self.data {
            z.set_prec(prec);
        }
        self
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&MpComplex, &MpComplex) -> MpComplex) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    fn map(&self, f: impl Fn(&MpComplex) -> MpComplex) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// Straight triple-loop product. Element (i, j) is accumulated at the
    /// largest precision found in row i of `self` and column j of `other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let row_prec: Vec<u32> = (0..self.rows)
            .map(|i| self.row(i).iter().map(MpComplex::prec).max().unwrap_or(2))
            .collect();
        let col_prec: Vec<u32> = (0..other.cols)
            .map(|j| {
                (0..other.rows)
                    .map(|k| other[(k, j)].prec())
                    .max()
                    .unwrap_or(2)
            })
            .collect();
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            let a = self.row(i);
            for j in 0..other.cols {
                let mut acc = MpComplex::zero(max(row_prec[i], col_prec[j]));
                for (k, aik) in a.iter().enumerate() {
                    acc.add_mul(aik, &other.data[k * other.cols + j]);
                }
                data.push(acc);
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn scalar_mul(&self, k: &MpComplex) -> Self {
        self.map(|a| a * k)
    }

    pub fn scale_real(&self, k: &MpReal) -> Self {
        self.map(|a| a.scale(k))
    }

    pub fn scalar_div(&self, k: &MpComplex) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let data = self.data.iter().map(|a| a.div(k)).collect::<Result<_>>()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].conj());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn trace(&self) -> Result<MpComplex> {
        if !self.is_square() {
            return Err(Error::Shape {
                op: "trace",
                left: self.shape(),
                right: Shape(self.cols, self.rows),
            });
        }
        let mut acc = MpComplex::zero(self.prec());
        for i in 0..self.rows {
            acc += &self[(i, i)];
        }
        Ok(acc)
    }

    /// √Tr(A A†).
    pub fn frobenius_norm(&self) -> MpReal {
        let mut acc = Float::new(self.prec());
        for z in &self.data {
            acc += z.re.clone().square();
            acc += z.im.clone().square();
        }
        acc.sqrt()
    }

    /// Literal in the `[a, b; c, d]` form read by [`parse_matrix`].
    pub fn render(&self, digits: usize) -> String {
        let mut out = String::from("[");
        for i in 0..self.rows {
            if i > 0 {
                out.push_str("; ");
            }
            for (j, z) in self.row(i).iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                out.push_str(&crate::scalar::format_complex(z, digits));
            }
        }
        out.push(']');
        out
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = MpComplex;
    fn index(&self, (i, j): (usize, usize)) -> &MpComplex {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) outside {}",
            self.shape()
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut MpComplex {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) outside {}",
            self.shape()
        );
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(f.precision().unwrap_or(DEFAULT_OUTPUT_DIGITS)))
    }
}
