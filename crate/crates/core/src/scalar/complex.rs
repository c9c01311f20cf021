use std::cmp::max;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::{Assign, Complex, Float};

use super::precision::default_precision;
use crate::error::{Error, Result};

/// Real multiprecision value. Precision is the exact significand length and
/// every operation rounds to nearest, ties to even.
pub type MpReal = Float;

/// Complex number whose parts each carry their own binary precision.
///
/// Binary operations return a value at the largest precision found among
/// the operands' parts. Parts may differ in precision; [`MpComplex::prec`]
/// reports the larger one.
#[derive(Clone, Debug, PartialEq)]
pub struct MpComplex {
    pub re: MpReal,
    pub im: MpReal,
}

/// The operations reachable through [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Conj,
    Abs,
    Sqrt,
    Exp,
    Log,
    Sin,
    Cos,
}

/// Dispatches a scalar operation by name. Binary operations need `b`.
pub fn arith(op: ArithOp, a: &MpComplex, b: Option<&MpComplex>) -> Result<MpComplex> {
    let rhs = || b.ok_or_else(|| Error::InvalidArgument(format!("{op:?} needs two operands")));
    Ok(match op {
        ArithOp::Add => a + rhs()?,
        ArithOp::Sub => a - rhs()?,
        ArithOp::Mul => a * rhs()?,
        ArithOp::Div => a.div(rhs()?)?,
        ArithOp::Neg => -a,
        ArithOp::Conj => a.conj(),
        ArithOp::Abs => MpComplex::from_real(a.abs()),
        ArithOp::Sqrt => a.sqrt(),
        ArithOp::Exp => a.exp(),
        ArithOp::Log => a.ln()?,
        ArithOp::Sin => a.sin(),
        ArithOp::Cos => a.cos(),
    })
}

impl MpComplex {
    /// Zero at the given precision.
    pub fn zero(prec: u32) -> Self {
        Self {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    /// Zero at the current default precision.
    pub fn new() -> Self {
        Self::zero(default_precision())
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(1.0, prec)
    }

    pub fn i(prec: u32) -> Self {
        Self {
            re: Float::new(prec),
            im: Float::with_val(prec, 1),
        }
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, x),
            im: Float::new(prec),
        }
    }

    pub fn from_i64(x: i64, prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, x),
            im: Float::new(prec),
        }
    }

    pub fn from_f64_parts(re: f64, im: f64, prec: u32) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    /// Real value with a zero imaginary part of matching precision.
    pub fn from_real(re: MpReal) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn from_parts(re: MpReal, im: MpReal) -> Self {
        Self { re, im }
    }

    pub fn prec(&self) -> u32 {
        max(self.re.prec(), self.im.prec())
    }

    /// Rounds (or widens) both parts to `prec`.
    pub fn set_prec(&mut self, prec: u32) {
        self.re.set_prec(prec);
        self.im.set_prec(prec);
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.set_prec(prec);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |z|², exact up to one rounding.
    pub fn norm_sqr(&self) -> MpReal {
        let p = self.prec();
        Float::with_val(p, self.re.mul_add_mul_ref(&self.re, &self.im, &self.im))
    }

    pub fn abs(&self) -> MpReal {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// Multiplies by a real scalar.
    pub fn scale(&self, k: &MpReal) -> Self {
        let p = max(self.prec(), k.prec());
        Self {
            re: Float::with_val(p, &self.re * k),
            im: Float::with_val(p, &self.im * k),
        }
    }

    /// Divides by a real scalar.
    pub fn unscale(&self, k: &MpReal) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = max(self.prec(), k.prec());
        Ok(Self {
            re: Float::with_val(p, &self.re / k),
            im: Float::with_val(p, &self.im / k),
        })
    }

    /// Correctly rounded complex division.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = max(self.prec(), rhs.prec());
        if rhs.is_real() {
            return Ok(Self {
                re: Float::with_val(p, &self.re / &rhs.re),
                im: Float::with_val(p, &self.im / &rhs.re),
            });
        }
        let a = self.to_rug(p);
        let b = rhs.to_rug(p);
        Ok(Self::from_rug(Complex::with_val(p, &a / &b)))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.prec()).div(self)
    }

    pub fn sqrt(&self) -> Self {
        self.unary(|c| c.sqrt())
    }

    pub fn exp(&self) -> Self {
        self.unary(|c| c.exp())
    }

    /// Principal branch of the natural logarithm.
    pub fn ln(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::LogOfZero);
        }
        Ok(self.unary(|c| c.ln()))
    }

    pub fn sin(&self) -> Self {
        self.unary(|c| c.sin())
    }

    pub fn cos(&self) -> Self {
        self.unary(|c| c.cos())
    }

    /// `self += a * b`, rounded at the precision already held by `self`.
    pub fn add_mul(&mut self, a: &Self, b: &Self) {
        self.re += &a.re * &b.re;
        self.re -= &a.im * &b.im;
        self.im += &a.re * &b.im;
        self.im += &a.im * &b.re;
    }

    /// `self += a * conj(b)`, rounded at the precision already held by `self`.
    pub fn add_mul_conj(&mut self, a: &Self, b: &Self) {
        self.re += &a.re * &b.re;
        self.re += &a.im * &b.im;
        self.im += &a.im * &b.re;
        self.im -= &a.re * &b.im;
    }

    /// `self -= a * b`, rounded at the precision already held by `self`.
    pub fn sub_mul(&mut self, a: &Self, b: &Self) {
        self.re -= &a.re * &b.re;
        self.re += &a.im * &b.im;
        self.im -= &a.re * &b.im;
        self.im -= &a.im * &b.re;
    }

    /// `self += a * k` for real `k`.
    pub fn add_mul_real(&mut self, a: &Self, k: &MpReal) {
        self.re += &a.re * k;
        self.im += &a.im * k;
    }

    pub(crate) fn to_rug(&self, prec: u32) -> Complex {
        Complex::with_val(prec, (&self.re, &self.im))
    }

    pub(crate) fn from_rug(c: Complex) -> Self {
        let (re, im) = c.into_real_imag();
        Self { re, im }
    }

    fn unary(&self, f: impl FnOnce(Complex) -> Complex) -> Self {
        let p = self.prec();
        Self::from_rug(f(self.to_rug(p)))
    }

    pub fn to_f64_parts(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Default for MpComplex {
    fn default() -> Self {
        Self::new()
    }
}

/// π at the given precision.
pub fn pi(prec: u32) -> MpReal {
    Float::with_val(prec, Constant::Pi)
}

/// Largest precision carried by either operand.
fn joint_prec(a: &MpComplex, b: &MpComplex) -> u32 {
    max(a.prec(), b.prec())
}

impl Add for &MpComplex {
    type Output = MpComplex;
    fn add(self, rhs: &MpComplex) -> MpComplex {
        let p = joint_prec(self, rhs);
        MpComplex {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }
}

impl Sub for &MpComplex {
    type Output = MpComplex;
    fn sub(self, rhs: &MpComplex) -> MpComplex {
        let p = joint_prec(self, rhs);
        MpComplex {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }
}

impl Mul for &MpComplex {
    type Output = MpComplex;
    /// Each part is a fused two-product sum, so both parts are correctly
    /// rounded.
    fn mul(self, rhs: &MpComplex) -> MpComplex {
        let p = joint_prec(self, rhs);
        MpComplex {
            re: Float::with_val(p, self.re.mul_sub_mul_ref(&rhs.re, &self.im, &rhs.im)),
            im: Float::with_val(p, self.re.mul_add_mul_ref(&rhs.im, &self.im, &rhs.re)),
        }
    }
}

impl Neg for &MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        MpComplex {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Neg for MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        MpComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MpComplex {
            type Output = MpComplex;
            fn $f(self, rhs: MpComplex) -> MpComplex {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MpComplex> for MpComplex {
            type Output = MpComplex;
            fn $f(self, rhs: &MpComplex) -> MpComplex {
                (&self).$f(rhs)
            }
        }
        impl $tr<MpComplex> for &MpComplex {
            type Output = MpComplex;
            fn $f(self, rhs: MpComplex) -> MpComplex {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&MpComplex> for MpComplex {
    fn add_assign(&mut self, rhs: &MpComplex) {
        let p = joint_prec(self, rhs);
        if self.re.prec() < p || self.im.prec() < p {
            self.set_prec(p);
        }
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&MpComplex> for MpComplex {
    fn sub_assign(&mut self, rhs: &MpComplex) {
        let p = joint_prec(self, rhs);
        if self.re.prec() < p || self.im.prec() < p {
            self.set_prec(p);
        }
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&MpComplex> for MpComplex {
    fn mul_assign(&mut self, rhs: &MpComplex) {
        let prod = &*self * rhs;
        *self = prod;
    }
}

impl Assign<&MpComplex> for MpComplex {
    fn assign(&mut self, src: &MpComplex) {
        self.re.assign(&src.re);
        self.im.assign(&src.im);
    }
}

impl fmt::Display for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or(super::format::DEFAULT_OUTPUT_DIGITS);
        f.write_str(&super::format::format_complex(self, digits))
    }
}
