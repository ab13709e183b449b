use std::ops::{Add, Mul, Neg, Sub};

use super::elem::forward_binop;
use super::{Elem, RingParams};
use crate::{Error, Rational, Result};

/// An element `pi^shift * body` of the fraction field `K`.
///
/// Used where intermediate values may leave `O_K` (divided differences,
/// integrality checks). The body carries at most `N` digits, so a `KElem`
/// has relative precision at most `N`.
#[derive(Clone, Debug)]
pub struct KElem {
    shift: i64,
    body: Elem,
}

impl KElem {
    pub fn new(shift: i64, body: Elem) -> Self {
        KElem { shift, body }.normalized()
    }

    pub fn from_elem(x: Elem) -> Self {
        Self::new(0, x)
    }

    pub fn from_int(params: RingParams, n: i64) -> Self {
        Self::from_elem(Elem::from_int(params, n))
    }

    pub fn zero(params: RingParams) -> Self {
        Self::from_elem(Elem::zero(params))
    }

    /// `pi^k` for any integer `k`.
    pub fn pi_pow(params: RingParams, k: i64) -> Self {
        Self::new(k, Elem::one(params))
    }

    fn normalized(self) -> Self {
        match self.body.val_pi() {
            Some(v) if v > 0 => KElem {
                shift: self.shift + v as i64,
                body: self.body.div_pi_pow(v).expect("valuation checked"),
            },
            _ => self,
        }
    }

    pub fn params(&self) -> RingParams {
        self.body.params()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Valuation in pi units; `None` for an inexact zero.
    pub fn val_pi(&self) -> Option<i64> {
        self.body.val_pi().map(|v| self.shift + v as i64)
    }

    pub fn valuation(&self) -> Option<Rational> {
        self.val_pi()
            .map(|v| Rational::new(v, self.params().e() as i64))
    }

    /// Absolute precision in pi units (may be negative).
    pub fn abs_prec(&self) -> i64 {
        self.shift + self.body.prec() as i64
    }

    pub(crate) fn shift(&self) -> i64 {
        self.shift
    }

    pub(crate) fn body(&self) -> &Elem {
        &self.body
    }

    /// The element as a member of `O_K`, if it has non-negative valuation.
    pub fn to_integral(&self) -> Result<Elem> {
        let params = self.params();
        if self.shift >= 0 {
            return Ok(self.body.mul_pi_pow(self.shift as u32));
        }
        if self.body.is_zero() {
            let prec = self.abs_prec().clamp(0, params.prec() as i64) as u32;
            return Ok(Elem::zero(params).with_prec(prec));
        }
        Err(Error::NotDivisible(0))
    }

    fn aligned(&self, other: &Self) -> (i64, Elem, Elem) {
        let s = self.shift.min(other.shift);
        let a = self.body.mul_pi_pow((self.shift - s) as u32);
        let b = other.body.mul_pi_pow((other.shift - s) as u32);
        (s, a, b)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (s, a, b) = self.aligned(other);
        Ok(Self::new(s, a.checked_add(&b)?))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let (s, a, b) = self.aligned(other);
        Ok(Self::new(s, a.checked_sub(&b)?))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(
            self.shift + other.shift,
            self.body.checked_mul(&other.body)?,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.body.is_zero() {
            return Err(Error::ZeroAtPrecision);
        }
        let inv = other.body.inv()?;
        Ok(Self::new(
            self.shift - other.shift,
            self.body.checked_mul(&inv)?,
        ))
    }
}

impl PartialEq for KElem {
    fn eq(&self, other: &Self) -> bool {
        if self.params() != other.params() {
            return false;
        }
        let diff = self - other;
        diff.is_zero()
    }
}

impl Neg for &KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        KElem::new(self.shift, -&self.body)
    }
}

forward_binop!(KElem, Add, add, checked_add);
forward_binop!(KElem, Sub, sub, checked_sub);
forward_binop!(KElem, Mul, mul, checked_mul);
