//! Wiles pseudo-representations `(A, D, Xi)` on free groups with a
//! complex-conjugation letter, and their reconstruction to rank-two
//! representations.
//!
//! Groups are free on `g_1, ..., g_t` extended by an involution `c`, with no
//! further relations. Every identity is checked on finite word samples.

mod check;
mod glue;
mod io;
mod matrix;
mod reconstruct;
mod rep;
mod word;

pub use check::{check_wiles_relations, Relation, Violation, WilesReport, WordSample};
pub use glue::glue_crt;
pub use io::MatrixRepFile;
pub use matrix::{Mat2, MatrixRep2};
pub use reconstruct::{reconstruct, Reconstruction};
pub use rep::{
    pseudo_from_matrix, trace_to_ad, MatrixPseudoRep, PerturbedPseudoRep, PseudoRep,
    TablePseudoRep, TracePseudoRep,
};
pub use word::{enumerate_words, Letter, Word};

use std::fmt;

use crate::{Elem, Error, Result, RingParams, Series};

/// Coefficient rings for pseudo-representations: `O_K` itself or the formal
/// model `O_K[[U]]`.
pub trait Coeff: Clone + fmt::Debug + PartialEq {
    fn params(&self) -> RingParams;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn halved(&self) -> Self;
    fn is_zero_at_precision(&self) -> bool;
    /// Pi-adic valuation of the value at the centre of the disk.
    fn center_val_pi(&self) -> Option<u32>;
    fn div_pi_pow(&self, k: u32) -> Result<Self>;
    fn try_inverse(&self) -> Result<Self>;
    /// Restriction to the disk `U = pi^j U'` (the identity on constants).
    fn restrict_pi_pow(&self, j: u32) -> Self;
}

impl Coeff for Elem {
    fn params(&self) -> RingParams {
        Elem::params(self)
    }
    fn zero_like(&self) -> Self {
        Elem::zero(self.params())
    }
    fn one_like(&self) -> Self {
        Elem::one(self.params())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn halved(&self) -> Self {
        self.half()
    }
    fn is_zero_at_precision(&self) -> bool {
        self.is_zero()
    }
    fn center_val_pi(&self) -> Option<u32> {
        self.val_pi()
    }
    fn div_pi_pow(&self, k: u32) -> Result<Self> {
        Elem::div_pi_pow(self, k)
    }
    fn try_inverse(&self) -> Result<Self> {
        self.inv()
    }
    fn restrict_pi_pow(&self, _j: u32) -> Self {
        self.clone()
    }
}

impl Coeff for Series {
    fn params(&self) -> RingParams {
        Series::params(self)
    }
    fn zero_like(&self) -> Self {
        Series::zero(self.params(), self.trunc()).with_chart(self.chart().clone())
    }
    fn one_like(&self) -> Self {
        Series::one(self.params(), self.trunc()).with_chart(self.chart().clone())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn halved(&self) -> Self {
        self.scale(&Elem::one(self.params()).half())
    }
    fn is_zero_at_precision(&self) -> bool {
        self.is_zero()
    }
    fn center_val_pi(&self) -> Option<u32> {
        self.coeff(0).val_pi()
    }
    fn div_pi_pow(&self, k: u32) -> Result<Self> {
        Series::div_pi_pow(self, k)
    }
    fn try_inverse(&self) -> Result<Self> {
        self.inv().map_err(|_| Error::NonUnit)
    }
    fn restrict_pi_pow(&self, j: u32) -> Self {
        self.rescale(&Elem::one(self.params()).mul_pi_pow(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_coefficients_restrict_and_divide() {
        let r = RingParams::new(3, 1, 8).unwrap();
        // 3 + U is not divisible by 3, but its restriction to |U| <= 1/3 is.
        let f = Series::from_ints(r, &[3, 1], 4);
        assert!(Coeff::div_pi_pow(&f, 1).is_err());
        let g = f.restrict_pi_pow(1);
        assert_eq!(Coeff::div_pi_pow(&g, 1).unwrap(), Series::from_ints(r, &[1, 1], 4));
        assert_eq!(g.center_val_pi(), Some(1));
        assert_eq!(Elem::from_int(r, 6).restrict_pi_pow(3), Elem::from_int(r, 6));
    }
}
