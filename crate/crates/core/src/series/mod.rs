//! Truncated power series over `O_K`: the formal model `O_K[[U]]` with
//! `U = (T - k0) / e0`, and the two-variable deformation `O_K[[U, S]]`.

mod bivariate;
mod interp;
mod io;
mod weierstrass;

use std::ops::{Add, Mul, Neg, Sub};

pub use bivariate::BiSeries;
pub use interp::{newton_interpolate, power_bounded_check, Interpolant, KPoly, PowerBound};
pub use io::SeriesFile;
pub use weierstrass::{weierstrass_prep, WeierstrassFactorization};

use crate::padic::forward_binop;
use crate::{Elem, Error, Rational, Result, RingParams};

/// Default truncation order for `U` and `S`.
pub const DEFAULT_TRUNCATION: usize = 32;

/// Metadata identifying the coordinate `U = (T - center) / scale` on weight
/// space.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    pub center: i64,
    pub scale: Elem,
}

impl Chart {
    pub fn new(center: i64, scale: Elem) -> Self {
        Chart { center, scale }
    }

    /// `U = T`.
    pub fn identity(params: RingParams) -> Self {
        Chart::new(0, Elem::one(params))
    }

    /// The coordinate `u = (k - center) / scale` of an integer weight.
    ///
    /// Both `k - center` and the scale (with the digits it was given) are
    /// taken as exact, so the coordinate carries full precision.
    pub fn coordinate(&self, k: i64) -> Result<Elem> {
        let params = self.scale.params();
        let s = self.scale.val_pi().ok_or(Error::ZeroAtPrecision)?;
        let digits = self.scale.digits();
        let unit = Elem::from_digits(params, &digits[s as usize..], params.prec());
        let mut n = k - self.center;
        if n == 0 {
            return Ok(Elem::zero(params));
        }
        let p = params.p() as i64;
        let mut a = 0u32;
        while n % p == 0 {
            n /= p;
            a += 1;
        }
        let shift = (a * params.e())
            .checked_sub(s)
            .ok_or(Error::NotDivisible(s))?;
        Ok(&Elem::from_int(params, n).mul_pi_pow(shift) * &unit.inv()?)
    }

    /// The chart of the smaller disk `U = c U'`.
    pub fn restricted(&self, c: &Elem) -> Self {
        Chart::new(self.center, &self.scale * c)
    }
}

/// An element of `O_K[[U]]` known modulo `U^d`; each coefficient carries
/// its own pi-adic precision.
///
/// Equality compares coefficients at shared precision and ignores the chart.
#[derive(Clone, Debug)]
pub struct Series {
    params: RingParams,
    coeffs: Vec<Elem>,
    chart: Chart,
}

/// Result of evaluating a truncated series at a point of the open disk.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    /// The value, with precision capped by the truncation tail.
    pub value: Elem,
    /// Lower bound `d * v(u)` on the valuation of the unknown tail.
    pub tail_valuation: Rational,
}

impl Series {
    pub fn new(params: RingParams, coeffs: Vec<Elem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParams("truncation order must be >= 1".into()));
        }
        if coeffs.iter().any(|c| c.params() != params) {
            return Err(Error::MismatchedParams);
        }
        Ok(Series {
            params,
            coeffs,
            chart: Chart::identity(params),
        })
    }

    pub fn zero(params: RingParams, d: usize) -> Self {
        Self::new(params, vec![Elem::zero(params); d.max(1)]).expect("valid")
    }

    pub fn one(params: RingParams, d: usize) -> Self {
        Self::constant(Elem::one(params), d)
    }

    pub fn constant(c: Elem, d: usize) -> Self {
        let mut s = Self::zero(c.params(), d);
        s.coeffs[0] = c;
        s
    }

    /// `c U^i`.
    pub fn monomial(c: Elem, i: usize, d: usize) -> Self {
        let mut s = Self::zero(c.params(), d);
        if i < s.trunc() {
            s.coeffs[i] = c;
        }
        s
    }

    /// The variable `U`.
    pub fn var(params: RingParams, d: usize) -> Self {
        Self::monomial(Elem::one(params), 1, d)
    }

    pub fn from_ints(params: RingParams, coeffs: &[i64], d: usize) -> Self {
        let mut s = Self::zero(params, d);
        for (slot, &c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = Elem::from_int(params, c);
        }
        s
    }

    pub fn with_chart(mut self, chart: Chart) -> Self {
        self.chart = chart;
        self
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    /// Truncation order `d`: the series is known modulo `U^d`.
    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn coeff(&self, i: usize) -> &Elem {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }


    /// Same coefficients, truncation order `d` (padding with exact zeros).
    pub fn truncated(&self, d: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(d.max(1), Elem::zero(self.params));
        Series {
            params: self.params,
            coeffs,
            chart: self.chart.clone(),
        }
    }

    /// Every coefficient is an inexact zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Elem::is_zero)
    }

    /// Index of the last coefficient that is not an inexact zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Smallest absolute precision over the coefficients.
    pub fn min_prec(&self) -> u32 {
        self.coeffs.iter().map(Elem::prec).min().unwrap_or(0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.params != other.params {
            return Err(Error::MismatchedParams);
        }
        if self.trunc() != other.trunc() {
            return Err(Error::MismatchedTruncation(self.trunc(), other.trunc()));
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: Vec<Elem>) -> Self {
        Series {
            params: self.params,
            coeffs,
            chart: self.chart.clone(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_coeffs(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_coeffs(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Truncated product: coefficient `i` only reads coefficients `<= i`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.trunc();
        let mut out: Vec<Option<Elem>> = vec![None; d];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().take(d - i).enumerate() {
                let t = a * b;
                out[i + j] = Some(match out[i + j].take() {
                    None => t,
                    Some(acc) => &acc + &t,
                });
            }
        }
        Ok(self.with_coeffs(
            out.into_iter()
                .map(|c| c.unwrap_or_else(|| Elem::zero(self.params)))
                .collect(),
        ))
    }

    pub fn scale(&self, c: &Elem) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul_pi_pow(&self, k: u32) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| a.mul_pi_pow(k)).collect())
    }

    /// Divides every coefficient by `pi^k`.
    pub fn div_pi_pow(&self, k: u32) -> Result<Self> {
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .map(|a| a.div_pi_pow(k))
                .collect::<Result<_>>()?,
        ))
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn inv(&self) -> Result<Self> {
        let a0_inv = self.coeffs[0]
            .inv()
            .map_err(|_| Error::NonUnitConstantTerm)?;
        let d = self.trunc();
        let mut b: Vec<Elem> = Vec::with_capacity(d);
        b.push(a0_inv.clone());
        for n in 1..d {
            let mut acc = Elem::zero(self.params);
            for k in 1..=n {
                if !self.coeffs[k].is_zero() || self.coeffs[k].prec() < self.params.prec() {
                    acc = &acc + &(&self.coeffs[k] * &b[n - k]);
                }
            }
            b.push(-&(&acc * &a0_inv));
        }
        Ok(self.with_coeffs(b))
    }

    /// `(mu, lambda)`: the least coefficient valuation and the first index
    /// attaining it.
    pub fn invariants(&self) -> Result<(Rational, usize)> {
        let (v, i) = self.min_val_pi()?;
        Ok((Rational::new(v as i64, self.params.e() as i64), i))
    }

    pub fn mu_invariant(&self) -> Result<Rational> {
        self.invariants().map(|(mu, _)| mu)
    }

    pub fn lambda_invariant(&self) -> Result<usize> {
        self.invariants().map(|(_, lambda)| lambda)
    }

    pub(crate) fn min_val_pi(&self) -> Result<(u32, usize)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.val_pi().map(|v| (v, i)))
            .min()
            .ok_or(Error::ZeroAtPrecision)
    }

    /// Evaluates at `u` with `v(u) > 0`, i.e. strictly inside the disk.
    pub fn evaluate(&self, u: &Elem) -> Result<Evaluation> {
        if u.params() != self.params {
            return Err(Error::MismatchedParams);
        }
        let v = match u.val_pi() {
            Some(0) => return Err(Error::OutsideDomain),
            Some(v) => v,
            None => u.prec(),
        };
        let tail = (self.trunc() as u64 * v as u64).min(u32::MAX as u64) as u32;
        let value = self.evaluate_polynomial(u);
        let capped = value.with_prec(value.prec().min(tail));
        Ok(Evaluation {
            value: capped,
            tail_valuation: Rational::new(tail as i64, self.params.e() as i64),
        })
    }

    /// Evaluates the truncation as an exact polynomial (any `u` in `O_K`).
    pub fn evaluate_polynomial(&self, u: &Elem) -> Elem {
        let mut acc = Elem::zero(self.params);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * u) + c;
        }
        acc
    }

    /// Reduction modulo the height-one prime `P_k = (U - u_k)`.
    pub fn reduce_mod_pk(&self, u_k: &Elem) -> Result<Elem> {
        self.evaluate(u_k).map(|ev| ev.value)
    }

    /// `g(U) = f(c U)`, the restriction to the smaller disk `|U| <= |c|`.
    pub fn rescale(&self, c: &Elem) -> Self {
        let mut power = Elem::one(self.params);
        let mut coeffs = Vec::with_capacity(self.trunc());
        for a in &self.coeffs {
            coeffs.push(a * &power);
            power = &power * c;
        }
        Series {
            params: self.params,
            coeffs,
            chart: self.chart.restricted(c),
        }
    }

    /// `f(g(U))` for `g` with constant term in the maximal ideal.
    pub fn compose(&self, g: &Series) -> Result<Self> {
        self.check(g)?;
        if g.coeffs[0].val_pi() == Some(0) {
            return Err(Error::OutsideDomain);
        }
        let mut acc = Series::zero(self.params, self.trunc());
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(g)?;
            acc.coeffs[0] = &acc.coeffs[0] + c;
        }
        Ok(acc.with_chart(self.chart.clone()))
    }
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.coeffs == other.coeffs
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.with_coeffs(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

forward_binop!(Series, Add, add, checked_add);
forward_binop!(Series, Sub, sub, checked_sub);
forward_binop!(Series, Mul, mul, checked_mul);
