use std::ops::{Add, Mul, Neg, Sub};

use smallvec::{smallvec, SmallVec};

use super::RingParams;
use crate::{Error, Rational, Result};

/// A finite-precision element of `O_K`.
///
/// The element is known modulo `pi^prec` with `prec <= N`. Coefficients
/// `c_i` of `1, pi, ..., pi^{e-1}` are stored reduced modulo
/// `p^ceil((prec - i) / e)`, which makes the representation canonical: the
/// base-p digits of `c_i` are exactly the pi-adic digits `d_i, d_{i+e}, ...`.
///
/// Equality compares digits at the shared precision of the two operands.
#[derive(Clone, Debug)]
pub struct Elem {
    params: RingParams,
    prec: u32,
    c: SmallVec<[u64; 2]>,
}

impl Elem {
    fn from_raw(params: RingParams, prec: u32, c: SmallVec<[u64; 2]>) -> Self {
        let mut x = Elem { params, prec, c };
        x.canonicalize();
        x
    }

    /// As `from_raw` for coefficients already reduced modulo `p^ceil(N/e)`;
    /// at full precision over `Z_p` there is then nothing left to do.
    fn from_reduced(params: RingParams, prec: u32, c: SmallVec<[u64; 2]>) -> Self {
        if params.e() == 1 && prec == params.prec() {
            Elem { params, prec, c }
        } else {
            Self::from_raw(params, prec, c)
        }
    }

    fn canonicalize(&mut self) {
        for (i, ci) in self.c.iter_mut().enumerate() {
            let m = self.params.coeff_modulus(i as u32, self.prec);
            *ci %= m;
        }
    }

    pub fn zero(params: RingParams) -> Self {
        Elem {
            params,
            prec: params.prec(),
            c: smallvec![0; params.e() as usize],
        }
    }

    pub fn one(params: RingParams) -> Self {
        Self::from_int(params, 1)
    }

    pub fn from_int(params: RingParams, n: i64) -> Self {
        Self::from_i128(params, n as i128)
    }

    pub(crate) fn from_i128(params: RingParams, n: i128) -> Self {
        let m = params.modulus() as i128;
        let mut c: SmallVec<[u64; 2]> = smallvec![0; params.e() as usize];
        c[0] = n.rem_euclid(m) as u64;
        Self::from_raw(params, params.prec(), c)
    }

    /// The uniformizer `pi` (equal to `p` when `e = 1`).
    pub fn uniformizer(params: RingParams) -> Self {
        Self::one(params).mul_pi_pow(1)
    }

    /// Builds `sum d_j pi^j` from pi-adic digits, known modulo `pi^prec`.
    pub fn from_digits(params: RingParams, digits: &[u64], prec: u32) -> Self {
        let e = params.e() as usize;
        let p = params.p();
        let prec = prec.min(params.prec());
        let mut c: SmallVec<[u64; 2]> = smallvec![0; e];
        let mut place: SmallVec<[u64; 2]> = smallvec![1; e];
        for (j, &d) in digits.iter().enumerate().take(prec as usize) {
            let i = j % e;
            let m = params.modulus();
            c[i] = ((c[i] as u128 + (d % p) as u128 * place[i] as u128) % m as u128) as u64;
            place[i] = ((place[i] as u128 * p as u128) % m as u128) as u64;
        }
        Self::from_raw(params, prec, c)
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    /// Absolute precision in pi-adic digits.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Forgets digits at and above `pi^prec`.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_raw(self.params, prec.min(self.prec), self.c.clone())
    }

    /// True when every known digit is zero (an inexact zero).
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_unit(&self) -> bool {
        !self.c[0].is_multiple_of(self.params.p())
    }

    /// Valuation in units of `v(pi) = 1/e`; `None` for an inexact zero.
    pub fn val_pi(&self) -> Option<u32> {
        let e = self.params.e();
        let p = self.params.p();
        self.c
            .iter()
            .enumerate()
            .filter(|(_, &ci)| ci != 0)
            .map(|(i, &ci)| {
                let mut v = 0;
                let mut x = ci;
                while x % p == 0 {
                    x /= p;
                    v += 1;
                }
                e * v + i as u32
            })
            .min()
    }

    /// Valuation normalised so that `v(p) = 1`.
    pub fn valuation(&self) -> Option<Rational> {
        self.val_pi()
            .map(|v| Rational::new(v as i64, self.params.e() as i64))
    }

    /// `val_pi`, or the precision for an inexact zero (a lower bound).
    pub(crate) fn val_pi_or_prec(&self) -> u32 {
        self.val_pi().unwrap_or(self.prec)
    }

    /// The residue of `self` in `F_p = O_K / pi`.
    pub fn residue(&self) -> u64 {
        self.c[0] % self.params.p()
    }

    /// Coefficients of `1, pi, ..., pi^{e-1}`.
    pub fn pi_coefficients(&self) -> &[u64] {
        &self.c
    }

    /// The pi-adic digits `d_0, ..., d_{prec-1}`.
    pub fn digits(&self) -> Vec<u64> {
        let e = self.params.e();
        let p = self.params.p();
        let mut rest: SmallVec<[u64; 2]> = self.c.clone();
        (0..self.prec)
            .map(|j| {
                let i = (j % e) as usize;
                let d = rest[i] % p;
                rest[i] /= p;
                d
            })
            .collect()
    }

    /// Same value and same precision.
    pub fn same_repr(&self, other: &Self) -> bool {
        self.params == other.params && self.prec == other.prec && self.c == other.c
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(Error::MismatchedParams)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        // both summands are below the modulus < 2^62
        let m = self.params.modulus();
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= m {
                    s - m
                } else {
                    s
                }
            })
            .collect();
        Ok(Self::from_reduced(self.params, self.prec.min(other.prec), c))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.params.prec();
        let mut prec = n;
        if self.prec < n {
            prec = prec.min(self.prec + other.val_pi_or_prec());
        }
        if other.prec < n {
            prec = prec.min(other.prec + self.val_pi_or_prec());
        }
        let c = mul_coeffs(&self.params, &self.c, &other.c);
        Ok(Self::from_reduced(self.params, prec, c))
    }

    /// Multiplies by `pi^k`.
    pub fn mul_pi_pow(&self, k: u32) -> Self {
        let e = self.params.e() as usize;
        let p = self.params.p();
        let m = self.params.modulus();
        let mut c = self.c.clone();
        for _ in 0..k {
            let top = c[e - 1];
            for i in (1..e).rev() {
                c[i] = c[i - 1];
            }
            c[0] = mul_mod(top, p, m);
        }
        let prec = (self.prec + k).min(self.params.prec());
        Self::from_raw(self.params, prec, c)
    }

    /// Divides by `pi^k`; the result loses `k` digits of absolute precision.
    pub fn div_pi_pow(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k > self.prec {
            return Err(Error::NotDivisible(k));
        }
        if self.val_pi().is_some_and(|v| v < k) {
            return Err(Error::NotDivisible(k));
        }
        let e = self.params.e() as usize;
        let p = self.params.p();
        let mut c = self.c.clone();
        for _ in 0..k {
            let bottom = c[0] / p;
            for i in 0..e - 1 {
                c[i] = c[i + 1];
            }
            c[e - 1] = bottom;
        }
        Ok(Self::from_raw(self.params, self.prec - k, c))
    }

    /// Inverse of a unit, by Newton iteration `y <- y (2 - x y)`.
    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NonUnit);
        }
        let params = self.params;
        let p = params.p();
        let full = Elem {
            params,
            prec: params.prec(),
            c: self.c.clone(),
        };
        let two = Elem::from_int(params, 2);
        let mut y = Elem::from_int(params, pow_mod(self.c[0] % p, p - 2, p) as i64);
        loop {
            let next = &y * &(&two - &(&full * &y));
            if next.same_repr(&y) {
                break;
            }
            y = next;
        }
        Ok(y.with_prec(self.prec))
    }

    /// `self / other` when `v(other) <= v(self)`.
    pub fn div_exact(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let v = other.val_pi().ok_or(Error::ZeroAtPrecision)?;
        let unit = other.div_pi_pow(v)?;
        let quotient = self.div_pi_pow(v)?;
        quotient.checked_mul(&unit.inv()?)
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Elem::one(self.params);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `2^{-1} self`; 2 is a unit since p is odd.
    pub fn half(&self) -> Self {
        let half = Elem::from_int(self.params, 2).inv().expect("p is odd");
        self * &half
    }

    /// The Teichmuller representative of `a mod pi`: the unique `(p-1)`-th root
    /// of unity congruent to `a`.
    pub fn teichmuller(params: RingParams, a: i64) -> Result<Self> {
        let x0 = Elem::from_int(params, a);
        if x0.residue() == 0 {
            return Err(Error::ZeroResidue);
        }
        // x -> x^p contracts to the root of unity; one digit per step.
        let mut x = Elem::from_int(params, x0.residue() as i64);
        for _ in 0..=params.prec() {
            let next = x.pow(params.p());
            if next.same_repr(&x) {
                break;
            }
            x = next;
        }
        Ok(x)
    }

    /// `p^mu = pi^{e mu}` for `mu` in `(1/e) Z`, `mu >= 0`.
    pub fn pow_p_rational(params: RingParams, mu: Rational) -> Result<Self> {
        if mu < Rational::from_integer(0) {
            return Err(Error::NegativeExponent(mu));
        }
        let scaled = mu * Rational::from_integer(params.e() as i64);
        if !scaled.is_integer() {
            return Err(Error::DenominatorMismatch(mu, params.e()));
        }
        Ok(Elem::one(params).mul_pi_pow(scaled.to_integer() as u32))
    }
}

fn mul_coeffs(params: &RingParams, x: &[u64], y: &[u64]) -> SmallVec<[u64; 2]> {
    let e = params.e() as usize;
    if e == 1 {
        return smallvec![mul_mod(x[0], y[0], params.modulus())];
    }
    let m = params.modulus();
    let p = params.p();
    let mut acc: SmallVec<[u64; 4]> = smallvec![0; 2 * e - 1];
    for (a, &xa) in x.iter().enumerate() {
        if xa == 0 {
            continue;
        }
        for (b, &yb) in y.iter().enumerate() {
            acc[a + b] = (acc[a + b] + mul_mod(xa, yb, m)) % m;
        }
    }
    // pi^{e + j} = p pi^j
    for j in (e..2 * e - 1).rev() {
        let carry = mul_mod(acc[j], p, m);
        acc[j - e] = (acc[j - e] + carry) % m;
    }
    acc.iter().take(e).copied().collect()
}

/// `a * b mod m`, avoiding 128-bit division when the product fits.
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 {
        a * b % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

fn pow_mod(mut b: u64, mut n: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = (b % m) as u128;
    let m128 = m as u128;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        n >>= 1;
    }
    b = acc as u64;
    b
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        if self.params != other.params {
            return false;
        }
        let prec = self.prec.min(other.prec);
        self.with_prec(prec).c == other.with_prec(prec).c
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        let m = self.params.modulus();
        let c = self.c.iter().map(|&x| if x == 0 { 0 } else { m - x }).collect();
        Elem::from_reduced(self.params, self.prec, c)
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

macro_rules! forward_binop {
    ($ty:ty, $tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                self.$checked(rhs).expect("operands live in different rings")
            }
        }
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    };
}
pub(crate) use forward_binop;

forward_binop!(Elem, Add, add, checked_add);
forward_binop!(Elem, Sub, sub, checked_sub);
forward_binop!(Elem, Mul, mul, checked_mul);
