use std::fmt;

use crate::{Error, Result};

/// The ring `O_K / pi^N` for `K = Q_p(pi)` with `pi^e = p`.
///
/// `e = 1` is `Z_p` itself. Every element of the ring is written uniquely as
/// `c_0 + c_1 pi + ... + c_{e-1} pi^{e-1}` with `c_i` in `Z_p`, which is how
/// [`Elem`](super::Elem) stores it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingParams {
    p: u64,
    e: u32,
    prec: u32,
}

/// Largest modulus `p^ceil(N/e)` we accept; keeps products inside `u128`.
const MODULUS_LIMIT: u128 = 1 << 62;

impl RingParams {
    pub fn new(p: u64, e: u32, prec: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} is not an odd prime")));
        }
        if e == 0 {
            return Err(Error::InvalidParams("ramification index must be >= 1".into()));
        }
        if prec == 0 {
            return Err(Error::InvalidParams("precision must be >= 1".into()));
        }
        let params = RingParams { p, e, prec };
        let k = params.coeff_digits(0, prec);
        let mut m: u128 = 1;
        for _ in 0..k {
            m *= p as u128;
            if m >= MODULUS_LIMIT {
                return Err(Error::InvalidParams(format!(
                    "p^{k} exceeds the fixed-precision limit; lower N"
                )));
            }
        }
        Ok(params)
    }

    /// `Z_p` at precision `prec`.
    pub fn unramified(p: u64, prec: u32) -> Result<Self> {
        Self::new(p, 1, prec)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Ramification index.
    pub fn e(&self) -> u32 {
        self.e
    }

    /// Absolute precision `N`, in pi-adic digits.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Number of base-p digits of `c_i` that are known when the element is
    /// known modulo `pi^prec`.
    pub(crate) fn coeff_digits(&self, i: u32, prec: u32) -> u32 {
        if prec <= i {
            0
        } else {
            (prec - i).div_ceil(self.e)
        }
    }

    pub(crate) fn coeff_modulus(&self, i: u32, prec: u32) -> u64 {
        self.p.pow(self.coeff_digits(i, prec))
    }

    /// The working modulus `p^ceil(N/e)`; `(p^K) ⊆ (pi^N)`.
    pub(crate) fn modulus(&self) -> u64 {
        self.coeff_modulus(0, self.prec)
    }

    /// Same prime and ramification, different precision.
    pub fn with_prec(&self, prec: u32) -> Result<Self> {
        Self::new(self.p, self.e, prec)
    }
}

impl fmt::Display for RingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} e={} N={}", self.p, self.e, self.prec)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(RingParams::new(2, 1, 4).is_err());
        assert!(RingParams::new(9, 1, 4).is_err());
        assert!(RingParams::new(3, 0, 4).is_err());
        assert!(RingParams::new(3, 1, 0).is_err());
        assert!(RingParams::new(3, 1, 60).is_err());
        assert!(RingParams::new(3, 2, 60).is_ok());
    }

    #[test]
    fn coefficient_digit_counts() {
        let r = RingParams::new(3, 2, 5).unwrap();
        // pi^5: c_0 known mod 3^3, c_1 mod 3^2
        assert_eq!(r.coeff_digits(0, 5), 3);
        assert_eq!(r.coeff_digits(1, 5), 2);
        assert_eq!(r.modulus(), 27);
    }
}
