use super::Series;
use crate::{Elem, Error, Rational, Result};

/// `f = p^mu * distinguished * unit`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassFactorization {
    pub mu: Rational,
    pub lambda: usize,
    /// Monic of degree `lambda`, lower coefficients in the maximal ideal.
    pub distinguished: Series,
    /// Constant term is a unit.
    pub unit: Series,
}

impl WeierstrassFactorization {
    /// `p^mu * distinguished * unit`.
    pub fn product(&self) -> Series {
        let params = self.unit.params();
        let shift = (self.mu * Rational::from_integer(params.e() as i64)).to_integer() as u32;
        (&self.distinguished * &self.unit).mul_pi_pow(shift)
    }
}

/// Weierstrass preparation of a truncated series.
///
/// The truncation `f mod U^d` is read as a polynomial of degree `< d`, so the
/// unit comes out as a polynomial of degree `< d - lambda` and the product
/// reproduces `f` without any truncation. After dividing out `p^mu`, the
/// factors are found by alternating two triangular solves of
/// `f = P * u` until neither changes:
///
/// * given `P`, the coefficients `u_t` (from the top down) from the
///   equations at indices `lambda..d`;
/// * given `u`, the coefficients `P_i` (from the bottom up) from the
///   equations at indices `0..lambda`.
///
/// Each round gains at least one pi-adic digit since the lower coefficients
/// of `P` lie in the maximal ideal.
pub fn weierstrass_prep(f: &Series) -> Result<WeierstrassFactorization> {
    let params = f.params();
    let d = f.trunc();
    let (v, lambda) = f.min_val_pi()?;
    if lambda >= d {
        return Err(Error::InsufficientTruncation {
            lambda,
            truncation: d,
        });
    }
    let g = f.div_pi_pow(v)?;
    let zero = Elem::zero(params);
    let ulen = d - lambda;

    let mut low: Vec<Elem> = vec![zero.clone(); lambda];
    let mut unit: Vec<Elem> = vec![zero.clone(); ulen];
    let max_rounds = params.prec() as usize + 4;
    let mut converged = false;
    for _ in 0..max_rounds {
        // u_t = g_{t+lambda} - sum_{j<lambda} P_j u_{t+lambda-j}
        let mut next_unit = vec![zero.clone(); ulen];
        for t in (0..ulen).rev() {
            let mut acc = g.coeff(t + lambda).clone();
            for (j, pj) in low.iter().enumerate() {
                let idx = t + lambda - j;
                if idx < ulen {
                    acc = &acc - &(pj * &next_unit[idx]);
                }
            }
            next_unit[t] = acc;
        }
        // P_i = (g_i - sum_{j<i} P_j u_{i-j}) / u_0
        let u0_inv = next_unit[0].inv().map_err(|_| Error::PrecisionExhausted)?;
        let mut next_low = vec![zero.clone(); lambda];
        for i in 0..lambda {
            let mut acc = g.coeff(i).clone();
            for j in 0..i {
                if i - j < ulen {
                    acc = &acc - &(&next_low[j] * &next_unit[i - j]);
                }
            }
            next_low[i] = &acc * &u0_inv;
        }
        let stable = next_low.iter().zip(&low).all(|(a, b)| a.same_repr(b))
            && next_unit.iter().zip(&unit).all(|(a, b)| a.same_repr(b));
        low = next_low;
        unit = next_unit;
        if stable {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::PrecisionExhausted);
    }
    debug_assert!(low.iter().all(|c| c.val_pi() != Some(0)));

    let mut p_coeffs = low;
    p_coeffs.push(Elem::one(params));
    p_coeffs.resize(d, zero.clone());
    unit.resize(d, zero);
    let distinguished = Series::new(params, p_coeffs)?.with_chart(f.chart().clone());
    let unit = Series::new(params, unit)?.with_chart(f.chart().clone());
    Ok(WeierstrassFactorization {
        mu: Rational::new(v as i64, params.e() as i64),
        lambda,
        distinguished,
        unit,
    })
}
