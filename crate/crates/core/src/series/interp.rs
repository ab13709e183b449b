use super::Series;
use crate::{Elem, Error, KElem, Rational, Result, RingParams};

/// A polynomial over the fraction field `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct KPoly {
    params: RingParams,
    coeffs: Vec<KElem>,
}

impl KPoly {
    pub fn new(params: RingParams, coeffs: Vec<KElem>) -> Self {
        let coeffs = if coeffs.is_empty() {
            vec![KElem::zero(params)]
        } else {
            coeffs
        };
        KPoly { params, coeffs }
    }

    pub fn from_series(f: &Series) -> Self {
        Self::new(
            f.params(),
            f.coeffs().iter().cloned().map(KElem::from_elem).collect(),
        )
    }

    pub fn coeffs(&self) -> &[KElem] {
        &self.coeffs
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn evaluate(&self, u: &KElem) -> KElem {
        let mut acc = KElem::zero(self.params);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * u) + c;
        }
        acc
    }

    /// The polynomial as an element of `O_K[[U]] / U^d`, if power-bounded.
    pub fn to_series(&self, d: usize) -> Result<Series> {
        if self.coeffs.len() > d {
            return Err(Error::InsufficientTruncation {
                lambda: self.coeffs.len() - 1,
                truncation: d,
            });
        }
        let mut coeffs: Vec<Elem> = self
            .coeffs
            .iter()
            .map(KElem::to_integral)
            .collect::<Result<_>>()?;
        coeffs.resize(d, Elem::zero(self.params));
        Series::new(self.params, coeffs)
    }

    /// `self * (U - a)`.
    fn mul_linear(&self, a: &KElem) -> Self {
        let mut out = vec![KElem::zero(self.params); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] = &out[i + 1] + c;
            out[i] = &out[i] - &(c * a);
        }
        KPoly::new(self.params, out)
    }
}

/// Outcome of the integrality test on a polynomial over `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerBound {
    /// All coefficient valuations are `>= 0`.
    pub bounded: bool,
    /// `max(0, -min v(c_i))`, normalised so that `v(p) = 1`.
    pub denominator_exponent: Rational,
    /// Index of a coefficient attaining the worst valuation, if unbounded.
    pub worst_index: Option<usize>,
}

/// Checks whether every coefficient of `f` lies in `O_K`.
pub fn power_bounded_check(f: &KPoly) -> PowerBound {
    let e = f.params.e() as i64;
    let worst = f
        .coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.val_pi().map(|v| (v, i)))
        .min();
    match worst {
        Some((v, i)) if v < 0 => PowerBound {
            bounded: false,
            denominator_exponent: Rational::new(-v, e),
            worst_index: Some(i),
        },
        _ => PowerBound {
            bounded: true,
            denominator_exponent: Rational::from_integer(0),
            worst_index: None,
        },
    }
}

/// A Newton interpolant together with its precision bookkeeping.
#[derive(Clone, Debug)]
pub struct Interpolant {
    pub poly: KPoly,
    /// Coefficients in the Newton basis `prod_{j<i} (U - u_j)`.
    pub newton: Vec<KElem>,
    /// Digits lost at each divided-difference level: `max v(u_i - u_j)`
    /// over the pairs divided at that level, in pi units.
    pub loss_per_level: Vec<u32>,
    /// Least absolute precision (pi units) over the monomial coefficients.
    pub min_abs_prec: i64,
}

/// Newton divided-difference interpolation through `(u_i, v_i)`.
///
/// Nodes must lie in the open disk (`v(u_i) > 0`) and be distinct at working
/// precision. Values may be non-integral.
pub fn newton_interpolate(points: &[(Elem, KElem)]) -> Result<Interpolant> {
    let Some((first, _)) = points.first() else {
        return Err(Error::InvalidParams("no interpolation points".into()));
    };
    let params = first.params();
    for (u, v) in points {
        if u.params() != params || v.params() != params {
            return Err(Error::MismatchedParams);
        }
        if u.val_pi() == Some(0) {
            return Err(Error::OutsideDomain);
        }
    }
    let nodes: Vec<KElem> = points
        .iter()
        .map(|(u, _)| KElem::from_elem(u.clone()))
        .collect();
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if (&nodes[j] - &nodes[i]).is_zero() {
                return Err(Error::CoincidentNodes(i, j));
            }
        }
    }
    let mut dd: Vec<KElem> = points.iter().map(|(_, v)| v.clone()).collect();
    let mut loss_per_level = Vec::with_capacity(n.saturating_sub(1));
    for level in 1..n {
        let mut loss = 0;
        for i in (level..n).rev() {
            let gap = &nodes[i] - &nodes[i - level];
            loss = loss.max(gap.val_pi().unwrap_or(0).max(0) as u32);
            let q = (&dd[i] - &dd[i - 1]).checked_div(&gap)?;
            if q.is_zero() && q.abs_prec() <= 0 {
                return Err(Error::PrecisionExhausted);
            }
            dd[i] = q;
        }
        loss_per_level.push(loss);
    }
    // Horner in the Newton basis.
    let mut poly = KPoly::new(params, vec![dd[n - 1].clone()]);
    for i in (0..n - 1).rev() {
        poly = poly.mul_linear(&nodes[i]);
        poly.coeffs[0] = &poly.coeffs[0] + &dd[i];
    }
    let min_abs_prec = poly.coeffs.iter().map(KElem::abs_prec).min().unwrap_or(0);
    Ok(Interpolant {
        poly,
        newton: dd,
        loss_per_level,
        min_abs_prec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> RingParams {
        RingParams::new(3, 1, 8).unwrap()
    }

    fn pt(r: RingParams, u: i64, v: i64) -> (Elem, KElem) {
        (Elem::from_int(r, u), KElem::from_int(r, v))
    }

    #[test]
    fn single_point_is_constant() {
        let r = z3();
        let it = newton_interpolate(&[pt(r, 3, 5)]).unwrap();
        assert_eq!(it.poly.to_series(4).unwrap(), Series::from_ints(r, &[5], 4));
    }

    #[test]
    fn two_points_give_one_plus_u() {
        let r = z3();
        let it = newton_interpolate(&[pt(r, 3, 4), pt(r, 6, 7)]).unwrap();
        assert_eq!(it.poly.to_series(4).unwrap(), Series::from_ints(r, &[1, 1], 4));
        assert_eq!(it.loss_per_level, vec![1]);
    }

    #[test]
    fn recovers_a_quadratic() {
        let r = z3();
        let f = Series::from_ints(r, &[2, -1, 5], 6);
        let pts: Vec<_> = [3, 6, 12]
            .iter()
            .map(|&u| {
                let u = Elem::from_int(r, u);
                let v = KElem::from_elem(f.evaluate_polynomial(&u));
                (u, v)
            })
            .collect();
        let it = newton_interpolate(&pts).unwrap();
        assert_eq!(it.poly.to_series(6).unwrap(), f);
        assert!(power_bounded_check(&it.poly).bounded);
    }

    #[test]
    fn error_paths() {
        let r = z3();
        assert_eq!(
            newton_interpolate(&[pt(r, 3, 1), pt(r, 3, 2)]).unwrap_err(),
            Error::CoincidentNodes(0, 1)
        );
        assert_eq!(
            newton_interpolate(&[pt(r, 1, 1)]).unwrap_err(),
            Error::OutsideDomain
        );
        // nodes 3^7 apart with an imprecise value: difference lost entirely
        let u1 = Elem::from_int(r, 3);
        let u2 = Elem::from_int(r, 3 + 3i64.pow(7));
        let v = KElem::from_elem(Elem::from_int(r, 0).with_prec(5));
        assert_eq!(
            newton_interpolate(&[(u1, v.clone()), (u2, v)]).unwrap_err(),
            Error::PrecisionExhausted
        );
    }

    #[test]
    fn power_bound_examples() {
        let r = z3();
        let f = KPoly::from_series(&Series::from_ints(r, &[1, 1], 4));
        assert!(power_bounded_check(&f).bounded);
        let g = KPoly::new(r, vec![KElem::zero(r), KElem::pi_pow(r, -1)]);
        let pb = power_bounded_check(&g);
        assert!(!pb.bounded);
        assert_eq!(pb.denominator_exponent, Rational::from_integer(1));
        assert_eq!(pb.worst_index, Some(1));
    }
}
