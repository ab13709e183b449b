use super::{Chart, Series};
use crate::{Elem, Error, Result, RingParams};

/// An element of `O_K[[U, S]]`, stored as a series in `S` whose coefficients
/// are series in `U`. Known modulo `(U^dU, S^dS)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    params: RingParams,
    trunc_u: usize,
    s_coeffs: Vec<Series>,
}

impl BiSeries {
    /// `s_coeffs[j]` is the coefficient of `S^j`; all must share `U`-truncation.
    pub fn new(s_coeffs: Vec<Series>) -> Result<Self> {
        let Some(first) = s_coeffs.first() else {
            return Err(Error::InvalidParams("truncation order must be >= 1".into()));
        };
        let params = first.params();
        let trunc_u = first.trunc();
        for c in &s_coeffs {
            if c.params() != params {
                return Err(Error::MismatchedParams);
            }
            if c.trunc() != trunc_u {
                return Err(Error::MismatchedTruncation(trunc_u, c.trunc()));
            }
        }
        Ok(BiSeries {
            params,
            trunc_u,
            s_coeffs,
        })
    }

    pub fn zero(params: RingParams, trunc_u: usize, trunc_s: usize) -> Self {
        Self::new(vec![Series::zero(params, trunc_u); trunc_s.max(1)]).expect("valid")
    }

    /// Builds from a coefficient function `(i, j) -> c_{ij}` of `U^i S^j`.
    pub fn from_fn(
        params: RingParams,
        trunc_u: usize,
        trunc_s: usize,
        mut f: impl FnMut(usize, usize) -> Elem,
    ) -> Self {
        let s_coeffs = (0..trunc_s.max(1))
            .map(|j| {
                let coeffs = (0..trunc_u.max(1)).map(|i| f(i, j)).collect();
                Series::new(params, coeffs).expect("valid")
            })
            .collect();
        Self::new(s_coeffs).expect("valid")
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn trunc_u(&self) -> usize {
        self.trunc_u
    }

    pub fn trunc_s(&self) -> usize {
        self.s_coeffs.len()
    }

    pub fn chart(&self) -> &Chart {
        self.s_coeffs[0].chart()
    }

    pub fn with_chart(self, chart: Chart) -> Self {
        let s_coeffs = self
            .s_coeffs
            .into_iter()
            .map(|c| c.with_chart(chart.clone()))
            .collect();
        BiSeries { s_coeffs, ..self }
    }

    /// Coefficient series of `S^j`.
    pub fn s_coeff(&self, j: usize) -> &Series {
        &self.s_coeffs[j]
    }

    pub fn s_coeffs(&self) -> &[Series] {
        &self.s_coeffs
    }

    /// Coefficient of `U^i S^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &Elem {
        self.s_coeffs[j].coeff(i)
    }

    pub fn is_zero(&self) -> bool {
        self.s_coeffs.iter().all(Series::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.params != other.params {
            return Err(Error::MismatchedParams);
        }
        if self.trunc_u != other.trunc_u {
            return Err(Error::MismatchedTruncation(self.trunc_u, other.trunc_u));
        }
        if self.trunc_s() != other.trunc_s() {
            return Err(Error::MismatchedTruncation(self.trunc_s(), other.trunc_s()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Self::new(
            self.s_coeffs
                .iter()
                .zip(&other.s_coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let ds = self.trunc_s();
        let mut out = vec![Series::zero(self.params, self.trunc_u); ds];
        for (i, a) in self.s_coeffs.iter().enumerate() {
            if a.is_zero() && a.min_prec() == self.params.prec() {
                continue;
            }
            for (j, b) in other.s_coeffs.iter().take(ds - i).enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    /// Substitutes `U = u`, giving a series in `S` over `O_K`.
    pub fn evaluate_u(&self, u: &Elem) -> Result<Series> {
        let coeffs = self
            .s_coeffs
            .iter()
            .map(|c| c.evaluate(u).map(|ev| ev.value))
            .collect::<Result<_>>()?;
        Series::new(self.params, coeffs)
    }

    /// True when some `S`-coefficient is a unit of `O_K[[U]]`, i.e. the
    /// series is nonzero modulo `(pi, U)`.
    pub fn has_unit_s_coefficient(&self) -> bool {
        self.s_coeffs.iter().any(|c| c.coeff(0).is_unit())
    }
}
