//! The group ring `O_K[Delta]` for `Delta = (Z/p)^x`, its isotypic
//! idempotents for the characters `eta_j = omega^j`, and the involution
//! `iota` of the cyclotomic Iwasawa algebra.

use crate::{Elem, Error, Result, RingParams, Series};

/// `sum_a x_a [a]` over `a in (Z/p)^x`; `coeffs[a - 1] = x_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingElem {
    params: RingParams,
    coeffs: Vec<Elem>,
}

impl GroupRingElem {
    pub fn new(params: RingParams, coeffs: Vec<Elem>) -> Result<Self> {
        if coeffs.len() as u64 != params.p() - 1 {
            return Err(Error::InvalidParams(format!(
                "group ring element needs {} coefficients",
                params.p() - 1
            )));
        }
        Ok(GroupRingElem { params, coeffs })
    }

    pub fn zero(params: RingParams) -> Self {
        GroupRingElem {
            params,
            coeffs: vec![Elem::zero(params); params.p() as usize - 1],
        }
    }

    /// The group element `[a]`.
    pub fn group_element(params: RingParams, a: u64) -> Result<Self> {
        let a = a % params.p();
        if a == 0 {
            return Err(Error::ZeroResidue);
        }
        let mut x = Self::zero(params);
        x.coeffs[a as usize - 1] = Elem::one(params);
        Ok(x)
    }

    pub fn one(params: RingParams) -> Self {
        Self::group_element(params, 1).expect("1 is a unit")
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    /// Coefficient of `[a]`.
    pub fn coeff(&self, a: u64) -> &Elem {
        &self.coeffs[(a % self.params.p()) as usize - 1]
    }

    pub fn add(&self, other: &Self) -> Self {
        GroupRingElem {
            params: self.params,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn scale(&self, c: &Elem) -> Self {
        GroupRingElem {
            params: self.params,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Convolution over `Delta`.
    pub fn mul(&self, other: &Self) -> Self {
        let p = self.params.p();
        let mut out = Self::zero(self.params);
        for a in 1..p {
            for b in 1..p {
                let ab = (a * b % p) as usize - 1;
                out.coeffs[ab] = &out.coeffs[ab] + &(self.coeff(a) * other.coeff(b));
            }
        }
        out
    }
}

/// `omega(a)^j`.
fn eta(params: RingParams, j: u64, a: u64) -> Result<Elem> {
    Ok(Elem::teichmuller(params, a as i64)?.pow(j % (params.p() - 1)))
}

/// `eta_j(x) = sum_a omega(a)^j x_a`.
pub fn character_value(x: &GroupRingElem, j: u64) -> Result<Elem> {
    let r = x.params;
    (1..r.p()).try_fold(Elem::zero(r), |acc, a| Ok(&acc + &(&eta(r, j, a)? * x.coeff(a))))
}

fn inv_order(params: RingParams) -> Elem {
    Elem::from_int(params, params.p() as i64 - 1)
        .inv()
        .expect("p - 1 is a unit")
}

/// `e_j = (p - 1)^{-1} sum_a eta_j(a)^{-1} [a]`.
pub fn idempotent(params: RingParams, j: u64) -> Result<GroupRingElem> {
    let n_inv = inv_order(params);
    let p = params.p();
    // eta_j(a)^{-1} = eta_j(a^{-1}) = eta_{p-1-j}(a)
    let coeffs = (1..p)
        .map(|a| Ok(&eta(params, (p - 1) - j % (p - 1), a)? * &n_inv))
        .collect::<Result<_>>()?;
    GroupRingElem::new(params, coeffs)
}

/// The `eta_j`-component `e_j x`.
pub fn idempotent_decompose(x: &GroupRingElem, j: u64) -> Result<GroupRingElem> {
    Ok(idempotent(x.params, j)?.mul(x))
}

/// `(eta_0(x), ..., eta_{p-2}(x))` for `x = sum_a [a] x_a(S)`, given as
/// the list `x_1, ..., x_{p-1}` of series. Since `e_j x = eta_j(x) e_j`, this
/// identifies `O_K[Delta][[S]]` with `p - 1` copies of `O_K[[S]]`.
pub fn cyclotomic_split(x: &[Series]) -> Result<Vec<Series>> {
    let (params, d) = split_shape(x)?;
    let p = params.p();
    (0..p - 1)
        .map(|j| {
            (1..p).try_fold(Series::zero(params, d), |acc, a| {
                acc.checked_add(&x[a as usize - 1].scale(&eta(params, j, a)?))
            })
        })
        .collect()
}

/// Inverse of [`cyclotomic_split`]:
/// `x_a = (p - 1)^{-1} sum_j eta_j(a)^{-1} y_j`.
pub fn cyclotomic_join(y: &[Series]) -> Result<Vec<Series>> {
    let (params, d) = split_shape(y)?;
    let p = params.p();
    let n_inv = inv_order(params);
    (1..p)
        .map(|a| {
            let sum = (0..p - 1).try_fold(Series::zero(params, d), |acc, j| {
                let c = eta(params, (p - 1) - j, a)?;
                acc.checked_add(&y[j as usize].scale(&c))
            })?;
            Ok(sum.scale(&n_inv))
        })
        .collect()
}

fn split_shape(x: &[Series]) -> Result<(RingParams, usize)> {
    let first = x
        .first()
        .ok_or_else(|| Error::InvalidParams("empty component list".into()))?;
    let params = first.params();
    if x.len() as u64 != params.p() - 1 {
        return Err(Error::InvalidParams(format!(
            "expected {} components, found {}",
            params.p() - 1,
            x.len()
        )));
    }
    Ok((params, first.trunc()))
}

/// `iota(f) = f((1 + S)^{-1} - 1)`, induced by `gamma -> gamma^{-1}`.
pub fn iota_involution(f: &Series) -> Result<Series> {
    let r = f.params();
    let d = f.trunc();
    let one_plus_s = Series::from_ints(r, &[1, 1], d);
    let g = one_plus_s.inv()?.checked_sub(&Series::one(r, d))?;
    f.compose(&g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> RingParams {
        RingParams::new(p, 1, 8).unwrap()
    }

    #[test]
    fn idempotents_are_complete_and_orthogonal() {
        for p in [3, 5, 7] {
            let r = ring(p);
            let es: Vec<_> = (0..p - 1).map(|j| idempotent(r, j).unwrap()).collect();
            let total = es.iter().fold(GroupRingElem::zero(r), |acc, e| acc.add(e));
            assert_eq!(total, GroupRingElem::one(r));
            for (i, a) in es.iter().enumerate() {
                for (j, b) in es.iter().enumerate() {
                    let ab = a.mul(b);
                    if i == j {
                        assert_eq!(&ab, a);
                    } else {
                        assert_eq!(ab, GroupRingElem::zero(r));
                    }
                }
            }
        }
    }

    #[test]
    fn order_two_character_table() {
        let r = ring(3);
        let delta = GroupRingElem::group_element(r, 2).unwrap();
        let half = Elem::one(r).half();
        // e_0 = (1 + delta)/2, e_1 = (1 - delta)/2
        let e0 = GroupRingElem::one(r).add(&delta).scale(&half);
        let e1 = GroupRingElem::one(r).add(&delta.scale(&Elem::from_int(r, -1))).scale(&half);
        assert_eq!(idempotent(r, 0).unwrap(), e0);
        assert_eq!(idempotent(r, 1).unwrap(), e1);
        assert_eq!(idempotent_decompose(&delta, 0).unwrap(), e0);
        assert_eq!(idempotent_decompose(&delta, 1).unwrap(), e1.scale(&Elem::from_int(r, -1)));
    }

    #[test]
    fn equivariance() {
        let r = ring(5);
        let x = GroupRingElem::new(r, (1..5).map(|n| Elem::from_int(r, 7 * n + 2)).collect()).unwrap();
        for j in 0..4 {
            let ex = idempotent_decompose(&x, j).unwrap();
            let expect = idempotent(r, j).unwrap().scale(&character_value(&x, j).unwrap());
            assert_eq!(ex, expect);
        }
    }

    #[test]
    fn split_of_group_like_elements() {
        let r = ring(5);
        let d = 6;
        for a in 1..5u64 {
            let x: Vec<Series> = (1..5u64)
                .map(|b| Series::from_ints(r, &[(a == b) as i64], d))
                .collect();
            let y = cyclotomic_split(&x).unwrap();
            for (j, yj) in y.iter().enumerate() {
                let value = Elem::teichmuller(r, a as i64).unwrap().pow(j as u64);
                assert_eq!(yj, &Series::constant(value, d));
            }
            assert_eq!(cyclotomic_join(&y).unwrap(), x);
        }
    }

    #[test]
    fn iota_examples() {
        let r = ring(3);
        let d = 8;
        let c = Series::from_ints(r, &[5], d);
        assert_eq!(iota_involution(&c).unwrap(), c);
        let s = Series::var(r, d);
        let alternating: Vec<i64> = (0..d as i64).map(|i| if i == 0 { 0 } else if i % 2 == 1 { -1 } else { 1 }).collect();
        assert_eq!(iota_involution(&s).unwrap(), Series::from_ints(r, &alternating, d));
        let f = Series::from_ints(r, &[2, -1, 7, 0, 4], d);
        assert_eq!(iota_involution(&iota_involution(&f).unwrap()).unwrap(), f);
    }
}
