//! Finitely generated modules over `O_K[[U]]` and `O_K[[U, S]]` in
//! structure-theorem normal form
//!
//! ```text
//! M = A^r  (+)  sum_i A / (g_i^{m_i}),
//! ```
//!
//! their characteristic ideals, mu/lambda invariants and specializations at
//! height-one primes `P_k = (U - u_k)`.

mod group_ring;
mod io;

pub use group_ring::{
    character_value, cyclotomic_join, cyclotomic_split, idempotent, idempotent_decompose,
    iota_involution, GroupRingElem,
};
pub use io::ModuleFile;

use std::collections::BTreeMap;

use crate::series::{weierstrass_prep, DEFAULT_TRUNCATION};
use crate::weight::ClassicalPointSet;
use crate::{BiSeries, Chart, Elem, Error, Rational, Result, RingParams, Series};
use crate::WeierstrassFactorization;

/// `A^free_rank (+) sum_i A / (g_i^{m_i})` over `A = O_K[[U]]` (`S = Series`)
/// or `A = O_K[[U, S]]` (`S = BiSeries`).
#[derive(Clone, Debug, PartialEq)]
pub struct ModulePresentation<S> {
    params: RingParams,
    free_rank: usize,
    torsion: Vec<(S, u32)>,
}

impl<S> ModulePresentation<S> {
    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Torsion pieces `(g_i, m_i)`.
    pub fn torsion(&self) -> &[(S, u32)] {
        &self.torsion
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }
}

impl<S: Clone> ModulePresentation<S> {
    /// `self (+) other`: free ranks add and torsion lists concatenate.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(Error::MismatchedParams);
        }
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().cloned());
        Ok(ModulePresentation {
            params: self.params,
            free_rank: self.free_rank + other.free_rank,
            torsion,
        })
    }
}

fn validate<S>(
    params: RingParams,
    torsion: &[(S, u32)],
    piece_params: impl Fn(&S) -> RingParams,
    is_zero: impl Fn(&S) -> bool,
) -> Result<()> {
    for (i, (g, m)) in torsion.iter().enumerate() {
        if piece_params(g) != params {
            return Err(Error::MismatchedParams);
        }
        if *m == 0 {
            return Err(Error::InvalidParams(format!("multiplicity of piece {i} is 0")));
        }
        if is_zero(g) {
            return Err(Error::ZeroTorsionGenerator(i));
        }
    }
    Ok(())
}

/// Rank and torsion of a module over `O_K` obtained by specialization.
#[derive(Clone, Debug, PartialEq)]
pub struct Specialization {
    pub rank: usize,
    /// Generators of the orders `O_K / (g_i(u)^{m_i})` of the finite pieces.
    pub finite_part: Vec<Elem>,
}

impl Specialization {
    /// Length of the finite part, i.e. `sum v_pi(order)` in pi units.
    pub fn finite_length(&self) -> u32 {
        self.finite_part.iter().map(|x| x.val_pi().unwrap_or(0)).sum()
    }
}

/// Classifies a value that should decide whether a torsion piece dies at a
/// point: `Some(true)` for a certified zero (zero at full precision),
/// `Some(false)` for a nonzero value, `None` when precision ran out.
fn certified_zero(value: &Elem) -> Option<bool> {
    if !value.is_zero() {
        Some(false)
    } else if value.prec() >= value.params().prec() {
        Some(true)
    } else {
        None
    }
}

impl ModulePresentation<Series> {
    pub fn new(params: RingParams, free_rank: usize, torsion: Vec<(Series, u32)>) -> Result<Self> {
        validate(params, &torsion, Series::params, Series::is_zero)?;
        Ok(ModulePresentation {
            params,
            free_rank,
            torsion,
        })
    }

    fn trunc(&self) -> usize {
        self.torsion
            .first()
            .map_or(DEFAULT_TRUNCATION, |(g, _)| g.trunc())
    }

    /// `prod g_i^{m_i}` with its Weierstrass factorization.
    pub fn char_ideal_factorization(&self) -> Result<WeierstrassFactorization> {
        let mut h = Series::one(self.params, self.trunc());
        for (g, m) in &self.torsion {
            for _ in 0..*m {
                h = h.checked_mul(g)?;
            }
        }
        weierstrass_prep(&h)
    }

    /// Generator `p^mu * P` of the characteristic ideal, with `P`
    /// distinguished; `1` when there is no torsion.
    pub fn char_ideal(&self) -> Result<Series> {
        let w = self.char_ideal_factorization()?;
        let shift = (w.mu * Rational::from_integer(self.params.e() as i64)).to_integer() as u32;
        Ok(w.distinguished.mul_pi_pow(shift))
    }

    /// `sum m_i mu(g_i)`.
    pub fn mu(&self) -> Result<Rational> {
        if !self.is_torsion() {
            return Err(Error::NotTorsion);
        }
        self.torsion.iter().try_fold(Rational::from_integer(0), |acc, (g, m)| {
            Ok(acc + g.mu_invariant()? * Rational::from_integer(*m as i64))
        })
    }

    /// `sum m_i lambda(g_i)`.
    pub fn lambda(&self) -> Result<usize> {
        if !self.is_torsion() {
            return Err(Error::NotTorsion);
        }
        self.torsion_lambda()
    }

    fn torsion_lambda(&self) -> Result<usize> {
        self.torsion
            .iter()
            .try_fold(0, |acc, (g, m)| Ok(acc + g.lambda_invariant()? * *m as usize))
    }

    /// `M / P_k M` for `u_k` with `v(u_k) > 0`: rank `r + #{i : g_i(u_k) = 0}`
    /// and finite part `O_K / (g_i(u_k)^{m_i})` for the other pieces.
    ///
    /// A value that vanishes only because digits were lost cannot decide the
    /// rank, and is reported as [`Error::PrecisionAmbiguous`].
    pub fn specialize_at(&self, u: &Elem) -> Result<Specialization> {
        let mut rank = self.free_rank;
        let mut finite_part = Vec::new();
        for (i, (g, m)) in self.torsion.iter().enumerate() {
            let value = g.evaluate(u)?.value;
            match certified_zero(&value) {
                Some(true) => rank += 1,
                Some(false) => finite_part.push(value.pow(*m as u64)),
                None => return Err(Error::PrecisionAmbiguous(i)),
            }
        }
        Ok(Specialization { rank, finite_part })
    }
}

impl ModulePresentation<BiSeries> {
    pub fn new(params: RingParams, free_rank: usize, torsion: Vec<(BiSeries, u32)>) -> Result<Self> {
        validate(params, &torsion, BiSeries::params, BiSeries::is_zero)?;
        Ok(ModulePresentation {
            params,
            free_rank,
            torsion,
        })
    }

    /// `M / J_k M` as a module over `O_K[[S]]`, substituting `U = u_k`.
    /// Pieces that vanish at full precision become free.
    pub fn specialize_at(&self, u: &Elem) -> Result<ModulePresentation<Series>> {
        let mut free_rank = self.free_rank;
        let mut torsion = Vec::new();
        for (i, (g, m)) in self.torsion.iter().enumerate() {
            let h = g.evaluate_u(u)?;
            if h.is_zero() {
                if h.min_prec() < self.params.prec() {
                    return Err(Error::PrecisionAmbiguous(i));
                }
                free_rank += 1;
            } else {
                torsion.push((h, *m));
            }
        }
        ModulePresentation::<Series>::new(self.params, free_rank, torsion)
    }
}

/// `mu(M) = 0` for a torsion module over `O_K[[U, S]]`: every piece is
/// `S`-distinguished up to a unit, i.e. nonzero modulo `(pi, U)`. This is
/// the condition for `M` to be finitely generated over `O_K[[U]]`.
pub fn mu_zero_criterion(m: &ModulePresentation<BiSeries>) -> Result<bool> {
    if !m.is_torsion() {
        return Err(Error::NotTorsion);
    }
    Ok(m.torsion.iter().all(|(g, _)| g.has_unit_s_coefficient()))
}

/// Outcome of [`lambda_constancy_sweep`].
#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    /// `(k, rank of M / P_k M)` in ascending `k`.
    pub ranks: Vec<(i64, usize)>,
    /// The most frequent rank (the smallest on ties).
    pub generic_lambda: usize,
    pub free_rank: usize,
    /// Weights whose rank differs from the generic value.
    pub exceptions: Vec<i64>,
    /// Whether each exception is a root of the distinguished part of the
    /// characteristic ideal.
    pub certified: Vec<bool>,
    /// Weights where some piece vanished only up to lost precision.
    pub ambiguous: Vec<(i64, usize)>,
    /// `sum m_i lambda(g_i)`, an upper bound for the number of exceptions.
    pub exception_bound: usize,
}

impl SweepReport {
    /// Generic value equals the free rank, the exceptional set respects the
    /// bound and every exception is certified.
    pub fn is_consistent(&self) -> bool {
        self.generic_lambda == self.free_rank
            && self.exceptions.len() <= self.exception_bound
            && self.certified.iter().all(|&c| c)
            && self.ambiguous.is_empty()
    }
}

/// Specializes a module over `O_K[[U]]` at every classical point
/// `u_k = (k - k0) / e0` of the chart and reports where the rank jumps.
pub fn lambda_constancy_sweep(
    m: &ModulePresentation<Series>,
    points: &ClassicalPointSet,
    chart: &Chart,
) -> Result<SweepReport> {
    if points.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let char_ideal = m.char_ideal_factorization()?;
    let mut ranks = Vec::with_capacity(points.len());
    let mut ambiguous = Vec::new();
    let mut coords = BTreeMap::new();
    for (k, u) in points.coordinates(chart)? {
        match m.specialize_at(&u) {
            Ok(s) => ranks.push((k, s.rank)),
            Err(Error::PrecisionAmbiguous(i)) => ambiguous.push((k, i)),
            Err(e) => return Err(e),
        }
        coords.insert(k, u);
    }
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    for &(_, r) in &ranks {
        *freq.entry(r).or_default() += 1;
    }
    let generic_lambda = freq
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map_or(m.free_rank, |(&r, _)| r);
    let exceptions: Vec<i64> = ranks
        .iter()
        .filter(|&&(_, r)| r != generic_lambda)
        .map(|&(k, _)| k)
        .collect();
    // the distinguished part carries the digits left after removing p^mu
    let params = m.params;
    let mu_pi = (char_ideal.mu * Rational::from_integer(params.e() as i64)).to_integer() as u32;
    let available = params.prec().saturating_sub(mu_pi);
    let certified = exceptions
        .iter()
        .map(|k| {
            let value = char_ideal.distinguished.evaluate_polynomial(&coords[k]);
            value.is_zero() && value.prec() >= available
        })
        .collect();
    Ok(SweepReport {
        ranks,
        generic_lambda,
        free_rank: m.free_rank,
        exceptions,
        certified,
        ambiguous,
        exception_bound: m.torsion_lambda()?,
    })
}
