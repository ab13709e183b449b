//! Coordinates on weight space: classical points in a disk around `k0`,
//! slopes, and the Nebentypus decomposition `eps_N * omega^(i - k)`.

use std::fmt;

use crate::padic::is_prime;
use crate::series::Chart;
use crate::{Elem, Error, Rational, Result};

/// Which disk around `k0` the classical points are drawn from.
///
/// For radius exponent `m`, the open disk keeps `v(k - k0) > m - 1`, i.e.
/// `k = k0 mod p^m`; the closed disk of the same radius keeps
/// `v(k - k0) >= m - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Disk {
    #[default]
    Open,
    Closed,
}

/// Integer weights `k` in a disk around `k0` with `k > alpha + 1`, up to a
/// bound.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalPointSet {
    pub p: u64,
    pub k0: i64,
    /// Radius `p^(-radius_exp)`.
    pub radius_exp: u32,
    pub alpha: Rational,
    pub bound: i64,
    pub disk: Disk,
    /// Members in ascending order.
    pub points: Vec<i64>,
}

impl ClassicalPointSet {
    /// The defining predicate.
    pub fn admits(&self, k: i64) -> bool {
        admits(self.p, self.k0, self.radius_exp, self.disk, self.alpha, k)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Coordinates `u_k = (k - k0) / e0` of the members in the given chart.
    pub fn coordinates(&self, chart: &Chart) -> Result<Vec<(i64, Elem)>> {
        self.points
            .iter()
            .map(|&k| chart.coordinate(k).map(|u| (k, u)))
            .collect()
    }
}

fn congruence_modulus(p: u64, radius_exp: u32, disk: Disk) -> i64 {
    let m = match disk {
        Disk::Open => radius_exp,
        Disk::Closed => radius_exp.saturating_sub(1),
    };
    (p as i64).pow(m)
}

fn admits(p: u64, k0: i64, radius_exp: u32, disk: Disk, alpha: Rational, k: i64) -> bool {
    let modulus = congruence_modulus(p, radius_exp, disk);
    (k - k0).rem_euclid(modulus) == 0 && Rational::from_integer(k) > alpha + 1
}

/// Enumerates the classical points of the disk `B(k0, p^-m)` with
/// `k > alpha + 1` and `k <= bound`.
pub fn classical_points(
    p: u64,
    k0: i64,
    radius_exp: u32,
    alpha: Rational,
    bound: i64,
    disk: Disk,
) -> Result<ClassicalPointSet> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidParams(format!("p = {p} is not an odd prime")));
    }
    if radius_exp == 0 {
        return Err(Error::InvalidParams("radius exponent must be >= 1".into()));
    }
    if alpha < Rational::from_integer(0) {
        return Err(Error::InvalidParams("slope must be >= 0".into()));
    }
    let modulus = congruence_modulus(p, radius_exp, disk);
    // smallest k = k0 mod modulus with k > alpha + 1
    let floor = (alpha + 1).floor().to_integer() + 1;
    let first = floor + (k0 - floor).rem_euclid(modulus);
    if bound < first {
        return Err(Error::EmptyWindow);
    }
    let points = (0..)
        .map(|j| first + j * modulus)
        .take_while(|&k| k <= bound)
        .collect();
    Ok(ClassicalPointSet {
        p,
        k0,
        radius_exp,
        alpha,
        bound,
        disk,
        points,
    })
}

/// The slope of an eigenform with `U_p`-eigenvalue `a_p`.
pub fn slope_from_up_eigenvalue(a_p: &Elem) -> Result<Rational> {
    a_p.valuation().ok_or(Error::ZeroAtPrecision)
}

/// The character `eps_N * omega^j`; the tame part is an opaque tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTag {
    pub tame: String,
    /// `j` in `[0, p - 1)`.
    pub omega_exp: u64,
}

impl fmt::Display for CharacterTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*omega^{}", self.tame, self.omega_exp)
    }
}

/// `eps_N * omega^(i - k)` with the exponent reduced mod `p - 1`.
pub fn neben_decompose(p: u64, tame: &str, k: i64, i: i64) -> Result<CharacterTag> {
    if !(0..=(p as i64 - 1)).contains(&i) {
        return Err(Error::InvalidParams(format!(
            "component index {i} outside [0, {}]",
            p - 1
        )));
    }
    Ok(CharacterTag {
        tame: tame.to_string(),
        omega_exp: (i - k).rem_euclid(p as i64 - 1) as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RingParams;

    fn zero() -> Rational {
        Rational::from_integer(0)
    }

    fn brute_force(p: i64, k0: i64, m: u32, alpha: Rational, bound: i64) -> Vec<i64> {
        (-bound..=bound)
            .filter(|&k| {
                let mut d = k - k0;
                let mut v = 0;
                if d == 0 {
                    v = u32::MAX;
                } else {
                    while d % p == 0 {
                        d /= p;
                        v += 1;
                    }
                }
                v >= m && Rational::from_integer(k) > alpha + 1
            })
            .filter(|&k| k <= bound)
            .collect()
    }

    #[test]
    fn radius_one_third() {
        let set = classical_points(3, 2, 1, zero(), 30, Disk::Open).unwrap();
        assert_eq!(set.points, vec![2, 5, 8, 11, 14, 17, 20, 23, 26, 29]);
        assert_eq!(set.points, brute_force(3, 2, 1, zero(), 30));
    }

    #[test]
    fn radius_one_ninth() {
        let set = classical_points(3, 2, 2, zero(), 30, Disk::Open).unwrap();
        assert_eq!(set.points, vec![2, 11, 20, 29]);
        assert_eq!(set.points, brute_force(3, 2, 2, zero(), 30));
    }

    #[test]
    fn slope_condition_drops_small_weights() {
        let alpha = Rational::from_integer(2);
        let set = classical_points(3, 2, 1, alpha, 30, Disk::Open).unwrap();
        assert_eq!(set.points[0], 5);
        assert!(set.points.iter().all(|&k| Rational::from_integer(k) > alpha + 1));
        let half = Rational::new(1, 2);
        let set = classical_points(5, 3, 1, half, 20, Disk::Open).unwrap();
        assert_eq!(set.points, vec![3, 8, 13, 18]);
    }

    #[test]
    fn closed_disk_is_one_congruence_coarser() {
        let set = classical_points(3, 2, 2, zero(), 12, Disk::Closed).unwrap();
        assert_eq!(set.points, vec![2, 5, 8, 11]);
    }

    #[test]
    fn empty_window() {
        assert_eq!(
            classical_points(3, 2, 2, Rational::from_integer(40), 30, Disk::Open),
            Err(Error::EmptyWindow)
        );
    }

    #[test]
    fn slopes() {
        let r = RingParams::new(3, 1, 8).unwrap();
        let q = Rational::from_integer;
        assert_eq!(slope_from_up_eigenvalue(&Elem::from_int(r, 2)).unwrap(), q(0));
        assert_eq!(slope_from_up_eigenvalue(&Elem::from_int(r, 3)).unwrap(), q(1));
        assert_eq!(slope_from_up_eigenvalue(&Elem::from_int(r, 9 * 2)).unwrap(), q(2));
        assert_eq!(
            slope_from_up_eigenvalue(&Elem::zero(r)),
            Err(Error::ZeroAtPrecision)
        );
    }

    #[test]
    fn nebentypus_exponents() {
        assert_eq!(neben_decompose(3, "eps", 4, 2).unwrap().omega_exp, 0);
        assert_eq!(neben_decompose(3, "eps", 2, 0).unwrap().omega_exp, 0);
        assert_eq!(neben_decompose(5, "eps", 4, 1).unwrap().omega_exp, 1);
        assert!(neben_decompose(5, "eps", 4, 7).is_err());
    }
}
