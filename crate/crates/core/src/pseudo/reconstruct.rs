use super::{enumerate_words, Coeff, Mat2, MatrixRep2, PseudoRep, Word};
use crate::{Error, Rational, Result};

/// A representation rebuilt from a pseudo-representation.
#[derive(Clone, Debug)]
pub struct Reconstruction<R> {
    pub sigma: Word,
    pub tau: Word,
    /// Valuation of `Xi(sigma, tau)` at the centre, in units of `v(p) = 1`.
    pub mu: Rational,
    /// The coefficients were restricted along `U = pi^rescale U'` so that
    /// every entry is integral; always 0 for constant coefficients.
    pub rescale: u32,
    /// `V` with `Xi(sigma, tau) = p^mu V^{-1}` (after restriction).
    pub unit: R,
    pub rep: MatrixRep2<R>,
}

impl<R: Coeff> Reconstruction<R> {
    /// The defining formula at an arbitrary word:
    /// `[[A(w), Xi(w, tau) V p^-mu], [Xi(sigma, w), D(w)]]`, with the same
    /// restriction applied. `None` if some value is undefined.
    pub fn formula_image<P: PseudoRep<R>>(&self, pi: &P, w: &Word) -> Option<Result<Mat2<R>>> {
        let v = self.v();
        let j = self.rescale;
        let a = pi.a(w)?.restrict_pi_pow(j);
        let d = pi.d(w)?.restrict_pi_pow(j);
        let x_wt = pi.xi(w, &self.tau)?.restrict_pi_pow(j);
        let x_sw = pi.xi(&self.sigma, w)?.restrict_pi_pow(j);
        Some(x_wt.div_pi_pow(v).map(|b| Mat2::new(a, b.times(&self.unit), x_sw, d)))
    }

    fn v(&self) -> u32 {
        let e = self.unit.params().e() as i64;
        (self.mu * Rational::from_integer(e)).to_integer() as u32
    }
}

/// Pairs `(s, t)` with `|s|, |t| <= max_len`, ordered by `|s| + |t|` and
/// then length-lexicographically.
fn search_pairs(generators: usize, max_len: usize) -> Vec<(Word, Word)> {
    let words = enumerate_words(generators, max_len);
    let mut pairs = Vec::new();
    for total in 0..=2 * max_len {
        for s in &words {
            if s.len() > total || total - s.len() > max_len {
                continue;
            }
            for t in words.iter().filter(|t| t.len() == total - s.len()) {
                pairs.push((s.clone(), t.clone()));
            }
        }
    }
    pairs
}

/// Rebuilds `g -> [[A(g), Xi(g, tau) V p^-mu], [Xi(sigma, g), D(g)]]` from
/// the pair `(sigma, tau)` minimizing the valuation of `Xi` at the centre.
///
/// With series coefficients, `Xi(sigma, tau) / p^mu` need not be a unit of
/// the full disk; the coefficients are then restricted to the disk
/// `|U| <= |pi|^j` for the least `j <= e mu` making every entry integral.
pub fn reconstruct<R: Coeff, P: PseudoRep<R>>(pi: &P, max_len: usize) -> Result<Reconstruction<R>> {
    let t = pi.generators();
    let mut best: Option<(u32, Word, Word, R)> = None;
    for (s, u) in search_pairs(t, max_len) {
        let Some(x) = pi.xi(&s, &u) else { continue };
        let Some(v) = x.center_val_pi() else { continue };
        if best.as_ref().is_none_or(|b| v < b.0) {
            best = Some((v, s, u, x));
            if v == 0 {
                break;
            }
        }
    }
    let (v, sigma, tau, xst) = best.ok_or(Error::ApparentlyReducible)?;
    let e = xst.params().e() as i64;
    let mu = Rational::new(v as i64, e);

    let mut last_err = Error::NonIntegralEntry(0);
    for j in 0..=v {
        let w = xst.restrict_pi_pow(j).div_pi_pow(v);
        let Ok(unit) = w.and_then(|w| w.try_inverse()) else {
            last_err = Error::NonIntegralEntry(0);
            continue;
        };
        let mut rec = Reconstruction {
            sigma: sigma.clone(),
            tau: tau.clone(),
            mu,
            rescale: j,
            unit,
            rep: MatrixRep2::new(&xst, vec![])?,
        };
        let mut gens = Vec::with_capacity(t);
        for g in 0..t {
            match rec.formula_image(pi, &Word::gen(g)) {
                None => return Err(Error::NonIntegralEntry(g)),
                Some(Ok(m)) => gens.push(m),
                Some(Err(_)) => {
                    last_err = Error::NonIntegralEntry(g);
                    break;
                }
            }
        }
        if gens.len() < t {
            continue;
        }
        let template = xst.restrict_pi_pow(j);
        match rec.formula_image(pi, &Word::conj()) {
            Some(Ok(c)) if c == Mat2::conjugation(&template) => {}
            _ => return Err(Error::BadConjugationImage),
        }
        rec.rep = MatrixRep2::new(&template, gens)?;
        return Ok(rec);
    }
    Err(last_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudo::pseudo_from_matrix;
    use crate::{Elem, RingParams, Series};

    #[test]
    fn hand_factorization() {
        let r = RingParams::new(3, 1, 8).unwrap();
        let e = |n| Elem::from_int(r, n);
        let rho = MatrixRep2::new(&e(1), vec![Mat2::new(e(1), e(1), e(3), e(1))]).unwrap();
        let rec = reconstruct(&pseudo_from_matrix(rho), 2).unwrap();
        assert_eq!((rec.sigma.to_string(), rec.tau.to_string()), ("g1".into(), "g1".into()));
        assert_eq!(rec.mu, Rational::from_integer(1));
        assert_eq!(rec.unit, e(1));
        let g = rec.rep.generator(0);
        assert_eq!((g.trace(), g.det()), (e(2), e(-2)));
        assert_eq!((&g.b, &g.c), (&e(1), &e(3)));
    }

    #[test]
    fn diagonal_is_reducible() {
        let r = RingParams::new(5, 1, 6).unwrap();
        let e = |n| Elem::from_int(r, n);
        let rho = MatrixRep2::new(&e(1), vec![Mat2::diag(e(2), e(3))]).unwrap();
        assert_eq!(
            reconstruct(&pseudo_from_matrix(rho), 3).unwrap_err(),
            Error::ApparentlyReducible
        );
    }

    #[test]
    fn series_coefficients_need_a_smaller_disk() {
        let r = RingParams::new(3, 1, 8).unwrap();
        let s = |c: &[i64]| Series::from_ints(r, c, 6);
        // b c = 3 + U at the only informative pair
        let g = Mat2::new(s(&[1]), s(&[1]), s(&[3, 1]), s(&[1]));
        let rho = MatrixRep2::new(&s(&[1]), vec![g]).unwrap();
        let pi = pseudo_from_matrix(rho);
        let rec = reconstruct(&pi, 2).unwrap();
        assert_eq!(rec.mu, Rational::from_integer(1));
        assert_eq!(rec.rescale, 1);
        for w in enumerate_words(1, 3) {
            let m = rec.rep.image(&w).unwrap();
            let tr = pi.trace(&w).unwrap().restrict_pi_pow(1);
            assert_eq!(m.trace(), tr, "trace at {w}");
        }
    }
}
